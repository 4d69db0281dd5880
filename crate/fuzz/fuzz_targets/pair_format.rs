#![no_main]
use indicative::shift::CategoricalPair;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(mut pair) = data.parse::<CategoricalPair>() else {
        return;
    };
    let budget = pair.base.budget().min(1_000);
    pair.base.set_budget(budget);
    for arrow in pair.arrows.clone().iter().take(8) {
        let _ = pair.shift(arrow);
        let _ = pair.srt1(arrow);
        let _ = pair.iterate_shift(arrow, 3);
    }
});
