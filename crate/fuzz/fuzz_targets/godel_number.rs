#![no_main]
use indicative::godel::{self, GodelNumber};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(g) = data.parse::<GodelNumber>() else {
        return;
    };
    assert_eq!(g.to_string().parse::<GodelNumber>().as_ref(), Ok(&g));
    if let Ok(f) = godel::decode(&g) {
        assert_eq!(godel::encode(&f).as_ref(), Ok(&g));
    }
});
