#![no_main]
use indicative::reflexive::{self, ArcTable};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(table) = data.parse::<ArcTable>() else {
        return;
    };
    assert_eq!(table.to_string().parse::<ArcTable>().as_ref(), Ok(&table));
    if let Ok(d) = reflexive::build(&table) {
        assert!(reflexive::is_reflexive(d.category()));
        let _ = reflexive::enumerate_composites(d.category(), 2);
    }
});
