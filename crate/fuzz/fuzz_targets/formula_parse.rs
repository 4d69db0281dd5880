#![no_main]
use indicative::godel::{self, Formula};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(f) = Formula::parse_compact(data) else {
        return;
    };
    assert_eq!(Formula::parse_compact(&f.to_string()).as_ref(), Ok(&f));
    if let Ok(g) = godel::encode(&f) {
        assert_eq!(godel::decode(&g).as_ref(), Ok(&f));
    }
});
