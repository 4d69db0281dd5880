#![no_main]
use indicative::lambda::{Rewriter, Term};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(t) = data.parse::<Term>() else {
        return;
    };
    assert_eq!(t.to_string().parse::<Term>().as_ref(), Ok(&t));
    let mut r = Rewriter::new(64);
    assert!(r.check_fixed_point(&t));
});
