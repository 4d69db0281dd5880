#![no_main]
use indicative::lawvere::{self, CurriedMap, FinMap};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(f) = CurriedMap::from_json(data) else {
        return;
    };
    let id = FinMap::identity(f.cod_base());
    let c = lawvere::cantor_diagonal(&f, &id);
    assert_eq!(lawvere::diagonal_via_delta(&f, &id), c);
    if let Some(a) = lawvere::find_representation(&f, &c) {
        assert_eq!(f.row(a), c);
    }
    if f.dom().len() <= 4 && f.cod_base().len() <= 8 {
        let _ = lawvere::is_surjective(&f);
    }
});
