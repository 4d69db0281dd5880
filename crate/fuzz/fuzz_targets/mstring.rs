#![no_main]
use indicative::smullyan::{self, MString, MachineModel};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(s) = data.parse::<MString>() {
        assert_eq!(s.to_string().parse::<MString>().as_ref(), Ok(&s));
        let _ = smullyan::classify(&s);
        let _ = smullyan::reference_arrow(&s);
    }
    if let Ok(m) = MachineModel::parse_lines(data) {
        let _ = smullyan::truthfulness_violations(&m);
    }
});
