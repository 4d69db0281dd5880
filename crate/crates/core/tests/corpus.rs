//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets make, so regressions show up without a fuzzing toolchain.

use std::fs;
use std::path::Path;

use indicative::godel::{self, Formula, GodelNumber};
use indicative::lambda::{Rewriter, Term};
use indicative::lawvere::{self, CurriedMap, FinMap};
use indicative::reflexive::{self, ArcTable};
use indicative::shift::CategoricalPair;
use indicative::smullyan::{self, MString, MachineModel};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        // the fuzz targets skip inputs that are not UTF-8, and so does this
        .filter_map(|entry| String::from_utf8(fs::read(entry.unwrap().path()).unwrap()).ok())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn formula_seeds() {
    for data in seeds("formula_parse") {
        let Ok(f) = Formula::parse_compact(&data) else { continue };
        assert_eq!(Formula::parse_compact(&f.to_string()).as_ref(), Ok(&f));
        if let Ok(g) = godel::encode(&f) {
            assert_eq!(godel::decode(&g).as_ref(), Ok(&f));
        }
    }
}

#[test]
fn godel_number_seeds() {
    for data in seeds("godel_number") {
        let Ok(g) = data.parse::<GodelNumber>() else { continue };
        assert_eq!(g.to_string().parse::<GodelNumber>().as_ref(), Ok(&g));
        if let Ok(f) = godel::decode(&g) {
            assert_eq!(godel::encode(&f).as_ref(), Ok(&g));
        }
    }
}

#[test]
fn mstring_seeds() {
    for data in seeds("mstring") {
        if let Ok(s) = data.parse::<MString>() {
            assert_eq!(s.to_string().parse::<MString>().as_ref(), Ok(&s));
            let _ = smullyan::reference_arrow(&s);
        }
        if let Ok(m) = MachineModel::parse_lines(&data) {
            let _ = smullyan::truthfulness_violations(&m);
        }
    }
}

#[test]
fn term_seeds() {
    for data in seeds("term") {
        let Ok(t) = data.parse::<Term>() else { continue };
        assert_eq!(t.to_string().parse::<Term>().as_ref(), Ok(&t));
        assert!(Rewriter::new(64).check_fixed_point(&t));
    }
}

#[test]
fn arc_table_seeds() {
    for data in seeds("arc_table") {
        let Ok(table) = data.parse::<ArcTable>() else { continue };
        assert_eq!(table.to_string().parse::<ArcTable>().as_ref(), Ok(&table));
        let d = reflexive::build(&table).unwrap();
        assert!(reflexive::is_reflexive(d.category()));
    }
}

#[test]
fn pair_seeds() {
    for data in seeds("pair_format") {
        let Ok(pair) = data.parse::<CategoricalPair>() else { continue };
        for arrow in &pair.arrows {
            let _ = pair.shift(arrow);
            let _ = pair.srt1(arrow);
        }
    }
}

#[test]
fn lawvere_seeds() {
    for data in seeds("lawvere_json") {
        let Ok(f) = CurriedMap::from_json(&data) else { continue };
        let id = FinMap::identity(f.cod_base());
        assert_eq!(lawvere::diagonal_via_delta(&f, &id), lawvere::cantor_diagonal(&f, &id));
    }
}
