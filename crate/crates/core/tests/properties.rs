use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use indicative::godel::{self, Count, Formula, GodelNumber, LToken};
use indicative::lambda::{Rewriter, Term};
use indicative::lawvere::{self, CurriedMap, FinMap, FinSet, LawvereError};
use indicative::shift::{CategoricalPair, Category, RefArrow, Word};
use indicative::smullyan::{self, MString, MachineModel, Truth};

fn token() -> impl Strategy<Value = LToken> {
    prop_oneof![
        Just(LToken::LParen),
        Just(LToken::RParen),
        Just(LToken::Tilde),
        Just(LToken::P),
        Just(LToken::Var),
        (1u64..=1000).prop_map(|n| LToken::SlashRun(Count::new(n))),
        Just(LToken::Sharp),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    prop::collection::vec(token(), 1..12).prop_map(Formula::from_tokens)
}

/// Formulas with exactly `k` occurrences of `x`.
fn formula_with_vars(k: usize) -> impl Strategy<Value = Formula> {
    let non_var = token().prop_filter("no x", |t| *t != LToken::Var);
    (prop::collection::vec(non_var, 0..10), prop::collection::vec(any::<prop::sample::Index>(), k)).prop_map(
        |(mut tokens, spots)| {
            for spot in spots {
                let at = spot.index(tokens.len() + 1);
                tokens.insert(at, LToken::Var);
            }
            Formula::from_tokens(tokens)
        },
    )
}

fn godel_number() -> impl Strategy<Value = GodelNumber> {
    prop::collection::vec((1u8..=7, 1u64..=50), 1..8)
        .prop_map(|runs| GodelNumber::from_runs(runs.into_iter().map(|(d, n)| (d, Count::new(n)))).unwrap())
}

fn value(g: &GodelNumber) -> BigUint {
    g.to_decimal_string().unwrap().parse().unwrap()
}

proptest! {
    #[test]
    fn decode_inverts_encode(f in formula()) {
        prop_assert_eq!(godel::decode(&godel::encode(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn encode_inverts_decode(g in godel_number()) {
        prop_assert_eq!(godel::encode(&godel::decode(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn wire_format_round_trips(g in godel_number()) {
        prop_assert_eq!(g.to_string().parse::<GodelNumber>().unwrap(), g.clone());
        prop_assert_eq!(GodelNumber::from_decimal(&g.to_decimal_string().unwrap()).unwrap(), g);
    }

    #[test]
    fn formula_text_round_trips(f in formula()) {
        prop_assert_eq!(Formula::parse_compact(&f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(Formula::parse(&f.to_ascii().unwrap()).unwrap(), f);
    }

    #[test]
    fn length_law(s in formula_with_vars(1)) {
        let g = godel::encode(&s).unwrap();
        let sharp = godel::sharp_decimal(&g).unwrap();
        let fives = BigUint::from(g.to_decimal_string().unwrap().matches('5').count());
        let expected = g.digit_length().as_biguint() + (value(&g) - 1u32) * fives;
        prop_assert_eq!(sharp.digit_length().as_biguint().clone(), expected);
    }

    #[test]
    fn sharp_is_idempotent_after_one_step(s in formula_with_vars(1)) {
        let once = godel::sharp_decimal(&godel::encode(&s).unwrap()).unwrap();
        prop_assert!(!once.contains_digit(5));
        prop_assert_eq!(godel::sharp_decimal(&once).unwrap(), once);
    }

    #[test]
    fn substitution_levels_agree(s in (1usize..4).prop_flat_map(formula_with_vars), n in 1u64..=10_000) {
        let count = Count::new(n);
        let textual = godel::encode(&godel::substitute(&s, &Formula::numeral(count.clone())).unwrap()).unwrap();
        let gs = godel::encode(&s).unwrap();
        prop_assert_eq!(&textual, &godel::insert_count(&gs, &count));
        if let Ok(m) = GodelNumber::from_count(&count) {
            prop_assert_eq!(&textual, &godel::compose_numbers(&gs, &m).unwrap());
        }
        let runs_of_six = textual.runs().iter().filter(|(d, _)| *d == 6).count();
        prop_assert!(runs_of_six >= 1);
    }
}

fn free_base() -> Category {
    let mut cat = Category::simplest();
    cat.add_generator("f", "O", "O").unwrap();
    cat.add_generator("g", "O", "O").unwrap();
    cat
}

fn word_of(cat: &Category, names: &[&str]) -> Word {
    if names.is_empty() {
        cat.identity("O").unwrap()
    } else {
        cat.word(names).unwrap()
    }
}

fn names(max: usize) -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(prop::sample::select(vec!["f", "g", "♯"]), 0..=max)
}

proptest! {
    #[test]
    fn shift_is_sound(src in names(3), dst in names(3)) {
        let cat = free_base();
        let pair = CategoricalPair::new(cat.clone());
        let r = RefArrow::new(word_of(&cat, &src), word_of(&cat, &dst));
        let shifted = pair.shift(&r).unwrap();
        let sharp_src: Vec<&str> = std::iter::once("♯").chain(src.iter().copied()).collect();
        let dst_src: Vec<&str> = dst.iter().chain(src.iter()).copied().collect();
        prop_assert_eq!(shifted.src.names(), sharp_src);
        prop_assert_eq!(shifted.dst.names(), dst_src);
    }

    #[test]
    fn srt1_lands_on_f_after_h(g in names(3), f in names(3)) {
        let cat = free_base();
        let pair = CategoricalPair::new(cat.clone());
        let mut f_sharp = f.clone();
        f_sharp.push("♯");
        let r = RefArrow::new(word_of(&cat, &g), word_of(&cat, &f_sharp));
        let end = pair.srt1(&r).unwrap().conclusion().unwrap().clone();
        let h = cat.compose(&word_of(&cat, &["♯"]), &word_of(&cat, &g)).unwrap();
        prop_assert_eq!(&end.src, &h);
        prop_assert_eq!(end.dst, cat.compose(&word_of(&cat, &f), &h).unwrap());
    }

    #[test]
    fn compose_is_associative(a in names(3), b in names(3), c in names(3)) {
        let cat = free_base();
        let (a, b, c) = (word_of(&cat, &a), word_of(&cat, &b), word_of(&cat, &c));
        let left = cat.compose(&cat.compose(&a, &b).unwrap(), &c).unwrap();
        let right = cat.compose(&a, &cat.compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_neutral(a in names(4)) {
        let cat = free_base();
        let a = word_of(&cat, &a);
        let id = cat.identity("O").unwrap();
        prop_assert_eq!(cat.compose(&id, &a).unwrap(), a.clone());
        prop_assert_eq!(cat.compose(&a, &id).unwrap(), a);
    }

    #[test]
    fn rewriting_with_rules_is_associative(a in names(3), b in names(3), c in names(3)) {
        let mut cat = free_base();
        // f is an involution; the system is terminating and confluent
        let rule = cat.parse_rule("f f => ε").unwrap();
        cat.add_rule(rule);
        let (a, b, c) = (word_of(&cat, &a), word_of(&cat, &b), word_of(&cat, &c));
        let left = cat.compose(&cat.compose(&a, &b).unwrap(), &c).unwrap();
        let right = cat.compose(&a, &cat.compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn lambda_pair_sharp_refers_to_itself() {
    let cat = Category::simplest();
    let pair = CategoricalPair::lambda(cat.clone());
    let sharp = cat.word(&["♯"]).unwrap();
    let shifted = pair.shift(&RefArrow::new(sharp.clone(), sharp)).unwrap();
    let twice = cat.word(&["♯", "♯"]).unwrap();
    assert_eq!(shifted, RefArrow::new(twice.clone(), twice));
}

#[test]
fn interchange_holds_exhaustively() {
    let cat = free_base();
    let pair = CategoricalPair::new(cat.clone()).with_two_category();
    let mut words = vec![cat.identity("O").unwrap()];
    for a in ["f", "♯"] {
        words.push(cat.word(&[a]).unwrap());
        for b in ["f", "♯"] {
            words.push(cat.word(&[a, b]).unwrap());
        }
    }
    let mut checked = 0;
    for a in &words {
        for b in &words {
            let alpha = RefArrow::new(a.clone(), b.clone());
            for c in &words {
                let gamma = RefArrow::new(b.clone(), c.clone());
                for d in &words {
                    for e in &words {
                        let beta = RefArrow::new(d.clone(), e.clone());
                        for f in &words {
                            let delta = RefArrow::new(e.clone(), f.clone());
                            assert!(pair.check_interchange(&alpha, &beta, &gamma, &delta).unwrap());
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(checked, 7usize.pow(6));
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop::sample::select(vec!["a", "b", "F", "x", "g0", "g1", "h_2"]).prop_map(Term::atom);
    leaf.prop_recursive(5, 64, 2, |inner| (inner.clone(), inner).prop_map(|(l, r)| Term::apply(l, r)))
}

proptest! {
    #[test]
    fn one_step_fixed_point(f in term()) {
        let mut r = Rewriter::default();
        prop_assert!(r.check_fixed_point(&f));
    }

    #[test]
    fn fresh_names_avoid_everything(bodies in prop::collection::vec(term(), 1..5)) {
        let mut r = Rewriter::default();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for b in bodies {
            let body = Term::apply(b.clone(), Term::FreeVar("x".into()));
            let Term::Atom(name) = r.reflexive_name(body, "x").unwrap() else {
                unreachable!()
            };
            prop_assert!(!b.atoms().contains(&name));
            prop_assert!(seen.insert(name));
        }
    }

    #[test]
    fn term_text_round_trips(t in term()) {
        prop_assert_eq!(t.to_string().parse::<Term>().unwrap(), t);
    }

    #[test]
    fn reduction_is_deterministic(f in term(), steps in 0usize..6) {
        let mut r = Rewriter::default();
        let gg = r.fixed_point(&f);
        prop_assert_eq!(r.reduce(&gg, steps), r.reduce(&gg, steps));
        prop_assert_eq!(r.reduce(&gg, steps).steps_used, steps);
    }
}

fn curried(n: usize, z: usize) -> impl Strategy<Value = (CurriedMap, FinMap)> {
    (
        prop::collection::vec(prop::collection::vec(0..z, n), n),
        prop::collection::vec(0..z, z),
    )
        .prop_map(move |(rows, alpha)| {
            (
                CurriedMap::new(FinSet::range(n), FinSet::range(z), rows).unwrap(),
                FinMap::new(FinSet::range(z), FinSet::range(z), alpha).unwrap(),
            )
        })
}

proptest! {
    #[test]
    fn fixed_points_are_sound((f, alpha) in (1usize..5, 1usize..4).prop_flat_map(|(n, z)| curried(n, z))) {
        match lawvere::lawvere_fixed_point(&f, &alpha) {
            Ok(p) => {
                prop_assert_eq!(alpha.apply(p.value), p.value);
                prop_assert_eq!(f.at(p.witness, p.witness), p.value);
            }
            Err(e) => {
                prop_assert_eq!(e, LawvereError::NotSurjective);
                prop_assert!(!lawvere::is_surjective(&f).unwrap());
            }
        }
        prop_assert_eq!(
            lawvere::diagonal_via_delta(&f, &alpha),
            lawvere::cantor_diagonal(&f, &alpha)
        );
    }
}

#[test]
fn fixed_point_free_alpha_always_fails() {
    // every fixed-point-free map on a set of size ≤ 2
    let two = FinSet::range(2);
    let swap = FinMap::new(two.clone(), two, vec![1, 0]).unwrap();
    for n in 1..=3 {
        for f in CurriedMap::enumerate(n, 2) {
            assert_eq!(lawvere::lawvere_fixed_point(&f, &swap), Err(LawvereError::NotSurjective));
        }
    }
}

#[test]
fn surjections_exist_only_onto_one_point() {
    for n in 1..=3 {
        assert!(CurriedMap::enumerate(n, 2).all(|f| !lawvere::is_surjective(&f).unwrap()));
        for f in CurriedMap::enumerate(n, 1) {
            assert!(lawvere::is_surjective(&f).unwrap());
            let id = FinMap::identity(&FinSet::range(1));
            assert_eq!(lawvere::lawvere_fixed_point(&f, &id).unwrap().value, 0);
        }
    }
}

fn model() -> impl Strategy<Value = MachineModel> {
    let all: Vec<MString> = (1..=4).flat_map(MString::all_of_length).collect();
    prop::sample::subsequence(all, 0..40).prop_map(MachineModel::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn truthful_models_leave_the_sentence_unprinted(m in model()) {
        let sentence: MString = "~R~R".parse().unwrap();
        if m.is_truthful() {
            prop_assert!(!m.prints(&sentence));
            prop_assert_eq!(smullyan::semantics(&sentence, &m), Truth::True);
        }
        let mut with = m.clone();
        with.printable.insert(sentence.clone());
        prop_assert!(smullyan::truthfulness_violations(&with).contains(&sentence));
    }
}
