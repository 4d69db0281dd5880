//! Fixed points in a free applicative algebra.
//!
//! Terms are atoms combined by a binary, non-associative application.
//! Definitions `g t => body[x := t]` are installed as left-to-right rewrite
//! rules, so `gx = F(xx)` gives `gg => F(gg)` and the fixed point is
//! observed one rewrite at a time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default step budget for a [`Rewriter`].
pub const DEFAULT_FUEL: usize = 10_000;

/// Deepest parenthesis nesting the parser accepts.
pub const MAX_NESTING: usize = 256;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LambdaError {
    #[error("variable {0} does not occur in the body")]
    VarNotFree(String),
    #[error("{0} is already defined")]
    AlreadyDefined(String),
    #[error("{0} occurs in its own body")]
    SelfReference(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Atom(String),
    Apply(Box<Term>, Box<Term>),
    /// The bound variable of a definition body.
    FreeVar(String),
}

impl Term {
    pub fn atom(name: impl Into<String>) -> Term {
        Term::Atom(name.into())
    }

    pub fn apply(left: Term, right: Term) -> Term {
        Term::Apply(Box::new(left), Box::new(right))
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Apply(l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Apply(l, r) => l.size() + r.size(),
            _ => 1,
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Atom(a) => {
                out.insert(a.clone());
            }
            Term::Apply(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Term::FreeVar(_) => {}
        }
    }

    pub fn contains_var(&self, var: &str) -> bool {
        match self {
            Term::FreeVar(v) => v == var,
            Term::Apply(l, r) => l.contains_var(var) || r.contains_var(var),
            Term::Atom(_) => false,
        }
    }

    /// Replaces `FreeVar(var)` by `t`; atoms of the same name are untouched.
    pub fn substitute(&self, var: &str, t: &Term) -> Term {
        match self {
            Term::FreeVar(v) if v == var => t.clone(),
            Term::Apply(l, r) => Term::apply(l.substitute(var, t), r.substitute(var, t)),
            other => other.clone(),
        }
    }

    /// Atom names in left-to-right order, ignoring bracketing.
    pub fn leaves(&self) -> Vec<String> {
        match self {
            Term::Atom(a) | Term::FreeVar(a) => vec![a.clone()],
            Term::Apply(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    fn name(&self) -> Option<&str> {
        match self {
            Term::Atom(a) | Term::FreeVar(a) => Some(a),
            Term::Apply(..) => None,
        }
    }

    /// Parses a term in which atoms named `var` become the bound variable.
    pub fn parse_body(text: &str, var: &str) -> Result<Term, LambdaError> {
        Ok(text.parse::<Term>()?.bind(var))
    }

    fn bind(self, var: &str) -> Term {
        match self {
            Term::Atom(a) if a == var => Term::FreeVar(a),
            Term::Apply(l, r) => Term::apply(l.bind(var), r.bind(var)),
            other => other,
        }
    }
}

/// Juxtaposition associates to the left; right operands that are
/// applications get parentheses.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(a) | Term::FreeVar(a) => f.write_str(a),
            Term::Apply(l, r) => {
                write!(f, "{l}")?;
                match r.as_ref() {
                    Term::Apply(..) => write!(f, "({r})"),
                    leaf => {
                        let wide = |s: &str| s.chars().count() > 1;
                        let left_end = rightmost_name(l);
                        if wide(leaf.name().unwrap_or_default()) || left_end.is_some_and(wide) {
                            f.write_str(" ")?;
                        }
                        write!(f, "{leaf}")
                    }
                }
            }
        }
    }
}

/// The name printed last by a left operand, if it does not end in `)`.
fn rightmost_name(t: &Term) -> Option<&str> {
    match t {
        Term::Atom(a) | Term::FreeVar(a) => Some(a),
        Term::Apply(_, r) => match r.as_ref() {
            Term::Apply(..) => None,
            leaf => leaf.name(),
        },
    }
}

/// Identifiers are one letter followed by any digits or underscores, so
/// `gg` is two atoms and `g0` is one.
impl FromStr for Term {
    type Err = LambdaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TermParser {
            chars: s.char_indices().collect(),
            pos: 0,
            len: s.len(),
            nesting: 0,
        };
        let t = p.sequence()?;
        p.skip_ws();
        if let Some(&(offset, c)) = p.chars.get(p.pos) {
            return Err(LambdaError::Parse {
                offset,
                message: format!("unexpected {c:?}"),
            });
        }
        Ok(t)
    }
}

struct TermParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    nesting: usize,
}

impl TermParser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn sequence(&mut self) -> Result<Term, LambdaError> {
        let mut acc: Option<Term> = None;
        loop {
            self.skip_ws();
            let item = match self.peek() {
                Some('(') => {
                    if self.nesting == MAX_NESTING {
                        return Err(LambdaError::Parse {
                            offset: self.offset(),
                            message: format!("parentheses nested deeper than {MAX_NESTING}"),
                        });
                    }
                    self.pos += 1;
                    self.nesting += 1;
                    let inner = self.sequence()?;
                    self.nesting -= 1;
                    self.skip_ws();
                    if self.peek() != Some(')') {
                        return Err(LambdaError::Parse {
                            offset: self.offset(),
                            message: "expected ')'".into(),
                        });
                    }
                    self.pos += 1;
                    inner
                }
                Some(c) if c.is_alphabetic() => {
                    let mut name = String::from(c);
                    self.pos += 1;
                    while let Some(d) = self.peek().filter(|d| d.is_ascii_digit() || *d == '_') {
                        name.push(d);
                        self.pos += 1;
                    }
                    Term::Atom(name)
                }
                _ => break,
            };
            acc = Some(match acc {
                None => item,
                Some(left) => Term::apply(left, item),
            });
        }
        acc.ok_or_else(|| LambdaError::Parse {
            offset: self.offset(),
            message: "expected a term".into(),
        })
    }
}

/// A rule `name t => body[var := t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexiveDef {
    pub name: String,
    pub var: String,
    pub body: Term,
}

impl fmt::Display for ReflexiveDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = Term::apply(Term::atom(&self.name), Term::FreeVar(self.var.clone()));
        write!(f, "{lhs} => {}", self.body)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub term: Term,
    pub steps_used: usize,
    /// Stopped on the step limit with a redex still present.
    pub exhausted: bool,
}

/// A registry of definitions plus a step budget.
#[derive(Clone, Debug)]
pub struct Rewriter {
    defs: BTreeMap<String, ReflexiveDef>,
    fuel: usize,
    counter: usize,
}

impl Default for Rewriter {
    fn default() -> Self {
        Rewriter::new(DEFAULT_FUEL)
    }
}

impl Rewriter {
    pub fn new(fuel: usize) -> Self {
        Rewriter {
            defs: BTreeMap::new(),
            fuel,
            counter: 0,
        }
    }

    pub fn fuel(&self) -> usize {
        self.fuel
    }

    pub fn defs(&self) -> impl Iterator<Item = &ReflexiveDef> {
        self.defs.values()
    }

    pub fn get(&self, name: &str) -> Option<&ReflexiveDef> {
        self.defs.get(name)
    }

    /// Installs `name t => body[var := t]` under a chosen name.
    pub fn define(&mut self, name: &str, var: &str, body: Term) -> Result<&ReflexiveDef, LambdaError> {
        if !body.contains_var(var) {
            return Err(LambdaError::VarNotFree(var.to_string()));
        }
        if self.defs.contains_key(name) {
            return Err(LambdaError::AlreadyDefined(name.to_string()));
        }
        if body.atoms().contains(name) {
            return Err(LambdaError::SelfReference(name.to_string()));
        }
        Ok(self.install(name.to_string(), var, body))
    }

    fn install(&mut self, name: String, var: &str, body: Term) -> &ReflexiveDef {
        let def = ReflexiveDef {
            name: name.clone(),
            var: var.to_string(),
            body,
        };
        self.defs.entry(name).or_insert(def)
    }

    /// Names `body` by a fresh atom `g0`, `g1`, ... and installs its rule.
    pub fn reflexive_name(&mut self, body: Term, var: &str) -> Result<Term, LambdaError> {
        if !body.contains_var(var) {
            return Err(LambdaError::VarNotFree(var.to_string()));
        }
        let taken = body.atoms();
        let name = loop {
            let candidate = format!("g{}", self.counter);
            self.counter += 1;
            if !taken.contains(&candidate) && !self.defs.contains_key(&candidate) {
                break candidate;
            }
        };
        self.install(name.clone(), var, body);
        Ok(Term::Atom(name))
    }

    /// `gg` where `gx => F(xx)`.
    pub fn fixed_point(&mut self, f: &Term) -> Term {
        let x = Term::FreeVar("x".into());
        let body = Term::apply(f.clone(), Term::apply(x.clone(), x));
        let g = self.reflexive_name(body, "x").expect("body mentions x");
        Term::apply(g.clone(), g)
    }

    /// Rewrites the leftmost-outermost redex once.
    pub fn step(&self, t: &Term) -> Option<Term> {
        match t {
            Term::Apply(l, r) => {
                if let Term::Atom(name) = l.as_ref() {
                    if let Some(def) = self.defs.get(name) {
                        return Some(def.body.substitute(&def.var, r));
                    }
                }
                if let Some(l2) = self.step(l) {
                    return Some(Term::Apply(Box::new(l2), r.clone()));
                }
                self.step(r).map(|r2| Term::Apply(l.clone(), Box::new(r2)))
            }
            _ => None,
        }
    }

    /// At most `steps` rewrites, capped by the fuel.
    pub fn reduce(&self, t: &Term, steps: usize) -> Reduction {
        let limit = steps.min(self.fuel);
        let mut term = t.clone();
        let mut used = 0;
        while used < limit {
            match self.step(&term) {
                Some(next) => {
                    term = next;
                    used += 1;
                }
                None => {
                    return Reduction {
                        term,
                        steps_used: used,
                        exhausted: false,
                    }
                }
            }
        }
        let exhausted = self.step(&term).is_some();
        Reduction {
            term,
            steps_used: used,
            exhausted,
        }
    }

    /// One rewrite of the fixed-point term gives `F` applied to it.
    pub fn check_fixed_point(&mut self, f: &Term) -> bool {
        let fp = self.fixed_point(f);
        self.reduce(&fp, 1).term == Term::apply(f.clone(), fp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(t("a((bx)x)"), Term::apply(Term::atom("a"), t("(bx)x")));
        assert_eq!(t("a((bx)x)").to_string(), "a(bxx)");
        assert_eq!(t("(g g)"), t("gg"));
        assert_eq!(t("abc"), Term::apply(t("ab"), t("c")));
        assert_eq!(t("g0 g0").to_string(), "g0 g0");
        assert_eq!(t("F(g0 g0)").to_string(), "F(g0 g0)");
        assert_eq!(t("g0g0"), t("g0 g0"));
        assert!(matches!("a)".parse::<Term>(), Err(LambdaError::Parse { offset: 1, .. })));
        assert!(matches!("(a".parse::<Term>(), Err(LambdaError::Parse { .. })));
        assert!(matches!("".parse::<Term>(), Err(LambdaError::Parse { .. })));
        assert!(matches!("a+b".parse::<Term>(), Err(LambdaError::Parse { .. })));
        let deep = format!("{}a{}", "(".repeat(MAX_NESTING + 1), ")".repeat(MAX_NESTING + 1));
        assert!(matches!(deep.parse::<Term>(), Err(LambdaError::Parse { .. })));
    }

    #[test]
    fn print_round_trips() {
        for s in ["a", "ab", "a(bc)", "(ab)(cd)", "F(F(g1 g1))", "x1 y(z_2 w)"] {
            assert_eq!(t(&t(s).to_string()), t(s), "{s}");
        }
    }

    #[test]
    fn reflexive_naming() {
        let mut r = Rewriter::default();
        let g = r.reflexive_name(Term::parse_body("a((bx)x)", "x").unwrap(), "x").unwrap();
        assert_eq!(g, Term::atom("g0"));
        let out = r.reduce(&Term::apply(g, t("c")), 1);
        assert_eq!(out.term, t("a((bc)c)"));
        assert_eq!(r.reflexive_name(t("a"), "x"), Err(LambdaError::VarNotFree("x".into())));
    }

    #[test]
    fn fresh_names_skip_body_atoms() {
        let mut r = Rewriter::default();
        let g = r.reflexive_name(Term::parse_body("g0 g1 x", "x").unwrap(), "x").unwrap();
        assert_eq!(g, Term::atom("g2"));
        let h = r.reflexive_name(Term::parse_body("x", "x").unwrap(), "x").unwrap();
        assert_eq!(h, Term::atom("g3"));
    }

    #[test]
    fn gg_unfolds() {
        let mut r = Rewriter::default();
        let gg = r.fixed_point(&t("F"));
        assert_eq!(r.reduce(&gg, 1).term, t("F(g0 g0)"));
        let three = r.reduce(&gg, 3);
        assert_eq!(three.term, t("F(F(F(g0 g0)))"));
        assert_eq!(three.steps_used, 3);
        assert!(three.exhausted);
    }

    #[test]
    fn identity_fixed_point_returns_to_start() {
        let mut r = Rewriter::default();
        r.define("I", "x", Term::FreeVar("x".into())).unwrap();
        let gg = r.fixed_point(&t("I"));
        let once = r.reduce(&gg, 1).term;
        assert_eq!(once, Term::apply(t("I"), gg.clone()));
        assert_eq!(r.reduce(&gg, 2).term, gg);
    }

    #[test]
    fn atoms_are_normal() {
        let r = Rewriter::default();
        let out = r.reduce(&t("a"), 5);
        assert_eq!((out.term, out.steps_used, out.exhausted), (t("a"), 0, false));
    }

    #[test]
    fn capture_free_substitution() {
        let body = Term::apply(Term::atom("x"), Term::FreeVar("x".into()));
        assert_eq!(body.substitute("x", &t("c")), t("xc"));
    }

    #[test]
    fn fuel_caps_steps() {
        let mut r = Rewriter::new(2);
        let gg = r.fixed_point(&t("F"));
        let out = r.reduce(&gg, 10);
        assert_eq!(out.steps_used, 2);
        assert!(out.exhausted);
    }

    #[test]
    fn fixed_point_checks() {
        let mut r = Rewriter::default();
        assert!(r.check_fixed_point(&t("F")));
        assert!(r.check_fixed_point(&t("ab")));
    }

    #[test]
    fn define_errors() {
        let mut r = Rewriter::default();
        r.define("I", "x", Term::parse_body("x", "x").unwrap()).unwrap();
        assert_eq!(
            r.define("I", "x", Term::parse_body("x", "x").unwrap()),
            Err(LambdaError::AlreadyDefined("I".into()))
        );
        assert_eq!(
            r.define("K", "x", Term::parse_body("Kx", "x").unwrap()),
            Err(LambdaError::SelfReference("K".into()))
        );
        assert_eq!(r.get("I").unwrap().to_string(), "Ix => x");
    }
}
