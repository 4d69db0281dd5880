//! A seven-symbol formal language with decimal Gödel numbering.
//!
//! Symbols map to digits `( ) ∼ P x | ♯` ↦ `1 2 3 4 5 6 7`, so a formula's
//! Gödel number is its digit string read in base ten. Numerals are runs of
//! slashes. Substituting a number for `x` therefore has two faces: textually
//! the variable becomes a slash numeral, and digit-wise every `5` becomes a
//! run of `6`s. Both faces are kept run-length encoded so that numbers like
//! `♯341752` (341 757 digits) never need to be written out.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::shift::{BaseCategory, CategoricalPair, RefArrow, ShiftError};

/// Longest digit or token sequence this module will write out explicitly.
pub const MATERIALIZE_LIMIT: usize = 1_000_000;

/// Literal slashes printed before switching to `|^N`.
const LITERAL_SLASHES: u32 = 16;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GodelError {
    #[error("'{0}' is not in the alphabet ( ) ~ P x | #")]
    InvalidSymbol(char),
    #[error("the empty formula has no Gödel number")]
    EmptyFormula,
    #[error("empty number")]
    EmptyNumber,
    #[error("digit '{0}' does not code a symbol")]
    InvalidDigit(char),
    #[error("run counts must be at least 1")]
    ZeroCount,
    #[error("malformed run-length token {0:?}")]
    MalformedRun(String),
    #[error("formula has no free variable")]
    NoFreeVariable,
    #[error("{what} would need {size} symbols, over the limit of {MATERIALIZE_LIMIT}")]
    TooLarge { what: &'static str, size: String },
    #[error("{number} is not the Gödel number of {formula}")]
    InvalidAxiom { number: String, formula: String },
}

/// A positive run length, arbitrarily large.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Count(BigUint);

impl Count {
    pub fn new(n: u64) -> Self {
        Count(BigUint::from(n))
    }

    pub fn one() -> Self {
        Count(BigUint::one())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn small(&self) -> Option<usize> {
        self.0.to_usize().filter(|n| *n <= MATERIALIZE_LIMIT)
    }
}

impl From<BigUint> for Count {
    fn from(n: BigUint) -> Self {
        Count(n)
    }
}

impl std::ops::Add<&Count> for &Count {
    type Output = Count;

    fn add(self, rhs: &Count) -> Count {
        Count(&self.0 + &rhs.0)
    }
}

impl std::ops::Mul<&Count> for &Count {
    type Output = Count;

    fn mul(self, rhs: &Count) -> Count {
        Count(&self.0 * &rhs.0)
    }
}

impl FromStr for Count {
    type Err = GodelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(GodelError::MalformedRun(s.to_string()));
        }
        let n = s
            .parse::<BigUint>()
            .map_err(|_| GodelError::MalformedRun(s.to_string()))?;
        Ok(Count(n))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LToken {
    LParen,
    RParen,
    Tilde,
    P,
    Var,
    SlashRun(Count),
    Sharp,
}

impl LToken {
    fn digit(&self) -> u8 {
        match self {
            LToken::LParen => 1,
            LToken::RParen => 2,
            LToken::Tilde => 3,
            LToken::P => 4,
            LToken::Var => 5,
            LToken::SlashRun(_) => 6,
            LToken::Sharp => 7,
        }
    }

    fn from_digit(d: u8) -> LToken {
        match d {
            1 => LToken::LParen,
            2 => LToken::RParen,
            3 => LToken::Tilde,
            4 => LToken::P,
            5 => LToken::Var,
            6 => LToken::SlashRun(Count::one()),
            7 => LToken::Sharp,
            _ => unreachable!("digits are validated on construction"),
        }
    }

    fn symbol(&self) -> char {
        match self {
            LToken::LParen => '(',
            LToken::RParen => ')',
            LToken::Tilde => '~',
            LToken::P => 'P',
            LToken::Var => 'x',
            LToken::SlashRun(_) => '|',
            LToken::Sharp => '#',
        }
    }
}

/// A string of the language. Adjacent slashes are always merged into one
/// maximal run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Formula {
    tokens: Vec<LToken>,
}

impl Formula {
    pub fn from_tokens(tokens: impl IntoIterator<Item = LToken>) -> Self {
        let mut out: Vec<LToken> = Vec::new();
        for t in tokens {
            match (out.last_mut(), t) {
                (_, LToken::SlashRun(n)) if n.is_zero() => {}
                (Some(LToken::SlashRun(acc)), LToken::SlashRun(n)) => *acc = &*acc + &n,
                (_, t) => out.push(t),
            }
        }
        Formula { tokens: out }
    }

    pub fn tokens(&self) -> &[LToken] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn has_free_variable(&self) -> bool {
        self.tokens.contains(&LToken::Var)
    }

    pub fn var_count(&self) -> usize {
        self.tokens.iter().filter(|t| **t == LToken::Var).count()
    }

    /// The slash numeral for `n`.
    pub fn numeral(n: Count) -> Formula {
        Formula::from_tokens([LToken::SlashRun(n)])
    }

    /// The count of a formula that is exactly one slash run.
    pub fn as_numeral(&self) -> Option<&Count> {
        match self.tokens.as_slice() {
            [LToken::SlashRun(n)] => Some(n),
            _ => None,
        }
    }

    /// Contains `♯x`, i.e. has the shape `S(♯x)`.
    pub fn has_sharp_variable(&self) -> bool {
        self.tokens
            .windows(2)
            .any(|w| w[0] == LToken::Sharp && w[1] == LToken::Var)
    }

    /// Parses strict alphabet text; also accepts `∼` and `♯`.
    pub fn parse(text: &str) -> Result<Formula, GodelError> {
        Self::parse_inner(text, false)
    }

    /// Like [`Formula::parse`] but also accepts `|^N` for a run of `N` slashes.
    pub fn parse_compact(text: &str) -> Result<Formula, GodelError> {
        Self::parse_inner(text, true)
    }

    fn parse_inner(text: &str, compact: bool) -> Result<Formula, GodelError> {
        let mut tokens = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            let t = match c {
                '(' => LToken::LParen,
                ')' => LToken::RParen,
                '~' | '∼' => LToken::Tilde,
                'P' => LToken::P,
                'x' => LToken::Var,
                '#' | '♯' => LToken::Sharp,
                '|' if compact && chars.peek() == Some(&'^') => {
                    chars.next();
                    let mut digits = String::new();
                    while let Some(d) = chars.next_if(char::is_ascii_digit) {
                        digits.push(d);
                    }
                    LToken::SlashRun(digits.parse()?)
                }
                '|' => LToken::SlashRun(Count::one()),
                other => return Err(GodelError::InvalidSymbol(other)),
            };
            tokens.push(t);
        }
        Ok(Formula::from_tokens(tokens))
    }

    /// Every slash written out; fails past [`MATERIALIZE_LIMIT`] symbols.
    pub fn to_ascii(&self) -> Result<String, GodelError> {
        let mut out = String::new();
        for t in &self.tokens {
            match t {
                LToken::SlashRun(n) => {
                    let k = n.small().ok_or_else(|| GodelError::TooLarge {
                        what: "formula",
                        size: n.to_string(),
                    })?;
                    if out.len() + k > MATERIALIZE_LIMIT {
                        return Err(GodelError::TooLarge {
                            what: "formula",
                            size: (out.len() + k).to_string(),
                        });
                    }
                    out.extend(std::iter::repeat_n('|', k));
                }
                t => out.push(t.symbol()),
            }
        }
        Ok(out)
    }
}

impl FromStr for Formula {
    type Err = GodelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::parse_compact(s)
    }
}

/// Short slash runs are written out; long ones as `|^N`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tokens {
            match t {
                LToken::SlashRun(n) => match n.to_u64() {
                    Some(k) if k <= LITERAL_SLASHES as u64 => {
                        f.write_str(&"|".repeat(k as usize))?;
                    }
                    _ => write!(f, "|^{n}")?,
                },
                t => write!(f, "{}", t.symbol())?,
            }
        }
        Ok(())
    }
}

/// A decimal number over the digits 1–7, stored as maximal digit runs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GodelNumber {
    runs: Vec<(u8, Count)>,
}

impl GodelNumber {
    /// Normalizes adjacent equal digits; rejects digits outside 1–7 and zero counts.
    pub fn from_runs(runs: impl IntoIterator<Item = (u8, Count)>) -> Result<Self, GodelError> {
        let mut out: Vec<(u8, Count)> = Vec::new();
        for (d, n) in runs {
            if !(1..=7).contains(&d) {
                return Err(GodelError::InvalidDigit(char::from(b'0' + d.min(9))));
            }
            if n.is_zero() {
                return Err(GodelError::ZeroCount);
            }
            match out.last_mut() {
                Some((last, acc)) if *last == d => *acc = &*acc + &n,
                _ => out.push((d, n)),
            }
        }
        if out.is_empty() {
            return Err(GodelError::EmptyNumber);
        }
        Ok(GodelNumber { runs: out })
    }

    /// From a plain decimal literal such as `34152`.
    pub fn from_decimal(digits: &str) -> Result<Self, GodelError> {
        let runs = digits
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d @ 1..=7) => Ok((d as u8, Count::one())),
                _ => Err(GodelError::InvalidDigit(c)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        GodelNumber::from_runs(runs)
    }

    /// The number whose decimal value is `n`, if its digits all lie in 1–7.
    pub fn from_count(n: &Count) -> Result<Self, GodelError> {
        GodelNumber::from_decimal(&n.to_string())
    }

    pub fn runs(&self) -> &[(u8, Count)] {
        &self.runs
    }

    pub fn digit_length(&self) -> Count {
        self.runs.iter().fold(Count(BigUint::zero()), |acc, (_, n)| &acc + n)
    }

    pub fn contains_digit(&self, d: u8) -> bool {
        self.runs.iter().any(|(e, _)| *e == d)
    }

    /// Number of `5` digits, i.e. occurrences of the variable.
    pub fn fives(&self) -> Count {
        self.runs
            .iter()
            .filter(|(d, _)| *d == 5)
            .fold(Count(BigUint::zero()), |acc, (_, n)| &acc + n)
    }

    pub fn to_decimal_string(&self) -> Result<String, GodelError> {
        let len = self.digit_length();
        let too_large = || GodelError::TooLarge {
            what: "number",
            size: len.to_string(),
        };
        len.small().ok_or_else(too_large)?;
        let mut s = String::new();
        for (d, n) in &self.runs {
            let k = n.small().ok_or_else(too_large)?;
            s.extend(std::iter::repeat_n(char::from(b'0' + d), k));
        }
        Ok(s)
    }

    /// The decimal value as a count, for use as a numeral length.
    pub fn value(&self) -> Result<Count, GodelError> {
        Ok(Count(
            self.to_decimal_string()?
                .parse::<BigUint>()
                .expect("decimal digits parse"),
        ))
    }
}

impl FromStr for GodelNumber {
    type Err = GodelError;

    /// Whitespace-separated tokens, each a literal digit string or `dxN`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut runs = Vec::new();
        for token in s.split_whitespace() {
            if let Some((d, n)) = token.split_once('x') {
                let mut ds = d.chars();
                let (Some(c), None) = (ds.next(), ds.next()) else {
                    return Err(GodelError::MalformedRun(token.to_string()));
                };
                let digit = match c.to_digit(10) {
                    Some(d @ 1..=7) => d as u8,
                    Some(_) => return Err(GodelError::InvalidDigit(c)),
                    None => return Err(GodelError::MalformedRun(token.to_string())),
                };
                runs.push((digit, n.parse::<Count>()?));
            } else {
                runs.extend(GodelNumber::from_decimal(token)?.runs);
            }
        }
        GodelNumber::from_runs(runs)
    }
}

/// Run-length wire format: runs of up to three digits are written literally.
impl fmt::Display for GodelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut literal = String::new();
        let mut first = true;
        let sep = |f: &mut fmt::Formatter<'_>, first: &mut bool| {
            if !std::mem::take(first) {
                f.write_str(" ")?;
            }
            Ok::<_, fmt::Error>(())
        };
        for (d, n) in &self.runs {
            let c = char::from(b'0' + d);
            match n.to_u64() {
                Some(k) if k <= 3 => literal.extend(std::iter::repeat_n(c, k as usize)),
                _ => {
                    if !literal.is_empty() {
                        sep(f, &mut first)?;
                        f.write_str(&std::mem::take(&mut literal))?;
                    }
                    sep(f, &mut first)?;
                    write!(f, "{c}x{n}")?;
                }
            }
        }
        if !literal.is_empty() {
            sep(f, &mut first)?;
            f.write_str(&literal)?;
        }
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<Formula, GodelError> {
    Formula::parse(text)
}

pub fn encode(f: &Formula) -> Result<GodelNumber, GodelError> {
    if f.is_empty() {
        return Err(GodelError::EmptyFormula);
    }
    GodelNumber::from_runs(f.tokens.iter().map(|t| match t {
        LToken::SlashRun(n) => (6, n.clone()),
        t => (t.digit(), Count::one()),
    }))
}

/// Inverse of [`encode`]. Runs of sixes stay compressed as slash runs; any
/// other digit repeated more than [`MATERIALIZE_LIMIT`] times is refused.
pub fn decode(g: &GodelNumber) -> Result<Formula, GodelError> {
    let mut tokens = Vec::with_capacity(g.runs.len());
    for (d, n) in &g.runs {
        if *d == 6 {
            tokens.push(LToken::SlashRun(n.clone()));
            continue;
        }
        let k = n.small().ok_or_else(|| GodelError::TooLarge {
            what: "decoded formula",
            size: n.to_string(),
        })?;
        tokens.extend(std::iter::repeat_n(LToken::from_digit(*d), k));
    }
    Ok(Formula::from_tokens(tokens))
}

/// Every digit `5` of `n` becomes a run of `count` sixes.
pub fn insert_count(n: &GodelNumber, count: &Count) -> GodelNumber {
    if count.is_zero() {
        // zero sixes: the fives simply vanish
        let kept: Vec<_> = n.runs.iter().filter(|(d, _)| *d != 5).cloned().collect();
        return GodelNumber::from_runs(kept).unwrap_or_else(|_| n.clone());
    }
    GodelNumber::from_runs(n.runs.iter().map(|(d, k)| {
        if *d == 5 {
            (6, k * count)
        } else {
            (*d, k.clone())
        }
    }))
    .expect("substitution keeps digits valid")
}

/// `n ∘ m`: the fives of `n` replaced by `m` sixes (`m` read as a decimal value).
pub fn compose_numbers(n: &GodelNumber, m: &GodelNumber) -> Result<GodelNumber, GodelError> {
    if !n.contains_digit(5) {
        return Ok(n.clone());
    }
    Ok(insert_count(n, &m.value()?))
}

/// `♯g = g ∘ g`.
pub fn sharp_decimal(g: &GodelNumber) -> Result<GodelNumber, GodelError> {
    compose_numbers(g, g)
}

/// Every `x` in `s` replaced by `t`.
pub fn substitute(s: &Formula, t: &Formula) -> Result<Formula, GodelError> {
    if !s.has_free_variable() {
        return Err(GodelError::NoFreeVariable);
    }
    Ok(Formula::from_tokens(s.tokens.iter().flat_map(|tok| {
        if *tok == LToken::Var {
            t.tokens.clone()
        } else {
            vec![tok.clone()]
        }
    })))
}

/// A morphism of the language's category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LMorphism {
    Fml(Formula),
    Num(GodelNumber),
    SharpOp,
    /// A composite with no specified relation; never nested, never a
    /// singleton. The empty composite is the identity.
    FormalComposite(Vec<LMorphism>),
}

impl fmt::Display for LMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LMorphism::Fml(x) => write!(f, "{x}"),
            LMorphism::Num(g) => write!(f, "{g}"),
            LMorphism::SharpOp => f.write_str("#"),
            LMorphism::FormalComposite(items) if items.is_empty() => f.write_str("1"),
            LMorphism::FormalComposite(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|m| match m {
                        LMorphism::Num(g) => format!("[{g}]"),
                        m => m.to_string(),
                    })
                    .collect();
                write!(f, "({})", parts.join(" ∘ "))
            }
        }
    }
}

impl LMorphism {
    fn flatten_into(self, out: &mut Vec<LMorphism>) {
        match self {
            LMorphism::FormalComposite(items) => out.extend(items),
            m => out.push(m),
        }
    }
}

/// The defined composite of two non-composite morphisms, or `None` when the
/// composition is formal.
fn compose_atoms(a: &LMorphism, b: &LMorphism) -> Result<Option<LMorphism>, GodelError> {
    use LMorphism::{Fml, Num, SharpOp};
    Ok(match (a, b) {
        // S(y) ∘ T = S(T), S(x) ∘ n = S(n)
        (Fml(s), Fml(t)) if s.has_free_variable() => Some(Fml(substitute(s, t)?)),
        // S(x) ∘ g = S([g])
        (Fml(s), Num(g)) if s.has_free_variable() => Some(Fml(substitute(s, &Formula::numeral(g.value()?))?)),
        // g ∘ h = number of S([h]) when g codes S(x)
        (Num(n), Num(m)) if n.contains_digit(5) => Some(Num(compose_numbers(n, m)?)),
        // ♯ ∘ g = ♯g
        (SharpOp, Num(g)) if g.contains_digit(5) => Some(Num(sharp_decimal(g)?)),
        // ♯n = [♯g] for a numeral n standing for such a g
        (SharpOp, Fml(n)) => match n.as_numeral().map(GodelNumber::from_count) {
            Some(Ok(g)) if g.contains_digit(5) => Some(Fml(Formula::numeral(sharp_decimal(&g)?.value()?))),
            _ => None,
        },
        _ => None,
    })
}

/// Composition in the language's category, `a ∘ b` ("a after b").
///
/// Both sides are flattened into one sequence, then defined compositions
/// are applied greedily from the left. `S(x) ∘ ♯ ∘ t` is read as
/// `S(♯x) ∘ t`.
pub fn compose_c(a: &LMorphism, b: &LMorphism) -> Result<LMorphism, GodelError> {
    let mut items = Vec::new();
    a.clone().flatten_into(&mut items);
    b.clone().flatten_into(&mut items);
    'outer: loop {
        for i in 0..items.len().saturating_sub(1) {
            if let (LMorphism::Fml(s), LMorphism::SharpOp, Some(next)) = (&items[i], &items[i + 1], items.get(i + 2)) {
                if s.has_free_variable() {
                    let sharp_x = Formula::from_tokens([LToken::Sharp, LToken::Var]);
                    let s_sharp = LMorphism::Fml(substitute(s, &sharp_x)?);
                    if let Some(c) = compose_atoms(&s_sharp, next)? {
                        items.splice(i..i + 3, [c]);
                        continue 'outer;
                    }
                }
            }
            if let Some(c) = compose_atoms(&items[i], &items[i + 1])? {
                items.splice(i..i + 2, [c]);
                continue 'outer;
            }
        }
        break;
    }
    Ok(match items.len() {
        1 => items.pop().expect("one item"),
        _ => LMorphism::FormalComposite(items),
    })
}

/// The language's category as a base for the shift.
#[derive(Clone, Copy, Debug, Default)]
pub struct LanguageCategory;

impl BaseCategory for LanguageCategory {
    type Morphism = LMorphism;

    fn compose(&self, after: &LMorphism, before: &LMorphism) -> Result<LMorphism, ShiftError> {
        compose_c(after, before).map_err(|e| ShiftError::Base(e.to_string()))
    }

    fn composable(&self, _: &LMorphism, _: &LMorphism) -> bool {
        true
    }

    fn sharp(&self, a: &LMorphism) -> Result<LMorphism, ShiftError> {
        self.compose(&LMorphism::SharpOp, a)
    }

    fn is_self_morphism(&self, _: &LMorphism) -> bool {
        true
    }

    fn ends_in_sharp(&self, _: &LMorphism, dst: &LMorphism) -> bool {
        match dst {
            LMorphism::Fml(f) => f.has_sharp_variable(),
            LMorphism::FormalComposite(items) => items.last() == Some(&LMorphism::SharpOp),
            _ => false,
        }
    }
}

/// The pair whose reference arrows send Gödel numbers to their formulas.
pub fn srt_arrows_for_l(axioms: &[(GodelNumber, Formula)]) -> Result<CategoricalPair<LanguageCategory>, GodelError> {
    let mut pair = CategoricalPair::new(LanguageCategory).with_two_category();
    for (g, f) in axioms {
        if encode(f).ok().as_ref() != Some(g) {
            return Err(GodelError::InvalidAxiom {
                number: g.to_string(),
                formula: f.to_string(),
            });
        }
        pair.add_arrow(RefArrow::new(LMorphism::Num(g.clone()), LMorphism::Fml(f.clone())));
    }
    Ok(pair)
}

/// The formula that denies the printability of its own Gödel number.
#[derive(Clone, Debug)]
pub struct SelfRefuter {
    /// `∼P(♯x)`
    pub template: Formula,
    /// Gödel number of the template.
    pub template_number: GodelNumber,
    /// `♯` of the template number.
    pub number: GodelNumber,
    /// `∼P(♯[g])`
    pub formula: Formula,
    /// `encode(formula) == number`, checked run by run.
    pub verified: bool,
}

pub fn build_self_refuter() -> SelfRefuter {
    use LToken::*;
    let template = Formula::from_tokens([Tilde, P, LParen, Sharp, Var, RParen]);
    let template_number = encode(&template).expect("nonempty");
    let number = sharp_decimal(&template_number).expect("six-digit value");
    let numeral = Formula::numeral(template_number.value().expect("six-digit value"));
    let formula = substitute(&template, &numeral).expect("template has x");
    let verified = encode(&formula).as_ref() == Ok(&number);
    SelfRefuter {
        template,
        template_number,
        number,
        formula,
        verified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GodelNumber {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Formula {
        Formula::parse_compact(s).unwrap()
    }

    #[test]
    fn parse_tokens() {
        use LToken::*;
        assert_eq!(parse("~P(x)").unwrap().tokens(), &[Tilde, P, LParen, Var, RParen]);
        assert_eq!(parse("|||").unwrap().tokens(), &[SlashRun(Count::new(3))]);
        assert!(parse("").unwrap().is_empty());
        assert_eq!(parse("P(y)"), Err(GodelError::InvalidSymbol('y')));
        assert_eq!(parse("∼P(♯x)").unwrap(), parse("~P(#x)").unwrap());
        assert_eq!(parse("|^3"), Err(GodelError::InvalidSymbol('^')));
        assert_eq!(f("|^3"), parse("|||").unwrap());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&f("~P(x)")).unwrap(), GodelNumber::from_decimal("34152").unwrap());
        assert_eq!(encode(&f("~P(#x)")).unwrap(), GodelNumber::from_decimal("341752").unwrap());
        assert_eq!(encode(&f("|||")).unwrap().to_string(), "666");
        assert_eq!(encode(&Formula::default()), Err(GodelError::EmptyFormula));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&g("34152")).unwrap().to_string(), "~P(x)");
        assert_eq!(decode(&g("416662")).unwrap().to_string(), "P(|||)");
        assert_eq!(decode(&g("7")).unwrap().tokens(), &[LToken::Sharp]);
        assert!(matches!(decode(&g("1x2000000")), Err(GodelError::TooLarge { .. })));
        assert_eq!(decode(&g("6x2000000")).unwrap().to_string(), "|^2000000");
    }

    #[test]
    fn wire_format() {
        let n = g("341 6x34152 2");
        assert_eq!(n.runs().len(), 5);
        assert_eq!(n.to_string(), "341 6x34152 2");
        assert_eq!(g("3 4 1 5 2"), g("34152"));
        assert_eq!(g("66 6"), g("6x3"));
        assert_eq!("".parse::<GodelNumber>(), Err(GodelError::EmptyNumber));
        assert_eq!("309".parse::<GodelNumber>(), Err(GodelError::InvalidDigit('0')));
        assert_eq!("8x3".parse::<GodelNumber>(), Err(GodelError::InvalidDigit('8')));
        assert_eq!("6x0".parse::<GodelNumber>(), Err(GodelError::ZeroCount));
        assert!(matches!("66x3".parse::<GodelNumber>(), Err(GodelError::MalformedRun(_))));
        assert!(matches!("6x".parse::<GodelNumber>(), Err(GodelError::MalformedRun(_))));
        assert!(matches!("6x-1".parse::<GodelNumber>(), Err(GodelError::MalformedRun(_))));
    }

    #[test]
    fn sharp_examples() {
        let s = sharp_decimal(&g("34152")).unwrap();
        assert_eq!(s.to_string(), "341 6x34152 2");
        assert_eq!(s.digit_length(), Count::new(34156));
        assert_eq!(sharp_decimal(&g("341752")).unwrap().to_string(), "3417 6x341752 2");
        assert_eq!(sharp_decimal(&g("66")).unwrap(), g("66"));
    }

    #[test]
    fn compose_examples() {
        // The printed value 426661 does not re-encode P(|||); 416662 does.
        assert_eq!(compose_numbers(&g("4152"), &g("3")).unwrap(), g("416662"));
        assert_eq!(compose_numbers(&g("34152"), &g("34152")).unwrap(), sharp_decimal(&g("34152")).unwrap());
        assert_eq!(compose_numbers(&g("666"), &g("3")).unwrap(), g("666"));
    }

    #[test]
    fn fives_merge_with_neighbouring_sixes() {
        assert_eq!(compose_numbers(&g("656"), &g("2")).unwrap(), g("6x4"));
        assert_eq!(insert_count(&g("4552"), &Count::new(10)), g("4 6x20 2"));
    }

    #[test]
    fn substitution() {
        assert_eq!(substitute(&f("~P(x)"), &f("|||")).unwrap().to_string(), "~P(|||)");
        let big = substitute(&f("~P(x)"), &Formula::numeral(Count::new(34152))).unwrap();
        assert_eq!(big.to_string(), "~P(|^34152)");
        assert_eq!(substitute(&f("P"), &f("|")), Err(GodelError::NoFreeVariable));
        assert_eq!(substitute(&f("P(x|x)"), &f("|")).unwrap().to_string(), "P(|||)");
    }

    #[test]
    fn composition_table() {
        use LMorphism::*;
        let num = |s: &str| Num(g(s));
        assert_eq!(compose_c(&Fml(f("~P(x)")), &num("3")).unwrap(), Fml(f("~P(|||)")));
        assert_eq!(compose_c(&SharpOp, &num("34152")).unwrap(), Num(sharp_decimal(&g("34152")).unwrap()));
        assert!(matches!(compose_c(&num("666"), &num("666")).unwrap(), FormalComposite(v) if v.len() == 2));
        // rule 3
        assert_eq!(compose_c(&Fml(f("P(x)")), &Fml(f("~x"))).unwrap(), Fml(f("P(~x)")));
        // rule 2
        assert!(matches!(compose_c(&Fml(f("P")), &Fml(f("|"))).unwrap(), FormalComposite(_)));
        // rule 8
        assert_eq!(compose_c(&num("4152"), &num("3")).unwrap(), num("416662"));
        // rule 9 without a free variable stays formal
        assert!(matches!(compose_c(&SharpOp, &num("666")).unwrap(), FormalComposite(_)));
        // rule 10
        assert_eq!(
            compose_c(&SharpOp, &Fml(Formula::numeral(Count::new(4152)))).unwrap(),
            Fml(Formula::numeral(g("41 6x4152 2").value().unwrap()))
        );
        // rules 11-13
        for (a, b) in [(SharpOp, Fml(f("P(x)"))), (num("4152"), SharpOp), (Fml(f("P")), SharpOp)] {
            assert!(matches!(compose_c(&a, &b).unwrap(), FormalComposite(_)));
        }
    }

    #[test]
    fn rule_fourteen_reassociation() {
        use LMorphism::*;
        let s_sharp = compose_c(&Fml(f("~P(x)")), &SharpOp).unwrap();
        assert!(matches!(&s_sharp, FormalComposite(v) if v.len() == 2));
        let applied = compose_c(&s_sharp, &Num(g("341752"))).unwrap();
        assert_eq!(applied, Fml(f("~P(#|^341752)")));
        let applied_to_x = compose_c(&s_sharp, &Fml(f("x"))).unwrap();
        assert_eq!(applied_to_x, Fml(f("~P(#x)")));
    }

    #[test]
    fn self_refuter() {
        let r = build_self_refuter();
        assert!(r.verified);
        assert_eq!(r.number.to_string(), "3417 6x341752 2");
        assert_eq!(r.formula.to_string(), "~P(#|^341752)");
        assert_eq!(decode(&r.number).unwrap(), r.formula);
    }

    #[test]
    fn axioms_checked() {
        assert!(srt_arrows_for_l(&[(g("341752"), f("~P(#x)"))]).is_ok());
        assert!(matches!(
            srt_arrows_for_l(&[(g("34152"), f("~P(#x)"))]),
            Err(GodelError::InvalidAxiom { .. })
        ));
    }

    #[test]
    fn srt1_in_the_language() {
        let pair = srt_arrows_for_l(&[(g("341752"), f("~P(#x)")), (g("34152"), f("~P(x)"))]).unwrap();
        let d = pair.srt1(&pair.arrows[0]).unwrap();
        let end = d.conclusion().unwrap();
        assert_eq!(end.src, LMorphism::Num(g("3417 6x341752 2")));
        assert_eq!(end.dst, LMorphism::Fml(f("~P(#|^341752)")));
        assert!(matches!(pair.srt1(&pair.arrows[1]), Err(ShiftError::NotSrt1Shape(_))));
        let shifted = pair.shift(&pair.arrows[1]).unwrap();
        assert_eq!(shifted.to_string(), "341 6x34152 2 -> ~P(|^34152)");
    }

    #[test]
    fn materialize_limits() {
        assert_eq!(g("341 6x5 2").to_decimal_string().unwrap(), "341666662");
        assert!(matches!(g("6x1000001").to_decimal_string(), Err(GodelError::TooLarge { .. })));
        assert_eq!(f("|^20").to_ascii().unwrap().len(), 20);
    }
}
