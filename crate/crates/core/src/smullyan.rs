//! Smullyan's truth-telling printing machine.
//!
//! Strings over `{∼, P, R, [, ]}` form a one-object category under
//! concatenation. The interpretable strings `PX`, `∼PX`, `RX`, `∼RX` carry
//! reference arrows to bracketed printability claims, and a machine model is
//! truthful when every interpretable string it prints is true.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::shift::{BaseCategory, Derivation, Inference, RefArrow, ShiftError, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Tilde,
    P,
    R,
    Open,
    Close,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::Tilde, Symbol::P, Symbol::R, Symbol::Open, Symbol::Close];

    fn as_char(self) -> char {
        match self {
            Symbol::Tilde => '~',
            Symbol::P => 'P',
            Symbol::R => 'R',
            Symbol::Open => '[',
            Symbol::Close => ']',
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("'{0}' is not one of ~ P R [ ]")]
pub struct InvalidSymbol(pub char);

/// A machine string. Any sequence is valid, including the empty one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MString(Vec<Symbol>);

impl MString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        MString(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &MString) -> MString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MString(v)
    }

    /// `XX`
    pub fn doubled(&self) -> MString {
        self.concat(self)
    }

    fn prefixed(prefix: &[Symbol], x: &MString, bracket: bool) -> MString {
        let mut v = prefix.to_vec();
        if bracket {
            v.push(Symbol::Open);
        }
        v.extend_from_slice(&x.0);
        if bracket {
            v.push(Symbol::Close);
        }
        MString(v)
    }

    /// Every string of exactly `len` symbols, in lexicographic symbol order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = MString> {
        let total = 5usize.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![Symbol::Tilde; len];
            for slot in v.iter_mut().rev() {
                *slot = Symbol::ALL[code % 5];
                code /= 5;
            }
            MString(v)
        })
    }
}

impl FromStr for MString {
    type Err = InvalidSymbol;

    /// Accepts `~` or `∼` for the tilde.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '~' | '∼' => Ok(Symbol::Tilde),
                'P' => Ok(Symbol::P),
                'R' => Ok(Symbol::R),
                '[' => Ok(Symbol::Open),
                ']' => Ok(Symbol::Close),
                other => Err(InvalidSymbol(other)),
            })
            .collect::<Result<_, _>>()
            .map(MString)
    }
}

impl fmt::Display for MString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    NotInterpretable,
    P(MString),
    NegP(MString),
    R(MString),
    NegR(MString),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::NotInterpretable => f.write_str("not interpretable"),
            Classification::P(x) => write!(f, "P with X = \"{x}\""),
            Classification::NegP(x) => write!(f, "~P with X = \"{x}\""),
            Classification::R(x) => write!(f, "R with X = \"{x}\""),
            Classification::NegR(x) => write!(f, "~R with X = \"{x}\""),
        }
    }
}

pub fn classify(s: &MString) -> Classification {
    let rest = |n: usize| MString(s.0[n..].to_vec());
    match s.0.as_slice() {
        [Symbol::Tilde, Symbol::P, ..] => Classification::NegP(rest(2)),
        [Symbol::Tilde, Symbol::R, ..] => Classification::NegR(rest(2)),
        [Symbol::P, ..] => Classification::P(rest(1)),
        [Symbol::R, ..] => Classification::R(rest(1)),
        _ => Classification::NotInterpretable,
    }
}

/// The itemized arrow leaving an interpretable string:
/// `PX -> P[X]`, `∼PX -> ∼P[X]`, `RX -> P[XX]`, `∼RX -> ∼P[XX]`.
pub fn reference_arrow(s: &MString) -> Option<RefArrow<MString>> {
    use Symbol::{Tilde, P};
    let target = match classify(s) {
        Classification::NotInterpretable => return None,
        Classification::P(x) => MString::prefixed(&[P], &x, true),
        Classification::NegP(x) => MString::prefixed(&[Tilde, P], &x, true),
        Classification::R(x) => MString::prefixed(&[P], &x.doubled(), true),
        Classification::NegR(x) => MString::prefixed(&[Tilde, P], &x.doubled(), true),
    };
    Some(RefArrow::new(s.clone(), target))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    NoMeaning,
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::NoMeaning => "no meaning",
        })
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

/// A finite set of printable strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MachineModel {
    pub printable: BTreeSet<MString>,
}

impl MachineModel {
    pub fn new(printable: impl IntoIterator<Item = MString>) -> Self {
        MachineModel {
            printable: printable.into_iter().collect(),
        }
    }

    pub fn prints(&self, s: &MString) -> bool {
        self.printable.contains(s)
    }

    /// One string per line; blank lines are skipped.
    pub fn parse_lines(text: &str) -> Result<Self, InvalidSymbol> {
        let strings = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<MString>, _>>()?;
        Ok(MachineModel::new(strings))
    }

    pub fn is_truthful(&self) -> bool {
        truthfulness_violations(self).is_empty()
    }
}

pub fn semantics(s: &MString, m: &MachineModel) -> Truth {
    match classify(s) {
        Classification::NotInterpretable => Truth::NoMeaning,
        Classification::P(x) => m.prints(&x).into(),
        Classification::NegP(x) => (!m.prints(&x)).into(),
        Classification::R(x) => m.prints(&x.doubled()).into(),
        Classification::NegR(x) => (!m.prints(&x.doubled())).into(),
    }
}

/// Printed strings that are false under the model.
pub fn truthfulness_violations(m: &MachineModel) -> BTreeSet<MString> {
    m.printable
        .iter()
        .filter(|s| semantics(s, m) == Truth::False)
        .cloned()
        .collect()
}

/// The string category: one object, concatenation, no sharp.
#[derive(Clone, Copy, Debug, Default)]
pub struct StringCategory;

impl BaseCategory for StringCategory {
    type Morphism = MString;

    fn compose(&self, after: &MString, before: &MString) -> Result<MString, ShiftError> {
        Ok(after.concat(before))
    }

    fn composable(&self, _: &MString, _: &MString) -> bool {
        true
    }

    fn sharp(&self, _: &MString) -> Result<MString, ShiftError> {
        Err(ShiftError::NoSharpGenerator("the string monoid".into()))
    }

    fn is_self_morphism(&self, _: &MString) -> bool {
        true
    }

    fn ends_in_sharp(&self, _: &MString, _: &MString) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub claim: String,
    pub because: String,
}

/// The argument that `∼R∼R` is true but unprintable in every truthful model.
#[derive(Clone, Debug)]
pub struct MiniatureReport {
    pub sentence: MString,
    pub derivation: Derivation<MString>,
    /// The model `{∼R∼R}` and the violations found in it.
    pub witness: BTreeSet<MString>,
    pub lines: Vec<ProofLine>,
}

impl fmt::Display for MiniatureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.lines.iter().enumerate() {
            writeln!(f, "{}. {}  ({})", i + 1, line.claim, line.because)?;
        }
        Ok(())
    }
}

pub fn goedel_miniature_report() -> MiniatureReport {
    use Symbol::{Tilde, R};
    let x = MString(vec![Tilde, R]);
    let sentence = x.doubled();
    let arrow = reference_arrow(&sentence).expect("~R~R is interpretable");

    // The truth condition of ~R~R mentions only ~R~R itself, so membership
    // of that one string decides everything; both cases are evaluated.
    let self_referential = matches!(classify(&sentence), Classification::NegR(ref y) if y.doubled() == sentence);
    let printed = MachineModel::new([sentence.clone()]);
    let witness = truthfulness_violations(&printed);
    let unprinted = MachineModel::default();
    let true_when_unprinted = semantics(&sentence, &unprinted) == Truth::True;
    debug_assert!(self_referential && witness.contains(&sentence) && true_when_unprinted);

    let lines = vec![
        ProofLine {
            claim: format!("{sentence} has the form ~RX with X = {x}, so it reads \"{} is not printable\"", x.doubled()),
            because: format!("reference arrow {arrow}"),
        },
        ProofLine {
            claim: format!("XX = {}, so {sentence} is true iff {sentence} is not printed", x.doubled()),
            because: if self_referential { "checked: XX equals the sentence" } else { "FAILED" }.into(),
        },
        ProofLine {
            claim: format!("a model that prints {sentence} prints a falsehood"),
            because: format!(
                "violations of {{{sentence}}}: {{{}}}",
                witness.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
            ),
        },
        ProofLine {
            claim: format!("every truthful model leaves {sentence} unprinted"),
            because: "from 3".into(),
        },
        ProofLine {
            claim: format!("{sentence} is true in every truthful model"),
            because: format!("from 2 and 4; semantics with {sentence} unprinted = {}", semantics(&sentence, &unprinted)),
        },
        ProofLine {
            claim: format!("{sentence} is true but unprintable"),
            because: "from 4 and 5".into(),
        },
    ];

    MiniatureReport {
        derivation: Derivation {
            steps: vec![Step {
                rule: Inference::Axiom,
                arrow,
                note: Some("rule 4 with X = ~R".into()),
            }],
        },
        sentence,
        witness,
        lines,
    }
}
