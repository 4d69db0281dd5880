use std::fmt;

use serde::{Deserialize, Serialize};

use super::category::{Category, Word};
use super::ShiftError;

/// The operations a base category must provide for the shift machinery.
///
/// Composition is written `after · before`, matching juxtaposition: the
/// word `Fa` is `compose(F, a)`.
pub trait BaseCategory {
    type Morphism: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn compose(&self, after: &Self::Morphism, before: &Self::Morphism) -> Result<Self::Morphism, ShiftError>;

    fn composable(&self, after: &Self::Morphism, before: &Self::Morphism) -> bool;

    /// `♯a`: the sharp generator composed after `a`.
    fn sharp(&self, a: &Self::Morphism) -> Result<Self::Morphism, ShiftError>;

    fn is_self_morphism(&self, a: &Self::Morphism) -> bool;

    /// Whether `dst` has the form `F♯` with the sharp sitting where `src` lands.
    fn ends_in_sharp(&self, src: &Self::Morphism, dst: &Self::Morphism) -> bool;

    fn equal(&self, a: &Self::Morphism, b: &Self::Morphism) -> Result<bool, ShiftError> {
        Ok(a == b)
    }
}

impl BaseCategory for Category {
    type Morphism = Word;

    fn compose(&self, after: &Word, before: &Word) -> Result<Word, ShiftError> {
        Category::compose(self, after, before)
    }

    fn composable(&self, after: &Word, before: &Word) -> bool {
        after.dom() == before.cod()
    }

    fn sharp(&self, a: &Word) -> Result<Word, ShiftError> {
        let sharp = self
            .sharp_at(a.cod())
            .ok_or_else(|| ShiftError::NoSharpGenerator(a.cod().to_string()))?;
        self.compose(&Word::generator(sharp.clone()), a)
    }

    fn is_self_morphism(&self, a: &Word) -> bool {
        a.is_self_morphism()
    }

    fn ends_in_sharp(&self, src: &Word, dst: &Word) -> bool {
        dst.generators()
            .last()
            .is_some_and(|g| g.is_sharp && g.dom == *src.cod())
    }

    fn equal(&self, a: &Word, b: &Word) -> Result<bool, ShiftError> {
        Ok(self.normalize(a)? == self.normalize(b)?)
    }
}

/// A reference arrow `src -> dst` of the second category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefArrow<M = Word> {
    pub src: M,
    pub dst: M,
}

impl<M> RefArrow<M> {
    pub fn new(src: M, dst: M) -> Self {
        RefArrow { src, dst }
    }
}

impl<M: Clone> RefArrow<M> {
    pub fn identity(m: &M) -> Self {
        RefArrow::new(m.clone(), m.clone())
    }
}

impl<M: fmt::Display> fmt::Display for RefArrow<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src, self.dst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Inference {
    Axiom,
    Shift,
    Horizontal,
    Vertical,
}

impl Inference {
    pub fn as_str(self) -> &'static str {
        match self {
            Inference::Axiom => "axiom",
            Inference::Shift => "shift",
            Inference::Horizontal => "horizontal",
            Inference::Vertical => "vertical",
        }
    }
}

impl fmt::Display for Inference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step<M> {
    pub rule: Inference,
    pub arrow: RefArrow<M>,
    pub note: Option<String>,
}

/// Serialized form of one derivation step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub rule: Inference,
    pub src_word: String,
    pub dst_word: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A trace of reference arrows, each obtained from the previous one by the
/// named inference.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<M = Word> {
    pub steps: Vec<Step<M>>,
}

impl<M> Default for Derivation<M> {
    fn default() -> Self {
        Derivation { steps: Vec::new() }
    }
}

impl<M: fmt::Display> Derivation<M> {
    pub fn conclusion(&self) -> Option<&RefArrow<M>> {
        self.steps.last().map(|s| &s.arrow)
    }

    pub fn records(&self) -> Vec<StepRecord> {
        self.steps
            .iter()
            .map(|s| StepRecord {
                rule: s.rule,
                src_word: s.arrow.src.to_string(),
                dst_word: s.arrow.dst.to_string(),
                note: s.note.clone(),
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "steps": self.records() })
    }
}

impl<M: fmt::Display> fmt::Display for Derivation<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "{}. {}  [{}]", i + 1, s.arrow, s.rule)?;
            if let Some(note) = &s.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of repeated shifting; `stop` records why iteration ended early.
#[derive(Clone, Debug)]
pub struct ShiftSequence<M = Word> {
    pub arrows: Vec<RefArrow<M>>,
    pub stop: Option<ShiftError>,
    pub trace: Derivation<M>,
}

/// A base category together with the reference arrows given on it.
#[derive(Clone, Debug)]
pub struct CategoricalPair<C: BaseCategory = Category> {
    pub base: C,
    pub arrows: Vec<RefArrow<C::Morphism>>,
    /// Interpret `♯a` as `aa` for self-morphisms.
    pub is_lambda_pair: bool,
    pub is_two_category: bool,
}

impl<C: BaseCategory> CategoricalPair<C> {
    pub fn new(base: C) -> Self {
        CategoricalPair {
            base,
            arrows: Vec::new(),
            is_lambda_pair: false,
            is_two_category: false,
        }
    }

    /// A lambda pair is in particular a 2-category.
    pub fn lambda(base: C) -> Self {
        CategoricalPair {
            base,
            arrows: Vec::new(),
            is_lambda_pair: true,
            is_two_category: true,
        }
    }

    pub fn with_two_category(mut self) -> Self {
        self.is_two_category = true;
        self
    }

    pub fn add_arrow(&mut self, arrow: RefArrow<C::Morphism>) {
        self.arrows.push(arrow);
    }

    /// `a -> b` is composable when `ba` is defined.
    pub fn is_composable_reference(&self, r: &RefArrow<C::Morphism>) -> bool {
        self.base.composable(&r.dst, &r.src)
    }

    /// `a -> b` becomes `♯a -> ba`.
    pub fn shift(&self, r: &RefArrow<C::Morphism>) -> Result<RefArrow<C::Morphism>, ShiftError> {
        self.shift_step(r).map(|s| s.arrow)
    }

    pub fn shift_step(&self, r: &RefArrow<C::Morphism>) -> Result<Step<C::Morphism>, ShiftError> {
        if !self.is_composable_reference(r) {
            return Err(ShiftError::NotComposable(r.to_string()));
        }
        let dst = self.base.compose(&r.dst, &r.src)?;
        let mut note = None;
        if self.is_lambda_pair {
            if self.base.is_self_morphism(&r.src) {
                // (a -> b) ∘₀ (a -> a) = (aa -> ba)
                let src = self.base.compose(&r.src, &r.src)?;
                return Ok(Step {
                    rule: Inference::Horizontal,
                    arrow: RefArrow::new(src, dst),
                    note: Some("♯a = aa".into()),
                });
            }
            note = Some("not a self-morphism; free ♯ used".into());
        }
        let src = self.base.sharp(&r.src)?;
        Ok(Step {
            rule: Inference::Shift,
            arrow: RefArrow::new(src, dst),
            note,
        })
    }

    /// From `g -> F♯` derive `♯g -> F♯g`, i.e. `h -> Fh` with `h = ♯g`.
    pub fn srt1(&self, r: &RefArrow<C::Morphism>) -> Result<Derivation<C::Morphism>, ShiftError> {
        if !self.base.ends_in_sharp(&r.src, &r.dst) {
            return Err(ShiftError::NotSrt1Shape(r.to_string()));
        }
        if !self.is_composable_reference(r) {
            return Err(ShiftError::NotComposable(r.to_string()));
        }
        let shifted = self.shift_step(r)?;
        Ok(Derivation {
            steps: vec![
                Step {
                    rule: Inference::Axiom,
                    arrow: r.clone(),
                    note: None,
                },
                shifted,
            ],
        })
    }

    /// Shifts `n` times, stopping early once the current arrow cannot be shifted.
    pub fn iterate_shift(&self, r: &RefArrow<C::Morphism>, n: usize) -> ShiftSequence<C::Morphism> {
        let mut trace = Derivation {
            steps: vec![Step {
                rule: Inference::Axiom,
                arrow: r.clone(),
                note: None,
            }],
        };
        let mut arrows = Vec::with_capacity(n);
        let mut current = r.clone();
        let mut stop = None;
        for _ in 0..n {
            match self.shift_step(&current) {
                Ok(step) => {
                    current = step.arrow.clone();
                    arrows.push(step.arrow.clone());
                    trace.steps.push(step);
                }
                Err(e) => {
                    stop = Some(e);
                    break;
                }
            }
        }
        ShiftSequence { arrows, stop, trace }
    }

    /// `(a -> b) ∘₀ (d -> e) = (ad -> be)`.
    pub fn horizontal_compose(
        &self,
        alpha: &RefArrow<C::Morphism>,
        beta: &RefArrow<C::Morphism>,
    ) -> Result<RefArrow<C::Morphism>, ShiftError> {
        if !self.is_two_category {
            return Err(ShiftError::NotTwoCategory);
        }
        let src = self.base.compose(&alpha.src, &beta.src)?;
        let dst = self.base.compose(&alpha.dst, &beta.dst)?;
        Ok(RefArrow::new(src, dst))
    }

    /// `γ ∘₁ α` for `α: a -> b`, `γ: b -> c`, giving `a -> c`.
    pub fn vertical_compose(
        &self,
        gamma: &RefArrow<C::Morphism>,
        alpha: &RefArrow<C::Morphism>,
    ) -> Result<RefArrow<C::Morphism>, ShiftError> {
        if !self.base.equal(&alpha.dst, &gamma.src)? {
            return Err(ShiftError::EndpointMismatch {
                first: alpha.to_string(),
                second: gamma.to_string(),
            });
        }
        Ok(RefArrow::new(alpha.src.clone(), gamma.dst.clone()))
    }

    /// Compares `(γ ∘₀ δ) ∘₁ (α ∘₀ β)` with `(γ ∘₁ α) ∘₀ (δ ∘₁ β)` for
    /// `α: a -> b`, `γ: b -> c`, `β: d -> e`, `δ: e -> f`.
    pub fn check_interchange(
        &self,
        alpha: &RefArrow<C::Morphism>,
        beta: &RefArrow<C::Morphism>,
        gamma: &RefArrow<C::Morphism>,
        delta: &RefArrow<C::Morphism>,
    ) -> Result<bool, ShiftError> {
        let horizontal_first = self.vertical_compose(
            &self.horizontal_compose(gamma, delta)?,
            &self.horizontal_compose(alpha, beta)?,
        )?;
        let vertical_first = self.horizontal_compose(
            &self.vertical_compose(gamma, alpha)?,
            &self.vertical_compose(delta, beta)?,
        )?;
        Ok(self.base.equal(&horizontal_first.src, &vertical_first.src)?
            && self.base.equal(&horizontal_first.dst, &vertical_first.dst)?)
    }
}

impl CategoricalPair<Category> {
    /// The pair generated by a directed graph: one object, one sharp
    /// generator per node, one generator per edge `(name, from, to)`.
    pub fn from_digraph(nodes: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, ShiftError> {
        let mut base = Category::new();
        for n in nodes {
            base.add_object(n)?;
        }
        for n in nodes {
            let name = if nodes.len() == 1 {
                "♯".to_string()
            } else {
                format!("♯_{n}")
            };
            base.add_sharp(&name, n)?;
        }
        for (name, from, to) in edges {
            if !nodes.contains(from) || !nodes.contains(to) {
                return Err(ShiftError::DanglingEdge((*name).to_string()));
            }
            base.add_generator(name, from, to)?;
        }
        Ok(CategoricalPair::new(base))
    }

    pub fn parse_arrow(&self, text: &str) -> Result<RefArrow, ShiftError> {
        let text = text.replace('→', "->");
        let (src, dst) = text
            .split_once("->")
            .ok_or_else(|| ShiftError::Parse(format!("arrow without '->': {text}")))?;
        Ok(RefArrow::new(self.base.parse_word(src)?, self.base.parse_word(dst)?))
    }
}
