//! Categorical pairs and the indicative shift.
//!
//! The base category is presented by generators and rewrite rules; its
//! morphisms are words. Reference arrows between words live in the second
//! category, and the shift sends a composable reference `a -> b` to
//! `♯a -> ba`.

mod category;
mod format;
mod pair;

pub use category::{Category, Generator, ObjectId, Pattern, RewriteRule, Word, DEFAULT_REWRITE_BUDGET};
pub use pair::{
    BaseCategory, CategoricalPair, Derivation, Inference, RefArrow, ShiftSequence, Step, StepRecord,
};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ShiftError {
    #[error("cannot compose {after} after {before}")]
    ChainMismatch { after: String, before: String },
    #[error("rewriting exceeded the budget of {budget} steps")]
    RewriteBudgetExceeded { budget: usize },
    #[error("reference {0} is not composable")]
    NotComposable(String),
    #[error("no sharp generator at object {0}")]
    NoSharpGenerator(String),
    #[error("reference {0} is not of the form g -> F♯")]
    NotSrt1Shape(String),
    #[error("pair is not a 2-category")]
    NotTwoCategory,
    #[error("arrows {first} and {second} do not meet")]
    EndpointMismatch { first: String, second: String },
    #[error("edge {0} has an endpoint outside the node set")]
    DanglingEdge(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("duplicate object {0}")]
    DuplicateObject(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("object {0} already has a sharp generator")]
    DuplicateSharp(String),
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("rule {0} changes the type of the word")]
    RuleTypeMismatch(String),
    #[error("an empty word needs an explicit object (write 1_X)")]
    EmptyWithoutObject,
    #[error("cannot tell which object a bare ♯ sits at")]
    AmbiguousSharp,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<ShiftError> },
    #[error("base category: {0}")]
    Base(String),
}
