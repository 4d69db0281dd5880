//! Self-reference by shifting names to their contents.
//!
//! [`shift`] holds the general machinery (categorical pairs, the indicative
//! shift, both self-reference constructions); the remaining modules are
//! concrete instances of it.

pub mod godel;
pub mod lambda;
pub mod lawvere;
pub mod reflexive;
pub mod shift;
pub mod smullyan;
