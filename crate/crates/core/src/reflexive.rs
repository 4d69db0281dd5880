//! Reflexive categories from knot and link diagrams.
//!
//! Each arc of a diagram is both an object and a generating morphism: an
//! arc passing under another goes from the arc it leaves to the arc it
//! enters. The induced category is free on those generators.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::shift::{CategoricalPair, Category, ShiftError, Word};

/// The trefoil-like diagram `A: C -> B`, `B: A -> C`, `C: B -> A`.
pub const TREFOIL: &str = "A: C -> B\nB: A -> C\nC: B -> A\n";

/// Two arcs, each a self-morphism of the other: `A: B -> B`, `B: A -> A`.
pub const LINK: &str = "A: B -> B\nB: A -> A\n";

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ReflexiveError {
    #[error("arc {arc} refers to {missing}, which is not an arc")]
    DanglingArc { arc: String, missing: String },
    #[error("arc {0} is listed twice")]
    DuplicateArc(String),
    #[error("line {line}: expected \"name: dom -> cod\"")]
    Parse { line: usize },
    #[error("an arc table needs at least one arc")]
    Empty,
    #[error("{0:?} is not a valid arc name")]
    InvalidName(String),
    #[error(transparent)]
    Shift(#[from] ShiftError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

/// Arcs in file order, each with its domain and codomain arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcTable {
    arcs: Vec<Arc>,
}

impl ArcTable {
    pub fn new(arcs: Vec<Arc>) -> Result<Self, ReflexiveError> {
        if arcs.is_empty() {
            return Err(ReflexiveError::Empty);
        }
        let mut names = BTreeSet::new();
        for a in &arcs {
            if let Some(bad) = [&a.name, &a.dom, &a.cod].into_iter().find(|n| !is_identifier(n)) {
                return Err(ReflexiveError::InvalidName(bad.clone()));
            }
            if !names.insert(a.name.as_str()) {
                return Err(ReflexiveError::DuplicateArc(a.name.clone()));
            }
        }
        for a in &arcs {
            for end in [&a.dom, &a.cod] {
                if !names.contains(end.as_str()) {
                    return Err(ReflexiveError::DanglingArc {
                        arc: a.name.clone(),
                        missing: end.clone(),
                    });
                }
            }
        }
        Ok(ArcTable { arcs })
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn trefoil() -> Self {
        TREFOIL.parse().expect("built-in table parses")
    }

    pub fn link() -> Self {
        LINK.parse().expect("built-in table parses")
    }
}

/// One arc per line, `name: dom -> cod`; blank lines and `//` comments are
/// skipped.
impl FromStr for ArcTable {
    type Err = ReflexiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut arcs = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split("//").next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let err = || ReflexiveError::Parse { line: i + 1 };
            let (name, rest) = line.split_once(':').ok_or_else(err)?;
            let rest = rest.replace('→', "->");
            let (dom, cod) = rest.split_once("->").ok_or_else(err)?;
            let (name, dom, cod) = (name.trim(), dom.trim(), cod.trim());
            if !(is_identifier(name) && is_identifier(dom) && is_identifier(cod)) {
                return Err(err());
            }
            arcs.push(Arc {
                name: name.to_string(),
                dom: dom.to_string(),
                cod: cod.to_string(),
            });
        }
        ArcTable::new(arcs)
    }
}

/// Arc names are letters, digits, `_` and `'`, so they never clash with
/// the sharp or exponent notation of words.
fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for ArcTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.arcs {
            writeln!(f, "{}: {} -> {}", a.name, a.dom, a.cod)?;
        }
        Ok(())
    }
}

/// The free category on a diagram's arcs, with a sharp per object.
#[derive(Clone, Debug)]
pub struct DiagramCategory {
    pair: CategoricalPair<Category>,
    arcs: Vec<String>,
}

impl DiagramCategory {
    pub fn category(&self) -> &Category {
        &self.pair.base
    }

    pub fn pair(&self) -> &CategoricalPair<Category> {
        &self.pair
    }

    /// Generator names supplied by the table, in table order.
    pub fn arc_names(&self) -> &[String] {
        &self.arcs
    }
}

pub fn build(table: &ArcTable) -> Result<DiagramCategory, ReflexiveError> {
    let nodes: Vec<&str> = table.arcs.iter().map(|a| a.name.as_str()).collect();
    let edges: Vec<(&str, &str, &str)> = table
        .arcs
        .iter()
        .map(|a| (a.name.as_str(), a.dom.as_str(), a.cod.as_str()))
        .collect();
    let pair = CategoricalPair::from_digraph(&nodes, &edges)?;
    Ok(DiagramCategory {
        pair,
        arcs: nodes.iter().map(|s| s.to_string()).collect(),
    })
}

/// Every object names a non-sharp generator.
pub fn is_reflexive(cat: &Category) -> bool {
    let names: BTreeSet<&str> = cat
        .generators()
        .filter(|g| !g.is_sharp)
        .map(|g| g.name.as_str())
        .collect();
    cat.objects().iter().all(|o| names.contains(o.as_str()))
}

/// All chainable words of non-sharp generators with length in `1..=max_len`,
/// shortest first and lexicographic within a length.
pub fn enumerate_composites(cat: &Category, max_len: usize) -> Vec<Word> {
    let mut gens: Vec<_> = cat.generators().filter(|g| !g.is_sharp).cloned().collect();
    gens.sort_by(|a, b| a.name.cmp(&b.name));
    let mut out = Vec::new();
    let mut layer: Vec<Word> = gens.iter().map(|g| Word::generator(g.clone())).collect();
    for _ in 0..max_len {
        out.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for w in &layer {
            // extend on the right: the new generator is applied first
            for g in &gens {
                if &g.cod == w.dom() {
                    let single = Word::generator(g.clone());
                    next.push(Word::concat(w, &single).expect("chaining checked"));
                }
            }
        }
        layer = next;
    }
    out
}

/// A word as its generator names run together, without exponents.
pub fn spelled(word: &Word) -> String {
    word.names().concat()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spelled_set(cat: &Category, max_len: usize) -> BTreeSet<String> {
        enumerate_composites(cat, max_len).iter().map(spelled).collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn trefoil() {
        let d = build(&ArcTable::trefoil()).unwrap();
        assert_eq!(d.category().objects().len(), 3);
        assert!(is_reflexive(d.category()));
        assert_eq!(spelled_set(d.category(), 1), set(&["A", "B", "C"]));
        assert_eq!(spelled_set(d.category(), 2), set(&["A", "B", "C", "AB", "BC", "CA"]));
    }

    #[test]
    fn link() {
        let d = build(&ArcTable::link()).unwrap();
        let cat = d.category();
        assert!(is_reflexive(cat));
        let a = cat.get("A").unwrap();
        let b = cat.get("B").unwrap();
        assert_eq!((a.dom.as_str(), a.cod.as_str()), ("B", "B"));
        assert_eq!((b.dom.as_str(), b.cod.as_str()), ("A", "A"));
        assert_eq!(spelled_set(cat, 2), set(&["A", "B", "AA", "BB"]));
    }

    #[test]
    fn single_loop() {
        let d = build(&"a: a -> a".parse().unwrap()).unwrap();
        assert!(is_reflexive(d.category()));
        assert_eq!(spelled_set(d.category(), 3), set(&["a", "aa", "aaa"]));
    }

    #[test]
    fn edgeless_node_is_not_reflexive() {
        let pair = CategoricalPair::from_digraph(&["X", "Y"], &[("X", "Y", "Y")]).unwrap();
        assert!(!is_reflexive(&pair.base));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            "A: B -> C".parse::<ArcTable>(),
            Err(ReflexiveError::DanglingArc {
                arc: "A".into(),
                missing: "B".into()
            })
        );
        assert_eq!("A B -> A".parse::<ArcTable>(), Err(ReflexiveError::Parse { line: 1 }));
        assert_eq!("\nA: A A".parse::<ArcTable>(), Err(ReflexiveError::Parse { line: 2 }));
        assert_eq!("A: A -> A\nA: A -> A".parse::<ArcTable>(), Err(ReflexiveError::DuplicateArc("A".into())));
        assert_eq!("// nothing".parse::<ArcTable>(), Err(ReflexiveError::Empty));
        assert_eq!("A#: A# -> A#".parse::<ArcTable>(), Err(ReflexiveError::Parse { line: 1 }));
        let odd = Arc { name: "a^2".into(), dom: "a^2".into(), cod: "a^2".into() };
        assert_eq!(ArcTable::new(vec![odd]), Err(ReflexiveError::InvalidName("a^2".into())));
        assert_eq!("A: A → A".parse::<ArcTable>().unwrap().to_string(), "A: A -> A\n");
    }
}
