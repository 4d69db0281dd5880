//! Diagonal arguments over explicit finite sets.
//!
//! A curried map `F: X -> [X, Z]` is stored as a square table of indices
//! into `Z`. The diagonal `C(x) = α(F(x)(x))` is representable when some
//! row of the table equals it, and in that case `F(a)(a)` is a fixed point
//! of `α`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Cap on `|Z|^|X|` for the exhaustive surjectivity check.
pub const SURJECTIVITY_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LawvereError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("table has {found} entries where {expected} were expected")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("the diagonal is not represented by any row, so F is not surjective")]
    NotSurjective,
    #[error("surjectivity check would enumerate {0} maps")]
    TooLarge(String),
    #[error("three-valued analysis needs Z = {{0, 1, J}}")]
    NotThreeValued,
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// An ordered set of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, LawvereError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(LawvereError::DuplicateLabel(l.clone()));
            }
        }
        Ok(FinSet { labels })
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        FinSet {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LawvereError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| LawvereError::UnknownLabel(label.to_string()))
    }
}

/// A total map between finite sets, stored by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self, LawvereError> {
        if table.len() != dom.len() {
            return Err(LawvereError::ShapeMismatch {
                expected: dom.len(),
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.len()) {
            return Err(LawvereError::UnknownLabel(bad.to_string()));
        }
        Ok(FinMap { dom, cod, table })
    }

    pub fn from_labels(dom: FinSet, cod: FinSet, values: &[&str]) -> Result<Self, LawvereError> {
        let table = values.iter().map(|v| cod.index_of(v)).collect::<Result<_, _>>()?;
        FinMap::new(dom, cod, table)
    }

    pub fn identity(set: &FinSet) -> Self {
        FinMap {
            dom: set.clone(),
            cod: set.clone(),
            table: (0..set.len()).collect(),
        }
    }

    /// The swap `0 <-> 1` on a two-element set.
    pub fn negation() -> Self {
        FinMap {
            dom: FinSet::range(2),
            cod: FinSet::range(2),
            table: vec![1, 0],
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_label(&self, label: &str) -> Result<&str, LawvereError> {
        Ok(self.cod.label(self.table[self.dom.index_of(label)?]))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&i| self.table[i] == i).collect()
    }

    /// Labelled values, in domain order.
    pub fn values(&self) -> Vec<&str> {
        self.table.iter().map(|&v| self.cod.label(v)).collect()
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.dom.len())
            .map(|i| format!("{}↦{}", self.dom.label(i), self.cod.label(self.table[i])))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `F: X -> [X, Z]`, with `rows[x][y] = F(x)(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurriedMap {
    dom: FinSet,
    cod_base: FinSet,
    rows: Vec<Vec<usize>>,
}

impl CurriedMap {
    pub fn new(dom: FinSet, cod_base: FinSet, rows: Vec<Vec<usize>>) -> Result<Self, LawvereError> {
        let n = dom.len();
        if rows.len() != n {
            return Err(LawvereError::ShapeMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        for row in &rows {
            if row.len() != n {
                return Err(LawvereError::ShapeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= cod_base.len()) {
                return Err(LawvereError::UnknownLabel(bad.to_string()));
            }
        }
        Ok(CurriedMap { dom, cod_base, rows })
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod_base(&self) -> &FinSet {
        &self.cod_base
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn at(&self, x: usize, y: usize) -> usize {
        self.rows[x][y]
    }

    /// `F(x)` as a map `X -> Z`.
    pub fn row(&self, x: usize) -> FinMap {
        FinMap {
            dom: self.dom.clone(),
            cod: self.cod_base.clone(),
            table: self.rows[x].clone(),
        }
    }

    /// Every curried map `X -> [X, Z]` for `|X| = n`, `|Z| = z`, in
    /// lexicographic order of the flattened table.
    pub fn enumerate(n: usize, z: usize) -> impl Iterator<Item = CurriedMap> {
        let dom = FinSet::range(n);
        let cod = FinSet::range(z);
        let cells = n * n;
        let total = if z == 0 && cells > 0 { 0 } else { z.pow(cells as u32) };
        (0..total).map(move |mut code| {
            let mut flat = vec![0; cells];
            for cell in flat.iter_mut().rev() {
                *cell = code % z;
                code /= z;
            }
            CurriedMap {
                dom: dom.clone(),
                cod_base: cod.clone(),
                rows: flat.chunks(n.max(1)).map(<[usize]>::to_vec).take(n).collect(),
            }
        })
    }

    pub fn from_json(text: &str) -> Result<Self, LawvereError> {
        let table: CurriedTable = serde_json::from_str(text).map_err(|e| LawvereError::Json(e.to_string()))?;
        table.try_into()
    }

    pub fn to_table(&self) -> CurriedTable {
        CurriedTable {
            elements: self.dom.labels.clone(),
            z_elements: self.cod_base.labels.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&v| self.cod_base.label(v).to_string()).collect())
                .collect(),
        }
    }
}

/// Labelled JSON form of a curried map.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurriedTable {
    pub elements: Vec<String>,
    pub z_elements: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TryFrom<CurriedTable> for CurriedMap {
    type Error = LawvereError;

    fn try_from(t: CurriedTable) -> Result<Self, Self::Error> {
        let dom = FinSet::new(t.elements)?;
        let cod = FinSet::new(t.z_elements)?;
        let rows = t
            .rows
            .iter()
            .map(|r| r.iter().map(|v| cod.index_of(v)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        CurriedMap::new(dom, cod, rows)
    }
}

/// A map `Z -> Z` in JSON: either values aligned with `z_elements` or an
/// object from label to label.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AlphaTable {
    Aligned(Vec<String>),
    Pairs(BTreeMap<String, String>),
}

impl AlphaTable {
    pub fn to_map(&self, z: &FinSet) -> Result<FinMap, LawvereError> {
        let values: Vec<&str> = match self {
            AlphaTable::Aligned(v) => v.iter().map(String::as_str).collect(),
            AlphaTable::Pairs(m) => {
                if let Some(k) = m.keys().find(|k| z.index_of(k).is_err()) {
                    return Err(LawvereError::UnknownLabel(k.clone()));
                }
                z.labels()
                    .iter()
                    .map(|l| m.get(l).map(String::as_str).ok_or_else(|| LawvereError::UnknownLabel(l.clone())))
                    .collect::<Result<_, _>>()?
            }
        };
        FinMap::from_labels(z.clone(), z.clone(), &values)
    }

    pub fn from_json(text: &str) -> Result<Self, LawvereError> {
        serde_json::from_str(text).map_err(|e| LawvereError::Json(e.to_string()))
    }
}

/// `C(x) = neg(F(x)(x))`.
pub fn cantor_diagonal(f: &CurriedMap, neg: &FinMap) -> FinMap {
    FinMap {
        dom: f.dom.clone(),
        cod: neg.cod.clone(),
        table: (0..f.dom.len()).map(|x| neg.apply(f.at(x, x))).collect(),
    }
}

/// The first `a` with `F(a) = C`.
pub fn find_representation(f: &CurriedMap, c: &FinMap) -> Option<usize> {
    f.rows.iter().position(|row| row.as_slice() == c.table())
}

/// Every `a` with `F(a) = C`.
pub fn all_representations(f: &CurriedMap, c: &FinMap) -> Vec<usize> {
    (0..f.rows.len()).filter(|&a| f.rows[a] == c.table).collect()
}

/// Whether every map `X -> Z` occurs as a row. Enumerates `[X, Z]`.
pub fn is_surjective(f: &CurriedMap) -> Result<bool, LawvereError> {
    let (n, z) = (f.dom.len() as u32, f.cod_base.len() as u128);
    let size = z.checked_pow(n).filter(|s| *s <= SURJECTIVITY_LIMIT);
    let Some(size) = size else {
        return Err(LawvereError::TooLarge(format!("{z}^{n}")));
    };
    let rows: HashSet<&Vec<usize>> = f.rows.iter().collect();
    if (rows.len() as u128) < size {
        return Ok(false);
    }
    let n = n as usize;
    let z = z as usize;
    let mut candidate = vec![0usize; n];
    for _ in 0..size {
        if !rows.contains(&candidate) {
            return Ok(false);
        }
        for digit in candidate.iter_mut().rev() {
            *digit += 1;
            if *digit < z {
                break;
            }
            *digit = 0;
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    /// `F(a)(a)`, an index into `Z`.
    pub value: usize,
    /// The representing `a`, an index into `X`.
    pub witness: usize,
}

/// Finds `a` with `F(a) = α ∘ diagonal`; then `F(a)(a)` is fixed by `α`.
///
/// Without a representation `F` misses the diagonal, so it cannot be onto.
pub fn lawvere_fixed_point(f: &CurriedMap, alpha: &FinMap) -> Result<FixedPoint, LawvereError> {
    let c = cantor_diagonal(f, alpha);
    let a = find_representation(f, &c).ok_or(LawvereError::NotSurjective)?;
    let value = f.at(a, a);
    assert_eq!(alpha.apply(value), value, "a representation forces a fixed point");
    Ok(FixedPoint { value, witness: a })
}

/// The diagonal built as `α ∘ eval ∘ (F × I) ∘ Δ`, one explicit table per
/// stage.
pub fn diagonal_via_delta(f: &CurriedMap, alpha: &FinMap) -> FinMap {
    let n = f.dom.len();
    // Δ: X -> X × X, pairs indexed x*n + y
    let delta: Vec<usize> = (0..n).map(|x| x * n + x).collect();
    // F × I: X × X -> [X, Z] × X, with [X, Z] restricted to the rows of F
    let f_times_i: Vec<(usize, usize)> = (0..n * n).map(|p| (p / n, p % n)).collect();
    // eval: ([X, Z] × X) -> Z
    let eval = |(row, y): (usize, usize)| f.rows[row][y];
    FinMap {
        dom: f.dom.clone(),
        cod: alpha.cod.clone(),
        table: delta.iter().map(|&p| alpha.apply(eval(f_times_i[p]))).collect(),
    }
}

/// `{0, 1, J}` with `∼J = J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriValue {
    Zero,
    One,
    J,
}

impl TriValue {
    pub const ALL: [TriValue; 3] = [TriValue::Zero, TriValue::One, TriValue::J];

    pub fn negate(self) -> TriValue {
        match self {
            TriValue::Zero => TriValue::One,
            TriValue::One => TriValue::Zero,
            TriValue::J => TriValue::J,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<TriValue> {
        TriValue::ALL.get(i).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            TriValue::Zero => "0",
            TriValue::One => "1",
            TriValue::J => "J",
        }
    }

    pub fn set() -> FinSet {
        FinSet::new(TriValue::ALL.map(TriValue::label)).expect("distinct")
    }

    pub fn negation_map() -> FinMap {
        FinMap {
            dom: TriValue::set(),
            cod: TriValue::set(),
            table: TriValue::ALL.iter().map(|v| v.negate().index()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriValueReport {
    pub diagonal: FinMap,
    /// Every `z` with `F(z) = C`.
    pub representations: Vec<usize>,
    /// `F(z)(z)` for each representation, in the same order.
    pub diagonal_values: Vec<TriValue>,
}

impl TriValueReport {
    /// Every representation lands on the third value.
    pub fn all_j(&self) -> bool {
        self.diagonal_values.iter().all(|v| *v == TriValue::J)
    }
}

/// The negation diagonal over `{0, 1, J}` and everything that represents it.
pub fn three_valued_diagonal_analysis(f: &CurriedMap) -> Result<TriValueReport, LawvereError> {
    if f.cod_base.labels() != TriValue::set().labels() {
        return Err(LawvereError::NotThreeValued);
    }
    let diagonal = cantor_diagonal(f, &TriValue::negation_map());
    let representations = all_representations(f, &diagonal);
    let diagonal_values: Vec<TriValue> = representations
        .iter()
        .map(|&z| TriValue::from_index(f.at(z, z)).expect("index below 3"))
        .collect();
    Ok(TriValueReport {
        diagonal,
        representations,
        diagonal_values,
    })
}

/// A curried map into `{0, 1, J}` over `|X| = n`, enumerated in order.
pub fn enumerate_three_valued(n: usize) -> impl Iterator<Item = CurriedMap> {
    CurriedMap::enumerate(n, 3).map(|mut f| {
        f.cod_base = TriValue::set();
        f
    })
}
