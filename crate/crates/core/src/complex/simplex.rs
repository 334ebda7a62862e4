use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A nonempty finite set of vertices, stored as a strictly increasing
/// sequence so that equality and hashing are equality of vertex sets.
///
/// Simplices are ordered by dimension first and then lexicographically by
/// vertex sequence. Every deterministic tie-break in the crate uses this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from vertices in any order. Repeated vertices are rejected.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptySimplex);
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(w[0]));
        }
        Ok(Simplex(v))
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// The faces of codimension one. A vertex has none.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// All nonempty subsets, the simplex itself included.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.by_ref().any(|w| w == v))
    }

    pub fn is_comparable(&self, other: &Simplex) -> bool {
        self.is_face_of(other) || other.is_face_of(self)
    }

    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        let common: Vec<Vertex> = self
            .0
            .iter()
            .copied()
            .filter(|v| other.0.binary_search(v).is_ok())
            .collect();
        (!common.is_empty()).then_some(Simplex(common))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self)
    }
}

/// A finite set of simplices with hashed membership.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct SimplexSet {
    items: HashSet<Simplex>,
}

impl SimplexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, s: Simplex) -> bool {
        self.items.insert(s)
    }

    pub fn remove(&mut self, s: &Simplex) -> bool {
        self.items.remove(s)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.items.contains(s)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.items.iter()
    }

    /// Members in the crate-wide simplex order.
    pub fn sorted(&self) -> Vec<Simplex> {
        let mut v: Vec<Simplex> = self.items.iter().cloned().collect();
        v.sort();
        v
    }

    /// Largest dimension present; `-1` for the empty set.
    pub fn dim(&self) -> isize {
        self.items
            .iter()
            .map(|s| s.dim() as isize)
            .max()
            .unwrap_or(-1)
    }

    pub fn of_dim(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.items.iter().filter(move |s| s.dim() == k)
    }

    pub fn is_subset(&self, other: &SimplexSet) -> bool {
        self.items.is_subset(&other.items)
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        self.items.union(&other.items).cloned().collect()
    }

    pub fn difference(&self, other: &SimplexSet) -> SimplexSet {
        self.items.difference(&other.items).cloned().collect()
    }
}

impl FromIterator<Simplex> for SimplexSet {
    fn from_iter<I: IntoIterator<Item = Simplex>>(iter: I) -> Self {
        SimplexSet {
            items: iter.into_iter().collect(),
        }
    }
}

impl Extend<Simplex> for SimplexSet {
    fn extend<I: IntoIterator<Item = Simplex>>(&mut self, iter: I) {
        self.items.extend(iter)
    }
}

impl IntoIterator for SimplexSet {
    type Item = Simplex;
    type IntoIter = std::collections::hash_set::IntoIter<Simplex>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

impl fmt::Debug for SimplexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sorted()).finish()
    }
}

/// Shorthand for building a simplex from a literal list in tests and examples.
/// Panics on an empty list or repeated vertices.
pub fn simplex(vertices: &[Vertex]) -> Simplex {
    Simplex::new(vertices.iter().copied()).expect("valid simplex literal")
}
