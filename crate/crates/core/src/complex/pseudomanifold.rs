use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use super::cells::{closure, d_connected_components, Complex};
use super::simplex::{Simplex, SimplexSet};
use crate::error::{Error, Result};

/// Dense index of a simplex inside a [`Pseudomanifold`]. Ids follow the
/// simplex order, so all simplices of one dimension are contiguous.
pub type CellId = usize;

/// A validated d-pseudomanifold: pure, every (d-1)-face in exactly two
/// d-faces, and d-connected. Immutable once built.
#[derive(Clone)]
pub struct Pseudomanifold {
    d: usize,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, CellId>,
    facets: Vec<Vec<CellId>>,
    cofacets: Vec<Vec<CellId>>,
    by_dim: Vec<Range<CellId>>,
}

/// Which of the three pseudomanifold conditions failed, with the first witness for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudomanifoldViolation {
    pub d: usize,
    /// The complex has no simplices at all.
    pub empty: bool,
    /// Condition (1): a maximal face whose dimension is not `d`.
    pub impure: Option<Simplex>,
    /// Condition (2): a (d-1)-face and its number of d-cofaces.
    pub bad_degree: Option<(Simplex, usize)>,
    /// Condition (3): two d-simplices that are not d-linked.
    pub disconnected: Option<(Simplex, Simplex)>,
}

impl fmt::Display for PseudomanifoldViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.empty {
            parts.push("empty complex".to_string());
        }
        if let Some(s) = &self.impure {
            parts.push(format!("(1) not pure: maximal face {s} has dimension {} != {}", s.dim(), self.d));
        }
        if let Some((s, n)) = &self.bad_degree {
            parts.push(format!("(2) ({})-face {s} lies in {n} d-faces instead of 2", self.d - 1));
        }
        if let Some((a, b)) = &self.disconnected {
            parts.push(format!("(3) not {}-connected: no path from {a} to {b}", self.d));
        }
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for PseudomanifoldViolation {}

/// Checks the three pseudomanifold conditions for dimension `d`.
pub fn validate_pseudomanifold(c: &Complex, d: usize) -> Result<Pseudomanifold> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut violation = PseudomanifoldViolation {
        d,
        empty: c.is_empty(),
        impure: None,
        bad_degree: None,
        disconnected: None,
    };
    if violation.empty {
        return Err(violation.into());
    }

    violation.impure = c.facets().into_iter().find(|s| s.dim() != d);

    let mut degree: HashMap<&Simplex, usize> =
        c.simplices().of_dim(d - 1).map(|s| (s, 0)).collect();
    for top in c.simplices().of_dim(d) {
        for f in top.facets() {
            if let Some(n) = degree.get_mut(&f) {
                *n += 1;
            }
        }
    }
    violation.bad_degree = degree
        .into_iter()
        .filter(|&(_, n)| n != 2)
        .min_by(|a, b| a.0.cmp(b.0))
        .map(|(s, n)| (s.clone(), n));

    let comps = d_connected_components(c.simplices(), d);
    if comps.len() > 1 {
        let first = |s: &SimplexSet| s.sorted().swap_remove(0);
        violation.disconnected = Some((first(&comps[0]), first(&comps[1])));
    }

    if violation.impure.is_some() || violation.bad_degree.is_some() || violation.disconnected.is_some() {
        return Err(violation.into());
    }
    Ok(Pseudomanifold::index(c, d))
}

impl Pseudomanifold {
    /// Closure of `facets`, validated as a `d`-pseudomanifold.
    pub fn from_facets<'a>(facets: impl IntoIterator<Item = &'a Simplex>, d: usize) -> Result<Self> {
        validate_pseudomanifold(&closure(facets), d)
    }

    fn index(c: &Complex, d: usize) -> Self {
        let simplices = c.sorted();
        let index: HashMap<Simplex, CellId> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut facets = vec![Vec::new(); simplices.len()];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            for f in s.facets() {
                let j = index[&f];
                facets[i].push(j);
                cofacets[j].push(i);
            }
        }
        for list in facets.iter_mut().chain(cofacets.iter_mut()) {
            list.sort_unstable();
        }
        let mut by_dim = Vec::with_capacity(d + 1);
        let mut start = 0;
        for k in 0..=d {
            let end = start + simplices[start..].iter().take_while(|s| s.dim() == k).count();
            by_dim.push(start..end);
            start = end;
        }
        Pseudomanifold {
            d,
            simplices,
            index,
            facets,
            cofacets,
            by_dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, id: CellId) -> &Simplex {
        &self.simplices[id]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn id(&self, s: &Simplex) -> Option<CellId> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &Simplex) -> Result<CellId> {
        self.id(s).ok_or_else(|| Error::NotInSpace(s.clone()))
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn facets(&self, id: CellId) -> &[CellId] {
        &self.facets[id]
    }

    pub fn cofacets(&self, id: CellId) -> &[CellId] {
        &self.cofacets[id]
    }

    pub fn ids_of_dim(&self, k: usize) -> Range<CellId> {
        self.by_dim.get(k).cloned().unwrap_or(0..0)
    }

    /// The two d-simplices containing a (d-1)-face.
    pub fn ridge_cofaces(&self, ridge: CellId) -> [CellId; 2] {
        debug_assert_eq!(self.simplices[ridge].dim() + 1, self.d);
        let c = &self.cofacets[ridge];
        [c[0], c[1]]
    }

    pub fn to_complex(&self) -> Complex {
        Complex::try_from_set(self.simplices.iter().cloned().collect())
            .expect("a pseudomanifold is closed")
    }

    /// Every simplex of the space containing some member of `a`.
    pub fn star(&self, a: &SimplexSet) -> Result<SimplexSet> {
        let mut seen = vec![false; self.len()];
        let mut stack = Vec::new();
        for s in a.iter() {
            let id = self.require(s)?;
            if !seen[id] {
                seen[id] = true;
                stack.push(id);
            }
        }
        while let Some(id) = stack.pop() {
            for &c in &self.cofacets[id] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        Ok(seen
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s)
            .map(|(i, _)| self.simplices[i].clone())
            .collect())
    }

    /// Structural equality of the underlying simplex lists.
    pub fn same_space(&self, other: &Pseudomanifold) -> bool {
        std::ptr::eq(self, other) || (self.d == other.d && self.simplices == other.simplices)
    }
}

impl fmt::Debug for Pseudomanifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pseudomanifold")
            .field("d", &self.d)
            .field("simplices", &self.simplices.len())
            .finish()
    }
}
