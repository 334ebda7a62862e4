use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::simplex::{Simplex, SimplexSet};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// A finite set of simplices closed under taking nonempty faces.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Complex {
    simplices: SimplexSet,
}

/// `(sigma, tau)` where `tau` is the only proper coface of `sigma` in some complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreePair {
    pub sigma: Simplex,
    pub tau: Simplex,
}

/// Smallest complex containing every simplex of `xs`.
pub fn closure<'a>(xs: impl IntoIterator<Item = &'a Simplex>) -> Complex {
    let mut out = SimplexSet::new();
    for x in xs {
        if out.contains(x) {
            continue;
        }
        out.extend(x.faces());
    }
    Complex { simplices: out }
}

impl Complex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Accepts `set` only if it is already closed; the error names a missing face.
    pub fn try_from_set(set: SimplexSet) -> Result<Self> {
        for s in set.sorted() {
            let missing = s.facets().find(|f| !set.contains(f));
            if let Some(face) = missing {
                return Err(Error::NotClosed { face, coface: s });
            }
        }
        Ok(Complex { simplices: set })
    }

    pub fn simplices(&self) -> &SimplexSet {
        &self.simplices
    }

    pub fn into_simplices(self) -> SimplexSet {
        self.simplices
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.simplices.dim()
    }

    pub fn sorted(&self) -> Vec<Simplex> {
        self.simplices.sorted()
    }

    /// Cofacets (cofaces of codimension one) of every member.
    fn cofacets(&self) -> HashMap<Simplex, Vec<Simplex>> {
        let mut up: HashMap<Simplex, Vec<Simplex>> = self
            .simplices
            .iter()
            .map(|s| (s.clone(), Vec::new()))
            .collect();
        for s in self.simplices.iter() {
            for f in s.facets() {
                if let Some(list) = up.get_mut(&f) {
                    list.push(s.clone());
                }
            }
        }
        up
    }

    /// Maximal faces, in simplex order.
    pub fn facets(&self) -> Vec<Simplex> {
        let up = self.cofacets();
        let mut v: Vec<Simplex> = up
            .into_iter()
            .filter(|(_, c)| c.is_empty())
            .map(|(s, _)| s)
            .collect();
        v.sort();
        v
    }

    /// All free pairs, sorted by `(sigma, tau)`.
    ///
    /// `sigma` is free exactly when it has one cofacet and that cofacet is
    /// maximal: any higher coface would contain a second cofacet of `sigma`.
    pub fn free_pairs(&self) -> Vec<FreePair> {
        let up = self.cofacets();
        let mut pairs: Vec<FreePair> = up
            .iter()
            .filter_map(|(s, c)| match c.as_slice() {
                [tau] if up[tau].is_empty() => Some(FreePair {
                    sigma: s.clone(),
                    tau: tau.clone(),
                }),
                _ => None,
            })
            .collect();
        pairs.sort();
        pairs
    }

    pub fn is_free_pair(&self, fp: &FreePair) -> bool {
        if !self.contains(&fp.sigma)
            || !self.contains(&fp.tau)
            || fp.tau.dim() != fp.sigma.dim() + 1
            || !fp.sigma.is_face_of(&fp.tau)
        {
            return false;
        }
        !self
            .simplices
            .iter()
            .any(|s| s != &fp.tau && s != &fp.sigma && fp.sigma.is_face_of(s))
    }

    /// Removes a free pair. Fails if the pair is not free here.
    pub fn elementary_collapse(&self, fp: &FreePair) -> Result<Complex> {
        if !self.is_free_pair(fp) {
            return Err(Error::NotFree {
                sigma: fp.sigma.clone(),
                tau: fp.tau.clone(),
            });
        }
        let mut simplices = self.simplices.clone();
        simplices.remove(&fp.sigma);
        simplices.remove(&fp.tau);
        Ok(Complex { simplices })
    }

    /// Removes free `(d-1, d)` pairs, smallest pair first, until none remain.
    pub fn ultimate_d_collapse(&self, d: usize) -> Complex {
        self.ultimate_d_collapse_with_steps(d).0
    }

    /// Same as [`Complex::ultimate_d_collapse`], also returning the pairs removed in order.
    pub fn ultimate_d_collapse_with_steps(&self, d: usize) -> (Complex, Vec<FreePair>) {
        if d == 0 {
            return (self.clone(), Vec::new());
        }
        let up = self.cofacets();
        let mut alive = self.simplices.clone();
        let live_cofacets = |alive: &SimplexSet, s: &Simplex| -> Vec<Simplex> {
            up[s].iter().filter(|c| alive.contains(c)).cloned().collect()
        };
        let mut worklist: BTreeSet<Simplex> = self.simplices.of_dim(d - 1).cloned().collect();
        let mut steps = Vec::new();
        while let Some(sigma) = worklist.pop_first() {
            if !alive.contains(&sigma) {
                continue;
            }
            let cof = live_cofacets(&alive, &sigma);
            let [tau] = cof.as_slice() else { continue };
            if !live_cofacets(&alive, tau).is_empty() {
                continue;
            }
            let tau = tau.clone();
            alive.remove(&sigma);
            alive.remove(&tau);
            for f in tau.facets() {
                if f != sigma && alive.contains(&f) {
                    worklist.insert(f);
                }
            }
            steps.push(FreePair { sigma, tau });
        }
        (Complex { simplices: alive }, steps)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex{:?}", self.simplices)
    }
}

fn group(members: Vec<Simplex>, dsu: &mut DisjointSets) -> Vec<SimplexSet> {
    let mut by_root: HashMap<usize, Vec<Simplex>> = HashMap::new();
    for (i, s) in members.into_iter().enumerate() {
        by_root.entry(dsu.find(i)).or_default().push(s);
    }
    let mut comps: Vec<Vec<Simplex>> = by_root.into_values().collect();
    for c in &mut comps {
        c.sort();
    }
    comps.sort_by(|a, b| a[0].cmp(&b[0]));
    comps
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect()
}

/// Classes of d-simplices of `xs` linked by d-paths whose shared
/// (d-1)-faces also belong to `xs`. Other simplices of `xs` are ignored.
pub fn d_connected_components(xs: &SimplexSet, d: usize) -> Vec<SimplexSet> {
    let mut members: Vec<Simplex> = xs.of_dim(d).cloned().collect();
    members.sort();
    let mut dsu = DisjointSets::new(members.len());
    if d > 0 {
        let mut first_by_ridge: HashMap<Simplex, usize> = HashMap::new();
        for (i, s) in members.iter().enumerate() {
            for f in s.facets().filter(|f| xs.contains(f)) {
                match first_by_ridge.get(&f) {
                    Some(&j) => {
                        dsu.union(i, j);
                    }
                    None => {
                        first_by_ridge.insert(f, i);
                    }
                }
            }
        }
    }
    group(members, &mut dsu)
}

/// Classes of `xs` under incidence: two members are adjacent when one
/// contains the other.
pub fn incidence_components(xs: &SimplexSet) -> Vec<SimplexSet> {
    let members = xs.sorted();
    let index: HashMap<&Simplex, usize> = members.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut dsu = DisjointSets::new(members.len());
    for (i, s) in members.iter().enumerate() {
        for f in s.faces() {
            if let Some(&j) = index.get(&f) {
                dsu.union(i, j);
            }
        }
    }
    group(members, &mut dsu)
}
