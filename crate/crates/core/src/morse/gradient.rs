use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::valued::ValuedComplex;
use crate::complex::{Pseudomanifold, Simplex, SimplexSet};
use crate::error::{Error, Result};

/// A pair `(tail, head)` with `tail` a facet of `head`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    pub tail: Simplex,
    pub head: Simplex,
}

impl Vector {
    pub fn new(tail: Simplex, head: Simplex) -> Self {
        Vector { tail, head }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.tail, self.head)
    }
}

/// A discrete vector field: nested `(p, p+1)` pairs forming a matching.
/// Gradient vector fields of discrete Morse functions are the acyclic ones.
#[derive(Clone, Default)]
pub struct GradientVectorField {
    vectors: BTreeSet<Vector>,
    head_of: HashMap<Simplex, Simplex>,
    tail_of: HashMap<Simplex, Simplex>,
}

impl GradientVectorField {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Rejects pairs that are not `(facet, simplex)` and simplices used twice.
    pub fn new(vectors: impl IntoIterator<Item = Vector>) -> Result<Self> {
        let mut field = GradientVectorField::default();
        for v in vectors {
            if v.head.dim() != v.tail.dim() + 1 || !v.tail.is_face_of(&v.head) {
                return Err(Error::InvalidVector {
                    tail: v.tail,
                    head: v.head,
                    reason: "tail must be a facet of head",
                });
            }
            for s in [&v.tail, &v.head] {
                if field.is_matched(s) {
                    return Err(Error::NotAMatching(s.clone()));
                }
            }
            field.head_of.insert(v.tail.clone(), v.head.clone());
            field.tail_of.insert(v.head.clone(), v.tail.clone());
            field.vectors.insert(v);
        }
        Ok(field)
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a Simplex, &'a Simplex)>) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(t, h)| Vector::new(t.clone(), h.clone())))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Vectors in `(tail, head)` order.
    pub fn iter(&self) -> impl Iterator<Item = &Vector> {
        self.vectors.iter()
    }

    pub fn contains(&self, tail: &Simplex, head: &Simplex) -> bool {
        self.head_of.get(tail) == Some(head)
    }

    pub fn head_of(&self, tail: &Simplex) -> Option<&Simplex> {
        self.head_of.get(tail)
    }

    pub fn tail_of(&self, head: &Simplex) -> Option<&Simplex> {
        self.tail_of.get(head)
    }

    pub fn is_matched(&self, s: &Simplex) -> bool {
        self.head_of.contains_key(s) || self.tail_of.contains_key(s)
    }

    /// A copy without `v`. Removing a vector never creates a closed path.
    pub fn without(&self, v: &Vector) -> Self {
        Self::new(self.vectors.iter().filter(|w| *w != v).cloned()).expect("subset of a matching")
    }

    /// Vectors of `self` not in `other`, then vectors of `other` not in `self`.
    pub fn symmetric_difference(&self, other: &Self) -> (Vec<Vector>, Vec<Vector>) {
        (
            self.vectors.difference(&other.vectors).cloned().collect(),
            other.vectors.difference(&self.vectors).cloned().collect(),
        )
    }

    /// Critical simplices and the regular tails/heads, partitioning `space`.
    pub fn classify(&self, space: &Pseudomanifold) -> Result<Criticality> {
        for s in self.head_of.keys().chain(self.tail_of.keys()) {
            space.require(s)?;
        }
        let mut c = Criticality::default();
        for s in space.simplices() {
            let bucket = if self.head_of.contains_key(s) {
                &mut c.regular_tails
            } else if self.tail_of.contains_key(s) {
                &mut c.regular_heads
            } else {
                &mut c.critical
            };
            bucket.insert(s.clone());
        }
        Ok(c)
    }
}

impl PartialEq for GradientVectorField {
    fn eq(&self, other: &Self) -> bool {
        self.vectors == other.vectors
    }
}

impl Eq for GradientVectorField {}

impl fmt::Debug for GradientVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.vectors.iter().map(|v| (&v.tail, &v.head)))
            .finish()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Criticality {
    pub critical: SimplexSet,
    pub regular_tails: SimplexSet,
    pub regular_heads: SimplexSet,
}

/// The field induced by a discrete Morse function: every facet pair
/// `(σ, τ)` with `F(σ) >= F(τ)`. Fails if those pairs are not a matching,
/// which cannot happen when `v` is a DMF.
pub fn dmf_gradient(v: &ValuedComplex) -> Result<GradientVectorField> {
    let space = v.space();
    let mut vectors = Vec::new();
    for id in 0..space.len() {
        for &f in space.facets(id) {
            if v.at(f) >= v.at(id) {
                vectors.push(Vector::new(space.simplex(f).clone(), space.simplex(id).clone()));
            }
        }
    }
    GradientVectorField::new(vectors)
}

/// The field of a stack, defined as the field of its negation. For a basic
/// stack these are exactly the nested facet pairs with equal altitude.
pub fn stack_gradient(v: &ValuedComplex) -> Result<GradientVectorField> {
    dmf_gradient(&v.negate())
}

/// Forman equivalence: the strict-inequality pattern on every facet pair agrees.
pub fn forman_equivalent(f: &ValuedComplex, g: &ValuedComplex) -> Result<bool> {
    if !f.space().same_space(g.space()) {
        return Err(Error::DifferentSpaces);
    }
    let space = f.space();
    Ok((0..space.len()).all(|id| {
        space
            .facets(id)
            .iter()
            .all(|&s| (f.at(s) < f.at(id)) == (g.at(s) < g.at(id)))
    }))
}

/// `(τ_{-1},) σ_0, τ_0, σ_1, …, τ_{k-1}, σ_k` following a vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientPath {
    simplices: Vec<Simplex>,
    leading: bool,
}

impl GradientPath {
    /// The whole sequence, including the leading critical simplex if any.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn has_leading(&self) -> bool {
        self.leading
    }

    /// `σ_0, τ_0, …, σ_k` without the leading simplex.
    pub fn body(&self) -> &[Simplex] {
        &self.simplices[usize::from(self.leading)..]
    }

    /// Number of vectors traversed.
    pub fn k(&self) -> usize {
        self.body().len() / 2
    }

    pub fn is_trivial(&self) -> bool {
        self.k() == 0
    }

    pub fn is_closed(&self) -> bool {
        let body = self.body();
        !self.is_trivial() && body.first() == body.last()
    }
}

/// All maximal gradient paths of `field` starting at `start`, which must be
/// a critical `(p+1)`-simplex (the paths then begin at one of its facets) or
/// a regular `p`-simplex.
///
/// A path stops at the first `σ` that is not the tail of a `(p, p+1)` vector,
/// or when it would revisit a `σ` (only possible for fields with closed paths).
pub fn enumerate_gradient_paths(
    space: &Pseudomanifold,
    field: &GradientVectorField,
    start: &Simplex,
    p: usize,
) -> Result<Vec<GradientPath>> {
    space.require(start)?;
    let matched = field.is_matched(start);
    let (leading, firsts): (bool, Vec<Simplex>) = if start.dim() == p + 1 && !matched {
        (true, start.facets().collect())
    } else if start.dim() == p && matched {
        (false, vec![start.clone()])
    } else {
        return Err(Error::BadPathStart {
            simplex: start.clone(),
            p,
        });
    };

    let mut out = Vec::new();
    for sigma0 in firsts {
        let mut prefix = Vec::new();
        if leading {
            prefix.push(start.clone());
        }
        prefix.push(sigma0);
        let mut stack = vec![prefix];
        while let Some(path) = stack.pop() {
            let sigma = path.last().unwrap();
            let head = field.head_of(sigma).filter(|h| h.dim() == p + 1);
            let Some(tau) = head else {
                out.push(GradientPath { simplices: path, leading });
                continue;
            };
            let body_start = usize::from(leading);
            for next in tau.facets().filter(|f| f != sigma) {
                let mut extended = path.clone();
                extended.push(tau.clone());
                let revisit = path[body_start..].iter().step_by(2).any(|s| *s == next);
                extended.push(next);
                if revisit {
                    out.push(GradientPath { simplices: extended, leading });
                } else {
                    stack.push(extended);
                }
            }
        }
    }
    out.sort_by(|a, b| a.simplices.cmp(&b.simplices));
    Ok(out)
}

/// A non-trivial closed gradient path as `σ_0, τ_0, …, σ_{k-1}, τ_{k-1}`
/// (the return to `σ_0` is implicit), or `None` if the field is acyclic.
///
/// Searches for a directed cycle in the Hasse diagram whose arrows point
/// from each simplex to its facets, except along vectors where the arrow is
/// reversed. Such a cycle can only climb through vectors, so it alternates
/// between two dimensions and is exactly a closed gradient path.
pub fn find_closed_path(field: &GradientVectorField) -> Option<Vec<Simplex>> {
    let mut nodes: BTreeSet<&Simplex> = BTreeSet::new();
    for v in field.iter() {
        nodes.insert(&v.tail);
        nodes.insert(&v.head);
    }
    let nodes: Vec<&Simplex> = nodes.into_iter().collect();
    let index: HashMap<&Simplex, usize> = nodes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (i, s) in nodes.iter().enumerate() {
        if let Some(h) = field.head_of(s) {
            succ[i].push(index[h]);
        }
        let own_tail = field.tail_of(s);
        for f in s.facets() {
            if Some(&f) == own_tail {
                continue;
            }
            if let Some(&j) = index.get(&f) {
                succ[i].push(j);
            }
        }
    }

    // 0 = unvisited, 1 = on the DFS stack, 2 = finished
    let mut color = vec![0u8; nodes.len()];
    let mut parent = vec![usize::MAX; nodes.len()];
    for root in 0..nodes.len() {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        color[root] = 1;
        while let Some(top) = stack.last_mut() {
            let u = top.0;
            if top.1 < succ[u].len() {
                let w = succ[u][top.1];
                top.1 += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        parent[w] = u;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![u];
                        let mut x = u;
                        while x != w {
                            x = parent[x];
                            cycle.push(x);
                        }
                        cycle.reverse();
                        return Some(rotate_to_smallest_tail(&nodes, cycle, field));
                    }
                    _ => {}
                }
            } else {
                color[u] = 2;
                stack.pop();
            }
        }
    }
    None
}

fn rotate_to_smallest_tail(nodes: &[&Simplex], cycle: Vec<usize>, field: &GradientVectorField) -> Vec<Simplex> {
    let start = (0..cycle.len())
        .filter(|&i| field.head_of(nodes[cycle[i]]).is_some())
        .min_by(|&a, &b| nodes[cycle[a]].cmp(nodes[cycle[b]]))
        .unwrap_or(0);
    cycle[start..]
        .iter()
        .chain(cycle[..start].iter())
        .map(|&i| nodes[i].clone())
        .collect()
}

pub fn has_closed_path(field: &GradientVectorField) -> bool {
    find_closed_path(field).is_some()
}
