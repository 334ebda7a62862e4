use std::collections::BTreeSet;

use super::valued::ValuedComplex;
use crate::complex::{CellId, Complex, FreePair, SimplexSet};
use crate::dsu::DisjointSets;
use crate::error::Result;

/// A connected component of `[F <= k]` that misses `[F <= k-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimum {
    pub altitude: i64,
    pub simplices: SimplexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minima {
    /// Sorted by smallest member.
    pub components: Vec<Minimum>,
    /// `M₋(F)`, the union of all minima.
    pub union: SimplexSet,
}

/// Minima as sorted lists of ids, ordered by their first id.
///
/// Connectivity is incidence (containment). On a stack, `[F <= k]` is closed
/// under cofaces, so a facet chain links any two comparable members and a
/// level set `{F = k}` component is a minimum exactly when none of its
/// members has a cofacet below `k`.
pub(crate) fn minimum_ids(v: &ValuedComplex) -> Vec<(i64, Vec<CellId>)> {
    let space = v.space();
    let n = space.len();
    let mut dsu = DisjointSets::new(n);
    for id in 0..n {
        for &c in space.cofacets(id) {
            if v.at(c) == v.at(id) {
                dsu.union(id, c);
            }
        }
    }
    let mut lowered = vec![false; n];
    for id in 0..n {
        if space.cofacets(id).iter().any(|&c| v.at(c) < v.at(id)) {
            let root = dsu.find(id);
            lowered[root] = true;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<CellId>> = Default::default();
    for id in 0..n {
        let root = dsu.find(id);
        if !lowered[root] {
            groups.entry(root).or_default().push(id);
        }
    }
    let mut out: Vec<(i64, Vec<CellId>)> = groups
        .into_values()
        .map(|ids| (v.at(ids[0]), ids))
        .collect();
    out.sort_by_key(|(_, ids)| ids[0]);
    out
}

/// Minima of a stack. Undefined (but total) for maps that are not stacks.
pub fn minima(v: &ValuedComplex) -> Minima {
    let space = v.space();
    let components: Vec<Minimum> = minimum_ids(v)
        .into_iter()
        .map(|(altitude, ids)| Minimum {
            altitude,
            simplices: ids.iter().map(|&i| space.simplex(i).clone()).collect(),
        })
        .collect();
    let union = components
        .iter()
        .flat_map(|m| m.simplices.iter().cloned())
        .collect();
    Minima { components, union }
}

/// The faces outside every minimum. Fails when that set is not closed,
/// which can only happen if `v` is not a stack.
pub fn divide(v: &ValuedComplex) -> Result<Complex> {
    let union = minima(v).union;
    let rest = v
        .space()
        .simplices()
        .iter()
        .filter(|s| !union.contains(s))
        .cloned()
        .collect();
    Complex::try_from_set(rest)
}

/// Free pairs for `F`: `σ` is free in the section `[F >= F(σ)]`. On a stack,
/// the cofaces of `σ` in that section are exactly those at altitude `F(σ)`.
pub fn free_pairs_for_stack(v: &ValuedComplex) -> Vec<FreePair> {
    let space = v.space();
    let mut out = Vec::new();
    for id in 0..space.len() {
        let level = v.at(id);
        let mut seen = BTreeSet::new();
        let mut stack: Vec<CellId> = space.cofacets(id).to_vec();
        while let Some(c) = stack.pop() {
            if v.at(c) >= level && seen.insert(c) {
                stack.extend_from_slice(space.cofacets(c));
            }
        }
        if seen.len() == 1 {
            let tau = *seen.iter().next().unwrap();
            out.push(FreePair {
                sigma: space.simplex(id).clone(),
                tau: space.simplex(tau).clone(),
            });
        }
    }
    out.sort();
    out
}

fn free_d_partner(v: &ValuedComplex, ridge: CellId) -> Option<CellId> {
    let [a, b] = v.space().ridge_cofaces(ridge);
    let level = v.at(ridge);
    match (v.at(a) >= level, v.at(b) >= level) {
        (true, false) => Some(a),
        (false, true) => Some(b),
        _ => None,
    }
}

/// Result of [`ultimate_stack_collapse`] with the lowered pairs in order.
#[derive(Debug, Clone)]
pub struct StackCollapse {
    pub result: ValuedComplex,
    pub steps: Vec<FreePair>,
}

/// Lowers free `(d-1, d)` pairs for `F`, smallest pair first, until none remain.
pub fn ultimate_stack_collapse(v: &ValuedComplex) -> StackCollapse {
    let space = v.space().clone();
    let d = space.dim();
    let mut current = v.clone();
    let mut steps = Vec::new();
    let mut worklist: BTreeSet<CellId> = space.ids_of_dim(d - 1).collect();
    while let Some(ridge) = worklist.pop_first() {
        let Some(top) = free_d_partner(&current, ridge) else {
            continue;
        };
        let values = current.values_mut();
        values[ridge] -= 1;
        values[top] -= 1;
        worklist.insert(ridge);
        worklist.extend(space.facets(top).iter().copied());
        steps.push(FreePair {
            sigma: space.simplex(ridge).clone(),
            tau: space.simplex(top).clone(),
        });
    }
    StackCollapse {
        result: current,
        steps,
    }
}
