use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use super::gradient::{find_closed_path, GradientVectorField};
use super::valued::ValuedComplex;
use crate::complex::{CellId, Pseudomanifold};
use crate::error::{Error, Result};

/// A basic discrete Morse function whose gradient is `field`.
///
/// Each vector is contracted to a single node and every other facet pair
/// `σ ⊂ τ` becomes an arrow `σ → τ`. The resulting digraph is acyclic
/// exactly when the field has no closed gradient path. Nodes receive
/// consecutive values `0, 1, 2, …` in topological order, smallest simplex
/// first among the available nodes, and both simplices of a vector share
/// their node's value.
pub fn basify(space: &Arc<Pseudomanifold>, field: &GradientVectorField) -> Result<ValuedComplex> {
    let n = space.len();
    // representative (smallest id) of each simplex's node
    let mut node: Vec<CellId> = (0..n).collect();
    for v in field.iter() {
        let tail = space.require(&v.tail)?;
        let head = space.require(&v.head)?;
        node[head] = tail;
    }

    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<CellId>> = vec![Vec::new(); n];
    for tau in 0..n {
        for &sigma in space.facets(tau) {
            if node[sigma] == node[tau] {
                continue;
            }
            succ[node[sigma]].push(node[tau]);
            indegree[node[tau]] += 1;
        }
    }

    let mut ready: BinaryHeap<Reverse<CellId>> = (0..n)
        .filter(|&i| node[i] == i && indegree[i] == 0)
        .map(Reverse)
        .collect();
    let mut value_of_node = vec![i64::MIN; n];
    let mut next = 0i64;
    while let Some(Reverse(u)) = ready.pop() {
        value_of_node[u] = next;
        next += 1;
        for &w in &succ[u] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }

    let nodes = (0..n).filter(|&i| node[i] == i).count();
    if (next as usize) < nodes {
        let witness = find_closed_path(field)
            .and_then(|c| c.into_iter().next())
            .ok_or_else(|| Error::Invariant("cyclic order without a closed gradient path".into()))?;
        return Err(Error::ClosedPath(witness));
    }

    let values = (0..n).map(|i| value_of_node[node[i]]).collect();
    ValuedComplex::new(space.clone(), values)
}
