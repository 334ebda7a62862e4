//! Pseudomanifold families and a seeded generator of basic simplicial stacks.
//!
//! Supported families and bounds:
//!
//! | kind                  | d     | bounds          | vertices        |
//! |-----------------------|-------|-----------------|-----------------|
//! | `cycle(n)`            | 1     | 3 ≤ n ≤ 100000  | `1..=n`         |
//! | `simplex_boundary(n)` | n − 1 | 2 ≤ n ≤ 12      | `1..=n+1`       |
//! | `torus_grid(n)`       | 2     | 3 ≤ n ≤ 512     | `1..=n²`        |
//!
//! The torus is the n×n vertex grid with wraparound, each square split
//! along the `(i, j)–(i+1, j+1)` diagonal.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{CellId, Pseudomanifold, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::morse::{check_stack, ValuedComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Cycle(usize),
    SimplexBoundary(usize),
    TorusGrid(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub seed: u64,
}

impl GeneratorKind {
    pub fn space(&self) -> Result<Arc<Pseudomanifold>> {
        match *self {
            GeneratorKind::Cycle(n) => cycle(n),
            GeneratorKind::SimplexBoundary(n) => simplex_boundary(n),
            GeneratorKind::TorusGrid(n) => torus_grid(n),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Cycle(n) => write!(f, "cycle({n})"),
            GeneratorKind::SimplexBoundary(n) => write!(f, "simplex_boundary({n})"),
            GeneratorKind::TorusGrid(n) => write!(f, "torus_grid({n})"),
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    /// Accepts `cycle(4)` or `cycle:4`, likewise for the other kinds.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Generator(format!("cannot parse generator kind {s:?}"));
        let (name, arg) = match s.split_once('(') {
            Some((name, rest)) => (name, rest.strip_suffix(')').ok_or_else(bad)?),
            None => s.split_once(':').ok_or_else(bad)?,
        };
        let n: usize = arg.trim().parse().map_err(|_| bad())?;
        match name.trim() {
            "cycle" => Ok(GeneratorKind::Cycle(n)),
            "simplex_boundary" => Ok(GeneratorKind::SimplexBoundary(n)),
            "torus_grid" | "torus" => Ok(GeneratorKind::TorusGrid(n)),
            _ => Err(bad()),
        }
    }
}

fn check_range(what: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::Generator(format!("{what}({n}): n must be in {lo}..={hi}")));
    }
    Ok(())
}

fn build(facets: Vec<Simplex>, d: usize) -> Result<Arc<Pseudomanifold>> {
    Ok(Arc::new(Pseudomanifold::from_facets(&facets, d)?))
}

pub fn cycle(n: usize) -> Result<Arc<Pseudomanifold>> {
    check_range("cycle", n, 3, 100_000)?;
    let n = n as Vertex;
    let edges = (1..=n)
        .map(|i| Simplex::new([i, i % n + 1]).expect("distinct"))
        .collect();
    build(edges, 1)
}

pub fn simplex_boundary(n: usize) -> Result<Arc<Pseudomanifold>> {
    check_range("simplex_boundary", n, 2, 12)?;
    let all: Vec<Vertex> = (1..=(n as Vertex + 1)).collect();
    let facets = all
        .iter()
        .map(|&skip| Simplex::new(all.iter().copied().filter(|&v| v != skip)).expect("distinct"))
        .collect();
    build(facets, n - 1)
}

pub fn torus_grid(n: usize) -> Result<Arc<Pseudomanifold>> {
    check_range("torus_grid", n, 3, 512)?;
    let at = |i: usize, j: usize| ((i % n) * n + (j % n) + 1) as Vertex;
    let mut tris = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b, c, e) = (at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1));
            tris.push(Simplex::new([a, b, e]).expect("distinct"));
            tris.push(Simplex::new([a, c, e]).expect("distinct"));
        }
    }
    build(tris, 2)
}

/// The square cycle `1-2-3-4` with the stack
/// `F(12)=0, F(34)=1, F(2)=F(23)=2, F(4)=F(14)=3, F(1)=4, F(3)=5`.
pub fn square_cycle_example() -> ValuedComplex {
    let space = cycle(4).expect("cycle(4)");
    ValuedComplex::from_fn(space, |s| match s.vertices() {
        [1, 2] => 0,
        [3, 4] => 1,
        [2] | [2, 3] => 2,
        [4] | [1, 4] => 3,
        [1] => 4,
        [3] => 5,
        other => unreachable!("{other:?} is not in the square cycle"),
    })
}

/// A random basic stack on `space`.
///
/// Starts from an injective stack: every simplex is ranked by the largest
/// random height among its d-cofaces, then by codimension, then by a random
/// tiebreak. Then, in random order, facet pairs `(σ, τ)` are merged by
/// setting `F(σ) := F(τ)` when both are still unpaired and every other
/// cofacet of `σ` lies strictly below `F(τ)`; each merge keeps the map a
/// basic stack. The result is certified before it is returned.
pub fn random_basic_stack<R: Rng>(space: &Arc<Pseudomanifold>, rng: &mut R) -> ValuedComplex {
    loop {
        let v = injective_stack(space, rng);
        let v = random_merges(v, rng);
        if check_stack(&v).is_ok_and(|c| c.is_basic()) {
            return v;
        }
    }
}

fn injective_stack<R: Rng>(space: &Arc<Pseudomanifold>, rng: &mut R) -> ValuedComplex {
    let d = space.dim();
    let n = space.len();
    let mut heights: Vec<u64> = (0..space.ids_of_dim(d).len() as u64).collect();
    heights.shuffle(rng);
    let mut top_height = vec![0u64; n];
    for (id, h) in space.ids_of_dim(d).zip(heights) {
        top_height[id] = h;
    }
    // ids are grouped by increasing dimension, so walk downwards
    for id in (0..space.ids_of_dim(d).start).rev() {
        top_height[id] = space
            .cofacets(id)
            .iter()
            .map(|&c| top_height[c])
            .max()
            .expect("every face of a pure complex has a cofacet");
    }
    let mut keys: Vec<(u64, usize, u64, CellId)> = (0..n)
        .map(|id| (top_height[id], d - space.simplex(id).dim(), rng.gen(), id))
        .collect();
    keys.sort_unstable();
    let mut values = vec![0i64; n];
    for (rank, &(_, _, _, id)) in keys.iter().enumerate() {
        values[id] = rank as i64;
    }
    ValuedComplex::new(space.clone(), values).expect("one value per simplex")
}

fn random_merges<R: Rng>(mut v: ValuedComplex, rng: &mut R) -> ValuedComplex {
    let space = v.space().clone();
    let keep = rng.gen_range(0.5..=1.0);
    let mut pairs: Vec<(CellId, CellId)> = (0..space.len())
        .flat_map(|tau| space.facets(tau).iter().map(move |&sigma| (sigma, tau)))
        .collect();
    pairs.shuffle(rng);
    let mut paired = vec![false; space.len()];
    for (sigma, tau) in pairs {
        if paired[sigma] || paired[tau] || !rng.gen_bool(keep) {
            continue;
        }
        let target = v.at(tau);
        if space
            .cofacets(sigma)
            .iter()
            .all(|&c| c == tau || v.at(c) < target)
        {
            v.values_mut()[sigma] = target;
            paired[sigma] = true;
            paired[tau] = true;
        }
    }
    v
}

/// Space plus a certified random basic stack; identical specs give identical output.
pub fn generate(spec: &GeneratorSpec) -> Result<ValuedComplex> {
    let space = spec.kind.space()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(random_basic_stack(&space, &mut rng))
}

/// `cycle(4..=12)`, `simplex_boundary(3..=5)` and `torus_grid(3..=8)`.
pub fn corpus_kinds() -> Vec<GeneratorKind> {
    (4..=12)
        .map(GeneratorKind::Cycle)
        .chain((3..=5).map(GeneratorKind::SimplexBoundary))
        .chain((3..=8).map(GeneratorKind::TorusGrid))
        .collect()
}

/// Every corpus kind crossed with seeds `base..base + seeds`.
pub fn corpus(seeds: u64, base: u64) -> Vec<GeneratorSpec> {
    corpus_kinds()
        .into_iter()
        .flat_map(|kind| (base..base + seeds).map(move |seed| GeneratorSpec { kind, seed }))
        .collect()
}
