//! Dual graph of a stack, relative spanning forests, MSF-cuts and watershed-cuts.
//!
//! Two independent routes produce the minimum spanning forest relative to
//! the minima: [`induced_forest`] reads it off the gradient vector field
//! without looking at weights, [`msf_kruskal_relative`] runs Kruskal on the
//! weighted dual graph. On basic stacks they agree edge for edge.

mod dot;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use crate::complex::{closure, CellId, Complex, Pseudomanifold, Simplex};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::morse::{check_stack, minimum_ids, stack_gradient, GradientVectorField, ValuedComplex};

pub use dot::{to_dot, DotStyle};

/// One dual edge per (d-1)-face: the two d-simplices sharing it and the
/// altitude of the shared face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualEdge {
    pub ridge: CellId,
    pub ends: [CellId; 2],
    pub weight: i64,
}

/// Vertices are the d-simplices of the space; edges are indexed by ridge id.
#[derive(Debug, Clone)]
pub struct DualGraph {
    space: Arc<Pseudomanifold>,
    edges: Vec<DualEdge>,
    ridge_start: CellId,
}

impl DualGraph {
    pub fn space(&self) -> &Arc<Pseudomanifold> {
        &self.space
    }

    /// Ids of the d-simplices.
    pub fn vertices(&self) -> Range<CellId> {
        self.space.ids_of_dim(self.space.dim())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    pub fn edge(&self, ridge: CellId) -> &DualEdge {
        &self.edges[ridge - self.ridge_start]
    }

    /// Ridges (dual edges) incident to a d-simplex.
    pub fn incident(&self, vertex: CellId) -> &[CellId] {
        self.space.facets(vertex)
    }

    pub fn other_end(&self, ridge: CellId, vertex: CellId) -> CellId {
        let [a, b] = self.edge(ridge).ends;
        if a == vertex {
            b
        } else {
            a
        }
    }

    /// `Edges(S)`: the dual edges whose shared face is in `faces`.
    pub fn edges_of_faces<'a>(&self, faces: impl IntoIterator<Item = &'a Simplex>) -> Result<BTreeSet<CellId>> {
        let d = self.space.dim();
        faces
            .into_iter()
            .filter(|f| f.dim() + 1 == d)
            .map(|f| self.space.require(f))
            .collect()
    }
}

/// The weighted dual graph of `v`.
pub fn dual_graph(v: &ValuedComplex) -> DualGraph {
    let space = v.space().clone();
    let ridges = space.ids_of_dim(space.dim() - 1);
    let edges = ridges
        .clone()
        .map(|ridge| DualEdge {
            ridge,
            ends: space.ridge_cofaces(ridge),
            weight: v.at(ridge),
        })
        .collect();
    DualGraph {
        space,
        edges,
        ridge_start: ridges.start,
    }
}

/// A subgraph given by a set of d-simplices and the dual edges among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anchor {
    pub vertices: BTreeSet<CellId>,
    pub edges: BTreeSet<CellId>,
}

impl Anchor {
    /// The subgraph made of the d-simplices and (d-1)-faces found in `cells`.
    pub fn from_cells(dg: &DualGraph, cells: impl IntoIterator<Item = CellId>) -> Self {
        let d = dg.space().dim();
        let mut anchor = Anchor {
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
        };
        for id in cells {
            match dg.space().simplex(id).dim() {
                k if k == d => anchor.vertices.insert(id),
                k if k + 1 == d => anchor.edges.insert(id),
                _ => false,
            };
        }
        anchor
    }
}

/// The dual graph of the minima: their d-simplices and (d-1)-faces. For a
/// basic stack every minimum is a single d-simplex, so it has no edges.
pub fn minima_dual_subgraph(v: &ValuedComplex, dg: &DualGraph) -> Result<Anchor> {
    let cert = check_stack(v)?;
    if let Some(why) = cert.not_basic {
        return Err(Error::NotBasic(why));
    }
    let minima = minimum_ids(v);
    if let Some((_, ids)) = minima.iter().find(|(_, ids)| ids.len() != 1) {
        return Err(Error::Invariant(format!(
            "minimum at {} is not a single d-simplex",
            v.space().simplex(ids[0])
        )));
    }
    Ok(Anchor::from_cells(dg, minima.into_iter().flat_map(|(_, ids)| ids)))
}

/// A spanning subgraph of the dual graph, stored as its edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeForest {
    edges: BTreeSet<CellId>,
    anchor: Anchor,
}

impl RelativeForest {
    pub fn new(edges: BTreeSet<CellId>, anchor: Anchor) -> Self {
        RelativeForest { edges, anchor }
    }

    /// Ridge ids of the forest edges.
    pub fn edges(&self) -> &BTreeSet<CellId> {
        &self.edges
    }

    pub fn anchor(&self) -> &Anchor {
        &self.anchor
    }

    pub fn weight(&self, dg: &DualGraph) -> i64 {
        self.edges.iter().map(|&r| dg.edge(r).weight).sum()
    }

    /// Component label of every dual vertex, indexed from `dg.vertices().start`.
    pub fn component_labels(&self, dg: &DualGraph) -> Vec<usize> {
        let base = dg.vertices().start;
        let mut dsu = DisjointSets::new(dg.vertex_count());
        for &r in &self.edges {
            let [a, b] = dg.edge(r).ends;
            dsu.union(a - base, b - base);
        }
        (0..dg.vertex_count()).map(|i| dsu.find(i)).collect()
    }

    /// Acyclic, spanning, every tree holding exactly one anchor vertex.
    /// Applies to anchors without edges, which is the basic-stack case.
    pub fn is_spanning_forest_relative(&self, dg: &DualGraph) -> bool {
        let base = dg.vertices().start;
        let mut dsu = DisjointSets::new(dg.vertex_count());
        for &r in &self.edges {
            let [a, b] = dg.edge(r).ends;
            if dsu.union(a - base, b - base).is_none() {
                return false;
            }
        }
        let mut per_root = vec![0usize; dg.vertex_count()];
        for &m in &self.anchor.vertices {
            per_root[dsu.find(m - base)] += 1;
        }
        (0..dg.vertex_count()).all(|i| dsu.find(i) != i || per_root[i] == 1)
    }
}

/// The forest induced by a gradient vector field: for each vector `(a, b)`
/// with `a` a (d-1)-face, the dual edge at `a` (joining `b` to the other
/// d-face `c` containing `a`), plus the anchor's own edges.
///
/// Weights are never read. Fails if some d-simplex is neither in the anchor
/// nor the head of a `(d-1, d)` vector.
pub fn induced_forest(dg: &DualGraph, field: &GradientVectorField, anchor: &Anchor) -> Result<RelativeForest> {
    let space = dg.space();
    let d = space.dim();
    let mut edges = anchor.edges.clone();
    let mut heads = BTreeSet::new();
    for v in field.iter().filter(|v| v.tail.dim() + 1 == d) {
        edges.insert(space.require(&v.tail)?);
        heads.insert(space.require(&v.head)?);
    }
    if let Some(orphan) = dg
        .vertices()
        .find(|x| !anchor.vertices.contains(x) && !heads.contains(x))
    {
        return Err(Error::Invariant(format!(
            "d-simplex {} is neither a minimum nor the head of a vector",
            space.simplex(orphan)
        )));
    }
    Ok(RelativeForest::new(edges, anchor.clone()))
}

/// Kruskal relative to an anchor: edges by ascending `(weight, ridge)`; an
/// edge is kept unless it closes a cycle or joins two components that both
/// already contain anchor vertices.
pub fn msf_kruskal_relative(dg: &DualGraph, anchor: &Anchor) -> Result<RelativeForest> {
    let order: Vec<CellId> = {
        let mut e: Vec<&DualEdge> = dg.edges().iter().collect();
        e.sort_by_key(|e| (e.weight, e.ridge));
        e.into_iter().map(|e| e.ridge).collect()
    };
    msf_kruskal_in_order(dg, anchor, &order)
}

/// Kruskal relative to `anchor`, scanning edges in the given order. With
/// distinct weights any weight-sorted order gives the same forest.
pub fn msf_kruskal_in_order(dg: &DualGraph, anchor: &Anchor, order: &[CellId]) -> Result<RelativeForest> {
    if anchor.vertices.is_empty() {
        return Err(Error::EmptyAnchor);
    }
    let base = dg.vertices().start;
    let n = dg.vertex_count();
    let mut dsu = DisjointSets::new(n);
    let mut marked = vec![false; n];
    for &m in &anchor.vertices {
        marked[m - base] = true;
    }
    let mut edges = BTreeSet::new();
    for &r in &anchor.edges {
        let [a, b] = dg.edge(r).ends;
        if let Some(root) = dsu.union(a - base, b - base) {
            marked[root] = true;
        }
        edges.insert(r);
    }
    for &r in order {
        if anchor.edges.contains(&r) {
            continue;
        }
        let [a, b] = dg.edge(r).ends;
        let (ra, rb) = (dsu.find(a - base), dsu.find(b - base));
        if ra == rb || (marked[ra] && marked[rb]) {
            continue;
        }
        let root = dsu.union(ra, rb).expect("distinct roots");
        marked[root] = marked[ra] || marked[rb];
        edges.insert(r);
    }
    if (0..n).any(|i| !marked[dsu.find(i)]) {
        return Err(Error::Invariant("dual graph is not connected to the anchor".into()));
    }
    Ok(RelativeForest::new(edges, anchor.clone()))
}

/// Dual edges between distinct forest components, their faces, and the
/// closure of those faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsfCut {
    pub cut_edges: BTreeSet<CellId>,
    pub cut_faces: Vec<Simplex>,
    pub watershed: Complex,
}

pub fn msf_cut(forest: &RelativeForest, dg: &DualGraph) -> MsfCut {
    let base = dg.vertices().start;
    let labels = forest.component_labels(dg);
    let cut_edges: BTreeSet<CellId> = dg
        .edges()
        .iter()
        .filter(|e| labels[e.ends[0] - base] != labels[e.ends[1] - base])
        .map(|e| e.ridge)
        .collect();
    let cut_faces: Vec<Simplex> = cut_edges.iter().map(|&r| dg.space().simplex(r).clone()).collect();
    let watershed = closure(&cut_faces);
    MsfCut {
        cut_edges,
        cut_faces,
        watershed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Forest induced by the gradient vector field.
    ViaGvf,
    /// Kruskal relative to the minima.
    ViaKruskal,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gvf" | "via_gvf" => Ok(Strategy::ViaGvf),
            "kruskal" | "via_kruskal" => Ok(Strategy::ViaKruskal),
            _ => Err(format!("unknown strategy {s:?} (expected gvf or kruskal)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::ViaGvf => "gvf",
            Strategy::ViaKruskal => "kruskal",
        })
    }
}

/// Everything computed on the way to a watershed-cut.
#[derive(Debug, Clone)]
pub struct Watershed {
    pub dual: DualGraph,
    pub anchor: Anchor,
    pub forest: RelativeForest,
    pub cut: MsfCut,
}

/// The MSF relative to the minima of a basic stack with nonnegative
/// altitudes, by the chosen strategy, and its cut.
pub fn watershed(v: &ValuedComplex, strategy: Strategy) -> Result<Watershed> {
    if let Some(id) = (0..v.space().len()).filter(|&i| v.at(i) < 0).min_by_key(|&i| (v.at(i), i)) {
        return Err(Error::NegativeAltitude {
            simplex: v.space().simplex(id).clone(),
            value: v.at(id),
        });
    }
    let dual = dual_graph(v);
    let anchor = minima_dual_subgraph(v, &dual)?;
    let forest = match strategy {
        Strategy::ViaGvf => induced_forest(&dual, &stack_gradient(v)?, &anchor)?,
        Strategy::ViaKruskal => msf_kruskal_relative(&dual, &anchor)?,
    };
    let cut = msf_cut(&forest, &dual);
    Ok(Watershed {
        dual,
        anchor,
        forest,
        cut,
    })
}

/// The watershed-cut of a basic stack with nonnegative altitudes.
pub fn watershed_cut(v: &ValuedComplex, strategy: Strategy) -> Result<MsfCut> {
    watershed(v, strategy).map(|w| w.cut)
}

/// Edges present in only one of two forests.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForestDiff {
    pub only_in_first: Vec<CellId>,
    pub only_in_second: Vec<CellId>,
}

impl ForestDiff {
    pub fn is_empty(&self) -> bool {
        self.only_in_first.is_empty() && self.only_in_second.is_empty()
    }
}

pub fn compare_forests(a: &RelativeForest, b: &RelativeForest) -> ForestDiff {
    ForestDiff {
        only_in_first: a.edges.difference(&b.edges).copied().collect(),
        only_in_second: b.edges.difference(&a.edges).copied().collect(),
    }
}
