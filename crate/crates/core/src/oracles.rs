//! Brute-force checkers written straight from the definitions.
//!
//! Nothing here calls the production algorithms: connectivity is plain
//! breadth-first search, closure is subset enumeration, minima come from
//! level-set components, and the minimum spanning forest is found by trying
//! every edge subset. Exhaustive checks refuse instances above fixed size
//! gates instead of running for hours.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::complex::{CellId, Complex, Pseudomanifold, Simplex};
use crate::dual::{Anchor, DualGraph, RelativeForest};
use crate::error::{Error, Result};
use crate::morse::{GradientVectorField, ValuedComplex};

/// Largest dual graph (in vertices) [`oracle_msf`] accepts.
pub const MSF_MAX_VERTICES: usize = 12;
/// Largest number of non-anchor dual edges [`oracle_msf`] accepts.
pub const MSF_MAX_EDGES: usize = 20;
/// Largest space [`oracle_closed_paths`] accepts.
pub const CLOSED_PATH_MAX_SIMPLICES: usize = 10_000;

/// One verdict. A failing report always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub claim: String,
    pub pass: bool,
    pub witness: Vec<String>,
}

impl OracleReport {
    pub fn pass(claim: impl Into<String>) -> Self {
        OracleReport {
            claim: claim.into(),
            pass: true,
            witness: Vec::new(),
        }
    }

    pub fn fail(claim: impl Into<String>, witness: Vec<String>) -> Self {
        let witness = if witness.is_empty() { vec!["?".into()] } else { witness };
        OracleReport {
            claim: claim.into(),
            pass: false,
            witness,
        }
    }

    fn from_result(claim: impl Into<String>, r: std::result::Result<(), Vec<String>>) -> Self {
        match r {
            Ok(()) => Self::pass(claim),
            Err(w) => Self::fail(claim, w),
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CLAIM {} {}", self.claim, if self.pass { "PASS" } else { "FAIL" })?;
        for w in &self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

fn show(s: &Simplex) -> String {
    format!("{s:?}")
}

/// Every nonempty subset of every listed simplex.
fn naive_closure(space: &Pseudomanifold, faces: &[Simplex]) -> Result<HashSet<CellId>> {
    let mut out = HashSet::new();
    for s in faces {
        let verts = s.vertices();
        for mask in 1u32..(1 << verts.len()) {
            let sub = Simplex::new(
                verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v),
            )?;
            out.insert(space.require(&sub)?);
        }
    }
    Ok(out)
}

/// d-connected components of `members`: d-simplices linked through
/// (d-1)-faces that are themselves members. Sorted by smallest id.
fn d_components(space: &Pseudomanifold, members: &HashSet<CellId>) -> Vec<BTreeSet<CellId>> {
    let d = space.dim();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for start in space.ids_of_dim(d) {
        if !members.contains(&start) || !seen.insert(start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &r in space.facets(a) {
                if !members.contains(&r) {
                    continue;
                }
                for &b in space.cofacets(r) {
                    if members.contains(&b) && seen.insert(b) {
                        comp.insert(b);
                        queue.push_back(b);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

/// `b` is an extension of `a`: `a ⊆ b` and every d-component of `b`
/// contains exactly one d-component of `a`. Two empty sets also qualify.
fn check_extension(
    space: &Pseudomanifold,
    a: &HashSet<CellId>,
    b: &HashSet<CellId>,
) -> std::result::Result<(), Vec<String>> {
    if a.is_empty() && b.is_empty() {
        return Ok(());
    }
    if let Some(&x) = a.iter().filter(|x| !b.contains(x)).min() {
        return Err(vec!["not-contained".into(), show(space.simplex(x))]);
    }
    let inner = d_components(space, a);
    for comp in d_components(space, b) {
        let count = inner.iter().filter(|c| c.iter().all(|x| comp.contains(x))).count();
        if count != 1 {
            let first = *comp.iter().next().expect("components are nonempty");
            return Err(vec![
                "component".into(),
                show(space.simplex(first)),
                format!("holds={count}"),
            ]);
        }
    }
    Ok(())
}

/// All faces and all cofaces of every simplex, by repeated facet steps.
fn incidence(space: &Pseudomanifold) -> Vec<Vec<CellId>> {
    let n = space.len();
    let mut out = vec![Vec::new(); n];
    for (id, row) in out.iter_mut().enumerate() {
        let mut seen = HashSet::new();
        let mut down = vec![id];
        while let Some(x) = down.pop() {
            for &f in space.facets(x) {
                if seen.insert(f) {
                    down.push(f);
                }
            }
        }
        let mut up = vec![id];
        while let Some(x) = up.pop() {
            for &c in space.cofacets(x) {
                if seen.insert(c) {
                    up.push(c);
                }
            }
        }
        row.extend(seen);
        row.sort_unstable();
    }
    out
}

/// Minima straight from the definition: a component of `[F <= k]` (two
/// simplices touch when one contains the other) missing `[F <= k-1]`.
/// Sorted by smallest id.
pub fn oracle_minima(v: &ValuedComplex) -> Vec<BTreeSet<CellId>> {
    let space = v.space();
    let touch = incidence(space);
    let mut claimed = HashSet::new();
    let mut out = Vec::new();
    for start in 0..space.len() {
        if claimed.contains(&start) {
            continue;
        }
        let k = v.at(start);
        let mut comp = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        let mut lower = false;
        while let Some(x) = queue.pop_front() {
            for &y in &touch[x] {
                if v.at(y) <= k && comp.insert(y) {
                    lower |= v.at(y) < k;
                    queue.push_back(y);
                }
            }
        }
        if !lower {
            claimed.extend(comp.iter().copied());
            out.push(comp);
        }
    }
    out.sort();
    out
}

/// Checks the dual graph against pairwise intersections of d-simplices.
pub fn oracle_dual_graph(v: &ValuedComplex, dg: &DualGraph) -> OracleReport {
    let claim = "dual-graph";
    let space = v.space();
    let tops: Vec<CellId> = space.ids_of_dim(space.dim()).collect();
    let mut expected = HashMap::new();
    for (i, &a) in tops.iter().enumerate() {
        for &b in &tops[i + 1..] {
            let (sa, sb) = (space.simplex(a), space.simplex(b));
            let common: Vec<u32> = sa.vertices().iter().copied().filter(|x| sb.vertices().contains(x)).collect();
            if common.len() == space.dim() {
                let shared = Simplex::new(common).expect("sorted subset");
                let r = space.id(&shared).expect("faces of the space are in the space");
                expected.insert(r, ([a, b], v.at(r)));
            }
        }
    }
    if expected.len() != dg.edges().len() {
        return OracleReport::fail(
            claim,
            vec![format!("expected={}", expected.len()), format!("found={}", dg.edges().len())],
        );
    }
    for e in dg.edges() {
        let mut ends = e.ends;
        ends.sort_unstable();
        if expected.get(&e.ridge) != Some(&(ends, e.weight)) {
            return OracleReport::fail(claim, vec![show(space.simplex(e.ridge))]);
        }
    }
    OracleReport::pass(claim)
}

/// Small-graph bookkeeping for exhaustive enumeration: vertices are local
/// indices and vertex sets are bitmasks.
struct SmallGraph {
    n: usize,
    ends: Vec<(usize, usize)>,
}

impl SmallGraph {
    /// Component masks of the spanning subgraph with the chosen edges.
    fn components(&self, chosen: impl Iterator<Item = usize> + Clone) -> Vec<u32> {
        let mut label: Vec<usize> = (0..self.n).collect();
        loop {
            let mut changed = false;
            for e in chosen.clone() {
                let (a, b) = self.ends[e];
                let m = label[a].min(label[b]);
                if label[a] != m || label[b] != m {
                    label[a] = m;
                    label[b] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut masks: HashMap<usize, u32> = HashMap::new();
        for (i, &l) in label.iter().enumerate() {
            *masks.entry(l).or_default() |= 1 << i;
        }
        let mut out: Vec<u32> = masks.into_values().collect();
        out.sort_unstable();
        out
    }
}

/// Every minimum-weight spanning forest relative to `anchor`, by trying all
/// subsets of the non-anchor edges.
///
/// A candidate `B` contains the anchor, spans every vertex, has each
/// component holding exactly one anchor component, and loses that property
/// whenever a single non-anchor edge is removed. (If some extension `C ⊊ B`
/// on the same vertices existed, removing any edge of `B \ C` from `B` would
/// still leave an extension, so single removals suffice.)
pub fn oracle_msf(dg: &DualGraph, anchor: &Anchor) -> Result<Vec<RelativeForest>> {
    let verts: Vec<CellId> = dg.vertices().collect();
    if verts.len() > MSF_MAX_VERTICES {
        return Err(Error::TooLarge {
            size: verts.len(),
            limit: MSF_MAX_VERTICES,
        });
    }
    if anchor.vertices.is_empty() {
        return Err(Error::EmptyAnchor);
    }
    let local: HashMap<CellId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let all_edges: Vec<_> = dg.edges().to_vec();
    let graph = SmallGraph {
        n: verts.len(),
        ends: all_edges.iter().map(|e| (local[&e.ends[0]], local[&e.ends[1]])).collect(),
    };
    let anchor_idx: Vec<usize> = (0..all_edges.len())
        .filter(|&i| anchor.edges.contains(&all_edges[i].ridge))
        .collect();
    let free: Vec<usize> = (0..all_edges.len()).filter(|i| !anchor_idx.contains(i)).collect();
    if free.len() > MSF_MAX_EDGES {
        return Err(Error::TooLarge {
            size: free.len(),
            limit: MSF_MAX_EDGES,
        });
    }

    let anchor_mask: u32 = anchor.vertices.iter().map(|v| 1u32 << local[v]).fold(0, |a, b| a | b);
    let anchor_comps: Vec<u32> = graph
        .components(anchor_idx.iter().copied())
        .into_iter()
        .map(|m| m & anchor_mask)
        .filter(|&m| m != 0)
        .collect();
    let is_extension = |chosen: &[usize]| {
        graph
            .components(chosen.iter().copied())
            .iter()
            .all(|&comp| anchor_comps.iter().filter(|&&a| a & !comp == 0).count() == 1)
    };

    let mut best: Option<i64> = None;
    let mut winners: Vec<Vec<usize>> = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut chosen = anchor_idx.clone();
        chosen.extend(free.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &e)| e));
        if !is_extension(&chosen) {
            continue;
        }
        let minimal = (anchor_idx.len()..chosen.len()).all(|skip| {
            let rest: Vec<usize> = chosen
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &e)| e)
                .collect();
            !is_extension(&rest)
        });
        if !minimal {
            continue;
        }
        let weight: i64 = chosen.iter().map(|&e| all_edges[e].weight).sum();
        match best {
            Some(w) if weight > w => {}
            Some(w) if weight == w => winners.push(chosen),
            _ => {
                best = Some(weight);
                winners = vec![chosen];
            }
        }
    }
    Ok(winners
        .into_iter()
        .map(|chosen| {
            let edges = chosen.into_iter().map(|e| all_edges[e].ridge).collect();
            RelativeForest::new(edges, anchor.clone())
        })
        .collect())
}

/// Checks that the closure of the (d-1)-faces `x` is a watershed-cut of the
/// stack `v`, as three reports:
///
/// * `watershed-extension`: the complement of the closure is an extension
///   of the union of the minima;
/// * `watershed-minimality`: removing any single maximal face of the closure
///   breaks that;
/// * `watershed-paths`: from every face of the closure, descending d-paths
///   whose simplices and shared faces all avoid the closure reach two
///   distinct minima.
pub fn oracle_watershed(v: &ValuedComplex, x: &[Simplex]) -> Result<Vec<OracleReport>> {
    let space = v.space();
    let closure = naive_closure(space, x)?;
    let minima = oracle_minima(v);
    let in_minimum: HashMap<CellId, usize> = minima
        .iter()
        .enumerate()
        .flat_map(|(i, m)| m.iter().map(move |&s| (s, i)))
        .collect();
    let m_minus: HashSet<CellId> = in_minimum.keys().copied().collect();
    let complement = |cut: &HashSet<CellId>| -> HashSet<CellId> { (0..space.len()).filter(|s| !cut.contains(s)).collect() };

    let extension = OracleReport::from_result("watershed-extension", check_extension(space, &m_minus, &complement(&closure)));

    let maximal: BTreeSet<CellId> = closure
        .iter()
        .copied()
        .filter(|&s| space.cofacets(s).iter().all(|c| !closure.contains(c)))
        .collect();
    let redundant = maximal.iter().copied().find(|&y| {
        let mut smaller = closure.clone();
        smaller.remove(&y);
        check_extension(space, &m_minus, &complement(&smaller)).is_ok()
    });
    let minimality = match redundant {
        None => OracleReport::pass("watershed-minimality"),
        Some(y) => OracleReport::fail("watershed-minimality", vec![show(space.simplex(y))]),
    };

    let d = space.dim();
    let mut lonely = None;
    let mut ordered: Vec<CellId> = closure.iter().copied().collect();
    ordered.sort_unstable();
    for &face in &ordered {
        let starts: Vec<CellId> = space
            .ids_of_dim(d)
            .filter(|&t| space.simplex(face).is_face_of(space.simplex(t)) && v.at(t) <= v.at(face))
            .collect();
        let mut seen: HashSet<CellId> = starts.iter().copied().collect();
        let mut queue: VecDeque<CellId> = starts.into_iter().collect();
        let mut reached = BTreeSet::new();
        while let Some(a) = queue.pop_front() {
            if let Some(&m) = in_minimum.get(&a) {
                reached.insert(m);
            }
            for &r in space.facets(a) {
                if closure.contains(&r) {
                    continue;
                }
                for &b in space.cofacets(r) {
                    if v.at(b) <= v.at(a) && seen.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
        if reached.len() < 2 {
            lonely = Some((face, reached.len()));
            break;
        }
    }
    let paths = match lonely {
        None => OracleReport::pass("watershed-paths"),
        Some((face, n)) => OracleReport::fail("watershed-paths", vec![show(space.simplex(face)), format!("minima={n}")]),
    };

    Ok(vec![extension, minimality, paths])
}

/// A closed gradient path `σ_0, τ_0, σ_1, …, τ_{k-1}` (the closing `σ_0` is
/// not repeated), found by depth-first search over vector-to-vector steps.
/// Rotated to start at its smallest tail.
pub fn naive_closed_path(space: &Pseudomanifold, field: &GradientVectorField) -> Result<Option<Vec<Simplex>>> {
    if space.len() > CLOSED_PATH_MAX_SIMPLICES {
        return Err(Error::TooLarge {
            size: space.len(),
            limit: CLOSED_PATH_MAX_SIMPLICES,
        });
    }
    let head: HashMap<Simplex, Simplex> = field.iter().map(|v| (v.tail.clone(), v.head.clone())).collect();
    let mut tails: Vec<Simplex> = head.keys().cloned().collect();
    tails.sort();
    let next = |s: &Simplex| -> Vec<Simplex> {
        let mut out: Vec<Simplex> = head[s].facets().filter(|f| f != s && head.contains_key(f)).collect();
        out.sort();
        out
    };

    // 0 = unvisited, 1 = on the stack, 2 = finished
    let mut color: HashMap<Simplex, u8> = HashMap::new();
    for root in &tails {
        if color.get(root).copied().unwrap_or(0) != 0 {
            continue;
        }
        let mut stack: Vec<(Simplex, Vec<Simplex>)> = vec![(root.clone(), next(root))];
        color.insert(root.clone(), 1);
        while let Some((_, pending)) = stack.last_mut() {
            match pending.pop() {
                None => {
                    let (done, _) = stack.pop().expect("nonempty");
                    color.insert(done, 2);
                }
                Some(w) => match color.get(&w).copied().unwrap_or(0) {
                    0 => {
                        color.insert(w.clone(), 1);
                        let succ = next(&w);
                        stack.push((w, succ));
                    }
                    1 => {
                        let from = stack.iter().position(|(s, _)| *s == w).expect("on the stack");
                        let cycle: Vec<Simplex> = stack[from..].iter().map(|(s, _)| s.clone()).collect();
                        let low = (0..cycle.len()).min_by_key(|&i| &cycle[i]).expect("nonempty cycle");
                        let mut path = Vec::with_capacity(2 * cycle.len());
                        for i in 0..cycle.len() {
                            let s = &cycle[(low + i) % cycle.len()];
                            path.push(s.clone());
                            path.push(head[s].clone());
                        }
                        return Ok(Some(path));
                    }
                    _ => {}
                },
            }
        }
    }
    Ok(None)
}

/// `no-closed-path` passes when the field has no closed gradient path; a
/// failure lists one.
pub fn oracle_closed_paths(space: &Pseudomanifold, field: &GradientVectorField) -> Result<OracleReport> {
    Ok(match naive_closed_path(space, field)? {
        None => OracleReport::pass("no-closed-path"),
        Some(path) => {
            let mut w = vec![format!("length={}", path.len())];
            w.extend(path.iter().map(show));
            OracleReport::fail("no-closed-path", w)
        }
    })
}

/// The complement of `y` must be an extension of the complement of `x`.
pub fn oracle_extension_after_collapse(space: &Pseudomanifold, x: &Complex, y: &Complex) -> Result<OracleReport> {
    let outside = |c: &Complex| -> Result<HashSet<CellId>> {
        let inside: HashSet<CellId> = c.simplices().iter().map(|s| space.require(s)).collect::<Result<_>>()?;
        Ok((0..space.len()).filter(|s| !inside.contains(s)).collect())
    };
    let (cx, cy) = (outside(x)?, outside(y)?);
    Ok(OracleReport::from_result("extension-after-collapse", check_extension(space, &cx, &cy)))
}

/// Every claim that applies to one basic stack, each id prefixed with
/// `label:`. Exhaustive checks above their size gates are left out.
pub fn oracle_suite(label: &str, v: &ValuedComplex) -> Result<Vec<OracleReport>> {
    use crate::dual::{compare_forests, minima_dual_subgraph, watershed, Strategy};
    use crate::morse::{basify, dmf_gradient, divide, is_basic_dmf, minima, stack_gradient};

    let tag = |claim: &str| format!("{label}:{claim}");
    let space = v.space();
    let mut out = Vec::new();

    out.push(if is_basic_dmf(&v.negate()) {
        OracleReport::pass(tag("negation-is-basic-dmf"))
    } else {
        OracleReport::fail(tag("negation-is-basic-dmf"), vec!["-F".into()])
    });

    let by_gvf = watershed(v, Strategy::ViaGvf)?;
    let by_kruskal = watershed(v, Strategy::ViaKruskal)?;

    let naive = oracle_minima(v);
    let produced: Vec<BTreeSet<CellId>> = minima(v)
        .components
        .iter()
        .map(|m| m.simplices.iter().map(|s| space.require(s)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let single = naive.iter().all(|m| m.len() == 1 && space.simplex(*m.first().expect("nonempty")).dim() == space.dim());
    out.push(if naive == produced && single && by_gvf.anchor.edges.is_empty() {
        OracleReport::pass(tag("minima-are-single-d-simplices"))
    } else {
        OracleReport::fail(tag("minima-are-single-d-simplices"), vec![format!("oracle={}", naive.len()), format!("production={}", produced.len())])
    });

    let mut r = oracle_dual_graph(v, &by_gvf.dual);
    r.claim = tag(&r.claim);
    out.push(r);

    let diff = compare_forests(&by_gvf.forest, &by_kruskal.forest);
    out.push(if diff.is_empty() {
        OracleReport::pass(tag("forest-equals-msf"))
    } else {
        let w = diff.only_in_first.iter().chain(&diff.only_in_second).map(|&e| show(space.simplex(e))).collect();
        OracleReport::fail(tag("forest-equals-msf"), w)
    });

    if by_gvf.dual.vertex_count() <= MSF_MAX_VERTICES {
        let anchor = minima_dual_subgraph(v, &by_gvf.dual)?;
        let all = oracle_msf(&by_gvf.dual, &anchor)?;
        out.push(if all.len() == 1 && all[0].edges() == by_gvf.forest.edges() {
            OracleReport::pass(tag("msf-unique-and-equal"))
        } else {
            OracleReport::fail(tag("msf-unique-and-equal"), vec![format!("minimum-forests={}", all.len())])
        });
    }

    for mut r in oracle_watershed(v, &by_gvf.cut.cut_faces)? {
        r.claim = tag(&r.claim);
        out.push(r);
    }

    let grad = stack_gradient(v)?;
    if space.len() <= CLOSED_PATH_MAX_SIMPLICES {
        let mut r = oracle_closed_paths(space, &grad)?;
        r.claim = tag(&r.claim);
        out.push(r);
    }

    let round_trip = basify(space, &grad).and_then(|b| Ok(is_basic_dmf(&b) && dmf_gradient(&b)? == grad));
    out.push(match round_trip {
        Ok(true) => OracleReport::pass(tag("basify-round-trip")),
        Ok(false) => OracleReport::fail(tag("basify-round-trip"), vec!["gradient-changed".into()]),
        Err(e) => OracleReport::fail(tag("basify-round-trip"), vec![e.to_string().replace(' ', "_")]),
    });

    let x = divide(v)?;
    let y = x.ultimate_d_collapse(space.dim());
    let mut r = oracle_extension_after_collapse(space, &x, &y)?;
    r.claim = tag(&r.claim);
    out.push(r);

    Ok(out)
}
