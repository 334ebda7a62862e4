//! The acceptance suite: eleven criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p morsecut-core --test acceptance -- --nocapture`
//! to see the lines.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use morsecut::complex::{closure, Complex};
use morsecut::dual::{
    compare_forests, dual_graph, induced_forest, minima_dual_subgraph, msf_kruskal_relative, watershed, Strategy,
};
use morsecut::format::{parse, serialize};
use morsecut::generate::{corpus, cycle, generate, torus_grid, GeneratorKind, GeneratorSpec};
use morsecut::morse::{
    basify, dmf_gradient, enumerate_gradient_paths, find_closed_path, forman_equivalent, has_closed_path,
    is_basic_dmf, is_basic_stack, minima, stack_gradient, GradientVectorField, Vector,
};
use morsecut::oracles::{
    naive_closed_path, oracle_extension_after_collapse, oracle_minima, oracle_msf, oracle_watershed,
    MSF_MAX_VERTICES,
};
use morsecut::{simplex, Simplex, ValuedComplex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// 28 seeds of every corpus kind: 504 basic stacks.
fn stacks() -> Vec<(GeneratorSpec, ValuedComplex)> {
    corpus(28, 0)
        .into_iter()
        .map(|spec| (spec, generate(&spec).expect("corpus kinds are in range")))
        .collect()
}

fn c1_main_theorem(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    let t = Instant::now();
    for (spec, v) in corpus {
        let dg = dual_graph(v);
        let anchor = minima_dual_subgraph(v, &dg).map_err(err)?;
        let via_gvf = induced_forest(&dg, &stack_gradient(v).map_err(err)?, &anchor).map_err(err)?;
        let via_kruskal = msf_kruskal_relative(&dg, &anchor).map_err(err)?;
        let diff = compare_forests(&via_gvf, &via_kruskal);
        ensure(diff.is_empty(), || format!("{} seed {}: {diff:?}", spec.kind, spec.seed))?;
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} stacks, zero symmetric difference, {secs:.2}s", corpus.len()))
}

fn c2_oracle_msf(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    let mut checked = 0;
    for (spec, v) in corpus {
        let dg = dual_graph(v);
        if dg.vertex_count() > MSF_MAX_VERTICES {
            continue;
        }
        let anchor = minima_dual_subgraph(v, &dg).map_err(err)?;
        let all = oracle_msf(&dg, &anchor).map_err(err)?;
        ensure(all.len() == 1, || format!("{} seed {}: {} minimum forests", spec.kind, spec.seed, all.len()))?;
        for strategy in [Strategy::ViaGvf, Strategy::ViaKruskal] {
            let w = watershed(v, strategy).map_err(err)?;
            ensure(w.forest.edges() == all[0].edges(), || {
                format!("{} seed {}: {strategy} differs from the oracle", spec.kind, spec.seed)
            })?;
        }
        checked += 1;
    }
    ensure(checked > 0, || "no instance in the exhaustive regime".into())?;
    Ok(format!("{checked} instances with at most {MSF_MAX_VERTICES} dual vertices"))
}

fn c3_watershed_definition(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    for (spec, v) in corpus {
        let w = watershed(v, Strategy::ViaGvf).map_err(err)?;
        for report in oracle_watershed(v, &w.cut.cut_faces).map_err(err)? {
            ensure(report.pass, || format!("{} seed {}: {report}", spec.kind, spec.seed))?;
        }
    }
    Ok(format!("{} watershed complexes pass extension, minimality and paths", corpus.len()))
}

/// A map that is no longer a basic stack (nor is its negation a basic DMF).
fn corrupt(v: &ValuedComplex, rng: &mut ChaCha8Rng) -> ValuedComplex {
    let space = v.space().clone();
    let d = space.dim();
    let mut values = v.values().to_vec();
    match rng.gen_range(0..3) {
        0 => {
            // a top simplex above one of its facets
            let top = rng.gen_range(space.ids_of_dim(d));
            let facet = space.facets(top)[0];
            values[top] = values[facet] + 1;
        }
        1 => {
            // three simplices sharing one value
            let ids: Vec<_> = (0..space.len()).collect();
            let picks: Vec<_> = ids.choose_multiple(rng, 3).copied().collect();
            for &p in &picks[1..] {
                values[p] = values[picks[0]];
            }
        }
        _ => {
            // equal values on two incomparable simplices
            let tops: Vec<_> = space.ids_of_dim(d).collect();
            let pair: Vec<_> = tops.choose_multiple(rng, 2).copied().collect();
            values[pair[1]] = values[pair[0]];
        }
    }
    ValuedComplex::new(space, values).expect("same length")
}

fn c4_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let kinds = [
        GeneratorKind::Cycle(6),
        GeneratorKind::SimplexBoundary(3),
        GeneratorKind::SimplexBoundary(4),
        GeneratorKind::TorusGrid(4),
    ];
    let mut flipped = 0;
    let mut agreed = 0;
    for i in 0..200u64 {
        let kind = kinds[i as usize % kinds.len()];
        let v = generate(&GeneratorSpec { kind, seed: 1000 + i }).map_err(err)?;
        let (sample, must_flip) = match i % 4 {
            0 => (corrupt(&v, &mut rng), true),
            1 => {
                let values = (0..v.space().len()).map(|_| rng.gen_range(-5..5)).collect();
                (ValuedComplex::new(v.space().clone(), values).map_err(err)?, false)
            }
            _ => (v.clone(), false),
        };
        let a = is_basic_stack(&sample);
        let b = is_basic_dmf(&sample.negate());
        ensure(a == b, || format!("sample {i}: stack={a} dmf={b}"))?;
        agreed += 1;
        if must_flip {
            ensure(is_basic_stack(&v) && is_basic_dmf(&v.negate()), || format!("sample {i}: source not basic"))?;
            ensure(!a && !b, || format!("sample {i}: corruption did not flip the verdicts"))?;
            flipped += 1;
        }
    }
    Ok(format!("{agreed} maps agree, {flipped} corruptions flip both verdicts"))
}

fn planted_loop() -> GradientVectorField {
    let v = |t: &[u32], h: &[u32]| Vector::new(simplex(t), simplex(h));
    GradientVectorField::new([v(&[1], &[1, 2]), v(&[2], &[2, 3]), v(&[3], &[3, 4]), v(&[4], &[1, 4])])
        .expect("a matching")
}

fn random_matching(space: &morsecut::Pseudomanifold, rng: &mut ChaCha8Rng) -> GradientVectorField {
    let mut pairs: Vec<(usize, usize)> = (0..space.len())
        .flat_map(|t| space.facets(t).iter().map(move |&s| (s, t)))
        .collect();
    pairs.shuffle(rng);
    let mut used = HashSet::new();
    let mut vectors = Vec::new();
    for (s, t) in pairs {
        if rng.gen_bool(0.6) && !used.contains(&s) && !used.contains(&t) {
            used.insert(s);
            used.insert(t);
            vectors.push(Vector::new(space.simplex(s).clone(), space.simplex(t).clone()));
        }
    }
    GradientVectorField::new(vectors).expect("a matching")
}

fn c5_acyclicity(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    for (spec, v) in corpus {
        let g = stack_gradient(v).map_err(err)?;
        ensure(!has_closed_path(&g), || format!("{} seed {}: closed path", spec.kind, spec.seed))?;
        let naive = naive_closed_path(v.space(), &g).map_err(err)?;
        ensure(naive.is_none(), || format!("{} seed {}: oracle found {naive:?}", spec.kind, spec.seed))?;
    }
    let square = cycle(4).map_err(err)?;
    let field = planted_loop();
    let found = find_closed_path(&field).ok_or("planted loop missed")?;
    let naive = naive_closed_path(&square, &field).map_err(err)?.ok_or("oracle missed the planted loop")?;
    ensure(found.len() == 8 && naive.len() == 8, || format!("witness lengths {} and {}", found.len(), naive.len()))?;
    ensure(found == naive, || format!("witnesses differ: {found:?} vs {naive:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spaces = [cycle(5).map_err(err)?, torus_grid(3).map_err(err)?, morsecut::generate::simplex_boundary(3).map_err(err)?];
    let mut cyclic = 0;
    for i in 0..500 {
        let space = &spaces[i % spaces.len()];
        let field = random_matching(space, &mut rng);
        let fast = has_closed_path(&field);
        let slow = naive_closed_path(space, &field).map_err(err)?.is_some();
        ensure(fast == slow, || format!("random matching {i}: production {fast}, oracle {slow}"))?;
        cyclic += usize::from(fast);
    }
    Ok(format!(
        "{} gradients acyclic, planted loop witness length 8, 500 random matchings agree ({cyclic} cyclic)",
        corpus.len()
    ))
}

/// A strictly increasing relabelling of the values of `v`.
fn rescale(v: &ValuedComplex, rng: &mut ChaCha8Rng) -> ValuedComplex {
    let distinct: BTreeSet<i64> = v.values().iter().copied().collect();
    let mut next = rng.gen_range(-50..50);
    let map: std::collections::HashMap<i64, i64> = distinct
        .into_iter()
        .map(|x| {
            next += rng.gen_range(1..10);
            (x, next)
        })
        .collect();
    v.map_values(|x| map[&x])
}

fn c6_forman(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sample: Vec<_> = corpus.choose_multiple(&mut rng, 100).collect();
    for (spec, v) in &sample {
        let f = v.negate();
        let g = rescale(&f, &mut rng);
        ensure(forman_equivalent(&f, &g).map_err(err)?, || format!("{} seed {}: rescaled not equivalent", spec.kind, spec.seed))?;
        ensure(dmf_gradient(&f).map_err(err)? == dmf_gradient(&g).map_err(err)?, || {
            format!("{} seed {}: rescaled gradient differs", spec.kind, spec.seed)
        })?;
    }
    let with_vectors: Vec<_> = corpus
        .iter()
        .filter(|(_, v)| stack_gradient(v).is_ok_and(|g| !g.is_empty()))
        .collect();
    let mut different = 0;
    for (spec, v) in with_vectors.choose_multiple(&mut rng, 100) {
        let f = v.negate();
        let grad = dmf_gradient(&f).map_err(err)?;
        let vectors: Vec<_> = grad.iter().cloned().collect();
        let drop = vectors.choose(&mut rng).expect("filtered to nonempty fields");
        let g = basify(f.space(), &grad.without(drop)).map_err(err)?;
        let equivalent = forman_equivalent(&f, &g).map_err(err)?;
        let same_gradient = dmf_gradient(&g).map_err(err)? == grad;
        ensure(!equivalent && !same_gradient, || {
            format!("{} seed {}: equivalent={equivalent} same_gradient={same_gradient}", spec.kind, spec.seed)
        })?;
        different += 1;
    }
    Ok(format!("100 rescaled pairs equivalent, {different} re-matched pairs distinguished"))
}

fn c7_basify(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    for (spec, v) in corpus {
        let grad = stack_gradient(v).map_err(err)?;
        let b = basify(v.space(), &grad).map_err(err)?;
        ensure(is_basic_dmf(&b), || format!("{} seed {}: basify output not a basic DMF", spec.kind, spec.seed))?;
        ensure(dmf_gradient(&b).map_err(err)? == grad, || format!("{} seed {}: gradient changed", spec.kind, spec.seed))?;
    }
    Ok(format!("{} round trips", corpus.len()))
}

fn c8_thinness() -> Outcome {
    let space = torus_grid(6).map_err(err)?;
    let tops: Vec<Simplex> = space.ids_of_dim(2).map(|t| space.simplex(t).clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let k = rng.gen_range(1..tops.len());
        let chosen: Vec<&Simplex> = tops.choose_multiple(&mut rng, k).collect();
        let x = closure(chosen);
        ensure(x.dim() == 2, || format!("sample {i}: not 2-dimensional"))?;
        let (y, steps) = x.ultimate_d_collapse_with_steps(2);
        ensure(y.dim() == 1, || format!("sample {i}: {k} triangles collapse to dimension {}", y.dim()))?;
        let report = oracle_extension_after_collapse(&space, &x, &y).map_err(err)?;
        ensure(report.pass, || format!("sample {i}: {report}"))?;
        ensure(!steps.is_empty(), || format!("sample {i}: no steps"))?;
    }
    Ok("100 proper subcomplexes of torus_grid(6) reach dimension 1".into())
}

fn c9_minima(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    let mut total = 0;
    for (spec, v) in corpus {
        let d = v.space().dim();
        let prod = minima(v);
        let naive = oracle_minima(v);
        ensure(prod.components.len() == naive.len(), || format!("{} seed {}: minima count differs", spec.kind, spec.seed))?;
        for (m, ids) in prod.components.iter().zip(&naive) {
            let as_set: BTreeSet<_> = m.simplices.iter().map(|s| v.space().id(s).expect("in space")).collect();
            ensure(&as_set == ids, || format!("{} seed {}: minima differ", spec.kind, spec.seed))?;
            ensure(ids.len() == 1 && v.space().simplex(*ids.first().unwrap()).dim() == d, || {
                format!("{} seed {}: minimum {:?} is not one d-simplex", spec.kind, spec.seed, m.simplices)
            })?;
        }
        let anchor = minima_dual_subgraph(v, &dual_graph(v)).map_err(err)?;
        ensure(anchor.edges.is_empty(), || format!("{} seed {}: minima subgraph has edges", spec.kind, spec.seed))?;
        total += naive.len();
    }
    Ok(format!("{total} minima, all single d-simplices, no minima edges"))
}

fn c10_monotone_paths(corpus: &[(GeneratorSpec, ValuedComplex)]) -> Outcome {
    let mut paths = 0usize;
    for (spec, v) in corpus {
        let space = v.space();
        let grad = stack_gradient(v).map_err(err)?;
        for p in 0..space.dim() {
            let starts = space
                .ids_of_dim(p + 1)
                .filter(|&i| !grad.is_matched(space.simplex(i)))
                .chain(space.ids_of_dim(p).filter(|&i| grad.is_matched(space.simplex(i))));
            for s in starts {
                for path in enumerate_gradient_paths(space, &grad, space.simplex(s), p).map_err(err)? {
                    let vals: Vec<i64> = path.simplices().iter().map(|x| v.value(x).expect("in space")).collect();
                    ensure(vals.windows(2).all(|w| w[0] <= w[1]), || {
                        format!("{} seed {}: {:?} has altitudes {vals:?}", spec.kind, spec.seed, path.simplices())
                    })?;
                    paths += 1;
                }
            }
        }
    }
    Ok(format!("{paths} gradient paths, all non-decreasing"))
}

const S_STAR: &str = "pseudomanifold d=1
1 2 : 0
3 4 : 1
2 : 2
2 3 : 2
4 : 3
1 4 : 3
1 : 4
3 : 5
";

fn render(v: &ValuedComplex, strategy: Strategy) -> Result<String, String> {
    let w = watershed(v, strategy).map_err(err)?;
    let sp = v.space();
    let mut out = String::new();
    for &r in w.forest.edges() {
        let [a, b] = w.dual.edge(r).ends;
        out += &format!("FOREST-EDGE {} | {} : {}\n", sp.simplex(a), sp.simplex(b), w.dual.edge(r).weight);
    }
    for f in &w.cut.cut_faces {
        out += &format!("CUT-FACE {f}\n");
    }
    Ok(out)
}

fn c11_worked_example() -> Outcome {
    let v = parse(S_STAR).map_err(err)?;
    ensure(serialize(&parse(&serialize(&v)).map_err(err)?) == serialize(&v), || "round trip".into())?;
    let expected = "FOREST-EDGE 1 2 | 2 3 : 2\nFOREST-EDGE 1 4 | 3 4 : 3\nCUT-FACE 1\nCUT-FACE 3\n";
    let mut outputs = Vec::new();
    for _ in 0..3 {
        for strategy in [Strategy::ViaGvf, Strategy::ViaKruskal] {
            outputs.push(render(&parse(S_STAR).map_err(err)?, strategy)?);
        }
    }
    ensure(outputs.iter().all(|o| o == expected), || format!("outputs {outputs:?}"))?;
    let w = watershed(&v, Strategy::ViaGvf).map_err(err)?;
    let expected_complex = Complex::try_from_set([simplex(&[1]), simplex(&[3])].into_iter().collect()).map_err(err)?;
    ensure(w.cut.watershed == expected_complex, || "watershed complex".into())?;
    Ok("forest {e12,e23},{e34,e41}; cut {v1, v3}; 6 identical runs".into())
}

#[test]
fn acceptance() {
    let corpus = stacks();
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 main theorem", Box::new(|| c1_main_theorem(&corpus))),
        ("2 oracle MSF", Box::new(|| c2_oracle_msf(&corpus))),
        ("3 watershed definition", Box::new(|| c3_watershed_definition(&corpus))),
        ("4 duality", Box::new(c4_duality)),
        ("5 acyclicity", Box::new(|| c5_acyclicity(&corpus))),
        ("6 Forman equivalence", Box::new(|| c6_forman(&corpus))),
        ("7 basification", Box::new(|| c7_basify(&corpus))),
        ("8 thinness", Box::new(c8_thinness)),
        ("9 minima structure", Box::new(|| c9_minima(&corpus))),
        ("10 gradient monotonicity", Box::new(|| c10_monotone_paths(&corpus))),
        ("11 worked example", Box::new(c11_worked_example)),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("CRITERION {name}: PASS ({detail})"),
            Err(why) => {
                println!("CRITERION {name}: FAIL ({why})");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
