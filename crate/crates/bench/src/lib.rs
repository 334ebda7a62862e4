//! Benchmark fixtures.

use morsecut::generate::{generate, GeneratorKind, GeneratorSpec};
use morsecut::ValuedComplex;

/// Fixed seed shared by every fixture.
pub const SEED: u64 = 7;

/// Random basic stacks on tori of growing side, labelled by triangle count.
pub fn torus_fixtures(sides: &[usize]) -> Vec<(usize, ValuedComplex)> {
    sides
        .iter()
        .map(|&n| {
            let v = generate(&GeneratorSpec { kind: GeneratorKind::TorusGrid(n), seed: SEED }).expect("torus fixture");
            (2 * n * n, v)
        })
        .collect()
}

/// A random basic stack on a long cycle.
pub fn cycle_fixture(n: usize) -> ValuedComplex {
    generate(&GeneratorSpec { kind: GeneratorKind::Cycle(n), seed: SEED }).expect("cycle fixture")
}
