use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::complex::{CellId, Pseudomanifold, Simplex, SimplexSet};
use crate::error::{Error, Result};

/// An integer value on every simplex of a pseudomanifold.
///
/// Whether it is a stack (weakly decreasing along inclusion) or a discrete
/// Morse function (roughly increasing) is decided by the certifiers in
/// [`crate::morse`]; this type only guarantees totality.
#[derive(Clone)]
pub struct ValuedComplex {
    space: Arc<Pseudomanifold>,
    values: Vec<i64>,
}

impl ValuedComplex {
    /// `values` is indexed by [`CellId`].
    pub fn new(space: Arc<Pseudomanifold>, values: Vec<i64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Invariant(format!(
                "{} values for {} simplices",
                values.len(),
                space.len()
            )));
        }
        Ok(ValuedComplex { space, values })
    }

    pub fn from_fn(space: Arc<Pseudomanifold>, f: impl Fn(&Simplex) -> i64) -> Self {
        let values = space.simplices().iter().map(f).collect();
        ValuedComplex { space, values }
    }

    /// Fails on the first simplex of the space that has no entry in `map`.
    pub fn from_map(space: Arc<Pseudomanifold>, map: &HashMap<Simplex, i64>) -> Result<Self> {
        let values = space
            .simplices()
            .iter()
            .map(|s| map.get(s).copied().ok_or_else(|| Error::NotInSpace(s.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(ValuedComplex { space, values })
    }

    pub fn space(&self) -> &Arc<Pseudomanifold> {
        &self.space
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, id: CellId) -> i64 {
        self.values[id]
    }

    pub fn value(&self, s: &Simplex) -> Option<i64> {
        self.space.id(s).map(|i| self.values[i])
    }

    pub fn min_value(&self) -> Option<i64> {
        self.values.iter().copied().min()
    }

    pub fn max_value(&self) -> Option<i64> {
        self.values.iter().copied().max()
    }

    /// Pairs of `(simplex, value)` in simplex order.
    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.space.simplices().iter().zip(self.values.iter().copied())
    }

    pub fn map_values(&self, f: impl Fn(i64) -> i64) -> Self {
        ValuedComplex {
            space: self.space.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn negate(&self) -> Self {
        self.map_values(|v| -v)
    }

    /// `{σ | F(σ) >= k}`.
    pub fn k_section(&self, k: i64) -> SimplexSet {
        self.select(|v| v >= k)
    }

    /// `{σ | F(σ) <= k}`.
    pub fn lower_section(&self, k: i64) -> SimplexSet {
        self.select(|v| v <= k)
    }

    fn select(&self, keep: impl Fn(i64) -> bool) -> SimplexSet {
        self.entries()
            .filter(|&(_, v)| keep(v))
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// `F - 1_N`: subtracts one on every member of `n`.
    pub fn lowering(&self, n: &SimplexSet) -> Result<Self> {
        let mut values = self.values.clone();
        for s in n.iter() {
            values[self.space.require(s)?] -= 1;
        }
        Ok(ValuedComplex {
            space: self.space.clone(),
            values,
        })
    }

    pub(crate) fn values_mut(&mut self) -> &mut [i64] {
        &mut self.values
    }
}

impl PartialEq for ValuedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_space(&other.space) && self.values == other.values
    }
}

impl Eq for ValuedComplex {}

impl fmt::Debug for ValuedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries()).finish()
    }
}
