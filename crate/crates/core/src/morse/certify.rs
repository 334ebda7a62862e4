use std::collections::HashMap;
use std::fmt;

use super::valued::ValuedComplex;
use crate::complex::{CellId, Simplex};

/// Why a map fails to be basic (2-1 with equal values only along inclusions,
/// plus monotonicity in the right direction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicViolation {
    /// A facet pair going the wrong way for the certifier's direction.
    NotMonotone {
        face: Simplex,
        coface: Simplex,
        face_value: i64,
        coface_value: i64,
    },
    /// Three simplices share one value.
    NotTwoToOne { value: i64, simplices: [Simplex; 3] },
    /// Two simplices share a value without one containing the other.
    Unnested { value: i64, a: Simplex, b: Simplex },
}

impl fmt::Display for BasicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicViolation::NotMonotone {
                face,
                coface,
                face_value,
                coface_value,
            } => write!(
                f,
                "face [{face}] = {face_value} and coface [{coface}] = {coface_value} violate monotonicity"
            ),
            BasicViolation::NotTwoToOne { value, simplices } => write!(
                f,
                "value {value} taken by [{}], [{}] and [{}]",
                simplices[0], simplices[1], simplices[2]
            ),
            BasicViolation::Unnested { value, a, b } => {
                write!(f, "value {value} taken by non-nested [{a}] and [{b}]")
            }
        }
    }
}

/// A face with a smaller altitude than one of its cofaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackViolation {
    pub face: Simplex,
    pub coface: Simplex,
    pub face_value: i64,
    pub coface_value: i64,
}

impl fmt::Display for StackViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] is a face of [{}] but {} < {}",
            self.face, self.coface, self.face_value, self.coface_value
        )
    }
}

impl std::error::Error for StackViolation {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DmfSide {
    /// More than one facet with value >= the simplex.
    Facets,
    /// More than one cofacet with value <= the simplex.
    Cofacets,
}

/// A simplex at which one of the two discrete-Morse cardinality bounds fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmfViolation {
    pub simplex: Simplex,
    pub value: i64,
    pub side: DmfSide,
    pub offenders: Vec<Simplex>,
}

impl fmt::Display for DmfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let which = match self.side {
            DmfSide::Facets => "facets with value >=",
            DmfSide::Cofacets => "cofacets with value <=",
        };
        let list: Vec<String> = self.offenders.iter().map(|s| format!("[{s}]")).collect();
        write!(
            f,
            "[{}] = {} has {} {which} it: {}",
            self.simplex,
            self.value,
            self.offenders.len(),
            list.join(", ")
        )
    }
}

impl std::error::Error for DmfViolation {}

/// Successful stack certification. `not_basic` explains why it is not basic, if so.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackCertificate {
    pub not_basic: Option<BasicViolation>,
}

impl StackCertificate {
    pub fn is_basic(&self) -> bool {
        self.not_basic.is_none()
    }
}

/// Successful DMF certification. `not_basic` explains why it is not basic, if so.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmfCertificate {
    pub not_basic: Option<BasicViolation>,
}

impl DmfCertificate {
    pub fn is_basic(&self) -> bool {
        self.not_basic.is_none()
    }
}

/// Facet pairs `(facet, simplex)` in id order. Inclusion is the transitive
/// closure of this relation, so monotonicity checks only need these pairs.
fn facet_pairs(v: &ValuedComplex) -> impl Iterator<Item = (CellId, CellId)> + '_ {
    let space = v.space();
    (0..space.len()).flat_map(move |id| space.facets(id).iter().map(move |&f| (f, id)))
}

fn check_two_to_one(v: &ValuedComplex) -> Option<BasicViolation> {
    let space = v.space();
    let mut by_value: HashMap<i64, Vec<CellId>> = HashMap::new();
    for id in 0..space.len() {
        by_value.entry(v.at(id)).or_default().push(id);
    }
    let mut values: Vec<i64> = by_value.keys().copied().collect();
    values.sort_unstable();
    for value in values {
        let ids = &by_value[&value];
        let s = |i: usize| space.simplex(ids[i]).clone();
        match ids.len() {
            1 => {}
            2 => {
                if !s(0).is_comparable(&s(1)) {
                    return Some(BasicViolation::Unnested { value, a: s(0), b: s(1) });
                }
            }
            _ => {
                return Some(BasicViolation::NotTwoToOne {
                    value,
                    simplices: [s(0), s(1), s(2)],
                })
            }
        }
    }
    None
}

/// Certifies `σ ⊆ τ ⇒ F(σ) >= F(τ)` and decides basic-ness.
pub fn check_stack(v: &ValuedComplex) -> Result<StackCertificate, StackViolation> {
    let space = v.space();
    if let Some((f, c)) = facet_pairs(v).find(|&(f, c)| v.at(f) < v.at(c)) {
        return Err(StackViolation {
            face: space.simplex(f).clone(),
            coface: space.simplex(c).clone(),
            face_value: v.at(f),
            coface_value: v.at(c),
        });
    }
    Ok(StackCertificate {
        not_basic: check_two_to_one(v),
    })
}

/// Certifies the two discrete-Morse cardinality bounds at every simplex and
/// decides basic-ness (weakly increasing, 2-1, equal only along inclusions).
///
/// The second bound ranges over cofacets `τ^(p+1) ⊃ σ`.
pub fn check_dmf(v: &ValuedComplex) -> Result<DmfCertificate, DmfViolation> {
    let space = v.space();
    for id in 0..space.len() {
        let value = v.at(id);
        let sides = [
            (DmfSide::Facets, space.facets(id), true),
            (DmfSide::Cofacets, space.cofacets(id), false),
        ];
        for (side, neighbors, above) in sides {
            let offenders: Vec<Simplex> = neighbors
                .iter()
                .filter(|&&n| if above { v.at(n) >= value } else { v.at(n) <= value })
                .map(|&n| space.simplex(n).clone())
                .collect();
            if offenders.len() > 1 {
                return Err(DmfViolation {
                    simplex: space.simplex(id).clone(),
                    value,
                    side,
                    offenders,
                });
            }
        }
    }
    let not_monotone = facet_pairs(v)
        .find(|&(f, c)| v.at(f) > v.at(c))
        .map(|(f, c)| BasicViolation::NotMonotone {
            face: space.simplex(f).clone(),
            coface: space.simplex(c).clone(),
            face_value: v.at(f),
            coface_value: v.at(c),
        });
    Ok(DmfCertificate {
        not_basic: not_monotone.or_else(|| check_two_to_one(v)),
    })
}

pub fn is_basic_stack(v: &ValuedComplex) -> bool {
    check_stack(v).is_ok_and(|c| c.is_basic())
}

pub fn is_basic_dmf(v: &ValuedComplex) -> bool {
    check_dmf(v).is_ok_and(|c| c.is_basic())
}
