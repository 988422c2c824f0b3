//! Discrete Morse functions on orbit posets.
//!
//! A function assigns one exact rational value to every simplex orbit. It is
//! a *discrete Morse function* when
//!
//! 1. values strictly increase along every non-permissible cover pair, and
//! 2. every orbit has at most one permissible cover with a value that fails
//!    to increase (`up_count ≤ 1`), and at most one permissible face whose
//!    value fails to decrease (`down_count ≤ 1`).
//!
//! Orbits with `up_count = down_count = 0` are *critical*; the remaining
//! inversions pair orbits off for cancellation by the collapse engine.

use crate::complex::{ComplexError, OrbitId, SymmetricDeltaComplex};
use crate::permissibility::PermissibilityCache;
use num::BigRational;
use std::cmp::Reverse;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorseError {
    #[error("`{0}` is not a canonical orbit representative of this complex")]
    NotACanonicalRep(String),
    #[error("no value given for orbit `{0}`")]
    MissingOrbit(String),
}

/// An orbit-constant rational-valued function, stored per orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMorseFunction {
    values: Vec<Vec<BigRational>>,
}

impl DiscreteMorseFunction {
    /// The zero function on every orbit.
    pub fn constant_zero(x: &SymmetricDeltaComplex) -> Self {
        let values = (0..=x.max_dim())
            .map(|d| vec![BigRational::default(); x.orbit_count(d)])
            .collect();
        Self { values }
    }

    /// Build from a map keyed by canonical representative names. The key set
    /// must be exactly the canonical representatives: unknown or non-canonical
    /// names and missing orbits are rejected.
    pub fn from_named(
        x: &SymmetricDeltaComplex,
        named: &BTreeMap<String, BigRational>,
    ) -> Result<Self, MorseError> {
        for key in named.keys() {
            let ok = x
                .orbit_by_name(key)
                .is_some_and(|o| x.orbit_rep_name(o) == key);
            if !ok {
                return Err(MorseError::NotACanonicalRep(key.clone()));
            }
        }
        let mut f = Self::constant_zero(x);
        for o in x.all_orbits() {
            let rep = x.orbit_rep_name(o);
            let v = named
                .get(rep)
                .ok_or_else(|| MorseError::MissingOrbit(rep.to_string()))?;
            f.values[o.dim][o.idx] = v.clone();
        }
        Ok(f)
    }

    pub fn value(&self, o: OrbitId) -> &BigRational {
        &self.values[o.dim][o.idx]
    }

    pub fn set(&mut self, o: OrbitId, v: BigRational) {
        self.values[o.dim][o.idx] = v;
    }

    /// Canonical-representative-keyed view of the function.
    pub fn to_named(&self, x: &SymmetricDeltaComplex) -> BTreeMap<String, BigRational> {
        x.all_orbits()
            .into_iter()
            .map(|o| (x.orbit_rep_name(o).to_string(), self.value(o).clone()))
            .collect()
    }

    /// Sorted distinct values taken by the function.
    pub fn distinct_values(&self) -> Vec<BigRational> {
        let mut vals: Vec<BigRational> = self.values.iter().flatten().cloned().collect();
        vals.sort();
        vals.dedup();
        vals
    }
}

/// A condition the function fails, reported by representative name.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum DmfViolation {
    /// A non-permissible cover pair along which the value does not strictly
    /// increase.
    NonIncreasingCover { lower: String, upper: String },
    /// An orbit with two or more permissible covers whose values fail to
    /// increase.
    UpCountExceeded { orbit: String, count: usize },
    /// An orbit with two or more permissible faces whose values fail to
    /// decrease.
    DownCountExceeded { orbit: String, count: usize },
}

/// Outcome of checking a function against the Morse conditions.
#[derive(Debug, Clone)]
pub struct DmfReport {
    /// Per-orbit `(up_count, down_count)` over permissible pairs.
    pub counts: BTreeMap<OrbitId, (usize, usize)>,
    /// Permissible cover pairs `(lower, upper)` with `f(upper) ≤ f(lower)`.
    pub inversions: Vec<(OrbitId, OrbitId)>,
    pub violations: Vec<DmfViolation>,
    /// Orbits with no inversion in either direction.
    pub critical: Vec<OrbitId>,
}

impl DmfReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the Morse conditions for `f` on `x`.
pub fn validate_dmf(
    x: &SymmetricDeltaComplex,
    f: &DiscreteMorseFunction,
) -> Result<DmfReport, ComplexError> {
    let cache = PermissibilityCache::new();
    let mut counts: BTreeMap<OrbitId, (usize, usize)> =
        x.all_orbits().into_iter().map(|o| (o, (0, 0))).collect();
    let mut inversions = Vec::new();
    let mut violations = Vec::new();
    for (lo, up) in x.cover_orbit_pairs() {
        let permissible = cache.orbit_permissible(x, lo, up)?;
        if permissible {
            if f.value(up) <= f.value(lo) {
                inversions.push((lo, up));
                counts.get_mut(&lo).unwrap().0 += 1;
                counts.get_mut(&up).unwrap().1 += 1;
            }
        } else if f.value(lo) >= f.value(up) {
            violations.push(DmfViolation::NonIncreasingCover {
                lower: x.orbit_rep_name(lo).to_string(),
                upper: x.orbit_rep_name(up).to_string(),
            });
        }
    }
    for (&o, &(u, d)) in &counts {
        if u > 1 {
            violations.push(DmfViolation::UpCountExceeded {
                orbit: x.orbit_rep_name(o).to_string(),
                count: u,
            });
        }
        if d > 1 {
            violations.push(DmfViolation::DownCountExceeded {
                orbit: x.orbit_rep_name(o).to_string(),
                count: d,
            });
        }
    }
    let critical = counts
        .iter()
        .filter(|(_, &(u, d))| u == 0 && d == 0)
        .map(|(&o, _)| o)
        .collect();
    Ok(DmfReport {
        counts,
        inversions,
        violations,
        critical,
    })
}

/// Critical orbits of a function (valid or not): those with no inversions.
pub fn critical_orbits(
    x: &SymmetricDeltaComplex,
    f: &DiscreteMorseFunction,
) -> Result<Vec<OrbitId>, ComplexError> {
    Ok(validate_dmf(x, f)?.critical)
}

/// The subcomplex generated by all simplices whose orbit value is at most
/// `cutoff`.
pub fn level_subcomplex(
    x: &SymmetricDeltaComplex,
    f: &DiscreteMorseFunction,
    cutoff: &BigRational,
) -> SymmetricDeltaComplex {
    let mut seeds = Vec::new();
    for d in 0..=x.max_dim() {
        for s in x.simplices_at(d) {
            if f.value(x.orbit_of(s)) <= cutoff {
                seeds.push(s);
            }
        }
    }
    x.subcomplex_generated(&seeds)
}

/// Replace `f` by an orbit-injective function with the same inversions and
/// the same critical orbits.
///
/// Orbits are ranked by value, then by *descending* dimension, then by
/// representative name, and assigned their rank as the new value. Ties
/// between a face and a cover therefore give the cover the smaller rank,
/// which keeps `f(upper) ≤ f(lower)` holding exactly where it held before.
pub fn perturb_orbit_injective(
    x: &SymmetricDeltaComplex,
    f: &DiscreteMorseFunction,
) -> DiscreteMorseFunction {
    let mut order: Vec<OrbitId> = x.all_orbits();
    order.sort_by_key(|&o| {
        (
            f.value(o).clone(),
            Reverse(o.dim),
            x.orbit_rep_name(o).to_string(),
        )
    });
    let mut out = DiscreteMorseFunction::constant_zero(x);
    for (rank, &o) in order.iter().enumerate() {
        out.set(o, BigRational::from_integer(rank.into()));
    }
    out
}
