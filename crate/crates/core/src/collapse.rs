//! Replaying a discrete Morse function as an explicit construction order.
//!
//! Orbits are visited in increasing order of an orbit-injective perturbation
//! of the function. A critical orbit is *attached* along its (already
//! present) boundary; a non-critical orbit arrives as a *collapse*, pairing
//! it with its unique inverted permissible face, which at that moment is a
//! free face of the current state. The resulting event list certifies how
//! the complex is assembled from the critical orbits alone; a complex whose
//! trace contains a single dimension-zero attachment collapses to a point.

use crate::complex::{OrbitId, SymmetricDeltaComplex};
use crate::matching::{matching_to_dmf, Matching, MatchingError, OrbitHasse};
use crate::morse::{perturb_orbit_injective, validate_dmf, DiscreteMorseFunction, DmfViolation};
use crate::perm::Perm;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Isomorphism-invariant summary of a finite permutation group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    /// Sorted multiset of element orders.
    pub element_orders: Vec<usize>,
    /// Whether the group contains an odd permutation.
    pub contains_odd: bool,
}

pub fn group_fingerprint(perms: &[Perm]) -> GroupFingerprint {
    let abelian = perms
        .iter()
        .all(|a| perms.iter().all(|b| a.compose(b) == b.compose(a)));
    let mut element_orders: Vec<usize> = perms.iter().map(|p| p.order()).collect();
    element_orders.sort_unstable();
    GroupFingerprint {
        order: perms.len(),
        abelian,
        element_orders,
        contains_odd: perms.iter().any(|p| p.is_odd()),
    }
}

/// One step of the replay, identified by canonical representative names.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum CollapseEvent {
    /// A critical orbit glued in along its boundary.
    Attach {
        orbit: String,
        dim: usize,
        group: GroupFingerprint,
    },
    /// A free face cancelled against its unique inverted cover.
    Collapse { lower: String, upper: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseTrace {
    pub events: Vec<CollapseEvent>,
}

impl CollapseTrace {
    /// The critical cells in attachment order.
    pub fn attachments(&self) -> Vec<(usize, &GroupFingerprint)> {
        self.events
            .iter()
            .filter_map(|e| match e {
                CollapseEvent::Attach { dim, group, .. } => Some((*dim, group)),
                CollapseEvent::Collapse { .. } => None,
            })
            .collect()
    }

    /// The cancelled pairs in replay order.
    pub fn collapses(&self) -> Vec<(&str, &str)> {
        self.events
            .iter()
            .filter_map(|e| match e {
                CollapseEvent::Collapse { lower, upper } => Some((lower.as_str(), upper.as_str())),
                CollapseEvent::Attach { .. } => None,
            })
            .collect()
    }
}

/// The cell structure the trace builds: one cell per attachment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseModel {
    pub cells: Vec<(usize, GroupFingerprint)>,
}

impl MorseModel {
    pub fn from_trace(trace: &CollapseTrace) -> Self {
        Self {
            cells: trace
                .attachments()
                .into_iter()
                .map(|(d, g)| (d, g.clone()))
                .collect(),
        }
    }

    /// Number of cells in each dimension, indexed by dimension.
    pub fn cell_counts(&self) -> Vec<usize> {
        let max = self.cells.iter().map(|&(d, _)| d).max().unwrap_or(0);
        let mut counts = vec![0; max + 1];
        for &(d, _) in &self.cells {
            counts[d] += 1;
        }
        counts
    }
}

#[derive(Debug, Error)]
pub enum CollapseError {
    #[error("the function is not a discrete Morse function: {0:?}")]
    InvalidFunction(Vec<DmfViolation>),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(CollapseError::Internal(format!($($msg)*)));
        }
    };
}

/// Replay a valid discrete Morse function into a collapse trace.
pub fn collapse_by_dmf(
    x: &SymmetricDeltaComplex,
    f: &DiscreteMorseFunction,
) -> Result<CollapseTrace, CollapseError> {
    let base = validate_dmf(x, f)?;
    if !base.is_valid() {
        return Err(CollapseError::InvalidFunction(base.violations));
    }
    let fp = perturb_orbit_injective(x, f);
    let report = validate_dmf(x, &fp)?;
    ensure!(
        report.is_valid() && report.inversions == base.inversions,
        "perturbation changed the inversion structure"
    );

    let mut order = x.all_orbits();
    order.sort_by_key(|&o| fp.value(o).clone());

    let mut faces_of: BTreeMap<OrbitId, BTreeSet<OrbitId>> = BTreeMap::new();
    let mut covers_of: BTreeMap<OrbitId, BTreeSet<OrbitId>> = BTreeMap::new();
    for (lo, up) in x.cover_orbit_pairs() {
        faces_of.entry(up).or_default().insert(lo);
        covers_of.entry(lo).or_default().insert(up);
    }
    let down_partner: BTreeMap<OrbitId, OrbitId> =
        report.inversions.iter().map(|&(lo, up)| (up, lo)).collect();

    let mut added: BTreeSet<OrbitId> = BTreeSet::new();
    let mut events = Vec::new();
    for sigma in order {
        let (u, d) = report.counts[&sigma];
        if added.contains(&sigma) {
            ensure!(
                u == 1,
                "orbit `{}` present before its turn without an inverted cover",
                x.orbit_rep_name(sigma)
            );
            continue;
        }
        ensure!(
            u == 0,
            "orbit `{}` has an inverted cover but was not added with it",
            x.orbit_rep_name(sigma)
        );
        let boundary = faces_of.get(&sigma).cloned().unwrap_or_default();
        if d == 0 {
            ensure!(
                boundary.iter().all(|b| added.contains(b)),
                "attaching `{}` before its boundary is present",
                x.orbit_rep_name(sigma)
            );
            let group = group_fingerprint(&x.automorphisms(x.orbit_rep(sigma))?);
            events.push(CollapseEvent::Attach {
                orbit: x.orbit_rep_name(sigma).to_string(),
                dim: sigma.dim,
                group,
            });
            added.insert(sigma);
        } else {
            ensure!(
                d == 1,
                "orbit `{}` has {} inverted faces",
                x.orbit_rep_name(sigma),
                d
            );
            let alpha = *down_partner.get(&sigma).ok_or_else(|| {
                CollapseError::Internal(format!(
                    "no partner recorded for `{}`",
                    x.orbit_rep_name(sigma)
                ))
            })?;
            ensure!(
                !added.contains(&alpha),
                "free face `{}` already present",
                x.orbit_rep_name(alpha)
            );
            ensure!(
                boundary.iter().all(|b| *b == alpha || added.contains(b)),
                "collapsing `{}` before the rest of its boundary is present",
                x.orbit_rep_name(sigma)
            );
            ensure!(
                covers_of
                    .get(&alpha)
                    .is_none_or(|cs| cs.iter().all(|c| !added.contains(c))),
                "`{}` is not a free face of the current state",
                x.orbit_rep_name(alpha)
            );
            events.push(CollapseEvent::Collapse {
                lower: x.orbit_rep_name(alpha).to_string(),
                upper: x.orbit_rep_name(sigma).to_string(),
            });
            added.insert(alpha);
            added.insert(sigma);
        }
    }
    ensure!(
        added.len() == x.all_orbits().len(),
        "replay finished without adding every orbit"
    );
    Ok(CollapseTrace { events })
}

/// Replay a valid matching by converting it to its canonical function first.
pub fn collapse_by_matching(
    x: &SymmetricDeltaComplex,
    hasse: &OrbitHasse,
    m: &Matching,
) -> Result<CollapseTrace, CollapseError> {
    let f = matching_to_dmf(x, hasse, m)?;
    collapse_by_dmf(x, &f)
}

/// Whether the trace witnesses collapsibility to a single point: exactly one
/// attachment, of dimension zero.
pub fn trace_certifies_point(trace: &CollapseTrace) -> bool {
    let att = trace.attachments();
    att.len() == 1 && att[0].0 == 0
}

/// Run the replay for `m` and report whether it certifies collapsibility to
/// a point.
pub fn certify_contractible_by_collapse(
    x: &SymmetricDeltaComplex,
    hasse: &OrbitHasse,
    m: &Matching,
) -> Result<bool, CollapseError> {
    Ok(trace_certifies_point(&collapse_by_matching(x, hasse, m)?))
}
