//! The permissibility test for codimension-one face pairs.
//!
//! A `p`-simplex `α` is a *permissible* face of a `(p+1)`-simplex `β` when
//! (1) every injection gluing `α` onto a face of `β` has the same image, and
//! (2) conjugation along one such gluing `ρ` carries the automorphism group
//! of `β` isomorphically onto the automorphism group of `α`. Pairs failing
//! the test cannot be cancelled against each other by a collapse, which is
//! why every downstream construction (Morse functions, matchings, the
//! collapse engine) consults this module.

use crate::complex::{ComplexError, OrbitId, Simplex, SymmetricDeltaComplex};
use crate::perm::{Injection, Perm};
use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;
use thiserror::Error;

/// Why a pair is not permissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum NonPermissibleReason {
    /// No injection glues the lower simplex onto a face of the upper one.
    NoFace,
    /// Gluing injections exist with at least two distinct images.
    ImagesDiffer,
    /// The conjugation map between automorphism groups is not a bijection.
    TransferNotBijective,
}

/// Verdict of the permissibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Verdict {
    Permissible,
    NotPermissible(NonPermissibleReason),
}

/// Full evidence for a permissibility verdict.
#[derive(Debug, Clone)]
pub struct PermissibilityCertificate {
    pub lower: Simplex,
    pub upper: Simplex,
    /// All gluing injections, lexicographically ordered by value sequence.
    pub gluings: Vec<Injection>,
    /// The image shared by every gluing, when condition (1) holds.
    pub common_image: Option<Vec<usize>>,
    /// Pairs `(π, f_ρ(π))` where `ρ` is the first gluing and
    /// `f_ρ(π) = ρ^{-1}|_{Im ρ} ∘ π ∘ ρ`; computed only once (1) holds.
    pub transfer: Vec<(Perm, Perm)>,
    pub verdict: Verdict,
}

impl PermissibilityCertificate {
    pub fn is_permissible(&self) -> bool {
        self.verdict == Verdict::Permissible
    }
}

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("expected dimensions q < p and p + 1: got {lower}, {mid}, {upper}")]
    BadDimensions {
        lower: usize,
        mid: usize,
        upper: usize,
    },
    #[error("`{child}` is not a face of `{parent}`")]
    NotAFace { child: String, parent: String },
    #[error("the middle/upper pair is not permissible, so no second parent is guaranteed")]
    PairNotPermissible,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// All injections `θ : [p] -> [p+1]` with `θ^*(upper) = lower`, in
/// lexicographic order of value sequences.
///
/// Requires `upper.dim == lower.dim + 1`.
pub fn gluing_injections(
    x: &SymmetricDeltaComplex,
    lower: Simplex,
    upper: Simplex,
) -> Vec<Injection> {
    assert_eq!(upper.dim, lower.dim + 1, "gluing requires codimension one");
    Injection::all(lower.dim + 1, upper.dim + 1)
        .into_iter()
        .filter(|inj| x.pullback(inj, upper) == lower)
        .collect()
}

/// Gluings at arbitrary codimension (used by the second-parent witness).
fn gluings_any_codim(x: &SymmetricDeltaComplex, lower: Simplex, upper: Simplex) -> Vec<Injection> {
    Injection::all(lower.dim + 1, upper.dim + 1)
        .into_iter()
        .filter(|inj| x.pullback(inj, upper) == lower)
        .collect()
}

/// Run the permissibility test on a codimension-one pair, returning the
/// full certificate. The verdict depends only on the orbit pair.
pub fn is_permissible(
    x: &SymmetricDeltaComplex,
    lower: Simplex,
    upper: Simplex,
) -> Result<PermissibilityCertificate, ComplexError> {
    let gluings = gluing_injections(x, lower, upper);
    if gluings.is_empty() {
        return Ok(PermissibilityCertificate {
            lower,
            upper,
            gluings,
            common_image: None,
            transfer: Vec::new(),
            verdict: Verdict::NotPermissible(NonPermissibleReason::NoFace),
        });
    }
    let image = gluings[0].image();
    if gluings.iter().any(|g| g.image() != image) {
        return Ok(PermissibilityCertificate {
            lower,
            upper,
            gluings,
            common_image: None,
            transfer: Vec::new(),
            verdict: Verdict::NotPermissible(NonPermissibleReason::ImagesDiffer),
        });
    }

    let rho = &gluings[0];
    // Position of each target value within the image, for ρ^{-1}|_{Im ρ}.
    let mut position_in_rho = HashMap::new();
    for (i, &v) in rho.values().iter().enumerate() {
        position_in_rho.insert(v, i);
    }
    let aut_upper = x.automorphisms(upper)?;
    let aut_lower = x.automorphisms(lower)?;
    let mut transfer = Vec::with_capacity(aut_upper.len());
    for pi in &aut_upper {
        // Under condition (1), π ∘ ρ is again a gluing, so π preserves Im ρ.
        assert!(
            image
                .iter()
                .all(|&v| image.binary_search(&pi.apply(v)).is_ok()),
            "automorphism does not preserve the common gluing image"
        );
        let images = rho
            .values()
            .iter()
            .map(|&v| position_in_rho[&pi.apply(v)])
            .collect();
        let f_pi = Perm::from_images(images).expect("conjugate of a bijection is a bijection");
        // By construction f_ρ(π) fixes the lower simplex.
        assert_eq!(
            x.apply_perm(&f_pi, lower),
            lower,
            "transferred automorphism does not fix the lower simplex"
        );
        transfer.push((pi.clone(), f_pi));
    }
    let transferred: BTreeSet<&Perm> = transfer.iter().map(|(_, f)| f).collect();
    let injective = transferred.len() == transfer.len();
    let surjective = aut_lower.iter().all(|a| transferred.contains(a));
    let verdict = if injective && surjective {
        Verdict::Permissible
    } else {
        Verdict::NotPermissible(NonPermissibleReason::TransferNotBijective)
    };
    Ok(PermissibilityCertificate {
        lower,
        upper,
        gluings,
        common_image: Some(image),
        transfer,
        verdict,
    })
}

/// Per-orbit-pair memo of permissibility verdicts. Values are computed from
/// one representative pair and written at most once per key; concurrent
/// readers are safe.
#[derive(Debug, Default)]
pub struct PermissibilityCache {
    map: RwLock<HashMap<(OrbitId, OrbitId), bool>>,
}

impl PermissibilityCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether the orbit pair `(lower, upper)` is permissible, computing and
    /// caching the verdict on first use.
    pub fn orbit_permissible(
        &self,
        x: &SymmetricDeltaComplex,
        lower: OrbitId,
        upper: OrbitId,
    ) -> Result<bool, ComplexError> {
        if let Some(&v) = self.map.read().unwrap().get(&(lower, upper)) {
            return Ok(v);
        }
        let cert = is_permissible(x, x.orbit_rep(lower), x.orbit_rep(upper))?;
        let v = cert.is_permissible();
        self.map.write().unwrap().entry((lower, upper)).or_insert(v);
        Ok(v)
    }
}

/// Construct a second parent: given `child < mid < upper` with `(mid, upper)`
/// a permissible codimension-one pair and `child` of strictly smaller
/// dimension than `mid`, produce a simplex `other` in a *different* orbit
/// than `mid` with `child < other < upper`.
///
/// The construction takes the first gluing `g` of `mid` into `upper`,
/// replaces the value at the least position missed by a gluing of `child`
/// into `mid` with the unique target value missed by `g`, and pulls back.
pub fn permissible_cover_witness(
    x: &SymmetricDeltaComplex,
    child: Simplex,
    mid: Simplex,
    upper: Simplex,
) -> Result<Simplex, WitnessError> {
    if !(child.dim < mid.dim && mid.dim + 1 == upper.dim) {
        return Err(WitnessError::BadDimensions {
            lower: child.dim,
            mid: mid.dim,
            upper: upper.dim,
        });
    }
    let f = gluings_any_codim(x, child, mid)
        .into_iter()
        .next()
        .ok_or_else(|| WitnessError::NotAFace {
            child: x.name(child).to_string(),
            parent: x.name(mid).to_string(),
        })?;
    let cert = is_permissible(x, mid, upper)?;
    if !cert.is_permissible() {
        if cert.gluings.is_empty() {
            return Err(WitnessError::NotAFace {
                child: x.name(mid).to_string(),
                parent: x.name(upper).to_string(),
            });
        }
        return Err(WitnessError::PairNotPermissible);
    }
    let g = &cert.gluings[0];
    let l = g.missed()[0];
    let k = f.missed()[0];
    let mut values = g.values().to_vec();
    values[k] = l;
    let g_prime = Injection::new(values, g.target_size())
        .expect("replacing a value with the missed one stays injective");
    let other = x.pullback(&g_prime, upper);

    // Re-verify everything the construction promises.
    assert_ne!(
        x.orbit_of(other),
        x.orbit_of(mid),
        "second parent landed in the same orbit"
    );
    assert!(
        !gluings_any_codim(x, child, other).is_empty(),
        "child is not a face of the second parent"
    );
    Ok(other)
}
