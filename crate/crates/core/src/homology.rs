//! Rational homology of the quotient by the symmetric group actions.
//!
//! Chains are spanned by *orientable* orbits: those whose automorphism group
//! contains no odd permutation. Orbits with an odd automorphism support no
//! consistent orientation and contribute nothing over the rationals. The
//! boundary of an orbit generator evaluates the face maps on the canonical
//! representative and transports each target back to its own representative,
//! picking up the sign of the transporting permutation:
//!
//! `∂[σ] = Σ_m (-1)^m · sgn(h_m) · [d_m(σ)]`, `h_m` the permutation with
//! `h_m^*(rep) = d_m(σ)`, and non-orientable targets dropped.

use crate::complex::{ComplexError, OrbitId, SymmetricDeltaComplex};
use crate::linalg::rational_rank;
use num::{BigRational, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("reduced ranks are undefined for an empty complex")]
    EmptyComplex,
}

/// Whether the orbit's automorphism group preserves orientation.
pub fn orientable(x: &SymmetricDeltaComplex, o: OrbitId) -> Result<bool, ComplexError> {
    Ok(x.automorphisms(x.orbit_rep(o))?.iter().all(|p| !p.is_odd()))
}

/// The chain complex spanned by orientable orbits, with exact rational
/// boundary matrices.
#[derive(Debug, Clone)]
pub struct OrbitChainComplex {
    /// Orientable orbits per dimension, in orbit order.
    pub generators: Vec<Vec<OrbitId>>,
    /// `boundaries[p]` is the matrix of `∂_p : C_p -> C_{p-1}`, stored
    /// row-major with one row per `(p-1)`-generator and one column per
    /// `p`-generator. `boundaries[0]` is empty.
    pub boundaries: Vec<Vec<Vec<BigRational>>>,
}

impl OrbitChainComplex {
    pub fn new(x: &SymmetricDeltaComplex) -> Result<Self, ComplexError> {
        let mut generators: Vec<Vec<OrbitId>> = Vec::new();
        for d in 0..=x.max_dim() {
            let mut level = Vec::new();
            for idx in 0..x.orbit_count(d) {
                let o = OrbitId { dim: d, idx };
                if orientable(x, o)? {
                    level.push(o);
                }
            }
            generators.push(level);
        }
        let index: Vec<BTreeMap<OrbitId, usize>> = generators
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, &o)| (o, i)).collect())
            .collect();
        let mut boundaries = vec![Vec::new()];
        for p in 1..=x.max_dim() {
            let rows = generators[p - 1].len();
            let cols = generators[p].len();
            let mut matrix = vec![vec![BigRational::zero(); cols]; rows];
            for (col, &o) in generators[p].iter().enumerate() {
                let rep = x.orbit_rep(o);
                for m in 0..=p {
                    let target = x.face(m, rep);
                    let Some(&row) = index[p - 1].get(&x.orbit_of(target)) else {
                        continue;
                    };
                    let transport_sign = x.carried_from_rep(target).sign();
                    let coeff = BigRational::from_integer(
                        (if m % 2 == 0 { 1i64 } else { -1 } * transport_sign).into(),
                    );
                    matrix[row][col] += coeff;
                }
            }
            boundaries.push(matrix);
        }
        let cc = Self {
            generators,
            boundaries,
        };
        cc.assert_boundary_squares_to_zero();
        Ok(cc)
    }

    fn assert_boundary_squares_to_zero(&self) {
        for p in 2..self.boundaries.len() {
            let a = &self.boundaries[p - 1]; // (p-2) x (p-1)
            let b = &self.boundaries[p]; // (p-1) x p
            let cols = b.first().map_or(0, |r| r.len());
            for (i, a_row) in a.iter().enumerate() {
                for j in 0..cols {
                    let mut acc = BigRational::zero();
                    for (k, b_row) in b.iter().enumerate() {
                        acc += &a_row[k] * &b_row[j];
                    }
                    assert!(acc.is_zero(), "∂∘∂ ≠ 0 at degree {p}, entry ({i},{j})");
                }
            }
        }
    }

    /// Ranks of the rational homology groups, indexed by dimension; the
    /// vector always has one entry per dimension of the complex.
    pub fn betti(&self) -> Vec<usize> {
        let n = self.generators.len();
        let ranks: Vec<usize> = (0..n)
            .map(|p| rational_rank(self.boundaries[p].clone()))
            .collect();
        (0..n)
            .map(|p| {
                let dim_c = self.generators[p].len();
                let outgoing = ranks[p];
                let incoming = if p + 1 < n { ranks[p + 1] } else { 0 };
                dim_c - outgoing - incoming
            })
            .collect()
    }
}

/// Rational homology ranks of the quotient complex.
pub fn betti(x: &SymmetricDeltaComplex) -> Result<Vec<usize>, ComplexError> {
    Ok(OrbitChainComplex::new(x)?.betti())
}

/// Reduced rational homology ranks: degree zero drops by one.
pub fn reduced_betti(x: &SymmetricDeltaComplex) -> Result<Vec<usize>, HomologyError> {
    if x.is_empty() {
        return Err(HomologyError::EmptyComplex);
    }
    let mut b = betti(x)?;
    b[0] -= 1;
    Ok(b)
}
