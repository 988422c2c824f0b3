//! Shared helpers for the integration suites: fixture loading, an
//! independent ordered-simplicial homology oracle, and a random complex
//! generator. The oracle deliberately works straight from facet lists with
//! its own elimination code so it shares nothing with the library's
//! orbit-chain construction.

use num::rational::BigRational;
use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use symmorse::complex::SymmetricDeltaComplex;
use symmorse::io;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load_fixture_complex(name: &str) -> SymmetricDeltaComplex {
    io::read_complex(&fixture_path(name)).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}

/// Every complex fixture shipped in the repository.
pub fn all_complex_fixtures() -> Vec<(&'static str, SymmetricDeltaComplex)> {
    [
        "half-triangle.json",
        "interval.json",
        "triangle.json",
        "circle.json",
        "coloop-g2.json",
        "coloop-g3.json",
    ]
    .into_iter()
    .map(|n| (n, load_fixture_complex(n)))
    .collect()
}

// ---------------------------------------------------------------------------
// Independent homology oracle
// ---------------------------------------------------------------------------

/// Exact rank by plain Gaussian elimination; written here on purpose rather
/// than shared with the library.
#[allow(clippy::needless_range_loop)] // row updates read the pivot row while writing another
fn oracle_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = BigRational::one() / rows[rank][col].clone();
        for c in col..cols {
            let v = rows[rank][c].clone() * inv.clone();
            rows[rank][c] = v;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let v = rows[r][c].clone() - factor.clone() * rows[rank][c].clone();
                    rows[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rational Betti numbers of the abstract simplicial complex generated by
/// `facets`, computed classically: downward closure, ordered boundary
/// matrices with alternating signs, exact ranks.
pub fn simplicial_betti(facets: &[Vec<usize>]) -> Vec<usize> {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| {
            let mut g = f.clone();
            g.sort_unstable();
            g
        })
        .collect();
    while let Some(f) = stack.pop() {
        assert!(!f.is_empty() && f.windows(2).all(|w| w[0] < w[1]));
        if faces.insert(f.clone()) && f.len() >= 2 {
            for skip in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(skip);
                stack.push(sub);
            }
        }
    }
    let top = faces.iter().map(|f| f.len() - 1).max().expect("nonempty");
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for f in faces {
        by_dim[f.len() - 1].push(f);
    }
    let index: Vec<BTreeMap<&[usize], usize>> = by_dim
        .iter()
        .map(|fs| {
            fs.iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect()
        })
        .collect();

    // ranks[p] = rank of the boundary map from p-chains to (p-1)-chains.
    let mut ranks = vec![0usize; top + 2];
    for p in 1..=top {
        let mut rows = vec![vec![BigRational::zero(); by_dim[p].len()]; by_dim[p - 1].len()];
        for (col, f) in by_dim[p].iter().enumerate() {
            for skip in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(skip);
                let row = index[p - 1][sub.as_slice()];
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                rows[row][col] += BigRational::from_integer(sign.into());
            }
        }
        ranks[p] = oracle_rank(rows);
    }
    (0..=top)
        .map(|p| by_dim[p].len() - ranks[p] - ranks[p + 1])
        .collect()
}

/// A random facet list on at most 8 vertices with faces of dimension at
/// most 3, deterministic per seed.
pub fn random_facets(seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=8usize);
    let count = rng.random_range(1..=12usize);
    let mut facets = Vec::new();
    for _ in 0..count {
        let size = rng.random_range(1..=4.min(n));
        let mut verts: Vec<usize> = (0..n).collect();
        verts.shuffle(&mut rng);
        let mut f = verts[..size].to_vec();
        f.sort_unstable();
        facets.push(f);
    }
    facets
}
