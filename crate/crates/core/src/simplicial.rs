//! Ordered simplicial complexes and their symmetric Δ-complex form.
//!
//! An ordered simplicial complex is a downward-closed family of nonempty
//! vertex subsets. Its symmetric Δ-complex has one `k`-simplex per pair
//! `(σ, a)` of a permutation `σ` of `[k]` and a `k`-face `a`; permutations
//! act by composition on the `σ` coordinate (freely, so every orbit has
//! trivial automorphisms), and the face maps delete the vertex the
//! permutation puts at the missed position.

use crate::complex::{ComplexData, SymmetricDeltaComplex};
use crate::perm::{Injection, Perm};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimplicialError {
    #[error("face {face:?} has a repeated vertex")]
    RepeatedVertex { face: Vec<usize> },
    #[error(
        "family is not downward-closed: {face:?} is present but its subface {missing:?} is not"
    )]
    NotDownwardClosed {
        face: Vec<usize>,
        missing: Vec<usize>,
    },
    #[error("the empty face is not a simplex")]
    EmptyFace,
}

/// A finite ordered simplicial complex on vertices `0..n`, stored as sorted
/// vertex lists grouped by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedSimplicialComplex {
    /// `per_dim[k]` lists the `k`-faces (each a strictly increasing vertex
    /// vector), sorted lexicographically.
    per_dim: Vec<Vec<Vec<usize>>>,
}

impl OrderedSimplicialComplex {
    /// Build from an explicit face family, which must be downward-closed.
    pub fn from_faces<I>(faces: I) -> Result<Self, SimplicialError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut normalized: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut f in faces {
            if f.is_empty() {
                return Err(SimplicialError::EmptyFace);
            }
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex { face: f });
            }
            normalized.insert(f);
        }
        for f in &normalized {
            if f.len() >= 2 {
                for skip in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(skip);
                    if !normalized.contains(&sub) {
                        return Err(SimplicialError::NotDownwardClosed {
                            face: f.clone(),
                            missing: sub,
                        });
                    }
                }
            }
        }
        let top = normalized.iter().map(|f| f.len()).max().unwrap_or(1);
        let mut per_dim = vec![Vec::new(); top];
        for f in normalized {
            per_dim[f.len() - 1].push(f);
        }
        Ok(OrderedSimplicialComplex { per_dim })
    }

    /// Build from generating faces, closing downward automatically.
    pub fn from_facets<I>(facets: I) -> Result<Self, SimplicialError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut closed: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        for mut f in facets {
            if f.is_empty() {
                return Err(SimplicialError::EmptyFace);
            }
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex { face: f });
            }
            stack.push(f);
        }
        while let Some(f) = stack.pop() {
            if closed.insert(f.clone()) && f.len() >= 2 {
                for skip in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(skip);
                    stack.push(sub);
                }
            }
        }
        Self::from_faces(closed)
    }

    /// The solid `n`-simplex on vertices `0..=n`.
    pub fn full_simplex(n: usize) -> Self {
        Self::from_facets([(0..=n).collect::<Vec<_>>()]).expect("simplex is well-formed")
    }

    /// The boundary of the `n`-simplex (`n >= 1`).
    pub fn boundary_simplex(n: usize) -> Self {
        let facets = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect::<Vec<_>>());
        Self::from_facets(facets).expect("boundary is well-formed")
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.per_dim.len() - 1
    }

    pub fn face_count(&self, k: usize) -> usize {
        self.per_dim.get(k).map_or(0, |v| v.len())
    }

    pub fn faces_at(&self, k: usize) -> &[Vec<usize>] {
        self.per_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.per_dim.iter().map(|v| v.len()).collect()
    }

    fn face_name(face: &[usize]) -> String {
        face.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    fn member_name(face: &[usize], perm: &Perm) -> String {
        let digits: String = perm.images().iter().map(|v| v.to_string()).collect();
        format!("{}|{}", Self::face_name(face), digits)
    }

    /// The symmetric Δ-complex with `(k+1)!` copies of every `k`-face.
    ///
    /// A `k`-simplex is a pair `(σ, a)`; a permutation `ρ` acts by
    /// `(σ, a) -> (σ∘ρ, a)`, and the face map `d_m` sends `(σ, a)` to
    /// `(h_{σ(m)}^{-1}∘σ∘h_m, a minus its σ(m)-th vertex)`.
    pub fn to_symmetric(&self) -> SymmetricDeltaComplex {
        let top = self.dim();
        let mut simplices: Vec<Vec<String>> = Vec::new();
        let mut transpositions: Vec<Vec<BTreeMap<String, String>>> = Vec::new();
        let mut faces: Vec<Vec<BTreeMap<String, String>>> = Vec::new();
        for k in 0..=top {
            let perms = Perm::all(k + 1);
            let mut names = Vec::new();
            for a in self.faces_at(k) {
                for sigma in &perms {
                    names.push(Self::member_name(a, sigma));
                }
            }
            simplices.push(names);
            if k >= 1 {
                let mut t_maps = vec![BTreeMap::new(); k];
                let mut f_maps = vec![BTreeMap::new(); k + 1];
                for a in self.faces_at(k) {
                    for sigma in &perms {
                        let name = Self::member_name(a, sigma);
                        for (i, t_map) in t_maps.iter_mut().enumerate() {
                            let s_i = Perm::adjacent(k + 1, i);
                            let image = sigma.compose(&s_i);
                            t_map.insert(name.clone(), Self::member_name(a, &image));
                        }
                        for (m, f_map) in f_maps.iter_mut().enumerate() {
                            let h_m = Injection::face_inclusion(k + 1, m);
                            let composite = Injection::from_perm(sigma).compose(&h_m);
                            let (missed, pi) = composite.factor();
                            debug_assert_eq!(missed, vec![sigma.apply(m)]);
                            let mut b = a.clone();
                            b.remove(missed[0]);
                            f_map.insert(name.clone(), Self::member_name(&b, &pi));
                        }
                    }
                }
                transpositions.push(t_maps);
                faces.push(f_maps);
            }
        }
        let data = ComplexData {
            max_dim: top,
            simplices,
            transpositions,
            faces,
        };
        SymmetricDeltaComplex::from_data(&data)
            .expect("construction from a simplicial complex is well-formed")
    }
}
