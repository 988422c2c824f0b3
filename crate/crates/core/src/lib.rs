//! Discrete Morse theory on finite symmetric Δ-complexes.
//!
//! A symmetric Δ-complex is a gluing of simplices where the gluing maps may
//! permute vertices, so a simplex can be identified with itself along a
//! symmetry. This crate represents such complexes by finite generator tables
//! (adjacent-transposition actions and codimension-one face maps), validates
//! the defining relations, and implements the discrete Morse toolkit on top:
//!
//! * orbits, automorphism groups, and face relations ([`complex`]);
//! * the permissibility test for codimension-one orbit pairs that controls
//!   when a pair may be cancelled ([`permissibility`]);
//! * discrete Morse functions, level subcomplexes, and orbit-injective
//!   perturbation ([`morse`]);
//! * acyclic matchings on the orbit Hasse diagram, equivalent to Morse
//!   functions in both directions ([`matching`]);
//! * a collapse engine producing an attach/collapse trace and a cell-model
//!   summary, with a contractibility certificate ([`collapse`]);
//! * rational homology of the orbit quotient via a sign-twisted orbit chain
//!   complex ([`homology`]);
//! * conversion of ordered simplicial complexes into symmetric Δ-complexes
//!   ([`simplicial`]);
//! * an application: the coloop subcomplex of unimodular cone classes built
//!   from graphic matroids, with a full certification pipeline
//!   ([`tropical`], [`matroid`], [`matrix`]).
//!
//! The `symmorse` binary exposes all of this on the command line; see the
//! repository README for the file formats and subcommands.

pub mod cli;
pub mod collapse;
pub mod complex;
#[cfg(test)]
mod goldens;
pub mod homology;
pub mod io;
pub(crate) mod linalg;
pub mod matching;
pub mod matrix;
pub mod matroid;
pub mod morse;
pub mod perm;
pub mod permissibility;
pub mod simplicial;
pub mod tropical;
