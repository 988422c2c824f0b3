//! Matroids on ground set `{0, …, n-1}`, presented by their circuits.
//!
//! Circuits are the minimal dependent sets. Construction checks the circuit
//! axioms: no circuit contains another, and two distinct circuits sharing an
//! element always contain a third circuit avoiding it. The module supplies
//! the operations the census of tropical cones needs: ranks, coloops,
//! deletion, direct sums, isomorphism search, and the coloop-adding and
//! coloop-removing moves used to pair cones off.

use crate::matrix::IntegerMatrix;
use crate::perm::Perm;
use itertools::Itertools;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("the empty set cannot be a circuit")]
    EmptyCircuit,
    #[error("inflation requires a matroid without coloops, but {0} is one")]
    HasColoop(usize),
    #[error("deflation requires exactly one coloop, found {0}")]
    ColoopCount(usize),
}

/// `a ⊆ b` for sorted slices.
fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matroid {
    n: usize,
    /// Each circuit strictly sorted; the list sorted by (length, lex).
    circuits: Vec<Vec<usize>>,
}

impl Matroid {
    /// Build from explicit circuits, checking the circuit axioms.
    pub fn new(n: usize, circuits: Vec<Vec<usize>>) -> Result<Self, MatroidError> {
        let mut cs: Vec<Vec<usize>> = Vec::new();
        for mut c in circuits {
            c.sort_unstable();
            c.dedup();
            if c.is_empty() {
                return Err(MatroidError::EmptyCircuit);
            }
            if let Some(&e) = c.iter().find(|&&e| e >= n) {
                return Err(MatroidError::ElementOutOfRange { element: e, n });
            }
            cs.push(c);
        }
        cs.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        cs.dedup();
        let m = Self { n, circuits: cs };
        m.assert_circuit_axioms();
        Ok(m)
    }

    /// The circuit axioms hold for every construction path in this crate;
    /// violations indicate a programming error, not bad user input.
    fn assert_circuit_axioms(&self) {
        for (i, c1) in self.circuits.iter().enumerate() {
            for c2 in &self.circuits[i + 1..] {
                assert!(
                    !is_subset(c1, c2) && !is_subset(c2, c1),
                    "circuit contains another: {:?} vs {:?}",
                    c1,
                    c2
                );
                for &e in c1 {
                    if !c2.contains(&e) {
                        continue;
                    }
                    let union_minus: Vec<usize> = c1
                        .iter()
                        .chain(c2.iter())
                        .copied()
                        .filter(|&x| x != e)
                        .sorted_unstable()
                        .dedup()
                        .collect();
                    assert!(
                        self.circuits.iter().any(|c| is_subset(c, &union_minus)),
                        "no circuit inside {:?} ∪ {:?} minus {}",
                        c1,
                        c2,
                        e
                    );
                }
            }
        }
    }

    /// The matroid of linear dependence among the matrix columns.
    pub fn from_matrix(m: &IntegerMatrix) -> Self {
        let n = m.cols();
        let mut circuits: Vec<Vec<usize>> = Vec::new();
        for size in 1..=n {
            'subset: for cand in (0..n).combinations(size) {
                for c in &circuits {
                    if is_subset(c, &cand) {
                        continue 'subset; // not minimal
                    }
                }
                if m.column_subset_rank(&cand) < cand.len() {
                    circuits.push(cand);
                }
            }
        }
        Self::new(n, circuits).expect("column dependencies satisfy the circuit axioms")
    }

    /// The uniform matroid `U_{r,n}`: every `(r+1)`-subset is a circuit.
    pub fn uniform(r: usize, n: usize) -> Self {
        assert!(r <= n, "rank cannot exceed the ground set");
        let circuits = if r < n {
            (0..n).combinations(r + 1).collect()
        } else {
            Vec::new()
        };
        Self::new(n, circuits).expect("uniform circuits satisfy the axioms")
    }

    /// Cycle matroid of a graph with `vertices` vertices, one element per
    /// edge, via the signed incidence matrix.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut m = IntegerMatrix::zero(vertices, edges.len());
        for (col, &(a, b)) in edges.iter().enumerate() {
            assert!(a < vertices && b < vertices, "edge endpoint out of range");
            if a != b {
                m.set(a.min(b), col, 1);
                m.set(a.max(b), col, -1);
            }
        }
        Self::from_matrix(&m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[Vec<usize>] {
        &self.circuits
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let sorted: Vec<usize> = set.iter().copied().sorted_unstable().dedup().collect();
        self.circuits.iter().all(|c| !is_subset(c, &sorted))
    }

    /// Rank by the greedy algorithm over the circuit oracle.
    pub fn rank(&self) -> usize {
        let mut basis: Vec<usize> = Vec::new();
        for e in 0..self.n {
            basis.push(e);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        basis.len()
    }

    /// Elements contained in no circuit.
    pub fn coloops(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&e| self.circuits.iter().all(|c| !c.contains(&e)))
            .collect()
    }

    /// No circuits of size one or two.
    pub fn is_simple(&self) -> bool {
        self.circuits.iter().all(|c| c.len() >= 3)
    }

    /// Delete element `e`; elements above `e` shift down by one.
    pub fn delete(&self, e: usize) -> Result<Self, MatroidError> {
        if e >= self.n {
            return Err(MatroidError::ElementOutOfRange {
                element: e,
                n: self.n,
            });
        }
        let circuits = self
            .circuits
            .iter()
            .filter(|c| !c.contains(&e))
            .map(|c| c.iter().map(|&x| if x > e { x - 1 } else { x }).collect())
            .collect();
        Self::new(self.n - 1, circuits)
    }

    /// Disjoint union; the right summand's elements shift up by `self.n`.
    pub fn direct_sum(&self, other: &Matroid) -> Self {
        let mut circuits = self.circuits.clone();
        circuits.extend(
            other
                .circuits
                .iter()
                .map(|c| c.iter().map(|&x| x + self.n).collect::<Vec<_>>()),
        );
        Self::new(self.n + other.n, circuits).expect("direct sum preserves the axioms")
    }

    /// Append one coloop. Requires the matroid to have none, so the result
    /// has exactly one and the move can be undone by [`Matroid::deflate`].
    pub fn inflate(&self) -> Result<Self, MatroidError> {
        if let Some(&c) = self.coloops().first() {
            return Err(MatroidError::HasColoop(c));
        }
        Ok(self.direct_sum(&Matroid::uniform(1, 1)))
    }

    /// Delete the unique coloop.
    pub fn deflate(&self) -> Result<Self, MatroidError> {
        let coloops = self.coloops();
        if coloops.len() != 1 {
            return Err(MatroidError::ColoopCount(coloops.len()));
        }
        self.delete(coloops[0])
    }

    /// Per-element invariant: the sorted sizes of circuits through it.
    fn element_signature(&self, e: usize) -> Vec<usize> {
        self.circuits
            .iter()
            .filter(|c| c.contains(&e))
            .map(|c| c.len())
            .sorted_unstable()
            .collect()
    }

    fn circuit_size_multiset(&self) -> Vec<usize> {
        self.circuits
            .iter()
            .map(|c| c.len())
            .sorted_unstable()
            .collect()
    }

    /// Search for circuit-preserving bijections `self -> other`. Stops after
    /// the first hit unless `all` is set.
    fn isomorphism_search(&self, other: &Matroid, all: bool) -> Vec<Perm> {
        if self.n != other.n
            || self.circuits.len() != other.circuits.len()
            || self.circuit_size_multiset() != other.circuit_size_multiset()
            || self.rank() != other.rank()
        {
            return Vec::new();
        }
        let sig_self: Vec<Vec<usize>> = (0..self.n).map(|e| self.element_signature(e)).collect();
        let sig_other: Vec<Vec<usize>> = (0..other.n).map(|e| other.element_signature(e)).collect();
        {
            let mut a = sig_self.clone();
            let mut b = sig_other.clone();
            a.sort();
            b.sort();
            if a != b {
                return Vec::new();
            }
        }
        let mut image: Vec<Option<usize>> = vec![None; self.n];
        let mut used = vec![false; self.n];
        let mut found = Vec::new();
        self.extend_isomorphism(
            other, &sig_self, &sig_other, &mut image, &mut used, 0, all, &mut found,
        );
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        other: &Matroid,
        sig_self: &[Vec<usize>],
        sig_other: &[Vec<usize>],
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        next: usize,
        all: bool,
        found: &mut Vec<Perm>,
    ) {
        if next == self.n {
            let perm = Perm::from_images(image.iter().map(|v| v.unwrap()).collect())
                .expect("bijection by construction");
            found.push(perm);
            return;
        }
        for target in 0..self.n {
            if used[target] || sig_self[next] != sig_other[target] {
                continue;
            }
            image[next] = Some(target);
            used[target] = true;
            if self.partial_map_consistent(other, image) {
                self.extend_isomorphism(
                    other,
                    sig_self,
                    sig_other,
                    image,
                    used,
                    next + 1,
                    all,
                    found,
                );
            }
            image[next] = None;
            used[target] = false;
            if !all && !found.is_empty() {
                return;
            }
        }
    }

    /// Circuits fully inside the mapped domain must map onto circuits, and
    /// circuits fully inside the image must pull back to circuits.
    fn partial_map_consistent(&self, other: &Matroid, image: &[Option<usize>]) -> bool {
        for c in &self.circuits {
            if c.iter().all(|&e| image[e].is_some()) {
                let mapped: Vec<usize> = c
                    .iter()
                    .map(|&e| image[e].unwrap())
                    .sorted_unstable()
                    .collect();
                if !other.circuits.contains(&mapped) {
                    return false;
                }
            }
        }
        let mut preimage: BTreeMap<usize, usize> = BTreeMap::new();
        for (e, t) in image.iter().enumerate() {
            if let Some(t) = t {
                preimage.insert(*t, e);
            }
        }
        for c in &other.circuits {
            if c.iter().all(|t| preimage.contains_key(t)) {
                let pulled: Vec<usize> = c.iter().map(|t| preimage[t]).sorted_unstable().collect();
                if !self.circuits.contains(&pulled) {
                    return false;
                }
            }
        }
        true
    }

    /// One circuit-preserving bijection onto `other`, if any exists.
    pub fn isomorphism(&self, other: &Matroid) -> Option<Perm> {
        self.isomorphism_search(other, false).into_iter().next()
    }

    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        self.isomorphism(other).is_some()
    }

    /// The full automorphism group, lexicographically sorted.
    pub fn automorphisms(&self) -> Vec<Perm> {
        let mut auts = self.isomorphism_search(self, true);
        auts.sort();
        auts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Matroid {
        Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)])
    }

    fn diamond() -> Matroid {
        // Two triangles sharing edge 2: vertices 0-3.
        Matroid::graphic(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn triangle_is_the_rank_two_uniform_matroid() {
        let k3 = triangle();
        assert_eq!(k3.circuits(), &[vec![0, 1, 2]]);
        assert_eq!(k3.rank(), 2);
        assert!(k3.coloops().is_empty());
        assert!(k3.is_simple());
        assert!(k3.is_isomorphic(&Matroid::uniform(2, 3)));
        assert_eq!(k3.automorphisms().len(), 6);
    }

    #[test]
    fn uniform_basics() {
        let u11 = Matroid::uniform(1, 1);
        assert_eq!(u11.circuits().len(), 0);
        assert_eq!(u11.coloops(), vec![0]);
        assert_eq!(u11.rank(), 1);

        let u22 = u11.direct_sum(&u11);
        assert_eq!(u22.coloops(), vec![0, 1]);
        assert!(u22.is_simple());
        assert!(u22.is_isomorphic(&Matroid::uniform(2, 2)));

        let u13 = Matroid::uniform(1, 3);
        assert_eq!(u13.circuits().len(), 3);
        assert!(!u13.is_simple());
    }

    #[test]
    fn diamond_circuits_and_deletion() {
        let d = diamond();
        let sizes: Vec<usize> = d.circuits().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 3, 4]);
        assert_eq!(d.rank(), 3);
        assert!(d.coloops().is_empty());
        // Deleting the shared edge leaves a four-cycle.
        let shared = 2;
        let c4 = d.delete(shared).unwrap();
        assert_eq!(c4.circuits(), &[vec![0, 1, 2, 3]]);
        assert!(c4.is_isomorphic(&Matroid::uniform(3, 4)));
        assert_eq!(c4.automorphisms().len(), 24);
    }

    #[test]
    fn greedy_rank_agrees_with_matrix_rank() {
        let graphs: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (3, vec![(0, 1), (0, 2), (1, 2)]),
            (4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
            (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4)]),
        ];
        for (v, edges) in graphs {
            let mut m = IntegerMatrix::zero(v, edges.len());
            for (col, &(a, b)) in edges.iter().enumerate() {
                m.set(a.min(b), col, 1);
                m.set(a.max(b), col, -1);
            }
            assert_eq!(Matroid::from_matrix(&m).rank(), m.column_rank());
        }
    }

    #[test]
    fn inflation_and_deflation_are_inverse() {
        let k3 = triangle();
        let up = k3.inflate().unwrap();
        assert_eq!(up.n(), 4);
        assert_eq!(up.coloops(), vec![3]);
        assert!(up.deflate().unwrap().is_isomorphic(&k3));
        assert_eq!(up.inflate(), Err(MatroidError::HasColoop(3)));
        assert_eq!(k3.deflate(), Err(MatroidError::ColoopCount(0)));
        let u22 = Matroid::uniform(1, 1).direct_sum(&Matroid::uniform(1, 1));
        assert_eq!(u22.deflate(), Err(MatroidError::ColoopCount(2)));
    }

    #[test]
    fn isomorphism_distinguishes_structures() {
        let k3 = triangle();
        assert!(!k3.is_isomorphic(&Matroid::uniform(3, 3)));
        let c4 = diamond().delete(2).unwrap();
        let k3_plus = k3.inflate().unwrap();
        assert_eq!(c4.n(), k3_plus.n());
        assert_eq!(c4.rank(), k3_plus.rank());
        assert!(!c4.is_isomorphic(&k3_plus));
        // Automorphisms of the triangle-plus-coloop fix the coloop.
        let auts = k3_plus.automorphisms();
        assert_eq!(auts.len(), 6);
        assert!(auts.iter().all(|p| p.apply(3) == 3));
    }

    #[test]
    fn loops_and_parallels_break_simplicity() {
        let with_loop = Matroid::graphic(2, &[(0, 0), (0, 1)]);
        assert_eq!(with_loop.circuits(), &[vec![0]]);
        assert!(!with_loop.is_simple());
        let parallel = Matroid::graphic(2, &[(0, 1), (0, 1)]);
        assert_eq!(parallel.circuits(), &[vec![0, 1]]);
        assert!(!parallel.is_simple());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Matroid::new(2, vec![vec![]]),
            Err(MatroidError::EmptyCircuit)
        );
        assert_eq!(
            Matroid::new(2, vec![vec![0, 5]]),
            Err(MatroidError::ElementOutOfRange { element: 5, n: 2 })
        );
    }

    #[test]
    #[should_panic(expected = "circuit contains another")]
    fn nested_circuits_are_a_programming_error() {
        let _ = Matroid::new(3, vec![vec![0, 1], vec![0, 1, 2]]);
    }

    #[test]
    #[should_panic(expected = "no circuit inside")]
    fn elimination_axiom_is_asserted() {
        let _ = Matroid::new(4, vec![vec![0, 1], vec![1, 2], vec![0, 3]]);
    }
}
