//! Permutations and injections of the finite ordinals `[p] = {0, ..., p}`.
//!
//! Everything downstream (simplex actions, face-map pullbacks, gluing
//! enumeration) reduces to two factorization facts implemented here:
//!
//! * every permutation is a composition of adjacent transpositions
//!   `s_i = (i, i+1)`, and
//! * every injection `[q] -> [p]` factors uniquely as a chain of
//!   order-preserving codimension-one inclusions `h_m` followed by a
//!   permutation of the source.

use itertools::Itertools;
use std::fmt;

/// A permutation of `{0, ..., n-1}`, stored as the image vector
/// (`images[i]` is the image of `i`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    /// Identity permutation on `n` points.
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// The adjacent transposition `s_i = (i, i+1)` on `n` points.
    ///
    /// Panics if `i + 1 >= n`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n, "adjacent transposition index out of range");
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Perm { images }
    }

    /// Build from an image vector, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Perm { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    /// Sign: `+1` for even, `-1` for odd permutations.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0usize;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_odd(&self) -> bool {
        self.sign() < 0
    }

    /// Multiplicative order of the permutation.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            k += 1;
        }
        k
    }

    /// True iff the cycle type is a single 2-cycle (all other points fixed).
    pub fn is_transposition(&self) -> bool {
        let moved: Vec<usize> = (0..self.len()).filter(|&i| self.images[i] != i).collect();
        moved.len() == 2 && self.images[moved[0]] == moved[1] && self.images[moved[1]] == moved[0]
    }

    /// The two points swapped, when [`Self::is_transposition`] holds.
    pub fn transposed_pair(&self) -> Option<(usize, usize)> {
        if !self.is_transposition() {
            return None;
        }
        let moved: Vec<usize> = (0..self.len()).filter(|&i| self.images[i] != i).collect();
        Some((moved[0], moved[1]))
    }

    /// Factor into adjacent transpositions: returns a word `w` with
    /// `self = s_{w[0]} ∘ s_{w[1]} ∘ ... ∘ s_{w[k-1]}`
    /// (function composition, so `s_{w[k-1]}` is applied first).
    pub fn transposition_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut word = Vec::new();
        loop {
            // Right-multiplying by s_i swaps the entries at positions i, i+1;
            // each such swap removes exactly one adjacent inversion.
            let descent = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]);
            match descent {
                Some(i) => {
                    w.swap(i, i + 1);
                    word.push(i);
                }
                None => break,
            }
        }
        // self ∘ s_{j1} ∘ ... ∘ s_{jk} = id  =>  self = s_{jk} ∘ ... ∘ s_{j1}.
        word.reverse();
        word
    }

    /// All permutations of `n` points in lexicographic image order.
    pub fn all(n: usize) -> Vec<Perm> {
        if n == 0 {
            return vec![Perm { images: vec![] }];
        }
        (0..n)
            .permutations(n)
            .map(|images| Perm { images })
            .sorted()
            .collect()
    }
}

/// An injection `[q] -> [p]` between finite ordinals, stored as the value
/// sequence (`values[i]` is the image of `i`); `target_size = p + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Injection {
    values: Vec<usize>,
    target_size: usize,
}

impl fmt::Debug for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Inj{:?}->{}", self.values, self.target_size)
    }
}

impl Injection {
    /// Build from a value sequence, checking injectivity and range.
    pub fn new(values: Vec<usize>, target_size: usize) -> Option<Self> {
        let mut seen = vec![false; target_size];
        if values.len() > target_size {
            return None;
        }
        for &v in &values {
            if v >= target_size || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Injection {
            values,
            target_size,
        })
    }

    /// The order-preserving inclusion `h_m : [p-1] -> [p]` whose image
    /// misses `m`; `target_size = p + 1`.
    pub fn face_inclusion(target_size: usize, m: usize) -> Self {
        assert!(m < target_size && target_size >= 1);
        let values = (0..target_size).filter(|&v| v != m).collect();
        Injection {
            values,
            target_size,
        }
    }

    /// View a permutation as an injection onto its own ordinal.
    pub fn from_perm(p: &Perm) -> Self {
        Injection {
            values: p.images().to_vec(),
            target_size: p.len(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Sorted image set.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.values.clone();
        im.sort_unstable();
        im
    }

    /// Sorted complement of the image in the target.
    pub fn missed(&self) -> Vec<usize> {
        let im = self.image();
        (0..self.target_size)
            .filter(|v| im.binary_search(v).is_err())
            .collect()
    }

    pub fn is_order_preserving(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Injection) -> Injection {
        assert_eq!(other.target_size, self.source_size());
        Injection {
            values: other.values.iter().map(|&v| self.values[v]).collect(),
            target_size: self.target_size,
        }
    }

    /// Factor as `h_{d[0]} ∘ h_{d[1]} ∘ ... ∘ h_{d[k-1]} ∘ tau` where `d` is
    /// the missed set in descending order (`h_{d[0]}` is the outermost,
    /// living at the target ordinal) and `tau` permutes the source.
    ///
    /// Contravariantly this means: pull back along the faces `d[0], d[1], ...`
    /// in that order, then act by `tau`.
    pub fn factor(&self) -> (Vec<usize>, Perm) {
        let image = self.image();
        let mut missed = self.missed();
        missed.reverse();
        let tau_images = self
            .values
            .iter()
            .map(|v| image.binary_search(v).unwrap())
            .collect();
        let tau = Perm::from_images(tau_images).expect("rank map of an injection is a bijection");
        (missed, tau)
    }

    /// All injections `[q] -> [p]` (`source_size = q + 1`,
    /// `target_size = p + 1`) in lexicographic order of value sequences.
    pub fn all(source_size: usize, target_size: usize) -> Vec<Injection> {
        (0..target_size)
            .permutations(source_size)
            .map(|values| Injection {
                values,
                target_size,
            })
            .sorted()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_adjacent_basics() {
        let id = Perm::identity(4);
        assert!(id.is_identity());
        assert_eq!(id.sign(), 1);
        let s1 = Perm::adjacent(4, 1);
        assert_eq!(s1.images(), &[0, 2, 1, 3]);
        assert_eq!(s1.sign(), -1);
        assert!(s1.is_transposition());
        assert_eq!(s1.transposed_pair(), Some((1, 2)));
        assert!(s1.compose(&s1).is_identity());
        assert_eq!(s1.order(), 2);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // p = s0, q = s1 on 3 points: (p ∘ q)(1) = p(q(1)) = p(2) = 2.
        let p = Perm::adjacent(3, 0);
        let q = Perm::adjacent(3, 1);
        let pq = p.compose(&q);
        assert_eq!(pq.apply(1), 2);
        assert_eq!(pq.apply(2), 0);
        assert_eq!(pq.apply(0), 1);
    }

    #[test]
    fn inverse_round_trips() {
        for perm in Perm::all(5) {
            assert!(perm.compose(&perm.inverse()).is_identity());
            assert!(perm.inverse().compose(&perm).is_identity());
            assert_eq!(perm.sign(), perm.inverse().sign());
        }
    }

    #[test]
    fn transposition_word_reconstructs_and_matches_sign() {
        for n in 0..=5 {
            for perm in Perm::all(n) {
                let word = perm.transposition_word();
                let mut acc = Perm::identity(n);
                // self = s_{w0} ∘ ... ∘ s_{wk-1}: build left-to-right.
                for &i in &word {
                    acc = acc.compose(&Perm::adjacent(n, i));
                }
                assert_eq!(acc, perm, "word {:?} does not rebuild {:?}", word, perm);
                let word_sign = if word.len() % 2 == 0 { 1 } else { -1 };
                assert_eq!(word_sign, perm.sign());
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(Perm::all(4).len(), 24);
        let all = Perm::all(3);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert!(all[0].is_identity());
    }

    #[test]
    fn injection_validation() {
        assert!(Injection::new(vec![0, 2], 3).is_some());
        assert!(Injection::new(vec![0, 0], 3).is_none());
        assert!(Injection::new(vec![0, 3], 3).is_none());
        assert!(Injection::new(vec![0, 1, 2, 3], 3).is_none());
    }

    #[test]
    fn face_inclusion_misses_exactly_m() {
        for p in 1..5 {
            for m in 0..=p {
                let h = Injection::face_inclusion(p + 1, m);
                assert!(h.is_order_preserving());
                assert_eq!(h.missed(), vec![m]);
            }
        }
    }

    #[test]
    fn factorization_rebuilds_the_injection() {
        for target in 1..=5 {
            for source in 1..=target {
                for inj in Injection::all(source, target) {
                    let (missed_desc, tau) = inj.factor();
                    // Rebuild h_{d0} ∘ ... ∘ h_{dk-1} ∘ tau.
                    let mut acc = Injection::from_perm(&tau);
                    for &m in missed_desc.iter().rev() {
                        let h = Injection::face_inclusion(acc.target_size() + 1, m);
                        acc = h.compose(&acc);
                    }
                    assert_eq!(acc, inj);
                    // Missed set is descending.
                    assert!(missed_desc.windows(2).all(|w| w[0] > w[1]));
                }
            }
        }
    }

    #[test]
    fn injection_enumeration_is_lexicographic() {
        let all = Injection::all(2, 3);
        assert_eq!(all.len(), 6);
        let values: Vec<&[usize]> = all.iter().map(|i| i.values()).collect();
        assert_eq!(
            values,
            vec![
                &[0usize, 1][..],
                &[0, 2][..],
                &[1, 0][..],
                &[1, 2][..],
                &[2, 0][..],
                &[2, 1][..]
            ]
        );
    }
}
