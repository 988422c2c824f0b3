//! Acyclic matchings on the orbit Hasse diagram.
//!
//! Nodes are simplex orbits; edges are codimension-one cover pairs, each
//! tagged with its permissibility verdict. A *matching* pairs each orbit
//! with at most one permissible cover such that the digraph obtained by
//! orienting matched edges upward and all other cover edges downward has no
//! directed cycle. Matchings and discrete Morse functions are two views of
//! the same data: the inversions of a valid function form a matching, and a
//! topological order of the digraph turns a matching back into a function.

use crate::complex::{ComplexError, OrbitId, SymmetricDeltaComplex};
use crate::morse::{validate_dmf, DiscreteMorseFunction, DmfViolation, MorseError};
use crate::permissibility::PermissibilityCache;
use num::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use thiserror::Error;

/// A cover pair in the orbit poset, tagged with its permissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverEdge {
    pub lower: OrbitId,
    pub upper: OrbitId,
    pub permissible: bool,
}

/// The orbit Hasse diagram with eagerly computed permissibility flags.
#[derive(Debug, Clone)]
pub struct OrbitHasse {
    edges: Vec<CoverEdge>,
}

impl OrbitHasse {
    pub fn new(x: &SymmetricDeltaComplex) -> Result<Self, ComplexError> {
        let cache = PermissibilityCache::new();
        let mut edges = Vec::new();
        for (lower, upper) in x.cover_orbit_pairs() {
            edges.push(CoverEdge {
                lower,
                upper,
                permissible: cache.orbit_permissible(x, lower, upper)?,
            });
        }
        edges.sort();
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }

    pub fn permissible_edges(&self) -> Vec<CoverEdge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| e.permissible)
            .collect()
    }

    /// Permissibility flag of a cover pair, or `None` if it is not a cover.
    pub fn cover_flag(&self, lower: OrbitId, upper: OrbitId) -> Option<bool> {
        self.edges
            .iter()
            .find(|e| e.lower == lower && e.upper == upper)
            .map(|e| e.permissible)
    }
}

/// A set of disjoint `(lower, upper)` orbit pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pairs: Vec<(OrbitId, OrbitId)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(OrbitId, OrbitId)>) -> Self {
        pairs.sort();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(OrbitId, OrbitId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn to_named(&self, x: &SymmetricDeltaComplex) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(l, u)| {
                (
                    x.orbit_rep_name(l).to_string(),
                    x.orbit_rep_name(u).to_string(),
                )
            })
            .collect()
    }

    /// Build from canonical representative name pairs.
    pub fn from_named(
        x: &SymmetricDeltaComplex,
        named: &[(String, String)],
    ) -> Result<Self, MorseError> {
        let resolve = |n: &String| {
            x.orbit_by_name(n)
                .filter(|&o| x.orbit_rep_name(o) == n)
                .ok_or_else(|| MorseError::NotACanonicalRep(n.clone()))
        };
        let mut pairs = Vec::with_capacity(named.len());
        for (l, u) in named {
            pairs.push((resolve(l)?, resolve(u)?));
        }
        Ok(Self::new(pairs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum MatchingViolation {
    /// The pair is not a codimension-one cover pair of the complex.
    NotACover { lower: String, upper: String },
    /// The pair is a cover pair but fails the permissibility test.
    NotPermissible { lower: String, upper: String },
    /// An orbit appears in more than one pair.
    OrbitReused { orbit: String },
    /// A directed cycle in the matched digraph, listed in traversal order.
    Cycle { orbits: Vec<String> },
}

#[derive(Debug, Clone)]
pub struct MatchingReport {
    pub violations: Vec<MatchingViolation>,
    /// Orbits not used by any pair.
    pub unmatched: Vec<OrbitId>,
}

impl MatchingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum MatchingError {
    #[error("the matching is not valid: {0:?}")]
    InvalidMatching(Vec<MatchingViolation>),
    #[error("the function is not a discrete Morse function: {0:?}")]
    InvalidFunction(Vec<DmfViolation>),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Successors of `o` in the matched digraph: matched pairs point upward,
/// every other cover edge points downward.
fn successors(
    hasse: &OrbitHasse,
    matched: &BTreeSet<(OrbitId, OrbitId)>,
    o: OrbitId,
) -> Vec<OrbitId> {
    let mut out = Vec::new();
    for e in hasse.edges() {
        if e.lower == o && matched.contains(&(e.lower, e.upper)) {
            out.push(e.upper);
        } else if e.upper == o && !matched.contains(&(e.lower, e.upper)) {
            out.push(e.lower);
        }
    }
    out
}

/// Find a directed cycle in the matched digraph, if any.
fn find_cycle(
    x: &SymmetricDeltaComplex,
    hasse: &OrbitHasse,
    matched: &BTreeSet<(OrbitId, OrbitId)>,
) -> Option<Vec<OrbitId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color: BTreeMap<OrbitId, Color> = x
        .all_orbits()
        .into_iter()
        .map(|o| (o, Color::White))
        .collect();
    fn dfs(
        hasse: &OrbitHasse,
        matched: &BTreeSet<(OrbitId, OrbitId)>,
        color: &mut BTreeMap<OrbitId, Color>,
        stack: &mut Vec<OrbitId>,
        o: OrbitId,
    ) -> Option<Vec<OrbitId>> {
        color.insert(o, Color::Gray);
        stack.push(o);
        for next in successors(hasse, matched, o) {
            match color[&next] {
                Color::Gray => {
                    let start = stack.iter().position(|&s| s == next).unwrap();
                    return Some(stack[start..].to_vec());
                }
                Color::White => {
                    if let Some(c) = dfs(hasse, matched, color, stack, next) {
                        return Some(c);
                    }
                }
                Color::Black => {}
            }
        }
        stack.pop();
        color.insert(o, Color::Black);
        None
    }
    for o in x.all_orbits() {
        if color[&o] == Color::White {
            let mut stack = Vec::new();
            if let Some(c) = dfs(hasse, matched, &mut color, &mut stack, o) {
                return Some(c);
            }
        }
    }
    None
}

/// Check that `m` is a partial matching by permissible cover pairs whose
/// matched digraph is acyclic.
pub fn validate_matching(
    x: &SymmetricDeltaComplex,
    hasse: &OrbitHasse,
    m: &Matching,
) -> MatchingReport {
    let mut violations = Vec::new();
    let mut used: BTreeMap<OrbitId, usize> = BTreeMap::new();
    for &(l, u) in m.pairs() {
        match hasse.cover_flag(l, u) {
            None => violations.push(MatchingViolation::NotACover {
                lower: x.orbit_rep_name(l).to_string(),
                upper: x.orbit_rep_name(u).to_string(),
            }),
            Some(false) => violations.push(MatchingViolation::NotPermissible {
                lower: x.orbit_rep_name(l).to_string(),
                upper: x.orbit_rep_name(u).to_string(),
            }),
            Some(true) => {}
        }
        *used.entry(l).or_insert(0) += 1;
        *used.entry(u).or_insert(0) += 1;
    }
    for (&o, &n) in &used {
        if n > 1 {
            violations.push(MatchingViolation::OrbitReused {
                orbit: x.orbit_rep_name(o).to_string(),
            });
        }
    }
    if violations.is_empty() {
        let matched: BTreeSet<_> = m.pairs().iter().copied().collect();
        if let Some(cycle) = find_cycle(x, hasse, &matched) {
            violations.push(MatchingViolation::Cycle {
                orbits: cycle
                    .into_iter()
                    .map(|o| x.orbit_rep_name(o).to_string())
                    .collect(),
            });
        }
    }
    let unmatched = x
        .all_orbits()
        .into_iter()
        .filter(|o| !used.contains_key(o))
        .collect();
    MatchingReport {
        violations,
        unmatched,
    }
}

/// The matching formed by the inversions of a valid discrete Morse function.
pub fn dmf_to_matching(
    x: &SymmetricDeltaComplex,
    f: &DiscreteMorseFunction,
) -> Result<Matching, MatchingError> {
    let report = validate_dmf(x, f)?;
    if !report.is_valid() {
        return Err(MatchingError::InvalidFunction(report.violations));
    }
    Ok(Matching::new(report.inversions))
}

/// A canonical discrete Morse function realizing a valid matching.
///
/// Orbits are consumed in a topological order of the matched digraph with
/// ties broken by `(dimension, representative name)`; the `i`-th orbit of
/// `n` receives value `n - i`, so values strictly decrease along every
/// digraph edge.
pub fn matching_to_dmf(
    x: &SymmetricDeltaComplex,
    hasse: &OrbitHasse,
    m: &Matching,
) -> Result<DiscreteMorseFunction, MatchingError> {
    let report = validate_matching(x, hasse, m);
    if !report.is_valid() {
        return Err(MatchingError::InvalidMatching(report.violations));
    }
    let matched: BTreeSet<_> = m.pairs().iter().copied().collect();
    let orbits = x.all_orbits();
    let n = orbits.len();
    let mut indegree: BTreeMap<OrbitId, usize> = orbits.iter().map(|&o| (o, 0)).collect();
    for &o in &orbits {
        for s in successors(hasse, &matched, o) {
            *indegree.get_mut(&s).unwrap() += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, String, OrbitId)>> = orbits
        .iter()
        .filter(|&&o| indegree[&o] == 0)
        .map(|&o| Reverse((o.dim, x.orbit_rep_name(o).to_string(), o)))
        .collect();
    let mut f = DiscreteMorseFunction::constant_zero(x);
    let mut consumed = 0usize;
    while let Some(Reverse((_, _, o))) = heap.pop() {
        f.set(o, BigRational::from_integer((n - consumed).into()));
        consumed += 1;
        for s in successors(hasse, &matched, o) {
            let d = indegree.get_mut(&s).unwrap();
            *d -= 1;
            if *d == 0 {
                heap.push(Reverse((s.dim, x.orbit_rep_name(s).to_string(), s)));
            }
        }
    }
    assert_eq!(consumed, n, "validated matching produced a cyclic digraph");
    Ok(f)
}

/// Grow a maximal matching greedily over a seeded shuffle of the permissible
/// cover edges. An edge is added when both endpoints are free and the
/// addition keeps the digraph acyclic; passes repeat until no edge can be
/// added, so the result is maximal by inclusion.
pub fn search_matching(x: &SymmetricDeltaComplex, hasse: &OrbitHasse, seed: u64) -> Matching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = hasse.permissible_edges();
    candidates.shuffle(&mut rng);
    let mut matched: BTreeSet<(OrbitId, OrbitId)> = BTreeSet::new();
    let mut used: BTreeSet<OrbitId> = BTreeSet::new();
    loop {
        let mut changed = false;
        for e in &candidates {
            if used.contains(&e.lower) || used.contains(&e.upper) {
                continue;
            }
            matched.insert((e.lower, e.upper));
            if find_cycle(x, hasse, &matched).is_some() {
                matched.remove(&(e.lower, e.upper));
            } else {
                used.insert(e.lower);
                used.insert(e.upper);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Matching::new(matched.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::half_triangle;
    use crate::morse::tests::{fig_a, named};
    use crate::simplicial::OrderedSimplicialComplex;

    fn orbit(x: &SymmetricDeltaComplex, name: &str) -> OrbitId {
        x.orbit_by_name(name).unwrap()
    }

    fn named_pairs(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn hasse_diagram_flags() {
        let x = half_triangle();
        let h = OrbitHasse::new(&x).unwrap();
        let flagged: Vec<(&str, &str, bool)> = h
            .edges()
            .iter()
            .map(|e| {
                (
                    x.orbit_rep_name(e.lower),
                    x.orbit_rep_name(e.upper),
                    e.permissible,
                )
            })
            .collect();
        assert_eq!(
            flagged,
            vec![
                ("v", "a0", true),
                ("w", "a0", true),
                ("w", "c", false),
                ("a0", "T0", false),
                ("c", "T0", true),
            ]
        );
    }

    #[test]
    fn paired_cancellation_matching_is_valid() {
        let x = half_triangle();
        let h = OrbitHasse::new(&x).unwrap();
        let m = Matching::from_named(&x, &named_pairs(&[("w", "a0"), ("c", "T0")])).unwrap();
        let report = validate_matching(&x, &h, &m);
        assert!(report.is_valid());
        let un: Vec<&str> = report
            .unmatched
            .iter()
            .map(|&o| x.orbit_rep_name(o))
            .collect();
        assert_eq!(un, vec!["v"]);
    }

    #[test]
    fn structural_violations_are_reported() {
        let x = half_triangle();
        let h = OrbitHasse::new(&x).unwrap();

        let reversed = Matching::new(vec![(orbit(&x, "a0"), orbit(&x, "v"))]);
        let r = validate_matching(&x, &h, &reversed);
        assert_eq!(
            r.violations,
            vec![MatchingViolation::NotACover {
                lower: "a0".into(),
                upper: "v".into()
            }]
        );

        let non_permissible = Matching::new(vec![(orbit(&x, "a0"), orbit(&x, "T0"))]);
        let r = validate_matching(&x, &h, &non_permissible);
        assert_eq!(
            r.violations,
            vec![MatchingViolation::NotPermissible {
                lower: "a0".into(),
                upper: "T0".into()
            }]
        );

        let reused = Matching::new(vec![
            (orbit(&x, "v"), orbit(&x, "a0")),
            (orbit(&x, "w"), orbit(&x, "a0")),
        ]);
        let r = validate_matching(&x, &h, &reused);
        assert_eq!(
            r.violations,
            vec![MatchingViolation::OrbitReused { orbit: "a0".into() }]
        );
    }

    #[test]
    fn cyclic_matching_is_rejected_with_a_witness() {
        let x = OrderedSimplicialComplex::boundary_simplex(2).to_symmetric();
        let h = OrbitHasse::new(&x).unwrap();
        let m = Matching::from_named(
            &x,
            &named_pairs(&[("0|0", "0.1|01"), ("1|0", "1.2|01"), ("2|0", "0.2|01")]),
        )
        .unwrap();
        let report = validate_matching(&x, &h, &m);
        assert_eq!(report.violations.len(), 1);
        match &report.violations[0] {
            MatchingViolation::Cycle { orbits } => {
                assert!(orbits.len() >= 4, "cycle too short: {:?}", orbits);
            }
            other => panic!("expected a cycle, got {:?}", other),
        }
    }

    #[test]
    fn canonical_function_from_matching() {
        let x = half_triangle();
        let h = OrbitHasse::new(&x).unwrap();
        let m = Matching::from_named(&x, &named_pairs(&[("w", "a0"), ("c", "T0")])).unwrap();
        let f = matching_to_dmf(&x, &h, &m).unwrap();
        assert_eq!(
            f.to_named(&x),
            named(&[("c", 5), ("w", 4), ("T0", 3), ("a0", 2), ("v", 1)])
        );
        let report = validate_dmf(&x, &f).unwrap();
        assert!(report.is_valid());
        let crit: Vec<&str> = report
            .critical
            .iter()
            .map(|&o| x.orbit_rep_name(o))
            .collect();
        assert_eq!(crit, vec!["v"]);
        // Unmatched orbits are exactly the critical ones.
        let un: Vec<OrbitId> = validate_matching(&x, &h, &m).unmatched;
        assert_eq!(un, report.critical);
    }

    #[test]
    fn function_and_matching_views_agree() {
        let x = half_triangle();
        let h = OrbitHasse::new(&x).unwrap();
        let f = fig_a(&x);
        let m = dmf_to_matching(&x, &f).unwrap();
        assert_eq!(m.to_named(&x), named_pairs(&[("w", "a0"), ("c", "T0")]));
        let round = dmf_to_matching(&x, &matching_to_dmf(&x, &h, &m).unwrap()).unwrap();
        assert_eq!(round, m);
    }

    #[test]
    fn invalid_inputs_are_refused() {
        let x = half_triangle();
        let h = OrbitHasse::new(&x).unwrap();
        let bad_f = DiscreteMorseFunction::from_named(
            &x,
            &named(&[("v", 1), ("a0", 0), ("w", 2), ("T0", 3), ("c", 4)]),
        )
        .unwrap();
        assert!(matches!(
            dmf_to_matching(&x, &bad_f),
            Err(MatchingError::InvalidFunction(_))
        ));
        let bad_m = Matching::new(vec![(orbit(&x, "a0"), orbit(&x, "T0"))]);
        assert!(matches!(
            matching_to_dmf(&x, &h, &bad_m),
            Err(MatchingError::InvalidMatching(_))
        ));
    }

    #[test]
    fn seeded_search_is_deterministic_valid_and_maximal() {
        let x = half_triangle();
        let h = OrbitHasse::new(&x).unwrap();
        for seed in 0..20 {
            let m = search_matching(&x, &h, seed);
            assert_eq!(m, search_matching(&x, &h, seed));
            let report = validate_matching(&x, &h, &m);
            assert!(report.is_valid());
            // Any maximal matching here has two pairs, leaving one vertex orbit.
            assert_eq!(m.len(), 2);
            assert_eq!(report.unmatched.len(), 1);
            assert_eq!(report.unmatched[0].dim, 0);
            // Maximality: no permissible edge with two free endpoints extends it
            // without creating a cycle.
            let used: BTreeSet<OrbitId> = m.pairs().iter().flat_map(|&(l, u)| [l, u]).collect();
            for e in h.permissible_edges() {
                if !used.contains(&e.lower) && !used.contains(&e.upper) {
                    let mut bigger = m.pairs().to_vec();
                    bigger.push((e.lower, e.upper));
                    let r = validate_matching(&x, &h, &Matching::new(bigger));
                    assert!(!r.is_valid(), "matching was not maximal");
                }
            }
        }
    }

    #[test]
    fn interval_matches_down_to_a_point() {
        let x = OrderedSimplicialComplex::full_simplex(1).to_symmetric();
        let h = OrbitHasse::new(&x).unwrap();
        let m = search_matching(&x, &h, 7);
        let report = validate_matching(&x, &h, &m);
        assert!(report.is_valid());
        assert_eq!(m.len(), 1);
        assert_eq!(report.unmatched.len(), 1);
        assert_eq!(report.unmatched[0].dim, 0);
    }

    #[test]
    fn triangle_boundary_search_leaves_two_critical_orbits() {
        // A circle needs one critical vertex and one critical edge.
        let x = OrderedSimplicialComplex::boundary_simplex(2).to_symmetric();
        let h = OrbitHasse::new(&x).unwrap();
        for seed in [0, 1, 2, 3, 4] {
            let m = search_matching(&x, &h, seed);
            let report = validate_matching(&x, &h, &m);
            assert!(report.is_valid());
            assert_eq!(m.len(), 2);
            let dims: Vec<usize> = report.unmatched.iter().map(|o| o.dim).collect();
            assert_eq!(dims, vec![0, 1]);
        }
    }
}
