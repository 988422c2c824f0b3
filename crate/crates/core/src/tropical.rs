//! The coloop subcomplex of tropical cone space in low rank.
//!
//! For a rank bound `g`, the *locus* consists of the simple graphic matroids
//! `M` (direct sums of cycle matroids of connected simple graphs) with
//! `rank(M) < g`, together with those of rank exactly `g` that have at least
//! one coloop. The locus is closed under element deletion, so its
//! isomorphism classes index the orbits of a symmetric Δ-complex: a
//! `p`-simplex is a class on `p + 1` elements together with a labeling of
//! its elements, taken up to matroid automorphisms. Faces delete the
//! labeled element and re-canonicalize through a memoized isomorphism.
//!
//! For every class `M` without coloops and of rank below `g`, adding a
//! coloop stays in the locus; pairing `[M]` with `[M ⊕ U(1,1)]` yields an
//! acyclic matching whose unmatched orbits all carry at least two coloops
//! (plus the single point), and whose reduced rational homology vanishes.
//! The enumeration is exhaustive for `g ≤ 3` unconditionally; for `g = 4`
//! it relies on the classification of regular matroids (the unique
//! non-graphic candidate has full rank and no coloop, hence lies outside
//! the locus) and therefore requires an explicit opt-in.

use crate::complex::{ComplexData, ComplexError, OrbitId, SymmetricDeltaComplex};
use crate::homology::{reduced_betti, HomologyError};
use crate::matching::{validate_matching, Matching, MatchingViolation, OrbitHasse};
use crate::matrix::IntegerMatrix;
use crate::matroid::Matroid;
use crate::perm::Perm;
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TropicalError {
    #[error("the rank bound must be positive")]
    GTooSmall,
    #[error(
        "rank bound 4 requires an explicit opt-in: exhaustiveness rests on the \
         classification of regular matroids to exclude non-graphic cones"
    )]
    G4RequiresOptIn,
    #[error("the census enumeration is not exhaustive for rank bound {0} >= 5")]
    GTooLarge(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// One isomorphism class of cones in the locus.
#[derive(Debug, Clone)]
pub struct ConeClass {
    pub matroid: Matroid,
    /// Human-readable decomposition into connected components.
    pub label: String,
    pub rank: usize,
    pub coloop_count: usize,
    pub aut_order: usize,
    /// Signed incidence representation: `g` rows, one column per element.
    pub representation: IntegerMatrix,
}

impl ConeClass {
    pub fn elements(&self) -> usize {
        self.matroid.n()
    }

    pub fn dim(&self) -> usize {
        self.elements() - 1
    }
}

/// All classes of the locus for one rank bound, in canonical order.
#[derive(Debug, Clone)]
pub struct ColoopCensus {
    pub g: usize,
    pub classes: Vec<ConeClass>,
}

/// A display row of the census table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CensusRow {
    pub dim: usize,
    pub label: String,
    pub elements: usize,
    pub rank: usize,
    pub coloops: usize,
    pub aut_order: usize,
}

impl ColoopCensus {
    pub fn table(&self) -> Vec<CensusRow> {
        self.classes
            .iter()
            .map(|c| CensusRow {
                dim: c.dim(),
                label: c.label.clone(),
                elements: c.elements(),
                rank: c.rank,
                coloops: c.coloop_count,
                aut_order: c.aut_order,
            })
            .collect()
    }

    /// Indices of classes whose simplices have the given dimension.
    pub fn classes_at_dim(&self, dim: usize) -> Vec<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.dim() == dim)
            .map(|(i, _)| i)
            .collect()
    }

    /// Parse a simplex id back into `(class index, labeling)`.
    pub fn parse_simplex_name(&self, name: &str) -> Option<(usize, Perm)> {
        let (cls, digits) = name.split_once('|')?;
        let idx: usize = cls.parse().ok()?;
        let images: Vec<usize> = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?;
        let perm = Perm::from_images(images)?;
        if idx < self.classes.len() && perm.len() == self.classes[idx].elements() {
            Some((idx, perm))
        } else {
            None
        }
    }

    /// The orbit of the identity-labeled simplex of a class.
    pub fn class_orbit(&self, x: &SymmetricDeltaComplex, idx: usize) -> OrbitId {
        let name = simplex_name(idx, &Perm::identity(self.classes[idx].elements()));
        x.orbit_by_name(&name)
            .expect("every class has its identity labeling")
    }

    /// The census class an orbit belongs to.
    pub fn orbit_class(&self, x: &SymmetricDeltaComplex, o: OrbitId) -> usize {
        self.parse_simplex_name(x.orbit_rep_name(o))
            .expect("orbit names encode their class")
            .0
    }
}

fn simplex_name(class: usize, labeling: &Perm) -> String {
    let digits: String = labeling
        .images()
        .iter()
        .map(|&v| {
            assert!(v < 10, "labelings beyond ten elements are not supported");
            char::from_digit(v as u32, 10).unwrap()
        })
        .collect();
    format!("{class}|{digits}")
}

/// Lexicographically least labeling in the left automorphism coset of `lam`.
fn canonical_labeling(auts: &[Perm], lam: &Perm) -> Perm {
    auts.iter()
        .map(|a| a.compose(lam))
        .min()
        .expect("automorphism groups contain the identity")
}

// ---------------------------------------------------------------------------
// Graph enumeration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ConnGraph {
    vertices: usize,
    /// Sorted edge list with `a < b`.
    edges: Vec<(usize, usize)>,
}

impl ConnGraph {
    fn rank(&self) -> usize {
        self.vertices - 1
    }

    fn matroid(&self) -> Matroid {
        Matroid::graphic(self.vertices, &self.edges)
    }

    /// Signed incidence rows with the last vertex's row removed: `+1` at the
    /// smaller endpoint, `-1` at the larger.
    fn representation_rows(&self) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0i64; self.edges.len()]; self.vertices];
        for (col, &(a, b)) in self.edges.iter().enumerate() {
            rows[a][col] = 1;
            rows[b][col] = -1;
        }
        rows.truncate(self.vertices - 1);
        rows
    }
}

fn is_connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    if vertices == 0 {
        return false;
    }
    let mut seen = vec![false; vertices];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Connected simple graphs on exactly `vertices` labeled vertices, one per
/// isomorphism class, with canonically relabeled edge lists.
fn connected_simple_graphs(vertices: usize) -> Vec<ConnGraph> {
    let all_edges: Vec<(usize, usize)> = (0..vertices).tuple_combinations().collect();
    let perms = Perm::all(vertices);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u64..(1 << all_edges.len()) {
        let edges: Vec<(usize, usize)> = all_edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !is_connected(vertices, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                edges
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (p.apply(a), p.apply(b));
                        (x.min(y), x.max(y))
                    })
                    .sorted_unstable()
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            out.push(ConnGraph {
                vertices,
                edges: canon,
            });
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Census construction
// ---------------------------------------------------------------------------

/// Union of component matroids, split along shared circuits; coloops become
/// singleton components.
fn matroid_components(m: &Matroid) -> Vec<Matroid> {
    let n = m.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for c in m.circuits() {
        for w in c.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..n {
        let r = find(&mut parent, e);
        groups.entry(r).or_default().push(e);
    }
    let mut comps = Vec::new();
    for elems in groups.into_values() {
        let index: BTreeMap<usize, usize> =
            elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let circuits = m
            .circuits()
            .iter()
            .filter(|c| c.iter().all(|e| index.contains_key(e)))
            .map(|c| c.iter().map(|e| index[e]).collect())
            .collect();
        comps.push(Matroid::new(elems.len(), circuits).expect("component circuits are valid"));
    }
    comps.sort_by_key(|c| (std::cmp::Reverse(c.n()), c.circuits().to_vec()));
    comps
}

fn component_label(c: &Matroid) -> String {
    let (r, n) = (c.rank(), c.n());
    if c.is_isomorphic(&Matroid::uniform(r, n)) {
        return format!("U({r},{n})");
    }
    let diamond = Matroid::graphic(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
    if c.is_isomorphic(&diamond) {
        return "M(diamond)".to_string();
    }
    let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    if c.is_isomorphic(&k4) {
        return "M(K4)".to_string();
    }
    format!("M(n={n},r={r})")
}

fn class_label(m: &Matroid) -> String {
    matroid_components(m)
        .iter()
        .map(component_label)
        .collect::<Vec<_>>()
        .join("+")
}

fn build_census(g: usize) -> ColoopCensus {
    let mut pool: Vec<ConnGraph> = Vec::new();
    for v in 2..=g + 1 {
        pool.extend(connected_simple_graphs(v));
    }

    // Multisets of connected graphs with total rank at most g, as
    // non-decreasing index sequences into the pool.
    let mut multisets: Vec<Vec<usize>> = Vec::new();
    fn rec(
        pool: &[ConnGraph],
        start: usize,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for i in start..pool.len() {
            let r = pool[i].rank();
            if r <= budget {
                cur.push(i);
                out.push(cur.clone());
                rec(pool, i, budget - r, cur, out);
                cur.pop();
            }
        }
    }
    rec(&pool, 0, g, &mut Vec::new(), &mut multisets);

    let mut classes: Vec<ConeClass> = Vec::new();
    for ms in multisets {
        // Components ordered by descending edge count for a canonical sum.
        let comps: Vec<&ConnGraph> = ms
            .iter()
            .map(|&i| &pool[i])
            .sorted_by_key(|c| (std::cmp::Reverse(c.edges.len()), c.edges.clone()))
            .collect();
        let matroid = comps
            .iter()
            .map(|c| c.matroid())
            .reduce(|a, b| a.direct_sum(&b))
            .expect("multisets are non-empty");
        debug_assert!(matroid.is_simple());
        let rank = matroid.rank();
        let coloops = matroid.coloops().len();
        debug_assert!(rank <= g, "rank budget enforced by enumeration");
        if !(rank < g || coloops >= 1) {
            continue;
        }
        if classes.iter().any(|c| c.matroid.is_isomorphic(&matroid)) {
            continue;
        }
        let n = matroid.n();
        let mut rep = IntegerMatrix::zero(g, n);
        let (mut row0, mut col0) = (0usize, 0usize);
        for c in &comps {
            for (r, row) in c.representation_rows().iter().enumerate() {
                for (cc, &v) in row.iter().enumerate() {
                    rep.set(row0 + r, col0 + cc, v);
                }
            }
            row0 += c.vertices - 1;
            col0 += c.edges.len();
        }
        assert!(row0 <= g && col0 == n);
        assert_eq!(
            Matroid::from_matrix(&rep),
            matroid,
            "representation must present the class matroid column-for-column"
        );
        let aut_order = matroid.automorphisms().len();
        classes.push(ConeClass {
            label: class_label(&matroid),
            rank,
            coloop_count: coloops,
            aut_order,
            representation: rep,
            matroid,
        });
    }
    classes.sort_by(|a, b| {
        let key = |c: &ConeClass| {
            (
                c.elements(),
                c.rank,
                c.matroid
                    .circuits()
                    .iter()
                    .map(|x| x.len())
                    .collect::<Vec<_>>(),
                c.matroid.circuits().to_vec(),
                c.label.clone(),
            )
        };
        key(a).cmp(&key(b))
    });
    ColoopCensus { g, classes }
}

/// Build the census and its symmetric Δ-complex for rank bound `g`.
///
/// `allow_g4` acknowledges that exhaustiveness at `g = 4` depends on the
/// classification of regular matroids; higher bounds are refused because
/// non-graphic cones genuinely enter the locus there.
pub fn enumerate_coloop_complex(
    g: usize,
    allow_g4: bool,
) -> Result<(SymmetricDeltaComplex, ColoopCensus), TropicalError> {
    match g {
        0 => return Err(TropicalError::GTooSmall),
        1..=3 => {}
        4 if allow_g4 => {}
        4 => return Err(TropicalError::G4RequiresOptIn),
        _ => return Err(TropicalError::GTooLarge(g)),
    }
    let census = build_census(g);
    let auts: Vec<Vec<Perm>> = census
        .classes
        .iter()
        .map(|c| c.matroid.automorphisms())
        .collect();
    let max_n = census
        .classes
        .iter()
        .map(|c| c.elements())
        .max()
        .expect("the census always contains the single-coloop class");
    debug_assert!(
        (1..=max_n).all(|n| census.classes.iter().any(|c| c.elements() == n)),
        "deletion-closure keeps every element count populated"
    );

    let mut simplices: Vec<Vec<String>> = vec![Vec::new(); max_n];
    let mut transpositions: Vec<Vec<BTreeMap<String, String>>> =
        (1..max_n).map(|p| vec![BTreeMap::new(); p]).collect();
    let mut faces: Vec<Vec<BTreeMap<String, String>>> =
        (1..max_n).map(|p| vec![BTreeMap::new(); p + 1]).collect();
    // Memoized re-canonicalization of single-element deletions.
    let mut deletion_iso: BTreeMap<(usize, usize), (usize, Perm)> = BTreeMap::new();

    for (idx, class) in census.classes.iter().enumerate() {
        let n = class.elements();
        let p = n - 1;
        let reps: BTreeSet<Perm> = Perm::all(n)
            .into_iter()
            .map(|lam| canonical_labeling(&auts[idx], &lam))
            .collect();
        for lam in &reps {
            let name = simplex_name(idx, lam);
            simplices[p].push(name.clone());
            if p == 0 {
                continue;
            }
            for (j, table) in transpositions[p - 1].iter_mut().enumerate() {
                let moved = canonical_labeling(&auts[idx], &lam.compose(&Perm::adjacent(n, j)));
                table.insert(name.clone(), simplex_name(idx, &moved));
            }
            for (m, table) in faces[p - 1].iter_mut().enumerate() {
                let e = lam.apply(m);
                let (target, phi) = deletion_iso
                    .entry((idx, e))
                    .or_insert_with(|| {
                        let deleted = class.matroid.delete(e).expect("element in range");
                        let target = census
                            .classes
                            .iter()
                            .position(|c| c.matroid.is_isomorphic(&deleted))
                            .expect("the locus is closed under deletion");
                        let phi = deleted
                            .isomorphism(&census.classes[target].matroid)
                            .expect("isomorphic by the search above");
                        (target, phi)
                    })
                    .clone();
                let images: Vec<usize> = (0..n - 1)
                    .map(|q| {
                        let hq = if q < m { q } else { q + 1 };
                        let v = lam.apply(hq);
                        phi.apply(if v > e { v - 1 } else { v })
                    })
                    .collect();
                let mu = Perm::from_images(images).expect("restriction of a bijection");
                let moved = canonical_labeling(&auts[target], &mu);
                table.insert(name.clone(), simplex_name(target, &moved));
            }
        }
    }

    let data = ComplexData {
        max_dim: max_n - 1,
        simplices,
        transpositions,
        faces,
    };
    let x = SymmetricDeltaComplex::from_data(&data).expect("census presentation is well-formed");
    Ok((x, census))
}

/// The coloop matching: every class without coloops and of rank below `g`
/// is paired with the class obtained by adding one coloop.
pub fn coloop_matching(x: &SymmetricDeltaComplex, census: &ColoopCensus) -> Matching {
    let mut pairs = Vec::new();
    for (i, class) in census.classes.iter().enumerate() {
        if class.coloop_count == 0 && class.rank < census.g {
            let inflated = class.matroid.inflate().expect("checked for coloops");
            let j = census
                .classes
                .iter()
                .position(|c| c.matroid.is_isomorphic(&inflated))
                .expect("inflation stays inside the locus");
            pairs.push((census.class_orbit(x, i), census.class_orbit(x, j)));
        }
    }
    Matching::new(pairs)
}

/// Evidence that the coloop matching certifies the expected structure.
#[derive(Debug, Clone)]
pub struct ColoopCertificate {
    pub matching_pairs: Vec<(String, String)>,
    pub matching_violations: Vec<MatchingViolation>,
    /// Labels of the unmatched orbits, in orbit order.
    pub unmatched: Vec<String>,
    /// Clause: unmatched orbits are the point plus the classes with at
    /// least two coloops.
    pub unmatched_as_expected: bool,
    /// Per unmatched non-point orbit: does an automorphism transpose two
    /// coloop-labeled positions?
    pub coloop_swaps: Vec<(String, bool)>,
    pub reduced_betti: Vec<usize>,
}

impl ColoopCertificate {
    pub fn matching_valid(&self) -> bool {
        self.matching_violations.is_empty()
    }

    pub fn betti_trivial(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0)
    }

    pub fn ok(&self) -> bool {
        self.matching_valid()
            && self.unmatched_as_expected
            && self.coloop_swaps.iter().all(|&(_, ok)| ok)
            && self.betti_trivial()
    }
}

/// Check the four certificate clauses for a census complex.
pub fn certify_coloop(
    x: &SymmetricDeltaComplex,
    census: &ColoopCensus,
) -> Result<ColoopCertificate, TropicalError> {
    let hasse = OrbitHasse::new(x)?;
    let m = coloop_matching(x, census);
    let report = validate_matching(x, &hasse, &m);

    let point_class = census
        .classes
        .iter()
        .position(|c| c.elements() == 1)
        .expect("the census contains the point class");
    let expected: BTreeSet<OrbitId> = census
        .classes
        .iter()
        .enumerate()
        .filter(|(i, c)| *i == point_class || c.coloop_count >= 2)
        .map(|(i, _)| census.class_orbit(x, i))
        .collect();
    let actual: BTreeSet<OrbitId> = report.unmatched.iter().copied().collect();

    let mut coloop_swaps = Vec::new();
    for &o in &report.unmatched {
        let cls = census.orbit_class(x, o);
        if cls == point_class {
            continue;
        }
        let rep = x.orbit_rep(o);
        let (_, lam) = census
            .parse_simplex_name(x.name(rep))
            .expect("simplex names parse");
        let coloops: BTreeSet<usize> = census.classes[cls].matroid.coloops().into_iter().collect();
        let has_swap = x.automorphisms(rep)?.iter().any(|perm| {
            perm.transposed_pair().is_some_and(|(a, b)| {
                coloops.contains(&lam.apply(a)) && coloops.contains(&lam.apply(b))
            })
        });
        coloop_swaps.push((census.classes[cls].label.clone(), has_swap));
    }

    Ok(ColoopCertificate {
        matching_pairs: m.to_named(x),
        matching_violations: report.violations,
        unmatched: report
            .unmatched
            .iter()
            .map(|&o| census.classes[census.orbit_class(x, o)].label.clone())
            .collect(),
        unmatched_as_expected: expected == actual,
        coloop_swaps,
        reduced_betti: reduced_betti(x)?,
    })
}
