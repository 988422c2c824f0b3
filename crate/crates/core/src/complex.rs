//! Finite symmetric Δ-complexes, presented by generators.
//!
//! A complex stores, per dimension `p`, a finite set of simplex identifiers,
//! the action of each adjacent transposition `s_i` (`0 <= i < p`) of the
//! ordinal `[p] = {0,...,p}`, and the codimension-one face maps `d_m`
//! (`0 <= m <= p`) pulling back along the order-preserving inclusion
//! `h_m : [p-1] -> [p]` that misses `m`. All deeper structure (pullbacks along
//! arbitrary injections, orbits, automorphism groups, face relations) is
//! derived from these tables via the factorization utilities in [`crate::perm`].

use crate::perm::{Injection, Perm};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use thiserror::Error;

/// Default cap on the dimension for full symmetric-group enumeration
/// ((p+1)! group elements; 8! = 40320 at the cap).
pub const DEFAULT_FACTORIAL_LIMIT: usize = 7;

/// Raw, serializable presentation of a complex. This is also the on-disk
/// JSON shape; unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexData {
    /// Top dimension `D`; `simplices` has `D + 1` entries.
    pub max_dim: usize,
    /// Simplex identifiers per dimension `0..=D`.
    pub simplices: Vec<Vec<String>>,
    /// For each dimension `p = 1..=D` (entry `p-1`), the actions of the
    /// adjacent transpositions `s_0, ..., s_{p-1}` as identifier mappings.
    pub transpositions: Vec<Vec<BTreeMap<String, String>>>,
    /// For each dimension `p = 1..=D` (entry `p-1`), the face maps
    /// `d_0, ..., d_p` into dimension `p-1` as identifier mappings.
    pub faces: Vec<Vec<BTreeMap<String, String>>>,
}

/// Structural problems that prevent a presentation from even being loaded.
/// (Relation failures are reported by [`SymmetricDeltaComplex::validate`]
/// instead.)
#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("expected {expected} entries in `{field}`, found {found}")]
    FieldLength {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("duplicate simplex identifier `{0}` (identifiers must be globally unique)")]
    DuplicateName(String),
    #[error("{context}: `{name}` is not a simplex of dimension {dim}")]
    UnknownName {
        context: String,
        name: String,
        dim: usize,
    },
    #[error("{context}: no entry for simplex `{name}` (mapping must be total)")]
    MissingEntry { context: String, name: String },
}

/// Errors from queries on a loaded complex.
#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("no simplex named `{0}`")]
    UnknownSimplex(String),
    #[error("dimension {dim} exceeds the factorial limit {limit} for symmetric-group enumeration")]
    FactorialLimit { dim: usize, limit: usize },
}

/// Handle to a simplex: dimension plus index into that dimension's
/// (lexicographically sorted) identifier list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub dim: usize,
    pub idx: usize,
}

/// Handle to a simplex orbit: dimension plus index into that dimension's
/// orbit list (orbits are ordered by their representative's identifier).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitId {
    pub dim: usize,
    pub idx: usize,
}

/// Relation families checked by [`SymmetricDeltaComplex::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationFamily {
    /// `s_i ∘ s_i = id`.
    Involution,
    /// `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}`.
    Braid,
    /// `s_i s_j = s_j s_i` for `|i - j| >= 2`.
    Commutation,
    /// `d_n ∘ d_m = d_{m-1} ∘ d_n` for `n < m`.
    Simplicial,
    /// `d_m(s_j · x) = τ' · d_{m'}(x)` where `s_j ∘ h_m = h_{m'} ∘ τ'`.
    Mixed,
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationFamily::Involution => "involution",
            RelationFamily::Braid => "braid",
            RelationFamily::Commutation => "commutation",
            RelationFamily::Simplicial => "simplicial",
            RelationFamily::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

/// One failed relation instance.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub family: RelationFamily,
    pub dim: usize,
    /// Identifier of the simplex at which the relation fails.
    pub witness: String,
    /// Human-readable rendering of the failed instance.
    pub detail: String,
}

/// Outcome of checking every presentation relation.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
struct DimData {
    names: Vec<String>,
    /// `transpositions[i][x]` = index of `s_i · x`; `i` ranges over `0..p`.
    transpositions: Vec<Vec<usize>>,
    /// `faces[m][x]` = index of `d_m(x)` in dimension `p-1`; `m` in `0..=p`.
    faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
struct OrbitData {
    /// Index of the representative (lexicographically least member).
    rep: usize,
    /// All member indices, ascending.
    members: Vec<usize>,
}

/// A finite symmetric Δ-complex with precomputed orbit data.
#[derive(Debug, Clone)]
pub struct SymmetricDeltaComplex {
    dims: Vec<DimData>,
    orbits: Vec<Vec<OrbitData>>,
    /// `orbit_idx[p][x]` = orbit index of simplex `x` in dimension `p`.
    orbit_idx: Vec<Vec<usize>>,
    /// `carry[p][x]` = permutation `h` with `pullback(h, rep) = x` for the
    /// orbit representative `rep` of `x` (identity when unreachable, which
    /// only happens on presentations that fail validation).
    carry: Vec<Vec<Perm>>,
    by_name: HashMap<String, Simplex>,
    factorial_limit: usize,
}

impl SymmetricDeltaComplex {
    /// Load a presentation, checking structural well-formedness (array
    /// lengths, totality of mappings, identifier uniqueness). Relation
    /// failures are *not* errors here; run [`Self::validate`] for those.
    pub fn from_data(data: &ComplexData) -> Result<Self, PresentationError> {
        let d = data.max_dim;
        if data.simplices.len() != d + 1 {
            return Err(PresentationError::FieldLength {
                field: "simplices",
                expected: d + 1,
                found: data.simplices.len(),
            });
        }
        if data.transpositions.len() != d {
            return Err(PresentationError::FieldLength {
                field: "transpositions",
                expected: d,
                found: data.transpositions.len(),
            });
        }
        if data.faces.len() != d {
            return Err(PresentationError::FieldLength {
                field: "faces",
                expected: d,
                found: data.faces.len(),
            });
        }

        let names: Vec<Vec<String>> = data
            .simplices
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.sort();
                v
            })
            .collect();
        let mut by_name: HashMap<String, Simplex> = HashMap::new();
        for (dim, dim_names) in names.iter().enumerate() {
            for (idx, n) in dim_names.iter().enumerate() {
                if by_name.insert(n.clone(), Simplex { dim, idx }).is_some() {
                    return Err(PresentationError::DuplicateName(n.clone()));
                }
            }
        }

        fn build_table(
            names: &[Vec<String>],
            map: &BTreeMap<String, String>,
            src_dim: usize,
            dst_dim: usize,
            context: &str,
        ) -> Result<Vec<usize>, PresentationError> {
            let src = &names[src_dim];
            let dst = &names[dst_dim];
            for key in map.keys() {
                if src.binary_search(key).is_err() {
                    return Err(PresentationError::UnknownName {
                        context: context.to_string(),
                        name: key.clone(),
                        dim: src_dim,
                    });
                }
            }
            let mut table = Vec::with_capacity(src.len());
            for name in src {
                let target = map
                    .get(name)
                    .ok_or_else(|| PresentationError::MissingEntry {
                        context: context.to_string(),
                        name: name.clone(),
                    })?;
                let idx =
                    dst.binary_search(target)
                        .map_err(|_| PresentationError::UnknownName {
                            context: context.to_string(),
                            name: target.clone(),
                            dim: dst_dim,
                        })?;
                table.push(idx);
            }
            Ok(table)
        }

        let mut all_transpositions: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        let mut all_faces: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for p in 1..=d {
            let t = &data.transpositions[p - 1];
            if t.len() != p {
                return Err(PresentationError::FieldLength {
                    field: "transpositions[p-1]",
                    expected: p,
                    found: t.len(),
                });
            }
            let mut transpositions = Vec::new();
            for (i, map) in t.iter().enumerate() {
                transpositions.push(build_table(
                    &names,
                    map,
                    p,
                    p,
                    &format!("s_{i} on dimension {p}"),
                )?);
            }
            let fm = &data.faces[p - 1];
            if fm.len() != p + 1 {
                return Err(PresentationError::FieldLength {
                    field: "faces[p-1]",
                    expected: p + 1,
                    found: fm.len(),
                });
            }
            let mut faces = Vec::new();
            for (m, map) in fm.iter().enumerate() {
                faces.push(build_table(
                    &names,
                    map,
                    p,
                    p - 1,
                    &format!("d_{m} on dimension {p}"),
                )?);
            }
            all_transpositions.push(transpositions);
            all_faces.push(faces);
        }

        let mut dims = Vec::with_capacity(d + 1);
        for (p, dim_names) in names.into_iter().enumerate() {
            dims.push(DimData {
                names: dim_names,
                transpositions: std::mem::take(&mut all_transpositions[p]),
                faces: std::mem::take(&mut all_faces[p]),
            });
        }

        let mut complex = SymmetricDeltaComplex {
            dims,
            orbits: Vec::new(),
            orbit_idx: Vec::new(),
            carry: Vec::new(),
            by_name,
            factorial_limit: DEFAULT_FACTORIAL_LIMIT,
        };
        complex.compute_orbits();
        Ok(complex)
    }

    /// Export the canonical presentation (identifiers sorted, mappings as
    /// sorted tables). `from_data ∘ to_data` is the identity.
    pub fn to_data(&self) -> ComplexData {
        let simplices = self.dims.iter().map(|d| d.names.clone()).collect();
        let mut transpositions = Vec::new();
        let mut faces = Vec::new();
        for p in 1..=self.max_dim() {
            let dd = &self.dims[p];
            transpositions.push(
                dd.transpositions
                    .iter()
                    .map(|table| {
                        dd.names
                            .iter()
                            .enumerate()
                            .map(|(x, n)| (n.clone(), dd.names[table[x]].clone()))
                            .collect()
                    })
                    .collect(),
            );
            faces.push(
                dd.faces
                    .iter()
                    .map(|table| {
                        dd.names
                            .iter()
                            .enumerate()
                            .map(|(x, n)| (n.clone(), self.dims[p - 1].names[table[x]].clone()))
                            .collect()
                    })
                    .collect(),
            );
        }
        ComplexData {
            max_dim: self.max_dim(),
            simplices,
            transpositions,
            faces,
        }
    }

    fn compute_orbits(&mut self) {
        self.orbits.clear();
        self.orbit_idx.clear();
        self.carry.clear();
        for p in 0..self.dims.len() {
            let n = self.dims[p].names.len();
            let tables = &self.dims[p].transpositions;
            // Components of the (symmetrized) generator graph.
            let mut comp = vec![usize::MAX; n];
            let mut orbit_list: Vec<OrbitData> = Vec::new();
            for start in 0..n {
                if comp[start] != usize::MAX {
                    continue;
                }
                let oid = orbit_list.len();
                let mut members = vec![start];
                comp[start] = oid;
                let mut queue = VecDeque::from([start]);
                while let Some(x) = queue.pop_front() {
                    for t in tables {
                        let y = t[x];
                        if comp[y] == usize::MAX {
                            comp[y] = oid;
                            members.push(y);
                            queue.push_back(y);
                        }
                        // Symmetrize: anything mapping onto x joins too.
                    }
                }
                // A second sweep catches preimages under non-involutive
                // (hence invalid, but still loadable) tables.
                loop {
                    let mut grew = false;
                    for x in 0..n {
                        if comp[x] == usize::MAX && tables.iter().any(|t| comp[t[x]] == oid) {
                            comp[x] = oid;
                            members.push(x);
                            grew = true;
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                members.sort_unstable();
                orbit_list.push(OrbitData {
                    rep: members[0],
                    members,
                });
            }
            // Re-number orbits by representative so the order is canonical.
            orbit_list.sort_by_key(|o| o.rep);
            let mut oidx = vec![usize::MAX; n];
            for (i, o) in orbit_list.iter().enumerate() {
                for &m in &o.members {
                    oidx[m] = i;
                }
            }
            // Carry permutations: BFS from each representative along the
            // generator actions; `carry[x]` satisfies `pullback(carry[x], rep) = x`.
            let mut carry = vec![Perm::identity(p + 1); n];
            let mut seen = vec![false; n];
            for o in &orbit_list {
                seen[o.rep] = true;
                let mut queue = VecDeque::from([o.rep]);
                while let Some(x) = queue.pop_front() {
                    for (i, t) in tables.iter().enumerate() {
                        let y = t[x];
                        if !seen[y] {
                            seen[y] = true;
                            carry[y] = carry[x].compose(&Perm::adjacent(p + 1, i));
                            queue.push_back(y);
                        }
                    }
                }
            }
            self.orbits.push(orbit_list);
            self.orbit_idx.push(oidx);
            self.carry.push(carry);
        }
    }

    pub fn max_dim(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn simplex_count(&self, dim: usize) -> usize {
        self.dims.get(dim).map_or(0, |d| d.names.len())
    }

    pub fn total_simplex_count(&self) -> usize {
        self.dims.iter().map(|d| d.names.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_simplex_count() == 0
    }

    pub fn simplices_at(&self, dim: usize) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.simplex_count(dim)).map(move |idx| Simplex { dim, idx })
    }

    pub fn name(&self, s: Simplex) -> &str {
        &self.dims[s.dim].names[s.idx]
    }

    pub fn simplex(&self, name: &str) -> Option<Simplex> {
        self.by_name.get(name).copied()
    }

    pub fn factorial_limit(&self) -> usize {
        self.factorial_limit
    }

    pub fn set_factorial_limit(&mut self, limit: usize) {
        self.factorial_limit = limit;
    }

    /// Raw generator action `s_i · x`.
    pub fn transposition(&self, i: usize, x: Simplex) -> Simplex {
        Simplex {
            dim: x.dim,
            idx: self.dims[x.dim].transpositions[i][x.idx],
        }
    }

    /// Raw face map `d_m(x)`, one dimension down.
    pub fn face(&self, m: usize, x: Simplex) -> Simplex {
        Simplex {
            dim: x.dim - 1,
            idx: self.dims[x.dim].faces[m][x.idx],
        }
    }

    /// Action of an arbitrary permutation of `[p]` on a `p`-simplex, via the
    /// adjacent-transposition factorization.
    pub fn apply_perm(&self, perm: &Perm, x: Simplex) -> Simplex {
        debug_assert_eq!(perm.len(), x.dim + 1);
        let mut cur = x;
        for i in perm.transposition_word() {
            cur = self.transposition(i, cur);
        }
        cur
    }

    /// Pullback of `x` along an arbitrary injection `[q] -> [p]`
    /// (`target_size = p + 1 = x.dim + 1`), via the face/permutation
    /// factorization.
    pub fn pullback(&self, inj: &Injection, x: Simplex) -> Simplex {
        debug_assert_eq!(inj.target_size(), x.dim + 1);
        let (missed_desc, tau) = inj.factor();
        let mut cur = x;
        for m in missed_desc {
            cur = self.face(m, cur);
        }
        self.apply_perm(&tau, cur)
    }

    // ------------------------------------------------------------------
    // Orbits and automorphisms

    pub fn orbit_count(&self, dim: usize) -> usize {
        self.orbits.get(dim).map_or(0, |o| o.len())
    }

    pub fn orbit_of(&self, x: Simplex) -> OrbitId {
        OrbitId {
            dim: x.dim,
            idx: self.orbit_idx[x.dim][x.idx],
        }
    }

    pub fn orbit_rep(&self, o: OrbitId) -> Simplex {
        Simplex {
            dim: o.dim,
            idx: self.orbits[o.dim][o.idx].rep,
        }
    }

    pub fn orbit_rep_name(&self, o: OrbitId) -> &str {
        self.name(self.orbit_rep(o))
    }

    pub fn orbit_members(&self, o: OrbitId) -> Vec<Simplex> {
        self.orbits[o.dim][o.idx]
            .members
            .iter()
            .map(|&idx| Simplex { dim: o.dim, idx })
            .collect()
    }

    pub fn orbit_size(&self, o: OrbitId) -> usize {
        self.orbits[o.dim][o.idx].members.len()
    }

    /// All orbits, ordered by `(dim, representative)`.
    pub fn all_orbits(&self) -> Vec<OrbitId> {
        (0..self.dims.len())
            .flat_map(|dim| (0..self.orbit_count(dim)).map(move |idx| OrbitId { dim, idx }))
            .collect()
    }

    /// Resolve an identifier to the orbit it belongs to.
    pub fn orbit_by_name(&self, name: &str) -> Option<OrbitId> {
        self.simplex(name).map(|s| self.orbit_of(s))
    }

    /// The permutation carrying the orbit representative onto `x`:
    /// `pullback(carried_from_rep(x), rep) = x`. Only meaningful on
    /// presentations that pass validation.
    pub fn carried_from_rep(&self, x: Simplex) -> &Perm {
        &self.carry[x.dim][x.idx]
    }

    /// The full automorphism group of `x`: all permutations of `[p]` whose
    /// action fixes `x`. Enumerates `(p+1)!` candidates, so `p` is capped by
    /// the configured factorial limit.
    pub fn automorphisms(&self, x: Simplex) -> Result<Vec<Perm>, ComplexError> {
        if x.dim > self.factorial_limit {
            return Err(ComplexError::FactorialLimit {
                dim: x.dim,
                limit: self.factorial_limit,
            });
        }
        let fixers: Vec<Perm> = Perm::all(x.dim + 1)
            .into_iter()
            .filter(|perm| self.apply_perm(perm, x) == x)
            .collect();
        debug_assert!(
            {
                let set: BTreeSet<&Perm> = fixers.iter().collect();
                fixers
                    .iter()
                    .flat_map(|a| fixers.iter().map(move |b| a.compose(b)))
                    .all(|c| set.contains(&c))
            },
            "automorphism set is not closed under composition"
        );
        Ok(fixers)
    }

    // ------------------------------------------------------------------
    // Face relations on orbits

    /// Codimension-one orbit face pairs `(lower, upper)`, sorted.
    pub fn cover_orbit_pairs(&self) -> Vec<(OrbitId, OrbitId)> {
        let mut pairs = BTreeSet::new();
        for p in 1..=self.max_dim() {
            for upper_idx in 0..self.orbit_count(p) {
                let upper = OrbitId {
                    dim: p,
                    idx: upper_idx,
                };
                for member in self.orbit_members(upper) {
                    for m in 0..=p {
                        let lower = self.orbit_of(self.face(m, member));
                        pairs.insert((lower, upper));
                    }
                }
            }
        }
        pairs.into_iter().collect()
    }

    /// Strict orbit face relation at every codimension:
    /// `(lower, upper, codim)` triples, sorted. Transitive closure of the
    /// codimension-one relation.
    pub fn face_orbit_relation(&self) -> Vec<(OrbitId, OrbitId, usize)> {
        let covers = self.cover_orbit_pairs();
        let mut below: BTreeMap<OrbitId, BTreeSet<OrbitId>> = BTreeMap::new();
        // Process upper orbits by increasing dimension so lower closures are
        // complete before they are consumed.
        for &(lo, up) in &covers {
            debug_assert_eq!(lo.dim + 1, up.dim);
            let mut faces: BTreeSet<OrbitId> = below.get(&lo).cloned().unwrap_or_default();
            faces.insert(lo);
            below.entry(up).or_default().extend(faces);
        }
        let mut out = Vec::new();
        for (up, faces) in below {
            for lo in faces {
                out.push((lo, up, up.dim - lo.dim));
            }
        }
        out.sort();
        out
    }

    // ------------------------------------------------------------------
    // Subcomplexes

    /// The smallest subcomplex containing `seeds`: closure under the
    /// transposition actions and all face maps. Identifiers are preserved;
    /// trailing empty dimensions are trimmed.
    pub fn subcomplex_generated(&self, seeds: &[Simplex]) -> SymmetricDeltaComplex {
        let mut keep: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.dims.len()];
        let mut queue: VecDeque<Simplex> = VecDeque::new();
        for &s in seeds {
            if keep[s.dim].insert(s.idx) {
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            for i in 0..x.dim {
                let y = self.transposition(i, x);
                if keep[y.dim].insert(y.idx) {
                    queue.push_back(y);
                }
            }
            for m in 0..=x.dim {
                if x.dim >= 1 {
                    let y = self.face(m, x);
                    if keep[y.dim].insert(y.idx) {
                        queue.push_back(y);
                    }
                }
            }
        }
        let top = keep.iter().rposition(|k| !k.is_empty()).unwrap_or(0);
        let data = ComplexData {
            max_dim: top,
            simplices: (0..=top)
                .map(|p| {
                    keep[p]
                        .iter()
                        .map(|&i| self.dims[p].names[i].clone())
                        .collect()
                })
                .collect(),
            transpositions: (1..=top)
                .map(|p| {
                    self.dims[p]
                        .transpositions
                        .iter()
                        .map(|table| {
                            keep[p]
                                .iter()
                                .map(|&x| {
                                    (
                                        self.dims[p].names[x].clone(),
                                        self.dims[p].names[table[x]].clone(),
                                    )
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            faces: (1..=top)
                .map(|p| {
                    self.dims[p]
                        .faces
                        .iter()
                        .map(|table| {
                            keep[p]
                                .iter()
                                .map(|&x| {
                                    (
                                        self.dims[p].names[x].clone(),
                                        self.dims[p - 1].names[table[x]].clone(),
                                    )
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        };
        let mut sub = SymmetricDeltaComplex::from_data(&data)
            .expect("closure of a well-formed complex is well-formed");
        sub.factorial_limit = self.factorial_limit;
        sub
    }

    /// Simplices as a sorted name list, for comparisons in reports/tests.
    pub fn simplex_names(&self) -> Vec<&str> {
        self.dims
            .iter()
            .flat_map(|d| d.names.iter().map(|s| s.as_str()))
            .collect()
    }

    // ------------------------------------------------------------------
    // Validation

    /// Check every presentation relation; an empty report means the tables
    /// genuinely present a symmetric Δ-complex.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for p in 1..=self.max_dim() {
            let count = self.simplex_count(p);
            let name = |idx: usize| &self.dims[p].names[idx];

            // Involution: s_i(s_i(x)) = x.
            for i in 0..p {
                for x in 0..count {
                    let y = self.dims[p].transpositions[i][x];
                    let z = self.dims[p].transpositions[i][y];
                    if z != x {
                        violations.push(Violation {
                            family: RelationFamily::Involution,
                            dim: p,
                            witness: name(x).clone(),
                            detail: format!(
                                "s_{i}(s_{i}({})) = s_{i}({}) = {} != {}",
                                name(x),
                                name(y),
                                name(z),
                                name(x)
                            ),
                        });
                    }
                }
            }

            // Braid: s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}.
            for i in 0..p.saturating_sub(1) {
                let a = &self.dims[p].transpositions[i];
                let b = &self.dims[p].transpositions[i + 1];
                for x in 0..count {
                    let lhs = a[b[a[x]]];
                    let rhs = b[a[b[x]]];
                    if lhs != rhs {
                        violations.push(Violation {
                            family: RelationFamily::Braid,
                            dim: p,
                            witness: name(x).clone(),
                            detail: format!(
                                "s_{i} s_{} s_{i} ({}) = {} != {} = s_{} s_{i} s_{} ({})",
                                i + 1,
                                name(x),
                                name(lhs),
                                name(rhs),
                                i + 1,
                                i + 1,
                                name(x)
                            ),
                        });
                    }
                }
            }

            // Commutation: s_i s_j = s_j s_i for |i - j| >= 2.
            for i in 0..p {
                for j in i + 2..p {
                    let a = &self.dims[p].transpositions[i];
                    let b = &self.dims[p].transpositions[j];
                    for x in 0..count {
                        let lhs = a[b[x]];
                        let rhs = b[a[x]];
                        if lhs != rhs {
                            violations.push(Violation {
                                family: RelationFamily::Commutation,
                                dim: p,
                                witness: name(x).clone(),
                                detail: format!(
                                    "s_{i} s_{j} ({}) = {} != {} = s_{j} s_{i} ({})",
                                    name(x),
                                    name(lhs),
                                    name(rhs),
                                    name(x)
                                ),
                            });
                        }
                    }
                }
            }

            // Simplicial identities: d_n ∘ d_m = d_{m-1} ∘ d_n for n < m.
            if p >= 2 {
                for m in 0..=p {
                    for n_ in 0..m {
                        for x in 0..count {
                            let lhs = self.dims[p - 1].faces[n_][self.dims[p].faces[m][x]];
                            let rhs = self.dims[p - 1].faces[m - 1][self.dims[p].faces[n_][x]];
                            if lhs != rhs {
                                violations.push(Violation {
                                    family: RelationFamily::Simplicial,
                                    dim: p,
                                    witness: name(x).clone(),
                                    detail: format!(
                                        "d_{n_}(d_{m}({})) = {} != {} = d_{}(d_{n_}({}))",
                                        name(x),
                                        self.dims[p - 2].names[lhs],
                                        self.dims[p - 2].names[rhs],
                                        m - 1,
                                        name(x)
                                    ),
                                });
                            }
                        }
                    }
                }
            }

            // Mixed relations: d_m(s_j · x) = τ' · d_{m'}(x) where
            // s_j ∘ h_m = h_{m'} ∘ τ'.
            for j in 0..p {
                let s_j = Perm::adjacent(p + 1, j);
                for m in 0..=p {
                    let h_m = Injection::face_inclusion(p + 1, m);
                    let composite = Injection::from_perm(&s_j).compose(&h_m);
                    let (missed, tau) = composite.factor();
                    debug_assert_eq!(missed.len(), 1);
                    let m_prime = missed[0];
                    debug_assert_eq!(m_prime, s_j.apply(m));
                    for x in 0..count {
                        let sx = self.dims[p].transpositions[j][x];
                        let lhs = self.dims[p].faces[m][sx];
                        let rhs = self
                            .apply_perm(
                                &tau,
                                Simplex {
                                    dim: p - 1,
                                    idx: self.dims[p].faces[m_prime][x],
                                },
                            )
                            .idx;
                        if lhs != rhs {
                            violations.push(Violation {
                                family: RelationFamily::Mixed,
                                dim: p,
                                witness: name(x).clone(),
                                detail: format!(
                                    "d_{m}(s_{j}·{}) = {} != {} = τ'·d_{m_prime}({})",
                                    name(x),
                                    self.dims[p - 1].names[lhs],
                                    self.dims[p - 1].names[rhs],
                                    name(x)
                                ),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{half_triangle, point};
    use super::*;

    fn s(c: &SymmetricDeltaComplex, name: &str) -> Simplex {
        c.simplex(name).unwrap()
    }

    #[test]
    fn half_triangle_loads_and_validates() {
        let c = half_triangle();
        assert_eq!(c.max_dim(), 2);
        assert_eq!(c.simplex_count(0), 2);
        assert_eq!(c.simplex_count(1), 3);
        assert_eq!(c.simplex_count(2), 3);
        let report = c.validate();
        assert!(report.is_valid(), "violations: {:?}", report.violations);
    }

    #[test]
    fn point_validates() {
        assert!(point().validate().is_valid());
    }

    #[test]
    fn orbit_partition_matches_hand_computation() {
        let c = half_triangle();
        assert_eq!(c.orbit_count(0), 2);
        assert_eq!(c.orbit_count(1), 2);
        assert_eq!(c.orbit_count(2), 1);
        let a_orbit = c.orbit_of(s(&c, "a1"));
        assert_eq!(c.orbit_rep_name(a_orbit), "a0");
        let members: Vec<&str> = c
            .orbit_members(a_orbit)
            .into_iter()
            .map(|m| c.name(m))
            .collect();
        assert_eq!(members, vec!["a0", "a1"]);
        let t_orbit = c.orbit_of(s(&c, "T2"));
        assert_eq!(c.orbit_rep_name(t_orbit), "T0");
        assert_eq!(c.orbit_size(t_orbit), 3);
        assert_eq!(c.orbit_rep_name(c.orbit_of(s(&c, "c"))), "c");
    }

    #[test]
    fn orbit_stabilizer_counts_multiply_to_factorial() {
        let c = half_triangle();
        for o in c.all_orbits() {
            let rep = c.orbit_rep(o);
            let aut = c.automorphisms(rep).unwrap();
            let fact: usize = (1..=o.dim + 1).product();
            assert_eq!(c.orbit_size(o) * aut.len(), fact, "orbit {:?}", o);
            // Every member has the same stabilizer size.
            for m in c.orbit_members(o) {
                assert_eq!(c.automorphisms(m).unwrap().len(), aut.len());
            }
        }
    }

    #[test]
    fn automorphisms_of_named_simplices() {
        let c = half_triangle();
        let aut_t0 = c.automorphisms(s(&c, "T0")).unwrap();
        assert_eq!(aut_t0.len(), 2);
        assert!(aut_t0.iter().any(|p| p.is_identity()));
        assert!(aut_t0
            .iter()
            .any(|p| p.is_transposition() && p.transposed_pair() == Some((1, 2))));
        assert_eq!(c.automorphisms(s(&c, "a0")).unwrap().len(), 1);
        assert_eq!(c.automorphisms(s(&c, "c")).unwrap().len(), 2);
        assert_eq!(c.automorphisms(s(&c, "v")).unwrap().len(), 1);
    }

    #[test]
    fn factorial_limit_is_enforced() {
        let mut c = half_triangle();
        c.set_factorial_limit(1);
        let err = c.automorphisms(s(&c, "T0")).unwrap_err();
        assert!(matches!(
            err,
            ComplexError::FactorialLimit { dim: 2, limit: 1 }
        ));
    }

    #[test]
    fn carried_from_rep_reaches_every_member() {
        let c = half_triangle();
        for p in 0..=c.max_dim() {
            for x in c.simplices_at(p) {
                let rep = c.orbit_rep(c.orbit_of(x));
                let h = c.carried_from_rep(x);
                assert_eq!(c.apply_perm(h, rep), x);
            }
        }
    }

    #[test]
    fn pullback_composes_contravariantly() {
        let c = half_triangle();
        // X(θ1 ∘ θ2) = X(θ2) ∘ X(θ1) for every composable pair into dim 2.
        for q in 1..=2usize {
            for theta1 in Injection::all(q + 1, 3) {
                for r in 1..=q {
                    for theta2 in Injection::all(r, q + 1) {
                        let composite = theta1.compose(&theta2);
                        for x in c.simplices_at(2) {
                            let direct = c.pullback(&composite, x);
                            let staged = c.pullback(&theta2, c.pullback(&theta1, x));
                            assert_eq!(direct, staged);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_of_vertex_positions() {
        let c = half_triangle();
        // T0 has vertex v at position 0 and w at positions 1 and 2: the loop
        // edge c = d_0(T0) spans positions {1,2}, and the automorphism of T0
        // swapping those two positions confirms they carry the same vertex.
        let at = |pos: usize| {
            let inj = Injection::new(vec![pos], 3).unwrap();
            c.name(c.pullback(&inj, s(&c, "T0"))).to_string()
        };
        assert_eq!(at(0), "v");
        assert_eq!(at(1), "w");
        assert_eq!(at(2), "w");
    }

    #[test]
    fn cover_relation_matches_hand_computation() {
        let c = half_triangle();
        let pairs: Vec<(String, String)> = c
            .cover_orbit_pairs()
            .into_iter()
            .map(|(lo, up)| {
                (
                    c.orbit_rep_name(lo).to_string(),
                    c.orbit_rep_name(up).to_string(),
                )
            })
            .collect();
        let expect = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(
            pairs,
            vec![
                expect("v", "a0"),
                expect("w", "a0"),
                expect("w", "c"),
                expect("a0", "T0"),
                expect("c", "T0"),
            ]
        );
    }

    #[test]
    fn face_orbit_relation_is_transitive_and_matches_exhaustive_pullback() {
        let c = half_triangle();
        let rel: BTreeSet<(OrbitId, OrbitId, usize)> =
            c.face_orbit_relation().into_iter().collect();
        // Independent oracle: enumerate every injection between dimensions
        // and record which orbit pairs are realized.
        let mut oracle = BTreeSet::new();
        for p in 0..=c.max_dim() {
            for q in 0..p {
                for inj in Injection::all(q + 1, p + 1) {
                    for x in c.simplices_at(p) {
                        let y = c.pullback(&inj, x);
                        oracle.insert((c.orbit_of(y), c.orbit_of(x), p - q));
                    }
                }
            }
        }
        assert_eq!(rel, oracle);
        // Transitivity.
        for &(a, b, _) in &rel {
            for &(b2, c2, _) in &rel {
                if b == b2 {
                    assert!(rel.contains(&(a, c2, c2.dim - a.dim)));
                }
            }
        }
        // Antisymmetry is structural: lower dim < upper dim always.
        assert!(rel.iter().all(|&(lo, up, codim)| lo.dim + codim == up.dim));
    }

    #[test]
    fn subcomplex_generated_by_an_edge() {
        let c = half_triangle();
        let sub = c.subcomplex_generated(&[s(&c, "a0")]);
        assert_eq!(sub.max_dim(), 1);
        assert_eq!(sub.simplex_names(), vec!["v", "w", "a0", "a1"]);
        assert!(sub.validate().is_valid());
    }

    #[test]
    fn subcomplex_generated_by_a_triangle_is_everything() {
        let c = half_triangle();
        let sub = c.subcomplex_generated(&[s(&c, "T0")]);
        assert_eq!(sub.simplex_names(), c.simplex_names());
        assert!(sub.validate().is_valid());
    }

    #[test]
    fn subcomplex_of_nothing_is_empty() {
        let c = half_triangle();
        let sub = c.subcomplex_generated(&[]);
        assert!(sub.is_empty());
        assert_eq!(sub.max_dim(), 0);
        assert!(sub.validate().is_valid());
    }

    #[test]
    fn broken_involution_is_reported_with_witness() {
        let c = half_triangle();
        let mut data = c.to_data();
        // Make s_0 on dimension 1 fix a0 while still sending a1 to a0.
        data.transpositions[0][0].insert("a0".into(), "a0".into());
        let broken = SymmetricDeltaComplex::from_data(&data).unwrap();
        let report = broken.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.family == RelationFamily::Involution && v.detail.contains("a0")));
    }

    #[test]
    fn broken_mixed_relation_is_reported() {
        let c = half_triangle();
        let mut data = c.to_data();
        // Corrupt d_0 on dimension 2: send T1 to a1 instead of a0.
        data.faces[1][0].insert("T1".into(), "a1".into());
        let broken = SymmetricDeltaComplex::from_data(&data).unwrap();
        let report = broken.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v.family, RelationFamily::Mixed | RelationFamily::Simplicial)));
    }

    #[test]
    fn structural_errors_are_loud() {
        let c = half_triangle();
        let mut data = c.to_data();
        data.faces[0][0].remove("a0");
        assert!(matches!(
            SymmetricDeltaComplex::from_data(&data),
            Err(PresentationError::MissingEntry { .. })
        ));

        let mut data2 = c.to_data();
        data2.faces[0][0].insert("a0".into(), "nope".into());
        assert!(matches!(
            SymmetricDeltaComplex::from_data(&data2),
            Err(PresentationError::UnknownName { .. })
        ));

        let mut data3 = c.to_data();
        data3.simplices[0].push("a0".into());
        assert!(matches!(
            SymmetricDeltaComplex::from_data(&data3),
            Err(PresentationError::DuplicateName(_))
        ));

        let mut data4 = c.to_data();
        data4.transpositions.pop();
        assert!(matches!(
            SymmetricDeltaComplex::from_data(&data4),
            Err(PresentationError::FieldLength { .. })
        ));
    }

    #[test]
    fn to_data_round_trips() {
        let c = half_triangle();
        let data = c.to_data();
        let c2 = SymmetricDeltaComplex::from_data(&data).unwrap();
        assert_eq!(data, c2.to_data());
    }
}
