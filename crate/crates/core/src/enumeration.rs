//! Counting switching classes with `λ_max ≤ 3`.
//!
//! The lattice route works in `E_8` with the switching root `r = e_7 + e_8`.
//! Subsets of the 28 pair-classes of `N_r(E_8)` map to switching classes via
//! [`phi`]; orbits of the stabilizer `W(E_8)_r` on those subsets are counted
//! with [`crate::orbits`]. The families `K_n` (from `A_{n+1}`) and `D_{s,t}`
//! (from `D_m`) supply the classes that need rank `3I − S` at least 8.
//!
//! [`brute_force_counts`] is an independent oracle: it enumerates every
//! labelled graph and never touches a lattice.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand_core::RngCore;

use crate::canon::{canonical_form, canonical_key, check_enumeration_size, edge_slots, switching_keys_in_range, SwitchingClassKey};
use crate::graph::Graph;
use crate::lattice::{
    gram_to_graph, inner, orth_complement_in_e8, pair_classes, rank_and_discriminant, span_basis, LatticeError,
    LatticeSpec, PairClass, RootVector,
};
use crate::linalg::{is_psd, max_eig_le, rank};
use crate::orbits::{
    burnside_subset_counts, induced_action_on_classes, mask_to_points, points_to_mask, stabilizer_of_root,
    subset_orbit_transversal, weyl_group_on_roots_with_base, OrbitError, SubsetCountTable,
};
use crate::perm::PermGroup;

/// Number of pair-classes of `N_r(E_8)`.
pub const CLASS_COUNT: usize = 28;

/// Largest `n` covered by the `s` / `s_e` tables.
pub const S_TABLE_MAX: usize = 28;

/// Largest `n` whose `s_e(n)` is read off transversal representatives.
pub const SMALL_EXACT_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Enumeration(#[from] crate::canon::EnumerationError),
    #[error("class subset must hold distinct indices below {CLASS_COUNT}: {0:?}")]
    InvalidSubset(Vec<usize>),
    #[error("no D_{{m-2,n-m+2}} witness for (n, m) = ({n}, {m}); need m ≥ 4 and 2(m−2) ≥ n ≥ m−1")]
    InfeasibleFamily { n: usize, m: usize },
    #[error("witness vectors do not generate {0}")]
    GenerationFailed(String),
    #[error("table bound {n} exceeds {limit}")]
    TableTooLarge { n: usize, limit: usize },
    #[error("expected {expected} counts, got {found}")]
    CountLength { expected: usize, found: usize },
    #[error("orbit count {0} does not fit in 64 bits")]
    CountOverflow(String),
}

/// `E_8` with its switching root, pair-classes and the groups acting on them.
#[derive(Clone, Debug)]
pub struct E8Frame {
    pub roots: Vec<RootVector>,
    pub switching_root: RootVector,
    pub switching_root_index: usize,
    pub classes: Vec<PairClass>,
    /// `W(E_8)` on the 240 roots, with the switching root as first base point.
    pub weyl: PermGroup,
    /// `W(E_8)_r`.
    pub stabilizer: PermGroup,
    /// Image of `W(E_8)_r` on the classes, base `0, 1, …, 27`.
    pub class_group: PermGroup,
}

impl E8Frame {
    pub fn new() -> Result<Self, EnumError> {
        let spec = LatticeSpec::e8();
        let r = spec.standard_switching_root();
        let roots = spec.roots();
        let r_index = roots.binary_search(&r).map_err(|_| LatticeError::NotARoot(r.clone()))?;
        let weyl = weyl_group_on_roots_with_base(&spec, &[r_index])?.group;
        let stabilizer = stabilizer_of_root(&weyl, r_index)?;
        let classes = pair_classes(&spec, &r)?;
        let class_group = induced_action_on_classes(&stabilizer, &roots, &classes)?;
        Ok(E8Frame { roots, switching_root: r, switching_root_index: r_index, classes, weyl, stabilizer, class_group })
    }

    /// Class representatives `u_i` for a subset of class indices.
    pub fn representatives(&self, subset: &[usize]) -> Result<Vec<RootVector>, EnumError> {
        check_subset(subset)?;
        Ok(subset.iter().map(|&i| self.classes[i].representative.clone()).collect())
    }
}

fn check_subset(subset: &[usize]) -> Result<(), EnumError> {
    let distinct: BTreeSet<usize> = subset.iter().copied().collect();
    if distinct.len() != subset.len() || subset.iter().any(|&i| i >= CLASS_COUNT) {
        return Err(EnumError::InvalidSubset(subset.to_vec()));
    }
    Ok(())
}

/// Graph with `A(G) + 2I` the Gram matrix of the class representatives.
pub fn phi_graph(frame: &E8Frame, subset: &[usize]) -> Result<Graph, EnumError> {
    Ok(gram_to_graph(&frame.representatives(subset)?)?)
}

/// Switching class of the Gram graph of a class subset.
pub fn phi(frame: &E8Frame, subset: &[usize]) -> Result<SwitchingClassKey, EnumError> {
    Ok(canonical_key(&phi_graph(frame, subset)?))
}

/// `ω(n)` for `n = 0..=28` together with the raw orbit counts `c(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTable {
    pub omega: Vec<u64>,
    pub raw_orbit_counts: Vec<u64>,
}

impl OmegaTable {
    /// Applies the single correction `ω(6) = c(6) − 1`: two orbits of
    /// 6-subsets share the switching class of `K_6`.
    pub fn from_counts(counts: &SubsetCountTable) -> Result<Self, EnumError> {
        if counts.counts.len() != CLASS_COUNT + 1 {
            return Err(EnumError::CountLength { expected: CLASS_COUNT + 1, found: counts.counts.len() });
        }
        let raw = counts
            .counts
            .iter()
            .map(|c| c.to_u64().ok_or_else(|| EnumError::CountOverflow(format!("{c}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut omega = raw.clone();
        omega[6] -= 1;
        Ok(OmegaTable { omega, raw_orbit_counts: raw })
    }

    /// `ω(n)`, zero beyond 28.
    pub fn omega(&self, n: usize) -> u64 {
        self.omega.get(n).copied().unwrap_or(0)
    }
}

pub fn omega_table(frame: &E8Frame) -> Result<OmegaTable, EnumError> {
    OmegaTable::from_counts(&burnside_subset_counts(&frame.class_group)?)
}

/// Witness for one switching class: root vectors, switching root and the
/// lattice they generate.
#[derive(Clone, Debug)]
pub struct FamilyWitness {
    pub vectors: Vec<RootVector>,
    pub switching_root: RootVector,
    pub lattice: LatticeSpec,
    pub graph: Graph,
}

impl FamilyWitness {
    fn verify_generation(&self) -> Result<(), EnumError> {
        let mut all = self.vectors.clone();
        all.push(self.switching_root.clone());
        for v in &self.vectors {
            if inner(v, &self.switching_root)? != 1 {
                return Err(EnumError::GenerationFailed(format!("{} (vector off N_r)", self.lattice)));
            }
        }
        if crate::lattice::generates(&all, &self.lattice)? {
            Ok(())
        } else {
            Err(EnumError::GenerationFailed(format!("{}", self.lattice)))
        }
    }

    pub fn key(&self) -> SwitchingClassKey {
        canonical_key(&self.graph)
    }
}

/// `{e_i − e_{n+2} : i = 1..n}` with `r = e_{n+1} − e_{n+2}` inside `A_{n+1}`.
pub fn construct_kn_witness(n: usize) -> Result<FamilyWitness, EnumError> {
    let lattice = LatticeSpec::a(n + 1)?;
    let dim = lattice.ambient_dim();
    let vectors: Vec<RootVector> = (0..n).map(|i| RootVector::difference(dim, i, n + 1)).collect();
    let switching_root = RootVector::difference(dim, n, n + 1);
    let graph = gram_to_graph(&vectors)?;
    let witness = FamilyWitness { vectors, switching_root, lattice, graph };
    witness.verify_generation()?;
    Ok(witness)
}

pub fn construct_kn_class(n: usize) -> Result<SwitchingClassKey, EnumError> {
    Ok(construct_kn_witness(n)?.key())
}

/// `m ≥ 4` and `2(m − 2) ≥ n ≥ m − 1`.
pub fn dst_feasible(n: usize, m: usize) -> bool {
    m >= 4 && 2 * (m - 2) >= n && n + 1 >= m
}

/// `{e_m + e_i : i ≤ m−2} ∪ {e_m − e_i : i ≤ n−m+2}` with `r = e_{m−1} + e_m`
/// inside `D_m`; the Gram graph is `D_{m−2, n−m+2}`.
pub fn construct_dst_witness(n: usize, m: usize) -> Result<FamilyWitness, EnumError> {
    if !dst_feasible(n, m) {
        return Err(EnumError::InfeasibleFamily { n, m });
    }
    let lattice = LatticeSpec::d(m)?;
    let top = m - 1;
    let mut vectors: Vec<RootVector> = (0..m - 2).map(|i| RootVector::sum(m, top, i)).collect();
    vectors.extend((0..n + 2 - m).map(|i| RootVector::difference(m, top, i)));
    let switching_root = RootVector::sum(m, m - 2, top);
    let graph = gram_to_graph(&vectors)?;
    let witness = FamilyWitness { vectors, switching_root, lattice, graph };
    witness.verify_generation()?;
    Ok(witness)
}

pub fn construct_dst_class(n: usize, m: usize) -> Result<SwitchingClassKey, EnumError> {
    Ok(construct_dst_witness(n, m)?.key())
}

/// `true` iff two graphs are isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && canonical_form(a).graph == canonical_form(b).graph
}

/// `rank(3I − S(G))`.
pub fn seidel_corank_three(g: &Graph) -> usize {
    rank(&g.seidel_matrix().shifted_negation(3))
}

/// `m` from `max(9, ⌈n/2⌉ + 2)` through `upper`.
fn d_lattice_range(n: usize, upper: usize) -> RangeInclusive<usize> {
    9.max(n.div_ceil(2) + 2)..=upper
}

/// `D_m` contributing a class to `s(n)` for `n ≥ 8`.
pub fn d_range(n: usize) -> RangeInclusive<usize> {
    d_lattice_range(n, n + 1)
}

/// `D_m` contributing a class to `s_e(n)` for `n ≥ 9`.
pub fn d_range_exact(n: usize) -> RangeInclusive<usize> {
    d_lattice_range(n, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactSource {
    /// Distinct representative keys with `rank(3I − S) < n`.
    Representatives,
    /// `ω(n)` plus the `D_m` classes with `m ≤ n`.
    Formula,
}

/// How `s(n)` and `s_e(n)` decompose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SRow {
    pub n: usize,
    pub omega: u64,
    /// `K_n` from `A_{n+1}` counted separately (only for `n ≥ 8`).
    pub complete_graph: bool,
    /// `m` with a `D_{m−2,n−m+2}` class in `s(n)`, beyond `ω(n)`.
    pub d_lattices: Vec<usize>,
    pub s: u64,
    pub s_e: u64,
    pub exact_source: ExactSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STable {
    pub s: Vec<u64>,
    pub s_e: Vec<u64>,
    pub rows: Vec<SRow>,
}

/// Assembles `s` and `s_e` for `0..=n_max`; `small_exact[n]` supplies
/// `s_e(n)` for `n ≤ 8` (see [`exact_count`]).
pub fn s_table(n_max: usize, omega: &OmegaTable, small_exact: &[u64]) -> Result<STable, EnumError> {
    if n_max > S_TABLE_MAX {
        return Err(EnumError::TableTooLarge { n: n_max, limit: S_TABLE_MAX });
    }
    let needed = n_max.min(SMALL_EXACT_MAX) + 1;
    if small_exact.len() < needed {
        return Err(EnumError::CountLength { expected: needed, found: small_exact.len() });
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let w = omega.omega(n);
        let row = if n <= 7 {
            SRow {
                n,
                omega: w,
                complete_graph: false,
                d_lattices: Vec::new(),
                s: w,
                s_e: small_exact[n],
                exact_source: ExactSource::Representatives,
            }
        } else {
            let d_lattices: Vec<usize> = d_range(n).collect();
            let s = w + 1 + d_lattices.len() as u64;
            let (s_e, exact_source) = if n <= SMALL_EXACT_MAX {
                (small_exact[n], ExactSource::Representatives)
            } else {
                (w + d_range_exact(n).count() as u64, ExactSource::Formula)
            };
            SRow { n, omega: w, complete_graph: true, d_lattices, s, s_e, exact_source }
        };
        rows.push(row);
    }
    Ok(STable { s: rows.iter().map(|r| r.s).collect(), s_e: rows.iter().map(|r| r.s_e).collect(), rows })
}

/// One orbit representative on `n`-subsets of classes, mapped through `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representative {
    pub n: usize,
    pub subset: Vec<usize>,
    pub key: SwitchingClassKey,
    /// `rank(3I − S)`.
    pub rank: usize,
    pub bounded: bool,
    /// Root lattice generated by the representatives and `r`, e.g. `A7`.
    pub lattice: String,
}

pub fn describe_subset(frame: &E8Frame, subset: &[usize]) -> Result<Representative, EnumError> {
    let g = phi_graph(frame, subset)?;
    let mut vectors = frame.representatives(subset)?;
    vectors.push(frame.switching_root.clone());
    Ok(Representative {
        n: subset.len(),
        subset: subset.to_vec(),
        key: canonical_key(&g),
        rank: seidel_corank_three(&g),
        bounded: max_eig_le(&g.seidel_matrix(), 3),
        lattice: root_lattice_name(&frame.roots, &vectors)?,
    })
}

/// The lexicographically minimal orbit representatives of size `n`.
pub fn transversal(frame: &E8Frame, n: usize) -> Result<Vec<Vec<usize>>, EnumError> {
    Ok(subset_orbit_transversal(&frame.class_group, n)?.into_iter().map(mask_to_points).collect())
}

pub fn representatives(frame: &E8Frame, n: usize) -> Result<Vec<Representative>, EnumError> {
    transversal(frame, n)?.iter().map(|s| describe_subset(frame, s)).collect()
}

/// Distinct switching classes among `reps` with an eigenvalue exactly 3.
pub fn exact_count(reps: &[Representative]) -> u64 {
    reps.iter()
        .filter(|r| r.bounded && r.rank < r.n)
        .map(|r| &r.key)
        .collect::<BTreeSet<_>>()
        .len() as u64
}

pub fn distinct_keys(reps: &[Representative]) -> usize {
    reps.iter().map(|r| &r.key).collect::<BTreeSet<_>>().len()
}

/// `s_e(n)` for `n = 0..=8` from transversal representatives.
pub fn small_exact_counts(frame: &E8Frame) -> Result<Vec<u64>, EnumError> {
    (0..=SMALL_EXACT_MAX).map(|n| Ok(exact_count(&representatives(frame, n)?))).collect()
}

/// Single-threaded `ω` and `s` tables.
pub fn s_table_from_frame(frame: &E8Frame, n_max: usize) -> Result<STable, EnumError> {
    let omega = omega_table(frame)?;
    s_table(n_max, &omega, &small_exact_counts(frame)?)
}

// membership in the row span of an echelon basis with positive pivots
fn in_span(basis: &[Vec<BigInt>], v: &RootVector) -> bool {
    let mut x: Vec<BigInt> = v.coords2().iter().map(|&c| BigInt::from(c)).collect();
    for row in basis {
        let Some(c) = row.iter().position(|e| !e.is_zero()) else { continue };
        if x[c].is_zero() {
            continue;
        }
        if !(&x[c] % &row[c]).is_zero() {
            return false;
        }
        let q = &x[c] / &row[c];
        for (xi, ri) in x.iter_mut().zip(row) {
            *xi -= &q * ri;
        }
    }
    x.iter().all(Zero::is_zero)
}

/// Name of the root lattice spanned by `vectors`, as a sum of irreducible
/// components such as `D4+A1`. `ambient_roots` must contain every root of
/// the span.
pub fn root_lattice_name(ambient_roots: &[RootVector], vectors: &[RootVector]) -> Result<String, EnumError> {
    let basis: Vec<Vec<BigInt>> = span_basis(vectors)
        .iter()
        .map(|b| b.coords2().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let roots: Vec<&RootVector> = ambient_roots.iter().filter(|v| in_span(&basis, v)).collect();
    let mut component = vec![usize::MAX; roots.len()];
    let mut parts: Vec<(u8, usize)> = Vec::new();
    for start in 0..roots.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        component[start] = id;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let a = members[k];
            k += 1;
            for b in 0..roots.len() {
                if component[b] == usize::MAX && inner(roots[a], roots[b])? != 0 {
                    component[b] = id;
                    members.push(b);
                }
            }
        }
        let vecs: Vec<RootVector> = members.iter().map(|&i| roots[i].clone()).collect();
        let (rk, _) = rank_and_discriminant(&vecs)?;
        let count = members.len();
        let family = if count == rk * (rk + 1) {
            b'A'
        } else if rk >= 4 && count == 2 * rk * (rk - 1) {
            b'D'
        } else if matches!((rk, count), (6, 72) | (7, 126) | (8, 240)) {
            b'E'
        } else {
            b'?'
        };
        parts.push((family, rk));
    }
    if parts.is_empty() {
        return Ok(String::from("0"));
    }
    // E before D before A, larger rank first
    parts.sort_by_key(|&(f, r)| (match f { b'E' => 0, b'D' => 1, b'A' => 2, _ => 3 }, usize::MAX - r));
    let names: Vec<String> = parts.iter().map(|&(f, r)| format!("{}{}", f as char, r)).collect();
    Ok(names.join("+"))
}

/// Switching-class counts from a brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct OracleCounts {
    /// Classes with `λ_max ≤ 3`.
    pub s: u64,
    /// Those with an eigenvalue exactly 3.
    pub s_e: u64,
    /// Those with `rank(3I − S) ≤ 7`.
    pub omega: u64,
}

/// Classifies switching-class keys of order `n`.
pub fn oracle_counts_from_keys<'a>(n: usize, keys: impl IntoIterator<Item = &'a SwitchingClassKey>) -> OracleCounts {
    let mut out = OracleCounts::default();
    for key in keys {
        let s = key.graph().seidel_matrix();
        if !max_eig_le(&s, 3) {
            continue;
        }
        let rk = rank(&s.shifted_negation(3));
        out.s += 1;
        if rk < n {
            out.s_e += 1;
        }
        if rk <= 7 {
            out.omega += 1;
        }
    }
    out
}

/// Exhaustive oracle over all `2^(n(n−1)/2)` labelled graphs, `n ≤ 7`.
pub fn brute_force_counts(n: usize) -> Result<OracleCounts, EnumError> {
    check_enumeration_size(n, false)?;
    let keys = switching_keys_in_range(n, 0..1u64 << edge_slots(n));
    Ok(oracle_counts_from_keys(n, &keys))
}

/// One of the two 6-subsets whose class is `[S(K_6)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberWitness {
    pub subset: Vec<usize>,
    pub lattice_rank: usize,
    pub discriminant: BigInt,
    pub lattice: String,
    pub complement_min_norm: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub orbit_count: usize,
    pub distinct_keys: usize,
    pub complete_graph_key: SwitchingClassKey,
    /// Keys hit by more than one orbit.
    pub repeated_keys: Vec<SwitchingClassKey>,
    pub witnesses: Vec<FiberWitness>,
    pub failures: Vec<String>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Maps the 6-subset orbits through `φ` and inspects the one repeated key.
pub fn verify_fiber_n6(frame: &E8Frame) -> Result<FiberReport, EnumError> {
    let reps = transversal(frame, 6)?;
    let mut keyed: Vec<(SwitchingClassKey, Vec<usize>)> =
        reps.iter().map(|s| Ok((phi(frame, s)?, s.clone()))).collect::<Result<_, EnumError>>()?;
    keyed.sort();
    let distinct: BTreeSet<&SwitchingClassKey> = keyed.iter().map(|(k, _)| k).collect();
    let distinct_keys = distinct.len();
    let mut repeated_keys: Vec<SwitchingClassKey> = Vec::new();
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 && repeated_keys.last() != Some(&w[0].0) {
            repeated_keys.push(w[0].0.clone());
        }
    }
    let complete_graph_key = canonical_key(&Graph::complete(6).expect("6 vertices"));
    let mut failures = Vec::new();
    if reps.len() != 10 {
        failures.push(format!("expected 10 orbits of 6-subsets, found {}", reps.len()));
    }
    if distinct_keys != 9 {
        failures.push(format!("expected 9 distinct keys, found {distinct_keys}"));
    }
    if repeated_keys != [complete_graph_key.clone()] {
        failures.push(format!("repeated keys {repeated_keys:?}, expected only the K_6 class"));
    }
    let mut witnesses = Vec::new();
    for (_, subset) in keyed.iter().filter(|(k, _)| *k == complete_graph_key) {
        let mut vectors = frame.representatives(subset)?;
        vectors.push(frame.switching_root.clone());
        let (lattice_rank, discriminant) = rank_and_discriminant(&vectors)?;
        let complement = orth_complement_in_e8(&vectors)?;
        witnesses.push(FiberWitness {
            subset: subset.clone(),
            lattice_rank,
            discriminant,
            lattice: root_lattice_name(&frame.roots, &vectors)?,
            complement_min_norm: complement.min_norm,
        });
    }
    if witnesses.len() != 2 {
        failures.push(format!("expected 2 witnesses for the K_6 class, found {}", witnesses.len()));
    }
    for w in &witnesses {
        if w.lattice_rank != 7 || w.discriminant != BigInt::from(8) || w.lattice != "A7" {
            failures.push(format!(
                "witness {:?} spans {} of rank {} and discriminant {}, expected A7",
                w.subset, w.lattice, w.lattice_rank, w.discriminant
            ));
        }
    }
    let mut norms: Vec<Option<i64>> = witnesses.iter().map(|w| w.complement_min_norm).collect();
    norms.sort();
    if norms != [Some(2), Some(8)] {
        failures.push(format!("complement minimal norms {norms:?}, expected 2 and 8"));
    }
    Ok(FiberReport { orbit_count: reps.len(), distinct_keys, complete_graph_key, repeated_keys, witnesses, failures })
}

/// Outcome of comparing `λ_max(S(G)) ≤ 3` with `A(G̃) + 2I ⪰ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaoCheck {
    pub seidel_bounded: bool,
    pub cone_psd: bool,
    /// `rank(3I − S(G))` and `rank(A(G̃) + 2I)` when both conditions hold.
    pub ranks: Option<(usize, usize)>,
}

impl CaoCheck {
    pub fn holds(&self) -> bool {
        self.seidel_bounded == self.cone_psd && self.ranks.is_none_or(|(a, b)| a + 1 == b)
    }
}

pub fn cao_check(g: &Graph) -> Result<CaoCheck, EnumError> {
    let cone = g.cone()?;
    let seidel = g.seidel_matrix();
    let gram = cone.adjacency_matrix().add_scalar(2);
    let seidel_bounded = max_eig_le(&seidel, 3);
    let cone_psd = is_psd(&gram);
    let ranks = (seidel_bounded && cone_psd).then(|| (rank(&seidel.shifted_negation(3)), rank(&gram)));
    Ok(CaoCheck { seidel_bounded, cone_psd, ranks })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaoReport {
    pub samples: usize,
    pub bounded: usize,
    pub rank_checks: usize,
    /// Edge lists of counterexamples.
    pub failures: Vec<(usize, Vec<(usize, usize)>)>,
}

impl CaoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Largest order accepted by [`verify_cao`].
pub const CAO_MAX_ORDER: usize = 10;

/// Random graphs on `1..=n_max` vertices with edge density drawn per sample.
pub fn verify_cao<R: RngCore + ?Sized>(n_max: usize, samples: usize, rng: &mut R) -> Result<CaoReport, EnumError> {
    if n_max == 0 || n_max > CAO_MAX_ORDER {
        return Err(EnumError::TableTooLarge { n: n_max, limit: CAO_MAX_ORDER });
    }
    let mut report = CaoReport { samples, ..CaoReport::default() };
    for _ in 0..samples {
        let n = 1 + (rng.next_u32() as usize % n_max);
        let density = rng.next_u32() % 9;
        let mut g = Graph::empty(n).expect("n ≤ 10");
        for i in 0..n {
            for j in i + 1..n {
                if rng.next_u32() % 8 < density {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        let check = cao_check(&g)?;
        if check.seidel_bounded {
            report.bounded += 1;
        }
        if check.ranks.is_some() {
            report.rank_checks += 1;
        }
        if !check.holds() {
            report.failures.push((n, g.edges().collect()));
        }
    }
    Ok(report)
}

/// Class subset as a bitmask over the 28 classes.
pub fn subset_mask(subset: &[usize]) -> Result<u64, EnumError> {
    check_subset(subset)?;
    Ok(points_to_mask(subset))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kn_witnesses() {
        for n in 0..=10 {
            let w = construct_kn_witness(n).unwrap();
            assert_eq!(w.key(), canonical_key(&Graph::complete(n).unwrap()), "n = {n}");
        }
        let k6 = Graph::complete(6).unwrap();
        assert_eq!(seidel_corank_three(&k6), 6);
    }

    #[test]
    fn dst_witnesses() {
        let w = construct_dst_witness(7, 8).unwrap();
        let mut expected = Graph::complete(7).unwrap();
        expected.remove_edge(0, 1);
        assert!(isomorphic(&w.graph, &expected));
        let w = construct_dst_witness(12, 9).unwrap();
        let s = w.graph.seidel_matrix();
        assert!(max_eig_le(&s, 3));
        assert_eq!(seidel_corank_three(&w.graph), 8);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(isomorphic(&construct_dst_witness(3, 4).unwrap().graph, &p3));
        assert!(isomorphic(&construct_dst_witness(4, 4).unwrap().graph, &Graph::cycle(4).unwrap()));
        assert!(matches!(construct_dst_witness(5, 4), Err(EnumError::InfeasibleFamily { .. })));
        assert!(matches!(construct_dst_witness(3, 3), Err(EnumError::InfeasibleFamily { .. })));
    }

    #[test]
    fn ranges() {
        assert_eq!(d_range(8), 9..=9);
        assert_eq!(d_range(13), 9..=14);
        assert_eq!(d_range(28), 16..=29);
        assert_eq!(d_range_exact(9).count(), 1);
    }

    #[test]
    fn cao_small_cases() {
        let k6 = cao_check(&Graph::complete(6).unwrap()).unwrap();
        assert_eq!(k6.ranks, Some((6, 7)));
        let e5 = cao_check(&Graph::empty(5).unwrap()).unwrap();
        assert!(!e5.seidel_bounded && !e5.cone_psd);
        let e4 = cao_check(&Graph::empty(4).unwrap()).unwrap();
        assert_eq!(e4.ranks, Some((3, 4)));
    }

    #[test]
    fn oracle_small() {
        let expect = [(1, 0, 1), (1, 0, 1), (1, 0, 1), (2, 0, 2), (3, 1, 3), (5, 1, 5)];
        for (n, &(s, s_e, omega)) in expect.iter().enumerate() {
            assert_eq!(brute_force_counts(n).unwrap(), OracleCounts { s, s_e, omega }, "n = {n}");
        }
        assert!(brute_force_counts(8).is_err());
    }

    #[test]
    fn lattice_names() {
        let e8 = LatticeSpec::e8();
        let roots = e8.roots();
        assert_eq!(root_lattice_name(&roots, &roots).unwrap(), "E8");
        let a2 = [RootVector::difference(8, 0, 1), RootVector::difference(8, 1, 2)];
        assert_eq!(root_lattice_name(&roots, &a2).unwrap(), "A2");
        let split = [RootVector::difference(8, 0, 1), RootVector::difference(8, 4, 5)];
        assert_eq!(root_lattice_name(&roots, &split).unwrap(), "A1+A1");
        let d4: Vec<RootVector> = LatticeSpec::d(4).unwrap().roots().iter().map(|v| {
            let mut c = v.coords2().to_vec();
            c.resize(8, 0);
            RootVector::from_doubled(c)
        }).collect();
        assert_eq!(root_lattice_name(&roots, &d4).unwrap(), "D4");
    }
}
