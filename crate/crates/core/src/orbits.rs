//! Weyl groups acting on roots, induced actions on pair-classes, and subset
//! orbits of small permutation groups.
//!
//! Subsets of a point set of degree at most 64 are stored as `u64` masks.
//! Orbit counts use the Cauchy–Frobenius formula over an exhaustive walk of
//! the group; orbit representatives are lexicographically minimal images
//! found by a backtrack over a stabilizer chain with base `0, 1, 2, …`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::lattice::{reflect, LatticeError, LatticeSpec, PairClass, RootVector};
use crate::perm::{PermError, PermGroup, Permutation};

/// Largest group order [`burnside_subset_counts`] walks element by element.
pub const ELEMENT_LIMIT: u64 = 20_000_000;

/// Subset sizes up to this bound (or down from `degree` minus it) admit a transversal.
pub const TRANSVERSAL_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("generator {generator} sends class {class} outside the class set")]
    ClassEscape { generator: usize, class: usize },
    #[error("group order {order} exceeds the enumeration limit {ELEMENT_LIMIT}")]
    TooLarge { order: BigUint },
    #[error("subset operations need degree at most 64, got {0}")]
    DegreeTooLarge(usize),
    #[error("the stabilizer chain must have base 0, 1, 2, …")]
    BaseNotPrefix,
    #[error(
        "transversal of {n}-subsets of {degree} points is out of range; \
         use n ≤ {TRANSVERSAL_LIMIT} or complement sizes n ≥ {}",
        degree.saturating_sub(TRANSVERSAL_LIMIT)
    )]
    InfeasibleSize { n: usize, degree: usize },
    #[error("cycle-type histogram covers {found} elements, group order is {order}")]
    IncompleteHistogram { found: BigUint, order: BigUint },
}

/// A Weyl group realised on the sorted root list of its lattice.
#[derive(Clone, Debug)]
pub struct RootAction {
    pub spec: LatticeSpec,
    pub roots: Vec<RootVector>,
    pub group: PermGroup,
}

impl RootAction {
    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.roots.binary_search(v).ok()
    }
}

/// `W(L)` as permutations of `spec.roots()`, generated by every reflection.
pub fn weyl_group_on_roots(spec: &LatticeSpec) -> Result<RootAction, OrbitError> {
    weyl_group_on_roots_with_base(spec, &[])
}

/// As [`weyl_group_on_roots`], with a prescribed prefix of base points.
pub fn weyl_group_on_roots_with_base(spec: &LatticeSpec, base_prefix: &[usize]) -> Result<RootAction, OrbitError> {
    let roots = spec.roots();
    let mut generators = Vec::new();
    for v in &roots {
        // s_v = s_{-v}; one reflection per root pair
        if *v < v.neg() {
            continue;
        }
        let images = roots
            .iter()
            .map(|x| {
                let y = reflect(v, x)?;
                Ok(roots.binary_search(&y).expect("Weyl group permutes the roots"))
            })
            .collect::<Result<Vec<_>, LatticeError>>()?;
        generators.push(Permutation::from_images(&images)?);
    }
    let group = PermGroup::with_base(roots.len(), generators, base_prefix)?;
    Ok(RootAction { spec: *spec, roots, group })
}

/// Point stabilizer `W_r` of the root with index `r`.
pub fn stabilizer_of_root(w: &PermGroup, r: usize) -> Result<PermGroup, OrbitError> {
    Ok(w.point_stabilizer(r)?)
}

/// Action of `wr` on pair-classes: class `i` goes to the class of `g(u_i)`.
///
/// The resulting group has degree `classes.len()` and base `0, 1, 2, …`, as
/// [`min_image`] requires.
pub fn induced_action_on_classes(
    wr: &PermGroup,
    roots: &[RootVector],
    classes: &[PairClass],
) -> Result<PermGroup, OrbitError> {
    let mut class_of_root = vec![None; roots.len()];
    let mut representative = Vec::with_capacity(classes.len());
    for (c, class) in classes.iter().enumerate() {
        for v in [&class.representative, &class.partner] {
            let i = roots.binary_search(v).map_err(|_| LatticeError::NotARoot(v.clone()))?;
            class_of_root[i] = Some(c);
        }
        representative.push(roots.binary_search(&class.representative).expect("looked up above"));
    }
    let mut images = Vec::with_capacity(wr.generators().len());
    for (gi, g) in wr.generators().iter().enumerate() {
        let map = representative
            .iter()
            .enumerate()
            .map(|(c, &u)| class_of_root[g.apply(u)].ok_or(OrbitError::ClassEscape { generator: gi, class: c }))
            .collect::<Result<Vec<_>, _>>()?;
        images.push(Permutation::from_images(&map)?);
    }
    let base: Vec<usize> = (0..classes.len()).collect();
    Ok(PermGroup::with_base(classes.len(), images, &base)?)
}

/// Number of orbits on `n`-subsets, for every `n` in `0..=degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCountTable {
    pub counts: Vec<BigUint>,
}

impl SubsetCountTable {
    pub fn degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `c(n) = c(degree − n)` for every `n`.
    pub fn is_complement_symmetric(&self) -> bool {
        self.counts.iter().eq(self.counts.iter().rev())
    }
}

/// Multiplicity of each cycle type (descending cycle lengths).
pub type CycleTypeHistogram = BTreeMap<Vec<usize>, u64>;

/// Cycle types of the elements whose first transversal factor lies in
/// `first` (see [`PermGroup::for_each_element_in_coset`]).
pub fn cycle_type_histogram(g: &PermGroup, first: Range<usize>) -> CycleTypeHistogram {
    let mut hist = CycleTypeHistogram::new();
    for f in first {
        g.for_each_element_in_coset(f, |e| *hist.entry(e.cycle_type()).or_insert(0) += 1);
    }
    hist
}

pub fn merge_histograms(mut a: CycleTypeHistogram, b: CycleTypeHistogram) -> CycleTypeHistogram {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

// coefficients of ∏ (1 + x^ℓ)
fn subset_polynomial(degree: usize, cycles: &[usize]) -> Vec<u64> {
    let mut poly = vec![0u64; degree + 1];
    poly[0] = 1;
    let mut top = 0;
    for &l in cycles {
        for k in (0..=top).rev() {
            poly[k + l] += poly[k];
        }
        top += l;
    }
    poly
}

/// Orbit counts from a complete cycle-type histogram of a group of `order`.
pub fn subset_counts_from_histogram(
    degree: usize,
    order: &BigUint,
    hist: &CycleTypeHistogram,
) -> Result<SubsetCountTable, OrbitError> {
    if degree > 64 {
        return Err(OrbitError::DegreeTooLarge(degree));
    }
    let found: BigUint = hist.values().map(|&v| BigUint::from(v)).sum();
    if &found != order {
        return Err(OrbitError::IncompleteHistogram { found, order: order.clone() });
    }
    let mut sums = vec![BigUint::zero(); degree + 1];
    for (cycles, &mult) in hist {
        for (k, c) in subset_polynomial(degree, cycles).into_iter().enumerate() {
            sums[k] += BigUint::from(c) * BigUint::from(mult);
        }
    }
    let counts = sums
        .into_iter()
        .map(|s| {
            let (q, r) = s.div_rem(order);
            debug_assert!(r.is_zero(), "Cauchy–Frobenius sum not divisible by the order");
            q
        })
        .collect();
    Ok(SubsetCountTable { counts })
}

/// Orbit counts on subsets of every size by walking the whole group.
pub fn burnside_subset_counts(g: &PermGroup) -> Result<SubsetCountTable, OrbitError> {
    let order = g.order();
    if order > BigUint::from(ELEMENT_LIMIT) {
        return Err(OrbitError::TooLarge { order });
    }
    if g.degree() > 64 {
        return Err(OrbitError::DegreeTooLarge(g.degree()));
    }
    let top = g.basic_orbit_lengths().first().copied().unwrap_or(1);
    let hist = cycle_type_histogram(g, 0..top);
    subset_counts_from_histogram(g.degree(), &order, &hist)
}

/// Lexicographic order of the sorted element lists of two masks.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = (a ^ b).trailing_zeros();
    let a_holds = a >> d & 1 == 1;
    let other = if a_holds { b } else { a };
    // the holder lists d where the other lists a larger point, or has ended
    let holder = if other >> d != 0 { Ordering::Less } else { Ordering::Greater };
    if a_holds {
        holder
    } else {
        holder.reverse()
    }
}

pub fn mask_to_points(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

pub fn points_to_mask(points: &[usize]) -> u64 {
    points.iter().fold(0, |m, &p| m | 1 << p)
}

fn check_prefix_base(g: &PermGroup) -> Result<(), OrbitError> {
    if g.degree() > 64 {
        return Err(OrbitError::DegreeTooLarge(g.degree()));
    }
    if g.base().iter().enumerate().any(|(i, &b)| i != b) {
        return Err(OrbitError::BaseNotPrefix);
    }
    Ok(())
}

/// Lexicographically least image of `set` under `g`.
///
/// `g` must have base `0, 1, 2, …` (a prefix of the points, as produced by
/// [`PermGroup::with_base`]). Level `i` decides whether `i` can belong to the
/// image while fixing the decisions on `0..i`.
pub fn min_image(g: &PermGroup, set: u64) -> Result<u64, OrbitError> {
    check_prefix_base(g)?;
    let depth = g.base().len();
    let mut candidates: Vec<u64> = vec![set];
    for i in 0..depth {
        let orbit = g.basic_orbit(i);
        if orbit.len() == 1 {
            if candidates.iter().any(|&t| t >> i & 1 == 1) {
                candidates.retain(|&t| t >> i & 1 == 1);
            }
            continue;
        }
        let orbit_mask = points_to_mask(orbit);
        let reachable = candidates.iter().any(|&t| t & orbit_mask != 0);
        let mut next = BTreeSet::new();
        for &t in &candidates {
            let points = if reachable { t & orbit_mask } else { orbit_mask };
            for p in mask_to_points(points) {
                let u = g.transversal(i, p).expect("orbit point");
                next.insert(u.inverse().apply_mask(t));
            }
        }
        candidates = next.into_iter().collect();
    }
    Ok(candidates.into_iter().min_by(|&a, &b| lex_cmp(a, b)).expect("at least one candidate"))
}

fn sort_lex(sets: &mut [u64]) {
    sets.sort_by(|&a, &b| lex_cmp(a, b));
}

/// Representatives of the orbits on `(k+1)`-subsets from those on `k`-subsets.
pub fn extend_transversal(g: &PermGroup, reps: &[u64]) -> Result<Vec<u64>, OrbitError> {
    let full = if g.degree() == 64 { u64::MAX } else { (1u64 << g.degree()) - 1 };
    let mut next = BTreeSet::new();
    for &r in reps {
        for p in mask_to_points(full & !r) {
            next.insert(min_image(g, r | 1 << p)?);
        }
    }
    let mut out: Vec<u64> = next.into_iter().collect();
    sort_lex(&mut out);
    Ok(out)
}

/// One lexicographically minimal subset per orbit on `n`-subsets, sorted.
pub fn subset_orbit_transversal(g: &PermGroup, n: usize) -> Result<Vec<u64>, OrbitError> {
    check_prefix_base(g)?;
    let degree = g.degree();
    if n > degree {
        return Err(OrbitError::InfeasibleSize { n, degree });
    }
    let small = n.min(degree - n);
    if small > TRANSVERSAL_LIMIT {
        return Err(OrbitError::InfeasibleSize { n, degree });
    }
    let mut reps = vec![0u64];
    for _ in 0..small {
        reps = extend_transversal(g, &reps)?;
    }
    if small == n {
        return Ok(reps);
    }
    let full = if degree == 64 { u64::MAX } else { (1u64 << degree) - 1 };
    let mut out = reps.into_iter().map(|r| min_image(g, full & !r)).collect::<Result<Vec<_>, _>>()?;
    sort_lex(&mut out);
    Ok(out)
}

/// Orbit count table as plain integers, if every entry fits.
pub fn counts_as_u64(table: &SubsetCountTable) -> Option<Vec<u64>> {
    table.counts.iter().map(|c| c.to_u64()).collect()
}
