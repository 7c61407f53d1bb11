//! Root systems of the `A`, `D` and `E` families in doubled coordinates.
//!
//! A [`RootVector`] stores twice its real coordinates, so the half-integer
//! vectors of `E_8 = D_8 ⊔ (j/2 + D_8)` are plain integers. Inner products
//! divide the doubled dot product by 4 and insist on an integral result.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::graph::{Graph, MAX_VERTICES};
use crate::linalg::{determinant, hermite_normal_form, left_integer_kernel, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("invalid lattice {family:?}{rank}")]
    InvalidSpec { family: LatticeFamily, rank: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("inner product {dot2}/4 is not an integer")]
    NonIntegral { dot2: i64 },
    #[error("vector {0:?} is not a root of the lattice")]
    NotARoot(RootVector),
    #[error("vector #{index} is not in the lattice")]
    NotInLattice { index: usize },
    #[error("vector #{index} has norm {norm}, expected 2")]
    BadNorm { index: usize, norm: i64 },
    #[error("vectors #{i} and #{j} have inner product {inner}, expected 0 or 1")]
    BadPair { i: usize, j: usize, inner: i64 },
    #[error("{0} vectors exceed the graph order limit")]
    TooManyVectors(usize),
    #[error("lattice enumeration bound too large")]
    SearchTooLarge,
}

/// Vector in `R^d` stored as `2 ×` its coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    coords2: Vec<i64>,
}

impl RootVector {
    /// From doubled coordinates.
    pub fn from_doubled(coords2: Vec<i64>) -> Self {
        RootVector { coords2 }
    }

    /// From integer coordinates.
    pub fn from_coords(coords: &[i64]) -> Self {
        RootVector { coords2: coords.iter().map(|c| 2 * c).collect() }
    }

    pub fn zero(dim: usize) -> Self {
        RootVector { coords2: vec![0; dim] }
    }

    /// Standard basis vector `e_i`, 0-based.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords2[i] = 2;
        v
    }

    /// `e_i − e_j`, 0-based.
    pub fn difference(dim: usize, i: usize, j: usize) -> Self {
        Self::unit(dim, i).sub(&Self::unit(dim, j))
    }

    /// `e_i + e_j`, 0-based.
    pub fn sum(dim: usize, i: usize, j: usize) -> Self {
        Self::unit(dim, i).add(&Self::unit(dim, j))
    }

    pub fn dim(&self) -> usize {
        self.coords2.len()
    }

    pub fn coords2(&self) -> &[i64] {
        &self.coords2
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector { coords2: self.coords2.iter().zip(&other.coords2).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector { coords2: self.coords2.iter().zip(&other.coords2).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> RootVector {
        RootVector { coords2: self.coords2.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> RootVector {
        RootVector { coords2: self.coords2.iter().map(|a| k * a).collect() }
    }

    fn dot2(&self, other: &RootVector) -> i64 {
        self.coords2.iter().zip(&other.coords2).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> Result<i64, LatticeError> {
        inner(self, self)
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords2.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        write!(f, ")")
    }
}

/// Exact inner product; errors when the doubled dot product is not divisible by 4.
pub fn inner(u: &RootVector, v: &RootVector) -> Result<i64, LatticeError> {
    if u.dim() != v.dim() {
        return Err(LatticeError::DimensionMismatch(u.dim(), v.dim()));
    }
    let dot2 = u.dot2(v);
    if dot2 % 4 != 0 {
        return Err(LatticeError::NonIntegral { dot2 });
    }
    Ok(dot2 / 4)
}

/// Reflection in the hyperplane orthogonal to the root `r`: `x − (x, r)·r`.
pub fn reflect(r: &RootVector, x: &RootVector) -> Result<RootVector, LatticeError> {
    let k = inner(x, r)?;
    Ok(x.sub(&r.scale(k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeFamily {
    A,
    D,
    E,
}

/// One of `A_n (n ≥ 1)`, `D_n (n ≥ 4)`, `E_6`, `E_7`, `E_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeSpec {
    family: LatticeFamily,
    rank: usize,
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl LatticeSpec {
    pub fn new(family: LatticeFamily, rank: usize) -> Result<Self, LatticeError> {
        let ok = match family {
            LatticeFamily::A => rank >= 1,
            LatticeFamily::D => rank >= 4,
            LatticeFamily::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(LatticeSpec { family, rank })
        } else {
            Err(LatticeError::InvalidSpec { family, rank })
        }
    }

    pub fn a(rank: usize) -> Result<Self, LatticeError> {
        Self::new(LatticeFamily::A, rank)
    }

    pub fn d(rank: usize) -> Result<Self, LatticeError> {
        Self::new(LatticeFamily::D, rank)
    }

    pub fn e(rank: usize) -> Result<Self, LatticeError> {
        Self::new(LatticeFamily::E, rank)
    }

    pub fn e8() -> Self {
        LatticeSpec { family: LatticeFamily::E, rank: 8 }
    }

    pub fn family(&self) -> LatticeFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            LatticeFamily::A => self.rank + 1,
            LatticeFamily::D => self.rank,
            LatticeFamily::E => 8,
        }
    }

    /// Determinant of a Gram matrix of any basis.
    pub fn discriminant(&self) -> u64 {
        match (self.family, self.rank) {
            (LatticeFamily::A, n) => n as u64 + 1,
            (LatticeFamily::D, _) => 4,
            (LatticeFamily::E, 6) => 3,
            (LatticeFamily::E, 7) => 2,
            (LatticeFamily::E, _) => 1,
        }
    }

    /// Membership test for a vector of the right ambient dimension.
    pub fn contains(&self, v: &RootVector) -> bool {
        if v.dim() != self.ambient_dim() {
            return false;
        }
        let c = v.coords2();
        let all_even = c.iter().all(|x| x % 2 == 0);
        let sum2: i64 = c.iter().sum();
        match self.family {
            LatticeFamily::A => all_even && sum2 == 0,
            LatticeFamily::D => all_even && (sum2 / 2) % 2 == 0,
            LatticeFamily::E => {
                let in_e8 = if all_even {
                    (sum2 / 2) % 2 == 0
                } else {
                    c.iter().all(|x| x % 2 != 0) && ((sum2 - 8) / 2) % 2 == 0
                };
                let orth = |i: usize, j: usize| c[i] == c[j];
                in_e8
                    && match self.rank {
                        6 => orth(0, 1) && orth(1, 2),
                        7 => orth(0, 1),
                        _ => true,
                    }
            }
        }
    }

    /// All roots (norm-2 vectors), sorted lexicographically on doubled coordinates.
    pub fn roots(&self) -> Vec<RootVector> {
        let d = self.ambient_dim();
        let mut out = Vec::new();
        match self.family {
            LatticeFamily::A => {
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            out.push(RootVector::difference(d, i, j));
                        }
                    }
                }
            }
            LatticeFamily::D | LatticeFamily::E => {
                for i in 0..d {
                    for j in i + 1..d {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            let mut c = vec![0; d];
                            c[i] = 2 * si;
                            c[j] = 2 * sj;
                            out.push(RootVector::from_doubled(c));
                        }
                    }
                }
                if self.family == LatticeFamily::E {
                    for signs in 0u32..256 {
                        if signs.count_ones() % 2 == 0 {
                            let c = (0..8).map(|k| if signs >> k & 1 == 1 { -1 } else { 1 }).collect();
                            out.push(RootVector::from_doubled(c));
                        }
                    }
                    out.retain(|v| self.contains(v));
                }
            }
        }
        out.sort();
        out
    }

    /// The fixed switching root: `e_m − e_{m+1}` for `A_m`, `e_{m−1} + e_m`
    /// for `D_m`, `e_7 + e_8` for the `E` family (1-based indices).
    pub fn standard_switching_root(&self) -> RootVector {
        let d = self.ambient_dim();
        match self.family {
            LatticeFamily::A => RootVector::difference(d, self.rank - 1, self.rank),
            LatticeFamily::D => RootVector::sum(d, self.rank - 2, self.rank - 1),
            LatticeFamily::E => RootVector::sum(8, 6, 7),
        }
    }

    fn is_root(&self, v: &RootVector) -> bool {
        self.contains(v) && v.norm() == Ok(2)
    }
}

/// Roots `u` with `(u, r) = 1`, in root order.
pub fn n_r(spec: &LatticeSpec, r: &RootVector) -> Result<Vec<RootVector>, LatticeError> {
    if !spec.is_root(r) {
        return Err(LatticeError::NotARoot(r.clone()));
    }
    Ok(spec.roots().into_iter().filter(|u| inner(u, r) == Ok(1)).collect())
}

/// The unordered pair `{u, r − u}` with `(u, r) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairClass {
    /// Lexicographically smaller member.
    pub representative: RootVector,
    /// `r − representative`.
    pub partner: RootVector,
}

impl PairClass {
    pub fn new(u: RootVector, r: &RootVector) -> Self {
        let v = r.sub(&u);
        if u <= v {
            PairClass { representative: u, partner: v }
        } else {
            PairClass { representative: v, partner: u }
        }
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        &self.representative == v || &self.partner == v
    }
}

/// Pair-classes of `N_r(L)`, sorted by representative.
pub fn pair_classes(spec: &LatticeSpec, r: &RootVector) -> Result<Vec<PairClass>, LatticeError> {
    let mut classes: Vec<PairClass> = n_r(spec, r)?.into_iter().map(|u| PairClass::new(u, r)).collect();
    classes.sort();
    classes.dedup();
    Ok(classes)
}

pub fn gram_matrix(vectors: &[RootVector]) -> Result<IntMatrix, LatticeError> {
    let n = vectors.len();
    let mut g = IntMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, inner(&vectors[i], &vectors[j])?);
        }
    }
    Ok(g)
}

/// Graph `G` with `A(G) + 2I` equal to the Gram matrix of `vectors`.
pub fn gram_to_graph(vectors: &[RootVector]) -> Result<Graph, LatticeError> {
    let n = vectors.len();
    if n > MAX_VERTICES {
        return Err(LatticeError::TooManyVectors(n));
    }
    let mut g = Graph::empty(n).expect("order checked");
    for (i, u) in vectors.iter().enumerate() {
        let norm = inner(u, u)?;
        if norm != 2 {
            return Err(LatticeError::BadNorm { index: i, norm });
        }
        for (j, v) in vectors.iter().enumerate().skip(i + 1) {
            match inner(u, v)? {
                0 => {}
                1 => g.add_edge(i, j).expect("indices in range"),
                other => return Err(LatticeError::BadPair { i, j, inner: other }),
            }
        }
    }
    Ok(g)
}

/// A Z-basis of the integer span of `vectors` (Hermite normal form rows).
pub fn span_basis(vectors: &[RootVector]) -> Vec<RootVector> {
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coords2().iter().map(|&c| BigInt::from(c)).collect()).collect();
    hermite_normal_form(rows)
        .into_iter()
        .map(|row| RootVector::from_doubled(row.iter().map(|c| c.to_i64().expect("HNF entries stay small")).collect()))
        .collect()
}

/// Rank and Gram determinant of the integer span of `vectors`.
pub fn rank_and_discriminant(vectors: &[RootVector]) -> Result<(usize, BigInt), LatticeError> {
    let basis = span_basis(vectors);
    let det = determinant(&gram_matrix(&basis)?);
    Ok((basis.len(), det))
}

/// `true` iff the integer span of `vectors` is the whole lattice.
///
/// The span is a sublattice of full rank exactly when the ranks agree, and
/// then it is the whole lattice exactly when the discriminants agree.
pub fn generates(vectors: &[RootVector], spec: &LatticeSpec) -> Result<bool, LatticeError> {
    for (index, v) in vectors.iter().enumerate() {
        if !spec.contains(v) {
            return Err(LatticeError::NotInLattice { index });
        }
    }
    let (rank, det) = rank_and_discriminant(vectors)?;
    Ok(rank == spec.rank() && det == BigInt::from(spec.discriminant()))
}

/// Orthogonal complement of a set of vectors inside `E_8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    pub basis: Vec<RootVector>,
    /// Minimal norm of a nonzero vector; `None` for the zero lattice.
    pub min_norm: Option<i64>,
}

/// `{v ∈ E_8 : (v, g) = 0 for all generators g}` with its minimal norm.
pub fn orth_complement_in_e8(generators: &[RootVector]) -> Result<Complement, LatticeError> {
    let e8 = LatticeSpec::e8();
    for (index, v) in generators.iter().enumerate() {
        if !e8.contains(v) {
            return Err(LatticeError::NotInLattice { index });
        }
    }
    let e8_basis = span_basis(&e8.roots());
    let pairing: Vec<Vec<BigInt>> = e8_basis
        .iter()
        .map(|b| generators.iter().map(|g| inner(b, g).map(BigInt::from)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let pairing = if generators.is_empty() { vec![Vec::new(); e8_basis.len()] } else { pairing };
    let kernel = left_integer_kernel(&pairing);
    let vectors: Vec<RootVector> = kernel
        .iter()
        .map(|x| {
            e8_basis.iter().zip(x).fold(RootVector::zero(8), |acc, (b, c)| {
                acc.add(&b.scale(c.to_i64().expect("kernel coefficients stay small")))
            })
        })
        .collect();
    let basis = span_basis(&vectors);
    let min_norm = minimal_norm(&basis)?;
    Ok(Complement { basis, min_norm })
}

/// Minimal norm of a nonzero vector of the lattice spanned by a basis.
///
/// For `x` with `xᵀGx ≤ B`, each coordinate obeys `x_i² ≤ B·(G⁻¹)_ii`; the
/// box is enumerated exhaustively with `B` the smallest basis norm.
pub fn minimal_norm(basis: &[RootVector]) -> Result<Option<i64>, LatticeError> {
    let k = basis.len();
    if k == 0 {
        return Ok(None);
    }
    let gram = gram_matrix(basis)?;
    let det = determinant(&gram);
    let bound = (0..k).map(|i| gram.get(i, i).clone()).min().expect("k > 0");
    let mut limits = Vec::with_capacity(k);
    for i in 0..k {
        let minor = IntMatrix::from_fn(k - 1, |a, b| {
            let a = if a >= i { a + 1 } else { a };
            let b = if b >= i { b + 1 } else { b };
            gram.get(a, b).to_i64().expect("small Gram entries")
        });
        let cofactor = determinant(&minor);
        let limit = (&bound * cofactor / &det).sqrt();
        limits.push(limit.to_i64().ok_or(LatticeError::SearchTooLarge)?);
    }
    let volume: i128 = limits.iter().map(|&l| 2 * l as i128 + 1).product();
    if volume > 50_000_000 {
        return Err(LatticeError::SearchTooLarge);
    }
    let g: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| gram.get(i, j).to_i64().expect("small")).collect()).collect();
    let mut best = bound.to_i64().expect("small");
    let mut x: Vec<i64> = limits.iter().map(|l| -l).collect();
    loop {
        if x.iter().any(|&c| c != 0) {
            let mut q = 0i64;
            for i in 0..k {
                for j in 0..k {
                    q += x[i] * g[i][j] * x[j];
                }
            }
            best = best.min(q);
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(Some(best));
            }
            if x[i] < limits[i] {
                x[i] += 1;
                break;
            }
            x[i] = -limits[i];
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a(n: usize) -> LatticeSpec {
        LatticeSpec::a(n).unwrap()
    }
    fn d(n: usize) -> LatticeSpec {
        LatticeSpec::d(n).unwrap()
    }

    #[test]
    fn root_counts() {
        for n in 1..=8 {
            assert_eq!(a(n).roots().len(), n * (n + 1));
        }
        for n in 4..=9 {
            assert_eq!(d(n).roots().len(), 2 * n * (n - 1));
        }
        // E_8: 112 integral ±e_i±e_j and 128 half-integral with even sign count
        let e8 = LatticeSpec::e8().roots();
        assert_eq!(e8.len(), 240);
        assert_eq!(e8.iter().filter(|v| v.coords2()[0] % 2 == 0).count(), 112);
        let e7 = LatticeSpec::e(7).unwrap().roots();
        let e6 = LatticeSpec::e(6).unwrap().roots();
        let first = RootVector::difference(8, 0, 1);
        let second = RootVector::difference(8, 1, 2);
        let filtered7: Vec<_> = e8.iter().filter(|v| inner(v, &first) == Ok(0)).cloned().collect();
        let filtered6: Vec<_> = filtered7.iter().filter(|v| inner(v, &second) == Ok(0)).cloned().collect();
        assert_eq!(e7, filtered7);
        assert_eq!(e6, filtered6);
        assert_eq!(e7.len(), 126);
        assert_eq!(e6.len(), 72);
        assert_eq!(a(2).roots().len(), 6);
    }

    #[test]
    fn invalid_specs() {
        assert!(LatticeSpec::a(0).is_err());
        assert!(LatticeSpec::d(3).is_err());
        assert!(LatticeSpec::e(5).is_err());
        assert!(LatticeSpec::e(9).is_err());
    }

    #[test]
    fn inner_products() {
        let v = RootVector::difference(8, 6, 7);
        let w = RootVector::difference(8, 0, 7);
        assert_eq!(inner(&v, &w), Ok(1));
        let half = RootVector::from_doubled(vec![1; 8]);
        assert_eq!(inner(&half, &half), Ok(2));
        for r in LatticeSpec::e8().roots() {
            assert_eq!(r.norm(), Ok(2));
        }
        let odd = RootVector::from_doubled(vec![1, 0]);
        assert!(matches!(inner(&odd, &odd), Err(LatticeError::NonIntegral { .. })));
        assert!(inner(&odd, &half).is_err());
    }

    #[test]
    fn reflections() {
        let roots = LatticeSpec::e8().roots();
        let r = &roots[17];
        assert_eq!(reflect(r, r).unwrap(), r.neg());
        let orth = roots.iter().find(|x| inner(x, r) == Ok(0)).unwrap();
        assert_eq!(&reflect(r, orth).unwrap(), orth);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let r = &roots[rng.next_u32() as usize % 240];
            let x = &roots[rng.next_u32() as usize % 240];
            assert_eq!(&reflect(r, &reflect(r, x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn reflections_preserve_e8_roots() {
        let roots = LatticeSpec::e8().roots();
        for r in &roots {
            let mut image: Vec<RootVector> = roots.iter().map(|x| reflect(r, x).unwrap()).collect();
            image.sort();
            assert_eq!(image, roots);
        }
    }

    #[test]
    fn n_r_and_pair_classes() {
        let e8 = LatticeSpec::e8();
        let r = e8.standard_switching_root();
        assert_eq!(r, RootVector::sum(8, 6, 7));
        assert_eq!(n_r(&e8, &r).unwrap().len(), 56);
        let classes = pair_classes(&e8, &r).unwrap();
        assert_eq!(classes.len(), 28);
        for c in &classes {
            assert!(c.representative < c.partner);
            assert_eq!(inner(&c.representative, &c.partner), Ok(-1));
        }
        for (i, c) in classes.iter().enumerate() {
            for other in &classes[i + 1..] {
                for u in [&c.representative, &c.partner] {
                    for v in [&other.representative, &other.partner] {
                        let ip = inner(u, v).unwrap();
                        assert!(ip == 0 || ip == 1);
                    }
                }
            }
        }
        for m in 2..=8 {
            let spec = a(m);
            let r = spec.standard_switching_root();
            assert_eq!(n_r(&spec, &r).unwrap().len(), 2 * (m - 1));
            assert_eq!(pair_classes(&spec, &r).unwrap().len(), m - 1);
        }
        assert!(n_r(&e8, &RootVector::unit(8, 0)).is_err());
    }

    #[test]
    fn gram_to_graph_examples() {
        let d = 5;
        let vs: Vec<_> = (0..4).map(|i| RootVector::difference(d, i, 4)).collect();
        assert_eq!(gram_to_graph(&vs).unwrap(), Graph::complete(4).unwrap());
        assert_eq!(gram_to_graph(&vs[..1]).unwrap(), Graph::complete(1).unwrap());
        // e_8 + e_1 and r − (e_8 + e_1) = e_7 − e_1 for r = e_7 + e_8
        let bad = [RootVector::sum(8, 7, 0), RootVector::difference(8, 6, 0)];
        assert_eq!(inner(&RootVector::sum(8, 7, 0), &RootVector::difference(8, 7, 0)), Ok(0));
        assert_eq!(gram_to_graph(&bad), Err(LatticeError::BadPair { i: 0, j: 1, inner: -1 }));
        assert!(matches!(gram_to_graph(&[RootVector::unit(3, 0)]), Err(LatticeError::BadNorm { index: 0, .. })));
    }

    #[test]
    fn random_class_subsets_give_graphs() {
        let e8 = LatticeSpec::e8();
        let r = e8.standard_switching_root();
        let classes = pair_classes(&e8, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let mask = rng.next_u32() & ((1 << 28) - 1);
            let vs: Vec<_> = (0..28)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| {
                    if rng.next_u32() & 1 == 0 { classes[i].representative.clone() } else { classes[i].partner.clone() }
                })
                .collect();
            assert!(gram_to_graph(&vs).is_ok());
        }
    }

    #[test]
    fn swapping_class_members_switches_the_graph() {
        let e8 = LatticeSpec::e8();
        let r = e8.standard_switching_root();
        let classes = pair_classes(&e8, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let mask = rng.next_u32() & ((1 << 28) - 1);
            let chosen: Vec<usize> = (0..28).filter(|i| mask >> i & 1 == 1).collect();
            let keep = rng.next_u32() & ((1u32 << chosen.len().min(31)) - 1);
            let us: Vec<_> = chosen.iter().map(|&i| classes[i].representative.clone()).collect();
            let vs: Vec<_> = us
                .iter()
                .enumerate()
                .map(|(k, u)| if keep >> k & 1 == 1 { u.clone() } else { r.sub(u) })
                .collect();
            let g = gram_to_graph(&us).unwrap();
            let h = gram_to_graph(&vs).unwrap();
            assert_eq!(h, g.switch(keep));
            let mut with_r = us.clone();
            with_r.push(r.clone());
            let mut with_r2 = vs.clone();
            with_r2.push(r.clone());
            assert_eq!(span_basis(&with_r), span_basis(&with_r2));
        }
    }

    #[test]
    fn generation() {
        let a7 = a(7);
        let basis: Vec<_> = (0..7).map(|i| RootVector::difference(8, i, i + 1)).collect();
        assert_eq!(generates(&basis, &a7), Ok(true));
        assert_eq!(generates(&[RootVector::difference(2, 0, 1).scale(2)], &a(1)), Ok(false));
        // D_8 with r = e_7 + e_8 (0-based 6, 7), classes {e_8 + e_i : i ≤ 6} ∪ {e_8 − e_1}
        let d8 = d(8);
        let mut vs: Vec<_> = (0..6).map(|i| RootVector::sum(8, 7, i)).collect();
        vs.push(RootVector::difference(8, 7, 0));
        vs.push(RootVector::sum(8, 6, 7));
        assert_eq!(generates(&vs, &d8), Ok(true));
        assert_eq!(generates(&vs[..6], &d8), Ok(false));
        assert!(matches!(generates(&[RootVector::unit(8, 0)], &d8), Err(LatticeError::NotInLattice { index: 0 })));
        for spec in [a(3), d(5), LatticeSpec::e(6).unwrap(), LatticeSpec::e(7).unwrap(), LatticeSpec::e8()] {
            assert_eq!(generates(&spec.roots(), &spec), Ok(true), "{spec}");
        }
    }

    #[test]
    fn complements_in_e8() {
        let a7: Vec<_> = (0..7).map(|i| RootVector::difference(8, i, i + 1)).collect();
        let c = orth_complement_in_e8(&a7).unwrap();
        assert_eq!(c.basis.len(), 1);
        assert_eq!(c.min_norm, Some(2));
        let mut a7_twisted = vec![RootVector::sum(8, 0, 1).neg()];
        a7_twisted.extend((1..7).map(|i| RootVector::difference(8, i, i + 1)));
        let c = orth_complement_in_e8(&a7_twisted).unwrap();
        assert_eq!(c.basis.len(), 1);
        assert_eq!(c.min_norm, Some(8));
        let c = orth_complement_in_e8(&LatticeSpec::e8().roots()).unwrap();
        assert!(c.basis.is_empty());
        assert_eq!(c.min_norm, None);
        let c = orth_complement_in_e8(&[]).unwrap();
        assert_eq!(c.basis.len(), 8);
        assert_eq!(c.min_norm, Some(2));
        // D_4 ⊥ D_4 inside D_8 ⊂ E_8
        let d4: Vec<_> = LatticeSpec::d(4).unwrap().roots().iter().map(|v| {
            let mut c = v.coords2().to_vec();
            c.extend([0; 4]);
            RootVector::from_doubled(c)
        }).collect();
        let c = orth_complement_in_e8(&d4).unwrap();
        assert_eq!(c.basis.len(), 4);
        assert_eq!(c.min_norm, Some(2));
    }
}
