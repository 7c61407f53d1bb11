//! Exact integer linear algebra.
//!
//! All routines run on arbitrary-precision integers and use fraction-free
//! (Bareiss) elimination, so every intermediate value is an integer minor of
//! the input and no rounding ever takes place.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Square matrix with arbitrary-precision integer entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, entries: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1 } else { 0 })
    }

    /// All-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(BigInt::from(f(i, j)));
            }
        }
        IntMatrix { n, entries }
    }

    /// Builds a matrix from rows. Returns `None` unless the rows form a square.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return None;
        }
        Some(Self::from_fn(n, |i, j| rows[i].as_ref()[j]))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.n + j] = value.into();
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `b·I − M`.
    pub fn shifted_negation(&self, b: i64) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = -&*e;
        }
        let b = BigInt::from(b);
        for i in 0..self.n {
            out.entries[i * self.n + i] += &b;
        }
        out
    }

    /// `M + b·I`.
    pub fn add_scalar(&self, b: i64) -> Self {
        let mut out = self.clone();
        let b = BigInt::from(b);
        for i in 0..self.n {
            out.entries[i * self.n + i] += &b;
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "order mismatch");
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n.max(1)).take(self.n)).finish()
    }
}

/// Polynomial with integer coefficients, `coefficients[i]` multiplying `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    pub coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_i64(coefficients: &[i64]) -> Self {
        IntPolynomial { coefficients: coefficients.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Multiplicity of `0` as a root.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coefficients.iter().take_while(|c| c.is_zero()).count()
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return IntPolynomial { coefficients: Vec::new() };
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial { coefficients: out }
    }
}

/// Rank over the rationals, by fraction-free elimination with row pivoting.
pub fn rank(m: &IntMatrix) -> usize {
    rank_of_rows(m.rows())
}

/// Rank of a (possibly rectangular) integer matrix given by rows.
pub fn rank_of_rows(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = (&pivot * &row[j] - &factor * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Determinant by Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.order();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.rows();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Characteristic polynomial `det(xI − M)` by the Faddeev–LeVerrier recursion.
///
/// Every division in the recursion is exact over the integers.
pub fn char_poly(m: &IntMatrix) -> IntPolynomial {
    let n = m.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_k = M·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(M·M_k)/k
    let mut mk = IntMatrix::zero(n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        let c = coeffs[n - k + 1].clone();
        for i in 0..n {
            next.entries[i * n + i] += &c;
        }
        let t = m.mul(&next).trace();
        let (q, rem) = t.div_rem(&BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = -q;
        mk = next;
    }
    IntPolynomial { coefficients: coeffs }
}

/// Exact positive-semidefiniteness test for a symmetric matrix.
///
/// Symmetric-pivoted fraction-free LDLᵀ: every step pivots on a positive
/// diagonal entry of the current Schur complement. A negative diagonal entry
/// rejects; once every remaining diagonal entry is zero the remaining block
/// must vanish identically.
pub fn is_psd(m: &IntMatrix) -> bool {
    debug_assert!(m.is_symmetric());
    let n = m.order();
    let mut a = m.rows();
    let mut live: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    while !live.is_empty() {
        if live.iter().any(|&i| a[i][i].is_negative()) {
            return false;
        }
        let Some(pos) = live.iter().position(|&i| a[i][i].is_positive()) else {
            return live.iter().all(|&i| live.iter().all(|&j| a[i][j].is_zero()));
        };
        let p = live.swap_remove(pos);
        live.sort_unstable();
        let pivot = a[p][p].clone();
        for &i in &live {
            for &j in &live {
                if j < i {
                    continue;
                }
                let v = (&pivot * &a[i][j] - &a[i][p] * &a[p][j]) / &prev;
                a[j][i] = v.clone();
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    true
}

/// `true` iff every eigenvalue of the symmetric matrix `m` is at most `bound`.
pub fn max_eig_le(m: &IntMatrix, bound: i64) -> bool {
    is_psd(&m.shifted_negation(bound))
}

/// Row-style Hermite normal form over the integers.
///
/// Returns the nonzero rows of the HNF: an echelon basis of the integer row
/// span with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(mut a: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        while let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
        {
            a.swap(r, p);
            let mut cleared = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                sub_scaled_row(&mut a, i, r, &q, c);
                if !a[i][c].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for v in a[r].iter_mut() {
                *v = -&*v;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                sub_scaled_row(&mut a, i, r, &q, c);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

fn sub_scaled_row(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt, from: usize) {
    let (src, dst) = if source < target {
        let (lo, hi) = a.split_at_mut(target);
        (&lo[source], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(source);
        (&hi[0], &mut lo[target])
    };
    for j in from..src.len() {
        if !src[j].is_zero() {
            dst[j] -= q * &src[j];
        }
    }
}

/// Basis of the left integer kernel `{x ∈ Zᵐ : xA = 0}` of an `m × k` matrix.
pub fn left_integer_kernel(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out = row.clone();
            out.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            out
        })
        .collect();
    hermite_normal_form(augmented)
        .into_iter()
        .filter(|row| row[..k].iter().all(Zero::is_zero))
        .map(|row| row[k..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    // det(xI − M) at integer points by cofactor expansion, independent of
    // the recursion under test.
    fn cofactor_det(a: &[Vec<i64>]) -> i128 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = a[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let term = a[0][j] as i128 * cofactor_det(&minor);
            total += if j % 2 == 0 { term } else { -term };
        }
        total
    }

    fn seidel_of_cycle(n: usize) -> IntMatrix {
        IntMatrix::from_fn(n, |i, j| {
            if i == j {
                0
            } else if (i + 1) % n == j || (j + 1) % n == i {
                -1
            } else {
                1
            }
        })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::zero(5)), 0);
        // S(empty on 4) = J − I, so 3I − S = 4I − J
        let s_empty = IntMatrix::ones(4).add_scalar(-1);
        let shifted = s_empty.shifted_negation(3);
        assert_eq!(shifted, IntMatrix::from_fn(4, |i, j| if i == j { 3 } else { -1 }));
        assert_eq!(rank(&shifted), 3);
    }

    #[test]
    fn determinant_matches_cofactor() {
        let rows = vec![vec![2, -1, 0, 3], vec![1, 4, -2, 0], vec![0, 5, 1, 1], vec![-3, 0, 2, 2]];
        let mat = IntMatrix::from_rows(&rows).unwrap();
        assert_eq!(determinant(&mat), BigInt::from(cofactor_det(&rows)));
        assert_eq!(determinant(&IntMatrix::zero(0)), BigInt::one());
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&IntMatrix::identity(2)), IntPolynomial::from_i64(&[1, -2, 1]));
        // S(K_3) = −(J − I): (x − 1)²(x + 2) = x³ − 3x + 2
        let s_k3 = IntMatrix::from_fn(3, |i, j| if i == j { 0 } else { -1 });
        assert_eq!(char_poly(&s_k3), IntPolynomial::from_i64(&[2, -3, 0, 1]));
    }

    #[test]
    fn char_poly_pentagon_matches_cofactor_oracle() {
        let s = seidel_of_cycle(5);
        let p = char_poly(&s);
        assert!(p.is_monic());
        assert_eq!(p.degree(), 5);
        for x in -6i64..=6 {
            let rows: Vec<Vec<i64>> = (0..5)
                .map(|i| {
                    (0..5)
                        .map(|j| {
                            let e = if i == j { x } else { 0 };
                            let sij = if i == j { 0 } else if (i + 1) % 5 == j || (j + 1) % 5 == i { -1 } else { 1 };
                            e - sij
                        })
                        .collect()
                })
                .collect();
            assert_eq!(p.eval(&BigInt::from(x)), BigInt::from(cofactor_det(&rows)), "x = {x}");
        }
        // frozen from the cofactor oracle: (x² − 5)²·x
        assert_eq!(p, IntPolynomial::from_i64(&[0, 25, 0, -10, 0, 1]));
    }

    #[test]
    fn max_eig_examples() {
        let s_k6 = IntMatrix::from_fn(6, |i, j| if i == j { 0 } else { -1 });
        assert!(max_eig_le(&s_k6, 3));
        let s_empty5 = IntMatrix::from_fn(5, |i, j| if i == j { 0 } else { 1 });
        assert!(!max_eig_le(&s_empty5, 3));
        let s_empty4 = IntMatrix::from_fn(4, |i, j| if i == j { 0 } else { 1 });
        assert!(max_eig_le(&s_empty4, 3));
    }

    #[test]
    fn psd_examples() {
        let k4 = IntMatrix::from_fn(4, |i, j| if i == j { 2 } else { 1 });
        assert!(is_psd(&k4));
        assert!(!is_psd(&IntMatrix::identity(3).shifted_negation(0)));
        // zero diagonal with a nonzero off-diagonal entry is indefinite
        assert!(!is_psd(&m(&[&[0, 1], &[1, 0]])));
        assert!(is_psd(&IntMatrix::zero(3)));
        // cone over C_5: A + 2I. Exact LDL by hand: the wheel W_5 has
        // smallest eigenvalue 1 − √6 < −1.45 but > −2, so A + 2I is PD.
        let wheel = IntMatrix::from_fn(6, |i, j| {
            if i == j {
                2
            } else if i == 5 || j == 5 || (i + 1) % 5 == j || (j + 1) % 5 == i {
                1
            } else {
                0
            }
        });
        assert!(is_psd(&wheel));
        assert_ne!(determinant(&wheel), BigInt::zero());
    }

    #[test]
    fn hnf_and_kernel() {
        let rows = vec![
            vec![BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(6), BigInt::from(9)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        let h = hermite_normal_form(rows);
        assert_eq!(h, vec![vec![BigInt::from(2), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(1)]]);
        let a = vec![vec![BigInt::from(1)], vec![BigInt::from(2)]];
        let ker = left_integer_kernel(&a);
        assert_eq!(ker.len(), 1);
        assert_eq!(&ker[0][0] + &ker[0][1] * BigInt::from(2), BigInt::zero());
    }
}
