//! Permutations and permutation groups with a stabilizer chain.
//!
//! Permutations act on the right: `p.then(q)` applies `p` first, then `q`.
//! [`PermGroup`] runs the deterministic Schreier–Sims algorithm, optionally
//! with a prescribed prefix of base points, and supports membership, order,
//! point stabilizers, uniform random elements and exhaustive enumeration.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand_core::RngCore;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("image list is not a permutation of 0..{0}")]
    NotBijective(usize),
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("generator of degree {found} in a group of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("base point {0} out of range")]
    BadBasePoint(usize),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let m = images.len();
        if m > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(m));
        }
        let mut seen = vec![false; m];
        for &i in images {
            if i >= m || seen[i] {
                return Err(PermError::NotBijective(m));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.iter().map(|&i| i as u16).collect() })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &j)| i != j as usize).map(|(i, _)| i)
    }

    /// Cycle lengths, including fixed points, in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut lengths = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Image of a point set given as a bitmask (degree ≤ 64).
    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1 << self.images[p];
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.apply(p);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    strong: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    inverse_transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            strong: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverse_transversal: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.inverse_transversal.iter_mut().for_each(|t| *t = None);
        self.orbit.clear();
        let id = Permutation::identity(degree);
        self.transversal[self.base_point] = Some(id.clone());
        self.inverse_transversal[self.base_point] = Some(id);
        self.orbit.push(self.base_point);
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            k += 1;
            for s in &self.strong {
                let q = s.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().expect("orbit point has transversal").then(s);
                    self.inverse_transversal[q] = Some(u.inverse());
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Permutation group with a complete stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::with_base(degree, generators, &[])
    }

    /// Builds the chain with `base_prefix` as the first base points. Further
    /// base points, when needed, are the smallest points moved by new strong
    /// generators.
    pub fn with_base(degree: usize, generators: Vec<Permutation>, base_prefix: &[usize]) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= degree) {
            return Err(PermError::BadBasePoint(b));
        }
        let mut group = PermGroup {
            degree,
            generators: Vec::new(),
            levels: base_prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            let (residue, depth) = group.sift_from(&g, 0);
            group.generators.push(g);
            if depth == group.levels.len() && residue.is_identity() {
                continue;
            }
            group.insert_strong(residue, 0, depth);
            group.complete(depth);
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Fundamental orbit lengths along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the `i`-th stabilizer in the chain.
    pub fn strong_generators(&self, level: usize) -> &[Permutation] {
        &self.levels[level].strong
    }

    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    /// Transversal element mapping the `level`-th base point to `point`.
    pub fn transversal(&self, level: usize, point: usize) -> Option<&Permutation> {
        self.levels[level].transversal[point].as_ref()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let p = h.apply(level.base_point);
            match &level.inverse_transversal[p] {
                Some(inv) => h = h.then(inv),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, depth) = self.sift_from(g, 0);
        depth == self.levels.len() && h.is_identity()
    }

    // y fixes the first `upto` base points; it joins levels from..=upto.
    fn insert_strong(&mut self, y: Permutation, from: usize, upto: usize) {
        if upto == self.levels.len() {
            let point = y.smallest_moved_point().expect("non-identity residue");
            self.levels.push(Level::new(point, self.degree));
        }
        for l in from..=upto {
            self.levels[l].strong.push(y.clone());
            self.levels[l].rebuild_orbit(self.degree);
        }
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let level = i as usize;
            match self.failing_schreier_generator(level) {
                Some((y, depth)) => {
                    self.insert_strong(y, level + 1, depth);
                    i = depth as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &p in &lv.orbit {
            let u = lv.transversal[p].as_ref().expect("orbit point");
            for s in &lv.strong {
                let q = s.apply(p);
                let h = u.then(s).then(lv.inverse_transversal[q].as_ref().expect("orbit closed under strong gens"));
                if h.is_identity() {
                    continue;
                }
                let (residue, depth) = self.sift_from(&h, level + 1);
                if depth < self.levels.len() || !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
        }
        None
    }

    /// Orbit of a point under the generators, in discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            k += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Stabilizer of `point`, read off a chain whose first base point is `point`
    /// (rebuilding the chain if needed).
    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup, PermError> {
        let mut levels = if self.levels.first().map(|l| l.base_point) == Some(point) {
            self.levels.clone()
        } else {
            PermGroup::with_base(self.degree, self.generators.clone(), &[point])?.levels
        };
        let first = levels.remove(0);
        let generators = levels.first().map(|l| l.strong.clone()).unwrap_or_default();
        debug_assert_eq!(first.base_point, point);
        Ok(PermGroup { degree: self.degree, generators, levels })
    }

    /// Uniformly random element: a product of uniformly chosen transversal elements.
    pub fn random_element<R: RngCore + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in self.levels.iter().rev() {
            let p = level.orbit[(rng.next_u64() % level.orbit.len() as u64) as usize];
            g = g.then(level.transversal[p].as_ref().expect("orbit point"));
        }
        g
    }

    /// Calls `f` once per group element whose first transversal factor is
    /// indexed by `first` in the first basic orbit. The union over all
    /// `first` in `0..basic_orbit(0).len()` enumerates the group exactly once.
    pub fn for_each_element_in_coset(&self, first: usize, mut f: impl FnMut(&Permutation)) {
        if self.levels.is_empty() {
            if first == 0 {
                f(&self.identity());
            }
            return;
        }
        let top = &self.levels[0];
        let u = top.transversal[top.orbit[first]].as_ref().expect("orbit point").clone();
        self.descend(1, &u, &mut f);
    }

    fn descend(&self, level: usize, suffix: &Permutation, f: &mut impl FnMut(&Permutation)) {
        if level == self.levels.len() {
            f(suffix);
            return;
        }
        let lv = &self.levels[level];
        for &p in &lv.orbit {
            let g = lv.transversal[p].as_ref().expect("orbit point").then(suffix);
            self.descend(level + 1, &g, f);
        }
    }

    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        let count = self.levels.first().map_or(1, |l| l.orbit.len());
        for first in 0..count {
            self.for_each_element_in_coset(first, &mut f);
        }
    }

    /// Image group of a homomorphism given on generators.
    pub fn map_generators(
        &self,
        degree: usize,
        base_prefix: &[usize],
        mut map: impl FnMut(&Permutation) -> Permutation,
    ) -> Result<PermGroup, PermError> {
        let images = self.generators.iter().map(&mut map).collect();
        PermGroup::with_base(degree, images, base_prefix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn symmetric(m: usize) -> PermGroup {
        let mut cycle: Vec<usize> = (1..m).collect();
        cycle.push(0);
        let mut swap: Vec<usize> = (0..m).collect();
        swap.swap(0, 1);
        PermGroup::new(m, vec![p(&cycle), p(&swap)]).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let a = p(&[1, 2, 0]);
        let b = p(&[1, 0, 2]);
        assert_eq!(a.then(&b).apply(0), 0);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.cycle_type(), vec![3]);
        assert_eq!(b.cycle_type(), vec![2, 1]);
        assert!(Permutation::from_images(&[0, 0]).is_err());
        assert_eq!(a.apply_mask(0b011), 0b110);
    }

    #[test]
    fn symmetric_group_orders() {
        let factorials = [1u64, 1, 2, 6, 24, 120, 720, 5040, 40320];
        for m in 2..=8 {
            let g = symmetric(m);
            assert_eq!(g.order(), BigUint::from(factorials[m]), "S_{m}");
        }
    }

    #[test]
    fn enumeration_visits_each_element_once() {
        let g = symmetric(5);
        let mut seen = BTreeSet::new();
        g.for_each_element(|e| {
            assert!(g.contains(e));
            assert!(seen.insert(e.clone()));
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn membership_and_stabilizer() {
        // dihedral group of the square on 4 points
        let d4 = PermGroup::new(4, vec![p(&[1, 2, 3, 0]), p(&[0, 3, 2, 1])]).unwrap();
        assert_eq!(d4.order(), BigUint::from(8u32));
        assert!(d4.contains(&p(&[2, 3, 0, 1])));
        assert!(!d4.contains(&p(&[1, 0, 2, 3])));
        let stab = d4.point_stabilizer(0).unwrap();
        assert_eq!(stab.order(), BigUint::from(2u32));
        for g in stab.generators() {
            assert_eq!(g.apply(0), 0);
        }
        assert_eq!(d4.orbit(0).len() * 2, 8);
    }

    #[test]
    fn prescribed_base_keeps_order() {
        let g = symmetric(6);
        let rebased = PermGroup::with_base(6, g.generators().to_vec(), &[5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(rebased.order(), g.order());
        assert_eq!(rebased.base(), vec![5, 4, 3, 2, 1, 0]);
        assert_eq!(rebased.basic_orbit_lengths(), vec![6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn random_elements_are_members() {
        let g = symmetric(7);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert!(g.contains(&g.random_element(&mut rng)));
        }
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(3, vec![Permutation::identity(3)]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        let mut count = 0;
        g.for_each_element(|_| count += 1);
        assert_eq!(count, 1);
    }
}
