//! Simple graphs on at most 32 vertices and their Seidel matrices.

use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::linalg::IntMatrix;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loops are not allowed (vertex {0})")]
    Loop(usize),
}

/// Undirected loopless graph; row `i` of `adj` is the neighbourhood bitmask of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_VERTICES],
}

/// Vertex subset as a bitmask over `0..n`.
pub type VertexSet = u32;

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph { n, adj: [0; MAX_VERTICES] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let all = g.all_vertices();
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n)?;
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// `K_{s+t}` with a matching of size `t` removed.
    pub fn complete_minus_matching(s: usize, t: usize) -> Result<Self, GraphError> {
        let mut g = Self::complete(s + t)?;
        for i in 0..t.min((s + t) / 2) {
            g.remove_edge(2 * i, 2 * i + 1);
        }
        Ok(g)
    }

    /// Graph whose edges are the set bits of `bits`, enumerating pairs
    /// `(i, j)`, `i < j`, in row-major order of the strict upper triangle.
    pub fn from_edge_bits(n: usize, bits: u64) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if k < 64 && bits >> k & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Uniformly random labelled graph on `n` vertices.
    pub fn random<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if rng.next_u32() & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn all_vertices(&self) -> VertexSet {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        for v in [a, b] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if a == b {
            return Err(GraphError::Loop(a));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        if a < self.n && b < self.n {
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).filter(move |&j| self.has_edge(i, j)).map(move |j| (i, j)))
    }

    /// Seidel switching with respect to `u`: adjacency across the cut
    /// `(u, V∖u)` is complemented, adjacency on either side is kept.
    pub fn switch(&self, u: VertexSet) -> Graph {
        let all = self.all_vertices();
        let u = u & all;
        let mut out = *self;
        for v in 0..self.n {
            let other_side = if u >> v & 1 == 1 { all & !u } else { u };
            out.adj[v] = self.adj[v] ^ other_side;
        }
        out
    }

    /// The cone: a new vertex `n` joined to every existing vertex.
    pub fn cone(&self) -> Result<Graph, GraphError> {
        if self.n >= MAX_VERTICES {
            return Err(GraphError::TooLarge(self.n + 1));
        }
        let mut out = *self;
        out.n += 1;
        let apex = self.n;
        out.adj[apex] = self.all_vertices();
        for v in 0..self.n {
            out.adj[v] |= 1 << apex;
        }
        Ok(out)
    }

    pub fn complement(&self) -> Graph {
        let all = self.all_vertices();
        let mut out = *self;
        for v in 0..self.n {
            out.adj[v] = all & !self.adj[v] & !(1 << v);
        }
        out
    }

    /// Relabels vertex `v` as `labels[v]`; `labels` must be a permutation of `0..n`.
    pub fn relabel(&self, labels: &[usize]) -> Graph {
        debug_assert_eq!(labels.len(), self.n);
        let mut out = Graph { n: self.n, adj: [0; MAX_VERTICES] };
        for v in 0..self.n {
            let mut row = self.adj[v];
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                out.adj[labels[v]] |= 1 << labels[w];
            }
        }
        out
    }

    /// The graph with vertex `v` deleted; later vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        let mut out = Graph { n: self.n - 1, adj: [0; MAX_VERTICES] };
        let low = (1u32 << v) - 1;
        for (dst, src) in (0..self.n).filter(|&w| w != v).enumerate() {
            let row = self.adj[src];
            out.adj[dst] = (row & low) | ((row >> 1) & !low);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: u32 = 1;
        let mut frontier: u32 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == self.all_vertices()
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| self.has_edge(i, j) as i64)
    }

    /// `S(G) = J − I − 2A(G)`.
    pub fn seidel_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, |i, j| {
            if i == j {
                0
            } else if self.has_edge(i, j) {
                -1
            } else {
                1
            }
        })
    }

    /// Raw neighbourhood rows `0..n`.
    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.n]
    }

    /// Builds a graph from symmetric loop-free neighbourhood rows.
    pub fn from_rows(rows: &[u32]) -> Result<Self, GraphError> {
        let mut g = Self::empty(rows.len())?;
        for (v, &row) in rows.iter().enumerate() {
            for w in 0..rows.len() {
                if row >> w & 1 == 1 {
                    g.add_edge(v, w)?;
                }
            }
        }
        Ok(g)
    }
}

/// `S(G)`; free-function form of [`Graph::seidel_matrix`].
pub fn seidel_of_graph(g: &Graph) -> IntMatrix {
    g.seidel_matrix()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        f.debug_struct("Graph").field("n", &self.n).field("edges", &edges).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_eig_le, IntMatrix};
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), any::<u64>()).prop_map(move |(n, bits)| {
                let mask = if pairs >= 64 { u64::MAX } else { (1u64 << pairs) - 1 };
                Graph::from_edge_bits(n, bits & mask).unwrap()
            })
        })
    }

    #[test]
    fn seidel_examples() {
        let e3 = Graph::empty(3).unwrap();
        assert_eq!(e3.seidel_matrix(), IntMatrix::ones(3).add_scalar(-1));
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.seidel_matrix(), IntMatrix::from_fn(3, |i, j| if i == j { 0 } else { -1 }));
        assert_eq!(Graph::empty(0).unwrap().seidel_matrix().order(), 0);
    }

    #[test]
    fn switch_k3_at_one_vertex() {
        let k3 = Graph::complete(3).unwrap();
        let g = k3.switch(1 << 0);
        assert_eq!(g, Graph::from_edges(3, &[(1, 2)]).unwrap());
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn cone_examples() {
        assert_eq!(Graph::empty(0).unwrap().cone().unwrap(), Graph::complete(1).unwrap());
        assert_eq!(Graph::complete(3).unwrap().cone().unwrap(), Graph::complete(4).unwrap());
        let w4 = Graph::cycle(4).unwrap().cone().unwrap();
        assert_eq!(w4.degree(4), 4);
        assert_eq!(w4.edge_count(), 8);
        assert!(Graph::empty(32).unwrap().cone().is_err());
        assert!(Graph::empty(33).is_err());
    }

    #[test]
    fn complete_minus_matching_shape() {
        let d = Graph::complete_minus_matching(6, 1).unwrap();
        assert_eq!(d.order(), 7);
        assert_eq!(d.edge_count(), 20);
        let c4 = Graph::complete_minus_matching(2, 2).unwrap();
        assert!((0..4).all(|v| c4.degree(v) == 2));
    }

    #[test]
    fn delete_vertex_keeps_other_adjacency() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 3), (2, 3)]).unwrap();
        let h = g.delete_vertex(1);
        assert_eq!(h, Graph::from_edges(3, &[(1, 2)]).unwrap());
    }

    proptest! {
        #[test]
        fn switch_is_a_group_action(g in arb_graph(9), u in any::<u32>(), w in any::<u32>()) {
            prop_assert_eq!(g.switch(0), g);
            prop_assert_eq!(g.switch(u).switch(u), g);
            prop_assert_eq!(g.switch(u ^ w), g.switch(u).switch(w));
        }

        #[test]
        fn switching_conjugates_by_signed_diagonal(g in arb_graph(9), u in any::<u32>()) {
            let s = g.seidel_matrix();
            let t = g.switch(u).seidel_matrix();
            let sign = |v: usize| if u >> v & 1 == 1 { -1i64 } else { 1 };
            for i in 0..g.order() {
                for j in 0..g.order() {
                    let expected = s.get(i, j) * sign(i) * sign(j);
                    prop_assert_eq!(t.get(i, j), &expected);
                }
            }
        }

        #[test]
        fn largest_eigenvalue_bound_is_switching_invariant(g in arb_graph(8), u in any::<u32>()) {
            prop_assert_eq!(
                max_eig_le(&g.seidel_matrix(), 3),
                max_eig_le(&g.switch(u).seidel_matrix(), 3)
            );
        }
    }
}
