//! Canonical labelling of graphs and canonical keys of switching classes.
//!
//! Graph canonical forms come from an individualization–refinement search:
//! equitable refinement of ordered partitions, first-non-singleton target
//! cells, and pruning by the automorphisms discovered at the leaves. The
//! canonical form is the leaf graph with the smallest packed adjacency.
//!
//! A switching class is keyed through its descendants: switching a graph by
//! the neighbourhood of `v` isolates `v`, and two graphs are switching
//! equivalent iff some descendants `G_v − v` and `H_w − w` are isomorphic.
//! The key is the minimum over `v` of the packed canonical form.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const CODE_WORDS: usize = MAX_VERTICES * (MAX_VERTICES - 1) / 2 / 64 + 1;

/// Ordered partition of the vertex set, cells as bitmasks.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u32; MAX_VERTICES],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cells = [0; MAX_VERTICES];
        let len = if n == 0 {
            0
        } else {
            cells[0] = if n == 32 { u32::MAX } else { (1 << n) - 1 };
            1
        };
        Partition { cells, len }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        self.cells[..self.len].iter().position(|c| c.count_ones() > 1)
    }

    fn insert(&mut self, at: usize, cell: u32) {
        self.cells.copy_within(at..self.len, at + 1);
        self.cells[at] = cell;
        self.len += 1;
    }

    fn individualize(&self, cell: usize, v: usize) -> Self {
        let mut out = *self;
        out.cells[cell] &= !(1 << v);
        out.insert(cell, 1 << v);
        out
    }

    /// Splits cells by neighbour counts into each splitter cell until the
    /// partition is equitable. Splits are ordered by ascending count and the
    /// scan restarts after every split, so the result depends only on the
    /// ordered partition and the graph, never on vertex names.
    fn refine(&mut self, g: &Graph) {
        let rows = g.rows();
        'restart: loop {
            for w in 0..self.len {
                let splitter = self.cells[w];
                for x in 0..self.len {
                    let cell = self.cells[x];
                    if cell.count_ones() < 2 {
                        continue;
                    }
                    let mut counts = [0u8; MAX_VERTICES];
                    let mut lo = u8::MAX;
                    let mut hi = 0u8;
                    let mut bits = cell;
                    while bits != 0 {
                        let v = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let c = (rows[v] & splitter).count_ones() as u8;
                        counts[v] = c;
                        lo = lo.min(c);
                        hi = hi.max(c);
                    }
                    if lo == hi {
                        continue;
                    }
                    let mut pieces = [0u32; MAX_VERTICES + 1];
                    let mut bits = cell;
                    while bits != 0 {
                        let v = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        pieces[counts[v] as usize] |= 1 << v;
                    }
                    self.cells[x] = 0;
                    for (k, &piece) in pieces[lo as usize..=hi as usize].iter().filter(|&&p| p != 0).enumerate() {
                        if k == 0 {
                            self.cells[x] = piece;
                        } else {
                            self.insert(x + k, piece);
                        }
                    }
                    continue 'restart;
                }
            }
            break;
        }
    }
}

#[derive(Clone, Copy)]
struct Leaf {
    labels: [u8; MAX_VERTICES],
    code: [u64; CODE_WORDS],
}

fn pack_code(g: &Graph) -> [u64; CODE_WORDS] {
    let mut code = [0u64; CODE_WORDS];
    let n = g.order();
    let mut k = 0;
    for i in 0..n {
        let row = g.neighbours(i);
        for j in i + 1..n {
            if row >> j & 1 == 1 {
                code[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    code
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<[u8; MAX_VERTICES]>,
}

impl Search<'_> {
    fn leaf(&mut self, p: &Partition, diverge: usize) -> Option<usize> {
        let n = self.g.order();
        let mut labels = [0u8; MAX_VERTICES];
        for (label, cell) in p.cells[..n].iter().enumerate() {
            labels[cell.trailing_zeros() as usize] = label as u8;
        }
        let mut map = [0usize; MAX_VERTICES];
        for v in 0..n {
            map[v] = labels[v] as usize;
        }
        let code = pack_code(&self.g.relabel(&map[..n]));
        let leaf = Leaf { labels, code };
        let Some(first) = self.first else {
            self.first = Some(leaf);
            self.best = Some(leaf);
            return None;
        };
        if code == first.code {
            self.record_automorphism(&first, &leaf);
            return Some(diverge);
        }
        let best = self.best.expect("best leaf set together with first");
        if code == best.code {
            self.record_automorphism(&best, &leaf);
        } else if code < best.code {
            self.best = Some(leaf);
        }
        None
    }

    // a, b with equal leaf graphs give the automorphism a⁻¹ ∘ b.
    fn record_automorphism(&mut self, a: &Leaf, b: &Leaf) {
        let n = self.g.order();
        let mut inverse = [0u8; MAX_VERTICES];
        for v in 0..n {
            inverse[a.labels[v] as usize] = v as u8;
        }
        let mut gamma = [0u8; MAX_VERTICES];
        for v in 0..n {
            gamma[v] = inverse[b.labels[v] as usize];
        }
        if (0..n).any(|v| gamma[v] as usize != v) {
            self.automorphisms.push(gamma);
        }
    }

    fn orbit_under_stabilizer(&self, start: usize, fixed: &[u8]) -> u32 {
        let mut orbit = 1u32 << start;
        loop {
            let mut grown = orbit;
            for gamma in self.automorphisms.iter().filter(|a| fixed.iter().all(|&f| a[f as usize] == f)) {
                let mut bits = orbit;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= 1 << gamma[v];
                }
            }
            if grown == orbit {
                return orbit;
            }
            orbit = grown;
        }
    }

    /// Returns `Some(depth)` to unwind to the node at that depth.
    fn run(&mut self, p: &Partition, prefix: &mut Vec<u8>, diverge: usize, on_first_path: bool) -> Option<usize> {
        let depth = prefix.len();
        if p.is_discrete(self.g.order()) {
            return self.leaf(p, diverge);
        }
        let cell = p.first_nonsingleton().expect("non-discrete partition has a non-singleton cell");
        let target = p.cells[cell];
        let mut explored = 0u32;
        let mut bits = target;
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if explored != 0 && self.orbit_under_stabilizer(w, prefix) & explored != 0 {
                continue;
            }
            let child_on_first = on_first_path && explored == 0;
            explored |= 1 << w;
            let mut child = p.individualize(cell, w);
            child.refine(self.g);
            prefix.push(w as u8);
            let child_diverge = if child_on_first { depth + 1 } else { diverge };
            let jump = self.run(&child, prefix, child_diverge, child_on_first);
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Canonical relabelling of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `labels[v]` is the canonical label of vertex `v`.
    pub labels: Vec<usize>,
    pub graph: Graph,
}

/// Canonical form under vertex relabelling: isomorphic graphs (and only those)
/// receive identical `graph` fields.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.order();
    if n <= 1 {
        return CanonicalForm { labels: (0..n).collect(), graph: *g };
    }
    let mut p = Partition::unit(n);
    p.refine(g);
    let mut search = Search { g, first: None, best: None, automorphisms: Vec::new() };
    let mut prefix = Vec::with_capacity(n);
    search.run(&p, &mut prefix, 0, true);
    let best = search.best.expect("search visits at least one leaf");
    let labels: Vec<usize> = best.labels[..n].iter().map(|&l| l as usize).collect();
    let graph = g.relabel(&labels);
    CanonicalForm { labels, graph }
}

/// Canonical identifier of a switching class.
///
/// Byte 0 is the vertex count; the remaining bytes are the big-endian packed
/// strict upper triangle (row-major) of the canonical representative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SwitchingClassKey {
    bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyError {
    #[error("key is empty")]
    Empty,
    #[error("key for {n} vertices must have {expected} bytes, found {found}")]
    Length { n: usize, expected: usize, found: usize },
    #[error("invalid hex digit in key")]
    Hex,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl SwitchingClassKey {
    fn pack(g: &Graph) -> Self {
        let n = g.order();
        let pairs = n * n.saturating_sub(1) / 2;
        let mut bytes = alloc::vec![0u8; 1 + pairs.div_ceil(8)];
        bytes[0] = n as u8;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if g.has_edge(i, j) {
                    bytes[1 + k / 8] |= 0x80 >> (k % 8);
                }
                k += 1;
            }
        }
        SwitchingClassKey { bytes }
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self, KeyError> {
        let n = *bytes.first().ok_or(KeyError::Empty)? as usize;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n).into());
        }
        let expected = 1 + (n * n.saturating_sub(1) / 2).div_ceil(8);
        if bytes.len() != expected {
            return Err(KeyError::Length { n, expected, found: bytes.len() });
        }
        Ok(SwitchingClassKey { bytes })
    }

    pub fn from_hex(hex: &str) -> Result<Self, KeyError> {
        if !hex.len().is_multiple_of(2) {
            return Err(KeyError::Hex);
        }
        let digit = |c: u8| match c {
            b'0'..=b'9' => Ok(c - b'0'),
            b'a'..=b'f' => Ok(c - b'a' + 10),
            _ => Err(KeyError::Hex),
        };
        let bytes = hex
            .as_bytes()
            .chunks(2)
            .map(|pair| Ok(digit(pair[0])? << 4 | digit(pair[1])?))
            .collect::<Result<Vec<u8>, KeyError>>()?;
        Self::from_bytes(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn order(&self) -> usize {
        self.bytes[0] as usize
    }

    /// Lowercase hex of the key bytes.
    pub fn to_hex(&self) -> String {
        const DIGITS: &[u8; 16] = b"0123456789abcdef";
        let mut s = String::with_capacity(self.bytes.len() * 2);
        for &b in &self.bytes {
            s.push(DIGITS[(b >> 4) as usize] as char);
            s.push(DIGITS[(b & 15) as usize] as char);
        }
        s
    }

    /// The canonical representative graph (vertex 0 isolated when `n ≥ 1`).
    pub fn graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n).expect("key order validated on construction");
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.bytes[1 + k / 8] & (0x80 >> (k % 8)) != 0 {
                    g.add_edge(i, j).expect("indices in range");
                }
                k += 1;
            }
        }
        g
    }
}

impl fmt::Debug for SwitchingClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SwitchingClassKey({})", self.to_hex())
    }
}

impl fmt::Display for SwitchingClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Descendant of `g` at `v`, canonically labelled and re-embedded with an
/// isolated vertex `0` in front.
fn isolated_descendant(g: &Graph, v: usize) -> Graph {
    let isolated = g.switch(g.neighbours(v));
    let canon = canonical_form(&isolated.delete_vertex(v)).graph;
    let mut rows = [0u32; MAX_VERTICES];
    for (i, &row) in canon.rows().iter().enumerate() {
        rows[i + 1] = row << 1;
    }
    Graph::from_rows(&rows[..g.order()]).expect("order unchanged")
}

/// Canonical key of the switching class of `S(g)`.
pub fn canonical_key(g: &Graph) -> SwitchingClassKey {
    let n = g.order();
    if n <= 1 {
        return SwitchingClassKey::pack(&Graph::empty(n).expect("n ≤ 1"));
    }
    (0..n)
        .map(|v| SwitchingClassKey::pack(&isolated_descendant(g, v)))
        .min()
        .expect("n ≥ 2")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("exhaustive enumeration on {n} vertices needs 2^{} graphs; limit is 7 (8 with override)", n * n.saturating_sub(1) / 2)]
    TooLarge { n: usize },
}

/// Number of labelled graphs on `n` vertices, as a bit width.
pub fn edge_slots(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Checks the exhaustive-enumeration guard: `n ≤ 7`, or `n = 8` with `allow_eight`.
pub fn check_enumeration_size(n: usize, allow_eight: bool) -> Result<(), EnumerationError> {
    if n <= 7 || (n == 8 && allow_eight) {
        Ok(())
    } else {
        Err(EnumerationError::TooLarge { n })
    }
}

/// Distinct switching-class keys of the graphs whose edge bitmask lies in `range`.
pub fn switching_keys_in_range(n: usize, range: Range<u64>) -> BTreeSet<SwitchingClassKey> {
    let mut keys = BTreeSet::new();
    for bits in range {
        let g = Graph::from_edge_bits(n, bits).expect("n checked by caller");
        keys.insert(canonical_key(&g));
    }
    keys
}

/// All switching classes on `n` vertices, by exhaustive enumeration of the
/// `2^(n(n−1)/2)` labelled graphs. Sorted.
pub fn all_switching_classes(n: usize, allow_eight: bool) -> Result<Vec<SwitchingClassKey>, EnumerationError> {
    check_enumeration_size(n, allow_eight)?;
    Ok(switching_keys_in_range(n, 0..1u64 << edge_slots(n)).into_iter().collect())
}
