//! Labeled simple graphs on at most 64 vertices and the colex edge-id encoding
//! of `E(K_n)`.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported vertex count (adjacency rows are `u64` bitsets).
pub const MAX_VERTICES: usize = 64;

/// Identifier of an unordered pair `{u, v}` of vertices.
///
/// The encoding is colexicographic: `id(u, v) = v(v-1)/2 + u` for `u < v`, so
/// the ids of `E(K_n)` are exactly `0..n(n-1)/2` and do not depend on `n`.
pub type EdgeId = u32;

/// `n choose 2`.
#[inline]
pub const fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
pub fn edge_id(u: usize, v: usize) -> EdgeId {
    debug_assert!(u != v);
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (b * (b - 1) / 2 + a) as EdgeId
}

/// Inverse of [`edge_id`]; returns `(u, v)` with `u < v`.
#[inline]
pub fn edge_ends(id: EdgeId) -> (usize, usize) {
    let id = id as usize;
    // largest v with v(v-1)/2 <= id
    let mut v = ((1.0 + (1.0 + 8.0 * id as f64).sqrt()) / 2.0) as usize;
    while v * (v - 1) / 2 > id {
        v -= 1;
    }
    while (v + 1) * v / 2 <= id {
        v += 1;
    }
    (id - v * (v - 1) / 2, v)
}

/// Bitmask of the two endpoints of an edge.
#[inline]
pub fn edge_mask(id: EdgeId) -> u64 {
    let (u, v) = edge_ends(id);
    (1u64 << u) | (1u64 << v)
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices supported");
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        let full = full_mask(n);
        for v in 0..n {
            g.adj[v] = full & !(1u64 << v);
        }
        g
    }

    /// Builds a graph from vertex pairs, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Parameter(format!("{n} vertices exceeds limit {MAX_VERTICES}")));
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::Parameter(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Parameter(format!("duplicate edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn from_edge_ids(n: usize, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut g = Self::empty(n);
        for id in ids {
            let (u, v) = edge_ends(id);
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph directly from adjacency rows.
    pub fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        debug_assert!((0..n).all(|v| adj[v] >> v & 1 == 0));
        SimpleGraph { n, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn has_edge_id(&self, id: EdgeId) -> bool {
        let (u, v) = edge_ends(id);
        v < self.n && self.has_edge(u, v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in increasing edge-id order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 0..self.n {
            let mut lower = self.adj[v] & ((1u64 << v) - 1);
            while lower != 0 {
                let u = lower.trailing_zeros() as usize;
                lower &= lower - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_ids(&self) -> Vec<EdgeId> {
        self.edges().into_iter().map(|(u, v)| edge_id(u, v)).collect()
    }

    pub fn complement(&self) -> Self {
        let full = full_mask(self.n);
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1u64 << v)).collect();
        SimpleGraph { n: self.n, adj }
    }

    /// Subgraph induced on the vertices of `mask`, relabeled in increasing order.
    pub fn induced(&self, mask: u64) -> Self {
        let verts: Vec<usize> = bits(mask).collect();
        let mut g = Self::empty(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Copy of the graph with vertex `v` mapped to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn remove_vertex(&self, v: usize) -> Self {
        self.induced(full_mask(self.n) & !(1u64 << v))
    }

    /// Vertex sets of the connected components (isolated vertices included).
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut g = Self::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Self) -> Self {
        let mut g = self.disjoint_union(other);
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, v + self.n);
            }
        }
        g
    }

    /// Parses the edge-list text format: a `k m` header followed by `m`
    /// lines `u v`. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let nums = parse_ints(header)?;
        if nums.len() != 2 {
            return Err(Error::Parse(format!("bad header '{header}', expected 'k m'")));
        }
        let (k, m) = (nums[0], nums[1]);
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let uv = parse_ints(line)?;
            if uv.len() != 2 {
                return Err(Error::Parse(format!("bad edge line '{line}'")));
            }
            edges.push((uv[0], uv[1]));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
        }
        Self::from_edges(k, &edges).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// graph6 encoding (n ≤ 62 uses the one-byte size prefix; larger n the
    /// four-byte form).
    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        let n = self.n;
        if n <= 62 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            out.push(((n >> 12) & 63) as u8 + 63);
            out.push(((n >> 6) & 63) as u8 + 63);
            out.push((n & 63) as u8 + 63);
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        for v in 1..n {
            for u in 0..v {
                acc = (acc << 1) | self.has_edge(u, v) as u8;
                nbits += 1;
                if nbits == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            out.push((acc << (6 - nbits)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }

    pub fn parse_graph6(text: &str) -> Result<Self> {
        let s = text.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse("empty graph6 string".into()));
        }
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(Error::Parse("graph6 byte out of range".into()));
        }
        let (n, body) = if bytes[0] == 126 {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(Error::Parse("unsupported graph6 size prefix".into()));
            }
            let n = ((bytes[1] - 63) as usize) << 12 | ((bytes[2] - 63) as usize) << 6 | (bytes[3] - 63) as usize;
            (n, &bytes[4..])
        } else {
            ((bytes[0] - 63) as usize, &bytes[1..])
        };
        if n > MAX_VERTICES {
            return Err(Error::Parse(format!("{n} vertices exceeds limit {MAX_VERTICES}")));
        }
        let need = pairs(n).div_ceil(6);
        if body.len() != need {
            return Err(Error::Parse(format!("graph6 body has {} bytes, expected {need}", body.len())));
        }
        let mut g = Self::empty(n);
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                let byte = body[idx / 6] - 63;
                if byte >> (5 - idx % 6) & 1 == 1 {
                    g.add_edge(u, v);
                }
                idx += 1;
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn parse_ints(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("not an integer: '{t}'"))))
        .collect()
}

#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}
