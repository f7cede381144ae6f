//! Target graphs (the `G` and `H` of every parameter) with derived metadata,
//! the named-family factory, and unlabeled copy enumeration.

use crate::embed::{automorphism_count, orbit_constraints, Plan, Search};
use crate::error::{param, Error, Result};
use crate::graph::{bits, edge_id, EdgeId, SimpleGraph};
use std::fmt;
use std::sync::OnceLock;

/// Named graph families. Vertex labelings are fixed per family:
///
/// * `Complete(r)`: vertices `0..r`.
/// * `Star(r)`: centre `0`, leaves `1..=r`.
/// * `CompleteBipartite(a, b)`: sides `0..a` and `a..a+b`.
/// * `Matching(t)`: edges `{2i, 2i+1}`.
/// * `Path(k)`: `0-1-…-(k-1)`; `Cycle(k)` adds `{k-1, 0}`.
/// * `CompleteMinusClique(k, t)`: `K_k` without the edges inside `0..t`.
/// * `CompleteMinusFactor(k)`: `K_k` without the edges `{2i, 2i+1}`.
/// * `Turan(n, p)`: complete `p`-partite graph with contiguous, balanced parts,
///   the first `n mod p` parts one larger.
/// * `Join` / `Union`: left operand first, right operand shifted.
/// * `Copies(t, F)`: `t` disjoint copies of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    Empty(usize),
    Star(usize),
    CompleteBipartite(usize, usize),
    Matching(usize),
    Path(usize),
    Cycle(usize),
    CompleteMinusClique(usize, usize),
    CompleteMinusFactor(usize),
    Turan(usize, usize),
    Join(Box<Family>, Box<Family>),
    Union(Box<Family>, Box<Family>),
    Copies(usize, Box<Family>),
    EdgeList(SimpleGraph),
}

impl Family {
    pub fn build(&self) -> Result<SimpleGraph> {
        use Family::*;
        Ok(match *self {
            Complete(r) => {
                if r == 0 {
                    return param("complete graph needs at least one vertex");
                }
                SimpleGraph::complete(r)
            }
            Empty(k) => SimpleGraph::empty(k),
            Star(r) => {
                if r == 0 {
                    return param("star needs at least one leaf");
                }
                SimpleGraph::empty(1).join(&SimpleGraph::empty(r))
            }
            CompleteBipartite(a, b) => {
                if a == 0 || b == 0 {
                    return param("complete bipartite sides must be non-empty");
                }
                SimpleGraph::empty(a).join(&SimpleGraph::empty(b))
            }
            Matching(t) => {
                if t == 0 {
                    return param("matching needs at least one edge");
                }
                let edges: Vec<_> = (0..t).map(|i| (2 * i, 2 * i + 1)).collect();
                SimpleGraph::from_edges(2 * t, &edges)?
            }
            Path(k) => {
                if k == 0 {
                    return param("path needs at least one vertex");
                }
                let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
                SimpleGraph::from_edges(k, &edges)?
            }
            Cycle(k) => {
                if k < 3 {
                    return param(format!("cycle needs at least 3 vertices, got {k}"));
                }
                let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
                edges.push((0, k - 1));
                SimpleGraph::from_edges(k, &edges)?
            }
            CompleteMinusClique(k, t) => {
                if t == 0 || t + 2 > k {
                    return param(format!("K_{k}^-{t} needs 1 <= t <= k-2"));
                }
                let mut g = SimpleGraph::complete(k);
                for v in 1..t {
                    for u in 0..v {
                        g.remove_edge(u, v);
                    }
                }
                g
            }
            CompleteMinusFactor(k) => {
                if k < 2 || k % 2 == 1 {
                    return param(format!("one-factor removal needs even k >= 2, got {k}"));
                }
                let mut g = SimpleGraph::complete(k);
                for i in 0..k / 2 {
                    g.remove_edge(2 * i, 2 * i + 1);
                }
                g
            }
            Turan(n, p) => {
                if p == 0 || n == 0 {
                    return param("Turan graph needs n, p >= 1");
                }
                let part = turan_parts(n, p);
                let mut g = SimpleGraph::empty(n);
                for v in 1..n {
                    for u in 0..v {
                        if part[u] != part[v] {
                            g.add_edge(u, v);
                        }
                    }
                }
                g
            }
            Join(ref a, ref b) => a.build()?.join(&b.build()?),
            Union(ref a, ref b) => a.build()?.disjoint_union(&b.build()?),
            Copies(t, ref f) => {
                if t == 0 {
                    return param("number of copies must be positive");
                }
                let one = f.build()?;
                let mut g = one.clone();
                for _ in 1..t {
                    g = g.disjoint_union(&one);
                }
                g
            }
            EdgeList(ref g) => g.clone(),
        })
    }

    /// Parses family strings such as `K4`, `K1,3`, `3K2`, `C5`, `P4`,
    /// `path7`, `K6-K2`, `K4-PM`, `T(7,3)`, `E3`, with `+` for join and `|`
    /// for disjoint union (`|` binds loosest).
    pub fn parse(s: &str) -> Result<Family> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty family string".into()));
        }
        if let Some((a, b)) = split_top(s, '|') {
            return Ok(Family::Union(Box::new(Self::parse(a)?), Box::new(Self::parse(b)?)));
        }
        if let Some((a, b)) = split_top(s, '+') {
            return Ok(Family::Join(Box::new(Self::parse(a)?), Box::new(Self::parse(b)?)));
        }
        let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
        if !digits.is_empty() {
            let t: usize = digits.parse().map_err(|_| Error::Parse(format!("bad multiplier in '{s}'")))?;
            let rest = &s[digits.len()..];
            return Ok(Family::Copies(t, Box::new(Self::parse_atom(rest)?)));
        }
        Self::parse_atom(s)
    }

    fn parse_atom(s: &str) -> Result<Family> {
        let bad = || Error::Parse(format!("unrecognised family '{s}'"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("path") {
            return Ok(Family::Path(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("T(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(Family::Turan(num(a)?, num(b)?));
        }
        if let Some(rest) = s.strip_prefix('K') {
            if let Some((k, minus)) = rest.split_once('-') {
                let k = num(k)?;
                if minus == "PM" {
                    return Ok(Family::CompleteMinusFactor(k));
                }
                let t = minus.strip_prefix('K').ok_or_else(bad)?;
                return Ok(Family::CompleteMinusClique(k, num(t)?));
            }
            if let Some((a, b)) = rest.split_once(',') {
                let (a, b) = (num(a)?, num(b)?);
                return Ok(if a == 1 { Family::Star(b) } else { Family::CompleteBipartite(a, b) });
            }
            return Ok(Family::Complete(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('C') {
            return Ok(Family::Cycle(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('P') {
            return Ok(Family::Path(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('E') {
            return Ok(Family::Empty(num(rest)?));
        }
        Err(bad())
    }
}

fn split_top(s: &str, sep: char) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

pub(crate) fn turan_parts(n: usize, p: usize) -> Vec<usize> {
    let (base, extra) = (n / p, n % p);
    let mut part = Vec::with_capacity(n);
    for i in 0..p {
        let size = base + usize::from(i < extra);
        part.extend(std::iter::repeat_n(i, size));
    }
    part
}

/// A target graph with its derived metadata.
pub struct PatternGraph {
    name: String,
    graph: SimpleGraph,
    degseq: Vec<usize>,
    chi: usize,
    est_assumed: bool,
    plan: Plan,
    orbits: OnceLock<Vec<Vec<usize>>>,
    aut: OnceLock<u64>,
}

impl Clone for PatternGraph {
    fn clone(&self) -> Self {
        let mut p = PatternGraph::from_graph(self.name.clone(), self.graph.clone());
        p.est_assumed = self.est_assumed;
        p
    }
}

impl fmt::Debug for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k={}, m={}, chi={})", self.name, self.k(), self.m(), self.chi)
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl PatternGraph {
    pub fn from_graph(name: impl Into<String>, graph: SimpleGraph) -> Self {
        let mut degseq: Vec<usize> = (0..graph.n()).map(|v| graph.degree(v)).collect();
        degseq.sort_unstable_by(|a, b| b.cmp(a));
        let chi = chromatic_number(&graph);
        let plan = Plan::new(&graph);
        PatternGraph {
            name: name.into(),
            graph,
            degseq,
            chi,
            est_assumed: false,
            plan,
            orbits: OnceLock::new(),
            aut: OnceLock::new(),
        }
    }

    pub fn make(family: &Family) -> Result<Self> {
        Ok(Self::from_graph(family_name(family), family.build()?))
    }

    /// Parses a family string (see [`Family::parse`]).
    pub fn parse(s: &str) -> Result<Self> {
        let fam = Family::parse(s)?;
        Ok(Self::from_graph(s.trim(), fam.build()?))
    }

    pub fn complete(r: usize) -> Self {
        Self::make(&Family::Complete(r)).expect("valid complete graph")
    }
    pub fn star(r: usize) -> Self {
        Self::make(&Family::Star(r)).expect("valid star")
    }
    pub fn matching(t: usize) -> Self {
        Self::make(&Family::Matching(t)).expect("valid matching")
    }
    pub fn path(k: usize) -> Self {
        Self::make(&Family::Path(k)).expect("valid path")
    }

    /// Marks this tree as assumed to satisfy `ex(n,T) <= (k-2)n/2`.
    pub fn assume_est(mut self) -> Result<Self> {
        if !self.is_tree() {
            return Err(Error::Parameter(format!("{} is not a tree", self.name)));
        }
        self.est_assumed = true;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }
    pub fn k(&self) -> usize {
        self.graph.n()
    }
    pub fn m(&self) -> usize {
        self.graph.edge_count()
    }
    /// Degrees in non-increasing order.
    pub fn degseq(&self) -> &[usize] {
        &self.degseq
    }
    pub fn chi(&self) -> usize {
        self.chi
    }
    pub fn est_assumed(&self) -> bool {
        self.est_assumed
    }

    pub fn is_tree(&self) -> bool {
        self.k() >= 1 && self.m() + 1 == self.k() && self.graph.is_connected()
    }

    /// `Some(r)` when the graph is the star `K_{1,r}` (including `K_2`).
    pub fn star_leaves(&self) -> Option<usize> {
        let k = self.k();
        if k < 2 || self.m() != k - 1 {
            return None;
        }
        (self.degseq[0] == k - 1).then_some(k - 1)
    }

    pub(crate) fn plan(&self) -> &Plan {
        &self.plan
    }

    pub(crate) fn orbit_constraints(&self) -> &[Vec<usize>] {
        self.orbits.get_or_init(|| orbit_constraints(&self.graph, &self.plan))
    }

    /// Order of the automorphism group.
    pub fn automorphisms(&self) -> u64 {
        *self.aut.get_or_init(|| automorphism_count(&self.graph, &self.plan))
    }

    /// Streams every unlabeled copy of the pattern in `host` exactly once, as
    /// a map pattern vertex → host vertex. `visit` returns `false` to stop.
    pub fn for_each_copy(&self, host: &SimpleGraph, visit: &mut dyn FnMut(&[usize]) -> bool) {
        if self.k() > host.n() {
            return;
        }
        let lower = self.orbit_constraints();
        let s = Search { lower: Some(lower), ..Search::new(&self.plan, host.adjacency()) };
        s.run(visit);
    }

    /// All unlabeled copies in `host`.
    pub fn copies(&self, host: &SimpleGraph) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_copy(host, &mut |m| {
            out.push(m.to_vec());
            true
        });
        out
    }

    pub fn count_copies(&self, host: &SimpleGraph) -> u64 {
        let mut c = 0;
        self.for_each_copy(host, &mut |_| {
            c += 1;
            true
        });
        c
    }

    /// Number of injective edge-preserving vertex maps into `host`, by direct
    /// enumeration.
    pub fn count_labeled(&self, host: &SimpleGraph) -> u64 {
        if self.k() > host.n() {
            return 0;
        }
        let mut c = 0;
        Search::new(&self.plan, host.adjacency()).run(&mut |_| {
            c += 1;
            true
        });
        c
    }

    /// Host edge ids covered by an embedding, in pattern edge order.
    pub fn image_edges(&self, embedding: &[usize]) -> Vec<EdgeId> {
        self.graph.edges().iter().map(|&(u, v)| edge_id(embedding[u], embedding[v])).collect()
    }

    /// The vertex-deleted subgraphs, one per vertex, duplicates retained.
    pub fn deck(&self) -> Vec<PatternGraph> {
        (0..self.k())
            .map(|v| PatternGraph::from_graph(format!("{}-v{v}", self.name), self.graph.remove_vertex(v)))
            .collect()
    }
}

fn family_name(f: &Family) -> String {
    use Family::*;
    match f {
        Complete(r) => format!("K{r}"),
        Empty(k) => format!("E{k}"),
        Star(r) => format!("K1,{r}"),
        CompleteBipartite(a, b) => format!("K{a},{b}"),
        Matching(t) => format!("{t}K2"),
        Path(k) => format!("P{k}"),
        Cycle(k) => format!("C{k}"),
        CompleteMinusClique(k, t) => format!("K{k}-K{t}"),
        CompleteMinusFactor(k) => format!("K{k}-PM"),
        Turan(n, p) => format!("T({n},{p})"),
        Join(a, b) => format!("{}+{}", family_name(a), family_name(b)),
        Union(a, b) => format!("{}|{}", family_name(a), family_name(b)),
        Copies(t, g) => format!("{t}{}", family_name(g)),
        EdgeList(g) => format!("graph({})", g.to_graph6()),
    }
}

fn max_clique(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    let mut rest = cand;
    while rest != 0 {
        if size + rest.count_ones() as usize <= *best {
            return;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        max_clique(adj, rest & adj[v], size + 1, best);
    }
}

pub fn clique_number(g: &SimpleGraph) -> usize {
    let mut best = 0;
    max_clique(g.adjacency(), crate::graph::full_mask(g.n()), 0, &mut best);
    best
}

fn colorable(g: &SimpleGraph, order: &[usize], colors: &mut [usize], i: usize, c: usize) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    let mut used = 0u64;
    for u in bits(g.neighbors(v)) {
        if colors[u] != usize::MAX {
            used |= 1 << colors[u];
        }
    }
    // symmetry: never open more than one new colour
    let opened = order[..i].iter().map(|&u| colors[u] + 1).max().unwrap_or(0);
    for col in 0..c.min(opened + 1) {
        if used >> col & 1 == 0 {
            colors[v] = col;
            if colorable(g, order, colors, i + 1, c) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Exact chromatic number: smallest `c` admitting a proper colouring, starting
/// from the clique number.
pub fn chromatic_number(g: &SimpleGraph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut c = clique_number(g).max(1);
    loop {
        let mut colors = vec![usize::MAX; g.n()];
        if colorable(g, &order, &mut colors, 0, c) {
            return c;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PatternGraph {
        PatternGraph::parse(s).unwrap()
    }

    #[test]
    fn complete_metadata() {
        let k4 = PatternGraph::complete(4);
        assert_eq!((k4.k(), k4.m(), k4.chi()), (4, 6, 4));
        assert_eq!(k4.degseq(), &[3, 3, 3, 3]);
        assert_eq!(k4.automorphisms(), 24);
    }

    #[test]
    fn k4_minus_edge_is_three_chromatic() {
        let g = PatternGraph::make(&Family::CompleteMinusClique(4, 2)).unwrap();
        assert_eq!((g.m(), g.chi()), (5, 3));
    }

    #[test]
    fn one_factor_removal_of_k4_is_c4() {
        let g = PatternGraph::make(&Family::CompleteMinusFactor(4)).unwrap();
        assert!((0..4).all(|v| g.graph().degree(v) == 2));
        let c4 = PatternGraph::make(&Family::Cycle(4)).unwrap();
        // brute-force isomorphism over all 24 relabelings
        let mut found = false;
        let mut perm = [0usize, 1, 2, 3];
        permute(&mut perm, 0, &mut |pm| {
            if g.graph().relabel(pm) == *c4.graph() {
                found = true;
            }
        });
        assert!(found);
    }

    fn permute(a: &mut [usize; 4], i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == a.len() {
            f(a);
            return;
        }
        for j in i..a.len() {
            a.swap(i, j);
            permute(a, i + 1, f);
            a.swap(i, j);
        }
    }

    #[test]
    fn inconsistent_parameters() {
        assert!(PatternGraph::make(&Family::CompleteMinusClique(4, 3)).is_err());
        assert!(PatternGraph::make(&Family::CompleteMinusFactor(5)).is_err());
        assert!(PatternGraph::make(&Family::Cycle(2)).is_err());
    }

    #[test]
    fn parse_family_strings() {
        assert_eq!(p("K4").m(), 6);
        assert_eq!(p("K1,3").star_leaves(), Some(3));
        assert_eq!((p("3K2").k(), p("3K2").m()), (6, 3));
        assert_eq!(p("C5").chi(), 3);
        assert_eq!(p("K6-K2").m(), 14);
        assert_eq!(p("path7").m(), 6);
        assert_eq!(p("P3").star_leaves(), Some(2));
        assert_eq!(p("T(7,3)").m(), 16);
        assert_eq!(p("C5+K1").chi(), 4);
        assert_eq!(p("K3|K2").m(), 4);
        assert_eq!(p("2K1,3").m(), 6);
        assert!(PatternGraph::parse("Q7").is_err());
    }

    #[test]
    fn copies_in_complete_hosts() {
        let k6 = SimpleGraph::complete(6);
        let k7 = SimpleGraph::complete(7);
        assert_eq!(PatternGraph::matching(3).count_copies(&k6), 15);
        assert_eq!(PatternGraph::matching(3).count_copies(&k7), 105);
        assert_eq!(PatternGraph::path(3).count_copies(&k6), 60);
        assert_eq!(PatternGraph::complete(3).count_copies(&SimpleGraph::complete(3)), 1);
    }

    #[test]
    fn labeled_count_is_copies_times_automorphisms() {
        let host = SimpleGraph::complete(6);
        for s in ["K3", "P4", "2K2", "K1,3", "C4", "K4-K2", "C5"] {
            let g = p(s);
            assert_eq!(g.count_labeled(&host), g.count_copies(&host) * g.automorphisms(), "{s}");
        }
    }

    #[test]
    fn copies_are_distinct_subgraphs() {
        let host = SimpleGraph::complete(6);
        for s in ["P4", "C4", "2K2", "K1,3", "K3|K1"] {
            let g = p(s);
            let mut seen = std::collections::HashSet::new();
            for emb in g.copies(&host) {
                let mut e = g.image_edges(&emb);
                e.sort();
                let vmask: u64 = emb.iter().map(|&v| 1u64 << v).sum();
                assert!(seen.insert((vmask, e)), "{s} repeated");
            }
        }
    }

    #[test]
    fn decks() {
        let d = PatternGraph::complete(4).deck();
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|h| h.k() == 3 && h.m() == 3));
        let mut s: Vec<(usize, usize)> = p("P3").deck().iter().map(|h| (h.k(), h.m())).collect();
        s.sort();
        assert_eq!(s, vec![(2, 0), (2, 1), (2, 1)]);
        let mut s: Vec<(usize, usize)> = p("K1,3").deck().iter().map(|h| (h.k(), h.m())).collect();
        s.sort();
        assert_eq!(s, vec![(3, 0), (3, 2), (3, 2), (3, 2)]);
    }
}
