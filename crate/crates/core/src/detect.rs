//! Detection of fixed, shifted, strongly shifted, free and exclusive copies of
//! a pattern under an edge mapping. Absence answers are always exhaustive.

use crate::embed::{Guard, Search};
use crate::error::{Error, Result};
use crate::graph::{bits, edge_id, edge_mask, EdgeId, SimpleGraph};
use crate::mapping::EdgeMapping;
use crate::pattern::PatternGraph;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `f(e) = e` on every edge of the copy.
    Fixed,
    /// `f(e) != e` on every edge.
    Shifted,
    /// `f(e) ∩ e = ∅` on every edge.
    StrongShifted,
    /// `f(e)` is never an edge of the copy.
    Free,
    /// `f(e)` avoids every vertex of the copy.
    Exclusive,
}

impl Relation {
    pub const ALL: [Relation; 5] =
        [Relation::Fixed, Relation::Shifted, Relation::StrongShifted, Relation::Free, Relation::Exclusive];

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(Relation::Fixed),
            "shifted" => Ok(Relation::Shifted),
            "strong_shifted" | "strong-shifted" | "strong" => Ok(Relation::StrongShifted),
            "free" => Ok(Relation::Free),
            "exclusive" => Ok(Relation::Exclusive),
            _ => Err(Error::Parse(format!(
                "unknown relation '{s}' (fixed|shifted|strong_shifted|free|exclusive)"
            ))),
        }
    }

    /// Whether the copy with edge set `edges` and vertex set `verts` stands in
    /// this relation to `f`.
    pub fn holds(self, f: &EdgeMapping, edges: &[EdgeId], verts: u64) -> bool {
        edges.iter().all(|&e| {
            let t = f.image(e);
            match self {
                Relation::Fixed => t == e,
                Relation::Shifted => t != e,
                Relation::StrongShifted => f.overlap(e) == 0,
                Relation::Free => !edges.contains(&t),
                Relation::Exclusive => edge_mask(t) & verts == 0,
            }
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Fixed => "fixed",
            Relation::Shifted => "shifted",
            Relation::StrongShifted => "strong_shifted",
            Relation::Free => "free",
            Relation::Exclusive => "exclusive",
        })
    }
}

/// A copy of a pattern witnessing a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: Relation,
    /// Pattern vertex `i` is placed on host vertex `embedding[i]`.
    pub embedding: Vec<usize>,
    pub checked: bool,
}

impl Certificate {
    pub fn edges(&self, h: &PatternGraph) -> Vec<EdgeId> {
        h.image_edges(&self.embedding)
    }
    pub fn vertex_mask(&self) -> u64 {
        self.embedding.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// Re-checks an embedding from scratch against the definitions.
pub fn validate(f: &EdgeMapping, h: &PatternGraph, kind: Relation, embedding: &[usize]) -> bool {
    if embedding.len() != h.k() || embedding.iter().any(|&v| v >= f.n()) {
        return false;
    }
    let verts = embedding.iter().fold(0u64, |m, &v| m | 1 << v);
    if verts.count_ones() as usize != h.k() {
        return false;
    }
    kind.holds(f, &h.image_edges(embedding), verts)
}

fn certify(f: &EdgeMapping, h: &PatternGraph, kind: Relation, embedding: Vec<usize>) -> Certificate {
    let checked = validate(f, h, kind, &embedding);
    assert!(checked, "detector produced an invalid {kind} certificate for {h}");
    Certificate { kind, embedding, checked }
}

/// Host graph every copy in relation `kind` must live in.
fn carrier(f: &EdgeMapping, kind: Relation) -> SimpleGraph {
    match kind {
        Relation::Fixed => f.fixed_graph(),
        Relation::Shifted | Relation::Free => f.shifted_graph(),
        Relation::StrongShifted | Relation::Exclusive => f.strong_shifted_graph(),
    }
}

/// First copy of `h` in relation `kind` to `f`, or `None` when there is none.
/// Patterns larger than `K_n` trivially have none.
pub fn find(f: &EdgeMapping, h: &PatternGraph, kind: Relation) -> Option<Certificate> {
    if h.k() > f.n() {
        return None;
    }
    if h.m() == 0 {
        return Some(certify(f, h, kind, (0..h.k()).collect()));
    }
    let host = carrier(f, kind);
    if matches!(kind, Relation::Free | Relation::Exclusive) {
        if let Some(r) = h.star_leaves() {
            return find_star(f, h, r, kind, &host).map(|emb| certify(f, h, kind, emb));
        }
    }
    let guard = match kind {
        Relation::Free => Guard::Free { image: f.images() },
        Relation::Exclusive => Guard::Exclusive { image_mask: f.image_masks() },
        _ => Guard::None,
    };
    let mut found = None;
    let s = Search { guard, lower: Some(h.orbit_constraints()), ..Search::new(h.plan(), host.adjacency()) };
    s.run(&mut |emb| {
        found = Some(emb.to_vec());
        false
    });
    found.map(|emb| certify(f, h, kind, emb))
}

pub fn find_fixed(f: &EdgeMapping, g: &PatternGraph) -> Option<Certificate> {
    find(f, g, Relation::Fixed)
}
pub fn find_free(f: &EdgeMapping, h: &PatternGraph) -> Option<Certificate> {
    find(f, h, Relation::Free)
}
pub fn find_exclusive(f: &EdgeMapping, h: &PatternGraph) -> Option<Certificate> {
    find(f, h, Relation::Exclusive)
}
pub fn find_shifted(f: &EdgeMapping, h: &PatternGraph, strong: bool) -> Option<Certificate> {
    find(f, h, if strong { Relation::StrongShifted } else { Relation::Shifted })
}

/// Every copy of `h` in `K_n` standing in relation `kind` to `f`.
pub fn all_copies(f: &EdgeMapping, h: &PatternGraph, kind: Relation) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    h.for_each_copy(&SimpleGraph::complete(f.n()), &mut |emb| {
        let verts = emb.iter().fold(0u64, |m, &v| m | 1 << v);
        if kind.holds(f, &h.image_edges(emb), verts) {
            out.push(emb.to_vec());
        }
        true
    });
    out
}

/// Stars: per centre, an independent set of `r` leaves in the conflict graph
/// where two leaves clash when one edge's image would spoil the other.
fn find_star(f: &EdgeMapping, h: &PatternGraph, r: usize, kind: Relation, host: &SimpleGraph) -> Option<Vec<usize>> {
    let n = f.n();
    let centre = (0..h.k()).find(|&v| h.graph().degree(v) == r).expect("star has a centre");
    for c in 0..n {
        let leaves = host.neighbors(c);
        if (leaves.count_ones() as usize) < r {
            continue;
        }
        let mut conflict = vec![0u64; n];
        for x in bits(leaves) {
            let t = f.image(edge_id(c, x));
            let hit = match kind {
                Relation::Free => {
                    let tm = edge_mask(t);
                    if tm >> c & 1 == 1 { tm & !(1 << c) & leaves } else { 0 }
                }
                _ => edge_mask(t) & leaves,
            };
            for y in bits(hit & !(1 << x)) {
                conflict[x] |= 1 << y;
                conflict[y] |= 1 << x;
            }
        }
        if let Some(set) = independent_subset(&conflict, leaves, r) {
            let mut leaf_iter = bits(set);
            return Some(
                (0..h.k())
                    .map(|v| if v == centre { c } else { leaf_iter.next().expect("r leaves") })
                    .collect(),
            );
        }
    }
    None
}

/// An independent set of size `need` inside `cand`, or `None`. Exact: takes
/// vertices of degree at most one greedily and branches on a maximum-degree
/// vertex otherwise.
pub(crate) fn independent_subset(adj: &[u64], cand: u64, need: usize) -> Option<u64> {
    if need == 0 {
        return Some(0);
    }
    if (cand.count_ones() as usize) < need {
        return None;
    }
    let deg = |v: usize| (adj[v] & cand).count_ones();
    let low = bits(cand).find(|&v| deg(v) <= 1);
    if let Some(v) = low {
        return independent_subset(adj, cand & !(adj[v] | 1 << v), need - 1).map(|s| s | 1 << v);
    }
    let v = bits(cand).max_by_key(|&v| (deg(v), std::cmp::Reverse(v))).expect("cand non-empty");
    independent_subset(adj, cand & !(adj[v] | 1 << v), need - 1)
        .map(|s| s | 1 << v)
        .or_else(|| independent_subset(adj, cand & !(1 << v), need))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge_ends;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PatternGraph {
        PatternGraph::parse(s).unwrap()
    }

    fn random_mapping(n: usize, rng: &mut ChaCha8Rng) -> EdgeMapping {
        let e = crate::graph::pairs(n) as u32;
        EdgeMapping::new(n, (0..e).map(|_| rng.gen_range(0..e)).collect()).unwrap()
    }

    #[test]
    fn identity_cases() {
        let id = EdgeMapping::identity(5);
        assert!(find_fixed(&id, &p("K4")).is_some());
        assert!(find_shifted(&id, &p("K2"), false).is_none());
        assert!(find_free(&EdgeMapping::identity(6), &p("K3")).is_none());
        assert!(find_fixed(&id, &p("K6")).is_none());
    }

    #[test]
    fn relations_agree_with_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pats = ["K2", "K3", "K1,2", "K1,3", "2K2", "P4", "C4", "K1,2|K2"];
        for n in 4..=6 {
            for _ in 0..15 {
                let f = random_mapping(n, &mut rng);
                for s in pats {
                    let h = p(s);
                    for kind in Relation::ALL {
                        let naive = !all_copies(&f, &h, kind).is_empty();
                        let got = find(&f, &h, kind);
                        assert_eq!(naive, got.is_some(), "n={n} {s} {kind} {f:?}");
                        if let Some(c) = got {
                            assert!(c.checked && validate(&f, &h, kind, &c.embedding));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn certificate_chain() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let f = random_mapping(7, &mut rng);
            for s in ["K1,2", "2K2", "K3"] {
                let h = p(s);
                if let Some(c) = find_exclusive(&f, &h) {
                    assert!(validate(&f, &h, Relation::Free, &c.embedding));
                }
                if let Some(c) = find_free(&f, &h) {
                    assert!(validate(&f, &h, Relation::Shifted, &c.embedding));
                }
            }
        }
    }

    #[test]
    fn independent_subset_is_exact() {
        // C5: maximum independent set 2
        let adj: Vec<u64> = (0..5).map(|i| 1 << ((i + 1) % 5) | 1 << ((i + 4) % 5)).collect();
        assert!(independent_subset(&adj, 0b11111, 2).is_some());
        assert!(independent_subset(&adj, 0b11111, 3).is_none());
        let s = independent_subset(&adj, 0b11111, 2).unwrap();
        assert!(bits(s).all(|v| adj[v] & s == 0));
    }

    #[test]
    fn star_embedding_places_centre() {
        let f = EdgeMapping::from_fn(7, |u, v| {
            let rest: Vec<usize> = (0..7).filter(|&x| x != u && x != v).collect();
            (rest[0], rest[1])
        })
        .unwrap();
        let h = p("K1,2");
        let c = find_exclusive(&f, &h).unwrap();
        let edges = c.edges(&h);
        assert!(edges.iter().all(|&e| edge_mask(f.image(e)) & c.vertex_mask() == 0));
        assert_eq!(edges.len(), 2);
        let (a, b) = (edge_ends(edges[0]), edge_ends(edges[1]));
        assert!(a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1);
    }
}
