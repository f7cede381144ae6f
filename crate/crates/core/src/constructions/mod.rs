//! Explicit mappings that avoid prescribed fixed/shifted/free/exclusive copies.
//! Every generator checks its claims with [`crate::detect`] before returning.

mod helpers;

pub use helpers::{bipartite_matching, cycle_decomposition, euler_circuit, frobenius_decomposition};

use crate::detect::{find, Certificate, Relation};
use crate::error::{param, Error, Result};
use crate::graph::{edge_ends, edge_id, edge_mask, pairs, EdgeId, SimpleGraph};
use crate::mapping::EdgeMapping;
use crate::oracle;
use crate::pattern::PatternGraph;
use helpers::circuit_from;
use serde::Serialize;

/// The mapping avoids every copy of `pattern` in relation `relation`.
#[derive(Clone, Debug)]
pub struct Claim {
    pub relation: Relation,
    pub pattern: PatternGraph,
}

impl Claim {
    pub fn new(relation: Relation, pattern: PatternGraph) -> Self {
        Claim { relation, pattern }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub name: String,
    pub params: Vec<(String, usize)>,
    pub mapping: EdgeMapping,
    pub claims: Vec<Claim>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub relation: Relation,
    pub pattern: String,
    pub holds: bool,
    pub counterexample: Option<Certificate>,
}

/// Runs detect for every claim, one thread per claim.
pub fn check_claims(f: &EdgeMapping, claims: &[Claim]) -> Vec<ClaimReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = claims.iter().map(|c| s.spawn(move || find(f, &c.pattern, c.relation))).collect();
        claims
            .iter()
            .zip(handles)
            .map(|(c, h)| {
                let found = h.join().expect("detector thread");
                ClaimReport {
                    relation: c.relation,
                    pattern: c.pattern.name().to_string(),
                    holds: found.is_none(),
                    counterexample: found,
                }
            })
            .collect()
    })
}

fn finish(name: &str, params: &[(&str, usize)], mapping: EdgeMapping, claims: Vec<Claim>) -> Result<ConstructionResult> {
    for r in check_claims(&mapping, &claims) {
        if !r.holds {
            return Err(Error::Internal(format!(
                "{name}: claim 'no {} {}' fails with {:?}",
                r.relation, r.pattern, r.counterexample
            )));
        }
    }
    Ok(ConstructionResult {
        name: name.to_string(),
        params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        mapping,
        claims,
    })
}

/// Patterns standing for "every tree on `k` vertices": the full list when
/// the enumerator allows it, otherwise the path and the star.
pub fn tree_claims(k: usize) -> Vec<PatternGraph> {
    match oracle::trees(k) {
        Ok(ts) => ts.into_iter().enumerate().map(|(i, t)| PatternGraph::from_graph(format!("T{k}.{i}"), t)).collect(),
        Err(_) => vec![PatternGraph::path(k), PatternGraph::star(k - 1)],
    }
}

fn fixed_trees(k: usize) -> Vec<Claim> {
    tree_claims(k).into_iter().map(|t| Claim::new(Relation::Fixed, t)).collect()
}

/// `f(x,y) = (z,y)` for `x < y` with `z = (x mod (y-1)) + 1` on vertices
/// `1..n` (stored as `0..n-1`), and `f(1,2) = (2,3)`. Every edge meets its
/// image in exactly one vertex.
pub fn modular_shift(n: usize) -> Result<ConstructionResult> {
    if n < 3 {
        return param(format!("modular shift needs n >= 3, got {n}"));
    }
    let f = EdgeMapping::from_fn(n, |u, v| {
        let (x, y) = (u + 1, v + 1);
        if (x, y) == (1, 2) {
            return (1, 2);
        }
        let z = x % (y - 1) + 1;
        (z - 1, y - 1)
    })?;
    let claims = vec![
        Claim::new(Relation::Fixed, PatternGraph::complete(2)),
        Claim::new(Relation::StrongShifted, PatternGraph::complete(2)),
        Claim::new(Relation::Exclusive, PatternGraph::complete(2)),
    ];
    finish("modular_shift", &[("n", n)], f, claims)
}

fn cross_image(part: &[usize], u: usize, v: usize) -> EdgeId {
    let n = part.len();
    let e = edge_id(u, v);
    let cross = |a: usize| -> Vec<usize> { (0..n).filter(|&w| part[w] != part[a]).collect() };
    for (a, b) in [(u, v), (v, u)] {
        let c = cross(a);
        if c.len() > 1 {
            let i = c.iter().position(|&w| w == b).expect("b is a cross neighbour");
            return edge_id(a, c[(i + 1) % c.len()]);
        }
    }
    (0..pairs(n) as EdgeId).find(|&x| x != e).expect("K_n has a second edge")
}

/// `(r-1)K_{k-1}` on `n = (r-1)(k-1)`: clique edges fixed, each cross edge
/// sent to the next cross edge around its smaller endpoint.
pub fn fixed_clique_partition(r: usize, k: usize) -> Result<ConstructionResult> {
    if r < 2 || k < 2 {
        return param(format!("need r, k >= 2, got r={r} k={k}"));
    }
    let n = (r - 1) * (k - 1);
    if n > 64 {
        return param(format!("n={n} exceeds 64"));
    }
    let part: Vec<usize> = (0..n).map(|v| v / (k - 1)).collect();
    let f = EdgeMapping::from_fn(n, |u, v| {
        if part[u] == part[v] {
            (u, v)
        } else {
            edge_ends(cross_image(&part, u, v))
        }
    })?;
    let mut claims = fixed_trees(k);
    claims.push(Claim::new(Relation::Shifted, PatternGraph::complete(r)));
    finish("fixed_clique_partition", &[("r", r), ("k", k)], f, claims)
}

/// On `K_k`, edges at vertex 0 rotate among themselves; all others fixed.
pub fn star_shift(k: usize) -> Result<ConstructionResult> {
    if !(3..=64).contains(&k) {
        return param(format!("star shift needs 3 <= k <= 64, got {k}"));
    }
    let f = EdgeMapping::from_fn(k, |u, v| if u == 0 { (0, v % (k - 1) + 1) } else { (u, v) })?;
    let mut claims = fixed_trees(k);
    claims.push(Claim::new(Relation::Free, PatternGraph::matching(2)));
    finish("star_shift", &[("k", k)], f, claims)
}

/// `K_9` with parts `{0,1,2}, {3,4,5}, {6,7,8}`. Crossing edges are matched to
/// crossing triangles containing them; each goes to the smaller-id other
/// edge of its triangle.
pub fn tripartite_hall() -> Result<ConstructionResult> {
    let n = 9;
    let part = |v: usize| v / 3;
    let crossing: Vec<EdgeId> =
        (0..pairs(n) as EdgeId).filter(|&e| { let (u, v) = edge_ends(e); part(u) != part(v) }).collect();
    let triangles: Vec<[usize; 3]> =
        (0..3).flat_map(|a| (3..6).flat_map(move |b| (6..9).map(move |c| [a, b, c]))).collect();
    let adj: Vec<Vec<usize>> = crossing
        .iter()
        .map(|&e| {
            let m = edge_mask(e);
            (0..triangles.len()).filter(|&t| triangles[t].iter().filter(|&&v| m >> v & 1 == 1).count() == 2).collect()
        })
        .collect();
    let mate = bipartite_matching(&adj, triangles.len());
    let mut image: Vec<EdgeId> = (0..pairs(n) as EdgeId).collect();
    for (i, &e) in crossing.iter().enumerate() {
        let t = mate[i].ok_or_else(|| Error::Internal("crossing edge left unmatched".into()))?;
        let [a, b, c] = triangles[t];
        image[e as usize] = [edge_id(a, b), edge_id(a, c), edge_id(b, c)]
            .into_iter()
            .filter(|&x| x != e)
            .min()
            .expect("two other edges");
    }
    let f = EdgeMapping::new(n, image)?;
    let claims = vec![
        Claim::new(Relation::Fixed, PatternGraph::star(3)),
        Claim::new(Relation::Fixed, PatternGraph::path(4)),
        Claim::new(Relation::Free, PatternGraph::complete(3)),
    ];
    finish("tripartite_hall", &[], f, claims)
}

/// Fixed on `h1`; on `h2` each edge goes to its successor along an Euler
/// circuit of `h2` plus an apex joined to the odd vertices. An edge followed
/// by an apex edge goes to the smallest edge other than itself. No free
/// star has `r` edges when `Δ(h2) <= 2r-2`.
pub fn euler_partition(
    h1: &SimpleGraph,
    h2: &SimpleGraph,
    r: usize,
    fixed_claims: Vec<PatternGraph>,
) -> Result<ConstructionResult> {
    let f = euler_mapping(h1, h2, r)?;
    let mut claims: Vec<Claim> = fixed_claims.into_iter().map(|p| Claim::new(Relation::Fixed, p)).collect();
    claims.push(Claim::new(Relation::Free, PatternGraph::star(r)));
    finish("euler_partition", &[("n", h1.n()), ("r", r)], f, claims)
}

fn euler_mapping(h1: &SimpleGraph, h2: &SimpleGraph, r: usize) -> Result<EdgeMapping> {
    let n = h1.n();
    if h2.n() != n {
        return param("H1 and H2 must have the same vertex count");
    }
    if r == 0 {
        return param("r must be positive");
    }
    if n >= 64 {
        return param(format!("n={n} leaves no room for the apex vertex"));
    }
    for v in 0..n {
        if h1.neighbors(v) & h2.neighbors(v) != 0 || (h1.neighbors(v) | h2.neighbors(v)).count_ones() as usize != n - 1 {
            return param(format!("H1 and H2 do not partition the edges at vertex {v}"));
        }
    }
    if h2.max_degree() + 2 > 2 * r {
        return param(format!("max degree {} of H2 exceeds 2r-2 = {}", h2.max_degree(), 2 * r - 2));
    }
    let w = n;
    let mut adj: Vec<u64> = h2.adjacency().to_vec();
    adj.push(0);
    for v in 0..n {
        if h2.degree(v) % 2 == 1 {
            adj[v] |= 1 << w;
            adj[w] |= 1 << v;
        }
    }
    let mut image: Vec<EdgeId> = (0..pairs(n) as EdgeId).collect();
    for start in 0..=n {
        if adj[start] == 0 {
            continue;
        }
        let walk = circuit_from(&mut adj, start);
        let edges: Vec<(usize, usize)> = walk.windows(2).map(|p| (p[0], p[1])).collect();
        let h = edges.len();
        for i in 0..h {
            let (a, b) = edges[i];
            if a == w || b == w {
                continue;
            }
            let e = edge_id(a, b);
            let (c, d) = edges[(i + 1) % h];
            image[e as usize] = if c == w || d == w {
                if e == 0 { 1 } else { 0 }
            } else {
                edge_id(c, d)
            };
        }
    }
    EdgeMapping::new(n, image)
}

fn cliques(sizes: &[usize], minus_factor: &[bool]) -> SimpleGraph {
    let n: usize = sizes.iter().sum();
    let mut g = SimpleGraph::empty(n);
    let mut base = 0;
    for (&s, &mf) in sizes.iter().zip(minus_factor) {
        for v in 1..s {
            for u in 0..v {
                if !(mf && u % 2 == 0 && v == u + 1) {
                    g.add_edge(base + u, base + v);
                }
            }
        }
        base += s;
    }
    g
}

/// Tree lower-bound constructions via [`euler_partition`]. Variant 1 splits
/// `K_{k+2r-3}` into cliques of size `k-1`; variant 3 uses cliques of sizes
/// `k-1` and `k-3`; variant 4 uses `K_{k-1}` minus a perfect matching and
/// `K_{k-2}`. Clique counts come from writing `2(r-1)` in the two sizes.
pub fn frobenius_tree_lower(k: usize, r: usize, variant: u8) -> Result<ConstructionResult> {
    if k < 2 || r < 1 {
        return param(format!("need k >= 2 and r >= 1, got k={k} r={r}"));
    }
    let two_r = 2 * (r - 1);
    let (sizes, mf): (Vec<usize>, Vec<bool>) = match variant {
        1 => {
            if !two_r.is_multiple_of(k - 1) {
                return param(format!("variant 1 needs (k-1) | 2(r-1): {} does not divide {two_r}", k - 1));
            }
            let t = 1 + two_r / (k - 1);
            (vec![k - 1; t], vec![false; t])
        }
        3 => {
            if k < 4 {
                return param(format!("variant 3 needs k-3 >= 1, got k={k}"));
            }
            let (x, y) = frobenius_decomposition(k - 1, k - 3, two_r).ok_or_else(|| {
                Error::Parameter(format!("2(r-1) = {two_r} is not x({})+y({})", k - 1, k - 3))
            })?;
            let sizes: Vec<usize> = std::iter::repeat_n(k - 1, x).chain(std::iter::repeat_n(k - 3, y + 1)).collect();
            let l = sizes.len();
            (sizes, vec![false; l])
        }
        4 => {
            if k.is_multiple_of(2) || k < 3 {
                return param(format!("variant 4 needs odd k >= 3, got k={k}"));
            }
            let (x, y) = frobenius_decomposition(k - 1, k - 2, two_r).ok_or_else(|| {
                Error::Parameter(format!("2(r-1) = {two_r} is not x({})+y({})", k - 1, k - 2))
            })?;
            let sizes: Vec<usize> = std::iter::repeat_n(k - 1, x).chain(std::iter::repeat_n(k - 2, y + 1)).collect();
            let mf = (0..sizes.len()).map(|i| i < x).collect();
            (sizes, mf)
        }
        _ => return param(format!("unknown variant {variant} (1, 3 or 4)")),
    };
    let h1 = cliques(&sizes, &mf);
    let h2 = h1.complement();
    let f = euler_mapping(&h1, &h2, r)?;
    let mut claims = fixed_trees(k);
    claims.push(Claim::new(Relation::Free, PatternGraph::star(r)));
    finish("frobenius_tree_lower", &[("k", k), ("r", r), ("variant", variant as usize)], f, claims)
}

/// `n = k+2r-3 = s(k-1)` for odd `k`: fixed `sK_{k-1}`; the bipartite graph
/// between any two cliques is cut into even cycles and each cycle edge goes
/// two steps ahead, to an edge disjoint from it.
pub fn cycle_decomp_star_exclusive(k: usize, r: usize) -> Result<ConstructionResult> {
    if k < 3 || k.is_multiple_of(2) {
        return param(format!("k must be odd and at least 3, got {k}"));
    }
    if r < 2 {
        return param(format!("r must be at least 2, got {r}"));
    }
    let n = k + 2 * r - 3;
    if !n.is_multiple_of(k - 1) {
        return param(format!("n = k+2r-3 = {n} is not a multiple of k-1 = {}", k - 1));
    }
    if n > 64 {
        return param(format!("n={n} exceeds 64"));
    }
    let s = n / (k - 1);
    let block = |i: usize| (i * (k - 1)..(i + 1) * (k - 1)).fold(0u64, |m, v| m | 1 << v);
    let mut image: Vec<EdgeId> = (0..pairs(n) as EdgeId).collect();
    for a in 0..s {
        for b in a + 1..s {
            let (ma, mb) = (block(a), block(b));
            let adj: Vec<u64> = (0..n)
                .map(|v| if ma >> v & 1 == 1 { mb } else if mb >> v & 1 == 1 { ma } else { 0 })
                .collect();
            for cycle in cycle_decomposition(&SimpleGraph::from_adjacency(adj))? {
                let len = cycle.len();
                for i in 0..len {
                    let e = edge_id(cycle[i], cycle[(i + 1) % len]);
                    image[e as usize] = edge_id(cycle[(i + 2) % len], cycle[(i + 3) % len]);
                }
            }
        }
    }
    let f = EdgeMapping::new(n, image)?;
    let mut claims = fixed_trees(k);
    claims.push(Claim::new(Relation::Exclusive, PatternGraph::star(r)));
    finish("cycle_decomp_star_exclusive", &[("k", k), ("r", r)], f, claims)
}

/// `chi-1` blocks `K_{2r-1}`, each mapped by Euler successor; cross edges
/// fixed, so the fixed graph is complete `(chi-1)`-partite.
pub fn chromatic_blocks(chi: usize, r: usize) -> Result<ConstructionResult> {
    if chi < 3 || r < 2 {
        return param(format!("need chi >= 3 and r >= 2, got chi={chi} r={r}"));
    }
    let b = 2 * r - 1;
    let n = (chi - 1) * b;
    if n >= 64 {
        return param(format!("n={n} too large"));
    }
    let h2 = cliques(&vec![b; chi - 1], &vec![false; chi - 1]);
    let h1 = h2.complement();
    let f = euler_mapping(&h1, &h2, r)?;
    let claims = vec![
        Claim::new(Relation::Free, PatternGraph::star(r)),
        Claim::new(Relation::Fixed, PatternGraph::complete(chi)),
    ];
    finish("chromatic_blocks", &[("chi", chi), ("r", r)], f, claims)
}

pub const SMALL_NAMES: [&str; 4] = ["k4_involution", "matching_3k2", "pentagon_involution", "z7_difference"];

/// The four fixed-size constructions, by name.
pub fn small_exact(name: &str) -> Result<ConstructionResult> {
    match name {
        "k4_involution" => {
            let f = EdgeMapping::from_fn(4, |u, v| {
                let rest: Vec<usize> = (0..4).filter(|&x| x != u && x != v).collect();
                (rest[0], rest[1])
            })?;
            finish(name, &[], f, vec![Claim::new(Relation::Free, PatternGraph::matching(2))])
        }
        "matching_3k2" => {
            let k6 = SimpleGraph::complete(6);
            let pm = PatternGraph::matching(3);
            let matchings: Vec<Vec<EdgeId>> = pm.copies(&k6).iter().map(|c| pm.image_edges(c)).collect();
            let adj: Vec<Vec<usize>> = (0..pairs(6) as EdgeId)
                .map(|e| (0..matchings.len()).filter(|&m| matchings[m].contains(&e)).collect())
                .collect();
            let mate = bipartite_matching(&adj, matchings.len());
            let mut image = Vec::with_capacity(15);
            for e in 0..pairs(6) as EdgeId {
                let m = mate[e as usize].ok_or_else(|| Error::Internal("edge left unmatched".into()))?;
                image.push(matchings[m].iter().copied().filter(|&x| x != e).min().expect("two other edges"));
            }
            let f = EdgeMapping::new(6, image)?;
            finish(name, &[], f, vec![Claim::new(Relation::Free, PatternGraph::matching(3))])
        }
        "pentagon_involution" => {
            let f = EdgeMapping::from_fn(5, |u, v| {
                let (i, d) = if (v - u) % 5 == 1 || (v - u) % 5 == 2 { (u, v - u) } else { (v, u + 5 - v) };
                if d == 1 {
                    ((i + 2) % 5, (i + 4) % 5)
                } else {
                    ((i + 3) % 5, (i + 4) % 5)
                }
            })?;
            finish(name, &[], f, vec![Claim::new(Relation::Exclusive, PatternGraph::star(2))])
        }
        "z7_difference" => {
            let f = EdgeMapping::from_fn(7, |u, v| {
                let (i, j) = if v - u <= 3 { (u, v - u) } else { (v, u + 7 - v) };
                ((i + 2 * j) % 7, (i + 3 * j) % 7)
            })?;
            finish(name, &[], f, vec![Claim::new(Relation::Exclusive, PatternGraph::matching(2))])
        }
        _ => Err(Error::UnknownName(format!("construction '{name}' (expected one of {SMALL_NAMES:?})"))),
    }
}

/// Names accepted by [`build`].
pub const NAMES: [&str; 11] = [
    "modular_shift",
    "fixed_clique_partition",
    "star_shift",
    "tripartite_hall",
    "frobenius_tree_lower",
    "cycle_decomp_star_exclusive",
    "chromatic_blocks",
    "k4_involution",
    "matching_3k2",
    "pentagon_involution",
    "z7_difference",
];

/// Builds a construction by name from `key=value` parameters.
pub fn build(name: &str, params: &[(String, usize)]) -> Result<ConstructionResult> {
    let get = |key: &str| -> Result<usize> {
        params
            .iter()
            .find(|(k, _)| k == key)
            .map(|&(_, v)| v)
            .ok_or_else(|| Error::Parameter(format!("{name} needs parameter {key}")))
    };
    match name {
        "modular_shift" => modular_shift(get("n")?),
        "fixed_clique_partition" => fixed_clique_partition(get("r")?, get("k")?),
        "star_shift" => star_shift(get("k")?),
        "tripartite_hall" => tripartite_hall(),
        "frobenius_tree_lower" => frobenius_tree_lower(get("k")?, get("r")?, get("variant")? as u8),
        "cycle_decomp_star_exclusive" => cycle_decomp_star_exclusive(get("k")?, get("r")?),
        "chromatic_blocks" => chromatic_blocks(get("chi")?, get("r")?),
        _ => small_exact(name),
    }
}

/// Largest free star of `f`, by exhaustive detection.
pub fn max_free_star(f: &EdgeMapping) -> usize {
    (1..f.n()).take_while(|&r| find(f, &PatternGraph::star(r), Relation::Free).is_some()).last().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::all_copies;

    fn ends(f: &EdgeMapping, u: usize, v: usize) -> (usize, usize) {
        edge_ends(f.image(edge_id(u, v)))
    }

    #[test]
    fn modular_shift_values() {
        let c = modular_shift(5).unwrap();
        // vertices 1..5 stored as 0..4
        assert_eq!(ends(&c.mapping, 1, 4), (2, 4));
        assert_eq!(ends(&c.mapping, 0, 1), (1, 2));
        assert_eq!(ends(&c.mapping, 3, 4), (0, 4));
        assert!((0..10).all(|e| c.mapping.overlap(e) == 1));
        assert!(modular_shift(2).is_err());
    }

    #[test]
    fn clique_partitions() {
        let c = fixed_clique_partition(3, 3).unwrap();
        assert_eq!(c.mapping.n(), 4);
        assert_eq!(c.mapping.fixed_graph().edge_count(), 2);
        let c = fixed_clique_partition(4, 3).unwrap();
        assert_eq!(c.mapping.fixed_graph().edge_count(), 3);
        let c = fixed_clique_partition(2, 4).unwrap();
        assert_eq!(c.mapping, EdgeMapping::identity(3));
        assert!(fixed_clique_partition(3, 4).is_ok());
    }

    #[test]
    fn star_shifts() {
        let c = star_shift(3).unwrap();
        assert_eq!(ends(&c.mapping, 0, 1), (0, 2));
        assert_eq!(ends(&c.mapping, 0, 2), (0, 1));
        star_shift(7).unwrap();
        assert!(find(&star_shift(5).unwrap().mapping, &PatternGraph::path(5), Relation::Fixed).is_none());
    }

    #[test]
    fn tripartite() {
        let c = tripartite_hall().unwrap();
        let f = &c.mapping;
        assert_eq!(f.fixed_graph().edge_count(), 9);
        let crossing: Vec<EdgeId> = (0..36).filter(|&e| f.image(e) != e).collect();
        assert_eq!(crossing.len(), 27);
        assert!(crossing.iter().all(|&e| f.overlap(e) == 1));
    }

    #[test]
    fn euler_partitions() {
        let c5 = PatternGraph::parse("C5").unwrap().graph().clone();
        let c = euler_partition(&c5, &c5.complement(), 2, vec![PatternGraph::complete(3)]).unwrap();
        assert_eq!(max_free_star(&c.mapping), 1);
        let h1 = PatternGraph::matching(2).graph().clone();
        let c = euler_partition(&h1, &h1.complement(), 2, vec![PatternGraph::path(3)]).unwrap();
        assert_eq!(max_free_star(&c.mapping), 1);
        assert!(euler_partition(&h1, &h1, 2, vec![]).is_err());
        let e = SimpleGraph::empty(6);
        assert!(euler_partition(&e, &e.complement(), 2, vec![]).is_err());
    }

    #[test]
    fn euler_partition_free_star_bound_small_n() {
        // random partitions with the degree bound; free stars stay below r
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let n = rng.gen_range(4..=10);
            let r = rng.gen_range(2..=4);
            let mut h2 = SimpleGraph::empty(n);
            for v in 1..n {
                for u in 0..v {
                    if rng.gen_bool(0.5) && h2.degree(u) + 2 < 2 * r && h2.degree(v) + 2 < 2 * r {
                        h2.add_edge(u, v);
                    }
                }
            }
            let f = euler_mapping(&h2.complement(), &h2, r).unwrap();
            assert!(max_free_star(&f) < r);
        }
    }

    #[test]
    fn frobenius_variants() {
        let c = frobenius_tree_lower(3, 2, 1).unwrap();
        assert_eq!(c.mapping.n(), 4);
        assert_eq!(c.mapping.fixed_graph().edge_count(), 2);
        assert!(frobenius_tree_lower(3, 2, 3).is_err());
        assert!(frobenius_tree_lower(4, 2, 1).is_err());
        let c = frobenius_tree_lower(5, 4, 3).unwrap();
        let deg: Vec<usize> = (0..c.mapping.n()).map(|v| c.mapping.shifted_graph().degree(v)).collect();
        assert!(deg.iter().all(|&d| d == 6 || d == 4));
    }

    #[test]
    fn cycle_decomp_cases() {
        let c = cycle_decomp_star_exclusive(3, 3).unwrap();
        assert_eq!(c.mapping.n(), 6);
        assert_eq!(c.mapping.fixed_graph().edge_count(), 3);
        assert!((0..15).filter(|&e| c.mapping.image(e) != e).all(|e| c.mapping.overlap(e) == 0));
        let c = cycle_decomp_star_exclusive(3, 2).unwrap();
        assert_eq!(c.mapping.n(), 4);
        assert!(cycle_decomp_star_exclusive(5, 2).is_err());
        assert!(cycle_decomp_star_exclusive(4, 3).is_err());
    }

    #[test]
    fn chromatic_block_cases() {
        let c = chromatic_blocks(3, 2).unwrap();
        assert_eq!(c.mapping.n(), 6);
        assert_eq!(crate::pattern::chromatic_number(&c.mapping.fixed_graph()), 2);
        let c = chromatic_blocks(3, 3).unwrap();
        assert_eq!(c.mapping.n(), 10);
        assert_eq!(max_free_star(&c.mapping), 2);
    }

    #[test]
    fn small_exact_values() {
        let z = small_exact("z7_difference").unwrap();
        assert_eq!(ends(&z.mapping, 4, 5), (0, 6));
        assert!(z.mapping.in_class(0, None).unwrap());
        let p = small_exact("pentagon_involution").unwrap();
        assert_eq!(ends(&p.mapping, 0, 2), (3, 4));
        assert!(p.mapping.in_class(0, None).unwrap());
        let k4 = small_exact("k4_involution").unwrap();
        assert_eq!(ends(&k4.mapping, 0, 1), (2, 3));
        let m = small_exact("matching_3k2").unwrap();
        assert!(m.mapping.in_class(0, None).unwrap());
        assert!(all_copies(&m.mapping, &PatternGraph::matching(3), Relation::Free).is_empty());
        assert!(matches!(small_exact("nope"), Err(Error::UnknownName(_))));
    }
}

#[cfg(test)]
mod large {
    use super::*;

    #[test]
    fn variant_four_k5_r26() {
        let c = frobenius_tree_lower(5, 26, 4).unwrap();
        assert_eq!(c.mapping.n(), 53);
        let sh = c.mapping.shifted_graph();
        assert!((0..53).all(|v| sh.degree(v) == 50));
    }
}
