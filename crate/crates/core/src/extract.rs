//! Bounded out-degree digraphs and the extraction of free or exclusive stars
//! and matchings from shifted structures.

use crate::detect::{validate, Certificate, Relation};
use crate::error::{Error, Result};
use crate::graph::{bits, edge_ends, edge_id, edge_mask, EdgeId, SimpleGraph};
use crate::mapping::EdgeMapping;
use crate::pattern::{Family, PatternGraph};

/// A loop-free digraph whose out-degrees are at most `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalDigraph {
    n: usize,
    arcs: Vec<Vec<usize>>,
    d: usize,
}

impl FunctionalDigraph {
    pub fn new(n: usize, mut arcs: Vec<Vec<usize>>, d: usize) -> Result<Self> {
        if arcs.len() != n {
            return Err(Error::Parameter(format!("expected {n} arc lists, got {}", arcs.len())));
        }
        for (v, out) in arcs.iter_mut().enumerate() {
            out.sort_unstable();
            out.dedup();
            if let Some(&w) = out.iter().find(|&&w| w >= n || w == v) {
                return Err(Error::Contract(format!("vertex {v} has invalid arc to {w}")));
            }
            if out.len() > d {
                return Err(Error::Contract(format!("vertex {v} has out-degree {} > d = {d}", out.len())));
            }
        }
        Ok(FunctionalDigraph { n, arcs, d })
    }

    /// Digraph of a function `x -> succ(x)`; `None` means out-degree zero.
    pub fn from_successors(succ: &[Option<usize>]) -> Result<Self> {
        Self::new(succ.len(), succ.iter().map(|s| s.iter().copied().collect()).collect(), 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.arcs
    }
    /// Vertices without out-arcs.
    pub fn sinks(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_empty()).count()
    }

    /// Neighbour lists of the underlying simple graph.
    pub fn undirected(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (v, out) in self.arcs.iter().enumerate() {
            for &w in out {
                adj[v].push(w);
                adj[w].push(v);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }
}

/// Proper colouring of the underlying graph with at most `2d+1` colours:
/// greedy over the reverse of a smallest-degree-first elimination order.
pub fn color_bounded(g: &FunctionalDigraph) -> Vec<usize> {
    let adj = g.undirected();
    let n = g.n;
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).expect("vertex remains");
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            deg[w] = deg[w].saturating_sub(1);
        }
    }
    let mut color = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        let used: Vec<usize> = adj[v].iter().map(|&w| color[w]).filter(|&c| c != usize::MAX).collect();
        color[v] = (0..).find(|c| !used.contains(c)).expect("free colour");
    }
    debug_assert!(color.iter().all(|&c| c <= 2 * g.d));
    color
}

/// Largest colour class of [`color_bounded`], ties to the smallest colour.
pub fn largest_color_class(g: &FunctionalDigraph) -> Vec<usize> {
    let color = color_bounded(g);
    let k = color.iter().max().map_or(0, |c| c + 1);
    let best = (0..k).max_by_key(|&c| (color.iter().filter(|&&x| x == c).count(), std::cmp::Reverse(c)));
    match best {
        Some(c) => (0..g.n).filter(|&v| color[v] == c).collect(),
        None => Vec::new(),
    }
}

/// Maximum independent set of the underlying graph of an out-degree-one
/// digraph. Each component has at most one cycle, so peeling vertices of
/// degree at most one and then halving the remaining cycles is exact.
pub fn independent_set_d1(g: &FunctionalDigraph) -> Result<Vec<usize>> {
    if let Some(v) = (0..g.n).find(|&v| g.arcs[v].len() > 1) {
        return Err(Error::Contract(format!("vertex {v} has out-degree {}", g.arcs[v].len())));
    }
    let adj = g.undirected();
    let n = g.n;
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut set = Vec::new();
    let kill = |v: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>| {
        alive[v] = false;
        for &w in &adj[v] {
            deg[w] = deg[w].saturating_sub(1);
        }
    };
    while let Some(v) = (0..n).find(|&v| alive[v] && deg[v] <= 1) {
        set.push(v);
        kill(v, &mut alive, &mut deg);
        for &w in &adj[v] {
            if alive[w] {
                kill(w, &mut alive, &mut deg);
            }
        }
    }
    // what remains is a disjoint union of cycles
    while let Some(start) = (0..n).find(|&v| alive[v]) {
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = adj[cur].iter().copied().find(|&w| alive[w] && w != prev).expect("cycle continues");
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        for (i, &v) in cycle.iter().enumerate() {
            if i % 2 == 0 && i + 1 < cycle.len() {
                set.push(v);
            }
            alive[v] = false;
        }
    }
    set.sort_unstable();
    Ok(set)
}

/// Guaranteed size `m + ⌈(n-2m)/3⌉` of [`independent_set_d1`].
pub fn d1_bound(n: usize, sinks: usize) -> usize {
    sinks + (n.saturating_sub(2 * sinks)).div_ceil(3)
}

fn digraph_on(items: &[EdgeId], d: usize, arc: impl Fn(EdgeId, EdgeId) -> bool) -> Result<FunctionalDigraph> {
    let arcs = items
        .iter()
        .enumerate()
        .map(|(i, &a)| (0..items.len()).filter(|&j| j != i && arc(a, items[j])).collect())
        .collect();
    FunctionalDigraph::new(items.len(), arcs, d)
}

fn certified(f: &EdgeMapping, h: PatternGraph, kind: Relation, embedding: Vec<usize>) -> Result<(PatternGraph, Certificate)> {
    if !validate(f, &h, kind, &embedding) {
        return Err(Error::Internal(format!("extracted {kind} copy of {h} does not validate")));
    }
    Ok((h, Certificate { kind, embedding, checked: true }))
}

fn star_embedding(centre: usize, leaves: &[usize]) -> Vec<usize> {
    std::iter::once(centre).chain(leaves.iter().copied()).collect()
}

/// An exclusive `K_{1,r}` at `v` among the host edges at `v`, which must all
/// be strongly shifted. Arcs `e_i -> e_j` when `f(e_i)` meets `e_j`; the
/// out-degree is at most two, so a colour class of a 5-colouring works.
pub fn exclusive_star(f: &EdgeMapping, host: &SimpleGraph, v: usize, r: usize) -> Result<(PatternGraph, Certificate)> {
    if r == 0 || v >= host.n() || host.n() != f.n() {
        return Err(Error::Parameter(format!("bad star request r={r} v={v}")));
    }
    let deg = host.degree(v);
    if deg < 5 * r - 4 {
        return Err(Error::Parameter(format!("degree {deg} of {v} is below 5r-4 = {}", 5 * r - 4)));
    }
    let edges: Vec<EdgeId> = bits(host.neighbors(v)).map(|x| edge_id(v, x)).collect();
    if let Some(&e) = edges.iter().find(|&&e| f.overlap(e) != 0) {
        return Err(Error::Contract(format!("edge {:?} meets its image {:?}", edge_ends(e), edge_ends(f.image(e)))));
    }
    let g = digraph_on(&edges, 2, |a, b| edge_mask(f.image(a)) & edge_mask(b) != 0)?;
    let class = largest_color_class(&g);
    let leaves: Vec<usize> = class[..r].iter().map(|&i| other_end(edges[i], v)).collect();
    certified(f, PatternGraph::star(r), Relation::Exclusive, star_embedding(v, &leaves))
}

/// An exclusive `tK_2` inside a matching of at least `5t-4` strongly shifted
/// edges, with the same arc rule as [`exclusive_star`].
pub fn exclusive_matching(f: &EdgeMapping, matching: &[EdgeId], t: usize) -> Result<(PatternGraph, Certificate)> {
    if t == 0 || matching.len() < 5 * t - 4 {
        return Err(Error::Parameter(format!("need at least 5t-4 = {} edges, got {}", 5 * t - 4, matching.len())));
    }
    let cover = matching.iter().fold(0u64, |m, &e| {
        if m & edge_mask(e) != 0 {
            u64::MAX
        } else {
            m | edge_mask(e)
        }
    });
    if cover == u64::MAX {
        return Err(Error::Parameter("edges do not form a matching".into()));
    }
    if let Some(&e) = matching.iter().find(|&&e| f.overlap(e) != 0) {
        return Err(Error::Contract(format!("edge {:?} meets its image", edge_ends(e))));
    }
    let g = digraph_on(matching, 2, |a, b| edge_mask(f.image(a)) & edge_mask(b) != 0)?;
    let class = largest_color_class(&g);
    let emb = class[..t]
        .iter()
        .flat_map(|&i| {
            let (a, b) = edge_ends(matching[i]);
            [a, b]
        })
        .collect();
    certified(f, PatternGraph::matching(t), Relation::Exclusive, emb)
}

/// Target of [`free_from_shifted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeTarget {
    /// `K_{1,r}` from a shifted `K_{1,3r-2}`.
    Star { r: usize },
    /// `tK_2` from a shifted `(3t-2)K_2`.
    Matching { t: usize },
    /// `tK_{1,r}` from `((6r-3)(t-1)+1)` disjoint shifted `K_{1,3r-2}`.
    StarForest { r: usize, t: usize },
}

impl FreeTarget {
    /// Pattern the shifted copy must contain.
    pub fn source(self) -> Result<PatternGraph> {
        match self {
            FreeTarget::Star { r } if r >= 1 => Ok(PatternGraph::star(3 * r - 2)),
            FreeTarget::Matching { t } if t >= 1 => Ok(PatternGraph::matching(3 * t - 2)),
            FreeTarget::StarForest { r, t } if r >= 1 && t >= 1 => PatternGraph::make(&Family::Copies(
                (6 * r - 3) * (t - 1) + 1,
                Box::new(Family::Star(3 * r - 2)),
            )),
            _ => Err(Error::Parameter(format!("{self:?} needs positive parameters"))),
        }
    }
}

fn other_end(e: EdgeId, v: usize) -> usize {
    let (a, b) = edge_ends(e);
    if a == v {
        b
    } else {
        a
    }
}

/// Free star with `r` leaves among the shifted edges at `centre`: an
/// independent set in the digraph `e -> f(e)`.
fn free_star_in(f: &EdgeMapping, centre: usize, edges: &[EdgeId], r: usize) -> Result<Vec<usize>> {
    let g = digraph_on(edges, 1, |a, b| f.image(a) == b)?;
    let set = independent_set_d1(&g)?;
    if set.len() < r {
        return Err(Error::Internal(format!("independent set {} below {r}", set.len())));
    }
    Ok(set[..r].iter().map(|&i| other_end(edges[i], centre)).collect())
}

/// Extracts a free star, matching or star forest from a shifted copy of
/// [`FreeTarget::source`] given by `shifted`.
pub fn free_from_shifted(f: &EdgeMapping, shifted: &Certificate, target: FreeTarget) -> Result<(PatternGraph, Certificate)> {
    let source = target.source()?;
    let emb = &shifted.embedding;
    let verts = emb.iter().fold(0u64, |m, &v| if v < f.n() { m | 1 << v } else { m });
    if emb.len() != source.k() || verts.count_ones() as usize != emb.len() {
        return Err(Error::Parameter(format!("certificate is not a copy of {source}")));
    }
    if let Some(e) = source.image_edges(emb).into_iter().find(|&e| f.image(e) == e) {
        return Err(Error::Contract(format!("edge {:?} of the certificate is fixed", edge_ends(e))));
    }
    match target {
        FreeTarget::Star { r } => {
            let centre = emb[0];
            let edges: Vec<EdgeId> = emb[1..].iter().map(|&x| edge_id(centre, x)).collect();
            let leaves = free_star_in(f, centre, &edges, r)?;
            certified(f, PatternGraph::star(r), Relation::Free, star_embedding(centre, &leaves))
        }
        FreeTarget::Matching { t } => {
            let edges: Vec<EdgeId> = emb.chunks(2).map(|p| edge_id(p[0], p[1])).collect();
            let g = digraph_on(&edges, 1, |a, b| f.image(a) == b)?;
            let set = independent_set_d1(&g)?;
            let out = set[..t]
                .iter()
                .flat_map(|&i| {
                    let (a, b) = edge_ends(edges[i]);
                    [a, b]
                })
                .collect();
            certified(f, PatternGraph::matching(t), Relation::Free, out)
        }
        FreeTarget::StarForest { r, t } => {
            let width = 3 * r - 1;
            let blocks: Vec<(usize, Vec<EdgeId>)> = emb
                .chunks(width)
                .map(|b| (b[0], b[1..].iter().map(|&x| edge_id(b[0], x)).collect()))
                .collect();
            // block i -> block j when some edge of i maps into j
            let arcs = (0..blocks.len())
                .map(|i| {
                    (0..blocks.len())
                        .filter(|&j| j != i && blocks[i].1.iter().any(|&e| blocks[j].1.contains(&f.image(e))))
                        .collect()
                })
                .collect();
            let g = FunctionalDigraph::new(blocks.len(), arcs, 3 * r - 2)?;
            let class = largest_color_class(&g);
            let mut out = Vec::new();
            for &i in &class[..t] {
                let (c, edges) = &blocks[i];
                out.extend(star_embedding(*c, &free_star_in(f, *c, edges, r)?));
            }
            let target_pattern = PatternGraph::make(&Family::Copies(t, Box::new(Family::Star(r))))?;
            certified(f, target_pattern, Relation::Free, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::find_shifted;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_alpha(adj: &[Vec<usize>]) -> usize {
        let n = adj.len();
        (0u32..1 << n)
            .filter(|s| (0..n).all(|v| s >> v & 1 == 0 || adj[v].iter().all(|&w| s >> w & 1 == 0)))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn triangles_are_tight() {
        let g = FunctionalDigraph::from_successors(&[Some(1), Some(2), Some(0), Some(4), Some(5), Some(3)]).unwrap();
        assert_eq!(independent_set_d1(&g).unwrap().len(), 2);
        let tri = FunctionalDigraph::from_successors(&[Some(1), Some(2), Some(0)]).unwrap();
        assert_eq!(color_bounded(&tri).iter().max(), Some(&2));
    }

    #[test]
    fn sink_star_and_path() {
        let g = FunctionalDigraph::from_successors(&[None, Some(0), Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(g.sinks(), 1);
        assert_eq!(independent_set_d1(&g).unwrap().len(), 4);
        let p = FunctionalDigraph::from_successors(&[Some(1), Some(2), Some(3), None]).unwrap();
        assert!(color_bounded(&p).iter().all(|&c| c < 2));
        assert_eq!(independent_set_d1(&FunctionalDigraph::from_successors(&[None]).unwrap()).unwrap(), vec![0]);
    }

    #[test]
    fn contract_errors() {
        assert!(matches!(FunctionalDigraph::new(3, vec![vec![1, 2], vec![], vec![]], 1), Err(Error::Contract(_))));
        let g = FunctionalDigraph::new(3, vec![vec![1, 2], vec![], vec![]], 2).unwrap();
        assert!(matches!(independent_set_d1(&g), Err(Error::Contract(_))));
    }

    #[test]
    fn d1_sets_are_maximum_on_all_small_functions() {
        for n in 1..=6usize {
            let total = (n + 1).pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let succ: Vec<Option<usize>> = (0..n)
                    .map(|v| {
                        let x = c % (n + 1);
                        c /= n + 1;
                        (x < n && x != v).then_some(x)
                    })
                    .collect();
                let g = FunctionalDigraph::from_successors(&succ).unwrap();
                let set = independent_set_d1(&g).unwrap();
                let adj = g.undirected();
                assert!(set.iter().all(|&v| adj[v].iter().all(|w| !set.contains(w))));
                assert_eq!(set.len(), brute_alpha(&adj), "{succ:?}");
                assert!(set.len() >= d1_bound(n, g.sinks()));
            }
        }
    }

    #[test]
    fn bounded_colouring_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(1..=50);
            let d = rng.gen_range(1..=3);
            let arcs = (0..n)
                .map(|v| (0..rng.gen_range(0..=d)).map(|_| rng.gen_range(0..n)).filter(|&w| w != v).collect())
                .collect();
            let g = FunctionalDigraph::new(n, arcs, d).unwrap();
            let col = color_bounded(&g);
            let adj = g.undirected();
            assert!((0..n).all(|v| adj[v].iter().all(|&w| col[w] != col[v])));
            assert!(col.iter().all(|&c| c <= 2 * d));
            assert!(largest_color_class(&g).len() * (2 * d + 1) >= n);
        }
    }

    fn random_strong(n: usize, rng: &mut ChaCha8Rng) -> EdgeMapping {
        EdgeMapping::from_fn(n, |u, v| loop {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && a != u && a != v && b != u && b != v {
                return (a, b);
            }
        })
        .unwrap()
    }

    #[test]
    fn exclusive_star_in_k7() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let f = random_strong(7, &mut rng);
            let (h, c) = exclusive_star(&f, &SimpleGraph::complete(7), 0, 2).unwrap();
            assert!(crate::detect::validate(&f, &h, Relation::Exclusive, &c.embedding));
        }
        let f = random_strong(7, &mut rng);
        assert!(matches!(exclusive_star(&f, &SimpleGraph::complete(7), 0, 3), Err(Error::Parameter(_))));
        assert!(matches!(
            exclusive_star(&EdgeMapping::identity(7), &SimpleGraph::complete(7), 0, 2),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn exclusive_matching_from_six_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = random_strong(12, &mut rng);
        let m: Vec<EdgeId> = (0..6).map(|i| edge_id(2 * i, 2 * i + 1)).collect();
        let (h, c) = exclusive_matching(&f, &m, 2).unwrap();
        assert!(crate::detect::validate(&f, &h, Relation::Exclusive, &c.embedding));
    }

    #[test]
    fn free_extraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let f = random_strong(9, &mut rng);
            for target in [FreeTarget::Star { r: 2 }, FreeTarget::Matching { t: 2 }, FreeTarget::Star { r: 1 }] {
                let src = target.source().unwrap();
                let cert = find_shifted(&f, &src, false).unwrap();
                let (h, c) = free_from_shifted(&f, &cert, target).unwrap();
                assert!(crate::detect::validate(&f, &h, Relation::Free, &c.embedding));
            }
        }
        // 4 disjoint K_{1,1}: r=1, t=2 gives (3)(1)+1 = 4 blocks
        let f = random_strong(8, &mut rng);
        let target = FreeTarget::StarForest { r: 1, t: 2 };
        let cert = find_shifted(&f, &target.source().unwrap(), false).unwrap();
        let (h, c) = free_from_shifted(&f, &cert, target).unwrap();
        assert!(crate::detect::validate(&f, &h, Relation::Free, &c.embedding));
        let id = EdgeMapping::identity(6);
        let bogus = Certificate { kind: Relation::Shifted, embedding: vec![0, 1, 2, 3], checked: false };
        assert!(free_from_shifted(&id, &bogus, FreeTarget::Star { r: 2 }).is_err());
    }
}
