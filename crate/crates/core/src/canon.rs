//! Canonical labeling of small graphs by individualization-refinement, and
//! isomorph-free generation of all graphs on `n <= 9` vertices by edge
//! augmentation.

use crate::graph::{bits, edge_id, edge_ends, pairs, SimpleGraph};
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

/// Largest vertex count accepted by [`canonical_code`].
pub const CANON_MAX: usize = 11;

type Cells = Vec<Vec<u8>>;

fn refine(adj: &[u64], cells: &mut Cells) {
    'outer: loop {
        for s in 0..cells.len() {
            let smask: u64 = cells[s].iter().map(|&v| 1u64 << v).sum();
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let counts: Vec<u32> = cells[c].iter().map(|&v| (adj[v as usize] & smask).count_ones()).collect();
                if counts.iter().all(|&x| x == counts[0]) {
                    continue;
                }
                let mut keyed: Vec<(u32, u8)> = counts.into_iter().zip(cells[c].iter().copied()).collect();
                keyed.sort_unstable();
                let mut parts: Vec<Vec<u8>> = Vec::new();
                let mut last = u32::MAX;
                for (k, v) in keyed {
                    if k != last {
                        parts.push(Vec::new());
                        last = k;
                    }
                    parts.last_mut().expect("part opened").push(v);
                }
                cells.splice(c..=c, parts);
                continue 'outer;
            }
        }
        return;
    }
}

fn code_of(adj: &[u64], cells: &Cells) -> u64 {
    let order: Vec<usize> = cells.iter().map(|c| c[0] as usize).collect();
    let mut code = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << edge_id(i, j);
            }
        }
    }
    code
}

fn search(adj: &[u64], cells: Cells, best: &mut Option<u64>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let code = code_of(adj, &cells);
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    };
    let cell = cells[target].clone();
    // vertices of a cell that are pairwise twins (same neighbourhood outside
    // each other) give identical subtrees; branch on one per twin class
    let mut tried: Vec<u8> = Vec::new();
    for &v in &cell {
        let vn = adj[v as usize];
        if tried.iter().any(|&w| {
            let wn = adj[w as usize];
            vn & !(1u64 << w) == wn & !(1u64 << v)
        }) {
            continue;
        }
        tried.push(v);
        let mut next = cells.clone();
        let rest: Vec<u8> = cell.iter().copied().filter(|&x| x != v).collect();
        next.splice(target..=target, [vec![v], rest]);
        refine(adj, &mut next);
        search(adj, next, best);
    }
}

/// Canonical code: the maximum adjacency bit-string (bit `edge_id(i,j)` set
/// iff positions `i`,`j` are adjacent) over the leaves of the refinement tree.
/// Two graphs are isomorphic iff their codes agree.
pub fn canonical_code(g: &SimpleGraph) -> u64 {
    let n = g.n();
    assert!(n <= CANON_MAX, "canonical form limited to {CANON_MAX} vertices");
    if n == 0 {
        return 0;
    }
    let mut cells: Cells = vec![(0..n as u8).collect()];
    refine(g.adjacency(), &mut cells);
    let mut best = None;
    search(g.adjacency(), cells, &mut best);
    best.expect("at least one leaf")
}

pub fn from_code(n: usize, code: u64) -> SimpleGraph {
    SimpleGraph::from_edge_ids(n, bits(code).map(|b| b as u32))
}

/// Iterates canonical codes of graphs on `n` vertices level by level (level
/// `m` holds the graphs with `m` edges). `keep` must be closed under edge
/// deletion (a hereditary property); only graphs satisfying it are produced.
/// Generation stops at the first empty level or after `max_edges`.
pub fn generate(n: usize, max_edges: usize, keep: &dyn Fn(&SimpleGraph) -> bool) -> Vec<Vec<u64>> {
    let total = pairs(n);
    let empty = SimpleGraph::empty(n);
    if !keep(&empty) {
        return Vec::new();
    }
    let mut levels = vec![vec![canonical_code(&empty)]];
    for _ in 0..max_edges.min(total) {
        let mut next: HashSet<u64> = HashSet::new();
        for &code in levels.last().expect("non-empty") {
            for id in 0..total as u32 {
                if code >> id & 1 == 1 {
                    continue;
                }
                let g = from_code(n, code | 1 << id);
                let c = canonical_code(&g);
                if !next.contains(&c) && keep(&g) {
                    next.insert(c);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let mut v: Vec<u64> = next.into_iter().collect();
        v.sort_unstable();
        levels.push(v);
    }
    levels
}

type Levels = Arc<Vec<Vec<u64>>>;

static ALL: OnceLock<Mutex<HashMap<usize, Levels>>> = OnceLock::new();

/// Every graph on `n` vertices up to isomorphism, grouped by edge count.
/// Results are cached per `n`.
pub fn all_graphs(n: usize) -> Arc<Vec<Vec<u64>>> {
    let cache = ALL.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&n) {
        return v.clone();
    }
    // complements pair level m with level C(n,2)-m: generate the lower half only
    let total = pairs(n);
    let mut levels = generate(n, total / 2, &|_| true);
    let lower = levels.len();
    for m in lower..=total {
        let mirror = &levels[total - m];
        let mut v: Vec<u64> = mirror
            .iter()
            .map(|&c| canonical_code(&from_code(n, c).complement()))
            .collect();
        v.sort_unstable();
        levels.push(v);
    }
    let arc = Arc::new(levels);
    cache.lock().expect("cache lock").insert(n, arc.clone());
    arc
}

/// Edges of a code as vertex pairs.
pub fn code_edges(code: u64) -> impl Iterator<Item = (usize, usize)> {
    bits(code).map(|b| edge_ends(b as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_graphs_share_codes() {
        let p = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = SimpleGraph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let s = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_code(&p), canonical_code(&q));
        assert_ne!(canonical_code(&p), canonical_code(&s));
    }

    #[test]
    fn graph_counts_match_known_sequence() {
        // number of graphs on n unlabeled vertices
        let known = [1usize, 1, 2, 4, 11, 34, 156, 1044, 12346];
        for (n, &want) in known.iter().enumerate().skip(1) {
            let total: usize = all_graphs(n).iter().map(|l| l.len()).sum();
            assert_eq!(total, want, "n={n}");
        }
    }

    #[test]
    fn hereditary_generation_of_triangle_free_graphs() {
        let k3 = crate::pattern::PatternGraph::complete(3);
        let levels = generate(5, 10, &|g| !crate::embed::contains(g, k3.graph()));
        // K_{2,3} is the unique extremal graph
        assert_eq!(levels.len() - 1, 6);
        assert_eq!(levels[6].len(), 1);
    }
}
