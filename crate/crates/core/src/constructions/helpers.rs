//! Euler circuits, cycle decompositions, bipartite matching and two-coin
//! representations.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Closed walk from `start` using every edge of its component, consuming them
/// from `adj`. Always leaves by the smallest unused neighbour.
pub(crate) fn circuit_from(adj: &mut [u64], start: usize) -> Vec<usize> {
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(&v) = stack.last() {
        if adj[v] == 0 {
            out.push(v);
            stack.pop();
        } else {
            let w = adj[v].trailing_zeros() as usize;
            adj[v] &= !(1 << w);
            adj[w] &= !(1 << v);
            stack.push(w);
        }
    }
    out.reverse();
    out
}

fn check_even(g: &SimpleGraph) -> Result<()> {
    match (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        Some(v) => Err(Error::Parameter(format!("vertex {v} has odd degree {}", g.degree(v)))),
        None => Ok(()),
    }
}

/// Euler circuit of a graph with all degrees even and one non-trivial
/// component, as a closed vertex sequence (first = last).
pub fn euler_circuit(g: &SimpleGraph) -> Result<Vec<usize>> {
    check_even(g)?;
    let nontrivial: Vec<u64> = g.components().into_iter().filter(|c| c.count_ones() > 1).collect();
    match nontrivial.len() {
        0 => Err(Error::Parameter("graph has no edges".into())),
        1 => {
            let mut adj = g.adjacency().to_vec();
            Ok(circuit_from(&mut adj, nontrivial[0].trailing_zeros() as usize))
        }
        c => Err(Error::Parameter(format!("edges span {c} components"))),
    }
}

/// Edge-disjoint cycles covering every edge of an even graph. Each Euler
/// circuit is cut into simple cycles at the first repeated vertex.
pub fn cycle_decomposition(g: &SimpleGraph) -> Result<Vec<Vec<usize>>> {
    check_even(g)?;
    let mut adj = g.adjacency().to_vec();
    let mut cycles = Vec::new();
    for comp in g.components() {
        if comp.count_ones() < 2 {
            continue;
        }
        let walk = circuit_from(&mut adj, comp.trailing_zeros() as usize);
        let mut path: Vec<usize> = Vec::new();
        let mut on_path = vec![usize::MAX; g.n()];
        for &v in &walk {
            if on_path[v] != usize::MAX {
                let at = on_path[v];
                let cycle: Vec<usize> = path.drain(at + 1..).collect();
                for &u in &cycle {
                    on_path[u] = usize::MAX;
                }
                let mut c = vec![v];
                c.extend(cycle);
                cycles.push(c);
            } else {
                on_path[v] = path.len();
                path.push(v);
            }
        }
    }
    Ok(cycles)
}

/// Maximum matching of a bipartite graph given as left-vertex adjacency
/// lists into `right` vertices. Returns `mate[l]` for each left vertex.
pub fn bipartite_matching(left_adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| augment(o, adj, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for l in 0..left_adj.len() {
        let mut seen = vec![false; right];
        augment(l, left_adj, &mut seen, &mut owner);
    }
    let mut mate = vec![None; left_adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            mate[*l] = Some(r);
        }
    }
    mate
}

/// Non-negative `(x, y)` with `xa + yb = target`, taking `x` as large as
/// possible, or `None` when no such pair exists.
pub fn frobenius_decomposition(a: usize, b: usize, target: usize) -> Option<(usize, usize)> {
    if a == 0 {
        return (b > 0 && target.is_multiple_of(b)).then(|| (0, target / b)).or((target == 0).then_some((0, 0)));
    }
    (0..=target / a).rev().find_map(|x| {
        let rest = target - x * a;
        match b {
            0 => (rest == 0).then_some((x, 0)),
            _ => rest.is_multiple_of(b).then_some((x, rest / b)),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge_id;
    use std::collections::HashSet;

    #[test]
    fn euler_k5() {
        let c = euler_circuit(&SimpleGraph::complete(5)).unwrap();
        assert_eq!(c.len(), 11);
        assert_eq!(c.first(), c.last());
        let used: HashSet<u32> = c.windows(2).map(|w| edge_id(w[0], w[1])).collect();
        assert_eq!(used.len(), 10);
        assert!(euler_circuit(&SimpleGraph::complete(4)).is_err());
    }

    #[test]
    fn cycles_cover_bipartite() {
        let g = SimpleGraph::empty(4).join(&SimpleGraph::empty(4));
        let cycles = cycle_decomposition(&g).unwrap();
        let mut seen = HashSet::new();
        for c in &cycles {
            assert!(c.len() % 2 == 0 && c.len() >= 4);
            let uniq: HashSet<_> = c.iter().collect();
            assert_eq!(uniq.len(), c.len());
            for i in 0..c.len() {
                assert!(seen.insert(edge_id(c[i], c[(i + 1) % c.len()])));
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_decomposition(3, 5, 7), None);
        assert_eq!(frobenius_decomposition(3, 5, 11), Some((2, 1)));
        for n in 8..40 {
            let (x, y) = frobenius_decomposition(3, 5, n).unwrap();
            assert_eq!(3 * x + 5 * y, n);
        }
        assert_eq!(frobenius_decomposition(4, 3, 50), Some((11, 2)));
    }

    #[test]
    fn matching_regular_bipartite() {
        let adj: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
        let mate = bipartite_matching(&adj, 5);
        assert!(mate.iter().all(Option::is_some));
    }
}
