//! Brute-force oracles for Turán numbers, supersaturation, pair covers and
//! matching counts. All of them enumerate graphs up to isomorphism and refuse
//! inputs above [`ORACLE_LIMIT`] vertices rather than approximate.

use crate::canon::{all_graphs, from_code, generate};
use crate::embed::contains;
use crate::error::{Error, Result};
use crate::graph::{binomial, pairs, SimpleGraph};
use crate::pattern::PatternGraph;

/// Largest host size accepted by the oracles.
pub const ORACLE_LIMIT: usize = 9;

fn check_limit(n: usize, what: &str) -> Result<()> {
    if n > ORACLE_LIMIT {
        return Err(Error::OracleLimit(format!(
            "{what} enumerates all graphs on n vertices; n={n} exceeds the limit {ORACLE_LIMIT}"
        )));
    }
    Ok(())
}

/// `ex(n, G)`: the largest edge count of an `n`-vertex graph with no copy of `G`.
pub fn ex_bruteforce(n: usize, g: &PatternGraph) -> Result<u64> {
    check_limit(n, "ex")?;
    if g.m() == 0 {
        return Err(Error::Parameter(format!("{} has no edges; ex is undefined", g.name())));
    }
    if g.k() > n {
        return Ok(pairs(n) as u64);
    }
    let levels = generate(n, pairs(n), &|h| !contains(h, g.graph()));
    Ok(levels.len() as u64 - 1)
}

/// Extremal graphs for `ex(n, G)` (canonical representatives).
pub fn ex_extremal_graphs(n: usize, g: &PatternGraph) -> Result<Vec<SimpleGraph>> {
    check_limit(n, "ex")?;
    let levels = generate(n, pairs(n), &|h| !contains(h, g.graph()));
    Ok(levels.last().map(|l| l.iter().map(|&c| from_code(n, c)).collect()).unwrap_or_default())
}

/// `S(n, m, H)`: the minimum number of copies of `H` over `n`-vertex graphs
/// with `m` edges.
pub fn supersat_min(n: usize, m: usize, h: &PatternGraph) -> Result<u64> {
    check_limit(n, "supersaturation")?;
    if m > pairs(n) {
        return Err(Error::Parameter(format!("m={m} exceeds C({n},2)={}", pairs(n))));
    }
    let all = all_graphs(n);
    Ok(all[m].iter().map(|&c| h.count_copies(&from_code(n, c))).min().expect("level non-empty"))
}

/// `C(n, H)`: the maximum, over pairs of distinct edges of `K_n`, of the
/// number of copies of `H` containing both.
pub fn pair_cover_max(n: usize, h: &PatternGraph) -> Result<u64> {
    check_limit(n, "pair cover")?;
    if h.m() < 2 {
        return Err(Error::Parameter(format!("{} has fewer than two edges", h.name())));
    }
    if h.k() > n {
        return Err(Error::Parameter(format!("{} does not fit in K_{n}", h.name())));
    }
    let e = pairs(n);
    let mut count = vec![0u64; e * e];
    h.for_each_copy(&SimpleGraph::complete(n), &mut |emb| {
        let ids = h.image_edges(emb);
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let (a, b) = (a.min(b) as usize, a.max(b) as usize);
                count[a * e + b] += 1;
            }
        }
        true
    });
    Ok(count.into_iter().max().unwrap_or(0))
}

/// Number of perfect matchings of `K_n`, `(n-1)!!`.
pub fn count_perfect_matchings(n: usize) -> Result<u64> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Parameter(format!("perfect matchings need even n >= 2, got {n}")));
    }
    Ok((1..n as u64).step_by(2).product())
}

/// Number of `t`-edge matchings in `K_n`: `C(n, 2t) (2t-1)!!`.
pub fn count_matchings(n: usize, t: usize) -> u64 {
    if t == 0 {
        return 1;
    }
    if 2 * t > n {
        return 0;
    }
    binomial(n as u64, 2 * t as u64) * (1..2 * t as u64).step_by(2).product::<u64>()
}

/// Every tree on `k` vertices up to isomorphism.
pub fn trees(k: usize) -> Result<Vec<SimpleGraph>> {
    check_limit(k, "tree enumeration")?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let forest = |g: &SimpleGraph| g.edge_count() + g.components().len() == g.n();
    let levels = generate(k, k - 1, &forest);
    Ok(levels
        .get(k - 1)
        .map(|l| l.iter().map(|&c| from_code(k, c)).filter(|g| g.is_connected()).collect())
        .unwrap_or_default())
}

/// Edge count of the Turán graph `T(n, r-1)`, the extremal `K_r`-free graph.
pub fn turan_edges(n: usize, r: usize) -> u64 {
    assert!(r >= 2);
    let parts = crate::pattern::turan_parts(n, r - 1);
    let mut sizes = vec![0u64; r - 1];
    for p in parts {
        sizes[p] += 1;
    }
    let sq: u64 = sizes.iter().map(|s| s * s).sum();
    (n as u64 * n as u64 - sq) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PatternGraph {
        PatternGraph::parse(s).unwrap()
    }

    #[test]
    fn turan_examples() {
        assert_eq!(ex_bruteforce(5, &p("K3")).unwrap(), 6);
        assert_eq!(ex_bruteforce(7, &p("K3")).unwrap(), 12);
        assert_eq!(ex_bruteforce(6, &p("C4")).unwrap(), 7);
        assert_eq!(turan_edges(7, 3), 49 / 4);
    }

    #[test]
    fn oracle_limit_refuses() {
        assert!(matches!(ex_bruteforce(10, &p("K3")), Err(Error::OracleLimit(_))));
        assert!(matches!(supersat_min(10, 3, &p("K3")), Err(Error::OracleLimit(_))));
    }

    #[test]
    fn supersaturation_examples() {
        assert_eq!(supersat_min(4, 6, &p("K3")).unwrap(), 4);
        assert!(supersat_min(6, 12, &p("K3")).unwrap() >= 8);
        assert!(supersat_min(5, 13, &p("K3")).is_err());
    }

    #[test]
    fn pair_cover_examples() {
        assert_eq!(pair_cover_max(6, &p("K3")).unwrap(), 1);
        assert_eq!(pair_cover_max(6, &p("K4")).unwrap(), 3);
        assert_eq!(pair_cover_max(7, &p("K4")).unwrap(), 4);
        assert!(pair_cover_max(6, &p("K2")).is_err());
    }

    #[test]
    fn perfect_matchings() {
        assert_eq!(count_perfect_matchings(4).unwrap(), 3);
        assert_eq!(count_perfect_matchings(6).unwrap(), 15);
        assert!(count_perfect_matchings(5).is_err());
        // brute-force count in K_8 via copy enumeration
        let brute = PatternGraph::matching(4).count_copies(&SimpleGraph::complete(8));
        assert_eq!(brute, 105);
        assert_eq!(count_perfect_matchings(8).unwrap(), brute);
        assert_eq!(count_matchings(7, 3), 105);
    }

    #[test]
    fn tree_counts() {
        let known = [1usize, 1, 1, 2, 3, 6, 11, 23];
        for (i, &want) in known.iter().enumerate() {
            assert_eq!(trees(i + 1).unwrap().len(), want, "k={}", i + 1);
        }
    }
}
