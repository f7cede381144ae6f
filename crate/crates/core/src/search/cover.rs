//! Exclusive-`P_3` avoidance in `F_{n,0}` as a covering problem.
//!
//! For `f(pq) = rs` disjoint from `pq`, the edge `pq` spoils exactly the
//! four paths `r-p-q`, `s-p-q`, `p-q-r`, `p-q-s`. A mapping avoids exclusive
//! `P_3` iff every path is spoiled. On `K_6` there are 60 paths and 15 edges
//! spoiling four each, so the cover must be exact.

use super::{SearchConfig, SearchOutcome, SearchStats, Verdict};
use crate::detect::find_exclusive;
use crate::error::{param, Error, Result};
use crate::graph::{edge_ends, edge_id, edge_mask, pairs, EdgeId};
use crate::mapping::EdgeMapping;
use crate::pattern::PatternGraph;
use std::collections::HashMap;
use std::time::Instant;

struct Cover {
    options: Vec<(usize, usize, u128)>,
    by_item: Vec<Vec<usize>>,
    items: usize,
    exact: bool,
}

impl Cover {
    fn new(n: usize) -> Cover {
        // path (centre c, leaves a < b) -> item index
        let mut index = HashMap::new();
        for c in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    if a != c && b != c {
                        let i = index.len();
                        index.insert((c, a, b), i);
                    }
                }
            }
        }
        let path = |c: usize, x: usize, y: usize| index[&(c, x.min(y), x.max(y))];
        let ne = pairs(n);
        let mut options = Vec::new();
        for e in 0..ne {
            let (p, q) = edge_ends(e as EdgeId);
            for t in 0..ne {
                if edge_mask(e as EdgeId) & edge_mask(t as EdgeId) != 0 {
                    continue;
                }
                let (r, s) = edge_ends(t as EdgeId);
                let cover = [path(p, q, r), path(p, q, s), path(q, p, r), path(q, p, s)]
                    .iter()
                    .fold(0u128, |m, &i| m | 1 << i);
                options.push((e, t, cover));
            }
        }
        let items = index.len();
        let mut by_item = vec![Vec::new(); items];
        for (o, &(_, _, cover)) in options.iter().enumerate() {
            for (i, list) in by_item.iter_mut().enumerate() {
                if cover >> i & 1 == 1 {
                    list.push(o);
                }
            }
        }
        Cover { options, by_item, items, exact: 4 * ne == items }
    }

    fn viable(&self, o: usize, assigned: u64, covered: u128) -> bool {
        let (e, _, cover) = self.options[o];
        assigned >> e & 1 == 0 && (!self.exact || cover & covered == 0)
    }

    fn solve(&self, assigned: u64, covered: u128, image: &mut [Option<usize>], nodes: &mut u64) -> bool {
        *nodes += 1;
        let full = if self.items == 128 { u128::MAX } else { (1u128 << self.items) - 1 };
        if covered == full {
            return true;
        }
        let mut best: Option<(usize, usize)> = None;
        for i in 0..self.items {
            if covered >> i & 1 == 1 {
                continue;
            }
            let k = self.by_item[i].iter().filter(|&&o| self.viable(o, assigned, covered)).count();
            if best.is_none_or(|(_, bk)| k < bk) {
                best = Some((i, k));
            }
            if k == 0 {
                return false;
            }
        }
        let (item, _) = best.expect("an uncovered item");
        for &o in &self.by_item[item] {
            if !self.viable(o, assigned, covered) {
                continue;
            }
            let (e, t, cover) = self.options[o];
            image[e] = Some(t);
            if self.solve(assigned | 1 << e, covered | cover, image, nodes) {
                return true;
            }
            image[e] = None;
        }
        false
    }
}

/// Decides whether some `f` in `F_{6,0}` has no exclusive `P_3`, as an
/// exact cover of the 60 paths, normalised by `f(01) = 23`.
pub fn w_p3_exact_cover() -> Result<SearchOutcome> {
    w_p3_exact_cover_n(6)
}

/// The covering formulation for `4 <= n <= 7`; exact only at `n = 6`.
pub fn w_p3_exact_cover_n(n: usize) -> Result<SearchOutcome> {
    if !(4..=7).contains(&n) {
        return param(format!("covering formulation needs 4 <= n <= 7, got {n}"));
    }
    let start = Instant::now();
    let cover = Cover::new(n);
    if cover.exact {
        debug_assert_eq!(4 * pairs(n), cover.items);
    }
    let mut image = vec![None; pairs(n)];
    // every f in F_{n,0} is conjugate to one with f(01) = 23
    let (e0, t0) = (edge_id(0, 1) as usize, edge_id(2, 3) as usize);
    let seed = cover
        .options
        .iter()
        .find(|o| o.0 == e0 && o.1 == t0)
        .map(|o| o.2)
        .ok_or_else(|| Error::Internal("seed option missing".into()))?;
    image[e0] = Some(t0);
    let mut nodes = 0;
    let found = cover.solve(1 << e0, seed, &mut image, &mut nodes);
    let verdict = if found {
        let img: Vec<EdgeId> = (0..pairs(n))
            .map(|e| {
                image[e].unwrap_or_else(|| {
                    (0..pairs(n)).find(|&t| edge_mask(e as EdgeId) & edge_mask(t as EdgeId) == 0).expect("n >= 4")
                }) as EdgeId
            })
            .collect();
        let f = EdgeMapping::new(n, img)?;
        if find_exclusive(&f, &PatternGraph::star(2)).is_some() || !f.in_class(0, None)? {
            return Err(Error::Internal("cover produced an invalid witness".into()));
        }
        Verdict::Witness(f)
    } else {
        Verdict::Exhausted
    };
    let stats = SearchStats { nodes, wall_ms: Some(start.elapsed().as_millis() as u64), ..Default::default() };
    Ok(SearchOutcome { verdict, stats, config: SearchConfig { threads: 1, ..Default::default() } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::small_exact;

    #[test]
    fn accounting() {
        let c = Cover::new(6);
        assert_eq!(c.items, 60);
        assert_eq!(c.options.len(), 15 * 6);
        assert!(c.options.iter().all(|o| o.2.count_ones() == 4));
        assert!(c.exact);
        assert!(!Cover::new(5).exact);
    }

    #[test]
    fn six_is_exhausted() {
        assert!(w_p3_exact_cover().unwrap().is_exhausted());
    }

    #[test]
    fn five_has_witnesses() {
        let out = w_p3_exact_cover_n(5).unwrap();
        let f = out.verdict.witness().expect("witness");
        assert!(find_exclusive(f, &PatternGraph::star(2)).is_none());
        // the pentagon involution is one of several
        let pent = small_exact("pentagon_involution").unwrap().mapping;
        assert!(find_exclusive(&pent, &PatternGraph::star(2)).is_none());
        assert_ne!(&pent, f);
    }
}
