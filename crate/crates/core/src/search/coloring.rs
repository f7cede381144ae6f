//! Two-colourings of `K_n`: red edges are the fixed ones, blue the shifted.

use super::{exists_avoiding_with, AvoidanceSpec, Budget, SearchConfig, Verdict};
use crate::canon::{from_code, generate};
use crate::detect::Relation;
use crate::embed::contains;
use crate::error::{param, Result};
use crate::graph::pairs;
use crate::mapping::MapClass;
use crate::pattern::PatternGraph;

/// Largest `n` for the isomorph-free colouring sweep.
pub const COLORING_MAX_N: usize = 9;

/// Whether some red/blue colouring of `K_n` has no red `G` and no blue `H`.
/// Red graphs are generated up to isomorphism, pruned as soon as they
/// contain `G`.
pub fn z_via_coloring(g: &PatternGraph, h: &PatternGraph, n: usize) -> Result<bool> {
    if n > COLORING_MAX_N {
        return param(format!("colouring sweep supports n <= {COLORING_MAX_N}, got {n}"));
    }
    let red_ok = |r: &crate::graph::SimpleGraph| !contains(r, g.graph());
    let levels = generate(n, pairs(n), &red_ok);
    Ok(levels.iter().flatten().any(|&code| !contains(&from_code(n, code).complement(), h.graph())))
}

/// The same question asked in mapping space: some `f` with no fixed `G`
/// and no shifted `H`.
pub fn z_via_mapping(g: &PatternGraph, h: &PatternGraph, n: usize, budget: Budget) -> Result<Option<bool>> {
    if g.k() > n || h.k() > n {
        // a pattern larger than K_n cannot appear in either colour
        return Ok(Some(true));
    }
    let spec = AvoidanceSpec::new(n, MapClass::All, vec![(Relation::Fixed, g.clone()), (Relation::Shifted, h.clone())])?;
    let out = exists_avoiding_with(&spec, budget, &SearchConfig::default())?;
    Ok(match out.verdict {
        Verdict::Witness(_) => Some(true),
        Verdict::Exhausted => Some(false),
        Verdict::Timeout => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PatternGraph {
        PatternGraph::parse(s).unwrap()
    }

    #[test]
    fn small_ramsey() {
        assert!(z_via_coloring(&p("K3"), &p("K3"), 5).unwrap());
        assert!(!z_via_coloring(&p("K3"), &p("K3"), 6).unwrap());
        assert!(!z_via_coloring(&p("K2"), &p("K2"), 2).unwrap());
        assert!(z_via_coloring(&p("K3"), &p("K4"), 8).unwrap());
        assert!(!z_via_coloring(&p("K3"), &p("K4"), 9).unwrap());
    }

    #[test]
    fn colouring_agrees_with_mapping_search() {
        for (g, h) in [("K3", "K3"), ("K1,2", "K3"), ("2K2", "K1,2"), ("P4", "2K2")] {
            for n in 3..=6 {
                let a = z_via_coloring(&p(g), &p(h), n).unwrap();
                let b = z_via_mapping(&p(g), &p(h), n, Budget::unlimited()).unwrap().unwrap();
                assert_eq!(a, b, "{g} {h} n={n}");
            }
        }
    }
}
