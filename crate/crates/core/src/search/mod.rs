//! Exact decision procedures: does some mapping of a class avoid a set of
//! relations? Plus the parameter drivers built on top.

mod coloring;
mod cover;
mod csp;
mod params;

pub use coloring::{z_via_coloring, z_via_mapping};
pub use cover::{w_p3_exact_cover, w_p3_exact_cover_n};
pub use params::{compute_h, compute_parameter, compute_parameter_with, expected_exclusive_copies, monte_carlo_w_witness, HReport, MonteCarlo, ParamName, ParameterRun};

use crate::detect::{self, Relation};
use crate::error::{param, Error, Result};
use crate::mapping::{EdgeMapping, MapClass};
use crate::pattern::PatternGraph;
use serde::Serialize;
use std::time::{Duration, Instant};

/// Largest `n` the solver accepts: `C(n,2)` images must fit a `u64`.
pub const MAX_SEARCH_N: usize = 11;

/// One decision instance: is there an `f` in `class` on `K_n` with no copy
/// of any listed pattern in the listed relation?
#[derive(Clone, Debug)]
pub struct AvoidanceSpec {
    pub n: usize,
    pub class: MapClass,
    pub avoid: Vec<(Relation, PatternGraph)>,
    /// Optional per-edge image masks, intersected with the class. A spec
    /// with these is not symmetric, so orbit pruning is switched off.
    pub domains: Option<Vec<u64>>,
}

impl AvoidanceSpec {
    pub fn new(n: usize, class: MapClass, avoid: Vec<(Relation, PatternGraph)>) -> Result<Self> {
        if n > MAX_SEARCH_N {
            return param(format!("search supports n <= {MAX_SEARCH_N}, got {n}"));
        }
        if let Some((_, p)) = avoid.iter().find(|(_, p)| p.k() > n) {
            return param(format!("pattern {} has {} vertices, more than n={n}", p.name(), p.k()));
        }
        Ok(AvoidanceSpec { n, class, avoid, domains: None })
    }

    pub fn with_domains(mut self, domains: Vec<u64>) -> Result<Self> {
        if domains.len() != crate::graph::pairs(self.n) {
            return param(format!("expected {} edge domains, got {}", crate::graph::pairs(self.n), domains.len()));
        }
        self.domains = Some(domains);
        Ok(self)
    }

    /// Exclusive avoidance outside `F_{n,0}`/no-half classes is legal but
    /// unusual; this names such combinations.
    pub fn notes(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.class == MapClass::All && self.avoid.iter().any(|(r, _)| *r == Relation::Exclusive) {
            out.push("exclusive avoidance over the unrestricted class".into());
        }
        out
    }

    /// Whether `f` is a valid witness for this spec.
    pub fn accepts(&self, f: &EdgeMapping) -> bool {
        f.n() == self.n
            && f.in_map_class(self.class)
            && self.domains.as_ref().is_none_or(|d| (0..d.len()).all(|e| d[e] >> f.image(e as u32) & 1 == 1))
            && self.avoid.iter().all(|(r, p)| detect::find(f, p, *r).is_none())
    }

    pub fn describe(&self) -> String {
        let avoid: Vec<String> = self.avoid.iter().map(|(r, p)| format!("{r} {}", p.name())).collect();
        format!("n={} class={} avoid={{{}}}", self.n, self.class, avoid.join(", "))
    }
}

/// Node and wall-clock limits; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }
    pub fn seconds(s: u64) -> Self {
        Budget { nodes: None, time: Some(Duration::from_secs(s)) }
    }
    pub fn nodes(n: u64) -> Self {
        Budget { nodes: Some(n), time: None }
    }
}

/// Pruning toggles. Every combination is sound; they only change speed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    /// Unit propagation of copy clauses (pattern completion).
    pub propagation: bool,
    /// Per-vertex shifted-degree caps for star patterns.
    pub degree_rule: bool,
    /// Destroyer-counting bound on open free/exclusive copies.
    pub counting_rule: bool,
    /// Orbit pruning under the pointwise stabilizer of decided vertices.
    pub symmetry: bool,
    /// Root-level worker threads.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { propagation: true, degree_rule: true, counting_rule: true, symmetry: true, threads: 1 }
    }
}

impl SearchConfig {
    /// Defaults with the thread count read from `EDGEMAP_THREADS`.
    pub fn from_env() -> Self {
        let threads = std::env::var("EDGEMAP_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&t| t >= 1).unwrap_or(1);
        SearchConfig { threads, ..Default::default() }
    }

    /// All sixteen on/off combinations of the four pruning switches.
    pub fn all_toggles() -> Vec<SearchConfig> {
        (0..16u8)
            .map(|b| SearchConfig {
                propagation: b & 1 != 0,
                degree_rule: b & 2 != 0,
                counting_rule: b & 4 != 0,
                symmetry: b & 8 != 0,
                threads: 1,
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub clause_conflicts: u64,
    pub degree_conflicts: u64,
    pub count_prunes: u64,
    pub symmetry_skips: u64,
    pub interchange_skips: u64,
    /// Omitted from reproducible output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.clause_conflicts += o.clause_conflicts;
        self.degree_conflicts += o.degree_conflicts;
        self.count_prunes += o.count_prunes;
        self.symmetry_skips += o.symmetry_skips;
        self.interchange_skips += o.interchange_skips;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Witness(EdgeMapping),
    Exhausted,
    Timeout,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Witness(_) => "WITNESS",
            Verdict::Exhausted => "EXHAUSTED",
            Verdict::Timeout => "TIMEOUT",
        }
    }
    pub fn witness(&self) -> Option<&EdgeMapping> {
        match self {
            Verdict::Witness(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub stats: SearchStats,
    pub config: SearchConfig,
}

impl SearchOutcome {
    pub fn is_exhausted(&self) -> bool {
        self.verdict == Verdict::Exhausted
    }
    pub fn is_witness(&self) -> bool {
        matches!(self.verdict, Verdict::Witness(_))
    }
}

/// Decides `spec` with the default pruning and `EDGEMAP_THREADS` workers.
pub fn exists_avoiding(spec: &AvoidanceSpec, budget: Budget) -> Result<SearchOutcome> {
    exists_avoiding_with(spec, budget, &SearchConfig::from_env())
}

/// Decides `spec` under an explicit configuration. A witness is re-checked
/// with the detectors before it is returned.
pub fn exists_avoiding_with(spec: &AvoidanceSpec, budget: Budget, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    let restricted;
    let cfg = if spec.domains.is_some() && cfg.symmetry {
        restricted = SearchConfig { symmetry: false, ..cfg.clone() };
        &restricted
    } else {
        cfg
    };
    let problem = csp::Problem::new(spec, cfg);
    let mut solver = csp::Solver::new(&problem, cfg, budget);
    let flow = if !solver.init() {
        csp::Flow::Exhausted
    } else if cfg.threads > 1 {
        solver.dfs_parallel(cfg.threads)
    } else {
        solver.dfs()
    };
    let verdict = match flow {
        csp::Flow::Found => {
            debug_assert_eq!(solver.images().len(), problem.edge_count());
            let f = EdgeMapping::new(spec.n, solver.images())?;
            if !spec.accepts(&f) {
                return Err(Error::Internal(format!("search produced an invalid witness for {}: {f:?}", spec.describe())));
            }
            Verdict::Witness(f)
        }
        csp::Flow::Exhausted => Verdict::Exhausted,
        csp::Flow::Timeout => Verdict::Timeout,
    };
    let mut stats = solver.stats;
    stats.wall_ms = Some(start.elapsed().as_millis() as u64);
    Ok(SearchOutcome { verdict, stats, config: cfg.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::small_exact;

    fn p(s: &str) -> PatternGraph {
        PatternGraph::parse(s).unwrap()
    }

    fn run(n: usize, class: MapClass, avoid: Vec<(Relation, PatternGraph)>) -> SearchOutcome {
        exists_avoiding_with(&AvoidanceSpec::new(n, class, avoid).unwrap(), Budget::unlimited(), &SearchConfig::default()).unwrap()
    }

    #[test]
    fn k4_involution_is_the_unique_witness() {
        let out = run(4, MapClass::D0, vec![(Relation::Free, p("2K2"))]);
        assert_eq!(out.verdict.witness(), Some(&small_exact("k4_involution").unwrap().mapping));
        let mut count = 0;
        let spec = AvoidanceSpec::new(4, MapClass::D0, vec![(Relation::Free, p("2K2"))]).unwrap();
        let cands: Vec<u32> = (0..6).collect();
        // D0 on K_4 leaves exactly one image per edge.
        for img in [cands.iter().map(|&e| 5 - e).collect::<Vec<_>>()] {
            if spec.accepts(&EdgeMapping::new(4, img).unwrap()) {
                count += 1;
            }
        }
        assert_eq!(count, 1);
    }

    #[test]
    fn two_k2_at_five_is_forced() {
        assert!(run(5, MapClass::D1, vec![(Relation::Free, p("2K2"))]).is_exhausted());
        assert!(run(4, MapClass::D1, vec![(Relation::Free, p("2K2"))]).is_witness());
    }

    #[test]
    fn k2_thresholds() {
        assert!(run(2, MapClass::D1, vec![(Relation::Free, p("K2"))]).is_exhausted());
        assert!(run(3, MapClass::D1, vec![(Relation::Free, p("K2"))]).is_exhausted());
        assert!(run(4, MapClass::D0, vec![(Relation::Free, p("K2"))]).is_exhausted());
        assert!(run(3, MapClass::All, vec![(Relation::Free, p("K2"))]).is_witness());
    }

    #[test]
    fn p3_free() {
        assert!(run(3, MapClass::D1, vec![(Relation::Free, p("K1,2"))]).is_witness());
        assert!(run(4, MapClass::D1, vec![(Relation::Free, p("K1,2"))]).is_exhausted());
    }

    #[test]
    fn exclusive_p3() {
        assert!(run(5, MapClass::D0, vec![(Relation::Exclusive, p("K1,2"))]).is_witness());
        assert!(run(6, MapClass::D0, vec![(Relation::Exclusive, p("K1,2"))]).is_exhausted());
    }

    #[test]
    fn ramsey_in_mapping_space() {
        let avoid = vec![(Relation::Fixed, p("K3")), (Relation::Shifted, p("K3"))];
        assert!(run(5, MapClass::All, avoid.clone()).is_witness());
        assert!(run(6, MapClass::All, avoid).is_exhausted());
    }

    #[test]
    fn budget_yields_timeout() {
        let spec = AvoidanceSpec::new(6, MapClass::D0, vec![(Relation::Exclusive, p("K1,2"))]).unwrap();
        let cfg = SearchConfig { counting_rule: false, ..Default::default() };
        let out = exists_avoiding_with(&spec, Budget::nodes(2), &cfg).unwrap();
        assert_eq!(out.verdict, Verdict::Timeout);
    }

    #[test]
    fn empty_pattern_is_unavoidable() {
        assert!(run(3, MapClass::All, vec![(Relation::Free, p("E2"))]).is_exhausted());
        assert!(AvoidanceSpec::new(3, MapClass::All, vec![(Relation::Free, p("K4"))]).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let cfg = SearchConfig { threads: 4, ..Default::default() };
        for n in 4..=6 {
            let spec = AvoidanceSpec::new(n, MapClass::D0, vec![(Relation::Exclusive, p("K1,2"))]).unwrap();
            let a = exists_avoiding_with(&spec, Budget::unlimited(), &cfg).unwrap();
            let b = exists_avoiding_with(&spec, Budget::unlimited(), &SearchConfig::default()).unwrap();
            assert_eq!(a.verdict, b.verdict, "n={n}");
        }
    }
}
