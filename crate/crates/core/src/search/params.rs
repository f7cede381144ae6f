//! Parameter drivers: walk `n` upward, settling each level by a witness
//! construction, a certificate, or exhaustive search.

use super::{exists_avoiding_with, w_p3_exact_cover, z_via_coloring, AvoidanceSpec, Budget, SearchConfig, Verdict};
use crate::bounds::{self, Bound, BoundReport};
use crate::canon::{all_graphs, from_code};
use crate::constructions::{small_exact, SMALL_NAMES};
use crate::detect::{find_exclusive, Relation};
use crate::error::{param, Error, Result};
use crate::graph::{edge_mask, pairs, EdgeId};
use crate::mapping::{EdgeMapping, MapClass};
use crate::pattern::PatternGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamName {
    M,
    MStar,
    G,
    W,
    Z,
}

impl ParamName {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(ParamName::M),
            "m_star" | "mstar" | "m*" => Ok(ParamName::MStar),
            "g" => Ok(ParamName::G),
            "w" => Ok(ParamName::W),
            "z" => Ok(ParamName::Z),
            _ => Err(Error::UnknownName(format!("parameter '{s}' (expected m, m_star, g, w, z)"))),
        }
    }

    /// Whether the parameter takes a second pattern `H`.
    pub fn two_patterns(self) -> bool {
        matches!(self, ParamName::M | ParamName::MStar | ParamName::Z)
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamName::M => "m",
            ParamName::MStar => "m_star",
            ParamName::G => "g",
            ParamName::W => "w",
            ParamName::Z => "z",
        })
    }
}

/// How one level `n` was settled.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub n: usize,
    /// `true` when every mapping of the class has the required copy.
    pub forced: Option<bool>,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParameterRun {
    pub report: BoundReport,
    pub steps: Vec<Step>,
}

struct Setup {
    class: MapClass,
    avoid: Vec<(Relation, PatternGraph)>,
    start: usize,
}

fn setup(name: ParamName, g: &PatternGraph, h: Option<&PatternGraph>, d: u32) -> Result<Setup> {
    let need_h = || h.cloned().ok_or_else(|| Error::Parameter(format!("{name} needs a second pattern")));
    let (class, avoid) = match name {
        ParamName::M => (MapClass::All, vec![(Relation::Fixed, g.clone()), (Relation::Free, need_h()?)]),
        ParamName::MStar => (MapClass::NoHalf, vec![(Relation::Fixed, g.clone()), (Relation::Exclusive, need_h()?)]),
        ParamName::Z => (MapClass::All, vec![(Relation::Fixed, g.clone()), (Relation::Shifted, need_h()?)]),
        ParamName::G => {
            let class = match d {
                0 => MapClass::D0,
                1 => MapClass::D1,
                _ => return param(format!("g takes d in {{0, 1}}, got {d}")),
            };
            (class, vec![(Relation::Free, g.clone())])
        }
        ParamName::W => (MapClass::D0, vec![(Relation::Exclusive, g.clone())]),
    };
    if avoid.iter().any(|(_, p)| p.m() == 0) {
        return param("patterns must have at least one edge");
    }
    // below the smallest pattern nothing can be forced; below the class
    // threshold the class is empty and levels are skipped
    let smallest = avoid.iter().map(|(_, p)| p.k()).min().expect("non-empty");
    Ok(Setup { class, avoid, start: smallest.max(class.min_vertices()) })
}

/// Certificates that force the property at `n`, by name.
fn certificate(name: ParamName, g: &PatternGraph, h: Option<&PatternGraph>, d: u32, n: usize) -> Option<String> {
    match name {
        ParamName::G if d == 1 => {
            if g.m() >= 2 && n >= g.k().max(4) && bounds::degreethm_check(g, n).ok()? {
                return Some("degree certificate".into());
            }
            let t = g.graph().n() / 2;
            let is_matching = g.k() == 2 * g.m() && (0..g.k()).all(|v| g.graph().degree(v) == 1);
            if is_matching && t >= 2 && n >= 2 * t && bounds::matching_destroy_certify(n, t).ok()? {
                return Some("matching counting certificate".into());
            }
            None
        }
        ParamName::G => {
            let ok = g.k() >= 3 && g.m() >= 2 && n >= g.k().max(4) && bounds::gGkm_check(g.k(), g.m(), n).ok()?;
            ok.then(|| "strong-shift counting certificate".into())
        }
        ParamName::M => {
            let r = h?.star_leaves()?;
            let ex = bounds::ex_value(n, g).ok()?;
            bounds::upperk1r_certify(n, ex.value, r).then(|| format!("shifted-degree certificate (ex from {:?})", ex.source))
        }
        ParamName::MStar => {
            let h = h?;
            let ex = bounds::ex_value(n, g).ok()?;
            if let Some(r) = h.star_leaves().filter(|&r| r >= 2) {
                return bounds::m_star_certify_star(n, ex.value, r).then(|| format!("exclusive-star certificate (ex from {:?})", ex.source));
            }
            None
        }
        _ => None,
    }
}

fn construction_witness(spec: &AvoidanceSpec) -> Option<(String, EdgeMapping)> {
    SMALL_NAMES.iter().find_map(|&name| {
        let f = small_exact(name).ok()?.mapping;
        spec.accepts(&f).then(|| (name.to_string(), f))
    })
}

/// Settles `name` for `n` from `start` up to `n_max`. Witness levels give
/// lower bounds, forced levels upper bounds; the first forced level closes
/// the run and is tight when every earlier level has a witness.
pub fn compute_parameter(
    name: ParamName,
    g: &PatternGraph,
    h: Option<&PatternGraph>,
    d: u32,
    n_max: usize,
    budget: Budget,
) -> Result<ParameterRun> {
    compute_parameter_with(name, g, h, d, n_max, budget, &SearchConfig::from_env())
}

/// [`compute_parameter`] with an explicit search configuration.
pub fn compute_parameter_with(
    name: ParamName,
    g: &PatternGraph,
    h: Option<&PatternGraph>,
    d: u32,
    n_max: usize,
    budget: Budget,
    cfg: &SearchConfig,
) -> Result<ParameterRun> {
    let s = setup(name, g, h, d)?;
    let started = Instant::now();
    let mut steps = Vec::new();
    let mut first_unknown: Option<usize> = None;
    let mut upper: Option<(usize, String)> = None;
    for n in s.start..=n_max {
        let remaining = budget.time.map(|t| t.saturating_sub(started.elapsed()));
        let level_budget = Budget { nodes: budget.nodes, time: remaining };
        let avoid: Vec<_> = s.avoid.iter().filter(|(_, p)| p.k() <= n).cloned().collect();
        let spec = AvoidanceSpec::new(n, s.class, avoid)?;
        let step = settle(name, g, h, d, &spec, level_budget, cfg)?;
        let forced = step.forced;
        steps.push(step);
        match forced {
            Some(true) => {
                upper = Some((n, steps.last().expect("pushed").source.clone()));
                break;
            }
            Some(false) => {}
            None => {
                first_unknown.get_or_insert(n);
            }
        }
    }
    let label = match h {
        Some(h) => format!("{name}({},{})", g.name(), h.name()),
        None if name == ParamName::G => format!("g({},{d})", g.name()),
        None => format!("{name}({})", g.name()),
    };
    let settled_below = first_unknown.unwrap_or(match &upper {
        Some((n, _)) => *n,
        None => n_max + 1,
    });
    let lower_src = if settled_below == s.start {
        "nothing can be forced below this order".to_string()
    } else {
        format!("witnesses for every order below {settled_below}")
    };
    let lower = Bound::int(settled_below as i64, lower_src);
    let upper_b = upper.map(|(n, src)| Bound::int(n as i64, src));
    let mut report = BoundReport::new(label, Some(lower), upper_b);
    if let Some(n) = first_unknown {
        report = report.note(format!("order {n} undecided within budget"));
    }
    if report.upper.is_none() {
        report = report.note(format!("no forced order found up to {n_max}"));
    }
    Ok(ParameterRun { report, steps })
}

fn settle(name: ParamName, g: &PatternGraph, h: Option<&PatternGraph>, d: u32, spec: &AvoidanceSpec, budget: Budget, cfg: &SearchConfig) -> Result<Step> {
    let n = spec.n;
    let mk = |forced, source: &str, witness: Option<&EdgeMapping>, nodes| Step {
        n,
        forced,
        source: source.to_string(),
        witness: witness.map(|f| f.to_compact()),
        nodes,
    };
    if let Some((cname, f)) = construction_witness(spec) {
        return Ok(mk(Some(false), &format!("construction {cname}"), Some(&f), None));
    }
    if let Some(c) = certificate(name, g, h, d, n) {
        return Ok(mk(Some(true), &c, None, None));
    }
    if name == ParamName::Z && n <= super::coloring::COLORING_MAX_N {
        let h = h.expect("z has two patterns");
        let colorable = z_via_coloring(g, h, n)?;
        return Ok(mk(Some(!colorable), "colouring sweep", None, None));
    }
    if name == ParamName::W && n == 6 && g.star_leaves() == Some(2) {
        let out = w_p3_exact_cover()?;
        return Ok(mk(Some(out.is_exhausted()), "exact cover", out.verdict.witness(), Some(out.stats.nodes)));
    }
    let out = exists_avoiding_with(spec, budget, cfg)?;
    let nodes = Some(out.stats.nodes);
    Ok(match &out.verdict {
        Verdict::Witness(f) => mk(Some(false), "search WITNESS", Some(f), nodes),
        Verdict::Exhausted => mk(Some(true), "search EXHAUSTED", None, nodes),
        Verdict::Timeout => mk(None, "search TIMEOUT", None, nodes),
    })
}

/// Result of [`compute_h`]. `value` is set only when the maximum is proved.
#[derive(Clone, Debug, Serialize)]
pub struct HReport {
    pub n: usize,
    pub pattern: String,
    pub strong: bool,
    pub value: Option<u64>,
    /// Largest support size with a witness found.
    pub lower: u64,
    /// No support larger than this admits a witness.
    pub upper: u64,
    pub flag: &'static str,
}

/// `h(n, H)`: the most shifted edges a mapping on `K_n` can have without a
/// free `H`. With `strong`, `s(n, H)`: the most strongly shifted edges of a
/// no-half mapping without an exclusive `H`. Shifted supports are tried up to
/// isomorphism in decreasing size; edges outside the support are fixed.
pub fn compute_h(n: usize, h: &PatternGraph, strong: bool, budget: Budget) -> Result<HReport> {
    if h.m() == 0 {
        return param("pattern needs an edge");
    }
    if n > 8 {
        return param(format!("support enumeration limited to n <= 8, got {n}"));
    }
    let started = Instant::now();
    let ne = pairs(n);
    let flag = "inferred definition";
    let mk = |value, lower, upper| HReport { n, pattern: h.name().to_string(), strong, value, lower, upper, flag };
    if h.k() > n {
        return Ok(mk(Some(ne as u64), ne as u64, ne as u64));
    }
    let (class, rel) = if strong { (MapClass::NoHalf, Relation::Exclusive) } else { (MapClass::All, Relation::Free) };
    let levels = all_graphs(n);
    // highest support size not fully refuted, once one times out
    let mut open: Option<u64> = None;
    for m in (0..=ne).rev() {
        let mut timed_out = false;
        for &code in &levels[m] {
            let support = from_code(n, code);
            let domains: Vec<u64> = (0..ne)
                .map(|e| {
                    if support.has_edge_id(e as EdgeId) {
                        let away = if strong { edge_mask(e as EdgeId) } else { 0 };
                        (0..ne).filter(|&t| t != e && edge_mask(t as EdgeId) & away == 0).fold(0u64, |a, t| a | 1 << t)
                    } else {
                        1 << e
                    }
                })
                .collect();
            let spec = AvoidanceSpec::new(n, class, vec![(rel, h.clone())])?.with_domains(domains)?;
            let remaining = budget.time.map(|t| t.saturating_sub(started.elapsed()));
            if remaining == Some(Duration::ZERO) {
                return Ok(mk(None, 0, open.unwrap_or(m as u64)));
            }
            let out = super::exists_avoiding_with(&spec, Budget { nodes: budget.nodes, time: remaining }, &SearchConfig::default())?;
            match out.verdict {
                Verdict::Witness(_) => return Ok(mk(open.is_none().then_some(m as u64), m as u64, open.unwrap_or(m as u64))),
                Verdict::Timeout => timed_out = true,
                Verdict::Exhausted => {}
            }
        }
        if timed_out && open.is_none() {
            open = Some(m as u64);
        }
    }
    Err(Error::Internal("the identity mapping was not accepted".into()))
}

/// Expected number of exclusive copies bound `exp(k ln n - 2m(k-2)/(n-2))`.
pub fn expected_exclusive_copies(k: usize, m: usize, n: usize) -> f64 {
    let (k, m, n) = (k as f64, m as f64, n as f64);
    (k * n.ln() - 2.0 * m * (k - 2.0) / (n - 2.0)).exp()
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarlo {
    pub trials: u64,
    pub seed: u64,
    /// Trials drawn before the witness (or all of them).
    pub used: u64,
    pub witness: Option<String>,
    pub expected_count: f64,
    /// `false` when no witness turned up; absence proves nothing.
    pub conclusive: bool,
}

/// Draws uniform mappings from `F_{n,0}` and returns the first with no
/// exclusive copy of `g`.
pub fn monte_carlo_w_witness(g: &PatternGraph, n: usize, trials: u64, seed: u64) -> Result<(MonteCarlo, Option<EdgeMapping>)> {
    if trials == 0 {
        return param("trials must be at least 1");
    }
    if n < 4 {
        return param("F_{n,0} is empty below n = 4");
    }
    let ne = pairs(n);
    let options: Vec<Vec<EdgeId>> = (0..ne as EdgeId)
        .map(|e| (0..ne as EdgeId).filter(|&t| edge_mask(e) & edge_mask(t) == 0).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expected_count = expected_exclusive_copies(g.k(), g.m(), n);
    for i in 0..trials {
        let image: Vec<EdgeId> = options.iter().map(|o| o[rng.gen_range(0..o.len())]).collect();
        let f = EdgeMapping::new(n, image)?;
        if find_exclusive(&f, g).is_none() {
            let mc = MonteCarlo { trials, seed, used: i + 1, witness: Some(f.to_compact()), expected_count, conclusive: true };
            return Ok((mc, Some(f)));
        }
    }
    Ok((MonteCarlo { trials, seed, used: trials, witness: None, expected_count, conclusive: false }, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{BoundValue, Status};

    fn p(s: &str) -> PatternGraph {
        PatternGraph::parse(s).unwrap()
    }

    fn value(run: &ParameterRun) -> i64 {
        assert_eq!(run.report.status, Status::Tight, "{}", run.report);
        match run.report.upper.as_ref().unwrap().value {
            BoundValue::Integer(v) => v,
            _ => unreachable!(),
        }
    }

    #[test]
    fn small_exact_values() {
        let b = Budget::seconds(120);
        assert_eq!(value(&compute_parameter(ParamName::G, &p("K2"), None, 1, 8, b).unwrap()), 3);
        assert_eq!(value(&compute_parameter(ParamName::G, &p("K2"), None, 0, 8, b).unwrap()), 4);
        assert_eq!(value(&compute_parameter(ParamName::G, &p("K1,2"), None, 1, 8, b).unwrap()), 4);
        assert_eq!(value(&compute_parameter(ParamName::G, &p("2K2"), None, 1, 8, b).unwrap()), 5);
        assert_eq!(value(&compute_parameter(ParamName::G, &p("3K2"), None, 1, 8, b).unwrap()), 7);
        assert_eq!(value(&compute_parameter(ParamName::W, &p("K1,2"), None, 0, 8, b).unwrap()), 6);
        assert_eq!(value(&compute_parameter(ParamName::Z, &p("K3"), Some(&p("K3")), 0, 8, b).unwrap()), 6);
    }

    #[test]
    fn missing_second_pattern() {
        assert!(compute_parameter(ParamName::M, &p("K3"), None, 0, 5, Budget::unlimited()).is_err());
        assert!(ParamName::parse("q").is_err());
    }

    #[test]
    fn h_small() {
        let r = compute_h(4, &p("K2"), false, Budget::unlimited()).unwrap();
        assert_eq!(r.value, Some(0));
        let r = compute_h(5, &p("2K2"), false, Budget::unlimited()).unwrap();
        assert!(r.value.is_some());
    }

    #[test]
    fn monte_carlo_k4() {
        assert!(expected_exclusive_copies(4, 6, 5) < 1.0);
        let (mc, f) = monte_carlo_w_witness(&p("K4"), 5, 200, 7).unwrap();
        let f = f.expect("witness within 200 trials");
        assert!(find_exclusive(&f, &p("K4")).is_none());
        let (again, _) = monte_carlo_w_witness(&p("K4"), 5, 200, 7).unwrap();
        assert_eq!(mc.witness, again.witness);
    }
}
