//! Closed-form bounds and one-sided certifiers. Every certifier answers
//! "the parameter is at most n" when it returns `true` and says nothing
//! otherwise. All certifier arithmetic is exact.

use crate::error::{param, Error, Result};
use crate::graph::SimpleGraph;
use crate::oracle::{self, ORACLE_LIMIT};
use crate::pattern::PatternGraph;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Exact rationals used by the certifiers.
pub type Q = Ratio<i128>;

fn q(x: i128) -> Q {
    Q::from_integer(x)
}

fn c2(n: usize) -> i128 {
    (n as i128) * (n as i128 - 1) / 2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    Integer(i64),
    /// Real-valued formula; never used as a certificate.
    Real(f64),
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match *self {
            BoundValue::Integer(v) => v as f64,
            BoundValue::Real(v) => v,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Integer(v) => write!(f, "{v}"),
            BoundValue::Real(v) => write!(f, "{v:.4}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub value: BoundValue,
    pub provenance: String,
    pub certified: bool,
}

impl Bound {
    pub fn int(value: i64, provenance: impl Into<String>) -> Self {
        Bound { value: BoundValue::Integer(value), provenance: provenance.into(), certified: true }
    }
    pub fn real(value: f64, provenance: impl Into<String>) -> Self {
        Bound { value: BoundValue::Real(value), provenance: provenance.into(), certified: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Tight,
    Gap,
    Partial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub parameter: String,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub status: Status,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn new(parameter: impl Into<String>, lower: Option<Bound>, upper: Option<Bound>) -> Self {
        let status = match (&lower, &upper) {
            (Some(l), Some(u)) if l.value == u.value && l.certified && u.certified => Status::Tight,
            (Some(_), Some(_)) => Status::Gap,
            _ => Status::Partial,
        };
        if let (Some(l), Some(u)) = (&lower, &upper) {
            assert!(l.value.as_f64() <= u.value.as_f64(), "lower bound exceeds upper bound");
        }
        BoundReport { parameter: parameter.into(), lower, upper, status, notes: Vec::new() }
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |b: &Option<Bound>| match b {
            Some(b) => format!("{} [{}{}]", b.value, b.provenance, if b.certified { "" } else { ", not certified" }),
            None => "-".to_string(),
        };
        write!(f, "{}: lower {} upper {} ({:?})", self.parameter, side(&self.lower), side(&self.upper), self.status)?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

/// Moon–Moser triangle bound `(4m/3)(m/n - n/4)`.
pub fn mm_triangle_lb(n: usize, m: usize) -> Q {
    let (n, m) = (n as i128, m as i128);
    Q::new(4 * m, 3) * (Q::new(m, n) - Q::new(n, 4))
}

/// `K_4` count bound `h(4h - n²)(3h - n²)/(6n²)`.
pub fn mm_k4_lb(n: usize, h: usize) -> Q {
    let (n, h) = (n as i128, h as i128);
    Q::new(h * (4 * h - n * n) * (3 * h - n * n), 6 * n * n)
}

/// Path-of-length-two count `P` and disjoint-edge-pair count `M` of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub p: i128,
    pub m_pairs: i128,
    pub edges: usize,
}

impl DegreeProfile {
    pub fn of(g: &SimpleGraph) -> Self {
        let p: i128 = (0..g.n()).map(|v| c2(g.degree(v))).sum();
        let edges = g.edge_count();
        DegreeProfile { p, m_pairs: c2(edges) - p, edges }
    }
    /// `P/(n-2)`.
    pub fn a(&self, n: usize) -> Q {
        Q::new(self.p, n as i128 - 2)
    }
    /// `4M/((n-2)(n-3))`.
    pub fn b(&self, n: usize) -> Q {
        Q::new(4 * self.m_pairs, (n as i128 - 2) * (n as i128 - 3))
    }
}

/// `4C(m,2) + (n-7)P < (n-2)(n-3)` certifies `g(G) <= n`.
pub fn degreethm_check(g: &PatternGraph, n: usize) -> Result<bool> {
    if g.m() < 2 {
        return param(format!("{} has fewer than two edges", g.name()));
    }
    if n < g.k() || n < 4 {
        return param(format!("n={n} is below max(k, 4) for {}", g.name()));
    }
    let d = DegreeProfile::of(g.graph());
    let n = n as i128;
    Ok(4 * c2(d.edges) + (n - 7) * d.p < (n - 2) * (n - 3))
}

/// `max{P, ⌈2√M⌉} + 3`.
pub fn g_upper_small(g: &PatternGraph) -> Result<i64> {
    if g.m() < 2 {
        return param(format!("{} has fewer than two edges", g.name()));
    }
    let d = DegreeProfile::of(g.graph());
    // ⌈2√M⌉ = smallest s with s² >= 4M
    let mut s: i128 = 0;
    while s * s < 4 * d.m_pairs {
        s += 1;
    }
    Ok((d.p.max(s) + 3) as i64)
}

/// Smallest `n` for which [`degreethm_check`] holds.
pub fn degreethm_threshold(g: &PatternGraph) -> Result<usize> {
    let start = g.k().max(4);
    (start..start + 10_000)
        .find(|&n| degreethm_check(g, n).unwrap_or(false))
        .ok_or_else(|| Error::Internal("degree certificate never holds".into()))
}

/// The inequality as usually quoted, `4m(k-3) <= n(n-1)(n-2)`. It is not
/// sound: the union bound behind it fixes one image edge and never sums
/// over the `C(n,2)` choices. Kept only to exhibit counterexamples.
#[allow(non_snake_case)]
pub fn gGkm_check_unrepaired(k: usize, m: usize, n: usize) -> Result<bool> {
    ggkm_pre(k, m, n)?;
    let (k, m, n) = (k as i128, m as i128, n as i128);
    Ok(4 * m * (k - 3) <= n * (n - 1) * (n - 2))
}

/// Certifies `g(G,0) <= n` (indeed an exclusive copy) when
/// `2m(k-2) < n-2`. Summing over the `m` pattern edges, the `n(n-1)` ordered
/// placements of each, the `k-2` other vertices and the two ends of the
/// image bounds the non-exclusive labeled copies by
/// `4m(k-2) C(n,2) (n-3)!/(n-k)!`, below the `n!/(n-k)!` total.
#[allow(non_snake_case)]
pub fn gGkm_check(k: usize, m: usize, n: usize) -> Result<bool> {
    ggkm_pre(k, m, n)?;
    Ok(2 * m * (k - 2) + 2 < n)
}

fn ggkm_pre(k: usize, m: usize, n: usize) -> Result<()> {
    if n < 4 {
        return param(format!("strong-shifted mappings need n >= 4, got {n}"));
    }
    if k < 3 || m < 2 || n < k {
        return param(format!("need k >= 3, m >= 2, n >= k (k={k} m={m} n={n})"));
    }
    Ok(())
}

/// Upper `2km - 4m + 2` (k >= 4, m >= 1) and the asymptotic lower
/// `(1 - 2/k) 2m / ln m` with the `o(1)` term dropped.
pub fn w_bounds(k: usize, m: usize) -> BoundReport {
    let upper = (k >= 4 && m >= 1).then(|| Bound::int((2 * k * m) as i64 - 4 * m as i64 + 2, "closed form"));
    let lower = (k > 2 && m > 1).then(|| {
        let v = (1.0 - 2.0 / k as f64) * 2.0 * m as f64 / (m as f64).ln();
        Bound::real(v, "asymptotic formula, o(1) dropped")
    });
    let mut r = BoundReport::new(format!("w(G) for k={k}, m={m}"), lower, upper);
    if r.lower.is_some() {
        r = r.note("lower bound is asymptotic and not certified");
    }
    r
}

/// `k²/(3 ln k) <= w(K_k) <= k(k-1)(k-2) + 4 - ⌊k/2⌋` for `k >= 4`.
pub fn wkk_bounds(k: usize) -> Result<BoundReport> {
    if k < 4 {
        return param(format!("needs k >= 4, got {k}"));
    }
    let upper = Bound::int((k * (k - 1) * (k - 2) + 4 - k / 2) as i64, "closed form");
    let kf = k as f64;
    let lower = Bound::real(kf * kf / (3.0 * kf.ln()), "closed form, real-valued");
    Ok(BoundReport::new(format!("w(K{k})"), Some(lower), Some(upper)).note("log taken as natural log"))
}

/// `w(K_{1,r}) <= 5r - 3`.
pub fn corstar_upper(r: usize) -> i64 {
    5 * r as i64 - 3
}

/// Where an `ex(n, G)` value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExSource {
    Oracle,
    Turan,
    /// `⌊n²/4⌋` for `K_{t+2}^{-t}` (`n >= 6t`) and odd cycles `C_{2l-1}` (`n >= 4l-4`).
    HalfSquare,
    /// Matchings: `max{C(2s-1,2), C(s-1,2) + (s-1)(n-s+1)}`.
    Matching,
    /// `(k-2)n/2`, assumed for trees marked as Erdős–Sós.
    EstAssumed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExValue {
    #[serde(serialize_with = "ser_q")]
    pub value: Q,
    pub source: ExSource,
}

fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn complete_size(g: &SimpleGraph) -> Option<usize> {
    (g.edge_count() as i128 == c2(g.n())).then_some(g.n())
}

/// `t` when `g` is `K_{t+2}` minus a `K_t` with `t >= 1`.
fn minus_clique_t(g: &SimpleGraph) -> Option<usize> {
    let k = g.n();
    let comp = g.complement();
    let touched: Vec<usize> = (0..k).filter(|&v| comp.degree(v) > 0).collect();
    let t = touched.len();
    if k < 3 {
        return None;
    }
    if t == 0 {
        return (k == 3).then_some(1);
    }
    let is_clique = touched.iter().all(|&v| comp.degree(v) == t - 1);
    (is_clique && t + 2 == k).then_some(t)
}

fn odd_cycle_len(g: &SimpleGraph) -> Option<usize> {
    let k = g.n();
    (k >= 3 && k % 2 == 1 && g.is_connected() && (0..k).all(|v| g.degree(v) == 2)).then_some(k)
}

fn matching_size(g: &SimpleGraph) -> Option<usize> {
    let k = g.n();
    (k >= 2 && k.is_multiple_of(2) && (0..k).all(|v| g.degree(v) == 1)).then_some(k / 2)
}

/// `ex(n, sK_2)` by the closed form, `C(n,2)` below `2s` vertices.
pub fn ex_matching(n: usize, s: usize) -> i128 {
    if s == 0 {
        return 0;
    }
    if n < 2 * s {
        return c2(n);
    }
    let s = s as i128;
    let n = n as i128;
    let a = (2 * s - 1) * (2 * s - 2) / 2;
    let b = (s - 1) * (s - 2) / 2 + (s - 1) * (n - s + 1);
    a.max(b)
}

/// `ex(n, G)` from the best available source: the oracle, a closed form
/// valid at `n`, or the Erdős–Sós assumption.
pub fn ex_value(n: usize, g: &PatternGraph) -> Result<ExValue> {
    if n <= ORACLE_LIMIT {
        return Ok(ExValue { value: q(oracle::ex_bruteforce(n, g)? as i128), source: ExSource::Oracle });
    }
    let h = g.graph();
    if let Some(r) = complete_size(h).filter(|&r| r >= 2) {
        return Ok(ExValue { value: q(oracle::turan_edges(n, r) as i128), source: ExSource::Turan });
    }
    let half = q((n * n / 4) as i128);
    if minus_clique_t(h).is_some_and(|t| n >= 6 * t) {
        return Ok(ExValue { value: half, source: ExSource::HalfSquare });
    }
    if odd_cycle_len(h).is_some_and(|len| n + 4 >= 2 * (len + 1)) {
        return Ok(ExValue { value: half, source: ExSource::HalfSquare });
    }
    if let Some(s) = matching_size(h) {
        return Ok(ExValue { value: q(ex_matching(n, s)), source: ExSource::Matching });
    }
    if g.est_assumed() {
        return Ok(ExValue { value: est_ex(n, g.k()), source: ExSource::EstAssumed });
    }
    Err(Error::OracleLimit(format!("no exact source for ex({n}, {}) and no EST assumption", g.name())))
}

/// `(k-2)n/2`, kept as an exact rational.
pub fn est_ex(n: usize, k: usize) -> Q {
    Q::new((k as i128 - 2) * n as i128, 2)
}

/// `C(n,2) - ex > (5r-5)n/2` certifies `m*(G, K_{1,r}) <= n`.
pub fn m_star_certify_star(n: usize, ex: Q, r: usize) -> bool {
    q(c2(n)) - ex > Q::new((5 * r as i128 - 5) * n as i128, 2)
}

/// `C(n,2) - ex > ex(n, (5t-4)K_2)` certifies `m*(G, tK_2) <= n`.
pub fn m_star_certify_matching(n: usize, ex: Q, t: usize) -> Result<bool> {
    if t == 0 {
        return param("t must be positive");
    }
    let exm = if n <= ORACLE_LIMIT {
        oracle::ex_bruteforce(n, &PatternGraph::matching(5 * t - 4))? as i128
    } else {
        ex_matching(n, 5 * t - 4)
    };
    Ok(q(c2(n)) - ex > q(exm))
}

/// `C(n,2) - ex > n(r-1)` certifies `m(G, K_{1,r}) <= n`.
pub fn upperk1r_certify(n: usize, ex: Q, r: usize) -> bool {
    q(c2(n)) - ex > q(n as i128 * (r as i128 - 1))
}

/// `ex(n,G) + h(n,H) < C(n,2)` certifies `m(G,H) <= n` (with `s(n,H)` in
/// place of `h`, `m*(G,H) <= n`).
pub fn h_certify(n: usize, ex: Q, h: u64) -> bool {
    ex + q(h as i128) < q(c2(n))
}

/// Smallest `n >= start` at which `cert` holds with `ex(n, G)` from
/// [`ex_value`].
pub fn first_certified(g: &PatternGraph, start: usize, limit: usize, cert: impl Fn(usize, Q) -> Result<bool>) -> Result<Option<(usize, ExSource)>> {
    for n in start..=limit {
        let ex = ex_value(n, g)?;
        if cert(n, ex.value)? {
            return Ok(Some((n, ex.source)));
        }
    }
    Ok(None)
}

/// How the `H` side of the supersaturation inequality is supplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HSide {
    /// `C(n,H)` and `S(n,s,H)` by brute force.
    Oracle,
    /// `H = K_3`: `C = 1`, `S >= (4s/3)(s/n - n/4)`.
    Triangle,
    /// `H = K_4`: `C = n-3`, `S >= s(4s-n²)(3s-n²)/(6n²)`.
    K4,
}

/// Supersaturation certificate: with at least `s0 = ⌈C(n,2) - ex⌉` shifted
/// edges, each destroying at most `C(n,H)` copies, every shifted count
/// `s >= s0` must give `s·C(n,H) < S(n,s,H)`. Then `m(G,H) <= n`.
pub fn star_ineq_check(n: usize, ex: Q, h: &PatternGraph, side: HSide) -> Result<bool> {
    let total = c2(n);
    let s0 = (q(total) - ex).ceil().to_integer().max(0);
    let cover: i128 = match side {
        HSide::Oracle => oracle::pair_cover_max(n, h)? as i128,
        HSide::Triangle => 1,
        HSide::K4 => n as i128 - 3,
    };
    for s in s0..=total {
        let lower: Q = match side {
            HSide::Oracle => q(oracle::supersat_min(n, s as usize, h)? as i128),
            HSide::Triangle => mm_triangle_lb(n, s as usize).max(Q::zero()),
            HSide::K4 => mm_k4_lb(n, s as usize).max(Q::zero()),
        };
        if q(s * cover) >= lower {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counting certificate for `g(tK_2) <= n` over `F_{n,1}`: each edge
/// destroys at most the `(t-2)`-matchings of `K_{n-4}`, and
/// `C(n,2)·M(n-4,t-2) < M(n,t)`.
pub fn matching_destroy_certify(n: usize, t: usize) -> Result<bool> {
    if t < 2 || n < 2 * t {
        return param(format!("need t >= 2 and n >= 2t, got t={t} n={n}"));
    }
    let lhs = c2(n) * oracle::count_matchings(n - 4, t - 2) as i128;
    Ok(lhs < oracle::count_matchings(n, t) as i128)
}

/// `min` over the deck values plus the additive term.
pub fn deck_combine(per_deck: &[u64], additive: u64) -> Result<u64> {
    per_deck
        .iter()
        .min()
        .map(|m| m + additive)
        .ok_or_else(|| Error::Parameter("empty deck".into()))
}

/// Additive term `2r - 1` for `Q = K_{1,r}`.
pub fn deck_additive_star(r: usize) -> u64 {
    2 * r as u64 - 1
}

/// Additive term `⌊2h(n,Q)/n⌋ + 1` for a general `Q`.
pub fn deck_additive_general(n: usize, h: u64) -> u64 {
    2 * h / n as u64 + 1
}

/// `(r-1)(k-1)+1 <= m(T, K_r)`; for `r = 3` and an Erdős–Sós tree, the
/// upper bound `2k+2` by the triangle certificate.
pub fn m_tree_kr(k: usize, r: usize) -> Result<BoundReport> {
    if k < 2 || r < 2 {
        return param("need k, r >= 2");
    }
    let lower = Bound::int(((r - 1) * (k - 1) + 1) as i64, "fixed_clique_partition construction");
    let upper = match r {
        3 => {
            let n = 2 * k + 2;
            star_ineq_check(n, est_ex(n, k), &PatternGraph::complete(3), HSide::Triangle)?
                .then(|| Bound::int(n as i64, "supersaturation certificate (EST assumed)"))
        }
        4 => {
            let n = 3 * k + 33;
            star_ineq_check(n, est_ex(n, k), &PatternGraph::complete(4), HSide::K4)?
                .then(|| Bound::int(n as i64, "supersaturation certificate (EST assumed)"))
        }
        _ => None,
    };
    Ok(BoundReport::new(format!("m(T{k},K{r})"), Some(lower), upper))
}

/// Tree versus star bounds: upper `k+2r-2` for Erdős–Sós trees, lower
/// bounds from the Euler-partition constructions where they apply.
pub fn m_tree_star(k: usize, r: usize) -> Result<BoundReport> {
    if k < 2 || r < 1 {
        return param("need k >= 2, r >= 1");
    }
    let n_up = k + 2 * r - 2;
    let cert = upperk1r_certify(n_up, est_ex(n_up, k), r);
    let upper = cert.then(|| Bound::int(n_up as i64, "shifted-degree certificate (EST assumed)"));
    let lower = if (2 * (r - 1)).is_multiple_of(k - 1) {
        Some(Bound::int(n_up as i64, "frobenius_tree_lower variant 1"))
    } else if k % 2 == 1 && r > k * k {
        Some(Bound::int((k + 2 * r - 3) as i64, "frobenius_tree_lower variant 4"))
    } else if r > k * k {
        Some(Bound::int((k + 2 * r - 4) as i64, "frobenius_tree_lower variant 3"))
    } else {
        None
    };
    Ok(BoundReport::new(format!("m(T{k},K1,{r})"), lower, upper))
}

/// `m*(T, K_{1,r}) <= k+5r-5` for Erdős–Sós trees, found as the first `n`
/// passing [`m_star_certify_star`].
pub fn m_star_tree_threshold(k: usize, r: usize) -> usize {
    (k..).find(|&n| m_star_certify_star(n, est_ex(n, k), r)).expect("certificate eventually holds")
}

/// Exact value of a rational for display.
pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PatternGraph {
        PatternGraph::parse(s).unwrap()
    }

    #[test]
    fn moon_moser_values() {
        assert_eq!(mm_triangle_lb(6, 12), q(8));
        assert_eq!(mm_triangle_lb(4, 6), q(4));
        assert_eq!(mm_triangle_lb(8, 16), q(0));
        assert!(mm_k4_lb(4, 6) <= q(1));
    }

    #[test]
    fn degree_theorem_examples() {
        assert!(degreethm_check(&p("P3"), 4).unwrap());
        assert_eq!(g_upper_small(&p("P3")).unwrap(), 4);
        assert!(degreethm_check(&p("2K2"), 5).unwrap());
        assert!(!degreethm_check(&p("2K2"), 4).unwrap());
        assert!(degreethm_check(&p("K2"), 5).is_err());
        let d = DegreeProfile::of(p("P4").graph());
        assert_eq!(d.p + d.m_pairs, 3);
        assert!(d.a(6) + d.b(6) > q(0));
    }

    #[test]
    fn ggkm_examples() {
        assert!(gGkm_check_unrepaired(4, 3, 4).unwrap());
        assert!(gGkm_check_unrepaired(3, 10, 4).unwrap());
        assert!(!gGkm_check_unrepaired(6, 15, 6).unwrap());
        assert!(gGkm_check(3, 2, 3).is_err());
        assert!(!gGkm_check(4, 2, 10).unwrap());
        assert!(gGkm_check(4, 2, 11).unwrap());
        assert!(gGkm_check(3, 2, 7).unwrap());
    }

    #[test]
    fn unrepaired_ggkm_is_refuted() {
        use crate::constructions::small_exact;
        use crate::detect::find_free;
        // claims every strongly shifted mapping of K4 has a free 2K2
        assert!(gGkm_check_unrepaired(4, 2, 4).unwrap());
        let f = small_exact("k4_involution").unwrap().mapping;
        assert!(f.in_map_class(crate::mapping::MapClass::D0));
        assert!(find_free(&f, &p("2K2")).is_none());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(w_bounds(4, 3).upper.unwrap().value, BoundValue::Integer(14));
        assert_eq!(wkk_bounds(4).unwrap().upper.unwrap().value, BoundValue::Integer(26));
        assert_eq!(corstar_upper(2), 7);
        assert!(!w_bounds(4, 3).lower.unwrap().certified);
    }

    #[test]
    fn m_star_thresholds() {
        for (k, r) in [(3, 2), (4, 2), (5, 3)] {
            assert_eq!(m_star_tree_threshold(k, r), k + 5 * r - 5);
        }
        assert!(m_star_certify_star(8, est_ex(8, 3), 2));
    }

    #[test]
    fn matching_ex_formula_agrees_with_oracle() {
        for n in 2..=8 {
            for s in 1..=3 {
                let got = oracle::ex_bruteforce(n, &PatternGraph::matching(s)).unwrap() as i128;
                assert_eq!(ex_matching(n, s), got, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn upperk1r_diamond() {
        let g = p("K4-K2");
        let ex = ex_value(7, &g).unwrap();
        assert_eq!(ex.value, q(12));
        assert!(upperk1r_certify(7, ex.value, 2));
        assert!(!upperk1r_certify(6, ex_value(6, &g).unwrap().value, 2));
    }

    #[test]
    fn triangle_certificate_for_trees() {
        for k in 2..12 {
            let n = 2 * k + 2;
            assert!(star_ineq_check(n, est_ex(n, k), &p("K3"), HSide::Triangle).unwrap(), "k={k}");
        }
        for k in 3..8 {
            let n = 3 * k + 33;
            assert!(star_ineq_check(n, est_ex(n, k), &p("K4"), HSide::K4).unwrap(), "k={k}");
        }
    }

    #[test]
    fn tk2_counting() {
        assert!(matching_destroy_certify(7, 3).unwrap());
        assert!(!matching_destroy_certify(6, 3).unwrap());
        assert!(matching_destroy_certify(5, 2).unwrap());
        for t in 4..9 {
            assert!(matching_destroy_certify(2 * t, t).unwrap(), "t={t}");
        }
    }

    #[test]
    fn moon_moser_dominated_by_oracle() {
        let k3 = p("K3");
        for n in 3..=7 {
            for m in 0..=c2(n) as usize {
                let exact = oracle::supersat_min(n, m, &k3).unwrap();
                assert!(mm_triangle_lb(n, m) <= q(exact as i128), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn matching_form_single_edge() {
        // ex(n, K2) = 0: any shifted edge suffices
        assert!(m_star_certify_matching(6, q(14), 1).unwrap());
        assert!(!m_star_certify_matching(6, q(15), 1).unwrap());
    }

    #[test]
    fn deck() {
        assert_eq!(deck_combine(&[5, 4, 7], deck_additive_star(2)).unwrap(), 7);
        assert_eq!(deck_additive_general(7, 7), 3);
        assert!(deck_combine(&[], 1).is_err());
    }

    #[test]
    fn reports() {
        let r = m_tree_kr(4, 3).unwrap();
        assert_eq!(r.lower.as_ref().unwrap().value, BoundValue::Integer(7));
        assert_eq!(r.upper.as_ref().unwrap().value, BoundValue::Integer(10));
        let s = m_tree_star(3, 2).unwrap();
        assert_eq!(s.status, Status::Tight);
    }
}
