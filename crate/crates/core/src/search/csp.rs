//! Finite-domain solver over edge images. Variables are the edges of `K_n`,
//! domains are bitsets of admissible images, and every avoided copy becomes
//! a clause "some edge of the copy maps into its escape set".

use super::{AvoidanceSpec, Budget, SearchConfig, SearchStats};
use crate::detect::Relation;
use crate::graph::{bits, edge_mask, full_mask, pairs, SimpleGraph};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

#[derive(Clone, Debug)]
struct Clause {
    lits: Vec<(usize, u64)>,
    countable: bool,
}

/// At most `limit` incident edges may take a value inside their `bad` mask.
#[derive(Clone, Debug)]
struct DegreeCap {
    edges: Vec<(usize, u64)>,
    limit: usize,
}

#[derive(Debug)]
pub(crate) struct Problem {
    ne: usize,
    init: Vec<u64>,
    clauses: Vec<Clause>,
    occurs: Vec<Vec<(usize, u64)>>,
    caps: Vec<DegreeCap>,
    caps_by_edge: Vec<Vec<usize>>,
    /// Static interchangeability class of each value, per edge.
    value_class: Vec<Vec<u32>>,
}

fn escape_mask(kind: Relation, e: usize, copy_edges: u64, copy_verts: u64, n: usize) -> u64 {
    let all = full_mask(pairs(n));
    let meeting = |verts: u64| (0..pairs(n)).filter(|&t| edge_mask(t as u32) & verts != 0).fold(0u64, |m, t| m | 1 << t);
    match kind {
        Relation::Fixed => all & !(1 << e),
        Relation::Shifted => 1 << e,
        Relation::StrongShifted => meeting(edge_mask(e as u32)),
        Relation::Free => copy_edges,
        Relation::Exclusive => meeting(copy_verts),
    }
}

impl Problem {
    pub(crate) fn new(spec: &AvoidanceSpec, cfg: &SearchConfig) -> Problem {
        let n = spec.n;
        let ne = pairs(n);
        let init: Vec<u64> = (0..ne)
            .map(|e| (0..ne).filter(|&t| spec.class.admits(e as u32, t as u32)).fold(0u64, |m, t| m | 1 << t))
            .zip(0..ne)
            .map(|(d, e)| spec.domains.as_ref().map_or(d, |r| d & r[e]))
            .collect();
        let host = SimpleGraph::complete(n);
        let mut clauses = Vec::new();
        let mut caps = Vec::new();
        for (kind, pattern) in &spec.avoid {
            for emb in pattern.copies(&host) {
                let edges = pattern.image_edges(&emb);
                let emask = edges.iter().fold(0u64, |m, &e| m | 1 << e);
                let vmask = emb.iter().fold(0u64, |m, &v| m | 1 << v);
                let lits = edges.iter().map(|&e| (e as usize, escape_mask(*kind, e as usize, emask, vmask, n))).collect();
                clauses.push(Clause { lits, countable: matches!(kind, Relation::Free | Relation::Exclusive) });
            }
            if !cfg.degree_rule {
                continue;
            }
            // A vertex with r edges shifted away from it carries a free K_{1,r};
            // one with 5r-4 strongly shifted edges carries an exclusive K_{1,r}.
            let (r, strong) = match (kind, pattern.star_leaves()) {
                (Relation::Free, Some(r)) => (r, false),
                (Relation::Exclusive, Some(r)) => (r, true),
                _ => continue,
            };
            let limit = if strong { 5 * r - 5 } else { r - 1 };
            for x in 0..n {
                let xm = 1u64 << x;
                let edges = (0..ne)
                    .filter(|&e| edge_mask(e as u32) & xm != 0)
                    .map(|e| {
                        let away = if strong { edge_mask(e as u32) } else { xm };
                        let bad = (0..ne).filter(|&t| edge_mask(t as u32) & away == 0).fold(0u64, |m, t| m | 1 << t);
                        (e, bad)
                    })
                    .collect();
                caps.push(DegreeCap { edges, limit });
            }
        }
        let mut occurs = vec![Vec::new(); ne];
        for (c, cl) in clauses.iter().enumerate() {
            for &(e, m) in &cl.lits {
                occurs[e].push((c, m));
            }
        }
        let mut caps_by_edge = vec![Vec::new(); ne];
        for (i, cap) in caps.iter().enumerate() {
            for &(e, _) in &cap.edges {
                caps_by_edge[e].push(i);
            }
        }
        let value_class = (0..ne)
            .map(|e| {
                let mut sigs: Vec<Vec<bool>> = Vec::new();
                (0..ne)
                    .map(|t| {
                        let mut sig: Vec<bool> = occurs[e].iter().map(|&(_, m)| m >> t & 1 == 1).collect();
                        for &ci in &caps_by_edge[e] {
                            for &(ce, bad) in &caps[ci].edges {
                                if ce == e {
                                    sig.push(bad >> t & 1 == 1);
                                }
                            }
                        }
                        sig.push(t == e);
                        match sigs.iter().position(|s| *s == sig) {
                            Some(i) => i as u32,
                            None => {
                                sigs.push(sig);
                                sigs.len() as u32 - 1
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        Problem { ne, init, clauses, occurs, caps, caps_by_edge, value_class }
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.ne
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Found,
    Exhausted,
    Timeout,
}

#[derive(Clone)]
pub(crate) struct Solver<'a> {
    p: &'a Problem,
    cfg: &'a SearchConfig,
    dom: Vec<u64>,
    trail: Vec<(usize, u64)>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    decisions: Vec<(usize, usize)>,
    pub(crate) stats: SearchStats,
    budget: Budget,
    start: Instant,
    stop: Option<&'a AtomicBool>,
}

enum Conflict {
    Clause,
    Degree,
}

impl<'a> Solver<'a> {
    pub(crate) fn new(p: &'a Problem, cfg: &'a SearchConfig, budget: Budget) -> Self {
        Solver {
            p,
            cfg,
            dom: p.init.clone(),
            trail: Vec::new(),
            queue: (0..p.ne).collect(),
            queued: vec![true; p.ne],
            decisions: Vec::new(),
            stats: SearchStats::default(),
            budget,
            start: Instant::now(),
            stop: None,
        }
    }

    pub(crate) fn images(&self) -> Vec<u32> {
        self.dom.iter().map(|d| d.trailing_zeros()).collect()
    }

    fn restrict(&mut self, e: usize, to: u64) {
        let d = self.dom[e];
        if d & to != d {
            self.trail.push((e, d));
            self.dom[e] = d & to;
            if !self.queued[e] {
                self.queued[e] = true;
                self.queue.push(e);
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (e, d) = self.trail.pop().expect("trail entry");
            self.dom[e] = d;
        }
    }

    fn clear_queue(&mut self) {
        for e in self.queue.drain(..) {
            self.queued[e] = false;
        }
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        while let Some(e) = self.queue.pop() {
            self.queued[e] = false;
            if self.dom[e] == 0 {
                self.clear_queue();
                return Err(Conflict::Clause);
            }
            for i in 0..self.p.occurs[e].len() {
                let c = self.p.occurs[e][i].0;
                let mut open = None;
                let mut open_count = 0;
                let mut sat = false;
                for &(le, m) in &self.p.clauses[c].lits {
                    let d = self.dom[le];
                    if d & m == 0 {
                        continue;
                    }
                    if d & !m == 0 {
                        sat = true;
                        break;
                    }
                    open_count += 1;
                    open = Some((le, m));
                }
                if sat {
                    continue;
                }
                match open_count {
                    0 => {
                        self.clear_queue();
                        return Err(Conflict::Clause);
                    }
                    1 if self.cfg.propagation => {
                        let (le, m) = open.expect("one open literal");
                        self.restrict(le, m);
                    }
                    _ => {}
                }
            }
            for i in 0..self.p.caps_by_edge[e].len() {
                let cap = &self.p.caps[self.p.caps_by_edge[e][i]];
                let forced = cap.edges.iter().filter(|&&(ce, bad)| self.dom[ce] & !bad == 0).count();
                if forced > cap.limit {
                    self.clear_queue();
                    return Err(Conflict::Degree);
                }
                if forced == cap.limit {
                    for &(ce, bad) in &cap.edges {
                        if self.dom[ce] & !bad != 0 {
                            self.restrict(ce, !bad);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every open countable clause needs its own destroying edge among the
    /// undecided ones; fail if their best-case total falls short.
    fn count_ok(&self) -> bool {
        let p = self.p;
        let mut open = vec![false; p.clauses.len()];
        let mut need = 0usize;
        for (c, cl) in p.clauses.iter().enumerate() {
            if !cl.countable {
                continue;
            }
            let sat = cl.lits.iter().any(|&(e, m)| self.dom[e] & !m == 0);
            if !sat {
                open[c] = true;
                need += 1;
            }
        }
        if need == 0 {
            return true;
        }
        let mut supply = 0usize;
        let mut count = vec![0usize; p.ne];
        for e in 0..p.ne {
            let d = self.dom[e];
            if d.count_ones() <= 1 {
                continue;
            }
            count.iter_mut().for_each(|x| *x = 0);
            for &(c, m) in &p.occurs[e] {
                if open[c] {
                    for t in bits(m & d) {
                        count[t] += 1;
                    }
                }
            }
            supply += count.iter().max().copied().unwrap_or(0);
            if supply >= need {
                return true;
            }
        }
        false
    }

    fn out_of_budget(&mut self) -> bool {
        if let Some(stop) = self.stop {
            if stop.load(Ordering::Relaxed) {
                return true;
            }
        }
        if self.budget.nodes.is_some_and(|b| self.stats.nodes >= b) {
            return true;
        }
        if self.stats.nodes.is_multiple_of(256) {
            if let Some(t) = self.budget.time {
                return self.start.elapsed() >= t;
            }
        }
        false
    }

    /// Initial propagation; `false` when the root is already contradictory.
    pub(crate) fn init(&mut self) -> bool {
        match self.propagate() {
            Ok(()) => true,
            Err(c) => {
                self.note(c);
                false
            }
        }
    }

    fn note(&mut self, c: Conflict) {
        match c {
            Conflict::Clause => self.stats.clause_conflicts += 1,
            Conflict::Degree => self.stats.degree_conflicts += 1,
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.p.ne).filter(|&e| self.dom[e].count_ones() > 1).min_by_key(|&e| (self.dom[e].count_ones(), e))
    }

    /// Values of `e` to branch on, in order, after symmetry and
    /// interchangeability reduction.
    fn values(&mut self, e: usize) -> Vec<usize> {
        let d = self.dom[e];
        let mut order: Vec<usize> = Vec::with_capacity(d.count_ones() as usize);
        if d >> e & 1 == 1 {
            order.push(e);
        }
        order.extend(bits(d).filter(|&t| t != e));
        let fixed_verts = self
            .decisions
            .iter()
            .fold(edge_mask(e as u32), |m, &(de, dt)| m | edge_mask(de as u32) | edge_mask(dt as u32));
        let mut seen_class = Vec::new();
        let mut seen_key = Vec::new();
        let mut out = Vec::new();
        for t in order {
            let class = self.p.value_class[e][t];
            let key = edge_mask(t as u32) & fixed_verts;
            if seen_class.contains(&class) {
                self.stats.interchange_skips += 1;
            } else if self.cfg.symmetry && seen_key.contains(&key) {
                self.stats.symmetry_skips += 1;
            } else {
                out.push(t);
            }
            seen_class.push(class);
            if self.cfg.symmetry {
                seen_key.push(key);
            }
        }
        out
    }

    fn try_value(&mut self, e: usize, t: usize) -> Flow {
        self.stats.nodes += 1;
        let mark = self.trail.len();
        self.restrict(e, 1 << t);
        let flow = match self.propagate() {
            Ok(()) => {
                self.decisions.push((e, t));
                let f = self.dfs();
                self.decisions.pop();
                f
            }
            Err(c) => {
                self.note(c);
                Flow::Exhausted
            }
        };
        if flow != Flow::Found {
            self.undo(mark);
        }
        flow
    }

    pub(crate) fn dfs(&mut self) -> Flow {
        if self.out_of_budget() {
            return Flow::Timeout;
        }
        if self.cfg.counting_rule && !self.count_ok() {
            self.stats.count_prunes += 1;
            return Flow::Exhausted;
        }
        let Some(e) = self.pick() else { return Flow::Found };
        for t in self.values(e) {
            match self.try_value(e, t) {
                Flow::Exhausted => {}
                other => return other,
            }
        }
        Flow::Exhausted
    }

    /// Root split across worker threads. The verdict and the witness are
    /// those of the lowest-indexed successful branch, independent of timing.
    pub(crate) fn dfs_parallel(&mut self, threads: usize) -> Flow {
        if self.cfg.counting_rule && !self.count_ok() {
            self.stats.count_prunes += 1;
            return Flow::Exhausted;
        }
        let Some(e) = self.pick() else { return Flow::Found };
        let vals = self.values(e);
        let next = std::sync::atomic::AtomicUsize::new(0);
        let results: Vec<std::sync::Mutex<Option<(Flow, Solver)>>> = vals.iter().map(|_| std::sync::Mutex::new(None)).collect();
        let stops: Vec<AtomicBool> = vals.iter().map(|_| AtomicBool::new(false)).collect();
        let base = self.clone();
        std::thread::scope(|s| {
            for _ in 0..threads.min(vals.len()) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= vals.len() {
                        break;
                    }
                    let mut w = base.clone();
                    w.stats = SearchStats::default();
                    w.stop = Some(&stops[i]);
                    let flow = w.try_value(e, vals[i]);
                    if flow == Flow::Found {
                        for st in &stops[i + 1..] {
                            st.store(true, Ordering::SeqCst);
                        }
                    }
                    *results[i].lock().expect("result lock") = Some((flow, w));
                });
            }
        });
        let mut verdict = Flow::Exhausted;
        for r in results {
            let (flow, w) = r.into_inner().expect("result lock").expect("branch ran");
            self.stats.absorb(&w.stats);
            match flow {
                Flow::Found => {
                    self.dom = w.dom;
                    return Flow::Found;
                }
                Flow::Timeout => verdict = Flow::Timeout,
                Flow::Exhausted => {}
            }
        }
        verdict
    }
}
