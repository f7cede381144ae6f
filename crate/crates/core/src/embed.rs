//! Backtracking subgraph-embedding search shared by copy enumeration, the
//! relation detectors and the oracles.
//!
//! Pattern vertices are placed in a fixed order (largest degree first, then
//! the vertex with the most already-placed neighbours). Host candidates are
//! the common neighbourhood of the images of placed neighbours, filtered by
//! degree.

use crate::graph::{bits, edge_id, full_mask, EdgeId, SimpleGraph};

/// Extra condition checked incrementally while an embedding grows.
#[derive(Clone, Copy)]
pub(crate) enum Guard<'a> {
    None,
    /// No embedded edge may be mapped onto an embedded edge.
    Free { image: &'a [EdgeId] },
    /// No embedded edge may be mapped onto an edge touching an embedded vertex.
    Exclusive { image_mask: &'a [u64] },
}

pub(crate) struct Plan {
    /// Pattern vertices in placement order.
    pub order: Vec<usize>,
    /// Position of each pattern vertex in `order`.
    pub pos: Vec<usize>,
    /// For each position, the earlier positions adjacent to it.
    pub back: Vec<Vec<usize>>,
    pub degree: Vec<usize>,
}

impl Plan {
    pub fn new(pattern: &SimpleGraph) -> Plan {
        let k = pattern.n();
        let degree: Vec<usize> = (0..k).map(|v| pattern.degree(v)).collect();
        let mut order = Vec::with_capacity(k);
        let mut placed = 0u64;
        for _ in 0..k {
            let next = (0..k)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by(|&a, &b| {
                    let ka = (pattern.neighbors(a) & placed).count_ones();
                    let kb = (pattern.neighbors(b) & placed).count_ones();
                    ka.cmp(&kb).then(degree[a].cmp(&degree[b])).then(b.cmp(&a))
                })
                .expect("unplaced vertex remains");
            placed |= 1 << next;
            order.push(next);
        }
        let mut pos = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| (0..i).filter(|&j| pattern.has_edge(v, order[j])).collect())
            .collect();
        Plan { order, pos, back, degree }
    }
}

pub(crate) struct Search<'a> {
    pub plan: &'a Plan,
    pub host: &'a [u64],
    pub guard: Guard<'a>,
    /// `lower[i]`: earlier positions whose image must be smaller than the image at `i`.
    pub lower: Option<&'a [Vec<usize>]>,
    /// Host vertex forced at each position, if any.
    pub forced: Option<&'a [Option<usize>]>,
}

struct State {
    map: Vec<usize>,
    used: u64,
    completed: Vec<EdgeId>,
    forbidden: u64,
}

impl<'a> Search<'a> {
    pub fn new(plan: &'a Plan, host: &'a [u64]) -> Self {
        Search { plan, host, guard: Guard::None, lower: None, forced: None }
    }

    /// Runs the search; `visit` receives the map pattern vertex → host vertex
    /// and returns `false` to stop. Returns `false` iff stopped early.
    pub fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let k = self.plan.order.len();
        if k > self.host.len() {
            return true;
        }
        let mut st = State { map: vec![usize::MAX; k], used: 0, completed: Vec::new(), forbidden: 0 };
        let mut out = vec![0usize; k];
        self.extend(0, &mut st, &mut out, visit)
    }

    fn extend(
        &self,
        i: usize,
        st: &mut State,
        out: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let plan = self.plan;
        if i == plan.order.len() {
            for (p, slot) in out.iter_mut().enumerate() {
                *slot = st.map[plan.pos[p]];
            }
            return visit(out);
        }
        let mut cand = full_mask(self.host.len()) & !st.used;
        for &j in &plan.back[i] {
            cand &= self.host[st.map[j]];
        }
        if let Some(forced) = self.forced {
            if let Some(u) = forced[i] {
                cand &= 1u64 << u;
            }
        }
        if let Some(lower) = self.lower {
            for &j in &lower[i] {
                cand &= !full_mask(st.map[j] + 1);
            }
        }
        let need = plan.degree[plan.order[i]] as u32;
        for u in bits(cand) {
            if self.host[u].count_ones() < need {
                continue;
            }
            let new_edges: Vec<EdgeId> = plan.back[i].iter().map(|&j| edge_id(st.map[j], u)).collect();
            let saved_forbidden = st.forbidden;
            if !self.admit(st, u, &new_edges) {
                continue;
            }
            st.map[i] = u;
            st.used |= 1 << u;
            let before = st.completed.len();
            st.completed.extend_from_slice(&new_edges);
            let go_on = self.extend(i + 1, st, out, visit);
            st.completed.truncate(before);
            st.used &= !(1 << u);
            st.map[i] = usize::MAX;
            st.forbidden = saved_forbidden;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn admit(&self, st: &mut State, u: usize, new_edges: &[EdgeId]) -> bool {
        match self.guard {
            Guard::None => true,
            Guard::Free { image } => {
                for &e in new_edges {
                    let t = image[e as usize];
                    if st.completed.contains(&t) || new_edges.contains(&t) {
                        return false;
                    }
                }
                st.completed.iter().all(|&e| !new_edges.contains(&image[e as usize]))
            }
            Guard::Exclusive { image_mask } => {
                if st.forbidden >> u & 1 == 1 {
                    return false;
                }
                let verts = st.used | 1 << u;
                let mut add = 0;
                for &e in new_edges {
                    let m = image_mask[e as usize];
                    if m & verts != 0 {
                        return false;
                    }
                    add |= m;
                }
                st.forbidden |= add;
                true
            }
        }
    }
}

/// Whether some automorphism of `pattern` fixes the vertices of `fixed`
/// pointwise and maps `from` to `to`.
fn automorphism_exists(pattern: &SimpleGraph, plan: &Plan, fixed: &[usize], from: usize, to: usize) -> bool {
    let mut forced = vec![None; pattern.n()];
    for &v in fixed {
        forced[plan.pos[v]] = Some(v);
    }
    forced[plan.pos[from]] = Some(to);
    let s = Search { forced: Some(&forced), ..Search::new(plan, pattern.adjacency()) };
    let mut found = false;
    s.run(&mut |_| {
        found = true;
        false
    });
    found
}

/// Ordering constraints that select exactly one embedding per copy: for each
/// position `i`, the image of `order[i]` is smaller than the image of every
/// other vertex in its orbit under the pointwise stabilizer of the earlier
/// positions.
pub(crate) fn orbit_constraints(pattern: &SimpleGraph, plan: &Plan) -> Vec<Vec<usize>> {
    let k = pattern.n();
    let mut lower = vec![Vec::new(); k];
    for i in 0..k {
        let p = plan.order[i];
        let fixed = &plan.order[..i];
        for &q in &plan.order[i + 1..] {
            if pattern.degree(q) == pattern.degree(p) && automorphism_exists(pattern, plan, fixed, p, q) {
                lower[plan.pos[q]].push(i);
            }
        }
    }
    lower
}

/// Order of the automorphism group, by orbit-stabilizer along the plan order.
pub(crate) fn automorphism_count(pattern: &SimpleGraph, plan: &Plan) -> u64 {
    let mut total = 1u64;
    for i in 0..pattern.n() {
        let p = plan.order[i];
        let fixed = &plan.order[..i];
        let orbit = 1 + plan.order[i + 1..]
            .iter()
            .filter(|&&q| pattern.degree(q) == pattern.degree(p) && automorphism_exists(pattern, plan, fixed, p, q))
            .count() as u64;
        total *= orbit;
    }
    total
}

/// True iff `host` contains a (not necessarily induced) copy of `pattern`.
pub fn contains(host: &SimpleGraph, pattern: &SimpleGraph) -> bool {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    let plan = Plan::new(pattern);
    let mut found = false;
    Search::new(&plan, host.adjacency()).run(&mut |_| {
        found = true;
        false
    });
    found
}
