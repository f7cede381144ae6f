//! Edge mappings `f: E(K_n) -> E(K_n)`, their classes and shifted-degree
//! profiles.

use crate::error::{Error, Result};
use crate::graph::{bits, edge_ends, edge_id, edge_mask, pairs, EdgeId, SimpleGraph};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A total map from the edges of `K_n` to the edges of `K_n`, indexed by edge id.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeMapping {
    n: usize,
    image: Vec<EdgeId>,
    image_mask: Vec<u64>,
}

/// The mapping classes the parameters quantify over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapClass {
    /// Every mapping.
    All,
    /// `|f(e) ∩ e| = 0` for every edge.
    D0,
    /// `|f(e) ∩ e| <= 1` for every edge.
    D1,
    /// `|f(e) ∩ e| != 1` for every edge: fixed or strongly shifted.
    NoHalf,
}

impl MapClass {
    /// Whether `image` is an admissible value for edge `e` in this class.
    pub fn admits(self, e: EdgeId, image: EdgeId) -> bool {
        let ov = (edge_mask(e) & edge_mask(image)).count_ones();
        match self {
            MapClass::All => true,
            MapClass::D0 => ov == 0,
            MapClass::D1 => ov <= 1,
            MapClass::NoHalf => ov != 1,
        }
    }

    /// Smallest `n` for which the class is non-empty on `K_n` with at least one edge.
    pub fn min_vertices(self) -> usize {
        match self {
            MapClass::All | MapClass::NoHalf => 2,
            MapClass::D1 => 3,
            MapClass::D0 => 4,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(MapClass::All),
            "d0" => Ok(MapClass::D0),
            "d1" => Ok(MapClass::D1),
            "nohalf" => Ok(MapClass::NoHalf),
            _ => Err(Error::Parse(format!("unknown mapping class '{s}' (all|d0|d1|nohalf)"))),
        }
    }
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapClass::All => "all",
            MapClass::D0 => "d0",
            MapClass::D1 => "d1",
            MapClass::NoHalf => "nohalf",
        })
    }
}

/// Fixed/shifted counts and shifted degrees of a mapping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftProfile {
    pub fixed_count: usize,
    pub shifted_count: usize,
    pub strong_shifted_count: usize,
    /// `d_sh(x)`: edges at `x` whose image avoids `x`.
    pub shifted_degree: Vec<usize>,
}

impl ShiftProfile {
    /// Average shifted degree `(Σ_x d_sh(x)) / n`.
    pub fn average_shifted_degree(&self) -> Ratio<i64> {
        let sum: usize = self.shifted_degree.iter().sum();
        Ratio::new(sum as i64, self.shifted_degree.len().max(1) as i64)
    }
}

impl EdgeMapping {
    pub fn new(n: usize, image: Vec<EdgeId>) -> Result<Self> {
        if n > 64 {
            return Err(Error::Parameter(format!("n={n} exceeds 64")));
        }
        let e = pairs(n);
        if image.len() != e {
            return Err(Error::Parameter(format!("mapping on K_{n} needs {e} images, got {}", image.len())));
        }
        if let Some(bad) = image.iter().find(|&&x| x as usize >= e) {
            return Err(Error::Parameter(format!("image {bad} is not an edge of K_{n}")));
        }
        let image_mask = image.iter().map(|&x| edge_mask(x)).collect();
        Ok(EdgeMapping { n, image, image_mask })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (0..pairs(n) as EdgeId).collect()).expect("identity is valid")
    }

    /// Builds a mapping from a rule on endpoint pairs `(u, v)`, `u < v`.
    pub fn from_fn(n: usize, mut rule: impl FnMut(usize, usize) -> (usize, usize)) -> Result<Self> {
        let mut image = Vec::with_capacity(pairs(n));
        for id in 0..pairs(n) as EdgeId {
            let (u, v) = edge_ends(id);
            let (x, y) = rule(u, v);
            if x == y || x >= n || y >= n {
                return Err(Error::Parameter(format!("rule maps {u}{v} to invalid pair ({x},{y})")));
            }
            image.push(edge_id(x, y));
        }
        Self::new(n, image)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn image(&self, e: EdgeId) -> EdgeId {
        self.image[e as usize]
    }
    #[inline]
    pub fn images(&self) -> &[EdgeId] {
        &self.image
    }
    #[inline]
    pub(crate) fn image_masks(&self) -> &[u64] {
        &self.image_mask
    }
    /// `|f(e) ∩ e|`.
    #[inline]
    pub fn overlap(&self, e: EdgeId) -> u32 {
        (edge_mask(e) & self.image_mask[e as usize]).count_ones()
    }
    pub fn edge_count(&self) -> usize {
        self.image.len()
    }

    pub fn classify(&self) -> ShiftProfile {
        let mut p = ShiftProfile {
            fixed_count: 0,
            shifted_count: 0,
            strong_shifted_count: 0,
            shifted_degree: vec![0; self.n],
        };
        for e in 0..self.image.len() as EdgeId {
            match self.overlap(e) {
                2 if self.image(e) == e => p.fixed_count += 1,
                ov => {
                    p.shifted_count += 1;
                    if ov == 0 {
                        p.strong_shifted_count += 1;
                    }
                }
            }
            for x in bits(edge_mask(e) & !self.image_mask[e as usize]) {
                p.shifted_degree[x] += 1;
            }
        }
        p
    }

    /// Membership in `F_{n,d}` (`at_least = None`) or `F_{n,m,d}`.
    pub fn in_class(&self, d: u32, at_least: Option<usize>) -> Result<bool> {
        if d > 1 {
            return Err(Error::Parameter(format!("d must be 0 or 1, got {d}")));
        }
        let good = (0..self.image.len() as EdgeId).filter(|&e| self.overlap(e) <= d).count();
        match at_least {
            None => Ok(good == self.image.len()),
            Some(m) if m > self.image.len() => {
                Err(Error::Parameter(format!("m={m} exceeds C({},2)={}", self.n, self.image.len())))
            }
            Some(m) => Ok(good >= m),
        }
    }

    pub fn in_map_class(&self, class: MapClass) -> bool {
        (0..self.image.len() as EdgeId).all(|e| class.admits(e, self.image(e)))
    }

    /// Graph of the edges satisfying `pred(e, f(e))`.
    pub fn edge_graph(&self, pred: impl Fn(EdgeId, EdgeId) -> bool) -> SimpleGraph {
        SimpleGraph::from_edge_ids(
            self.n,
            (0..self.image.len() as EdgeId).filter(|&e| pred(e, self.image(e))),
        )
    }
    pub fn fixed_graph(&self) -> SimpleGraph {
        self.edge_graph(|e, x| e == x)
    }
    pub fn shifted_graph(&self) -> SimpleGraph {
        self.edge_graph(|e, x| e != x)
    }
    pub fn strong_shifted_graph(&self) -> SimpleGraph {
        self.edge_graph(|e, x| edge_mask(e) & edge_mask(x) == 0)
    }

    /// Projection onto the clique on `subset`, which must be strongly shifted.
    /// Vertices of the result are positions in the sorted subset. Images inside
    /// the subset are kept; an image missing the subset becomes the smallest
    /// edge disjoint from `e`; an image meeting it in `x` becomes `xz` for the
    /// smallest admissible `z`. The result lies in `F_{|S|,0}`.
    pub fn project(&self, subset: &[usize]) -> Result<EdgeMapping> {
        let mut s: Vec<usize> = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() < 4 {
            return Err(Error::Parameter(format!("projection needs at least 4 vertices, got {}", s.len())));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::Parameter(format!("vertex {v} not in K_{}", self.n)));
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            pos[v] = i;
        }
        let k = s.len();
        let mut image = Vec::with_capacity(pairs(k));
        for id in 0..pairs(k) as EdgeId {
            let (a, b) = edge_ends(id);
            let orig = edge_id(s[a], s[b]);
            if self.overlap(orig) != 0 {
                return Err(Error::Contract(format!(
                    "edge {}{} is not strongly shifted (f = {:?})",
                    s[a],
                    s[b],
                    edge_ends(self.image(orig))
                )));
            }
            let (x, y) = edge_ends(self.image(orig));
            let inside = [pos[x], pos[y]].into_iter().filter(|&p| p != usize::MAX).collect::<Vec<_>>();
            let new = match inside.as_slice() {
                [p, q] => edge_id(*p, *q),
                [] => (0..pairs(k) as EdgeId)
                    .find(|&c| edge_mask(c) & edge_mask(id) == 0)
                    .expect("k >= 4 leaves a disjoint edge"),
                [p] => {
                    let z = (0..k).find(|&z| z != a && z != b && z != *p).expect("k >= 4 leaves a vertex");
                    edge_id(*p, z)
                }
                _ => unreachable!(),
            };
            image.push(new);
        }
        EdgeMapping::new(k, image)
    }

    /// The conjugate `σ f σ⁻¹` for a vertex permutation `σ`.
    pub fn conjugate(&self, perm: &[usize]) -> EdgeMapping {
        let mut image = vec![0; self.image.len()];
        for e in 0..self.image.len() as EdgeId {
            let (u, v) = edge_ends(e);
            let (x, y) = edge_ends(self.image(e));
            image[edge_id(perm[u], perm[v]) as usize] = edge_id(perm[x], perm[y]);
        }
        EdgeMapping::new(self.n, image).expect("conjugate is valid")
    }

    /// Text format: `n=<n>` then one `u v -> x y` line per edge in edge-id order.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for e in 0..self.image.len() as EdgeId {
            let (u, v) = edge_ends(e);
            let (x, y) = edge_ends(self.image(e));
            s.push_str(&format!("{u} {v} -> {x} {y}\n"));
        }
        s
    }

    /// Strict parser for [`to_text`](Self::to_text): every edge of `K_n`
    /// exactly once, any order.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty mapping file".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header '{header}', expected n=<n>")))?;
        if n > 64 {
            return Err(Error::Parse(format!("n={n} exceeds 64")));
        }
        let mut image: Vec<Option<EdgeId>> = vec![None; pairs(n)];
        for line in lines {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| Error::Parse(format!("missing '->' in '{line}'")))?;
            let (u, v) = parse_pair(lhs, n)?;
            let (x, y) = parse_pair(rhs, n)?;
            let slot = &mut image[edge_id(u, v) as usize];
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate edge {u} {v}")));
            }
            *slot = Some(edge_id(x, y));
        }
        let image: Vec<EdgeId> = image
            .into_iter()
            .enumerate()
            .map(|(id, x)| {
                x.ok_or_else(|| {
                    let (u, v) = edge_ends(id as EdgeId);
                    Error::Parse(format!("missing edge {u} {v}"))
                })
            })
            .collect::<Result<_>>()?;
        Self::new(n, image)
    }

    /// Compact form: `n` followed by the `C(n,2)` image ids.
    pub fn to_compact(&self) -> String {
        let mut s = self.n.to_string();
        for x in &self.image {
            s.push(' ');
            s.push_str(&x.to_string());
        }
        s
    }

    pub fn parse_compact(text: &str) -> Result<Self> {
        let nums: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("not an integer: '{t}'"))))
            .collect::<Result<_>>()?;
        let (&n, rest) = nums.split_first().ok_or_else(|| Error::Parse("empty compact mapping".into()))?;
        Self::new(n, rest.iter().map(|&x| x as EdgeId).collect()).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_pair(s: &str, n: usize) -> Result<(usize, usize)> {
    let v: Vec<usize> = s
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("not a vertex: '{t}'"))))
        .collect::<Result<_>>()?;
    match v.as_slice() {
        [a, b] if a != b && *a < n && *b < n => Ok((*a.min(b), *a.max(b))),
        _ => Err(Error::Parse(format!("bad edge '{}' for n={n}", s.trim()))),
    }
}

impl fmt::Debug for EdgeMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeMapping({})", self.to_compact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_profile() {
        let p = EdgeMapping::identity(5).classify();
        assert_eq!((p.fixed_count, p.shifted_count, p.strong_shifted_count), (10, 0, 0));
        assert_eq!(p.average_shifted_degree(), Ratio::from_integer(0));
        assert!(!EdgeMapping::identity(4).in_class(1, None).unwrap());
        assert!(EdgeMapping::identity(4).in_class(1, Some(0)).unwrap());
        assert!(EdgeMapping::identity(4).in_class(2, None).is_err());
    }

    #[test]
    fn text_roundtrip_and_strictness() {
        let f = EdgeMapping::from_fn(4, |u, v| if v == 3 { (u, v) } else { ((u + 1) % 3, (v + 1) % 3) }).unwrap();
        assert_eq!(EdgeMapping::parse_text(&f.to_text()).unwrap(), f);
        assert_eq!(EdgeMapping::parse_compact(&f.to_compact()).unwrap(), f);
        let mut t = f.to_text();
        t.push_str("0 1 -> 2 3\n");
        assert!(EdgeMapping::parse_text(&t).is_err());
        let missing: String = f.to_text().lines().take(4).map(|l| format!("{l}\n")).collect();
        assert!(EdgeMapping::parse_text(&missing).is_err());
        assert!(EdgeMapping::parse_text("n=3\n0 1 -> 1 1\n0 2 -> 0 1\n1 2 -> 0 1\n").is_err());
    }

    #[test]
    fn projection_cases() {
        let f = EdgeMapping::from_fn(9, |u, v| {
            if v >= 5 {
                return (u, v);
            }
            let rest: Vec<usize> = (0..5).filter(|&x| x != u && x != v).collect();
            match (u, v) {
                (0, 1) => (5, 6),
                _ if (u + v) % 2 == 0 => (rest[0], rest[1]),
                _ => (rest[0], 7),
            }
        })
        .unwrap();
        let g = f.project(&[4, 3, 2, 1, 0]).unwrap();
        assert!(g.in_class(0, None).unwrap());
        assert_eq!(edge_ends(g.image(edge_id(0, 1))), (2, 3));
        assert_eq!(edge_ends(g.image(edge_id(0, 2))), (1, 3));
        assert_eq!(edge_ends(g.image(edge_id(0, 3))), (1, 2));
        assert!(f.project(&[0, 1, 2]).is_err());
        assert!(matches!(f.project(&[0, 1, 2, 5]), Err(Error::Contract(_))));
    }

    #[test]
    fn projection_identity_when_closed() {
        let f = EdgeMapping::from_fn(6, |u, v| {
            let rest: Vec<usize> = (0..6).filter(|&x| x != u && x != v).collect();
            (rest[0], rest[1])
        })
        .unwrap();
        assert_eq!(f.project(&[0, 1, 2, 3, 4, 5]).unwrap(), f);
    }
}
