use edgemap::bounds::{degreethm_check, gGkm_check};
use edgemap::detect::{find, validate, Relation};
use edgemap::graph::{pairs, SimpleGraph};
use edgemap::{edge_ends, edge_id, EdgeId, EdgeMapping, MapClass, PatternGraph};
use proptest::prelude::*;

/// A mapping on `K_n` in `class`, each image drawn from the admissible ones.
fn mapping_in(n: usize, class: MapClass) -> impl Strategy<Value = EdgeMapping> {
    let ne = pairs(n);
    let choices: Vec<Vec<EdgeId>> = (0..ne as EdgeId)
        .map(|e| (0..ne as EdgeId).filter(|&t| class.admits(e, t)).collect())
        .collect();
    let picks: Vec<_> = choices.iter().map(|c| 0..c.len()).collect();
    picks.prop_map(move |idx| {
        let image = idx.iter().enumerate().map(|(e, &i)| choices[e][i]).collect();
        EdgeMapping::new(n, image).expect("admissible images")
    })
}

fn any_mapping() -> impl Strategy<Value = EdgeMapping> {
    (2usize..=9).prop_flat_map(|n| mapping_in(n, MapClass::All))
}

fn pattern(s: &str) -> PatternGraph {
    PatternGraph::parse(s).unwrap()
}

const RELATIONS: [Relation; 5] = [Relation::Fixed, Relation::Shifted, Relation::StrongShifted, Relation::Free, Relation::Exclusive];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn edge_ids_biject(u in 0usize..64, v in 0usize..64) {
        prop_assume!(u != v);
        let (a, b) = edge_ends(edge_id(u, v));
        prop_assert_eq!((a, b), (u.min(v), u.max(v)));
    }

    #[test]
    fn text_formats_round_trip(f in any_mapping()) {
        prop_assert_eq!(EdgeMapping::parse_text(&f.to_text()).unwrap(), f.clone());
        prop_assert_eq!(EdgeMapping::parse_compact(&f.to_compact()).unwrap(), f);
    }

    #[test]
    fn graph6_round_trips(n in 1usize..12, bits in any::<u64>()) {
        let edges: Vec<(usize, usize)> = (0..pairs(n)).filter(|&e| bits >> (e % 64) & 1 == 1).map(|e| edge_ends(e as EdgeId)).collect();
        let g = SimpleGraph::from_edges(n, &edges).unwrap();
        prop_assert_eq!(SimpleGraph::parse_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn certificates_validate(f in any_mapping(), which in 0usize..5, pat in prop::sample::select(vec!["K2", "P3", "2K2", "K3", "P4"])) {
        let h = pattern(pat);
        let rel = RELATIONS[which];
        if let Some(c) = find(&f, &h, rel) {
            prop_assert!(validate(&f, &h, rel, &c.embedding));
        }
    }

    #[test]
    fn detection_is_relabelling_invariant(f in (4usize..=7).prop_flat_map(|n| (mapping_in(n, MapClass::All), Just(n).prop_shuffle_perm())), which in 0usize..5) {
        let (f, perm) = f;
        let g = f.conjugate(&perm);
        for h in ["P3", "2K2", "K3"] {
            let h = pattern(h);
            let rel = RELATIONS[which];
            prop_assert_eq!(find(&f, &h, rel).is_some(), find(&g, &h, rel).is_some());
        }
    }

    // wherever the degree certificate fires, a free copy exists
    #[test]
    fn degree_certificate_spot_check(n in 4usize..=8, pat in prop::sample::select(vec!["P3", "2K2", "P4", "K1,3", "C4", "K3"]), seed in any::<u64>()) {
        let g = pattern(pat);
        prop_assume!(n >= g.k() && degreethm_check(&g, n).unwrap_or(false));
        let f = sample(n, MapClass::D1, seed);
        prop_assert!(find(&f, &g, Relation::Free).is_some(), "{} in {:?}", pat, f);
    }

    #[test]
    fn strong_shift_certificate_spot_check(n in 7usize..=11, seed in any::<u64>()) {
        let g = pattern("P3");
        prop_assume!(gGkm_check(g.k(), g.m(), n).unwrap());
        let f = sample(n, MapClass::D0, seed);
        prop_assert!(find(&f, &g, Relation::Exclusive).is_some());
    }
}

/// Seeded rejection sampling inside a class.
fn sample(n: usize, class: MapClass, seed: u64) -> EdgeMapping {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let ne = pairs(n) as EdgeId;
    let image = (0..ne)
        .map(|e| loop {
            let t = rng.gen_range(0..ne);
            if class.admits(e, t) {
                break t;
            }
        })
        .collect();
    EdgeMapping::new(n, image).unwrap()
}

trait ShufflePerm {
    fn prop_shuffle_perm(self) -> BoxedStrategy<Vec<usize>>;
}

impl ShufflePerm for Just<usize> {
    fn prop_shuffle_perm(self) -> BoxedStrategy<Vec<usize>> {
        Just((0..self.0).collect::<Vec<_>>()).prop_shuffle().boxed()
    }
}
