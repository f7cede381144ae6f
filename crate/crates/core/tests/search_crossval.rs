//! Solver verdicts against plain enumeration, and across pruning toggles.

use edgemap::graph::{edge_mask, pairs};
use edgemap::search::{exists_avoiding_with, AvoidanceSpec, Budget, SearchConfig, Verdict};
use edgemap::{EdgeMapping, MapClass, PatternGraph, Relation};

fn p(s: &str) -> PatternGraph {
    PatternGraph::parse(s).unwrap()
}

fn spec(n: usize, class: MapClass, avoid: &[(Relation, &str)]) -> AvoidanceSpec {
    AvoidanceSpec::new(n, class, avoid.iter().map(|&(r, s)| (r, p(s))).collect()).unwrap()
}

/// Every mapping of the class, odometer style.
fn brute_force(s: &AvoidanceSpec) -> bool {
    let ne = pairs(s.n);
    let opts: Vec<Vec<u32>> = (0..ne as u32)
        .map(|e| (0..ne as u32).filter(|&t| s.class.admits(e, t)).collect())
        .collect();
    if opts.iter().any(|o| o.is_empty()) {
        return false;
    }
    let mut idx = vec![0usize; ne];
    loop {
        let img: Vec<u32> = (0..ne).map(|e| opts[e][idx[e]]).collect();
        if s.accepts(&EdgeMapping::new(s.n, img).unwrap()) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == ne {
                return false;
            }
            idx[i] += 1;
            if idx[i] < opts[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn cases() -> Vec<AvoidanceSpec> {
    use Relation::*;
    vec![
        spec(4, MapClass::D1, &[(Free, "2K2")]),
        spec(4, MapClass::D1, &[(Free, "K1,2")]),
        spec(4, MapClass::D0, &[(Exclusive, "K2")]),
        spec(4, MapClass::All, &[(Fixed, "K3"), (Free, "K1,2")]),
        spec(4, MapClass::All, &[(Fixed, "P3"), (Free, "2K2")]),
        spec(4, MapClass::All, &[(Fixed, "K1,2"), (Shifted, "K3")]),
        spec(4, MapClass::NoHalf, &[(Fixed, "K3"), (Exclusive, "K2")]),
        spec(4, MapClass::All, &[(StrongShifted, "K1,2")]),
        spec(4, MapClass::D1, &[(Free, "K3")]),
        spec(5, MapClass::D1, &[(Free, "2K2")]),
        spec(5, MapClass::D0, &[(Exclusive, "K1,2")]),
        spec(5, MapClass::D0, &[(Exclusive, "2K2")]),
        spec(5, MapClass::D1, &[(Free, "P4")]),
        spec(5, MapClass::D1, &[(Free, "K3")]),
        spec(5, MapClass::All, &[(Fixed, "K3"), (Shifted, "K3")]),
        spec(5, MapClass::NoHalf, &[(Fixed, "K3"), (Exclusive, "K1,2")]),
        spec(5, MapClass::NoHalf, &[(Fixed, "K1,2"), (Exclusive, "K2")]),
        spec(5, MapClass::All, &[(Fixed, "K3"), (Free, "K1,3")]),
    ]
}

#[test]
fn solver_matches_enumeration_on_k4() {
    for s in cases().into_iter().filter(|s| s.n == 4) {
        let out = exists_avoiding_with(&s, Budget::unlimited(), &SearchConfig::default()).unwrap();
        assert_eq!(out.is_witness(), brute_force(&s), "{}", s.describe());
    }
}

#[test]
fn solver_matches_enumeration_on_d0_k5() {
    for s in cases().into_iter().filter(|s| s.n == 5 && s.class == MapClass::D0) {
        let out = exists_avoiding_with(&s, Budget::unlimited(), &SearchConfig::default()).unwrap();
        assert_eq!(out.is_witness(), brute_force(&s), "{}", s.describe());
    }
}

#[test]
fn every_toggle_combination_agrees() {
    for s in cases() {
        let verdicts: Vec<bool> = SearchConfig::all_toggles()
            .iter()
            .map(|cfg| {
                let out = exists_avoiding_with(&s, Budget::seconds(60), cfg).unwrap();
                assert_ne!(out.verdict, Verdict::Timeout, "{} under {cfg:?}", s.describe());
                out.is_witness()
            })
            .collect();
        assert!(verdicts.iter().all(|&v| v == verdicts[0]), "{}: {verdicts:?}", s.describe());
    }
}

#[test]
fn restricted_domains_are_respected() {
    let ne = pairs(5);
    // force every edge to be shifted onto a disjoint edge
    let dom: Vec<u64> = (0..ne as u32)
        .map(|e| (0..ne as u32).filter(|&t| edge_mask(e) & edge_mask(t) == 0).fold(0, |m, t| m | 1 << t))
        .collect();
    let s = spec(5, MapClass::All, &[(Relation::Exclusive, "K1,2")]).with_domains(dom).unwrap();
    let out = exists_avoiding_with(&s, Budget::unlimited(), &SearchConfig::default()).unwrap();
    let f = out.verdict.witness().expect("pentagon-type witness");
    assert!(f.in_map_class(MapClass::D0));
}
