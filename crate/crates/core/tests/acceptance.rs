//! Acceptance criteria 1 to 7, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines always show.

use edgemap::reproduce::{criterion_ids, run, ClaimResult, Status, DEFAULT_SEED};

const TITLES: [&str; 7] = [
    "exact small values by search",
    "construction verification suite",
    "oracle against closed forms",
    "certifier soundness",
    "bound arithmetic regression",
    "extraction guarantees",
    "determinism",
];

fn criterion(c: u8) -> (Status, Vec<ClaimResult>) {
    let mut claims = Vec::new();
    for id in criterion_ids(c) {
        claims.extend(run(id, DEFAULT_SEED).expect("manifest id"));
    }
    let status = if claims.is_empty() || claims.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if claims.iter().any(|r| r.status == Status::Skipped) {
        // a skipped claim is not a pass
        Status::Fail
    } else {
        Status::Pass
    };
    (status, claims)
}

fn main() {
    let mut failed = Vec::new();
    for c in 1..=7u8 {
        let (status, claims) = criterion(c);
        println!("{status} criterion {c}: {} ({} claims)", TITLES[c as usize - 1], claims.len());
        for r in claims.iter().filter(|r| r.status != Status::Pass) {
            println!("    {r}");
        }
        if status != Status::Pass {
            failed.push(c);
        }
    }
    if !failed.is_empty() {
        eprintln!("criteria failed: {failed:?}");
        std::process::exit(1);
    }
}
