//! Exhaustive sweep: cyclic-subset existence against family membership.
//!
//! `cargo run --release --example verify_sweep -- 5 relaxed`

use std::time::Instant;

use chainsurg::embedsearch::{verify_with, VerifyOptions};
use chainsurg::families::MembershipMode;

fn main() -> chainsurg::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let mode: MembershipMode = args.next().and_then(|s| s.parse().ok()).unwrap_or(MembershipMode::Relaxed);
    let start = Instant::now();
    let report = verify_with(&VerifyOptions::new(max_n, mode))?;
    let found = |f: fn(&chainsurg::embedsearch::VerifyRow) -> bool| report.rows.iter().filter(|r| f(r)).count();
    println!("strings: {}", report.rows.len());
    println!("negative embeddings: {}", found(|r| r.neg == chainsurg::embedsearch::OutcomeTag::Found));
    println!("positive embeddings: {}", found(|r| r.pos == chainsurg::embedsearch::OutcomeTag::Found));
    println!("mismatches: {}", report.mismatches().len());
    for r in report.mismatches() {
        println!("  {:?} I={} s1={}/{} s2={}/{} neg={:?} pos={:?}", r.string, r.i, r.s1_strict, r.s1_relaxed, r.s2_strict, r.s2_relaxed, r.neg, r.pos);
    }
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(())
}
