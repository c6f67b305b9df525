//! The 3-braid whose double branched cover is `Y_a^t`, with its Burau trace.
//!
//! `cargo run --example braid -- 3,2 -1`

use chainsurg::classifier::{braid_cover_classify, braid_word, burau, burau_self_test, burau_trace_check};
use chainsurg::families::MembershipMode;
use chainsurg::ChainString;

fn main() -> chainsurg::Result<()> {
    let mut args = std::env::args().skip(1);
    let a: ChainString = args.next().unwrap_or_else(|| "3,2".into()).parse()?;
    let t: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(-1);
    assert!(burau_self_test());
    let w = braid_word(&a, t);
    println!("braid   {w}");
    println!("burau   {:?}", burau(&w.letters));
    let check = burau_trace_check(&a, t)?;
    println!("trace   {} (consistent: {})", check.trace, check.matches);
    let v = braid_cover_classify(&a, t, MembershipMode::Strict)?;
    println!("verdict {}", v.status);
    for r in v.reasons {
        println!("  [{}] {}", r.rule, r.detail);
    }
    Ok(())
}
