//! Bounding verdicts for `Y_a^t` over a range of twists.
//!
//! `cargo run --example classify_surgery -- 2,2,2,3,2 -3 3`

use chainsurg::classifier::{classify_surgery, d_invariant_s0, hf_red_rank};
use chainsurg::families::MembershipMode;
use chainsurg::ChainString;

fn main() -> chainsurg::Result<()> {
    let mut args = std::env::args().skip(1);
    let a: ChainString = args.next().unwrap_or_else(|| "2,2,2,3,2".into()).parse()?;
    let lo: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(-3);
    let hi: i64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    for t in lo..=hi {
        let v = classify_surgery(&a, t, MembershipMode::Strict)?;
        let d = if t % 2 != 0 { format!(", d(s0) = {}", d_invariant_s0(&a, t)?) } else { String::new() };
        println!("t = {t:>3}: {:<9} rank HF_red = {}{d}", v.status.to_string(), hf_red_rank(t));
        for r in &v.reasons {
            println!("         [{}] {}", r.rule, r.detail);
        }
    }
    Ok(())
}
