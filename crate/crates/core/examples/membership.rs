//! Family membership with witnesses, in both modes.
//!
//! `cargo run --example membership -- 2,3,2,3,2`

use chainsurg::families::{member, MembershipMode};
use chainsurg::ChainString;

fn main() -> chainsurg::Result<()> {
    let a: ChainString = std::env::args().nth(1).unwrap_or_else(|| "2,3,2,3,2".into()).parse()?;
    for mode in [MembershipMode::Strict, MembershipMode::Relaxed] {
        let ws = member(&a, mode);
        println!("{mode:?}: {} witness(es)", ws.len());
        for w in ws {
            println!("  {} rotation={} reversed={} {}", w.tag, w.rotation, w.reversed, serde_json::to_string(&w.params).unwrap());
            assert_eq!(w.reassemble()?, a);
        }
    }
    Ok(())
}
