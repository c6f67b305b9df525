//! Repeated contractions from an explicit subset down to a base case, then
//! the expansions back up.
//!
//! `cargo run --example contraction -- star_rooted_3`

use chainsurg::lattice::{all_contractions, classify_subset, expand, fixtures, stats};

fn main() -> chainsurg::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "star_rooted_3".into());
    let Some(f) = fixtures::by_name(&name) else {
        eprintln!("no fixture named {name}");
        std::process::exit(1);
    };
    let mut s = classify_subset(f.vectors)?;
    let mut records = Vec::new();
    loop {
        println!("{:?} {:?} I={} p={:?}", s.kind, s.string, s.i_invariant(), stats(&s).p);
        let Some(c) = all_contractions(&s).into_iter().next() else { break };
        println!("  contract {:?} at column {}, s={} s~={} t={}", c.record.style, c.record.column, c.record.s, c.record.s_tilde, c.record.t);
        records.push((c.record, s.gram()));
        s = c.subset;
    }
    for (record, gram) in records.into_iter().rev() {
        s = expand(&s, &record)?;
        assert_eq!(s.gram(), gram);
    }
    println!("expanded back to {:?}", s.string);
    Ok(())
}
