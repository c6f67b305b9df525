//! Conjugacy normal form of an SL(2,Z) matrix and the bundle verdict.
//!
//! `cargo run --example torus_bundle -- 5 2 -3 -1`

use chainsurg::classifier::{classify_torus_bundle, normalize_with_certificate};

fn main() -> chainsurg::Result<()> {
    let e: Vec<i128> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let m = if e.len() == 4 { [[e[0], e[1]], [e[2], e[3]]] } else { [[5, 2], [-3, -1]] };
    let nf = normalize_with_certificate(&m)?;
    println!("M = {m:?}");
    println!("class {:?}", nf.class);
    println!("X = {:?} with X M X^-1 = {:?}", nf.conjugator, nf.representative);
    let v = classify_torus_bundle(&nf.class);
    println!("{}", v.status);
    for r in v.reasons {
        println!("  [{}] {}", r.rule, r.detail);
    }
    Ok(())
}
