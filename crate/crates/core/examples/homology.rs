//! Monodromy matrix of a string and the homology orders it controls.
//!
//! `cargo run --example homology -- 2,2,2,3,2`

use chainsurg::contfrac::{homology_order, is_square, monodromy_matrix, s1a_order, torsion_order, Parity, Sign};
use chainsurg::ChainString;

fn main() -> chainsurg::Result<()> {
    let a: ChainString = std::env::args().nth(1).unwrap_or_else(|| "2,2,2,3,2".into()).parse()?;
    let m = monodromy_matrix(&a)?;
    println!("A(a) = {:?}, trace {}", m.as_matrix(), m.trace());
    if a.is_all_twos() {
        println!("all entries are 2: the bundle is not hyperbolic");
        return Ok(());
    }
    for (sign, name) in [(Sign::Plus, "+A"), (Sign::Minus, "-A")] {
        println!("|Tor H_1| of the bundle with monodromy {name}: {}", torsion_order(&a, sign)?);
    }
    for parity in [Parity::Even, Parity::Odd] {
        let h = homology_order(&a, parity)?;
        println!("|H_1(Y^t)|, t {parity:?}: {h} (square: {})", is_square(h)?);
    }
    if let Ok(o) = s1a_order(&a) {
        println!("S1a order p^2 = {o}");
    }
    Ok(())
}
