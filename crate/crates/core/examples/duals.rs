//! Canonical form, I-invariant, linear and cyclic duals of a string.
//!
//! `cargo run --example duals -- 3,2,2,3,5`

use chainsurg::chainstring::{cyclic_blocks, cyclic_dual, i_invariant, linear_dual};
use chainsurg::contfrac::hj_eval;
use chainsurg::ChainString;

fn main() -> chainsurg::Result<()> {
    let a: ChainString = std::env::args().nth(1).unwrap_or_else(|| "3,2,2,3,5".into()).parse()?;
    println!("string     {a:?}");
    println!("canonical  {:?}", a.canonical());
    println!("I          {}", i_invariant(&a));
    let b = linear_dual(a.entries())?;
    println!("[a]        {}", hj_eval(a.entries())?);
    println!("linear     {b:?} = {}", hj_eval(&b)?);
    if !a.is_all_twos() {
        println!("blocks     {:?}", cyclic_blocks(&a)?);
        let d = cyclic_dual(&a)?;
        println!("cyclic     {d:?} (I = {})", i_invariant(&d));
    }
    Ok(())
}
