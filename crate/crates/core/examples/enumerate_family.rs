//! Members of one family up to a length.
//!
//! `cargo run --example enumerate_family -- S2c 6 strict`

use chainsurg::families::{enumerate_family, FamilyTag, MembershipMode};

fn main() -> chainsurg::Result<()> {
    let mut args = std::env::args().skip(1);
    let tag: FamilyTag = args.next().unwrap_or_else(|| "S2c".into()).parse()?;
    let max_len: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let mode: MembershipMode = args.next().unwrap_or_else(|| "strict".into()).parse()?;
    let members = enumerate_family(tag, max_len, mode);
    for s in &members {
        println!("{s:?}");
    }
    println!("{} members of {tag} with length <= {max_len}", members.len());
    Ok(())
}
