//! Explicit subsets with their kind, string and incidence counts.
//!
//! `cargo run --example fixtures` or `cargo run --example fixtures -- exceptional`

use chainsurg::lattice::{classify_subset, fixtures, keylem1_check, stats};

fn main() -> chainsurg::Result<()> {
    let filter = std::env::args().nth(1);
    for f in fixtures::all(4, 3) {
        if filter.as_deref().is_some_and(|p| !f.name.contains(p)) {
            continue;
        }
        let s = classify_subset(f.vectors.clone())?;
        let ok = s.kind == f.kind && s.string == f.string;
        let st = stats(&s);
        let key = if s.i_invariant() <= 0 { keylem1_check(&s).map(|k| k.holds).unwrap_or(false).to_string() } else { "-".into() };
        println!(
            "{:<22} {:<15} {:<28} I={:<3} p={:?} max|c|={} key={} {}",
            f.name,
            format!("{:?}", s.kind),
            format!("{:?}", s.string),
            s.i_invariant(),
            st.p,
            st.max_coeff,
            key,
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    Ok(())
}
