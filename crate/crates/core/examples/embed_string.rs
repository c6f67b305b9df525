//! Search for a cyclic or standard subset realising a string.
//!
//! `cargo run --example embed_string -- 3,3,3 positive`

use chainsurg::embedsearch::{find_embedding, SearchOutcome, SearchQuery};
use chainsurg::lattice::SubsetKind;
use chainsurg::ChainString;

fn main() -> chainsurg::Result<()> {
    let mut args = std::env::args().skip(1);
    let target: ChainString = args.next().unwrap_or_else(|| "3,3,3".into()).parse()?;
    let kind = match args.next().as_deref() {
        Some("negative") => SubsetKind::NegativeCyclic,
        Some("standard") => SubsetKind::Standard,
        _ => SubsetKind::PositiveCyclic,
    };
    let res = find_embedding(&SearchQuery::new(target.clone(), kind))?;
    println!("{target:?} as {kind:?}: {} nodes", res.nodes);
    match res.outcome {
        SearchOutcome::Found(w) => {
            for v in &w.vectors {
                println!("  {v:?}");
            }
            for row in w.gram() {
                println!("  gram {row:?}");
            }
        }
        other => println!("  {other:?}"),
    }
    Ok(())
}
