//! Pair component categories of the example complexes, and the comparison
//! that tells ∂□₂ and the complex D apart.
//!
//!     cargo run --example pair_components [-- --dot]

use dirtop::components::{compare_categories, pair_components};
use dirtop::paths::Space;

fn main() -> dirtop::Result<()> {
    let dot = std::env::args().any(|a| a == "--dot");
    let mut cats = Vec::new();
    for name in ["point", "branch", "letter-w", "cube 2", "boundary-cube 2", "swiss-grid", "dubut-d"] {
        let space = Space::named(name)?;
        let cat = pair_components(&space, &[])?;
        println!("{name}: {} objects, signatures {}", cat.num_objects(), summary(&cat.signatures()));
        if dot {
            print!("{}", cat.to_dot(&space));
        }
        cats.push((name, cat));
    }
    let find = |n: &str| &cats.iter().find(|(name, _)| *name == n).unwrap().1;
    for (a, b) in [("boundary-cube 2", "swiss-grid"), ("boundary-cube 2", "dubut-d"), ("point", "letter-w")] {
        println!("{a} vs {b}: {}", compare_categories(find(a), find(b)));
    }
    Ok(())
}

fn summary(sigs: &[dirtop::components::Signature]) -> String {
    sigs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
