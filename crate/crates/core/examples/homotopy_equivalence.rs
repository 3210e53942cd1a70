//! Directed homotopy equivalence searches between small complexes.
//!
//!     cargo run --release --example homotopy_equivalence

use std::time::Instant;

use dirtop::maps::{search_dhe, Alpha};
use dirtop::paths::Space;

fn main() -> dirtop::Result<()> {
    for (a, b) in [("point", "branch"), ("point", "letter-w"), ("boundary-cube 2", "swiss-grid")] {
        let (x, y) = (Space::named(a)?, Space::named(b)?);
        for alpha in Alpha::ALL {
            let start = Instant::now();
            let verdict = search_dhe(&x, &y, alpha, Some(5_000_000))?;
            println!("{a} -> {b}: dhe({alpha}): {} ({:.1?})", verdict.label(), start.elapsed());
            if let Some(cert) = verdict.certificate() {
                println!("  f = {}", cert.f.display(&x.complex, &y.complex));
                println!("  g = {}", cert.g.display(&y.complex, &x.complex));
            }
        }
    }
    Ok(())
}
