//! Discrete directed topological complexity with witness covers.
//!
//!     cargo run --example directed_tc [-- <complex>...]

use std::time::Instant;

use dirtop::paths::Space;
use dirtop::tc::directed_tc;

fn main() -> dirtop::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let names = if args.is_empty() {
        ["point", "cube 2", "letter-w", "branch", "boundary-cube 2", "boundary-cube 3", "swiss-grid", "dubut-d"]
            .map(String::from)
            .to_vec()
    } else {
        args
    };
    for name in &names {
        let space = Space::named(name)?;
        let start = Instant::now();
        let cover = directed_tc(&space, 4)?;
        println!("{name}: dtc={} ({:.0?})", cover.k(), start.elapsed());
        if cover.k() > 1 && space.table.reachability().num_pairs() <= 12 {
            for line in cover.report(&space) {
                println!("  {line}");
            }
        }
    }
    Ok(())
}
