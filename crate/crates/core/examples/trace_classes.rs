//! Dihomotopy classes of edge paths: counts per reachable pair and the
//! swap that moves one representative to another.
//!
//!     cargo run --example trace_classes [-- <complex>...]

use std::time::Instant;

use dirtop::paths::{swap_step, Space};

fn main() -> dirtop::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let names = if args.is_empty() {
        vec!["boundary-cube 2", "boundary-cube 3", "boundary-cube 4", "letter-w", "dubut-d", "swiss-grid"]
            .into_iter()
            .map(String::from)
            .collect()
    } else {
        args
    };
    for name in &names {
        let start = Instant::now();
        let space = Space::named(name)?;
        let t = &space.table;
        let max = space.pairs().map(|(a, b)| t.count(a, b)).max().unwrap_or(0);
        println!(
            "{name}: {} pairs, {} classes, at most {max} per pair ({:.0?})",
            t.reachability().num_pairs(),
            t.num_classes(),
            start.elapsed()
        );
    }

    let b = Space::named("boundary-cube 2")?;
    let (lo, hi) = (b.vertex("0")?, b.vertex("1")?);
    for line in
        b.report().iter().filter(|l| l.starts_with(&format!("{} {}", b.complex.vertex_id(lo), b.complex.vertex_id(hi))))
    {
        println!("{line}");
    }

    // One swap across a square of the grid.
    let g = Space::named("swiss-grid")?;
    let x = &g.complex;
    let p =
        dirtop::paths::EdgePath::from_edges(x, x.vertex("00")?, vec![x.edge("h00")?, x.edge("v10")?, x.edge("v11")?])
            .expect("a path");
    let q = swap_step(x, &p, 0, x.lookup("s00").expect("square").1)?;
    println!("{}  ~  {}", p.display(x), q.display(x));
    Ok(())
}
