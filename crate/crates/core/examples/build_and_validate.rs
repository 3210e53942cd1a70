//! Build the named complexes, validate them, and show what the validator
//! reports for a broken file.
//!
//!     cargo run --example build_and_validate

use dirtop::complex::{validate, ComplexFile, NamedComplex, PrecubicalSet};

fn main() -> dirtop::Result<()> {
    for spec in ["point", "branch", "letter-w", "cube 3", "boundary-cube 3", "torus 2", "swiss-grid", "dubut-d"] {
        let named: NamedComplex = spec.parse()?;
        let x = named.build()?;
        println!(
            "{spec}: {} vertices, {} edges, {} squares, non-self-linked {}, loop-free {}",
            x.num_vertices(),
            x.num_edges(),
            x.num_squares(),
            x.is_non_self_linked(),
            x.is_loop_free()
        );
    }

    let product = dirtop::complex::build_named("branch")?.product(&dirtop::complex::build_named("cube 1")?);
    println!("branch x cube 1: {} cells", product.total_cells());

    // Swap the lower faces of one square of the 2-cube: the relation
    // d1(d2 s) = d1(d1 s) no longer holds.
    let mut file: ComplexFile = PrecubicalSet::from_file(&NamedComplex::Cube(2).file())?.to_file();
    let square = file.cells.iter_mut().find(|c| c.dim == 2).expect("a square");
    let first = square.faces.get_mut(&1).expect("face 1");
    std::mem::swap(&mut first.minus, &mut first.plus);
    println!("broken cube 2: {}", validate(&file));
    Ok(())
}
