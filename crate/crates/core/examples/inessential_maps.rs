//! Path space preserving and inessential endomaps of the branch B and of
//! the boundary of the square.
//!
//!     cargo run --example inessential_maps

use dirtop::maps::{check_inessential, check_psp, psp_maps, Alpha, InessentialSet, Verdict};
use dirtop::paths::Space;

fn main() -> dirtop::Result<()> {
    for name in ["branch", "boundary-cube 2", "letter-w"] {
        let space = Space::named(name)?;
        let x = &space.complex;
        println!("{name}: {} psp endomaps", psp_maps(&space, &space).len());
        for alpha in Alpha::ALL {
            let set = InessentialSet::compute(&space, alpha, None);
            let members: Vec<String> = set.members().iter().map(|m| m.display(x, x).to_string()).collect();
            if members.len() <= 6 {
                println!("  C{alpha}: {}", members.join("  "));
            } else {
                println!("  C{alpha}: {} maps", members.len());
            }
        }
    }

    // The reflection of the square's boundary is psp but not inessential.
    let b = Space::named("boundary-cube 2")?;
    let flip = dirtop::maps::AdmissibleMap::new(
        ["00", "10", "01", "11"].iter().map(|v| b.vertex(v)).collect::<dirtop::Result<Vec<_>>>()?,
    );
    println!("reflection psp: {}", check_psp(&b, &b, &flip)?.psp);
    match check_inessential(&b, &flip, Alpha::Neutral, 6)? {
        Verdict::Proved(chain) => println!("reflection inessential via {} steps", chain.len()),
        v => println!("reflection inessential: {}", v.label()),
    }
    Ok(())
}
