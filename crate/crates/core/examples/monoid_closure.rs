//! The closure of a distinguished subset in a finite monoid, and the
//! 2-out-of-3 check it supports.
//!
//!     cargo run --example monoid_closure

use dirtop::maps::{all_maps, Alpha, InessentialSet, MonoidTable};
use dirtop::paths::Space;

fn main() -> dirtop::Result<()> {
    // Endomaps of the branch with S the neutrally inessential ones.
    let b = Space::named("branch")?;
    let maps = all_maps(&b, &b);
    let set = InessentialSet::compute(&b, Alpha::Neutral, None);
    let names = maps.iter().map(|m| m.display(&b.complex, &b.complex).to_string()).collect();
    let m = MonoidTable::from_maps(&maps, names, |h| set.contains(h))?;
    show("branch endomaps", &m);

    // Monotone maps of the 3-chain with S the endpoint-fixing maps: the
    // inessentiality property fails, so the 2-out-of-3 check refuses.
    show("3-chain", &MonoidTable::chain(3));
    Ok(())
}

fn show(label: &str, m: &MonoidTable) {
    let bar = m.closure();
    let members: Vec<&str> = (0..m.len()).filter(|&i| bar[i]).map(|i| m.names[i].as_str()).collect();
    println!(
        "{label}: |M| = {}, |S| = {}, closure = {}",
        m.len(),
        m.s.iter().filter(|&&b| b).count(),
        members.join(" ")
    );
    println!("  closure is a submonoid: {}", m.is_submonoid(&bar));
    println!("  inessentiality property: {}", m.verify_inessentiality_property());
    match m.verify_closure_2of3() {
        Ok(v) => println!("  2-out-of-3: {v}"),
        Err(e) => println!("  2-out-of-3 refused: {e}"),
    }
}
