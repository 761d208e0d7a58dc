//! Checks every identity in the catalogue over the default parameter sweep
//! and prints one summary line per identity.

use quadstab::funceq::{default_sweep, verify_identity, IdentityId};

fn main() -> quadstab::Result<()> {
    let mut tally: Vec<(&'static str, usize, usize)> = Vec::new();
    for id in default_sweep() {
        let holds = verify_identity(id)?.holds;
        match tally.iter_mut().find(|(label, ..)| *label == id.label()) {
            Some((_, total, held)) => {
                *total += 1;
                *held += usize::from(holds);
            }
            None => tally.push((id.label(), 1, usize::from(holds))),
        }
    }
    for (label, total, held) in &tally {
        println!("({label}) {held}/{total} parameter choices hold");
    }

    let one = verify_identity(IdentityId::from_label("2.23", None, None, Some(2), Some(3))?)?;
    println!("\n{}: difference {}", IdentityId::I2_23 { c: 2, k: 3 }, one.difference);
    Ok(())
}
