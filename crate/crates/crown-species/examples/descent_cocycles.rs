//! Descent data on twist orbits: band and string cocycles, and perturbations that must fail.

use crown_species::checks::check_negative_controls;
use crown_species::descent::{build_cocycle_m_a, build_cocycle_string, verify_cocycle, Family};
use crown_species::scalars::{el, FieldTowerCtx};

fn main() -> crown_species::Result<()> {
    let ctx = FieldTowerCtx::for_rams(&[6]);
    let datum = build_cocycle_m_a(&ctx, &el("e^(1/2) + e"), 2, 3, 24)?;
    println!("{}", verify_cocycle(&datum).to_text());

    let strings = build_cocycle_string(2, 4, Family::N)?;
    println!("{}", verify_cocycle(&strings).to_text());

    println!("{}", check_negative_controls(&datum).to_text());
    Ok(())
}
