//! k_d (x) k_n: the orthogonal idempotents beta_j and the identification with the crown path algebra.

use crown_species::scalars::el;
use crown_species::tensor::{apply_f, beta_basis, verify_crown_identification, verify_idempotents};

fn main() -> crown_species::Result<()> {
    let (d, n) = (4, 2);
    let betas = beta_basis(d, n)?;
    for (j, b) in betas.iter().enumerate() {
        println!("beta_{} = {b}", j + 1);
    }
    let a = el("e^(1/2) + 2");
    println!("\n(id (x) f_a)(beta_1) = {}", apply_f(&betas[0], &a)?);

    print!("\n{}", verify_idempotents(d, n).to_text());
    let table = verify_crown_identification(d, n);
    println!("crown identification for n={n}, d={d}: {:?} ({} records)", table.status, table.details.len());
    Ok(())
}
