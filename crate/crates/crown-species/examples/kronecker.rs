//! The n = 1 specialisation: Vandermonde diagonalisation and the band datum on the Kronecker quiver.

use crown_species::checks::{check_vandermonde, verify_kronecker};
use crown_species::descent::vandermonde;
use crown_species::scalars::PuiseuxElement;

fn main() -> crown_species::Result<()> {
    let a = PuiseuxElement::eps(1, 3);
    println!("V =\n{}", vandermonde(&a, 3)?);
    println!("{}", check_vandermonde(&a, 3).to_text());
    println!("{}", verify_kronecker(&a, 3).to_text());
    Ok(())
}
