//! Normal forms over the species: homogeneous [alpha(x) id] and the [B id] / [id B] families.

use crown_species::descent::{
    alpha_of, certify_lambda, endomorphism_count, normal_form_homogeneous, normal_form_nonhomogeneous, Variant,
    Witness,
};
use crown_species::scalars::el;

fn main() -> crown_species::Result<()> {
    let x = el("e^(1/3)");
    println!("alpha({x}) =\n{}", alpha_of(&x)?);
    let l = normal_form_homogeneous(&x, 2, 3)?;
    let r = certify_lambda(&l, 3, Some(&Witness::Band(x.pow(2))));
    println!("homogeneous n=2 m=3: {:?}", r.status);

    for j in 1..=3 {
        for variant in [Variant::BId, Variant::IdB] {
            let l = normal_form_nonhomogeneous(j, 3, variant)?;
            let cert = certify_lambda(&l, 3, None);
            let count = endomorphism_count(&l, 3);
            println!(
                "{variant:?} j={j}: certify {:?} (witness {}), dim End(k_d (x) L) = {}",
                cert.status,
                cert.params.get("witness").map_or("-", |s| s.as_str()),
                count.details[0].got
            );
        }
    }
    Ok(())
}
