//! Descent data on crown representations, the explicit families of regular simples, base
//! change from `Λ_n`-representations and certification.

mod certify;
mod datum;
mod families;
mod lambda;

pub use datum::{shift_matrix, shift_matrix_inv, verify_cocycle, DescentDatum};
pub use families::{
    build_cocycle_equal, build_cocycle_large, build_cocycle_m_a, build_cocycle_small, build_cocycle_string,
    orbit_datum, orbit_sum, rep_family, rep_family_m, rep_family_n, rep_m_a, Family,
};
pub use certify::{certify_lambda, certify_regular_simple, endomorphism_count, find_family_witness};
pub use lambda::{
    alpha_matrix, alpha_of, companion, descent_degree, galois_orbit, min_poly, normal_form_homogeneous,
    normal_form_nonhomogeneous, orbit_diagonal, parse_witness, subdiagonal_block, vandermonde, LambdaFile, LambdaRep,
    Variant, Witness,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{el, FieldTowerCtx};

    #[test]
    fn cocycles_close() {
        let ctx = FieldTowerCtx::for_rams(&[12]);
        for (a, m, n) in [("e^(1/2)", 2, 2), ("e^(1/3)", 3, 3), ("e^(1/2)", 2, 3), ("e^(1/2)", 2, 4), ("e^(1/2)", 2, 5),
            ("e^(1/3)", 3, 4), ("e^(1/3)", 3, 2), ("e^(1/4)", 4, 2), ("e^(1/4)", 4, 3), ("e^(1/5)", 5, 2),
            ("e^(1/2) + e", 2, 3), ("1 + e^(1/3)", 3, 2)] {
            let datum = build_cocycle_m_a(&ctx, &el(a), m, n, 24).unwrap();
            let r = verify_cocycle(&datum);
            assert!(r.passed(), "(a,m,n)=({a},{m},{n})\n{}", r.to_text());
        }
        for n in 2..=4 {
            for j in 1..=n {
                for which in [Family::M, Family::N] {
                    let r = verify_cocycle(&build_cocycle_string(j, n, which).unwrap());
                    assert!(r.passed(), "{}", r.to_text());
                }
            }
        }
    }
}
