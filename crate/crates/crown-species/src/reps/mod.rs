//! Representations of the crown quiver over `k_d`: matrices, string and band modules, the
//! twist functor, hom-spaces and isomorphism tests.

mod linalg;
mod matrix;
mod rep;

pub use linalg::{
    end_dim, hom_space, is_ii, is_isomorphic, is_morphism, iso_decision, isomorphism, smallest_twist_period,
    Decision, HomSpace,
};
pub use matrix::MatK;
pub(crate) use linalg::kernel;
pub use rep::{band_module, string_module, Representation};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crown::{CrownQuiver, Vertex};
    use crate::scalars::el;

    fn q(n: u32) -> CrownQuiver {
        CrownQuiver::new(n).unwrap()
    }

    #[test]
    fn simple_string_endomorphisms() {
        let q3 = q(3);
        let s = q3.string_word(Vertex::Sink(1), 1).unwrap();
        let m = string_module(&q3, &s, 3).unwrap();
        assert_eq!(m.dim_vector().to_string(), "(1,0,0,1,0,0)");
        assert_eq!(end_dim(&m).unwrap(), 1);
    }

    #[test]
    fn band_parameters_separate() {
        let q2 = q(2);
        let band = q2.the_band();
        let a = band_module(&q2, &band, &MatK::scalar(el("e^(1/2)")), 2).unwrap();
        let b = band_module(&q2, &band, &MatK::scalar(el("-e^(1/2)")), 2).unwrap();
        assert!(is_isomorphic(&a, &a).unwrap());
        assert!(!is_isomorphic(&a, &b).unwrap());
        assert_eq!(a.defect(), 0);
        assert!(is_isomorphic(&a.twist(1), &b).unwrap());
        assert_eq!(smallest_twist_period(&a).unwrap(), 2);
    }

    #[test]
    fn twist_has_order_d() {
        let q3 = q(3);
        let s = q3.string_word(Vertex::Sink(1), 3).unwrap();
        let m = string_module(&q3, &s, 6).unwrap();
        assert_eq!(m.twist(6), m);
        assert_eq!(m.twist(2).twist(1), m.twist(3));
    }

    #[test]
    fn non_monomial_entries() {
        let q2 = q(2);
        let band = q2.the_band();
        let phi = MatK::parse("1 + e, 1; 0, 1 + e").unwrap();
        let m = band_module(&q2, &band, &phi, 2).unwrap();
        assert_eq!(end_dim(&m).unwrap(), 2);
        let phi2 = MatK::parse("1 + e, 0; 0, 1 - e").unwrap();
        let m2 = band_module(&q2, &band, &phi2, 2).unwrap();
        assert_eq!(end_dim(&m2).unwrap(), 2);
        assert!(!is_isomorphic(&m, &m2).unwrap());
    }
}
