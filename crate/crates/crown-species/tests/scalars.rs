use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use crown_species::scalars::{
    cyclotomic_poly, el, is_generic, norm, norm_root, nth_root, parse_element, totient, CycScalar, FieldTowerCtx,
    PuiseuxElement,
};

const T: f64 = 0.37;

fn eval_cyc(c: &CycScalar) -> Complex64 {
    let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / c.order() as f64);
    c.coeffs()
        .iter()
        .enumerate()
        .map(|(i, q)| zeta.powu(i as u32) * q.to_f64().unwrap())
        .sum()
}

/// Numerical value at `ε = T` with the positive real branch of `ε^{1/ram}`.
fn eval(x: &PuiseuxElement) -> Complex64 {
    let r = x.ram() as f64;
    x.terms().iter().map(|(j, c)| eval_cyc(c) * T.powf(*j as f64 / r)).sum()
}

/// `σ^k` computed numerically: `ε^{j/r} ↦ ζ_r^{kj} ε^{j/r}`.
fn eval_sigma(x: &PuiseuxElement, k: i64) -> Complex64 {
    let r = x.ram() as f64;
    x.terms()
        .iter()
        .map(|(j, c)| {
            let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k * j) as f64 / r);
            eval_cyc(c) * phase * T.powf(*j as f64 / r)
        })
        .sum()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-7 * (1.0 + a.norm().max(b.norm()))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn cyc(order: u32) -> impl Strategy<Value = CycScalar> {
    (small_rational(), 0i64..order as i64).prop_map(move |(r, k)| CycScalar::zeta(order, k).mul(&CycScalar::from_rational(r)))
}

fn element(ram: u32) -> impl Strategy<Value = PuiseuxElement> {
    prop::collection::vec((-4i64..=6, cyc(6)), 1..4).prop_map(move |terms| PuiseuxElement::new(ram, terms, None))
}

fn ram_and_element() -> impl Strategy<Value = PuiseuxElement> {
    prop_oneof![Just(1u32), Just(2), Just(3), Just(4), Just(6)].prop_flat_map(element)
}

proptest! {
    #[test]
    fn ring_operations_match_evaluation(a in ram_and_element(), b in ram_and_element()) {
        prop_assert!(close(eval(&a.add(&b)), eval(&a) + eval(&b)));
        prop_assert!(close(eval(&a.mul(&b)), eval(&a) * eval(&b)));
        prop_assert!(close(eval(&a.sub(&b)), eval(&a) - eval(&b)));
    }

    #[test]
    fn sigma_matches_evaluation(a in ram_and_element(), k in -7i64..7) {
        prop_assert!(close(eval(&a.sigma(k)), eval_sigma(&a, k)));
    }

    #[test]
    fn sigma_has_order_ram(a in ram_and_element()) {
        prop_assert_eq!(a.sigma(a.ram() as i64), a.clone());
        prop_assert_eq!(a.sigma(1).sigma(2), a.sigma(3));
    }

    #[test]
    fn embedding_preserves_value(a in ram_and_element(), f in 1u32..4) {
        let e = a.embed(a.ram() * f).unwrap();
        prop_assert!(close(eval(&e), eval(&a)));
        prop_assert_eq!(e.reduce_ram(), a.reduce_ram());
    }

    #[test]
    fn text_round_trip(a in ram_and_element()) {
        let back = parse_element(&a.to_string()).unwrap();
        prop_assert_eq!(back.reduce_ram(), a.reduce_ram());
    }

    #[test]
    fn truncated_inverse(a in ram_and_element()) {
        prop_assume!(!a.is_zero());
        let inv = a.invert_to(12).unwrap();
        prop_assert!(a.mul(&inv).agrees_with(&PuiseuxElement::one()));
    }

    #[test]
    fn genericity_matches_orbit_size(a in ram_and_element()) {
        prop_assume!(!a.is_zero());
        let distinct = (1..a.ram() as i64).all(|k| !close(eval_sigma(&a, k), eval(&a)));
        prop_assert_eq!(is_generic(&a).unwrap(), distinct);
    }

    #[test]
    fn roots_reconstruct(v in -5i64..5, s in 1i64..4, tail in prop::collection::vec(small_rational(), 0..4), n in 2u32..5) {
        let lead = CycScalar::from_rational(BigRational::from_integer(num_bigint::BigInt::from(s).pow(n)));
        let mut terms = vec![(v, lead)];
        for (k, c) in tail.into_iter().enumerate() {
            terms.push((v + 1 + k as i64, CycScalar::from_rational(c)));
        }
        let a = PuiseuxElement::new(1, terms, None);
        let ctx = FieldTowerCtx::new(2 * n, 20).unwrap();
        let (b, m) = nth_root(&ctx, &a, n, 20).unwrap();
        prop_assert_eq!((v - m as i64).rem_euclid(n as i64), 0);
        prop_assert!(b.pow(n as u64).shift(m as i64).agrees_with(&a));
    }
}

#[test]
fn cyclotomic_polynomials() {
    let as_i64 = |n: u32| cyclotomic_poly(n).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
    assert_eq!(as_i64(1), vec![-1, 1]);
    assert_eq!(as_i64(4), vec![1, 0, 1]);
    assert_eq!(as_i64(6), vec![1, -1, 1]);
    assert_eq!(totient(12), 4);
}

#[test]
fn zeta_power_is_one() {
    for n in 1..=12 {
        assert!(CycScalar::zeta(n, 1).pow(n as u64).is_one());
    }
}

#[test]
fn root_of_a_constant_is_exact() {
    let ctx = FieldTowerCtx::for_rams(&[2]);
    let (b, m) = nth_root(&ctx, &el("4*e^3"), 2, 24).unwrap();
    assert_eq!(m, 1);
    assert_eq!(b, el("2*e"));
}

#[test]
fn norm_equation_solution() {
    let ctx = FieldTowerCtx::for_rams(&[6]);
    for (a, m, d) in [("e^(1/2)", 2, 6), ("e^(1/3) + e", 3, 6), ("4*e^(5/2)", 2, 4)] {
        let a = el(a);
        let b = norm_root(&ctx, &a, m, d, 24).unwrap();
        assert!(norm(&b, m, d).agrees_with(&a.embed(d).unwrap()), "a={a}");
    }
}

#[test]
fn genericity_examples() {
    assert!(is_generic(&el("e^(1/2)")).unwrap());
    assert!(!is_generic(&el("e").embed(2).unwrap()).unwrap());
    assert!(is_generic(&el("e^(1/2) + e")).unwrap());
    assert!(!is_generic(&el("e^(2/4)").embed(4).unwrap()).unwrap());
}

#[test]
fn parse_errors_carry_position() {
    let err = parse_element("e^(1/2) + * 3").unwrap_err().to_string();
    assert!(err.contains("col"), "{err}");
}
