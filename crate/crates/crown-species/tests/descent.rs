use proptest::prelude::*;

use crown_species::checks::{
    check_alpha_intertwiner, check_block_shifts, check_negative_controls, check_normal_form_intertwining,
    check_orbit_invariance, check_string_twists, check_summand_orthogonality, family_from_definition,
    intertwiner_alpha_diag, verify_kronecker, ShiftConvention,
};
use crown_species::descent::{
    alpha_matrix, alpha_of, build_cocycle_equal, build_cocycle_large, build_cocycle_m_a, build_cocycle_small,
    build_cocycle_string, certify_lambda, certify_regular_simple, endomorphism_count, find_family_witness,
    normal_form_homogeneous, normal_form_nonhomogeneous, orbit_sum, rep_family, rep_m_a, shift_matrix,
    verify_cocycle, Family, LambdaRep, Variant, Witness,
};
use crown_species::error::Error;
use crown_species::reps::{is_ii, MatK};
use crown_species::scalars::{el, FieldTowerCtx, PuiseuxElement};

fn generic(m: u32) -> impl Strategy<Value = PuiseuxElement> {
    // leading ε^{k/m} with gcd(k, m) = 1 plus a higher integral tail keeps the element generic
    (1i64..m as i64 * 3, -2i64..=2, 0i64..=2).prop_filter_map("coprime", move |(k, c, t)| {
        if num_integer::Integer::gcd(&k, &(m as i64)) != 1 {
            return None;
        }
        let s = if c == 0 { format!("e^({k}/{m})") } else { format!("e^({k}/{m}) + {c}*e^{}", k + t) };
        Some(el(&s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn band_cocycles_close((m, n) in prop_oneof![Just((2u32, 2u32)), Just((2, 3)), Just((3, 2)), Just((2, 4)), Just((3, 3))]
        .prop_flat_map(|(m, n)| (Just(m), Just(n))), seed in 0u32..1000) {
        let a = {
            let k = [1i64, 5, 7, 11][seed as usize % 4];
            let k = if num_integer::Integer::gcd(&k, &(m as i64)) == 1 { k } else { 1 };
            el(&format!("e^({k}/{m}) + {}*e^{}", seed % 3, k))
        };
        let ctx = FieldTowerCtx::for_rams(&[12]);
        let datum = build_cocycle_m_a(&ctx, &a, m, n, 24).unwrap();
        let r = verify_cocycle(&datum);
        prop_assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn perturbed_cocycles_fail(a in generic(2), n in 2u32..=4) {
        let ctx = FieldTowerCtx::for_rams(&[12]);
        let datum = build_cocycle_m_a(&ctx, &a, 2, n, 24).unwrap();
        prop_assert!(check_negative_controls(&datum).passed());
    }

    #[test]
    fn orbit_sums_are_twist_invariant(a in generic(3)) {
        prop_assert!(is_ii(&orbit_sum(&rep_m_a(&a, 2, 6).unwrap(), 3).unwrap()).unwrap());
    }
}

#[test]
fn cocycle_constructions() {
    let ctx = FieldTowerCtx::for_rams(&[20]);
    for n in 2..=4 {
        let r = verify_cocycle(&build_cocycle_equal(&el(&format!("e^(1/{n})")), n).unwrap());
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.params["l"], n.to_string());
    }
    for (m, n) in [(2, 3), (2, 4), (2, 5), (3, 4)] {
        let d = build_cocycle_small(&ctx, &el(&format!("e^(1/{m})")), m, n, 24).unwrap();
        assert!(verify_cocycle(&d).passed());
    }
    for (m, n) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
        let d = build_cocycle_large(&ctx, &el(&format!("e^(1/{m})")), m, n, 24).unwrap();
        assert!(verify_cocycle(&d).passed());
    }
    assert!(build_cocycle_small(&ctx, &el("e^(1/3)"), 3, 2, 24).is_err());
    assert!(build_cocycle_large(&ctx, &el("e^(1/2)"), 2, 3, 24).is_err());
}

#[test]
fn degenerate_cocycles_are_exact() {
    let ctx = FieldTowerCtx::for_rams(&[4]);
    for (m, n) in [(2, 4), (4, 2)] {
        let d = build_cocycle_m_a(&ctx, &el(&format!("e^(1/{m})")), m, n, 24).unwrap();
        assert!(d.f.iter().all(|f| f.is_exact()));
        let r = verify_cocycle(&d);
        assert!(r.passed());
        assert!(r.details.iter().all(|x| x.precision == "exact"));
    }
}

#[test]
fn string_cocycles() {
    for n in 2..=5 {
        for j in 1..=n {
            for which in [Family::M, Family::N] {
                let r = verify_cocycle(&build_cocycle_string(j, n, which).unwrap());
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }
}

#[test]
fn cocycle_preconditions() {
    let ctx = FieldTowerCtx::for_rams(&[6]);
    assert!(matches!(build_cocycle_m_a(&ctx, &el("e"), 2, 3, 24), Err(Error::NotGeneric)));
    let inexact = el("e^(1/2) + O(e^3)");
    assert!(matches!(build_cocycle_m_a(&ctx, &inexact, 2, 3, 24), Err(Error::Inexact)));
}

#[test]
fn shift_matrix_layout() {
    assert_eq!(shift_matrix(2), MatK::parse("0, 1; 1, 0").unwrap());
    assert_eq!(shift_matrix(3).pow(3).unwrap(), MatK::identity(3));
}

#[test]
fn families_agree_with_their_definitions() {
    for n in 1..=5 {
        for j in 1..=n {
            for which in [Family::M, Family::N] {
                assert_eq!(rep_family(which, j, n).unwrap(), family_from_definition(which, j, n).unwrap());
            }
        }
        assert!(check_string_twists(n).passed());
    }
}

#[test]
fn block_identities() {
    for j in 2..=6 {
        for n in j..=6 {
            let r = check_block_shifts(j, n);
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}

#[test]
fn normal_form_intertwining_uses_backward_shift() {
    for j in 1..=6 {
        assert!(check_normal_form_intertwining(j, ShiftConvention::Backward).passed());
    }
    assert!(!check_normal_form_intertwining(3, ShiftConvention::Forward).passed());
}

#[test]
fn alpha_matrices() {
    let a2 = alpha_matrix(2, &el("e"));
    assert_eq!(a2, MatK::parse("0, 1; e, 0").unwrap());
    assert_eq!(a2.mul(&a2).unwrap(), MatK::identity(2).scale(&el("e")));
    assert_eq!(alpha_matrix(1, &el("e^(1/2)")), MatK::scalar(el("e^(1/2)")));
    for m in 2..=4 {
        assert_eq!(alpha_of(&PuiseuxElement::eps(1, m)).unwrap(), alpha_matrix(m as usize, &el("e")));
    }
}

#[test]
fn intertwiners() {
    let a = intertwiner_alpha_diag(&el("e^(1/2)")).unwrap();
    assert!(!a.det().unwrap().is_zero());
    for x in ["e^(1/2)", "e^(1/3)", "e^(1/2) + e"] {
        assert!(check_alpha_intertwiner(&el(x)).passed());
    }
}

#[test]
fn kronecker_specialisation() {
    for n in 2..=3 {
        let r = verify_kronecker(&PuiseuxElement::eps(1, n), n);
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn homogeneous_normal_forms_certify() {
    for (x, n, m) in [("e^(1/2) + e", 2, 2), ("e^(1/3)", 2, 3), ("e^(1/2)", 3, 2)] {
        let x = el(x);
        let l = normal_form_homogeneous(&x, n, m).unwrap();
        let r = certify_lambda(&l, m, Some(&Witness::Band(x.pow(n as u64))));
        assert!(r.passed(), "{}", r.to_text());
        assert!(endomorphism_count(&l, m).passed());
        let wrong = certify_lambda(&l, m, Some(&Witness::Band(x.pow(n as u64).invert().unwrap())));
        assert!(!wrong.passed());
    }
    assert!(matches!(normal_form_homogeneous(&el("e"), 2, 2), Err(Error::NotGeneric)));
}

#[test]
fn nonhomogeneous_normal_forms_certify() {
    for n in 1..=4 {
        for j in 1..=n {
            for (variant, which) in [(Variant::BId, Family::N), (Variant::IdB, Family::M)] {
                let l = normal_form_nonhomogeneous(j, n, variant).unwrap();
                let r = certify_lambda(&l, n, None);
                assert!(r.passed(), "{}", r.to_text());
                assert_eq!(r.params["witness"], Witness::Family(which, j).to_string());
            }
        }
    }
}

#[test]
fn nonhomogeneous_endomorphism_count() {
    // twists of a family member are pairwise non-isomorphic but not Hom-orthogonal once j > 1
    for n in 2..=4 {
        for j in 1..=n {
            let l = normal_form_nonhomogeneous(j, n, Variant::BId).unwrap();
            let r = endomorphism_count(&l, n);
            assert_eq!(r.details[0].got, (n * j).to_string());
            assert_eq!(r.passed(), j == 1);
        }
    }
}

#[test]
fn witness_summands() {
    let base = rep_m_a(&el("e^(1/3)"), 2, 6).unwrap();
    assert!(certify_regular_simple(&base, 3).passed());
    assert!(check_summand_orthogonality(&base, 3).passed());
    assert!(check_orbit_invariance(&el("e^(1/3)"), 3, 2).passed());
    let doubled = base.direct_sum(&base).unwrap();
    assert!(!certify_regular_simple(&doubled, 3).passed());
    let string = rep_family(Family::M, 2, 3).unwrap();
    assert!(certify_regular_simple(&string, 3).passed());
    assert!(!check_summand_orthogonality(&string, 3).passed());
}

#[test]
fn witness_search_finds_nothing_for_bands() {
    let l = normal_form_homogeneous(&el("e^(1/3)"), 2, 3).unwrap();
    let r = l.base_change(6).unwrap();
    assert!(find_family_witness(&r, 3).is_none());
    assert_eq!(certify_lambda(&l, 3, None).status, crown_species::report::Status::Undecided);
}

#[test]
fn lambda_file_round_trip() {
    let l = normal_form_nonhomogeneous(2, 3, Variant::IdB).unwrap();
    let w = Witness::Family(Family::M, 2);
    let text = l.to_file(Some(3), Some(&w));
    let parsed = LambdaRep::parse_file(&text).unwrap();
    assert_eq!(parsed.rep, l);
    assert_eq!(parsed.period, Some(3));
    assert_eq!(parsed.witness, Some(w));
}

#[test]
fn lambda_file_errors() {
    let bad_entry = "lambda-rep n=2 m=1 mp=1\nA:\n  e^(1/2\nB:\n1\n";
    match LambdaRep::parse_file(bad_entry) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    let bad_shape = "lambda-rep n=2 m=2 mp=1\nA:\n1\nB:\n1\n";
    assert!(matches!(LambdaRep::parse_file(bad_shape), Err(Error::Parse { .. })));
    let no_header = "A:\n1\n";
    assert!(matches!(LambdaRep::parse_file(no_header), Err(Error::Parse { line: 1, .. })));
    let ram = "lambda-rep n=2 m=1 mp=1\nA:\ne^(1/3)\nB:\n1\n";
    assert!(LambdaRep::parse_file(ram).is_err());
}

#[test]
fn kronecker_twist_is_trivial_on_constant_modules() {
    let m = rep_family(Family::M, 1, 1).unwrap().with_d(3).unwrap();
    assert_eq!(m.twist(1), m);
}
