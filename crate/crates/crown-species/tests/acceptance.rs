use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crown_species::checks::{
    check_alpha_intertwiner, check_block_shifts, check_negative_controls, check_root_extraction,
    check_string_defects, check_string_twists, check_vandermonde, verify_kronecker,
};
use crown_species::cli::{cmd_verify, Format, Params};
use crown_species::descent::{
    build_cocycle_equal, build_cocycle_large, build_cocycle_m_a, build_cocycle_small, build_cocycle_string,
    certify_lambda, normal_form_homogeneous, normal_form_nonhomogeneous, verify_cocycle, Family, Variant,
    Witness,
};
use crown_species::report::VerificationReport;
use crown_species::scalars::{el, CycScalar, FieldTowerCtx, PuiseuxElement};
use crown_species::tensor::{check_beta_eigenvectors, verify_crown_identification, verify_idempotents};

struct Outcome {
    ok: bool,
    note: String,
}

impl Outcome {
    fn from_reports(reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        let mut count = 0;
        for r in reports {
            count += 1;
            if !r.passed() {
                let why = r.first_failure().map(|f| format!("{}: {} != {}", f.item, f.expected, f.got)).unwrap_or_default();
                return Outcome { ok: false, note: format!("{} [{}] {}", r.check, params(&r), why) };
            }
        }
        Outcome { ok: true, note: format!("{count} reports") }
    }
}

fn params(r: &VerificationReport) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn idempotents() -> Outcome {
    Outcome::from_reports((2..=6).flat_map(|n| [n, 2 * n].map(|d| verify_idempotents(d, n))))
}

fn crown_tables() -> Outcome {
    Outcome::from_reports([(2, 2), (2, 4), (3, 3), (3, 6), (4, 4)].map(|(n, d)| verify_crown_identification(d, n)))
}

fn beta_eigenvectors() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut reports = vec![];
    for n in 2..=4u32 {
        for _ in 0..50 {
            let len = rng.gen_range(1..=4);
            let terms: Vec<(i64, CycScalar)> = (0..len)
                .map(|_| {
                    let num = rng.gen_range(-5i64..=5);
                    let den = rng.gen_range(1i64..=3);
                    (rng.gen_range(-4i64..=8), CycScalar::from_rational(num_rational::BigRational::new(num.into(), den.into())))
                })
                .collect();
            let a = PuiseuxElement::new(n, terms, None);
            for j in 1..=n {
                reports.push(check_beta_eigenvectors(&a, n, n, j));
            }
        }
    }
    Outcome::from_reports(reports)
}

fn string_defects() -> Outcome {
    Outcome::from_reports((2..=6).map(check_string_defects))
}

fn cocycle_suite() -> Outcome {
    let ctx = FieldTowerCtx::for_rams(&[20]);
    let a = |m: u32| el(&format!("e^(1/{m})"));
    let mut reports = vec![];
    for n in 2..=4 {
        reports.push(build_cocycle_equal(&a(n), n).map(|d| verify_cocycle(&d)));
    }
    for (m, n) in [(2, 3), (2, 4), (2, 5), (3, 4)] {
        reports.push(build_cocycle_small(&ctx, &a(m), m, n, 24).map(|d| verify_cocycle(&d)));
    }
    for (m, n) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
        reports.push(build_cocycle_large(&ctx, &a(m), m, n, 24).map(|d| verify_cocycle(&d)));
    }
    for n in 2..=5 {
        for j in 1..=n {
            for which in [Family::M, Family::N] {
                reports.push(build_cocycle_string(j, n, which).map(|d| verify_cocycle(&d)));
            }
        }
    }
    match reports.into_iter().collect::<Result<Vec<_>, _>>() {
        Ok(rs) => Outcome::from_reports(rs),
        Err(e) => Outcome { ok: false, note: format!("construction error: {e}") },
    }
}

fn negative_controls() -> Outcome {
    let ctx = FieldTowerCtx::for_rams(&[12]);
    let mut reports = vec![];
    for (m, n) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        match build_cocycle_m_a(&ctx, &el(&format!("e^(1/{m}) + e")), m, n, 24) {
            Ok(d) => reports.push(check_negative_controls(&d)),
            Err(e) => return Outcome { ok: false, note: format!("construction error: {e}") },
        }
    }
    for n in 2..=4 {
        reports.push(check_negative_controls(&build_cocycle_string(2.min(n), n, Family::N).unwrap()));
    }
    Outcome::from_reports(reports)
}

fn root_extraction() -> Outcome {
    Outcome::from_reports((2..=4).map(|n| check_root_extraction(n, 100, n as u64, 20)))
}

fn certification() -> Outcome {
    let mut reports = vec![];
    for n in 1..=4 {
        for j in 1..=n {
            for variant in [Variant::BId, Variant::IdB] {
                let l = normal_form_nonhomogeneous(j, n, variant).unwrap();
                reports.push(certify_lambda(&l, n, None));
            }
        }
    }
    for (x, n, m) in [("e^(1/2) + e", 2, 2), ("e^(1/3)", 2, 3), ("e^(1/2)", 3, 2)] {
        let x = el(x);
        let l = normal_form_homogeneous(&x, n, m).unwrap();
        reports.push(certify_lambda(&l, m, Some(&Witness::Band(x.pow(n as u64)))));
    }
    for n in 2..=3 {
        reports.push(verify_kronecker(&PuiseuxElement::eps(1, n), n));
    }
    Outcome::from_reports(reports)
}

fn twist_and_shift_suites() -> Outcome {
    let twists = (1..=5).map(check_string_twists);
    let blocks = (2..=6).flat_map(|j| (j..=6).map(move |n| check_block_shifts(j, n)));
    Outcome::from_reports(twists.chain(blocks))
}

fn intertwiners() -> Outcome {
    let alpha = [2, 3].map(|m| check_alpha_intertwiner(&PuiseuxElement::eps(1, m)));
    let vander = [2, 3].map(|n| check_vandermonde(&PuiseuxElement::eps(1, n), n));
    Outcome::from_reports(alpha.into_iter().chain(vander))
}

fn determinism() -> Outcome {
    let p = Params { format: Format::Json, jobs: 4, ..Params::default() };
    let all = vec!["all".to_string()];
    match (cmd_verify(&all, &p), cmd_verify(&all, &Params { jobs: 1, ..p.clone() })) {
        (Ok((a, _)), Ok((b, _))) if a == b => Outcome { ok: true, note: format!("{} bytes identical", a.len()) },
        (Ok(_), Ok(_)) => Outcome { ok: false, note: "reports differ".into() },
        (Err(e), _) | (_, Err(e)) => Outcome { ok: false, note: e.to_string() },
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 11] = [
        ("idempotent suite", idempotents, Some(1)),
        ("tensor algebra vs crown path algebra tables", crown_tables, Some(5)),
        ("beta eigenvector closed forms", beta_eigenvectors, None),
        ("string and band defects", string_defects, None),
        ("cocycle suite", cocycle_suite, Some(30)),
        ("negative controls", negative_controls, None),
        ("root extraction", root_extraction, None),
        ("certification suite", certification, Some(60)),
        ("string twists and block shifts", twist_and_shift_suites, None),
        ("intertwiner and Vandermonde conjugation", intertwiners, None),
        ("determinism of machine reports", determinism, None),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if let Some(s) = budget {
            if took > Duration::from_secs(*s) {
                out.ok = false;
                out.note = format!("{} (over the {s} s budget)", out.note);
            }
        }
        if !out.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} ({:.2?})",
            k + 1,
            if out.ok { "PASS" } else { "FAIL" },
            out.note,
            took
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
