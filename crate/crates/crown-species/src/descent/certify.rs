use crate::report::{Status, VerificationReport};
use crate::reps::{end_dim, hom_space, iso_decision, Decision, Representation};

use super::families::{orbit_sum, Family};
use super::lambda::{descent_degree, LambdaRep, Witness};

fn decision_status(d: Decision) -> Status {
    match d {
        Decision::Yes => Status::Pass,
        Decision::No => Status::Fail,
        Decision::Undecided => Status::Undecided,
    }
}

/// Defect zero, one-dimensional endomorphisms, and twist period exactly `m`.
pub fn certify_regular_simple(rep: &Representation, m: u32) -> VerificationReport {
    let mut report = VerificationReport::new("regular-simple").param("m", m).param("d", rep.d());
    let defect = rep.defect();
    report.push("defect", "0", &defect.to_string(), "exact", defect == 0);
    match hom_space(rep, rep) {
        Ok(h) => report.push("dim End", "1", &h.dim.to_string(), &h.precision_note, h.dim == 1),
        Err(e) => report.push_status("dim End", "1", &e.to_string(), "exhausted", Status::Undecided),
    }
    let mut period = None;
    for p in 1..=rep.d() {
        match iso_decision(rep, &rep.twist(p as i64)) {
            Ok(Decision::Yes) => {
                period = Some(Ok(p));
                break;
            }
            Ok(Decision::No) => {}
            Ok(Decision::Undecided) | Err(_) => {
                period = Some(Err(p));
                break;
            }
        }
    }
    match period {
        Some(Ok(p)) => report.push("twist period", &m.to_string(), &p.to_string(), "exact", p == m),
        Some(Err(p)) => report.push_status(
            "twist period",
            &m.to_string(),
            &format!("undecided at {p}"),
            "exhausted",
            Status::Undecided,
        ),
        None => report.push("twist period", &m.to_string(), "none up to d", "exact", false),
    }
    report.finish()
}

/// Searches the string families for `N` with `⊕_{r<m} twist^r N ≅ R`.
pub fn find_family_witness(r: &Representation, m: u32) -> Option<Witness> {
    let n = r.n();
    for which in [Family::M, Family::N] {
        for j in 1..=n {
            let w = Witness::Family(which, j);
            let Ok(base) = w.build(n, r.d()) else { continue };
            let Ok(sum) = orbit_sum(&base, m) else { continue };
            if sum.dims() != r.dims() {
                continue;
            }
            if matches!(iso_decision(r, &sum), Ok(Decision::Yes)) {
                return Some(w);
            }
        }
    }
    None
}

/// Certifies `L` through a witness `N` over `k_d`, `d = lcm(n, m)`: `k_d ⊗ L` has defect zero and
/// is isomorphic to its twist, `N` passes [`certify_regular_simple`] with period `m`, and
/// `k_d ⊗ L ≅ ⊕_{r<m} twist^r N`. Without a witness the string families are searched.
pub fn certify_lambda(l: &LambdaRep, m: u32, witness: Option<&Witness>) -> VerificationReport {
    let d = descent_degree(l.n, m);
    let mut report = VerificationReport::new("certify").param("n", l.n).param("m", m).param("d", d);
    let r = match l.base_change(d) {
        Ok(r) => r,
        Err(e) => {
            report.push("base change", "valid", &e.to_string(), "exact", false);
            return report.finish();
        }
    };
    let defect = r.defect();
    report.push("defect", "0", &defect.to_string(), "exact", defect == 0);
    let twisted = r.twist(1);
    let ii = if twisted == r { Decision::Yes } else { iso_decision(&r, &twisted).unwrap_or(Decision::Undecided) };
    report.push_status("isomorphic to its twist", "yes", &format!("{ii:?}").to_lowercase(), "exact", decision_status(ii));
    let found;
    let witness = match witness {
        Some(w) => Some(w),
        None => {
            found = find_family_witness(&r, m);
            found.as_ref()
        }
    };
    match witness {
        None => report.push_status("witness", "a regular simple summand", "none found", "exact", Status::Undecided),
        Some(w) => {
            report = report.param("witness", w);
            match w.build(l.n, d) {
                Ok(base) => {
                    let sub = certify_regular_simple(&base, m);
                    report.absorb(sub);
                    match orbit_sum(&base, m) {
                        Ok(sum) => {
                            match (end_dim(&r), end_dim(&sum)) {
                                (Ok(got), Ok(want)) => report.push(
                                    "dim End matches orbit sum",
                                    &want.to_string(),
                                    &got.to_string(),
                                    "exact",
                                    got == want,
                                ),
                                _ => report.push_status("dim End matches orbit sum", "computable", "exhausted", "exhausted", Status::Undecided),
                            }
                            let dec = iso_decision(&r, &sum).unwrap_or(Decision::Undecided);
                            report.push_status(
                                "orbit sum of witness",
                                "isomorphic",
                                &format!("{dec:?}").to_lowercase(),
                                "exact",
                                decision_status(dec),
                            );
                        }
                        Err(e) => report.push("orbit sum of witness", "isomorphic", &e.to_string(), "exact", false),
                    }
                }
                Err(e) => report.push("witness", "constructible", &e.to_string(), "exact", false),
            }
        }
    }
    report.finish()
}

/// `dim End(k_d ⊗ L)` against the number of twist summands `m`.
pub fn endomorphism_count(l: &LambdaRep, m: u32) -> VerificationReport {
    let d = descent_degree(l.n, m);
    let mut report = VerificationReport::new("endomorphism-count").param("n", l.n).param("m", m).param("d", d);
    match l.base_change(d).and_then(|r| end_dim(&r)) {
        Ok(k) => report.push("dim End", &m.to_string(), &k.to_string(), "exact", k == m as usize),
        Err(e) => report.push_status("dim End", &m.to_string(), &e.to_string(), "exhausted", Status::Undecided),
    }
    report.finish()
}
