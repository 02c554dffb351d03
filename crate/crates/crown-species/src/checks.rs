//! Named verifications: each returns a [`VerificationReport`] over exact or truncated data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crown::{CrownQuiver, Vertex};
use crate::descent::{
    alpha_of, certify_lambda, companion, min_poly, normal_form_homogeneous, orbit_datum, orbit_diagonal, orbit_sum,
    rep_family_m, rep_m_a, shift_matrix, shift_matrix_inv, vandermonde, verify_cocycle, build_cocycle_m_a,
    DescentDatum, Family, Witness,
};
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};
use crate::reps::{hom_space, is_ii, iso_decision, kernel, smallest_twist_period, string_module, Decision, MatK, Representation};
use crate::scalars::{nth_root, CycScalar, FieldTowerCtx, PuiseuxElement};

/// Every listed string has defect zero exactly when its length is odd; the band has defect zero.
pub fn check_string_defects(n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("string-defects").param("n", n);
    let q = match CrownQuiver::new(n) {
        Ok(q) => q,
        Err(e) => {
            rep.push("quiver", "n ≥ 1", &e.to_string(), "exact", false);
            return rep.finish();
        }
    };
    let strings = q.strings();
    let bad: Vec<String> = strings
        .iter()
        .filter(|s| (q.defect(&s.dim_vector()) == 0) != (s.len() % 2 == 1))
        .map(|s| format!("{} from {}", s, s.start()))
        .collect();
    rep.push(
        "defect zero iff odd length",
        &format!("{} strings", strings.len()),
        &if bad.is_empty() { "all agree".to_string() } else { bad.join("; ") },
        "exact",
        bad.is_empty(),
    );
    let band = q.the_band();
    let defect = q.defect(&band.dim_vector());
    rep.push("band defect", "0", &defect.to_string(), "exact", defect == 0);
    rep.finish()
}

/// `M_(j)` or `N_(j)` assembled from their vertex and arrow descriptions rather than from a word.
pub fn family_from_definition(which: Family, j: u32, n: u32) -> Result<Representation> {
    if j == 0 || j > n {
        return Err(Error::OutOfRange(format!("family index {j} outside 1..={n}")));
    }
    let q = CrownQuiver::new(n)?;
    let mut dims = vec![0usize; 2 * n as usize];
    let (sources, sinks, a_arms, b_arms): (Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>) = match which {
        Family::M => ((1..=j).collect(), (1..=j).collect(), (1..=j).collect(), (2..=j).collect()),
        Family::N => ((1..=j).collect(), (2..=j + 1).collect(), (2..=j).collect(), (2..=j + 1).collect()),
    };
    for i in sources {
        dims[q.vertex_position(Vertex::Source(i))] = 1;
    }
    for i in sinks {
        dims[q.vertex_position(Vertex::Sink(q.wrap(i as i64)))] = 1;
    }
    let on = |arms: &[u32], i: u32| arms.iter().any(|&k| q.wrap(k as i64) == i);
    let mats: Vec<MatK> = q
        .arrows()
        .into_iter()
        .map(|a| {
            let (t, h) = (q.tail(a), q.head(a));
            let (rows, cols) = (dims[q.vertex_position(h)], dims[q.vertex_position(t)]);
            let active = match a {
                crate::crown::Arrow::A(i) => on(&a_arms, i),
                crate::crown::Arrow::B(i) => on(&b_arms, i),
            };
            if active && rows == 1 && cols == 1 {
                MatK::identity(1)
            } else {
                MatK::zero(rows, cols)
            }
        })
        .collect();
    Representation::new(q, n, dims, mats)
}

/// The string-module descriptions of both families and of their twists.
pub fn check_string_twists(n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("string-twists").param("n", n);
    let run = |rep: &mut VerificationReport| -> Result<()> {
        let q = CrownQuiver::new(n)?;
        for j in 1..=n {
            let len = 2 * j - 1;
            for (which, start, name) in [(Family::M, Vertex::Sink(1), "M"), (Family::N, Vertex::Source(1), "N")] {
                let base = family_from_definition(which, j, n)?;
                let word = q.string_word(start, len)?;
                let from_word = string_module(&q, &word, n)?;
                rep.push(
                    &format!("{name}_({j}) = M(s_{{{start},{len}}})"),
                    "equal",
                    if base == from_word { "equal" } else { "different" },
                    "exact",
                    base == from_word,
                );
                for i in 1..n {
                    let target_start = match which {
                        Family::M => Vertex::Sink(n + 1 - i),
                        Family::N => Vertex::Source(n + 1 - i),
                    };
                    let target = string_module(&q, &q.string_word(target_start, len)?, n)?;
                    let twisted = base.twist(i as i64);
                    rep.push(
                        &format!("twist^{i} {name}_({j}) = M(s_{{{target_start},{len}}})"),
                        "equal",
                        if twisted == target { "equal" } else { "different" },
                        "exact",
                        twisted == target,
                    );
                }
            }
        }
        Ok(())
    };
    if let Err(e) = run(&mut rep) {
        rep.push("setup", "valid parameters", &e.to_string(), "exact", false);
    }
    rep.finish()
}

/// `B_i`: `id_j − E_{j+1-i, j+1-i}` for `i ≤ j`, the subdiagonal block otherwise.
pub fn block_matrix(i: u32, j: u32) -> MatK {
    let j = j as usize;
    if i as usize <= j {
        let mut b = MatK::identity(j);
        let k = j - i as usize;
        b.set(k, k, PuiseuxElement::zero());
        b
    } else {
        crate::descent::subdiagonal_block(j)
    }
}

/// The commutation rules between `E_j^{-1}` and the blocks `B_i` of the orbit sum of `M_(j)`.
pub fn check_block_shifts(j: u32, n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("block-shifts").param("j", j).param("n", n);
    if j == 0 || j > n {
        rep.push("index", &format!("1..={n}"), &j.to_string(), "exact", false);
        return rep.finish();
    }
    let einv = shift_matrix_inv(j as usize);
    let b = |i: u32| block_matrix(i, j);
    let mut eq = |name: String, lhs: MatK, rhs: MatK| {
        let ok = lhs == rhs;
        rep.push(&name, &rhs.to_string(), &lhs.to_string(), "exact", ok);
    };
    for i in 1..j {
        eq(format!("E^-1 B_{i} = B_{} E^-1", i + 1), einv.mul(&b(i)).unwrap(), b(i + 1).mul(&einv).unwrap());
    }
    if j < n {
        eq(format!("B_{j} = B_{} E^-1", j + 1), b(j), b(j + 1).mul(&einv).unwrap());
        eq(format!("E^-1 B_{n} = B_1"), einv.mul(&b(n)).unwrap(), b(1));
    } else {
        eq(format!("E^-1 B_{n} = B_1 E^-1"), einv.mul(&b(n)).unwrap(), b(1).mul(&einv).unwrap());
    }
    rep.finish()
}

/// Which power of the cyclic shift is used for the normal-form isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftConvention {
    /// `E e_k = e_{k+1}`
    Forward,
    /// `E e_k = e_{k-1}`
    Backward,
}

/// `B E^{j+1-i} = E^{j-i} B_i` for `1 ≤ i ≤ j`, `B` the subdiagonal block.
pub fn check_normal_form_intertwining(j: u32, convention: ShiftConvention) -> VerificationReport {
    let mut rep = VerificationReport::new("normal-form-intertwining")
        .param("j", j)
        .param("shift", format!("{convention:?}").to_lowercase());
    if j == 0 {
        rep.push("index", "j ≥ 1", "0", "exact", false);
        return rep.finish();
    }
    let e = match convention {
        ShiftConvention::Forward => shift_matrix(j as usize),
        ShiftConvention::Backward => shift_matrix_inv(j as usize),
    };
    let s = crate::descent::subdiagonal_block(j as usize);
    for i in 1..=j {
        let lhs = s.mul(&e.pow(j + 1 - i).unwrap()).unwrap();
        let rhs = e.pow(j - i).unwrap().mul(&block_matrix(i, j)).unwrap();
        let ok = lhs == rhs;
        rep.push(&format!("B E^{} = E^{} B_{i}", j + 1 - i, j - i), &rhs.to_string(), &lhs.to_string(), "exact", ok);
    }
    rep.finish()
}

/// An invertible `A` with `α(x) A = A D_x`, found in the kernel of the linear system.
pub fn intertwiner_alpha_diag(x: &PuiseuxElement) -> Result<MatK> {
    let alpha = alpha_of(x)?;
    let diag = orbit_diagonal(x)?;
    let m = alpha.rows();
    let var = |i: usize, j: usize| i * m + j;
    let mut rows = vec![];
    for i in 0..m {
        for j in 0..m {
            let mut row: BTreeMap<usize, PuiseuxElement> = BTreeMap::new();
            for k in 0..m {
                let a = alpha.get(i, k);
                if !a.is_exact_zero() {
                    let e = row.entry(var(k, j)).or_insert_with(PuiseuxElement::zero);
                    *e = e.add(a);
                }
            }
            let e = row.entry(var(i, j)).or_insert_with(PuiseuxElement::zero);
            *e = e.sub(diag.get(j, j));
            row.retain(|_, v| !v.is_exact_zero());
            rows.push(row);
        }
    }
    let ker = kernel(rows, m * m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for round in 0..16 {
        let mut a = MatK::zero(m, m);
        for v in &ker.vectors {
            let w = if round == 0 { 1 } else { rng.gen_range(-15i64..=15) };
            if w == 0 {
                continue;
            }
            let w = PuiseuxElement::from_int(w);
            for i in 0..m {
                for j in 0..m {
                    let cur = a.get(i, j).add(&v[var(i, j)].mul(&w));
                    a.set(i, j, cur);
                }
            }
        }
        if !a.det()?.is_zero() {
            return Ok(a);
        }
    }
    Err(Error::PrecisionExhausted("no invertible intertwiner found".into()))
}

pub fn check_alpha_intertwiner(x: &PuiseuxElement) -> VerificationReport {
    let mut rep = VerificationReport::new("alpha-intertwiner").param("x", x);
    let run = |rep: &mut VerificationReport| -> Result<()> {
        let a = intertwiner_alpha_diag(x)?;
        let alpha = alpha_of(x)?;
        let diag = orbit_diagonal(x)?;
        let lhs = alpha.mul(&a)?;
        let rhs = a.mul(&diag)?;
        rep.push("α(x) A = A D_x", &rhs.to_string(), &lhs.to_string(), "exact", lhs.agrees_with(&rhs));
        let det = a.det()?;
        rep.push("det A", "nonzero", &det.to_string(), "exact", !det.is_zero());
        Ok(())
    };
    if let Err(e) = run(&mut rep) {
        rep.push_status("intertwiner", "found", &e.to_string(), "exhausted", Status::Undecided);
    }
    rep.finish()
}

/// `V^{-1} D_a V = C(p)`, checked as `D_a V = V C(p)` with `det V ≠ 0`.
pub fn check_vandermonde(a: &PuiseuxElement, n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("vandermonde").param("a", a).param("n", n);
    let run = |rep: &mut VerificationReport| -> Result<()> {
        let coeffs = min_poly(a)?;
        let shown: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        rep.push("minimal polynomial over k", "coefficients in k", &shown.join(", "), "exact", true);
        let c = companion(&coeffs);
        let v = vandermonde(a, n as usize)?;
        let d = orbit_diagonal(a)?;
        let det = v.det()?;
        rep.push("det V", "nonzero", &det.to_string(), "exact", !det.is_zero());
        let lhs = d.mul(&v)?;
        let rhs = v.mul(&c)?;
        rep.push("V^-1 D_a V = C(p)", &rhs.to_string(), &lhs.to_string(), "exact", lhs == rhs);
        Ok(())
    };
    if let Err(e) = run(&mut rep) {
        rep.push("setup", "generic a", &e.to_string(), "exact", false);
    }
    rep.finish()
}

/// The specialisation to the Kronecker quiver (`n = 1` crown) with `a ∈ k_m` generic: the
/// companion form, the shift cocycles on the orbit sums of `M_a` and `M_(1)`, and
/// certification of `[α(a) id_m]`.
pub fn verify_kronecker(a: &PuiseuxElement, m: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("kronecker").param("a", a).param("m", m);
    rep.absorb(check_vandermonde(a, m));
    let ctx = FieldTowerCtx::for_rams(&[m]);
    match build_cocycle_m_a(&ctx, a, m, 1, ctx.default_prec) {
        Ok(datum) => {
            let shift = shift_matrix_inv(m as usize);
            let all_shift = datum.f.iter().all(|f| *f == shift);
            rep.push("band datum components", "cyclic shift", if all_shift { "cyclic shift" } else { "other" }, "exact", all_shift);
            rep.absorb(verify_cocycle(&datum));
        }
        Err(e) => rep.push("band datum", "constructed", &e.to_string(), "exact", false),
    }
    let string_datum = rep_family_m(1, 1)
        .and_then(|r| r.with_d(m))
        .and_then(|r| {
            let id: Vec<MatK> = r.dims().iter().map(|&k| MatK::identity(k)).collect();
            orbit_datum(&r, m, &id, m)
        });
    match string_datum {
        Ok(datum) => rep.absorb(verify_cocycle(&datum)),
        Err(e) => rep.push("string datum", "constructed", &e.to_string(), "exact", false),
    }
    match normal_form_homogeneous(a, 1, m) {
        Ok(l) => rep.absorb(certify_lambda(&l, m, Some(&Witness::Band(a.clone())))),
        Err(e) => rep.push("normal form", "constructed", &e.to_string(), "exact", false),
    }
    rep.finish()
}

/// A deterministic exact element of `k` with leading coefficient `±s^n`, so that its `n`-th root
/// has a leading coefficient in a cyclotomic field.
pub fn sample_series(rng: &mut ChaCha8Rng, n: u32) -> PuiseuxElement {
    let v = rng.gen_range(-6i64..=6);
    let s = rng.gen_range(1i64..=3);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let lead = BigInt::from(s).pow(n) * sign;
    let mut terms = vec![(v, CycScalar::from_rational(BigRational::from_integer(lead)))];
    for k in 1..=rng.gen_range(0usize..=4) {
        let num = rng.gen_range(-5i64..=5);
        let den = rng.gen_range(1i64..=4);
        let gap = k as i64 + rng.gen_range(0i64..=2);
        terms.push((v + gap, CycScalar::from_rational(BigRational::new(num.into(), den.into()))));
    }
    PuiseuxElement::new(1, terms, None)
}

/// `a = b^n ε^m` to `codeg(a) + rel` and `m ≡ codeg(a) (mod n)` on `count` sampled inputs.
pub fn check_root_extraction(n: u32, count: usize, seed: u64, rel: i64) -> VerificationReport {
    let mut rep = VerificationReport::new("root-extraction")
        .param("n", n)
        .param("count", count)
        .param("seed", seed)
        .param("rel", rel);
    let ctx = match FieldTowerCtx::new(2 * n, rel) {
        Ok(c) => c,
        Err(e) => {
            rep.push("setup", "context", &e.to_string(), "exact", false);
            return rep.finish();
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = vec![];
    for k in 0..count {
        let a = sample_series(&mut rng, n);
        let v = a.codeg().finite().expect("nonzero sample");
        let ok = match nth_root(&ctx, &a, n, rel) {
            Ok((b, m)) => {
                let back = b.pow(n as u64).shift(m as i64);
                let deep = back.prec().map_or(true, |p| p >= v + rel);
                (m as i64 - v).rem_euclid(n as i64) == 0 && back.agrees_with(&a) && deep
            }
            Err(_) => false,
        };
        if !ok {
            failures.push(format!("#{k}: {a}"));
        }
    }
    rep.push(
        "a = b^n e^m",
        &format!("{count} inputs"),
        &if failures.is_empty() { format!("{count} agree") } else { failures.join("; ") },
        &format!("O(e^(codeg+{rel}))"),
        failures.is_empty(),
    );
    rep.finish()
}

/// `Π_{i<n} σ^i(ε^{j/n}) = (−1)^{j(n−1)} ε^j` for `0 ≤ j < n`.
pub fn check_orbit_product(n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("orbit-product").param("n", n);
    for j in 0..n as i64 {
        let x = PuiseuxElement::eps(j, n);
        let mut acc = PuiseuxElement::one();
        for i in 0..n as i64 {
            acc = acc.mul(&x.sigma(i));
        }
        let sign = if (j * (n as i64 - 1)) % 2 == 0 { 1 } else { -1 };
        let expected = PuiseuxElement::from_int(sign).mul(&PuiseuxElement::eps(j, 1));
        rep.push(&format!("orbit product of e^({j}/{n})"), &expected.to_string(), &acc.to_string(), "exact", acc == expected);
    }
    rep.finish()
}

/// The orbit sum of `M_a` over `k_d` is isomorphic to its twist, and `M_a` has twist period `m`.
pub fn check_orbit_invariance(a: &PuiseuxElement, m: u32, n: u32) -> VerificationReport {
    let d = crate::descent::descent_degree(n, m);
    let mut rep = VerificationReport::new("orbit-invariance").param("a", a).param("m", m).param("n", n).param("d", d);
    let run = |rep: &mut VerificationReport| -> Result<()> {
        let base = rep_m_a(a, n, d)?;
        let sum = orbit_sum(&base, m)?;
        let ii = is_ii(&sum)?;
        rep.push("orbit sum isomorphic to its twist", "yes", if ii { "yes" } else { "no" }, "exact", ii);
        let p = smallest_twist_period(&base)?;
        rep.push("twist period of M_a", &m.to_string(), &p.to_string(), "exact", p == m);
        Ok(())
    };
    if let Err(e) = run(&mut rep) {
        rep.push_status("setup", "decidable", &e.to_string(), "exhausted", Status::Undecided);
    }
    rep.finish()
}

/// `dim Hom(twist^r N, twist^s N) = δ_{rs}` for `r, s < m`, and twisting moves summand `r` to `r+1 mod m`.
pub fn check_summand_orthogonality(base: &Representation, m: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("summand-orthogonality").param("m", m).param("d", base.d());
    let parts: Vec<Representation> = (0..m as i64).map(|r| base.twist(r)).collect();
    let mut wrong = vec![];
    let mut undecided = false;
    for (r, x) in parts.iter().enumerate() {
        for (s, y) in parts.iter().enumerate() {
            match hom_space(x, y) {
                Ok(h) if h.dim == usize::from(r == s) => {}
                Ok(h) => wrong.push(format!("({r},{s}):{}", h.dim)),
                Err(_) => undecided = true,
            }
        }
    }
    let status = if !wrong.is_empty() {
        Status::Fail
    } else if undecided {
        Status::Undecided
    } else {
        Status::Pass
    };
    rep.push_status(
        "hom dimensions",
        "identity pattern",
        &if wrong.is_empty() { "identity pattern".to_string() } else { wrong.join(" ") },
        "exact",
        status,
    );
    let mut cycle = Status::Pass;
    for (r, x) in parts.iter().enumerate() {
        let next = &parts[(r + 1) % m as usize];
        let st = match iso_decision(&x.twist(1), next) {
            Ok(Decision::Yes) => Status::Pass,
            Ok(Decision::No) => Status::Fail,
            _ => Status::Undecided,
        };
        cycle = cycle.combine(st);
    }
    rep.push_status("twist cycles the summands", "yes", cycle.as_str(), "exact", cycle);
    rep.finish()
}

/// A cocycle scaled by `2` at one vertex, and the same cocycle with order one less, must both fail.
pub fn check_negative_controls(datum: &DescentDatum) -> VerificationReport {
    let mut rep = VerificationReport::new("negative-controls").param("l", datum.order);
    let scaled = verify_cocycle(&datum.perturbed(0, &PuiseuxElement::from_int(2)));
    rep.push("scaled component", "fail", scaled.status.as_str(), "exact", scaled.status == Status::Fail);
    if datum.order > 1 {
        let short = verify_cocycle(&datum.with_order(datum.order - 1));
        rep.push("shortened order", "fail", short.status.as_str(), "exact", short.status == Status::Fail);
    }
    rep.finish()
}
