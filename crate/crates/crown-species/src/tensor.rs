//! The algebras `k_d ⊗_k k_n` and `k_d ⊗_k Λ_n` in explicit coordinates, the idempotents
//! `β_j`, and the identification of `k_d ⊗ Λ_n` with the crown path algebra.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalars::{CycScalar, PuiseuxElement};

/// An element of `k_d ⊗_k k_n`, stored by its `k_d`-coordinates on `{1 ⊗ ε^{l/n}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    d: u32,
    n: u32,
    coords: Vec<PuiseuxElement>,
}

fn check_dn(d: u32, n: u32) -> Result<()> {
    if n == 0 || d % n != 0 {
        return Err(Error::RamDivisibility { from: n, to: d });
    }
    Ok(())
}

impl TensorElement {
    pub fn new(d: u32, n: u32, coords: Vec<PuiseuxElement>) -> Result<Self> {
        check_dn(d, n)?;
        if coords.len() != n as usize {
            return Err(Error::Shape(format!("expected {n} coordinates, got {}", coords.len())));
        }
        Ok(TensorElement { d, n, coords })
    }

    pub fn zero(d: u32, n: u32) -> Self {
        TensorElement { d, n, coords: vec![PuiseuxElement::zero(); n as usize] }
    }

    pub fn one(d: u32, n: u32) -> Self {
        Self::left(d, n, PuiseuxElement::one())
    }

    /// `c ⊗ 1` for `c ∈ k_d`.
    pub fn left(d: u32, n: u32, c: PuiseuxElement) -> Self {
        let mut t = Self::zero(d, n);
        t.coords[0] = c;
        t
    }

    /// `1 ⊗ a` for `a ∈ k_n`: the exponent classes of `a` mod `n` become coordinates,
    /// the integral parts move into the left factor.
    pub fn right(d: u32, n: u32, a: &PuiseuxElement) -> Result<Self> {
        let a = a.embed(n)?;
        let mut t = Self::zero(d, n);
        for (e, c) in a.terms() {
            let l = e.rem_euclid(n as i64);
            let q = (e - l) / n as i64;
            t.coords[l as usize] = t.coords[l as usize].add(&PuiseuxElement::monomial(c.clone(), q, 1));
        }
        if let Some(p) = a.prec() {
            let bound = PuiseuxElement::new(1, [], Some(p.div_euclid(n as i64)));
            for c in t.coords.iter_mut() {
                *c = c.add(&bound);
            }
        }
        Ok(t)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[PuiseuxElement] {
        &self.coords
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.n != other.n {
            return Err(Error::Shape(format!(
                "tensor factors differ: ({},{}) vs ({},{})",
                self.d, self.n, other.d, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect();
        Ok(TensorElement { d: self.d, n: self.n, coords })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect();
        Ok(TensorElement { d: self.d, n: self.n, coords })
    }

    /// Multiplication: `(1⊗ε^{l/n})(1⊗ε^{l'/n})` carries `ε` into the left factor once
    /// `l + l' ≥ n`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.n as usize;
        let eps = PuiseuxElement::eps(1, 1);
        let mut out = vec![PuiseuxElement::zero(); n];
        for (l, a) in self.coords.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (m, b) in other.coords.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                let mut p = a.mul(b);
                let mut k = l + m;
                if k >= n {
                    k -= n;
                    p = p.mul(&eps);
                }
                out[k] = out[k].add(&p);
            }
        }
        Ok(TensorElement { d: self.d, n: self.n, coords: out })
    }

    /// Left multiplication by `c ∈ k_d`.
    pub fn scale(&self, c: &PuiseuxElement) -> Self {
        TensorElement { d: self.d, n: self.n, coords: self.coords.iter().map(|x| x.mul(c)).collect() }
    }

    /// `σ_d^j ⊗ id`.
    pub fn sigma_left(&self, j: i64) -> Self {
        TensorElement { d: self.d, n: self.n, coords: self.coords.iter().map(|x| x.sigma(j)).collect() }
    }

    /// `id ⊗ σ_n^j`: the root of unity from the right factor moves to the left.
    pub fn sigma_right(&self, j: i64) -> Self {
        let n = self.n;
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(l, x)| x.mul(&PuiseuxElement::constant(CycScalar::zeta(n, j * l as i64))))
            .collect();
        TensorElement { d: self.d, n, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl std::fmt::Display for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (l, c) in self.coords.iter().enumerate() {
            if l > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `σ_d ⊗ id` applied `j` times; on the `β` basis it shifts `β_i ↦ β_{i-j}` cyclically.
pub fn sigma_tensor(x: &TensorElement, j: i64) -> TensorElement {
    x.sigma_left(j)
}

/// The idempotents `β_1..β_n`, with
/// `β_j = (1/(nε)) Σ_l ε^{(n-l)/n} ⊗ σ^{j-1}(ε^{l/n})`.
pub fn beta_basis(d: u32, n: u32) -> Result<Vec<TensorElement>> {
    check_dn(d, n)?;
    let inv_n = CycScalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(n)));
    Ok((1..=n)
        .map(|j| {
            let coords = (0..n)
                .map(|l| {
                    // ε^{(n-l)/n} / ε = ε^{-l/n}, embedded into k_d
                    let c = inv_n.mul(&CycScalar::zeta(n, (j as i64 - 1) * l as i64));
                    PuiseuxElement::monomial(c, -(l as i64), n).embed(d).expect("n | d")
                })
                .collect();
            TensorElement { d, n, coords }
        })
        .collect())
}

/// An element of `k_d ⊗ Λ_n`, `Λ_n = [[k_n, k_n ⊕ ^{σ}k_n], [0, k_n]]`, by blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaTensorElement {
    pub t11: TensorElement,
    pub t12a: TensorElement,
    pub t12b: TensorElement,
    pub t22: TensorElement,
}

impl LambdaTensorElement {
    pub fn zero(d: u32, n: u32) -> Self {
        let z = TensorElement::zero(d, n);
        LambdaTensorElement { t11: z.clone(), t12a: z.clone(), t12b: z.clone(), t22: z }
    }

    pub fn one(d: u32, n: u32) -> Self {
        let mut x = Self::zero(d, n);
        x.t11 = TensorElement::one(d, n);
        x.t22 = TensorElement::one(d, n);
        x
    }

    /// `[a,(u,v);0,b]·[a',(u',v');0,b'] = [aa', (au'+ub', σ(a)v'+vb'); 0, bb']`, with `σ`
    /// acting on the `Λ_n` side of the tensor product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(LambdaTensorElement {
            t11: self.t11.mul(&o.t11)?,
            t12a: self.t11.mul(&o.t12a)?.add(&self.t12a.mul(&o.t22)?)?,
            t12b: self.t11.sigma_right(1).mul(&o.t12b)?.add(&self.t12b.mul(&o.t22)?)?,
            t22: self.t22.mul(&o.t22)?,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(LambdaTensorElement {
            t11: self.t11.add(&o.t11)?,
            t12a: self.t12a.add(&o.t12a)?,
            t12b: self.t12b.add(&o.t12b)?,
            t22: self.t22.add(&o.t22)?,
        })
    }

    pub fn sigma_left(&self, j: i64) -> Self {
        LambdaTensorElement {
            t11: self.t11.sigma_left(j),
            t12a: self.t12a.sigma_left(j),
            t12b: self.t12b.sigma_left(j),
            t22: self.t22.sigma_left(j),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.t11.is_zero() && self.t12a.is_zero() && self.t12b.is_zero() && self.t22.is_zero()
    }
}

impl std::fmt::Display for LambdaTensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, ({}, {}); 0, {}]", self.t11, self.t12a, self.t12b, self.t22)
    }
}

/// The four families `β_{j1}, β_{j2}, β'_{j1}, β'_{j2}` (each of length `n`).
#[derive(Clone, Debug)]
pub struct LambdaBasis {
    pub b1: Vec<LambdaTensorElement>,
    pub b2: Vec<LambdaTensorElement>,
    pub b3: Vec<LambdaTensorElement>,
    pub b4: Vec<LambdaTensorElement>,
}

impl LambdaBasis {
    /// All `4n` elements, labelled by the crown quiver element they correspond to.
    pub fn labelled(&self) -> Vec<(PathElement, &LambdaTensorElement)> {
        let mut out = vec![];
        for (j, x) in self.b1.iter().enumerate() {
            out.push((PathElement::Source(j as u32 + 1), x));
        }
        for (j, x) in self.b2.iter().enumerate() {
            out.push((PathElement::ArrowA(j as u32 + 1), x));
        }
        for (j, x) in self.b3.iter().enumerate() {
            out.push((PathElement::ArrowB(j as u32 + 1), x));
        }
        for (j, x) in self.b4.iter().enumerate() {
            out.push((PathElement::Sink(j as u32 + 1), x));
        }
        out
    }
}

pub fn lambda_basis(d: u32, n: u32) -> Result<LambdaBasis> {
    let beta = beta_basis(d, n)?;
    let place = |slot: usize| -> Vec<LambdaTensorElement> {
        beta.iter()
            .map(|b| {
                let mut x = LambdaTensorElement::zero(d, n);
                match slot {
                    0 => x.t11 = b.clone(),
                    1 => x.t12a = b.clone(),
                    2 => x.t12b = b.clone(),
                    _ => x.t22 = b.clone(),
                }
                x
            })
            .collect()
    };
    Ok(LambdaBasis { b1: place(0), b2: place(1), b3: place(2), b4: place(3) })
}

/// Basis elements of the crown path algebra: trivial paths and arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathElement {
    Source(u32),
    Sink(u32),
    /// `α_i : i → i'`.
    ArrowA(u32),
    /// `α_{i'} : i-1 → i'`.
    ArrowB(u32),
}

impl PathElement {
    fn endpoints(self, n: u32) -> ((bool, u32), (bool, u32)) {
        // (is_sink, index)
        match self {
            PathElement::Source(i) => ((false, i), (false, i)),
            PathElement::Sink(i) => ((true, i), (true, i)),
            PathElement::ArrowA(i) => ((false, i), (true, i)),
            PathElement::ArrowB(i) => ((false, if i == 1 { n } else { i - 1 }), (true, i)),
        }
    }

    fn is_vertex(self) -> bool {
        matches!(self, PathElement::Source(_) | PathElement::Sink(_))
    }

    /// Product `x·y` read left to right (first `x`, then `y`); `None` is zero.
    pub fn compose(self, other: Self, n: u32) -> Option<Self> {
        let (_, hx) = self.endpoints(n);
        let (ty, _) = other.endpoints(n);
        if hx != ty {
            return None;
        }
        match (self.is_vertex(), other.is_vertex()) {
            (true, _) => Some(other),
            (false, true) => Some(self),
            (false, false) => None,
        }
    }

    pub fn label(self) -> String {
        match self {
            PathElement::Source(i) => format!("{i}"),
            PathElement::Sink(i) => format!("{i}'"),
            PathElement::ArrowA(i) => format!("a{i}"),
            PathElement::ArrowB(i) => format!("b{i}"),
        }
    }
}

fn idx(j: i64, n: u32) -> usize {
    j.rem_euclid(n as i64) as usize
}

/// Checks the relation families, orthogonality and the exhaustive `4n × 4n` product table
/// against the crown path algebra under `β_{j1} ↦ j`, `β_{j2} ↦ α_j`, `β'_{j1} ↦ α_{j'}`,
/// `β'_{j2} ↦ j'`.
pub fn verify_crown_identification(d: u32, n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("crown-identification").param("d", d).param("n", n);
    let basis = match lambda_basis(d, n) {
        Ok(b) => b,
        Err(e) => {
            rep.push("setup", "n | d", &e.to_string(), "exact", false);
            return rep.finish();
        }
    };
    let zero = LambdaTensorElement::zero(d, n);
    let nn = n as i64;
    let relation = |name: &str, lhs: &LambdaTensorElement, rhs: &LambdaTensorElement| {
        let got = lhs;
        let ok = got == rhs;
        (name.to_string(), rhs.to_string(), got.to_string(), ok)
    };
    let mut rows = vec![];
    for j in 0..nn {
        for i in 0..nn {
            let (ju, iu) = (idx(j, n), idx(i, n));
            // β_{j1} β_{i2} = δ_{j,i} β_{i2}
            let p = basis.b1[ju].mul(&basis.b2[iu]).unwrap();
            let e = if j == i { basis.b2[iu].clone() } else { zero.clone() };
            rows.push(relation(&format!("b{}1*b{}2", j + 1, i + 1), &p, &e));
            // β_{j1} β'_{i1} = δ_{j+1,i} β'_{i1}: the tail of α_{i'} is i-1
            let p = basis.b1[ju].mul(&basis.b3[iu]).unwrap();
            let e = if idx(j + 1, n) == iu { basis.b3[iu].clone() } else { zero.clone() };
            rows.push(relation(&format!("b{}1*b'{}1", j + 1, i + 1), &p, &e));
            // β_{j2} β'_{i2} = δ_{j,i} β_{j2}
            let p = basis.b2[ju].mul(&basis.b4[iu]).unwrap();
            let e = if j == i { basis.b2[ju].clone() } else { zero.clone() };
            rows.push(relation(&format!("b{}2*b'{}2", j + 1, i + 1), &p, &e));
            // β'_{j1} β'_{i2} = δ_{j,i} β'_{j1}
            let p = basis.b3[ju].mul(&basis.b4[iu]).unwrap();
            let e = if j == i { basis.b3[ju].clone() } else { zero.clone() };
            rows.push(relation(&format!("b'{}1*b'{}2", j + 1, i + 1), &p, &e));
        }
    }
    let relation_failures = rows.iter().filter(|r| !r.3).count();
    for r in rows.iter().filter(|r| !r.3) {
        rep.push(&r.0, &r.1, &r.2, "exact", false);
    }
    rep.push(
        "relation families",
        &format!("{} relations", rows.len()),
        &format!("{} failing", relation_failures),
        "exact",
        relation_failures == 0,
    );

    let labelled = basis.labelled();
    let mut sum = zero.clone();
    for (pe, x) in &labelled {
        if pe.is_vertex() {
            sum = sum.add(x).unwrap();
        }
    }
    let one = LambdaTensorElement::one(d, n);
    rep.push("sum of vertex idempotents", &one.to_string(), &sum.to_string(), "exact", sum == one);

    let mut checked = 0usize;
    let mut failures = 0usize;
    for (px, x) in &labelled {
        for (py, y) in &labelled {
            checked += 1;
            let got = x.mul(y).unwrap();
            let expected = match px.compose(*py, n) {
                Some(pz) => labelled.iter().find(|(l, _)| *l == pz).map(|(_, z)| (*z).clone()).unwrap(),
                None => zero.clone(),
            };
            if got != expected {
                failures += 1;
                if failures <= 8 {
                    rep.push(
                        &format!("{}*{}", px.label(), py.label()),
                        &expected.to_string(),
                        &got.to_string(),
                        "exact",
                        false,
                    );
                }
            }
        }
    }
    rep.push(
        "path algebra table",
        &format!("{checked} products"),
        &format!("{} matching", checked - failures),
        "exact",
        failures == 0,
    );
    rep.finish()
}

/// `β_j β_l = δ_{jl} β_j` and `Σ_j β_j = 1 ⊗ 1`.
pub fn verify_idempotents(d: u32, n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("idempotents").param("d", d).param("n", n);
    let beta = match beta_basis(d, n) {
        Ok(b) => b,
        Err(e) => {
            rep.push("setup", "n | d", &e.to_string(), "exact", false);
            return rep.finish();
        }
    };
    let mut bad = vec![];
    for (j, bj) in beta.iter().enumerate() {
        for (l, bl) in beta.iter().enumerate() {
            let p = bj.mul(bl).expect("same algebra");
            let ok = if j == l { p == *bj } else { p.is_zero() };
            if !ok {
                bad.push(format!("b{}*b{}", j + 1, l + 1));
            }
        }
    }
    rep.push(
        "pairwise products",
        &format!("{} orthogonal idempotent products", beta.len() * beta.len()),
        &if bad.is_empty() { "all hold".to_string() } else { format!("failing: {}", bad.join(" ")) },
        "exact",
        bad.is_empty(),
    );
    let mut sum = TensorElement::zero(d, n);
    for b in &beta {
        sum = sum.add(b).expect("same algebra");
    }
    let one = TensorElement::one(d, n);
    rep.push("sum", &one.to_string(), &sum.to_string(), "exact", sum == one);
    rep.finish()
}

/// Right multiplication by `1 ⊗ a`: the map `id ⊗ f_a`.
pub fn apply_f(x: &TensorElement, a: &PuiseuxElement) -> Result<TensorElement> {
    x.mul(&TensorElement::right(x.d(), x.n(), a)?)
}

/// `id ⊗ g_a` with `g_a(y) = σ_n(y)·a`, the morphism into the twisted copy.
pub fn apply_g(x: &TensorElement, a: &PuiseuxElement) -> Result<TensorElement> {
    x.sigma_right(1).mul(&TensorElement::right(x.d(), x.n(), a)?)
}

/// Compares `(id⊗f_a)(β_j)` with `σ_n^{n+1-j}(a)β_j` and `(id⊗g_a)(β_j)` with
/// `σ_n^{n-j}(a)β_{j+1}`.
pub fn check_beta_eigenvectors(a: &PuiseuxElement, n: u32, d: u32, j: u32) -> VerificationReport {
    let mut rep = VerificationReport::new("beta-eigenvectors")
        .param("n", n)
        .param("d", d)
        .param("j", j)
        .param("a", a);
    if j == 0 || j > n {
        rep.push("index", &format!("1..={n}"), &j.to_string(), "exact", false);
        return rep.finish();
    }
    let run = || -> Result<(TensorElement, TensorElement, TensorElement, TensorElement)> {
        let beta = beta_basis(d, n)?;
        let a_n = a.embed(n)?;
        let bj = &beta[j as usize - 1];
        let bnext = &beta[j as usize % n as usize];
        let f_direct = apply_f(bj, &a_n)?;
        let f_closed = bj.scale(&a_n.sigma(n as i64 + 1 - j as i64));
        let g_direct = apply_g(bj, &a_n)?;
        let g_closed = bnext.scale(&a_n.sigma(n as i64 - j as i64));
        Ok((f_direct, f_closed, g_direct, g_closed))
    };
    match run() {
        Ok((fd, fc, gd, gc)) => {
            let precision = if fd.coords().iter().all(|c| c.is_exact()) { "exact" } else { "truncated" };
            let ok = fd.sub(&fc).map(|x| x.is_zero()).unwrap_or(false);
            rep.push("(id⊗f_a)(β_j)", &fc.to_string(), &fd.to_string(), precision, ok);
            let ok = gd.sub(&gc).map(|x| x.is_zero()).unwrap_or(false);
            rep.push("(id⊗g_a)(β_j)", &gc.to_string(), &gd.to_string(), precision, ok);
        }
        Err(e) => rep.push("setup", "valid input", &e.to_string(), "exact", false),
    }
    rep.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::el;

    #[test]
    fn betas_are_orthogonal_idempotents() {
        let b = beta_basis(6, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let p = b[i].mul(&b[j]).unwrap();
                if i == j {
                    assert_eq!(p, b[i]);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn small_crowns_match_path_algebra() {
        for (d, n) in [(2, 2), (3, 3), (4, 4), (6, 2)] {
            let r = verify_crown_identification(d, n);
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn sigma_shifts_betas() {
        let b = beta_basis(4, 4).unwrap();
        for j in 0..4 {
            assert_eq!(sigma_tensor(&b[j], 1), b[(j + 3) % 4]);
        }
    }

    #[test]
    fn f_and_g_act_diagonally() {
        for a in ["1 + e^(1/3)", "e^(2/3) - 5*e^(-1/3)"] {
            for j in 1..=3 {
                let r = check_beta_eigenvectors(&el(a), 3, 3, j);
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }
}
