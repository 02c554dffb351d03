use num_integer::Integer;

use crate::crown::{CrownQuiver, Vertex};
use crate::error::{Error, Result};
use crate::reps::{band_module, string_module, MatK, Representation};
use crate::scalars::{is_generic, norm_root, FieldTowerCtx, PuiseuxElement};

use super::datum::DescentDatum;

/// `M_a`: `k_d` at every vertex, `a` on `α_1`, `1` on every other arrow.
pub fn rep_m_a(a: &PuiseuxElement, n: u32, d: u32) -> Result<Representation> {
    if a.is_zero() {
        return Err(Error::Invalid("M_a needs a nonzero parameter".into()));
    }
    let q = CrownQuiver::new(n)?;
    let a = a.embed(d)?;
    band_module(&q, &q.the_band(), &MatK::scalar(a), d)
}

fn family_length(j: u32, n: u32) -> Result<u32> {
    if j == 0 || j > n {
        return Err(Error::OutOfRange(format!("family index {j} outside 1..={n}")));
    }
    Ok(2 * j - 1)
}

/// `M_(j)`: `k` at `1..j` and `1'..j'`, identity on `α_1..α_j` and `α_{2'}..α_{j'}`.
pub fn rep_family_m(j: u32, n: u32) -> Result<Representation> {
    let len = family_length(j, n)?;
    let q = CrownQuiver::new(n)?;
    string_module(&q, &q.string_word(Vertex::Sink(1), len)?, n)
}

/// `N_(j)`: `k` at `1..j` and `2'..(j+1)'`, identity on `α_2..α_j` and `α_{2'}..α_{(j+1)'}`.
pub fn rep_family_n(j: u32, n: u32) -> Result<Representation> {
    let len = family_length(j, n)?;
    let q = CrownQuiver::new(n)?;
    string_module(&q, &q.string_word(Vertex::Source(1), len)?, n)
}

/// `⊕_{r<m} twist(N, r)`, summands in order of `r`.
pub fn orbit_sum(rep: &Representation, m: u32) -> Result<Representation> {
    if m == 0 {
        return Err(Error::Invalid("orbit length must be positive".into()));
    }
    let parts: Vec<Representation> = (0..m as i64).map(|r| rep.twist(r)).collect();
    Representation::direct_sum_all(&parts)
}

/// The datum on `orbit_sum(N, m)` that sends summand `r` to summand `r-1` of the twist by the
/// identity and summand `0` to summand `m-1` through `g : N → twist(N, m)`.
pub fn orbit_datum(rep: &Representation, m: u32, g: &[MatK], order: u32) -> Result<DescentDatum> {
    let q = *rep.quiver();
    let sum = orbit_sum(rep, m)?;
    let mut f = vec![];
    for v in q.vertices() {
        // block sizes of M_v (summand r is twist^r N) and of twist(M)_v (summand s is twist^{s+1} N)
        let src: Vec<usize> = (0..m as i64).map(|r| rep.dim(q.gamma(v, -r))).collect();
        let dst: Vec<usize> = (0..m as i64).map(|s| rep.dim(q.gamma(v, -(s + 1)))).collect();
        let offsets = |sizes: &[usize]| -> Vec<usize> {
            sizes.iter().scan(0, |acc, s| {
                let o = *acc;
                *acc += s;
                Some(o)
            }).collect()
        };
        let (so, dof) = (offsets(&src), offsets(&dst));
        let mut fv = MatK::zero(dst.iter().sum(), src.iter().sum());
        for r in 1..m as usize {
            fv.put(dof[r - 1], so[r], &MatK::identity(src[r]));
        }
        let gv = &g[q.vertex_position(v)];
        if gv.shape() != (dst[m as usize - 1], src[0]) {
            return Err(Error::Shape(format!("g at {v} has shape {:?}", gv.shape())));
        }
        fv.put(dof[m as usize - 1], so[0], gv);
        f.push(fv);
    }
    DescentDatum::new(sum, f, order)
}

fn identity_family(rep: &Representation) -> Vec<MatK> {
    rep.dims().iter().map(|&k| MatK::identity(k)).collect()
}

fn require_generic(a: &PuiseuxElement, m: u32) -> Result<PuiseuxElement> {
    if !a.is_exact() {
        return Err(Error::Inexact);
    }
    let a = a.embed(m).map_err(|_| Error::RamDivisibility { from: a.ram(), to: m })?;
    if !is_generic(&a)? {
        return Err(Error::NotGeneric);
    }
    Ok(a)
}

/// The datum for `⊕_{r<m} twist^r M_a`, `a ∈ k_m` generic, over `k_d` with `d = lcm(n, m)`.
///
/// `twist^m M_a` moves `a` from `α_1` to `α_{1-ρ}` with `ρ = m mod n`; the connecting map `g` is
/// scalar, `c·a^{-1}` on the arms `1-ρ..0` and `c` elsewhere (each sink copying the source
/// before it). The cocycle fixes the norm of `c`, so `c = a b^{-1}` with
/// `N_{k_d/k_m}(b) = a^{(n-ρ)/gcd(n,m)}`.
pub fn build_cocycle_m_a(ctx: &FieldTowerCtx, a: &PuiseuxElement, m: u32, n: u32, prec: i64) -> Result<DescentDatum> {
    let a = require_generic(a, m)?;
    let d = n.lcm(&m);
    let base = rep_m_a(&a, n, d)?;
    let q = *base.quiver();
    let rho = m % n;
    if rho == 0 {
        // n | m: twist^m M_a = M_a on the nose
        let order = if m == n { n } else { d };
        return orbit_datum(&base, m, &identity_family(&base), order);
    }
    let g = n.gcd(&m);
    let target = a.pow(((n - rho) / g) as u64);
    let b = norm_root(ctx, &target, m, d, prec)?;
    let c = a.embed(d)?.mul(&b.invert_to(prec)?);
    let c_over_a = c.mul(&a.embed(d)?.invert_to(prec)?);
    let on_window = |k: u32| -> bool {
        // k ∈ {1-ρ, …, 0} mod n
        let shifted = (k as i64 - 1 + rho as i64).rem_euclid(n as i64);
        shifted < rho as i64
    };
    let scalars: Vec<MatK> = q
        .vertices()
        .iter()
        .map(|v| {
            let k = match v {
                Vertex::Source(i) => *i,
                Vertex::Sink(i) => q.wrap(*i as i64 - 1),
            };
            MatK::scalar(if on_window(k) { c_over_a.clone() } else { c.clone() })
        })
        .collect();
    orbit_datum(&base, m, &scalars, d)
}

/// `f = (E_n, E_n)`-type datum on `⊕_{r<n} twist^r M_a` for generic `a ∈ k_n`.
pub fn build_cocycle_equal(a: &PuiseuxElement, n: u32) -> Result<DescentDatum> {
    let ctx = FieldTowerCtx::for_rams(&[n]);
    build_cocycle_m_a(&ctx, a, n, n, ctx.default_prec)
}

/// `m < n`, including the degenerate case `m | n`.
pub fn build_cocycle_small(ctx: &FieldTowerCtx, a: &PuiseuxElement, m: u32, n: u32, prec: i64) -> Result<DescentDatum> {
    if m >= n {
        return Err(Error::Invalid(format!("expected m < n, got m={m}, n={n}")));
    }
    build_cocycle_m_a(ctx, a, m, n, prec)
}

/// `m > n`, including the degenerate case `n | m`.
pub fn build_cocycle_large(ctx: &FieldTowerCtx, a: &PuiseuxElement, m: u32, n: u32, prec: i64) -> Result<DescentDatum> {
    if m <= n {
        return Err(Error::Invalid(format!("expected m > n, got m={m}, n={n}")));
    }
    build_cocycle_m_a(ctx, a, m, n, prec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    M,
    N,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(Family::M),
            "N" | "n" => Ok(Family::N),
            _ => Err(Error::Invalid(format!("unknown family {s:?}"))),
        }
    }
}

pub fn rep_family(which: Family, j: u32, n: u32) -> Result<Representation> {
    match which {
        Family::M => rep_family_m(j, n),
        Family::N => rep_family_n(j, n),
    }
}

/// The datum on `⊕_{r<n} twist^r` of `M_(j)` or `N_(j)`; the connecting map is the identity.
pub fn build_cocycle_string(j: u32, n: u32, which: Family) -> Result<DescentDatum> {
    let base = rep_family(which, j, n)?;
    orbit_datum(&base, n, &identity_family(&base), n)
}
