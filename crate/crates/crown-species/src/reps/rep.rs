use std::fmt;

use crate::crown::{Arrow, BandWord, CrownQuiver, DimVector, StringWord, Vertex};
use crate::error::{Error, Result};
use crate::scalars::PuiseuxElement;

use super::matrix::MatK;

/// A `k_d`-linear representation of the n-crown quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    quiver: CrownQuiver,
    d: u32,
    dims: Vec<usize>,
    mats: Vec<MatK>,
}

impl Representation {
    /// `dims` in vertex order (sources then sinks), `mats` in arrow order (`a1..an, b1..bn`).
    pub fn new(quiver: CrownQuiver, d: u32, dims: Vec<usize>, mats: Vec<MatK>) -> Result<Self> {
        let n = quiver.n() as usize;
        if dims.len() != 2 * n || mats.len() != 2 * n {
            return Err(Error::Shape(format!("expected {} vertices and arrows", 2 * n)));
        }
        if d == 0 || d % quiver.n() != 0 {
            return Err(Error::RamDivisibility { from: quiver.n(), to: d });
        }
        let rep = Representation { quiver, d, dims, mats };
        for a in quiver.arrows() {
            let m = rep.arrow(a);
            let want = (rep.dim(quiver.head(a)), rep.dim(quiver.tail(a)));
            if m.shape() != want {
                return Err(Error::Shape(format!("arrow {a} has shape {:?}, expected {:?}", m.shape(), want)));
            }
        }
        Ok(rep)
    }

    pub fn zero(quiver: CrownQuiver, d: u32) -> Self {
        let n = 2 * quiver.n() as usize;
        Representation { quiver, d, dims: vec![0; n], mats: vec![MatK::zero(0, 0); n] }
    }

    pub fn quiver(&self) -> &CrownQuiver {
        &self.quiver
    }

    pub fn n(&self) -> u32 {
        self.quiver.n()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// The same data regarded over a larger `k_{d'}`.
    pub fn with_d(&self, d: u32) -> Result<Self> {
        if d % self.d != 0 {
            return Err(Error::RamDivisibility { from: self.d, to: d });
        }
        Ok(Representation { d, ..self.clone() })
    }

    pub fn dim(&self, v: Vertex) -> usize {
        self.dims[self.quiver.vertex_position(v)]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrow_position(&self, a: Arrow) -> usize {
        let n = self.n() as usize;
        match a {
            Arrow::A(i) => i as usize - 1,
            Arrow::B(i) => n + i as usize - 1,
        }
    }

    pub fn arrow(&self, a: Arrow) -> &MatK {
        &self.mats[self.arrow_position(a)]
    }

    pub fn mats(&self) -> &[MatK] {
        &self.mats
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut d = DimVector::zero(self.n());
        for v in self.quiver.vertices() {
            d.set(v, self.dim(v) as i64);
        }
        d
    }

    pub fn defect(&self) -> i64 {
        self.quiver.defect(&self.dim_vector())
    }

    pub fn is_exact(&self) -> bool {
        self.mats.iter().all(|m| m.is_exact())
    }

    /// The twist by `γ_{d,n}^r`: `V'_v = V_{γ^{-r}(v)}`, and the matrix on arrow `x_i` becomes
    /// `σ_d^r` of the matrix on `x_{i+r}`.
    pub fn twist(&self, r: i64) -> Self {
        let q = self.quiver;
        let dims = q.vertices().iter().map(|&v| self.dim(q.gamma(v, -r))).collect();
        let mats = q.arrows().iter().map(|&a| self.arrow(q.gamma_arrow(a, -r)).sigma(r)).collect();
        Representation { quiver: q, d: self.d, dims, mats }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::Shape("direct sum of representations of different quivers".into()));
        }
        let d = num_integer::lcm(self.d, other.d);
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| MatK::block_diag(&[a.clone(), b.clone()])).collect();
        Ok(Representation { quiver: self.quiver, d, dims, mats })
    }

    pub fn direct_sum_all(parts: &[Representation]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        let mut acc = first.clone();
        for p in &parts[1..] {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Replaces the matrix on one arrow; the shape must match.
    pub fn with_arrow(&self, a: Arrow, m: MatK) -> Result<Self> {
        let mut mats = self.mats.clone();
        mats[self.arrow_position(a)] = m;
        Representation::new(self.quiver, self.d, self.dims.clone(), mats)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "crown n={} d={} dims={}", self.n(), self.d, self.dim_vector())?;
        for a in self.quiver.arrows() {
            writeln!(f, "{a}: {}", self.arrow(a))?;
        }
        Ok(())
    }
}

/// `M(S)`: one basis vector per trail position, grouped by vertex in trail order; a direct
/// letter maps `z_{k-1} ↦ z_k`, an inverse letter maps `z_k ↦ z_{k-1}`.
pub fn string_module(q: &CrownQuiver, s: &StringWord, d: u32) -> Result<Representation> {
    let trail = s.trail();
    let mut dims = vec![0usize; 2 * q.n() as usize];
    let mut local = vec![0usize; trail.len()];
    for (k, v) in trail.iter().enumerate() {
        let p = q.vertex_position(*v);
        local[k] = dims[p];
        dims[p] += 1;
    }
    let mut mats: Vec<MatK> = q
        .arrows()
        .iter()
        .map(|&a| MatK::zero(dims[q.vertex_position(q.head(a))], dims[q.vertex_position(q.tail(a))]))
        .collect();
    let n = q.n() as usize;
    for (k, l) in s.letters().iter().enumerate() {
        let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
        let pos = match l.arrow {
            Arrow::A(i) => i as usize - 1,
            Arrow::B(i) => n + i as usize - 1,
        };
        mats[pos].set(local[to], local[from], PuiseuxElement::one());
    }
    Representation::new(*q, d, dims, mats)
}

/// `M(S', φ)` for the crown band: every vertex carries `V`, `α_1` acts by `φ`, all other
/// arrows by the identity.
pub fn band_module(q: &CrownQuiver, band: &BandWord, phi: &MatK, d: u32) -> Result<Representation> {
    if *band != q.the_band() {
        return Err(Error::Invalid(format!("{band} is not the band of the {}-crown", q.n())));
    }
    if !phi.is_square() {
        return Err(Error::Shape("band parameter must be square".into()));
    }
    if phi.det()?.is_zero() {
        return Err(Error::Invalid("band parameter is singular".into()));
    }
    let k = phi.rows();
    let dims = vec![k; 2 * q.n() as usize];
    let mut mats = vec![MatK::identity(k); 2 * q.n() as usize];
    mats[0] = phi.clone();
    Representation::new(*q, d, dims, mats)
}
