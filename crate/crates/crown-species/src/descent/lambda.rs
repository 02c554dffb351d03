use std::fmt;

use num_integer::Integer;

use crate::crown::CrownQuiver;
use crate::error::{Error, Result};
use crate::reps::{MatK, Representation};
use crate::scalars::{is_generic, parse_element_at, PuiseuxElement};

use super::families::{rep_family, rep_m_a, Family};

/// A representation of `Λ_n`: `φ : (k_n ⊕ ^{σ}k_n) ⊗ k_n^{m'} → k_n^m`, split as `[A B]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaRep {
    pub n: u32,
    pub a: MatK,
    pub b: MatK,
}

/// A candidate regular simple `N` over `k_d` with `base_change(L) ≅ ⊕_{r<m} twist^r N`.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Family(Family, u32),
    Band(PuiseuxElement),
}

impl Witness {
    pub fn build(&self, n: u32, d: u32) -> Result<Representation> {
        match self {
            Witness::Family(which, j) => rep_family(*which, *j, n)?.with_d(d),
            Witness::Band(a) => rep_m_a(a, n, d),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Family(Family::M, j) => write!(f, "M j={j}"),
            Witness::Family(Family::N, j) => write!(f, "N j={j}"),
            Witness::Band(a) => write!(f, "band {a}"),
        }
    }
}

/// A parsed lambda-rep file: the representation plus optional certification hints.
#[derive(Clone, Debug)]
pub struct LambdaFile {
    pub rep: LambdaRep,
    pub period: Option<u32>,
    pub witness: Option<Witness>,
}

impl LambdaRep {
    pub fn new(n: u32, a: MatK, b: MatK) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("species index must be positive".into()));
        }
        if a.shape() != b.shape() {
            return Err(Error::Shape(format!("A is {:?} but B is {:?}", a.shape(), b.shape())));
        }
        for x in a.entries().iter().chain(b.entries()) {
            x.embed(n).map_err(|_| Error::RamDivisibility { from: x.ram(), to: n })?;
        }
        Ok(LambdaRep { n, a, b })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn mp(&self) -> usize {
        self.a.cols()
    }

    /// `k_d ⊗ L` on the n-crown: arm `i` carries `σ^{1-i}(A)` on `α_i` and `σ^{1-i}(B)` on
    /// `α_{i'}`; sources have dimension `m'`, sinks `m`.
    pub fn base_change(&self, d: u32) -> Result<Representation> {
        if d % self.n != 0 {
            return Err(Error::RamDivisibility { from: self.n, to: d });
        }
        let q = CrownQuiver::new(self.n)?;
        let n = self.n as usize;
        let mut dims = vec![self.mp(); n];
        dims.extend(vec![self.m(); n]);
        let mut mats = vec![];
        for i in 1..=self.n as i64 {
            mats.push(self.a.sigma(1 - i));
        }
        for i in 1..=self.n as i64 {
            mats.push(self.b.sigma(1 - i));
        }
        Representation::new(q, d, dims, mats)
    }

    /// Parses the `lambda-rep n=<n> m=<m> mp=<m'>` format with `A:` and `B:` blocks, and
    /// optional `period: <m>` and `witness: ...` lines; `#` starts a comment.
    pub fn parse_file(src: &str) -> Result<LambdaFile> {
        let mut header: Option<(u32, usize, usize)> = None;
        let mut blocks: [Vec<(usize, String)>; 2] = [vec![], vec![]];
        let mut current: Option<usize> = None;
        let mut period = None;
        let mut witness = None;
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: line_no, col: 1, msg: msg.to_string() };
            if let Some(rest) = line.strip_prefix("lambda-rep") {
                let mut n = None;
                let mut m = None;
                let mut mp = None;
                for kv in rest.split_whitespace() {
                    let (k, v) = kv.split_once('=').ok_or_else(|| err("expected key=value"))?;
                    let v: u32 = v.parse().map_err(|_| err(&format!("bad value for {k}")))?;
                    match k {
                        "n" => n = Some(v),
                        "m" => m = Some(v as usize),
                        "mp" => mp = Some(v as usize),
                        _ => return Err(err(&format!("unknown header key {k}"))),
                    }
                }
                header = Some((
                    n.ok_or_else(|| err("missing n"))?,
                    m.ok_or_else(|| err("missing m"))?,
                    mp.ok_or_else(|| err("missing mp"))?,
                ));
                continue;
            }
            if header.is_none() {
                return Err(err("expected a lambda-rep header"));
            }
            if line == "A:" {
                current = Some(0);
            } else if line == "B:" {
                current = Some(1);
            } else if let Some(rest) = line.strip_prefix("period:") {
                period = Some(rest.trim().parse::<u32>().map_err(|_| err("bad period"))?);
                current = None;
            } else if let Some(rest) = line.strip_prefix("witness:") {
                witness = Some(parse_witness(rest.trim(), line_no)?);
                current = None;
            } else if let Some(c) = current {
                blocks[c].push((line_no, line.to_string()));
            } else {
                return Err(err("matrix rows must follow A: or B:"));
            }
        }
        let (n, m, mp) = header.ok_or(Error::Parse { line: 1, col: 1, msg: "empty file".into() })?;
        let mut mats = vec![];
        for (name, block) in ["A", "B"].iter().zip(&blocks) {
            let mut rows = vec![];
            for (line_no, text) in block {
                for row in text.split(';').filter(|r| !r.trim().is_empty()) {
                    let mut entries = vec![];
                    let mut col = 1;
                    for entry in row.split(',') {
                        entries.push(parse_element_at(entry, *line_no, col)?);
                        col += entry.chars().count() + 1;
                    }
                    rows.push(entries);
                }
            }
            let line = block.first().map(|b| b.0).unwrap_or(1);
            let mat = MatK::from_rows(rows).map_err(|e| Error::Parse { line, col: 1, msg: e.to_string() })?;
            if mat.shape() != (m, mp) {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    msg: format!("block {name} is {}x{}, header says {m}x{mp}", mat.rows(), mat.cols()),
                });
            }
            mats.push(mat);
        }
        let b = mats.pop().expect("two blocks");
        let a = mats.pop().expect("two blocks");
        Ok(LambdaFile { rep: LambdaRep::new(n, a, b)?, period, witness })
    }

    pub fn to_file(&self, period: Option<u32>, witness: Option<&Witness>) -> String {
        let mut s = format!("lambda-rep n={} m={} mp={}\n", self.n, self.m(), self.mp());
        for (name, mat) in [("A", &self.a), ("B", &self.b)] {
            s.push_str(name);
            s.push_str(":\n");
            for i in 0..mat.rows() {
                let row: Vec<String> = (0..mat.cols()).map(|j| mat.get(i, j).to_string()).collect();
                s.push_str(&row.join(", "));
                s.push('\n');
            }
        }
        if let Some(p) = period {
            s.push_str(&format!("period: {p}\n"));
        }
        if let Some(w) = witness {
            s.push_str(&format!("witness: {w}\n"));
        }
        s
    }
}

pub fn parse_witness(s: &str, line: usize) -> Result<Witness> {
    let err = |msg: &str| Error::Parse { line, col: 1, msg: msg.to_string() };
    if let Some(rest) = s.strip_prefix("band") {
        return Ok(Witness::Band(parse_element_at(rest, line, 1)?));
    }
    let mut parts = s.split_whitespace();
    let which: Family = parts.next().ok_or_else(|| err("empty witness"))?.parse().map_err(|_| err("unknown witness family"))?;
    let j = parts
        .next()
        .and_then(|t| t.strip_prefix("j="))
        .and_then(|t| t.parse::<u32>().ok())
        .ok_or_else(|| err("expected j=<index>"))?;
    Ok(Witness::Family(which, j))
}

/// `α_m(x)`: ones on the superdiagonal, `x` in the bottom-left corner.
pub fn alpha_matrix(m: usize, x: &PuiseuxElement) -> MatK {
    if m == 1 {
        return MatK::scalar(x.clone());
    }
    MatK::from_fn(m, m, |i, j| {
        if j == i + 1 {
            PuiseuxElement::one()
        } else if i == m - 1 && j == 0 {
            x.clone()
        } else {
            PuiseuxElement::zero()
        }
    })
}

/// The `σ`-orbit of an exact generic `x`, `x, σ(x), …, σ^{r-1}(x)` with `r = ram(x)`.
pub fn galois_orbit(x: &PuiseuxElement) -> Result<Vec<PuiseuxElement>> {
    let x = x.reduce_ram();
    if !is_generic(&x)? {
        return Err(Error::NotGeneric);
    }
    Ok((0..x.ram() as i64).map(|j| x.sigma(j)).collect())
}

/// Coefficients `c_0..c_{r-1}` of the minimal polynomial `y^r + Σ c_i y^i` of a generic `x`
/// over `k`; each coefficient is checked to lie in `k`.
pub fn min_poly(x: &PuiseuxElement) -> Result<Vec<PuiseuxElement>> {
    let orbit = galois_orbit(x)?;
    // expand Π (y − λ), lowest degree first
    let mut poly = vec![PuiseuxElement::one()];
    for lam in &orbit {
        let mut next = vec![PuiseuxElement::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(lam));
        }
        poly = next;
    }
    poly.pop();
    let coeffs: Vec<PuiseuxElement> = poly.into_iter().map(|c| c.reduce_ram()).collect();
    if coeffs.iter().any(|c| c.ram() != 1) {
        return Err(Error::Invalid("minimal polynomial coefficients are not in k".into()));
    }
    Ok(coeffs)
}

/// The companion matrix of `y^r + Σ c_i y^i`: ones on the subdiagonal, `−c` in the last column.
pub fn companion(coeffs: &[PuiseuxElement]) -> MatK {
    let r = coeffs.len();
    MatK::from_fn(r, r, |i, j| {
        if j == r - 1 {
            coeffs[i].neg()
        } else if i == j + 1 {
            PuiseuxElement::one()
        } else {
            PuiseuxElement::zero()
        }
    })
}

/// `α(x)` for generic `x`: the companion matrix of its minimal polynomial, in the layout of
/// [`alpha_matrix`] (so `α(ε^{1/m}) = α_m(ε)`).
pub fn alpha_of(x: &PuiseuxElement) -> Result<MatK> {
    Ok(companion(&min_poly(x)?).transpose())
}

/// `V_{kj} = σ^k(a)^j`.
pub fn vandermonde(a: &PuiseuxElement, n: usize) -> Result<MatK> {
    let orbit = galois_orbit(a)?;
    if orbit.len() != n {
        return Err(Error::Invalid(format!("orbit has {} elements, expected {n}", orbit.len())));
    }
    Ok(MatK::from_fn(n, n, |k, j| orbit[k].pow(j as u64)))
}

/// `D_x = diag(x, σ(x), …)`.
pub fn orbit_diagonal(x: &PuiseuxElement) -> Result<MatK> {
    Ok(MatK::diag(&galois_orbit(x)?))
}

/// `[α(x) id_m]` on `Λ_n`, for `x ∈ k_m` with `x^n` generic.
pub fn normal_form_homogeneous(x: &PuiseuxElement, n: u32, m: u32) -> Result<LambdaRep> {
    if !x.is_exact() {
        return Err(Error::Inexact);
    }
    let x = x.embed(m).map_err(|_| Error::RamDivisibility { from: x.ram(), to: m })?;
    if !is_generic(&x.pow(n as u64))? {
        return Err(Error::NotGeneric);
    }
    let alpha = alpha_of(&x)?;
    LambdaRep::new(n, alpha, MatK::identity(m as usize))
}

/// The `j × j` block with ones on the subdiagonal.
pub fn subdiagonal_block(j: usize) -> MatK {
    MatK::from_fn(j, j, |r, c| if r == c + 1 { PuiseuxElement::one() } else { PuiseuxElement::zero() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `[B id_j]`
    BId,
    /// `[id_j B]`
    IdB,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "MB" | "B-id" | "bid" => Ok(Variant::BId),
            "BM" | "id-B" | "idb" => Ok(Variant::IdB),
            _ => Err(Error::Invalid(format!("unknown variant {s:?}"))),
        }
    }
}

pub fn normal_form_nonhomogeneous(j: u32, n: u32, variant: Variant) -> Result<LambdaRep> {
    if j == 0 || j > n {
        return Err(Error::OutOfRange(format!("index {j} outside 1..={n}")));
    }
    let b = subdiagonal_block(j as usize);
    let id = MatK::identity(j as usize);
    match variant {
        Variant::BId => LambdaRep::new(n, b, id),
        Variant::IdB => LambdaRep::new(n, id, b),
    }
}

/// `lcm(n, m)`.
pub fn descent_degree(n: u32, m: u32) -> u32 {
    n.lcm(&m)
}
