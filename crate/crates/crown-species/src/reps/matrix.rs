use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{parse_element_at, PuiseuxElement};

/// A dense matrix over `k_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatK {
    rows: usize,
    cols: usize,
    data: Vec<PuiseuxElement>,
}

impl MatK {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatK { rows, cols, data: vec![PuiseuxElement::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        Self::diag(&vec![PuiseuxElement::one(); size])
    }

    pub fn diag(entries: &[PuiseuxElement]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn scalar(x: PuiseuxElement) -> Self {
        MatK { rows: 1, cols: 1, data: vec![x] }
    }

    pub fn from_rows(rows: Vec<Vec<PuiseuxElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(MatK { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> PuiseuxElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatK { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &PuiseuxElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: PuiseuxElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[PuiseuxElement] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&PuiseuxElement) -> PuiseuxElement) -> Self {
        MatK { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn sigma(&self, j: i64) -> Self {
        self.map(|x| x.sigma(j))
    }

    pub fn scale(&self, c: &PuiseuxElement) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.shape() != o.shape() {
            return Err(Error::Shape(format!("{:?} vs {:?}", self.shape(), o.shape())));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(MatK { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(MatK { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("cannot multiply {:?} by {:?}", self.shape(), o.shape())));
        }
        let mut out = Self::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_exact_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(|x| x.is_exact())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.sub(&PuiseuxElement::one()).is_zero()
                } else {
                    x.is_zero()
                }
            }))
    }

    /// Agreement up to the precision carried by either side.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.shape() == o.shape() && self.sub(o).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Lowest precision (in units of `ε`) carried by any entry.
    pub fn precision(&self) -> Option<num_rational::BigRational> {
        self.data.iter().filter_map(|x| x.prec_eps()).min()
    }

    /// Block diagonal sum.
    pub fn block_diag(blocks: &[MatK]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.put(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `b` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, b: &MatK) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Division-free determinant (Berkowitz), exact whenever the entries are.
    pub fn det(&self) -> Result<PuiseuxElement> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(PuiseuxElement::one());
        }
        // characteristic polynomial coefficients, built from the bottom-right corner outward
        let mut poly = vec![PuiseuxElement::one(), self.get(n - 1, n - 1).neg()];
        for k in (0..n - 1).rev() {
            let size = n - k; // current leading principal block starts at k
            let a = self.get(k, k);
            let r: Vec<&PuiseuxElement> = (k + 1..n).map(|j| self.get(k, j)).collect();
            let c: Vec<&PuiseuxElement> = (k + 1..n).map(|i| self.get(i, k)).collect();
            // Toeplitz column: 1, -a, -r c, -r M c, -r M^2 c, ...
            let mut col = vec![PuiseuxElement::one(), a.neg()];
            let mut v: Vec<PuiseuxElement> = c.iter().map(|x| (*x).clone()).collect();
            for _ in 0..size - 1 {
                let dot = r.iter().zip(&v).fold(PuiseuxElement::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
                col.push(dot.neg());
                v = (k + 1..n)
                    .map(|i| (k + 1..n).fold(PuiseuxElement::zero(), |acc, j| acc.add(&self.get(i, j).mul(&v[j - k - 1]))))
                    .collect();
            }
            let mut next = vec![PuiseuxElement::zero(); size + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, p) in poly.iter().enumerate() {
                    if i >= j {
                        *slot = slot.add(&col[i - j].mul(p));
                    }
                }
            }
            poly = next;
        }
        let det = poly[n].clone();
        Ok(if n % 2 == 1 { det.neg() } else { det })
    }

    /// Gauss-Jordan inverse with minimal-codegree pivots.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| pivot_rank(a.get(r, col)))
                .ok_or(Error::DivisionByZero)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).invert()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_exact_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, f: &PuiseuxElement) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            self.data[idx] = self.data[idx].mul(f);
        }
    }

    /// `row_i -= f · row_j`.
    fn axpy_row(&mut self, i: usize, j: usize, f: &PuiseuxElement) {
        for c in 0..self.cols {
            let x = self.get(j, c).mul(f);
            let idx = i * self.cols + c;
            self.data[idx] = self.data[idx].sub(&x);
        }
    }

    /// Parses `"a, b; c, d"` (rows separated by `;`, entries by `,`).
    pub fn parse(s: &str) -> Result<Self> {
        Self::parse_at(s, 1, 1)
    }

    pub fn parse_at(s: &str, line: usize, col: usize) -> Result<Self> {
        let mut rows = vec![];
        let mut offset = 0usize;
        for row in s.split(';') {
            let mut entries = vec![];
            let mut inner = 0usize;
            for entry in row.split(',') {
                let c = col + offset + inner;
                entries.push(parse_element_at(entry, line, c)?);
                inner += entry.chars().count() + 1;
            }
            offset += row.chars().count() + 1;
            rows.push(entries);
        }
        Self::from_rows(rows).map_err(|e| Error::Parse { line, col, msg: e.to_string() })
    }
}

/// Pivot preference: exact monomials first, then smallest codegree, then fewest terms.
pub(crate) fn pivot_rank(x: &PuiseuxElement) -> (u8, num_rational::BigRational, usize) {
    let v = x.valuation().unwrap_or_else(|| num_rational::BigRational::from_integer(i64::MAX.into()));
    (if x.is_exact_monomial() { 0 } else { 1 }, v, x.terms().len())
}

impl fmt::Display for MatK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::el;

    #[test]
    fn det_matches_cofactors() {
        let m = MatK::parse("1, 2, 3; 4, 5, 6; 7, 8, 10").unwrap();
        assert_eq!(m.det().unwrap(), el("-3"));
        let m = MatK::parse("0, 1; e, 0").unwrap();
        assert_eq!(m.det().unwrap(), el("-e"));
        let m = MatK::parse("1, 1; e^(1/2), -e^(1/2)").unwrap();
        assert_eq!(m.det().unwrap(), el("-2*e^(1/2)"));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = MatK::parse("0, 1, 0; 0, 0, 1; e, 0, 0").unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn text_roundtrip() {
        let m = MatK::parse("1/2, z3*e^(1/3); 0, -e^(-1)").unwrap();
        assert_eq!(MatK::parse(&m.to_string()).unwrap(), m);
    }
}
