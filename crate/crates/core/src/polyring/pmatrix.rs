use std::fmt;

use super::groebner::GroebnerBasis;
use super::parse::parse_poly;
use super::poly::Poly;
use super::ring::RingRef;
use crate::error::{Error, Result};
use crate::exactcore::Scalar;

/// A dense matrix of polynomials over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        Self::scalar(ring, n, &Poly::one(ring))
    }

    /// `p` times the identity.
    pub fn scalar(ring: &RingRef, n: usize, p: &Poly) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Invalid("ragged matrix rows".into()));
            }
            for p in r {
                p.same_ring(&Poly::zero(ring))?;
                data.push(p);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: n, cols, data })
    }

    /// Parses rows of polynomial strings.
    pub fn parse(ring: &RingRef, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn parse_owned(ring: &RingRef, rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(&self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        PolyMatrix { data, ..self.clone() }
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, q: &Poly) -> PolyMatrix {
        self.map(|p| p * q)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix { data: self.data.iter().map(f).collect(), ..self.clone() }
    }

    /// Applies `f` to each entry, landing in another ring.
    pub fn map_into(&self, ring: &RingRef, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix { ring: ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn reduce(&self, gb: &GroebnerBasis) -> PolyMatrix {
        self.map(|p| gb.reduce(p))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Block matrix [[a, b], [c, d]].
    pub fn block2(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Self::zeros(&a.ring, a.rows + c.rows, a.cols + b.cols);
        out.put(0, 0, a);
        out.put(0, a.cols, b);
        out.put(a.rows, 0, c);
        out.put(a.rows, a.cols, d);
        out
    }

    pub fn direct_sum(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
        let z1 = Self::zeros(&a.ring, a.rows, b.cols);
        let z2 = Self::zeros(&a.ring, b.rows, a.cols);
        Self::block2(a, &z1, &z2, b)
    }

    /// Copies `m` into `self` with its top-left corner at (r, c).
    pub fn put(&mut self, r: usize, c: usize, m: &PolyMatrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r + i, c + j, m.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> PolyMatrix {
        let mut out = Self::zeros(&self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r + i, c + j).clone());
            }
        }
        out
    }

    /// Rows of canonical polynomial text.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    /// Position and value of the first entry where `self` and `o` differ.
    pub fn first_difference(&self, o: &PolyMatrix) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != o.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_strings() {
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::FieldKind;
    use crate::polyring::Ring;

    #[test]
    fn nodal_product() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let m = PolyMatrix::parse(&r, &[&["y", "x+x^2"], &["-x", "-y"]]).unwrap();
        let s = parse_poly(&r, "y^2-x^2-x^3").unwrap();
        assert_eq!(m.mul(&m), PolyMatrix::scalar(&r, 2, &s));
    }
}
