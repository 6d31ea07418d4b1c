use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{FieldKind, Scalar};
use crate::error::{Error, Result};

pub type SparseRow = BTreeMap<usize, Scalar>;

/// A matrix over an exact field, stored as sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldKind,
    data: Vec<SparseRow>,
}

/// Picks the common field of a set of scalars, or reports a clash.
///
/// Rationals fit everywhere; a Gaussian with zero imaginary part may meet a
/// prime field; anything else must agree exactly.
pub fn common_field<'a>(it: impl IntoIterator<Item = &'a Scalar>, default: FieldKind) -> Result<FieldKind> {
    let mut prime = None::<u64>;
    let mut gauss = false;
    let mut nonreal = false;
    for s in it {
        match s {
            Scalar::Rat(_) => {}
            Scalar::Gauss(_, b) => {
                gauss = true;
                nonreal |= !num::Zero::is_zero(b);
            }
            Scalar::Fp(_, p) => match prime {
                Some(q) if q != *p => return Err(Error::FieldMismatch(format!("gf:{q} and gf:{p}"))),
                _ => prime = Some(*p),
            },
        }
    }
    match (prime, default) {
        (Some(p), _) if nonreal => Err(Error::FieldMismatch(format!("gauss and gf:{p}"))),
        (Some(p), FieldKind::Fp(q)) if p != q => Err(Error::FieldMismatch(format!("gf:{q} and gf:{p}"))),
        (Some(p), FieldKind::Gauss) if nonreal => Err(Error::FieldMismatch(format!("gauss and gf:{p}"))),
        (Some(p), _) => Ok(FieldKind::Fp(p)),
        (None, FieldKind::Fp(q)) if nonreal => Err(Error::FieldMismatch(format!("gauss and gf:{q}"))),
        (None, FieldKind::Rat) if gauss => Ok(FieldKind::Gauss),
        (None, d) => Ok(d),
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldKind) -> Self {
        ExactMatrix { rows, cols, field, data: vec![SparseRow::new(); rows] }
    }

    pub fn identity(n: usize, field: FieldKind) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i].insert(i, field.one());
        }
        m
    }

    /// Builds a matrix from dense rows, inferring the field from the entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let field = common_field(rows.iter().flatten(), FieldKind::Rat)?;
        Self::from_rows_in(field, rows)
    }

    pub fn from_rows_in(field: FieldKind, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Invalid("ragged matrix rows".into()));
            }
            for (j, s) in row.into_iter().enumerate() {
                if !s.is_zero() {
                    m.data[i].insert(j, field.coerce(&s)?);
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: FieldKind, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Self::from_rows_in(field, rows).expect("integer entries fit every field")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldKind, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), field);
        for (j, c) in columns.iter().enumerate() {
            for (i, s) in c.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(&j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if s.is_zero() {
            self.data[i].remove(&j);
        } else {
            let s = self.field.coerce(&s).expect("entry outside the matrix field");
            self.data[i].insert(j, s);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let v = self.get(i, j) + s;
        self.set(i, j, v);
    }

    /// All nonzero entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, s)| (i, *j, s)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for (i, j, s) in self.entries() {
            t.data[j].insert(i, s.clone());
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let field = match (self.field, other.field) {
            (a, b) if a == b => a,
            (FieldKind::Rat, b) => b,
            (a, FieldKind::Rat) => a,
            (a, b) => return Err(Error::FieldMismatch(format!("{a} and {b}"))),
        };
        let mut out = Self::zeros(self.rows, other.cols, field);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = SparseRow::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let e = acc.entry(*j).or_insert_with(|| field.zero());
                    *e += &(a * b);
                }
            }
            acc.retain(|_, s| !s.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        self.data
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (j, s) in row {
                    acc += &(s * &v[*j]);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Invalid("dimension mismatch in matrix sum".into()));
        }
        let mut out = self.clone();
        for (i, j, s) in other.entries() {
            out.add_to(i, j, s);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zeros(self.rows, self.cols, self.field);
        for (i, j, s) in self.entries() {
            out.set(i, j, s * c);
        }
        out
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut ech = Echelon::new(self.cols, self.field);
        for row in &self.data {
            ech.insert_sparse(row.clone());
        }
        let pivots: Vec<usize> = ech.pivots.keys().copied().collect();
        let mut out = Self::zeros(self.rows, self.cols, self.field);
        for (k, row) in ech.reduced_rows().into_iter().enumerate() {
            out.data[k] = row;
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, self.field);
        for row in &self.data {
            ech.insert_sparse(row.clone());
        }
        ech.rank()
    }

    /// A basis of the null space, one vector per non-pivot column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (k, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(k);
        }
        let mut out = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (k, &c) in pivots.iter().enumerate() {
                if let Some(s) = r.data[k].get(&f) {
                    v[c] = -s;
                }
            }
            out.push(v);
        }
        out
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1, self.field);
        for (i, j, s) in self.entries() {
            aug.data[i].insert(j, s.clone());
        }
        for (i, s) in b.iter().enumerate() {
            aug.set(i, self.cols, s.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = r.get(k, self.cols);
        }
        Some(x)
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend(other.data.iter().cloned());
        out
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols, self.field);
        for (i, j, s) in self.entries() {
            out.data[i].insert(j, s.clone());
        }
        for (i, j, s) in other.entries() {
            out.data[i].insert(j + self.cols, s.clone());
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        let t = self.transpose();
        (0..self.cols).map(|j| (0..self.rows).map(|i| t.get(j, i)).collect()).collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// An incrementally built row-echelon basis of a subspace of k^n.
///
/// Rows are kept with leading coefficient one and keyed by pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    n: usize,
    field: FieldKind,
    pivots: BTreeMap<usize, SparseRow>,
}

fn axpy(row: &mut SparseRow, c: &Scalar, other: &SparseRow) {
    for (j, s) in other {
        let v = row.get(j).cloned().map_or_else(|| -(c * s), |x| x - (c * s));
        if v.is_zero() {
            row.remove(j);
        } else {
            row.insert(*j, v);
        }
    }
}

pub fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())).collect()
}

impl Echelon {
    pub fn new(n: usize, field: FieldKind) -> Self {
        Echelon { n, field, pivots: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Fully reduces `row` against the stored basis.
    pub fn reduce_sparse(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).find(|(c, _)| self.pivots.contains_key(c)).map(|(c, s)| (*c, s.clone()));
            match next {
                None => return row,
                Some((c, s)) => {
                    axpy(&mut row, &s, &self.pivots[&c]);
                    cursor = c + 1;
                }
            }
        }
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce_sparse(to_sparse(v));
        let mut out = vec![self.field.zero(); self.n];
        for (j, s) in r {
            out[j] = s;
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce_sparse(to_sparse(v)).is_empty()
    }

    /// Adds a vector to the span; returns whether the rank grew.
    pub fn insert_sparse(&mut self, row: SparseRow) -> bool {
        let mut row = row;
        loop {
            let Some((&c, s)) = row.iter().next() else { return false };
            if let Some(p) = self.pivots.get(&c) {
                let s = s.clone();
                axpy(&mut row, &s, p);
            } else {
                let inv = s.inv().expect("nonzero leading entry");
                for v in row.values_mut() {
                    *v = &*v * &inv;
                }
                self.pivots.insert(c, row);
                return true;
            }
        }
    }

    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        self.insert_sparse(to_sparse(v))
    }

    /// The stored rows back-substituted into reduced row-echelon form.
    pub fn reduced_rows(&self) -> Vec<SparseRow> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: BTreeMap<usize, SparseRow> = self.pivots.clone();
        for &c in cols.iter().rev() {
            let p = rows[&c].clone();
            for &d in cols.iter().filter(|&&d| d < c) {
                let r = rows.get_mut(&d).unwrap();
                if let Some(s) = r.get(&c).cloned() {
                    axpy(r, &s, &p);
                }
            }
        }
        rows.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rref() {
        let m = ExactMatrix::identity(2, FieldKind::Rat);
        let (r, p) = m.rref();
        assert_eq!(r, m);
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn proportional_rows() {
        let m = ExactMatrix::from_i64(FieldKind::Rat, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = ExactMatrix::from_i64(FieldKind::Rat, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![Scalar::int(-1), Scalar::int(1)]]);
        assert_eq!(ExactMatrix::zeros(3, 3, FieldKind::Rat).kernel_basis().len(), 3);
        assert!(ExactMatrix::identity(4, FieldKind::Fp(5)).kernel_basis().is_empty());
    }

    #[test]
    fn mixed_primes_rejected() {
        let r = ExactMatrix::from_rows(vec![vec![Scalar::Fp(1, 5), Scalar::Fp(1, 7)]]);
        assert!(matches!(r, Err(Error::FieldMismatch(_))));
        let i = FieldKind::Gauss.sqrt_minus_one().unwrap();
        let r = ExactMatrix::from_rows(vec![vec![i, Scalar::Fp(1, 7)]]);
        assert!(matches!(r, Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ExactMatrix::from_i64(FieldKind::Rat, &[&[1, 2], &[3, 4]]);
        let x = m.solve(&[Scalar::int(5), Scalar::int(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Scalar::int(5), Scalar::int(6)]);
        let m = ExactMatrix::from_i64(FieldKind::Rat, &[&[1, 2], &[2, 4]]);
        assert!(m.solve(&[Scalar::int(1), Scalar::int(1)]).is_none());
    }

    #[test]
    fn gauss_rank() {
        let f = FieldKind::Gauss;
        let i = f.sqrt_minus_one().unwrap();
        let m = ExactMatrix::from_rows_in(f, vec![vec![f.one(), i.clone()], vec![i.clone(), f.from_i64(-1)]]).unwrap();
        assert_eq!(m.rank(), 1);
    }
}
