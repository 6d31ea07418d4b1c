//! Finite-dimensional graded algebras given by structure constants.

use serde::{Deserialize, Serialize};

use crate::complexes::Grading;
use crate::error::{Error, Result};
use crate::exactcore::{Echelon, ExactMatrix, FieldKind, Scalar};
use crate::polyring::parse_scalar;

/// An associative unital algebra with a homogeneous basis.
///
/// `table[i][j]` holds the coordinates of `e_i e_j`. Under [`Grading::Z2`]
/// only the parity of each degree matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdAlgebra {
    field: FieldKind,
    names: Vec<String>,
    degrees: Vec<i64>,
    grading: Grading,
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

/// A triple of basis elements on which associativity fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub triple: (String, String, String),
}

impl FdAlgebra {
    pub fn new(
        field: FieldKind,
        names: Vec<String>,
        degrees: Vec<i64>,
        grading: Grading,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n || unit.len() != n || table.len() != n {
            return Err(Error::Invalid("structure constants do not match the basis".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(Error::Invalid("structure constants do not match the basis".into()));
            }
        }
        let coerce = |s: &Scalar| field.coerce(s);
        let table = table
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(coerce).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = unit.iter().map(coerce).collect::<Result<Vec<_>>>()?;
        let a = FdAlgebra { field, names, degrees, grading, table, unit };
        for i in 0..n {
            let e = a.basis_vec(i);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                return Err(Error::Invalid(format!("the unit does not act as the identity on {}", a.names[i])));
            }
        }
        Ok(a)
    }

    /// Builds the table from the nonzero products `(i, j, [(k, c)])`, all others zero.
    pub fn from_products(
        field: FieldKind,
        names: &[&str],
        degrees: &[i64],
        grading: Grading,
        products: &[(usize, usize, Vec<(usize, Scalar)>)],
        unit: &[(usize, Scalar)],
    ) -> Result<Self> {
        let n = names.len();
        let mut table = vec![vec![vec![field.zero(); n]; n]; n];
        for (i, j, v) in products {
            if *i >= n || *j >= n {
                return Err(Error::Invalid("product index out of range".into()));
            }
            for (k, c) in v {
                let slot = table[*i][*j].get_mut(*k).ok_or_else(|| Error::Invalid("product index out of range".into()))?;
                *slot += c;
            }
        }
        let mut u = vec![field.zero(); n];
        for (k, c) in unit {
            *u.get_mut(*k).ok_or_else(|| Error::Invalid("unit index out of range".into()))? += c;
        }
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), degrees.to_vec(), grading, table, u)
    }

    /// The subalgebra of `n × n` matrices commuting with the given ones, in degree zero.
    ///
    /// Also returns the basis matrices `m1, m2, …` in the order of the basis.
    pub fn commutant(field: FieldKind, matrices: &[ExactMatrix], grading: Grading) -> Result<(Self, Vec<ExactMatrix>)> {
        let n = matrices.first().map_or(0, ExactMatrix::rows);
        if n == 0 || matrices.iter().any(|x| x.rows() != n || x.cols() != n) {
            return Err(Error::Invalid("commutant needs nonempty square matrices of one size".into()));
        }
        let mut eqs = ExactMatrix::zeros(n * n * matrices.len(), n * n, field);
        for (t, x) in matrices.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let row = t * n * n + i * n + j;
                    for k in 0..n {
                        // (MX - XM)_{ij}
                        let xkj = x.get(k, j);
                        if !xkj.is_zero() {
                            eqs.add_to(row, i * n + k, &xkj);
                        }
                        let xik = x.get(i, k);
                        if !xik.is_zero() {
                            eqs.add_to(row, k * n + j, &-xik);
                        }
                    }
                }
            }
        }
        let basis = eqs.kernel_basis();
        let mats: Vec<ExactMatrix> = basis
            .iter()
            .map(|v| ExactMatrix::from_rows_in(field, v.chunks(n).map(<[Scalar]>::to_vec).collect()))
            .collect::<Result<_>>()?;
        let solver = ExactMatrix::from_columns(field, n * n, &basis);
        let flat = |m: &ExactMatrix| -> Vec<Scalar> { m.to_dense().into_iter().flatten().collect() };
        let coords = |m: &ExactMatrix| solver.solve(&flat(m)).ok_or_else(|| Error::Invalid("commutant is not closed".into()));
        let mut table = Vec::new();
        for a in &mats {
            let mut row = Vec::new();
            for b in &mats {
                row.push(coords(&a.mul(b)?)?);
            }
            table.push(row);
        }
        let unit = coords(&ExactMatrix::identity(n, field))?;
        let names = (1..=mats.len()).map(|i| format!("m{i}")).collect();
        let alg = Self::new(field, names, vec![0; mats.len()], grading, table, unit)?;
        Ok((alg, mats))
    }

    /// The base field in degree zero.
    pub fn base_field(field: FieldKind) -> Self {
        Self::from_products(field, &["1"], &[0], Grading::Z, &[(0, 0, vec![(0, Scalar::one())])], &[(0, Scalar::one())])
            .expect("base field")
    }

    /// `k[x]/x^n` with `x` in the given degree.
    pub fn truncated_polynomial(field: FieldKind, n: usize, x_degree: i64, grading: Grading) -> Self {
        let names: Vec<String> = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let degrees: Vec<i64> = (0..n as i64).map(|i| i * x_degree).collect();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n - i {
                products.push((i, j, vec![(i + j, Scalar::one())]));
            }
        }
        Self::from_products(field, &refs, &degrees, grading, &products, &[(0, Scalar::one())]).expect("truncated polynomial ring")
    }

    /// `k[t]/(t² - c)` with `t` of the given parity, parity graded.
    pub fn quadratic(field: FieldKind, c: Scalar, t_odd: bool) -> Self {
        let products = vec![
            (0, 0, vec![(0, Scalar::one())]),
            (0, 1, vec![(1, Scalar::one())]),
            (1, 0, vec![(1, Scalar::one())]),
            (1, 1, vec![(0, c)]),
        ];
        Self::from_products(field, &["1", "t"], &[0, t_odd as i64], Grading::Z2, &products, &[(0, Scalar::one())])
            .expect("quadratic algebra")
    }

    /// Matrix units `E_ij` of the super matrix algebra on `k^{p|q}`.
    pub fn super_matrices(field: FieldKind, p: usize, q: usize) -> Self {
        let n = p + q;
        let par = |i: usize| (i >= p) as i64;
        let idx = |i: usize, j: usize| i * n + j;
        let names: Vec<String> = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let degrees: Vec<i64> = (0..n * n).map(|k| (par(k / n) + par(k % n)) % 2).collect();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    products.push((idx(i, j), idx(j, l), vec![(idx(i, l), Scalar::one())]));
                }
            }
        }
        let unit: Vec<(usize, Scalar)> = (0..n).map(|i| (idx(i, i), Scalar::one())).collect();
        let grading = if q == 0 { Grading::Z } else { Grading::Z2 };
        Self::from_products(field, &refs, &degrees, grading, &products, &unit).expect("matrix algebra")
    }

    /// `M_n(k)` in degree zero.
    pub fn matrices(field: FieldKind, n: usize) -> Self {
        Self::super_matrices(field, n, 0)
    }

    /// Upper triangular `n × n` matrices.
    pub fn upper_triangular(field: FieldKind, n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let names: Vec<String> = pairs.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let pos = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
        let mut products = Vec::new();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(j2, l)) in pairs.iter().enumerate() {
                if j == j2 {
                    products.push((a, b, vec![(pos((i, l)), Scalar::one())]));
                }
            }
        }
        let unit: Vec<(usize, Scalar)> = (0..n).map(|i| (pos((i, i)), Scalar::one())).collect();
        Self::from_products(field, &refs, &vec![0; pairs.len()], Grading::Z, &products, &unit).expect("triangular")
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn parity(&self, i: usize) -> i64 {
        self.degrees[i].rem_euclid(2)
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x * y;
                for (k, z) in self.table[i][j].iter().enumerate() {
                    if !z.is_zero() {
                        out[k] += &(&c * z);
                    }
                }
            }
        }
        out
    }

    /// Whether two degrees agree in the grading group.
    pub fn same_degree(&self, a: i64, b: i64) -> bool {
        match self.grading {
            Grading::Z => a == b,
            Grading::Z2 => (a - b).rem_euclid(2) == 0,
        }
    }

    /// Whether `v` is homogeneous of degree `deg`.
    pub fn is_homogeneous_of(&self, v: &[Scalar], deg: i64) -> bool {
        v.iter().enumerate().all(|(k, c)| c.is_zero() || self.same_degree(self.degrees[k], deg))
    }

    /// First failure of `(e_i e_j) e_k = e_i (e_j e_k)`.
    pub fn associativity_witness(&self) -> Option<AssociativityWitness> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul(&self.table[i][j], &self.basis_vec(k));
                    let r = self.mul(&self.basis_vec(i), &self.table[j][k]);
                    if l != r {
                        return Some(AssociativityWitness {
                            triple: (self.names[i].clone(), self.names[j].clone(), self.names[k].clone()),
                        });
                    }
                }
            }
        }
        None
    }

    /// First product `e_i e_j` that is not homogeneous of the summed degree.
    pub fn grading_witness(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.is_homogeneous_of(&self.table[i][j], self.degrees[i] + self.degrees[j]))
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        e.len() == self.dim() && self.mul(e, e) == e
    }

    /// The index used to split off the unit, and the complementary basis indices.
    ///
    /// The classes of `e_i` for `i` in the complement form a basis of `A / k·1`.
    pub fn reduced_split(&self) -> (usize, Vec<usize>) {
        let p = self.unit.iter().position(|c| !c.is_zero()).expect("nonzero unit");
        (p, (0..self.dim()).filter(|&i| i != p).collect())
    }

    /// Coordinates of the class of `v` in `A / k·1` with respect to [`reduced_split`](Self::reduced_split).
    pub fn reduce_mod_unit(&self, v: &[Scalar]) -> Vec<Scalar> {
        let (p, rest) = self.reduced_split();
        let ratio = &v[p] * &self.unit[p].inv().unwrap();
        rest.iter().map(|&i| &v[i] - &(&ratio * &self.unit[i])).collect()
    }

    /// Left and right multiplication matrices, columns indexed by basis vectors.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        ExactMatrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn right_mul_matrix(&self, a: &[Scalar]) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(&self.basis_vec(j), a)).collect();
        ExactMatrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Reduced row basis of the span of some vectors.
    pub fn span(&self, vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::new(self.dim(), self.field);
        let mut out = Vec::new();
        for v in vs {
            if ech.insert(v) {
                out.push(v.clone());
            }
        }
        out
    }

    /// Serialisable description.
    pub fn to_spec(&self) -> AlgebraSpec {
        let mut products = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = &self.table[i][j];
                if v.iter().any(|c| !c.is_zero()) {
                    products.push(ProductSpec {
                        left: self.names[i].clone(),
                        right: self.names[j].clone(),
                        result: vector_spec(&self.names, v),
                    });
                }
            }
        }
        AlgebraSpec {
            field: self.field.to_string(),
            basis: self.names.clone(),
            degrees: self.degrees.clone(),
            grading: match self.grading {
                Grading::Z => "z".into(),
                Grading::Z2 => "z2".into(),
            },
            products,
            unit: vector_spec(&self.names, &self.unit),
        }
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<Self> {
        let field = FieldKind::parse(&spec.field)?;
        let names: Vec<&str> = spec.basis.iter().map(String::as_str).collect();
        let grading = match spec.grading.as_str() {
            "z" => Grading::Z,
            "z2" => Grading::Z2,
            g => return Err(Error::Parse(format!("unknown grading {g}"))),
        };
        let degrees = if spec.degrees.is_empty() { vec![0; names.len()] } else { spec.degrees.clone() };
        let mut products = Vec::new();
        for p in &spec.products {
            products.push((index_of(&names, &p.left)?, index_of(&names, &p.right)?, parse_vector(&names, &p.result, field)?));
        }
        let unit = parse_vector(&names, &spec.unit, field)?;
        Self::from_products(field, &names, &degrees, grading, &products, &unit)
    }
}

/// JSON form of an algebra: basis names, degrees, nonzero products and the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default = "default_field")]
    pub field: String,
    pub basis: Vec<String>,
    #[serde(default)]
    pub degrees: Vec<i64>,
    #[serde(default = "default_grading")]
    pub grading: String,
    pub products: Vec<ProductSpec>,
    pub unit: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub left: String,
    pub right: String,
    pub result: Vec<(String, String)>,
}

fn default_field() -> String {
    "rat".into()
}

fn default_grading() -> String {
    "z".into()
}

pub(crate) fn index_of(names: &[&str], name: &str) -> Result<usize> {
    names.iter().position(|n| *n == name).ok_or_else(|| Error::Parse(format!("unknown basis element {name}")))
}

pub(crate) fn parse_vector(names: &[&str], v: &[(String, String)], field: FieldKind) -> Result<Vec<(usize, Scalar)>> {
    v.iter().map(|(n, c)| Ok((index_of(names, n)?, parse_scalar(c, field)?))).collect()
}

pub(crate) fn vector_spec(names: &[String], v: &[Scalar]) -> Vec<(String, String)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (names[k].clone(), c.to_string())).collect()
}

/// Human-readable linear combination of basis names.
pub fn format_vector(names: &[String], v: &[Scalar]) -> String {
    let mut s = String::new();
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let cs = c.to_string();
        let (neg, body) = match cs.strip_prefix('-') {
            Some(b) if !b.contains(['+', '-']) => (true, b.to_string()),
            _ => (false, cs.clone()),
        };
        if neg {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if body == "1" {
            s.push_str(&names[k]);
        } else if body.contains(['+', '-']) {
            s.push_str(&format!("({body})*{}", names[k]));
        } else {
            s.push_str(&format!("{body}*{}", names[k]));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_associative() {
        let f = FieldKind::Rat;
        for a in [
            FdAlgebra::base_field(f),
            FdAlgebra::truncated_polynomial(f, 4, 0, Grading::Z),
            FdAlgebra::quadratic(f, Scalar::int(-1), true),
            FdAlgebra::matrices(f, 2),
            FdAlgebra::super_matrices(f, 1, 2),
            FdAlgebra::upper_triangular(f, 3),
        ] {
            assert_eq!(a.associativity_witness(), None);
            assert_eq!(a.grading_witness(), None);
        }
    }

    #[test]
    fn broken_product_has_witness() {
        let f = FieldKind::Rat;
        let a = FdAlgebra::from_products(
            f,
            &["1", "a"],
            &[0, 0],
            Grading::Z,
            &[(0, 0, vec![(0, Scalar::one())]), (0, 1, vec![(1, Scalar::one())]), (1, 0, vec![(1, Scalar::one())]), (1, 1, vec![(0, Scalar::one()), (1, Scalar::one())])],
            &[(0, Scalar::one())],
        )
        .unwrap();
        assert_eq!(a.associativity_witness(), None);
        let bad = FdAlgebra::from_products(
            f,
            &["1", "a", "b"],
            &[0, 0, 0],
            Grading::Z,
            &[
                (0, 0, vec![(0, Scalar::one())]),
                (0, 1, vec![(1, Scalar::one())]),
                (1, 0, vec![(1, Scalar::one())]),
                (0, 2, vec![(2, Scalar::one())]),
                (2, 0, vec![(2, Scalar::one())]),
                (1, 1, vec![(2, Scalar::one())]),
                (1, 2, vec![(0, Scalar::one())]),
            ],
            &[(0, Scalar::one())],
        )
        .unwrap();
        assert!(bad.associativity_witness().is_some());
    }

    #[test]
    fn unit_must_act() {
        let f = FieldKind::Rat;
        let r = FdAlgebra::from_products(f, &["1", "x"], &[0, 0], Grading::Z, &[(0, 0, vec![(0, Scalar::one())])], &[(0, Scalar::one())]);
        assert!(r.is_err());
    }

    #[test]
    fn reduction_mod_unit() {
        let a = FdAlgebra::matrices(FieldKind::Rat, 2);
        let (p, rest) = a.reduced_split();
        assert_eq!((p, rest), (0, vec![1, 2, 3]));
        let v = a.unit().to_vec();
        assert!(a.reduce_mod_unit(&v).iter().all(Scalar::is_zero));
        assert_eq!(a.reduce_mod_unit(&a.basis_vec(3)), vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        assert_eq!(a.reduce_mod_unit(&a.basis_vec(0)), vec![Scalar::zero(), Scalar::zero(), Scalar::int(-1)]);
    }

    #[test]
    fn spec_round_trip() {
        let a = FdAlgebra::quadratic(FieldKind::Rat, Scalar::int(-1), true);
        let s = a.to_spec();
        let json = serde_json::to_string(&s).unwrap();
        let back: AlgebraSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(FdAlgebra::from_spec(&back).unwrap(), a);
        assert_eq!(format_vector(a.names(), &[Scalar::int(2), Scalar::int(-1)]), "2*1-t");
    }
}
