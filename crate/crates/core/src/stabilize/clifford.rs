use std::collections::BTreeMap;

use super::endcoh::{end_cohomology, ClassRef};
use super::polyr::PolyRElement;
use super::Stabilisation;
use crate::error::{Error, Result};
use crate::exactcore::{ExactMatrix, FieldKind, Scalar};
use crate::polyring::{Poly, RingRef};

/// The Clifford algebra on `Γ_1, ..., Γ_n` with `Γ_iΓ_j + Γ_jΓ_i = a_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordAlgebra {
    pub names: Vec<String>,
    /// `a_ij = -∂_i∂_j σ`.
    pub form: Vec<Vec<Scalar>>,
    pub field: FieldKind,
}

/// Presentation read from a quadratic form, normalised so that `x²` gives `Γ² = -1`.
pub fn clifford_of_quadratic(sigma: &Poly) -> Result<CliffordAlgebra> {
    if sigma.is_zero() || sigma.terms().any(|(m, _)| m.degree() != 2) {
        return Err(Error::NotQuadratic);
    }
    let ring = sigma.ring();
    let n = ring.nvars();
    let form = (0..n)
        .map(|i| (0..n).map(|j| -sigma.derivative(i).derivative(j).constant_term()).collect())
        .collect();
    Ok(CliffordAlgebra { names: ring.vars().to_vec(), form, field: ring.field() })
}

impl CliffordAlgebra {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    /// `Γ_i · Γ_S` for a sorted subset `S`.
    fn left_gen(&self, i: usize, s: u32) -> BTreeMap<u32, Scalar> {
        let mut out = BTreeMap::new();
        if s == 0 {
            out.insert(1 << i, Scalar::one());
            return out;
        }
        let first = s.trailing_zeros() as usize;
        let rest = s & !(1 << first);
        if i < first {
            out.insert(s | (1 << i), Scalar::one());
        } else if i == first {
            let half = &self.form[i][i] * &Scalar::Rat(num::BigRational::new(1.into(), 2.into()));
            out.insert(rest, half);
        } else {
            out.insert(rest, self.form[i][first].clone());
            for (m, c) in self.left_gen(i, rest) {
                let e = out.entry(m | (1 << first)).or_insert_with(|| self.field.zero());
                *e -= &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `Γ_S · Γ_T` in the basis of increasing words.
    pub fn product(&self, s: u32, t: u32) -> BTreeMap<u32, Scalar> {
        let mut cur = BTreeMap::from([(t, Scalar::one())]);
        for i in (0..self.n()).rev().filter(|i| s & (1 << i) != 0) {
            let mut next: BTreeMap<u32, Scalar> = BTreeMap::new();
            for (m, c) in &cur {
                for (m2, c2) in self.left_gen(i, *m) {
                    let e = next.entry(m2).or_insert_with(|| self.field.zero());
                    *e += &(c * &c2);
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur
    }

    /// Relations `Γ_iΓ_j + Γ_jΓ_i = a_ij` as text.
    pub fn relations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in i..self.n() {
                if i == j {
                    let half = &self.form[i][i] * &Scalar::Rat(num::BigRational::new(1.into(), 2.into()));
                    out.push(format!("G{0}*G{0} = {1}", i + 1, half));
                } else {
                    out.push(format!("G{0}*G{1} + G{1}*G{0} = {2}", i + 1, j + 1, self.form[i][j]));
                }
            }
        }
        out
    }

    /// Whether matrices satisfying the relations span a space of dimension `2^n`,
    /// so that they define an isomorphism onto a matrix algebra of that size.
    pub fn matrix_images_define_isomorphism(&self, images: &[ExactMatrix]) -> bool {
        if images.len() != self.n() {
            return false;
        }
        let d = images.first().map_or(0, ExactMatrix::rows);
        if d * d != self.dim() {
            return false;
        }
        let id = ExactMatrix::identity(d, self.field);
        for i in 0..self.n() {
            for j in 0..self.n() {
                let (Ok(a), Ok(b)) = (images[i].mul(&images[j]), images[j].mul(&images[i])) else {
                    return false;
                };
                if a.add(&b).ok() != Some(id.scale(&self.form[i][j])) {
                    return false;
                }
            }
        }
        let mut words = Vec::new();
        for s in 0..self.dim() as u32 {
            let mut m = id.clone();
            for i in (0..self.n()).filter(|i| s & (1 << i) != 0) {
                m = m.mul(&images[i]).expect("square matrices");
            }
            words.push(m.to_dense().concat());
        }
        ExactMatrix::from_columns(self.field, d * d, &words).rank() == self.dim()
    }
}

/// Comparison of the Clifford presentation with the cohomology of the endomorphism algebra.
#[derive(Debug, Clone)]
pub struct CliffordComparison {
    pub algebra: CliffordAlgebra,
    /// `Γ_i = T_i - Σ_j c_ij θ_j` where `σ_i = Σ_j c_ij x_j`.
    pub generators: Vec<PolyRElement>,
    pub cohomology_dim: usize,
    pub relations_hold: bool,
    pub classes_independent: bool,
    pub table_matches: bool,
}

impl CliffordComparison {
    pub fn is_isomorphism(&self) -> bool {
        self.relations_hold && self.classes_independent && self.table_matches && self.cohomology_dim == self.algebra.dim()
    }
}

/// Matches the stabilisation of the residue field for a quadratic `σ` with its Clifford algebra.
pub fn clifford_comparison(stab: &Stabilisation, weight_window: i64) -> Result<CliffordComparison> {
    let cl = clifford_of_quadratic(&stab.sigma)?;
    let ring: &RingRef = stab.mf.ring();
    let n = ring.nvars();
    if stab.fs.len() != n || (0..n).any(|i| stab.fs[i] != Poly::var(ring, i)) {
        return Err(Error::Invalid("the comparison needs the generators to be the variables".into()));
    }
    let mut generators = Vec::new();
    for i in 0..n {
        let c = &stab.coeffs[i];
        if c.terms().any(|(m, _)| m.degree() != 1) {
            return Err(Error::NotQuadratic);
        }
        let mut g = PolyRElement::t(ring, n, i);
        for j in 0..n {
            let cij = c.coeff(&ring.var_mono(j));
            if !cij.is_zero() {
                g = g.sub(&PolyRElement::theta(ring, n, j).scale_poly(&Poly::constant(ring, cij)));
            }
        }
        generators.push(g);
    }
    let e = stab.end_algebra()?;
    let table = end_cohomology(&e, -weight_window, weight_window)?;
    let word = |s: u32| -> PolyRElement {
        let mut w = PolyRElement::one(ring, n);
        for i in (0..n).filter(|i| s & (1 << i) != 0) {
            w = w.mul(&generators[i]);
        }
        w
    };
    let mut relations_hold = true;
    for i in 0..n {
        for j in 0..n {
            let ac = generators[i].mul(&generators[j]).add(&generators[j].mul(&generators[i]));
            if ac != PolyRElement::scalar(ring, n, Poly::constant(ring, cl.form[i][j].clone())) {
                relations_hold = false;
            }
        }
    }
    let all: Vec<ClassRef> = table
        .reps
        .iter()
        .flat_map(|(&(p, w), v)| (0..v.len()).map(move |i| ClassRef { parity: p, weight: w, index: i }))
        .collect();
    let pos: BTreeMap<ClassRef, usize> = all.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let coords = |z: &PolyRElement| -> Result<Vec<Scalar>> {
        let mut v = vec![ring.field().zero(); all.len()];
        for (c, x) in table.class_of(z)? {
            let k = pos.get(&c).ok_or_else(|| Error::Invalid("class outside the weight window".into()))?;
            v[*k] = x;
        }
        Ok(v)
    };
    let dim = cl.dim() as u32;
    let word_coords: Vec<Vec<Scalar>> = (0..dim).map(|s| coords(&word(s))).collect::<Result<_>>()?;
    let classes_independent = ExactMatrix::from_columns(ring.field(), all.len(), &word_coords).rank() == cl.dim();
    let mut table_matches = true;
    for s in 0..dim {
        for t in 0..dim {
            let lhs = coords(&word(s).mul(&word(t)))?;
            let mut rhs = vec![ring.field().zero(); all.len()];
            for (u, c) in cl.product(s, t) {
                for (k, x) in word_coords[u as usize].iter().enumerate() {
                    rhs[k] += &(x * &c);
                }
            }
            if lhs != rhs {
                table_matches = false;
            }
        }
    }
    Ok(CliffordComparison {
        algebra: cl,
        generators,
        cohomology_dim: table.total(),
        relations_hold,
        classes_independent,
        table_matches,
    })
}
