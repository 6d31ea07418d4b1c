use num::{Signed, Zero};

use super::paths::{field_of_relations, path_basis, LengthDims, Path, PathElement, Truncation};
use super::{Arrow, Quiver};
use crate::error::{Error, Result};
use crate::exactcore::{FieldKind, Scalar};
use crate::polyring::parse_scalar;

/// Parses weights such as `"0"`, `"1/2"` or `"1+2i"` over the Gaussian rationals.
pub fn parse_weights(texts: &[String]) -> Result<Vec<Scalar>> {
    texts.iter().map(|t| parse_scalar(t, FieldKind::Gauss)).collect()
}

/// First index whose weight has negative real part, or zero real part and negative imaginary part.
pub fn first_non_quasi_dominant(lambda: &[Scalar]) -> Option<usize> {
    lambda.iter().position(|l| match l.re_im() {
        Some((re, im)) => re.is_negative() || (re.is_zero() && im.is_negative()),
        None => true,
    })
}

pub fn quasi_dominant(lambda: &[Scalar]) -> bool {
    first_non_quasi_dominant(lambda).is_none()
}

fn check_weights(q: &Quiver, lambda: &[Scalar]) -> Result<()> {
    if lambda.len() != q.num_vertices() {
        return Err(Error::Invalid(format!("expected {} weights, got {}", q.num_vertices(), lambda.len())));
    }
    if lambda.iter().any(|l| l.re_im().is_none()) {
        return Err(Error::FieldMismatch("weights must lie in Q(i)".into()));
    }
    Ok(())
}

/// One relation per vertex on the double quiver of `q`:
/// `Σ_{a: i->j} a a* - Σ_{a: j->i} a* a - λ_i e_i`.
pub fn preprojective_relations(q: &Quiver, lambda: &[Scalar]) -> Result<Vec<PathElement>> {
    check_weights(q, lambda)?;
    let dq = q.double();
    let m = q.arrows.len();
    let mut rels = Vec::new();
    for (i, l) in lambda.iter().enumerate() {
        let mut r = PathElement::from_path(Path::trivial(i), -l.clone());
        for (a, arr) in q.arrows.iter().enumerate() {
            let fwd = Path::arrow(&dq, a);
            let back = Path::arrow(&dq, a + m);
            if arr.from == i {
                r.add_term(super::path_multiply(&fwd, &back).unwrap(), Scalar::one());
            }
            if arr.to == i {
                r.add_term(super::path_multiply(&back, &fwd).unwrap(), -Scalar::one());
            }
        }
        rels.push(r);
    }
    Ok(rels)
}

/// The derived deformed preprojective algebra: the double quiver with a loop
/// `t_i` of degree -1 at every vertex and `d(t_i)` the i-th relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DGQuiverAlgebra {
    pub quiver: Quiver,
    pub lambda: Vec<Scalar>,
    /// Number of degree-zero arrows; the loop at vertex i has index `base_arrows + i`.
    pub base_arrows: usize,
    pub d_loops: Vec<PathElement>,
}

pub fn derived_preprojective(q: &Quiver, lambda: &[Scalar]) -> Result<DGQuiverAlgebra> {
    let rels = preprojective_relations(q, lambda)?;
    let mut dq = q.double();
    let base_arrows = dq.arrows.len();
    for (i, v) in q.vertices.iter().enumerate() {
        dq.arrows.push(Arrow { name: format!("t{v}"), from: i, to: i, degree: -1 });
    }
    dq.validate()?;
    Ok(DGQuiverAlgebra { quiver: dq, lambda: lambda.to_vec(), base_arrows, d_loops: rels })
}

impl DGQuiverAlgebra {
    pub fn loop_index(&self, i: usize) -> usize {
        self.base_arrows + i
    }

    /// Applies the differential, extended by the Leibniz rule with the Koszul sign.
    pub fn differential(&self, e: &PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for (p, c) in &e.terms {
            let mut sign = Scalar::one();
            for (k, &a) in p.arrows.iter().enumerate() {
                if a < self.base_arrows {
                    continue;
                }
                let i = a - self.base_arrows;
                let prefix = Path { start: p.start, end: i, arrows: p.arrows[..k].to_vec() };
                let suffix = Path { start: i, end: p.end, arrows: p.arrows[k + 1..].to_vec() };
                let term = PathElement::from_path(prefix, &sign * c)
                    .mul(&self.d_loops[i])
                    .mul(&PathElement::from_path(suffix, Scalar::one()));
                out = out.add(&term);
                sign = -sign;
            }
        }
        out
    }

    pub fn degree(&self, p: &Path) -> i64 {
        p.degree(&self.quiver)
    }

    /// Dimensions of the truncations of `H⁰`, where a loop counts as length two.
    ///
    /// Degree-zero paths of length at most `n` are divided by the image of the
    /// differential on `p t_i q` with `len p + 2 + len q <= n`.
    pub fn h0_truncated_dims(&self, max_len: usize) -> LengthDims {
        let base = Quiver {
            vertices: self.quiver.vertices.clone(),
            arrows: self.quiver.arrows[..self.base_arrows].to_vec(),
            extending: self.quiver.extending,
        };
        let field = field_of_relations(&self.d_loops);
        let mut t = Truncation::new(&base, max_len, field, false);
        let paths = path_basis(&base, max_len);
        let mut cumulative = Vec::new();
        for n in 0..=max_len {
            if n >= 2 {
                for lp in 0..=n - 2 {
                    let lq = n - 2 - lp;
                    for p in paths.iter().filter(|p| p.len() == lp) {
                        for s in paths.iter().filter(|s| s.len() == lq && s.start == p.end) {
                            let i = p.end;
                            let mut arrows = p.arrows.clone();
                            arrows.push(self.loop_index(i));
                            arrows.extend_from_slice(&s.arrows);
                            let x = Path { start: p.start, end: s.end, arrows };
                            let dx = self.differential(&PathElement::from_path(x, Scalar::one()));
                            if !dx.is_zero() {
                                let v = t.vector(&dx);
                                t.ech.insert(&v);
                            }
                        }
                    }
                }
            }
            cumulative.push(t.count_up_to(n) - t.ech.rank());
        }
        let by_length =
            cumulative.iter().enumerate().map(|(n, &c)| c as i64 - if n == 0 { 0 } else { cumulative[n - 1] as i64 }).collect();
        LengthDims { cumulative, by_length }
    }

    /// Checks `d(d(x)) = 0` on every path with at most `max_loops` loops and at most `max_arrows` arrows.
    pub fn d_squared_zero_up_to(&self, max_arrows: usize, max_loops: usize) -> bool {
        path_basis(&self.quiver, max_arrows)
            .into_iter()
            .filter(|p| p.arrows.iter().filter(|&&a| a >= self.base_arrows).count() <= max_loops)
            .all(|p| self.differential(&self.differential(&PathElement::from_path(p, Scalar::one()))).is_zero())
    }

    /// The relations `d(t_i)` as ideal generators of `H⁰`.
    pub fn relations(&self) -> &[PathElement] {
        &self.d_loops
    }
}
