use serde::Serialize;

use super::groebner::{GroebnerBasis, QuotientBasis};
use super::poly::Poly;
use super::ring::RingRef;
use crate::error::{Error, Result};

/// Dimension data of a Milnor or Tjurina algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SingularityAlgebra {
    pub basis: Vec<Vec<u32>>,
    /// `None` when the algebra is infinite-dimensional.
    pub number: Option<usize>,
    /// The order bound N when the computation took place in ring/m^N.
    pub truncated_at: Option<u32>,
}

/// The formal partial derivatives of `sigma`.
pub fn jacobian_ideal(sigma: &Poly) -> Vec<Poly> {
    (0..sigma.ring().nvars()).map(|i| sigma.derivative(i)).collect()
}

fn check_sigma(sigma: &Poly) -> Result<()> {
    if !sigma.constant_term().is_zero() {
        return Err(Error::NotInMaximalIdeal);
    }
    let p = sigma.field().characteristic();
    let deg = sigma.total_degree().unwrap_or(0) as u64;
    if p != 0 && p <= deg {
        return Err(Error::CharTooSmall { p, degree: deg });
    }
    Ok(())
}

/// All monomials of ordinary degree exactly `n`.
pub fn power_of_maximal_ideal(ring: &RingRef, n: u32) -> Vec<Poly> {
    let k = ring.nvars();
    let mut out = Vec::new();
    let mut e = vec![0u32; k];
    fn rec(ring: &RingRef, e: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Poly>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(Poly::term(ring, ring.mono(e.clone()), crate::exactcore::Scalar::one()));
            e[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            e[i] = a;
            rec(ring, e, i + 1, left - a, out);
        }
        e[i] = 0;
    }
    if k > 0 {
        rec(ring, &mut e, 0, n, &mut out);
    }
    out
}

fn algebra(sigma: &Poly, mut gens: Vec<Poly>, order_bound: Option<u32>) -> Result<SingularityAlgebra> {
    check_sigma(sigma)?;
    let ring = sigma.ring();
    if let Some(n) = order_bound {
        gens.extend(power_of_maximal_ideal(ring, n));
    }
    let gb = GroebnerBasis::of(ring, &gens)?;
    let QuotientBasis { monomials, finite } = gb.quotient_basis();
    Ok(SingularityAlgebra {
        number: finite.then_some(monomials.len()),
        basis: monomials,
        truncated_at: order_bound,
    })
}

/// The Milnor algebra k[x]/(d sigma / d x_i).
pub fn milnor_algebra(sigma: &Poly) -> Result<SingularityAlgebra> {
    algebra(sigma, jacobian_ideal(sigma), None)
}

/// The Milnor algebra computed in ring/m^N.
pub fn milnor_algebra_truncated(sigma: &Poly, order_bound: u32) -> Result<SingularityAlgebra> {
    algebra(sigma, jacobian_ideal(sigma), Some(order_bound))
}

/// The Tjurina algebra k[x]/(sigma, d sigma / d x_i).
pub fn tjurina_algebra(sigma: &Poly) -> Result<SingularityAlgebra> {
    let mut g = vec![sigma.clone()];
    g.extend(jacobian_ideal(sigma));
    algebra(sigma, g, None)
}

pub fn tjurina_algebra_truncated(sigma: &Poly, order_bound: u32) -> Result<SingularityAlgebra> {
    let mut g = vec![sigma.clone()];
    g.extend(jacobian_ideal(sigma));
    algebra(sigma, g, Some(order_bound))
}

/// Whether every monomial of `sigma` has the same weighted degree for the
/// given weights; returns that degree when it does.
pub fn is_quasi_homogeneous(sigma: &Poly, weights: &[i64]) -> Result<Option<i64>> {
    if sigma.is_zero() {
        return Err(Error::QhOfZeroUndefined);
    }
    if weights.len() != sigma.ring().nvars() || weights.iter().any(|&w| w < 1) {
        return Err(Error::Invalid("weights must be positive, one per variable".into()));
    }
    let mut it = sigma.terms().map(|(m, _)| m.exps().iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum::<i64>());
    let d = it.next().unwrap();
    Ok(it.all(|v| v == d).then_some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::FieldKind;
    use crate::polyring::{parse_poly, Ring};

    fn p(vars: &[&str], s: &str) -> Poly {
        parse_poly(&Ring::new(vars, FieldKind::Rat).unwrap(), s).unwrap()
    }

    #[test]
    fn jacobian() {
        let s = p(&["x", "y", "z"], "x^2+y^2+z^3");
        let j: Vec<String> = jacobian_ideal(&s).iter().map(ToString::to_string).collect();
        assert_eq!(j, vec!["2*x", "2*y", "3*z^2"]);
        let c = p(&["x", "y"], "5");
        assert!(jacobian_ideal(&c).iter().all(Poly::is_zero));
    }

    #[test]
    fn small_milnor_numbers() {
        assert_eq!(milnor_algebra(&p(&["x"], "x^2")).unwrap().number, Some(1));
        assert_eq!(milnor_algebra(&p(&["x", "y"], "x*y")).unwrap().number, Some(1));
        assert_eq!(tjurina_algebra(&p(&["x"], "x^2")).unwrap().number, Some(1));
        assert_eq!(milnor_algebra(&p(&["x"], "x^2+1")), Err(Error::NotInMaximalIdeal));
    }

    #[test]
    fn non_isolated_is_infinite() {
        let s = p(&["x", "y"], "x^2");
        assert_eq!(milnor_algebra(&s).unwrap().number, None);
        let t = milnor_algebra_truncated(&s, 4).unwrap();
        assert_eq!(t.number, Some(4));
        assert_eq!(t.truncated_at, Some(4));
    }

    #[test]
    fn small_characteristic_refused() {
        let r = Ring::new(&["x"], FieldKind::Fp(3)).unwrap();
        let s = parse_poly(&r, "x^3").unwrap();
        assert_eq!(milnor_algebra(&s), Err(Error::CharTooSmall { p: 3, degree: 3 }));
    }

    #[test]
    fn quasi_homogeneity() {
        let s = p(&["x", "y", "z"], "x^2+y^2+z^3");
        assert_eq!(is_quasi_homogeneous(&s, &[3, 3, 2]).unwrap(), Some(6));
        assert_eq!(is_quasi_homogeneous(&p(&["x"], "x^2+x^3"), &[1]).unwrap(), None);
        assert_eq!(is_quasi_homogeneous(&p(&["x", "y"], "x^3*y"), &[5, 2]).unwrap(), Some(17));
        assert_eq!(is_quasi_homogeneous(&p(&["x"], "0"), &[1]), Err(Error::QhOfZeroUndefined));
    }
}
