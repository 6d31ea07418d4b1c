//! The stabilisation of `A/(f_1, ..., f_r)` as a matrix factorisation, the
//! algebra of polynomial differential operators on `A[θ_1, ..., θ_r]`, and
//! the weight-graded cohomology of its endomorphism algebra.

mod clifford;
mod endcoh;
mod polyr;

pub use clifford::{clifford_of_quadratic, clifford_comparison, CliffordAlgebra, CliffordComparison};
pub use endcoh::{end_cohomology, end_cohomology_truncated, ClassRef, CohomologyTable, ProductEntry, TruncatedCohomology};
pub use polyr::{BasisKey, EndDgAlgebra, PolyRElement};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::koszul::{koszul_complex, sigma_homotopy, subsets, SigmaHomotopy};
use crate::matfac::MatrixFactorisation;
use crate::polyring::{division_coefficients, same_ring, Poly, RingRef};

/// `(∧*(A^r), h + d)` split into even and odd exterior powers.
#[derive(Debug, Clone)]
pub struct Stabilisation {
    pub fs: Vec<Poly>,
    pub sigma: Poly,
    pub coeffs: Vec<Poly>,
    pub mf: MatrixFactorisation,
    /// Subsets indexing the even generators, by size then lexicographically.
    pub even_basis: Vec<Vec<usize>>,
    pub odd_basis: Vec<Vec<usize>>,
    homotopy: SigmaHomotopy,
}

/// How the cofactors were obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CofactorChoice {
    pub method: String,
    pub coeffs: Vec<String>,
}

/// Stabilisation with cofactors from [`division_coefficients`].
pub fn stabilise(ring: &RingRef, fs: &[Poly], sigma: &Poly) -> Result<Stabilisation> {
    let coeffs = division_coefficients(sigma, fs)?;
    stabilise_with(ring, fs, sigma, &coeffs)
}

/// Stabilisation with explicitly chosen cofactors `σ = Σ c_i f_i`.
pub fn stabilise_with(ring: &RingRef, fs: &[Poly], sigma: &Poly, coeffs: &[Poly]) -> Result<Stabilisation> {
    same_ring(ring, sigma.ring())?;
    let k = koszul_complex(ring, fs)?;
    let homotopy = sigma_homotopy(&k, sigma, coeffs)?;
    let total = homotopy.total_operator();
    let r = fs.len();
    let all: Vec<Vec<usize>> = (0..=r).flat_map(|j| subsets(r, j)).collect();
    let even_idx: Vec<usize> = (0..all.len()).filter(|&i| all[i].len() % 2 == 0).collect();
    let odd_idx: Vec<usize> = (0..all.len()).filter(|&i| all[i].len() % 2 == 1).collect();
    let pick = |rows: &[usize], cols: &[usize]| {
        let mut m = crate::polyring::PolyMatrix::zeros(ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, total.get(i, j).clone());
            }
        }
        m
    };
    let phi = pick(&even_idx, &odd_idx);
    let psi = pick(&odd_idx, &even_idx);
    let mf = MatrixFactorisation::new(ring, sigma.clone(), phi, psi)?;
    if !mf.is_valid() {
        return Err(Error::Invalid("exterior differential does not square to sigma".into()));
    }
    Ok(Stabilisation {
        fs: fs.to_vec(),
        sigma: sigma.clone(),
        coeffs: coeffs.to_vec(),
        mf,
        even_basis: even_idx.iter().map(|&i| all[i].clone()).collect(),
        odd_basis: odd_idx.iter().map(|&i| all[i].clone()).collect(),
        homotopy,
    })
}

impl Stabilisation {
    pub fn r(&self) -> usize {
        self.fs.len()
    }

    /// `(h + d)² = σ` on the whole exterior algebra.
    pub fn squares_to_sigma(&self) -> bool {
        self.homotopy.total_squares_to_sigma()
    }

    pub fn cofactor_choice(&self) -> CofactorChoice {
        CofactorChoice {
            method: "division by the generators in order, then a tracked Groebner basis".into(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
    }

    /// The endomorphism dg algebra `(Poly(r), δ)` with `δθ_i = f_i`, `δT_i = σ_i`.
    pub fn end_algebra(&self) -> Result<EndDgAlgebra> {
        EndDgAlgebra::new(self.mf.ring(), &self.fs, &self.coeffs)
    }
}

#[cfg(test)]
mod tests;
