//! Matrix factorisations `φψ = ψφ = σ·id` over a polynomial ring.
//!
//! A factorisation is stored as the pair `phi: X1 -> X0`, `psi: X0 -> X1`.
//! When σ is weighted homogeneous, generator weights are inferred so that
//! both maps raise weight by half the weight of σ; odd weights are handled by
//! doubling every weight (`scale = 2`).

mod knoerrer;
mod morphism;

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

pub use knoerrer::{
    knoerrer_g, knoerrer_h, restrict_rho, rho_g_certificate, rho_rho_h_certificate, sigma_g_certificate, tau,
};
pub use morphism::{find_isomorphism, IsoSearch, MfMorphism};

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::polyring::{same_ring, GroebnerBasis, Poly, PolyMatrix, RingRef};

/// Generator weights of a graded factorisation, in units of `1 / scale`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MfGrading {
    pub even: Vec<i64>,
    pub odd: Vec<i64>,
    pub shift: i64,
    pub scale: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorisation {
    ring: RingRef,
    sigma: Poly,
    phi: PolyMatrix,
    psi: PolyMatrix,
    grading: Option<MfGrading>,
}

/// First entry where a product differs from `σ·id`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub product: String,
    pub row: usize,
    pub col: usize,
    pub found: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub witness: Option<Witness>,
}

/// A presentation `X1 -> X0 -> M -> 0` over the quotient ring.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub quotient: GroebnerBasis,
    pub matrix: PolyMatrix,
    complex: FreeComplex,
}

impl Presentation {
    pub fn generators(&self) -> usize {
        self.matrix.rows()
    }

    pub fn relations(&self) -> usize {
        self.matrix.cols()
    }

    /// Dimension of each weight piece of the module for weights in `lo..=hi`.
    pub fn slice_dims(&self, lo: i64, hi: i64) -> Result<BTreeMap<i64, usize>> {
        self.complex.check_homogeneous()?;
        (lo..=hi).map(|w| Ok((w, self.complex.cohomology_dim(0, w)?))).collect()
    }

    /// Rank of the matrix of constant terms; full row rank means the module is zero.
    pub fn constant_rank(&self) -> usize {
        let field = self.matrix.ring().field();
        let rows = (0..self.matrix.rows())
            .map(|i| (0..self.matrix.cols()).map(|j| self.matrix.get(i, j).constant_term()).collect())
            .collect();
        crate::exactcore::ExactMatrix::from_rows_in(field, rows).map_or(0, |m| m.rank())
    }

    pub fn is_zero_module(&self) -> bool {
        self.constant_rank() == self.generators()
    }
}

fn parity_weights(g: &MfGrading, j: i64) -> &[i64] {
    if j.rem_euclid(2) == 0 {
        &g.even
    } else {
        &g.odd
    }
}

/// Generator weights making `phi` and `psi` homogeneous of weight `W/2`.
pub fn infer_grading(sigma: &Poly, phi: &PolyMatrix, psi: &PolyMatrix) -> Option<MfGrading> {
    let w = sigma.homogeneous_weight()?;
    let scale = if w % 2 == 0 { 1 } else { 2 };
    let s = scale * w / 2;
    let n = phi.rows();
    let mut weight: Vec<Option<i64>> = vec![None; 2 * n];
    // edges (from, to, offset): weight[to] = weight[from] + offset
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); 2 * n];
    for (m, src_odd) in [(psi, false), (phi, true)] {
        for b in 0..n {
            for a in 0..n {
                let e = m.get(b, a);
                if e.is_zero() {
                    continue;
                }
                let ew = e.homogeneous_weight()? * scale;
                let (src, tgt) = if src_odd { (n + a, b) } else { (a, n + b) };
                let off = s - ew;
                adj[src].push((tgt, off));
                adj[tgt].push((src, -off));
            }
        }
    }
    for root in 0..2 * n {
        if weight[root].is_some() {
            continue;
        }
        weight[root] = Some(if root < n { 0 } else { s });
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let wu = weight[u].unwrap();
            for &(v, off) in &adj[u] {
                match weight[v] {
                    None => {
                        weight[v] = Some(wu + off);
                        queue.push_back(v);
                    }
                    Some(wv) if wv != wu + off => return None,
                    _ => {}
                }
            }
        }
    }
    let weight: Vec<i64> = weight.into_iter().map(Option::unwrap).collect();
    Some(MfGrading { even: weight[..n].to_vec(), odd: weight[n..].to_vec(), shift: s, scale })
}

impl MatrixFactorisation {
    pub fn new(ring: &RingRef, sigma: Poly, phi: PolyMatrix, psi: PolyMatrix) -> Result<Self> {
        same_ring(ring, sigma.ring())?;
        same_ring(ring, phi.ring())?;
        same_ring(ring, psi.ring())?;
        let n = phi.rows();
        if phi.cols() != n || psi.rows() != n || psi.cols() != n {
            return Err(Error::Invalid("factorisation matrices must be square of equal size".into()));
        }
        let grading = infer_grading(&sigma, &phi, &psi);
        Ok(MatrixFactorisation { ring: ring.clone(), sigma, phi, psi, grading })
    }

    pub fn parse(ring: &RingRef, sigma: &str, phi: &[&[&str]], psi: &[&[&str]]) -> Result<Self> {
        let s = crate::polyring::parse_poly(ring, sigma)?;
        Self::new(ring, s, PolyMatrix::parse(ring, phi)?, PolyMatrix::parse(ring, psi)?)
    }

    /// The rank-zero factorisation.
    pub fn zero(ring: &RingRef, sigma: Poly) -> Self {
        Self::new(ring, sigma, PolyMatrix::zeros(ring, 0, 0), PolyMatrix::zeros(ring, 0, 0)).unwrap()
    }

    /// `(1, σ)`: φ is the identity of rank one.
    pub fn trivial(ring: &RingRef, sigma: Poly) -> Self {
        let psi = PolyMatrix::scalar(ring, 1, &sigma);
        Self::new(ring, sigma, PolyMatrix::identity(ring, 1), psi).unwrap()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn sigma(&self) -> &Poly {
        &self.sigma
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    pub fn rank(&self) -> usize {
        self.phi.rows()
    }

    pub fn grading(&self) -> Option<&MfGrading> {
        self.grading.as_ref()
    }

    /// Replaces the inferred generator weights.
    pub fn with_grading(mut self, g: MfGrading) -> Result<Self> {
        if g.even.len() != self.rank() || g.odd.len() != self.rank() {
            return Err(Error::Invalid("grading has the wrong length".into()));
        }
        self.grading = Some(g);
        self.to_complex().check_homogeneous()?;
        Ok(self)
    }

    pub fn verify(&self) -> Verification {
        let target = PolyMatrix::scalar(&self.ring, self.rank(), &self.sigma);
        for (name, prod) in [("phi*psi", self.phi.mul(&self.psi)), ("psi*phi", self.psi.mul(&self.phi))] {
            if let Some((row, col)) = prod.first_difference(&target) {
                return Verification {
                    ok: false,
                    witness: Some(Witness {
                        product: name.into(),
                        row,
                        col,
                        found: prod.get(row, col).to_string(),
                        expected: target.get(row, col).to_string(),
                    }),
                };
            }
        }
        Verification { ok: true, witness: None }
    }

    pub fn is_valid(&self) -> bool {
        self.verify().ok
    }

    /// `Σ`: exchanges the two halves.
    pub fn shift(&self) -> Self {
        MatrixFactorisation {
            ring: self.ring.clone(),
            sigma: self.sigma.clone(),
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            grading: self.grading.as_ref().map(|g| MfGrading {
                even: g.odd.clone(),
                odd: g.even.clone(),
                ..g.clone()
            }),
        }
    }

    fn same_sigma(&self, o: &Self) -> Result<()> {
        same_ring(&self.ring, &o.ring)?;
        if self.sigma != o.sigma {
            return Err(Error::SigmaMismatch);
        }
        Ok(())
    }

    /// Block-diagonal sum.
    pub fn sum(&self, o: &Self) -> Result<Self> {
        self.same_sigma(o)?;
        let phi = PolyMatrix::direct_sum(&self.phi, &o.phi);
        let psi = PolyMatrix::direct_sum(&self.psi, &o.psi);
        let mut out = Self::new(&self.ring, self.sigma.clone(), phi, psi)?;
        if let (Some(a), Some(b)) = (&self.grading, &o.grading) {
            if a.shift == b.shift && a.scale == b.scale {
                let g = MfGrading {
                    even: a.even.iter().chain(&b.even).copied().collect(),
                    odd: a.odd.iter().chain(&b.odd).copied().collect(),
                    ..a.clone()
                };
                out = out.with_grading(g)?;
            }
        }
        Ok(out)
    }

    fn ungraded(&self) -> MfGrading {
        MfGrading { even: vec![0; self.rank()], odd: vec![0; self.rank()], shift: 0, scale: 1 }
    }

    fn complex_with(&self, g: &MfGrading) -> FreeComplex {
        FreeComplex::new_z2(
            &self.ring,
            [g.even.clone(), g.odd.clone()],
            self.psi.clone(),
            self.phi.clone(),
            Some(self.sigma.clone()),
            g.shift,
            g.scale,
        )
        .expect("square matrices of equal size")
    }

    /// The curved parity-graded complex with `d0 = ψ`, `d1 = φ` and `d² = σ`.
    pub fn to_complex(&self) -> FreeComplex {
        self.complex_with(&self.grading.clone().unwrap_or_else(|| self.ungraded()))
    }

    /// Parity-graded complex of module maps `X -> Y`, which squares to zero.
    pub fn hom_complex(x: &Self, y: &Self) -> Result<FreeComplex> {
        x.same_sigma(y)?;
        let (gx, gy) = match (&x.grading, &y.grading) {
            (Some(a), Some(b)) if a.shift == b.shift && a.scale == b.scale => (a.clone(), b.clone()),
            _ => (x.ungraded(), y.ungraded()),
        };
        FreeComplex::hom(&x.complex_with(&gx), &y.complex_with(&gy))
    }

    /// The 2-periodic complex over `ring/(σ)` in degrees `-window..=window`.
    ///
    /// Degree `j` holds `X_{j mod 2}` with weights shifted by `-j·s`; the map out
    /// of an even degree is `ψ` and out of an odd degree is `φ`.
    pub fn unfold(&self, window: i64) -> Result<FreeComplex> {
        let g = self.grading.clone().unwrap_or_else(|| self.ungraded());
        let mut modules = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        if self.rank() > 0 {
            for j in -window..=window {
                modules.insert(j, parity_weights(&g, j).iter().map(|w| w - j * g.shift).collect::<Vec<_>>());
                if j < window {
                    let d = if j.rem_euclid(2) == 0 { &self.psi } else { &self.phi };
                    diffs.insert(j, d.clone());
                }
            }
        }
        let gb = GroebnerBasis::of(&self.ring, &[self.sigma.clone()])?;
        FreeComplex::new(&self.ring, modules.clone(), diffs)?.with_weights(modules, 0, g.scale)?.over_quotient(gb)
    }

    /// `coker(φ̄)` presented over `ring/(σ)`.
    pub fn cokernel(&self) -> Result<Presentation> {
        let g = self.grading.clone().unwrap_or_else(|| self.ungraded());
        let quotient = GroebnerBasis::of(&self.ring, &[self.sigma.clone()])?;
        let matrix = self.phi.reduce(&quotient);
        let mut modules = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        if self.rank() > 0 {
            modules.insert(-1, g.odd.iter().map(|w| w + g.shift).collect::<Vec<_>>());
            modules.insert(0, g.even.clone());
            diffs.insert(-1, matrix.clone());
        }
        let complex = FreeComplex::new(&self.ring, modules.clone(), diffs)?
            .with_weights(modules, 0, g.scale)?
            .over_quotient(quotient.clone())?;
        Ok(Presentation { quotient, matrix, complex })
    }

    /// Tensor product over the joined ring, a factorisation of `σ₁ + σ₂`.
    pub fn tensor(a: &Self, b: &Self) -> Result<Self> {
        let ring = a.ring.join(&b.ring)?;
        let lift = |m: &Self| -> Result<FreeComplex> {
            let emb = |p: &PolyMatrix| -> Result<PolyMatrix> {
                let rows = (0..p.rows())
                    .map(|i| (0..p.cols()).map(|j| p.get(i, j).embed(&ring)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                if rows.is_empty() {
                    return Ok(PolyMatrix::zeros(&ring, 0, 0));
                }
                PolyMatrix::from_rows(&ring, rows)
            };
            let n = m.rank();
            FreeComplex::new_z2(&ring, [vec![0; n], vec![0; n]], emb(&m.psi)?, emb(&m.phi)?, Some(m.sigma.embed(&ring)?), 0, 1)
        };
        let t = FreeComplex::tensor(&lift(a)?, &lift(b)?)?;
        let sigma = &a.sigma.embed(&ring)? + &b.sigma.embed(&ring)?;
        Self::new(&ring, sigma, t.diff(1), t.diff(0))
    }

    /// Lowest-order parts of σ and of every entry, over the standard grading.
    ///
    /// Fails with `NotHomogeneous` unless the lowest-order parts again form a
    /// factorisation of the lowest-order part of σ.
    pub fn initial_form(&self) -> Result<Self> {
        let ring = self.ring.with_weights(&vec![1; self.ring.nvars()])?;
        let lowest = |p: &Poly| -> Result<Poly> {
            let q = p.embed(&ring)?;
            let Some(d) = q.terms().map(|(m, _)| m.degree()).min() else {
                return Ok(q);
            };
            let mut out = Poly::zero(&ring);
            for (m, c) in q.terms().filter(|(m, _)| m.degree() == d) {
                out.add_term(m.clone(), c);
            }
            Ok(out)
        };
        let low = |m: &PolyMatrix| -> Result<PolyMatrix> {
            let rows = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| lowest(m.get(i, j))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if rows.is_empty() {
                return Ok(PolyMatrix::zeros(&ring, 0, 0));
            }
            PolyMatrix::from_rows(&ring, rows)
        };
        let out = Self::new(&ring, lowest(&self.sigma)?, low(&self.phi)?, low(&self.psi)?)?;
        if !out.is_valid() || out.grading.is_none() {
            return Err(Error::NotHomogeneous("initial forms do not factor the initial form of sigma".into()));
        }
        Ok(out)
    }

    /// Row-major entry strings of φ and ψ.
    pub fn to_strings(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        (self.phi.to_strings(), self.psi.to_strings())
    }

    fn map_entries(&self, ring: &RingRef, f: impl Fn(&Poly) -> Poly) -> Result<Self> {
        Self::new(ring, f(&self.sigma), self.phi.map_into(ring, &f), self.psi.map_into(ring, &f))
    }
}

#[cfg(test)]
mod tests;
