use super::{MatrixFactorisation, MfMorphism};
use crate::error::{Error, Result};
use crate::exactcore::Scalar;
use crate::polyring::{Poly, PolyMatrix, RingRef};

/// Weights for the enlarged ring: the old weights (possibly doubled) and the new ones.
fn enlarged(m: &MatrixFactorisation, names: &[&str]) -> Result<RingRef> {
    for n in names {
        if m.ring().var_index(n).is_some() {
            return Err(Error::VariableClash(n.to_string()));
        }
    }
    let base = m.ring();
    let (factor, new): (i64, Vec<i64>) = match (m.sigma().homogeneous_weight(), names.len()) {
        (Some(w), 1) if w % 2 == 0 && w > 0 => (1, vec![w / 2]),
        (Some(w), 1) if w > 0 => (2, vec![w]),
        (Some(w), 2) if w >= 2 => (1, vec![w - w / 2, w / 2]),
        (Some(w), 2) if w == 1 => (2, vec![1, 1]),
        _ => (1, vec![1; names.len()]),
    };
    let doubled: Vec<i64> = base.weights().iter().map(|w| w * factor).collect();
    let mut ring = base.with_weights(&doubled)?;
    for (n, w) in names.iter().zip(new) {
        ring = ring.extend(n, w)?;
    }
    Ok(ring)
}

fn embed_matrix(ring: &RingRef, m: &PolyMatrix) -> Result<PolyMatrix> {
    let mut out = PolyMatrix::zeros(ring, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).embed(ring)?);
        }
    }
    Ok(out)
}

/// `G X = (ω, ω)` with `ω = [[y, ψ], [φ, -y]]`, a factorisation of `σ + y²`.
pub fn knoerrer_g(m: &MatrixFactorisation, y: &str) -> Result<MatrixFactorisation> {
    let ring = enlarged(m, &[y])?;
    let yv = Poly::named(&ring, y)?;
    let n = m.rank();
    let phi = embed_matrix(&ring, m.phi())?;
    let psi = embed_matrix(&ring, m.psi())?;
    let yi = PolyMatrix::scalar(&ring, n, &yv);
    let omega = PolyMatrix::block2(&yi, &psi, &phi, &yi.neg());
    let sigma = &m.sigma().embed(&ring)? + &yv.pow(2);
    MatrixFactorisation::new(&ring, sigma, omega.clone(), omega)
}

/// `H X` with blocks `[[u, ψ], [φ, -v]]` and `[[v, ψ], [φ, -u]]`, a factorisation of `σ + uv`.
pub fn knoerrer_h(m: &MatrixFactorisation, u: &str, v: &str) -> Result<MatrixFactorisation> {
    if u == v {
        return Err(Error::VariableClash(u.to_string()));
    }
    let ring = enlarged(m, &[u, v])?;
    let uv = Poly::named(&ring, u)?;
    let vv = Poly::named(&ring, v)?;
    let n = m.rank();
    let phi = embed_matrix(&ring, m.phi())?;
    let psi = embed_matrix(&ring, m.psi())?;
    let ui = PolyMatrix::scalar(&ring, n, &uv);
    let vi = PolyMatrix::scalar(&ring, n, &vv);
    let first = PolyMatrix::block2(&ui, &psi, &phi, &vi.neg());
    let second = PolyMatrix::block2(&vi, &psi, &phi, &ui.neg());
    let sigma = &m.sigma().embed(&ring)? + &(&uv * &vv);
    MatrixFactorisation::new(&ring, sigma, first, second)
}

/// Sets `var` to zero and removes it from the ring.
pub fn restrict_rho(m: &MatrixFactorisation, var: &str) -> Result<MatrixFactorisation> {
    let ring = m.ring().drop_var(var)?;
    let images: Vec<Poly> = m
        .ring()
        .vars()
        .iter()
        .map(|name| if name == var { Ok(Poly::zero(&ring)) } else { Poly::named(&ring, name) })
        .collect::<Result<_>>()?;
    m.map_entries(&ring, |p| p.substitute(&ring, &images))
}

/// Substitutes `-var` for `var`.
pub fn tau(m: &MatrixFactorisation, var: &str) -> Result<MatrixFactorisation> {
    let ring = m.ring().clone();
    let idx = ring.var_index(var).ok_or_else(|| Error::Invalid(format!("no variable `{var}`")))?;
    let images: Vec<Poly> =
        (0..ring.nvars()).map(|i| if i == idx { -&Poly::var(&ring, i) } else { Poly::var(&ring, i) }).collect();
    m.map_entries(&ring, |p| p.substitute(&ring, &images))
}

fn swap_blocks(ring: &RingRef, n: usize) -> PolyMatrix {
    let z = PolyMatrix::zeros(ring, n, n);
    let i = PolyMatrix::identity(ring, n);
    PolyMatrix::block2(&z, &i, &i, &z)
}

/// `(swap, id): ρ(G X) -> X ⊕ ΣX`.
pub fn rho_g_certificate(m: &MatrixFactorisation, y: &str) -> Result<MfMorphism> {
    let source = restrict_rho(&knoerrer_g(m, y)?, y)?;
    rho_certificate(m, source)
}

/// `(swap, id): ρ_u ρ_v (H X) -> X ⊕ ΣX`.
pub fn rho_rho_h_certificate(m: &MatrixFactorisation, u: &str, v: &str) -> Result<MfMorphism> {
    let h = knoerrer_h(m, u, v)?;
    let source = restrict_rho(&restrict_rho(&h, u)?, v)?;
    rho_certificate(m, source)
}

fn rho_certificate(m: &MatrixFactorisation, source: MatrixFactorisation) -> Result<MfMorphism> {
    let ring = source.ring().clone();
    let base = m.map_entries(&ring, |p| p.embed(&ring).expect("same variables"))?;
    let target = base.sum(&base.shift())?;
    let n = m.rank();
    MfMorphism::new(&source, &target, 0, swap_blocks(&ring, n), PolyMatrix::identity(&ring, 2 * n))
}

/// `(J, -J): Σ(G X) -> G(Σ X)` with `J = [[0, i], [-i, 0]]`.
pub fn sigma_g_certificate(m: &MatrixFactorisation, y: &str) -> Result<MfMorphism> {
    let i = m.ring().field().sqrt_minus_one().ok_or(Error::FieldLacksI)?;
    let source = knoerrer_g(m, y)?.shift();
    let target = knoerrer_g(&m.shift(), y)?;
    let ring = source.ring().clone();
    let n = m.rank();
    let z = PolyMatrix::zeros(&ring, n, n);
    let ii = PolyMatrix::scalar(&ring, n, &Poly::constant(&ring, i));
    let j = PolyMatrix::block2(&z, &ii, &ii.neg(), &z);
    let minus = j.scale(&Scalar::int(-1));
    MfMorphism::new(&source, &target, 0, j, minus)
}
