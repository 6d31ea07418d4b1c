//! Koszul complexes on exterior-algebra bases and the nullhomotopy of `sigma`
//! given by wedging with a cofactor vector.

use std::collections::BTreeMap;

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::exactcore::Scalar;
use crate::polyring::{same_ring, Poly, PolyMatrix, RingRef};

/// Subsets of `0..r` of size `j` in lexicographic order.
pub fn subsets(r: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if j <= r {
        rec(0, r, j, &mut Vec::new(), &mut out);
    }
    out
}

/// `e_i ^ e_S = sign * e_{S + i}`; `None` when `i` is already in `S`.
pub fn wedge_left(i: usize, s: &[usize]) -> Option<(i64, Vec<usize>)> {
    if s.contains(&i) {
        return None;
    }
    let pos = s.iter().filter(|&&t| t < i).count();
    let mut out = s.to_vec();
    out.insert(pos, i);
    Some((if pos % 2 == 0 { 1 } else { -1 }, out))
}

/// The Koszul complex: degree `-j` has basis `e_S` for `|S| = j`.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    pub ring: RingRef,
    pub fs: Vec<Poly>,
    pub complex: FreeComplex,
}

impl KoszulComplex {
    pub fn r(&self) -> usize {
        self.fs.len()
    }

    pub fn basis(&self, j: usize) -> Vec<Vec<usize>> {
        subsets(self.r(), j)
    }

    /// Contraction `d(e_S) = sum_k (-1)^(k-1) f_{i_k} e_{S - i_k}` as the
    /// matrix from degree `-j` to degree `-j + 1`.
    pub fn contraction(&self, j: usize) -> PolyMatrix {
        contraction_matrix(&self.ring, &self.fs, j)
    }
}

pub(crate) fn contraction_matrix(ring: &RingRef, fs: &[Poly], j: usize) -> PolyMatrix {
    let r = fs.len();
    let src = subsets(r, j);
    let tgt = if j == 0 { vec![] } else { subsets(r, j - 1) };
    let idx: BTreeMap<&Vec<usize>, usize> = tgt.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut m = PolyMatrix::zeros(ring, tgt.len(), src.len());
    for (col, s) in src.iter().enumerate() {
        for (k, &i) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(k);
            let e = if k % 2 == 0 { fs[i].clone() } else { -&fs[i] };
            m.set(idx[&rest], col, e);
        }
    }
    m
}

/// Left exterior multiplication by `sum_i c_i e_i`, from degree `-j` to `-j - 1`.
pub(crate) fn wedge_matrix(ring: &RingRef, coeffs: &[Poly], j: usize) -> PolyMatrix {
    let r = coeffs.len();
    let src = subsets(r, j);
    let tgt = subsets(r, j + 1);
    let idx: BTreeMap<&Vec<usize>, usize> = tgt.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut m = PolyMatrix::zeros(ring, tgt.len(), src.len());
    for (col, s) in src.iter().enumerate() {
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((sg, t)) = wedge_left(i, s) {
                let row = idx[&t];
                let v = m.get(row, col) + &c.scale(&Scalar::int(sg));
                m.set(row, col, v);
            }
        }
    }
    m
}

/// Weight of `e_i`: the weighted degree of `f_i` (zero if not homogeneous).
fn generator_weights(fs: &[Poly]) -> Vec<i64> {
    fs.iter().map(|f| f.homogeneous_weight().unwrap_or(0)).collect()
}

pub(crate) fn subset_weight(w: &[i64], s: &[usize]) -> i64 {
    s.iter().map(|&i| w[i]).sum()
}

pub fn koszul_complex(ring: &RingRef, fs: &[Poly]) -> Result<KoszulComplex> {
    if fs.is_empty() {
        return Err(Error::Invalid("the Koszul complex needs at least one element".into()));
    }
    for f in fs {
        same_ring(ring, f.ring())?;
    }
    let r = fs.len();
    let w = generator_weights(fs);
    let mut modules = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for j in 0..=r {
        modules.insert(-(j as i64), subsets(r, j).iter().map(|s| subset_weight(&w, s)).collect());
        if j > 0 {
            diffs.insert(-(j as i64), contraction_matrix(ring, fs, j));
        }
    }
    let complex = FreeComplex::new(ring, modules, diffs)?;
    Ok(KoszulComplex { ring: ring.clone(), fs: fs.to_vec(), complex })
}

/// Wedging with `sigma_vec = sum sigma_i e_i`, a nullhomotopy for `sigma`.
#[derive(Debug, Clone)]
pub struct SigmaHomotopy {
    pub koszul: KoszulComplex,
    pub sigma: Poly,
    pub coeffs: Vec<Poly>,
    /// `h[j]` maps degree `-j` to degree `-j - 1`.
    pub h: BTreeMap<usize, PolyMatrix>,
}

pub fn sigma_homotopy(k: &KoszulComplex, sigma: &Poly, coeffs: &[Poly]) -> Result<SigmaHomotopy> {
    if coeffs.len() != k.r() {
        return Err(Error::BadCoefficients);
    }
    let mut acc = Poly::zero(&k.ring);
    for (c, f) in coeffs.iter().zip(&k.fs) {
        acc = &acc + &(c * f);
    }
    if acc != *sigma {
        return Err(Error::BadCoefficients);
    }
    let h = (0..k.r()).map(|j| (j, wedge_matrix(&k.ring, coeffs, j))).collect();
    Ok(SigmaHomotopy { koszul: k.clone(), sigma: sigma.clone(), coeffs: coeffs.to_vec(), h })
}

impl SigmaHomotopy {
    fn h_at(&self, j: usize) -> PolyMatrix {
        let r = self.koszul.r();
        self.h.get(&j).cloned().unwrap_or_else(|| {
            PolyMatrix::zeros(&self.koszul.ring, subsets(r, j + 1).len(), subsets(r, j).len())
        })
    }

    fn d_at(&self, j: usize) -> PolyMatrix {
        self.koszul.contraction(j)
    }

    /// `dh + hd = sigma` on every exterior degree.
    pub fn verify_null_homotopy(&self) -> bool {
        let ring = &self.koszul.ring;
        let r = self.koszul.r();
        (0..=r).all(|j| {
            let n = subsets(r, j).len();
            let dh = if j < r { self.d_at(j + 1).mul(&self.h_at(j)) } else { PolyMatrix::zeros(ring, n, n) };
            let hd = if j > 0 { self.h_at(j - 1).mul(&self.d_at(j)) } else { PolyMatrix::zeros(ring, n, n) };
            dh.add(&hd) == PolyMatrix::scalar(ring, n, &self.sigma)
        })
    }

    /// `h o h = 0`, reflecting `sigma_vec ^ sigma_vec = 0`.
    pub fn h_squared_zero(&self) -> bool {
        let r = self.koszul.r();
        (0..r.saturating_sub(1)).all(|j| self.h_at(j + 1).mul(&self.h_at(j)).is_zero())
    }

    /// The total endomorphism `d + h` of the exterior algebra, in the basis
    /// of all subsets ordered by size and then lexicographically.
    pub fn total_operator(&self) -> PolyMatrix {
        let r = self.koszul.r();
        let ring = &self.koszul.ring;
        let offsets: Vec<usize> = (0..=r).scan(0, |acc, j| {
            let o = *acc;
            *acc += subsets(r, j).len();
            Some(o)
        }).collect();
        let n = 1usize << r;
        let mut m = PolyMatrix::zeros(ring, n, n);
        for j in 0..=r {
            if j > 0 {
                m.put(offsets[j - 1], offsets[j], &self.d_at(j));
            }
            if j < r {
                m.put(offsets[j + 1], offsets[j], &self.h_at(j));
            }
        }
        m
    }

    /// `(d + h)^2 = sigma`.
    pub fn total_squares_to_sigma(&self) -> bool {
        let t = self.total_operator();
        t.mul(&t) == PolyMatrix::scalar(&self.koszul.ring, t.rows(), &self.sigma)
    }
}
