//! Complexes of finite-rank free modules over a polynomial ring or one of
//! its quotients, graded by the integers or by parity.
//!
//! Each generator carries a weight, the weight of the basis element itself,
//! so a differential is homogeneous when entry `(b, a)` has weight
//! `w(a) - w(b) + shift`. Integer-graded complexes always have shift zero;
//! parity-graded ones may carry a shift (half the weight of the curvature).

mod maps;
mod slice;

use std::collections::BTreeMap;

use serde::Serialize;

pub use maps::{ChainMap, Homotopy};
pub use slice::{SliceCohomology, SliceComplex, SliceTable};

use crate::error::{Error, Result};
use crate::exactcore::Scalar;
use crate::polyring::{same_ring, GroebnerBasis, Poly, PolyMatrix, RingRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Grading {
    Z,
    Z2,
}

/// A complex (or a curved parity-graded complex) of free modules.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    ring: RingRef,
    grading: Grading,
    quotient: Option<GroebnerBasis>,
    modules: BTreeMap<i64, Vec<i64>>,
    diffs: BTreeMap<i64, PolyMatrix>,
    shift: i64,
    weight_scale: i64,
    curvature: Option<Poly>,
}

pub fn sign(n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        Scalar::int(1)
    } else {
        Scalar::int(-1)
    }
}

impl FreeComplex {
    /// An integer-graded complex; `diffs[i]` maps degree `i` to degree `i + 1`.
    pub fn new(ring: &RingRef, modules: BTreeMap<i64, Vec<i64>>, diffs: BTreeMap<i64, PolyMatrix>) -> Result<Self> {
        let c = FreeComplex {
            ring: ring.clone(),
            grading: Grading::Z,
            quotient: None,
            modules,
            diffs,
            shift: 0,
            weight_scale: 1,
            curvature: None,
        };
        c.check_shapes()?;
        Ok(c.normalised())
    }

    /// A parity-graded complex with `d0: X0 -> X1` and `d1: X1 -> X0`.
    ///
    /// `curvature` is the element `c` with `d^2 = c`; `shift` is the weight
    /// added by the differential, measured in units of `1 / weight_scale`.
    pub fn new_z2(
        ring: &RingRef,
        weights: [Vec<i64>; 2],
        d0: PolyMatrix,
        d1: PolyMatrix,
        curvature: Option<Poly>,
        shift: i64,
        weight_scale: i64,
    ) -> Result<Self> {
        let [w0, w1] = weights;
        let c = FreeComplex {
            ring: ring.clone(),
            grading: Grading::Z2,
            quotient: None,
            modules: BTreeMap::from([(0, w0), (1, w1)]),
            diffs: BTreeMap::from([(0, d0), (1, d1)]),
            shift,
            weight_scale,
            curvature: curvature.filter(|p| !p.is_zero()),
        };
        c.check_shapes()?;
        Ok(c)
    }

    /// The zero complex.
    pub fn zero(ring: &RingRef, grading: Grading) -> Self {
        let mut c = FreeComplex {
            ring: ring.clone(),
            grading,
            quotient: None,
            modules: BTreeMap::new(),
            diffs: BTreeMap::new(),
            shift: 0,
            weight_scale: 1,
            curvature: None,
        };
        if grading == Grading::Z2 {
            c.modules = BTreeMap::from([(0, vec![]), (1, vec![])]);
            c.diffs = BTreeMap::from([(0, PolyMatrix::zeros(ring, 0, 0)), (1, PolyMatrix::zeros(ring, 0, 0))]);
        }
        c
    }

    /// The ring itself in degree zero with weight zero.
    pub fn unit(ring: &RingRef) -> Self {
        Self::new(ring, BTreeMap::from([(0, vec![0])]), BTreeMap::new()).unwrap()
    }

    /// Passes to the quotient ring presented by `gb`, reducing all entries.
    pub fn over_quotient(mut self, gb: GroebnerBasis) -> Result<Self> {
        same_ring(&self.ring, gb.ring())?;
        for d in self.diffs.values_mut() {
            *d = d.reduce(&gb);
        }
        if let Some(c) = &self.curvature {
            let r = gb.reduce(c);
            self.curvature = (!r.is_zero()).then_some(r);
        }
        self.quotient = Some(gb);
        Ok(self)
    }

    fn check_shapes(&self) -> Result<()> {
        for (&i, d) in &self.diffs {
            let (src, tgt) = (self.rank(i), self.rank(self.next(i)));
            if d.rows() != tgt || d.cols() != src {
                return Err(Error::Invalid(format!(
                    "differential in degree {i} is {}x{}, expected {tgt}x{src}",
                    d.rows(),
                    d.cols()
                )));
            }
            same_ring(&self.ring, d.ring())?;
        }
        Ok(())
    }

    fn normalised(mut self) -> Self {
        self.modules.retain(|_, v| !v.is_empty());
        let keys: Vec<i64> = self.diffs.keys().copied().collect();
        for i in keys {
            if self.diffs[&i].is_zero() {
                self.diffs.remove(&i);
            }
        }
        self
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn quotient(&self) -> Option<&GroebnerBasis> {
        self.quotient.as_ref()
    }

    pub fn shift_weight(&self) -> i64 {
        self.shift
    }

    pub fn weight_scale(&self) -> i64 {
        self.weight_scale
    }

    pub fn curvature(&self) -> Option<&Poly> {
        self.curvature.as_ref()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.modules.keys().copied().collect()
    }

    pub fn rank(&self, i: i64) -> usize {
        self.modules.get(&self.norm(i)).map_or(0, Vec::len)
    }

    pub fn weights(&self, i: i64) -> &[i64] {
        self.modules.get(&self.norm(i)).map_or(&[], Vec::as_slice)
    }

    pub fn norm(&self, i: i64) -> i64 {
        match self.grading {
            Grading::Z => i,
            Grading::Z2 => i.rem_euclid(2),
        }
    }

    pub fn next(&self, i: i64) -> i64 {
        self.norm(i + 1)
    }

    /// The differential leaving degree `i`.
    pub fn diff(&self, i: i64) -> PolyMatrix {
        let i = self.norm(i);
        self.diffs
            .get(&i)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(&self.ring, self.rank(self.next(i)), self.rank(i)))
    }

    pub fn reduce(&self, m: &PolyMatrix) -> PolyMatrix {
        match &self.quotient {
            Some(gb) => m.reduce(gb),
            None => m.clone(),
        }
    }

    /// Checks `d^2 = curvature` in every degree; returns the first failing degree.
    pub fn d_squared_failure(&self) -> Option<i64> {
        let degrees: Vec<i64> = match self.grading {
            Grading::Z2 => vec![0, 1],
            Grading::Z => {
                let mut v: Vec<i64> = self.modules.keys().copied().collect();
                v.extend(self.diffs.keys().copied());
                v.sort();
                v.dedup();
                v
            }
        };
        for i in degrees {
            let sq = self.reduce(&self.diff(self.next(i)).mul(&self.diff(i)));
            let expect = match &self.curvature {
                Some(c) => PolyMatrix::scalar(&self.ring, self.rank(i), c),
                None => PolyMatrix::zeros(&self.ring, self.rank(i + 2), self.rank(i)),
            };
            if sq != self.reduce(&expect) {
                return Some(i);
            }
        }
        None
    }

    pub fn is_complex(&self) -> bool {
        self.d_squared_failure().is_none()
    }

    fn same_kind(&self, o: &FreeComplex) -> Result<()> {
        same_ring(&self.ring, &o.ring)?;
        if self.grading != o.grading {
            return Err(Error::DegreeMismatch("integer and parity graded complexes".into()));
        }
        if self.quotient.as_ref().map(GroebnerBasis::gens) != o.quotient.as_ref().map(GroebnerBasis::gens) {
            return Err(Error::RingMismatch("complexes over different quotient rings".into()));
        }
        Ok(())
    }

    fn rebuilt(&self, modules: BTreeMap<i64, Vec<i64>>, diffs: BTreeMap<i64, PolyMatrix>, curvature: Option<Poly>) -> Self {
        let mut c = FreeComplex {
            ring: self.ring.clone(),
            grading: self.grading,
            quotient: self.quotient.clone(),
            modules,
            diffs,
            shift: self.shift,
            weight_scale: self.weight_scale,
            curvature: curvature.filter(|p| !p.is_zero()),
        };
        let keys: Vec<i64> = c.diffs.keys().copied().collect();
        for i in keys {
            let r = c.reduce(&c.diffs[&i]);
            c.diffs.insert(i, r);
        }
        if c.grading == Grading::Z2 {
            for i in 0..2 {
                c.modules.entry(i).or_default();
                let d = c.diff(i);
                c.diffs.insert(i, d);
            }
            c
        } else {
            c.normalised()
        }
    }

    /// `C[n]`: degree `i` holds `C^{i+n}` and the differential is scaled by `(-1)^n`.
    pub fn shift(&self, n: i64) -> FreeComplex {
        let s = sign(n);
        let modules = self.modules.iter().map(|(&i, w)| (self.norm(i - n), w.clone())).collect();
        let diffs = self.diffs.iter().map(|(&i, d)| (self.norm(i - n), d.scale(&s))).collect();
        self.rebuilt(modules, diffs, self.curvature.clone())
    }

    /// Degrees present either as modules or as targets, padded for iteration.
    pub fn span(&self) -> Vec<i64> {
        match self.grading {
            Grading::Z2 => vec![0, 1],
            Grading::Z => self.modules.keys().copied().collect(),
        }
    }

    /// The mapping cone of a degree-zero chain map `f: M -> N`.
    ///
    /// Degree `i` is `M^{i+1} + N^i` and `d(m, n) = (d_M m, f m - d_N n)`.
    pub fn cone(f: &ChainMap) -> Result<FreeComplex> {
        if f.degree != 0 {
            return Err(Error::DegreeMismatch(format!("cone needs a degree 0 map, got {}", f.degree)));
        }
        let (m, n) = (&f.source, &f.target);
        m.same_kind(n)?;
        if m.curvature.as_ref().map(ToString::to_string) != n.curvature.as_ref().map(ToString::to_string) {
            return Err(Error::SigmaMismatch);
        }
        let mut degs: Vec<i64> = m.span().iter().map(|&i| m.norm(i - 1)).chain(n.span()).collect();
        degs.sort();
        degs.dedup();
        let mut modules = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for &i in &degs {
            let mut w = m.weights(i + 1).to_vec();
            w.extend_from_slice(n.weights(i));
            modules.insert(i, w);
        }
        for &i in &degs {
            let j = m.norm(i + 1);
            let dm = m.diff(i + 1);
            let dn = n.diff(i);
            let fi = f.map(i + 1);
            let d = PolyMatrix::block2(
                &dm,
                &PolyMatrix::zeros(&m.ring, m.rank(j + 1), n.rank(i)),
                &fi,
                &dn.neg(),
            );
            diffs.insert(i, d);
        }
        Ok(m.rebuilt(modules, diffs, m.curvature.clone()))
    }

    /// The complex of module maps from `m` to `n`.
    ///
    /// Degree `p` is the product of `Hom(M^i, N^{i+p})`, with basis the
    /// elementary matrices `E_{b,a}` ordered by source degree `i`, then target
    /// generator `b`, then source generator `a`; the weight of `E_{b,a}` is
    /// `w(b) - w(a)`. The differential is `f -> d_N f - (-1)^p f d_M`.
    pub fn hom(m: &FreeComplex, n: &FreeComplex) -> Result<FreeComplex> {
        m.same_kind(n)?;
        if m.shift != n.shift || m.weight_scale != n.weight_scale {
            return Err(Error::DegreeMismatch("differentials of different weight".into()));
        }
        if m.curvature.as_ref().map(ToString::to_string) != n.curvature.as_ref().map(ToString::to_string) {
            return Err(Error::SigmaMismatch);
        }
        let ms = m.span();
        let ns = n.span();
        let mut hdegs: Vec<i64> = Vec::new();
        for &i in &ms {
            for &j in &ns {
                hdegs.push(m.norm(j - i));
            }
        }
        hdegs.sort();
        hdegs.dedup();
        if m.grading == Grading::Z2 {
            hdegs = vec![0, 1];
        }
        let layout = |p: i64| Self::hom_layout(m, n, p);
        let mut modules = BTreeMap::new();
        let mut index: BTreeMap<i64, BTreeMap<(i64, usize, usize), usize>> = BTreeMap::new();
        for &p in &hdegs {
            let lay = layout(p);
            modules.insert(p, lay.iter().map(|&(i, b, a)| n.weights(i + p)[b] - m.weights(i)[a]).collect());
            index.insert(p, lay.iter().enumerate().map(|(k, &t)| (t, k)).collect());
        }
        let ring = &m.ring;
        let mut diffs = BTreeMap::new();
        for &p in &hdegs {
            let q = m.norm(p + 1);
            let src = layout(p);
            let empty = BTreeMap::new();
            let tgt_index = index.get(&q).unwrap_or(&empty);
            let mut d = PolyMatrix::zeros(ring, tgt_index.len(), src.len());
            let s = sign(p);
            for (col, &(i, b, a)) in src.iter().enumerate() {
                let dn = n.diff(i + p);
                for c in 0..dn.rows() {
                    let e = dn.get(c, b);
                    if !e.is_zero() {
                        let row = tgt_index[&(i, c, a)];
                        let v = d.get(row, col) + e;
                        d.set(row, col, v);
                    }
                }
                let prev = m.norm(i - 1);
                if m.modules.contains_key(&prev) || m.grading == Grading::Z2 {
                    let dm = m.diff(prev);
                    for a2 in 0..dm.cols() {
                        let e = dm.get(a, a2);
                        if !e.is_zero() {
                            let row = tgt_index[&(prev, b, a2)];
                            let v = d.get(row, col) - &e.scale(&s);
                            d.set(row, col, v);
                        }
                    }
                }
            }
            diffs.insert(p, d);
        }
        let mut out = m.rebuilt(modules, diffs, None);
        out.shift = m.shift;
        Ok(out)
    }

    /// Basis of degree `p` of the hom complex: (source degree, target generator, source generator).
    pub fn hom_layout(m: &FreeComplex, n: &FreeComplex, p: i64) -> Vec<(i64, usize, usize)> {
        let mut v = Vec::new();
        for i in m.span() {
            for b in 0..n.rank(i + p) {
                for a in 0..m.rank(i) {
                    v.push((i, b, a));
                }
            }
        }
        v
    }

    /// Tensor product over the common ring with `d(a b) = da b + (-1)^p a db`.
    ///
    /// Generators of degree `k` are ordered by the degree `p` of the left
    /// factor, then left generator, then right generator.
    pub fn tensor(m: &FreeComplex, n: &FreeComplex) -> Result<FreeComplex> {
        m.same_kind(n)?;
        if m.shift != n.shift || m.weight_scale != n.weight_scale {
            return Err(Error::DegreeMismatch("differentials of different weight".into()));
        }
        let ms = m.span();
        let ns = n.span();
        let mut tdegs: Vec<i64> = ms.iter().flat_map(|&p| ns.iter().map(move |&q| p + q)).map(|k| m.norm(k)).collect();
        tdegs.sort();
        tdegs.dedup();
        if m.grading == Grading::Z2 {
            tdegs = vec![0, 1];
        }
        let layout = |k: i64| -> Vec<(i64, usize, usize)> {
            let mut v = Vec::new();
            for &p in &ms {
                let q = n.norm(k - p);
                for a in 0..m.rank(p) {
                    for b in 0..n.rank(q) {
                        v.push((p, a, b));
                    }
                }
            }
            v
        };
        let mut modules = BTreeMap::new();
        let mut index: BTreeMap<i64, BTreeMap<(i64, usize, usize), usize>> = BTreeMap::new();
        for &k in &tdegs {
            let lay = layout(k);
            modules.insert(k, lay.iter().map(|&(p, a, b)| m.weights(p)[a] + n.weights(k - p)[b]).collect());
            index.insert(k, lay.iter().enumerate().map(|(x, &t)| (t, x)).collect());
        }
        let ring = &m.ring;
        let mut diffs = BTreeMap::new();
        for &k in &tdegs {
            let k1 = m.norm(k + 1);
            let src = layout(k);
            let empty = BTreeMap::new();
            let tgt = index.get(&k1).unwrap_or(&empty);
            let mut d = PolyMatrix::zeros(ring, tgt.len(), src.len());
            for (col, &(p, a, b)) in src.iter().enumerate() {
                let q = k - p;
                let dm = m.diff(p);
                for c in 0..dm.rows() {
                    let e = dm.get(c, a);
                    if !e.is_zero() {
                        let row = tgt[&(m.norm(p + 1), c, b)];
                        let v = d.get(row, col) + e;
                        d.set(row, col, v);
                    }
                }
                let dn = n.diff(q);
                let s = sign(p);
                for c in 0..dn.rows() {
                    let e = dn.get(c, b);
                    if !e.is_zero() {
                        let row = tgt[&(p, a, c)];
                        let v = d.get(row, col) + &e.scale(&s);
                        d.set(row, col, v);
                    }
                }
            }
            diffs.insert(k, d);
        }
        let curv = match (&m.curvature, &n.curvature) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => Some(a + b),
        };
        Ok(m.rebuilt(modules, diffs, curv))
    }

    /// Replaces the generator weights (the differential is unchanged).
    pub fn with_weights(mut self, modules: BTreeMap<i64, Vec<i64>>, shift: i64, weight_scale: i64) -> Result<Self> {
        for (k, v) in &self.modules {
            if modules.get(k).map_or(0, Vec::len) != v.len() {
                return Err(Error::Invalid(format!("weight list for degree {k} has the wrong length")));
            }
        }
        self.modules = modules;
        self.shift = shift;
        self.weight_scale = weight_scale;
        Ok(self)
    }

    /// Euler characteristic of the ranks.
    pub fn euler_rank(&self) -> i64 {
        self.modules.iter().map(|(&i, w)| if i.rem_euclid(2) == 0 { w.len() as i64 } else { -(w.len() as i64) }).sum()
    }
}
