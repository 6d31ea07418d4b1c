use std::collections::BTreeMap;

use super::{sign, FreeComplex};
use crate::error::{Error, Result};
use crate::polyring::{Poly, PolyMatrix};

/// A graded module map `f^i: M^i -> N^{i + degree}`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub degree: i64,
    pub maps: BTreeMap<i64, PolyMatrix>,
}

impl ChainMap {
    pub fn new(source: &FreeComplex, target: &FreeComplex, degree: i64, maps: BTreeMap<i64, PolyMatrix>) -> Result<Self> {
        let f = ChainMap { source: source.clone(), target: target.clone(), degree, maps };
        for (&i, m) in &f.maps {
            if m.rows() != target.rank(i + degree) || m.cols() != source.rank(i) {
                return Err(Error::Invalid(format!("component {i} has the wrong shape")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &FreeComplex) -> Self {
        let maps = c.span().into_iter().map(|i| (i, PolyMatrix::identity(c.ring(), c.rank(i)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), degree: 0, maps }
    }

    pub fn zero(m: &FreeComplex, n: &FreeComplex) -> Self {
        ChainMap { source: m.clone(), target: n.clone(), degree: 0, maps: BTreeMap::new() }
    }

    /// The component leaving degree `i`.
    pub fn map(&self, i: i64) -> PolyMatrix {
        let i = self.source.norm(i);
        self.maps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(self.source.ring(), self.target.rank(i + self.degree), self.source.rank(i)))
    }

    /// `d_N f - (-1)^deg f d_M`, degree by degree.
    pub fn boundary(&self) -> BTreeMap<i64, PolyMatrix> {
        let s = sign(self.degree);
        let mut out = BTreeMap::new();
        for i in self.source.span() {
            let a = self.target.diff(i + self.degree).mul(&self.map(i));
            let b = self.map(i + 1).mul(&self.source.diff(i)).scale(&s);
            out.insert(i, self.target.reduce(&a.sub(&b)));
        }
        out
    }

    /// Whether `d_N f = (-1)^deg f d_M` holds exactly.
    pub fn is_chain_map(&self) -> bool {
        self.boundary().values().all(PolyMatrix::is_zero)
    }

    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.target.span() != g.source.span() {
            return Err(Error::Invalid("maps are not composable".into()));
        }
        let maps = self
            .source
            .span()
            .into_iter()
            .map(|i| (i, self.target.reduce(&g.map(i + self.degree).mul(&self.map(i)))))
            .collect();
        Ok(ChainMap { source: self.source.clone(), target: g.target.clone(), degree: self.degree + g.degree, maps })
    }

    /// Reads an element of the hom complex in degree `p` as a map.
    pub fn from_hom_element(m: &FreeComplex, n: &FreeComplex, p: i64, coords: &[Poly]) -> Result<ChainMap> {
        let layout = FreeComplex::hom_layout(m, n, p);
        if layout.len() != coords.len() {
            return Err(Error::Invalid("coordinate vector has the wrong length".into()));
        }
        let mut maps: BTreeMap<i64, PolyMatrix> = BTreeMap::new();
        for (&(i, b, a), c) in layout.iter().zip(coords) {
            let e = maps.entry(i).or_insert_with(|| PolyMatrix::zeros(m.ring(), n.rank(i + p), m.rank(i)));
            e.set(b, a, c.clone());
        }
        ChainMap::new(m, n, p, maps)
    }

    /// Coordinates of the map in the hom complex basis.
    pub fn to_hom_element(&self) -> Vec<Poly> {
        FreeComplex::hom_layout(&self.source, &self.target, self.degree)
            .into_iter()
            .map(|(i, b, a)| self.map(i).get(b, a).clone())
            .collect()
    }
}

/// A map `h` of degree `deg f - 1` exhibiting `f - g` as a boundary.
#[derive(Debug, Clone)]
pub struct Homotopy {
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: ChainMap,
}

impl Homotopy {
    /// Whether `d_N h - (-1)^{|h|} h d_M = f - g`.
    pub fn verify(&self) -> bool {
        if self.h.degree != self.f.degree - 1 || self.f.degree != self.g.degree {
            return false;
        }
        let b = self.h.boundary();
        self.f.source.span().into_iter().all(|i| {
            let diff = self.f.target.reduce(&self.f.map(i).sub(&self.g.map(i)));
            b.get(&i).map_or_else(|| diff.is_zero(), |x| *x == diff)
        })
    }
}
