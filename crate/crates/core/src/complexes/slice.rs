use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{FreeComplex, Grading};
use crate::error::{Error, Result};
use crate::exactcore::{Echelon, ExactMatrix, Scalar};
use crate::polyring::{Mono, Poly};

/// One weight slice of an integer-graded complex: finite-dimensional vector
/// spaces and the matrices between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceComplex {
    pub weight: i64,
    pub dims: BTreeMap<i64, usize>,
    pub maps: BTreeMap<i64, ExactMatrix>,
}

impl SliceComplex {
    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        self.dims
            .iter()
            .map(|(&i, &n)| {
                let out = self.maps.get(&i).map_or(0, ExactMatrix::rank);
                let inc = self.maps.get(&(i - 1)).map_or(0, ExactMatrix::rank);
                (i, n - out - inc)
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub fn squares_to_zero(&self) -> bool {
        self.maps.iter().all(|(i, d)| match self.maps.get(&(i + 1)) {
            Some(e) => e.mul(d).map(|p| p.is_zero()).unwrap_or(false),
            None => true,
        })
    }
}

/// Cohomology dimensions keyed by (degree, weight).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SliceTable {
    pub dims: BTreeMap<(i64, i64), usize>,
}

impl SliceTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn nonzero(&self) -> BTreeMap<(i64, i64), usize> {
        self.dims.iter().filter(|(_, &v)| v > 0).map(|(k, v)| (*k, *v)).collect()
    }

    pub fn degree_total(&self, deg: i64) -> usize {
        self.dims.iter().filter(|((d, _), _)| *d == deg).map(|(_, v)| v).sum()
    }
}

/// Cohomology of one (degree, weight) slot with chosen representatives.
#[derive(Debug, Clone)]
pub struct SliceCohomology {
    pub degree: i64,
    pub weight: i64,
    /// Basis of the slice: (generator, monomial).
    pub basis: Vec<(usize, Mono)>,
    /// Cocycles whose classes form a basis of cohomology.
    pub reps: Vec<Vec<Scalar>>,
    /// Spanning set of the coboundaries.
    pub boundaries: Vec<Vec<Scalar>>,
}

impl SliceCohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a cocycle with respect to `reps`, modulo coboundaries.
    pub fn coordinates(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        let n = self.basis.len();
        let field = z.first().map(Scalar::kind).unwrap_or(crate::exactcore::FieldKind::Rat);
        let mut cols = self.reps.clone();
        cols.extend(self.boundaries.iter().cloned());
        let m = ExactMatrix::from_columns(field, n, &cols);
        let x = m.solve(z)?;
        Some(x[..self.reps.len()].to_vec())
    }

    pub fn is_coboundary(&self, z: &[Scalar]) -> bool {
        let mut e = Echelon::new(self.basis.len(), z.first().map(Scalar::kind).unwrap_or(crate::exactcore::FieldKind::Rat));
        for b in &self.boundaries {
            e.insert(b);
        }
        e.contains(z)
    }

    /// The polynomial vector (one entry per generator) of a slice vector.
    pub fn to_polys(&self, ring: &crate::polyring::RingRef, ngens: usize, v: &[Scalar]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(ring); ngens];
        for ((g, m), c) in self.basis.iter().zip(v) {
            out[*g].add_term(m.clone(), c);
        }
        out
    }
}

impl FreeComplex {
    fn standard(&self, m: &Mono) -> bool {
        match &self.quotient {
            None => true,
            Some(gb) => !gb.leading_monomials().iter().any(|l| l.divides(m)),
        }
    }

    /// Fails with `NotHomogeneous` unless every differential entry and the
    /// quotient ideal respect the generator weights.
    pub fn check_homogeneous(&self) -> Result<()> {
        let s = self.weight_scale;
        if let Some(gb) = &self.quotient {
            if let Some(g) = gb.gens().iter().find(|g| g.homogeneous_weight().is_none()) {
                return Err(Error::NotHomogeneous(format!("quotient generator {g}")));
            }
        }
        for (&i, d) in &self.diffs {
            let src = self.weights(i);
            let tgt = self.weights(self.next(i));
            for b in 0..d.rows() {
                for a in 0..d.cols() {
                    let want = src[a] - tgt[b] + self.shift;
                    if d.get(b, a).terms().any(|(m, _)| m.wdeg() * s != want) {
                        return Err(Error::NotHomogeneous(format!(
                            "entry ({b},{a}) of the differential in degree {i}: {}",
                            d.get(b, a)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis of the weight-`w` slice in degree `deg`.
    pub fn slice_basis(&self, deg: i64, w: i64) -> Vec<(usize, Mono)> {
        let mut out = Vec::new();
        for (g, &wg) in self.weights(deg).iter().enumerate() {
            let t = w - wg;
            if t < 0 || t % self.weight_scale != 0 {
                continue;
            }
            for m in self.ring.monomials_of_weight(t / self.weight_scale) {
                if self.standard(&m) {
                    out.push((g, m));
                }
            }
        }
        out
    }

    /// The differential from the weight-`w` slice of degree `deg` to the
    /// weight `w + shift` slice of the next degree.
    pub fn slice_map(&self, deg: i64, w: i64) -> Result<ExactMatrix> {
        let src = self.slice_basis(deg, w);
        let tgt = self.slice_basis(deg + 1, w + self.shift);
        self.slice_map_between(deg, &src, &tgt)
    }

    fn slice_map_between(&self, deg: i64, src: &[(usize, Mono)], tgt: &[(usize, Mono)]) -> Result<ExactMatrix> {
        let index: HashMap<(usize, &Mono), usize> = tgt.iter().enumerate().map(|(k, (g, m))| ((*g, m), k)).collect();
        let field = self.ring.field();
        let d = self.diff(deg);
        let mut out = ExactMatrix::zeros(tgt.len(), src.len(), field);
        for (col, (a, m)) in src.iter().enumerate() {
            for b in 0..d.rows() {
                let e = d.get(b, *a);
                if e.is_zero() {
                    continue;
                }
                let mut img = e.mul_term(m, &Scalar::one());
                if let Some(gb) = &self.quotient {
                    img = gb.reduce(&img);
                }
                for (mm, c) in img.terms() {
                    let row = index.get(&(b, mm)).ok_or_else(|| {
                        Error::NotHomogeneous(format!("image of generator {a} leaves the slice in degree {deg}"))
                    })?;
                    out.add_to(*row, col, c);
                }
            }
        }
        Ok(out)
    }

    /// Cohomology of the (degree, weight) slot with representatives.
    pub fn cohomology_at(&self, deg: i64, w: i64) -> Result<SliceCohomology> {
        let basis = self.slice_basis(deg, w);
        let out = self.slice_map(deg, w)?;
        let prev = self.norm(deg - 1);
        let inc = if self.grading == Grading::Z2 || self.modules.contains_key(&prev) {
            let src = self.slice_basis(prev, w - self.shift);
            self.slice_map_between(prev, &src, &basis)?
        } else {
            ExactMatrix::zeros(basis.len(), 0, self.ring.field())
        };
        let boundaries = inc.columns();
        let mut ech = Echelon::new(basis.len(), self.ring.field());
        for b in &boundaries {
            ech.insert(b);
        }
        let mut reps = Vec::new();
        for z in out.kernel_basis() {
            if ech.insert(&z) {
                reps.push(z);
            }
        }
        Ok(SliceCohomology { degree: deg, weight: w, basis, reps, boundaries })
    }

    /// Cohomology dimension of one slot.
    pub fn cohomology_dim(&self, deg: i64, w: i64) -> Result<usize> {
        let n = self.slice_basis(deg, w).len();
        if n == 0 {
            return Ok(0);
        }
        let out = self.slice_map(deg, w)?.rank();
        let prev = self.norm(deg - 1);
        let src = self.slice_basis(prev, w - self.shift);
        let inc = self.slice_map_between(prev, &src, &self.slice_basis(deg, w))?.rank();
        Ok(n - out - inc)
    }

    /// Dimensions for every degree of the complex and every weight in `lo..=hi`.
    pub fn slice_cohomology(&self, lo: i64, hi: i64) -> Result<SliceTable> {
        self.check_homogeneous()?;
        let mut t = SliceTable::default();
        for deg in self.span() {
            for w in lo..=hi {
                t.dims.insert((deg, w), self.cohomology_dim(deg, w)?);
            }
        }
        Ok(t)
    }

    /// The weight-`w` slice of an integer-graded complex with unshifted differential.
    pub fn slice(&self, w: i64) -> Result<SliceComplex> {
        if self.grading != Grading::Z || self.shift != 0 {
            return Err(Error::Invalid("slices are defined for integer-graded complexes".into()));
        }
        self.check_homogeneous()?;
        let mut dims = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for deg in self.span() {
            dims.insert(deg, self.slice_basis(deg, w).len());
            if self.modules.contains_key(&(deg + 1)) {
                maps.insert(deg, self.slice_map(deg, w)?);
            }
        }
        Ok(SliceComplex { weight: w, dims, maps })
    }

    /// Whether every slot in the weight range has zero cohomology.
    pub fn is_slicewise_acyclic(&self, lo: i64, hi: i64) -> Result<bool> {
        Ok(self.slice_cohomology(lo, hi)?.total() == 0)
    }
}
