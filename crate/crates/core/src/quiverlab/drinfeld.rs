use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::complexes::Grading;
use crate::error::{Error, Result};
use crate::exactcore::{ExactMatrix, FieldKind, Scalar};

/// Semisimple ring over which the tensor powers are taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorBase {
    Field,
    /// A complete set of orthogonal idempotents, such as the vertex idempotents
    /// of a path algebra. Each must commute with `e`.
    Vertices(Vec<Vec<Scalar>>),
}

/// Basis vectors of a piece `f_l X f_r`, tagged by the idempotents on each side.
#[derive(Debug, Clone)]
struct Tagged {
    vectors: Vec<Vec<Scalar>>,
    tags: Vec<(usize, usize)>,
    solver: ExactMatrix,
}

impl Tagged {
    fn new(a: &FdAlgebra, vs: Vec<(Vec<Scalar>, (usize, usize))>) -> Self {
        let mut vectors = Vec::new();
        let mut tags = Vec::new();
        let mut groups: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
        for (v, t) in vs {
            groups.entry(t).or_default().push(v);
        }
        for (t, g) in groups {
            for v in a.span(&g) {
                vectors.push(v);
                tags.push(t);
            }
        }
        let solver = ExactMatrix::from_columns(a.field(), a.dim(), &vectors);
        Tagged { vectors, tags, solver }
    }

    fn len(&self) -> usize {
        self.vectors.len()
    }

    fn coords(&self, v: &[Scalar]) -> Vec<(usize, Scalar)> {
        let c = self.solver.solve(v).expect("product stays in the subspace");
        c.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect()
    }
}

/// The complex `Q⁰ = A`, `Q^{-1-i} = Ae ⊗ R^{⊗i} ⊗ eA` with `R = eAe`.
#[derive(Debug, Clone)]
pub struct DrinfeldComplex {
    pub algebra: FdAlgebra,
    pub e: Vec<Scalar>,
    pub base: String,
    /// Number of components built: `Q⁰, …, Q^{-(depth_bound-1)}`.
    pub depth_bound: usize,
    /// Tensor words per component, as (Ae index, R indices, eA index).
    words: Vec<Vec<Vec<usize>>>,
    /// `diffs[k]: Q^{-k-1} -> Q^{-k}`.
    pub diffs: Vec<ExactMatrix>,
}

fn check_base(a: &FdAlgebra, e: &[Scalar], base: &TensorBase) -> Result<Vec<Vec<Scalar>>> {
    match base {
        TensorBase::Field => Ok(vec![a.unit().to_vec()]),
        TensorBase::Vertices(fs) => {
            let mut sum = a.zero_vec();
            for (i, f) in fs.iter().enumerate() {
                if f.len() != a.dim() || !a.is_idempotent(f) {
                    return Err(Error::NotIdempotent);
                }
                for (j, g) in fs.iter().enumerate() {
                    if i != j && a.mul(f, g).iter().any(|c| !c.is_zero()) {
                        return Err(Error::Invalid("vertex idempotents are not orthogonal".into()));
                    }
                }
                if a.mul(f, e) != a.mul(e, f) {
                    return Err(Error::Invalid("vertex idempotents do not commute with e".into()));
                }
                sum = sum.iter().zip(f).map(|(x, y)| x + y).collect();
            }
            if sum != a.unit() {
                return Err(Error::Invalid("vertex idempotents do not sum to the unit".into()));
            }
            Ok(fs.clone())
        }
    }
}

/// Builds the Drinfeld complex of `(A, e)` with `depth_bound` components.
pub fn drinfeld_quotient(a: &FdAlgebra, e: &[Scalar], depth_bound: usize, base: &TensorBase) -> Result<DrinfeldComplex> {
    if e.len() != a.dim() || !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let e: Vec<Scalar> = e.iter().map(|c| a.field().coerce(c)).collect::<Result<_>>()?;
    let fs = check_base(a, &e, base)?;
    let basis: Vec<Vec<Scalar>> = (0..a.dim()).map(|j| a.basis_vec(j)).collect();
    let m = |x: &[Scalar], y: &[Scalar]| a.mul(x, y);
    let mut ae = Vec::new();
    let mut ea = Vec::new();
    let mut r = Vec::new();
    for (v, f) in fs.iter().enumerate() {
        let ef = m(&e, f);
        for b in &basis {
            ae.push((m(b, &ef), (0, v)));
            ea.push((m(&ef, b), (v, 0)));
            for (w, g) in fs.iter().enumerate() {
                r.push((m(&m(&ef, b), &m(&e, g)), (v, w)));
            }
        }
    }
    let ae = Tagged::new(a, ae);
    let ea = Tagged::new(a, ea);
    let r = Tagged::new(a, r);

    let (ae_tags, r_tags, ea_tags) = (&ae.tags, &r.tags, &ea.tags);
    let mut words: Vec<Vec<Vec<usize>>> = vec![(0..a.dim()).map(|j| vec![j]).collect()];
    let mut chains: Vec<Vec<usize>> = (0..ae.len()).map(|u| vec![u]).collect();
    for _ in 1..depth_bound {
        let comp: Vec<Vec<usize>> = chains
            .iter()
            .flat_map(|c| {
                let last = if c.len() == 1 { ae_tags[c[0]].1 } else { r_tags[*c.last().unwrap()].1 };
                (0..ea_tags.len()).filter(move |&w| ea_tags[w].0 == last).map(move |w| {
                    let mut x = c.clone();
                    x.push(w);
                    x
                })
            })
            .collect();
        words.push(comp);
        chains = chains
            .iter()
            .flat_map(|c| {
                let last = if c.len() == 1 { ae_tags[c[0]].1 } else { r_tags[*c.last().unwrap()].1 };
                (0..r_tags.len()).filter(move |&s| r_tags[s].0 == last).map(move |s| {
                    let mut x = c.clone();
                    x.push(s);
                    x
                })
            })
            .collect();
    }

    let field = a.field();
    let mut diffs = Vec::new();
    for k in 0..depth_bound.saturating_sub(1) {
        let src = &words[k + 1];
        let tgt = &words[k];
        let pos: HashMap<&Vec<usize>, usize> = tgt.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut d = ExactMatrix::zeros(tgt.len(), src.len(), field);
        for (col, w) in src.iter().enumerate() {
            let n = w.len();
            if n == 2 {
                let p = m(&ae.vectors[w[0]], &ea.vectors[w[1]]);
                for (i, c) in p.iter().enumerate() {
                    if !c.is_zero() {
                        d.add_to(i, col, c);
                    }
                }
                continue;
            }
            for pos_k in 0..n - 1 {
                let sign = if pos_k % 2 == 0 { field.one() } else { -field.one() };
                let (left, right) = (pos_k, pos_k + 1);
                let (target_space, x, y) = if left == 0 {
                    (&ae, &ae.vectors[w[0]], &r.vectors[w[1]])
                } else if right == n - 1 {
                    (&ea, &r.vectors[w[left]], &ea.vectors[w[right]])
                } else {
                    (&r, &r.vectors[w[left]], &r.vectors[w[right]])
                };
                for (idx, c) in target_space.coords(&m(x, y)) {
                    let mut nw = Vec::with_capacity(n - 1);
                    nw.extend_from_slice(&w[..left]);
                    nw.push(idx);
                    nw.extend_from_slice(&w[right + 1..]);
                    if let Some(&row) = pos.get(&nw) {
                        d.add_to(row, col, &(&sign * &c));
                    }
                }
            }
        }
        diffs.push(d);
    }
    let base = match base {
        TensorBase::Field => "field".to_string(),
        TensorBase::Vertices(fs) => format!("vertices({})", fs.len()),
    };
    Ok(DrinfeldComplex { algebra: a.clone(), e, base, depth_bound, words, diffs })
}

impl DrinfeldComplex {
    /// Dimensions of `Q^0, Q^{-1}, …`.
    pub fn component_dims(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    pub fn d_squared_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false))
    }

    /// `dim A - dim AeA`.
    pub fn quotient_dim(&self) -> usize {
        let a = &self.algebra;
        let mut span = Vec::new();
        for i in 0..a.dim() {
            let left = a.mul(&a.basis_vec(i), &self.e);
            for j in 0..a.dim() {
                span.push(a.mul(&left, &a.basis_vec(j)));
            }
        }
        a.dim() - a.span(&span).len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DrinfeldCohomology {
    pub base: String,
    pub depth_bound: usize,
    pub dims: BTreeMap<i64, usize>,
}

/// `dim H^j` for `lo <= j <= hi`; the complex vanishes in positive degrees.
pub fn drinfeld_cohomology(d: &DrinfeldComplex, lo: i64, hi: i64) -> Result<DrinfeldCohomology> {
    let depth = (-lo).max(0);
    if depth + 1 >= d.depth_bound as i64 {
        return Err(Error::WindowExceedsBound { window: depth, bound: d.depth_bound, needed: depth + 1 });
    }
    let dims_q = d.component_dims();
    let ranks: Vec<usize> = d.diffs.iter().map(ExactMatrix::rank).collect();
    let mut dims = BTreeMap::new();
    for j in lo..=hi {
        let v = if j > 0 {
            0
        } else {
            let k = (-j) as usize;
            let out = if k == 0 { 0 } else { ranks[k - 1] };
            dims_q[k] - out - ranks[k]
        };
        dims.insert(j, v);
    }
    Ok(DrinfeldCohomology { base: d.base.clone(), depth_bound: d.depth_bound, dims })
}

/// `End_R(R ⊕ k)` for `R = k[x]/x^n`, as the commutant of the action of `x`
/// on `R ⊕ k`, together with the idempotent projecting onto `R`.
pub fn end_of_sum_with_residue(field: FieldKind, n: usize) -> Result<(FdAlgebra, Vec<Scalar>)> {
    let size = n + 1;
    let mut x = ExactMatrix::zeros(size, size, field);
    for i in 0..n.saturating_sub(1) {
        x.set(i + 1, i, field.one());
    }
    let mut proj = ExactMatrix::zeros(size, size, field);
    for i in 0..n {
        proj.set(i, i, field.one());
    }
    let (alg, mats) = FdAlgebra::commutant(field, &[x], Grading::Z)?;
    let e = coordinates(&mats, &proj).ok_or_else(|| Error::Invalid("projection is not R-linear".into()))?;
    Ok((alg, e))
}

fn coordinates(mats: &[ExactMatrix], target: &ExactMatrix) -> Option<Vec<Scalar>> {
    let flat = |m: &ExactMatrix| -> Vec<Scalar> { m.to_dense().into_iter().flatten().collect() };
    let cols: Vec<Vec<Scalar>> = mats.iter().map(flat).collect();
    let field = target.field();
    ExactMatrix::from_columns(field, target.rows() * target.cols(), &cols).solve(&flat(target))
}
