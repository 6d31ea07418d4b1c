use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::polyr::{BasisKey, EndDgAlgebra, PolyRElement};
use crate::algebra::FdAlgebra;
use crate::complexes::Grading;
use crate::error::{Error, Result};
use crate::exactcore::{Echelon, ExactMatrix, Scalar};
use crate::polyring::{Mono, Poly, RingRef};

/// Weights of `θ_i` (and of `T_i`, their negatives) making the Weyl relations
/// homogeneous; `δ` then raises weight by `shift`. Units are `1 / scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Grader {
    scale: i64,
    shift: i64,
    theta: Vec<i64>,
}

impl Grader {
    fn of(e: &EndDgAlgebra) -> Result<Grader> {
        let sigma = e.sigma();
        let w = sigma
            .homogeneous_weight()
            .ok_or_else(|| Error::NotHomogeneous(format!("sigma = {sigma} is not weighted homogeneous")))?;
        let scale = if w % 2 == 0 { 1 } else { 2 };
        let shift = scale * w / 2;
        let mut theta = Vec::new();
        for (f, c) in e.fs.iter().zip(&e.coeffs) {
            let wf = f.homogeneous_weight().ok_or_else(|| Error::NotHomogeneous(format!("generator {f}")))?;
            if !c.is_zero() && c.homogeneous_weight() != Some(w - wf) {
                return Err(Error::NotHomogeneous(format!("cofactor {c} of {f}")));
            }
            theta.push(scale * wf - shift);
        }
        Ok(Grader { scale, shift, theta })
    }

    fn key_weight(&self, (s, u): BasisKey) -> i64 {
        (0..self.theta.len())
            .map(|i| {
                let mut t = 0;
                if s & (1 << i) != 0 {
                    t += self.theta[i];
                }
                if u & (1 << i) != 0 {
                    t -= self.theta[i];
                }
                t
            })
            .sum()
    }
}

/// Pointer to the `index`-th chosen class in slot `(parity, weight)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassRef {
    pub parity: u8,
    pub weight: i64,
    pub index: usize,
}

/// `[left][right] = Σ coeff [class]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: ClassRef,
    pub right: ClassRef,
    pub result: Vec<(ClassRef, Scalar)>,
}

#[derive(Debug, Clone)]
struct Slot {
    basis: Vec<(Mono, BasisKey)>,
    index: HashMap<(Mono, BasisKey), usize>,
    reps: Vec<Vec<Scalar>>,
    boundaries: Vec<Vec<Scalar>>,
}

/// Cohomology of `(Poly(r), δ)` slot by slot, with representatives and products.
#[derive(Debug, Clone)]
pub struct CohomologyTable {
    pub dims: BTreeMap<(u8, i64), usize>,
    pub reps: BTreeMap<(u8, i64), Vec<PolyRElement>>,
    pub products: Vec<ProductEntry>,
    pub shift: i64,
    pub scale: i64,
    pub theta_weights: Vec<i64>,
    algebra: EndDgAlgebra,
    grader: Grader,
    slots: BTreeMap<(u8, i64), Slot>,
}

fn parity_of((s, u): BasisKey) -> u8 {
    ((s.count_ones() + u.count_ones()) % 2) as u8
}

fn slot_basis(e: &EndDgAlgebra, g: &Grader, p: u8, w: i64) -> Vec<(Mono, BasisKey)> {
    let mut keys: Vec<BasisKey> = e.basis_keys().into_iter().filter(|k| parity_of(*k) == p).collect();
    keys.sort_by_key(|&(s, u)| (Reverse(s), u));
    let mut out = Vec::new();
    for k in keys {
        let rest = w - g.key_weight(k);
        if rest < 0 || rest % g.scale != 0 {
            continue;
        }
        for m in e.ring.monomials_of_weight(rest / g.scale) {
            out.push((m, k));
        }
    }
    out.sort_by(|(m1, (s1, u1)), (m2, (s2, u2))| (m1, Reverse(s1), u1).cmp(&(m2, Reverse(s2), u2)));
    out
}

fn delta_matrix(
    e: &EndDgAlgebra,
    src: &[(Mono, BasisKey)],
    tgt: &HashMap<(Mono, BasisKey), usize>,
    rows: usize,
) -> ExactMatrix {
    let ring = &e.ring;
    let mut out = ExactMatrix::zeros(rows, src.len(), ring.field());
    for (col, (m, k)) in src.iter().enumerate() {
        let d = e.delta_basis(*k);
        for (k2, p) in d.terms() {
            let img = p.mul_term(m, &Scalar::one());
            for (m2, c) in img.terms() {
                let row = tgt[&(m2.clone(), *k2)];
                out.add_to(row, col, c);
            }
        }
    }
    out
}

fn index_of(basis: &[(Mono, BasisKey)]) -> HashMap<(Mono, BasisKey), usize> {
    basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect()
}

fn compute_slot(e: &EndDgAlgebra, g: &Grader, p: u8, w: i64) -> Slot {
    let basis = slot_basis(e, g, p, w);
    let index = index_of(&basis);
    let up = slot_basis(e, g, 1 - p, w + g.shift);
    let out = delta_matrix(e, &basis, &index_of(&up), up.len());
    let down = slot_basis(e, g, 1 - p, w - g.shift);
    let inc = delta_matrix(e, &down, &index, basis.len());
    let boundaries = inc.columns();
    let mut ech = Echelon::new(basis.len(), e.ring.field());
    for b in &boundaries {
        ech.insert(b);
    }
    let mut reps = Vec::new();
    for z in out.kernel_basis() {
        if ech.insert(&z) {
            reps.push(z);
        }
    }
    Slot { basis, index, reps, boundaries }
}

fn to_element(ring: &RingRef, r: usize, slot: &Slot, v: &[Scalar]) -> PolyRElement {
    let mut out = PolyRElement::zero(ring, r);
    for ((m, k), c) in slot.basis.iter().zip(v) {
        if !c.is_zero() {
            out.add_term(*k, &Poly::term(ring, m.clone(), c.clone()));
        }
    }
    out
}

impl CohomologyTable {
    pub fn dim(&self, parity: u8, weight: i64) -> usize {
        self.dims.get(&(parity, weight)).copied().unwrap_or(0)
    }

    pub fn parity_total(&self, parity: u8) -> usize {
        self.dims.iter().filter(|((p, _), _)| *p == parity).map(|(_, d)| d).sum()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Slots with nonzero cohomology.
    pub fn nonzero(&self) -> BTreeMap<(u8, i64), usize> {
        self.dims.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (*k, *d)).collect()
    }

    pub fn representative(&self, c: ClassRef) -> Option<&PolyRElement> {
        self.reps.get(&(c.parity, c.weight))?.get(c.index)
    }

    fn slot(&self, p: u8, w: i64) -> Slot {
        self.slots.get(&(p, w)).cloned().unwrap_or_else(|| compute_slot(&self.algebra, &self.grader, p, w))
    }

    /// Weight of a homogeneous element, if it is homogeneous.
    pub fn weight_of(&self, z: &PolyRElement) -> Option<i64> {
        let mut ws = z.terms().iter().flat_map(|(k, p)| {
            let kw = self.grader.key_weight(*k);
            let sc = self.grader.scale;
            p.terms().map(move |(m, _)| kw + sc * m.wdeg()).collect::<Vec<_>>()
        });
        let w = ws.next()?;
        ws.all(|v| v == w).then_some(w)
    }

    /// Class of a homogeneous cocycle as coordinates against the representatives.
    pub fn class_of(&self, z: &PolyRElement) -> Result<Vec<(ClassRef, Scalar)>> {
        if z.is_zero() {
            return Ok(vec![]);
        }
        let p = z.parity().ok_or_else(|| Error::Invalid("element of mixed parity".into()))?;
        let w = self.weight_of(z).ok_or_else(|| Error::NotHomogeneous(format!("{z}")))?;
        if !self.algebra.delta(z).is_zero() {
            return Err(Error::Invalid(format!("{z} is not a cocycle")));
        }
        let slot = self.slot(p, w);
        let mut v = vec![self.algebra.ring.field().zero(); slot.basis.len()];
        for (k, poly) in z.terms() {
            for (m, c) in poly.terms() {
                v[slot.index[&(m.clone(), *k)]] = c.clone();
            }
        }
        let mut cols = slot.reps.clone();
        cols.extend(slot.boundaries.iter().cloned());
        let x = ExactMatrix::from_columns(self.algebra.ring.field(), slot.basis.len(), &cols)
            .solve(&v)
            .ok_or_else(|| Error::Invalid("cocycle outside the span of representatives".into()))?;
        Ok(x[..slot.reps.len()]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (ClassRef { parity: p, weight: w, index: i }, c.clone()))
            .collect())
    }

    /// Whether a homogeneous cocycle is a coboundary.
    pub fn is_coboundary(&self, z: &PolyRElement) -> Result<bool> {
        Ok(self.class_of(z)?.is_empty())
    }

    pub fn product(&self, a: ClassRef, b: ClassRef) -> Option<&ProductEntry> {
        self.products.iter().find(|e| e.left == a && e.right == b)
    }

    /// The classes in the window as a `Z/2`-graded algebra, named `[rep]`.
    ///
    /// Fails when a product or the unit falls outside the window.
    pub fn cohomology_algebra(&self) -> Result<FdAlgebra> {
        let classes: Vec<ClassRef> = self
            .reps
            .iter()
            .flat_map(|(&(p, w), v)| (0..v.len()).map(move |i| ClassRef { parity: p, weight: w, index: i }))
            .collect();
        let pos: HashMap<ClassRef, usize> = classes.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let field = self.algebra.ring.field();
        let n = classes.len();
        let outside = || Error::BoundExceeded("a product leaves the weight window".into());
        let mut table = vec![vec![vec![field.zero(); n]; n]; n];
        for e in &self.products {
            for (c, s) in &e.result {
                let k = *pos.get(c).ok_or_else(outside)?;
                table[pos[&e.left]][pos[&e.right]][k] = s.clone();
            }
        }
        let mut unit = vec![field.zero(); n];
        for (c, s) in self.class_of(&PolyRElement::one(&self.algebra.ring, self.algebra.r()))? {
            unit[*pos.get(&c).ok_or_else(outside)?] = s;
        }
        let names = classes.iter().map(|c| format!("[{}]", self.reps[&(c.parity, c.weight)][c.index])).collect();
        let degrees = classes.iter().map(|c| i64::from(c.parity)).collect();
        FdAlgebra::new(field, names, degrees, Grading::Z2, table, unit)
    }
}

/// Slot cohomology of `(Poly(r), δ)` for weights in `lo..=hi` with products of representatives.
///
/// Needs `σ`, every `f_i` and every cofactor weighted homogeneous.
pub fn end_cohomology(e: &EndDgAlgebra, lo: i64, hi: i64) -> Result<CohomologyTable> {
    let g = Grader::of(e)?;
    let mut slots = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut reps = BTreeMap::new();
    for p in 0..2u8 {
        for w in lo..=hi {
            let s = compute_slot(e, &g, p, w);
            dims.insert((p, w), s.reps.len());
            reps.insert((p, w), s.reps.iter().map(|v| to_element(&e.ring, e.r(), &s, v)).collect::<Vec<_>>());
            slots.insert((p, w), s);
        }
    }
    let mut table = CohomologyTable {
        dims,
        reps,
        products: Vec::new(),
        shift: g.shift,
        scale: g.scale,
        theta_weights: g.theta.clone(),
        algebra: e.clone(),
        grader: g,
        slots,
    };
    let classes: Vec<(ClassRef, PolyRElement)> = table
        .reps
        .iter()
        .flat_map(|(&(p, w), v)| {
            v.iter().enumerate().map(move |(i, z)| (ClassRef { parity: p, weight: w, index: i }, z.clone()))
        })
        .collect();
    let mut products = Vec::new();
    for (ca, a) in &classes {
        for (cb, b) in &classes {
            let result = table.class_of(&a.mul(b))?;
            products.push(ProductEntry { left: *ca, right: *cb, result });
        }
    }
    table.products = products;
    Ok(table)
}

/// Cohomology of `Poly(r) ⊗ A/m^N` by parity, for `σ` that need not be homogeneous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TruncatedCohomology {
    pub truncated_at: u32,
    pub even: usize,
    pub odd: usize,
}

pub fn end_cohomology_truncated(e: &EndDgAlgebra, order_bound: u32) -> Result<TruncatedCohomology> {
    let ring = &e.ring;
    let n = ring.nvars();
    let mut monos = Vec::new();
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == exps.len() {
            out.push(exps.clone());
            return;
        }
        for k in 0..=left {
            exps[i] = k;
            rec(i + 1, left - k, exps, out);
        }
        exps[i] = 0;
    }
    if order_bound == 0 {
        return Ok(TruncatedCohomology { truncated_at: 0, even: 0, odd: 0 });
    }
    rec(0, order_bound - 1, &mut vec![0; n], &mut monos);
    let monos: Vec<Mono> = monos.into_iter().map(|x| ring.mono(x)).collect();
    let basis_of = |p: u8| -> Vec<(Mono, BasisKey)> {
        let mut v: Vec<(Mono, BasisKey)> = Vec::new();
        for k in e.basis_keys().into_iter().filter(|k| parity_of(*k) == p) {
            for m in &monos {
                v.push((m.clone(), k));
            }
        }
        v
    };
    let b = [basis_of(0), basis_of(1)];
    let idx = [index_of(&b[0]), index_of(&b[1])];
    let mut ranks = [0usize; 2];
    for p in 0..2 {
        let q = 1 - p;
        let mut m = ExactMatrix::zeros(b[q].len(), b[p].len(), ring.field());
        for (col, (mono, k)) in b[p].iter().enumerate() {
            for (k2, poly) in e.delta_basis(*k).terms() {
                for (m2, c) in poly.mul_term(mono, &Scalar::one()).terms() {
                    if let Some(&row) = idx[q].get(&(m2.clone(), *k2)) {
                        m.add_to(row, col, c);
                    }
                }
            }
        }
        ranks[p] = m.rank();
    }
    Ok(TruncatedCohomology {
        truncated_at: order_bound,
        even: b[0].len() - ranks[0] - ranks[1],
        odd: b[1].len() - ranks[1] - ranks[0],
    })
}
