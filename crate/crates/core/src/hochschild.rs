//! Hochschild cochain and chain complexes of finite-dimensional curved dg
//! algebras, truncated by tensor length.
//!
//! Everything lives on the suspension `sA` with the curved A∞ operations
//! `b0 = -s h`, `b1(sa) = s(da)`, `b2(sa, sb) = (-1)^{|a|} s(ab)`. A cochain is a map
//! `(sĀ)^{⊗n} → sA`, the differential is the graded commutator with `b`, and
//! chains use the cyclic form of the same operations. The Hochschild degree
//! of a cochain is its shifted degree plus one, so that ungraded algebras
//! have cochains of length `n` in degree `n`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{format_vector, AssociativityWitness, FdAlgebra};
use crate::complexes::Grading;
use crate::error::{Error, Result};
use crate::exactcore::{Echelon, ExactMatrix, Scalar};

fn sgn(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

fn nonzero(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

/// A finite-dimensional algebra with a degree-one derivation `d` and a curvature `h` of degree two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvedAlgebra {
    pub algebra: FdAlgebra,
    /// `d[i]` is the image of the i-th basis element.
    pub d: Vec<Vec<Scalar>>,
    pub h: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CurvedWitness {
    Associativity(AssociativityWitness),
    ProductDegree { left: String, right: String },
    DifferentialDegree { element: String },
    CurvatureDegree,
    UnitNotClosed,
    CurvatureNotClosed,
    DSquared { element: String },
    Leibniz { left: String, right: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvedValidation {
    pub ok: bool,
    pub witness: Option<CurvedWitness>,
}

impl CurvedAlgebra {
    pub fn new(algebra: FdAlgebra, d: Vec<Vec<Scalar>>, h: Vec<Scalar>) -> Result<Self> {
        let n = algebra.dim();
        if d.len() != n || d.iter().any(|v| v.len() != n) || h.len() != n {
            return Err(Error::Invalid("differential or curvature does not match the basis".into()));
        }
        Ok(CurvedAlgebra { algebra, d, h })
    }

    /// `d = 0`, `h = 0`.
    pub fn uncurved(algebra: FdAlgebra) -> Self {
        let n = algebra.dim();
        let z = algebra.zero_vec();
        CurvedAlgebra { d: vec![z.clone(); n], h: z, algebra }
    }

    /// `d = 0` and a central curvature `h`.
    pub fn with_curvature(algebra: FdAlgebra, h: Vec<Scalar>) -> Result<Self> {
        let n = algebra.dim();
        let z = algebra.zero_vec();
        Self::new(algebra, vec![z; n], h)
    }

    /// `d = [D, -]` and `h = D²` for an odd element `D`.
    pub fn inner(algebra: FdAlgebra, big_d: &[Scalar]) -> Result<Self> {
        let n = algebra.dim();
        let d = (0..n)
            .map(|i| {
                let e = algebra.basis_vec(i);
                let l = algebra.mul(big_d, &e);
                let r = algebra.mul(&e, big_d);
                let s = sgn(algebra.degree(i));
                l.iter().zip(&r).map(|(a, b)| a - &(&s * b)).collect()
            })
            .collect();
        let h = algebra.mul(big_d, big_d);
        Self::new(algebra, d, h)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn apply_d(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.algebra.zero_vec();
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, x) in self.d[i].iter().enumerate() {
                out[k] += &(c * x);
            }
        }
        out
    }

    pub fn is_curved(&self) -> bool {
        self.h.iter().any(|c| !c.is_zero())
    }
}

/// Checks associativity, homogeneity, `d(h) = 0`, `d² = [h, -]` and the graded Leibniz rule.
pub fn validate_curved(a: &CurvedAlgebra) -> CurvedValidation {
    let fail = |w| CurvedValidation { ok: false, witness: Some(w) };
    let alg = &a.algebra;
    let names = alg.names();
    if let Some(w) = alg.associativity_witness() {
        return fail(CurvedWitness::Associativity(w));
    }
    if let Some((i, j)) = alg.grading_witness() {
        return fail(CurvedWitness::ProductDegree { left: names[i].clone(), right: names[j].clone() });
    }
    for i in 0..alg.dim() {
        if !alg.is_homogeneous_of(&a.d[i], alg.degree(i) + 1) {
            return fail(CurvedWitness::DifferentialDegree { element: names[i].clone() });
        }
    }
    if !alg.is_homogeneous_of(&a.h, 2) {
        return fail(CurvedWitness::CurvatureDegree);
    }
    if a.apply_d(alg.unit()).iter().any(|c| !c.is_zero()) {
        return fail(CurvedWitness::UnitNotClosed);
    }
    if a.apply_d(&a.h).iter().any(|c| !c.is_zero()) {
        return fail(CurvedWitness::CurvatureNotClosed);
    }
    for i in 0..alg.dim() {
        let e = alg.basis_vec(i);
        let dd = a.apply_d(&a.d[i]);
        let comm: Vec<Scalar> = alg.mul(&a.h, &e).iter().zip(alg.mul(&e, &a.h)).map(|(x, y)| x - &y).collect();
        if dd != comm {
            return fail(CurvedWitness::DSquared { element: names[i].clone() });
        }
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let lhs = a.apply_d(alg.mul_basis(i, j));
            let l = alg.mul(&a.d[i], &alg.basis_vec(j));
            let r = alg.mul(&alg.basis_vec(i), &a.d[j]);
            let s = sgn(alg.degree(i));
            let rhs: Vec<Scalar> = l.iter().zip(&r).map(|(x, y)| x + &(&s * y)).collect();
            if lhs != rhs {
                return fail(CurvedWitness::Leibniz { left: names[i].clone(), right: names[j].clone() });
            }
        }
    }
    CurvedValidation { ok: true, witness: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    Cochain,
    Chain,
}

/// Direct sum (compact support) or direct product (Borel–Moore) totalisation.
///
/// Under a finite tensor-length bound both give the same finite complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Support {
    Sum,
    Product,
}

#[derive(Debug, Clone)]
pub struct HochschildComplexSpec {
    pub algebra: CurvedAlgebra,
    pub variant: Variant,
    pub support: Support,
    /// Tensor-length bound `L`.
    pub bound: usize,
    pub reduced: bool,
}

impl HochschildComplexSpec {
    pub fn new(algebra: CurvedAlgebra, variant: Variant, bound: usize) -> Result<Self> {
        if bound < 1 {
            return Err(Error::Invalid("the tensor-length bound must be at least 1".into()));
        }
        Ok(HochschildComplexSpec { algebra, variant, support: Support::Sum, bound, reduced: true })
    }

    pub fn unreduced(mut self) -> Self {
        self.reduced = false;
        self
    }

    pub fn with_support(mut self, s: Support) -> Self {
        self.support = s;
        self
    }

    pub fn with_bound(&self, bound: usize) -> Self {
        HochschildComplexSpec { bound, ..self.clone() }
    }
}

/// A basis element of the complex: `word ↦ out` for cochains, `out[word]` for chains.
///
/// Letters index the input basis (the complement of the unit when reduced).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub len: usize,
    pub word: Vec<usize>,
    pub out: usize,
}

impl Key {
    fn new(word: Vec<usize>, out: usize) -> Self {
        Key { len: word.len(), word, out }
    }
}

type Column = BTreeMap<Key, Scalar>;

fn add_into(col: &mut Column, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = col.entry(k.clone()).or_insert_with(Scalar::zero);
    *e += &c;
    if e.is_zero() {
        col.remove(&k);
    }
}

/// The truncated complex with its differential as sparse columns.
#[derive(Debug, Clone)]
pub struct HochschildComplex {
    spec: HochschildComplexSpec,
    letters: Vec<usize>,
    /// Sources of length at most this bound carry complete images.
    source_bound: usize,
    columns: BTreeMap<Key, Column>,
}

impl HochschildComplex {
    /// Assembles the differential on every basis element of length at most `source_bound`.
    pub fn assemble(spec: &HochschildComplexSpec, source_bound: usize) -> Self {
        let alg = &spec.algebra.algebra;
        let letters = if spec.reduced { alg.reduced_split().1 } else { (0..alg.dim()).collect() };
        let mut c = HochschildComplex { spec: spec.clone(), letters, source_bound, columns: BTreeMap::new() };
        for k in c.keys_up_to(source_bound) {
            c.columns.insert(k, Column::new());
        }
        match spec.variant {
            Variant::Cochain => c.fill_cochain(),
            Variant::Chain => c.fill_chain(),
        }
        c
    }

    pub fn spec(&self) -> &HochschildComplexSpec {
        &self.spec
    }

    fn alg(&self) -> &FdAlgebra {
        &self.spec.algebra.algebra
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn keys_of_length(&self, n: usize) -> Vec<Key> {
        let m = self.letters.len();
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            words = words.into_iter().flat_map(|w| (0..m).map(move |l| [w.clone(), vec![l]].concat())).collect();
        }
        words.into_iter().flat_map(|w| (0..self.alg().dim()).map(move |o| Key::new(w.clone(), o))).collect()
    }

    pub fn keys_up_to(&self, n: usize) -> Vec<Key> {
        (0..=n).flat_map(|k| self.keys_of_length(k)).collect()
    }

    /// Hochschild degree: cohomological for cochains, homological for chains.
    pub fn degree(&self, k: &Key) -> i64 {
        let a = self.alg();
        let inner: i64 = k.word.iter().map(|&l| a.degree(self.letters[l])).sum();
        match self.spec.variant {
            Variant::Cochain => k.len as i64 + a.degree(k.out) - inner,
            Variant::Chain => k.len as i64 - a.degree(k.out) - inner,
        }
    }

    /// The grading slot: the degree, or its parity for parity-graded algebras.
    pub fn slot(&self, k: &Key) -> i64 {
        self.slot_of(self.degree(k))
    }

    pub fn slot_of(&self, j: i64) -> i64 {
        match self.alg().grading() {
            Grading::Z => j,
            Grading::Z2 => j.rem_euclid(2),
        }
    }

    fn shifted(&self, letter: usize) -> i64 {
        self.alg().degree(self.letters[letter]) - 1
    }

    fn project(&self, v: &[Scalar]) -> Vec<(usize, Scalar)> {
        let coords = if self.spec.reduced { self.alg().reduce_mod_unit(v) } else { v.to_vec() };
        coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn push(&mut self, src: Key, tgt: Key, c: Scalar) {
        if let Some(col) = self.columns.get_mut(&src) {
            add_into(col, tgt, c);
        }
    }

    /// `δf = b∘f - (-1)^{|f|} f∘b`, assembled one target at a time.
    fn fill_cochain(&mut self) {
        let alg = self.alg().clone();
        let ca = self.spec.algebra.clone();
        let n = alg.dim();
        for tgt in self.keys_up_to(self.source_bound + 1) {
            let (w, u, m) = (tgt.word.clone(), tgt.out, tgt.len);
            let a: Vec<usize> = w.iter().map(|&l| self.letters[l]).collect();
            let prefix: Vec<i64> = (0..=m).map(|i| (0..i).map(|k| self.shifted(w[k])).sum()).collect();
            for v in 0..n {
                let src = Key::new(w.clone(), v);
                self.push(src, tgt.clone(), ca.d[v][u].clone());
            }
            if m >= 1 {
                let last = a[m - 1];
                for v in 0..n {
                    let c = &sgn(alg.degree(v)) * &alg.mul_basis(v, last)[u];
                    self.push(Key::new(w[..m - 1].to_vec(), v), tgt.clone(), c);
                }
                for v in 0..n {
                    let src = Key::new(w[1..].to_vec(), v);
                    let f = self.degree(&src) - 1;
                    let c = &sgn(f * self.shifted(w[0]) + alg.degree(a[0])) * &alg.mul_basis(a[0], v)[u];
                    self.push(src, tgt.clone(), c);
                }
            }
            let mut fb: Vec<(Key, Scalar)> = Vec::new();
            for i in 0..m {
                for (c, x) in self.project(&ca.d[a[i]]) {
                    let mut w2 = w.clone();
                    w2[i] = c;
                    fb.push((Key::new(w2, u), &sgn(prefix[i]) * &x));
                }
            }
            for i in 0..m.saturating_sub(1) {
                for (c, x) in self.project(alg.mul_basis(a[i], a[i + 1])) {
                    let w2 = [&w[..i], &[c], &w[i + 2..]].concat();
                    fb.push((Key::new(w2, u), &sgn(prefix[i] + alg.degree(a[i])) * &x));
                }
            }
            for i in 0..=m {
                for (c, x) in self.project(&ca.h) {
                    let w2 = [&w[..i], &[c], &w[i..]].concat();
                    fb.push((Key::new(w2, u), -(&sgn(prefix[i]) * &x)));
                }
            }
            for (src, x) in fb {
                let f = self.degree(&src) - 1;
                self.push(src, tgt.clone(), -(&sgn(f) * &x));
            }
        }
    }

    /// `b` on `x0[x1|...|xn]` with all operations on consecutive (cyclic) blocks.
    fn fill_chain(&mut self) {
        let alg = self.alg().clone();
        let ca = self.spec.algebra.clone();
        let sources: Vec<Key> = self.columns.keys().cloned().collect();
        for src in sources {
            let (w, a0, n) = (src.word.clone(), src.out, src.len);
            let a: Vec<usize> = w.iter().map(|&l| self.letters[l]).collect();
            let x0 = alg.degree(a0) - 1;
            // eps[k] = |x0|' + ... + |x_k|', with eps[0] = |x0|'
            let eps: Vec<i64> = (0..=n).map(|k| x0 + (0..k).map(|l| self.shifted(w[l])).sum::<i64>()).collect();
            let mut col = Column::new();
            for (c, x) in nonzero(&ca.d[a0]) {
                add_into(&mut col, Key::new(w.clone(), c), x.clone());
            }
            for k in 0..n {
                for (c, x) in self.project(&ca.d[a[k]]) {
                    let mut w2 = w.clone();
                    w2[k] = c;
                    add_into(&mut col, Key::new(w2, a0), &sgn(eps[k]) * &x);
                }
            }
            for k in 0..n.saturating_sub(1) {
                for (c, x) in self.project(alg.mul_basis(a[k], a[k + 1])) {
                    let w2 = [&w[..k], &[c], &w[k + 2..]].concat();
                    add_into(&mut col, Key::new(w2, a0), &sgn(eps[k] + alg.degree(a[k])) * &x);
                }
            }
            for k in 0..=n {
                for (c, x) in self.project(&ca.h) {
                    let w2 = [&w[..k], &[c], &w[k..]].concat();
                    add_into(&mut col, Key::new(w2, a0), -(&sgn(eps[k]) * &x));
                }
            }
            if n >= 1 {
                for (c, x) in nonzero(alg.mul_basis(a0, a[0])) {
                    add_into(&mut col, Key::new(w[1..].to_vec(), c), &sgn(alg.degree(a0)) * x);
                }
                let last = a[n - 1];
                let eta = self.shifted(w[n - 1]) * eps[n - 1];
                for (c, x) in nonzero(alg.mul_basis(last, a0)) {
                    add_into(&mut col, Key::new(w[..n - 1].to_vec(), c), &sgn(eta + alg.degree(last)) * x);
                }
            }
            self.columns.insert(src, col);
        }
    }

    pub fn image(&self, k: &Key) -> Option<&Column> {
        self.columns.get(k)
    }

    /// Applies the differential to a combination of sources within the assembled range.
    pub fn apply(&self, v: &Column) -> Option<Column> {
        let mut out = Column::new();
        for (k, c) in v {
            for (t, x) in self.columns.get(k)? {
                add_into(&mut out, t.clone(), c * x);
            }
        }
        Some(out)
    }

    /// Whether the differential squares to zero on every element of length at most `n`.
    ///
    /// Needs `n < source_bound` so that the second application is complete.
    pub fn squares_to_zero_up_to(&self, n: usize) -> bool {
        assert!(n < self.source_bound);
        self.columns.iter().filter(|(k, _)| k.len <= n).all(|(_, col)| self.apply(col).is_some_and(|c| c.is_empty()))
    }

    pub fn describe(&self, k: &Key) -> String {
        let names = self.alg().names();
        let word: Vec<&str> = k.word.iter().map(|&l| names[self.letters[l]].as_str()).collect();
        match self.spec.variant {
            Variant::Cochain => format!("[{}] -> {}", word.join("|"), names[k.out]),
            Variant::Chain => format!("{}[{}]", names[k.out], word.join("|")),
        }
    }

    pub fn describe_vector(&self, v: &[(Key, Scalar)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter().map(|(k, c)| format!("({c}) {}", self.describe(k))).collect::<Vec<_>>().join(" + ")
    }
}

/// Cohomology of one slot: representatives of a basis and the boundary space.
#[derive(Debug, Clone)]
pub struct SlotCohomology {
    pub keys: Vec<Key>,
    pub reps: Vec<Vec<Scalar>>,
    boundaries: Vec<Vec<Scalar>>,
}

impl SlotCohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a cocycle in terms of the representatives.
    pub fn coordinates(&self, z: &[Scalar], field: crate::exactcore::FieldKind) -> Option<Vec<Scalar>> {
        let mut cols = self.reps.clone();
        cols.extend(self.boundaries.iter().cloned());
        let m = ExactMatrix::from_columns(field, self.keys.len(), &cols);
        let sol = m.solve(z)?;
        Some(sol[..self.reps.len()].to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CupEntry {
    pub left: (i64, usize),
    pub right: (i64, usize),
    /// `None` when the product leaves the truncated range or is not closed.
    pub result: Option<Vec<((i64, usize), String)>>,
}

/// Dims per degree in the window, with representatives and cup products.
#[derive(Debug, Clone)]
pub struct HochschildTable {
    pub variant: Variant,
    pub grading: Grading,
    pub bound: usize,
    pub window: (i64, i64),
    pub dims: BTreeMap<i64, usize>,
    pub slots: BTreeMap<i64, SlotCohomology>,
    pub cups: Vec<CupEntry>,
    complex: HochschildComplex,
}

impl HochschildTable {
    pub fn dim(&self, j: i64) -> usize {
        self.dims.get(&j).copied().unwrap_or(0)
    }

    pub fn parity_dim(&self, p: i64) -> usize {
        self.slots.get(&p.rem_euclid(2)).map_or(0, SlotCohomology::dim)
    }

    pub fn complex(&self) -> &HochschildComplex {
        &self.complex
    }

    /// Representatives of degree zero, as text.
    pub fn hh0_basis(&self) -> Vec<String> {
        let s = self.complex.slot_of(0);
        self.slots.get(&s).map_or_else(Vec::new, |sc| {
            sc.reps
                .iter()
                .map(|r| {
                    let v: Vec<(Key, Scalar)> =
                        sc.keys.iter().zip(r).filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect();
                    self.complex.describe_vector(&v)
                })
                .collect()
        })
    }

    pub fn dims_vec(&self) -> Vec<usize> {
        (self.window.0..=self.window.1).map(|j| self.dim(j)).collect()
    }
}

fn check_window(hi: i64, bound: usize) -> Result<()> {
    if hi >= bound as i64 - 1 {
        return Err(Error::WindowExceedsBound { window: hi, bound, needed: hi + 1 });
    }
    Ok(())
}

fn slot_cohomology(c: &HochschildComplex, slot: i64, prev_slot: i64) -> SlotCohomology {
    let field = c.alg().field();
    let l = c.spec.bound;
    let keys: Vec<Key> = c.columns.keys().filter(|k| k.len < l && c.slot(k) == slot).cloned().collect();
    let pos: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows: BTreeMap<Key, usize> = BTreeMap::new();
    let mut cols = Vec::new();
    for k in &keys {
        for t in c.columns[k].keys() {
            let n = rows.len();
            rows.entry(t.clone()).or_insert(n);
        }
    }
    for k in &keys {
        let mut v = vec![field.zero(); rows.len()];
        for (t, x) in &c.columns[k] {
            v[rows[t]] = x.clone();
        }
        cols.push(v);
    }
    let d = ExactMatrix::from_columns(field, rows.len(), &cols);
    let zbasis = d.kernel_basis();
    let prev: Vec<&Key> = c.columns.keys().filter(|k| k.len < l && c.slot(k) == prev_slot).collect();
    let top: Vec<Key> =
        prev.iter().flat_map(|k| c.columns[*k].keys().filter(|t| t.len >= l).cloned()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let top_pos: BTreeMap<&Key, usize> = top.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let top_cols: Vec<Vec<Scalar>> = prev
        .iter()
        .map(|k| {
            let mut v = vec![field.zero(); top.len()];
            for (t, x) in &c.columns[*k] {
                if let Some(&i) = top_pos.get(t) {
                    v[i] = x.clone();
                }
            }
            v
        })
        .collect();
    let combos: Vec<Vec<Scalar>> = if top.is_empty() {
        (0..prev.len()).map(|i| (0..prev.len()).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
    } else {
        ExactMatrix::from_columns(field, top.len(), &top_cols).kernel_basis()
    };
    let mut boundaries = Vec::new();
    let mut ech = Echelon::new(keys.len(), field);
    for comb in combos {
        let mut v = vec![field.zero(); keys.len()];
        for (i, x) in comb.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (t, y) in &c.columns[prev[i]] {
                if let Some(&p) = pos.get(t) {
                    v[p] += &(x * y);
                }
            }
        }
        if ech.insert(&v) {
            boundaries.push(v);
        }
    }
    let mut reps = Vec::new();
    for z in zbasis {
        if ech.insert(&z) {
            reps.push(z);
        }
    }
    SlotCohomology { keys, reps, boundaries }
}

fn compute(spec: &HochschildComplexSpec, lo: i64, hi: i64, cups: bool) -> Result<HochschildTable> {
    check_window(hi, spec.bound)?;
    let c = HochschildComplex::assemble(spec, spec.bound - 1);
    let step = match spec.variant {
        Variant::Cochain => -1,
        Variant::Chain => 1,
    };
    let mut slots = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for j in lo..=hi {
        let s = c.slot_of(j);
        if !slots.contains_key(&s) {
            slots.insert(s, slot_cohomology(&c, s, c.slot_of(j + step)));
        }
        dims.insert(j, slots[&s].dim());
    }
    let mut table = HochschildTable {
        variant: spec.variant,
        grading: c.alg().grading(),
        bound: spec.bound,
        window: (lo, hi),
        dims,
        slots,
        cups: Vec::new(),
        complex: c,
    };
    if cups && spec.variant == Variant::Cochain {
        table.cups = cup_products(&table);
    }
    Ok(table)
}

/// `f ∪ g = b2(f ⊗ g)` on basis cochains, or `None` past the length bound.
fn cup_basis(c: &HochschildComplex, f: &Key, g: &Key) -> Option<Vec<(Key, Scalar)>> {
    if f.len + g.len >= c.spec.bound {
        return None;
    }
    let alg = c.alg();
    let gdeg = c.degree(g) - 1;
    let pre: i64 = f.word.iter().map(|&l| c.shifted(l)).sum();
    let s = sgn(gdeg * pre + alg.degree(f.out));
    let word = [f.word.clone(), g.word.clone()].concat();
    Some(
        nonzero(alg.mul_basis(f.out, g.out))
            .map(|(k, x)| (Key::new(word.clone(), k), &s * x))
            .collect(),
    )
}

fn cup_products(t: &HochschildTable) -> Vec<CupEntry> {
    let c = &t.complex;
    let field = c.alg().field();
    let mut out = Vec::new();
    let slot_list: Vec<i64> = t.slots.keys().copied().collect();
    for &s1 in &slot_list {
        for &s2 in &slot_list {
            let target = match t.grading {
                Grading::Z => s1 + s2,
                Grading::Z2 => (s1 + s2).rem_euclid(2),
            };
            for (i1, r1) in t.slots[&s1].reps.iter().enumerate() {
                for (i2, r2) in t.slots[&s2].reps.iter().enumerate() {
                    let mut prod = Column::new();
                    let mut fits = true;
                    for (k1, x1) in t.slots[&s1].keys.iter().zip(r1).filter(|(_, x)| !x.is_zero()) {
                        for (k2, x2) in t.slots[&s2].keys.iter().zip(r2).filter(|(_, x)| !x.is_zero()) {
                            match cup_basis(c, k1, k2) {
                                Some(v) => {
                                    for (k, x) in v {
                                        add_into(&mut prod, k, &(x1 * x2) * &x);
                                    }
                                }
                                None => fits = false,
                            }
                        }
                    }
                    let result = if !fits {
                        None
                    } else if let Some(ts) = t.slots.get(&target) {
                        let closed = c.apply(&prod).is_some_and(|v| v.is_empty());
                        let pos: BTreeMap<&Key, usize> = ts.keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
                        let mut z = vec![field.zero(); ts.keys.len()];
                        let mut inside = true;
                        for (k, x) in &prod {
                            match pos.get(k) {
                                Some(&p) => z[p] = x.clone(),
                                None => inside = false,
                            }
                        }
                        if closed && inside {
                            ts.coordinates(&z, field).map(|co| {
                                co.into_iter()
                                    .enumerate()
                                    .filter(|(_, x)| !x.is_zero())
                                    .map(|(i, x)| ((target, i), x.to_string()))
                                    .collect()
                            })
                        } else {
                            None
                        }
                    } else if prod.is_empty() {
                        Some(vec![])
                    } else {
                        None
                    };
                    out.push(CupEntry { left: (s1, i1), right: (s2, i2), result });
                }
            }
        }
    }
    out
}

/// Cohomology of the truncated cochain complex in degrees `lo..=hi`.
pub fn hochschild_cohomology(spec: &HochschildComplexSpec, lo: i64, hi: i64) -> Result<HochschildTable> {
    if spec.variant != Variant::Cochain {
        return Err(Error::Invalid("expected a cochain complex specification".into()));
    }
    compute(spec, lo, hi, true)
}

/// Homology of the truncated chain complex in degrees `lo..=hi`.
pub fn hochschild_homology(spec: &HochschildComplexSpec, lo: i64, hi: i64) -> Result<HochschildTable> {
    if spec.variant != Variant::Chain {
        return Err(Error::Invalid("expected a chain complex specification".into()));
    }
    compute(spec, lo, hi, false)
}

/// Whether the assembled differential, curvature insertion included, squares
/// to zero on all elements of length at most `L - 1`.
pub fn curvature_term_check(spec: &HochschildComplexSpec) -> bool {
    let c = HochschildComplex::assemble(spec, spec.bound);
    c.squares_to_zero_up_to(spec.bound - 1)
}

/// Text form of an algebra element, for reports.
pub fn element_text(a: &FdAlgebra, v: &[Scalar]) -> String {
    format_vector(a.names(), v)
}

#[cfg(test)]
mod tests;
