//! Bar and cobar constructions and the Koszul dual `A^! = (BA)^*`.
//!
//! Bar words `[a1|…|an]` over the augmentation ideal carry degree
//! `Σ deg(ai) - n`. The differential is the coderivation induced by
//! `b1[a] = [da]` and `b2([a],[b]) = (-1)^{|a|} [ab]`, with the Koszul sign of
//! the shifted letters passed over.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::complexes::Grading;
use crate::error::{Error, Result};
use crate::exactcore::{Echelon, ExactMatrix, FieldKind, Scalar};

mod coalgebra;
#[cfg(test)]
mod tests;

pub use coalgebra::{cobar, counit_h0_check, CobarComplex, ConilpotentCoalgebra, CounitReport};

const MAX_WORDS: usize = 200_000;

fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// A finite-dimensional dg algebra, `Z`-graded, whose unit is a basis vector
/// and whose remaining basis vectors span a dg ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedAlgebra {
    alg: FdAlgebra,
    d: Vec<Vec<Scalar>>,
    unit_index: usize,
    ideal: Vec<usize>,
}

impl AugmentedAlgebra {
    pub fn new(alg: FdAlgebra) -> Result<Self> {
        let n = alg.dim();
        let d = vec![alg.zero_vec(); n];
        Self::with_differential(alg, d)
    }

    /// `d[i]` is the image of the i-th basis vector.
    pub fn with_differential(alg: FdAlgebra, d: Vec<Vec<Scalar>>) -> Result<Self> {
        if alg.grading() != Grading::Z {
            return Err(Error::Invalid("the bar construction needs a Z-graded algebra".into()));
        }
        let n = alg.dim();
        if d.len() != n || d.iter().any(|v| v.len() != n) {
            return Err(Error::Invalid("differential does not match the basis".into()));
        }
        let d: Vec<Vec<Scalar>> =
            d.iter().map(|v| v.iter().map(|c| alg.field().coerce(c)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let p = (0..n)
            .find(|&i| alg.basis_vec(i) == alg.unit())
            .ok_or_else(|| Error::NotAugmented("the unit is not a basis vector".into()))?;
        let ideal: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        for &i in &ideal {
            for &j in &ideal {
                if !alg.mul_basis(i, j)[p].is_zero() {
                    return Err(Error::NotAugmented(format!(
                        "{}*{} has a unit component",
                        alg.names()[i],
                        alg.names()[j]
                    )));
                }
            }
            if !d[i][p].is_zero() {
                return Err(Error::NotAugmented(format!("d({}) has a unit component", alg.names()[i])));
            }
        }
        if d[p].iter().any(|c| !c.is_zero()) {
            return Err(Error::Invalid("the unit is not closed".into()));
        }
        let a = AugmentedAlgebra { alg, d, unit_index: p, ideal };
        a.check_dg()?;
        Ok(a)
    }

    fn check_dg(&self) -> Result<()> {
        let alg = &self.alg;
        let n = alg.dim();
        let apply = |v: &[Scalar]| -> Vec<Scalar> {
            let mut out = alg.zero_vec();
            for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, x) in self.d[i].iter().enumerate() {
                    out[k] += &(c * x);
                }
            }
            out
        };
        for i in 0..n {
            if !alg.is_homogeneous_of(&self.d[i], alg.degree(i) + 1) {
                return Err(Error::DegreeMismatch(format!("d({}) is not of degree +1", alg.names()[i])));
            }
            if apply(&self.d[i]).iter().any(|c| !c.is_zero()) {
                return Err(Error::Invalid(format!("d^2({}) is not zero", alg.names()[i])));
            }
            for j in 0..n {
                let lhs = apply(alg.mul_basis(i, j));
                let s = sign(alg.degree(i));
                let r1 = alg.mul(&self.d[i], &alg.basis_vec(j));
                let r2 = alg.mul(&alg.basis_vec(i), &self.d[j]);
                let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(x, y)| x + &(&s * y)).collect();
                if lhs != rhs {
                    return Err(Error::Invalid(format!("Leibniz rule fails on {}, {}", alg.names()[i], alg.names()[j])));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &FdAlgebra {
        &self.alg
    }

    pub fn field(&self) -> FieldKind {
        self.alg.field()
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    /// Basis indices of the augmentation ideal.
    pub fn ideal(&self) -> &[usize] {
        &self.ideal
    }

    pub fn is_dg(&self) -> bool {
        self.d.iter().flatten().any(|c| !c.is_zero())
    }

    pub fn differential(&self) -> &[Vec<Scalar>] {
        &self.d
    }

    /// Degree of the i-th ideal letter.
    pub fn letter_degree(&self, i: usize) -> i64 {
        self.alg.degree(self.ideal[i])
    }

    pub fn letter_name(&self, i: usize) -> &str {
        &self.alg.names()[self.ideal[i]]
    }

    fn letter_product(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        let v = self.alg.mul_basis(self.ideal[i], self.ideal[j]);
        self.ideal.iter().enumerate().filter(|(_, &k)| !v[k].is_zero()).map(|(pos, &k)| (pos, v[k].clone())).collect()
    }

    fn letter_diff(&self, i: usize) -> Vec<(usize, Scalar)> {
        let v = &self.d[self.ideal[i]];
        self.ideal.iter().enumerate().filter(|(_, &k)| !v[k].is_zero()).map(|(pos, &k)| (pos, v[k].clone())).collect()
    }

    /// Degree of a bar word.
    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.letter_degree(i) - 1).sum()
    }

    pub fn word_text(&self, w: &[usize]) -> String {
        format!("[{}]", w.iter().map(|&i| self.letter_name(i)).collect::<Vec<_>>().join("|"))
    }

    /// The bar differential `d_I + d_E` of a word.
    pub fn bar_differential(&self, w: &[usize]) -> Vec<(Vec<usize>, Scalar)> {
        let (di, de) = self.bar_parts(w);
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (k, c) in di.into_iter().chain(de) {
            let e = acc.entry(k).or_insert_with(Scalar::zero);
            *e += &c;
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Internal and external parts of the bar differential.
    pub fn bar_parts(&self, w: &[usize]) -> (Vec<(Vec<usize>, Scalar)>, Vec<(Vec<usize>, Scalar)>) {
        let mut internal = Vec::new();
        let mut external = Vec::new();
        let mut eps = 0i64;
        for i in 0..w.len() {
            let s = sign(eps);
            for (k, c) in self.letter_diff(w[i]) {
                let mut nw = w.to_vec();
                nw[i] = k;
                internal.push((nw, &s * &c));
            }
            if i + 1 < w.len() {
                let s2 = &s * &sign(self.letter_degree(w[i]));
                for (k, c) in self.letter_product(w[i], w[i + 1]) {
                    let mut nw = w[..i].to_vec();
                    nw.push(k);
                    nw.extend_from_slice(&w[i + 2..]);
                    external.push((nw, &s2 * &c));
                }
            }
            eps += self.letter_degree(w[i]) - 1;
        }
        (internal, external)
    }

    /// All bar words of length at most `max_len`, by length then lexicographically.
    pub fn bar_words(&self, max_len: usize) -> Result<Vec<Vec<usize>>> {
        let m = self.ideal.len();
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_len {
            if m > 0 && out.len() + layer.len() * m > MAX_WORDS {
                return Err(Error::BoundExceeded(format!("more than {MAX_WORDS} bar words")));
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..m).map(move |i| {
                        let mut x = w.clone();
                        x.push(i);
                        x
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        Ok(out)
    }

    /// `(d_I + d_E)^2 = 0` on every word of length at most `max_len`.
    pub fn bar_squares_to_zero(&self, max_len: usize) -> Result<bool> {
        for w in self.bar_words(max_len)? {
            let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (x, c) in self.bar_differential(&w) {
                for (y, e) in self.bar_differential(&x) {
                    *acc.entry(y).or_insert_with(Scalar::zero) += &(&c * &e);
                }
            }
            if acc.values().any(|c| !c.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Word length `n` of the bar construction.
#[derive(Debug, Clone)]
pub struct BarPiece {
    pub length: usize,
    pub words: Vec<Vec<usize>>,
    pub degrees: Vec<i64>,
    /// Internal differential within the piece, columns indexed by words.
    pub d_internal: ExactMatrix,
    /// External differential into piece `length - 1`.
    pub d_external: ExactMatrix,
}

impl BarPiece {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Number of words in each degree.
    pub fn degree_dims(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }
}

/// The pieces `Ā[1]^{⊗n}` for `n <= max_len`.
pub fn bar(a: &AugmentedAlgebra, max_len: usize) -> Result<Vec<BarPiece>> {
    if max_len < 1 {
        return Err(Error::Invalid("the bar construction needs word length at least 1".into()));
    }
    let words = a.bar_words(max_len)?;
    let field = a.field();
    let mut by_len: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_len + 1];
    for w in words {
        by_len[w.len()].push(w);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> =
        by_len.iter().map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()).collect();
    let mut pieces = Vec::new();
    for n in 0..=max_len {
        let ws = &by_len[n];
        let mut di = ExactMatrix::zeros(ws.len(), ws.len(), field);
        let below = if n == 0 { 0 } else { by_len[n - 1].len() };
        let mut de = ExactMatrix::zeros(below, ws.len(), field);
        for (col, w) in ws.iter().enumerate() {
            let (int, ext) = a.bar_parts(w);
            for (x, c) in int {
                di.add_to(index[n][&x], col, &c);
            }
            for (x, c) in ext {
                de.add_to(index[n - 1][&x], col, &c);
            }
        }
        pieces.push(BarPiece {
            length: n,
            degrees: ws.iter().map(|w| a.word_degree(w)).collect(),
            words: ws.clone(),
            d_internal: di,
            d_external: de,
        });
    }
    Ok(pieces)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualProduct {
    pub left: (i64, usize),
    pub right: (i64, usize),
    pub result: Vec<((i64, usize), String)>,
}

/// Cohomology of `(BA)^*` in a degree window, with the convolution product.
#[derive(Debug, Clone, Serialize)]
pub struct KoszulDualTable {
    pub bound: usize,
    pub window: (i64, i64),
    pub dims: BTreeMap<i64, usize>,
    /// Representative functionals, as (bar word, value) pairs.
    pub representatives: BTreeMap<i64, Vec<Vec<(String, String)>>>,
    pub products: Vec<DualProduct>,
    #[serde(skip)]
    classes: BTreeMap<i64, DegreeClasses>,
}

#[derive(Debug, Clone)]
struct DegreeClasses {
    words: Vec<Vec<usize>>,
    reps: Vec<Vec<Scalar>>,
    solver: ExactMatrix,
    boundary_rank: usize,
}

impl DegreeClasses {
    /// Coordinates of a cocycle in the basis of representatives.
    fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solver.solve(v).map(|c| c[self.boundary_rank..].to_vec())
    }
}

impl KoszulDualTable {
    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    /// Coordinates of the successive powers `x, x^2, …` of a class, while they stay in the window.
    pub fn powers(&self, class: (i64, usize)) -> Vec<(i64, Vec<Scalar>)> {
        let (k, i) = class;
        let Some(base) = self.classes.get(&k) else { return Vec::new() };
        let x = base.reps[i].clone();
        let mut cur = (k, x.clone());
        let mut out = Vec::new();
        loop {
            let Some(cls) = self.classes.get(&cur.0) else { break };
            let Some(c) = cls.coords(&cur.1) else { break };
            out.push((cur.0, c));
            let next = cur.0 + k;
            if k == 0 || next > self.window.1 || next < self.window.0 {
                break;
            }
            match convolve(&self.classes, (cur.0, &cur.1), (k, &x)) {
                Some(v) => cur = (next, v),
                None => break,
            }
        }
        out
    }
}

fn convolve(
    classes: &BTreeMap<i64, DegreeClasses>,
    f: (i64, &[Scalar]),
    g: (i64, &[Scalar]),
) -> Option<Vec<Scalar>> {
    let target = classes.get(&(f.0 + g.0))?;
    let fw = &classes.get(&f.0)?.words;
    let gw = &classes.get(&g.0)?.words;
    let fi: HashMap<&[usize], usize> = fw.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let gi: HashMap<&[usize], usize> = gw.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let s = sign(f.0 * g.0);
    let out = target
        .words
        .iter()
        .map(|w| {
            let mut acc = Scalar::zero();
            for cut in 0..=w.len() {
                if let (Some(&i), Some(&j)) = (fi.get(&w[..cut]), gi.get(&w[cut..])) {
                    acc += &(&(&f.1[i] * &g.1[j]) * &s);
                }
            }
            acc
        })
        .collect();
    Some(out)
}

/// Cohomology of the dual of the bar construction truncated at word length `bound`.
///
/// Degree `k` of `A^!` pairs with bar degree `-k`; cochains live on words of
/// length at most `bound - 1`. Requires `hi < bound - 1`.
pub fn koszul_dual_cohomology(a: &AugmentedAlgebra, bound: usize, lo: i64, hi: i64) -> Result<KoszulDualTable> {
    if hi >= bound as i64 - 1 {
        return Err(Error::WindowExceedsBound { window: hi, bound, needed: hi + 1 });
    }
    let field = a.field();
    let words = a.bar_words(bound)?;
    let mut by_deg: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    for w in words {
        by_deg.entry(-a.word_degree(&w)).or_default().push(w);
    }
    let short = |k: i64| -> Vec<Vec<usize>> {
        by_deg.get(&k).map(|ws| ws.iter().filter(|w| w.len() < bound).cloned().collect()).unwrap_or_default()
    };
    // matrix of f -> f∘d from degree k cochains (on `short(k)`) to functionals on `short(k+1)`
    let coboundary = |src: &[Vec<usize>], tgt: &[Vec<usize>]| -> ExactMatrix {
        let pos: HashMap<&[usize], usize> = src.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let mut m = ExactMatrix::zeros(tgt.len(), src.len(), field);
        for (row, w) in tgt.iter().enumerate() {
            for (x, c) in a.bar_differential(w) {
                if let Some(&col) = pos.get(x.as_slice()) {
                    m.add_to(row, col, &c);
                }
            }
        }
        m
    };
    let mut classes = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    for k in lo..=hi {
        let cur = short(k);
        let next: Vec<Vec<usize>> = by_deg.get(&(k + 1)).cloned().unwrap_or_default();
        let prev = short(k - 1);
        let z = coboundary(&cur, &next).kernel_basis();
        let b = coboundary(&prev, &cur);
        let mut ech = Echelon::new(cur.len(), field);
        let mut bvecs = Vec::new();
        for col in b.columns() {
            if ech.insert(&col) {
                bvecs.push(col);
            }
        }
        let boundary_rank = bvecs.len();
        let mut reps = Vec::new();
        for v in z {
            if ech.insert(&v) {
                reps.push(v);
            }
        }
        let mut all = bvecs.clone();
        all.extend(reps.iter().cloned());
        let solver = ExactMatrix::from_columns(field, cur.len(), &all);
        dims.insert(k, reps.len());
        representatives.insert(
            k,
            reps.iter()
                .map(|r| {
                    cur.iter()
                        .zip(r)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(w, c)| (a.word_text(w), c.to_string()))
                        .collect()
                })
                .collect(),
        );
        classes.insert(k, DegreeClasses { words: cur, reps, solver, boundary_rank });
    }
    let mut products = Vec::new();
    for (&p, cp) in &classes {
        for (&q, cq) in &classes {
            if !classes.contains_key(&(p + q)) {
                continue;
            }
            for (i, f) in cp.reps.iter().enumerate() {
                for (j, g) in cq.reps.iter().enumerate() {
                    let v = convolve(&classes, (p, f), (q, g)).expect("degree in window");
                    let coords = classes[&(p + q)].coords(&v).ok_or_else(|| {
                        Error::Invalid("product of cocycles is not a cocycle".into())
                    })?;
                    products.push(DualProduct {
                        left: (p, i),
                        right: (q, j),
                        result: coords
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(t, c)| ((p + q, t), c.to_string()))
                            .collect(),
                    });
                }
            }
        }
    }
    Ok(KoszulDualTable { bound, window: (lo, hi), dims, representatives, products, classes })
}
