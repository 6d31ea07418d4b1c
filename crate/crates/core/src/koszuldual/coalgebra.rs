use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{sign, AugmentedAlgebra};
use crate::algebra::FdAlgebra;
use crate::complexes::Grading;
use crate::error::{Error, Result};
use crate::exactcore::{ExactMatrix, FieldKind, Scalar};

type Tensor2 = Vec<(usize, usize, Scalar)>;

/// A finite-dimensional graded dg coalgebra with a group-like coaugmentation.
///
/// `coproduct[k]` lists `(i, j, c)` with `Δ(c_k) = Σ c · c_i ⊗ c_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConilpotentCoalgebra {
    field: FieldKind,
    names: Vec<String>,
    degrees: Vec<i64>,
    coproduct: Vec<Tensor2>,
    counit: Vec<Scalar>,
    coaug: usize,
    d: Vec<Vec<(usize, Scalar)>>,
}

fn add_into<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    let e = m.entry(k).or_insert_with(Scalar::zero);
    *e += &c;
}

impl ConilpotentCoalgebra {
    pub fn new(
        field: FieldKind,
        names: Vec<String>,
        degrees: Vec<i64>,
        coproduct: Vec<Tensor2>,
        counit: Vec<Scalar>,
        coaug: usize,
        d: Vec<Vec<(usize, Scalar)>>,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n || coproduct.len() != n || counit.len() != n || d.len() != n || coaug >= n {
            return Err(Error::Invalid("coalgebra data does not match the basis".into()));
        }
        let c = ConilpotentCoalgebra { field, names, degrees, coproduct, counit, coaug, d };
        c.validate()?;
        if !c.is_conilpotent() {
            return Err(Error::NotConilpotent);
        }
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let p = self.coaug;
        if !self.counit[p].is_one() || (0..n).any(|i| i != p && !self.counit[i].is_zero()) {
            return Err(Error::Invalid("the counit must be dual to the coaugmentation".into()));
        }
        if self.coproduct[p] != vec![(p, p, Scalar::one())] || !self.d[p].is_empty() {
            return Err(Error::Invalid("the coaugmentation is not group-like and closed".into()));
        }
        for k in 0..n {
            let mut left: BTreeMap<usize, Scalar> = BTreeMap::new();
            let mut right: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i, j, c) in &self.coproduct[k] {
                add_into(&mut left, *j, &self.counit[*i] * c);
                add_into(&mut right, *i, &self.counit[*j] * c);
                if self.degrees[*i] + self.degrees[*j] != self.degrees[k] {
                    return Err(Error::DegreeMismatch(format!("coproduct of {}", self.names[k])));
                }
            }
            let unit_k: BTreeMap<usize, Scalar> = [(k, Scalar::one())].into_iter().collect();
            let clean = |m: BTreeMap<usize, Scalar>| -> BTreeMap<usize, Scalar> { m.into_iter().filter(|(_, c)| !c.is_zero()).collect() };
            if clean(left) != unit_k || clean(right) != unit_k {
                return Err(Error::Invalid(format!("counit law fails on {}", self.names[k])));
            }
            if self.d[k].iter().any(|(i, c)| !c.is_zero() && self.degrees[*i] != self.degrees[k] + 1) {
                return Err(Error::DegreeMismatch(format!("differential of {}", self.names[k])));
            }
        }
        if !self.is_coassociative() {
            return Err(Error::Invalid("comultiplication is not coassociative".into()));
        }
        if !self.d_is_coderivation() {
            return Err(Error::Invalid("differential is not a coderivation with d^2 = 0".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn coaugmentation(&self) -> usize {
        self.coaug
    }

    pub fn coproduct(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.coproduct[k]
    }

    pub fn differential(&self, k: usize) -> &[(usize, Scalar)] {
        &self.d[k]
    }

    /// `(Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ` on every basis vector.
    pub fn is_coassociative(&self) -> bool {
        (0..self.dim()).all(|k| {
            let mut l: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut r: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (i, j, c) in &self.coproduct[k] {
                for (a, b, e) in &self.coproduct[*i] {
                    add_into(&mut l, (*a, *b, *j), c * e);
                }
                for (a, b, e) in &self.coproduct[*j] {
                    add_into(&mut r, (*i, *a, *b), c * e);
                }
            }
            l.retain(|_, c| !c.is_zero());
            r.retain(|_, c| !c.is_zero());
            l == r
        })
    }

    /// `d² = 0` and `Δd = (d ⊗ 1 + 1 ⊗ d)Δ` with the Koszul sign.
    pub fn d_is_coderivation(&self) -> bool {
        (0..self.dim()).all(|k| {
            let mut dd: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i, c) in &self.d[k] {
                for (j, e) in &self.d[*i] {
                    add_into(&mut dd, *j, c * e);
                }
            }
            let mut l: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (i, c) in &self.d[k] {
                for (a, b, e) in &self.coproduct[*i] {
                    add_into(&mut l, (*a, *b), c * e);
                }
            }
            for (i, j, c) in &self.coproduct[k] {
                for (a, e) in &self.d[*i] {
                    add_into(&mut l, (*a, *j), -(c * e));
                }
                let s = sign(self.degrees[*i]);
                for (b, e) in &self.d[*j] {
                    add_into(&mut l, (*i, *b), -(&(c * e) * &s));
                }
            }
            dd.values().all(Scalar::is_zero) && l.values().all(Scalar::is_zero)
        })
    }

    /// `Δ̄(c) = Δ(c) - c ⊗ 1 - 1 ⊗ c` on the coaugmentation coideal.
    pub fn reduced_coproduct(&self, k: usize) -> Tensor2 {
        let p = self.coaug;
        self.coproduct[k].iter().filter(|(i, j, _)| *i != p && *j != p).cloned().collect()
    }

    /// Iterated reduced coproducts vanish on every basis vector.
    pub fn is_conilpotent(&self) -> bool {
        let p = self.coaug;
        for k in (0..self.dim()).filter(|&k| k != p) {
            let mut layer: BTreeMap<Vec<usize>, Scalar> = [(vec![k], Scalar::one())].into_iter().collect();
            let mut steps = 0;
            while !layer.is_empty() {
                if steps > self.dim() {
                    return false;
                }
                let mut next = BTreeMap::new();
                for (w, c) in &layer {
                    for (i, j, e) in self.reduced_coproduct(w[0]) {
                        let mut nw = vec![i, j];
                        nw.extend_from_slice(&w[1..]);
                        add_into(&mut next, nw, c * &e);
                    }
                }
                next.retain(|_, c| !c.is_zero());
                layer = next;
                steps += 1;
            }
        }
        true
    }

    /// The linear dual `A^*` of an augmented algebra, with `Δ` dual to the product.
    pub fn dual_of(a: &AugmentedAlgebra) -> Result<Self> {
        let alg = a.algebra();
        let n = alg.dim();
        let mut coproduct = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in alg.mul_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        coproduct[k].push((i, j, c.clone()));
                    }
                }
            }
        }
        let mut d = vec![Vec::new(); n];
        for (i, di) in a.differential().iter().enumerate() {
            for (k, c) in di.iter().enumerate() {
                if !c.is_zero() {
                    d[k].push((i, -(&sign(-alg.degree(k)) * c)));
                }
            }
        }
        Self::new(
            alg.field(),
            alg.names().iter().map(|s| format!("{s}*")).collect(),
            alg.degrees().iter().map(|d| -d).collect(),
            coproduct,
            alg.unit().to_vec(),
            a.unit_index(),
            d,
        )
    }

    /// The bar construction truncated at word length `max_len`, a subcoalgebra of `BA`.
    pub fn bar_of(a: &AugmentedAlgebra, max_len: usize) -> Result<(Self, Vec<Vec<usize>>)> {
        let words = a.bar_words(max_len)?;
        let index: HashMap<&Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let coproduct = words
            .iter()
            .map(|w| (0..=w.len()).map(|cut| (index[&w[..cut].to_vec()], index[&w[cut..].to_vec()], Scalar::one())).collect())
            .collect();
        let d = words
            .iter()
            .map(|w| a.bar_differential(w).into_iter().map(|(x, c)| (index[&x], c)).collect())
            .collect();
        let mut counit = vec![a.field().zero(); words.len()];
        counit[0] = a.field().one();
        let c = Self::new(
            a.field(),
            words.iter().map(|w| a.word_text(w)).collect(),
            words.iter().map(|w| a.word_degree(w)).collect(),
            coproduct,
            counit,
            0,
            d,
        )?;
        Ok((c, words))
    }

    /// The dual algebra `C^*`, graded by negated degrees with unit the counit.
    pub fn dual_algebra(&self) -> Result<FdAlgebra> {
        let n = self.dim();
        let mut table = vec![vec![vec![self.field.zero(); n]; n]; n];
        for (k, terms) in self.coproduct.iter().enumerate() {
            for (i, j, c) in terms {
                table[*i][*j][k] += c;
            }
        }
        FdAlgebra::new(
            self.field,
            self.names.iter().map(|s| s.strip_suffix('*').map_or_else(|| format!("{s}*"), str::to_string)).collect(),
            self.degrees.iter().map(|d| -d).collect(),
            Grading::Z,
            table,
            self.counit.clone(),
        )
    }
}

/// The cobar construction `T(C̄[-1])` with at most `max_letters` letters per word.
#[derive(Debug, Clone)]
pub struct CobarComplex {
    pub coalgebra: ConilpotentCoalgebra,
    pub max_letters: usize,
    letters: Vec<usize>,
}

pub fn cobar(c: &ConilpotentCoalgebra, max_letters: usize) -> Result<CobarComplex> {
    if !c.is_conilpotent() {
        return Err(Error::NotConilpotent);
    }
    let letters = (0..c.dim()).filter(|&i| i != c.coaug).collect();
    Ok(CobarComplex { coalgebra: c.clone(), max_letters, letters })
}

impl CobarComplex {
    /// Degree of the desuspended letter `s^{-1} c`.
    pub fn letter_degree(&self, c: usize) -> i64 {
        self.coalgebra.degree(c) + 1
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&c| self.letter_degree(c)).sum()
    }

    pub fn word_text(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&c| format!("<{}>", self.coalgebra.names[c])).collect::<Vec<_>>().join("")
    }

    /// Words of the given degree with at most `max_letters` letters.
    pub fn component(&self, degree: i64, max_letters: usize) -> Vec<Vec<usize>> {
        let degs: Vec<i64> = self.letters.iter().map(|&c| self.letter_degree(c)).collect();
        let (lo, hi) = (degs.iter().copied().min().unwrap_or(0), degs.iter().copied().max().unwrap_or(0));
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn feasible(sum: i64, rem: usize, lo: i64, hi: i64, target: i64) -> bool {
            (0..=rem as i64).any(|r| sum + r * lo <= target && target <= sum + r * hi)
        }
        #[allow(clippy::too_many_arguments)]
        fn rec(
            letters: &[usize],
            degs: &[i64],
            cur: &mut Vec<usize>,
            sum: i64,
            rem: usize,
            bounds: (i64, i64),
            target: i64,
            out: &mut Vec<Vec<usize>>,
        ) {
            if sum == target {
                out.push(cur.clone());
            }
            if rem == 0 {
                return;
            }
            for (k, &c) in letters.iter().enumerate() {
                let s = sum + degs[k];
                if feasible(s, rem - 1, bounds.0, bounds.1, target) {
                    cur.push(c);
                    rec(letters, degs, cur, s, rem - 1, bounds, target, out);
                    cur.pop();
                }
            }
        }
        if feasible(0, max_letters, lo, hi, degree) {
            rec(&self.letters, &degs, &mut cur, 0, max_letters, (lo, hi), degree, &mut out);
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// `d(s^{-1}c) = -s^{-1}dc + Σ (-1)^{|c'|} s^{-1}c' ⊗ s^{-1}c''`, extended as a derivation.
    pub fn differential(&self, w: &[usize]) -> Vec<(Vec<usize>, Scalar)> {
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        let mut eps = 0i64;
        for i in 0..w.len() {
            let s = sign(eps);
            for (k, c) in self.coalgebra.differential(w[i]) {
                let mut nw = w.to_vec();
                nw[i] = *k;
                add_into(&mut acc, nw, -(&s * c));
            }
            for (a, b, c) in self.coalgebra.reduced_coproduct(w[i]) {
                let mut nw = w[..i].to_vec();
                nw.push(a);
                nw.push(b);
                nw.extend_from_slice(&w[i + 1..]);
                add_into(&mut acc, nw, &(&s * &sign(self.coalgebra.degree(a))) * &c);
            }
            eps += self.letter_degree(w[i]);
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn matrix(&self, src: &[Vec<usize>], tgt: &[Vec<usize>]) -> ExactMatrix {
        let pos: HashMap<&[usize], usize> = tgt.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let mut m = ExactMatrix::zeros(tgt.len(), src.len(), self.coalgebra.field);
        for (col, w) in src.iter().enumerate() {
            for (x, c) in self.differential(w) {
                let row = pos.get(x.as_slice()).expect("image within the next component");
                m.add_to(*row, col, &c);
            }
        }
        m
    }

    /// `d² = 0` on words of the given degree with fewer than `max_letters - 1` letters.
    pub fn d_squared_zero(&self, degree: i64) -> bool {
        self.component(degree, self.max_letters.saturating_sub(2)).iter().all(|w| {
            let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
            for (x, c) in self.differential(w) {
                for (y, e) in self.differential(&x) {
                    add_into(&mut acc, y, &c * &e);
                }
            }
            acc.values().all(Scalar::is_zero)
        })
    }

    /// Cohomology dims: cocycles among words with at most `max_letters` letters,
    /// coboundaries of words with at most `max_letters - 1` letters.
    pub fn cohomology(&self, lo: i64, hi: i64) -> Result<BTreeMap<i64, usize>> {
        let m = self.max_letters;
        if m == 0 {
            return Err(Error::WindowExceedsBound { window: hi, bound: m, needed: 1 });
        }
        let mut out = BTreeMap::new();
        for k in lo..=hi {
            let cur = self.component(k, m);
            let next = self.component(k + 1, m + 1);
            let prev = self.component(k - 1, m - 1);
            let z = cur.len() - self.matrix(&cur, &next).rank();
            let b = self.matrix(&prev, &cur).rank();
            out.insert(k, z - b);
        }
        Ok(out)
    }
}

/// Degree-zero comparison of the truncated `ΩBA` with `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CounitReport {
    pub bound: usize,
    pub dim_a: usize,
    pub h0_dim: usize,
    pub chain_map: bool,
    pub surjective: bool,
    pub kernel_is_image: bool,
}

impl CounitReport {
    pub fn ok(&self) -> bool {
        self.h0_dim == self.dim_a && self.chain_map && self.surjective && self.kernel_is_image
    }
}

/// Checks that `ΩBA → A` induces an isomorphism on `H⁰`, for `A` in degree zero.
///
/// Uses the bar coalgebra truncated at word length `bound` and cobar words of
/// at most `bound` letters. The counit sends `<[a1]>…<[am]>` to `(-1)^{m-1} a1⋯am`.
pub fn counit_h0_check(a: &AugmentedAlgebra, bound: usize) -> Result<CounitReport> {
    let alg = a.algebra();
    if alg.degrees().iter().any(|&d| d != 0) || a.is_dg() {
        return Err(Error::Invalid("the counit check needs an algebra concentrated in degree zero".into()));
    }
    if bound < 2 {
        return Err(Error::WindowExceedsBound { window: 0, bound, needed: 1 });
    }
    let (c, words) = ConilpotentCoalgebra::bar_of(a, bound)?;
    let om = cobar(&c, bound)?;
    let c0 = om.component(0, bound);
    let cm1 = om.component(-1, bound - 1);
    let field = a.field();
    let counit = |w: &[usize]| -> Vec<Scalar> {
        if w.is_empty() {
            return alg.unit().to_vec();
        }
        let mut v = alg.unit().to_vec();
        for &l in w {
            let bw = &words[l];
            if bw.len() != 1 {
                return alg.zero_vec();
            }
            v = alg.mul(&v, &alg.basis_vec(a.ideal()[bw[0]]));
        }
        let s = sign(w.len() as i64 - 1);
        v.iter().map(|x| x * &s).collect()
    };
    let eps = ExactMatrix::from_columns(field, alg.dim(), &c0.iter().map(|w| counit(w)).collect::<Vec<_>>());
    let d = om.matrix(&cm1, &c0);
    let chain_map = eps.mul(&d)?.is_zero();
    let rank_eps = eps.rank();
    let rank_d = d.rank();
    Ok(CounitReport {
        bound,
        dim_a: alg.dim(),
        h0_dim: c0.len() - rank_d,
        chain_map,
        surjective: rank_eps == alg.dim(),
        kernel_is_image: chain_map && c0.len() - rank_eps == rank_d,
    })
}
