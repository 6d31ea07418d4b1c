use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::polyring::{same_ring, Poly, RingRef};

/// `(θ-subset, T-subset)` as bit masks; the basis word is `θ_S T_U` in increasing index order.
pub type BasisKey = (u32, u32);

fn below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

fn sgn(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// `θ_i · θ_S T_U`.
fn left_theta(i: usize, (s, u): BasisKey) -> Option<(i64, BasisKey)> {
    if s & (1 << i) != 0 {
        return None;
    }
    Some((sgn(below(s, i)), (s | (1 << i), u)))
}

/// `T_i · θ_S T_U`, straightened with `T_i θ_j = δ_ij - θ_j T_i`.
fn left_t(i: usize, (s, u): BasisKey) -> Vec<(i64, BasisKey)> {
    let mut out = Vec::new();
    if s & (1 << i) != 0 {
        out.push((sgn(below(s, i)), (s & !(1 << i), u)));
    }
    if u & (1 << i) == 0 {
        out.push((sgn(s.count_ones() + below(u, i)), (s, u | (1 << i))));
    }
    out
}

/// Product of two basis words as a signed combination of basis words.
fn basis_product(a: BasisKey, b: BasisKey) -> Vec<(i64, BasisKey)> {
    let mut cur: BTreeMap<BasisKey, i64> = BTreeMap::from([(b, 1)]);
    let gens: Vec<(bool, usize)> =
        indices(a.0).into_iter().map(|i| (true, i)).chain(indices(a.1).into_iter().map(|i| (false, i))).collect();
    for &(is_theta, i) in gens.iter().rev() {
        let mut next: BTreeMap<BasisKey, i64> = BTreeMap::new();
        for (&k, &c) in &cur {
            let imgs = if is_theta { left_theta(i, k).into_iter().collect() } else { left_t(i, k) };
            for (s, k2) in imgs {
                *next.entry(k2).or_insert(0) += s * c;
            }
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur.into_iter().map(|(k, c)| (c, k)).collect()
}

/// An element of `Poly(r)` in normal form: `Σ p_{S,U} θ_S T_U` with `p` in `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRElement {
    ring: RingRef,
    r: usize,
    terms: BTreeMap<BasisKey, Poly>,
}

impl PolyRElement {
    pub fn zero(ring: &RingRef, r: usize) -> Self {
        PolyRElement { ring: ring.clone(), r, terms: BTreeMap::new() }
    }

    pub fn scalar(ring: &RingRef, r: usize, p: Poly) -> Self {
        Self::basis(ring, r, (0, 0), p)
    }

    pub fn one(ring: &RingRef, r: usize) -> Self {
        Self::scalar(ring, r, Poly::one(ring))
    }

    pub fn basis(ring: &RingRef, r: usize, key: BasisKey, p: Poly) -> Self {
        let mut e = Self::zero(ring, r);
        e.add_term(key, &p);
        e
    }

    pub fn theta(ring: &RingRef, r: usize, i: usize) -> Self {
        Self::basis(ring, r, (1 << i, 0), Poly::one(ring))
    }

    pub fn t(ring: &RingRef, r: usize, i: usize) -> Self {
        Self::basis(ring, r, (0, 1 << i), Poly::one(ring))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: BasisKey) -> Poly {
        self.terms.get(&key).cloned().unwrap_or_else(|| Poly::zero(&self.ring))
    }

    pub fn add_term(&mut self, key: BasisKey, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(|| Poly::zero(&p.ring().clone()));
        *e = &*e + p;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Parity of a homogeneous element; `None` for zero or mixed elements.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(|(s, u)| ((s.count_ones() + u.count_ones()) % 2) as u8);
        let p = ps.next()?;
        ps.all(|q| q == p).then_some(p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, p) in &o.terms {
            out.add_term(*k, p);
        }
        out
    }

    pub fn neg(&self) -> Self {
        PolyRElement { terms: self.terms.iter().map(|(k, p)| (*k, -p)).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale_poly(&self, q: &Poly) -> Self {
        let mut out = Self::zero(&self.ring, self.r);
        for (k, p) in &self.terms {
            out.add_term(*k, &(p * q));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.ring, self.r);
        for (ka, pa) in &self.terms {
            for (kb, pb) in &o.terms {
                let c = pa * pb;
                for (s, k) in basis_product(*ka, *kb) {
                    out.add_term(k, &c.scale(&crate::exactcore::Scalar::int(s)));
                }
            }
        }
        out
    }

    /// Graded commutator `[a, b] = ab - (-1)^{|a||b|} ba` for homogeneous `a`, `b`.
    pub fn commutator(&self, o: &Self) -> Self {
        let both_odd = self.parity() == Some(1) && o.parity() == Some(1);
        let ba = o.mul(self);
        if both_odd {
            self.mul(o).add(&ba)
        } else {
            self.mul(o).sub(&ba)
        }
    }
}

impl fmt::Display for PolyRElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((s, u), p) in &self.terms {
            let word: Vec<String> = indices(*s)
                .into_iter()
                .map(|i| format!("θ{}", i + 1))
                .chain(indices(*u).into_iter().map(|i| format!("T{}", i + 1)))
                .collect();
            let ps = p.to_string();
            let (neg, body) = if p.nterms() == 1 && ps.starts_with('-') { (true, &ps[1..]) } else { (false, &ps[..]) };
            if !first || neg {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if p.nterms() > 1 { format!("({body})") } else { body.to_string() };
            if word.is_empty() {
                write!(f, "{coef}")?;
            } else if coef == "1" {
                write!(f, "{}", word.join("*"))?;
            } else {
                write!(f, "{coef}*{}", word.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `(Poly(r), δ)` with `δθ_i = f_i` and `δT_i = σ_i`.
#[derive(Debug, Clone)]
pub struct EndDgAlgebra {
    pub ring: RingRef,
    pub fs: Vec<Poly>,
    pub coeffs: Vec<Poly>,
}

impl EndDgAlgebra {
    pub fn new(ring: &RingRef, fs: &[Poly], coeffs: &[Poly]) -> Result<Self> {
        if fs.len() != coeffs.len() || fs.is_empty() || fs.len() > 16 {
            return Err(Error::BadCoefficients);
        }
        for p in fs.iter().chain(coeffs) {
            same_ring(ring, p.ring())?;
        }
        Ok(EndDgAlgebra { ring: ring.clone(), fs: fs.to_vec(), coeffs: coeffs.to_vec() })
    }

    pub fn r(&self) -> usize {
        self.fs.len()
    }

    /// `σ = Σ σ_i f_i`.
    pub fn sigma(&self) -> Poly {
        let mut s = Poly::zero(&self.ring);
        for (c, f) in self.coeffs.iter().zip(&self.fs) {
            s = &s + &(c * f);
        }
        s
    }

    /// Every basis word `θ_S T_U`.
    pub fn basis_keys(&self) -> Vec<BasisKey> {
        let n = 1u32 << self.r();
        (0..n).flat_map(|s| (0..n).map(move |u| (s, u))).collect()
    }

    /// `δ` on a basis word by the graded Leibniz rule.
    pub fn delta_basis(&self, (s, u): BasisKey) -> PolyRElement {
        let mut out = PolyRElement::zero(&self.ring, self.r());
        for (p, i) in indices(s).into_iter().enumerate() {
            let c = if p % 2 == 0 { self.fs[i].clone() } else { -&self.fs[i] };
            out.add_term((s & !(1 << i), u), &c);
        }
        let ns = s.count_ones() as usize;
        for (q, i) in indices(u).into_iter().enumerate() {
            let c = if (ns + q) % 2 == 0 { self.coeffs[i].clone() } else { -&self.coeffs[i] };
            out.add_term((s, u & !(1 << i)), &c);
        }
        out
    }

    pub fn delta(&self, e: &PolyRElement) -> PolyRElement {
        let mut out = PolyRElement::zero(&self.ring, self.r());
        for (k, p) in e.terms() {
            out = out.add(&self.delta_basis(*k).scale_poly(p));
        }
        out
    }

    /// `D = Σ f_i T_i + σ_i θ_i`.
    pub fn d_operator(&self) -> PolyRElement {
        let mut d = PolyRElement::zero(&self.ring, self.r());
        for i in 0..self.r() {
            d.add_term((0, 1 << i), &self.fs[i]);
            d.add_term((1 << i, 0), &self.coeffs[i]);
        }
        d
    }

    /// `[D, e]` for a homogeneous element.
    pub fn inner_delta(&self, e: &PolyRElement) -> PolyRElement {
        self.d_operator().commutator(e)
    }

    /// `δ² = 0` on every basis word; δ is `A`-linear so this covers every weight.
    pub fn delta_squared_zero(&self) -> bool {
        self.basis_keys().into_iter().all(|k| self.delta(&self.delta_basis(k)).is_zero())
    }

    /// `δ = [D, -]` on every basis word.
    pub fn delta_is_inner(&self) -> bool {
        self.basis_keys().into_iter().all(|k| {
            let e = PolyRElement::basis(&self.ring, self.r(), k, Poly::one(&self.ring));
            self.delta_basis(k) == self.inner_delta(&e)
        })
    }
}
