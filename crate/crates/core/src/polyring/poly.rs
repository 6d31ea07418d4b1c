use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{Mono, RingRef};
use crate::error::{Error, Result};
use crate::exactcore::{FieldKind, Scalar};

/// A sparse polynomial; terms are kept in increasing monomial order, so the
/// last entry is the leading term.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Mono, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.ring.nvars() == other.ring.nvars())
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Poly {
        Self::term(ring, ring.one_mono(), c)
    }

    pub fn int(ring: &RingRef, n: i64) -> Poly {
        Self::constant(ring, Scalar::int(n))
    }

    pub fn one(ring: &RingRef) -> Poly {
        Self::int(ring, 1)
    }

    pub fn var(ring: &RingRef, i: usize) -> Poly {
        Self::term(ring, ring.var_mono(i), Scalar::one())
    }

    /// The variable with the given name.
    pub fn named(ring: &RingRef, name: &str) -> Result<Poly> {
        let i = ring.var_index(name).ok_or_else(|| Error::Invalid(format!("no variable `{name}`")))?;
        Ok(Self::var(ring, i))
    }

    pub fn term(ring: &RingRef, m: Mono, c: Scalar) -> Poly {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            let c = ring.field().coerce(&c).expect("coefficient outside the ring's field");
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Result<Poly> {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::Invalid("exponent vector length".into()));
            }
            let c = ring.field().coerce(&c)?;
            p.add_term(ring.mono(e), &c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> FieldKind {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&self.ring.one_mono())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// Ordinary total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// The common weighted degree of all terms, if there is one.
    pub fn homogeneous_weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Mono::wdeg);
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    /// Weighted homogeneity test; the zero polynomial counts as homogeneous of
    /// every weight.
    pub fn is_homogeneous_of(&self, w: i64) -> bool {
        self.terms.keys().all(|m| m.wdeg() == w)
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                let c = self.ring.field().coerce(c).expect("coefficient outside the ring's field");
                self.terms.insert(m, c);
            }
        }
    }

    /// `self -= c * m * g`.
    pub fn sub_scaled(&mut self, c: &Scalar, m: &Mono, g: &Poly) {
        for (gm, gc) in &g.terms {
            self.add_term(m.mul(gm), &-(c * gc));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, s)| (m.clone(), s * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, s)| (k.mul(m), s * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one(&self.ring);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut p = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exps().to_vec();
            ex[i] -= 1;
            p.add_term(self.ring.mono(ex), &(c * &Scalar::int(e as i64)));
        }
        p
    }

    /// Substitutes polynomials of `target` for each variable.
    pub fn substitute(&self, target: &RingRef, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-expresses the polynomial in a ring that contains all of its variables by name.
    pub fn embed(&self, target: &RingRef) -> Result<Poly> {
        let imgs = self
            .ring
            .vars()
            .iter()
            .map(|v| Poly::named(target, v).map_err(|_| Error::RingMismatch(format!("`{v}` missing from {target}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.substitute(target, &imgs))
    }

    pub fn same_ring(&self, other: &Poly) -> Result<()> {
        super::ring::same_ring(&self.ring, &other.ring)
    }

    fn combine(&self, other: &Poly, sign: bool) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            if sign {
                out.add_term(m.clone(), c);
            } else {
                out.add_term(m.clone(), &-c);
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.combine(rhs, true)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.combine(rhs, false)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::int(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), &(c * d));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Ring;

    #[test]
    fn arithmetic() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert_eq!(p.derivative(0), x.scale(&Scalar::int(2)));
        assert_eq!(p.homogeneous_weight(), Some(2));
        assert_eq!((&x - &x).nterms(), 0);
    }

    #[test]
    fn substitution() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let p = &(&y * &y) - &x;
        let q = p.substitute(&r, &[x.clone(), -&y]);
        assert_eq!(p, q);
    }
}
