use std::collections::BTreeSet;

use super::poly::Poly;
use super::ring::{same_ring, Mono, RingRef};
use crate::error::{Error, Result};
use crate::exactcore::Scalar;

/// A reduced Gröbner basis for the weighted degree-reverse-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingRef,
    gens: Vec<Poly>,
}

/// The monomials outside the initial ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    /// Exponent vectors in increasing monomial order; empty when the quotient is infinite.
    pub monomials: Vec<Vec<u32>>,
    /// True iff the ideal is zero-dimensional.
    pub finite: bool,
}

impl QuotientBasis {
    pub fn dim(&self) -> Option<usize> {
        self.finite.then_some(self.monomials.len())
    }
}

/// Division of `p` by `divisors` (tried in order at every step).
///
/// Returns the quotients and the remainder, with `p = sum q_k g_k + r` and no
/// term of `r` divisible by a leading term.
pub fn divide(p: &Poly, divisors: &[Poly]) -> (Vec<Poly>, Poly) {
    let ring = p.ring().clone();
    let mut q: Vec<Poly> = divisors.iter().map(|_| Poly::zero(&ring)).collect();
    let lead: Vec<Option<(Mono, Scalar)>> =
        divisors.iter().map(|g| g.leading().map(|(m, c)| (m.clone(), c.inv().unwrap()))).collect();
    let mut rest = p.clone();
    let mut rem = Poly::zero(&ring);
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = lead.iter().enumerate().find_map(|(k, l)| match l {
            Some((lm, inv)) if lm.divides(&m) => Some((k, lm.quotient_of(&m), &c * inv)),
            _ => None,
        });
        match hit {
            Some((k, t, coef)) => {
                rest.sub_scaled(&coef, &t, &divisors[k]);
                q[k].add_term(t, &coef);
            }
            None => {
                rem.add_term(m.clone(), &c);
                rest.add_term(m, &-&c);
            }
        }
    }
    (q, rem)
}

fn spoly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm, f.ring());
    let a = f.mul_term(&fm.quotient_of(&l), &fc.inv().unwrap());
    let b = g.mul_term(&gm.quotient_of(&l), &gc.inv().unwrap());
    &a - &b
}

fn check_rings(gens: &[Poly]) -> Result<Option<RingRef>> {
    let Some(first) = gens.first() else { return Ok(None) };
    for g in gens {
        same_ring(first.ring(), g.ring())?;
    }
    Ok(Some(first.ring().clone()))
}

/// Buchberger's algorithm with the coprime-leading-term criterion.
///
/// When `track` is set, every basis element carries its expression in terms
/// of the input generators.
fn buchberger_core(ring: &RingRef, gens: &[Poly], track: bool) -> (Vec<Poly>, Vec<Vec<Poly>>) {
    let m = gens.len();
    let mut basis: Vec<Poly> = Vec::new();
    let mut cof: Vec<Vec<Poly>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        basis.push(g.clone());
        if track {
            let mut c = vec![Poly::zero(ring); m];
            c[i] = Poly::one(ring);
            cof.push(c);
        }
    }
    let mut pairs: BTreeSet<(Mono, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            let l = basis[i].leading().unwrap().0.lcm(basis[j].leading().unwrap().0, ring);
            pairs.insert((l, i, j));
        }
    }
    while let Some((_, i, j)) = pairs.pop_first() {
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.leading().unwrap().0.coprime(fj.leading().unwrap().0) {
            continue;
        }
        let s = spoly(fi, fj);
        let (q, r) = divide(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if track {
            let (fm, fc) = fi.leading().unwrap();
            let (gm, gc) = fj.leading().unwrap();
            let l = fm.lcm(gm, ring);
            let (ta, ca) = (fm.quotient_of(&l), fc.inv().unwrap());
            let (tb, cb) = (gm.quotient_of(&l), gc.inv().unwrap());
            let mut c = vec![Poly::zero(ring); m];
            for (t, cc) in c.iter_mut().enumerate() {
                let mut v = &cof[i][t].mul_term(&ta, &ca) - &cof[j][t].mul_term(&tb, &cb);
                for (k, qk) in q.iter().enumerate() {
                    if !qk.is_zero() {
                        v = &v - &(qk * &cof[k][t]);
                    }
                }
                *cc = v;
            }
            cof.push(c);
        }
        let k = basis.len();
        basis.push(r);
        let lk = basis[k].leading().unwrap().0.clone();
        for i in 0..k {
            pairs.insert((basis[i].leading().unwrap().0.lcm(&lk, ring), i, k));
        }
    }
    (basis, cof)
}

fn reduce_basis(_ring: &RingRef, basis: Vec<Poly>) -> Vec<Poly> {
    let mut keep: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading().unwrap().0;
            j != i && hm.divides(lm) && (hm != lm || j < i)
        });
        if !redundant {
            keep.push(g.monic());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let (_, r) = divide(&keep[i], &others);
        out.push(r.monic());
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    out
}

/// The reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly]) -> Result<GroebnerBasis> {
    let Some(ring) = check_rings(gens)? else {
        return Err(Error::Invalid("empty generator list".into()));
    };
    GroebnerBasis::of(&ring, gens)
}

/// Cofactors `c_i` with `sigma = sum c_i f_i`.
///
/// Plain division by the generators in order is tried first; when it leaves
/// a remainder the cofactors are recovered through a Gröbner basis that
/// remembers how each element arose.
pub fn division_coefficients(sigma: &Poly, gens: &[Poly]) -> Result<Vec<Poly>> {
    for g in gens {
        same_ring(sigma.ring(), g.ring())?;
    }
    let (q, r) = divide(sigma, gens);
    if r.is_zero() {
        return Ok(q);
    }
    let ring = sigma.ring().clone();
    let (basis, cof) = buchberger_core(&ring, gens, true);
    let (q, r) = divide(sigma, &basis);
    if !r.is_zero() {
        return Err(Error::NotInIdeal);
    }
    let mut out = vec![Poly::zero(&ring); gens.len()];
    for (k, qk) in q.iter().enumerate() {
        if qk.is_zero() {
            continue;
        }
        for (t, o) in out.iter_mut().enumerate() {
            *o = &*o + &(qk * &cof[k][t]);
        }
    }
    Ok(out)
}

impl GroebnerBasis {
    /// The reduced basis of an ideal of `ring`; an empty list gives the zero ideal.
    pub fn of(ring: &RingRef, gens: &[Poly]) -> Result<GroebnerBasis> {
        for g in gens {
            same_ring(ring, g.ring())?;
        }
        let (basis, _) = buchberger_core(ring, gens, false);
        Ok(GroebnerBasis { gens: reduce_basis(ring, basis), ring: ring.clone() })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn leading_monomials(&self) -> Vec<&Mono> {
        self.gens.iter().map(|g| g.leading().unwrap().0).collect()
    }

    /// Normal form modulo the ideal.
    pub fn reduce(&self, p: &Poly) -> Poly {
        if self.gens.is_empty() {
            return p.clone();
        }
        divide(p, &self.gens).1
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(Poly::is_constant)
    }

    /// Staircase of monomials not divisible by any leading term.
    pub fn quotient_basis(&self) -> QuotientBasis {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        if lms.iter().any(|m| m.is_one()) {
            return QuotientBasis { monomials: vec![], finite: true };
        }
        let mut bounds = vec![None::<u32>; n];
        for m in &lms {
            let nz: Vec<usize> = (0..n).filter(|&i| m.exps()[i] > 0).collect();
            if nz.len() == 1 {
                let i = nz[0];
                let e = m.exps()[i];
                bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
            }
        }
        if bounds.iter().any(Option::is_none) {
            return QuotientBasis { monomials: vec![], finite: false };
        }
        let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            let m = self.ring.mono(e.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return QuotientBasis { monomials: out.into_iter().map(|m| m.exps().to_vec()).collect(), finite: true };
                }
                e[k] += 1;
                if e[k] < bounds[k] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::FieldKind;
    use crate::polyring::{parse_poly, Ring};

    fn polys(r: &RingRef, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|t| parse_poly(r, t).unwrap()).collect()
    }

    #[test]
    fn already_reduced() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let gb = buchberger(&polys(&r, &["x", "y"])).unwrap();
        assert_eq!(gb.gens().len(), 2);
        assert_eq!(gb.quotient_basis().dim(), Some(1));
    }

    #[test]
    fn xy_y2() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let gb = buchberger(&polys(&r, &["x*y", "y^2"])).unwrap();
        let lts: Vec<String> = gb.gens().iter().map(|g| g.to_string()).collect();
        assert_eq!(lts, vec!["y^2", "x*y"]);
        assert!(!gb.quotient_basis().finite);
    }

    #[test]
    fn zero_dimensional_four() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let gb = buchberger(&polys(&r, &["x^2-y", "y^2-x"])).unwrap();
        assert_eq!(gb.quotient_basis().dim(), Some(4));
    }

    #[test]
    fn product_staircase() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let gb = buchberger(&polys(&r, &["x^3", "y^2"])).unwrap();
        assert_eq!(gb.quotient_basis().dim(), Some(6));
        let r1 = Ring::new(&["x"], FieldKind::Rat).unwrap();
        let gb = buchberger(&polys(&r1, &["x^2"])).unwrap();
        assert_eq!(gb.quotient_basis().monomials, vec![vec![0], vec![1]]);
    }

    #[test]
    fn cofactors() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let c = division_coefficients(&parse_poly(&r, "x*y").unwrap(), &polys(&r, &["x", "y"])).unwrap();
        assert_eq!(c, polys(&r, &["y", "0"]));
        let r1 = Ring::new(&["x"], FieldKind::Rat).unwrap();
        let c = division_coefficients(&parse_poly(&r1, "x^2").unwrap(), &polys(&r1, &["x"])).unwrap();
        assert_eq!(c, polys(&r1, &["x"]));
        let e = division_coefficients(&parse_poly(&r1, "x+1").unwrap(), &polys(&r1, &["x"]));
        assert_eq!(e, Err(Error::NotInIdeal));
    }

    #[test]
    fn cofactors_need_groebner() {
        let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let gens = polys(&r, &["x^2-y", "y^2-x"]);
        let s = parse_poly(&r, "x^2*y-x*y^2+x^2-y^2").unwrap();
        let c = division_coefficients(&s, &gens).unwrap();
        let back = &(&c[0] * &gens[0]) + &(&c[1] * &gens[1]);
        assert_eq!(back, s);
    }

    #[test]
    fn mixed_rings() {
        let a = Ring::new(&["x"], FieldKind::Rat).unwrap();
        let b = Ring::new(&["y"], FieldKind::Rat).unwrap();
        let e = buchberger(&[Poly::var(&a, 0), Poly::var(&b, 0)]);
        assert!(matches!(e, Err(Error::RingMismatch(_))));
    }
}
