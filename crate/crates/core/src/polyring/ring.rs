use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactcore::FieldKind;

/// A polynomial ring k[x_1, ..., x_n] with positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    weights: Vec<i64>,
    field: FieldKind,
}

pub type RingRef = Arc<Ring>;

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(vars: &[&str], field: FieldKind) -> Result<RingRef> {
        let w = vec![1; vars.len()];
        Self::weighted(vars, &w, field)
    }

    pub fn weighted(vars: &[&str], weights: &[i64], field: FieldKind) -> Result<RingRef> {
        if vars.len() != weights.len() {
            return Err(Error::Invalid("one weight per variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::Parse(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("repeated variable `{v}`")));
            }
        }
        if let Some(w) = weights.iter().find(|&&w| w < 1) {
            return Err(Error::Invalid(format!("weight {w} is not positive")));
        }
        Ok(Arc::new(Ring {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
            field,
        }))
    }

    /// Parses a comma separated variable list such as `"x,y,z"`.
    pub fn parse(vars: &str, weights: Option<&[i64]>, field: FieldKind) -> Result<RingRef> {
        let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        match weights {
            Some(w) => Self::weighted(&names, w, field),
            None => Self::new(&names, field),
        }
    }

    /// The ring with no variables, i.e. the field itself.
    pub fn field_only(field: FieldKind) -> RingRef {
        Arc::new(Ring { vars: vec![], weights: vec![], field })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_weights(&self, weights: &[i64]) -> Result<RingRef> {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        Self::weighted(&names, weights, self.field)
    }

    pub fn with_field(&self, field: FieldKind) -> RingRef {
        Arc::new(Ring { field, ..self.clone() })
    }

    /// Appends a fresh variable.
    pub fn extend(&self, name: &str, weight: i64) -> Result<RingRef> {
        if self.var_index(name).is_some() {
            return Err(Error::VariableClash(name.to_string()));
        }
        let mut names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        names.push(name);
        let mut w = self.weights.clone();
        w.push(weight);
        Self::weighted(&names, &w, self.field)
    }

    /// Removes a variable.
    pub fn drop_var(&self, name: &str) -> Result<RingRef> {
        let idx = self.var_index(name).ok_or_else(|| Error::Invalid(format!("no variable `{name}`")))?;
        let mut r = self.clone();
        r.vars.remove(idx);
        r.weights.remove(idx);
        Ok(Arc::new(r))
    }

    /// The ring on the variables of both, which must be disjoint.
    pub fn join(&self, other: &Ring) -> Result<RingRef> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} and {}", self.field, other.field)));
        }
        if let Some(v) = other.vars.iter().find(|v| self.var_index(v).is_some()) {
            return Err(Error::VariableClash(v.clone()));
        }
        let mut r = self.clone();
        r.vars.extend(other.vars.iter().cloned());
        r.weights.extend(other.weights.iter().copied());
        Ok(Arc::new(r))
    }

    pub fn mono(&self, exps: Vec<u32>) -> Mono {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length");
        let wdeg = exps.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum();
        Mono { wdeg, exps }
    }

    /// All monomials of weighted degree `w`, in increasing order.
    pub fn monomials_of_weight(&self, w: i64) -> Vec<Mono> {
        fn rec(ring: &Ring, i: usize, left: i64, e: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if i == ring.nvars() {
                if left == 0 {
                    out.push(ring.mono(e.clone()));
                }
                return;
            }
            let wi = ring.weights[i];
            let mut k = 0;
            while k * wi <= left {
                e[i] = k as u32;
                rec(ring, i + 1, left - k * wi, e, out);
                k += 1;
            }
            e[i] = 0;
        }
        let mut out = Vec::new();
        if w >= 0 {
            rec(self, 0, w, &mut vec![0; self.nvars()], &mut out);
        }
        out.sort();
        out
    }

    pub fn one_mono(&self) -> Mono {
        self.mono(vec![0; self.nvars()])
    }

    pub fn var_mono(&self, i: usize) -> Mono {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.mono(e)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a} vs {b}")))
    }
}

/// A monomial with its cached weighted degree.
///
/// Ordered by weighted degree, ties broken reverse-lexicographically: the
/// monomial with the smaller exponent in the last differing variable is larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    wdeg: i64,
    exps: Vec<u32>,
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.wdeg.cmp(&other.wdeg).then_with(|| {
            for i in (0..self.exps.len()).rev() {
                match other.exps[i].cmp(&self.exps[i]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mono {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn wdeg(&self) -> i64 {
        self.wdeg
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono { wdeg: self.wdeg + o.wdeg, exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono { wdeg: o.wdeg - self.wdeg, exps: o.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() }
    }

    pub fn lcm(&self, o: &Mono, ring: &Ring) -> Mono {
        ring.mono(self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        let r = Ring::new(&["x", "y", "z"], FieldKind::Rat).unwrap();
        let m = |e: [u32; 3]| r.mono(e.to_vec());
        assert!(m([2, 0, 0]) > m([1, 1, 0]));
        assert!(m([1, 1, 0]) > m([0, 2, 0]));
        assert!(m([0, 2, 0]) > m([1, 0, 1]));
        assert!(m([1, 0, 0]) > m([0, 0, 0]));
    }

    #[test]
    fn weights_dominate() {
        let r = Ring::weighted(&["x", "y"], &[3, 1], FieldKind::Rat).unwrap();
        assert!(r.mono(vec![1, 0]) > r.mono(vec![0, 2]));
        assert!(Ring::weighted(&["x"], &[0], FieldKind::Rat).is_err());
        assert!(Ring::new(&["x", "x"], FieldKind::Rat).is_err());
    }

    #[test]
    fn weighted_enumeration() {
        let r = Ring::weighted(&["x", "y"], &[1, 2], FieldKind::Rat).unwrap();
        let exps: Vec<Vec<u32>> = r.monomials_of_weight(4).iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(exps, vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
        assert!(r.monomials_of_weight(-1).is_empty());
    }

    #[test]
    fn join_clash() {
        let a = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
        let b = Ring::new(&["y"], FieldKind::Rat).unwrap();
        assert_eq!(a.join(&b).unwrap_err(), Error::VariableClash("y".into()));
    }
}
