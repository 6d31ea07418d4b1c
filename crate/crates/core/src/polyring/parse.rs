//! Text form of polynomials.
//!
//! Terms are joined by `+` or `-`; a term is a product of factors separated
//! by `*`, each factor being an integer, a fraction `p/q`, an imaginary
//! literal such as `2i` or `i`, a parenthesised coefficient like `(1+2i)`, or
//! a variable with an optional exponent `x^3`. The symbol `i` denotes the
//! imaginary unit unless the ring has a variable of that name.

use num::{BigInt, BigRational, One, Signed, Zero};

use super::poly::Poly;
use super::ring::{Ring, RingRef};
use crate::error::{Error, Result};
use crate::exactcore::{FieldKind, Scalar};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn imag_is_unit(&self) -> bool {
        self.ring.var_index("i").is_none()
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<BigInt>()
            .map_err(|_| err(format!("expected a number at offset {start}")))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        String::from_utf8(self.s[start..self.pos].to_vec()).unwrap()
    }

    fn imag_unit(&self) -> Result<Scalar> {
        Ok(Scalar::Gauss(BigRational::zero(), BigRational::one()))
    }

    fn factor(&mut self) -> Result<Poly> {
        let ring = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let start = self.pos;
                let mut depth = 1;
                while depth > 0 {
                    match self.peek() {
                        None => return Err(err("unbalanced parenthesis")),
                        Some(b'(') => depth += 1,
                        Some(b')') => depth -= 1,
                        _ => {}
                    }
                    self.pos += 1;
                }
                let inner = std::str::from_utf8(&self.s[start..self.pos - 1]).unwrap();
                let sub = parse_poly(ring, inner)?;
                Ok(sub)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut q = BigRational::from_integer(n);
                if self.eat(b'/') {
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(err("zero denominator"));
                    }
                    q = q / BigRational::from_integer(d);
                }
                let imag = self.peek() == Some(b'i')
                    && self.imag_is_unit()
                    && !matches!(self.s.get(self.pos + 1), Some(c) if c.is_ascii_alphanumeric() || *c == b'_');
                let c = if imag {
                    self.pos += 1;
                    Scalar::Gauss(BigRational::zero(), q)
                } else {
                    Scalar::Rat(q)
                };
                Ok(Poly::constant(ring, ring.field().coerce(&c)?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                let base = match ring.var_index(&name) {
                    Some(i) => Poly::var(ring, i),
                    None if name == "i" => Poly::constant(ring, ring.field().coerce(&self.imag_unit()?)?),
                    None => return Err(err(format!("unknown variable `{name}`"))),
                };
                if self.eat(b'^') {
                    let e = self.integer()?;
                    let e: u32 = e.try_into().map_err(|_| err("exponent too large"))?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
            Some(c) => Err(err(format!("unexpected `{}` at offset {}", c as char, self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut t = self.factor()?;
        while self.eat(b'*') {
            t = &t * &self.factor()?;
        }
        Ok(t)
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') {
                false
            } else if first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.peek().is_none() {
                break;
            }
        }
        if let Some(c) = self.peek() {
            return Err(err(format!("unexpected `{}` at offset {}", c as char, self.pos)));
        }
        Ok(acc)
    }
}

/// Parses a polynomial in the given ring.
pub fn parse_poly(ring: &RingRef, text: &str) -> Result<Poly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut p = Parser { s: compact.as_bytes(), pos: 0, ring };
    p.poly()
}

/// Parses a bare scalar, such as a weight `"1+2i"` or `"-3/2"`.
pub fn parse_scalar(text: &str, field: FieldKind) -> Result<Scalar> {
    let r = Ring::field_only(field);
    let p = parse_poly(&r, text)?;
    Ok(p.constant_term())
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits a coefficient into a sign and the text of its absolute value, with
/// compound Gaussian values wrapped in parentheses.
fn coef_text(c: &Scalar) -> (bool, String) {
    match c {
        Scalar::Rat(r) => (r.is_negative(), fmt_rat(&r.abs())),
        Scalar::Fp(v, _) => (false, v.to_string()),
        Scalar::Gauss(a, b) if b.is_zero() => (a.is_negative(), fmt_rat(&a.abs())),
        Scalar::Gauss(a, b) if a.is_zero() => {
            let body = if b.abs().is_one() { "i".to_string() } else { format!("{}i", fmt_rat(&b.abs())) };
            (b.is_negative(), body)
        }
        Scalar::Gauss(..) => (false, format!("({c})")),
    }
}

fn mono_text(ring: &Ring, exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { ring.vars()[i].clone() } else { format!("{}^{}", ring.vars()[i], e) })
        .collect();
    parts.join("*")
}

/// Canonical text: terms in decreasing monomial order.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let (neg, body) = coef_text(c);
        let mono = mono_text(p.ring(), m.exps());
        let term = if mono.is_empty() {
            body
        } else if body == "1" {
            mono
        } else {
            format!("{body}*{mono}")
        };
        if neg {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(f: FieldKind) -> RingRef {
        Ring::new(&["x", "y", "z"], f).unwrap()
    }

    #[test]
    fn basic_round_trip() {
        let r = ring(FieldKind::Rat);
        for s in ["x^2+y^2+z^3", "-x^3-x^2+y^2", "3/2*x*y-7", "0", "x", "-1"] {
            let p = parse_poly(&r, s).unwrap();
            assert_eq!(parse_poly(&r, &p.to_string()).unwrap(), p, "{s}");
        }
        assert_eq!(parse_poly(&r, " y^2 - x^2 - x^3 ").unwrap().to_string(), "-x^3-x^2+y^2");
    }

    #[test]
    fn gaussian_coefficients() {
        let r = ring(FieldKind::Gauss);
        let p = parse_poly(&r, "(1+2i)*x - i*y + 2i").unwrap();
        assert_eq!(p.to_string(), "(1+2i)*x-i*y+2i");
        assert_eq!(parse_poly(&r, &p.to_string()).unwrap(), p);
        let rat = ring(FieldKind::Rat);
        assert!(matches!(parse_poly(&rat, "i*x"), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn prime_field_reduction() {
        let r = ring(FieldKind::Fp(7));
        let p = parse_poly(&r, "-x + 1/2").unwrap();
        assert_eq!(p.to_string(), "6*x+4");
    }

    #[test]
    fn variable_named_i() {
        let r = Ring::new(&["i", "j"], FieldKind::Rat).unwrap();
        let p = parse_poly(&r, "i^2-j").unwrap();
        assert_eq!(p.to_string(), "i^2-j");
    }

    #[test]
    fn errors() {
        let r = ring(FieldKind::Rat);
        for s in ["", "x+", "2x", "w", "x^", "(x", "1/0"] {
            assert!(parse_poly(&r, s).is_err(), "{s}");
        }
    }
}
