use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldKind {
    /// The rationals.
    Rat,
    /// The Gaussian rationals Q(i).
    Gauss,
    /// The prime field GF(p).
    Fp(u64),
}

impl FieldKind {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Fp(p) => p,
            _ => 0,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "rat" | "Q" | "QQ" => Ok(FieldKind::Rat),
            "gauss" | "Q(i)" => Ok(FieldKind::Gauss),
            _ => {
                let p = s
                    .strip_prefix("gf:")
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad prime in `{s}`: {e}")))?;
                if !is_prime(p) || p >= (1 << 31) {
                    return Err(Error::Parse(format!("{p} is not a supported prime")));
                }
                Ok(FieldKind::Fp(p))
            }
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldKind::Rat => Scalar::Rat(BigRational::from_integer(n.into())),
            FieldKind::Gauss => Scalar::Gauss(BigRational::from_integer(n.into()), BigRational::zero()),
            FieldKind::Fp(p) => Scalar::Fp(n.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Scalar {
        self.coerce(&Scalar::Rat(BigRational::new(num.into(), den.into())))
            .expect("denominator must be invertible")
    }

    /// Maps a scalar into this field, failing when no canonical embedding exists.
    pub fn coerce(self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (FieldKind::Rat, Scalar::Rat(_)) => Ok(s.clone()),
            (FieldKind::Rat, Scalar::Gauss(re, im)) if im.is_zero() => Ok(Scalar::Rat(re.clone())),
            (FieldKind::Gauss, Scalar::Rat(r)) => Ok(Scalar::Gauss(r.clone(), BigRational::zero())),
            (FieldKind::Gauss, Scalar::Gauss(..)) => Ok(s.clone()),
            (FieldKind::Fp(p), Scalar::Fp(_, q)) if p == *q => Ok(s.clone()),
            (FieldKind::Fp(p), Scalar::Rat(r)) => reduce_mod(r, p),
            (FieldKind::Fp(p), Scalar::Gauss(re, im)) if im.is_zero() => reduce_mod(re, p),
            _ => Err(Error::FieldMismatch(format!("cannot map {s} into {self}"))),
        }
    }

    /// A square root of -1, when the field has one.
    pub fn sqrt_minus_one(self) -> Option<Scalar> {
        match self {
            FieldKind::Rat => None,
            FieldKind::Gauss => Some(Scalar::Gauss(BigRational::zero(), BigRational::one())),
            FieldKind::Fp(2) => Some(Scalar::Fp(1, 2)),
            FieldKind::Fp(p) => {
                if p % 4 != 1 {
                    return None;
                }
                (2..p).find_map(|g| {
                    let c = pow_mod(g, (p - 1) / 4, p);
                    (c * c % p == p - 1).then_some(Scalar::Fp(c, p))
                })
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rat => write!(f, "rat"),
            FieldKind::Gauss => write!(f, "gauss"),
            FieldKind::Fp(p) => write!(f, "gf:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn reduce_mod(r: &BigRational, p: u64) -> Result<Scalar> {
    let pb = BigInt::from(p);
    let n = (r.numer() % &pb + &pb) % &pb;
    let d = (r.denom() % &pb + &pb) % &pb;
    let d = d.to_u64().unwrap();
    if d == 0 {
        return Err(Error::FieldMismatch(format!("denominator of {r} vanishes mod {p}")));
    }
    let n = n.to_u64().unwrap();
    Ok(Scalar::Fp(n * pow_mod(d, p - 2, p) % p, p))
}

/// An exact scalar: a rational, a Gaussian rational, or a residue mod p.
///
/// Arithmetic between a rational and a Gaussian rational promotes to the
/// Gaussian field; a rational meets a residue by reduction mod p. Mixing two
/// different primes, or a non-real Gaussian with a residue, panics; public
/// entry points check field tags up front and report `FieldMismatch`.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rat(BigRational),
    Gauss(BigRational, BigRational),
    Fp(u64, u64),
}

impl Scalar {
    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Scalar {
        Scalar::int(0)
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rat(_) => FieldKind::Rat,
            Scalar::Gauss(..) => FieldKind::Gauss,
            Scalar::Fp(_, p) => FieldKind::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gauss(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gauss(a, b) => a.is_one() && b.is_zero(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    pub fn is_minus_one(&self) -> bool {
        (-self.clone()).is_one()
    }

    /// Real and imaginary parts in characteristic zero.
    pub fn re_im(&self) -> Option<(BigRational, BigRational)> {
        match self {
            Scalar::Rat(r) => Some((r.clone(), BigRational::zero())),
            Scalar::Gauss(a, b) => Some((a.clone(), b.clone())),
            Scalar::Fp(..) => None,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Gauss(a, b) => {
                let n = a * a + b * b;
                Scalar::Gauss(a / &n, -(b / &n))
            }
            Scalar::Fp(v, p) => Scalar::Fp(pow_mod(*v, p - 2, *p), *p),
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = Scalar::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    fn promote(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        use Scalar::*;
        match (a, b) {
            (Rat(_), Rat(_)) | (Gauss(..), Gauss(..)) => (a.clone(), b.clone()),
            (Fp(_, p), Fp(_, q)) => {
                assert_eq!(p, q, "arithmetic between GF({p}) and GF({q})");
                (a.clone(), b.clone())
            }
            (Rat(_), Gauss(..)) => (FieldKind::Gauss.coerce(a).unwrap(), b.clone()),
            (Gauss(..), Rat(_)) => (a.clone(), FieldKind::Gauss.coerce(b).unwrap()),
            (Fp(_, p), _) => (a.clone(), FieldKind::Fp(*p).coerce(b).expect("field mismatch")),
            (_, Fp(_, p)) => (FieldKind::Fp(*p).coerce(a).expect("field mismatch"), b.clone()),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) => a == b && p == q,
            _ => (self - other).is_zero(),
        }
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rat(a), Rat(b)) => Rat(a + b),
            (Gauss(a, b), Gauss(c, d)) => Gauss(a + c, b + d),
            (Fp(a, p), Fp(b, q)) if p == q => Fp((a + b) % p, *p),
            _ => {
                let (x, y) = Scalar::promote(self, rhs);
                &x + &y
            }
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rat(a), Rat(b)) => Rat(a * b),
            (Gauss(a, b), Gauss(c, d)) => Gauss(a * c - b * d, a * d + b * c),
            (Fp(a, p), Fp(b, q)) if p == q => Fp((*a as u128 * *b as u128 % *p as u128) as u64, *p),
            _ => {
                let (x, y) = Scalar::promote(self, rhs);
                &x * &y
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Gauss(a, b) => Scalar::Gauss(-a, -b),
            Scalar::Fp(a, p) => Scalar::Fp((p - a) % p, p),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Fp(v, _) => write!(f, "{v}"),
            Scalar::Gauss(a, b) => {
                let imag = |b: &BigRational| {
                    if b.is_one() {
                        "i".to_string()
                    } else if (-b).is_one() {
                        "-i".to_string()
                    } else {
                        format!("{}i", fmt_rat(b))
                    }
                };
                if b.is_zero() {
                    write!(f, "{}", fmt_rat(a))
                } else if a.is_zero() {
                    write!(f, "{}", imag(b))
                } else if b.is_positive() {
                    write!(f, "{}+{}", fmt_rat(a), imag(b))
                } else {
                    write!(f, "{}{}", fmt_rat(a), imag(b))
                }
            }
        }
    }
}
