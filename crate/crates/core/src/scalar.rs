//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate fixes one field up front ([`FieldKind`])
//! and sticks to it; mixing scalars from different fields is a programming
//! error and panics. There is no floating point anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// The rational numbers, with arbitrary-precision arithmetic.
    Rational,
    /// The prime field GF(p).
    Prime(u64),
}

impl FieldKind {
    pub fn zero(&self) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Q(BigRational::zero()),
            FieldKind::Prime(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Q(BigRational::one()),
            FieldKind::Prime(p) => Scalar::Fp { v: 1, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    /// Maps a rational a/b into the field; fails over GF(p) when p | b.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, Error> {
        match self {
            FieldKind::Rational => Ok(Scalar::Q(q.clone())),
            FieldKind::Prime(p) => {
                let num = mod_bigint(q.numer(), *p);
                let den = mod_bigint(q.denom(), *p);
                if den == 0 {
                    return Err(Error::Scalar(format!(
                        "denominator of {q} vanishes modulo {p}"
                    )));
                }
                Ok(Scalar::Fp {
                    v: mul_mod(num, inv_mod(den, *p), *p),
                    p: *p,
                })
            }
        }
    }

    /// Parses an integer or `a/b` literal.
    pub fn parse(&self, text: &str) -> Result<Scalar, Error> {
        let q = parse_rational(text)?;
        self.from_rational(&q)
    }

    /// Checks the modulus is actually prime (trial division; moduli here are small).
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            FieldKind::Rational => Ok(()),
            FieldKind::Prime(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(Error::Scalar(format!("{p} is not prime")))
                }
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Parses `-3`, `5/7`, `-1/2` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let text = text.trim();
    let mk_err = || Error::Scalar(format!("invalid rational literal {text:?}"));
    if let Some((n, d)) = text.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|_| mk_err())?;
        let den = BigInt::from_str(d.trim()).map_err(|_| mk_err())?;
        if den.is_zero() {
            return Err(Error::Scalar(format!("zero denominator in {text:?}")));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num = BigInt::from_str(text).map_err(|_| mk_err())?;
        Ok(BigRational::from_integer(num))
    }
}

/// An element of the chosen field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Q(_) => FieldKind::Rational,
            Scalar::Fp { p, .. } => FieldKind::Prime(*p),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: p2 }) => {
                assert_eq!(p, p2, "mixed prime fields");
                Scalar::Fp {
                    v: add_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: p2 }) => {
                assert_eq!(p, p2, "mixed prime fields");
                Scalar::Fp {
                    v: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => panic!("mixed scalar fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Fp {
                    v: inv_mod(*v, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn mod_bigint(n: &BigInt, p: u64) -> u64 {
    let m = n.magnitude() % p;
    let m: u64 = m.try_into().expect("residue fits u64");
    if n.is_negative() && m != 0 {
        p - m
    } else {
        m
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
