//! Exact coefficient fields (the rationals and prime fields `F_p`) together
//! with the deformation parameter `q` of the algebra.
//!
//! Scalars are a small closed enum rather than a generic parameter: the field
//! is chosen at run time (from the command line), and every computation in the
//! crate goes through a [`FieldContext`]. Mixing scalars from two different
//! fields is a programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest accepted prime modulus (exclusive). Keeps products inside `u64`.
pub const MODULUS_LIMIT: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Validates the spec: a prime modulus must be prime and below [`MODULUS_LIMIT`].
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldSpec::Rationals => Ok(self),
            FieldSpec::Prime(p) if p >= MODULUS_LIMIT => Err(Error::ModulusTooLarge(p)),
            FieldSpec::Prime(p) if !is_prime(p) => Err(Error::NonPrimeModulus(p)),
            FieldSpec::Prime(_) => Ok(self),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F:"))
            .ok_or_else(|| Error::Parse(format!("unknown field `{s}` (expected `Q` or `Fp:<p>`)")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus `{digits}`")))?;
        FieldSpec::Prime(p).validate()
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the rationals or of a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, exp: u64) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                let e = i32::try_from(exp).expect("exponent fits in i32");
                Scalar::Rational(num_traits::pow::Pow::pow(r, e))
            }
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, exp, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// `true` when the scalar has a leading minus sign in its display form.
    pub(crate) fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    fn same_field(&self, other: &Scalar) {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => {}
            (Scalar::Residue { modulus: p, .. }, Scalar::Residue { modulus: r, .. }) if p == r => {}
            _ => panic!("scalar arithmetic across different fields: {self:?} vs {other:?}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
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

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
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

/// The exact coefficient field plus the parameter `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldContext {
    spec: FieldSpec,
    q: Scalar,
}

/// Builds a [`FieldContext`] from a field spec and a literal for `q`
/// (an integer or `p/q`).
pub fn make_field(spec: FieldSpec, q_literal: &str) -> Result<FieldContext> {
    let spec = spec.validate()?;
    let q = parse_scalar_in(spec, q_literal)?;
    Ok(FieldContext { spec, q })
}

fn parse_scalar_in(spec: FieldSpec, literal: &str) -> Result<Scalar> {
    let text = literal.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let parse_int = |s: &str| {
        BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad scalar literal `{literal}`")))
    };
    let num = parse_int(num)?;
    let den = parse_int(den)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{literal}`")));
    }
    match spec {
        FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
        FieldSpec::Prime(p) => {
            let pb = BigInt::from(p);
            let reduce = |x: BigInt| x.mod_floor(&pb).to_u64().expect("residue fits in u64");
            let n = reduce(num);
            let d = reduce(den);
            if d == 0 {
                return Err(Error::LiteralNotInField {
                    literal: literal.to_string(),
                    field: spec.to_string(),
                });
            }
            let d_inv = pow_mod(d, p - 2, p);
            Ok(Scalar::Residue { value: mul_mod(n, d_inv, p), modulus: p })
        }
    }
}

impl FieldContext {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.spec.characteristic()
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.spec {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: u64) -> Scalar {
        self.from_i64(if e.is_multiple_of(2) { 1 } else { -1 })
    }

    /// `(-q)^e`, with `(-q)^0 = 1` even when `q = 0`.
    pub fn neg_q_pow(&self, e: u64) -> Scalar {
        (-&self.q).pow(e)
    }

    /// `q^e`, with `q^0 = 1`.
    pub fn q_pow(&self, e: u64) -> Scalar {
        self.q.pow(e)
    }

    /// Parses a literal (`7`, `-3`, `2/5`) as an element of this field.
    pub fn parse_scalar(&self, literal: &str) -> Result<Scalar> {
        parse_scalar_in(self.spec, literal)
    }

    /// `q^2 = 1`, i.e. `q = 1` or `q = -1` in this field.
    pub fn q_is_plus_minus_one(&self) -> bool {
        (&self.q * &self.q).is_one()
    }

    pub fn q_is_one(&self) -> bool {
        self.q.is_one()
    }

    pub fn q_is_minus_one(&self) -> bool {
        (-&self.q).is_one()
    }
}
