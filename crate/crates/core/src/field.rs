//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! A [`Scalar`] always carries enough information to know which field it
//! belongs to, so mixing fields is detected instead of silently producing
//! garbage. The `std::ops` impls panic on a mismatch; use the `checked_*`
//! methods where the operands come from untrusted input.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Moduli are kept below 2^31 so that products of residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < MAX_MODULUS && is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// Refuses characteristic 2 and 3.
    pub fn require_classification_char(&self) -> Result<()> {
        match self.characteristic() {
            2 | 3 => Err(Error::ClassificationCharUnsupported(self.characteristic())),
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(*p);
                let r = ((v % &m) + &m) % &m;
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: *p,
                }
            }
        }
    }

    /// Builds `num/den` in this field.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parses the scalar text syntax: optional sign and an integer, or `a/b`
    /// with `b > 0` over ℚ. Over F_p only integers are accepted and they are
    /// reduced modulo p.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            column: 0,
            message: format!("{msg}: `{text}`"),
        };
        let t = text.trim();
        let (num_txt, den_txt) = match t.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (t, None),
        };
        let num = parse_integer(num_txt).ok_or_else(|| bad("invalid integer"))?;
        match (self, den_txt) {
            (_, None) => Ok(self.from_bigint(&num)),
            (FieldSpec::Rationals, Some(d)) => {
                if d.starts_with('+') || d.starts_with('-') {
                    return Err(bad("denominator must be an unsigned integer"));
                }
                let den = parse_integer(d).ok_or_else(|| bad("invalid denominator"))?;
                if !den.is_positive() {
                    return Err(bad("denominator must be positive"));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            (FieldSpec::PrimeField(_), Some(_)) => Err(bad("fractions are not accepted over F_p")),
        }
    }

    /// All elements `0, 1, ..., p-1` of a prime field.
    pub fn enumerate(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => Err(Error::NotEnumerable),
            FieldSpec::PrimeField(p) => Ok((0..*p)
                .map(|value| Scalar::Residue { value, modulus: *p })
                .collect()),
        }
    }

    /// Nonzero elements in increasing order.
    pub fn units(&self) -> Result<Vec<Scalar>> {
        Ok(self.enumerate()?.into_iter().skip(1).collect())
    }

    /// Uniform over F_p; over ℚ a small fraction with numerator in [-9, 9]
    /// and denominator in [1, 4].
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=4);
                Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: rng.gen_range(0..*p),
                modulus: *p,
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Decodes `index` as a base-p digit vector of length `len` (least
    /// significant digit first). Used to walk F_p^len in a fixed order.
    pub fn vector_from_index(&self, mut index: u64, len: usize) -> Vec<Scalar> {
        let p = self.order().expect("vector_from_index needs a finite field");
        (0..len)
            .map(|_| {
                let d = index % p;
                index /= p;
                Scalar::Residue {
                    value: d,
                    modulus: p,
                }
            })
            .collect()
    }

    /// `p^len`, or `None` on overflow or over ℚ.
    pub fn count_vectors(&self, len: usize) -> Option<u64> {
        let p = self.order()?;
        let mut acc: u64 = 1;
        for _ in 0..len {
            acc = acc.checked_mul(p)?;
        }
        Some(acc)
    }
}

fn parse_integer(t: &str) -> Option<BigInt> {
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.strip_prefix('+').unwrap_or(t).parse().ok()
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Residue value over F_p.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Ok(Scalar::Residue {
                value: (a + b) % p,
                modulus: *p,
            }),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_add(&rhs.negated())
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Ok(Scalar::Residue {
                value: (a * b) % p,
                modulus: *p,
            }),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn negated(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_mul(&rhs.checked_inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

const MISMATCH: &str = "scalar field mismatch";

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect(MISMATCH)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect(MISMATCH)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect(MISMATCH)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negated()
    }
}

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
