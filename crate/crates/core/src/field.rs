//! Ground fields.
//!
//! [`Scalar`] is an exact rational number. Values whose numerator and
//! denominator fit in an `i64` are kept inline and combined through `i128`
//! intermediates; anything larger spills to a [`BigRational`]. The two
//! representations are never mixed for the same value, so derived equality
//! is value equality.
//!
//! [`Fp`] is the prime field used by the heuristic characteristic-p mode.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Which field an algebra is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroundField {
    Rational,
    Prime(u64),
}

impl fmt::Display for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundField::Rational => write!(f, "rational"),
            GroundField::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

/// Exact field arithmetic.
///
/// `Ctx` carries whatever a field needs to build constants from nothing
/// (the modulus for `Fp`, nothing for `Scalar`).
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Copy + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(v: i64, ctx: Self::Ctx) -> Self;
    /// Image of a rational number, `None` when its denominator is not invertible.
    fn from_scalar(v: &Scalar, ctx: Self::Ctx) -> Option<Self>;
    fn descriptor(ctx: Self::Ctx) -> GroundField;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool;

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }

    /// Lossless `num/den` rendering used by the algebra JSON format.
    fn to_fraction_string(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`.
    Small(i64, i64),
    /// Reduced and does not fit `Small`.
    Big(BigRational),
}

/// Exact rational number in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Scalar {
    pub fn integer(v: i64) -> Self {
        Scalar(Repr::Small(v, 1))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Scalar(Repr::Small(0, 1));
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(v: BigRational) -> Self {
        // BigRational arithmetic already keeps values reduced with den > 0.
        match (v.numer().to_i64(), v.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(v)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    fn binary(
        &self,
        rhs: &Self,
        small: impl Fn(i128, i128, i128, i128) -> Option<(i128, i128)>,
        big: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if let Some((n, d)) = small(*a as i128, *b as i128, *c as i128, *d as i128) {
                return Self::from_i128(n, d);
            }
        }
        Self::from_big(big(&self.to_big(), &rhs.to_big()))
    }
}

impl Field for Scalar {
    type Ctx = ();

    fn zero(_: ()) -> Self {
        Scalar(Repr::Small(0, 1))
    }

    fn one(_: ()) -> Self {
        Scalar(Repr::Small(1, 1))
    }

    fn from_i64(v: i64, _: ()) -> Self {
        Scalar::integer(v)
    }

    fn from_scalar(v: &Scalar, _: ()) -> Option<Self> {
        Some(v.clone())
    }

    fn descriptor(_: ()) -> GroundField {
        GroundField::Rational
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.binary(
            rhs,
            |a, b, c, d| {
                if b == d {
                    return a.checked_add(c).map(|n| (n, b));
                }
                let n = a.checked_mul(d)?.checked_add(c.checked_mul(b)?)?;
                Some((n, b.checked_mul(d)?))
            },
            |x, y| x + y,
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        self.binary(
            rhs,
            |a, b, c, d| {
                if b == d {
                    return a.checked_sub(c).map(|n| (n, b));
                }
                let n = a.checked_mul(d)?.checked_sub(c.checked_mul(b)?)?;
                Some((n, b.checked_mul(d)?))
            },
            |x, y| x - y,
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::integer(0);
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // i64 * i64 always fits i128.
        self.binary(rhs, |a, b, c, d| Some((a * c, b * d)), |x, y| x * y)
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(n) => Scalar(Repr::Small(n, *d)),
                None => Self::from_big(-self.to_big()),
            },
            Repr::Big(b) => Self::from_big(-b),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        })
    }

    fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::integer(v)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::integer(0)
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    /// Accepts `n` or `n/d` with optional sign on `n`; surrounding
    /// whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseError::Scalar(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, ParseError> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse_int(n)?, parse_int(d)?),
            None => (parse_int(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(ParseError::ZeroDenominator(s.to_string()));
        }
        Ok(Scalar::from_big(BigRational::new(num, den)))
    }
}

/// Element of `Z/pZ` for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(v: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        Fp { value: v.rem_euclid(m) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Fp { value: acc, modulus: self.modulus }
    }

    fn big_residue(v: &BigInt, modulus: u64) -> u64 {
        let r = v.mod_floor(&BigInt::from(modulus));
        r.to_u64().expect("residue fits")
    }
}

impl FromStr for GroundField {
    type Err = ParseError;

    /// `rational` or `prime:<p>` with `p` a supported prime.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        if t == "rational" {
            return Ok(GroundField::Rational);
        }
        let p = t
            .strip_prefix("prime:")
            .and_then(|p| p.parse::<u64>().ok())
            .filter(|&p| is_supported_prime(p))
            .ok_or_else(|| ParseError::Field(t.to_string()))?;
        Ok(GroundField::Prime(p))
    }
}

/// Moduli accepted by [`Fp`]: odd primes below `2^31` so products fit a `u64`.
pub fn is_supported_prime(p: u64) -> bool {
    if !(3..(1 << 31)).contains(&p) || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for Fp {
    type Ctx = u64;

    fn zero(p: u64) -> Self {
        Fp { value: 0, modulus: p }
    }

    fn one(p: u64) -> Self {
        Fp { value: 1, modulus: p }
    }

    fn from_i64(v: i64, p: u64) -> Self {
        Fp::new(v, p)
    }

    fn from_scalar(v: &Scalar, p: u64) -> Option<Self> {
        let num = Fp { value: Self::big_residue(&v.numer(), p), modulus: p };
        let den = Fp { value: Self::big_residue(&v.denom(), p), modulus: p };
        den.inv().map(|d| num.mul(&d))
    }

    fn descriptor(p: u64) -> GroundField {
        GroundField::Prime(p)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        let v = self.value + rhs.value;
        Fp { value: if v >= self.modulus { v - self.modulus } else { v }, modulus: self.modulus }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let v = if self.value >= rhs.value { self.value - rhs.value } else { self.value + self.modulus - rhs.value };
        Fp { value: v, modulus: self.modulus }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Fp { value: self.value * rhs.value % self.modulus, modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        Fp::zero(self.modulus).sub(self)
    }

    fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus - 2))
    }

    fn to_fraction_string(&self) -> String {
        format!("{}/1", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Parses a `num/den` string straight into `F`.
pub fn parse_field_element<F: Field>(s: &str, ctx: F::Ctx) -> Result<F, ParseError> {
    let q: Scalar = s.parse()?;
    F::from_scalar(&q, ctx).ok_or_else(|| ParseError::NotInvertible(s.trim().to_string()))
}

/// Sign of a rational, used by display code.
pub fn is_negative(v: &Scalar) -> bool {
    match &v.0 {
        Repr::Small(n, _) => *n < 0,
        Repr::Big(b) => b.is_negative(),
    }
}
