//! Rational generating functions with integer coefficients.

mod parse;
mod poly;
mod proof;
mod rules;

pub use poly::IntPolynomial;
pub use proof::{derive_via_proof_chain, ProofStep, ProofTrace, Stage, Transform};
pub use rules::{closed_form_theorem, rule_a, rule_a_inverse, rule_b, rule_b_inverse, rule_c, rule_c_inverse};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{ParseError, SeriesError};

/// `P(z) / Q(z)` in lowest terms with `Q(0) = 1` and coprime integer
/// content, so two series are equal as power series exactly when their
/// canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalSeries {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalSeries {
    /// Canonicalizes `num / den`.
    ///
    /// Fails when `den` is zero, or when the reduced denominator has a
    /// constant term other than `±1` (no power series with integer
    /// coefficients, or none at all).
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"));
        let content = num.content().gcd(&den.content());
        if !content.is_one() {
            num = num.div_scalar_exact(&content);
            den = den.div_scalar_exact(&content);
        }
        let c0 = den.constant_term();
        if c0.is_negative() {
            num = num.neg();
            den = den.neg();
        }
        if !den.constant_term().is_one() {
            return Err(SeriesError::InvalidDenominator(den.to_string()));
        }
        Ok(RationalSeries { num, den })
    }

    pub fn zero() -> Self {
        RationalSeries { num: IntPolynomial::zero(), den: IntPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::polynomial(IntPolynomial::one())
    }

    pub fn polynomial(p: IntPolynomial) -> Self {
        RationalSeries { num: p, den: IntPolynomial::one() }
    }

    /// `1 / q`
    pub fn reciprocal_of(q: IntPolynomial) -> Result<Self, SeriesError> {
        Self::new(IntPolynomial::one(), q)
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<Self, SeriesError> {
        Self::new(IntPolynomial::from_i64s(num), IntPolynomial::from_i64s(den))
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn combine(num: IntPolynomial, den: IntPolynomial) -> Self {
        // both denominators have constant term 1, so the product does too
        Self::new(num, den).expect("unit constant term is preserved")
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::combine(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::combine(self.num.mul(&other.den).sub(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::combine(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn mul_poly(&self, p: &IntPolynomial) -> Self {
        Self::combine(self.num.mul(p), self.den.clone())
    }

    /// Division by a polynomial with unit constant term.
    pub fn div_poly(&self, p: &IntPolynomial) -> Result<Self, SeriesError> {
        Self::new(self.num.clone(), self.den.mul(p))
    }

    /// Power-series coefficients `c_0..=c_n`, from the recurrence
    /// `c_k = p_k - sum_{i >= 1} q_i c_{k-i}`.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        let q = self.den.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = self.num.coeff(k);
            for (i, qi) in q.iter().enumerate().skip(1).take(k) {
                if !qi.is_zero() {
                    c -= qi * &out[k - i];
                }
            }
            out.push(c);
        }
        out
    }

    /// [`expand`](Self::expand) narrowed to `u64`, `None` on negative or
    /// oversized coefficients.
    pub fn expand_u64(&self, n: usize) -> Option<Vec<u64>> {
        self.expand(n).iter().map(|c| c.to_u64()).collect()
    }

    pub fn to_json(&self) -> Value {
        let coeffs = |p: &IntPolynomial| -> Vec<Value> {
            p.coeffs().iter().map(|c| c.to_i64().map_or_else(|| Value::String(c.to_string()), |v| json!(v))).collect()
        };
        json!({ "num": coeffs(&self.num), "den": coeffs(&self.den) })
    }

    /// Inverse of [`to_json`](Self::to_json); coefficients may be JSON
    /// integers or decimal strings.
    pub fn from_json(value: &Value) -> Result<Self, ParseError> {
        let bad = |msg: &str| ParseError::Json(msg.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        if obj.keys().any(|k| k != "num" && k != "den") {
            return Err(bad("unexpected key"));
        }
        let poly = |key: &str| -> Result<IntPolynomial, ParseError> {
            let arr = obj.get(key).and_then(Value::as_array).ok_or_else(|| bad("missing coefficient list"))?;
            let coeffs = arr
                .iter()
                .map(|v| match v {
                    Value::Number(n) => {
                        n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)).ok_or_else(|| bad("non-integer coefficient"))
                    }
                    Value::String(s) => parse::parse_integer(s).ok_or_else(|| bad("non-integer coefficient")),
                    _ => Err(bad("non-integer coefficient")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(IntPolynomial::new(coeffs))
        };
        Self::new(poly("num")?, poly("den")?).map_err(|e| ParseError::Json(e.to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<Self, ParseError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
        Self::from_json(&value)
    }
}

/// `(1 + z)^k` for `k >= 1`, if `p` is exactly such a power.
fn one_plus_z_power(p: &IntPolynomial) -> Option<usize> {
    let k = p.degree()?;
    if k == 0 || p.coeff(1) != BigInt::from(k) || !p.constant_term().is_one() {
        return None;
    }
    (IntPolynomial::one_plus_z().pow(k as u32) == *p).then_some(k)
}

fn fmt_side(p: &IntPolynomial) -> String {
    if p.is_constant() {
        return p.to_string();
    }
    match one_plus_z_power(p) {
        Some(1) | None => format!("({p})"),
        Some(k) => format!("(1 + z)^{k}"),
    }
}

impl fmt::Display for RationalSeries {
    /// `P / Q` with constants bare, powers of `1 + z` collapsed and other
    /// polynomials parenthesized: `(1 + z)^2 / (1 - 3z + z^2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", fmt_side(&self.num), fmt_side(&self.den))
    }
}

impl FromStr for RationalSeries {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_series(s)
    }
}

impl Default for RationalSeries {
    fn default() -> Self {
        Self::zero()
    }
}
