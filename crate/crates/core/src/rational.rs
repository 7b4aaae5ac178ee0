//! Exact rational helpers and the exact-or-float [`Real`] value type.
//!
//! Everything exact in this crate is a [`Rational`] (an arbitrary-precision
//! `BigRational`). Powers with fractional exponents are exact only when the
//! base has a rational root of the required order; otherwise callers fall
//! back to `f64` and carry that fact along in [`Real::Approx`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Relative tolerance used wherever an exact comparison is unavailable.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Largest exponent numerator/denominator we are willing to expand exactly.
const MAX_EXACT_EXPONENT: u32 = 1 << 16;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `a/b` or `a`. Decimal literals are rejected so that no value
/// silently loses precision on the way in.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(err("decimal literals are not accepted; write a/b"));
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Renders as `num/den` in lowest terms, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Out of f64 range in one of the parts; go through logs.
        let sign = if q.is_negative() { -1.0 } else { 1.0 };
        sign * (ln_bigint(&q.numer().abs()) - ln_bigint(q.denom())).exp()
    })
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational, accurate even when numerator and
/// denominator overflow `f64`.
pub fn ln(q: &Rational) -> f64 {
    debug_assert!(q.is_positive());
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

/// `q^t` for positive `q` and real `t`, via `exp(t ln q)`.
pub fn pow_f64(q: &Rational, t: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    (t * ln(q)).exp()
}

/// Exact `n`-th root of a non-negative rational, if it is rational.
pub fn exact_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_negative() || n == 0 {
        return None;
    }
    if n == 1 {
        return Some(q.clone());
    }
    let root = |x: &BigInt| {
        let r = x.nth_root(n);
        (Pow::pow(&r, n) == *x).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// Exact `q^e` for positive `q` and rational `e`, if the result is rational.
pub fn exact_pow(q: &Rational, e: &Rational) -> Option<Rational> {
    if !q.is_positive() {
        return None;
    }
    if e.is_zero() || q.is_one() {
        return Some(Rational::one());
    }
    let n = e.numer().abs().to_u32().filter(|&n| n <= MAX_EXACT_EXPONENT)?;
    let d = e.denom().to_u32().filter(|&d| d <= MAX_EXACT_EXPONENT)?;
    let base = exact_root(q, d)?;
    let p = Pow::pow(&base, n);
    Some(if e.is_negative() { p.recip() } else { p })
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn approximate(x: f64, max_den: u64) -> Rational {
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    Rational::new(BigInt::from(h1), BigInt::from(k1))
}

/// `|a - b| <= tol * max(|a|, |b|)`, with exact zero matching only zero.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// A value that is exact when the computation allowed it, else an `f64`.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(Rational),
    Approx(f64),
}

impl Real {
    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => to_f64(q),
            Real::Approx(x) => *x,
        }
    }

    /// Exact equality when both sides are exact, else relative closeness.
    pub fn approx_eq(&self, other: &Real, tol: f64) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => rel_close(self.to_f64(), other.to_f64(), tol),
        }
    }

    pub fn one_minus(&self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(Rational::one() - q),
            Real::Approx(x) => Real::Approx(1.0 - x),
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a - b),
            _ => Real::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Real::Exact(q) => !q.is_negative(),
            Real::Approx(x) => *x >= 0.0,
        }
    }
}

impl From<Rational> for Real {
    fn from(q: Rational) -> Self {
        Real::Exact(q)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Real::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Real::Approx(x) => write!(f, "~{x:.15e}"),
        }
    }
}

// Exact values travel as "num/den" strings, approximate ones as JSON numbers.
impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Real::Exact(q) => s.serialize_str(&format_rational(q)),
            Real::Approx(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Num(f64),
        }
        match Repr::deserialize(d)? {
            Repr::Str(s) => parse_rational(&s)
                .map(Real::Exact)
                .map_err(serde::de::Error::custom),
            Repr::Num(x) => Ok(Real::Approx(x)),
        }
    }
}

/// Serde adapter for fields holding a bare [`Rational`].
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/4").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational(" 6/8 ").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        assert!(matches!(parse_rational("0.25"), Err(Error::Parse { .. })));
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn exact_square_root_of_a_quarter() {
        assert_eq!(exact_root(&ratio(1, 4), 2), Some(ratio(1, 2)));
        assert_eq!(exact_root(&ratio(1, 2), 2), None);
        assert_eq!(exact_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
    }

    #[test]
    fn exact_fractional_powers() {
        assert_eq!(exact_pow(&ratio(1, 4), &ratio(1, 2)), Some(ratio(1, 2)));
        assert_eq!(exact_pow(&ratio(1, 4), &ratio(3, 2)), Some(ratio(1, 8)));
        assert_eq!(exact_pow(&ratio(1, 4), &int(0)), Some(int(1)));
        assert_eq!(exact_pow(&ratio(1, 4), &ratio(-1, 2)), Some(int(2)));
        assert_eq!(exact_pow(&ratio(1, 4), &ratio(1, 3)), None);
    }

    #[test]
    fn float_power_matches_exact_power() {
        let q = ratio(9, 16);
        let e = ratio(5, 2);
        let exact = to_f64(&exact_pow(&q, &e).unwrap());
        assert!(rel_close(exact, pow_f64(&q, 2.5), FLOAT_TOLERANCE));
    }

    #[test]
    fn continued_fraction_recovers_simple_ratios() {
        assert_eq!(approximate(0.5, 64), ratio(1, 2));
        assert_eq!(approximate(1.0 / 3.0, 64), ratio(1, 3));
        assert_eq!(approximate(2.0, 64), int(2));
        assert_eq!(approximate(std::f64::consts::PI, 7), ratio(22, 7));
    }

    #[test]
    fn ln_handles_huge_parts() {
        let big = Rational::new(BigInt::from(1), BigInt::from(3).pow(1000u32));
        let expected = -1000.0 * 3f64.ln();
        assert!(rel_close(ln(&big), expected, 1e-12));
    }

    #[test]
    fn real_serde_keeps_exact_values_as_strings() {
        let exact = Real::Exact(ratio(3, 4));
        let json = serde_json::to_string(&exact).unwrap();
        assert_eq!(json, "\"3/4\"");
        assert_eq!(serde_json::from_str::<Real>(&json).unwrap(), exact);
        let approx = Real::Approx(0.1);
        let json = serde_json::to_string(&approx).unwrap();
        assert_eq!(serde_json::from_str::<Real>(&json).unwrap(), approx);
    }
}
