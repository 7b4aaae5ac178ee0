//! Probability generating functions as exact rational functions, and the
//! binomial-thinning substitution `Q(s) ↦ Q(1 − α + αs)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::{format_rational, parse_rational, Rational};

/// How many series coefficients are checked for nonnegativity when a PGF
/// is constructed. Full verification is not decidable in general.
pub const DEFAULT_CHECK_DEPTH: usize = 64;

/// A positive scale `α`. Thinning only accepts `α ∈ (0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScaleParam {
    value: Rational,
    thinning_admissible: bool,
}

impl ScaleParam {
    pub fn new(value: Rational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::out_of_range("alpha", format_rational(&value), "(0, ∞)"));
        }
        let thinning_admissible = value <= Rational::one();
        Ok(ScaleParam {
            value,
            thinning_admissible,
        })
    }

    pub fn one() -> Self {
        Self::new(Rational::one()).unwrap()
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// True iff `α ∈ (0, 1]`, the range on which thinning is defined.
    pub fn thinning_admissible(&self) -> bool {
        self.thinning_admissible
    }
}

impl fmt::Display for ScaleParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.value))
    }
}

impl Serialize for ScaleParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            value: String,
            thinning_admissible: bool,
        }
        Repr {
            value: format_rational(&self.value),
            thinning_admissible: self.thinning_admissible,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScaleParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            value: String,
        }
        let r = Repr::deserialize(d)?;
        parse_rational(&r.value)
            .and_then(ScaleParam::new)
            .map_err(serde::de::Error::custom)
    }
}

/// `Q(s) = numerator(s) / denominator(s)`.
///
/// Normal form: numerator and denominator are coprime and the denominator
/// has constant term exactly 1. Two PGFs describe the same function iff
/// their normal forms are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPgf {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalPgf {
    /// Normalises `num/den` and checks it is a PGF to [`DEFAULT_CHECK_DEPTH`].
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        Self::with_check_depth(numerator, denominator, DEFAULT_CHECK_DEPTH)
    }

    pub fn with_check_depth(
        numerator: Polynomial,
        denominator: Polynomial,
        depth: usize,
    ) -> Result<Self> {
        let q = Self::normalize(numerator, denominator)?;
        if q.numerator.eval(&Rational::one()) != q.denominator.eval(&Rational::one()) {
            return Err(Error::InvalidPgf("Q(1) != 1".into()));
        }
        if let Some(k) = q.series_coefficients(depth).iter().position(Signed::is_negative) {
            return Err(Error::InvalidPgf(format!(
                "coefficient of s^{k} is negative"
            )));
        }
        Ok(q)
    }

    fn normalize(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidPgf("zero denominator".into()));
        }
        let g = numerator.gcd(&denominator);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (
                numerator.div_rem(&g).unwrap().0,
                denominator.div_rem(&g).unwrap().0,
            )
        } else {
            (numerator, denominator)
        };
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Pole { at: "0/1".into() });
        }
        let inv = d0.recip();
        Ok(RationalPgf {
            numerator: num.scale(&inv),
            denominator: den.scale(&inv),
        })
    }

    /// `(1 − q)/(1 − qs)`, the geometric law `P(X = k) = (1 − q) q^k`.
    pub fn geometric(q: &Rational) -> Result<Self> {
        check_open_unit("q", q)?;
        Ok(RationalPgf {
            numerator: Polynomial::constant(Rational::one() - q),
            denominator: Polynomial::linear(Rational::one(), -q),
        })
    }

    /// PGF of a finitely supported law with the given point masses.
    pub fn from_pmf(pmf: &[Rational]) -> Result<Self> {
        Self::new(Polynomial::new(pmf.to_vec()), Polynomial::one())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn eval(&self, s: &Rational) -> Result<Rational> {
        let d = self.denominator.eval(s);
        if d.is_zero() {
            return Err(Error::Pole {
                at: format_rational(s),
            });
        }
        Ok(self.numerator.eval(s) / d)
    }

    /// `s ↦ Q(1 − α + αs)`, in normal form.
    pub fn thin(&self, alpha: &ScaleParam) -> Result<Self> {
        if !alpha.thinning_admissible() {
            return Err(Error::out_of_range("alpha", alpha, "(0, 1]"));
        }
        let a = alpha.value();
        let shift = Rational::one() - a;
        let num = self.numerator.compose_affine(&shift, a);
        let den = self.denominator.compose_affine(&shift, a);
        Self::normalize(num, den)
    }

    /// `P(X = 0), …, P(X = n − 1)` by power-series long division.
    pub fn series_coefficients(&self, n: usize) -> Vec<Rational> {
        let d = self.denominator.coeffs();
        let d0 = &d[0];
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.numerator.coeff(k);
            for (j, dj) in d.iter().enumerate().skip(1).take(k) {
                c -= dj * &out[k - j];
            }
            out.push(c / d0);
        }
        out
    }

    /// Decides equality as the polynomial identity `n1·d2 = n2·d1`.
    pub fn pgf_equal(&self, other: &RationalPgf) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    /// Integer coefficients with unit content and positive constant term
    /// in the denominator, as used for display.
    pub fn integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        use num_integer::Integer;
        let l = self
            .numerator
            .denominator_lcm()
            .lcm(&self.denominator.denominator_lcm());
        let lr = Rational::from_integer(l);
        let num = self.numerator.scale(&lr);
        let den = self.denominator.scale(&lr);
        let g = num.numerator_gcd().gcd(&den.numerator_gcd());
        let g = if g.is_zero() { BigInt::one() } else { g };
        let ints = |p: &Polynomial| -> Vec<BigInt> {
            p.coeffs().iter().map(|c| c.numer() / &g).collect()
        };
        (ints(&num), ints(&den))
    }

    /// Renders like `3/(4−s)`.
    pub fn display(&self) -> String {
        let (n, d) = self.integer_form();
        let to_poly = |v: Vec<BigInt>| {
            Polynomial::new(v.into_iter().map(Rational::from_integer).collect())
        };
        let (n, d) = (to_poly(n), to_poly(d));
        let wrap = |p: &Polynomial| {
            if p.degree().unwrap_or(0) == 0 && !p.coeff(0).is_negative() {
                p.display()
            } else {
                format!("({})", p.display())
            }
        };
        if d.degree() == Some(0) && d.coeff(0).is_one() {
            return n.display();
        }
        format!("{}/{}", wrap(&n), wrap(&d))
    }
}

impl fmt::Display for RationalPgf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

#[derive(Serialize, Deserialize)]
struct PgfRepr {
    display: String,
    #[serde(with = "crate::rational::serde_rational_vec")]
    numerator: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational_vec")]
    denominator: Vec<Rational>,
}

impl Serialize for RationalPgf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PgfRepr {
            display: self.display(),
            numerator: self.numerator.coeffs().to_vec(),
            denominator: self.denominator.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPgf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PgfRepr::deserialize(d)?;
        RationalPgf::new(Polynomial::new(r.numerator), Polynomial::new(r.denominator))
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_open_unit(name: &'static str, q: &Rational) -> Result<()> {
    if q.is_positive() && q < &Rational::one() {
        Ok(())
    } else {
        Err(Error::out_of_range(name, format_rational(q), "(0, 1)"))
    }
}

/// `(1 − q)/(1 − qs)`.
pub fn make_geometric_pgf(q: &Rational) -> Result<RationalPgf> {
    RationalPgf::geometric(q)
}

pub fn eval(q: &RationalPgf, s: &Rational) -> Result<Rational> {
    q.eval(s)
}

pub fn thin(q: &RationalPgf, alpha: &ScaleParam) -> Result<RationalPgf> {
    q.thin(alpha)
}

pub fn series_coefficients(q: &RationalPgf, n: usize) -> Vec<Rational> {
    q.series_coefficients(n)
}

pub fn pgf_equal(a: &RationalPgf, b: &RationalPgf) -> bool {
    a.pgf_equal(b)
}
