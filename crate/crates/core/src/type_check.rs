//! Deciding whether two laws on {0, 1, 2, …} are "of the same type" under
//! the two competing notions:
//!
//! * **thinning**: `Q₁(s) = Q₂(1 − α + αs)` for PGFs, with `α ∈ (0, 1]`;
//! * **d.f. scaling**: `G(k) = 1 − m(αk)` where `F(k) = 1 − m(k)`, `α > 0`.
//!
//! Both are offered in a fixed-α mode (the same α plugged into both) and an
//! exists-α mode (each notion searches for its own α).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dist::DiscreteDist;
use crate::error::{Error, Result};
use crate::pgf::{check_open_unit, RationalPgf, ScaleParam};
use crate::rational::{
    approximate, exact_pow, format_rational, ln, rel_close, to_f64, Rational, Real,
    FLOAT_TOLERANCE,
};

/// Default horizon `K` for d.f.-scaling checks.
pub const DEFAULT_HORIZON: u64 = 32;
/// Smallest accepted horizon.
pub const MIN_HORIZON: u64 = 8;

/// Largest denominator tried when recovering an exact α from a float.
const MAX_WITNESS_DENOMINATOR: u64 = 1 << 20;

/// `Q₁ = Q₂ ∘ (s ↦ 1 − α + αs)`, decided by polynomial identity.
pub fn thinning_holds(q1: &RationalPgf, q2: &RationalPgf, alpha: &ScaleParam) -> Result<bool> {
    Ok(q1.pgf_equal(&q2.thin(alpha)?))
}

/// For geometric laws with parameters `q1`, `q2`, the unique α with
/// `geo(q1) = thin(geo(q2), α)`, namely `q1(1 − q2) / (q2(1 − q1))`, if it
/// lies in `(0, 1]`.
pub fn thinning_alpha_geometric(q1: &Rational, q2: &Rational) -> Result<Option<Rational>> {
    check_open_unit("q1", q1)?;
    check_open_unit("q2", q2)?;
    let one = Rational::one();
    let alpha = q1 * (&one - q2) / (q2 * (&one - q1));
    Ok((alpha <= one).then_some(alpha))
}

/// Exists-α thinning search for arbitrary rational PGFs.
///
/// Solves `Q₁(0) = Q₂(1 − α)` by bisection, then verifies the candidate:
/// exactly if a nearby small-denominator rational works, otherwise by
/// comparing the two sides at eight rational points to 1e-12.
pub fn thinning_alpha(q1: &RationalPgf, q2: &RationalPgf) -> Option<Real> {
    let one = Rational::one();
    let target = q1.eval(&Rational::zero()).ok()?;
    let h = |a: &Rational| q2.eval(&(&one - a)).ok();
    // h decreases from h(0) = 1 to h(1) = Q₂(0)
    let h1 = h(&one)?;
    if target < h1 || target >= one {
        return None;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let v = h(&Rational::from_float(mid)?)?;
        if v > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let estimate = 0.5 * (lo + hi);

    let candidate = approximate(estimate, MAX_WITNESS_DENOMINATOR);
    if let Ok(alpha) = ScaleParam::new(candidate.clone()) {
        if alpha.thinning_admissible() && thinning_holds(q1, q2, &alpha).unwrap_or(false) {
            return Some(Real::Exact(candidate));
        }
    }
    let ok = (1..=8).all(|j| {
        let s = j as f64 / 9.0;
        let lhs = eval_f64(q1, s);
        let rhs = eval_f64(q2, 1.0 - estimate + estimate * s);
        rel_close(lhs, rhs, FLOAT_TOLERANCE)
    });
    ok.then_some(Real::Approx(estimate))
}

fn eval_f64(q: &RationalPgf, s: f64) -> f64 {
    let horner = |c: &[Rational]| c.iter().rev().fold(0.0, |acc, x| acc * s + to_f64(x));
    horner(q.numerator().coeffs()) / horner(q.denominator().coeffs())
}

/// `G(k) = F(αk)` on survival values for `k = 0..=horizon`, exact where
/// both sides are exact and to 1e-12 relative error otherwise.
pub fn scaling_holds(
    f: &DiscreteDist,
    g: &DiscreteDist,
    alpha: &ScaleParam,
    horizon: u64,
) -> Result<bool> {
    if horizon < MIN_HORIZON {
        return Err(Error::out_of_range("horizon", horizon, "[8, ∞)"));
    }
    for k in 0..=horizon {
        let t = alpha.value() * Rational::from_integer(k.into());
        let lhs = g.survival(k);
        let rhs = f.survival_at(&t)?;
        if !lhs.approx_eq(&rhs, FLOAT_TOLERANCE) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `α = ln qG / ln qF`, the scale with `qF^α = qG`. Reported exactly when a
/// small-denominator rational satisfies the identity exactly.
pub fn scaling_alpha_geometric(q_f: &Rational, q_g: &Rational) -> Result<Real> {
    check_open_unit("qF", q_f)?;
    check_open_unit("qG", q_g)?;
    let estimate = ln(q_g) / ln(q_f);
    Ok(exact_log_ratio(q_f, q_g, estimate).unwrap_or(Real::Approx(estimate)))
}

fn exact_log_ratio(q_f: &Rational, q_g: &Rational, estimate: f64) -> Option<Real> {
    let candidate = approximate(estimate, MAX_WITNESS_DENOMINATOR);
    (candidate.is_positive() && exact_pow(q_f, &candidate).as_ref() == Some(q_g))
        .then_some(Real::Exact(candidate))
}

/// Exists-α d.f.-scaling search for laws with an off-integer survival
/// extension: solves `m_F(α) = m_G(1)` by bisection and verifies
/// [`scaling_holds`] at the candidate over the horizon.
pub fn scaling_alpha(f: &DiscreteDist, g: &DiscreteDist, horizon: u64) -> Result<Option<Real>> {
    let target = g.survival(1).to_f64();
    if !(target > 0.0 && target < 1.0) {
        return Ok(None);
    }
    let m = |t: f64| f.survival_at_f64(t);
    let mut hi = 1.0f64;
    while m(hi)? > target {
        hi *= 2.0;
        if hi > 1e12 {
            return Ok(None);
        }
    }
    let mut lo = 0.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if m(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let estimate = 0.5 * (lo + hi);

    let exact = approximate(estimate, MAX_WITNESS_DENOMINATOR);
    if let Ok(alpha) = ScaleParam::new(exact.clone()) {
        if scaling_holds_exactly(f, g, &alpha, horizon)? {
            return Ok(Some(Real::Exact(exact)));
        }
    }
    let Some(float_alpha) = Rational::from_float(estimate) else {
        return Ok(None);
    };
    let alpha = ScaleParam::new(float_alpha)?;
    Ok(scaling_holds(f, g, &alpha, horizon)?.then_some(Real::Approx(estimate)))
}

fn scaling_holds_exactly(
    f: &DiscreteDist,
    g: &DiscreteDist,
    alpha: &ScaleParam,
    horizon: u64,
) -> Result<bool> {
    for k in 0..=horizon {
        let t = alpha.value() * Rational::from_integer(k.into());
        match (g.survival(k), f.survival_at(&t)?) {
            (Real::Exact(a), Real::Exact(b)) if a == b => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// The geometric counterexample end to end: `X ~ geometric(q)` and `Y`
/// with `G(k) = F_X(αk)`, both notions checked at the same α and each
/// direction of thinning tried.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeCheckReport {
    #[serde(with = "crate::rational::serde_rational")]
    pub q: Rational,
    pub alpha: ScaleParam,
    /// Parameter of `Y`, `q^α`.
    pub q_y: Real,
    /// False when `q^α` was irrational and replaced by its float value.
    pub exact: bool,
    pub qx_pgf: RationalPgf,
    pub qy_pgf: RationalPgf,
    /// `Q_X(1 − α + αs)`
    pub thinned_x: RationalPgf,
    /// `Q_Y(1 − α + αs)`
    pub thinned_y: RationalPgf,
    pub scaling_holds: bool,
    /// `Q_X(s) = Q_Y(1 − α + αs)`
    pub thinning_xy: bool,
    /// `Q_Y(s) = Q_X(1 − α + αs)`
    pub thinning_yx: bool,
    /// `scaling_holds ⇒ (thinning_xy ∨ thinning_yx)`.
    pub definitions_agree: bool,
    /// α with `Q_X(s) = Q_Y(1 − α + αs)`, if any.
    #[serde(default, with = "optional_rational")]
    pub thinning_witness_xy: Option<Rational>,
    /// α with `Q_Y(s) = Q_X(1 − α + αs)`, if any.
    #[serde(default, with = "optional_rational")]
    pub thinning_witness_yx: Option<Rational>,
}

impl TypeCheckReport {
    /// Same α, d.f. scaling holds, thinning fails both ways.
    pub fn shows_non_equivalence(&self) -> bool {
        self.scaling_holds && !self.thinning_xy && !self.thinning_yx
    }
}

pub(crate) mod optional_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        q: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_str(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::rational::parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Builds the full report. When `q^α` is irrational the call fails with
/// [`Error::NotExact`] unless `allow_float` is set, in which case `Y`'s
/// parameter is replaced by the rational nearest its `f64` value.
pub fn counterexample_report(
    q: &Rational,
    alpha: &Rational,
    allow_float: bool,
) -> Result<TypeCheckReport> {
    let alpha = ScaleParam::new(alpha.clone())?;
    if !alpha.thinning_admissible() {
        return Err(Error::out_of_range("alpha", &alpha, "(0, 1]"));
    }
    let x = DiscreteDist::geometric(q.clone())?;
    let y = x.df_scale(&alpha)?;
    let q_y = y.geometric_parameter().expect("scaled geometric");

    let (q_y_rational, exact) = match &q_y {
        Real::Exact(r) => (r.clone(), true),
        Real::Approx(v) if allow_float => (
            Rational::from_float(*v).ok_or_else(|| Error::NotExact("q^alpha".into()))?,
            false,
        ),
        Real::Approx(_) => {
            return Err(Error::NotExact(format!(
                "({})^({})",
                format_rational(q),
                alpha
            )))
        }
    };

    let qx_pgf = RationalPgf::geometric(q)?;
    let qy_pgf = RationalPgf::geometric(&q_y_rational)?;
    let thinned_x = qx_pgf.thin(&alpha)?;
    let thinned_y = qy_pgf.thin(&alpha)?;
    let scaling_holds = scaling_holds(&x, &y, &alpha, DEFAULT_HORIZON)?;
    let thinning_xy = qx_pgf.pgf_equal(&thinned_y);
    let thinning_yx = qy_pgf.pgf_equal(&thinned_x);
    let definitions_agree = !scaling_holds || thinning_xy || thinning_yx;

    Ok(TypeCheckReport {
        q: q.clone(),
        thinning_witness_xy: thinning_alpha_geometric(q, &q_y_rational)?,
        thinning_witness_yx: thinning_alpha_geometric(&q_y_rational, q)?,
        alpha,
        q_y,
        exact,
        qx_pgf,
        qy_pgf,
        thinned_x,
        thinned_y,
        scaling_holds,
        thinning_xy,
        thinning_yx,
        definitions_agree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// One α, plugged into both notions.
    Fixed,
    /// Each notion searches for its own α.
    Exists,
}

/// Result of comparing `F` (first law) against `G` (second law).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairCheck {
    pub mode: Mode,
    pub first: String,
    pub second: String,
    pub first_pgf: Option<RationalPgf>,
    pub second_pgf: Option<RationalPgf>,
    pub alpha: Option<ScaleParam>,
    pub horizon: u64,
    /// `G(k) = F(αk)` at the given α.
    pub scaling_holds: Option<bool>,
    /// `Q_F(s) = Q_G(1 − α + αs)` at the given α.
    pub thinning_first_from_second: Option<bool>,
    /// `Q_G(s) = Q_F(1 − α + αs)` at the given α.
    pub thinning_second_from_first: Option<bool>,
    pub scaling_witness: Option<Real>,
    pub thinning_witness_first_from_second: Option<Real>,
    pub thinning_witness_second_from_first: Option<Real>,
}

/// Runs the requested mode on a pair of laws.
pub fn check_pair(
    first: &DiscreteDist,
    second: &DiscreteDist,
    mode: Mode,
    alpha: Option<&ScaleParam>,
    horizon: u64,
) -> Result<PairCheck> {
    if horizon < MIN_HORIZON {
        return Err(Error::out_of_range("horizon", horizon, "[8, ∞)"));
    }
    let first_pgf = first.pgf().exact().cloned();
    let second_pgf = second.pgf().exact().cloned();
    let mut out = PairCheck {
        mode,
        first: first.to_string(),
        second: second.to_string(),
        first_pgf: first_pgf.clone(),
        second_pgf: second_pgf.clone(),
        alpha: alpha.cloned(),
        horizon,
        scaling_holds: None,
        thinning_first_from_second: None,
        thinning_second_from_first: None,
        scaling_witness: None,
        thinning_witness_first_from_second: None,
        thinning_witness_second_from_first: None,
    };
    match mode {
        Mode::Fixed => {
            let alpha = alpha.ok_or_else(|| {
                Error::out_of_range("alpha", "missing", "required in fixed mode")
            })?;
            out.scaling_holds = Some(scaling_holds(first, second, alpha, horizon)?);
            if let (Some(f), Some(g), true) = (&first_pgf, &second_pgf, alpha.thinning_admissible())
            {
                out.thinning_first_from_second = Some(thinning_holds(f, g, alpha)?);
                out.thinning_second_from_first = Some(thinning_holds(g, f, alpha)?);
            }
        }
        Mode::Exists => {
            let geo = |d: &DiscreteDist| d.geometric_parameter().and_then(|r| r.exact().cloned());
            match (geo(first), geo(second)) {
                (Some(qf), Some(qg)) => {
                    out.scaling_witness = Some(scaling_alpha_geometric(&qf, &qg)?);
                    out.thinning_witness_first_from_second =
                        thinning_alpha_geometric(&qf, &qg)?.map(Real::Exact);
                    out.thinning_witness_second_from_first =
                        thinning_alpha_geometric(&qg, &qf)?.map(Real::Exact);
                }
                _ => {
                    out.scaling_witness = scaling_alpha(first, second, horizon)?;
                    if let (Some(f), Some(g)) = (&first_pgf, &second_pgf) {
                        out.thinning_witness_first_from_second = thinning_alpha(f, g);
                        out.thinning_witness_second_from_first = thinning_alpha(g, f);
                    }
                }
            }
        }
    }
    Ok(out)
}
