//! Strategies and property bodies shared by the property suite and the
//! acceptance target. Oracles here avoid the library path they check:
//! powers go through `f64::powf` or repeated multiplication, PGF identities
//! through pointwise evaluation.

#![allow(dead_code)]

use num_traits::{One, Pow, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use same_type::rational::{exact_pow, to_f64, FLOAT_TOLERANCE};
use same_type::{
    completely_monotone_check, ratio, DiscreteDist, MixingDistribution, Monotonicity, PgfForm,
    Rational, RationalPgf, Real, ScaleParam,
};

/// `q ∈ (0, 1)`
pub fn unit_open() -> impl Strategy<Value = Rational> {
    (2i64..=40).prop_flat_map(|d| (1..d).prop_map(move |n| ratio(n, d)))
}

/// `α ∈ (0, 1]`
pub fn thinning_scale() -> impl Strategy<Value = Rational> {
    (1i64..=24).prop_flat_map(|d| (1..=d).prop_map(move |n| ratio(n, d)))
}

/// `α ∈ (0, 5]`
pub fn any_scale() -> impl Strategy<Value = Rational> {
    (1i64..=12).prop_flat_map(|d| (1..=5 * d).prop_map(move |n| ratio(n, d)))
}

pub fn mixture() -> impl Strategy<Value = MixingDistribution> {
    proptest::collection::btree_map(2i64..40, 1i64..10, 1..=4).prop_map(|atoms| {
        let total: i64 = atoms.values().sum();
        MixingDistribution::new(atoms.into_iter().map(|(loc, w)| (ratio(loc, 40), ratio(w, total))))
            .expect("valid mixture")
    })
}

pub fn pmf() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(0i64..6, 1..6).prop_filter_map("nonzero total", |raw| {
        let total: i64 = raw.iter().sum();
        (total > 0).then(|| raw.iter().map(|&x| ratio(x, total)).collect())
    })
}

/// Laws with an exact rational PGF.
pub fn exact_dist() -> impl Strategy<Value = DiscreteDist> {
    prop_oneof![
        unit_open().prop_map(|q| DiscreteDist::geometric(q).unwrap()),
        mixture().prop_map(DiscreteDist::mixture),
        pmf().prop_map(|p| DiscreteDist::from_pmf(&p).unwrap()),
    ]
}

/// Laws with an off-integer survival extension.
pub fn scalable_dist() -> impl Strategy<Value = DiscreteDist> {
    prop_oneof![
        unit_open().prop_map(|q| DiscreteDist::geometric(q).unwrap()),
        mixture().prop_map(DiscreteDist::mixture),
    ]
}

pub fn pgf() -> impl Strategy<Value = RationalPgf> {
    exact_dist().prop_map(|d| d.pgf().exact().cloned().expect("exact PGF"))
}

pub fn scale(a: &Rational) -> ScaleParam {
    ScaleParam::new(a.clone()).unwrap()
}

/// Eight evaluation points `1/8, 2/8, …, 7/8` and `1/9`.
pub fn sample_points() -> Vec<Rational> {
    let mut pts: Vec<Rational> = (1..=7).map(|j| ratio(j, 8)).collect();
    pts.push(ratio(1, 9));
    pts
}

/// `Q₁ = Q₂(1 − α + αs)` at the sample points, by direct evaluation.
pub fn thinning_by_evaluation(q1: &RationalPgf, q2: &RationalPgf, alpha: &Rational) -> bool {
    let one = Rational::one();
    sample_points().iter().all(|s| {
        let inner = &one - alpha + alpha * s;
        q1.eval(s).unwrap() == q2.eval(&inner).unwrap()
    })
}

fn geo_power_oracle(q: &Rational, t: &Rational) -> Real {
    // repeated multiplication for integer t, else f64 powf
    if t.is_integer() {
        let n: u32 = t.numer().try_into().unwrap();
        Real::Exact(Pow::pow(q, n))
    } else {
        Real::Approx(to_f64(q).powf(to_f64(t)))
    }
}

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($msg)+)));
        }
    };
}

pub fn prop_thinning_semigroup(
    q: &RationalPgf,
    a: &Rational,
    b: &Rational,
) -> Result<(), TestCaseError> {
    let lhs = q.thin(&scale(a)).unwrap().thin(&scale(b)).unwrap();
    let rhs = q.thin(&scale(&(a * b))).unwrap();
    check!(lhs.pgf_equal(&rhs), "semigroup fails for {q} at {a}, {b}");
    Ok(())
}

pub fn prop_thinning_identity(q: &RationalPgf) -> Result<(), TestCaseError> {
    check!(q.thin(&ScaleParam::one()).unwrap().pgf_equal(q), "identity fails for {q}");
    Ok(())
}

pub fn prop_thinning_geometric_closed_form(q: &Rational, a: &Rational) -> Result<(), TestCaseError> {
    let one = Rational::one();
    let thinned = RationalPgf::geometric(q).unwrap().thin(&scale(a)).unwrap();
    let q_new = a * q / (&one - q + a * q);
    let expected = RationalPgf::geometric(&q_new).unwrap();
    check!(thinned.pgf_equal(&expected), "closed form fails for q={q}, α={a}");
    Ok(())
}

pub fn prop_thinning_preserves_pgf(q: &RationalPgf, a: &Rational) -> Result<(), TestCaseError> {
    let t = q.thin(&scale(a)).unwrap();
    check!(t.eval(&Rational::one()).unwrap().is_one(), "Q(1) != 1 after thinning");
    check!(
        t.series_coefficients(32).iter().all(|c| !c.is_negative()),
        "negative coefficient after thinning {q} by {a}"
    );
    Ok(())
}

pub fn prop_partial_sums_increase_to_value(q: &RationalPgf, s: &Rational) -> Result<(), TestCaseError> {
    let value = q.eval(s).unwrap();
    let mut partial = Rational::zero();
    let mut power = Rational::one();
    for c in q.series_coefficients(32) {
        let next = &partial + &c * &power;
        check!(next >= partial, "partial sums decreased");
        check!(next <= value, "partial sum overshoots Q({s})");
        partial = next;
        power *= s;
    }
    Ok(())
}

pub fn prop_mixture_moments_completely_monotone(
    mix: &MixingDistribution,
    order: usize,
) -> Result<(), TestCaseError> {
    let prefix: Vec<Rational> = (0..=2 * order as i64)
        .map(|k| mix.moment(&ratio(k, 1)).unwrap().exact().cloned().unwrap())
        .collect();
    let verdict = completely_monotone_check(&prefix, order).unwrap();
    check!(verdict == Monotonicity::Consistent, "{verdict:?}");
    Ok(())
}

pub fn prop_moments_strictly_decrease(mix: &MixingDistribution) -> Result<(), TestCaseError> {
    let m: Vec<Rational> = (0..=16)
        .map(|k| mix.moment(&ratio(k, 1)).unwrap().exact().cloned().unwrap())
        .collect();
    check!(m[0].is_one(), "m(0) != 1");
    check!(m.windows(2).all(|w| w[1] < w[0]), "not strictly decreasing");
    Ok(())
}

/// Whenever the exact path exists, the float path agrees to 1e-12.
pub fn prop_float_path_matches_exact(
    mix: &MixingDistribution,
    a: &Rational,
) -> Result<(), TestCaseError> {
    for k in 0..=32i64 {
        let t = a * ratio(k, 1);
        if let Real::Exact(exact) = mix.moment(&t).unwrap() {
            let float = mix.moment_f64(to_f64(&t)).unwrap();
            let e = to_f64(&exact);
            check!(
                (e - float).abs() <= FLOAT_TOLERANCE * e.abs(),
                "float path {float} vs exact {e} at t={t}"
            );
        }
    }
    Ok(())
}

pub fn prop_df_scale_semigroup(d: &DiscreteDist, a: &Rational, b: &Rational) -> Result<(), TestCaseError> {
    let two_step = d.df_scale(&scale(a)).unwrap().df_scale(&scale(b)).unwrap();
    let one_step = d.df_scale(&scale(&(a * b))).unwrap();
    let mix = d.moment_sequence().unwrap().mix().clone();
    let ab = to_f64(&(a * b));
    for k in 0..=64u64 {
        let x = two_step.survival(k);
        check!(x.approx_eq(&one_step.survival(k), FLOAT_TOLERANCE), "k={k}");
        // independent: Σ w q^(αβk) by powf
        let oracle: f64 = mix
            .atoms()
            .iter()
            .map(|at| to_f64(&at.weight) * to_f64(&at.location).powf(ab * k as f64))
            .sum();
        check!(
            x.approx_eq(&Real::Approx(oracle), 1e-11),
            "k={k}: {x} vs oracle {oracle}"
        );
    }
    Ok(())
}

pub fn prop_geometric_df_scale(q: &Rational, a: &Rational) -> Result<(), TestCaseError> {
    let y = DiscreteDist::geometric(q.clone()).unwrap().df_scale(&scale(a)).unwrap();
    for k in 0..=64i64 {
        let t = a * ratio(k, 1);
        let got = y.survival(k as u64);
        let want = geo_power_oracle(q, &t);
        match (&got, exact_pow(q, &t)) {
            (Real::Exact(g), Some(e)) => {
                check!(*g == e, "exact mismatch at k={k}");
                if let Real::Exact(w) = &want {
                    check!(g == w, "oracle mismatch at k={k}");
                }
            }
            (Real::Approx(_), None) => {
                check!(got.approx_eq(&want, FLOAT_TOLERANCE), "k={k}: {got} vs {want}");
            }
            _ => check!(false, "exactness disagrees at k={k}"),
        }
    }
    Ok(())
}

pub fn prop_series_matches_pmf(d: &DiscreteDist) -> Result<(), TestCaseError> {
    let PgfForm::Exact(q) = d.pgf() else {
        return Err(TestCaseError::fail("expected exact PGF"));
    };
    let coeffs = q.series_coefficients(32);
    for (k, c) in coeffs.into_iter().enumerate() {
        check!(Real::Exact(c) == d.pmf(k as u64), "k={k} for {d}");
    }
    Ok(())
}

/// `F(0) = 0`, `pmf(k) = F(k+1) − F(k) ≥ 0` and the telescoping sum.
pub fn prop_convention_guard(d: &DiscreteDist) -> Result<(), TestCaseError> {
    check!(d.cdf(0) == Real::Exact(Rational::zero()), "F(0) != 0 for {d}");
    let mut running = Real::Exact(Rational::zero());
    for k in 0..=64u64 {
        let p = d.pmf(k);
        let diff = d.cdf(k + 1).sub(&d.cdf(k));
        check!(p.is_nonnegative(), "pmf({k}) < 0 for {d}");
        check!(p.approx_eq(&diff, FLOAT_TOLERANCE) || (p.to_f64() - diff.to_f64()).abs() < 1e-15,
            "pmf({k}) != F(k+1) - F(k) for {d}");
        check!(
            running.approx_eq(&d.cdf(k), FLOAT_TOLERANCE) || (running.to_f64() - d.cdf(k).to_f64()).abs() < 1e-15,
            "telescoping fails at {k} for {d}"
        );
        running = match (&running, &p) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => Real::Approx(running.to_f64() + p.to_f64()),
        };
        if let (Real::Exact(_), Real::Exact(_)) = (&p, &diff) {
            check!(p == diff, "exact identity fails at {k}");
        }
    }
    Ok(())
}
