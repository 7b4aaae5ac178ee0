//! Exact computations for two notions of "distributions of the same type"
//! on the non-negative integers:
//!
//! * PGF substitution, `Q₁(s) = Q₂(1 − α + αs)` (binomial thinning), and
//! * survival scaling, `G(k) = 1 − m(αk)` where `F(k) = 1 − m(k)` and `m` is
//!   the moment sequence of a mixing law on (0, 1).
//!
//! All PGF algebra is exact over arbitrary-precision rationals; equality is
//! decided by polynomial identity. Survival values are exact whenever the
//! required fractional powers are rational and fall back to `f64`
//! otherwise, tagged as such through [`Real`].
//!
//! The d.f. convention throughout is `F(k) = P(X < k)`, not `P(X ≤ k)`.
//!
//! ```
//! use same_type::{counterexample_report, ratio};
//!
//! let r = counterexample_report(&ratio(1, 4), &ratio(1, 2), false).unwrap();
//! assert_eq!(r.thinned_x.display(), "6/(7−s)");
//! assert!(r.scaling_holds && !r.thinning_xy && !r.thinning_yx);
//! ```

pub mod cli;
pub mod dist;
pub mod error;
pub mod moments;
pub mod pgf;
pub mod polynomial;
pub mod rational;
pub mod report;
pub mod type_check;

pub use dist::{df_scale, geometric, mixture_dist, pgf_of, DiscreteDist, PgfForm, Provenance};
pub use error::{Error, Result};
pub use moments::{
    completely_monotone_check, moment, scale_moments, MixingDistribution, MomentSequence,
    Monotonicity,
};
pub use pgf::{
    eval, make_geometric_pgf, pgf_equal, series_coefficients, thin, RationalPgf, ScaleParam,
};
pub use polynomial::Polynomial;
pub use rational::{int, parse_rational, ratio, Rational, Real};
pub use report::ReportDocument;
pub use type_check::{
    check_pair, counterexample_report, scaling_alpha, scaling_alpha_geometric, scaling_holds,
    thinning_alpha, thinning_alpha_geometric, thinning_holds, Mode, PairCheck, TypeCheckReport,
};
