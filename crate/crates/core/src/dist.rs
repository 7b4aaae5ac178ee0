//! Distributions on {0, 1, 2, …} described by their survival sequence.
//!
//! The distribution function follows the strict convention
//! `F(k) = P(X < k) = 1 − m(k)` with `m(k) = P(X ≥ k)`, so `F(0) = 0`.
//! Most statistics libraries use `P(X ≤ k)` instead; `cdf(k + 1)` here is
//! their `cdf(k)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::moments::{MixingDistribution, MomentSequence};
use crate::pgf::{check_open_unit, RationalPgf, ScaleParam};
use crate::polynomial::Polynomial;
use crate::rational::{exact_pow, format_rational, pow_f64, Rational, Real};

/// Default number of terms for PGFs without a closed form.
pub const DEFAULT_TRUNCATION: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Geometric(Rational),
    Mixture(MixingDistribution),
    Scaled { base: Box<DiscreteDist>, alpha: ScaleParam },
    /// Finite support given point by point; no off-integer extension.
    Tabulated,
}

#[derive(Debug, Clone, PartialEq)]
enum Survival {
    Moments(MomentSequence),
    /// `m(0), …, m(n − 1)`, zero from `n` on.
    Table(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist {
    survival: Survival,
    provenance: Provenance,
}

impl DiscreteDist {
    /// `m(k) = q^k`.
    pub fn geometric(q: Rational) -> Result<Self> {
        check_open_unit("q", &q)?;
        let mix = MixingDistribution::point_mass(q.clone())?;
        Ok(DiscreteDist {
            survival: Survival::Moments(MomentSequence::new(mix)),
            provenance: Provenance::Geometric(q),
        })
    }

    /// Geometric mixture with `m(k) = E[V^k]`.
    pub fn mixture(mix: MixingDistribution) -> Self {
        DiscreteDist {
            survival: Survival::Moments(MomentSequence::new(mix.clone())),
            provenance: Provenance::Mixture(mix),
        }
    }

    /// Finitely supported law from its point masses, which must be
    /// nonnegative and sum to one.
    pub fn from_pmf(pmf: &[Rational]) -> Result<Self> {
        if pmf.iter().any(|p| p < &Rational::zero()) {
            return Err(Error::InvalidPgf("negative mass".into()));
        }
        let total: Rational = pmf.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidPgf(format!(
                "masses sum to {}",
                format_rational(&total)
            )));
        }
        let mut table = Vec::with_capacity(pmf.len());
        let mut tail = Rational::one();
        for p in pmf {
            table.push(tail.clone());
            tail -= p;
        }
        Ok(DiscreteDist {
            survival: Survival::Table(table),
            provenance: Provenance::Tabulated,
        })
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The underlying moment sequence, when the survival function has an
    /// off-integer extension.
    pub fn moment_sequence(&self) -> Option<&MomentSequence> {
        match &self.survival {
            Survival::Moments(m) => Some(m),
            Survival::Table(_) => None,
        }
    }

    /// `m(k) = P(X ≥ k)`.
    pub fn survival(&self, k: u64) -> Real {
        match &self.survival {
            Survival::Moments(m) => m.get(k),
            Survival::Table(t) => Real::Exact(
                usize::try_from(k)
                    .ok()
                    .and_then(|i| t.get(i).cloned())
                    .unwrap_or_else(Rational::zero),
            ),
        }
    }

    /// `m(t)` at a real argument.
    pub fn survival_at(&self, t: &Rational) -> Result<Real> {
        match &self.survival {
            Survival::Moments(m) => m.at(t),
            Survival::Table(_) => Err(unsupported()),
        }
    }

    /// Float path of [`survival_at`](Self::survival_at).
    pub fn survival_at_f64(&self, t: f64) -> Result<f64> {
        match &self.survival {
            Survival::Moments(m) => m.at_f64(t),
            Survival::Table(_) => Err(unsupported()),
        }
    }

    /// `F(k) = P(X < k)`.
    pub fn cdf(&self, k: u64) -> Real {
        self.survival(k).one_minus()
    }

    /// `P(X = k) = m(k) − m(k + 1)`.
    pub fn pmf(&self, k: u64) -> Real {
        self.survival(k).sub(&self.survival(k + 1))
    }

    /// For a (possibly rescaled) geometric law, its parameter `q^α`.
    pub fn geometric_parameter(&self) -> Option<Real> {
        let m = self.moment_sequence()?;
        if !m.mix().is_point_mass() {
            return None;
        }
        let q = &m.mix().atoms()[0].location;
        Some(match exact_pow(q, m.scale()) {
            Some(p) => Real::Exact(p),
            None => Real::Approx(pow_f64(q, crate::rational::to_f64(m.scale()))),
        })
    }

    /// `m(k) ↦ m(αk)`.
    pub fn df_scale(&self, alpha: &ScaleParam) -> Result<Self> {
        match &self.survival {
            Survival::Moments(m) => Ok(DiscreteDist {
                survival: Survival::Moments(m.rescale(alpha)),
                provenance: Provenance::Scaled {
                    base: Box::new(self.clone()),
                    alpha: alpha.clone(),
                },
            }),
            Survival::Table(_) => Err(unsupported()),
        }
    }

    pub fn pgf(&self) -> PgfForm {
        self.pgf_with_depth(DEFAULT_TRUNCATION)
    }

    /// Exact rational PGF whenever every rescaled atom is rational;
    /// otherwise the first `depth` masses and the bound `m(depth)` on the
    /// omitted tail.
    pub fn pgf_with_depth(&self, depth: usize) -> PgfForm {
        match &self.survival {
            Survival::Table(t) => {
                let pmf: Vec<Rational> = (0..t.len() as u64)
                    .map(|k| self.pmf(k).exact().cloned().expect("table is exact"))
                    .collect();
                PgfForm::Exact(RationalPgf::from_pmf(&pmf).expect("validated masses"))
            }
            Survival::Moments(m) => match m.mix().pushforward_exact(m.scale()) {
                Some(mix) => PgfForm::Exact(mixture_pgf(&mix)),
                None => PgfForm::Truncated {
                    coefficients: (0..depth as u64).map(|k| self.pmf(k)).collect(),
                    tail_bound: self.survival(depth as u64),
                },
            },
        }
    }
}

fn unsupported() -> Error {
    Error::UnsupportedProvenance("tabulated survival has no off-integer extension".into())
}

/// `Σ wᵢ (1 − qᵢ)/(1 − qᵢ s)` as one rational function.
fn mixture_pgf(mix: &MixingDistribution) -> RationalPgf {
    let factors: Vec<Polynomial> = mix
        .atoms()
        .iter()
        .map(|a| Polynomial::linear(Rational::one(), -&a.location))
        .collect();
    let den = factors.iter().fold(Polynomial::one(), |acc, f| &acc * f);
    let num = mix
        .atoms()
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (i, a)| {
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Polynomial::one(), |p, (_, f)| &p * f);
            &acc + &others.scale(&(&a.weight * (Rational::one() - &a.location)))
        });
    RationalPgf::new(num, den).expect("geometric mixture is a PGF")
}

impl fmt::Display for DiscreteDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.provenance {
            Provenance::Geometric(q) => write!(f, "geometric({})", format_rational(q)),
            Provenance::Mixture(mix) => {
                let atoms: Vec<String> = mix
                    .atoms()
                    .iter()
                    .map(|a| format!("{}:{}", format_rational(&a.location), format_rational(&a.weight)))
                    .collect();
                write!(f, "mixture({})", atoms.join(","))
            }
            Provenance::Scaled { base, alpha } => write!(f, "scaled({base}, {alpha})"),
            Provenance::Tabulated => {
                let n = match &self.survival {
                    Survival::Table(t) => t.len(),
                    Survival::Moments(_) => 0,
                };
                write!(f, "tabulated({n} points)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PgfForm {
    Exact(RationalPgf),
    Truncated {
        coefficients: Vec<Real>,
        tail_bound: Real,
    },
}

impl PgfForm {
    pub fn exact(&self) -> Option<&RationalPgf> {
        match self {
            PgfForm::Exact(q) => Some(q),
            PgfForm::Truncated { .. } => None,
        }
    }
}

pub fn geometric(q: Rational) -> Result<DiscreteDist> {
    DiscreteDist::geometric(q)
}

pub fn mixture_dist(mix: MixingDistribution) -> DiscreteDist {
    DiscreteDist::mixture(mix)
}

pub fn df_scale(d: &DiscreteDist, alpha: &ScaleParam) -> Result<DiscreteDist> {
    d.df_scale(alpha)
}

pub fn pgf_of(d: &DiscreteDist) -> PgfForm {
    d.pgf()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn alpha(n: i64, d: i64) -> ScaleParam {
        ScaleParam::new(ratio(n, d)).unwrap()
    }

    fn geo(n: i64, d: i64) -> DiscreteDist {
        DiscreteDist::geometric(ratio(n, d)).unwrap()
    }

    #[test]
    fn geometric_quarter_values() {
        let x = geo(1, 4);
        assert_eq!(x.cdf(2), Real::Exact(ratio(15, 16)));
        assert_eq!(x.cdf(0), Real::Exact(int(0)));
        assert_eq!(x.pmf(0), Real::Exact(ratio(3, 4)));
    }

    #[test]
    fn geometric_rejects_bad_parameter() {
        assert!(DiscreteDist::geometric(int(1)).is_err());
        assert!(DiscreteDist::geometric(int(0)).is_err());
    }

    #[test]
    fn point_mass_mixture_matches_geometric() {
        let mix = MixingDistribution::point_mass(ratio(1, 4)).unwrap();
        let m = mixture_dist(mix);
        let g = geo(1, 4);
        for k in 0..32 {
            assert_eq!(m.survival(k), g.survival(k));
        }
    }

    #[test]
    fn two_atom_mixture_cdf() {
        let mix = MixingDistribution::new([(ratio(1, 2), ratio(1, 2)), (ratio(1, 4), ratio(1, 2))])
            .unwrap();
        let d = mixture_dist(mix);
        assert_eq!(d.cdf(1), Real::Exact(ratio(5, 8)));
        assert!((0..=64).all(|k| d.pmf(k).is_nonnegative()));
    }

    #[test]
    fn df_scale_examples() {
        let half = geo(1, 4).df_scale(&alpha(1, 2)).unwrap();
        let twice = geo(1, 4).df_scale(&ScaleParam::new(int(2)).unwrap()).unwrap();
        let same = geo(1, 4).df_scale(&ScaleParam::one()).unwrap();
        for k in 0..=32 {
            assert_eq!(half.survival(k), geo(1, 2).survival(k));
            assert_eq!(twice.survival(k), geo(1, 16).survival(k));
            assert_eq!(same.survival(k), geo(1, 4).survival(k));
        }
        assert_eq!(half.geometric_parameter(), Some(Real::Exact(ratio(1, 2))));
    }

    #[test]
    fn pgf_closed_forms() {
        assert_eq!(geo(1, 4).pgf().exact().unwrap().display(), "3/(4−s)");
        let y = geo(1, 4).df_scale(&alpha(1, 2)).unwrap();
        assert_eq!(y.pgf().exact().unwrap().display(), "1/(2−s)");
    }

    #[test]
    fn mixture_pgf_matches_pmf() {
        let mix = MixingDistribution::parse("1/2:1/3,1/4:1/3,2/3:1/3").unwrap();
        let d = mixture_dist(mix);
        let q = d.pgf().exact().cloned().unwrap();
        assert_eq!(q.eval(&int(1)).unwrap(), int(1));
        let coeffs = q.series_coefficients(24);
        for (k, c) in coeffs.iter().enumerate() {
            assert_eq!(Real::Exact(c.clone()), d.pmf(k as u64));
        }
    }

    #[test]
    fn irrational_scaling_gives_truncated_pgf() {
        let d = geo(1, 2).df_scale(&alpha(1, 2)).unwrap();
        match d.pgf_with_depth(10) {
            PgfForm::Truncated { coefficients, tail_bound } => {
                assert_eq!(coefficients.len(), 10);
                let total: f64 = coefficients.iter().map(Real::to_f64).sum();
                assert!((total + tail_bound.to_f64() - 1.0).abs() < 1e-12);
            }
            PgfForm::Exact(_) => panic!("sqrt(1/2) is irrational"),
        }
    }

    #[test]
    fn tabulated_law() {
        let d = DiscreteDist::from_pmf(&[ratio(1, 4), ratio(1, 2), ratio(1, 4)]).unwrap();
        assert_eq!(d.cdf(0), Real::Exact(int(0)));
        assert_eq!(d.cdf(2), Real::Exact(ratio(3, 4)));
        assert_eq!(d.cdf(3), Real::Exact(int(1)));
        assert_eq!(d.pmf(5), Real::Exact(int(0)));
        assert_eq!(d.pgf().exact().unwrap().display(), "(1+2s+s^2)/4");
        assert!(matches!(
            d.df_scale(&alpha(1, 2)),
            Err(Error::UnsupportedProvenance(_))
        ));
        assert!(d.survival_at(&ratio(1, 2)).is_err());
        assert!(DiscreteDist::from_pmf(&[ratio(1, 2)]).is_err());
    }

    #[test]
    fn display_names_provenance() {
        let y = geo(1, 4).df_scale(&alpha(1, 2)).unwrap();
        assert_eq!(y.to_string(), "scaled(geometric(1/4), 1/2)");
    }
}
