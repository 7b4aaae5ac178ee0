//! Finitely supported mixing laws on (0, 1), their moment sequences
//! `m(t) = Σ wᵢ qᵢᵗ`, rescaling `t ↦ αt`, and a finite-prefix complete
//! monotonicity check.
//!
//! A moment sequence evaluated at real `t` is a Laplace transform sampled
//! at `t`; rescaling the argument corresponds to pushing the mixing law
//! forward by `x ↦ x^α`.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pgf::ScaleParam;
use crate::rational::{exact_pow, format_rational, parse_rational, pow_f64, to_f64, Rational, Real};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    #[serde(with = "crate::rational::serde_rational")]
    pub location: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub weight: Rational,
}

/// Atoms are kept sorted by location.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MixingDistribution {
    atoms: Vec<Atom>,
}

impl MixingDistribution {
    pub fn new(atoms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut atoms: Vec<Atom> = atoms
            .into_iter()
            .map(|(location, weight)| Atom { location, weight })
            .collect();
        if atoms.is_empty() {
            return Err(Error::InvalidMixture("no atoms".into()));
        }
        for a in &atoms {
            if !(a.location.is_positive() && a.location < Rational::one()) {
                return Err(Error::InvalidMixture(format!(
                    "location {} not in (0, 1)",
                    format_rational(&a.location)
                )));
            }
            if !(a.weight.is_positive() && a.weight <= Rational::one()) {
                return Err(Error::InvalidMixture(format!(
                    "weight {} not in (0, 1]",
                    format_rational(&a.weight)
                )));
            }
        }
        atoms.sort_by(|a, b| a.location.cmp(&b.location));
        if atoms.windows(2).any(|w| w[0].location == w[1].location) {
            return Err(Error::InvalidMixture("duplicate location".into()));
        }
        let total: Rational = atoms.iter().map(|a| &a.weight).sum();
        if !total.is_one() {
            return Err(Error::InvalidMixture(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        Ok(MixingDistribution { atoms })
    }

    pub fn point_mass(q: Rational) -> Result<Self> {
        Self::new([(q, Rational::one())])
    }

    /// Parses `loc:weight,loc:weight,…`, e.g. `1/2:1/2,1/4:1/2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let atoms = spec
            .split(',')
            .map(|part| {
                let (loc, w) = part.split_once(':').ok_or_else(|| Error::Parse {
                    input: part.to_string(),
                    reason: "expected location:weight".into(),
                })?;
                Ok((parse_rational(loc)?, parse_rational(w)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_point_mass(&self) -> bool {
        self.atoms.len() == 1
    }

    /// `Σ wᵢ qᵢᵗ`, exact whenever every `qᵢᵗ` is rational.
    pub fn moment(&self, t: &Rational) -> Result<Real> {
        if t.is_negative() {
            return Err(Error::out_of_range("t", format_rational(t), "[0, ∞)"));
        }
        let exact: Option<Rational> = self
            .atoms
            .iter()
            .map(|a| exact_pow(&a.location, t).map(|p| p * &a.weight))
            .sum();
        Ok(match exact {
            Some(v) => Real::Exact(v),
            None => Real::Approx(self.moment_f64_unchecked(to_f64(t))),
        })
    }

    /// Float path of [`moment`](Self::moment), for arbitrary real `t ≥ 0`.
    pub fn moment_f64(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::out_of_range("t", t, "[0, ∞)"));
        }
        Ok(self.moment_f64_unchecked(t))
    }

    fn moment_f64_unchecked(&self, t: f64) -> f64 {
        self.atoms
            .iter()
            .map(|a| to_f64(&a.weight) * pow_f64(&a.location, t))
            .sum()
    }

    /// Pushforward by `x ↦ x^α` when every new location is rational.
    pub fn pushforward_exact(&self, alpha: &Rational) -> Option<Self> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Some((exact_pow(&a.location, alpha)?, a.weight.clone())))
            .collect::<Option<Vec<_>>>()?;
        Self::new(atoms).ok()
    }
}

impl<'de> Deserialize<'de> for MixingDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            atoms: Vec<Atom>,
        }
        let r = Repr::deserialize(d)?;
        MixingDistribution::new(r.atoms.into_iter().map(|a| (a.location, a.weight)))
            .map_err(serde::de::Error::custom)
    }
}

/// `k ↦ m(scale · k)` for a fixed mixing law.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MomentSequence {
    mix: MixingDistribution,
    scale: Rational,
}

impl MomentSequence {
    pub fn new(mix: MixingDistribution) -> Self {
        MomentSequence {
            mix,
            scale: Rational::one(),
        }
    }

    pub fn mix(&self) -> &MixingDistribution {
        &self.mix
    }

    /// Accumulated argument scale.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// `m(scale · t)` for real `t ≥ 0`.
    pub fn at(&self, t: &Rational) -> Result<Real> {
        self.mix.moment(&(&self.scale * t))
    }

    pub fn at_f64(&self, t: f64) -> Result<f64> {
        self.mix.moment_f64(to_f64(&self.scale) * t)
    }

    pub fn get(&self, k: u64) -> Real {
        self.at(&Rational::from_integer(k.into()))
            .expect("nonnegative argument")
    }

    /// Materialised `m(0), …, m(k_max)`.
    pub fn prefix(&self, k_max: usize) -> Vec<Real> {
        (0..=k_max as u64).map(|k| self.get(k)).collect()
    }

    pub fn rescale(&self, alpha: &ScaleParam) -> Self {
        MomentSequence {
            mix: self.mix.clone(),
            scale: &self.scale * alpha.value(),
        }
    }
}

/// `k ↦ m(αk)`.
pub fn scale_moments(mix: &MixingDistribution, alpha: &ScaleParam) -> MomentSequence {
    MomentSequence::new(mix.clone()).rescale(alpha)
}

pub fn moment(mix: &MixingDistribution, t: &Rational) -> Result<Real> {
    mix.moment(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Monotonicity {
    /// Every tested difference had the right sign. This is consistent
    /// with, not a proof of, being a moment sequence.
    Consistent,
    /// `(−1)^order Δ^order m(index) < 0`.
    Violated { order: usize, index: usize },
}

impl Monotonicity {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Monotonicity::Consistent)
    }
}

/// Checks `(−1)^j Δ^j m(k) ≥ 0` for `1 ≤ j ≤ order`, `0 ≤ k ≤ K − j`,
/// where `prefix = m(0..=K)`.
pub fn completely_monotone_check(prefix: &[Rational], order: usize) -> Result<Monotonicity> {
    check_differences(prefix, order, |d: &Rational| d.is_negative(), |a, b| a - b)
}

/// Float variant; a difference counts as negative only below `-tol`
/// times the largest prefix magnitude.
pub fn completely_monotone_check_f64(
    prefix: &[f64],
    order: usize,
    tol: f64,
) -> Result<Monotonicity> {
    let scale = prefix.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = -tol * scale.max(f64::MIN_POSITIVE);
    check_differences(prefix, order, |d: &f64| *d < floor, |a, b| a - b)
}

/// Exact when every entry is exact, else the float check at
/// [`FLOAT_TOLERANCE`](crate::rational::FLOAT_TOLERANCE) per order.
pub fn completely_monotone_check_real(prefix: &[Real], order: usize) -> Result<Monotonicity> {
    if let Some(exact) = prefix.iter().map(|r| r.exact().cloned()).collect::<Option<Vec<_>>>() {
        return completely_monotone_check(&exact, order);
    }
    let floats: Vec<f64> = prefix.iter().map(Real::to_f64).collect();
    // each differencing order can double the absolute rounding error
    let tol = crate::rational::FLOAT_TOLERANCE * (1u64 << order.min(40)) as f64;
    completely_monotone_check_f64(&floats, order, tol)
}

fn check_differences<T: Clone>(
    prefix: &[T],
    order: usize,
    negative: impl Fn(&T) -> bool,
    sub: impl Fn(&T, &T) -> T,
) -> Result<Monotonicity> {
    let available = prefix.len().saturating_sub(1);
    if order == 0 || prefix.is_empty() || available < order {
        return Err(Error::InsufficientPrefix { available, order });
    }
    // row holds (−1)^j Δ^j m(k) for the current j
    let mut row: Vec<T> = prefix.to_vec();
    for j in 1..=order {
        row = row.windows(2).map(|w| sub(&w[0], &w[1])).collect();
        if let Some(k) = row.iter().position(&negative) {
            return Ok(Monotonicity::Violated { order: j, index: k });
        }
    }
    Ok(Monotonicity::Consistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn two_atoms() -> MixingDistribution {
        MixingDistribution::new([(ratio(1, 2), ratio(1, 2)), (ratio(1, 4), ratio(1, 2))]).unwrap()
    }

    #[test]
    fn point_mass_moments_are_geometric_survival() {
        let mix = MixingDistribution::point_mass(ratio(1, 4)).unwrap();
        for k in 0..10 {
            assert_eq!(
                mix.moment(&int(k)).unwrap(),
                Real::Exact(num_traits::Pow::pow(ratio(1, 4), k as u32))
            );
        }
    }

    #[test]
    fn zeroth_moment_is_one() {
        assert_eq!(two_atoms().moment(&int(0)).unwrap(), Real::Exact(int(1)));
    }

    #[test]
    fn two_atom_second_moment() {
        assert_eq!(two_atoms().moment(&int(2)).unwrap(), Real::Exact(ratio(5, 32)));
    }

    #[test]
    fn negative_argument_is_rejected() {
        assert!(two_atoms().moment(&int(-1)).is_err());
        assert!(two_atoms().moment_f64(-0.5).is_err());
        assert!(two_atoms().moment_f64(f64::NAN).is_err());
    }

    #[test]
    fn irrational_powers_fall_back_to_floats() {
        let m = two_atoms().moment(&ratio(1, 3)).unwrap();
        assert!(!m.is_exact());
        let expected = 0.5 * 0.5f64.powf(1.0 / 3.0) + 0.5 * 0.25f64.powf(1.0 / 3.0);
        assert!((m.to_f64() - expected).abs() < 1e-14);
    }

    #[test]
    fn scaled_point_mass_examples() {
        let mix = MixingDistribution::point_mass(ratio(1, 4)).unwrap();
        let half = scale_moments(&mix, &ScaleParam::new(ratio(1, 2)).unwrap());
        let twice = scale_moments(&mix, &ScaleParam::new(int(2)).unwrap());
        let same = scale_moments(&mix, &ScaleParam::one());
        for k in 0..8u32 {
            let kk = k as u64;
            assert_eq!(half.get(kk), Real::Exact(num_traits::Pow::pow(ratio(1, 2), k)));
            assert_eq!(twice.get(kk), Real::Exact(num_traits::Pow::pow(ratio(1, 16), k)));
            assert_eq!(same.get(kk), mix.moment(&int(k as i64)).unwrap());
        }
    }

    #[test]
    fn mixture_validation() {
        assert!(MixingDistribution::new(Vec::new()).is_err());
        assert!(MixingDistribution::new([(int(1), int(1))]).is_err());
        assert!(MixingDistribution::new([(ratio(1, 2), ratio(1, 3))]).is_err());
        assert!(MixingDistribution::new([
            (ratio(1, 2), ratio(1, 2)),
            (ratio(1, 2), ratio(1, 2))
        ])
        .is_err());
    }

    #[test]
    fn parse_mixture_spec() {
        assert_eq!(MixingDistribution::parse("1/4:1/2, 1/2:1/2").unwrap(), two_atoms());
        assert!(MixingDistribution::parse("1/4").is_err());
    }

    #[test]
    fn geometric_prefix_is_completely_monotone() {
        let prefix: Vec<Rational> = (0..=8u32)
            .map(|k| num_traits::Pow::pow(ratio(1, 4), k))
            .collect();
        assert_eq!(completely_monotone_check(&prefix, 4).unwrap(), Monotonicity::Consistent);
    }

    #[test]
    fn constant_sequence_passes() {
        let prefix = vec![int(1); 6];
        assert!(completely_monotone_check(&prefix, 5).unwrap().is_consistent());
    }

    #[test]
    fn increasing_step_fails_at_first_order() {
        let prefix = vec![int(1), ratio(1, 2), ratio(9, 10)];
        assert_eq!(
            completely_monotone_check(&prefix, 1).unwrap(),
            Monotonicity::Violated { order: 1, index: 1 }
        );
    }

    #[test]
    fn convexity_failure_is_found_at_second_order() {
        // decreasing but not convex
        let prefix = vec![int(1), ratio(9, 10), ratio(1, 2), ratio(1, 4)];
        assert_eq!(
            completely_monotone_check(&prefix, 3).unwrap(),
            Monotonicity::Violated { order: 2, index: 0 }
        );
    }

    #[test]
    fn short_prefix_is_an_error() {
        let err = completely_monotone_check(&[int(1), ratio(1, 2)], 2).unwrap_err();
        assert_eq!(err, Error::InsufficientPrefix { available: 1, order: 2 });
        assert!(completely_monotone_check(&[int(1)], 0).is_err());
    }

    #[test]
    fn float_prefix_check_tolerates_rounding() {
        let mix = two_atoms();
        let seq = scale_moments(&mix, &ScaleParam::new(ratio(1, 3)).unwrap());
        let prefix = seq.prefix(12);
        assert!(prefix.iter().any(|r| !r.is_exact()));
        assert!(completely_monotone_check_real(&prefix, 6).unwrap().is_consistent());
    }
}
