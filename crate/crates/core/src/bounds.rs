//! Lower bound on the geometric genus of the Severi curve of a K3 surface
//! with polarization genus `g = 2r + 1`, plus a least-squares check of its
//! `e^{C sqrt(r)}` growth. The asymptotic fit is the only floating-point code
//! in the crate.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::chow::{self, ChowError};
use crate::qseries::{self, QSeries};

/// Geometric genus of a smooth (4,4)-curve on `P^1 x P^1`; lower bound for
/// the genus of each component of the limiting curve `Omega`.
pub const OMEGA_GENUS_LB: u32 = 9;

/// `2 pi sqrt(48 / 6)`: the exponential rate of the coefficients of
/// `prod (1 - q^m)^{-48}` predicted by the circle method.
pub const HEURISTIC_C: f64 = 2.0 * std::f64::consts::PI * 2.828_427_124_746_190_3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("L^2 = {0} must be a positive even integer")]
    BadSelfIntersection(i64),
    #[error("only odd polarization genus g = 2r + 1 is supported, got g = {0}")]
    EvenGenus(u64),
    #[error("polarization genus must be at least 3, got g = {0}")]
    GenusTooSmall(u64),
    #[error("fit range [{0}, {1}] needs 10 <= n_min < n_max")]
    BadFitRange(usize, usize),
    #[error("fit range ends at {n_max} but the series has order {order}")]
    SeriesTooShort { n_max: usize, order: usize },
    #[error("conjectural bound needs g = 2r + 1 with r >= 5, got g = {0}")]
    ConjecturalRange(u64),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Ingredients of the Severi-curve genus bound for one `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub g: u64,
    pub r: u64,
    /// `[prod (1-q^m)^{-48}]_{q^{r-1}}`: limit stable maps meeting a fixed fiber.
    #[serde(serialize_with = "as_decimal")]
    pub bl_count: BigInt,
    pub omega_genus_lb: u32,
    #[serde(serialize_with = "as_decimal")]
    pub severi_genus_lb: BigInt,
}

/// `g` from `L^2 = 2g - 2`.
pub fn polarization_genus(self_intersection: i64) -> Result<u64, BoundsError> {
    if self_intersection <= 0 || self_intersection % 2 != 0 {
        return Err(BoundsError::BadSelfIntersection(self_intersection));
    }
    Ok(self_intersection as u64 / 2 + 1)
}

fn split_odd_genus(g: u64) -> Result<u64, BoundsError> {
    if g.is_multiple_of(2) {
        return Err(BoundsError::EvenGenus(g));
    }
    if g < 3 {
        return Err(BoundsError::GenusTooSmall(g));
    }
    Ok((g - 1) / 2)
}

/// Report for `g` using precomputed coefficients of `prod (1-q^m)^{-48}`.
/// The series must have order at least `r`.
pub fn severi_lower_bound_from(g: u64, bl48: &QSeries) -> Result<BoundReport, BoundsError> {
    let r = split_odd_genus(g)?;
    let bl_count = bl48
        .coeff(r as usize - 1)
        .cloned()
        .ok_or(BoundsError::SeriesTooShort {
            n_max: r as usize - 1,
            order: bl48.order(),
        })?;
    let severi_genus_lb = &bl_count * (OMEGA_GENUS_LB - 1);
    Ok(BoundReport {
        g,
        r,
        bl_count,
        omega_genus_lb: OMEGA_GENUS_LB,
        severi_genus_lb,
    })
}

/// `genus(V) >= [M^lim . F(J)] * (genus(Omega) - 1)` for odd `g >= 3`.
pub fn severi_lower_bound(g: u64) -> Result<BoundReport, BoundsError> {
    let r = split_odd_genus(g)?;
    severi_lower_bound_from(g, &qseries::bl48_series(r as usize))
}

/// Least-squares line `log c_n ~ C sqrt(n) + b` over a sample range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub n_min: usize,
    pub n_max: usize,
    pub estimated_c: f64,
    pub intercept: f64,
    /// Largest `|fit - log c_n| / log c_n` over the range.
    pub max_relative_residual: f64,
}

/// Natural log of a positive big integer, without overflowing `f64`.
pub fn ln_bigint(v: &BigInt) -> f64 {
    assert!(v.is_positive(), "ln of non-positive value");
    let bits = v.bits();
    let shift = bits.saturating_sub(60);
    let top: BigInt = v >> shift;
    let mantissa = u64::try_from(&top).expect("at most 60 bits") as f64;
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Fit `log c_n` against `sqrt n` for `n` in `[n_min, n_max]`, using the
/// supplied series.
pub fn asymptotic_fit_on(
    series: &QSeries,
    n_min: usize,
    n_max: usize,
) -> Result<AsymptoticFit, BoundsError> {
    if n_min < 10 || n_min >= n_max {
        return Err(BoundsError::BadFitRange(n_min, n_max));
    }
    if n_max >= series.order() {
        return Err(BoundsError::SeriesTooShort {
            n_max,
            order: series.order(),
        });
    }
    let points: Vec<(f64, f64)> = (n_min..=n_max)
        .map(|n| ((n as f64).sqrt(), ln_bigint(&series.coeffs()[n])))
        .collect();
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let max_relative_residual = points
        .iter()
        .map(|&(x, y)| ((slope * x + intercept) - y).abs() / y.abs())
        .fold(0.0, f64::max);
    Ok(AsymptoticFit {
        n_min,
        n_max,
        estimated_c: slope,
        intercept,
        max_relative_residual,
    })
}

/// [`asymptotic_fit_on`] over a freshly computed `prod (1-q^m)^{-48}`.
pub fn asymptotic_fit(n_min: usize, n_max: usize) -> Result<AsymptoticFit, BoundsError> {
    if n_min < 10 || n_min >= n_max {
        return Err(BoundsError::BadFitRange(n_min, n_max));
    }
    asymptotic_fit_on(&qseries::bl48_series(n_max + 1), n_min, n_max)
}

/// Conjectural lower bound on the arithmetic genus of the Severi curve for
/// `g = 2r + 1`, `r >= 5`: the closed-form genus of the degeneracy locus
/// attached to a (4,4)-curve. Conditional, not a theorem.
pub fn appendix_conjectural_bound(g: u64) -> Result<BigInt, BoundsError> {
    let r = split_odd_genus(g)?;
    if r < 5 {
        return Err(BoundsError::ConjecturalRange(g));
    }
    let r = u32::try_from(r).map_err(|_| BoundsError::ConjecturalRange(g))?;
    Ok(chow::closed_form_genus_44(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible;

    #[test]
    fn polarization_genus_examples() {
        assert_eq!(polarization_genus(2), Ok(2));
        assert_eq!(polarization_genus(40), Ok(21));
        for g in 2..=100u64 {
            assert_eq!(polarization_genus(2 * g as i64 - 2), Ok(g));
        }
        assert_eq!(polarization_genus(3), Err(BoundsError::BadSelfIntersection(3)));
        assert_eq!(polarization_genus(0), Err(BoundsError::BadSelfIntersection(0)));
        assert!(polarization_genus(-4).is_err());
    }

    #[test]
    fn severi_small_genera() {
        let expect = [(3, 1, 8), (5, 48, 384), (7, 1224, 9792)];
        for (g, bl, lb) in expect {
            let rep = severi_lower_bound(g).unwrap();
            assert_eq!(rep.r, (g - 1) / 2);
            assert_eq!(rep.bl_count, BigInt::from(bl));
            assert_eq!(rep.omega_genus_lb, 9);
            assert_eq!(rep.severi_genus_lb, BigInt::from(lb));
        }
    }

    #[test]
    fn severi_rejects_even_and_small() {
        assert_eq!(severi_lower_bound(4), Err(BoundsError::EvenGenus(4)));
        assert_eq!(severi_lower_bound(1), Err(BoundsError::GenusTooSmall(1)));
        assert!(severi_lower_bound(0).is_err());
        assert!(BoundsError::EvenGenus(4).to_string().contains("2r + 1"));
    }

    #[test]
    fn severi_report_json() {
        let json = serde_json::to_string(&severi_lower_bound(5).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"g":5,"r":2,"bl_count":"48","omega_genus_lb":9,"severi_genus_lb":"384"}"#
        );
    }

    #[test]
    fn severi_bound_increasing_and_matches_fiber_count() {
        let series = qseries::bl48_series(60);
        let mut prev = BigInt::from(0);
        for g in (3..=119u64).step_by(2) {
            let rep = severi_lower_bound_from(g, &series).unwrap();
            assert!(rep.severi_genus_lb > prev);
            prev = rep.severi_genus_lb.clone();
            assert_eq!(rep.severi_genus_lb, &rep.bl_count * 8u32);
            assert_eq!(
                rep.bl_count,
                admissible::fixed_fiber_count(rep.r as usize).unwrap()
            );
        }
    }

    #[test]
    fn log_bound_over_sqrt_g_shape() {
        let series = qseries::bl48_series(201);
        let vals: Vec<f64> = (101..=401u64)
            .step_by(2)
            .map(|g| {
                let rep = severi_lower_bound_from(g, &series).unwrap();
                ln_bigint(&rep.severi_genus_lb) / (g as f64).sqrt()
            })
            .collect();
        let diffs: Vec<f64> = vals.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(diffs.iter().all(|&d| d > 0.0));
        assert!(diffs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn ln_bigint_matches_f64_ln() {
        for v in [1u64, 2, 1000, 1 << 40, u64::MAX] {
            let got = ln_bigint(&BigInt::from(v));
            assert!((got - (v as f64).ln()).abs() < 1e-12 * got.abs().max(1.0));
        }
        let huge = BigInt::from(10).pow(1000);
        assert!((ln_bigint(&huge) - 1000.0 * 10f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn fit_rejects_bad_ranges() {
        assert_eq!(asymptotic_fit(5, 50), Err(BoundsError::BadFitRange(5, 50)));
        assert_eq!(asymptotic_fit(50, 50), Err(BoundsError::BadFitRange(50, 50)));
        let short = qseries::bl48_series(30);
        assert!(matches!(
            asymptotic_fit_on(&short, 10, 40),
            Err(BoundsError::SeriesTooShort { .. })
        ));
    }

    #[test]
    fn fit_slope_positive() {
        let fit = asymptotic_fit(10, 120).unwrap();
        assert!(fit.estimated_c > 0.0);
        assert!(fit.max_relative_residual.is_finite());
    }

    #[test]
    fn conjectural_bound() {
        assert_eq!(
            appendix_conjectural_bound(11).unwrap(),
            BigInt::from(4).pow(8) * 40737 / 6 + 1
        );
        assert_eq!(appendix_conjectural_bound(12), Err(BoundsError::EvenGenus(12)));
        assert_eq!(appendix_conjectural_bound(9), Err(BoundsError::ConjecturalRange(9)));
        // far from the limit at r = 5: 4 P(6) / P(5)
        let a = appendix_conjectural_bound(11).unwrap();
        let b = appendix_conjectural_bound(13).unwrap();
        assert_eq!(b, BigInt::from(4419485697u64));
        assert!(b > &a * 9u32 && b < &a * 10u32);
    }

    #[test]
    fn conjectural_growth_beats_severi_bound() {
        // log-ratio per unit r approaches log 4 from above; 5/r correction
        let ln4 = 4f64.ln();
        let step = |r: u64| {
            ln_bigint(&appendix_conjectural_bound(2 * r + 3).unwrap())
                - ln_bigint(&appendix_conjectural_bound(2 * r + 1).unwrap())
        };
        assert!((step(40) - ln4) / ln4 < 0.10);
        assert!((step(400) - ln4) / ln4 < 0.01);
        let series = qseries::bl48_series(41);
        let sev = |r: u64| {
            ln_bigint(&severi_lower_bound_from(2 * r + 1, &series).unwrap().severi_genus_lb)
        };
        for r in 20..40 {
            assert!(step(r) > sev(r + 1) - sev(r));
        }
    }
}
