//! Series, asymptotic growth, and the growth-constant ranking table.
//!
//! For an avoider generating function `F = P/Q` in lowest terms, the
//! coefficient growth rate is `lambda = 1/x0` with `x0` the smallest
//! positive root of `Q`, and `a(n) ~ C * lambda^n` with the simple-pole
//! amplitude `C = -P(x0) / (x0 Q'(x0))`. Both are computed on rational
//! enclosures; a series post-check at large `n` verifies that the located
//! pole really dominates instead of assuming it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{avoider_gf, EngineError};
use crate::composition::{Composition, PatternSet, PatternSetError};
use crate::numeric::{decimal_string, pow10_neg, RatInterval};
use crate::poly::Var;
use crate::ratfun::{RatFun, RatFunError};
use crate::roots::{smallest_positive_real_root, RootError};
use crate::series::{series_coefficients, SeriesPrefix};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    PatternSet(#[from] PatternSetError),
    #[error(transparent)]
    RatFun(#[from] RatFunError),
    #[error("root isolation: {0}")]
    Root(#[from] RootError),
    #[error("amplitude enclosure did not stabilize (pole may not be simple)")]
    AmplitudeUnstable,
    #[error("{quantity} is not linear on the verification window starting at n = {start}; try a larger window")]
    NotLinear { quantity: String, start: usize },
    #[error("moment analysis needs at least {needed} patterns, set has {got}")]
    NotEnoughPatterns { needed: usize, got: usize },
}

/// Avoider series `a(0..=n_max)` for a pattern set.
pub fn series(set: &PatternSet, n_max: usize) -> Result<SeriesPrefix, AnalysisError> {
    let result = avoider_gf(set)?;
    Ok(series_coefficients(&result.f, n_max)?)
}

/// Growth rate and amplitude of the avoider counting sequence.
#[derive(Clone, Debug)]
pub struct GrowthEstimate {
    /// Enclosure of the dominant denominator root in `(0, 1]`.
    pub x0: RatInterval,
    /// Enclosure of `1/x0`.
    pub lambda: RatInterval,
    /// Enclosure of the simple-pole amplitude; absent for subexponential
    /// sequences (`x0 = 1`).
    pub amplitude: Option<RatInterval>,
    /// Requested output precision in decimal digits.
    pub digits: u32,
    /// True when the smallest positive root is exactly 1.
    pub subexponential: bool,
    /// Series post-check outcome: `a(n)/(C lambda^n)` was within 1e-6 of 1
    /// at the largest checked index. Always true for subexponential results
    /// (the check does not apply).
    pub dominant: bool,
}

impl GrowthEstimate {
    pub fn lambda_decimal(&self) -> String {
        decimal_string(&self.lambda.midpoint(), self.digits)
    }

    pub fn amplitude_decimal(&self) -> Option<String> {
        self.amplitude
            .as_ref()
            .map(|a| decimal_string(&a.midpoint(), self.digits))
    }
}

/// Index used by the dominance post-check.
pub const DOMINANCE_CHECK_INDEX: usize = 2000;

pub fn growth(set: &PatternSet, digits: u32) -> Result<GrowthEstimate, AnalysisError> {
    let result = avoider_gf(set)?;
    growth_of_gf(&result.f, digits)
}

/// Growth analysis of an explicit univariate generating function.
pub fn growth_of_gf(f: &RatFun, digits: u32) -> Result<GrowthEstimate, AnalysisError> {
    let mut bits = 64 + 4 * digits;
    let mut x0 = smallest_positive_real_root(f.den(), bits)?;

    if x0.is_point() && x0.lo.is_one() {
        return Ok(GrowthEstimate {
            lambda: RatInterval::point(BigRational::one()),
            x0,
            amplitude: None,
            digits,
            subexponential: true,
            dominant: true,
        });
    }

    // Amplitude on the enclosure; refine the root until the enclosure of
    // C = -P(x0)/(x0 Q'(x0)) is narrower than the requested precision.
    let num = f.num().to_univariate(Var::X).expect("univariate");
    let den = f.den().to_univariate(Var::X).expect("univariate");
    let dden: Vec<BigRational> = den
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    let tol = pow10_neg(digits + 3);
    let amplitude = loop {
        let p_at = x0.eval_poly(&num);
        let dq_at = x0.eval_poly(&dden);
        let denom = x0.mul(&dq_at);
        if !denom.contains_zero() {
            let c = p_at.neg().div(&denom);
            if c.width() <= tol {
                break c;
            }
        }
        if bits > 4096 {
            return Err(AnalysisError::AmplitudeUnstable);
        }
        bits *= 2;
        x0 = smallest_positive_real_root(f.den(), bits)?;
    };

    let lambda = x0.recip();

    // Dominance post-check from the exact series: a(n) * x0^n / C ~ 1.
    let prefix = series_coefficients(f, DOMINANCE_CHECK_INDEX)?;
    let a_n = prefix.coefficient(DOMINANCE_CHECK_INDEX);
    let x0_mid = x0.midpoint();
    let c_mid = amplitude.midpoint();
    let dominant = if c_mid.is_zero() || a_n.is_zero() {
        false
    } else {
        let mut pow = BigRational::one();
        let mut base = x0_mid.clone();
        let mut e = DOMINANCE_CHECK_INDEX;
        while e > 0 {
            if e & 1 == 1 {
                pow *= &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        let ratio = a_n * pow / &c_mid;
        (ratio - BigRational::one()).abs() <= pow10_neg(6)
    };

    Ok(GrowthEstimate {
        x0,
        lambda,
        amplitude: Some(amplitude),
        digits,
        subexponential: false,
        dominant,
    })
}

/// One row of the ranking table.
#[derive(Clone, Debug)]
pub struct RankRow {
    pub pattern: Composition,
    pub outcome: Result<GrowthEstimate, String>,
}

/// Rows for one pattern sum.
#[derive(Clone, Debug)]
pub struct RankGroup {
    pub sum: u32,
    pub rows: Vec<RankRow>,
}

/// Growth-constant ranking of single patterns by sum, one representative
/// per reversal class (the lexicographically smaller of a pattern and its
/// reverse), rows sorted by ascending growth rate.
#[derive(Clone, Debug)]
pub struct RankTable {
    pub groups: Vec<RankGroup>,
    pub digits: u32,
}

pub fn rank_patterns(max_sum: u32, digits: u32, workers: usize) -> Result<RankTable, AnalysisError> {
    let run = || -> Result<RankTable, AnalysisError> {
        let mut groups = Vec::new();
        for sum in 2..=max_sum {
            let mut reps: Vec<Composition> = Vec::new();
            for c in crate::oracle::enumerate_compositions_guarded(sum, sum.max(26))
                .expect("sum bounded by max_sum")
            {
                let rev = c.reversed();
                let rep = if rev.parts() < c.parts() { rev } else { c };
                if !reps.contains(&rep) {
                    reps.push(rep);
                }
            }
            reps.sort();
            let mut rows: Vec<RankRow> = reps
                .into_par_iter()
                .map(|pattern| {
                    let outcome = PatternSet::new(vec![pattern.clone()])
                        .map_err(AnalysisError::from)
                        .and_then(|set| growth(&set, digits))
                        .map_err(|e| e.to_string());
                    RankRow { pattern, outcome }
                })
                .collect();
            rows.sort_by(|a, b| {
                let key = |r: &RankRow| {
                    r.outcome
                        .as_ref()
                        .ok()
                        .map(|g| g.lambda.midpoint())
                        .unwrap_or_else(BigRational::zero)
                };
                key(a)
                    .cmp(&key(b))
                    .then_with(|| a.pattern.parts().cmp(b.pattern.parts()))
            });
            groups.push(RankGroup { sum, rows });
        }
        Ok(RankTable { groups, digits })
    };
    if workers == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(run)
    }
}

impl RankTable {
    /// Look up the growth estimate for a pattern (given as its own or its
    /// reversed representative).
    pub fn lambda_for(&self, pattern: &Composition) -> Option<&GrowthEstimate> {
        let rev = pattern.reversed();
        for group in &self.groups {
            for row in &group.rows {
                if row.pattern == *pattern || row.pattern == rev {
                    return row.outcome.as_ref().ok();
                }
            }
        }
        None
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RankRowJson {
    pub pattern: String,
    /// Decimal growth rate, or null when the pattern failed.
    pub lambda: Option<String>,
    pub amplitude: Option<String>,
    pub subexponential: bool,
    pub dominant: bool,
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RankGroupJson {
    pub sum: u32,
    pub rows: Vec<RankRowJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RankTableJson {
    pub precision: u32,
    pub groups: Vec<RankGroupJson>,
}

impl RankTable {
    pub fn to_json(&self) -> RankTableJson {
        RankTableJson {
            precision: self.digits,
            groups: self
                .groups
                .iter()
                .map(|g| RankGroupJson {
                    sum: g.sum,
                    rows: g
                        .rows
                        .iter()
                        .map(|r| match &r.outcome {
                            Ok(est) => RankRowJson {
                                pattern: r.pattern.to_string(),
                                lambda: Some(est.lambda_decimal()),
                                amplitude: est.amplitude_decimal(),
                                subexponential: est.subexponential,
                                dominant: est.dominant,
                                error: None,
                            },
                            Err(e) => RankRowJson {
                                pattern: r.pattern.to_string(),
                                lambda: None,
                                amplitude: None,
                                subexponential: false,
                                dominant: false,
                                error: Some(e.clone()),
                            },
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational_from_decimal;

    fn set(patterns: &[&[u32]]) -> PatternSet {
        PatternSet::new(
            patterns
                .iter()
                .map(|p| Composition::new(p.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn series_for_all_ones_pattern() {
        // Only the empty composition avoids [1].
        let s = series(&set(&[&[1]]), 4).unwrap();
        let ints: Vec<i64> = s
            .integers()
            .unwrap()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect();
        assert_eq!(ints, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn growth_of_single_part_three_is_golden_ratio() {
        let est = growth(&set(&[&[3]]), 12).unwrap();
        let phi = rational_from_decimal("1.6180339887498948482").unwrap();
        assert!((est.lambda.midpoint() - phi).abs() < pow10_neg(12));
        assert!(est.dominant);
        assert!(!est.subexponential);
    }

    #[test]
    fn growth_of_two_powers() {
        // No patterns of length 1 with value 1 allowed beyond n=0; use the
        // baseline: F=(1-x)/(1-2x) has lambda 2, amplitude 1/2.
        let f = crate::cluster::avoider_gf_for(&[]).unwrap().f;
        let est = growth_of_gf(&f, 12).unwrap();
        assert!((est.lambda.midpoint() - BigRational::from_integer(2.into())).abs() < pow10_neg(12));
        let amp = est.amplitude.unwrap();
        assert!((amp.midpoint() - BigRational::new(1.into(), 2.into())).abs() < pow10_neg(12));
        assert!(est.dominant);
    }

    #[test]
    fn subexponential_detection() {
        let est = growth(&set(&[&[1, 1, 2]]), 10).unwrap();
        assert!(est.subexponential);
        assert!(est.amplitude.is_none());
        assert_eq!(est.lambda.midpoint(), BigRational::one());
    }

    #[test]
    fn rank_small_table() {
        let table = rank_patterns(3, 10, 0).unwrap();
        assert_eq!(table.groups.len(), 2);
        // n=2: patterns [1,1] and [2], both lambda = 1.
        let g2 = &table.groups[0];
        assert_eq!(g2.sum, 2);
        for row in &g2.rows {
            let est = row.outcome.as_ref().unwrap();
            assert_eq!(est.lambda.midpoint(), BigRational::one());
        }
        // n=3: [3] has lambda = golden ratio; [1,2] and [1,1,1] have 1.
        let g3 = &table.groups[1];
        let last = g3.rows.last().unwrap();
        assert_eq!(last.pattern.parts(), &[3]);
        let phi = rational_from_decimal("1.6180339887").unwrap();
        let lam = last.outcome.as_ref().unwrap().lambda.midpoint();
        assert!((lam - phi).abs() < pow10_neg(9));
        // representative of {12, 21} is 12
        assert!(g3.rows.iter().any(|r| r.pattern.parts() == &[1, 2]));
        assert!(!g3.rows.iter().any(|r| r.pattern.parts() == &[2, 1]));
    }

    #[test]
    fn rank_worker_count_does_not_change_result() {
        let a = rank_patterns(4, 8, 1).unwrap();
        let b = rank_patterns(4, 8, 3).unwrap();
        let rows = |t: &RankTable| -> Vec<(String, Option<String>)> {
            t.groups
                .iter()
                .flat_map(|g| {
                    g.rows.iter().map(|r| {
                        (
                            r.pattern.to_string(),
                            r.outcome.as_ref().ok().map(|e| e.lambda_decimal()),
                        )
                    })
                })
                .collect()
        };
        assert_eq!(rows(&a), rows(&b));
    }

    use crate::numeric::pow10_neg;
}
