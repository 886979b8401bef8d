//! Occurrence statistics from the marker generating function.
//!
//! Factorial moments of the pattern-occurrence counts come from partial
//! derivatives of `F(x; X_1..X_r)` at all markers 1. Rather than
//! differentiating the multivariate fraction repeatedly, the markers of
//! interest are shifted (`X -> 1 + u`) and `F` is expanded as a truncated
//! power series in the shifted markers with univariate rational functions
//! of `x` as coefficients; the `(p, q)` coefficient times `p! q!` is the
//! derivative. Per-`n` moment values are exact rationals throughout;
//! square roots appear only when standardized moments are rendered.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisError;
use crate::cluster::joint_gf;
use crate::composition::PatternSet;
use crate::numeric::{decimal_string, exact_sqrt, sqrt_interval, RatInterval};
use crate::poly::{rational_string, Poly, Var};
use crate::ratfun::RatFun;
use crate::series::series_coefficients;

/// Exact linear polynomial `slope * n + intercept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPoly {
    pub slope: BigRational,
    pub intercept: BigRational,
}

impl LinearPoly {
    pub fn eval(&self, n: usize) -> BigRational {
        &self.slope * BigRational::from_integer(BigInt::from(n)) + &self.intercept
    }
}

/// Derivatives of `F` with respect to one or two markers, at all markers 1.
///
/// `taylor[(p, q)]` is `d^p/dX_i^p d^q/dX_j^q F |_(X=1)`, a univariate
/// rational function of `x`.
struct PairDerivatives {
    taylor: BTreeMap<(u32, u32), RatFun>,
}

fn factorial(k: u32) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=k as u64 {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

fn binomial(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    BigRational::from_integer(acc)
}

/// Stirling numbers of the second kind, S(n, k).
fn stirling2(n: u32, k: u32) -> BigRational {
    if n == 0 && k == 0 {
        return BigRational::one();
    }
    if k == 0 || k > n {
        return BigRational::zero();
    }
    let mut row = vec![BigRational::one()]; // S(0, 0)
    for m in 1..=n {
        let mut next = vec![BigRational::zero(); (m + 1) as usize];
        for j in 1..=m as usize {
            let below = if j < row.len() {
                row[j].clone()
            } else {
                BigRational::zero()
            };
            next[j] = BigRational::from_integer(BigInt::from(j)) * below + &row[j - 1];
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Truncated bivariate series with rational-function coefficients.
type UvSeries = BTreeMap<(u32, u32), RatFun>;

fn uv_mul(a: &UvSeries, b: &UvSeries, order: u32) -> UvSeries {
    let mut out = UvSeries::new();
    for (&(pa, qa), ca) in a {
        for (&(pb, qb), cb) in b {
            let (p, q) = (pa + pb, qa + qb);
            if p + q > order {
                continue;
            }
            let prod = ca.mul(cb);
            out.entry((p, q))
                .and_modify(|acc| *acc = acc.add(&prod))
                .or_insert(prod);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn uv_add(a: &UvSeries, b: &UvSeries) -> UvSeries {
    let mut out = a.clone();
    for (k, c) in b {
        out.entry(*k)
            .and_modify(|acc| *acc = acc.add(c))
            .or_insert_with(|| c.clone());
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Split a polynomial in `x` and the two shifted markers into
/// `(p, q) -> polynomial in x`.
fn split_markers(p: &Poly, mi: Var, mj: Option<Var>) -> UvSeries {
    let vars = p.vars().to_vec();
    let idx_i = vars.iter().position(|&v| v == mi);
    let idx_j = mj.and_then(|m| vars.iter().position(|&v| v == m));
    let mut out: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
    for (exps, coef) in p.terms() {
        let pi = idx_i.map(|i| exps[i]).unwrap_or(0);
        let pj = idx_j.map(|i| exps[i]).unwrap_or(0);
        let x_exp = vars
            .iter()
            .position(|&v| v == Var::X)
            .map(|i| exps[i])
            .unwrap_or(0);
        let mono = Poly::monomial(coef.clone(), &[(Var::X, x_exp)]);
        out.entry((pi, pj))
            .and_modify(|acc| *acc = acc.add(&mono))
            .or_insert(mono);
    }
    out.into_iter()
        .map(|(k, poly)| (k, RatFun::from_poly(poly)))
        .collect()
}

/// Expand `f` around markers `i` (and optionally `j`) equal to 1, all other
/// markers substituted at 1, up to total derivative order `order`.
fn derivatives_at_one(
    f: &RatFun,
    r: usize,
    i: usize,
    j: Option<usize>,
    order: u32,
) -> Result<PairDerivatives, AnalysisError> {
    let mi = Var::Marker(i as u8);
    let mj = j.map(|j| Var::Marker(j as u8));
    // Set the uninvolved markers to 1.
    let mut g = f.clone();
    for k in 0..r {
        let v = Var::Marker(k as u8);
        if v != mi && Some(v) != mj {
            g = g.substitute(v, &RatFun::one())?;
        }
    }
    // Shift the involved markers: X -> X + 1, so X now measures the offset
    // from 1 and Taylor coefficients live at X = 0.
    let shift = |p: &Poly| -> Poly {
        let mut out = p.substitute(mi, &Poly::variable(mi).add(&Poly::one()));
        if let Some(m) = mj {
            out = out.substitute(m, &Poly::variable(m).add(&Poly::one()));
        }
        out
    };
    let num = split_markers(&shift(g.num()), mi, mj);
    let den = split_markers(&shift(g.den()), mi, mj);

    let q0 = den
        .get(&(0, 0))
        .cloned()
        .ok_or(crate::ratfun::RatFunError::PoleAtOrigin)?;
    // 1/Q = (1/q0) * sum_k (-(Q - q0)/q0)^k, truncated: Q - q0 has
    // positive marker valuation.
    let mut ratio = UvSeries::new(); // -(Q - q0)/q0
    for (k, c) in &den {
        if *k == (0, 0) {
            continue;
        }
        ratio.insert(*k, c.neg().div(&q0)?);
    }
    let mut inv: UvSeries = BTreeMap::from([((0, 0), RatFun::one().div(&q0)?)]);
    let mut power: UvSeries = BTreeMap::from([((0, 0), RatFun::one())]);
    for _ in 1..=order {
        power = uv_mul(&power, &ratio, order);
        if power.is_empty() {
            break;
        }
        let scaled: UvSeries = power
            .iter()
            .map(|(k, c)| Ok((*k, c.div(&q0)?)))
            .collect::<Result<_, crate::ratfun::RatFunError>>()?;
        inv = uv_add(&inv, &scaled);
    }
    let taylor_coefs = uv_mul(&num, &inv, order);
    let mut taylor = BTreeMap::new();
    for ((p, q), c) in taylor_coefs {
        taylor.insert((p, q), c.scale(&(factorial(p) * factorial(q))));
    }
    Ok(PairDerivatives { taylor })
}

/// Exact per-`n` raw mixed moments `E[N_i^a N_j^b]` for all `a + b <=
/// order`, over the uniform distribution on compositions of `n`.
struct MomentGrid {
    /// `series[(p, q)][n]` = n-th coefficient of the `(p, q)` derivative.
    series: BTreeMap<(u32, u32), Vec<BigRational>>,
}

impl MomentGrid {
    fn new(d: &PairDerivatives, n_max: usize) -> Result<Self, AnalysisError> {
        let mut series = BTreeMap::new();
        for ((p, q), f) in &d.taylor {
            series.insert((*p, *q), series_coefficients(f, n_max)?.coefficients);
        }
        Ok(MomentGrid { series })
    }

    fn factorial_moment(&self, p: u32, q: u32, n: usize) -> BigRational {
        let total = BigRational::from_integer(if n == 0 {
            BigInt::one()
        } else {
            BigInt::one() << (n - 1)
        });
        match self.series.get(&(p, q)) {
            Some(c) => &c[n] / total,
            None => BigRational::zero(),
        }
    }

    /// Raw moment `E[N_i^a N_j^b]` via Stirling conversion per variable.
    fn raw_moment(&self, a: u32, b: u32, n: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for p in 0..=a {
            for q in 0..=b {
                let s = stirling2(a, p) * stirling2(b, q);
                if s.is_zero() {
                    continue;
                }
                acc += s * self.factorial_moment(p, q, n);
            }
        }
        acc
    }

    /// Central moment `E[(N_i - mu_i)^a (N_j - mu_j)^b]`.
    fn central_moment(
        &self,
        a: u32,
        b: u32,
        n: usize,
        mu_i: &BigRational,
        mu_j: &BigRational,
    ) -> BigRational {
        let mut acc = BigRational::zero();
        for p in 0..=a {
            for q in 0..=b {
                let mut term = binomial(a, p) * binomial(b, q) * self.raw_moment(p, q, n);
                let ei = a - p;
                let ej = b - q;
                for _ in 0..ei {
                    term *= -mu_i.clone();
                }
                for _ in 0..ej {
                    term *= -mu_j.clone();
                }
                acc += term;
            }
        }
        acc
    }
}

/// Moment statistics of the occurrence counts: exact linear polynomials in
/// `n`, validated on a window, plus the asymptotic correlation per pair.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub expectation: Vec<LinearPoly>,
    pub variance: Vec<LinearPoly>,
    pub pairs: Vec<PairStats>,
    /// First and last `n` of the verification window.
    pub window: (usize, usize),
    pub order: u32,
}

#[derive(Clone, Debug)]
pub struct PairStats {
    pub i: usize,
    pub j: usize,
    pub covariance: LinearPoly,
    /// `cov_slope^2 / (var_i_slope * var_j_slope)`, exact.
    pub correlation_squared: BigRational,
    /// Exact correlation when the square root is rational.
    pub correlation: Option<BigRational>,
    /// Sign of the covariance slope (the correlation carries it).
    pub negative: bool,
}

impl PairStats {
    /// Decimal rendering of the correlation at `digits` digits.
    pub fn correlation_decimal(&self, digits: u32) -> String {
        if let Some(rho) = &self.correlation {
            return decimal_string(rho, digits);
        }
        let iv = sqrt_interval(&self.correlation_squared, 16 + 4 * digits);
        let mid = iv.midpoint();
        let signed = if self.negative { -mid } else { mid };
        decimal_string(&signed, digits)
    }

    pub fn rho(&self) -> BigRational {
        match &self.correlation {
            Some(r) => r.clone(),
            None => {
                let iv = sqrt_interval(&self.correlation_squared, 96);
                let mid = iv.midpoint();
                if self.negative {
                    -mid
                } else {
                    mid
                }
            }
        }
    }
}

/// Default fit window start: past the boundary effects, at `4a`.
pub fn default_window(set: &PatternSet) -> (usize, usize) {
    let start = 4 * set.common_length();
    (start, start + 16)
}

fn fit_linear(
    values: &[(usize, BigRational)],
    quantity: &str,
) -> Result<LinearPoly, AnalysisError> {
    let (n0, v0) = &values[0];
    let (n1, v1) = &values[1];
    let slope = (v1 - v0) / BigRational::from_integer(BigInt::from(n1 - n0));
    let intercept = v0 - &slope * BigRational::from_integer(BigInt::from(*n0));
    let fit = LinearPoly { slope, intercept };
    for (n, v) in values.iter().skip(2) {
        if &fit.eval(*n) != v {
            return Err(AnalysisError::NotLinear {
                quantity: quantity.to_string(),
                start: values[0].0,
            });
        }
    }
    Ok(fit)
}

pub fn moments(
    set: &PatternSet,
    order: u32,
    window: Option<(usize, usize)>,
) -> Result<MomentReport, AnalysisError> {
    let r = set.marker_count();
    let (start, end) = window.unwrap_or_else(|| default_window(set));
    assert!(end >= start + 9, "window must span at least 10 points");
    let joint = joint_gf(set)?;

    let mut expectation = Vec::new();
    let mut variance = Vec::new();
    for i in 0..r {
        let d = derivatives_at_one(&joint.f, r, i, None, 2)?;
        let grid = MomentGrid::new(&d, end)?;
        let zero = BigRational::zero();
        let e_values: Vec<(usize, BigRational)> = (start..=end)
            .map(|n| (n, grid.raw_moment(1, 0, n)))
            .collect();
        expectation.push(fit_linear(&e_values, &format!("expectation[{i}]"))?);
        let v_values: Vec<(usize, BigRational)> = (start..=end)
            .map(|n| {
                let mu = grid.raw_moment(1, 0, n);
                (n, grid.central_moment(2, 0, n, &mu, &zero))
            })
            .collect();
        variance.push(fit_linear(&v_values, &format!("variance[{i}]"))?);
    }

    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let d = derivatives_at_one(&joint.f, r, i, Some(j), 2)?;
            let grid = MomentGrid::new(&d, end)?;
            let c_values: Vec<(usize, BigRational)> = (start..=end)
                .map(|n| {
                    let mu_i = grid.raw_moment(1, 0, n);
                    let mu_j = grid.raw_moment(0, 1, n);
                    (n, grid.central_moment(1, 1, n, &mu_i, &mu_j))
                })
                .collect();
            let covariance = fit_linear(&c_values, &format!("covariance[{i},{j}]"))?;
            let vi = &variance[i].slope;
            let vj = &variance[j].slope;
            let cs = &covariance.slope;
            let correlation_squared = (cs * cs) / (vi * vj);
            let negative = cs.is_negative();
            let correlation = exact_sqrt(&correlation_squared)
                .map(|root| if negative { -root } else { root });
            pairs.push(PairStats {
                i,
                j,
                covariance,
                correlation_squared,
                correlation,
                negative,
            });
        }
    }

    Ok(MomentReport {
        expectation,
        variance,
        pairs,
        window: (start, end),
        order,
    })
}

/// Wick / Isserlis mixed moment `E[U^p V^q]` of a standard bivariate
/// normal pair with correlation `rho`.
pub fn bivariate_normal_moment(p: u32, q: u32, rho: &BigRational) -> BigRational {
    fn rec(p: i64, q: i64, rho: &BigRational) -> BigRational {
        if p < 0 || q < 0 {
            return BigRational::zero();
        }
        if p == 0 && q == 0 {
            return BigRational::one();
        }
        if p >= 1 {
            let a = BigRational::from_integer(BigInt::from(p - 1)) * rec(p - 2, q, rho);
            let b = rho * BigRational::from_integer(BigInt::from(q)) * rec(p - 1, q - 1, rho);
            a + b
        } else {
            BigRational::from_integer(BigInt::from(q - 1)) * rec(p, q - 2, rho)
        }
    }
    rec(p as i64, q as i64, rho)
}

/// Convergence report of standardized mixed moments toward the
/// bivariate-normal targets.
#[derive(Clone, Debug)]
pub struct NormalityReport {
    pub i: usize,
    pub j: usize,
    pub order: u32,
    pub rho: BigRational,
    pub ladder: Vec<usize>,
    pub entries: Vec<NormalityEntry>,
    pub digits: u32,
}

#[derive(Clone, Debug)]
pub struct NormalityEntry {
    pub p: u32,
    pub q: u32,
    /// Wick target (exact rational).
    pub target: BigRational,
    /// Standardized moment per ladder point, as midpoints of exact
    /// enclosures.
    pub values: Vec<BigRational>,
    /// Absolute gaps `|value - target|`.
    pub gaps: Vec<BigRational>,
}

pub fn normality_check(
    set: &PatternSet,
    i: usize,
    j: usize,
    order: u32,
    ladder: &[usize],
) -> Result<NormalityReport, AnalysisError> {
    let r = set.marker_count();
    if r < 2 || i == j {
        return Err(AnalysisError::NotEnoughPatterns { needed: 2, got: r });
    }
    let report = moments(set, 2, None)?;
    let pair = report
        .pairs
        .iter()
        .find(|p| (p.i, p.j) == (i.min(j), i.max(j)))
        .expect("pair present");
    let rho = pair.rho();

    let joint = joint_gf(set)?;
    let d = derivatives_at_one(&joint.f, r, i, Some(j), order)?;
    let n_max = ladder.iter().copied().max().unwrap_or(0);
    let grid = MomentGrid::new(&d, n_max)?;

    let digits = 12u32;
    let bits = 96u32;
    let mut entries = Vec::new();
    for p in 0..=order {
        for q in 0..=order - p {
            if p + q < 1 {
                continue;
            }
            let target = bivariate_normal_moment(p, q, &rho);
            let mut values = Vec::new();
            let mut gaps = Vec::new();
            for &n in ladder {
                let mu_i = grid.raw_moment(1, 0, n);
                let mu_j = grid.raw_moment(0, 1, n);
                let var_i = grid.central_moment(2, 0, n, &mu_i, &mu_j);
                let var_j = grid.central_moment(0, 2, n, &mu_i, &mu_j);
                let central = grid.central_moment(p, q, n, &mu_i, &mu_j);
                // central / sqrt(var_i^p var_j^q)
                let mut pow = BigRational::one();
                for _ in 0..p {
                    pow *= &var_i;
                }
                for _ in 0..q {
                    pow *= &var_j;
                }
                let denom = sqrt_interval(&pow, bits);
                let value = RatInterval::point(central).div(&denom).midpoint();
                gaps.push((&value - &target).abs());
                values.push(value);
            }
            entries.push(NormalityEntry {
                p,
                q,
                target,
                values,
                gaps,
            });
        }
    }
    Ok(NormalityReport {
        i,
        j,
        order,
        rho,
        ladder: ladder.to_vec(),
        entries,
        digits,
    })
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LinearPolyJson {
    pub slope: String,
    pub intercept: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PairStatsJson {
    pub i: usize,
    pub j: usize,
    pub covariance: LinearPolyJson,
    pub correlation_exact: Option<String>,
    pub correlation: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MomentReportJson {
    pub precision: u32,
    pub window_start: usize,
    pub window_end: usize,
    pub expectation: Vec<LinearPolyJson>,
    pub variance: Vec<LinearPolyJson>,
    pub pairs: Vec<PairStatsJson>,
}

fn linear_json(l: &LinearPoly) -> LinearPolyJson {
    LinearPolyJson {
        slope: rational_string(&l.slope),
        intercept: rational_string(&l.intercept),
    }
}

impl MomentReport {
    pub fn to_json(&self, digits: u32) -> MomentReportJson {
        MomentReportJson {
            precision: digits,
            window_start: self.window.0,
            window_end: self.window.1,
            expectation: self.expectation.iter().map(linear_json).collect(),
            variance: self.variance.iter().map(linear_json).collect(),
            pairs: self
                .pairs
                .iter()
                .map(|p| PairStatsJson {
                    i: p.i,
                    j: p.j,
                    covariance: linear_json(&p.covariance),
                    correlation_exact: p.correlation.as_ref().map(rational_string),
                    correlation: p.correlation_decimal(digits),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NormalityEntryJson {
    pub p: u32,
    pub q: u32,
    pub target: String,
    pub values: Vec<String>,
    pub gaps: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NormalityReportJson {
    pub i: usize,
    pub j: usize,
    pub order: u32,
    pub rho: String,
    pub precision: u32,
    pub ladder: Vec<usize>,
    pub entries: Vec<NormalityEntryJson>,
}

impl NormalityReport {
    pub fn to_json(&self) -> NormalityReportJson {
        NormalityReportJson {
            i: self.i,
            j: self.j,
            order: self.order,
            rho: rational_string(&self.rho),
            precision: self.digits,
            ladder: self.ladder.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| NormalityEntryJson {
                    p: e.p,
                    q: e.q,
                    target: decimal_string(&e.target, self.digits),
                    values: e
                        .values
                        .iter()
                        .map(|v| decimal_string(v, self.digits))
                        .collect(),
                    gaps: e
                        .gaps
                        .iter()
                        .map(|g| decimal_string(g, self.digits))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Composition;

    fn set(patterns: &[&[u32]]) -> PatternSet {
        PatternSet::new(
            patterns
                .iter()
                .map(|p| Composition::new(p.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }
    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn wick_moments() {
        let rho = rat(1, 3);
        assert_eq!(bivariate_normal_moment(1, 1, &rho), rho);
        assert_eq!(bivariate_normal_moment(2, 0, &rho), BigRational::one());
        // (2,2): 1 + 2 rho^2 by pairing enumeration
        assert_eq!(
            bivariate_normal_moment(2, 2, &rat(1, 3)),
            BigRational::one() + rat(2, 9)
        );
        assert_eq!(
            bivariate_normal_moment(4, 0, &rho),
            BigRational::from_integer(3.into())
        );
        for p in 0..=7u32 {
            for q in 0..=(7 - p) {
                if (p + q) % 2 == 1 {
                    assert!(bivariate_normal_moment(p, q, &rho).is_zero());
                }
            }
        }
    }

    #[test]
    fn stirling_and_binomial() {
        assert_eq!(stirling2(4, 2), rat(7, 1));
        assert_eq!(stirling2(5, 3), rat(25, 1));
        assert_eq!(stirling2(3, 0), rat(0, 1));
        assert_eq!(binomial(6, 2), rat(15, 1));
    }

    #[test]
    fn expectation_of_single_small_pattern_matches_oracle() {
        // Ground the derivative machinery against brute force: mean count
        // of [2] occurrences over compositions of n.
        let a = set(&[&[2]]);
        let report = moments(&a, 2, Some((8, 18))).unwrap();
        let grid_check = |n: u32| -> BigRational {
            let m = crate::oracle::oracle_joint_counts(n, &a, 26).unwrap();
            let mut total = BigRational::zero();
            for (occ, count) in m {
                total += rat(occ.0[0] as i64 * count as i64, 1);
            }
            total / rat(1 << (n - 1), 1)
        };
        for n in [9u32, 12, 15] {
            assert_eq!(report.expectation[0].eval(n as usize), grid_check(n));
        }
    }

    #[test]
    fn variance_matches_oracle_for_pair() {
        let a = set(&[&[1, 2], &[2, 1]]);
        let report = moments(&a, 2, Some((8, 18))).unwrap();
        // oracle covariance at n = 12
        let n = 12u32;
        let m = crate::oracle::oracle_joint_counts(n, &a, 26).unwrap();
        let total = rat(1 << (n - 1), 1);
        let mut e1 = BigRational::zero();
        let mut e2 = BigRational::zero();
        let mut e11 = BigRational::zero();
        let mut v1 = BigRational::zero();
        for (occ, count) in &m {
            let c = rat(*count as i64, 1);
            let o1 = rat(occ.0[0] as i64, 1);
            let o2 = rat(occ.0[1] as i64, 1);
            e1 += &o1 * &c;
            e2 += &o2 * &c;
            e11 += &o1 * &o2 * &c;
            v1 += &o1 * &o1 * &c;
        }
        e1 /= &total;
        e2 /= &total;
        e11 /= &total;
        v1 /= &total;
        let cov = &e11 - &e1 * &e2;
        let var = &v1 - &e1 * &e1;
        assert_eq!(report.pairs[0].covariance.eval(n as usize), cov);
        assert_eq!(report.variance[0].eval(n as usize), var);
        assert_eq!(report.expectation[0].eval(n as usize), e1);
        assert_eq!(report.expectation[1].eval(n as usize), e2);
    }
}
