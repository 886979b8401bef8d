//! Power-series coefficient extraction from rational functions.
//!
//! Coefficients come from the linear recurrence induced by the denominator:
//! with `f = p/q` and `q = q_0 + q_1 x + ...`, the series `a` satisfies
//! `q_0 a(n) = p_n - sum_{i>=1} q_i a(n-i)`. Everything is exact.

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{Poly, Var};
use crate::ratfun::{RatFun, RatFunError};

/// A series prefix `a(0..=N)` of a univariate rational function in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub coefficients: Vec<BigRational>,
}

impl SeriesPrefix {
    pub fn coefficient(&self, n: usize) -> &BigRational {
        &self.coefficients[n]
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The coefficients as integers, if they all are.
    pub fn integers(&self) -> Option<Vec<num_bigint::BigInt>> {
        self.coefficients
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Some(c.numer().clone())
                } else {
                    None
                }
            })
            .collect()
    }
}

/// First `n_max + 1` Maclaurin coefficients of a univariate rational
/// function in `x`.
pub fn series_coefficients(f: &RatFun, n_max: usize) -> Result<SeriesPrefix, RatFunError> {
    let num = f
        .num()
        .to_univariate(Var::X)
        .ok_or(RatFunError::PoleAtOrigin)?;
    let den = f
        .den()
        .to_univariate(Var::X)
        .ok_or(RatFunError::PoleAtOrigin)?;
    let q0 = den.first().cloned().unwrap_or_else(BigRational::zero);
    if q0.is_zero() {
        return Err(RatFunError::PoleAtOrigin);
    }
    let mut coefficients = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = num.get(n).cloned().unwrap_or_else(BigRational::zero);
        for i in 1..=n.min(den.len() - 1) {
            if !den[i].is_zero() {
                acc -= &den[i] * &coefficients[n - i];
            }
        }
        coefficients.push(acc / &q0);
    }
    Ok(SeriesPrefix { coefficients })
}

/// Series in `x` of a rational function whose other variables are markers;
/// coefficients are polynomials in the markers.
///
/// The denominator's `x`-free part must divide every recurrence step
/// exactly (it always does when `f` really is a power series in `x` with
/// polynomial coefficients).
pub fn marker_series(f: &RatFun, n_max: usize) -> Result<Vec<Poly>, RatFunError> {
    let split = |p: &Poly| -> Vec<Poly> {
        // p = sum_k x^k * piece_k(markers)
        let deg = p.degree(Var::X) as usize;
        let mut pieces = vec![Poly::zero(); deg + 1];
        let vars = p.vars().to_vec();
        let xi = vars.iter().position(|&v| v == Var::X);
        for (exps, coef) in p.terms() {
            let k = xi.map(|i| exps[i] as usize).unwrap_or(0);
            let factors: Vec<(Var, u32)> = vars
                .iter()
                .enumerate()
                .filter(|&(i, &v)| v != Var::X && exps[i] > 0)
                .map(|(i, &v)| (v, exps[i]))
                .collect();
            pieces[k] = pieces[k].add(&Poly::monomial(coef.clone(), &factors));
        }
        pieces
    };
    let num = split(f.num());
    let den = split(f.den());
    let q0 = den[0].clone();
    if q0.is_zero() {
        return Err(RatFunError::PoleAtOrigin);
    }
    let mut out: Vec<Poly> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = num.get(n).cloned().unwrap_or_else(Poly::zero);
        for i in 1..=n.min(den.len() - 1) {
            if !den[i].is_zero() {
                acc = acc.sub(&den[i].mul(&out[n - i]));
            }
        }
        let c = acc.exact_div(&q0).ok_or(RatFunError::InexactSeriesStep)?;
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x() -> Poly {
        Poly::variable(Var::X)
    }
    fn int(c: i64) -> Poly {
        Poly::constant_i64(c)
    }
    fn ints(s: &SeriesPrefix) -> Vec<i64> {
        s.integers()
            .unwrap()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn power_of_two_series() {
        // (1-x)/(1-2x): 1, 1, 2, 4, 8, 16, ...
        let f = RatFun::new(
            int(1).sub(&x()),
            int(1).sub(&x().scale(&BigRational::from_integer(2.into()))),
        )
        .unwrap();
        let s = series_coefficients(&f, 5).unwrap();
        assert_eq!(ints(&s), vec![1, 1, 2, 4, 8, 16]);
        let long = series_coefficients(&f, 40).unwrap();
        for n in 1..=40usize {
            assert_eq!(
                long.coefficient(n),
                &BigRational::from_integer(BigInt::from(1u64) << (n - 1))
            );
        }
    }

    #[test]
    fn fibonacci_series() {
        let f = RatFun::new(int(1), int(1).sub(&x()).sub(&x().pow(2))).unwrap();
        let s = series_coefficients(&f, 6).unwrap();
        assert_eq!(ints(&s), vec![1, 1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn geometric_tail() {
        let f = RatFun::new(x(), int(1).sub(&x())).unwrap();
        let s = series_coefficients(&f, 3).unwrap();
        assert_eq!(ints(&s), vec![0, 1, 1, 1]);
    }

    #[test]
    fn pole_at_origin_rejected() {
        let f = RatFun::new(int(1), x().add(&x().pow(2))).unwrap();
        assert!(matches!(
            series_coefficients(&f, 3),
            Err(RatFunError::PoleAtOrigin)
        ));
    }

    #[test]
    fn marker_series_matches_scalar() {
        // 1/(1 - (X+1) x): coefficient of x^n is (X+1)^n
        let xx = Poly::variable(Var::Marker(0));
        let f = RatFun::new(int(1), int(1).sub(&x().mul(&xx.add(&int(1))))).unwrap();
        let cs = marker_series(&f, 4).unwrap();
        assert_eq!(cs[0], int(1));
        assert_eq!(cs[3], xx.add(&int(1)).pow(3));
    }

    #[test]
    fn cauchy_product_consistency() {
        // series(f*g) equals the Cauchy product of series(f), series(g).
        let f = RatFun::new(int(2).add(&x()), int(1).sub(&x()).sub(&x().pow(3))).unwrap();
        let g = RatFun::new(int(1).sub(&x().pow(2)), int(3).add(&x())).unwrap();
        let n = 12;
        let sf = series_coefficients(&f, n).unwrap();
        let sg = series_coefficients(&g, n).unwrap();
        let sfg = series_coefficients(&f.mul(&g), n).unwrap();
        for k in 0..=n {
            let mut acc = BigRational::zero();
            for i in 0..=k {
                acc += sf.coefficient(i) * sg.coefficient(k - i);
            }
            assert_eq!(&acc, sfg.coefficient(k));
        }
    }
}
