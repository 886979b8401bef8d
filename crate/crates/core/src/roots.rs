//! Real root isolation for univariate polynomials, exact all the way down.
//!
//! The smallest positive root in `(0, 1]` is what asymptotics needs: the
//! dominant singularity of a generating function. Roots are located with a
//! Sturm chain on the square-free part and refined by bisection; every sign
//! decision is an exact integer computation (polynomials are evaluated in
//! homogenized form, so no rational division is involved).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{pow2_neg, RatInterval};
use crate::poly::{gcd_univariate, Poly, Var};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial must not vanish at 0")]
    ZeroAtOrigin,
    #[error("polynomial is not univariate in x")]
    NotUnivariate,
    #[error("no root in (0, 1]")]
    NoRootInUnitInterval,
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Plain division remainder over the rationals.
fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r.last().unwrap() / lc;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            r[shift + i] -= delta;
        }
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
    }
    r
}

/// Primitive integer image preserving sign (divides by positive content).
fn primitive_signed(p: &[BigRational]) -> Vec<BigInt> {
    let poly = Poly::from_univariate(Var::X, p);
    let content = poly.content();
    if content.is_zero() {
        return vec![];
    }
    p.iter()
        .map(|c| {
            let q = c / &content;
            debug_assert!(q.denom().is_one());
            q.numer().clone()
        })
        .collect()
}

/// Sign of `p(n/d)` for an integer polynomial, via homogenized evaluation;
/// requires `d > 0`.
fn sign_at(p: &[BigInt], n: &BigInt, d: &BigInt) -> i8 {
    let deg = p.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    let mut n_pow = BigInt::one();
    // d^(deg-i) built from the top down.
    let mut d_pows = Vec::with_capacity(deg + 1);
    let mut dp = BigInt::one();
    for _ in 0..=deg {
        d_pows.push(dp.clone());
        dp *= d;
    }
    for (i, c) in p.iter().enumerate() {
        acc += c * &n_pow * &d_pows[deg - i];
        n_pow *= n;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

struct SturmChain {
    chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    fn new(square_free: &[BigRational]) -> Self {
        let mut chain: Vec<Vec<BigInt>> = Vec::new();
        let p0 = primitive_signed(square_free);
        let p1 = primitive_signed(&derivative(square_free));
        chain.push(p0);
        if !p1.is_empty() {
            chain.push(p1);
        }
        loop {
            let k = chain.len();
            if k < 2 || chain[k - 1].is_empty() || chain[k - 1].len() == 1 {
                break;
            }
            let a: Vec<BigRational> = chain[k - 2]
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            let b: Vec<BigRational> = chain[k - 1]
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            let rem = poly_rem(&a, &b);
            if rem.is_empty() {
                break;
            }
            let negated: Vec<BigRational> = rem.into_iter().map(|c| -c).collect();
            chain.push(primitive_signed(&negated));
        }
        SturmChain { chain }
    }

    fn variations_at(&self, point: &BigRational) -> usize {
        let n = point.numer();
        let d = point.denom();
        let mut count = 0;
        let mut last: i8 = 0;
        for p in &self.chain {
            let s = if p.is_empty() { 0 } else { sign_at(p, n, d) };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`;
    /// `a` must not be a root.
    fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

fn eval_rational(p: &[BigRational], at: &BigRational) -> BigRational {
    crate::poly::horner(p, at)
}

/// Square-free part `p / gcd(p, p')`, primitive with positive leading
/// coefficient.
pub fn square_free_part(p: &[BigRational]) -> Vec<BigRational> {
    let g = gcd_univariate(p, &derivative(p));
    if g.len() <= 1 {
        let prim = primitive_signed(p);
        let flip = prim.last().map(|c| c.is_negative()).unwrap_or(false);
        return prim
            .into_iter()
            .map(|c| BigRational::from_integer(if flip { -c } else { c }))
            .collect();
    }
    let pp = Poly::from_univariate(Var::X, p);
    let gp = Poly::from_univariate(Var::X, &g);
    let q = pp.exact_div(&gp).expect("gcd divides");
    let qd = q.to_univariate(Var::X).unwrap();
    let prim = primitive_signed(&qd);
    let flip = prim.last().map(|c| c.is_negative()).unwrap_or(false);
    prim.into_iter()
        .map(|c| BigRational::from_integer(if flip { -c } else { c }))
        .collect()
}

/// Isolate the smallest root of `p` in `(0, 1]` to an enclosure of width at
/// most `2^-precision_bits`.
///
/// An exact rational root yields a point interval; otherwise the returned
/// endpoints bracket a sign change of the square-free part.
pub fn smallest_positive_real_root(
    p: &Poly,
    precision_bits: u32,
) -> Result<RatInterval, RootError> {
    let dense = p.to_univariate(Var::X).ok_or(RootError::NotUnivariate)?;
    if dense.is_empty() {
        return Err(RootError::ZeroPolynomial);
    }
    if dense[0].is_zero() {
        return Err(RootError::ZeroAtOrigin);
    }
    let mut s = square_free_part(&dense);
    let one = BigRational::one();
    let zero = BigRational::zero();

    // A root exactly at 1 is common (subexponential growth); peel it off so
    // interval endpoints stay non-roots.
    let mut root_at_one = false;
    if eval_rational(&s, &one).is_zero() {
        root_at_one = true;
        let sp = Poly::from_univariate(Var::X, &s);
        let lin = Poly::variable(Var::X).sub(&Poly::one());
        s = sp
            .exact_div(&lin)
            .expect("simple root at 1 divides")
            .to_univariate(Var::X)
            .unwrap();
    }

    let chain = SturmChain::new(&s);
    if chain.count_half_open(&zero, &one) == 0 {
        return if root_at_one {
            Ok(RatInterval::point(one))
        } else {
            Err(RootError::NoRootInUnitInterval)
        };
    }

    // Bisect toward the smallest root in (0, 1). Invariants: s_work has no
    // root in (0, lo], s_work(lo) != 0, s_work(hi) != 0, and at least one
    // root lies in (lo, hi).
    let tol = pow2_neg(precision_bits);
    let mut s_work = s;
    let mut chain = chain;
    let mut lo = zero;
    let mut hi = one;
    loop {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if eval_rational(&s_work, &mid).is_zero() {
            // count includes the root at mid itself ((lo, mid] is
            // half-open), so anything beyond 1 lies strictly below.
            if chain.count_half_open(&lo, &mid) == 1 {
                return Ok(RatInterval::point(mid));
            }
            // A smaller root exists; deflate the exact root at mid and
            // continue on the left part.
            let sp = Poly::from_univariate(Var::X, &s_work);
            let lin = Poly::from_univariate(Var::X, &[-mid.clone(), BigRational::one()]);
            s_work = sp
                .exact_div(&lin)
                .expect("exact root divides")
                .to_univariate(Var::X)
                .unwrap();
            chain = SturmChain::new(&s_work);
            hi = mid;
            continue;
        }
        if chain.count_half_open(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
        if &hi - &lo <= tol && chain.count_half_open(&lo, &hi) == 1 {
            return Ok(RatInterval::new(lo, hi));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational_from_decimal;

    fn poly(coeffs: &[i64]) -> Poly {
        let v: Vec<BigRational> = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        Poly::from_univariate(Var::X, &v)
    }

    #[test]
    fn golden_ratio_reciprocal() {
        // 1 - x - x^2: smallest positive root 1/phi = 0.6180339887...
        let iv = smallest_positive_real_root(&poly(&[1, -1, -1]), 80).unwrap();
        let target = rational_from_decimal("0.61803398874989484820").unwrap();
        assert!(iv.contains(&target));
        assert!(iv.width() <= pow2_neg(80));
    }

    #[test]
    fn exact_half() {
        let iv = smallest_positive_real_root(&poly(&[1, -2]), 30).unwrap();
        assert!(iv.is_point());
        assert_eq!(iv.lo, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn root_exactly_at_one() {
        // (1 - x)(2 - x): only root in (0,1] is 1.
        let iv = smallest_positive_real_root(&poly(&[2, -3, 1]), 30).unwrap();
        assert!(iv.is_point());
        assert_eq!(iv.lo, BigRational::one());
    }

    #[test]
    fn double_root_handled_by_square_free() {
        // (1 - 2x)^2 (1 + x)
        let iv = smallest_positive_real_root(&poly(&[1, -3, 0, 4]), 40).unwrap();
        assert!(iv.is_point());
        assert_eq!(iv.lo, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn picks_smallest_of_two() {
        // (1 - 3x)(1 - 2x) has roots 1/3 < 1/2.
        let iv = smallest_positive_real_root(&poly(&[1, -5, 6]), 60).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert!(iv.contains(&third) || (iv.is_point() && iv.lo == third));
    }

    #[test]
    fn error_cases() {
        assert_eq!(
            smallest_positive_real_root(&poly(&[2, -1]), 30),
            Err(RootError::NoRootInUnitInterval)
        );
        assert_eq!(
            smallest_positive_real_root(&poly(&[0, 1]), 30),
            Err(RootError::ZeroAtOrigin)
        );
        assert_eq!(
            smallest_positive_real_root(&Poly::zero(), 30),
            Err(RootError::ZeroPolynomial)
        );
    }

    #[test]
    fn bracket_invariant() {
        // Irrational root: endpoints must straddle a sign change.
        let p = poly(&[1, -1, -1, -1]); // 1 - x - x^2 - x^3
        let iv = smallest_positive_real_root(&p, 50).unwrap();
        assert!(!iv.is_point());
        let s = square_free_part(&p.to_univariate(Var::X).unwrap());
        let at_lo = eval_rational(&s, &iv.lo);
        let at_hi = eval_rational(&s, &iv.hi);
        assert!(at_lo.is_positive() != at_hi.is_positive());
    }
}
