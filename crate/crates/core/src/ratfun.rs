//! Rational functions: ratios of sparse multivariate polynomials.
//!
//! Normal form keeps num and den jointly integer with content 1, common
//! monomial factors removed, and the denominator's lowest-order coefficient
//! positive. No multivariate GCD is attempted; equality is decided by
//! cross-multiplication. Purely univariate fractions in `x` are additionally
//! reduced by polynomial GCD, which keeps printed generating functions in
//! lowest terms.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{gcd_univariate, parse_rational, rational_string, Poly, Var};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RatFunError {
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("substitution produced an identically zero denominator")]
    SingularSubstitution,
    #[error("series expansion needs a nonzero denominator constant term")]
    PoleAtOrigin,
    #[error("series recurrence hit a non-exact division (denominator constant term does not divide)")]
    InexactSeriesStep,
}

/// A quotient of polynomials in normal form.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, RatFunError> {
        if den.is_zero() {
            return Err(RatFunError::DivisionByZero);
        }
        let mut f = RatFun { num, den };
        f.normalize();
        Ok(f)
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFun {
            num,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut f = RatFun::from_poly(Poly::constant(c));
        f.normalize();
        f
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vars = self.num.vars().to_vec();
        for &v in self.den.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort();
        vars
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "normalize: zero denominator");
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        // Common monomial factor.
        let num_min = self.num.min_exponents();
        let den_min = self.den.min_exponents();
        let common: Vec<(Var, u32)> = num_min
            .iter()
            .filter_map(|&(v, e)| {
                den_min
                    .iter()
                    .find(|&&(w, _)| w == v)
                    .map(|&(_, f)| (v, e.min(f)))
            })
            .collect();
        if !common.is_empty() {
            self.num = self.num.div_monomial(&common);
            self.den = self.den.div_monomial(&common);
        }
        // Univariate reduction in x.
        let x_only = |p: &Poly| p.vars().is_empty() || p.vars() == [Var::X];
        if x_only(&self.num) && x_only(&self.den) {
            let a = self.num.to_univariate(Var::X).unwrap();
            let b = self.den.to_univariate(Var::X).unwrap();
            let g = gcd_univariate(&a, &b);
            if g.len() > 1 {
                let gp = Poly::from_univariate(Var::X, &g);
                self.num = self.num.exact_div(&gp).expect("gcd divides numerator");
                self.den = self.den.exact_div(&gp).expect("gcd divides denominator");
            }
        }
        // Joint integer content.
        let cn = self.num.content();
        let cd = self.den.content();
        let joint = BigRational::new(cn.numer().gcd(cd.numer()), cn.denom().lcm(cd.denom()));
        let inv = BigRational::one() / joint;
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
        // Positive lowest denominator coefficient.
        if self
            .den
            .lowest_coef()
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        let mut f = RatFun { num, den };
        f.normalize();
        f
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        let mut f = RatFun {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        };
        f.normalize();
        f
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, RatFunError> {
        if other.is_zero() {
            return Err(RatFunError::DivisionByZero);
        }
        let mut f = RatFun {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        };
        f.normalize();
        Ok(f)
    }

    pub fn inverse(&self) -> Result<RatFun, RatFunError> {
        RatFun::one().div(self)
    }

    pub fn scale(&self, c: &BigRational) -> RatFun {
        let mut f = RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        f.normalize();
        f
    }

    /// Quotient-rule derivative.
    pub fn differentiate(&self, v: Var) -> RatFun {
        let num = self
            .num
            .diff(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.diff(v)));
        let den = self.den.mul(&self.den);
        let mut f = RatFun { num, den };
        f.normalize();
        f
    }

    /// Replace `v` by the rational function `g`, clearing denominators with
    /// the common power `den(g)^d` where `d` is the larger `v`-degree.
    pub fn substitute(&self, v: Var, g: &RatFun) -> Result<RatFun, RatFunError> {
        if !self.num.uses_var(v) && !self.den.uses_var(v) {
            return Ok(self.clone());
        }
        let d = self.num.degree(v).max(self.den.degree(v));
        let clear = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            let vars = p.vars().to_vec();
            let vi = vars.iter().position(|&w| w == v);
            for (exps, coef) in p.terms() {
                let e = vi.map(|i| exps[i]).unwrap_or(0);
                let mut mono_factors: Vec<(Var, u32)> = Vec::new();
                for (j, &w) in vars.iter().enumerate() {
                    if w != v && exps[j] > 0 {
                        mono_factors.push((w, exps[j]));
                    }
                }
                let mono = Poly::monomial(coef.clone(), &mono_factors);
                let term = mono
                    .mul(&g.num.pow(e))
                    .mul(&g.den.pow(d - e));
                acc = acc.add(&term);
            }
            acc
        };
        let num = clear(&self.num);
        let den = clear(&self.den);
        if den.is_zero() {
            return Err(RatFunError::SingularSubstitution);
        }
        let mut f = RatFun { num, den };
        f.normalize();
        Ok(f)
    }

    /// Algebraic equality by cross-multiplication.
    pub fn equals(&self, other: &RatFun) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Evaluate a univariate fraction at a rational point; `None` on a pole.
    pub fn eval_univariate(&self, v: Var, at: &BigRational) -> Option<BigRational> {
        let den = self.den.eval_univariate(v, at);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval_univariate(v, at) / den)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// JSON form of a rational function: shared variable list, term lists with
/// exponent vectors aligned to it, coefficients as exact rational strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RatFunJson {
    pub vars: Vec<String>,
    pub num: Vec<TermJson>,
    pub den: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl RatFun {
    pub fn to_json(&self) -> RatFunJson {
        let vars = self.vars();
        let render = |p: &Poly| -> Vec<TermJson> {
            p.terms_aligned(&vars)
                .into_iter()
                .map(|(exps, coef)| TermJson {
                    exp: exps.to_vec(),
                    coef: rational_string(&coef),
                })
                .collect()
        };
        RatFunJson {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            num: render(&self.num),
            den: render(&self.den),
        }
    }

    pub fn from_json(json: &RatFunJson) -> Option<RatFun> {
        let vars: Vec<Var> = json
            .vars
            .iter()
            .map(|s| match s.as_str() {
                "x" => Some(Var::X),
                "t" => Some(Var::T),
                m => {
                    let idx: u8 = m.strip_prefix('X')?.parse().ok()?;
                    Some(Var::Marker(idx.checked_sub(1)?))
                }
            })
            .collect::<Option<_>>()?;
        let build = |terms: &[TermJson]| -> Option<Poly> {
            let mut acc = Poly::zero();
            for t in terms {
                if t.exp.len() != vars.len() {
                    return None;
                }
                let factors: Vec<(Var, u32)> =
                    vars.iter().copied().zip(t.exp.iter().copied()).collect();
                acc = acc.add(&Poly::monomial(parse_rational(&t.coef)?, &factors));
            }
            Some(acc)
        };
        RatFun::new(build(&json.num)?, build(&json.den)?).ok()
    }
}
