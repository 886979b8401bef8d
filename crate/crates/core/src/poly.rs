//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Variables are drawn from the fixed universe `{x, t, X1, X2, ...}`. Each
//! polynomial stores only the variables it actually uses; exponent vectors
//! are aligned to that list and terms live in a `BTreeMap`, so term order
//! (ascending lexicographic on exponents) is canonical: equal polynomials
//! are structurally equal and render identically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponent vector, aligned to a polynomial's variable list.
pub type Exponents = SmallVec<[u32; 4]>;

/// A symbol from the variable universe.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// The series variable `x` (marks size).
    X,
    /// The auxiliary cluster-width variable `t`.
    T,
    /// Occurrence marker `X_{i+1}` for pattern `i`.
    Marker(u8),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::T => write!(f, "t"),
            Var::Marker(i) => write!(f, "X{}", i + 1),
        }
    }
}

/// Render a rational without a trailing `/1`.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the output of [`rational_string`].
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    vars: Vec<Var>,
    terms: BTreeMap<Exponents, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::new(), c);
        }
        Poly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn constant_i64(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn variable(v: Var) -> Self {
        Poly::monomial(BigRational::one(), &[(v, 1)])
    }

    /// Build `c * prod v_i^{e_i}`. Repeated variables have exponents added.
    pub fn monomial(c: BigRational, vars_exps: &[(Var, u32)]) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut sorted: Vec<(Var, u32)> = Vec::new();
        for &(v, e) in vars_exps {
            if e == 0 {
                continue;
            }
            match sorted.iter_mut().find(|(w, _)| *w == v) {
                Some((_, old)) => *old += e,
                None => sorted.push((v, e)),
            }
        }
        sorted.sort_by_key(|&(v, _)| v);
        let vars: Vec<Var> = sorted.iter().map(|&(v, _)| v).collect();
        let exps: Exponents = sorted.iter().map(|&(_, e)| e).collect();
        let mut terms = BTreeMap::new();
        terms.insert(exps, c);
        Poly { vars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant()
            && self
                .terms
                .values()
                .next()
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty() && self.terms.len() <= 1
    }

    /// The constant value, if this polynomial is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.vars.contains(&v)
    }

    pub fn degree(&self, v: Var) -> u32 {
        match self.vars.iter().position(|&w| w == v) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficient of the least monomial in the canonical order.
    pub fn lowest_coef(&self) -> Option<&BigRational> {
        self.terms.values().next()
    }

    /// Drop variables that no longer occur with positive exponent.
    fn trim(&mut self) {
        if self.vars.is_empty() {
            return;
        }
        let n = self.vars.len();
        let mut used = vec![false; n];
        for exps in self.terms.keys() {
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        self.vars = keep.iter().map(|&i| self.vars[i]).collect();
        let old = std::mem::take(&mut self.terms);
        for (exps, c) in old {
            let slim: Exponents = keep.iter().map(|&i| exps[i]).collect();
            self.terms.insert(slim, c);
        }
    }

    /// Re-express `terms` (aligned to `old`) over the superset `new`.
    fn remap(
        terms: &BTreeMap<Exponents, BigRational>,
        old: &[Var],
        new: &[Var],
    ) -> BTreeMap<Exponents, BigRational> {
        if old == new {
            return terms.clone();
        }
        let idx: Vec<Option<usize>> = new
            .iter()
            .map(|v| old.iter().position(|w| w == v))
            .collect();
        terms
            .iter()
            .map(|(exps, c)| {
                let wide: Exponents = idx
                    .iter()
                    .map(|oi| oi.map(|i| exps[i]).unwrap_or(0))
                    .collect();
                (wide, c.clone())
            })
            .collect()
    }

    fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let vars = Poly::union_vars(&self.vars, &other.vars);
        let mut terms = Poly::remap(&self.terms, &self.vars, &vars);
        for (exps, c) in Poly::remap(&other.terms, &other.vars, &vars) {
            match terms.entry(exps) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        let mut p = Poly { vars, terms };
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let vars = Poly::union_vars(&self.vars, &other.vars);
        let a = Poly::remap(&self.terms, &self.vars, &vars);
        let b = Poly::remap(&other.terms, &other.vars, &vars);
        let mut terms: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let exps: Exponents = ea.iter().zip(eb.iter()).map(|(&p, &q)| p + q).collect();
                let prod = ca * cb;
                match terms.entry(exps) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        let mut p = Poly { vars, terms };
        p.trim();
        p
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn diff(&self, v: Var) -> Poly {
        let Some(i) = self.vars.iter().position(|&w| w == v) else {
            return Poly::zero();
        };
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let e = exps[i];
            if e == 0 {
                continue;
            }
            let mut d = exps.clone();
            d[i] = e - 1;
            terms.insert(d, c * BigRational::from_integer(BigInt::from(e)));
        }
        let mut p = Poly {
            vars: self.vars.clone(),
            terms,
        };
        p.trim();
        p
    }

    /// Replace `v` by the polynomial `g`.
    pub fn substitute(&self, v: Var, g: &Poly) -> Poly {
        let Some(i) = self.vars.iter().position(|&w| w == v) else {
            return self.clone();
        };
        let max_e = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(Poly::one());
        for _ in 0..max_e {
            powers.push(powers.last().unwrap().mul(g));
        }
        let mut acc = Poly::zero();
        for (exps, c) in &self.terms {
            let mut rest = exps.clone();
            let e = rest[i];
            rest[i] = 0;
            let mono = Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            acc = acc.add(&mono.mul(&powers[e as usize]));
        }
        acc
    }

    /// Largest `c > 0` with `self / c` an integer polynomial of content 1.
    /// Returns zero for the zero polynomial.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Componentwise minimum exponent vector (the common monomial factor).
    pub fn min_exponents(&self) -> Vec<(Var, u32)> {
        if self.is_zero() {
            return Vec::new();
        }
        let n = self.vars.len();
        let mut mins = vec![u32::MAX; n];
        for exps in self.terms.keys() {
            for (i, &e) in exps.iter().enumerate() {
                mins[i] = mins[i].min(e);
            }
        }
        self.vars
            .iter()
            .zip(mins)
            .filter(|&(_, m)| m > 0)
            .map(|(&v, m)| (v, m))
            .collect()
    }

    /// Divide by the monomial `prod v_i^{e_i}`; exponents must not exceed
    /// the minimum exponents.
    pub fn div_monomial(&self, factors: &[(Var, u32)]) -> Poly {
        let mut terms = BTreeMap::new();
        for (exps, c) in &self.terms {
            let mut d = exps.clone();
            for &(v, e) in factors {
                if e == 0 {
                    continue;
                }
                let i = self
                    .vars
                    .iter()
                    .position(|&w| w == v)
                    .unwrap_or_else(|| panic!("div_monomial: variable {v} absent"));
                assert!(d[i] >= e, "div_monomial: exponent underflow");
                d[i] -= e;
            }
            terms.insert(d, c.clone());
        }
        let mut p = Poly {
            vars: self.vars.clone(),
            terms,
        };
        p.trim();
        p
    }

    /// Exact division: returns `self / d` if the division leaves no
    /// remainder, else `None`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        // All exponent vectors below stay aligned to this fixed list.
        let vars = Poly::union_vars(&self.vars, &d.vars);
        let mut rem = Poly::remap(&self.terms, &self.vars, &vars);
        let dterms = Poly::remap(&d.terms, &d.vars, &vars);
        let (dl_exps, dl_coef) = dterms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quo_terms: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        while let Some((r_exps, r_coef)) = rem
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            // Leading term of the remainder must be divisible by lt(d).
            let mut q_exps = Exponents::new();
            for (&re, &de) in r_exps.iter().zip(dl_exps.iter()) {
                if re < de {
                    return None;
                }
                q_exps.push(re - de);
            }
            let q_coef = &r_coef / &dl_coef;
            for (de, dc) in &dterms {
                let sum: Exponents = q_exps.iter().zip(de.iter()).map(|(&a, &b)| a + b).collect();
                match rem.entry(sum) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-(&q_coef * dc));
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= &q_coef * dc;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quo_terms.insert(q_exps, q_coef);
        }
        let mut q = Poly {
            vars,
            terms: quo_terms,
        };
        q.trim();
        Some(q)
    }

    /// Dense coefficient vector if this polynomial involves at most the
    /// single variable `v`.
    pub fn to_univariate(&self, v: Var) -> Option<Vec<BigRational>> {
        if !(self.vars.is_empty() || self.vars == [v]) {
            return None;
        }
        if self.is_zero() {
            return Some(vec![]);
        }
        if self.vars.is_empty() {
            return Some(vec![self.terms.values().next().unwrap().clone()]);
        }
        let deg = self.degree(v) as usize;
        let mut out = vec![BigRational::zero(); deg + 1];
        for (exps, c) in &self.terms {
            out[exps[0] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(v: Var, coeffs: &[BigRational]) -> Poly {
        let mut acc = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Poly::monomial(c.clone(), &[(v, e as u32)]));
            }
        }
        acc
    }

    /// Evaluate a univariate (or constant) polynomial at a rational point.
    pub fn eval_univariate(&self, v: Var, at: &BigRational) -> BigRational {
        let coeffs = self
            .to_univariate(v)
            .expect("eval_univariate: polynomial is not univariate");
        horner(&coeffs, at)
    }

    /// Terms with exponent vectors re-aligned to a variable superset.
    pub fn terms_aligned(&self, universe: &[Var]) -> Vec<(Exponents, BigRational)> {
        Poly::remap(&self.terms, &self.vars, universe)
            .into_iter()
            .collect()
    }
}

pub fn horner(coeffs: &[BigRational], at: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * at + c;
    }
    acc
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (exps, coef)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(exps.iter())
                .filter(|&(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            let abs = coef.abs();
            if i == 0 {
                if coef.is_negative() {
                    write!(f, "-")?;
                }
            } else if coef.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{}", rational_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rational_string(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Primitive integer form of a univariate rational-coefficient polynomial:
/// content stripped, leading coefficient positive.
fn primitive_int(coeffs: &[BigRational]) -> Vec<BigInt> {
    let poly = Poly::from_univariate(Var::X, coeffs);
    let content = poly.content();
    if content.is_zero() {
        return vec![];
    }
    let mut out: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            let q = c / &content;
            debug_assert!(q.denom().is_one());
            q.numer().clone()
        })
        .collect();
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    if out.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in &mut out {
            *c = -c.clone();
        }
    }
    out
}

fn int_content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

/// Pseudo-remainder of integer polynomials: `lc(b)^(da-db+1) * a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lc_b = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lc_b;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lead * bc;
        }
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

/// GCD of two univariate polynomials over the rationals, returned as a
/// primitive integer polynomial with positive leading coefficient.
/// Uses a primitive pseudo-remainder sequence to hold coefficient growth.
pub fn gcd_univariate(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut p = primitive_int(a);
    let mut q = primitive_int(b);
    if p.is_empty() {
        return q.into_iter().map(BigRational::from_integer).collect();
    }
    if q.is_empty() {
        return p.into_iter().map(BigRational::from_integer).collect();
    }
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let mut r = pseudo_rem(&p, &q);
        if !r.is_empty() {
            let c = int_content(&r);
            for x in &mut r {
                *x /= &c;
            }
            if r.last().unwrap().is_negative() {
                for x in &mut r {
                    *x = -x.clone();
                }
            }
        }
        p = q;
        q = r;
    }
    p.into_iter().map(BigRational::from_integer).collect()
}
