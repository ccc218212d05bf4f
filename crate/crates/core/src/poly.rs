//! Polynomial arithmetic over exact coefficient rings.
//!
//! [`UniPoly`] is a dense polynomial in one variable `t` over any [`Ring`];
//! [`MultiPoly`] is a sparse polynomial over `ℚ` in any number of variables and
//! is itself a [`Ring`], so `UniPoly<MultiPoly>` models `ℚ[x₁,…,x_k][t]`.
//! [`LaurentPolynomial`] carries torus characters with integer exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A commutative ring with exact (partial) division.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other` when the quotient lies in the ring.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    /// JSON form used in serialized polynomials.
    fn to_json(&self) -> serde_json::Value;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        (!Zero::is_zero(other)).then(|| self / other)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

/// Dense univariate polynomial `Σ coeffs[i] tⁱ` with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c·tᵏ`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(C::neg).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `tᵏ`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Divide by `tᵏ` when every coefficient below `tᵏ` vanishes.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Keep the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&C::from_rational(Rational::from_integer(i.into()))))
                .collect(),
        )
    }

    /// Exact quotient `self / other`, or `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let lead = other.leading()?;
        let dv = other.degree().expect("non-zero divisor");
        let mut rem = self.clone();
        let mut quot = vec![C::zero(); self.coeffs.len().saturating_sub(dv)];
        while let Some(dr) = rem.degree() {
            if dr < dv {
                return None;
            }
            let q = rem.coeffs[dr].div_exact(lead)?;
            rem = rem.sub(&other.scale(&q).shift(dr - dv));
            if rem.degree() == Some(dr) {
                return None;
            }
            quot[dr - dv] = q;
        }
        Some(Self::new(quot))
    }

    /// Power series coefficients of `self / den` up to `tⁿ⁻¹`; `den(0)` must be one.
    pub fn series_div(&self, den: &Self, n: usize) -> Vec<C> {
        assert!(den.coeff(0) == C::one(), "denominator must have constant term 1");
        let mut out: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeff(k);
            for j in 1..=k.min(den.coeffs.len().saturating_sub(1)) {
                c = c.sub(&den.coeffs[j].mul(&out[k - j]));
            }
            out.push(c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i.to_string(), c.to_json()))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl UniPoly<Rational> {
    /// Evaluate at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(<Rational as Zero>::zero(), |acc, c| acc * x + c)
    }

    /// Division with remainder over `ℚ`.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        let lead = other.leading().expect("division by the zero polynomial").clone();
        let dv = other.coeffs.len() - 1;
        let mut rem = self.clone();
        let mut quot = vec![<Rational as Zero>::zero(); self.coeffs.len().saturating_sub(dv)];
        while let Some(dr) = rem.degree().filter(|&dr| dr >= dv) {
            let q = &rem.coeffs[dr] / &lead;
            let mut next = rem.coeffs.clone();
            for (j, c) in other.coeffs.iter().enumerate() {
                next[dr - dv + j] -= &q * c;
            }
            next.pop();
            rem = Self::new(next);
            quot[dr - dv] = q;
        }
        (Self::new(quot), rem)
    }

    /// Greatest common divisor normalized to constant term one when that term
    /// is non-zero, and monic otherwise.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        let norm = if !Zero::is_zero(&a.coeff(0)) {
            a.coeff(0)
        } else {
            a.leading().cloned().unwrap_or_else(<Rational as One>::one)
        };
        a.scale(&norm.recip())
    }
}

impl<C: Ring> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over `ℚ`. Exponent vectors never carry
/// trailing zeros, so `x₁` is `[1]` whatever the number of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        Self::term(Vec::new(), c)
    }

    /// `c·x^e`
    pub fn term(exponents: Vec<u32>, c: Rational) -> Self {
        let mut out = MultiPoly::default();
        out.add_term(exponents, c);
        out
    }

    /// The variable `x_i` (zero-based).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::term(e, <Rational as One>::one())
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        let key = trim(exponents);
        let entry = self.terms.entry(key.clone()).or_insert_with(<Rational as Zero>::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&key);
        }
    }

    /// Number of variables actually occurring.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(c.clone(), |acc, (i, &k)| acc * num_traits::pow(point[i].clone(), k as usize))
            })
            .sum()
    }

    /// Display with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = names.get(i).map_or_else(|| format!("x{}", i + 1), |n| n.to_string());
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let (neg, abs) = (c.is_negative(), c.abs());
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (vars.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&vars.join("*")),
                (false, false) => out.push_str(&format!("{abs}*{}", vars.join("*"))),
            }
        }
        out
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }
    fn one() -> Self {
        MultiPoly::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(add_exponents(ea, eb), ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    /// Division by lexicographic leading terms.
    fn div_exact(&self, other: &Self) -> Option<Self> {
        let (lead_e, lead_c) = other.terms.last_key_value()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::default();
        while let Some((e, c)) = rem.terms.last_key_value() {
            if e.len() < lead_e.len() {
                return None;
            }
            let mut q_e = Vec::with_capacity(e.len());
            for (i, &k) in e.iter().enumerate() {
                let l = lead_e.get(i).copied().unwrap_or(0);
                q_e.push(k.checked_sub(l)?);
            }
            let q = MultiPoly::term(q_e, c / lead_c);
            rem = rem.sub(&q.mul(other));
            quot = quot.add(&q);
        }
        Some(quot)
    }
    fn from_rational(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
    fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let key = if e.is_empty() {
                    "0".to_string()
                } else {
                    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                };
                (key, serde_json::Value::String(c.to_string()))
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

/// Laurent polynomial in `d` torus coordinates `α₁,…,α_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exponents: Vec<i64>, c: Rational) -> Self {
        let mut out = Self::zero(exponents.len());
        out.add_term(exponents, c);
        out
    }

    /// `α_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, <Rational as One>::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, c: Rational) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector of the wrong length");
        if Zero::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_insert_with(<Rational as Zero>::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&exponents);
        }
    }

    /// Substitute `α_i ↦ α_i⁻¹`, the complex conjugate on the compact torus.
    pub fn conjugate(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|k| -k).collect(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, <Rational as One>::one()), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self + &-other
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&-<Rational as One>::one())
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, other.nvars, "Laurent polynomials over different tori");
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}
