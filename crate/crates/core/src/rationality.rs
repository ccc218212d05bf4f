//! Rational generating series: multinomial sums, torus constant terms and
//! reconstruction of a rational function from a truncated series.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::partition::factorial;
use crate::poly::{LaurentPolynomial, MultiPoly, Ring, UniPoly};
use crate::{Error, Rational, Result};

/// `num / den` with `den(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<C> {
    num: UniPoly<C>,
    den: UniPoly<C>,
}

impl<C: Ring> RationalFunction<C> {
    /// Build `num / den`, scaling so that `den(0) = 1`. Fails when `den(0)` is
    /// zero or not invertible in the coefficient ring.
    pub fn new(num: UniPoly<C>, den: UniPoly<C>) -> Result<Self> {
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::Argument("denominator must not vanish at t = 0".into()));
        }
        if c0 == C::one() {
            return Ok(RationalFunction { num, den });
        }
        let inv = C::one()
            .div_exact(&c0)
            .ok_or_else(|| Error::Argument(format!("denominator constant term {c0} is not a unit")))?;
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn polynomial(num: UniPoly<C>) -> Self {
        RationalFunction { num, den: UniPoly::one() }
    }

    pub fn numerator(&self) -> &UniPoly<C> {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly<C> {
        &self.den
    }

    /// The first `n` power series coefficients.
    pub fn expand(&self, n: usize) -> Vec<C> {
        self.num.series_div(&self.den, n)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFunction { num: self.num.add(&other.num), den: self.den.clone() };
        }
        RationalFunction { num: self.num.mul(&other.den).add(&other.num.mul(&self.den)), den: self.den.mul(&other.den) }
    }

    pub fn scale(&self, c: &C) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &UniPoly<C>) -> Self {
        RationalFunction { num: self.num.mul(p), den: self.den.clone() }
    }

    /// `t·d/dt`.
    pub fn theta(&self) -> Self {
        let num = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative())).shift(1);
        RationalFunction { num, den: self.den.mul(&self.den) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }
}

impl RationalFunction<Rational> {
    /// Cancel the common factors of numerator and denominator.
    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return RationalFunction { num: UniPoly::zero(), den: UniPoly::one() };
        }
        let g = self.num.gcd(&self.den);
        let num = self.num.div_exact(&g).expect("gcd divides numerator");
        let den = self.den.div_exact(&g).expect("gcd divides denominator");
        RationalFunction::new(num, den).expect("reduced denominator keeps a non-zero constant term")
    }

    /// The integers `a` with `(1 − a t)` dividing the denominator, with
    /// multiplicity, provided the denominator factors completely this way over
    /// `1 ≤ a ≤ max`; `None` otherwise.
    pub fn pole_factors(&self, max: i64) -> Option<Vec<i64>> {
        let mut den = self.den.clone();
        let mut out = Vec::new();
        for a in 1..=max {
            let factor = UniPoly::new(vec![<Rational as One>::one(), Rational::from_integer((-a).into())]);
            while let Some(q) = den.div_exact(&factor) {
                den = q;
                out.push(a);
            }
        }
        (den == UniPoly::one()).then_some(out)
    }
}

impl<C: Ring> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl<C: Ring> Serialize for RationalFunction<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// `Σ_{k ∈ ℕ^d} p(k) C_{k+e} t^{|k|}` as an exact rational function, where
/// `C_m` is the multinomial coefficient `|m|!/Π m_i!` and vanishes when some
/// `m_i < 0`. Variable `x_i` of `p` stands for `k_i`.
pub fn multinomial_sum_rational(p: &MultiPoly, e: &[i64], d: usize) -> Result<RationalFunction<Rational>> {
    if d == 0 {
        return Err(Error::Argument("multinomial sums need d ≥ 1".into()));
    }
    if e.len() != d {
        return Err(Error::Argument(format!("shift vector has length {}, expected {d}", e.len())));
    }
    if p.num_vars() > d {
        return Err(Error::Argument(format!("polynomial uses {} variables, only {d} available", p.num_vars())));
    }
    let mut ctx = SumContext::default();
    let mut total = PoleForm::zero();
    for (a, c) in p.terms() {
        let mut a = a.clone();
        a.resize(d, 0);
        total = total.add(&ctx.sum(&a, 0, e)?.scale(c));
    }
    Ok(total.cancel().into_rational_function())
}

/// `num / Π_a (1 − a t)^{poles[a]}`. Every intermediate sum has this shape, so
/// sums and `t·d/dt` never need polynomial gcds.
#[derive(Clone, Debug)]
struct PoleForm {
    num: UniPoly<Rational>,
    poles: BTreeMap<i64, u32>,
}

fn pole_factor(a: i64) -> UniPoly<Rational> {
    UniPoly::new(vec![<Rational as One>::one(), Rational::from_integer((-a).into())])
}

impl PoleForm {
    fn zero() -> Self {
        PoleForm { num: UniPoly::zero(), poles: BTreeMap::new() }
    }

    fn scale(&self, c: &Rational) -> Self {
        PoleForm { num: self.num.scale(c), poles: self.poles.clone() }
    }

    fn mul_poly(&self, p: &UniPoly<Rational>) -> Self {
        PoleForm { num: self.num.mul(p), poles: self.poles.clone() }
    }

    fn add(&self, other: &Self) -> Self {
        let mut poles = self.poles.clone();
        for (&a, &k) in &other.poles {
            let e = poles.entry(a).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |x: &PoleForm| {
            poles.iter().fold(x.num.clone(), |acc, (&a, &k)| {
                let missing = k - x.poles.get(&a).copied().unwrap_or(0);
                (0..missing).fold(acc, |acc, _| acc.mul(&pole_factor(a)))
            })
        };
        let num = lift(self).add(&lift(other));
        PoleForm { num, poles }
    }

    /// `t·d/dt`, using `D'/D = Σ_a −a·k_a / (1 − a t)`.
    fn theta(&self) -> Self {
        let all: UniPoly<Rational> = self.poles.keys().fold(UniPoly::one(), |acc, &a| acc.mul(&pole_factor(a)));
        let mut num = self.num.derivative().mul(&all);
        for (&a, &k) in &self.poles {
            let others =
                self.poles.keys().filter(|&&b| b != a).fold(UniPoly::one(), |acc, &b| acc.mul(&pole_factor(b)));
            num = num.add(&self.num.mul(&others).scale(&Rational::from_integer((a * k as i64).into())));
        }
        let poles = self.poles.iter().map(|(&a, &k)| (a, k + 1)).collect();
        PoleForm { num: num.shift(1), poles }
    }

    /// Divide out the pole factors that also divide the numerator.
    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            return PoleForm::zero();
        }
        for (&a, k) in self.poles.iter_mut() {
            while *k > 0 {
                let Some(q) = self.num.div_exact(&pole_factor(a)) else { break };
                self.num = q;
                *k -= 1;
            }
        }
        self.poles.retain(|_, k| *k > 0);
        self
    }

    fn into_rational_function(self) -> RationalFunction<Rational> {
        let den =
            self.poles.iter().fold(UniPoly::one(), |acc, (&a, &k)| (0..k).fold(acc, |acc, _| acc.mul(&pole_factor(a))));
        RationalFunction { num: self.num, den }
    }
}

#[derive(Default)]
struct SumContext {
    memo: HashMap<(Vec<u32>, u32, Vec<i64>), PoleForm>,
    boundary: HashMap<Vec<u32>, PoleForm>,
}

impl SumContext {
    /// `Σ_k |k|^b k^a C_{k+e} t^{|k|}`.
    fn sum(&mut self, a: &[u32], b: u32, e: &[i64]) -> Result<PoleForm> {
        let key = (a.to_vec(), b, e.to_vec());
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        let out = match a.iter().position(|&x| x > 0) {
            None => {
                let mut r = self.shifted_base(e)?;
                for _ in 0..b {
                    r = r.theta().cancel();
                }
                r
            }
            Some(i) => {
                // k_i C_{k+e} = (|k| + |e|) C_{k+e-e_i} − e_i C_{k+e}
                let mut lower = a.to_vec();
                lower[i] -= 1;
                let mut e_down = e.to_vec();
                e_down[i] -= 1;
                let abs_e: i64 = e.iter().sum();
                let first = self.sum(&lower, b + 1, &e_down)?;
                let second = self.sum(&lower, b, &e_down)?.scale(&Rational::from_integer(abs_e.into()));
                let third = self.sum(&lower, b, e)?.scale(&Rational::from_integer((-e[i]).into()));
                first.add(&second).add(&third).cancel()
            }
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// `Σ_k C_{k+e} t^{|k|} = t^{-|e|} Σ_{m ≥ e⁺} C_m t^{|m|}`.
    fn shifted_base(&mut self, e: &[i64]) -> Result<PoleForm> {
        let f: Vec<u32> = e.iter().map(|&x| x.max(0) as u32).collect();
        let h = self.boundary_sum(&f);
        let abs_e: i64 = e.iter().sum();
        if abs_e <= 0 {
            return Ok(h.mul_poly(&UniPoly::monomial(<Rational as One>::one(), (-abs_e) as usize)));
        }
        let num = h
            .num
            .unshift(abs_e as usize)
            .ok_or_else(|| Error::Consistency(format!("boundary sum for shift {e:?} is not divisible by t^{abs_e}")))?;
        Ok(PoleForm { num, poles: h.poles })
    }

    /// `H(f) = Σ_{m ≥ f} C_m t^{|m|}` over `m ∈ ℕ^{len f}`.
    fn boundary_sum(&mut self, f: &[u32]) -> PoleForm {
        if let Some(r) = self.boundary.get(f) {
            return r.clone();
        }
        let d = f.len() as i64;
        let out = match f.iter().position(|&x| x > 0) {
            None if d == 0 => PoleForm { num: UniPoly::one(), poles: BTreeMap::new() },
            None => PoleForm { num: UniPoly::one(), poles: BTreeMap::from([(d, 1)]) },
            Some(i) => {
                // Remove the layers m_i = j < f_i; each contributes
                // (t^j / j!) Π_{m=1..j} (θ + m) applied to the sum over the other coordinates.
                let mut relaxed = f.to_vec();
                relaxed[i] = 0;
                let mut out = self.boundary_sum(&relaxed);
                let rest: Vec<u32> = f.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
                let inner = self.boundary_sum(&rest);
                for j in 0..f[i] {
                    let mut layer = inner.clone();
                    for m in 1..=j {
                        layer = layer.theta().add(&layer.scale(&Rational::from_integer(m.into()))).cancel();
                    }
                    let c = Rational::new(1.into(), factorial(j).into());
                    out = out.add(&layer.mul_poly(&UniPoly::monomial(-c, j as usize)));
                }
                out.cancel()
            }
        };
        self.boundary.insert(f.to_vec(), out.clone());
        out
    }
}

/// Coefficient of the trivial character.
pub fn torus_constant_term(x: &LaurentPolynomial) -> Rational {
    x.terms().get(&vec![0; x.nvars()]).cloned().unwrap_or_else(<Rational as Zero>::zero)
}

/// Formal Weyl integration of a torus-equivariant series over `GL_d`:
/// coefficient `n` of the result is
/// `(1/d!) CT[ torus_coeffs[n] · |Δ(α)|² · (Σ ᾱ_i)^ℓ ]` with `ℓ = n · n_factor_degree`,
/// the only power of `Σ ᾱ_i` that can meet a homogeneous coefficient of that degree.
pub fn weyl_series(d: usize, torus_coeffs: &[LaurentPolynomial], n_factor_degree: u32) -> Result<Vec<Rational>> {
    if d == 0 {
        return Err(Error::Argument("the torus needs d ≥ 1".into()));
    }
    if let Some(bad) = torus_coeffs.iter().find(|c| c.nvars() != d) {
        return Err(Error::Argument(format!("torus coefficient in {} variables, expected {d}", bad.nvars())));
    }
    let mut delta = LaurentPolynomial::constant(d, <Rational as One>::one());
    for i in 0..d {
        for j in i + 1..d {
            delta = &delta * &(&LaurentPolynomial::var(d, i) - &LaurentPolynomial::var(d, j));
        }
    }
    let weight = &delta * &delta.conjugate();
    let dual_sum = (0..d).fold(LaurentPolynomial::zero(d), |acc, i| &acc + &LaurentPolynomial::var(d, i)).conjugate();
    let norm = Rational::new(1.into(), factorial(d as u32).into());
    Ok(torus_coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let ell = n as u32 * n_factor_degree;
            torus_constant_term(&(&(c * &weight) * &dual_sum.pow(ell))) * &norm
        })
        .collect())
}

/// Complete homogeneous polynomials `h_0, …, h_{n−1}` in `d` torus coordinates,
/// the `tⁿ` coefficients of `Π_i 1/(1 − α_i t)`.
pub fn complete_homogeneous(d: usize, n: usize) -> Vec<LaurentPolynomial> {
    let mut out = Vec::with_capacity(n);
    let mut current = vec![LaurentPolynomial::constant(d, <Rational as One>::one())];
    // h_k(α_1..α_i) = h_k(α_1..α_{i-1}) + α_i h_{k-1}(α_1..α_i), built row by row in k.
    for k in 0..n {
        if k == 0 {
            out.push(current[0].clone());
            continue;
        }
        let mut next = Vec::with_capacity(d);
        let mut acc = LaurentPolynomial::zero(d);
        for i in 0..d {
            let prev_k = &current[i.min(current.len() - 1)];
            acc = &acc + &(&LaurentPolynomial::var(d, i) * prev_k);
            next.push(acc.clone());
        }
        out.push(next[d - 1].clone());
        current = next;
    }
    out
}

/// Smallest-denominator rational function matching `coeffs`.
///
/// Denominator degrees `b = 0, 1, …, max_den_degree` are tried in turn, and
/// for each `b` numerator degrees `a` in increasing order while at least one
/// coefficient is left over to test the fit (`a + b ≤ len − 2`). The returned
/// `p/q` has `q(0) = 1`, `deg q ≤ b`, `deg p ≤ a` and expands to `coeffs`
/// exactly. Returns `Ok(None)` when no such pair exists.
pub fn rational_reconstruct<C: Ring>(coeffs: &[C], max_den_degree: usize) -> Result<Option<RationalFunction<C>>> {
    let len = coeffs.len();
    if len < 2 * max_den_degree + 2 {
        return Err(Error::Argument(format!(
            "reconstruction with denominator degree ≤ {max_den_degree} needs at least {} coefficients, got {len}",
            2 * max_den_degree + 2
        )));
    }
    let f = |k: isize| if k < 0 { C::zero() } else { coeffs[k as usize].clone() };
    for b in 0..=max_den_degree {
        for a in 0..=(len - 2 - b) {
            // Σ_{j=1..b} q_j f_{k−j} = −f_k for k = a+1 … len−1
            let rows: Vec<Vec<C>> = (a + 1..len)
                .map(|k| {
                    let mut row: Vec<C> = (1..=b).map(|j| f(k as isize - j as isize)).collect();
                    row.push(f(k as isize).neg());
                    row
                })
                .collect();
            let Some(q_tail) = solve_exact(rows, b) else { continue };
            let mut q = vec![C::one()];
            q.extend(q_tail);
            let den = UniPoly::new(q);
            let num = UniPoly::new(coeffs.to_vec()).mul(&den).truncate(a + 1);
            let candidate = RationalFunction { num, den };
            if candidate.expand(len) == coeffs {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}

/// Solve an augmented system `[A | y]` with `cols` unknowns by fraction-free
/// (Bareiss) elimination. Free unknowns are set to zero. `None` when the
/// system is inconsistent or the solution leaves the coefficient ring.
fn solve_exact<C: Ring>(mut m: Vec<Vec<C>>, cols: usize) -> Option<Vec<C>> {
    let mut pivots = Vec::new();
    let mut prev = C::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        for i in r + 1..m.len() {
            for k in c + 1..=cols {
                let v = m[r][c].mul(&m[i][k]).sub(&m[i][c].mul(&m[r][k]));
                m[i][k] = v.div_exact(&prev)?;
            }
            m[i][c] = C::zero();
        }
        // Columns before c in the rows below are already zero.
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![C::zero(); cols];
    for &(row, c) in pivots.iter().rev() {
        let mut rhs = m[row][cols].clone();
        for k in c + 1..cols {
            rhs = rhs.sub(&m[row][k].mul(&x[k]));
        }
        x[c] = rhs.div_exact(&m[row][c])?;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn q(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&x| rat_int(x)).collect())
    }

    #[test]
    fn sumlem_examples() {
        let one = MultiPoly::constant(rat_int(1));
        let r = multinomial_sum_rational(&one, &[0], 1).unwrap();
        assert_eq!((r.numerator().clone(), r.denominator().clone()), (q(&[1]), q(&[1, -1])));
        let r = multinomial_sum_rational(&one, &[0, 0], 2).unwrap();
        assert_eq!((r.numerator().clone(), r.denominator().clone()), (q(&[1]), q(&[1, -2])));
        let r = multinomial_sum_rational(&MultiPoly::var(0), &[0], 1).unwrap();
        assert_eq!((r.numerator().clone(), r.denominator().clone()), (q(&[0, 1]), q(&[1, -2, 1])));
    }

    #[test]
    fn constant_term_examples() {
        assert_eq!(torus_constant_term(&LaurentPolynomial::constant(2, rat_int(1))), rat_int(1));
        assert_eq!(torus_constant_term(&LaurentPolynomial::monomial(vec![1, -1], rat_int(1))), rat_int(0));
        let d = &LaurentPolynomial::var(2, 0) - &LaurentPolynomial::var(2, 1);
        assert_eq!(torus_constant_term(&(&d * &d.conjugate())), rat_int(2));
    }

    #[test]
    fn weyl_examples() {
        for d in 1..=3 {
            let series = weyl_series(d, &complete_homogeneous(d, 5), 1).unwrap();
            assert_eq!(series, vec![rat_int(1); 5], "d = {d}");
        }
        let trivial = vec![LaurentPolynomial::constant(1, rat_int(1)), LaurentPolynomial::zero(1)];
        assert_eq!(weyl_series(1, &trivial, 1).unwrap(), vec![rat_int(1), rat_int(0)]);
    }

    #[test]
    fn reconstruct_examples() {
        let ones = vec![rat_int(1); 6];
        let r = rational_reconstruct(&ones, 1).unwrap().unwrap();
        assert_eq!((r.numerator().clone(), r.denominator().clone()), (q(&[1]), q(&[1, -1])));
        let fib: Vec<Rational> = [1, 1, 2, 3, 5, 8, 13, 21].map(rat_int).to_vec();
        let r = rational_reconstruct(&fib, 2).unwrap().unwrap();
        assert_eq!((r.numerator().clone(), r.denominator().clone()), (q(&[1]), q(&[1, -1, -1])));
        assert!(rational_reconstruct(&fib, 4).is_err());
        let noise: Vec<Rational> = [1, 0, 0, 1, 5, 7].map(rat_int).to_vec();
        assert!(rational_reconstruct(&noise, 1).unwrap().is_none());
    }

    #[test]
    fn reduction_and_poles() {
        let r = RationalFunction::new(q(&[1, -1]), q(&[1, -3, 2])).unwrap().reduced();
        assert_eq!(r.denominator(), &q(&[1, -2]));
        assert_eq!(r.pole_factors(3), Some(vec![2]));
        let scaled = RationalFunction::new(q(&[2]), q(&[2, 1])).unwrap();
        assert_eq!(scaled.denominator(), &UniPoly::new(vec![rat_int(1), rat(1, 2)]));
        assert!(RationalFunction::new(q(&[1]), q(&[0, 1])).is_err());
    }
}
