//! Truncated series in commuting variables `X_λ`, one per partition.
//!
//! A monomial `X_{λ1}⋯X_{λn}` is a multiset of partitions; its *order* is `n`.
//! A symmetric function `x = Σ a_λ s_λ` enters a series as the linear form
//! `Σ a_λ X_λ`, so `exp(x) = Σ_n x^n / n!`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::{character_table, class_data, kronecker_coefficient};
use crate::partition::{factorial, partitions_of};
use crate::schur::{prime_element, SymFunc};
use crate::{parse_rational, rat, rat_int, Error, Partition, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Largest order kept.
    pub max_order: usize,
    /// Monomials containing a partition larger than this are discarded.
    pub max_part_size: u32,
}

impl TruncationPolicy {
    pub const fn new(max_order: usize, max_part_size: u32) -> Self {
        TruncationPolicy { max_order, max_part_size }
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { max_order: 5, max_part_size: 6 }
    }
}

/// A sorted multiset of partitions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<Partition>);

impl Monomial {
    pub fn new(mut vars: Vec<Partition>) -> Self {
        vars.sort();
        Monomial(vars)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn vars(&self) -> &[Partition] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// The common size of all partitions; `None` for the constant monomial and
    /// for monomials mixing sizes.
    pub fn degree(&self) -> Option<u32> {
        let first = self.0.first()?.size();
        self.0.iter().all(|l| l.size() == first).then_some(first)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i].clone());
                i += 1;
            } else {
                v.push(other.0[j].clone());
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        Monomial(v)
    }

    /// Product of the factorials of the multiplicities of the distinct variables.
    pub fn symmetry_factor(&self) -> u128 {
        let mut f = 1u128;
        let mut i = 0;
        while i < self.0.len() {
            let run = self.0[i..].iter().take_while(|l| **l == self.0[i]).count();
            f *= (1..=run as u128).product::<u128>();
            i += run;
        }
        f
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let run = self.0[i..].iter().take_while(|l| **l == self.0[i]).count();
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "X{}", self.0[i])?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSeries {
    policy: TruncationPolicy,
    terms: BTreeMap<Monomial, Rational>,
}

impl DeltaSeries {
    pub fn zero(policy: TruncationPolicy) -> Self {
        DeltaSeries { policy, terms: BTreeMap::new() }
    }

    pub fn one(policy: TruncationPolicy) -> Self {
        Self::monomial(policy, Monomial::one(), Rational::one())
    }

    pub fn monomial(policy: TruncationPolicy, m: Monomial, c: Rational) -> Self {
        let mut s = Self::zero(policy);
        s.add_term(m, c);
        s
    }

    pub fn variable(policy: TruncationPolicy, lambda: Partition) -> Self {
        Self::monomial(policy, Monomial(vec![lambda]), Rational::one())
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn admits(&self, m: &Monomial) -> bool {
        m.order() <= self.policy.max_order && m.0.iter().all(|l| l.size() <= self.policy.max_part_size)
    }

    /// Add `c·m`, silently dropping monomials outside the truncation.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || !self.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The linear form `Σ a_λ X_λ` of a symmetric function with no constant term.
    pub fn linear(policy: TruncationPolicy, x: &SymFunc) -> Result<Self> {
        if !x.coeff(&Partition::empty()).is_zero() {
            return Err(Error::Argument(format!("series argument {x} has a non-zero constant term")));
        }
        let mut s = Self::zero(policy);
        for (l, c) in x.terms() {
            s.add_term(Monomial(vec![l.clone()]), c.clone());
        }
        Ok(s)
    }

    pub fn add(&self, other: &DeltaSeries) -> Result<DeltaSeries> {
        self.check_policy(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DeltaSeries) -> Result<DeltaSeries> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> DeltaSeries {
        let mut out = Self::zero(self.policy);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    fn check_policy(&self, other: &DeltaSeries) -> Result<()> {
        if self.policy != other.policy {
            return Err(Error::Argument(format!(
                "truncation policies differ: {:?} vs {:?}",
                self.policy, other.policy
            )));
        }
        Ok(())
    }

    /// Formal commutative product, re-truncated.
    pub fn mul(&self, other: &DeltaSeries) -> Result<DeltaSeries> {
        self.check_policy(other)?;
        let mut out = Self::zero(self.policy);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.order() + mb.order() > self.policy.max_order {
                    continue;
                }
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Result<DeltaSeries> {
        if !self.coeff(&Monomial::one()).is_zero() {
            return Err(Error::Argument("exponential of a series with non-zero constant term".into()));
        }
        let mut out = Self::one(self.policy);
        let mut power = Self::one(self.policy);
        for n in 1..=self.policy.max_order {
            power = power.mul(self)?.scale(&rat(1, n as i64));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// The order-`n` component.
    pub fn order_component(&self, n: usize) -> DeltaSeries {
        self.filter(|m| m.order() == n)
    }

    /// Monomials whose partitions all have size `d`.
    pub fn degree_component(&self, d: u32) -> DeltaSeries {
        self.filter(|m| m.degree() == Some(d))
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> DeltaSeries {
        DeltaSeries {
            policy: self.policy,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Same terms, regardless of the truncation policy.
    pub fn same_terms(&self, other: &DeltaSeries) -> bool {
        self.terms == other.terms
    }

    /// Re-truncate under a tighter (or equal) policy.
    pub fn truncate(&self, policy: TruncationPolicy) -> DeltaSeries {
        let mut out = Self::zero(policy);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Multiply the order-`n` component by `n!`, turning `f` into `f*`.
    pub fn order_normalize(&self) -> DeltaSeries {
        let mut out = Self::zero(self.policy);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * Rational::from_integer(factorial(m.order() as u32).into()));
        }
        out
    }

    /// Inverse of [`order_normalize`](Self::order_normalize).
    pub fn order_denormalize(&self) -> DeltaSeries {
        let mut out = Self::zero(self.policy);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c / Rational::from_integer(factorial(m.order() as u32).into()));
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("series serializes")
    }

    /// Parse the JSON form produced by [`to_json_value`](Self::to_json_value).
    pub fn from_json_value(policy: TruncationPolicy, v: &serde_json::Value) -> Result<DeltaSeries> {
        #[derive(Deserialize)]
        struct Term {
            monomial: Vec<Partition>,
            coeff: String,
        }
        #[derive(Deserialize)]
        struct Doc {
            terms: Vec<Term>,
        }
        let doc: Doc =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("invalid series JSON: {e}")))?;
        let mut out = Self::zero(policy);
        for t in doc.terms {
            out.add_term(Monomial::new(t.monomial), parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

impl Serialize for DeltaSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            monomial: &'a [Partition],
            coeff: String,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            terms: Vec<Term<'a>>,
        }
        let terms = self.terms.iter().map(|(m, c)| Term { monomial: &m.0, coeff: c.to_string() }).collect();
        Doc { terms }.serialize(serializer)
    }
}

impl fmt::Display for DeltaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m}")?;
        }
        Ok(())
    }
}

/// `Σ_i c_i exp(x_i)`, each exponential expanded to the policy's order.
pub fn exp_combination(terms: &[(Rational, SymFunc)], policy: TruncationPolicy) -> Result<DeltaSeries> {
    let mut out = DeltaSeries::zero(policy);
    for (c, x) in terms {
        out = out.add(&DeltaSeries::linear(policy, x)?.exp()?.scale(c))?;
    }
    Ok(out)
}

/// Degree-`k` slice of the Euler characteristic `Σ_p (-1)^p f_p`:
///
/// `χ^(k) = Σ_{p=0}^{k} (-1)^p/p! Σ_{λ⊢p} #c_λ sgn(c_λ) exp(s_(k-p) ⊠ s′_λ)`, and `χ^(0) = 1`.
pub fn euler_chi(k: u32, policy: TruncationPolicy) -> Result<DeltaSeries> {
    if k == 0 {
        return Ok(DeltaSeries::one(policy));
    }
    let mut terms = Vec::new();
    for p in 0..=k {
        let row = SymFunc::schur(Partition::row(k - p));
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let p_fact = Rational::from_integer(factorial(p).into());
        for lam in partitions_of(p, None) {
            let cd = class_data(&lam);
            let coeff = Rational::from_integer((cd.class_size as i128 * cd.sign as i128 * sign).into()) / &p_fact;
            terms.push((coeff, row.boxtimes(&prime_element(&lam)?)));
        }
    }
    exp_combination(&terms, policy)
}

/// The syzygy series `f_p` for `p ∈ {1,2,3}`, identified with `±χ^(p+1)`.
pub fn f_segre(p: u32, policy: TruncationPolicy) -> Result<DeltaSeries> {
    match p {
        1 | 3 => Ok(euler_chi(p + 1, policy)?.scale(&rat_int(-1))),
        2 => euler_chi(3, policy),
        _ => Err(Error::Unsupported(format!(
            "f_p is only available for p in {{1,2,3}}, got p={p}; beyond that the syzygies leave a single degree"
        ))),
    }
}

/// The degree-5 part of `f_4`, which equals `χ^(5)`.
pub fn f4_degree5(policy: TruncationPolicy) -> Result<DeltaSeries> {
    euler_chi(5, policy)
}

/// `[S_λ(W)] = (1/p!) Σ_{μ⊢p} #c_μ χ_λ(c_μ) exp(s′_μ)` for `W` the tensor product of all factors.
pub fn schur_of_w_closed(lambda: &Partition, policy: TruncationPolicy) -> Result<DeltaSeries> {
    let p = lambda.size();
    if p == 0 {
        return Err(Error::Argument("schur_of_w needs a non-empty partition".into()));
    }
    let table = character_table(p)?;
    let p_fact = Rational::from_integer(factorial(p).into());
    let row = &table.values[table.index_of(lambda).expect("indexed")];
    let terms = table
        .partitions
        .iter()
        .zip(&table.classes)
        .zip(row)
        .filter(|(_, &chi)| chi != 0)
        .map(|((mu, cd), &chi)| {
            let c = Rational::from_integer((cd.class_size as i128 * chi as i128).into()) / &p_fact;
            Ok((c, prime_element(mu)?))
        })
        .collect::<Result<Vec<_>>>()?;
    exp_combination(&terms, policy)
}

/// The same series built from `s_{λ,n} = (1/n) Σ_{μ,ν} C_{λμν} X_μ s_{ν,n-1}`
/// with `s_{ν,0} = δ_{ν,(p)}`.
pub fn schur_of_w_recurrence(lambda: &Partition, policy: TruncationPolicy) -> Result<DeltaSeries> {
    let p = lambda.size();
    if p == 0 {
        return Err(Error::Argument("schur_of_w needs a non-empty partition".into()));
    }
    let parts = partitions_of(p, None);
    let mut kron = vec![vec![vec![0u64; parts.len()]; parts.len()]; parts.len()];
    for (a, la) in parts.iter().enumerate() {
        for (b, lb) in parts.iter().enumerate() {
            for (c, lc) in parts.iter().enumerate() {
                kron[a][b][c] = kronecker_coefficient(la, lb, lc)?;
            }
        }
    }
    let mut current: Vec<DeltaSeries> = parts
        .iter()
        .map(|l| if *l == Partition::row(p) { DeltaSeries::one(policy) } else { DeltaSeries::zero(policy) })
        .collect();
    let target = parts.iter().position(|l| l == lambda).expect("indexed");
    let mut total = current[target].clone();
    for n in 1..=policy.max_order {
        let mut next = Vec::with_capacity(parts.len());
        for kron_a in &kron {
            let mut acc = DeltaSeries::zero(policy);
            for (b, lb) in parts.iter().enumerate() {
                let x = DeltaSeries::variable(policy, lb.clone());
                for (c, prev) in current.iter().enumerate() {
                    let k = kron_a[b][c];
                    if k == 0 || prev.is_zero() {
                        continue;
                    }
                    acc = acc.add(&x.mul(prev)?.scale(&rat_int(k as i64)))?;
                }
            }
            next.push(acc.scale(&rat(1, n as i64)));
        }
        current = next;
        total = total.add(&current[target])?;
    }
    Ok(total)
}

/// Leading (order two) term of `f_p` in degree `d = p + h`, from the rectangle
/// construction: zero unless `1 ≤ h` and `h² ≤ p`, otherwise
/// `½ Σ X_μ X_ν` over pairs `(α, β)` with `α` of at most `h` columns, `β` of at
/// most `h` rows and `|α| + |β| = p − h²`.
pub fn lascoux_leading(p: u32, d: u32) -> DeltaSeries {
    let policy = TruncationPolicy::new(2, d);
    let mut out = DeltaSeries::zero(policy);
    if d <= p {
        return out;
    }
    let h = d - p;
    if h * h > p {
        return out;
    }
    let rest = p - h * h;
    for a_size in 0..=rest {
        let alphas: Vec<Partition> = partitions_of(a_size, None).into_iter().filter(|a| a.part(0) <= h).collect();
        let betas = partitions_of(rest - a_size, Some(h as usize));
        for alpha in &alphas {
            for beta in &betas {
                let (mu, nu) = lascoux_pair(h, alpha, beta);
                out.add_term(Monomial::new(vec![mu, nu]), rat(1, 2));
            }
        }
    }
    out
}

fn lascoux_pair(h: u32, alpha: &Partition, beta: &Partition) -> (Partition, Partition) {
    let rows = h as usize + 1;
    let mut mu: Vec<u32> = (0..rows).map(|i| h + beta.part(i)).collect();
    mu.extend_from_slice(alpha.parts());
    let alpha_t = alpha.conjugate();
    let mut nu: Vec<u32> = (0..rows).map(|i| h + alpha_t.part(i)).collect();
    nu.extend_from_slice(beta.conjugate().parts());
    (
        Partition::new(mu).expect("rectangle with appended parts is a partition"),
        Partition::new(nu).expect("rectangle with appended parts is a partition"),
    )
}

/// The closed exponential forms of `f_1`, `f_2`, `f_3` as `(coefficient, argument)` pairs.
pub fn closed_exponential_form(p: u32) -> Result<Vec<(Rational, SymFunc)>> {
    let s = |parts: &[u32]| SymFunc::schur(Partition::new(parts.to_vec()).expect("valid partition"));
    let lin =
        |coeffs: &[(i64, &SymFunc)]| coeffs.iter().fold(SymFunc::zero(), |acc, (c, x)| &acc + &x.scale(&rat_int(*c)));
    match p {
        1 => {
            let (s2, w) = (s(&[2]), s(&[1, 1]));
            Ok(vec![(rat(1, 2), lin(&[(1, &s2), (1, &w)])), (rat(1, 2), lin(&[(1, &s2), (-1, &w)])), (rat(-1, 1), s2)])
        }
        2 => {
            let (s3, w, t) = (s(&[3]), s(&[1, 1, 1]), s(&[2, 1]));
            Ok(vec![
                (rat(1, 3), lin(&[(1, &s3), (1, &w), (2, &t)])),
                (rat(-1, 3), lin(&[(1, &s3), (1, &w), (-1, &t)])),
                (rat(-1, 1), lin(&[(1, &s3), (1, &t)])),
                (rat(1, 1), s3),
            ])
        }
        3 => {
            let (s4, w, a, b, c) = (s(&[4]), s(&[1, 1, 1, 1]), s(&[3, 1]), s(&[2, 2]), s(&[2, 1, 1]));
            Ok(vec![
                (rat(1, 8), lin(&[(1, &s4), (1, &w), (3, &a), (2, &b), (3, &c)])),
                (rat(-1, 8), lin(&[(1, &s4), (1, &w), (-1, &a), (2, &b), (-1, &c)])),
                (rat(1, 4), lin(&[(1, &s4), (-1, &w), (-1, &a), (1, &c)])),
                (rat(-1, 4), lin(&[(1, &s4), (-1, &w), (1, &a), (-1, &c)])),
                (rat(1, 2), lin(&[(1, &s4), (1, &b), (-1, &c)])),
                (rat(-1, 2), lin(&[(1, &s4), (2, &a), (1, &b), (1, &c)])),
                (rat(1, 1), lin(&[(1, &s4), (1, &a)])),
                (rat(-1, 1), s4),
            ])
        }
        _ => Err(Error::Unsupported(format!("closed forms exist for p in {{1,2,3}}, got p={p}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn mono(parts: &[&[u32]]) -> Monomial {
        Monomial::new(parts.iter().map(|x| p(x)).collect())
    }

    fn series(policy: TruncationPolicy, terms: &[(&[&[u32]], Rational)]) -> DeltaSeries {
        let mut s = DeltaSeries::zero(policy);
        for (m, c) in terms {
            s.add_term(mono(m), c.clone());
        }
        s
    }

    const POL: TruncationPolicy = TruncationPolicy::new(5, 6);

    #[test]
    fn product_examples() {
        let a = DeltaSeries::variable(POL, p(&[2]));
        let b = DeltaSeries::variable(POL, p(&[1, 1]));
        assert!(a.mul(&b).unwrap().same_terms(&series(POL, &[(&[&[2], &[1, 1]], rat(1, 1))])));
        assert_eq!(DeltaSeries::one(POL).mul(&a).unwrap(), a);
        let one_plus = DeltaSeries::one(POL).add(&a).unwrap();
        let sq = one_plus.mul(&one_plus).unwrap();
        let expected = series(POL, &[(&[], rat(1, 1)), (&[&[2]], rat(2, 1)), (&[&[2], &[2]], rat(1, 1))]);
        assert_eq!(sq, expected);
        assert!(a.mul(&DeltaSeries::one(TruncationPolicy::new(3, 6))).is_err());
    }

    #[test]
    fn product_respects_truncation() {
        let pol = TruncationPolicy::new(2, 2);
        let a = DeltaSeries::variable(pol, p(&[2]));
        assert!(a.mul(&a).unwrap().mul(&a).unwrap().is_zero());
        assert!(DeltaSeries::variable(pol, p(&[3])).is_zero());
    }

    #[test]
    fn exp_examples() {
        let e = exp_combination(&[(rat(1, 1), SymFunc::schur(p(&[2])))], POL).unwrap();
        for n in 0..=5usize {
            let m = Monomial::new(vec![p(&[2]); n]);
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(e.coeff(&m), rat(1, fact));
        }
        assert_eq!(e.terms().len(), 6);
        let one = exp_combination(&[(rat(1, 1), SymFunc::zero())], POL).unwrap();
        assert_eq!(one, DeltaSeries::one(POL));
        assert!(exp_combination(&[(rat(1, 1), SymFunc::one())], POL).is_err());
    }

    #[test]
    fn exp_combination_gives_g1() {
        let (s, w) = (SymFunc::schur(p(&[2])), SymFunc::schur(p(&[1, 1])));
        let terms = vec![(rat(1, 2), &s + &w), (rat(1, 2), &s - &w), (rat(-1, 1), s.clone())];
        let f = exp_combination(&terms, TruncationPolicy::new(2, 6)).unwrap();
        assert!(f.same_terms(&series(POL, &[(&[&[1, 1], &[1, 1]], rat(1, 2))])));
    }

    #[test]
    fn euler_chi_examples() {
        assert_eq!(euler_chi(0, POL).unwrap(), DeltaSeries::one(POL));
        let c2 = euler_chi(2, POL).unwrap().order_component(2);
        assert!(c2.same_terms(&series(POL, &[(&[&[1, 1], &[1, 1]], rat(-1, 2))])));
        let c3 = euler_chi(3, POL).unwrap().order_component(2);
        assert!(c3.same_terms(&series(POL, &[(&[&[1, 1, 1], &[2, 1]], rat(1, 1))])));
    }

    #[test]
    fn euler_chi_has_no_constant_or_linear_part() {
        for k in 1..=4 {
            let c = euler_chi(k, POL).unwrap();
            assert!(c.order_component(0).is_zero(), "k={k}");
            assert!(c.order_component(1).is_zero(), "k={k}");
        }
    }

    #[test]
    fn f_segre_examples() {
        let f1 = f_segre(1, TruncationPolicy::new(2, 6)).unwrap();
        assert!(f1.same_terms(&series(POL, &[(&[&[1, 1], &[1, 1]], rat(1, 2))])));
        let f1_3 = f_segre(1, TruncationPolicy::new(3, 6)).unwrap().order_component(3);
        assert!(f1_3.same_terms(&series(POL, &[(&[&[2], &[1, 1], &[1, 1]], rat(1, 2))])));
        let f2 = f_segre(2, TruncationPolicy::new(2, 6)).unwrap();
        assert!(f2.same_terms(&series(POL, &[(&[&[1, 1, 1], &[2, 1]], rat(1, 1))])));
        assert!(matches!(f_segre(4, POL), Err(Error::Unsupported(_))));
        assert!(matches!(f_segre(0, POL), Err(Error::Unsupported(_))));
    }

    #[test]
    fn order_normalize_examples() {
        let half_w2 = series(POL, &[(&[&[1, 1], &[1, 1]], rat(1, 2))]);
        assert!(half_w2.order_normalize().same_terms(&series(POL, &[(&[&[1, 1], &[1, 1]], rat(1, 1))])));
        assert_eq!(DeltaSeries::one(POL).order_normalize(), DeltaSeries::one(POL));
        let t = series(POL, &[(&[&[2], &[1, 1], &[1, 1]], rat(1, 2))]);
        assert!(t.order_normalize().same_terms(&series(POL, &[(&[&[2], &[1, 1], &[1, 1]], rat(3, 1))])));
        assert_eq!(t.order_normalize().order_denormalize(), t);
    }

    #[test]
    fn schur_of_w_examples() {
        let pol = TruncationPolicy::new(3, 6);
        let one = schur_of_w_closed(&p(&[1]), pol).unwrap();
        assert_eq!(one.coeff(&mono(&[&[1]])), rat(1, 1));
        let sym2 = schur_of_w_closed(&p(&[2]), pol).unwrap();
        assert_eq!(sym2.coeff(&Monomial::one()), rat(1, 1));
        let wedge2 = schur_of_w_closed(&p(&[1, 1]), pol).unwrap();
        assert_eq!(wedge2.coeff(&Monomial::one()), rat(0, 1));

        let rec1 = schur_of_w_recurrence(&p(&[1]), pol).unwrap();
        let exp1 = exp_combination(&[(rat(1, 1), SymFunc::schur(p(&[1])))], pol).unwrap();
        assert_eq!(rec1, exp1);
        let rec2 = schur_of_w_recurrence(&p(&[2]), pol).unwrap().order_component(1);
        assert!(rec2.same_terms(&series(pol, &[(&[&[2]], rat(1, 1))])));
        let rec11 = schur_of_w_recurrence(&p(&[1, 1]), pol).unwrap().order_component(2);
        assert!(rec11.same_terms(&series(pol, &[(&[&[2], &[1, 1]], rat(1, 1))])));
    }

    #[test]
    fn lascoux_examples() {
        let l = lascoux_leading(1, 2);
        assert!(l.same_terms(&series(POL, &[(&[&[1, 1], &[1, 1]], rat(1, 2))])));
        let l = lascoux_leading(2, 3);
        assert!(l.same_terms(&series(POL, &[(&[&[1, 1, 1], &[2, 1]], rat(1, 1))])));
        assert!(lascoux_leading(1, 3).is_zero());
        assert!(lascoux_leading(3, 3).is_zero());
        let l = lascoux_leading(4, 6);
        assert!(l.same_terms(&series(POL, &[(&[&[2, 2, 2], &[2, 2, 2]], rat(1, 2))])));
    }

    #[test]
    fn closed_form_shapes() {
        let c: Vec<Rational> = closed_exponential_form(1).unwrap().into_iter().map(|t| t.0).collect();
        assert_eq!(c, vec![rat(1, 2), rat(1, 2), rat(-1, 1)]);
        let c: Vec<Rational> = closed_exponential_form(2).unwrap().into_iter().map(|t| t.0).collect();
        assert_eq!(c, vec![rat(1, 3), rat(-1, 3), rat(-1, 1), rat(1, 1)]);
        let c: Vec<Rational> = closed_exponential_form(3).unwrap().into_iter().map(|t| t.0).collect();
        assert_eq!(c, vec![rat(1, 8), rat(-1, 8), rat(1, 4), rat(-1, 4), rat(1, 2), rat(-1, 2), rat(1, 1), rat(-1, 1)]);
    }

    #[test]
    fn json_round_trip() {
        let s = series(POL, &[(&[&[2], &[1, 1]], rat(1, 2)), (&[], rat(-3, 1))]);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"terms":[{"monomial":[],"coeff":"-3"},{"monomial":[[1,1],[2]],"coeff":"1/2"}]}"#
        );
        let v = s.to_json_value();
        assert_eq!(DeltaSeries::from_json_value(POL, &v).unwrap(), s);
    }

    #[test]
    fn monomial_degree_and_symmetry() {
        assert_eq!(mono(&[&[2], &[1, 1]]).degree(), Some(2));
        assert_eq!(mono(&[&[2], &[1]]).degree(), None);
        assert_eq!(Monomial::one().degree(), None);
        assert_eq!(mono(&[&[2], &[1, 1], &[1, 1]]).symmetry_factor(), 2);
        assert_eq!(mono(&[&[1], &[1], &[1]]).symmetry_factor(), 6);
    }
}
