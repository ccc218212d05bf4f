//! The Grothendieck ring of polynomial functors, stored in the Schur basis `s_λ`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::characters::character_table;
use crate::partition::{gl_dimension, lr_product};
use crate::{parse_rational, Error, Partition, Rational, Result};

/// A finite rational combination `Σ a_λ s_λ`. Zero coefficients are never stored.
/// Mixed degrees are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc {
    terms: BTreeMap<Partition, Rational>,
}

impl SymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `s_∅`, the unit for both products.
    pub fn one() -> Self {
        Self::schur(Partition::empty())
    }

    pub fn schur(lambda: Partition) -> Self {
        Self::from_terms([(lambda, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut out = Self::zero();
        for (lam, c) in terms {
            out.add_term(lam, c);
        }
        out
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, a)| (l.clone(), a * c)))
    }

    /// The degree-`n` component.
    pub fn homogeneous_part(&self, n: u32) -> Self {
        Self { terms: self.terms.iter().filter(|(l, _)| l.size() == n).map(|(l, c)| (l.clone(), c.clone())).collect() }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Partition::size).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Point-wise tensor product: `s_λ ⊠ s_μ = Σ_ν N^ν_{λμ} s_ν`, extended bilinearly.
    pub fn boxtimes(&self, other: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coeff = ca * cb;
                for (nu, n) in lr_product(a, b).iter() {
                    out.add_term(nu.clone(), &coeff * Rational::from_integer((*n).into()));
                }
            }
        }
        out
    }

    /// Coefficients `a_λ` with `self = Σ a_λ s′_λ`, using
    /// `s_μ = Σ_λ z_λ^{-1} χ_μ(c_λ) s′_λ` degree by degree.
    pub fn to_prime_basis(&self) -> Result<BTreeMap<Partition, Rational>> {
        let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (mu, c) in &self.terms {
            let table = character_table(mu.size())?;
            for (j, lam) in table.partitions.iter().enumerate() {
                let chi = table.values[table.index_of(mu).expect("indexed")][j];
                if chi == 0 {
                    continue;
                }
                let z = table.classes[j].centralizer_order;
                let term = c * Rational::new(chi.into(), z.into());
                *out.entry(lam.clone()).or_insert_with(Rational::zero) += term;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Rebuild an element from its power-sum coordinates.
    pub fn from_prime_basis(coords: &BTreeMap<Partition, Rational>) -> Result<SymFunc> {
        let mut out = SymFunc::zero();
        for (lam, c) in coords {
            out = &out + &prime_element(lam)?.scale(c);
        }
        Ok(out)
    }

    /// `Σ a_λ dim S_λ(ℂ^m)`.
    pub fn evaluate_dimension(&self, m: u32) -> Rational {
        self.terms.iter().map(|(l, c)| c * Rational::from_integer(gl_dimension(l, m).into())).sum()
    }
}

/// The power-sum element `s′_λ = Σ_{μ⊢p} χ_μ(c_λ) s_μ`.
pub fn prime_element(lambda: &Partition) -> Result<SymFunc> {
    let table = character_table(lambda.size())?;
    let col = table.index_of(lambda).expect("indexed");
    Ok(SymFunc::from_terms(
        table
            .partitions
            .iter()
            .zip(&table.values)
            .map(|(mu, row)| (mu.clone(), Rational::from_integer(row[col].into()))),
    ))
}

impl Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        self + &(-rhs)
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;
    fn neg(self) -> SymFunc {
        SymFunc { terms: self.terms.iter().map(|(l, c)| (l.clone(), -c)).collect() }
    }
}

impl Mul<&Rational> for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &Rational) -> SymFunc {
        self.scale(rhs)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*s{l}")?;
        }
        Ok(())
    }
}

impl Serialize for SymFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self.terms.iter().map(|(l, c)| (l.to_key(), c.to_string())).collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(deserializer)?;
        let mut out = SymFunc::zero();
        for (k, v) in map {
            let lam: Partition = k.parse().map_err(serde::de::Error::custom)?;
            let c = parse_rational(&v).map_err(serde::de::Error::custom)?;
            out.add_term(lam, c);
        }
        Ok(out)
    }
}

/// Parse the JSON object form `{"2,1": "1/2", ...}`.
pub fn parse_symfunc(json: &str) -> Result<SymFunc> {
    serde_json::from_str(json).map_err(|e| Error::Parse(format!("invalid symmetric function JSON: {e}")))
}
