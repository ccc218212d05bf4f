//! Characters of symmetric groups.
//!
//! Conventions: `χ_λ` is the irreducible character indexed by `λ`, with `(p)` the
//! trivial character and `(1,…,1)` the sign. The class `c_μ` consists of the
//! permutations of cycle type `μ`, so `(1,…,1)` is the identity.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::partition::{factorial, partitions_of};
use crate::{Error, Partition, Result};

/// Largest `p` for which [`character_table`] will build a table.
pub const MAX_TABLE_DEGREE: u32 = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub cycle_type: Partition,
    /// `#c_λ`
    pub class_size: u128,
    /// `z_λ`
    pub centralizer_order: u128,
    pub sign: i8,
}

pub fn class_data(lambda: &Partition) -> ClassData {
    let mut z: u128 = 1;
    let mut i = 0;
    let parts = lambda.parts();
    while i < parts.len() {
        let part = parts[i];
        let mult = parts[i..].iter().take_while(|&&q| q == part).count();
        z *= (part as u128).pow(mult as u32) * (1..=mult as u128).product::<u128>();
        i += mult;
    }
    let n = lambda.size();
    let total = factorial(n).to_u128().expect("n! fits in u128");
    let sign = if (n as usize - lambda.len()).is_multiple_of(2) { 1 } else { -1 };
    ClassData { cycle_type: lambda.clone(), class_size: total / z, centralizer_order: z, sign }
}

/// `χ_λ(c_μ)` by the Murnaghan–Nakayama rule.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::Argument(format!(
            "character of {lambda} evaluated on a class {mu} of a different symmetric group"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(lambda.parts(), mu.parts(), &mut memo))
}

// Rim hooks of length k correspond to moving a bead of the beta-set down by k.
fn mn_rec(lambda: &[u32], mu: &[u32], memo: &mut HashMap<(Vec<u32>, usize), i64>) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let len = lambda.len() as u32;
    let beta: Vec<u32> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i as u32).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let mut inner: Vec<u32> = moved.iter().enumerate().map(|(j, &x)| x - (len - 1 - j as u32)).collect();
        while inner.last() == Some(&0) {
            inner.pop();
        }
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&inner, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Character table of `S_p`. Rows are characters `χ_λ`, columns are classes
/// `c_μ`, both in reverse lexicographic order of the indexing partitions.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub p: u32,
    pub partitions: Vec<Partition>,
    pub classes: Vec<ClassData>,
    /// `values[i][j] = χ_{partitions[i]}(c_{partitions[j]})`
    pub values: Vec<Vec<i64>>,
    #[serde(skip)]
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    fn build(p: u32) -> Result<Self> {
        let partitions = partitions_of(p, None);
        let classes = partitions.iter().map(class_data).collect();
        let values = partitions
            .iter()
            .map(|lam| partitions.iter().map(|mu| mn_character(lam, mu)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let index = partitions.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let table = CharacterTable { p, partitions, classes, values, index };
        table.check_orthonormality()?;
        Ok(table)
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// `χ_λ(c_μ)`; panics if either partition is not of size `p`.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        let i = self.index_of(lambda).expect("character index out of table");
        let j = self.index_of(mu).expect("class index out of table");
        self.values[i][j]
    }

    /// `B·C·Bᵗ = 1` with `C = diag(1/z_μ)`, checked as `Σ_μ #c_μ χ_λ χ_ν = p! δ_λν`.
    pub fn check_orthonormality(&self) -> Result<()> {
        let order = BigInt::from(factorial(self.p));
        for (i, row_i) in self.values.iter().enumerate() {
            for (j, row_j) in self.values.iter().enumerate() {
                let sum: BigInt = self
                    .classes
                    .iter()
                    .zip(row_i.iter().zip(row_j))
                    .map(|(c, (a, b))| BigInt::from(c.class_size) * BigInt::from(*a) * BigInt::from(*b))
                    .sum();
                let expected = if i == j { order.clone() } else { BigInt::zero() };
                if sum != expected {
                    return Err(Error::Consistency(format!(
                        "character table of S_{} fails orthonormality at ({}, {})",
                        self.p, self.partitions[i], self.partitions[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// CSV with a header row of class labels and one row per character.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda");
        for mu in &self.partitions {
            out.push_str(&format!(",\"{}\"", mu.to_key()));
        }
        out.push('\n');
        for (lam, row) in self.partitions.iter().zip(&self.values) {
            out.push_str(&format!("\"{}\"", lam.to_key()));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Memoized character table of `S_p` for `0 ≤ p ≤` [`MAX_TABLE_DEGREE`].
pub fn character_table(p: u32) -> Result<Arc<CharacterTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CharacterTable>>>> = OnceLock::new();
    if p > MAX_TABLE_DEGREE {
        return Err(Error::Capacity {
            what: format!("character table of S_{p}"),
            required: partitions_of(p, None).len() as u128,
            budget: partitions_of(MAX_TABLE_DEGREE, None).len() as u128,
        });
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("character cache poisoned").get(&p) {
        return Ok(t.clone());
    }
    let table = Arc::new(CharacterTable::build(p)?);
    Ok(cache.lock().expect("character cache poisoned").entry(p).or_insert(table).clone())
}

/// Kronecker coefficient `C_{λμν} = (1/p!) Σ_ρ #c_ρ χ_λ(c_ρ) χ_μ(c_ρ) χ_ν(c_ρ)`.
pub fn kronecker_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let p = lambda.size();
    if mu.size() != p || nu.size() != p {
        return Err(Error::Argument(format!(
            "kronecker coefficient needs partitions of one size, got {lambda}, {mu}, {nu}"
        )));
    }
    let table = character_table(p)?;
    let (i, j, k) = (
        table.index_of(lambda).expect("indexed"),
        table.index_of(mu).expect("indexed"),
        table.index_of(nu).expect("indexed"),
    );
    let sum: BigInt = table
        .classes
        .iter()
        .enumerate()
        .map(|(c, data)| {
            BigInt::from(data.class_size)
                * BigInt::from(table.values[i][c])
                * BigInt::from(table.values[j][c])
                * BigInt::from(table.values[k][c])
        })
        .sum();
    let order = BigInt::from(factorial(p));
    let (q, r) = sum.div_rem(&order);
    if !r.is_zero() || q < BigInt::zero() {
        return Err(Error::Consistency(format!(
            "kronecker coefficient of {lambda}, {mu}, {nu} is {sum}/{order}, not a non-negative integer"
        )));
    }
    Ok(q.to_u64().expect("kronecker coefficient fits in u64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::dimension_sn;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn class_data_examples() {
        let id = class_data(&p(&[1, 1]));
        assert_eq!((id.class_size, id.centralizer_order, id.sign), (1, 2, 1));
        let tr = class_data(&p(&[2]));
        assert_eq!((tr.class_size, tr.centralizer_order, tr.sign), (1, 2, -1));
        let three = class_data(&p(&[3]));
        assert_eq!((three.class_size, three.centralizer_order, three.sign), (2, 3, 1));
        let empty = class_data(&Partition::empty());
        assert_eq!((empty.class_size, empty.centralizer_order, empty.sign), (1, 1, 1));
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 0..=8 {
            let total: u128 = partitions_of(n, None).iter().map(|m| class_data(m).class_size).sum();
            assert_eq!(total, factorial(n).to_u128().unwrap());
            for m in partitions_of(n, None) {
                let c = class_data(&m);
                assert_eq!(c.class_size * c.centralizer_order, total);
            }
        }
    }

    #[test]
    fn mn_examples() {
        for mu in partitions_of(5, None) {
            assert_eq!(mn_character(&p(&[5]), &mu).unwrap(), 1);
            assert_eq!(mn_character(&Partition::column(5), &mu).unwrap(), class_data(&mu).sign as i64);
        }
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert!(mn_character(&p(&[2, 1]), &p(&[2])).is_err());
    }

    #[test]
    fn mn_identity_column_is_dimension() {
        for n in 0..=7 {
            for lam in partitions_of(n, None) {
                assert_eq!(mn_character(&lam, &Partition::column(n)).unwrap(), dimension_sn(&lam) as i64);
            }
        }
    }

    #[test]
    fn small_tables() {
        let t1 = character_table(1).unwrap();
        assert_eq!(t1.values, vec![vec![1]]);
        let t2 = character_table(2).unwrap();
        assert_eq!(t2.value(&p(&[2]), &p(&[1, 1])), 1);
        assert_eq!(t2.value(&p(&[2]), &p(&[2])), 1);
        assert_eq!(t2.value(&p(&[1, 1]), &p(&[1, 1])), 1);
        assert_eq!(t2.value(&p(&[1, 1]), &p(&[2])), -1);
        let t3 = character_table(3).unwrap();
        let row: Vec<i64> = [p(&[1, 1, 1]), p(&[2, 1]), p(&[3])].iter().map(|mu| t3.value(&p(&[2, 1]), mu)).collect();
        assert_eq!(row, vec![2, 0, -1]);
        assert!(character_table(MAX_TABLE_DEGREE + 1).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = character_table(2).unwrap().to_csv();
        assert_eq!(csv, "lambda,\"2\",\"1,1\"\n\"2\",1,1\n\"1,1\",-1,1\n");
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_coefficient(&p(&[1, 1]), &p(&[1, 1]), &p(&[2])).unwrap(), 1);
        assert_eq!(kronecker_coefficient(&p(&[2]), &p(&[2]), &p(&[1, 1])).unwrap(), 0);
        assert_eq!(kronecker_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[2, 1])).unwrap(), 1);
        assert!(kronecker_coefficient(&p(&[2, 1]), &p(&[2]), &p(&[2, 1])).is_err());
    }

    #[test]
    fn kronecker_with_trivial_is_delta() {
        for n in 1..=5 {
            let parts = partitions_of(n, None);
            for a in &parts {
                for b in &parts {
                    let c = kronecker_coefficient(a, b, &Partition::row(n)).unwrap();
                    assert_eq!(c, u64::from(a == b));
                }
            }
        }
    }
}
