//! Integer partitions and the combinatorics built directly on them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty sequence is the
/// zero partition.
///
/// The derived ordering is lexicographic on the parts; it is only used to key
/// maps deterministically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Build a partition from weakly decreasing parts. Trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::Argument(format!("partition {parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sort a composition into a partition, discarding zeros.
    pub fn from_composition(parts: &[u32]) -> Self {
        let mut v: Vec<u32> = parts.iter().copied().filter(|&x| x > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`; `(0)` is the zero partition.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The one-column partition `(1,…,1)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i`, or zero past the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols).map(|c| self.0.iter().take_while(|&&p| p > c).count() as u32).collect();
        Partition(parts)
    }

    /// Whether the Young diagram of `other` sits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Hook lengths listed row by row.
    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size() as usize);
        for (r, &row) in self.0.iter().enumerate() {
            for c in 0..row {
                let arm = row - c - 1;
                let leg = conj.part(c as usize) - r as u32 - 1;
                hooks.push(arm + leg + 1);
            }
        }
        hooks
    }

    /// Comma-separated key, `"0"` for the zero partition.
    pub fn to_key(&self) -> String {
        if self.is_empty() {
            "0".to_string()
        } else {
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)`, `[2,1]`; `0`, `-` or an empty string give the zero partition.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
        if trimmed.is_empty() || trimmed == "-" {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("invalid partition syntax {s:?}")))?;
        Partition::new(parts).map_err(|e| Error::Parse(format!("invalid partition {s:?}: {e}")))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, optionally with at most `max_rows` parts, in reverse
/// lexicographic order: `(n)` first, `(1,…,1)` last.
pub fn partitions_of(n: u32, max_rows: Option<usize>) -> Vec<Partition> {
    fn go(rest: u32, max_part: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_rows.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

pub(crate) fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `dim M_λ`, the dimension of the irreducible `S_n`-representation, by the hook-length formula.
pub fn dimension_sn(lambda: &Partition) -> u64 {
    let hooks: BigUint = lambda.hook_lengths().into_iter().map(BigUint::from).product();
    (factorial(lambda.size()) / hooks).to_u64().expect("dimension fits in u64")
}

/// Kostka number `K_{λμ}`: semistandard tableaux of shape `λ` and content `μ`.
///
/// `mu` is a composition; zero entries and the order of entries do not matter.
pub fn kostka(lambda: &Partition, mu: &[u32]) -> Result<u64> {
    let content: u32 = mu.iter().sum();
    if content != lambda.size() {
        return Err(Error::Argument(format!(
            "kostka: content {mu:?} has size {content}, shape {lambda} has size {}",
            lambda.size()
        )));
    }
    let content: Vec<u32> = mu.iter().copied().filter(|&m| m > 0).collect();
    let mut memo = HashMap::new();
    Ok(kostka_rec(lambda.parts(), &content, &mut memo))
}

// Strip the largest letter: it fills a horizontal strip of size mu.last().
fn kostka_rec(lambda: &[u32], mu: &[u32], memo: &mut HashMap<(Vec<u32>, usize), u64>) -> u64 {
    let Some((&last, rest)) = mu.split_last() else {
        return u64::from(lambda.is_empty());
    };
    if lambda.len() > mu.len() {
        return 0;
    }
    let key = (lambda.to_vec(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    let mut nu = vec![0u32; lambda.len()];
    horizontal_strips(lambda, last, 0, &mut nu, &mut |inner| {
        let mut inner = inner.to_vec();
        while inner.last() == Some(&0) {
            inner.pop();
        }
        total += kostka_rec(&inner, rest, memo);
    });
    memo.insert(key, total);
    total
}

// Enumerate nu with lambda/nu a horizontal strip of the given size.
fn horizontal_strips(lambda: &[u32], size: u32, row: usize, nu: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if row == lambda.len() {
        if size == 0 {
            f(nu);
        }
        return;
    }
    let lower = lambda.get(row + 1).copied().unwrap_or(0);
    let top = lambda[row];
    for keep in lower..=top {
        let removed = top - keep;
        if removed > size {
            continue;
        }
        nu[row] = keep;
        horizontal_strips(lambda, size - removed, row + 1, nu, f);
    }
}

/// Littlewood–Richardson coefficient `N^ν_{λμ}`, by counting LR skew tableaux of
/// shape `ν/λ` and content `μ` whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    // Cells in reading order: rows top to bottom, each row right to left.
    let mut cells = Vec::new();
    for r in 0..nu.len() {
        for c in (lambda.part(r)..nu.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let width = nu.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; nu.len()];
    let mut counts = vec![0u32; mu.len() + 1];
    let mut total = 0;
    lr_fill(&cells, 0, lambda, mu, &mut grid, &mut counts, &mut total);
    total
}

fn lr_fill(
    cells: &[(usize, usize)],
    idx: usize,
    lambda: &Partition,
    mu: &Partition,
    grid: &mut [Vec<u32>],
    counts: &mut [u32],
    total: &mut u64,
) {
    let Some(&(r, c)) = cells.get(idx) else {
        *total += 1;
        return;
    };
    // Row weakly increases left to right; the cell to the right is already filled.
    let mut hi = mu.len() as u32;
    if idx > 0 && cells[idx - 1].0 == r {
        hi = hi.min(grid[r][c + 1]);
    }
    let mut lo = 1;
    if r > 0 && c as u32 >= lambda.part(r - 1) {
        lo = grid[r - 1][c] + 1;
    }
    // A letter x in row r needs x <= r + 1 under the lattice condition.
    hi = hi.min(r as u32 + 1);
    for x in lo..=hi {
        let xi = x as usize;
        if counts[xi] >= mu.part(xi - 1) {
            continue;
        }
        if x > 1 && counts[xi - 1] <= counts[xi] {
            continue;
        }
        counts[xi] += 1;
        grid[r][c] = x;
        lr_fill(cells, idx + 1, lambda, mu, grid, counts, total);
        counts[xi] -= 1;
    }
    grid[r][c] = 0;
}

type LrProduct = Arc<Vec<(Partition, u64)>>;

/// `s_λ · s_μ = Σ_ν N^ν_{λμ} s_ν`, as the list of non-zero `(ν, N^ν_{λμ})` in
/// reverse lexicographic order of `ν`. Results are cached process-wide.
pub fn lr_product(lambda: &Partition, mu: &Partition) -> LrProduct {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), LrProduct>>> = OnceLock::new();
    let (a, b) = if lambda <= mu { (lambda, mu) } else { (mu, lambda) };
    let key = (a.clone(), b.clone());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("lr cache poisoned").get(&key) {
        return hit.clone();
    }
    let n = a.size() + b.size();
    let terms: Vec<(Partition, u64)> = partitions_of(n, Some(a.len() + b.len()))
        .into_iter()
        .filter(|nu| nu.contains(a) && nu.contains(b))
        .filter_map(|nu| {
            let c = lr_coefficient(a, b, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect();
    let terms = Arc::new(terms);
    cache.lock().expect("lr cache poisoned").insert(key, terms.clone());
    terms
}

/// `dim S_λ(ℂ^m)` by the hook-content formula; zero when `λ` has more than `m` rows.
pub fn gl_dimension(lambda: &Partition, m: u32) -> u128 {
    if lambda.len() > m as usize {
        return 0;
    }
    let mut num = BigUint::from(1u32);
    for (r, &row) in lambda.parts().iter().enumerate() {
        for c in 0..row {
            num *= BigUint::from(m + c - r as u32);
        }
    }
    let den: BigUint = lambda.hook_lengths().into_iter().map(BigUint::from).product();
    (num / den).to_u128().expect("dimension fits in u128")
}
