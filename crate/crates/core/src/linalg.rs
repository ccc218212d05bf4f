//! Exact sparse linear algebra over the integers.
//!
//! Vectors are reduced fraction-free: eliminating a leading entry replaces `v`
//! by `a·v − b·q` for the pivot row `q`, then divides out the content of the
//! result. Nothing ever leaves `ℤ`, and entries stay small for the ±1
//! matrices produced by Koszul differentials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sorted `(column, value)` pairs with no zero values.
pub type SparseVec = Vec<(u32, BigInt)>;

/// `ca·a + cb·b`.
pub fn combine(a: &SparseVec, ca: &BigInt, b: &SparseVec, cb: &BigInt) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, ca * &a[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, cb * &b[j].1));
            j += 1;
        } else {
            let v = ca * &a[i].1 + cb * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divide by the gcd of the entries and make the leading entry positive.
pub fn normalize(v: &mut SparseVec) {
    let Some(first) = v.first() else { return };
    let mut g = first.1.abs();
    for (_, x) in v.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if v[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Build a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries(entries: impl IntoIterator<Item = (u32, BigInt)>) -> SparseVec {
    let mut acc: HashMap<u32, BigInt> = HashMap::new();
    for (c, v) in entries {
        *acc.entry(c).or_insert_with(BigInt::zero) += v;
    }
    let mut out: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// Row-echelon basis of a growing span. Each stored row is keyed by its leading column.
#[derive(Debug, Default, Clone)]
pub struct EchelonBasis {
    rows: HashMap<u32, SparseVec>,
    /// Only columns below this bound act as pivots.
    pivot_limit: u32,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: HashMap::new(), pivot_limit: u32::MAX }
    }

    /// A basis that only pivots on columns `< limit`; used to track combinations
    /// in the remaining columns.
    pub fn with_pivot_limit(limit: u32) -> Self {
        EchelonBasis { rows: HashMap::new(), pivot_limit: limit }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminate pivot columns from the front of `v` until its leading column is
    /// free (or past the pivot limit).
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        normalize(&mut v);
        while let Some((col, lead)) = v.first() {
            if *col >= self.pivot_limit {
                break;
            }
            let Some(q) = self.rows.get(col) else { break };
            let q_lead = &q[0].1;
            let g = lead.gcd(q_lead);
            let a = q_lead / &g;
            let b = -(lead / &g);
            v = combine(&v, &a, q, &b);
            normalize(&mut v);
        }
        v
    }

    /// Insert `v`; returns the reduced vector when it is already in the span
    /// (restricted to pivot columns), `None` when it extended the basis.
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let r = self.reduce(v);
        match r.first() {
            Some((col, _)) if *col < self.pivot_limit => {
                self.rows.insert(*col, r);
                None
            }
            _ => Some(r),
        }
    }
}

/// Rank of the span of `vectors`.
pub fn rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Integer basis of the kernel of the map sending basis vector `i` of the domain
/// to `images[i]`, a vector in a codomain of dimension `codim`.
pub fn kernel(images: &[SparseVec], codim: u32) -> Vec<SparseVec> {
    let mut basis = EchelonBasis::with_pivot_limit(codim);
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut aug = img.clone();
        aug.push((codim + i as u32, BigInt::one()));
        if let Some(r) = basis.insert(aug) {
            let mut k: SparseVec = r.into_iter().map(|(c, v)| (c - codim, v)).collect();
            normalize(&mut k);
            out.push(k);
        }
    }
    out
}

/// Apply the map `images` to a vector in its domain.
pub fn apply(images: &[SparseVec], v: &SparseVec) -> SparseVec {
    from_entries(v.iter().flat_map(|(i, c)| images[*i as usize].iter().map(move |(r, x)| (*r, c * x))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(u32, i64)]) -> SparseVec {
        from_entries(entries.iter().map(|&(c, v)| (c, BigInt::from(v))))
    }

    // Dense rank over the rationals by plain Gaussian elimination, as an oracle.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut m: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    let pivot = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_small() {
        let vs = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (2, -1)])];
        assert_eq!(rank(vs), 2);
        assert_eq!(rank(Vec::<SparseVec>::new()), 0);
        assert_eq!(rank(vec![sv(&[]), sv(&[(3, 2)])]), 1);
    }

    #[test]
    fn kernel_small() {
        // e0 -> (1,1), e1 -> (1,1), e2 -> (0,1)
        let images = vec![sv(&[(0, 1), (1, 1)]), sv(&[(0, 1), (1, 1)]), sv(&[(1, 1)])];
        let k = kernel(&images, 2);
        assert_eq!(k.len(), 1);
        assert!(apply(&images, &k[0]).is_empty());
    }

    proptest::proptest! {
        #[test]
        fn rank_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 6), 0..7)) {
            let vs: Vec<SparseVec> = rows.iter()
                .map(|r| sv(&r.iter().enumerate().map(|(c, &v)| (c as u32, v)).collect::<Vec<_>>()))
                .collect();
            proptest::prop_assert_eq!(rank(vs.clone()), dense_rank(&rows));
            // Kernel of the map whose images are the rows.
            let k = kernel(&vs, 6);
            proptest::prop_assert_eq!(k.len() + dense_rank(&rows), rows.len());
            for v in &k {
                proptest::prop_assert!(apply(&vs, v).is_empty());
            }
        }
    }
}
