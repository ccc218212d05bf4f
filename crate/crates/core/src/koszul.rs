//! Koszul homology of Segre coordinate rings at fixed dimensions.
//!
//! For `V_i = ℂ^{d_i}` and `W = ⊗ V_i`, the syzygy space `F_p^{(d)}` is the
//! middle homology of
//!
//! ```text
//! R^{(d-p-1)} ⊗ ∧^{p+1} W  →  R^{(d-p)} ⊗ ∧^p W  →  R^{(d-p+1)} ⊗ ∧^{p-1} W
//! ```
//!
//! where `R^{(i)} = ⊗ Sym^i(V_j)`. Everything is graded by the weights of the
//! product of diagonal tori, so the complex splits into small blocks, one per
//! weight. Only dominant weights are computed; the rest of the weight table
//! follows from the Weyl group symmetry.
//!
//! Merged instances (several factors fused into one block `V_B = ⊗_{x∈B} V_x`)
//! share the same `W` and the same torus, which is what the cosocle computation
//! in [`psi_new_dimension`] needs.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::linalg::{self, EchelonBasis, SparseVec};
use crate::partition::{gl_dimension, kostka, partitions_of};
use crate::{Error, Partition, Result};

/// Default limit on the number of basis elements of any graded piece `M_{i,j}`.
pub const DEFAULT_CAPACITY: u128 = 200_000;

/// Environment variable overriding [`DEFAULT_CAPACITY`].
pub const CAPACITY_ENV: &str = "SEGRE_CAPACITY";

/// Capacity from the environment, falling back to [`DEFAULT_CAPACITY`].
pub fn capacity_budget() -> u128 {
    std::env::var(CAPACITY_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CAPACITY)
}

/// One exponent vector per factor.
pub type Weight = Vec<Vec<u32>>;

/// Multiplicities of `S_{λ_1}(V_1) ⊗ … ⊗ S_{λ_n}(V_n)`.
pub type Decomposition = BTreeMap<Vec<Partition>, u64>;

/// `ℙ^{d_1 - 1} × … × ℙ^{d_n - 1}` in its Segre embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreInstance {
    dims: Vec<u32>,
}

impl SegreInstance {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Argument("a Segre instance needs at least one factor".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Argument(format!("factor dimensions must be positive, got {dims:?}")));
        }
        Ok(SegreInstance { dims })
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }
}

/// `dim R^{(i)} = Π_j binom(d_j + i − 1, i)`.
pub fn graded_ring_dimension(inst: &SegreInstance, i: u32) -> u128 {
    inst.dims.iter().fold(1u128, |acc, &d| acc.saturating_mul(binomial(d as u128 + i as u128 - 1, i as u128)))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = match out.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    out
}

/// Homology of the Koszul slice at `(p, d)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomologyReport {
    pub p: u32,
    pub d: u32,
    pub dims: Vec<u32>,
    pub dimension: u128,
    #[serde(skip)]
    pub weight_table: BTreeMap<Weight, u64>,
    #[serde(serialize_with = "serialize_decomposition")]
    pub decomposition: Decomposition,
}

impl HomologyReport {
    /// Weight table as CSV; factors of a weight are separated by `;`.
    pub fn weight_table_csv(&self) -> String {
        let mut out = String::from("weight,mult\n");
        for (w, m) in &self.weight_table {
            let key = w.iter().map(|v| v.iter().join(",")).join(";");
            out.push_str(&format!("\"{key}\",{m}\n"));
        }
        out
    }

    fn from_dominant(p: u32, d: u32, dims: &[u32], dominant: Vec<(Weight, u64)>) -> Result<Self> {
        let weight_table = expand_orbits(&dominant);
        let signed: BTreeMap<Weight, i64> = weight_table.iter().map(|(w, &m)| (w.clone(), m as i64)).collect();
        let decomposition = schur_extract(&signed, dims)?;
        let dimension = weight_table.values().map(|&m| m as u128).sum();
        let check: u128 = decomposition
            .iter()
            .map(|(lams, &m)| m as u128 * lams.iter().zip(dims).map(|(l, &k)| gl_dimension(l, k)).product::<u128>())
            .sum();
        if check != dimension {
            return Err(Error::Consistency(format!(
                "decomposition accounts for dimension {check}, the weight table for {dimension}"
            )));
        }
        Ok(HomologyReport { p, d, dims: dims.to_vec(), dimension, weight_table, decomposition })
    }
}

fn serialize_decomposition<S: Serializer>(dec: &Decomposition, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        lambdas: &'a [Partition],
        mult: u64,
    }
    let mut seq = serializer.serialize_seq(Some(dec.len()))?;
    for (lambdas, &mult) in dec {
        seq.serialize_element(&Entry { lambdas, mult })?;
    }
    seq.end()
}

/// Factors grouped into blocks; a block `B` carries the variables of `⊗_{x∈B} V_x`.
struct Layout {
    dims: Vec<u32>,
    offsets: Vec<usize>,
    weight_len: usize,
    blocks: Vec<Vec<usize>>,
    block_dims: Vec<u32>,
    /// Coordinates of each basis vector of `W`, one per factor.
    w_coords: Vec<Vec<u32>>,
    /// Block variable of each basis vector of `W`, one per block.
    w_vars: Vec<Vec<u32>>,
}

impl Layout {
    fn new(dims: &[u32], blocks: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &d in dims {
            offsets.push(acc);
            acc += d as usize;
        }
        let block_dims = blocks.iter().map(|b| b.iter().map(|&x| dims[x]).product()).collect();
        let w_coords: Vec<Vec<u32>> = dims.iter().map(|&d| 0..d).multi_cartesian_product().collect();
        let w_vars = w_coords
            .iter()
            .map(|c| blocks.iter().map(|b| b.iter().fold(0, |v, &x| v * dims[x] + c[x])).collect())
            .collect();
        Layout { dims: dims.to_vec(), offsets, weight_len: acc, blocks, block_dims, w_coords, w_vars }
    }

    fn discrete(dims: &[u32]) -> Self {
        Self::new(dims, (0..dims.len()).map(|x| vec![x]).collect())
    }

    /// Coordinates of a block variable, one per factor of the block.
    fn decode(&self, block: usize, mut v: u32) -> Vec<u32> {
        let factors = &self.blocks[block];
        let mut out = vec![0; factors.len()];
        for (k, &x) in factors.iter().enumerate().rev() {
            out[k] = v % self.dims[x];
            v /= self.dims[x];
        }
        out
    }

    fn ring_dimension(&self, i: i64) -> u128 {
        if i < 0 {
            return 0;
        }
        self.block_dims.iter().fold(1u128, |acc, &d| acc.saturating_mul(binomial(d as u128 + i as u128 - 1, i as u128)))
    }

    fn piece_size(&self, i: i64, j: i64) -> u128 {
        if j < 0 {
            return 0;
        }
        self.ring_dimension(i).saturating_mul(binomial(self.w_coords.len() as u128, j as u128))
    }

    fn add_var_weight(&self, block: usize, v: u32, weight: &mut [u16]) {
        for (x, c) in self.blocks[block].iter().zip(self.decode(block, v)) {
            weight[self.offsets[*x] + c as usize] += 1;
        }
    }

    fn ring_monomials(&self, i: usize) -> HashMap<Vec<u16>, Vec<Vec<u32>>> {
        let per_block: Vec<Vec<Vec<u32>>> =
            self.block_dims.iter().map(|&m| (0..m).combinations_with_replacement(i).collect()).collect();
        let mut out: HashMap<Vec<u16>, Vec<Vec<u32>>> = HashMap::new();
        for choice in per_block.iter().map(|v| v.iter()).multi_cartesian_product() {
            let mut weight = vec![0u16; self.weight_len];
            let mut mon = Vec::with_capacity(i * self.blocks.len());
            for (b, seg) in choice.iter().enumerate() {
                for &v in seg.iter() {
                    self.add_var_weight(b, v, &mut weight);
                }
                mon.extend_from_slice(seg);
            }
            out.entry(weight).or_default().push(mon);
        }
        out
    }

    fn wedge_subsets(&self, j: usize) -> Vec<(Vec<u16>, Vec<Vec<u32>>)> {
        let mut groups: BTreeMap<Vec<u16>, Vec<Vec<u32>>> = BTreeMap::new();
        for subset in (0..self.w_coords.len() as u32).combinations(j) {
            let mut weight = vec![0u16; self.weight_len];
            for &w in &subset {
                for (x, &c) in self.w_coords[w as usize].iter().enumerate() {
                    weight[self.offsets[x] + c as usize] += 1;
                }
            }
            groups.entry(weight).or_default().push(subset);
        }
        groups.into_iter().collect()
    }

    fn flatten(&self, weight: &[Vec<u32>]) -> Vec<u16> {
        weight.iter().flat_map(|v| v.iter().map(|&c| c as u16)).collect()
    }
}

/// The graded piece `M_{i,j} = R^{(i)} ⊗ ∧^j W`, bucketed by weight.
struct Piece {
    i: usize,
    ring: HashMap<Vec<u16>, Vec<Vec<u32>>>,
    wedge: Vec<(Vec<u16>, Vec<Vec<u32>>)>,
}

impl Piece {
    fn build(layout: &Layout, i: i64, j: i64) -> Option<Piece> {
        if i < 0 || j < 0 || j as usize > layout.w_coords.len() {
            return None;
        }
        let (i, j) = (i as usize, j as usize);
        Some(Piece { i, ring: layout.ring_monomials(i), wedge: layout.wedge_subsets(j) })
    }

    /// Basis of the weight-`ω` subspace. Each element is the ring monomial
    /// followed by the increasing list of wedge factors.
    fn basis(&self, weight: &[u16]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut rest = vec![0u16; weight.len()];
        for (sigma, subsets) in &self.wedge {
            if sigma.iter().zip(weight).any(|(s, w)| s > w) {
                continue;
            }
            for (r, (w, s)) in rest.iter_mut().zip(weight.iter().zip(sigma)) {
                *r = w - s;
            }
            let Some(monomials) = self.ring.get(&rest) else { continue };
            for m in monomials {
                for s in subsets {
                    let mut key = m.clone();
                    key.extend_from_slice(s);
                    out.push(key);
                }
            }
        }
        out
    }
}

fn index_of(basis: &[Vec<u32>]) -> HashMap<&[u32], u32> {
    basis.iter().enumerate().map(|(k, b)| (b.as_slice(), k as u32)).collect()
}

/// `∂(r ⊗ w_1∧…∧w_j) = Σ_t (−1)^{t+1} (r·π(w_t)) ⊗ (w_1∧…ŵ_t…∧w_j)`, as a
/// vector in the basis indexed by `target`.
fn boundary(layout: &Layout, i: usize, key: &[u32], target: &HashMap<&[u32], u32>) -> Result<SparseVec> {
    let nb = layout.blocks.len();
    let (r, s) = key.split_at(nb * i);
    let mut entries = Vec::with_capacity(s.len());
    let mut image = Vec::with_capacity(key.len());
    for (t, &w) in s.iter().enumerate() {
        image.clear();
        for b in 0..nb {
            let seg = &r[b * i..(b + 1) * i];
            let v = layout.w_vars[w as usize][b];
            let pos = seg.partition_point(|&x| x <= v);
            image.extend_from_slice(&seg[..pos]);
            image.push(v);
            image.extend_from_slice(&seg[pos..]);
        }
        image.extend(s.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &x)| x));
        let col = *target
            .get(image.as_slice())
            .ok_or_else(|| Error::Consistency("Koszul differential leaves its target weight space".into()))?;
        let sign = if t % 2 == 0 { 1 } else { -1 };
        entries.push((col, sign.into()));
    }
    Ok(linalg::from_entries(entries))
}

fn images(layout: &Layout, piece_i: usize, basis: &[Vec<u32>], target: &[Vec<u32>]) -> Result<Vec<SparseVec>> {
    let index = index_of(target);
    basis.iter().map(|b| boundary(layout, piece_i, b, &index)).collect()
}

/// The three pieces of the slice computing `F_p^{(d)}`.
struct Slice {
    incoming: Option<Piece>,
    middle: Option<Piece>,
    outgoing: Option<Piece>,
}

impl Slice {
    fn build(layout: &Layout, p: u32, d: u32, budget: u128) -> Result<Slice> {
        let (p, d) = (p as i64, d as i64);
        let shapes = [(d - p - 1, p + 1), (d - p, p), (d - p + 1, p - 1)];
        for (i, j) in shapes {
            let size = layout.piece_size(i, j);
            if size > budget {
                return Err(Error::Capacity {
                    what: format!("Koszul piece M_{{{i},{j}}} for block dimensions {:?}", layout.block_dims),
                    required: size,
                    budget,
                });
            }
        }
        let [a, b, c] = shapes.map(|(i, j)| Piece::build(layout, i, j));
        Ok(Slice { incoming: a, middle: b, outgoing: c })
    }

    fn bases(&self, weight: &[u16]) -> [Vec<Vec<u32>>; 3] {
        let basis = |p: &Option<Piece>| p.as_ref().map(|p| p.basis(weight)).unwrap_or_default();
        [basis(&self.incoming), basis(&self.middle), basis(&self.outgoing)]
    }
}

/// Ranks and images at one weight.
struct WeightBlock {
    middle: Vec<Vec<u32>>,
    out_dim: u32,
    in_images: Vec<SparseVec>,
    out_images: Vec<SparseVec>,
}

impl WeightBlock {
    fn new(layout: &Layout, slice: &Slice, weight: &[u16]) -> Result<Self> {
        Self::from_bases(layout, slice, slice.bases(weight))
    }

    fn from_bases(layout: &Layout, slice: &Slice, bases: [Vec<Vec<u32>>; 3]) -> Result<Self> {
        let [incoming, middle, outgoing] = bases;
        let in_images = match &slice.incoming {
            Some(piece) if !middle.is_empty() => images(layout, piece.i, &incoming, &middle)?,
            _ => Vec::new(),
        };
        let out_images = match (&slice.middle, &slice.outgoing) {
            (Some(piece), Some(_)) => images(layout, piece.i, &middle, &outgoing)?,
            _ => vec![Vec::new(); middle.len()],
        };
        Ok(WeightBlock { middle, out_dim: outgoing.len() as u32, in_images, out_images })
    }

    fn cycles(&self) -> usize {
        self.middle.len() - linalg::rank(self.out_images.iter().cloned())
    }

    fn homology(&self) -> u64 {
        (self.cycles() - linalg::rank(self.in_images.iter().cloned())) as u64
    }
}

fn dominant_weights(dims: &[u32], d: u32) -> Vec<Weight> {
    dims.iter()
        .map(|&m| {
            partitions_of(d, Some(m as usize))
                .into_iter()
                .map(|l| (0..m as usize).map(|k| l.part(k)).collect::<Vec<u32>>())
                .collect::<Vec<_>>()
        })
        .multi_cartesian_product()
        .collect()
}

fn all_weights(dims: &[u32], d: u32) -> Vec<Weight> {
    dominant_weights(dims, d)
        .into_iter()
        .flat_map(|w| w.iter().map(|v| distinct_permutations(v)).multi_cartesian_product().collect::<Vec<_>>())
        .collect()
}

/// All distinct rearrangements of `v`, in lexicographic order.
fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(k) = (1..cur.len()).rev().find(|&k| cur[k - 1] < cur[k]) else { return out };
        let k = k - 1;
        let l = (k + 1..cur.len()).rev().find(|&l| cur[l] > cur[k]).expect("successor exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
        out.push(cur.clone());
    }
}

fn expand_orbits(dominant: &[(Weight, u64)]) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    for (w, m) in dominant.iter().filter(|(_, m)| *m > 0) {
        for full in w.iter().map(|v| distinct_permutations(v)).multi_cartesian_product() {
            out.insert(full, *m);
        }
    }
    out
}

/// `F_p^{(d)}` at the given dimensions, with the budget from [`capacity_budget`].
pub fn koszul_homology(inst: &SegreInstance, p: u32, d: u32) -> Result<HomologyReport> {
    koszul_homology_with_budget(inst, p, d, capacity_budget())
}

pub fn koszul_homology_with_budget(inst: &SegreInstance, p: u32, d: u32, budget: u128) -> Result<HomologyReport> {
    let layout = Layout::discrete(&inst.dims);
    let slice = Slice::build(&layout, p, d, budget)?;
    let dominant = dominant_weights(&inst.dims, d)
        .into_par_iter()
        .map(|w| {
            let block = WeightBlock::new(&layout, &slice, &layout.flatten(&w))?;
            Ok((w, block.homology()))
        })
        .collect::<Result<Vec<_>>>()?;
    HomologyReport::from_dominant(p, d, &inst.dims, dominant)
}

/// Dimension of the weight-`ω` subspace of `F_p^{(d)}`, computed directly at
/// `ω` whether or not it is dominant.
pub fn homology_at_weight(inst: &SegreInstance, p: u32, d: u32, weight: &[Vec<u32>]) -> Result<u64> {
    if weight.len() != inst.dims.len() || weight.iter().zip(&inst.dims).any(|(v, &m)| v.len() != m as usize) {
        return Err(Error::Argument(format!("weight {weight:?} does not match dimensions {:?}", inst.dims)));
    }
    if weight.iter().any(|v| v.iter().sum::<u32>() != d) {
        return Ok(0);
    }
    let layout = Layout::discrete(&inst.dims);
    let slice = Slice::build(&layout, p, d, capacity_budget())?;
    Ok(WeightBlock::new(&layout, &slice, &layout.flatten(weight))?.homology())
}

/// Check `∂∘∂ = 0` on the slice at every weight (not only dominant ones).
pub fn differentials_compose_to_zero(inst: &SegreInstance, p: u32, d: u32) -> Result<bool> {
    let layout = Layout::discrete(&inst.dims);
    let slice = Slice::build(&layout, p, d, capacity_budget())?;
    let results = all_weights(&inst.dims, d)
        .into_par_iter()
        .map(|w| {
            let block = WeightBlock::new(&layout, &slice, &layout.flatten(&w))?;
            Ok(block.in_images.iter().all(|v| linalg::apply(&block.out_images, v).is_empty()))
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(results.into_iter().all(|b| b))
}

/// Multiplicities of `S_{λ_1} ⊗ … ⊗ S_{λ_n}` in a polynomial representation
/// given by its weight table, by repeatedly peeling off the highest weight.
pub fn schur_extract(weight_table: &BTreeMap<Weight, i64>, dims: &[u32]) -> Result<Decomposition> {
    let mut table: BTreeMap<Weight, i64> =
        weight_table.iter().filter(|(_, &m)| m != 0).map(|(w, &m)| (w.clone(), m)).collect();
    let mut out = Decomposition::new();
    while let Some((top, &mult)) = table.last_key_value() {
        if top.len() != dims.len() || top.iter().zip(dims).any(|(v, &m)| v.len() != m as usize) {
            return Err(Error::Argument(format!("weight {top:?} does not match dimensions {dims:?}")));
        }
        if mult < 0 || top.iter().any(|v| v.windows(2).any(|p| p[0] < p[1])) {
            return Err(Error::NotPolynomialCharacter(format!(
                "highest remaining weight {top:?} has multiplicity {mult}"
            )));
        }
        let lambdas: Vec<Partition> = top.iter().map(|v| Partition::from_composition(v)).collect();
        let per_factor = lambdas.iter().zip(dims).map(|(l, &m)| factor_weights(l, m)).collect::<Result<Vec<_>>>()?;
        for combo in per_factor.iter().map(|v| v.iter()).multi_cartesian_product() {
            let weight: Weight = combo.iter().map(|(w, _)| w.clone()).collect();
            let k: i64 = combo.iter().map(|(_, k)| *k as i64).product();
            let entry = table.entry(weight.clone()).or_insert(0);
            *entry -= mult * k;
            if *entry == 0 {
                table.remove(&weight);
            }
        }
        out.insert(lambdas, mult as u64);
    }
    Ok(out)
}

/// Weights of `S_λ(ℂ^m)` with their multiplicities.
fn factor_weights(lambda: &Partition, m: u32) -> Result<Vec<(Vec<u32>, u64)>> {
    let mut out = Vec::new();
    for mu in partitions_of(lambda.size(), Some(m as usize)) {
        let k = kostka(lambda, mu.parts())?;
        if k == 0 {
            continue;
        }
        let padded: Vec<u32> = (0..m as usize).map(|i| mu.part(i)).collect();
        out.extend(distinct_permutations(&padded).into_iter().map(|w| (w, k)));
    }
    Ok(out)
}

/// Set partitions of `{0, …, n−1}` other than the partition into singletons,
/// ordered by block sizes (descending, compared lexicographically) and then by blocks.
pub fn coarser_set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(k: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == labels.len() {
            let mut blocks = vec![Vec::new(); max];
            for (x, &b) in labels.iter().enumerate() {
                blocks[b].push(x);
            }
            if blocks.len() < labels.len() {
                out.push(blocks);
            }
            return;
        }
        for b in 0..=max {
            labels[k] = b;
            rec(k + 1, max.max(b + 1), labels, out);
        }
    }
    if n > 0 {
        rec(1, 1, &mut labels, &mut out);
    }
    out.sort_by_cached_key(|blocks| {
        let mut sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        (sizes, blocks.clone())
    });
    out
}

/// Tensor expansion `⊗_B Sym^i(V_B) → ⊗_x Sym^i(V_x)` of a basis element,
/// identity on the wedge part.
fn expand_key(merged: &Layout, fine: &Layout, i: usize, key: &[u32]) -> Vec<u32> {
    let n = fine.dims.len();
    let mut segments = vec![Vec::with_capacity(i); n];
    for (b, factors) in merged.blocks.iter().enumerate() {
        for &v in &key[b * i..(b + 1) * i] {
            for (x, c) in factors.iter().zip(merged.decode(b, v)) {
                segments[*x].push(c);
            }
        }
    }
    let mut out = Vec::with_capacity(key.len() - merged.blocks.len() * i + n * i);
    for mut seg in segments {
        seg.sort_unstable();
        out.extend(seg);
    }
    out.extend_from_slice(&key[merged.blocks.len() * i..]);
    out
}

/// Dimension and decomposition of the new syzygies: `F_p^{(d)}` modulo the
/// images of `F_p^{(d)}` of every merged instance.
pub fn psi_new_dimension(inst: &SegreInstance, p: u32, d: u32) -> Result<HomologyReport> {
    psi_new_dimension_with_budget(inst, p, d, capacity_budget())
}

pub fn psi_new_dimension_with_budget(inst: &SegreInstance, p: u32, d: u32, budget: u128) -> Result<HomologyReport> {
    let n = inst.num_factors();
    if n < 2 {
        return Err(Error::Argument("new syzygies are defined for at least two factors".into()));
    }
    let fine = Layout::discrete(&inst.dims);
    let slice = Slice::build(&fine, p, d, budget)?;
    let merged: Vec<(Layout, Slice)> = coarser_set_partitions(n)
        .into_iter()
        .map(|blocks| {
            let layout = Layout::new(&inst.dims, blocks);
            let slice = Slice::build(&layout, p, d, budget)?;
            Ok((layout, slice))
        })
        .collect::<Result<_>>()?;
    let mid_i = (d as i64 - p as i64).max(0) as usize;
    let dominant = dominant_weights(&inst.dims, d)
        .into_par_iter()
        .map(|w| {
            let flat = fine.flatten(&w);
            let block = WeightBlock::new(&fine, &slice, &flat)?;
            let cycles = block.cycles();
            if cycles == 0 {
                return Ok((w, 0));
            }
            let index = index_of(&block.middle);
            let mut span = EchelonBasis::new();
            for v in &block.in_images {
                span.insert(v.clone());
            }
            for (layout, mslice) in &merged {
                let mblock = WeightBlock::new(layout, mslice, &flat)?;
                let cols: Vec<u32> = mblock
                    .middle
                    .iter()
                    .map(|k| {
                        let key = expand_key(layout, &fine, mid_i, k);
                        index
                            .get(key.as_slice())
                            .copied()
                            .ok_or_else(|| Error::Consistency("tensor expansion leaves the weight space".into()))
                    })
                    .collect::<Result<_>>()?;
                for z in linalg::kernel(&mblock.out_images, mblock.out_dim) {
                    let image = linalg::from_entries(z.into_iter().map(|(c, v)| (cols[c as usize], v)));
                    span.insert(image);
                }
                if span.rank() == cycles {
                    break;
                }
            }
            Ok((w, (cycles - span.rank()) as u64))
        })
        .collect::<Result<Vec<_>>>()?;
    HomologyReport::from_dominant(p, d, &inst.dims, dominant)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(dims: &[u32]) -> SegreInstance {
        SegreInstance::new(dims.to_vec()).unwrap()
    }

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn ring_dimensions() {
        assert_eq!(graded_ring_dimension(&inst(&[2, 2]), 1), 4);
        assert_eq!(graded_ring_dimension(&inst(&[2, 2]), 2), 9);
        assert_eq!(graded_ring_dimension(&inst(&[3, 5, 7]), 0), 1);
        let layout = Layout::discrete(&[2, 3]);
        let count: usize = layout.ring_monomials(2).values().map(Vec::len).sum();
        assert_eq!(count as u128, graded_ring_dimension(&inst(&[2, 3]), 2));
    }

    #[test]
    fn quadrics_of_two_lines() {
        let r = koszul_homology(&inst(&[2, 2]), 1, 2).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(r.decomposition, Decomposition::from([(vec![part(&[1, 1]), part(&[1, 1])], 1)]));
        assert_eq!(koszul_homology(&inst(&[2, 2]), 1, 3).unwrap().dimension, 0);
        assert_eq!(koszul_homology(&inst(&[2, 2]), 0, 0).unwrap().dimension, 1);
        assert_eq!(koszul_homology(&inst(&[2, 2]), 0, 1).unwrap().dimension, 0);
    }

    #[test]
    fn quadrics_of_three_lines() {
        let r = koszul_homology(&inst(&[2, 2, 2]), 1, 2).unwrap();
        assert_eq!(r.dimension, 9);
        let (s, w) = (part(&[2]), part(&[1, 1]));
        let expected = Decomposition::from([
            (vec![s.clone(), w.clone(), w.clone()], 1),
            (vec![w.clone(), s.clone(), w.clone()], 1),
            (vec![w.clone(), w.clone(), s.clone()], 1),
        ]);
        assert_eq!(r.decomposition, expected);
    }

    #[test]
    fn linear_syzygies_of_line_times_plane() {
        let r = koszul_homology(&inst(&[2, 3]), 2, 3).unwrap();
        assert_eq!(r.dimension, 2);
        assert_eq!(r.decomposition, Decomposition::from([(vec![part(&[2, 1]), part(&[1, 1, 1])], 1)]));
    }

    #[test]
    fn differentials_square_to_zero() {
        for dims in [&[2, 2][..], &[2, 3], &[2, 2, 2], &[1, 3]] {
            for p in 0..=3 {
                for d in p..=2 * p + 1 {
                    assert!(differentials_compose_to_zero(&inst(dims), p, d).unwrap(), "{dims:?} p={p} d={d}");
                }
            }
        }
    }

    #[test]
    fn homology_independent_of_basis_order() {
        for (dims, p, d) in [(vec![2, 2, 2], 1, 2), (vec![2, 3], 2, 3), (vec![2, 2], 1, 2)] {
            let layout = Layout::discrete(&dims);
            let slice = Slice::build(&layout, p, d, DEFAULT_CAPACITY).unwrap();
            for w in dominant_weights(&dims, d) {
                let flat = layout.flatten(&w);
                let forward = WeightBlock::new(&layout, &slice, &flat).unwrap().homology();
                let mut bases = slice.bases(&flat);
                for b in bases.iter_mut() {
                    b.reverse();
                    let n = b.len();
                    if n > 2 {
                        b.swap(0, n / 2);
                    }
                }
                let shuffled = WeightBlock::from_bases(&layout, &slice, bases).unwrap().homology();
                assert_eq!(forward, shuffled, "{dims:?} {w:?}");
            }
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let err = koszul_homology_with_budget(&inst(&[2, 2, 2]), 2, 3, 10).unwrap_err();
        assert!(matches!(err, Error::Capacity { budget: 10, .. }));
    }

    #[test]
    fn extract_examples() {
        let one = |w: &[&[u32]]| w.iter().map(|v| v.to_vec()).collect::<Weight>();
        let table = BTreeMap::from([
            (one(&[&[1, 0], &[1, 0]]), 1),
            (one(&[&[1, 0], &[0, 1]]), 1),
            (one(&[&[0, 1], &[1, 0]]), 1),
            (one(&[&[0, 1], &[0, 1]]), 1),
        ]);
        assert_eq!(schur_extract(&table, &[2, 2]).unwrap(), Decomposition::from([(vec![part(&[1]), part(&[1])], 1)]));
        let sym2 = BTreeMap::from([(one(&[&[2, 0]]), 1), (one(&[&[1, 1]]), 1), (one(&[&[0, 2]]), 1)]);
        assert_eq!(schur_extract(&sym2, &[2]).unwrap(), Decomposition::from([(vec![part(&[2])], 1)]));
        let bad = BTreeMap::from([(one(&[&[0, 1]]), 1)]);
        assert!(matches!(schur_extract(&bad, &[2]), Err(Error::NotPolynomialCharacter(_))));
    }

    #[test]
    fn set_partitions() {
        assert_eq!(coarser_set_partitions(2), vec![vec![vec![0, 1]]]);
        let three = coarser_set_partitions(3);
        assert_eq!(three.len(), 4);
        assert_eq!(three[0], vec![vec![0], vec![1, 2]]);
        assert_eq!(three[3], vec![vec![0, 1, 2]]);
        assert_eq!(coarser_set_partitions(4).len(), 14);
    }

    #[test]
    fn new_syzygies() {
        assert_eq!(psi_new_dimension(&inst(&[2, 2]), 1, 2).unwrap().dimension, 1);
        assert_eq!(psi_new_dimension(&inst(&[2, 2, 2]), 1, 2).unwrap().dimension, 0);
        assert!(psi_new_dimension(&inst(&[2]), 1, 2).is_err());
    }
}
