//! Acceptance checks. Each criterion is an exact computation with a time limit;
//! the test suite and the `verify` command both run them from here.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::characters::{character_table, kronecker_coefficient, mn_character};
use crate::koszul::{koszul_homology, psi_new_dimension, Decomposition, SegreInstance};
use crate::partition::{dimension_sn, gl_dimension, partitions_of};
use crate::poly::{MultiPoly, Ring, UniPoly};
use crate::rationality::{complete_homogeneous, multinomial_sum_rational, rational_reconstruct, weyl_series};
use crate::series::{
    closed_exponential_form, exp_combination, f4_degree5, f_segre, lascoux_leading, schur_of_w_closed,
    schur_of_w_recurrence, DeltaSeries, Monomial, TruncationPolicy,
};
use crate::{rat_int, Partition, Rational};

type Check = std::result::Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    check: fn(bool) -> Check,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    /// One-line summary, e.g. `PASS  5 oracle ground truth (0.01s / 10s): …`.
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.2}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

impl Criterion {
    pub fn run(&self, quick: bool) -> Outcome {
        let start = Instant::now();
        let result = (self.check)(quick);
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if passed && elapsed > self.limit {
            passed = false;
            detail = format!("correct but over the time limit; {detail}");
        }
        Outcome { id: self.id, name: self.name, passed, detail, elapsed, limit: self.limit }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, secs, check| Criterion { id, name, limit: Duration::from_secs(secs), check };
    vec![
        c(1, "closed form of f_1", 1, closed_form_p1 as fn(bool) -> Check),
        c(2, "f_1* expansion", 1, f1_star_expansion),
        c(3, "closed forms of f_2 and f_3", 30, closed_forms_p2_p3),
        c(4, "rectangle leading terms", 60, lascoux_cross_check),
        c(5, "oracle ground truth", 10, oracle_ground_truth),
        c(6, "degree support", 120, degree_support),
        c(7, "series against oracle", 120, series_vs_oracle),
        c(8, "new syzygies", 300, cosocle_checks),
        c(9, "two constructions of [S_λ(W)]", 30, schur_of_w_agreement),
        c(10, "character infrastructure", 30, character_infrastructure),
        c(11, "multinomial sums", 10, multinomial_sums),
        c(12, "reconstruction of f_1*", 10, reconstruct_f1_star),
        c(13, "Weyl constant terms", 5, weyl_engine),
    ]
}

pub fn run_all(quick: bool) -> Vec<Outcome> {
    criteria().iter().map(|c| c.run(quick)).collect()
}

fn fail(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

fn expect_same(label: &str, a: &DeltaSeries, b: &DeltaSeries) -> std::result::Result<(), String> {
    if a.same_terms(b) {
        Ok(())
    } else {
        Err(format!("{label}: series differ\n  left:  {a}\n  right: {b}"))
    }
}

fn closed_form_p1(_: bool) -> Check {
    let policy = TruncationPolicy::new(5, 4);
    let closed = exp_combination(&closed_exponential_form(1).map_err(fail)?, policy).map_err(fail)?;
    let f1 = f_segre(1, policy).map_err(fail)?;
    expect_same("f_1", &closed, &f1)?;
    Ok(format!("{} terms agree", f1.terms().len()))
}

fn f1_star_expansion(_: bool) -> Check {
    let policy = TruncationPolicy::new(4, 2);
    let star = f_segre(1, policy).map_err(fail)?.order_normalize();
    let (s, w) = (p(&[2]), p(&[1, 1]));
    let mono = |vars: &[&Partition]| Monomial::new(vars.iter().map(|&x| x.clone()).collect());
    let expected: [Vec<(Monomial, i64)>; 3] = [
        vec![(mono(&[&w, &w]), 1)],
        vec![(mono(&[&s, &w, &w]), 3)],
        vec![(mono(&[&s, &s, &w, &w]), 6), (mono(&[&w, &w, &w, &w]), 1)],
    ];
    for (n, terms) in (2..=4).zip(expected) {
        let mut want = DeltaSeries::zero(policy);
        for (m, c) in terms {
            want.add_term(m, rat_int(c));
        }
        expect_same(&format!("order {n}"), &star.order_component(n), &want)?;
    }
    Ok("w², 3sw², 6s²w² + w⁴".into())
}

fn closed_forms_p2_p3(_: bool) -> Check {
    let policy = TruncationPolicy::new(5, 5);
    for q in [2, 3] {
        let closed = exp_combination(&closed_exponential_form(q).map_err(fail)?, policy).map_err(fail)?;
        expect_same(&format!("f_{q}"), &closed, &f_segre(q, policy).map_err(fail)?)?;
    }
    Ok("f_2 = χ^(3), f_3 = −χ^(4) to order 5".into())
}

fn lascoux_cross_check(_: bool) -> Check {
    let mut checked = 0;
    for q in 1..=3u32 {
        for d in 0..=2 * q + 1 {
            let policy = TruncationPolicy::new(2, d);
            let slice = f_segre(q, policy).map_err(fail)?.order_component(2).degree_component(d);
            expect_same(&format!("p={q} d={d}"), &lascoux_leading(q, d), &slice)?;
            checked += 1;
        }
    }
    let policy = TruncationPolicy::new(2, 5);
    let slice = f4_degree5(policy).map_err(fail)?.order_component(2).degree_component(5);
    expect_same("p=4 d=5", &lascoux_leading(4, 5), &slice)?;
    Ok(format!("{} slices agree", checked + 1))
}

fn inst(dims: &[u32]) -> std::result::Result<SegreInstance, String> {
    SegreInstance::new(dims.to_vec()).map_err(fail)
}

fn oracle_ground_truth(_: bool) -> Check {
    let (s, w) = (p(&[2]), p(&[1, 1]));
    let two = koszul_homology(&inst(&[2, 2])?, 1, 2).map_err(fail)?;
    let want = Decomposition::from([(vec![w.clone(), w.clone()], 1)]);
    if two.dimension != 1 || two.decomposition != want {
        return Err(format!("(2,2) p=1 d=2 gave {} {:?}", two.dimension, two.decomposition));
    }
    let three = koszul_homology(&inst(&[2, 2, 2])?, 1, 2).map_err(fail)?;
    let want = Decomposition::from([
        (vec![s.clone(), w.clone(), w.clone()], 1),
        (vec![w.clone(), s.clone(), w.clone()], 1),
        (vec![w.clone(), w.clone(), s.clone()], 1),
    ]);
    if three.dimension != 9 || three.decomposition != want {
        return Err(format!("(2,2,2) p=1 d=2 gave {} {:?}", three.dimension, three.decomposition));
    }
    for d in [3, 4] {
        let r = koszul_homology(&inst(&[2, 2])?, 1, d).map_err(fail)?;
        if r.dimension != 0 {
            return Err(format!("(2,2) p=1 d={d} gave {}", r.dimension));
        }
    }
    Ok("dimensions 1, 9, 0, 0 with the expected decompositions".into())
}

fn grid(max_factors: usize) -> Vec<Vec<u32>> {
    (1..=max_factors).flat_map(|n| (0..n).map(|_| [1u32, 2]).multi_cartesian_product()).collect()
}

fn degree_support(quick: bool) -> Check {
    let mut runs = 0;
    for dims in grid(if quick { 2 } else { 3 }) {
        let instance = inst(&dims)?;
        for q in 0..=2u32 {
            for d in 0..=2 * q + 2 {
                let dim = koszul_homology(&instance, q, d).map_err(fail)?.dimension;
                runs += 1;
                let allowed = if q == 0 { d == 0 } else { (q + 1..=2 * q).contains(&d) };
                if dim != 0 && !allowed {
                    return Err(format!("dims {dims:?} p={q} d={d} has dimension {dim}"));
                }
            }
        }
    }
    Ok(format!("{runs} oracle runs{}", if quick { " (quick grid)" } else { "" }))
}

/// Dimension of the order-`n`, degree-`d` slice of a series evaluated at `dims`:
/// each monomial `X_{μ_1}⋯X_{μ_n}` contributes `Σ_σ Π_j dim S_{μ_σ(j)}(ℂ^{d_j})`.
pub fn evaluate_slice(series: &DeltaSeries, dims: &[u32], d: u32) -> Rational {
    let n = dims.len();
    let mut total = rat_int(0);
    for (m, c) in series.terms() {
        if m.order() != n || m.degree() != Some(d) {
            continue;
        }
        let mut sum = 0u128;
        for perm in (0..n).permutations(n) {
            sum += perm.iter().zip(dims).map(|(&k, &dj)| gl_dimension(&m.vars()[k], dj)).product::<u128>();
        }
        total += c * Rational::from_integer(sum.into());
    }
    total
}

fn series_vs_oracle(quick: bool) -> Check {
    let mut runs = 0;
    for q in 1..=2u32 {
        let series = f_segre(q, TruncationPolicy::new(3, 2 * q + 2)).map_err(fail)?;
        for dims in grid(if quick { 2 } else { 3 }) {
            let instance = inst(&dims)?;
            for d in 0..=2 * q + 2 {
                let oracle = koszul_homology(&instance, q, d).map_err(fail)?.dimension;
                let predicted = evaluate_slice(&series, &dims, d);
                runs += 1;
                if predicted != Rational::from_integer(oracle.into()) {
                    return Err(format!("dims {dims:?} p={q} d={d}: series {predicted}, oracle {oracle}"));
                }
            }
        }
    }
    Ok(format!("{runs} slices agree{}", if quick { " (quick grid)" } else { "" }))
}

fn cosocle_checks(quick: bool) -> Check {
    let mut cases = vec![(vec![2, 2], 1, 2, 1), (vec![2, 2, 2], 1, 2, 0)];
    if !quick {
        cases.push((vec![2, 2, 3], 2, 3, 0));
    }
    let mut found = Vec::new();
    for (dims, q, d, want) in cases {
        let got = psi_new_dimension(&inst(&dims)?, q, d).map_err(fail)?.dimension;
        if got != want {
            return Err(format!("dims {dims:?} p={q} d={d}: {got} new syzygies, expected {want}"));
        }
        found.push(got.to_string());
    }
    Ok(format!("new dimensions {}{}", found.join(", "), if quick { " (quick)" } else { "" }))
}

fn schur_of_w_agreement(_: bool) -> Check {
    let policy = TruncationPolicy::new(4, 3);
    let mut count = 0;
    for size in 1..=3 {
        for lambda in partitions_of(size, None) {
            let closed = schur_of_w_closed(&lambda, policy).map_err(fail)?;
            let rec = schur_of_w_recurrence(&lambda, policy).map_err(fail)?;
            expect_same(&format!("λ={lambda}"), &closed, &rec)?;
            count += 1;
        }
    }
    Ok(format!("{count} partitions agree to order 4"))
}

fn character_infrastructure(_: bool) -> Check {
    for q in 1..=6 {
        character_table(q).map_err(fail)?.check_orthonormality().map_err(fail)?;
    }
    for q in 1..=5 {
        let parts = partitions_of(q, None);
        for (a, b, c) in parts
            .iter()
            .tuple_combinations::<(_, _, _)>()
            .chain(parts.iter().flat_map(|x| parts.iter().map(move |y| (x, x, y))))
        {
            let base = kronecker_coefficient(a, b, c).map_err(fail)?;
            for perm in [[b, a, c], [a, c, b], [c, b, a], [b, c, a], [c, a, b]] {
                if kronecker_coefficient(perm[0], perm[1], perm[2]).map_err(fail)? != base {
                    return Err(format!("Kronecker coefficient of {a}, {b}, {c} is not symmetric"));
                }
            }
        }
    }
    for q in 1..=7 {
        let id = Partition::column(q);
        for lambda in partitions_of(q, None) {
            if mn_character(&lambda, &id).map_err(fail)? != dimension_sn(&lambda) as i64 {
                return Err(format!("χ_{lambda}(1) differs from the hook-length dimension"));
            }
        }
    }
    Ok("orthonormality p ≤ 6, Kronecker symmetry p ≤ 5, degrees |λ| ≤ 7".into())
}

/// Direct evaluation of `Σ_k p(k) C_{k+e} t^{|k|}` up to `t^{n-1}`.
pub fn multinomial_sum_direct(poly: &MultiPoly, e: &[i64], n: usize) -> Vec<Rational> {
    let d = e.len();
    let mut out = vec![rat_int(0); n];
    for (total, slot) in out.iter_mut().enumerate() {
        for k in compositions(total as u32, d) {
            let m: Vec<i64> = k.iter().zip(e).map(|(&a, &b)| a as i64 + b).collect();
            if m.iter().any(|&x| x < 0) {
                continue;
            }
            let point: Vec<Rational> = k.iter().map(|&x| rat_int(x as i64)).collect();
            *slot += poly.eval(&point) * multinomial(&m);
        }
    }
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn multinomial(m: &[i64]) -> Rational {
    let fact = |k: i64| (1..=k as u128).product::<u128>();
    let value = m.iter().fold(fact(m.iter().sum()), |acc, &x| acc / fact(x));
    Rational::from_integer(value.into())
}

/// Polynomials in `k_1, …, k_d` of degree at most 2: `1`, `k_i`, `k_i k_j`.
pub fn low_degree_polys(d: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::constant(rat_int(1))];
    for i in 0..d {
        out.push(MultiPoly::var(i));
        for j in i..d {
            out.push(Ring::mul(&MultiPoly::var(i), &MultiPoly::var(j)));
        }
    }
    out
}

fn multinomial_sums(quick: bool) -> Check {
    let q = |c: &[i64]| UniPoly::new(c.iter().map(|&x| rat_int(x)).collect());
    let one = MultiPoly::constant(rat_int(1));
    let cases = [
        (one.clone(), vec![0], q(&[1]), q(&[1, -1])),
        (one.clone(), vec![0, 0], q(&[1]), q(&[1, -2])),
        (MultiPoly::var(0), vec![0], q(&[0, 1]), q(&[1, -2, 1])),
    ];
    for (poly, e, num, den) in cases {
        let r = multinomial_sum_rational(&poly, &e, e.len()).map_err(fail)?;
        if r.numerator() != &num || r.denominator() != &den {
            return Err(format!("p={poly} e={e:?} gave {r}"));
        }
    }
    let shifts: Vec<i64> = if quick { vec![-1, 0, 2] } else { (-2..=2).collect() };
    let cases: Vec<(usize, Vec<i64>, MultiPoly)> = (1..=3usize)
        .flat_map(|d| {
            let polys = low_degree_polys(d);
            (0..d)
                .map(|_| shifts.iter().copied())
                .multi_cartesian_product()
                .flat_map(move |e| polys.clone().into_iter().map(move |poly| (d, e.clone(), poly)))
        })
        .collect();
    let count = cases.len();
    cases.into_par_iter().try_for_each(|(d, e, poly)| {
        let r = multinomial_sum_rational(&poly, &e, d).map_err(fail)?;
        if r.expand(10) != multinomial_sum_direct(&poly, &e, 10) {
            return Err(format!("p={poly} e={e:?}: {r} does not match direct summation"));
        }
        if r.pole_factors(d as i64).is_none() {
            return Err(format!("p={poly} e={e:?}: {r} has a pole away from t = 1/a"));
        }
        Ok(())
    })?;
    Ok(format!("3 closed forms and {count} expansions agree"))
}

/// Coefficients of `t^0 … t^{n-1}` of `f_1*` in `ℚ[s, w]` with `s = X_(2)`, `w = X_(1,1)`.
pub fn f1_star_coefficients(n: usize) -> crate::Result<Vec<MultiPoly>> {
    let series = f_segre(1, TruncationPolicy::new(n.saturating_sub(1), 2))?.order_normalize();
    let (s, w) = (p(&[2]), p(&[1, 1]));
    let mut out = vec![MultiPoly::default(); n];
    for (m, c) in series.terms() {
        let es = m.vars().iter().filter(|&x| *x == s).count() as u32;
        let ew = m.vars().iter().filter(|&x| *x == w).count() as u32;
        if es + ew != m.order() as u32 {
            return Err(crate::Error::Consistency(format!("unexpected variable in f_1: {m}")));
        }
        out[m.order()].add_term(vec![es, ew], c.clone());
    }
    Ok(out)
}

/// `(1 − st)((1 − st)² − w²t²)` in `ℚ[s, w][t]`.
pub fn f1_star_denominator() -> UniPoly<MultiPoly> {
    let s = MultiPoly::var(0);
    let w = MultiPoly::var(1);
    let one = <MultiPoly as Ring>::one();
    let lin = UniPoly::new(vec![one.clone(), Ring::neg(&s)]);
    let w2 = UniPoly::monomial(Ring::mul(&w, &w), 2);
    lin.mul(&lin.mul(&lin).sub(&w2))
}

fn reconstruct_f1_star(_: bool) -> Check {
    let coeffs = f1_star_coefficients(8).map_err(fail)?;
    let r = rational_reconstruct(&coeffs, 3).map_err(fail)?.ok_or("no rational function found")?;
    if r.expand(8) != coeffs {
        return Err(format!("{r} does not reproduce the coefficients"));
    }
    if f1_star_denominator().div_exact(r.denominator()).is_none() {
        return Err(format!("denominator {} does not divide the expected one", r.denominator()));
    }
    let names = ["s", "w"];
    let show = |poly: &UniPoly<MultiPoly>| {
        poly.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !Ring::is_zero(*c))
            .map(|(i, c)| format!("({})t^{i}", c.display_with(&names)))
            .join(" + ")
    };
    Ok(format!("[{}] / [{}]", show(r.numerator()), show(r.denominator())))
}

fn weyl_engine(_: bool) -> Check {
    for d in 1..=3 {
        let got = weyl_series(d, &complete_homogeneous(d, 4), 1).map_err(fail)?;
        if got != vec![rat_int(1); 4] {
            return Err(format!("d={d} gave {got:?}"));
        }
    }
    Ok("1, 1, 1, 1 for d = 1, 2, 3".into())
}
