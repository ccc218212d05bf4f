use std::collections::BTreeMap;

use itertools::Itertools;
use proptest::prelude::*;
use segre_core::characters::{character_table, class_data, kronecker_coefficient, mn_character};
use segre_core::partition::{dimension_sn, gl_dimension, kostka, lr_coefficient, lr_product, partitions_of};
use segre_core::schur::{prime_element, SymFunc};
use segre_core::{Partition, Rational};

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn cells(lambda: &Partition) -> Vec<(usize, usize)> {
    lambda.parts().iter().enumerate().flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c))).collect()
}

fn is_semistandard(lambda: &Partition, filling: &BTreeMap<(usize, usize), u32>) -> bool {
    filling.iter().all(|(&(r, c), &v)| {
        let right = filling.get(&(r, c + 1)).is_none_or(|&w| w >= v);
        let below = filling.get(&(r + 1, c)).is_none_or(|&w| w > v);
        right && below
    }) && filling.len() == lambda.size() as usize
}

fn semistandard_tableaux(lambda: &Partition, max_entry: u32) -> Vec<BTreeMap<(usize, usize), u32>> {
    let cs = cells(lambda);
    cs.iter()
        .map(|_| 1..=max_entry)
        .multi_cartesian_product()
        .map(|vals| cs.iter().copied().zip(vals).collect::<BTreeMap<_, _>>())
        .filter(|f| is_semistandard(lambda, f))
        .collect()
}

fn brute_kostka(lambda: &Partition, mu: &Partition) -> u64 {
    semistandard_tableaux(lambda, mu.len() as u32)
        .into_iter()
        .filter(|t| {
            (1..=mu.len() as u32).all(|i| t.values().filter(|&&v| v == i).count() as u32 == mu.part(i as usize - 1))
        })
        .count() as u64
}

/// Number of tabloids of row shape `mu` fixed by a permutation of cycle type `nu`:
/// the ways to pour the cycles of `nu` into rows of sizes `mu`.
fn fixed_tabloids(mu: &[u32], cycles: &[u32]) -> i64 {
    match cycles.split_first() {
        None => mu.iter().all(|&r| r == 0) as i64,
        Some((&c, rest)) => (0..mu.len())
            .filter(|&i| mu[i] >= c)
            .map(|i| {
                let mut left = mu.to_vec();
                left[i] -= c;
                fixed_tabloids(&left, rest)
            })
            .sum(),
    }
}

/// Characters from permutation characters by inverting the unitriangular Kostka matrix.
fn tabloid_characters(n: u32) -> BTreeMap<(Partition, Partition), i64> {
    let parts = partitions_of(n, None);
    let mut out = BTreeMap::new();
    let mut ordered = parts.clone();
    ordered.sort();
    for mu in ordered.iter().rev() {
        for nu in &parts {
            let mut value = fixed_tabloids(mu.parts(), nu.parts());
            for lambda in parts.iter().filter(|l| *l != mu) {
                let k = brute_kostka(lambda, mu) as i64;
                if k != 0 {
                    value -= k * out[&(lambda.clone(), nu.clone())];
                }
            }
            out.insert((mu.clone(), nu.clone()), value);
        }
    }
    out
}

#[test]
fn characters_match_tabloid_oracle() {
    for n in 1..=5 {
        for ((lambda, nu), value) in tabloid_characters(n) {
            assert_eq!(mn_character(&lambda, &nu).unwrap(), value, "χ_{lambda}({nu})");
        }
    }
}

#[test]
fn kostka_matches_tableau_count() {
    for n in 1..=5 {
        for lambda in partitions_of(n, None) {
            for mu in partitions_of(n, None) {
                assert_eq!(kostka(&lambda, mu.parts()).unwrap(), brute_kostka(&lambda, &mu), "K_{lambda},{mu}");
            }
        }
    }
}

#[test]
fn gl_dimension_counts_tableaux() {
    for n in 0..=4 {
        for lambda in partitions_of(n, None) {
            for m in 1..=3 {
                assert_eq!(gl_dimension(&lambda, m), semistandard_tableaux(&lambda, m).len() as u128, "{lambda} m={m}");
            }
        }
    }
}

#[test]
fn character_examples() {
    assert_eq!(mn_character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
    assert_eq!(mn_character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
    assert_eq!(mn_character(&part(&[3, 1]), &part(&[2, 2])).unwrap(), -1);
    assert_eq!(mn_character(&part(&[2, 2]), &part(&[2, 1, 1])).unwrap(), 0);
    assert!(mn_character(&part(&[2]), &part(&[1])).is_err());
}

#[test]
fn table_rows_and_columns_are_revlex() {
    let t = character_table(4).unwrap();
    let keys: Vec<_> = t.partitions.iter().map(|p| p.parts().to_vec()).collect();
    assert_eq!(keys, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    assert_eq!(t.values[0], vec![1; 5]);
    assert_eq!(t.values.iter().map(|r| r[4]).collect::<Vec<_>>(), vec![1, 3, 2, 3, 1]);
}

#[test]
fn class_data_examples() {
    let c = class_data(&part(&[2, 1, 1]));
    assert_eq!((c.class_size, c.centralizer_order, c.sign), (6, 4, -1));
    let c = class_data(&part(&[2, 2]));
    assert_eq!((c.class_size, c.centralizer_order, c.sign), (3, 8, 1));
}

#[test]
fn column_orthogonality() {
    for p in 1..=7 {
        let t = character_table(p).unwrap();
        for (j, cj) in t.classes.iter().enumerate() {
            for k in 0..t.partitions.len() {
                let s: i64 = t.values.iter().map(|row| row[j] * row[k]).sum();
                let want = if j == k { cj.centralizer_order as i64 } else { 0 };
                assert_eq!(s, want);
            }
        }
    }
}

#[test]
fn sign_twist_conjugates() {
    for p in 1..=6 {
        let t = character_table(p).unwrap();
        for lambda in &t.partitions {
            for (mu, class) in t.partitions.iter().zip(&t.classes) {
                assert_eq!(t.value(&lambda.conjugate(), mu), class.sign as i64 * t.value(lambda, mu));
            }
        }
    }
}

#[test]
fn kronecker_examples() {
    let (hook, column) = (part(&[2, 1]), part(&[1, 1, 1]));
    assert_eq!(kronecker_coefficient(&hook, &hook, &part(&[3])).unwrap(), 1);
    assert_eq!(kronecker_coefficient(&hook, &hook, &hook).unwrap(), 1);
    assert_eq!(kronecker_coefficient(&hook, &hook, &column).unwrap(), 1);
    assert_eq!(kronecker_coefficient(&part(&[2, 2]), &part(&[2, 2]), &part(&[2, 2])).unwrap(), 1);
    assert_eq!(kronecker_coefficient(&part(&[3, 1]), &part(&[3, 1]), &part(&[2, 1, 1])).unwrap(), 1);
    assert!(kronecker_coefficient(&part(&[2]), &part(&[2]), &part(&[1])).is_err());
}

#[test]
fn kronecker_symmetry_and_units() {
    for p in 1..=5 {
        let ps = partitions_of(p, None);
        for (a, b, c) in ps.iter().cartesian_product(&ps).cartesian_product(&ps).map(|((a, b), c)| (a, b, c)) {
            let g = kronecker_coefficient(a, b, c).unwrap();
            for (x, y, z) in [(b, a, c), (a, c, b), (c, b, a), (b, c, a)] {
                assert_eq!(kronecker_coefficient(x, y, z).unwrap(), g);
            }
            assert_eq!(kronecker_coefficient(&a.conjugate(), &b.conjugate(), c).unwrap(), g);
        }
        for (a, b) in ps.iter().cartesian_product(&ps) {
            assert_eq!(kronecker_coefficient(a, b, &Partition::row(p)).unwrap(), (a == b) as u64);
            assert_eq!(kronecker_coefficient(a, b, &Partition::column(p)).unwrap(), (*a == b.conjugate()) as u64);
            let total: u64 = ps.iter().map(|c| kronecker_coefficient(a, b, c).unwrap() * dimension_sn(c)).sum();
            assert_eq!(total, dimension_sn(a) * dimension_sn(b));
        }
    }
}

#[test]
fn lr_examples() {
    assert_eq!(lr_coefficient(&part(&[2, 1]), &part(&[2, 1]), &part(&[3, 2, 1])), 2);
    assert_eq!(lr_coefficient(&part(&[1]), &part(&[1]), &part(&[2])), 1);
    assert_eq!(lr_coefficient(&part(&[2]), &part(&[2]), &part(&[2, 1, 1])), 0);
    let prod = lr_product(&part(&[1]), &part(&[1]));
    assert_eq!(prod.as_slice(), &[(part(&[2]), 1), (part(&[1, 1]), 1)]);
}

#[test]
fn products_of_rows_give_kostka_numbers() {
    for n in 1..=6 {
        for mu in partitions_of(n, None) {
            let mut product = vec![(Partition::empty(), 1u64)];
            for &r in mu.parts() {
                let mut next: BTreeMap<Partition, u64> = BTreeMap::new();
                for (lam, c) in &product {
                    for (nu, k) in lr_product(lam, &Partition::row(r)).iter() {
                        *next.entry(nu.clone()).or_default() += c * k;
                    }
                }
                product = next.into_iter().collect();
            }
            for (lambda, c) in product {
                assert_eq!(c, kostka(&lambda, mu.parts()).unwrap());
            }
        }
    }
}

#[test]
fn lr_dimensions_multiply() {
    for (a, b) in (0..=3).flat_map(|n| partitions_of(n, None)).tuple_combinations() {
        for m in 1..=3 {
            let total: u128 = lr_product(&a, &b).iter().map(|(nu, c)| *c as u128 * gl_dimension(nu, m)).sum();
            assert_eq!(total, gl_dimension(&a, m) * gl_dimension(&b, m));
        }
    }
}

#[test]
fn boxtimes_unit_and_dimensions() {
    for lambda in (0..=4).flat_map(|n| partitions_of(n, None)) {
        let x = SymFunc::schur(lambda.clone());
        assert_eq!(x.boxtimes(&SymFunc::one()), x);
        let y = SymFunc::schur(lambda.conjugate());
        for m in 1..=3 {
            assert_eq!(x.boxtimes(&y).evaluate_dimension(m), x.evaluate_dimension(m) * y.evaluate_dimension(m));
        }
    }
}

#[test]
fn prime_elements_multiply_by_union() {
    let union = |a: &Partition, b: &Partition| Partition::from_composition(&[a.parts(), b.parts()].concat());
    for (a, b) in (1..=3).flat_map(|n| partitions_of(n, None)).tuple_combinations() {
        let lhs = prime_element(&a).unwrap().boxtimes(&prime_element(&b).unwrap());
        assert_eq!(lhs, prime_element(&union(&a, &b)).unwrap(), "{a} {b}");
    }
}

fn arb_symfunc() -> impl Strategy<Value = SymFunc> {
    let basis: Vec<Partition> = (0..=4).flat_map(|n| partitions_of(n, None)).collect();
    prop::collection::vec((prop::sample::select(basis), -5i64..=5), 0..6)
        .prop_map(|terms| SymFunc::from_terms(terms.into_iter().map(|(l, c)| (l, Rational::from_integer(c.into())))))
}

proptest! {
    #[test]
    fn prime_basis_round_trip(x in arb_symfunc()) {
        let coords = x.to_prime_basis().unwrap();
        prop_assert_eq!(SymFunc::from_prime_basis(&coords).unwrap(), x);
    }

    #[test]
    fn boxtimes_is_commutative_and_bilinear(x in arb_symfunc(), y in arb_symfunc(), z in arb_symfunc()) {
        prop_assert_eq!(x.boxtimes(&y), y.boxtimes(&x));
        prop_assert_eq!(x.boxtimes(&(&y + &z)), &x.boxtimes(&y) + &x.boxtimes(&z));
        prop_assert_eq!(x.boxtimes(&y).boxtimes(&z), x.boxtimes(&y.boxtimes(&z)));
    }

    #[test]
    fn dimension_evaluation_is_additive(x in arb_symfunc(), y in arb_symfunc(), m in 1u32..5) {
        prop_assert_eq!((&x + &y).evaluate_dimension(m), x.evaluate_dimension(m) + y.evaluate_dimension(m));
    }
}
