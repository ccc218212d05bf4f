use proptest::prelude::*;
use segre_core::partition::{dimension_sn, partitions_of};
use segre_core::schur::{parse_symfunc, SymFunc};
use segre_core::{parse_rational, Error, Partition, Rational};

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..=6, 0..6).prop_map(|v| Partition::from_composition(&v))
}

proptest! {
    #[test]
    fn key_round_trips(lambda in arb_partition()) {
        let back: Partition = lambda.to_key().parse().unwrap();
        prop_assert_eq!(back, lambda);
    }

    #[test]
    fn conjugation_is_an_involution(lambda in arb_partition()) {
        let c = lambda.conjugate();
        prop_assert_eq!(c.size(), lambda.size());
        prop_assert_eq!(c.len() as u32, lambda.part(0));
        prop_assert_eq!(c.conjugate(), lambda);
    }

    #[test]
    fn hook_lengths_have_conjugate_multiset(lambda in arb_partition()) {
        let mut a = lambda.hook_lengths();
        let mut b = lambda.conjugate().hook_lengths();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn parse_forms() {
    let want = Partition::new(vec![2, 1]).unwrap();
    for s in ["2,1", "(2,1)", "[2, 1]", " 2 ,1 "] {
        assert_eq!(s.parse::<Partition>().unwrap(), want, "{s}");
    }
    for s in ["0", "-", ""] {
        assert_eq!(s.parse::<Partition>().unwrap(), Partition::empty(), "{s}");
    }
    for s in ["1,2", "a", "2;1", "-1"] {
        assert!(matches!(s.parse::<Partition>(), Err(Error::Parse(_))), "{s}");
    }
}

#[test]
fn enumeration_counts_and_order() {
    let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n, None).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    assert_eq!(partitions_of(5, Some(2)).len(), 3);
    for n in 1..=8 {
        let ps = partitions_of(n, None);
        assert!(ps.windows(2).all(|w| w[0].parts() > w[1].parts()));
        let squares: u64 = ps.iter().map(|l| dimension_sn(l).pow(2)).sum();
        assert_eq!(squares, (1..=n as u64).product::<u64>());
    }
}

#[test]
fn symfunc_json_round_trip() {
    let x = parse_symfunc(r#"{"2,1": "1/2", "0": "-3", "1": "2"}"#).unwrap();
    assert_eq!(x.coeff(&Partition::empty()), Rational::from_integer((-3).into()));
    let text = serde_json::to_string(&x).unwrap();
    assert_eq!(text, r#"{"0":"-3","1":"2","2,1":"1/2"}"#);
    assert_eq!(parse_symfunc(&text).unwrap(), x);
    assert!(parse_symfunc(r#"{"1,2": "1"}"#).is_err());
    assert_eq!(parse_symfunc("{}").unwrap(), SymFunc::zero());
}

#[test]
fn rational_parsing() {
    assert_eq!(parse_rational("6/4").unwrap(), Rational::new(3.into(), 2.into()));
    assert_eq!(parse_rational("-5").unwrap(), Rational::from_integer((-5).into()));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}
