//! Property tests for the series kernel, the enumeration engine and the bijections.

use num_bigint::BigInt;
use proptest::prelude::*;

use crystal_partitions::coloured::{psi_merge, psi_split, GroundedFamily};
use crystal_partitions::crystal::{lambda_in, phi, phi_inv, LambdaPath};
use crystal_partitions::qseries::{Exponents, LaurentPoly, QSeries};

fn series(max_len: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-6i64..=6, 1..=max_len)
        .prop_map(|cs| QSeries::from_coeffs(cs.into_iter().map(BigInt::from).collect()))
}

fn unit_series(max_len: usize) -> impl Strategy<Value = QSeries> {
    (
        prop::bool::ANY,
        prop::collection::vec(-6i64..=6, 0..max_len),
    )
        .prop_map(|(neg, rest)| {
            let mut cs = vec![BigInt::from(if neg { -1 } else { 1 })];
            cs.extend(rest.into_iter().map(BigInt::from));
            QSeries::from_coeffs(cs)
        })
}

fn same_len(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
    let t = a.trunc_order().min(b.trunc_order());
    (a.truncate(t).unwrap(), b.truncate(t).unwrap())
}

proptest! {
    #[test]
    fn mul_is_commutative(a in series(10), b in series(10)) {
        let (a, b) = same_len(&a, &b);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn mul_is_associative(a in series(8), b in series(8), c in series(8)) {
        let (a, b) = same_len(&a, &b);
        let (a, c) = same_len(&a, &c);
        let b = b.truncate(a.trunc_order()).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn inverse_round_trips(a in unit_series(12)) {
        let one = QSeries::one(a.trunc_order());
        prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
        prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
    }

    #[test]
    fn even_extraction_is_idempotent(
        terms in prop::collection::vec((prop::collection::vec(-2i32..=2, 3), -5i64..=5), 0..8),
        vars in prop::collection::vec(0usize..3, 0..3),
    ) {
        let poly = LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (Exponents::new(e), BigInt::from(c))));
        let g = crystal_partitions::qseries::ColouredSeries::from_coeffs(vec![poly.clone(), poly]);
        let once = g.even_extract(&vars);
        prop_assert_eq!(once.even_extract(&vars), once.clone());
        prop_assert_eq!(g.even_part_halfsum(&vars).unwrap(), once);
    }

    #[test]
    fn enumeration_matches_membership(i in 0usize..=3, n in 0usize..=3, geq in prop::bool::ANY) {
        prop_assume!(i <= n);
        let fam = if geq { GroundedFamily::c_geq(i, n) } else { GroundedFamily::c(i, n) }.unwrap();
        let all = fam.enumerate(8).unwrap();
        prop_assert!(all.iter().all(|p| fam.contains(&p.parts)));
        let counts = fam.counts(8).unwrap();
        prop_assert_eq!(counts.iter().sum::<u64>() as usize, all.len());
    }

    #[test]
    fn psi_round_trips(i in 0usize..=3, n in 0usize..=3, pick in 0usize..10_000) {
        prop_assume!(i <= n);
        let all = GroundedFamily::c_geq(i, n).unwrap().enumerate(9).unwrap();
        let pi = &all[pick % all.len()];
        let (mu, nu) = psi_split(pi, n).unwrap();
        prop_assert!(GroundedFamily::c(i, n).unwrap().contains(&mu.parts));
        prop_assert_eq!(mu.weight() + nu.iter().sum::<i64>(), pi.weight());
        prop_assert_eq!(&psi_merge(&mu, &nu, n).unwrap(), pi);
    }

    #[test]
    fn phi_round_trips(n in 0usize..=3, i in 0usize..=3, raw in prop::collection::vec(0usize..=3, 0..4)) {
        prop_assume!(i <= n);
        let mut prefix: Vec<usize> = raw.into_iter().map(|x| x % (n + 1)).collect();
        if prefix.len() % 2 == 1 {
            prefix.pop();
        }
        if let Ok(p) = LambdaPath::new(n, i, prefix) {
            let pi = phi(&p);
            prop_assert_eq!(pi.weight(), p.size());
            prop_assert_eq!(&phi_inv(&pi, n).unwrap(), &p);
            let w = p.kmn_weight().unwrap() - lambda_in(n, i).unwrap();
            prop_assert_eq!(w.level(), 0);
        }
    }
}
