//! Cross-module identity checks beyond the acceptance criteria.

use num_bigint::BigInt;

use crystal_partitions::characters::{
    gf_from_enumeration, level2_char_closed, verify_main, Level2Module, MainRelation,
};
use crystal_partitions::classical::{product_side, Family};
use crystal_partitions::coloured::GroundedFamily;
use crystal_partitions::crystal::grounded_weight;
use crystal_partitions::qseries::{lattice_sum, LatticeMono};

#[test]
fn path_weights_sum_to_the_l01_character() {
    // Principal degree |π| = a - b; every weight of L(Λ_0+Λ_1) with degree at
    // most 8 has δ/2-exponent at most 16.
    let parts = GroundedFamily::c(1, 2).unwrap().enumerate(8).unwrap();
    let lhs = lattice_sum(
        parts
            .iter()
            .map(|p| (grounded_weight(p, 1), BigInt::from(1))),
        16,
    );
    let rhs = level2_char_closed(Level2Module::L01, 16).unwrap();
    let low = |m: LatticeMono| m.a - m.b <= 8;
    assert_eq!(lhs.filter(low), rhs.filter(low));
}

#[test]
fn two_lambda_zero_parity_structure() {
    let fam = Level2Module::TwoL0.family().unwrap();
    for pi in fam.enumerate(10).unwrap() {
        assert_eq!(pi.parts.len() % 2, 0, "{pi}");
        assert!(pi.parts.iter().all(|p| p.size % 2 != 0), "{pi}");
    }
    let gf = gf_from_enumeration(Level2Module::TwoL0, 8).unwrap();
    for (_, poly) in gf.terms() {
        for (e, _) in poly.terms() {
            assert_eq!(e.degree_in(&[0, 1, 2]) % 2, 0);
        }
    }
}

#[test]
fn spec_examples_for_main_verification() {
    assert!(verify_main(0, 1, MainRelation::Exact, 20).unwrap().passed());
    assert!(verify_main(1, 2, MainRelation::Atleast, 15)
        .unwrap()
        .passed());
    for n in 0..=3 {
        for i in 0..=n {
            assert!(verify_main(i, n, MainRelation::Exact, 0).unwrap().passed());
        }
    }
}

#[test]
fn frozen_product_prefixes() {
    // 1/(q;q^2)_∞ for (i, n) = (0, 1): partitions into odd parts.
    let odd: Vec<BigInt> = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]
        .iter()
        .map(|&x| BigInt::from(x))
        .collect();
    assert_eq!(
        product_side(Family::MpOrMain { i: 0, n: 1 }, 10)
            .unwrap()
            .coeff_vec(),
        odd
    );
}
