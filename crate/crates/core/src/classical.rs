//! Brute-force counters and product sides for the Rogers–Ramanujan,
//! Andrews–Gordon, Bressoud and Meurman–Primc identities.
//!
//! The counters enumerate partitions directly and test the defining conditions;
//! they are the oracles against which the product sides (and the coloured
//! partition counts) are compared.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::qseries::{qpoch, QSeries};

/// Number of ordinary partitions of `m`, by the largest-part recurrence.
pub fn count_partitions(m: usize) -> BigInt {
    partition_counts(m).pop().unwrap_or_default()
}

/// `p(0), ..., p(max)`.
pub fn partition_counts(max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::from(0); max + 1];
    p[0] = BigInt::from(1);
    for part in 1..=max {
        for m in part..=max {
            let prev = p[m - part].clone();
            p[m] += prev;
        }
    }
    p
}

/// All partitions of weight at most `max`, each as a non-increasing vector,
/// in depth-first order from the largest first part.
pub fn partitions_upto(max: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: usize, bound: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for part in (1..=bound.min(remaining)).rev() {
            cur.push(part as u32);
            rec(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max, max, &mut Vec::new(), &mut out);
    out
}

/// All partitions of exactly `m`.
pub fn partitions_of(m: usize) -> Vec<Vec<u32>> {
    partitions_upto(m)
        .into_iter()
        .filter(|p| p.iter().map(|&x| x as usize).sum::<usize>() == m)
        .collect()
}

fn check_ir(i: usize, r: usize) -> Result<()> {
    if r < 2 {
        return usage(format!("r must be >= 2, got {r}"));
    }
    if i < 1 || i > r {
        return usage(format!("need 1 <= i <= r, got i={i}, r={r}"));
    }
    Ok(())
}

fn check_in(i: usize, n: usize) -> Result<()> {
    if i > n {
        return usage(format!("need 0 <= i <= n, got i={i}, n={n}"));
    }
    Ok(())
}

/// The Andrews–Gordon conditions: `λ_j - λ_{j+r-1} >= 2` and at most `i-1` ones.
pub fn is_andrews_gordon(parts: &[u32], i: usize, r: usize) -> bool {
    let ones = parts.iter().filter(|&&x| x == 1).count();
    ones < i && parts.windows(r - 1 + 1).all(|w| w[0] >= w[r - 1] + 2)
}

/// The Bressoud conditions, adding the parity rule on near-flat windows of
/// length `r-1`.
pub fn is_bressoud(parts: &[u32], i: usize, r: usize) -> bool {
    if !is_andrews_gordon(parts, i, r) {
        return false;
    }
    parts.windows(r - 1).all(|w| {
        let flat = w[0] <= w[r - 2] + 1;
        let sum: u64 = w.iter().map(|&x| x as u64).sum();
        !flat || sum % 2 == ((i - 1) % 2) as u64
    })
}

fn histogram_by_weight(max: usize, keep: impl Fn(&[u32]) -> bool) -> Vec<u64> {
    let mut counts = vec![0u64; max + 1];
    for p in partitions_upto(max) {
        if keep(&p) {
            let w: usize = p.iter().map(|&x| x as usize).sum();
            counts[w] += 1;
        }
    }
    counts
}

/// `G_{i,r}(m)` for `m = 0..=max`.
pub fn ag_counts(i: usize, r: usize, max: usize) -> Result<Vec<u64>> {
    check_ir(i, r)?;
    Ok(histogram_by_weight(max, |p| is_andrews_gordon(p, i, r)))
}

pub fn ag_count(i: usize, r: usize, m: usize) -> Result<u64> {
    Ok(ag_counts(i, r, m)?[m])
}

/// `B_{i,r}(m)` for `m = 0..=max`. `r = 1` is rejected: its difference
/// condition cannot hold for any non-empty partition.
pub fn bressoud_counts(i: usize, r: usize, max: usize) -> Result<Vec<u64>> {
    check_ir(i, r)?;
    Ok(histogram_by_weight(max, |p| is_bressoud(p, i, r)))
}

pub fn bressoud_count(i: usize, r: usize, m: usize) -> Result<u64> {
    Ok(bressoud_counts(i, r, m)?[m])
}

/// A two-coloured partition (plain and underlined parts) by frequencies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyPartition {
    pub max_part: usize,
    /// `plain[k]` is `f_k` (index 0 unused).
    pub plain: Vec<u32>,
    /// `under[k]` is `f_{underline k}` (index 0 unused).
    pub under: Vec<u32>,
}

impl FrequencyPartition {
    pub fn weight(&self) -> usize {
        (1..=self.max_part)
            .map(|k| k * (self.f(k) + self.fu(k)) as usize)
            .sum()
    }

    /// `f_k`, zero beyond the support.
    pub fn f(&self, k: usize) -> u32 {
        self.plain.get(k).copied().unwrap_or(0)
    }

    /// `f_{underline k}`, zero beyond the support.
    pub fn fu(&self, k: usize) -> u32 {
        self.under.get(k).copied().unwrap_or(0)
    }

    /// The Meurman–Primc frequency conditions for `(i, n)`.
    pub fn is_meurman_primc(&self, i: usize, n: usize) -> bool {
        let n = n as u32;
        if self.fu(1) as usize > i || self.f(1) as usize > n as usize - i {
            return false;
        }
        let mut k = 1;
        while 2 * k - 1 <= self.max_part + 2 {
            let (a, b, c) = (2 * k + 1, 2 * k, 2 * k - 1);
            if self.fu(b) != 0
                || self.f(a) + self.f(b) + self.f(c) > n
                || self.f(b) + self.fu(c) + self.f(c) > n
                || self.fu(a) + self.f(a) + self.f(b) > n
                || self.fu(a) + self.f(b) + self.fu(c) > n
            {
                return false;
            }
            k += 1;
        }
        true
    }
}

/// Every frequency vector of weight at most `max` (underlined parts odd only).
/// Parts larger than `max` cannot occur, so the support is `1..=max`.
pub fn frequency_partitions_upto(max: usize) -> Vec<FrequencyPartition> {
    // Labels in decreasing size: (size, underlined).
    let labels: Vec<(usize, bool)> = (1..=max)
        .rev()
        .flat_map(|k| {
            let under = (k % 2 == 1).then_some((k, true));
            under.into_iter().chain(std::iter::once((k, false)))
        })
        .collect();
    fn rec(
        idx: usize,
        remaining: usize,
        labels: &[(usize, bool)],
        cur: &mut FrequencyPartition,
        out: &mut Vec<FrequencyPartition>,
    ) {
        if idx == labels.len() {
            out.push(cur.clone());
            return;
        }
        let (k, under) = labels[idx];
        let mut f = 0;
        while f * k <= remaining {
            if under {
                cur.under[k] = f as u32;
            } else {
                cur.plain[k] = f as u32;
            }
            rec(idx + 1, remaining - f * k, labels, cur, out);
            f += 1;
        }
        if under {
            cur.under[k] = 0;
        } else {
            cur.plain[k] = 0;
        }
    }
    let mut cur = FrequencyPartition {
        max_part: max,
        plain: vec![0; max + 1],
        under: vec![0; max + 1],
    };
    let mut out = Vec::new();
    rec(0, max, &labels, &mut cur, &mut out);
    out
}

/// `M_{i,n}(m)` for `m = 0..=max`.
pub fn mp_counts(i: usize, n: usize, max: usize) -> Result<Vec<u64>> {
    check_in(i, n)?;
    let mut counts = vec![0u64; max + 1];
    for fp in frequency_partitions_upto(max) {
        if fp.is_meurman_primc(i, n) {
            counts[fp.weight()] += 1;
        }
    }
    Ok(counts)
}

pub fn mp_count(i: usize, n: usize, m: usize) -> Result<u64> {
    Ok(mp_counts(i, n, m)?[m])
}

/// Families of infinite products appearing on the right-hand sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// `(q^{2r+1}, q^i, q^{2r-i+1}; q^{2r+1})_inf / (q;q)_inf`
    Ag { i: usize, r: usize },
    /// `(q^{2r}, q^i, q^{2r-i}; q^{2r})_inf / (q;q)_inf`
    Bressoud { i: usize, r: usize },
    /// `(q^{i+1}, q^{n-i+1}, q^{n+2}; q^{n+2})_inf / ((q;q^2)_inf (q;q)_inf)`
    MpOrMain { i: usize, n: usize },
    /// The previous product with one more `1/(q;q)_inf`.
    MainGeq { i: usize, n: usize },
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Ag { i, r } | Family::Bressoud { i, r } => check_ir(i, r),
            Family::MpOrMain { i, n } | Family::MainGeq { i, n } => check_in(i, n),
        }
    }
}

fn triple(a: i64, b: i64, modulus: i64, order: i64) -> Result<QSeries> {
    qpoch(a, modulus, order)?
        .mul(&qpoch(b, modulus, order)?)?
        .mul(&qpoch(modulus, modulus, order)?)
}

/// The product side of `family`, truncated at `order`.
pub fn product_side(family: Family, order: i64) -> Result<QSeries> {
    family.validate()?;
    let euler_inv = qpoch(1, 1, order)?.inv()?;
    match family {
        Family::Ag { i, r } => {
            let (i, r) = (i as i64, r as i64);
            triple(i, 2 * r - i + 1, 2 * r + 1, order)?.mul(&euler_inv)
        }
        Family::Bressoud { i, r } => {
            let (i, r) = (i as i64, r as i64);
            triple(i, 2 * r - i, 2 * r, order)?.mul(&euler_inv)
        }
        Family::MpOrMain { i, n } | Family::MainGeq { i, n } => {
            let (i, n) = (i as i64, n as i64);
            let odd_inv = qpoch(1, 2, order)?.inv()?;
            let base = triple(i + 1, n - i + 1, n + 2, order)?
                .mul(&odd_inv)?
                .mul(&euler_inv)?;
            if matches!(family, Family::MainGeq { .. }) {
                base.mul(&euler_inv)
            } else {
                Ok(base)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &QSeries) -> Vec<i64> {
        s.coeff_vec()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn small_partition_numbers() {
        assert_eq!(count_partitions(0), BigInt::from(1));
        assert_eq!(count_partitions(4), BigInt::from(5));
        assert_eq!(count_partitions(10), BigInt::from(42));
        assert_eq!(partitions_of(4).len(), 5);
    }

    #[test]
    fn partitions_of_four_listed() {
        assert_eq!(
            partitions_of(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn andrews_gordon_small_cases() {
        assert_eq!(ag_count(1, 2, 4).unwrap(), 1);
        assert_eq!(ag_count(2, 2, 4).unwrap(), 2);
        for r in 2..=4 {
            for i in 1..=r {
                assert_eq!(ag_count(i, r, 0).unwrap(), 1);
            }
        }
    }

    #[test]
    fn bressoud_small_cases() {
        assert_eq!(bressoud_count(1, 2, 4).unwrap(), 1);
        assert_eq!(bressoud_count(1, 2, 2).unwrap(), 1);
        assert_eq!(bressoud_count(2, 3, 0).unwrap(), 1);
    }

    #[test]
    fn parameter_ranges_are_checked() {
        assert!(ag_count(0, 2, 3).is_err());
        assert!(ag_count(3, 2, 3).is_err());
        assert!(bressoud_count(1, 1, 3).is_err());
        assert!(ag_count(1, 1, 3).is_err());
        assert!(mp_count(2, 1, 3).is_err());
        assert!(product_side(Family::MainGeq { i: 3, n: 2 }, 4).is_err());
    }

    #[test]
    fn meurman_primc_initial_conditions() {
        assert_eq!(mp_count(0, 1, 0).unwrap(), 1);
        assert_eq!(mp_count(0, 1, 1).unwrap(), 1);
    }

    #[test]
    fn meurman_primc_matches_product_for_i1_n2() {
        let prod = product_side(Family::MpOrMain { i: 1, n: 2 }, 15).unwrap();
        let counts = mp_counts(1, 2, 15).unwrap();
        assert_eq!(
            coeffs(&prod),
            counts.iter().map(|&c| c as i64).collect::<Vec<_>>()
        );
    }

    #[test]
    fn main_product_collapses_for_n1() {
        let prod = product_side(Family::MpOrMain { i: 0, n: 1 }, 5).unwrap();
        assert_eq!(coeffs(&prod), vec![1, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn rogers_ramanujan_product_is_congruence_count() {
        // Parts congruent to +-1 mod 5.
        let prod = product_side(Family::Ag { i: 2, r: 2 }, 12).unwrap();
        let oracle: Vec<i64> = (0..=12usize)
            .map(|m| {
                partitions_of(m)
                    .iter()
                    .filter(|p| p.iter().all(|&x| x % 5 == 1 || x % 5 == 4))
                    .count() as i64
            })
            .collect();
        assert_eq!(coeffs(&prod), oracle);
    }

    #[test]
    fn every_family_starts_at_one() {
        for fam in [
            Family::Ag { i: 1, r: 3 },
            Family::Bressoud { i: 2, r: 2 },
            Family::MpOrMain { i: 2, n: 4 },
            Family::MainGeq { i: 0, n: 3 },
        ] {
            assert_eq!(product_side(fam, 6).unwrap().coeff(0), BigInt::from(1));
        }
    }

    #[test]
    fn rogers_ramanujan_difference_two() {
        // r = 2: consecutive parts differ by at least 2.
        for m in 0..=14 {
            let direct = partitions_of(m)
                .iter()
                .filter(|p| p.windows(2).all(|w| w[0] >= w[1] + 2) && !p.contains(&1))
                .count() as u64;
            assert_eq!(ag_count(1, 2, m).unwrap(), direct);
        }
    }
}
