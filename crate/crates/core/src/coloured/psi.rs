//! The bijection between `C_n^≥` partitions and pairs (a `C_n` partition, an
//! ordinary partition), preserving total weight.

use std::time::Instant;

use num_bigint::BigInt;

use super::{c_counts, c_geq_counts, ColouredPart, ColouredPartition, GroundedFamily, RelationTag};
use crate::classical::partition_counts;
use crate::error::{usage, Result};
use crate::report::{first_difference, Mismatch, Report};

fn ground_colour(pi: &ColouredPartition) -> Result<usize> {
    match pi.parts.last() {
        Some(p) if p.size == 0 => Ok(p.colour),
        _ => usage("partition must end in a ground part 0_c"),
    }
}

/// Split `π ∈ C_n^≥` (ground `c_i`) into `(μ, ν)` with `μ ∈ C_n` and `ν` an
/// ordinary partition, `|π| = |μ| + |ν|`.
pub fn psi_split(pi: &ColouredPartition, n: usize) -> Result<(ColouredPartition, Vec<i64>)> {
    let i = ground_colour(pi)?;
    if !GroundedFamily::c_geq(i, n)?.contains(&pi.parts) {
        return usage(format!("{pi} is not in C^>=_{{{i},{n}}}"));
    }
    let s = pi.parts.len() - 1;
    let parts = &pi.parts;
    // Every part from index r on (ground excluded) has colour c_i.
    let r = (1..=s)
        .rev()
        .find(|&k| parts[k - 1].colour != i)
        .unwrap_or(0);
    let mut mu = vec![ColouredPart::new(0, i); r + 1];
    for k in (0..r).rev() {
        let delta = (parts[k].colour as i64 - parts[k + 1].colour as i64).abs();
        mu[k] = ColouredPart::new(mu[k + 1].size + delta, parts[k].colour);
    }
    let nu: Vec<i64> = if r < s {
        (0..s)
            .map(|k| {
                if k < r {
                    parts[k].size - mu[k].size
                } else {
                    parts[k].size
                }
            })
            .collect()
    } else {
        let t = (0..=s).find(|&k| parts[k].size == mu[k].size).unwrap_or(s);
        (0..t).map(|k| parts[k].size - mu[k].size).collect()
    };
    let mu = ColouredPartition {
        parts: mu,
        relation: RelationTag::Exact,
        tail_len: 1,
    };
    Ok((mu, nu))
}

/// Inverse of [`psi_split`].
pub fn psi_merge(mu: &ColouredPartition, nu: &[i64], n: usize) -> Result<ColouredPartition> {
    let i = ground_colour(mu)?;
    if !GroundedFamily::c(i, n)?.contains(&mu.parts) {
        return usage(format!("{mu} is not in C_{{{i},{n}}}"));
    }
    if nu.iter().any(|&x| x <= 0) || nu.windows(2).any(|w| w[0] < w[1]) {
        return usage("second component must be a non-increasing sequence of positive parts");
    }
    let r = mu.parts.len() - 1;
    let mut parts = Vec::with_capacity(r.max(nu.len()) + 1);
    if nu.len() <= r {
        for k in 0..r {
            let extra = nu.get(k).copied().unwrap_or(0);
            parts.push(ColouredPart::new(
                mu.parts[k].size + extra,
                mu.parts[k].colour,
            ));
        }
    } else {
        for (k, &x) in nu.iter().enumerate() {
            if k < r {
                parts.push(ColouredPart::new(mu.parts[k].size + x, mu.parts[k].colour));
            } else {
                parts.push(ColouredPart::new(x, i));
            }
        }
    }
    parts.push(ColouredPart::new(0, i));
    Ok(ColouredPartition {
        parts,
        relation: RelationTag::Atleast,
        tail_len: 1,
    })
}

/// Checks `Ψ` on `C_{i,n}^≥` up to weight `max_weight`: every split lands in
/// `C_n` × partitions with the weight preserved and merges back, and the
/// counts satisfy `Σ_k p(k)·|C_n(m-k)| = |C_n^≥(m)|`.
pub fn verify_psi(i: usize, n: usize, max_weight: usize) -> Result<Report> {
    let started = Instant::now();
    let exact = GroundedFamily::c(i, n)?;
    let mut mismatch = None;
    for pi in GroundedFamily::c_geq(i, n)?.enumerate(max_weight as i64)? {
        let (mu, nu) = psi_split(&pi, n)?;
        let split_weight = mu.weight() + nu.iter().sum::<i64>();
        if !exact.contains(&mu.parts) {
            mismatch = Some(Mismatch::new("psi image in C_n", &pi, &mu, "member of C_n"));
        } else if split_weight != pi.weight() {
            mismatch = Some(Mismatch::new("psi weight", &pi, split_weight, pi.weight()));
        } else {
            let back = psi_merge(&mu, &nu, n)?;
            if back != pi {
                mismatch = Some(Mismatch::new("psi round trip", &pi, &back, &pi));
            }
        }
        if mismatch.is_some() {
            break;
        }
    }
    if mismatch.is_none() {
        let p = partition_counts(max_weight);
        let c = c_counts(i, n, max_weight)?;
        let convolved: Vec<BigInt> = (0..=max_weight)
            .map(|m| (0..=m).map(|k| &p[k] * BigInt::from(c[m - k])).sum())
            .collect();
        mismatch = first_difference(
            "p * C_n vs C_n^>= count",
            &convolved,
            &c_geq_counts(i, n, max_weight)?,
        );
    }
    Ok(Report::finish(
        format!("psi:i={i}:n={n}"),
        max_weight as i64,
        started,
        mismatch,
    ))
}
