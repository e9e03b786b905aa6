//! λ-paths of `Λ_{i,n}` and the bijection `Φ` onto exact-distance grounded
//! partitions with ground `c_i`.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{energy2_hlambda, lambda_in, wt_element, AffineWeight};
use crate::coloured::{c_counts, ColouredPart, ColouredPartition, GroundedFamily, RelationTag};
use crate::error::{usage, Error, Result};
use crate::qseries::LatticeMono;
use crate::report::{first_difference, Mismatch, Report};

/// A λ-path for `Λ_{i,n}`: the prefix `(i_0, ..., i_{2m-1})` after which the
/// path follows the ground state path `... ⊗ b_{n-i} ⊗ b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaPath {
    n: usize,
    i: usize,
    prefix: Vec<usize>,
}

impl LambdaPath {
    pub fn new(n: usize, i: usize, prefix: Vec<usize>) -> Result<Self> {
        if i > n {
            return usage(format!("need 0 <= i <= n, got i={i}, n={n}"));
        }
        if !prefix.len().is_multiple_of(2) {
            return usage("prefix length must be even");
        }
        if let Some(&bad) = prefix.iter().find(|&&x| x > n) {
            return usage(format!("element index {bad} outside 0..={n}"));
        }
        let len = prefix.len();
        if len >= 2 && prefix[len - 2] == i && prefix[len - 1] == n - i {
            return usage("prefix must not end with a ground state pair");
        }
        Ok(LambdaPath { n, i, prefix })
    }

    pub fn ground(n: usize, i: usize) -> Result<Self> {
        Self::new(n, i, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    /// `p_k` for any `k`, extending the prefix by the ground state path.
    pub fn element(&self, k: usize) -> usize {
        match self.prefix.get(k) {
            Some(&x) => x,
            None if k.is_multiple_of(2) => self.i,
            None => self.n - self.i,
        }
    }

    /// `j_k`: `i_k` at even positions, `n - i_k` at odd ones; `j_{2m} = i`.
    fn relabelled(&self) -> Vec<usize> {
        let mut j: Vec<usize> = self
            .prefix
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 0 { x } else { self.n - x })
            .collect();
        j.push(self.i);
        j
    }

    /// The weight of the path, computed from the energy-function formula
    /// with `H_λ`, and cross-checked against the reduced closed form.
    pub fn kmn_weight(&self) -> Result<AffineWeight> {
        let direct = self.weight_from_energies()?;
        let reduced = self.weight_reduced()?;
        if direct != reduced {
            return Err(Error::Spec(format!(
                "path weight formulas disagree for {self}: {direct} vs {reduced}"
            )));
        }
        Ok(direct)
    }

    /// `λ + Σ wt p_k + m·δ·Σ_{k<2} (k+1) H_λ(g_{k+1}⊗g_k) - δ·Σ_{k<2m} (k+1) H_λ(p_{k+1}⊗p_k)`.
    pub fn weight_from_energies(&self) -> Result<AffineWeight> {
        let (n, i) = (self.n, self.i);
        let two_m = self.prefix.len();
        let m = (two_m / 2) as i64;
        let g = [i, n - i];
        let mut ground_sum = 0;
        for k in 0..2 {
            ground_sum += (k as i64 + 1) * energy2_hlambda(n, g[(k + 1) % 2], g[k])?;
        }
        let mut path_sum = 0;
        let mut wt = lambda_in(n, i)?;
        for k in 0..two_m {
            wt = wt + wt_element(n, self.element(k))?;
            path_sum += (k as i64 + 1) * energy2_hlambda(n, self.element(k + 1), self.element(k))?;
        }
        // δ·H = (2H)·(δ/2).
        Ok(wt + AffineWeight::HALF_DELTA.scale(m * ground_sum - path_sum))
    }

    /// `λ + X·(α_1-α_0)/2 - |π|·δ/2` with `X = Σ (-1)^{k+1} j_k` and
    /// `|π| = Σ_l (l+1)|j_l - j_{l+1}|`.
    pub fn weight_reduced(&self) -> Result<AffineWeight> {
        let (x, size) = self.reduced_data();
        // (α_1 - α_0)/2 = -2Λ_0 + 2Λ_1 - δ/2.
        Ok(lambda_in(self.n, self.i)? + AffineWeight::new(-2 * x, 2 * x, -x - size))
    }

    fn reduced_data(&self) -> (i64, i64) {
        let j = self.relabelled();
        let two_m = self.prefix.len();
        let x = (0..two_m)
            .map(|k| {
                if k % 2 == 0 {
                    -(j[k] as i64)
                } else {
                    j[k] as i64
                }
            })
            .sum();
        let size = (0..two_m)
            .map(|l| (l as i64 + 1) * (j[l] as i64 - j[l + 1] as i64).abs())
            .sum();
        (x, size)
    }

    /// `|Φ(p)|`, without building the partition.
    pub fn size(&self) -> i64 {
        self.reduced_data().1
    }
}

impl fmt::Display for LambdaPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ_{{{},{}}}[", self.i, self.n)?;
        for (k, x) in self.prefix.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// `Φ(p)`: parts `π_k = Σ_{l≥k} |j_l - j_{l+1}|` coloured `c_{j_k}`, the last
/// prefix part dropped when `j_{2m-1} = i`, then the ground `0_{c_i}`.
pub fn phi(p: &LambdaPath) -> ColouredPartition {
    let j = p.relabelled();
    let two_m = p.prefix.len();
    let mut sizes = vec![0i64; two_m + 1];
    for l in (0..two_m).rev() {
        sizes[l] = sizes[l + 1] + (j[l] as i64 - j[l + 1] as i64).abs();
    }
    let keep = if two_m > 0 && j[two_m - 1] == p.i {
        two_m - 1
    } else {
        two_m
    };
    let mut parts: Vec<ColouredPart> = (0..keep)
        .map(|k| ColouredPart::new(sizes[k], j[k]))
        .collect();
    parts.push(ColouredPart::new(0, p.i));
    ColouredPartition {
        parts,
        relation: RelationTag::Exact,
        tail_len: 1,
    }
}

/// `Φ^{-1}(π)` for `π` in `C_n` with ground `c_i`.
pub fn phi_inv(pi: &ColouredPartition, n: usize) -> Result<LambdaPath> {
    let i = match pi.parts.last() {
        Some(g) if g.size == 0 => g.colour,
        _ => return usage("partition must end in a ground part 0_c"),
    };
    if !GroundedFamily::c(i, n)?.contains(&pi.parts) {
        return usage(format!(
            "{pi} is not an exact-distance partition grounded at c_{i}"
        ));
    }
    let j: Vec<usize> = pi.parts.iter().map(|q| q.colour).collect();
    let len = j.len() - 1;
    let m = len.div_ceil(2);
    let mut prefix = Vec::with_capacity(2 * m);
    for k in 0..m {
        prefix.push(j[2 * k]);
        prefix.push(n - j[2 * k + 1]);
    }
    LambdaPath::new(n, i, prefix)
}

/// Lattice monomial of `C'(π)·x^{|π|}` under `x = e^{-δ/2}`,
/// `c_k = e^{k(α_1-α_0)/2}`.
pub fn grounded_weight(pi: &ColouredPartition, i: usize) -> LatticeMono {
    let body = &pi.parts[..pi.parts.len() - 1];
    let mut y: i64 = body
        .iter()
        .enumerate()
        .map(|(a, q)| {
            if a % 2 == 0 {
                -(q.colour as i64)
            } else {
                q.colour as i64
            }
        })
        .sum();
    if body.len() % 2 == 1 {
        y += i as i64;
    }
    // e^{y(α_1-α_0)/2 - |π|δ/2}: the α_1 exponent is y, the e^{-δ/2} exponent is y + |π|.
    LatticeMono::new(y + pi.weight(), y)
}

/// Every λ-path of `Λ_{i,n}` with prefix length at most `max_len`, by length
/// then lexicographically.
pub fn enumerate_paths(n: usize, i: usize, max_len: usize) -> Result<Vec<LambdaPath>> {
    if i > n {
        return usage(format!("need 0 <= i <= n, got i={i}, n={n}"));
    }
    let mut out = Vec::new();
    for len in (0..=max_len).step_by(2) {
        let total = (n + 1).pow(len as u32);
        for code in 0..total {
            let mut rest = code;
            let mut prefix = vec![0usize; len];
            for slot in prefix.iter_mut().rev() {
                *slot = rest % (n + 1);
                rest /= n + 1;
            }
            if let Ok(p) = LambdaPath::new(n, i, prefix) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Every λ-path `p` of `Λ_{i,n}` with `|Φ(p)| <= max_weight`.
pub fn paths_up_to_weight(n: usize, i: usize, max_weight: i64) -> Result<Vec<LambdaPath>> {
    if i > n {
        return usage(format!("need 0 <= i <= n, got i={i}, n={n}"));
    }
    fn rec(
        l: usize,
        acc: i64,
        j: &mut Vec<usize>,
        n: usize,
        i: usize,
        max: i64,
        out: &mut Vec<Vec<usize>>,
    ) {
        let two_m = j.len() - 1;
        for c in 0..=n {
            let acc2 = acc + (l as i64 + 1) * (c as i64 - j[l + 1] as i64).abs();
            if acc2 > max {
                continue;
            }
            if l == two_m - 2 && c == i && j[two_m - 1] == i {
                continue;
            }
            j[l] = c;
            if l == 0 {
                out.push(j.clone());
            } else {
                rec(l - 1, acc2, j, n, i, max, out);
            }
        }
    }
    let mut out = vec![LambdaPath::ground(n, i)?];
    let mut m = 1usize;
    // The last deviating pair contributes at least 2m - 1.
    while ((2 * m - 1) as i64) <= max_weight {
        let mut js = Vec::new();
        let mut j = vec![0usize; 2 * m + 1];
        j[2 * m] = i;
        rec(2 * m - 1, 0, &mut j, n, i, max_weight, &mut js);
        js.sort();
        for j in js {
            let prefix = j[..2 * m]
                .iter()
                .enumerate()
                .map(|(k, &x)| if k % 2 == 0 { x } else { n - x })
                .collect();
            out.push(LambdaPath::new(n, i, prefix)?);
        }
        m += 1;
    }
    Ok(out)
}

/// Checks `Φ` on `Λ_{i,n}`: round trip and weight compatibility on every path
/// with prefix length at most `max_len`, then the graded path counts against
/// the `C_n` counts up to `max_weight`.
pub fn verify_phi(n: usize, i: usize, max_len: usize, max_weight: usize) -> Result<Report> {
    let started = Instant::now();
    let lambda = lambda_in(n, i)?;
    let mut mismatch = None;
    for p in enumerate_paths(n, i, max_len)? {
        let pi = phi(&p);
        let back = phi_inv(&pi, n)?;
        if back != p {
            mismatch = Some(Mismatch::new("phi round trip", &p, &back, &p));
            break;
        }
        let lhs = (p.kmn_weight()? - lambda).to_lattice()?;
        let rhs = grounded_weight(&pi, i);
        if lhs != rhs {
            mismatch = Some(Mismatch::new(
                "path weight vs grounded weight",
                &p,
                lhs,
                rhs,
            ));
            break;
        }
    }
    if mismatch.is_none() {
        let mut graded = vec![0u64; max_weight + 1];
        for p in paths_up_to_weight(n, i, max_weight as i64)? {
            graded[p.size() as usize] += 1;
        }
        mismatch = first_difference(
            "graded paths vs C_n count",
            &graded,
            &c_counts(i, n, max_weight)?,
        );
    }
    Ok(Report::finish(
        format!("phi:i={i}:n={n}"),
        max_len as i64,
        started,
        mismatch,
    ))
}
