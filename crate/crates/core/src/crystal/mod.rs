//! The level-`n` perfect crystal `B_n = {b_0, ..., b_n}` of `A_1^(1)`: element
//! weights, energy functions, ground state paths and multi-ground values,
//! plus λ-paths and their bijection with exact-distance grounded partitions.

mod path;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::coloured::{ColouredPart, GroundSpec, Relation, RelationKind, RelationTag};
use crate::error::{usage, Error, Result};
use crate::qseries::LatticeMono;

pub use path::{
    enumerate_paths, grounded_weight, paths_up_to_weight, phi, phi_inv, verify_phi, LambdaPath,
};

/// A weight `l0·Λ_0 + l1·Λ_1 + h·(δ/2)` with integer entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub l0: i64,
    pub l1: i64,
    pub h: i64,
}

impl AffineWeight {
    pub const ZERO: AffineWeight = AffineWeight { l0: 0, l1: 0, h: 0 };
    pub const LAMBDA0: AffineWeight = AffineWeight { l0: 1, l1: 0, h: 0 };
    pub const LAMBDA1: AffineWeight = AffineWeight { l0: 0, l1: 1, h: 0 };
    pub const HALF_DELTA: AffineWeight = AffineWeight { l0: 0, l1: 0, h: 1 };
    /// `α_0 = 2Λ_0 - 2Λ_1 + δ`.
    pub const ALPHA0: AffineWeight = AffineWeight {
        l0: 2,
        l1: -2,
        h: 2,
    };
    /// `α_1 = 2Λ_1 - 2Λ_0`.
    pub const ALPHA1: AffineWeight = AffineWeight {
        l0: -2,
        l1: 2,
        h: 0,
    };

    pub const fn new(l0: i64, l1: i64, h: i64) -> Self {
        AffineWeight { l0, l1, h }
    }

    pub fn scale(self, k: i64) -> Self {
        AffineWeight::new(k * self.l0, k * self.l1, k * self.h)
    }

    pub fn level(self) -> i64 {
        self.l0 + self.l1
    }

    /// `(c0/2)·α_0 + (c1/2)·α_1`, taking doubled root coordinates.
    pub fn from_doubled_roots(c0: i64, c1: i64) -> Self {
        AffineWeight::new(c0 - c1, c1 - c0, c0)
    }

    /// Doubled root coordinates `(2c_0, 2c_1)` of a level-0 weight.
    pub fn to_doubled_roots(self) -> Result<(i64, i64)> {
        if self.level() != 0 {
            return usage(format!("{self} has non-zero level"));
        }
        Ok((self.h, self.h - self.l0))
    }

    /// `e^{self}` as a monomial in `(e^{-δ/2}, e^{α_1})`, for level-0 weights
    /// with an integral `α_1` coefficient.
    pub fn to_lattice(self) -> Result<LatticeMono> {
        if self.level() != 0 || self.l1 % 2 != 0 {
            return usage(format!(
                "{self} is not in the lattice spanned by δ/2 and α_1"
            ));
        }
        Ok(LatticeMono::new(-self.h, self.l1 / 2))
    }

    pub fn from_lattice(m: LatticeMono) -> Self {
        AffineWeight::new(-2 * m.b, 2 * m.b, -m.a)
    }
}

impl Add for AffineWeight {
    type Output = AffineWeight;
    fn add(self, o: AffineWeight) -> AffineWeight {
        AffineWeight::new(self.l0 + o.l0, self.l1 + o.l1, self.h + o.h)
    }
}

impl Sub for AffineWeight {
    type Output = AffineWeight;
    fn sub(self, o: AffineWeight) -> AffineWeight {
        self + (-o)
    }
}

impl Neg for AffineWeight {
    type Output = AffineWeight;
    fn neg(self) -> AffineWeight {
        self.scale(-1)
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Λ_0 + {}Λ_1 + {}δ/2", self.l0, self.l1, self.h)
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i > n {
        return usage(format!("element index {i} outside 0..={n}"));
    }
    Ok(())
}

/// `Λ_{i,n} = iΛ_0 + (n-i)Λ_1`.
pub fn lambda_in(n: usize, i: usize) -> Result<AffineWeight> {
    check_index(n, i)?;
    Ok(AffineWeight::new(i as i64, (n - i) as i64, 0))
}

/// `wt b_i = (2i-n)Λ_0 + (n-2i)Λ_1`.
pub fn wt_element(n: usize, i: usize) -> Result<AffineWeight> {
    check_index(n, i)?;
    let c = 2 * i as i64 - n as i64;
    Ok(AffineWeight::new(c, -c, 0))
}

/// `2·H_n(b_i ⊗ b_j) = 2·max(i, n-j)`.
pub fn energy2_hn(n: usize, i: usize, j: usize) -> Result<i64> {
    check_index(n, i)?;
    check_index(n, j)?;
    Ok(2 * (i as i64).max(n as i64 - j as i64))
}

/// `2·H_λ(b_i ⊗ b_j) = max(2i-n, n-2j)`, checked against the other two forms.
pub fn energy2_hlambda(n: usize, i: usize, j: usize) -> Result<i64> {
    let (n_, i_, j_) = (n as i64, i as i64, j as i64);
    let max_form = energy2_hn(n, i, j)? - n_;
    let abs_form = (n_ - i_ - j_).abs() + (i_ - j_);
    let direct = (2 * i_ - n_).max(n_ - 2 * j_);
    if max_form != abs_form || max_form != direct {
        return Err(Error::Spec(format!(
            "energy forms disagree at ({n},{i},{j})"
        )));
    }
    Ok(direct)
}

/// Ground state path of `Λ_{i,n}` as one period, `g_0` first:
/// `(b_i, b_{n-i})`, or `(b_i)` when `2i = n`.
pub fn ground_state_path(n: usize, i: usize) -> Result<Vec<usize>> {
    check_index(n, i)?;
    Ok(if 2 * i == n { vec![i] } else { vec![i, n - i] })
}

/// Doubled energy values `h2[i][j] = 2H(b_i ⊗ b_j)` on `B_n ⊗ B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyTable {
    pub n: usize,
    pub h2: Vec<Vec<i64>>,
}

impl EnergyTable {
    pub fn h_n(n: usize) -> Self {
        let h2 = (0..=n)
            .map(|i| (0..=n).map(|j| 2 * (i.max(n - j)) as i64).collect())
            .collect();
        EnergyTable { n, h2 }
    }

    pub fn h_lambda(n: usize) -> Result<Self> {
        let h2 = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| energy2_hlambda(n, i, j))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EnergyTable { n, h2 })
    }

    /// `2H(b_i ⊗ b_j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.h2[i][j]
    }

    /// Shift so that the values along one period of `ground` sum to zero.
    /// The shift is `(1/t)·Σ_k H(g_{k+1} ⊗ g_k)`; it must be a multiple of 1/2.
    pub fn normalised(&self, ground: &[usize]) -> Result<EnergyTable> {
        let t = ground.len() as i64;
        if t == 0 || ground.iter().any(|&g| g > self.n) {
            return usage("ground must be a non-empty list of element indices");
        }
        let sum: i64 = (0..ground.len())
            .map(|k| self.get(ground[(k + 1) % ground.len()], ground[k]))
            .sum();
        if sum % t != 0 {
            return usage("normalisation is not half-integral for this ground");
        }
        let shift = sum / t;
        let h2 = self
            .h2
            .iter()
            .map(|row| row.iter().map(|v| v - shift).collect())
            .collect();
        Ok(EnergyTable { n: self.n, h2 })
    }

    /// `D·H(b ⊗ b')` for all pairs, as exact integers.
    fn dilated(&self, d_factor: i64) -> Result<Vec<Vec<i64>>> {
        self.h2
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        if (d_factor * v) % 2 != 0 {
                            usage(format!(
                                "D = {d_factor} does not make the energies integral"
                            ))
                        } else {
                            Ok(d_factor * v / 2)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The relation `k_{c_b} ≫ k'_{c_b'}` iff `k - k' - D·H(b' ⊗ b) ∈ d·Z_{≥0}`
    /// (or `= 0` when `step` is `None`).
    pub fn relation(&self, d_factor: i64, step: Option<i64>) -> Result<Relation> {
        let dh = self.dilated(d_factor)?;
        let n = self.n;
        let diff = (0..=n)
            .map(|left| (0..=n).map(|right| dh[right][left]).collect())
            .collect();
        let kind = match step {
            None => RelationKind::Exact,
            Some(step) => RelationKind::AtLeast { step },
        };
        Relation::new(diff, kind, RelationTag::Energy)
    }
}

/// `u^{(k)} = -(1/t)·Σ_l (l+1)·DH(g_{l+1}⊗g_l) + Σ_{l≥k} DH(g_{l+1}⊗g_l)`,
/// indices mod `t`, for a table already normalised on the ground.
pub fn multiground_u(table: &EnergyTable, grounds: &[usize], d_factor: i64) -> Result<Vec<i64>> {
    let t = grounds.len();
    if t == 0 || grounds.iter().any(|&g| g > table.n) {
        return usage("grounds must be a non-empty list of element indices");
    }
    let dh = table.dilated(d_factor)?;
    let step: Vec<i64> = (0..t)
        .map(|l| dh[grounds[(l + 1) % t]][grounds[l]])
        .collect();
    let weighted: i64 = step
        .iter()
        .enumerate()
        .map(|(l, v)| (l as i64 + 1) * v)
        .sum();
    if weighted % t as i64 != 0 {
        return usage(format!("D = {d_factor} leaves a fractional ground value"));
    }
    let base = -weighted / t as i64;
    Ok((0..t)
        .map(|k| base + step[k..].iter().sum::<i64>())
        .collect())
}

/// The multi-ground tail `(u^{(0)}_{c_{g_0}}, ...)` as coloured parts.
pub fn multiground_tail(
    table: &EnergyTable,
    grounds: &[usize],
    d_factor: i64,
) -> Result<GroundSpec> {
    let u = multiground_u(table, grounds, d_factor)?;
    if u.len() == 1 {
        return Ok(GroundSpec::Single(grounds[0]));
    }
    Ok(GroundSpec::Multi(
        u.into_iter()
            .zip(grounds)
            .map(|(s, &g)| ColouredPart::new(s, g))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_weights() {
        assert_eq!(wt_element(2, 1).unwrap(), AffineWeight::ZERO);
        assert_eq!(wt_element(2, 0).unwrap(), AffineWeight::ALPHA1);
        // -(3/2)α_1, i.e. doubled root coordinates (0, -3).
        let w = wt_element(3, 3).unwrap();
        assert_eq!(w, AffineWeight::new(3, -3, 0));
        assert_eq!(w.to_doubled_roots().unwrap(), (0, -3));
        assert!(wt_element(2, 3).is_err());
    }

    #[test]
    fn element_weight_is_multiple_of_alpha1() {
        for n in 0..=6 {
            for i in 0..=n {
                let w = wt_element(n, i).unwrap();
                assert_eq!(
                    w.scale(2),
                    AffineWeight::ALPHA1.scale(n as i64 - 2 * i as i64)
                );
            }
        }
    }

    #[test]
    fn root_basis_round_trip() {
        for c0 in -4..=4 {
            for c1 in -4..=4 {
                let w = AffineWeight::from_doubled_roots(c0, c1);
                assert_eq!(w.to_doubled_roots().unwrap(), (c0, c1));
                assert_eq!(
                    w.scale(2),
                    AffineWeight::ALPHA0.scale(c0) + AffineWeight::ALPHA1.scale(c1)
                );
            }
        }
        assert_eq!(
            AffineWeight::ALPHA0 + AffineWeight::ALPHA1,
            AffineWeight::HALF_DELTA.scale(2)
        );
        assert!(AffineWeight::LAMBDA0.to_doubled_roots().is_err());
    }

    #[test]
    fn lattice_round_trip() {
        let m = LatticeMono::new(3, -2);
        assert_eq!(AffineWeight::from_lattice(m).to_lattice().unwrap(), m);
        assert_eq!(
            AffineWeight::ALPHA1.to_lattice().unwrap(),
            LatticeMono::ALPHA1
        );
        assert_eq!(
            (-AffineWeight::ALPHA0).to_lattice().unwrap(),
            LatticeMono::NEG_ALPHA0
        );
    }

    #[test]
    fn level2_energy_values() {
        assert_eq!(energy2_hn(2, 0, 2).unwrap() / 2, 0);
        assert_eq!(energy2_hn(2, 2, 0).unwrap() / 2, 2);
        assert_eq!(energy2_hlambda(2, 2, 0).unwrap() / 2, 1);
        assert_eq!(energy2_hlambda(2, 0, 2).unwrap() / 2, -1);
    }

    #[test]
    fn level2_tables_match_displayed_matrices() {
        // Rows b_j, columns b_i.
        let hn = [[2, 2, 2], [1, 1, 2], [0, 1, 2]];
        let h = [[1, 1, 1], [0, 0, 1], [-1, 0, 1]];
        let tn = EnergyTable::h_n(2);
        let tl = EnergyTable::h_lambda(2).unwrap();
        for j in 0..3 {
            for i in 0..3 {
                assert_eq!(tn.get(i, j), 2 * hn[j][i]);
                assert_eq!(tl.get(i, j), 2 * h[j][i]);
            }
        }
    }

    #[test]
    fn normalising_h_n_gives_h_lambda() {
        for n in 0..=6 {
            let hl = EnergyTable::h_lambda(n).unwrap();
            for i in 0..=n {
                let g = ground_state_path(n, i).unwrap();
                assert_eq!(EnergyTable::h_n(n).normalised(&g).unwrap(), hl);
            }
        }
    }

    #[test]
    fn ground_state_paths() {
        assert_eq!(ground_state_path(2, 1).unwrap(), vec![1]);
        assert_eq!(ground_state_path(2, 2).unwrap(), vec![2, 0]);
        assert_eq!(ground_state_path(1, 0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn ground_values() {
        let h = EnergyTable::h_lambda(2).unwrap();
        assert_eq!(multiground_u(&h, &[2, 0], 2).unwrap(), vec![-1, 1]);
        assert_eq!(multiground_u(&h, &[0, 2], 2).unwrap(), vec![1, -1]);
        assert_eq!(multiground_u(&h, &[1], 1).unwrap(), vec![0]);
        assert_eq!(
            multiground_tail(&h, &[2, 0], 2).unwrap(),
            GroundSpec::Multi(vec![ColouredPart::new(-1, 2), ColouredPart::new(1, 0)])
        );
        assert!(multiground_u(&EnergyTable::h_lambda(1).unwrap(), &[0, 1], 1).is_err());
    }

    #[test]
    fn level2_relation_gaps() {
        let rel = EnergyTable::h_lambda(2)
            .unwrap()
            .relation(1, Some(1))
            .unwrap();
        // 1_{c_0} ≫ 0_{c_1} needs 1 - 0 >= H(b_1 ⊗ b_0) = 1.
        assert_eq!(rel.diff(0, 1), 1);
        assert!(rel.admits(ColouredPart::new(0, 2), ColouredPart::new(0, 1)));
        assert_eq!(rel.diff(1, 1), 0);
        assert_eq!(rel.diff(2, 0), -1);
    }
}
