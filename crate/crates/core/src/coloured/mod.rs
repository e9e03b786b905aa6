//! Coloured (grounded) partitions: sequences of coloured integers whose
//! consecutive parts obey a difference relation and which end in a fixed
//! ground tail.
//!
//! A single engine handles every family used here. A family is a
//! [`Relation`] (a difference table plus exact/at-least semantics), a
//! [`GroundSpec`] and an optional divisibility constraint on the number of
//! parts. The `C_n` and `C_n^≥` families are thin constructors on top.

mod engine;
mod psi;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::qseries::{ColouredSeries, Exponents, LaurentPoly};

pub use psi::{psi_merge, psi_split, verify_psi};

/// A part `size_{c_colour}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColouredPart {
    pub size: i64,
    pub colour: usize,
}

impl ColouredPart {
    pub const fn new(size: i64, colour: usize) -> Self {
        ColouredPart { size, colour }
    }
}

impl fmt::Display for ColouredPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_c{}", self.size, self.colour)
    }
}

/// How consecutive parts are compared against the difference table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationKind {
    /// `left - right == diff`.
    Exact,
    /// `left - right - diff` is a non-negative multiple of `step`.
    AtLeast { step: i64 },
}

/// Tag recorded on each enumerated partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RelationTag {
    Exact,
    Atleast,
    Energy,
}

/// A difference relation on coloured integers: `diff[a][b]` is the required
/// gap when a part of colour `a` stands immediately left of a part of colour `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    diff: Vec<Vec<i64>>,
    kind: RelationKind,
    tag: RelationTag,
}

impl Relation {
    pub fn new(diff: Vec<Vec<i64>>, kind: RelationKind, tag: RelationTag) -> Result<Self> {
        let n = diff.len();
        if n == 0 || diff.iter().any(|row| row.len() != n) {
            return usage("difference table must be square and non-empty");
        }
        if let RelationKind::AtLeast { step } = kind {
            if step < 1 {
                return usage(format!("relation step must be >= 1, got {step}"));
            }
        }
        Ok(Relation { diff, kind, tag })
    }

    /// `k_{c_a} ⋗ l_{c_b}` iff `k - l = |a - b|`, colours `c_0..c_n`.
    pub fn exact_distance(n: usize) -> Self {
        Relation {
            diff: distance_table(n),
            kind: RelationKind::Exact,
            tag: RelationTag::Exact,
        }
    }

    /// `k_{c_a} ≫ l_{c_b}` iff `k - l >= |a - b|`.
    pub fn at_least_distance(n: usize) -> Self {
        Relation {
            diff: distance_table(n),
            kind: RelationKind::AtLeast { step: 1 },
            tag: RelationTag::Atleast,
        }
    }

    pub fn colours(&self) -> usize {
        self.diff.len()
    }

    pub fn diff(&self, left: usize, right: usize) -> i64 {
        self.diff[left][right]
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn tag(&self) -> RelationTag {
        self.tag
    }

    /// Whether `left` may stand immediately left of `right`.
    pub fn admits(&self, left: ColouredPart, right: ColouredPart) -> bool {
        if left.colour >= self.colours() || right.colour >= self.colours() {
            return false;
        }
        let gap = left.size - right.size - self.diff(left.colour, right.colour);
        match self.kind {
            RelationKind::Exact => gap == 0,
            RelationKind::AtLeast { step } => gap >= 0 && gap % step == 0,
        }
    }
}

fn distance_table(n: usize) -> Vec<Vec<i64>> {
    (0..=n)
        .map(|a| (0..=n).map(|b| (a as i64 - b as i64).abs()).collect())
        .collect()
}

/// The fixed end of every partition in a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroundSpec {
    /// The single part `0_{c}`.
    Single(usize),
    /// A tail `u^{(0)}_{c_{g_0}}, ..., u^{(t-1)}_{c_{g_{t-1}}}`, listed left to right.
    Multi(Vec<ColouredPart>),
}

impl GroundSpec {
    pub fn tail(&self) -> Vec<ColouredPart> {
        match self {
            GroundSpec::Single(c) => vec![ColouredPart::new(0, *c)],
            GroundSpec::Multi(t) => t.clone(),
        }
    }
}

/// A grounded family: relation, ground and optional part-count divisibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundedFamily {
    relation: Relation,
    ground: GroundSpec,
    tail: Vec<ColouredPart>,
    parts_multiple: usize,
    floor: i64,
}

impl GroundedFamily {
    pub fn new(
        relation: Relation,
        ground: GroundSpec,
        parts_multiple: Option<usize>,
    ) -> Result<Self> {
        let tail = ground.tail();
        if tail.is_empty() {
            return usage("ground tail must be non-empty");
        }
        if let Some(bad) = tail.iter().find(|p| p.colour >= relation.colours()) {
            return usage(format!("ground colour {} outside the alphabet", bad.colour));
        }
        if tail.iter().map(|p| p.size).sum::<i64>() != 0 {
            return Err(Error::Spec("ground tail values must sum to zero".into()));
        }
        if let Some(w) = tail.windows(2).find(|w| !relation.admits(w[0], w[1])) {
            return Err(Error::Spec(format!(
                "ground tail is not a chain: {} does not precede {}",
                w[0], w[1]
            )));
        }
        let parts_multiple = parts_multiple.unwrap_or(1);
        if parts_multiple == 0 {
            return usage("part-count multiple must be >= 1");
        }
        let floor = tail.iter().map(|p| p.size).min().unwrap_or(0).min(0);
        Ok(GroundedFamily {
            relation,
            ground,
            tail,
            parts_multiple,
            floor,
        })
    }

    /// `C_n` grounded at `c_i`: exact distance relation.
    pub fn c(i: usize, n: usize) -> Result<Self> {
        check_in(i, n)?;
        Self::new(Relation::exact_distance(n), GroundSpec::Single(i), None)
    }

    /// `C_n^≥` grounded at `c_i`: at-least distance relation.
    pub fn c_geq(i: usize, n: usize) -> Result<Self> {
        check_in(i, n)?;
        Self::new(Relation::at_least_distance(n), GroundSpec::Single(i), None)
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn ground(&self) -> &GroundSpec {
        &self.ground
    }

    pub fn tail(&self) -> &[ColouredPart] {
        &self.tail
    }

    pub fn parts_multiple(&self) -> usize {
        self.parts_multiple
    }

    /// Lowest admissible part size.
    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Membership test, independent of the enumerator.
    pub fn contains(&self, parts: &[ColouredPart]) -> bool {
        let t = self.tail.len();
        if parts.len() < t || parts[parts.len() - t..] != self.tail[..] {
            return false;
        }
        if !parts.len().is_multiple_of(self.parts_multiple) {
            return false;
        }
        if parts.len() >= 2 * t && parts[parts.len() - 2 * t..parts.len() - t] == self.tail[..] {
            return false;
        }
        parts.iter().all(|p| p.size >= self.floor)
            && parts.windows(2).all(|w| self.relation.admits(w[0], w[1]))
    }

    /// Visit every member of weight at most `max_weight`; the visitor receives
    /// the parts listed from the ground outwards (last part first) and the weight.
    pub fn visit(&self, max_weight: i64, visitor: impl FnMut(&[ColouredPart], i64)) -> Result<()> {
        engine::Engine::new(self, max_weight)?.run(visitor)
    }

    /// All members of weight at most `max_weight`, sorted by weight, length,
    /// then part sequence.
    pub fn enumerate(&self, max_weight: i64) -> Result<Vec<ColouredPartition>> {
        let mut out = Vec::new();
        let tag = self.relation.tag;
        let tail_len = self.tail.len();
        self.visit(max_weight, |rev, _| {
            let parts: Vec<ColouredPart> = rev.iter().rev().copied().collect();
            out.push(ColouredPartition {
                parts,
                relation: tag,
                tail_len,
            });
        })?;
        out.sort_by(|a, b| {
            (a.weight(), a.parts.len(), &a.parts).cmp(&(b.weight(), b.parts.len(), &b.parts))
        });
        Ok(out)
    }

    /// Members of weight exactly `weight`.
    pub fn enumerate_weight(&self, weight: i64) -> Result<Vec<ColouredPartition>> {
        Ok(self
            .enumerate(weight)?
            .into_iter()
            .filter(|p| p.weight() == weight)
            .collect())
    }

    /// Number of members of each weight `0..=max_weight`.
    pub fn counts(&self, max_weight: usize) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; max_weight + 1];
        let mut negative = None;
        self.visit(max_weight as i64, |_, w| {
            if w < 0 {
                negative = Some(w);
            } else {
                counts[w as usize] += 1;
            }
        })?;
        match negative {
            Some(w) => Err(Error::Spec(format!(
                "family has a member of negative weight {w}"
            ))),
            None => Ok(counts),
        }
    }

    /// `Σ_π C(π) q^{|π|}` to order `order`, where `C(π)` is the product of
    /// the colours of all parts (ground included).
    pub fn generating_function(&self, order: i64) -> Result<ColouredSeries> {
        let ncol = self.relation.colours();
        let mut acc: BTreeMap<i64, BTreeMap<Vec<i32>, u64>> = BTreeMap::new();
        self.visit(order, |rev, w| {
            let mut exps = vec![0i32; ncol];
            for p in rev {
                exps[p.colour] += 1;
            }
            *acc.entry(w).or_default().entry(exps).or_default() += 1;
        })?;
        let q_min = acc.keys().next().copied().unwrap_or(0).min(0);
        let mut out = ColouredSeries::zero(q_min, order);
        for (w, monos) in acc {
            let poly = LaurentPoly::from_terms(
                monos
                    .into_iter()
                    .map(|(e, c)| (Exponents::new(e), BigInt::from(c))),
            );
            out.set(w, poly);
        }
        Ok(out)
    }
}

fn check_in(i: usize, n: usize) -> Result<()> {
    if i > n {
        return usage(format!("need 0 <= i <= n, got i={i}, n={n}"));
    }
    Ok(())
}

/// A member of some grounded family, parts listed left to right (largest
/// first, ground tail last).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredPartition {
    pub parts: Vec<ColouredPart>,
    pub relation: RelationTag,
    pub tail_len: usize,
}

impl ColouredPartition {
    pub fn weight(&self) -> i64 {
        self.parts.iter().map(|p| p.size).sum()
    }

    pub fn colours(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.colour).collect()
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            parts: self.parts.clone(),
            weight: self.weight(),
        }
    }
}

impl fmt::Display for ColouredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Serialised form: `{"parts": [{"size", "colour"}], "weight"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub parts: Vec<ColouredPart>,
    pub weight: i64,
}

/// Sizes of an exact-distance partition, rebuilt from its colour sequence
/// alone: suffix sums of `|u_l - u_{l+1}|`, ending at 0.
pub fn exact_sizes_from_colours(colours: &[usize]) -> Vec<i64> {
    let mut sizes = vec![0i64; colours.len()];
    for k in (0..colours.len().saturating_sub(1)).rev() {
        sizes[k] = sizes[k + 1] + (colours[k] as i64 - colours[k + 1] as i64).abs();
    }
    sizes
}

/// Members of `C_n` with ground `c_i` and weight exactly `m`.
pub fn enumerate_c(i: usize, n: usize, m: usize) -> Result<Vec<ColouredPartition>> {
    GroundedFamily::c(i, n)?.enumerate_weight(m as i64)
}

/// Members of `C_n^≥` with ground `c_i` and weight exactly `m`.
pub fn enumerate_c_geq(i: usize, n: usize, m: usize) -> Result<Vec<ColouredPartition>> {
    GroundedFamily::c_geq(i, n)?.enumerate_weight(m as i64)
}

/// `C_{i,n}(0..=max)`.
pub fn c_counts(i: usize, n: usize, max: usize) -> Result<Vec<u64>> {
    GroundedFamily::c(i, n)?.counts(max)
}

/// `C^≥_{i,n}(0..=max)`.
pub fn c_geq_counts(i: usize, n: usize, max: usize) -> Result<Vec<u64>> {
    GroundedFamily::c_geq(i, n)?.counts(max)
}

pub fn count_c(i: usize, n: usize, m: usize) -> Result<u64> {
    Ok(c_counts(i, n, m)?[m])
}

pub fn count_c_geq(i: usize, n: usize, m: usize) -> Result<u64> {
    Ok(c_geq_counts(i, n, m)?[m])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(size: i64, colour: usize) -> ColouredPart {
        ColouredPart::new(size, colour)
    }

    #[test]
    fn c_ground_alone_at_weight_zero() {
        let v = enumerate_c(0, 1, 0).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].parts, vec![p(0, 0)]);
    }

    #[test]
    fn c_small_weights() {
        assert_eq!(
            enumerate_c(0, 1, 1).unwrap()[0].parts,
            vec![p(1, 1), p(0, 0)]
        );
        let three: Vec<_> = enumerate_c(0, 1, 3)
            .unwrap()
            .into_iter()
            .map(|x| x.parts)
            .collect();
        assert_eq!(
            three,
            vec![
                vec![p(2, 0), p(1, 1), p(0, 0)],
                vec![p(1, 1), p(1, 1), p(1, 1), p(0, 0)],
            ]
        );
        assert_eq!(count_c(0, 1, 2).unwrap(), 1);
    }

    #[test]
    fn c_geq_small_weights() {
        assert_eq!(count_c_geq(0, 1, 1).unwrap(), 2);
        for n in 0..=3 {
            for i in 0..=n {
                assert_eq!(count_c_geq(i, n, 0).unwrap(), 1);
            }
        }
    }

    #[test]
    fn exact_members_rebuild_from_colours() {
        for x in GroundedFamily::c(1, 3).unwrap().enumerate(12).unwrap() {
            let sizes: Vec<i64> = x.parts.iter().map(|q| q.size).collect();
            assert_eq!(sizes, exact_sizes_from_colours(&x.colours()));
        }
    }

    #[test]
    fn enumeration_agrees_with_membership() {
        let fam = GroundedFamily::c_geq(1, 2).unwrap();
        for x in fam.enumerate(9).unwrap() {
            assert!(fam.contains(&x.parts), "{x}");
        }
        assert!(!fam.contains(&[p(0, 1), p(0, 1)]));
        assert!(!fam.contains(&[p(0, 2), p(0, 1)]));
        assert!(fam.contains(&[p(1, 2), p(0, 1)]));
    }

    #[test]
    fn output_is_sorted_and_distinct() {
        let v = GroundedFamily::c(0, 2).unwrap().enumerate(10).unwrap();
        for w in v.windows(2) {
            assert!(
                (w[0].weight(), w[0].parts.len(), &w[0].parts)
                    < (w[1].weight(), w[1].parts.len(), &w[1].parts)
            );
        }
    }

    #[test]
    fn generating_function_counts_colours() {
        let g = GroundedFamily::c(0, 1)
            .unwrap()
            .generating_function(3)
            .unwrap();
        assert_eq!(g.coeff(0).to_string(), "c0");
        assert_eq!(g.coeff(1).to_string(), "c0*c1");
    }

    #[test]
    fn bad_parameters() {
        assert!(GroundedFamily::c(3, 2).is_err());
        assert!(Relation::new(vec![vec![0, 1]], RelationKind::Exact, RelationTag::Exact).is_err());
        let r = Relation::at_least_distance(1);
        assert!(matches!(
            GroundedFamily::new(r, GroundSpec::Multi(vec![p(1, 0)]), None),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn zero_weight_cycle_is_reported() {
        // Two colours with zero gaps in both directions and no divisibility:
        // 0_c1 0_c0 0_c1 ... never terminates.
        let r = Relation::new(
            vec![vec![0, 0], vec![0, 0]],
            RelationKind::Exact,
            RelationTag::Energy,
        )
        .unwrap();
        let fam = GroundedFamily::new(r, GroundSpec::Single(0), None).unwrap();
        assert!(matches!(fam.counts(3), Err(Error::Spec(_))));
    }

    #[test]
    fn negative_cycle_is_reported() {
        let r = Relation::new(
            vec![vec![1, -2], vec![-2, 1]],
            RelationKind::Exact,
            RelationTag::Energy,
        )
        .unwrap();
        let fam = GroundedFamily::new(r, GroundSpec::Single(0), None).unwrap();
        assert!(matches!(fam.counts(3), Err(Error::Spec(_))));
    }

    #[test]
    fn partition_json_shape() {
        let x = &enumerate_c(0, 1, 1).unwrap()[0];
        assert_eq!(
            serde_json::to_string(&x.to_json()).unwrap(),
            r#"{"parts":[{"size":1,"colour":1},{"size":0,"colour":0}],"weight":1}"#
        );
    }
}
