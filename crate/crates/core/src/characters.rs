//! Both sides of the character identities: the principally specialised
//! Weyl–Kac product, and the three level-2 modules `L(Λ_0+Λ_1)`, `L(2Λ_0)`,
//! `L(2Λ_1)` as closed products and as grounded-partition generating functions.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::classical::{product_side, Family};
use crate::coloured::{c_counts, c_geq_counts, GroundSpec, GroundedFamily};
use crate::crystal::{multiground_tail, EnergyTable};
use crate::error::{usage, Error, Result};
use crate::par::Parallelism;
use crate::qseries::{
    colour_poch, lattice_poch, qpoch, substitute, ColouredSeries, LatticeMono, LatticeSeries,
    LaurentMono, LaurentPoly, QSeries, Series, Substitution,
};
use crate::report::{first_difference, Mismatch, Report};

/// Exponents of the positive dual roots `kα_0^∨+(k-1)α_1^∨`,
/// `(k-1)α_0^∨+kα_1^∨`, `kα_0^∨+kα_1^∨` paired with `Λ_{i,n}+ρ` (numerator)
/// and with `ρ` (denominator).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualRootExponents {
    pub k: i64,
    pub numerator: [i64; 3],
    pub denominator: [i64; 3],
}

impl DualRootExponents {
    pub fn new(i: usize, n: usize, k: i64) -> Self {
        let (a, b) = (i as i64 + 1, (n - i) as i64 + 1);
        DualRootExponents {
            k,
            numerator: [a * k + b * (k - 1), a * (k - 1) + b * k, (n as i64 + 2) * k],
            denominator: [2 * k - 1, 2 * k - 1, 2 * k],
        }
    }
}

/// `Π_{k≥1} Π_r (1 - q^{num_r}) / (1 - q^{den_r})` to order `order`.
pub fn weyl_kac_principal(i: usize, n: usize, order: i64) -> Result<QSeries> {
    if i > n {
        return usage(format!("need 0 <= i <= n, got i={i}, n={n}"));
    }
    if order < 0 {
        return usage("order must be >= 0");
    }
    let len = order as usize + 1;
    let mut c = vec![BigInt::from(0); len];
    c[0] = BigInt::from(1);
    let mut k = 1;
    loop {
        let e = DualRootExponents::new(i, n, k);
        if e.numerator.iter().chain(&e.denominator).all(|&x| x > order) {
            break;
        }
        for &x in e.numerator.iter().filter(|&&x| x <= order) {
            let x = x as usize;
            for t in (x..len).rev() {
                let d = c[t - x].clone();
                c[t] -= d;
            }
        }
        for &x in e.denominator.iter().filter(|&&x| x <= order) {
            let x = x as usize;
            for t in x..len {
                let d = c[t - x].clone();
                c[t] += d;
            }
        }
        k += 1;
    }
    Ok(QSeries::from_coeffs(c))
}

/// The three level-2 standard modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level2Module {
    /// `L(Λ_0 + Λ_1)`
    #[serde(rename = "L01")]
    L01,
    /// `L(2Λ_0)`
    #[serde(rename = "2L0")]
    TwoL0,
    /// `L(2Λ_1)`
    #[serde(rename = "2L1")]
    TwoL1,
}

impl Level2Module {
    pub const ALL: [Level2Module; 3] =
        [Level2Module::L01, Level2Module::TwoL0, Level2Module::TwoL1];

    /// Period-one grounds use `D = d = 1`; the period-two grounds need `D = d = 2`.
    fn dilation(self) -> i64 {
        match self {
            Level2Module::L01 => 1,
            _ => 2,
        }
    }

    fn grounds(self) -> &'static [usize] {
        match self {
            Level2Module::L01 => &[1],
            Level2Module::TwoL0 => &[2, 0],
            Level2Module::TwoL1 => &[0, 2],
        }
    }

    /// The grounded family whose generating function is `e^{-λ}ch L(λ)/(q^d;q^d)_∞`.
    pub fn family(self) -> Result<GroundedFamily> {
        let table = EnergyTable::h_lambda(2)?;
        let d = self.dilation();
        let relation = table.relation(d, Some(d))?;
        let ground = multiground_tail(&table, self.grounds(), d)?;
        let multiple = match ground {
            GroundSpec::Single(_) => None,
            GroundSpec::Multi(ref t) => Some(t.len()),
        };
        GroundedFamily::new(relation, ground, multiple)
    }

    /// `q ↦ e^{-δ/(D)}`, `c_0 ↦ e^{α_1}`, `c_1 ↦ 1`, `c_2 ↦ e^{-α_1}`.
    pub fn substitution(self) -> Substitution {
        Substitution {
            colours: vec![
                LatticeMono::ALPHA1,
                LatticeMono::ONE,
                LatticeMono::NEG_ALPHA1,
            ],
            q: match self {
                Level2Module::L01 => LatticeMono::NEG_DELTA,
                _ => LatticeMono::NEG_HALF_DELTA,
            },
        }
    }

    /// `δ/2`-order of the character corresponding to `q`-order `order`.
    pub fn lattice_order(self, order: i64) -> i64 {
        self.substitution().q.a * order
    }
}

impl fmt::Display for Level2Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level2Module::L01 => "L01",
            Level2Module::TwoL0 => "2L0",
            Level2Module::TwoL1 => "2L1",
        })
    }
}

impl FromStr for Level2Module {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L01" | "l01" => Ok(Level2Module::L01),
            "2L0" | "2l0" => Ok(Level2Module::TwoL0),
            "2L1" | "2l1" => Ok(Level2Module::TwoL1),
            _ => usage(format!("unknown module {s:?} (expected L01, 2L0 or 2L1)")),
        }
    }
}

fn lp(sign: i64, a: i64, b: i64, ord: i64) -> Result<LatticeSeries> {
    lattice_poch(sign, LatticeMono::new(a, b), 2, ord)
}

fn triple_product(sign: i64, mut xs: [(i64, i64); 3], ord: i64) -> Result<LatticeSeries> {
    // A factor starting below e^0 costs one order in every later product, so
    // it is multiplied in last, with one extra order of headroom.
    xs.sort_by_key(|&(a, _)| std::cmp::Reverse(a));
    let work = ord + 1;
    let mut acc = lp(sign, xs[0].0, xs[0].1, work)?;
    for &(a, b) in &xs[1..] {
        acc = acc.mul_common(&lp(sign, a, b, work)?)?;
    }
    acc.truncate(ord)
}

/// `e^{-λ}ch L(λ)` from its product formula, to `δ/2`-order `lattice_order`.
pub fn level2_char_closed(module: Level2Module, lattice_order: i64) -> Result<LatticeSeries> {
    let ord = lattice_order;
    match module {
        Level2Module::L01 => triple_product(-1, [(2, 1), (0, -1), (2, 0)], ord),
        Level2Module::TwoL0 | Level2Module::TwoL1 => {
            let xs = if module == Level2Module::TwoL0 {
                [(1, 1), (1, -1), (1, 0)]
            } else {
                [(3, 1), (-1, -1), (1, 0)]
            };
            let plus = triple_product(-1, xs, ord)?;
            let minus = triple_product(1, xs, ord)?;
            plus.add(&minus)?.div_exact(2)
        }
    }
}

fn mono(vars: &[usize]) -> LaurentPoly {
    LaurentPoly::from_mono(LaurentMono::of_vars(1, vars))
}

/// The coloured product before even extraction (for `L01`, the final
/// generating function). The `2L1` product has a `q^{-1}` term.
pub fn level2_gf_raw(module: Level2Module, order: i64) -> Result<ColouredSeries> {
    let work = order + 1;
    let prefactor = |vars: &[usize]| Series::monomial(mono(vars), 0, work);
    let g = match module {
        Level2Module::L01 => prefactor(&[1])
            .mul_common(&colour_poch(-1, &[0], 1, 1, work)?)?
            .mul_common(&colour_poch(-1, &[2], 0, 1, work)?)?
            .mul_common(&colour_poch(1, &[1], 1, 1, work)?.inv()?)?
            .mul_common(&colour_poch(1, &[0, 2], 1, 2, work)?.inv()?)?,
        Level2Module::TwoL0 | Level2Module::TwoL1 => {
            let (s0, s2) = if module == Level2Module::TwoL0 {
                (1, 1)
            } else {
                (3, -1)
            };
            // The c_2 factor may start at q^{-1}; multiplying it in last keeps
            // the lost order to one.
            prefactor(&[0, 2])
                .mul_common(&colour_poch(-1, &[0], s0, 2, work)?)?
                .mul_common(&colour_poch(1, &[1], 1, 2, work)?.inv()?)?
                .mul_common(&colour_poch(1, &[0, 2], 4, 4, work)?.inv()?)?
                .mul_common(&colour_poch(-1, &[2], s2, 2, work)?)?
        }
    };
    g.truncate(order)
}

/// Closed generating function of the module's grounded partitions.
pub fn level2_gf_closed(module: Level2Module, order: i64) -> Result<ColouredSeries> {
    let raw = level2_gf_raw(module, order)?;
    Ok(match module {
        Level2Module::L01 => raw,
        _ => raw.even_extract(&[0, 1, 2]),
    })
}

/// `Σ C(π) q^{|π|}` over the enumerated grounded partitions of the module.
pub fn gf_from_enumeration(module: Level2Module, order: i64) -> Result<ColouredSeries> {
    module.family()?.generating_function(order)
}

fn first_coloured_difference(
    stage: &str,
    lhs: &ColouredSeries,
    rhs: &ColouredSeries,
) -> Option<Mismatch> {
    let lo = lhs.q_min().min(rhs.q_min());
    let hi = lhs.trunc_order().min(rhs.trunc_order());
    (lo..=hi).find_map(|e| {
        let (l, r) = (lhs.coeff(e), rhs.coeff(e));
        if l == r {
            return None;
        }
        let mut diff = l.clone();
        crate::qseries::Ring::sub_assign_ref(&mut diff, &r);
        let (exps, _) = diff.terms().next().expect("non-zero difference");
        let at = LaurentPoly::from_terms([(exps.clone(), BigInt::from(1))]);
        Some(Mismatch::new(
            stage,
            format!("q^{e} * {at}"),
            l.coeff(exps),
            r.coeff(exps),
        ))
    })
}

fn first_lattice_difference(
    stage: &str,
    lhs: &LatticeSeries,
    rhs: &LatticeSeries,
) -> Option<Mismatch> {
    let mut keys: Vec<LatticeMono> = lhs
        .terms()
        .into_iter()
        .chain(rhs.terms())
        .map(|(m, _)| m)
        .collect();
    keys.sort_by_key(|m| (m.a, m.b));
    keys.dedup();
    let hi = lhs.trunc_order().min(rhs.trunc_order());
    keys.into_iter()
        .filter(|m| m.a <= hi)
        .find(|&m| lhs.coeff(m) != rhs.coeff(m))
        .map(|m| Mismatch::new(stage, m, lhs.coeff(m), rhs.coeff(m)))
}

/// Checks the module's character formula at `q`-order `order`: enumerated
/// generating function against the closed one, then the substituted
/// generating function times `(q^d;q^d)_∞` against the closed character.
pub fn verify_character(module: Level2Module, order: i64) -> Result<Report> {
    let started = Instant::now();
    let enumerated = gf_from_enumeration(module, order)?;
    let closed = level2_gf_closed(module, order)?;
    let mut mismatch = first_coloured_difference(
        "enumerated vs closed generating function",
        &enumerated,
        &closed,
    );
    let lattice_order = module.lattice_order(order);
    let mut char_closed = level2_char_closed(module, lattice_order)?;
    let q_shift = char_closed.inner().lowest_nonzero().unwrap_or(0);
    if mismatch.is_none() {
        let d = module.dilation();
        let qd = module.substitution().q.pow(d);
        let euler = lattice_poch(1, qd, qd.a, lattice_order)?;
        let mut lhs = substitute(&enumerated, &module.substitution())?.mul(&euler)?;
        lhs.trim_low();
        char_closed.trim_low();
        mismatch = first_lattice_difference(
            "substituted generating function vs closed character",
            &lhs,
            &char_closed,
        );
    }
    let mut report = Report::finish(format!("character:{module}"), order, started, mismatch);
    report.q_shift = Some(q_shift);
    Ok(report)
}

/// Which of the two main identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MainRelation {
    Exact,
    Atleast,
}

impl FromStr for MainRelation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(MainRelation::Exact),
            "atleast" | "at-least" | "geq" => Ok(MainRelation::Atleast),
            _ => usage(format!(
                "unknown relation {s:?} (expected exact or atleast)"
            )),
        }
    }
}

impl fmt::Display for MainRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MainRelation::Exact => "exact",
            MainRelation::Atleast => "atleast",
        })
    }
}

/// Counts of `C_n` (or `C_n^≥`) partitions against the product side and the
/// Weyl–Kac specialisation (times `1/(q;q)_∞` for the at-least relation).
pub fn verify_main(i: usize, n: usize, which: MainRelation, order: i64) -> Result<Report> {
    let started = Instant::now();
    if i > n {
        return usage(format!("need 0 <= i <= n, got i={i}, n={n}"));
    }
    let max = usize::try_from(order).map_err(|_| Error::Usage("order must be >= 0".into()))?;
    let (counts, family, wk) = match which {
        MainRelation::Exact => (
            c_counts(i, n, max)?,
            Family::MpOrMain { i, n },
            weyl_kac_principal(i, n, order)?,
        ),
        MainRelation::Atleast => (
            c_geq_counts(i, n, max)?,
            Family::MainGeq { i, n },
            weyl_kac_principal(i, n, order)?.mul(&qpoch(1, 1, order)?.inv()?)?,
        ),
    };
    let product = product_side(family, order)?.coeff_vec();
    let mismatch = first_difference("count vs product", &counts, &product)
        .or_else(|| first_difference("count vs Weyl-Kac", &counts, &wk.coeff_vec()));
    Ok(Report::finish(
        format!("main:{which}:i={i}:n={n}"),
        order,
        started,
        mismatch,
    ))
}

/// Weyl–Kac specialisation against the product side.
pub fn verify_weyl_kac(i: usize, n: usize, order: i64) -> Result<Report> {
    let started = Instant::now();
    let wk = weyl_kac_principal(i, n, order)?;
    let product = product_side(Family::MpOrMain { i, n }, order)?;
    let mismatch = first_difference("Weyl-Kac vs product", &wk.coeff_vec(), &product.coeff_vec());
    Ok(Report::finish(
        format!("weyl-kac:i={i}:n={n}"),
        order,
        started,
        mismatch,
    ))
}

/// A classical brute-force counter against its product side.
pub fn verify_classical(family: Family, order: i64) -> Result<Report> {
    let started = Instant::now();
    family.validate()?;
    let max = usize::try_from(order).map_err(|_| Error::Usage("order must be >= 0".into()))?;
    let (name, counts) = match family {
        Family::Ag { i, r } => (
            format!("ag:i={i}:r={r}"),
            crate::classical::ag_counts(i, r, max)?,
        ),
        Family::Bressoud { i, r } => (
            format!("bressoud:i={i}:r={r}"),
            crate::classical::bressoud_counts(i, r, max)?,
        ),
        Family::MpOrMain { i, n } => (
            format!("mp:i={i}:n={n}"),
            crate::classical::mp_counts(i, n, max)?,
        ),
        Family::MainGeq { i, n } => (
            format!("main:atleast:i={i}:n={n}"),
            c_geq_counts(i, n, max)?,
        ),
    };
    let product = product_side(family, order)?.coeff_vec();
    let mut mismatch = first_difference("count vs product", &counts, &product);
    if let (None, Family::MpOrMain { i, n }) = (&mismatch, family) {
        mismatch = first_difference("count vs C_n count", &counts, &c_counts(i, n, max)?);
    }
    Ok(Report::finish(name, order, started, mismatch))
}

/// `verify_main` over every `0 <= i <= n <= n_max` and both relations listed.
pub fn main_grid(
    n_max: Option<usize>,
    relations: &[MainRelation],
    order: i64,
    par: Parallelism,
) -> Result<Vec<Report>> {
    let mut cells = Vec::new();
    if let Some(n_max) = n_max {
        for &rel in relations {
            for n in 0..=n_max {
                for i in 0..=n {
                    cells.push((i, n, rel));
                }
            }
        }
    }
    par.map(cells, |(i, n, rel)| verify_main(i, n, rel, order))
        .into_iter()
        .collect()
}

/// `verify_character` over the given modules.
pub fn character_grid(
    modules: &[Level2Module],
    order: i64,
    par: Parallelism,
) -> Result<Vec<Report>> {
    par.map(modules.to_vec(), |m| verify_character(m, order))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Exponents;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.coeff_vec()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn dual_root_residues() {
        for n in 0..=5usize {
            for i in 0..=n {
                for k in 1..6 {
                    let e = DualRootExponents::new(i, n, k);
                    let m = n as i64 + 2;
                    assert_eq!(e.numerator[0].rem_euclid(m), (i as i64 + 1) % m);
                    assert_eq!(e.numerator[1].rem_euclid(m), ((n - i) as i64 + 1) % m);
                    assert_eq!(e.numerator[2] % m, 0);
                }
            }
        }
    }

    #[test]
    fn weyl_kac_collapses_for_n1() {
        assert_eq!(
            ints(&weyl_kac_principal(0, 1, 5).unwrap()),
            vec![1, 1, 1, 2, 2, 3]
        );
        assert_eq!(
            weyl_kac_principal(2, 3, 0).unwrap().coeff(0),
            BigInt::from(1)
        );
    }

    #[test]
    fn weyl_kac_equals_product_side() {
        for n in 0..=3 {
            for i in 0..=n {
                assert!(verify_weyl_kac(i, n, 20).unwrap().passed());
            }
        }
    }

    #[test]
    fn level2_constant_terms() {
        let g = level2_gf_closed(Level2Module::L01, 3).unwrap();
        assert_eq!(g.coeff(0).to_string(), "c1 + c1*c2");
        let g = level2_gf_closed(Level2Module::TwoL0, 3).unwrap();
        assert_eq!(g.lowest_nonzero(), Some(0));
        assert_eq!(g.coeff(0).to_string(), "c0*c2");
        for m in Level2Module::ALL {
            let ch = level2_char_closed(m, 6).unwrap();
            assert_eq!(ch.coeff(LatticeMono::ONE), BigInt::from(1));
        }
    }

    #[test]
    fn raw_2l1_product_has_negative_power() {
        let raw = level2_gf_raw(Level2Module::TwoL1, 4).unwrap();
        assert_eq!(raw.q_min(), -1);
        assert_eq!(
            raw.coeff(-1).coeff(&Exponents::new(vec![1, 0, 2])),
            BigInt::from(1)
        );
        let ext = level2_gf_closed(Level2Module::TwoL1, 4).unwrap();
        assert_eq!(ext.lowest_nonzero(), Some(0));
    }

    #[test]
    fn enumerated_constant_terms() {
        assert_eq!(
            gf_from_enumeration(Level2Module::L01, 0)
                .unwrap()
                .coeff(0)
                .to_string(),
            "c1 + c1*c2"
        );
        assert_eq!(
            gf_from_enumeration(Level2Module::TwoL0, 0)
                .unwrap()
                .coeff(0)
                .to_string(),
            "c0*c2"
        );
    }

    #[test]
    fn characters_small_order() {
        for m in Level2Module::ALL {
            let r = verify_character(m, 4).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.q_shift, Some(0));
        }
    }

    #[test]
    fn level2_expansions_are_positive() {
        for m in [Level2Module::TwoL0, Level2Module::TwoL1] {
            assert!(level2_char_closed(m, 8).unwrap().is_nonnegative());
        }
    }

    #[test]
    fn main_checks() {
        assert!(verify_main(0, 1, MainRelation::Exact, 12).unwrap().passed());
        assert!(verify_main(1, 2, MainRelation::Atleast, 10)
            .unwrap()
            .passed());
        assert!(verify_main(2, 2, MainRelation::Exact, 0).unwrap().passed());
        assert!(verify_main(3, 2, MainRelation::Exact, 5).is_err());
    }

    #[test]
    fn module_names_round_trip() {
        for m in Level2Module::ALL {
            assert_eq!(m.to_string().parse::<Level2Module>().unwrap(), m);
        }
        assert!("3L0".parse::<Level2Module>().is_err());
    }

    #[test]
    fn empty_grid() {
        assert!(
            main_grid(None, &[MainRelation::Exact], 5, Parallelism::Sequential)
                .unwrap()
                .is_empty()
        );
        assert!(character_grid(&[], 5, Parallelism::Sequential)
            .unwrap()
            .is_empty());
    }
}
