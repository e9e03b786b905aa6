use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::{Exponents, LaurentMono, LaurentPoly};
use super::ring::Ring;
use super::series::{poch, ColouredSeries, Series};
use crate::error::{usage, Error, Result};

/// Exponent pair of the formal exponential `e^{-a δ/2 + b α_1}`.
///
/// Using `δ/2` as the basis vector keeps every weight that occurs at level 2
/// integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeMono {
    /// Power of `e^{-δ/2}`.
    pub a: i64,
    /// Power of `e^{α_1}`.
    pub b: i64,
}

impl LatticeMono {
    pub const ONE: LatticeMono = LatticeMono { a: 0, b: 0 };
    /// `e^{-δ}`
    pub const NEG_DELTA: LatticeMono = LatticeMono { a: 2, b: 0 };
    /// `e^{-δ/2}`
    pub const NEG_HALF_DELTA: LatticeMono = LatticeMono { a: 1, b: 0 };
    /// `e^{α_1}`
    pub const ALPHA1: LatticeMono = LatticeMono { a: 0, b: 1 };
    /// `e^{-α_1}`
    pub const NEG_ALPHA1: LatticeMono = LatticeMono { a: 0, b: -1 };
    /// `e^{-α_0} = e^{-δ + α_1}`
    pub const NEG_ALPHA0: LatticeMono = LatticeMono { a: 2, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        LatticeMono { a, b }
    }

    pub fn pow(self, k: i64) -> LatticeMono {
        LatticeMono::new(self.a * k, self.b * k)
    }

    fn alpha_poly(self, coeff: BigInt) -> LaurentPoly {
        LaurentPoly::from_mono(LaurentMono::new(Exponents::new(vec![self.b as i32]), coeff))
    }
}

impl std::ops::Mul for LatticeMono {
    type Output = LatticeMono;
    fn mul(self, other: LatticeMono) -> LatticeMono {
        LatticeMono::new(self.a + other.a, self.b + other.b)
    }
}

impl fmt::Display for LatticeMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.a != 0 {
            let sign = if self.a > 0 { "-" } else { "" };
            let mag = self.a.abs();
            let delta = match (mag % 2, mag / 2) {
                (0, 1) => "δ".to_string(),
                (0, k) => format!("{k}δ"),
                (_, _) if mag == 1 => "δ/2".to_string(),
                _ => format!("{mag}δ/2"),
            };
            parts.push(format!("{sign}{delta}"));
        }
        if self.b != 0 {
            let sign = if self.b < 0 {
                "-"
            } else if parts.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = self.b.abs();
            if mag == 1 {
                parts.push(format!("{sign}α_1"));
            } else {
                parts.push(format!("{sign}{mag}α_1"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "e^{{{}}}", parts.concat())
        }
    }
}

/// Series in `e^{-δ/2}` (truncated) with Laurent-polynomial coefficients in `e^{α_1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSeries(Series<LaurentPoly>);

impl LatticeSeries {
    pub fn zero(a_min: i64, trunc: i64) -> Self {
        LatticeSeries(Series::zero(a_min, trunc))
    }

    pub fn one(trunc: i64) -> Self {
        LatticeSeries(Series::one(trunc))
    }

    pub fn monomial(m: LatticeMono, coeff: impl Into<BigInt>, trunc: i64) -> Self {
        LatticeSeries(Series::monomial(m.alpha_poly(coeff.into()), m.a, trunc))
    }

    pub fn inner(&self) -> &Series<LaurentPoly> {
        &self.0
    }

    pub fn trunc_order(&self) -> i64 {
        self.0.trunc_order()
    }

    pub fn a_min(&self) -> i64 {
        self.0.q_min()
    }

    pub fn coeff(&self, m: LatticeMono) -> BigInt {
        self.0.coeff(m.a).coeff(&Exponents::new(vec![m.b as i32]))
    }

    /// Non-zero terms ordered by `a` then `b`.
    pub fn terms(&self) -> Vec<(LatticeMono, BigInt)> {
        let mut out = Vec::new();
        for (a, poly) in self.0.terms() {
            for (e, c) in poly.terms() {
                out.push((LatticeMono::new(a, e.get(0) as i64), c.clone()));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.0.add(&other.0).map(LatticeSeries)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.0.mul(&other.0).map(LatticeSeries)
    }

    pub fn mul_common(&self, other: &Self) -> Result<Self> {
        self.0.mul_common(&other.0).map(LatticeSeries)
    }

    pub fn truncate(&self, order: i64) -> Result<Self> {
        self.0.truncate(order).map(LatticeSeries)
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: i64) -> Result<Self> {
        let mut out = Series::zero(self.0.q_min(), self.0.trunc_order());
        for (a, c) in self.0.terms() {
            let q = c.div_exact(d).ok_or_else(|| {
                Error::Arithmetic(format!("coefficient at a={a} not divisible by {d}"))
            })?;
            out.set(a, q);
        }
        Ok(LatticeSeries(out))
    }

    /// Raises the lowest stored `δ/2` exponent to the first non-zero one; returns the shift.
    pub fn trim_low(&mut self) -> i64 {
        self.0.trim_low()
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(LatticeMono) -> bool) -> LatticeSeries {
        let mut out = Series::zero(self.0.q_min(), self.0.trunc_order());
        for (a, poly) in self.0.terms() {
            out.set(
                a,
                poly.filter(|e| keep(LatticeMono::new(a, e.get(0) as i64))),
            );
        }
        LatticeSeries(out)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms().iter().all(|(_, c)| !c.is_negative())
    }
}

impl fmt::Display for LatticeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match (mag.is_one(), *m == LatticeMono::ONE) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        write!(f, " + O(e^{{-{}δ/2}})", self.trunc_order() + 1)
    }
}

/// `prod_{k>=0} (1 - sign * x * e^{-k step δ/2})` with `x = e^{-a δ/2 + b α_1}`.
/// `sign = -1` gives the `(-x; ...)_inf` products of the character formulas.
pub fn lattice_poch(sign: i64, x: LatticeMono, step: i64, order: i64) -> Result<LatticeSeries> {
    poch(&x.alpha_poly(BigInt::from(sign)), x.a, step, order).map(LatticeSeries)
}

/// Images of the formal variables under a specialisation into the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    /// Image of `c_v` at index `v`.
    pub colours: Vec<LatticeMono>,
    /// Image of `q`.
    pub q: LatticeMono,
}

/// Pushes a coloured series forward along `q ↦ e^{...}`, `c_v ↦ e^{...}`.
///
/// The image of `q` must have positive `δ/2` depth and colour images must have
/// non-negative depth, so that the output is exact up to `depth(q) * trunc`.
pub fn substitute(g: &ColouredSeries, sub: &Substitution) -> Result<LatticeSeries> {
    if sub.q.a < 1 {
        return usage("substitute: image of q must have positive e^{-δ/2} exponent");
    }
    if sub.colours.iter().any(|m| m.a < 0) {
        return usage("substitute: colour images must have non-negative e^{-δ/2} exponent");
    }
    let trunc = sub.q.a * g.trunc_order();
    let mut out = Series::<LaurentPoly>::zero((sub.q.a * g.q_min()).min(0), trunc);
    for (qe, poly) in g.terms() {
        for (exps, c) in poly.terms() {
            let mut img = sub.q.pow(qe);
            for (v, &e) in exps.as_slice().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let Some(&m) = sub.colours.get(v) else {
                    return usage(format!("substitute: no image for colour c{v}"));
                };
                if e < 0 && m.a > 0 {
                    return usage("substitute: negative colour powers need depth-0 images");
                }
                img = img * m.pow(e as i64);
            }
            if img.a > trunc {
                continue;
            }
            let mut slot = out.coeff(img.a);
            slot.add_assign_ref(&img.alpha_poly(c.clone()));
            out.set(img.a, slot);
        }
    }
    Ok(LatticeSeries(out))
}

impl From<LatticeSeries> for Series<LaurentPoly> {
    fn from(s: LatticeSeries) -> Self {
        s.0
    }
}

/// Sum of the lattice images of `(coeff, monomial)` pairs, truncated at `trunc`.
pub fn lattice_sum<I: IntoIterator<Item = (LatticeMono, BigInt)>>(
    items: I,
    trunc: i64,
) -> LatticeSeries {
    let mut out = Series::<LaurentPoly>::zero(0, trunc);
    for (m, c) in items {
        if m.a > trunc || Zero::is_zero(&c) {
            continue;
        }
        let mut slot = out.coeff(m.a);
        slot.add_assign_ref(&m.alpha_poly(c));
        out.set(m.a, slot);
    }
    LatticeSeries(out)
}
