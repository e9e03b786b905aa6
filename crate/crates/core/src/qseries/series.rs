use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::ring::Ring;
use crate::error::{usage, Error, Result};

/// Power series in `q` known exactly for exponents in `[q_min, trunc]`.
///
/// `coeffs[k]` is the coefficient of `q^(q_min + k)`; nothing above `trunc`
/// is ever read or written.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    q_min: i64,
    trunc: i64,
    coeffs: Vec<R>,
}

/// One-variable series with integer coefficients.
pub type QSeries = Series<BigInt>;
/// Series whose coefficients are Laurent polynomials in the colour variables.
pub type ColouredSeries = Series<LaurentPoly>;

impl<R: Ring> Series<R> {
    pub fn zero(q_min: i64, trunc: i64) -> Self {
        let len = (trunc - q_min + 1).max(0) as usize;
        Series {
            q_min,
            trunc,
            coeffs: vec![R::zero(); len],
        }
    }

    pub fn one(trunc: i64) -> Self {
        Series::monomial(R::one(), 0, trunc)
    }

    /// `c * q^exp`, truncated at `trunc`.
    pub fn monomial(c: R, exp: i64, trunc: i64) -> Self {
        let q_min = exp.min(0);
        let mut s = Series::zero(q_min, trunc);
        s.set(exp, c);
        s
    }

    /// Series with `coeffs[k]` the coefficient of `q^k`, truncated at `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let trunc = coeffs.len() as i64 - 1;
        Series {
            q_min: 0,
            trunc,
            coeffs,
        }
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn q_min(&self) -> i64 {
        self.q_min
    }

    /// Coefficient of `q^exp`, zero outside the stored window.
    pub fn coeff(&self, exp: i64) -> R {
        self.get(exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn get(&self, exp: i64) -> Option<&R> {
        if exp < self.q_min || exp > self.trunc {
            return None;
        }
        self.coeffs.get((exp - self.q_min) as usize)
    }

    /// Sets the coefficient of `q^exp`; exponents above `trunc` are ignored.
    pub fn set(&mut self, exp: i64, c: R) {
        if exp > self.trunc {
            return;
        }
        if exp < self.q_min {
            let pad = (self.q_min - exp) as usize;
            let mut coeffs = vec![R::zero(); pad];
            coeffs.append(&mut self.coeffs);
            self.coeffs = coeffs;
            self.q_min = exp;
        }
        let idx = (exp - self.q_min) as usize;
        self.coeffs[idx] = c;
    }

    /// Non-zero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        let q_min = self.q_min;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (q_min + k as i64, c))
    }

    pub fn lowest_nonzero(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    /// Drops everything above `order` (which must not exceed the current order).
    pub fn truncate(&self, order: i64) -> Result<Self> {
        if order > self.trunc {
            return usage(format!(
                "cannot raise truncation order from {} to {order}",
                self.trunc
            ));
        }
        let mut s = Series::zero(self.q_min.min(order + 1), order);
        for (e, c) in self.terms() {
            if e <= order {
                s.set(e, c.clone());
            }
        }
        Ok(s)
    }

    /// Raises `q_min` to the lowest non-zero exponent (or to 0 for the zero series,
    /// if that is higher) and returns how far it moved. Coefficients are unchanged.
    pub fn trim_low(&mut self) -> i64 {
        let target = self.lowest_nonzero().unwrap_or(self.trunc + 1);
        let target = target.min(self.trunc + 1);
        if target <= self.q_min {
            return 0;
        }
        let cut = (target - self.q_min) as usize;
        self.coeffs.drain(..cut);
        let moved = target - self.q_min;
        self.q_min = target;
        moved
    }

    /// Multiplication by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Series {
            q_min: self.q_min + shift,
            trunc: self.trunc + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    fn check_same_order(&self, other: &Self, op: &str) -> Result<()> {
        if self.trunc != other.trunc {
            return usage(format!(
                "{op}: mismatched truncation orders {} and {}",
                self.trunc, other.trunc
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other, "add")?;
        let mut out = Series::<R>::zero(self.q_min.min(other.q_min), self.trunc);
        for (e, c) in self.terms().chain(other.terms()) {
            let idx = (e - out.q_min) as usize;
            out.coeffs[idx].add_assign_ref(c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, factor: &R) -> Self {
        self.map(|c| c.mul_ref(factor))
    }

    /// Applies `f` to every stored coefficient.
    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        Series {
            q_min: self.q_min,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Truncated Cauchy product.
    ///
    /// When a factor has negative `q_min` the product is exact only up to
    /// `trunc + q_min` of the other factor, and the result's order is lowered
    /// accordingly.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other, "mul")?;
        let q_min = self.q_min + other.q_min;
        let trunc = self
            .trunc
            .min(self.trunc + other.q_min)
            .min(other.trunc + self.q_min);
        let mut out = Series::<R>::zero(q_min, trunc);
        for (ea, ca) in self.terms() {
            if ea + other.q_min > trunc {
                break;
            }
            for (eb, cb) in other.terms() {
                let e = ea + eb;
                if e > trunc {
                    break;
                }
                let idx = (e - q_min) as usize;
                out.coeffs[idx].add_assign_ref(&ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    /// Product after truncating both factors to the lower of their orders.
    pub fn mul_common(&self, other: &Self) -> Result<Self> {
        let t = self.trunc.min(other.trunc);
        self.truncate(t)?.mul(&other.truncate(t)?)
    }

    /// Multiplicative inverse. The lowest non-zero coefficient must be a unit.
    ///
    /// If that coefficient sits at `q^m`, the inverse starts at `q^-m` and is
    /// exact up to `trunc - 2m`.
    pub fn inv(&self) -> Result<Self> {
        let m = self
            .lowest_nonzero()
            .ok_or_else(|| Error::Arithmetic("cannot invert the zero series".into()))?;
        let lead = self.coeff(m);
        let lead_inv = lead.unit_inverse().ok_or_else(|| {
            Error::Arithmetic(format!("leading coefficient {lead:?} is not a unit"))
        })?;
        let rel_order = self.trunc - m;
        let a: Vec<R> = (0..=rel_order).map(|k| self.coeff(m + k)).collect();
        let mut b: Vec<R> = Vec::with_capacity(a.len());
        b.push(lead_inv.clone());
        for e in 1..=rel_order as usize {
            let mut acc = R::zero();
            for k in 1..=e {
                if !a[k].is_zero() && !b[e - k].is_zero() {
                    acc.add_assign_ref(&a[k].mul_ref(&b[e - k]));
                }
            }
            b.push(acc.mul_ref(&lead_inv).neg_ref());
        }
        let trunc = self.trunc - 2 * m;
        let mut out = Series::zero(-m, trunc);
        for (k, c) in b.into_iter().enumerate() {
            out.set(k as i64 - m, c);
        }
        Ok(out)
    }

    /// Multiplies in place by `(1 - x q^e)` with `e >= 0`.
    fn mul_binomial(&mut self, x: &R, e: i64) {
        debug_assert!(e >= 0);
        if e == 0 {
            let mut factor = R::one();
            factor.sub_assign_ref(x);
            for c in self.coeffs.iter_mut() {
                *c = c.mul_ref(&factor);
            }
            return;
        }
        let e = e as usize;
        for t in (e..self.coeffs.len()).rev() {
            if self.coeffs[t - e].is_zero() {
                continue;
            }
            let delta = self.coeffs[t - e].mul_ref(x);
            self.coeffs[t].sub_assign_ref(&delta);
        }
    }
}

/// Truncated `prod_{k>=0} (1 - x q^(shift + step*k))`.
///
/// A negated `x` gives the `(-x; q^step)_inf` products. Factors with a negative
/// q-exponent are expanded exactly first, so the result starts at the sum of
/// those exponents and is exact up to `order`.
pub fn poch<R: Ring>(x: &R, shift: i64, step: i64, order: i64) -> Result<Series<R>> {
    if step <= 0 {
        return usage(format!("pochhammer step must be >= 1, got {step}"));
    }
    let mut neg_exps = Vec::new();
    let mut e = shift;
    while e < 0 {
        neg_exps.push(e);
        e += step;
    }
    let q_min: i64 = neg_exps.iter().sum();
    // Start from the exact finite product of the negative-exponent factors,
    // written as q^{q_min} * P(q) with P a polynomial of non-negative degree.
    let mut poly: Vec<R> = vec![R::one()];
    for &ne in &neg_exps {
        // (1 - x q^ne) = q^ne (q^{-ne} - x)
        let d = (-ne) as usize;
        let mut next = vec![R::zero(); poly.len() + d];
        for (k, c) in poly.iter().enumerate() {
            next[k + d].add_assign_ref(c);
            next[k].sub_assign_ref(&c.mul_ref(x));
        }
        poly = next;
    }
    let mut out = Series::zero(q_min.min(0), order);
    for (k, c) in poly.into_iter().enumerate() {
        out.set(q_min + k as i64, c);
    }
    while e <= order - out.q_min {
        out.mul_binomial(x, e);
        e += step;
    }
    Ok(out)
}

impl Series<LaurentPoly> {
    /// Parity filter: keeps the monomials whose total degree in `vars` is even.
    pub fn even_part(&self, vars: &[usize]) -> Self {
        self.map(|p| p.filter(|e| e.degree_in(vars) % 2 == 0))
    }

    /// `G(.., -x_v, ..)` for every `v` in `vars`.
    pub fn negate_vars(&self, vars: &[usize]) -> Self {
        self.map(|p| p.twist(|e| e.degree_in(vars) % 2 != 0))
    }

    /// Half-sum form `(G(x) + G(-x)) / 2` of even extraction.
    pub fn even_part_halfsum(&self, vars: &[usize]) -> Result<Self> {
        let sum = self.add(&self.negate_vars(vars))?;
        let mut out = Series::zero(sum.q_min, sum.trunc);
        for (e, c) in sum.terms() {
            let half = c
                .div_exact(2)
                .ok_or_else(|| Error::Arithmetic("half-sum did not divide evenly".into()))?;
            out.set(e, half);
        }
        Ok(out)
    }

    /// Even extraction over `vars`. An empty variable set leaves `G` unchanged.
    pub fn even_extract(&self, vars: &[usize]) -> Self {
        let out = self.even_part(vars);
        debug_assert_eq!(
            Some(&out),
            self.even_part_halfsum(vars).ok().as_ref(),
            "parity filter and half-sum disagree"
        );
        out
    }
}

impl Series<BigInt> {
    /// Embeds an integer series into the coloured ring (colour-free coefficients).
    pub fn to_coloured(&self) -> ColouredSeries {
        let mut out = Series::zero(self.q_min, self.trunc);
        for (e, c) in self.terms() {
            out.set(e, LaurentPoly::constant(c.clone()));
        }
        out
    }

    /// Coefficients of `q^0..=q^trunc` (zero below `q_min`).
    pub fn coeff_vec(&self) -> Vec<BigInt> {
        (0..=self.trunc).map(|e| self.coeff(e)).collect()
    }
}
