use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::Ring;

/// Exponent vector over the colour variables `c_0, c_1, ...`.
///
/// Stored with trailing zeros trimmed so that vectors of different nominal
/// lengths compare equal when they denote the same monomial. Ordering is
/// lexicographic on the zero-padded vectors.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<i32>);

impl Exponents {
    pub fn new(mut exps: Vec<i32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Exponents(exps)
    }

    pub fn unit() -> Self {
        Exponents(Vec::new())
    }

    /// Exponent vector of the single variable `c_var`.
    pub fn var(var: usize) -> Self {
        let mut v = vec![0; var + 1];
        v[var] = 1;
        Exponents(v)
    }

    pub fn get(&self, var: usize) -> i32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        let len = self.0.len().max(other.0.len());
        Exponents::new((0..len).map(|v| self.get(v) + other.get(v)).collect())
    }

    pub fn neg(&self) -> Exponents {
        Exponents(self.0.iter().map(|e| -e).collect())
    }

    /// Sum of the exponents of the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> i64 {
        vars.iter().map(|&v| self.get(v) as i64).sum()
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.0.len().max(other.0.len());
        for v in 0..len {
            match self.get(v).cmp(&other.get(v)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A signed monomial `coeff * c^exps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMono {
    pub exps: Exponents,
    pub coeff: BigInt,
}

impl LaurentMono {
    pub fn new(exps: Exponents, coeff: impl Into<BigInt>) -> Self {
        LaurentMono {
            exps,
            coeff: coeff.into(),
        }
    }

    /// `sign * c_{v_1} * c_{v_2} * ...` for the listed variables (repeats allowed).
    pub fn of_vars(sign: i64, vars: &[usize]) -> Self {
        let exps = vars
            .iter()
            .fold(Exponents::unit(), |acc, &v| acc.add(&Exponents::var(v)));
        LaurentMono::new(exps, sign)
    }
}

/// Sparse Laurent polynomial in the colour variables with integer coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::from_mono(LaurentMono::new(Exponents::unit(), c))
    }

    pub fn from_mono(mono: LaurentMono) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(mono.exps, &mono.coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, BigInt)>>(terms: I) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: &BigInt) {
        if Zero::is_zero(coeff) {
            return;
        }
        let slot = self
            .terms
            .entry(exps.clone())
            .or_insert_with(<BigInt as Zero>::zero);
        *slot += coeff;
        if Zero::is_zero(slot) {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: &Exponents) -> BigInt {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(<BigInt as Zero>::zero)
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Keep only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Exponents) -> bool) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replace each coefficient `a_e` by `sign(e) * a_e`.
    pub fn twist(&self, mut sign: impl FnMut(&Exponents) -> bool) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), if sign(e) { -c } else { c.clone() }))
                .collect(),
        }
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn one() -> Self {
        LaurentPoly::constant(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c);
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), &-c);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), &(c1 * c2));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        c.abs()
            .is_one()
            .then(|| LaurentPoly::from_mono(LaurentMono::new(e.neg(), c.clone())))
    }
    fn div_exact(&self, d: i64) -> Option<Self> {
        let mut out = LaurentPoly::default();
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.div_exact(d)?);
        }
        Some(out)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(v, &x)| {
                    if x == 1 {
                        format!("c{v}")
                    } else {
                        format!("c{v}^{x}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_canonical() {
        assert_eq!(Exponents::new(vec![1, 0, 0]), Exponents::new(vec![1]));
        assert!(Exponents::new(vec![0, 0]).is_unit());
    }

    #[test]
    fn padded_lexicographic_order() {
        let neg = Exponents::new(vec![-1]);
        let one = Exponents::unit();
        let c1 = Exponents::var(1);
        assert!(neg < one);
        assert!(one < c1);
        assert!(c1 < Exponents::var(0));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = LaurentPoly::from_mono(LaurentMono::of_vars(1, &[0]));
        p.add_term(Exponents::var(0), &BigInt::from(-1));
        assert!(Ring::is_zero(&p));
    }

    #[test]
    fn monomial_units_invert() {
        let p = LaurentPoly::from_mono(LaurentMono::of_vars(-1, &[0, 2, 2]));
        let inv = p.unit_inverse().unwrap();
        assert_eq!(p.mul_ref(&inv), LaurentPoly::one());
        let two = LaurentPoly::constant(2);
        assert!(two.unit_inverse().is_none());
        let binom =
            LaurentPoly::one().mul_ref(&LaurentPoly::from_mono(LaurentMono::of_vars(1, &[1])));
        let mut sum = binom.clone();
        sum.add_assign_ref(&LaurentPoly::one());
        assert!(sum.unit_inverse().is_none());
    }

    #[test]
    fn display_is_readable() {
        let mut p = LaurentPoly::constant(1);
        p.add_term(Exponents::new(vec![1, 0, 1]), &BigInt::from(-2));
        assert_eq!(p.to_string(), "1 - 2*c0*c2");
    }
}
