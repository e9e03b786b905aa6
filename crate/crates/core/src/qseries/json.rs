//! JSON form shared by every series type:
//! `{"trunc_order": N, "q_min": m, "terms": [{"q": e, "colours": [..], "coeff": "<decimal>"}]}`.
//!
//! Integer series emit `"colours": []`; lattice series use `q` for the power of
//! `e^{-δ/2}` and a one-entry `colours` vector for the power of `e^{α_1}`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::lattice::{lattice_sum, LatticeMono, LatticeSeries};
use super::laurent::{Exponents, LaurentPoly};
use super::ring::Ring;
use super::series::{ColouredSeries, QSeries, Series};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub q: i64,
    pub colours: Vec<i32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub trunc_order: i64,
    pub q_min: i64,
    pub terms: Vec<TermJson>,
}

fn parse_coeff(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|e| Error::Usage(format!("bad coefficient {s:?}: {e}")))
}

impl From<&QSeries> for SeriesJson {
    fn from(s: &QSeries) -> Self {
        SeriesJson {
            trunc_order: s.trunc_order(),
            q_min: s.q_min(),
            terms: s
                .terms()
                .map(|(q, c)| TermJson {
                    q,
                    colours: Vec::new(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl From<&ColouredSeries> for SeriesJson {
    fn from(s: &ColouredSeries) -> Self {
        let mut terms = Vec::new();
        for (q, poly) in s.terms() {
            for (e, c) in poly.terms() {
                terms.push(TermJson {
                    q,
                    colours: e.as_slice().to_vec(),
                    coeff: c.to_string(),
                });
            }
        }
        SeriesJson {
            trunc_order: s.trunc_order(),
            q_min: s.q_min(),
            terms,
        }
    }
}

impl From<&LatticeSeries> for SeriesJson {
    fn from(s: &LatticeSeries) -> Self {
        SeriesJson {
            trunc_order: s.trunc_order(),
            q_min: s.a_min(),
            terms: s
                .terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    q: m.a,
                    colours: vec![m.b as i32],
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl SeriesJson {
    fn check_window(&self, q: i64) -> Result<()> {
        if q < self.q_min || q > self.trunc_order {
            return Err(Error::Usage(format!(
                "term q^{q} outside [{}, {}]",
                self.q_min, self.trunc_order
            )));
        }
        Ok(())
    }

    pub fn to_qseries(&self) -> Result<QSeries> {
        let mut s: QSeries = Series::zero(self.q_min, self.trunc_order);
        for t in &self.terms {
            self.check_window(t.q)?;
            if t.colours.iter().any(|&e| e != 0) {
                return Err(Error::Usage("integer series term carries colours".into()));
            }
            let mut c = s.coeff(t.q);
            c.add_assign_ref(&parse_coeff(&t.coeff)?);
            s.set(t.q, c);
        }
        Ok(s)
    }

    pub fn to_coloured(&self) -> Result<ColouredSeries> {
        let mut s: ColouredSeries = Series::zero(self.q_min, self.trunc_order);
        for t in &self.terms {
            self.check_window(t.q)?;
            let mut c = s.coeff(t.q);
            c.add_assign_ref(&LaurentPoly::from_terms([(
                Exponents::new(t.colours.clone()),
                parse_coeff(&t.coeff)?,
            )]));
            s.set(t.q, c);
        }
        Ok(s)
    }

    pub fn to_lattice(&self) -> Result<LatticeSeries> {
        let mut items = Vec::new();
        for t in &self.terms {
            self.check_window(t.q)?;
            let b = match t.colours.as_slice() {
                [] => 0,
                [b] => *b as i64,
                _ => {
                    return Err(Error::Usage(
                        "lattice term has more than one colour exponent".into(),
                    ))
                }
            };
            items.push((LatticeMono::new(t.q, b), parse_coeff(&t.coeff)?));
        }
        LatticeSeries::zero(self.q_min, self.trunc_order).add(&lattice_sum(items, self.trunc_order))
    }
}
