//! Exact truncated series arithmetic.
//!
//! Three coefficient settings share one engine ([`Series`]): integers
//! ([`QSeries`]), Laurent polynomials in colour variables ([`ColouredSeries`]),
//! and the level-2 weight lattice ([`LatticeSeries`], truncated in `e^{-δ/2}`).

mod json;
mod lattice;
mod laurent;
mod ring;
mod series;

pub use json::{SeriesJson, TermJson};
pub use lattice::{
    lattice_poch, lattice_sum, substitute, LatticeMono, LatticeSeries, Substitution,
};
pub use laurent::{Exponents, LaurentMono, LaurentPoly};
pub use ring::Ring;
pub use series::{poch, ColouredSeries, QSeries, Series};

use num_bigint::BigInt;

/// `(q^shift; q^step)_inf` as an integer series.
pub fn qpoch(shift: i64, step: i64, order: i64) -> crate::Result<QSeries> {
    poch(&BigInt::from(1), shift, step, order)
}

/// Coloured Pochhammer `(sign * c^vars * q^shift; q^step)_inf`, i.e.
/// `prod_k (1 - sign * c^vars * q^(shift + step k))`.
pub fn colour_poch(
    sign: i64,
    vars: &[usize],
    shift: i64,
    step: i64,
    order: i64,
) -> crate::Result<ColouredSeries> {
    poch(
        &LaurentPoly::from_mono(LaurentMono::of_vars(sign, vars)),
        shift,
        step,
        order,
    )
}
