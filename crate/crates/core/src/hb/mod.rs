//! Hypergeometric Bernoulli numbers, polynomials, higher-order variants and
//! the `A`-coefficient tables, each available along several independent
//! computation paths.

pub mod apoly;
pub mod numbers;
pub mod operators;
pub mod polys;

pub use apoly::{a_poly, a_poly_at_zero, APolyTable};
pub use numbers::{generating_series, hb_numbers, normalized_denominator, HBNumberTable};
pub use operators::{mult_operator_apply, MultiplicativeOperator};
pub use polys::{
    appell_table, hb_higher_polys_order_steps, hb_higher_polys_recurrence,
    hb_higher_polys_series, hb_order_step, hb_polys, is_monic_sequence, next_order_table,
    HBPolyTable,
};
