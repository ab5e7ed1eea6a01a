//! Exact rationals, dense polynomials in one and two variables, and
//! truncated power series.

pub mod bipoly;
pub mod poly;
pub mod rational;
pub mod series;

pub use bipoly::BiPoly;
pub use poly::UniPoly;
pub use rational::{pochhammer, rat, Rational};
pub use series::{exp_series, PowerSeries};
