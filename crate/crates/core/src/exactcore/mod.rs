//! Exact arithmetic: rationals, multivariate polynomials, univariate series
//! and rational functions, partitions, and dense rational linear algebra.

pub mod matrix;
pub mod mpoly;
mod parse;
pub mod partition;
pub mod rat;
pub mod series;

pub use matrix::RatMatrix;
pub use mpoly::{factor_multiplicity, MPoly, Multiplicity};
pub use partition::{MultiPartition, Partition};
pub use rat::{int, parse_rat, rat, rat_string, Rat};
pub use series::{QSeries, RatFunc, UPoly};
