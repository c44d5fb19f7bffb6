//! Exact symbolic computations around wall-crossing for Hilbert schemes of
//! points on Kleinian resolutions: central-charge polynomials, Euler forms and
//! their wall-crossing transforms, Poincaré series of Cherednik modules, and
//! truncated mutations of projective generators over graded quiver algebras.
//!
//! Every coefficient is an exact rational; nothing in the crate uses floats.

pub mod alcoves;
pub mod charge;
pub mod cohomology;
pub mod error;
pub mod exactcore;
pub mod fixtures;
pub mod ktheory;
pub mod poincare;
pub mod quiver;
pub mod suite;

pub use error::{Error, Result};
pub use exactcore::{MPoly, Multiplicity, QSeries, Rat, RatFunc, RatMatrix, UPoly};
