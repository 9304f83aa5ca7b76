//! Exact computations with rational maps and rational group actions on
//! affine varieties: biregular loci, G-regular points, finite-group affine
//! models, chart atlases for glued models, and slice-regularity
//! certificates.

pub mod error;
pub mod exactalg;

pub use error::{Error, Result};
pub use exactalg::{Fraction, Ideal, MonomialOrder, Polynomial, Scalar};
pub mod varmaps;

pub use varmaps::{AffineVariety, OpenSubset, RationalMap};
pub mod fixtures;
pub mod groups;
pub mod regularize;
pub mod slice;
