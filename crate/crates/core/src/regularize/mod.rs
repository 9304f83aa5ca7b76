//! Regular models for rational actions: the affine model of a finite
//! group action, and the chart atlas glued from translates of `X`.

mod atlas;
mod finite;

pub use atlas::{build_atlas, check_atlas, Atlas, AtlasReport, CheckOutcome, Witness};
pub use finite::{
    induced_regular_action, present_subalgebra, regularize_finite, stable_generators, Presentation, RegularModel,
};
