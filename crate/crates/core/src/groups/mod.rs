//! Algebraic groups, rational actions, the fibered map `ρ̃` and the locus
//! of G-regular points.

mod action;
mod group;
mod locus;

pub use action::{action_space, make_rational_action, ActionLaw, Lift, RationalAction};
pub use group::{make_group, AlgebraicGroup, Factor, GroupPoint, GroupSpec};
pub use locus::{g_regular_locus, tilde_biregular_locus, GRegularLocus};
