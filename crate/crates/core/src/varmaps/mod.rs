//! Affine varieties, rational maps and their loci: graphs, closed images,
//! composition, inversion, definable and biregular loci, and the
//! closed-graph test.

mod graph;
mod loci;
mod map;
mod variety;

pub use graph::{
    closed_image, graph_closure, is_dominant, is_graph_closed, point_status, GraphCheck, GraphClosure, PointStatus,
};
pub use loci::{biregular_locus, biregular_locus_with, definable_locus, pullback};
pub use map::{compose, compose_unchecked, inverse, map_residue, maps_equal, RationalMap};
pub use variety::{AffineVariety, OpenSubset};

pub(crate) use map::vanishes;

use std::sync::Arc;

use crate::error::Result;
use crate::exactalg::Fraction;

/// Validated rational map from fraction representatives.
pub fn make_rational_map(
    src: Arc<AffineVariety>,
    tgt: Arc<AffineVariety>,
    reps: Vec<Vec<Fraction>>,
) -> Result<RationalMap> {
    RationalMap::new(src, tgt, reps)
}
