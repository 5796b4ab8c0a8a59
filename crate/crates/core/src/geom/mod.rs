//! Point sets and exact geometric predicates: collinearity, the largest
//! collinear subset, parallelograms and parallel segments.

pub(crate) mod images;
mod pointset;
mod predicates;

pub use pointset::PointSet;
pub use predicates::{
    collinear, find_parallelogram, find_parallelogram_indices, has_parallel_segments, in_general_position,
    is_parallelogram_free, max_collinear, parallel,
};
