//! The construction catalog: explicit initial sets, iterated Minkowski sums
//! and the parallelogram-free recursion. Every build verifies its own side
//! conditions exactly and either returns a passing report or an error.

mod catalog;
mod iterate;
mod pfree;
mod report;
mod sampler;
pub mod shapes;

pub use catalog::{
    equilateral15, even_kgon, even_kgon_copies, even_kgon_size, hex_cluster_size, hex_cluster_triangles,
    hex_lattice_candidate, hex_lattice_cluster, isosceles8, pentagon120, scalene14, scalene14_with, scalene5, scalene5_with, theorem3_generic,
    IsoscelesVariant, ODD_HEX_TARGETS,
};
pub use iterate::{checked_power, iteration_bound, minkowski_iterate, minkowski_sum_generic};
pub use pfree::{pfree_iterate, pfree_lower_bound, pfree_q, pfree_upper_bound, PfreeOptions};
pub use report::{BuildReport, RecipeRecord};
pub use sampler::{GenericParam, Sampler, DEFAULT_BUDGET, DEFAULT_HEIGHT, DEFAULT_SIZE_CAP};
