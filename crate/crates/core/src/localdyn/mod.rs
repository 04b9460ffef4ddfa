//! Per-place dynamics of a Drinfeld module: c_v, j_v, the stable rank, the
//! phi^0 disk and filled Julia set, local heights, and the component module
//! F_phi(L_v) / phi^0(L_v).

mod component;
mod height;
mod report;

pub use component::{component_module, component_module_local, degree_budget, julia_contains, julia_contains_with, phi0_contains, ComponentModule, ComponentSpace};
pub use height::{height_decompose, is_generic, is_t_generic, lambda_lower_bound, local_height, refine_generic_subgroup, HeightDecomposition, Refinement};
pub use report::{c_of_phi, component_size_bound, j_of_subring_generator, local_report, log_q_ceil, LocalModule, LocalReport};
