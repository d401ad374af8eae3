//! Characterization of determinantal tuples, recovery of tensors from them,
//! the search for a change of basis, interpolation through points and the
//! kernel of the minor map on symmetric tensors.

mod alpha;
mod basis_change;
mod characterize;
mod fit;

pub use alpha::{alpha_kernel, dimension_bound, dimension_bound_closed_form, quadric_power, AlphaKernel, DimensionBound};
pub use basis_change::{basis_change_search, BasisChange, BasisChangeSearch};
pub use characterize::{
    characterize, derham_check, koszul_check, recover_partially_symmetric, recover_symmetric, CharacterizationVerdict,
};
pub use fit::{fit_tensor_to_points, trivial_dimension, WitnessResult};
