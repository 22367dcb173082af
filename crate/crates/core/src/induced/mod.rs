//! Finite induced actions and the comparison between the crossed product by
//! a composite action `α∘ι` and the action induced up along the dual map.

mod comparison;
mod system;

pub use comparison::{dual_group_picture_check, induced_picture_check};
pub use system::{induce, subgroup_from_generators, InducedSystem};
