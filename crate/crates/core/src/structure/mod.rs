//! The `S_γ` calculus on the center of the centralizer, the induced
//! partial action on its atoms, and the center and factoriality criteria.

mod calculus;
mod center;
pub mod laws;
mod partial;

pub use calculus::{AtomSet, SCalculus};
pub use center::{
    center_membership_test, corner_isomorphism_check, direct_center_membership, direct_is_factor,
    direct_subalgebra_is_factor, factoriality, q_center_window_check, s_pattern_field, FactorialityReport,
    WindowCenterCheck,
};
pub use partial::{partial_action, PartialActionData, PartialActionReport};
