//! Finite abelian groups with their duals, and the multiplicative ratio
//! group realized inside the positive rationals.

mod finite;
mod lattice;
mod ratio;

pub use finite::{
    dual_hom, fourier_inverse, fourier_matrix, fourier_plancherel, pairing, DualElement,
    FiniteAbelianGroup, GroupElement, GroupHom,
};
pub use lattice::{lattice_basis, ratio_membership};
pub(crate) use finite::pairing_unchecked;
pub use ratio::RatioGroupElement;
