//! Crossed products in two regimes: the exact generalized-matrix algebra
//! over the ratio group, and explicit crossed products by finite abelian
//! groups realized as floating-point operators.

mod finite;
mod gamma_matrix;

pub use finite::{
    arveson_projection, finite_crossed_product, fourier_picture_check, takesaki_duality_check,
    Automorphism, FiniteCrossedProduct, GroupAction,
};
pub use gamma_matrix::{GammaEntry, GammaMatrix};
pub(crate) use finite::{arveson_with, covariant_pi, GroupTables};
