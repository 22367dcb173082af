//! Multi-matrix *-algebras over exact complex rationals, faithful diagonal
//! weights, and the subalgebras built from them.

mod element;
mod polar;
mod span;
mod subalgebra;
mod tensor;
mod weight;

pub use element::{AlgebraElement, MatrixUnit, MultiMatrixAlgebra};
pub use polar::{polar_part, PolarPart};
pub use span::{exact_rank, ExactSpan};
pub use subalgebra::{center, central_carrier, centralizer, Sector, Subalgebra};
pub use tensor::{tensor, tensor_element, tensor_unit};
pub use weight::Weight;
