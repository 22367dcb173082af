use num_traits::{One, Signed, Zero};

use super::{AlgebraElement, MultiMatrixAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, real, Rational, Scalar};

/// Faithful weight `phi(a) = sum_blocks sum_i lambda_i a_ii` given by the
/// diagonal of its density operator in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    algebra: MultiMatrixAlgebra,
    eigenvalues: Vec<Vec<Rational>>,
}

impl Weight {
    pub fn new(algebra: &MultiMatrixAlgebra, eigenvalues: Vec<Vec<Rational>>) -> Result<Self> {
        if eigenvalues.len() != algebra.num_blocks() {
            return Err(Error::Shape(format!(
                "{} eigenvalue lists for {} blocks",
                eigenvalues.len(),
                algebra.num_blocks()
            )));
        }
        for (b, (eigs, &d)) in eigenvalues.iter().zip(algebra.block_dims()).enumerate() {
            if eigs.len() != d {
                return Err(Error::Shape(format!("block {b} has dimension {d} but {} eigenvalues", eigs.len())));
            }
            if let Some(bad) = eigs.iter().find(|l| !l.is_positive()) {
                return Err(Error::Validation(format!(
                    "eigenvalue {} in block {b} is not strictly positive",
                    format_rational(bad)
                )));
            }
        }
        Ok(Self { algebra: algebra.clone(), eigenvalues })
    }

    /// The trace weight with all eigenvalues equal to one.
    pub fn trace(algebra: &MultiMatrixAlgebra) -> Self {
        let eigenvalues = algebra.block_dims().iter().map(|&d| vec![Rational::one(); d]).collect();
        Self { algebra: algebra.clone(), eigenvalues }
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn eigenvalues(&self) -> &[Vec<Rational>] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, block: usize, i: usize) -> &Rational {
        &self.eigenvalues[block][i]
    }

    pub fn total_mass(&self) -> Rational {
        self.eigenvalues.iter().flatten().fold(Rational::zero(), |acc, l| acc + l)
    }

    pub fn is_normalized(&self) -> bool {
        self.total_mass().is_one()
    }

    pub fn eval(&self, a: &AlgebraElement) -> Result<Scalar> {
        if a.algebra() != &self.algebra {
            return Err(Error::Shape(format!("weight on {:?} applied to {:?}", self.algebra, a.algebra())));
        }
        Ok(a
            .entries()
            .iter()
            .filter(|(u, _)| u.row == u.col)
            .fold(Scalar::zero(), |acc, (u, v)| acc + v * real(self.eigenvalues[u.block][u.row].clone())))
    }

    /// True when the eigenvalues are constant on each block, i.e. the weight is a trace.
    pub fn is_tracial(&self) -> bool {
        self.eigenvalues.iter().all(|eigs| eigs.windows(2).all(|w| w[0] == w[1]))
    }

    /// Same eigenvalues with one entry replaced; used to build corrupted fixtures.
    pub fn with_eigenvalue(&self, block: usize, i: usize, value: Rational) -> Result<Self> {
        let mut eigs = self.eigenvalues.clone();
        *eigs
            .get_mut(block)
            .and_then(|b| b.get_mut(i))
            .ok_or_else(|| Error::Shape(format!("no eigenvalue at ({block},{i})")))? = value;
        Self::new(&self.algebra, eigs)
    }
}
