use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{is_zero, scalar_one, scalar_to_c64, Scalar};

/// Shape of a finite direct sum of full matrix algebras `M_{d_1} + ... + M_{d_r}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiMatrixAlgebra {
    dims: Arc<[usize]>,
}

impl fmt::Debug for MultiMatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiMatrixAlgebra{:?}", &*self.dims)
    }
}

/// The matrix unit `e_{row,col}` of one block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixUnit {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

impl MatrixUnit {
    pub fn new(block: usize, row: usize, col: usize) -> Self {
        Self { block, row, col }
    }

    pub fn adjoint(self) -> Self {
        Self { block: self.block, row: self.col, col: self.row }
    }
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{}]({},{})", self.block, self.row, self.col)
    }
}

impl MultiMatrixAlgebra {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Validation("an algebra needs at least one block".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Validation("block dimensions must be at least 1".into()));
        }
        Ok(Self { dims: dims.into() })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_blocks(&self) -> usize {
        self.dims.len()
    }

    /// `sum d_i^2`.
    pub fn dimension(&self) -> usize {
        self.dims.iter().map(|d| d * d).sum()
    }

    /// Dimension of the Hilbert space `C^{sum d_i}` the algebra acts on.
    pub fn hilbert_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Offset of a block's first basis vector inside `C^{sum d_i}`.
    pub fn offset(&self, block: usize) -> usize {
        self.dims[..block].iter().sum()
    }

    pub fn contains_unit(&self, u: &MatrixUnit) -> bool {
        u.block < self.dims.len() && u.row < self.dims[u.block] && u.col < self.dims[u.block]
    }

    /// All matrix units ordered by block, then row, then column.
    pub fn matrix_units(&self) -> Vec<MatrixUnit> {
        let mut out = Vec::with_capacity(self.dimension());
        for (b, &d) in self.dims.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    out.push(MatrixUnit::new(b, i, j));
                }
            }
        }
        out
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { algebra: self.clone(), entries: BTreeMap::new() }
    }

    pub fn identity(&self) -> AlgebraElement {
        let mut entries = BTreeMap::new();
        for (b, &d) in self.dims.iter().enumerate() {
            for i in 0..d {
                entries.insert(MatrixUnit::new(b, i, i), scalar_one());
            }
        }
        AlgebraElement { algebra: self.clone(), entries }
    }

    pub fn unit(&self, u: MatrixUnit) -> Result<AlgebraElement> {
        self.element([(u, scalar_one())])
    }

    pub fn element(&self, entries: impl IntoIterator<Item = (MatrixUnit, Scalar)>) -> Result<AlgebraElement> {
        let mut out = self.zero();
        for (u, v) in entries {
            if !self.contains_unit(&u) {
                return Err(Error::Shape(format!("{u} is outside {self:?}")));
            }
            out.add_entry(u, v);
        }
        Ok(out)
    }

    /// Element from one dense matrix per block.
    pub fn from_blocks(&self, blocks: &[Vec<Vec<Scalar>>]) -> Result<AlgebraElement> {
        if blocks.len() != self.num_blocks() {
            return Err(Error::Shape(format!("{} blocks given for {self:?}", blocks.len())));
        }
        let mut out = self.zero();
        for (b, (m, &d)) in blocks.iter().zip(self.dims.iter()).enumerate() {
            if m.len() != d || m.iter().any(|row| row.len() != d) {
                return Err(Error::Shape(format!("block {b} is not {d}x{d}")));
            }
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    out.add_entry(MatrixUnit::new(b, i, j), v.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Element of a [`MultiMatrixAlgebra`], stored sparsely by matrix unit.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: MultiMatrixAlgebra,
    entries: BTreeMap<MatrixUnit, Scalar>,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|(u, v)| format!("({} + {}i){u}", v.re, v.im))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl AlgebraElement {
    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn entries(&self) -> &BTreeMap<MatrixUnit, Scalar> {
        &self.entries
    }

    pub fn entry(&self, u: &MatrixUnit) -> Scalar {
        self.entries.get(u).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &MatrixUnit> {
        self.entries.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn add_entry(&mut self, u: MatrixUnit, v: Scalar) {
        if is_zero(&v) {
            return;
        }
        let slot = self.entries.entry(u).or_insert_with(Scalar::zero);
        *slot = &*slot + v;
        if is_zero(slot) {
            self.entries.remove(&u);
        }
    }

    pub fn same_algebra(&self, other: &AlgebraElement) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::Shape(format!(
                "elements of {:?} and {:?} cannot be combined",
                self.algebra, other.algebra
            )));
        }
        Ok(())
    }

    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|(u, v)| (u.adjoint(), v.conj())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if is_zero(c) {
            return self.algebra.zero();
        }
        AlgebraElement {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|(u, v)| (*u, v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (u, v) in &other.entries {
            out.add_entry(*u, v.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_algebra(other)?;
        let mut out = self.algebra.zero();
        for (u, x) in &self.entries {
            let lo = MatrixUnit::new(u.block, u.col, 0);
            let hi = MatrixUnit::new(u.block, u.col, usize::MAX);
            for (w, y) in other.entries.range(lo..=hi) {
                out.add_entry(MatrixUnit::new(u.block, u.row, w.col), x * y);
            }
        }
        Ok(out)
    }

    /// Restriction to the given matrix units.
    pub fn restrict_to<'a>(&self, units: impl IntoIterator<Item = &'a MatrixUnit>) -> AlgebraElement {
        let mut out = self.algebra.zero();
        for u in units {
            if let Some(v) = self.entries.get(u) {
                out.entries.insert(*u, v.clone());
            }
        }
        out
    }

    pub fn commutator(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(&self.try_mul(other)? - &other.try_mul(self)?)
    }

    pub fn commutes_with(&self, other: &AlgebraElement) -> Result<bool> {
        Ok(self.commutator(other)?.is_zero())
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.adjoint() == *self
    }

    pub fn is_projection(&self) -> bool {
        self.is_self_adjoint() && &(self * self) == self
    }

    /// Per-block floating-point matrices.
    pub fn to_dense_blocks(&self) -> Vec<DMatrix<Complex64>> {
        let mut out: Vec<_> = self
            .algebra
            .block_dims()
            .iter()
            .map(|&d| DMatrix::from_element(d, d, Complex64::new(0.0, 0.0)))
            .collect();
        for (u, v) in &self.entries {
            out[u.block][(u.row, u.col)] = scalar_to_c64(v);
        }
        out
    }

    /// Block-diagonal floating-point operator on `C^{sum d_i}`.
    pub fn to_operator(&self) -> DMatrix<Complex64> {
        let n = self.algebra.hilbert_dim();
        let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for (u, v) in &self.entries {
            let o = self.algebra.offset(u.block);
            m[(o + u.row, o + u.col)] = scalar_to_c64(v);
        }
        m
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("operands live in different algebras")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(&-rhs).expect("operands live in different algebras")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            entries: self.entries.iter().map(|(u, v)| (*u, -v.clone())).collect(),
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_mul(rhs).expect("operands live in different algebras")
    }
}
