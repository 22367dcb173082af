//! Floating-point operator toolkit for the finite-group regime: orthonormal
//! spans of matrices, generated *-algebras, containment, and centers.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::MultiMatrixAlgebra;

pub type CMat = DMatrix<Complex64>;

/// Rank and equality tolerance for everything built from characters.
pub const TOL: f64 = 1e-9;

pub fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Largest entry modulus of `a - b`.
pub fn deviation(a: &CMat, b: &CMat) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// `u x u*`.
pub fn conjugate(u: &CMat, x: &CMat) -> CMat {
    u * x * u.adjoint()
}

/// Matrix units of `M` as operators on `H = C^{sum d_i}`, in the order of
/// [`MultiMatrixAlgebra::matrix_units`].
pub fn unit_operators(algebra: &MultiMatrixAlgebra) -> Vec<CMat> {
    algebra
        .matrix_units()
        .into_iter()
        .map(|u| algebra.unit(u).expect("unit of its own algebra").to_operator())
        .collect()
}

/// Matrix unit `e_rc` of size `n`.
pub fn matrix_unit(n: usize, r: usize, c: usize) -> CMat {
    let mut m = zeros(n);
    m[(r, c)] = Complex64::new(1.0, 0.0);
    m
}

/// Orthonormal basis (Frobenius inner product) of a space of square matrices.
#[derive(Clone, Debug)]
pub struct FSpan {
    side: usize,
    basis: Vec<Vec<Complex64>>,
}

impl FSpan {
    pub fn new(side: usize) -> Self {
        Self { side, basis: Vec::new() }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<CMat> {
        self.basis.iter().map(|v| CMat::from_column_slice(self.side, self.side, v)).collect()
    }

    fn reduce(&self, v: &mut [Complex64]) {
        // two passes keep the basis orthonormal to working precision
        for _ in 0..2 {
            for b in &self.basis {
                let c: Complex64 = b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
                if c.norm() == 0.0 {
                    continue;
                }
                for (y, x) in v.iter_mut().zip(b) {
                    *y -= c * x;
                }
            }
        }
    }

    /// Distance from `x` to the span, relative to `max(1, |x|)`.
    pub fn residual(&self, x: &CMat) -> f64 {
        assert_eq!(x.nrows(), self.side, "matrix size does not match the span");
        let mut v: Vec<Complex64> = x.as_slice().to_vec();
        let scale = norm(&v).max(1.0);
        self.reduce(&mut v);
        norm(&v) / scale
    }

    pub fn contains(&self, x: &CMat) -> bool {
        self.residual(x) <= TOL
    }

    /// Adds `x` to the span; returns the new orthonormal vector if the
    /// dimension grew.
    pub fn insert(&mut self, x: &CMat) -> Option<CMat> {
        assert_eq!(x.nrows(), self.side, "matrix size does not match the span");
        let mut v: Vec<Complex64> = x.as_slice().to_vec();
        let scale = norm(&v).max(1.0);
        self.reduce(&mut v);
        let n = norm(&v);
        if n <= TOL * scale {
            return None;
        }
        v.iter_mut().for_each(|y| *y /= n);
        let m = CMat::from_column_slice(self.side, self.side, &v);
        self.basis.push(v);
        Some(m)
    }

    /// Linear span of a list of matrices.
    pub fn of<'a>(side: usize, items: impl IntoIterator<Item = &'a CMat>) -> Self {
        let mut s = Self::new(side);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// Largest residual of a basis vector of `self` against `other`.
    pub fn containment_deviation(&self, other: &FSpan) -> f64 {
        self.basis().iter().map(|b| other.residual(b)).fold(0.0, f64::max)
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// The unital algebra generated by `generators`; pass an adjoint-closed set
/// to obtain the generated *-algebra.
pub fn span_closure(side: usize, generators: &[CMat]) -> FSpan {
    let mut span = FSpan::new(side);
    let mut queue = VecDeque::new();
    if let Some(b) = span.insert(&eye(side)) {
        queue.push_back(b);
    }
    while let Some(b) = queue.pop_front() {
        for g in generators {
            if let Some(nb) = span.insert(&(g * &b)) {
                queue.push_back(nb);
            }
        }
    }
    span
}

/// Closes a generator list under adjoints, dropping numerical duplicates.
pub fn with_adjoints(generators: &[CMat]) -> Vec<CMat> {
    let mut out: Vec<CMat> = Vec::new();
    for g in generators.iter().cloned().chain(generators.iter().map(|g| g.adjoint())) {
        if !out.iter().any(|h| deviation(h, &g) <= TOL) {
            out.push(g);
        }
    }
    out
}

/// Dimension of `{x in span : [x, g] = 0 for all g}`.
pub fn commutant_dimension_within(span: &FSpan, generators: &[CMat]) -> usize {
    let basis = span.basis();
    let d = basis.len();
    if d == 0 {
        return 0;
    }
    let n2 = span.side() * span.side();
    let mut system = CMat::zeros(generators.len().max(1) * n2, d);
    for (k, g) in generators.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let c = b * g - g * b;
            for (i, v) in c.iter().enumerate() {
                system[(k * n2 + i, j)] = *v;
            }
        }
    }
    let rank = if system.nrows() >= d {
        system.svd(false, false).singular_values.iter().filter(|&&s| s > TOL).count()
    } else {
        system.adjoint().svd(false, false).singular_values.iter().filter(|&&s| s > TOL).count()
    };
    d - rank
}

/// Dimension of the center of the algebra spanned by `span`, which is
/// generated by `generators`.
pub fn center_dimension(span: &FSpan, generators: &[CMat]) -> usize {
    commutant_dimension_within(span, generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_matrix_units_is_full() {
        let gens = vec![matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)];
        let s = span_closure(2, &gens);
        assert_eq!(s.dimension(), 4);
        assert_eq!(center_dimension(&s, &gens), 1);
    }

    #[test]
    fn closure_of_diagonal_is_abelian() {
        let gens = vec![matrix_unit(3, 0, 0), matrix_unit(3, 2, 2)];
        let s = span_closure(3, &gens);
        assert_eq!(s.dimension(), 3);
        assert_eq!(center_dimension(&s, &gens), 3);
        assert!(s.contains(&matrix_unit(3, 1, 1)));
        assert!(!s.contains(&matrix_unit(3, 0, 1)));
    }

    #[test]
    fn containment_both_ways() {
        let a = FSpan::of(2, &[matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)]);
        let b = FSpan::of(2, &[eye(2), matrix_unit(2, 0, 0) - matrix_unit(2, 1, 1)]);
        assert!(a.containment_deviation(&b) < TOL);
        assert!(b.containment_deviation(&a) < TOL);
    }
}
