use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::AlgebraElement;
use crate::scalar::{Rational, Scalar};

/// Result of [`polar_part`].
#[derive(Clone, Debug)]
pub enum PolarPart {
    /// Exact partial isometry; available when every row and column of `a`
    /// holds at most one nonzero entry and those entries have rational modulus.
    Exact(AlgebraElement),
    /// Floating-point partial isometry, one matrix per block.
    Approx(Vec<DMatrix<Complex64>>),
}

impl PolarPart {
    pub fn exact(&self) -> Option<&AlgebraElement> {
        match self {
            PolarPart::Exact(w) => Some(w),
            PolarPart::Approx(_) => None,
        }
    }

    pub fn to_dense_blocks(&self) -> Vec<DMatrix<Complex64>> {
        match self {
            PolarPart::Exact(w) => w.to_dense_blocks(),
            PolarPart::Approx(m) => m.clone(),
        }
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

fn exact_polar(a: &AlgebraElement) -> Option<AlgebraElement> {
    let mut rows = std::collections::BTreeSet::new();
    let mut cols = std::collections::BTreeSet::new();
    let mut out = a.algebra().zero();
    for (u, v) in a.entries() {
        if !rows.insert((u.block, u.row)) || !cols.insert((u.block, u.col)) {
            return None;
        }
        let modulus = rational_sqrt(&(&v.re * &v.re + &v.im * &v.im))?;
        out.add_entry(*u, Scalar::new(&v.re / &modulus, &v.im / &modulus));
    }
    Some(out)
}

const CLEANUP_TOL: f64 = 1e-9;

fn clean(z: f64) -> f64 {
    if z.abs() < CLEANUP_TOL {
        0.0
    } else if (z - 1.0).abs() < CLEANUP_TOL {
        1.0
    } else if (z + 1.0).abs() < CLEANUP_TOL {
        -1.0
    } else {
        z
    }
}

fn approx_polar_block(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let svd = m.clone().svd(true, true);
    let (u, vt) = (svd.u.expect("requested u"), svd.v_t.expect("requested v_t"));
    let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut w = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > 1e-12 * top.max(1.0) {
            w += u.column(k) * vt.row(k);
        }
    }
    w.map(|z| Complex64::new(clean(z.re), clean(z.im)))
}

/// Partial isometry `w` with `a = w |a|`, `w*w` the support of `|a|` and
/// `ww*` the support of `|a*|`.
pub fn polar_part(a: &AlgebraElement) -> PolarPart {
    if let Some(w) = exact_polar(a) {
        return PolarPart::Exact(w);
    }
    PolarPart::Approx(a.to_dense_blocks().iter().map(approx_polar_block).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MatrixUnit, MultiMatrixAlgebra};
    use crate::scalar::sc;

    #[test]
    fn scaled_matrix_unit_is_exact() {
        let a = MultiMatrixAlgebra::new(vec![2]).unwrap();
        let x = a.element([(MatrixUnit::new(0, 1, 0), sc(3, 1))]).unwrap();
        assert_eq!(polar_part(&x).exact().unwrap(), &a.unit(MatrixUnit::new(0, 1, 0)).unwrap());
        assert!(polar_part(&a.zero()).exact().unwrap().is_zero());
        let y = a.element([(MatrixUnit::new(0, 0, 1), Scalar::new(crate::scalar::rat(3, 5), crate::scalar::rat(4, 5)))]).unwrap();
        assert_eq!(polar_part(&y).exact().unwrap(), &y);
    }

    #[test]
    fn row_vector_uses_svd_path() {
        // oracle: a = e11 + e12 has a a* = 2 e11, |a*| = sqrt2 e11, so w = a / sqrt2
        let a = MultiMatrixAlgebra::new(vec![2]).unwrap();
        let x = a.element([(MatrixUnit::new(0, 0, 0), sc(1, 1)), (MatrixUnit::new(0, 0, 1), sc(1, 1))]).unwrap();
        let w = match polar_part(&x) {
            PolarPart::Approx(w) => w,
            PolarPart::Exact(_) => panic!("irrational polar part cannot be exact"),
        };
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expected = DMatrix::from_row_slice(2, 2, &[r, r, 0.0, 0.0]).map(|v| Complex64::new(v, 0.0));
        assert!((&w[0] - expected).norm() < 1e-9);
    }
}
