use super::{AlgebraElement, MatrixUnit, MultiMatrixAlgebra, Weight};
use crate::error::Result;

/// Tensor product of two weighted multi-matrix algebras. Block `(i, j)`
/// becomes block `i * n2 + j` of dimension `d_i d_j`, and basis vector
/// `(p, q)` becomes index `p * d_j + q` with eigenvalue `lambda_p mu_q`.
pub fn tensor(
    a1: &MultiMatrixAlgebra,
    w1: &Weight,
    a2: &MultiMatrixAlgebra,
    w2: &Weight,
) -> Result<(MultiMatrixAlgebra, Weight)> {
    let mut dims = Vec::new();
    let mut eigs = Vec::new();
    for (d1, e1) in a1.block_dims().iter().zip(w1.eigenvalues()) {
        for (d2, e2) in a2.block_dims().iter().zip(w2.eigenvalues()) {
            dims.push(d1 * d2);
            eigs.push(e1.iter().flat_map(|l| e2.iter().map(move |m| l * m)).collect());
        }
    }
    let algebra = MultiMatrixAlgebra::new(dims)?;
    let weight = Weight::new(&algebra, eigs)?;
    Ok((algebra, weight))
}

/// Index formula for `e ⊗ f` under the layout of [`tensor`].
pub fn tensor_unit(a2: &MultiMatrixAlgebra, e: MatrixUnit, f: MatrixUnit) -> MatrixUnit {
    let d2 = a2.block_dims()[f.block];
    MatrixUnit::new(e.block * a2.num_blocks() + f.block, e.row * d2 + f.row, e.col * d2 + f.col)
}

/// Kronecker product of elements, computed entrywise.
pub fn tensor_element(product: &MultiMatrixAlgebra, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    let a2 = y.algebra();
    product.element(
        x.entries()
            .iter()
            .flat_map(|(e, u)| y.entries().iter().map(move |(f, v)| (tensor_unit(a2, *e, *f), u * v))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn tensor_of_two_qubits() {
        let a = MultiMatrixAlgebra::new(vec![2]).unwrap();
        let w1 = Weight::new(&a, vec![vec![rat(2, 3), rat(1, 3)]]).unwrap();
        let w2 = Weight::new(&a, vec![vec![rat(3, 4), rat(1, 4)]]).unwrap();
        let (t, w) = tensor(&a, &w1, &a, &w2).unwrap();
        assert_eq!(t.block_dims(), &[4]);
        assert_eq!(w.eigenvalues()[0], vec![rat(1, 2), rat(1, 6), rat(1, 4), rat(1, 12)]);
    }

    #[test]
    fn tensor_with_trivial_factor() {
        let a = MultiMatrixAlgebra::new(vec![2, 1]).unwrap();
        let w = Weight::new(&a, vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 6)]]).unwrap();
        let one = MultiMatrixAlgebra::new(vec![1]).unwrap();
        let (t, tw) = tensor(&a, &w, &one, &Weight::trace(&one)).unwrap();
        assert_eq!(t, a);
        assert_eq!(tw, w);
    }

    #[test]
    fn unit_formula_matches_kronecker_product() {
        let a1 = MultiMatrixAlgebra::new(vec![2, 1]).unwrap();
        let a2 = MultiMatrixAlgebra::new(vec![1, 3]).unwrap();
        let (t, _) = tensor(&a1, &Weight::trace(&a1), &a2, &Weight::trace(&a2)).unwrap();
        for e in a1.matrix_units() {
            for f in a2.matrix_units() {
                let x = tensor_element(&t, &a1.unit(e).unwrap(), &a2.unit(f).unwrap()).unwrap();
                assert_eq!(x, t.unit(tensor_unit(&a2, e, f)).unwrap());
            }
        }
        // multiplicativity on units
        let e = MatrixUnit::new(0, 0, 1);
        let e2 = MatrixUnit::new(0, 1, 0);
        let f = MatrixUnit::new(1, 2, 0);
        let f2 = MatrixUnit::new(1, 0, 1);
        let lhs = &t.unit(tensor_unit(&a2, e, f)).unwrap() * &t.unit(tensor_unit(&a2, e2, f2)).unwrap();
        assert_eq!(lhs, t.unit(tensor_unit(&a2, MatrixUnit::new(0, 0, 0), MatrixUnit::new(1, 2, 1))).unwrap());
    }
}
