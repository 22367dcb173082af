use nalgebra::DVector;
use num_complex::Complex64;

use super::fixture::Fixture;
use crate::algebra::{tensor, MultiMatrixAlgebra, Weight};
use crate::crossed::{Automorphism, GroupAction};
use crate::error::Result;
use crate::groups::{FiniteAbelianGroup, GroupHom};
use crate::operators::{eye, CMat};
use crate::scalar::{rat, Rational};

/// Block-dimension multisets with at most three blocks of size at most three,
/// in non-increasing order.
pub fn corpus_shapes() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 1..=3 {
        out.push(vec![a]);
        for b in 1..=a {
            out.push(vec![a, b]);
            for c in 1..=b {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// A rule assigning an eigenvalue in `{1/7, ..., 6/7}` to the `t`-th
/// diagonal position of the algebra, counted across blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Tracial,
    /// `4/7, 2/7, 1/7` repeating.
    Geometric,
    /// `((offset + step t) mod 6 + 1) / 7`.
    Cyclic { step: usize, offset: usize },
}

impl Family {
    pub fn all() -> Vec<Family> {
        let mut out = vec![Family::Tracial, Family::Geometric];
        for step in [1, 2] {
            for offset in 0..6 {
                out.push(Family::Cyclic { step, offset });
            }
        }
        out
    }

    pub fn eigenvalue(self, t: usize) -> Rational {
        match self {
            Family::Tracial => rat(1, 7),
            Family::Geometric => rat([4, 2, 1][t % 3], 7),
            Family::Cyclic { step, offset } => rat(((offset + step * t) % 6 + 1) as i64, 7),
        }
    }

    pub fn label(self) -> String {
        match self {
            Family::Tracial => "tracial".into(),
            Family::Geometric => "geometric".into(),
            Family::Cyclic { step, offset } => format!("cyclic-{step}-{offset}"),
        }
    }
}

pub fn family_weight(algebra: &MultiMatrixAlgebra, family: Family) -> Result<Weight> {
    let mut t = 0;
    let mut eigs = Vec::new();
    for &d in algebra.block_dims() {
        eigs.push((0..d).map(|i| family.eigenvalue(t + i)).collect());
        t += d;
    }
    Weight::new(algebra, eigs)
}

/// Every corpus shape under every eigenvalue family.
pub fn corpus() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for shape in corpus_shapes() {
        let algebra = MultiMatrixAlgebra::new(shape.clone())?;
        for family in Family::all() {
            let weight = family_weight(&algebra, family)?;
            let name = format!("{shape:?} {}", family.label());
            out.push(Fixture::new(name, &algebra, &weight)?);
        }
    }
    Ok(out)
}

fn weighted(dims: Vec<usize>, eigs: Vec<Vec<Rational>>) -> Result<(MultiMatrixAlgebra, Weight)> {
    let a = MultiMatrixAlgebra::new(dims)?;
    let w = Weight::new(&a, eigs)?;
    Ok((a, w))
}

/// The worked examples: a qubit, its tracial version, two copies of the
/// qubit, a three-level block with a spectator, a Powers truncation and the
/// two-parameter product.
pub fn named_examples() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    let (a, w) = weighted(vec![2], vec![vec![rat(2, 3), rat(1, 3)]])?;
    out.push(Fixture::new("qubit", &a, &w)?);
    let (a, w) = weighted(vec![2], vec![vec![rat(1, 2), rat(1, 2)]])?;
    out.push(Fixture::new("tracial qubit", &a, &w)?);
    let (a, w) = weighted(vec![2, 2], vec![vec![rat(1, 3), rat(1, 6)], vec![rat(1, 3), rat(1, 6)]])?;
    out.push(Fixture::new("doubled qubit", &a, &w)?);
    let (a, w) = weighted(vec![3, 1], vec![vec![rat(4, 7), rat(2, 7), rat(4, 7)], vec![rat(1, 7)]])?;
    out.push(Fixture::new("three levels and a spectator", &a, &w)?);
    let p = crate::demo::powers_truncation(&rat(1, 2), 2)?;
    out.push(Fixture::new("powers 1/2 level 2", &p.algebra, &p.weight)?);
    let (a1, w1) = weighted(vec![2], vec![vec![rat(2, 3), rat(1, 3)]])?;
    let (a2, w2) = weighted(vec![2], vec![vec![rat(3, 4), rat(1, 4)]])?;
    let (a, w) = tensor(&a1, &w1, &a2, &w2)?;
    out.push(Fixture::new("two-parameter product", &a, &w)?);
    Ok(out)
}

fn diag(phases: &[Complex64]) -> CMat {
    CMat::from_diagonal(&DVector::from_vec(phases.to_vec()))
}

fn root(n: u64, k: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
}

/// Group actions on small algebras covering `Z_2`, `Z_3`, `Z_4` and `Z_2 × Z_2`.
pub fn named_actions() -> Result<Vec<(String, GroupAction)>> {
    let z = |n| FiniteAbelianGroup::cyclic(n);
    let one = Complex64::new(1.0, 0.0);
    let c1 = MultiMatrixAlgebra::new(vec![1])?;
    let m2 = MultiMatrixAlgebra::new(vec![2])?;
    let m3 = MultiMatrixAlgebra::new(vec![3])?;
    let c2 = MultiMatrixAlgebra::new(vec![1, 1])?;
    let c3 = MultiMatrixAlgebra::new(vec![1, 1, 1])?;
    let c4 = MultiMatrixAlgebra::new(vec![1; 4])?;
    let pauli_x = CMat::from_row_slice(2, 2, &[0.0.into(), one, one, 0.0.into()]);
    let pauli_z = diag(&[one, -one]);
    let mut out = vec![
        ("trivial Z_2 on C".to_string(), GroupAction::trivial(&z(2)?, &c1)),
        ("trivial Z_2 on M_2".to_string(), GroupAction::trivial(&z(2)?, &m2)),
        ("Z_2 by Ad diag(1,-1) on M_2".to_string(), GroupAction::new(&z(2)?, &m2, vec![Automorphism::inner(&m2, vec![pauli_z.clone()])?])?),
        ("Z_2 flip on C^2".to_string(), GroupAction::new(&z(2)?, &c2, vec![Automorphism::new(&c2, vec![1, 0], vec![eye(1); 2])?])?),
        ("trivial Z_3 on C".to_string(), GroupAction::trivial(&z(3)?, &c1)),
        ("Z_3 cycle on C^3".to_string(), GroupAction::new(&z(3)?, &c3, vec![Automorphism::new(&c3, vec![1, 2, 0], vec![eye(1); 3])?])?),
        (
            "Z_3 by Ad diag(1,w,w^2) on M_3".to_string(),
            GroupAction::new(&z(3)?, &m3, vec![Automorphism::inner(&m3, vec![diag(&[one, root(3, 1), root(3, 2)])])?])?,
        ),
        ("Z_4 rotation on C^4".to_string(), GroupAction::new(&z(4)?, &c4, vec![Automorphism::new(&c4, vec![1, 2, 3, 0], vec![eye(1); 4])?])?),
        ("Z_4 by Ad diag(1,i) on M_2".to_string(), GroupAction::new(&z(4)?, &m2, vec![Automorphism::inner(&m2, vec![diag(&[one, root(4, 1)])])?])?),
    ];
    let klein = FiniteAbelianGroup::new(vec![2, 2])?;
    out.push(("trivial Z_2 x Z_2 on C".into(), GroupAction::trivial(&klein, &c1)));
    out.push((
        "Z_2 x Z_2 by Pauli conjugations on M_2".into(),
        GroupAction::new(&klein, &m2, vec![Automorphism::inner(&m2, vec![pauli_z])?, Automorphism::inner(&m2, vec![pauli_x])?])?,
    ));
    Ok(out)
}

/// Surjections `Z_4 -> Z_2` and `Z_6 -> Z_3` with an action of the target group.
pub fn comparison_fixtures() -> Result<Vec<(String, GroupHom, GroupAction)>> {
    let one = Complex64::new(1.0, 0.0);
    let reduction = |n, m| -> Result<GroupHom> {
        let e = FiniteAbelianGroup::cyclic(n)?;
        let g = FiniteAbelianGroup::cyclic(m)?;
        GroupHom::new(e, g.clone(), vec![g.generator(0)])
    };
    let m2 = MultiMatrixAlgebra::new(vec![2])?;
    let c3 = MultiMatrixAlgebra::new(vec![1, 1, 1])?;
    let z2 = FiniteAbelianGroup::cyclic(2)?;
    let z3 = FiniteAbelianGroup::cyclic(3)?;
    Ok(vec![
        (
            "Z_4 -> Z_2, Ad diag(1,-1) on M_2".into(),
            reduction(4, 2)?,
            GroupAction::new(&z2, &m2, vec![Automorphism::inner(&m2, vec![diag(&[one, -one])])?])?,
        ),
        (
            "Z_6 -> Z_3, cycle on C^3".into(),
            reduction(6, 3)?,
            GroupAction::new(&z3, &c3, vec![Automorphism::new(&c3, vec![1, 2, 0], vec![eye(1); 3])?])?,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size() {
        assert_eq!(corpus_shapes().len(), 19);
        assert_eq!(Family::all().len(), 14);
        assert_eq!(Family::Cyclic { step: 2, offset: 5 }.eigenvalue(1), rat(2, 7));
        assert_eq!(named_actions().unwrap().len(), 11);
    }
}
