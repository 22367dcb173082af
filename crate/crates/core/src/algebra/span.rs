use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AlgebraElement, MatrixUnit};
use crate::scalar::{is_zero, scalar_one, Scalar};

type Row = BTreeMap<MatrixUnit, Scalar>;

/// Exact linear span of algebra elements, kept in reduced row-echelon form
/// keyed by matrix unit.
#[derive(Clone, Debug, Default)]
pub struct ExactSpan {
    /// pivot unit -> row whose leading unit is the pivot, with coefficient one
    rows: BTreeMap<MatrixUnit, Row>,
}

impl ExactSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, a: &AlgebraElement) -> Row {
        let mut v: Row = a.entries().clone();
        let mut cursor: Option<MatrixUnit> = None;
        loop {
            let next = match cursor {
                None => v.keys().find(|k| self.rows.contains_key(k)).copied(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c), std::ops::Bound::Unbounded))
                    .map(|(k, _)| *k)
                    .find(|k| self.rows.contains_key(k)),
            };
            let Some(k) = next else { break };
            let coeff = v[&k].clone();
            for (u, x) in &self.rows[&k] {
                let slot = v.entry(*u).or_insert_with(Scalar::zero);
                *slot = &*slot - &coeff * x;
                if is_zero(slot) {
                    v.remove(u);
                }
            }
            cursor = Some(k);
        }
        v
    }

    pub fn contains(&self, a: &AlgebraElement) -> bool {
        self.reduce(a).is_empty()
    }

    /// Adds `a`; returns false when it was already in the span.
    pub fn insert(&mut self, a: &AlgebraElement) -> bool {
        let v = self.reduce(a);
        let Some((&pivot, lead)) = v.iter().next() else { return false };
        let inv = scalar_one() / lead.clone();
        let row: Row = v.iter().map(|(u, x)| (*u, x * &inv)).collect();
        // keep rows fully reduced against the new pivot
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                for (u, x) in &row {
                    let slot = other.entry(*u).or_insert_with(Scalar::zero);
                    *slot = &*slot - &c * x;
                    if is_zero(slot) {
                        other.remove(u);
                    }
                }
            }
        }
        self.rows.insert(pivot, row);
        true
    }
}

/// Exact rank of a family of elements.
pub fn exact_rank<'a>(elems: impl IntoIterator<Item = &'a AlgebraElement>) -> usize {
    let mut span = ExactSpan::new();
    for a in elems {
        span.insert(a);
    }
    span.dimension()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiMatrixAlgebra;
    use crate::scalar::sc;

    #[test]
    fn rank_of_dependent_family() {
        let a = MultiMatrixAlgebra::new(vec![2]).unwrap();
        let x = a.element([(MatrixUnit::new(0, 0, 0), sc(1, 1)), (MatrixUnit::new(0, 0, 1), sc(2, 1))]).unwrap();
        let y = a.element([(MatrixUnit::new(0, 0, 1), sc(1, 1)), (MatrixUnit::new(0, 1, 1), sc(1, 1))]).unwrap();
        let z = &x - &y.scale(&sc(2, 1));
        assert_eq!(exact_rank([&x, &y, &z]), 2);
        let mut s = ExactSpan::new();
        s.insert(&x);
        s.insert(&y);
        assert!(s.contains(&z));
        assert!(!s.contains(&a.identity()));
        assert_eq!(exact_rank(&a.matrix_units().iter().map(|&u| a.unit(u).unwrap()).collect::<Vec<_>>()), 4);
    }
}
