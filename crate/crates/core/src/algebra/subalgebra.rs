use std::collections::BTreeSet;

use super::{AlgebraElement, MatrixUnit, MultiMatrixAlgebra, Weight};
use crate::error::{Error, Result};
use crate::scalar::scalar_one;

/// A full matrix block of a subalgebra: all matrix units `e_ij` of the
/// ambient `block` with `i, j` drawn from `indices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub block: usize,
    pub indices: Vec<usize>,
}

/// Unital *-subalgebra spanned by matrix units, arranged as full matrix
/// blocks over disjoint index sets of the ambient blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    ambient: MultiMatrixAlgebra,
    sectors: Vec<Sector>,
    /// `sector_of[block][i]`
    sector_of: Vec<Vec<usize>>,
}

impl Subalgebra {
    pub fn new(ambient: &MultiMatrixAlgebra, sectors: Vec<Sector>) -> Result<Self> {
        let mut sector_of: Vec<Vec<Option<usize>>> =
            ambient.block_dims().iter().map(|&d| vec![None; d]).collect();
        for (s, sector) in sectors.iter().enumerate() {
            if sector.indices.is_empty() {
                return Err(Error::Validation(format!("sector {s} is empty")));
            }
            for &i in &sector.indices {
                let slot = sector_of
                    .get_mut(sector.block)
                    .and_then(|b| b.get_mut(i))
                    .ok_or_else(|| Error::Shape(format!("sector {s} index {i} out of range")))?;
                if slot.replace(s).is_some() {
                    return Err(Error::Validation(format!("index {i} of block {} is covered twice", sector.block)));
                }
            }
        }
        let sector_of = sector_of
            .into_iter()
            .map(|b| b.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Validation("sectors do not cover the identity".into()))?;
        Ok(Self { ambient: ambient.clone(), sectors, sector_of })
    }

    /// The ambient algebra itself, one sector per block.
    pub fn full(ambient: &MultiMatrixAlgebra) -> Self {
        let sectors = ambient
            .block_dims()
            .iter()
            .enumerate()
            .map(|(block, &d)| Sector { block, indices: (0..d).collect() })
            .collect();
        Self::new(ambient, sectors).expect("blocks partition the identity")
    }

    pub fn ambient(&self) -> &MultiMatrixAlgebra {
        &self.ambient
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    /// Block structure of the subalgebra itself.
    pub fn block_dims(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.indices.len()).collect()
    }

    pub fn num_atoms(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_factor(&self) -> bool {
        self.sectors.len() == 1
    }

    pub fn sector_of(&self, block: usize, i: usize) -> usize {
        self.sector_of[block][i]
    }

    pub fn contains_unit(&self, u: &MatrixUnit) -> bool {
        self.ambient.contains_unit(u) && self.sector_of[u.block][u.row] == self.sector_of[u.block][u.col]
    }

    pub fn contains(&self, a: &AlgebraElement) -> bool {
        a.algebra() == &self.ambient && a.support().all(|u| self.contains_unit(u))
    }

    pub fn basis(&self) -> Vec<MatrixUnit> {
        let mut out = Vec::new();
        for s in &self.sectors {
            for &i in &s.indices {
                for &j in &s.indices {
                    out.push(MatrixUnit::new(s.block, i, j));
                }
            }
        }
        out.sort();
        out
    }

    pub fn dimension(&self) -> usize {
        self.sectors.iter().map(|s| s.indices.len().pow(2)).sum()
    }

    /// Minimal central projection of a sector.
    pub fn atom(&self, s: usize) -> AlgebraElement {
        let sector = &self.sectors[s];
        self.ambient
            .element(sector.indices.iter().map(|&i| (MatrixUnit::new(sector.block, i, i), scalar_one())))
            .expect("sector indices are in range")
    }

    pub fn atoms(&self) -> Vec<AlgebraElement> {
        (0..self.sectors.len()).map(|s| self.atom(s)).collect()
    }

    pub fn projection_of(&self, atoms: &BTreeSet<usize>) -> AlgebraElement {
        atoms.iter().fold(self.ambient.zero(), |acc, &s| &acc + &self.atom(s))
    }

    /// Atoms whose compression of `a` is nonzero.
    pub fn carrier_atoms(&self, a: &AlgebraElement) -> Result<BTreeSet<usize>> {
        if !self.contains(a) {
            return Err(Error::Membership("the subalgebra".into()));
        }
        Ok(a.support().map(|u| self.sector_of[u.block][u.row]).collect())
    }

    /// Decomposes a central element as coefficients on the atoms, or `None`
    /// when `x` is not in the center.
    pub fn central_coefficients(&self, x: &AlgebraElement) -> Option<Vec<crate::scalar::Scalar>> {
        if !self.contains(x) {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.sectors.len());
        for s in &self.sectors {
            let c = x.entry(&MatrixUnit::new(s.block, s.indices[0], s.indices[0]));
            for &i in &s.indices {
                for &j in &s.indices {
                    let expected = if i == j { c.clone() } else { num_traits::Zero::zero() };
                    if x.entry(&MatrixUnit::new(s.block, i, j)) != expected {
                        return None;
                    }
                }
            }
            coeffs.push(c);
        }
        Some(coeffs)
    }

    pub fn is_central(&self, x: &AlgebraElement) -> bool {
        self.central_coefficients(x).is_some()
    }

    /// Atom set of a central projection, or `None` if `p` is not one.
    pub fn central_projection_atoms(&self, p: &AlgebraElement) -> Option<BTreeSet<usize>> {
        let coeffs = self.central_coefficients(p)?;
        let one = scalar_one();
        let mut atoms = BTreeSet::new();
        for (s, c) in coeffs.iter().enumerate() {
            if *c == one {
                atoms.insert(s);
            } else if !crate::scalar::is_zero(c) {
                return None;
            }
        }
        Some(atoms)
    }
}

/// `{a : a commutes with the density operator}`: each block refined along
/// its groups of equal eigenvalues, in order of first appearance.
pub fn centralizer(algebra: &MultiMatrixAlgebra, weight: &Weight) -> Subalgebra {
    let mut sectors = Vec::new();
    for (block, eigs) in weight.eigenvalues().iter().enumerate() {
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, l) in eigs.iter().enumerate() {
            match groups.iter_mut().find(|(rep, _)| &eigs[*rep] == l) {
                Some((_, g)) => g.push(i),
                None => groups.push((i, vec![i])),
            }
        }
        sectors.extend(groups.into_iter().map(|(_, indices)| Sector { block, indices }));
    }
    Subalgebra::new(algebra, sectors).expect("eigenvalue groups partition each block")
}

/// Minimal central projections of `n`, one per block.
pub fn center(n: &Subalgebra) -> Vec<AlgebraElement> {
    n.atoms()
}

/// Smallest central projection `z` of `n` with `z a = a`.
pub fn central_carrier(a: &AlgebraElement, n: &Subalgebra) -> Result<AlgebraElement> {
    Ok(n.projection_of(&n.carrier_atoms(a)?))
}
