use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use crate::algebra::{centralizer, AlgebraElement, MultiMatrixAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::groups::RatioGroupElement;
use crate::spectral::SpectralGrading;

/// A projection of `Z_φ`, given by the atoms it dominates.
pub type AtomSet = BTreeSet<usize>;

/// The `S_γ` calculus of a graded weighted algebra over the center of its
/// centralizer.
#[derive(Debug)]
pub struct SCalculus {
    grading: SpectralGrading,
    centralizer: Subalgebra,
    bucket_elements: BTreeMap<RatioGroupElement, Vec<AlgebraElement>>,
    memo: Mutex<HashMap<(RatioGroupElement, AtomSet), AtomSet>>,
}

impl Clone for SCalculus {
    fn clone(&self) -> Self {
        Self::with_centralizer(&self.grading, self.centralizer.clone())
    }
}

impl SCalculus {
    pub fn new(grading: &SpectralGrading) -> Self {
        Self::with_centralizer(grading, centralizer(grading.algebra(), grading.weight()))
    }

    /// Uses an explicitly supplied centralizer; corrupted fixtures pass one
    /// that disagrees with the weight.
    pub fn with_centralizer(grading: &SpectralGrading, centralizer: Subalgebra) -> Self {
        let bucket_elements = grading.buckets().keys().map(|g| (g.clone(), grading.bucket_elements(g))).collect();
        Self { grading: grading.clone(), centralizer, bucket_elements, memo: Mutex::new(HashMap::new()) }
    }

    pub fn grading(&self) -> &SpectralGrading {
        &self.grading
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        self.grading.algebra()
    }

    pub fn centralizer(&self) -> &Subalgebra {
        &self.centralizer
    }

    pub fn num_atoms(&self) -> usize {
        self.centralizer.num_atoms()
    }

    pub fn all_atoms(&self) -> AtomSet {
        (0..self.num_atoms()).collect()
    }

    pub fn projection(&self, atoms: &AtomSet) -> AlgebraElement {
        self.centralizer.projection_of(atoms)
    }

    /// Atom set of a projection of `Z_φ`.
    pub fn atoms_of(&self, p: &AlgebraElement) -> Result<AtomSet> {
        self.centralizer
            .central_projection_atoms(p)
            .ok_or_else(|| Error::Membership("expected a projection in the center of the centralizer".into()))
    }

    /// `S_γ(p) = ⋁ { C(a p a*) : a in the bucket of γ }`.
    pub fn s_gamma_atoms(&self, gamma: &RatioGroupElement, p: &AtomSet) -> Result<AtomSet> {
        let key = (gamma.clone(), p.clone());
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(hit.clone());
        }
        let mut out = AtomSet::new();
        if let Some(units) = self.bucket_elements.get(gamma) {
            if !p.is_empty() {
                let proj = self.projection(p);
                for a in units {
                    let c = a.try_mul(&proj)?.try_mul(&a.adjoint())?;
                    if !c.is_zero() {
                        out.extend(self.centralizer.carrier_atoms(&c)?);
                    }
                }
            }
        }
        self.memo.lock().expect("memo lock").insert(key, out.clone());
        Ok(out)
    }

    pub fn s_gamma(&self, gamma: &RatioGroupElement, p: &AlgebraElement) -> Result<AlgebraElement> {
        let atoms = self.atoms_of(p)?;
        Ok(self.projection(&self.s_gamma_atoms(gamma, &atoms)?))
    }

    /// `S_γ` extended linearly to all of `Z_φ` through the atoms.
    pub fn s_gamma_central(&self, gamma: &RatioGroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
        let coeffs = self
            .centralizer
            .central_coefficients(x)
            .ok_or_else(|| Error::Membership("expected an element of the center of the centralizer".into()))?;
        let mut out = self.algebra().zero();
        for (s, c) in coeffs.iter().enumerate() {
            if crate::scalar::is_zero(c) {
                continue;
            }
            let image = self.projection(&self.s_gamma_atoms(gamma, &AtomSet::from([s]))?);
            out = &out + &image.scale(c);
        }
        Ok(out)
    }

    /// `p_γ = S_{γ⁻¹}(1)`.
    pub fn p_gamma_atoms(&self, gamma: &RatioGroupElement) -> Result<AtomSet> {
        self.s_gamma_atoms(&gamma.inv(), &self.all_atoms())
    }

    pub fn p_gamma(&self, gamma: &RatioGroupElement) -> Result<AlgebraElement> {
        Ok(self.projection(&self.p_gamma_atoms(gamma)?))
    }

    /// Partial isometry in the bucket of `γ` with `S_γ(p) = C(v p v*)`:
    /// a maximal family of bucket units with pairwise orthogonal left and
    /// right central carriers, taken in (block, row, column) order. The unit
    /// is used for `γ = 1`, and `v_{γ⁻¹} = v_γ*`.
    pub fn v_gamma(&self, gamma: &RatioGroupElement) -> AlgebraElement {
        if gamma.is_identity() {
            return self.algebra().identity();
        }
        if !gamma.exceeds_one() {
            return self.v_gamma(&gamma.inv()).adjoint();
        }
        let mut v = self.algebra().zero();
        let (mut left, mut right) = (AtomSet::new(), AtomSet::new());
        for u in self.grading.bucket(gamma) {
            let l = self.centralizer.sector_of(u.block, u.row);
            let r = self.centralizer.sector_of(u.block, u.col);
            if left.contains(&l) || right.contains(&r) {
                continue;
            }
            left.insert(l);
            right.insert(r);
            v = &v + &self.algebra().unit(*u).expect("bucket unit");
        }
        v
    }

    /// `C(v_γ p v_γ*)` for an atom set `p`.
    pub fn v_carrier_atoms(&self, gamma: &RatioGroupElement, p: &AtomSet) -> Result<AtomSet> {
        let v = self.v_gamma(gamma);
        let c = v.try_mul(&self.projection(p))?.try_mul(&v.adjoint())?;
        self.centralizer.carrier_atoms(&c)
    }
}
