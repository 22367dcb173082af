use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraElement, Weight};
use crate::error::{Error, Result};
use crate::groups::RatioGroupElement;
use crate::scalar::{real, Scalar};
use crate::spectral::SpectralGrading;

type Index = (RatioGroupElement, RatioGroupElement);

/// Finitely supported generalized matrix over the ratio group with entries
/// in `M`; entry `(γ1, γ2)` lies in the spectral subspace of `γ2⁻¹γ1`.
#[derive(Clone, Debug)]
pub struct GammaMatrix {
    grading: Arc<SpectralGrading>,
    entries: BTreeMap<Index, AlgebraElement>,
}

/// One stored entry in the JSON layout.
#[derive(Clone, Debug, Serialize)]
pub struct GammaEntry {
    pub row: RatioGroupElement,
    pub col: RatioGroupElement,
    /// `[block, i, j, "re", "im"]` rows of the nonzero coefficients.
    pub entry: Vec<(usize, usize, usize, String, String)>,
}

impl PartialEq for GammaMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.same_grading(other) && self.entries == other.entries
    }
}

impl GammaMatrix {
    pub fn zero(grading: &Arc<SpectralGrading>) -> Self {
        Self { grading: grading.clone(), entries: BTreeMap::new() }
    }

    pub fn grading(&self) -> &Arc<SpectralGrading> {
        &self.grading
    }

    pub fn entries(&self) -> &BTreeMap<Index, AlgebraElement> {
        &self.entries
    }

    pub fn entry(&self, row: &RatioGroupElement, col: &RatioGroupElement) -> AlgebraElement {
        self.entries
            .get(&(row.clone(), col.clone()))
            .cloned()
            .unwrap_or_else(|| self.grading.algebra().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> BTreeSet<Index> {
        self.entries.keys().cloned().collect()
    }

    /// Sets entry `(row, col)`, enforcing the spectral constraint.
    pub fn set(&mut self, row: RatioGroupElement, col: RatioGroupElement, a: AlgebraElement) -> Result<()> {
        let label = col.inv().mul(&row);
        if !a.is_zero() && !self.grading.contains(&label, &a) {
            return Err(Error::Contract(format!(
                "entry ({row}, {col}) must lie in the spectral subspace of {label}"
            )));
        }
        self.set_unchecked(row, col, a);
        Ok(())
    }

    /// Sets an entry without the spectral constraint; verification suites
    /// use this to build corrupted fixtures.
    pub fn set_unchecked(&mut self, row: RatioGroupElement, col: RatioGroupElement, a: AlgebraElement) {
        if a.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), a);
        }
    }

    /// Entries breaking the spectral constraint.
    pub fn constraint_violations(&self) -> Vec<Index> {
        self.entries
            .iter()
            .filter(|((r, c), a)| !self.grading.contains(&c.inv().mul(r), a))
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// `sum_{γ' in support} (χ_{γγ'} ⊗ 1)(λ_γ ⊗ a)`: entry `(γγ', γ') = a`.
    pub fn from_generator(
        grading: &Arc<SpectralGrading>,
        gamma: &RatioGroupElement,
        a: &AlgebraElement,
        support: &BTreeSet<RatioGroupElement>,
    ) -> Result<Self> {
        if !grading.contains(gamma, a) && !a.is_zero() {
            return Err(Error::Contract(format!("generator entry is not in the spectral subspace of {gamma}")));
        }
        let mut x = Self::zero(grading);
        for g in support {
            x.set(gamma.mul(g), g.clone(), a.clone())?;
        }
        Ok(x)
    }

    fn same_grading(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.grading, &other.grading) || self.grading == other.grading
    }

    fn check_grading(&self, other: &Self) -> Result<()> {
        if !self.same_grading(other) {
            return Err(Error::Shape("generalized matrices over different gradings".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        let mut out = self.clone();
        for (k, b) in &other.entries {
            let sum = &out.entry(&k.0, &k.1) + b;
            out.set_unchecked(k.0.clone(), k.1.clone(), sum);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.grading);
        for (k, a) in &self.entries {
            out.set_unchecked(k.0.clone(), k.1.clone(), a.scale(c));
        }
        out
    }

    /// `(xy)_{γ1,γ2} = sum_γ x_{γ1,γ} y_{γ,γ2}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_grading(other)?;
        let mut by_row: BTreeMap<&RatioGroupElement, Vec<(&RatioGroupElement, &AlgebraElement)>> = BTreeMap::new();
        for ((r, c), y) in &other.entries {
            by_row.entry(r).or_default().push((c, y));
        }
        let mut acc: BTreeMap<Index, AlgebraElement> = BTreeMap::new();
        for ((r, k), x) in &self.entries {
            for (c, y) in by_row.get(k).into_iter().flatten() {
                let p = x.try_mul(y)?;
                if p.is_zero() {
                    continue;
                }
                let key = (r.clone(), (*c).clone());
                let slot = acc.entry(key).or_insert_with(|| self.grading.algebra().zero());
                *slot = &*slot + &p;
            }
        }
        acc.retain(|_, a| !a.is_zero());
        Ok(Self { grading: self.grading.clone(), entries: acc })
    }

    /// `(x*)_{γ1,γ2} = (x_{γ2,γ1})*`.
    pub fn adjoint(&self) -> Self {
        Self {
            grading: self.grading.clone(),
            entries: self.entries.iter().map(|((r, c), a)| ((c.clone(), r.clone()), a.adjoint())).collect(),
        }
    }

    /// `tr_Q(x) = sum_γ γ φ(x_{γ,γ})`.
    pub fn tr_q(&self) -> Scalar {
        self.tr_q_with(self.grading.weight()).expect("grading weight matches its algebra")
    }

    /// Trace computed with an explicitly supplied weight.
    pub fn tr_q_with(&self, weight: &Weight) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for ((r, c), a) in &self.entries {
            if r == c {
                total += weight.eval(a)? * real(r.value());
            }
        }
        Ok(total)
    }

    /// Dual action: `[shift_γ x]_{γ1,γ2} = [x]_{γγ1,γγ2}`, so the entry at
    /// `(r, c)` moves to `(γ⁻¹r, γ⁻¹c)`.
    pub fn dual_shift(&self, gamma: &RatioGroupElement) -> Self {
        let inv = gamma.inv();
        Self {
            grading: self.grading.clone(),
            entries: self.entries.iter().map(|((r, c), a)| ((inv.mul(r), inv.mul(c)), a.clone())).collect(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    pub fn to_json_entries(&self) -> Vec<GammaEntry> {
        self.entries
            .iter()
            .map(|((r, c), a)| GammaEntry {
                row: r.clone(),
                col: c.clone(),
                entry: a
                    .entries()
                    .iter()
                    .map(|(u, v)| {
                        (
                            u.block,
                            u.row,
                            u.col,
                            crate::scalar::format_rational(&v.re),
                            crate::scalar::format_rational(&v.im),
                        )
                    })
                    .collect(),
            })
            .collect()
    }
}
