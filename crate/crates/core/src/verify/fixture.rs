use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{MatrixUnit, MultiMatrixAlgebra, Weight};
use crate::crossed::GroupAction;
use crate::error::{Error, Result};
use crate::groups::{GroupHom, RatioGroupElement};
use crate::model::{InducedModel, Model};
use crate::scalar::Rational;
use crate::spectral::SpectralGrading;
use crate::structure::{partial_action, PartialActionData, SCalculus};

/// Everything a suite runs against. The grading, the weight used by the
/// trace on generalized matrices, and the partial action are stored
/// separately from the weight so that each can be corrupted on its own.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub weight: Weight,
    pub grading: Arc<SpectralGrading>,
    pub trace_weight: Weight,
    pub partial: Option<PartialActionData>,
    pub action: Option<GroupAction>,
    pub induced: Option<InducedModel>,
    pub comparison: Option<GroupHom>,
}

impl Fixture {
    pub fn new(name: impl Into<String>, algebra: &MultiMatrixAlgebra, weight: &Weight) -> Result<Self> {
        let grading = Arc::new(SpectralGrading::build(algebra, weight)?);
        Ok(Self {
            name: name.into(),
            weight: weight.clone(),
            grading,
            trace_weight: weight.clone(),
            partial: None,
            action: None,
            induced: None,
            comparison: None,
        })
    }

    pub fn from_model(model: &Model) -> Result<Self> {
        let mut fx = Self::new(model.name.clone(), &model.algebra, &model.weight)?;
        fx.action = model.action.clone();
        fx.induced = model.induced.clone();
        fx.comparison = model.comparison.clone();
        Ok(fx)
    }

    pub fn with_action(mut self, action: GroupAction) -> Self {
        self.action = Some(action);
        self
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        self.grading.algebra()
    }

    pub fn calculus(&self) -> SCalculus {
        SCalculus::new(&self.grading)
    }

    pub fn window(&self, radius: usize) -> BTreeSet<RatioGroupElement> {
        self.grading.window(radius)
    }

    /// The stored partial action, or the one computed from the grading.
    pub fn partial_action(&self, calc: &SCalculus, radius: usize) -> Result<PartialActionData> {
        match &self.partial {
            Some(p) => Ok(p.clone()),
            None => partial_action(calc, &self.window(radius)),
        }
    }

    /// Moves one matrix unit to the bucket of `to`.
    pub fn with_moved_unit(&self, unit: MatrixUnit, to: &RatioGroupElement) -> Result<Self> {
        let mut buckets: BTreeMap<RatioGroupElement, Vec<MatrixUnit>> = self.grading.buckets().clone();
        let from = self.grading.label_of(&unit).cloned().ok_or_else(|| Error::Membership(format!("{unit:?}")))?;
        if &from == to {
            return Err(Error::Validation("target bucket equals the current one".into()));
        }
        buckets.get_mut(&from).expect("label has a bucket").retain(|u| u != &unit);
        buckets.entry(to.clone()).or_default().push(unit);
        let mut out = self.clone();
        out.grading = Arc::new(SpectralGrading::from_buckets(self.algebra(), &self.weight, buckets));
        out.name = format!("{} [unit {:?} moved to {to}]", self.name, (unit.block, unit.row, unit.col));
        Ok(out)
    }

    /// Replaces one eigenvalue of the weight used by the trace.
    pub fn with_trace_eigenvalue(&self, block: usize, i: usize, value: Rational) -> Result<Self> {
        let mut out = self.clone();
        out.trace_weight = self.trace_weight.with_eigenvalue(block, i, value)?;
        out.name = format!("{} [trace weight at ({block}, {i}) changed]", self.name);
        Ok(out)
    }

    /// Redirects `T_γ(x)` to `y` in the partial action.
    pub fn with_partial_edge(&self, radius: usize, gamma: &RatioGroupElement, x: usize, y: usize) -> Result<Self> {
        let base = self.partial_action(&self.calculus(), radius)?;
        let mut out = self.clone();
        out.partial = Some(base.with_edge(gamma, x, y));
        out.name = format!("{} [T_{gamma}({x}) set to {y}]", self.name);
        Ok(out)
    }
}
