//! JSON model literals: an algebra with its weight, an optional finite-group
//! action, an optional induced system and an optional surjection onto the
//! acting group.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Deserialize;

use crate::algebra::{MultiMatrixAlgebra, Weight};
use crate::crossed::{Automorphism, GroupAction};
use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupHom};
use crate::induced::subgroup_from_generators;
use crate::scalar::parse_rational;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockLiteral {
    pub dim: usize,
    pub eigenvalues: Vec<String>,
}

/// `{"blocks":[{"dim":2,"eigenvalues":["2/3","1/3"]}]}`
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraLiteral {
    pub blocks: Vec<BlockLiteral>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupLiteral {
    pub invariant_factors: Vec<u64>,
}

/// A matrix entry: a real number or `[re, im]`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum EntryLiteral {
    Real(f64),
    Complex([f64; 2]),
}

impl EntryLiteral {
    fn value(self) -> Complex64 {
        match self {
            EntryLiteral::Real(re) => Complex64::new(re, 0.0),
            EntryLiteral::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

/// Automorphism `a ↦ u a u*` after sending block `i` to `permutation[i]`;
/// `unitaries[i]` acts on the target block `i`. Omitted fields mean the
/// identity.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismLiteral {
    #[serde(default)]
    pub permutation: Option<Vec<usize>>,
    #[serde(default)]
    pub unitaries: Option<Vec<Vec<Vec<EntryLiteral>>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionLiteral {
    #[serde(default)]
    pub group: Option<GroupLiteral>,
    pub generators: Vec<AutomorphismLiteral>,
}

/// Functions `K -> N` fixed by the twisted action of the subgroup `H`
/// generated by `H_generators`; `action` lists one automorphism per generator.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InducedLiteral {
    #[serde(rename = "K")]
    pub k: GroupLiteral,
    #[serde(rename = "H_generators")]
    pub h_generators: Vec<Vec<i64>>,
    #[serde(rename = "N", default)]
    pub n: Option<AlgebraLiteral>,
    pub action: ActionLiteral,
}

/// A surjection `E -> G` onto the acting group, given by the images of the
/// generators of `E`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonLiteral {
    #[serde(rename = "E")]
    pub e: GroupLiteral,
    pub iota: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub algebra: AlgebraLiteral,
    #[serde(default)]
    pub action: Option<ActionLiteral>,
    #[serde(default)]
    pub induced: Option<InducedLiteral>,
    #[serde(default)]
    pub comparison: Option<ComparisonLiteral>,
    #[serde(default)]
    pub suites: Option<Vec<String>>,
    #[serde(default)]
    pub window: Option<usize>,
    #[serde(default)]
    pub out: Option<String>,
}

/// A parsed and validated model.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub algebra: MultiMatrixAlgebra,
    pub weight: Weight,
    pub action: Option<GroupAction>,
    pub induced: Option<InducedModel>,
    pub comparison: Option<GroupHom>,
    pub suites: Option<Vec<String>>,
    pub window: Option<usize>,
    pub out: Option<String>,
}

#[derive(Clone, Debug)]
pub struct InducedModel {
    pub k: FiniteAbelianGroup,
    pub inclusion: GroupHom,
    pub action: GroupAction,
}

impl ModelSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}

impl AlgebraLiteral {
    pub fn build(&self) -> Result<(MultiMatrixAlgebra, Weight)> {
        let algebra = MultiMatrixAlgebra::new(self.blocks.iter().map(|b| b.dim).collect())?;
        let eigenvalues = self
            .blocks
            .iter()
            .map(|b| b.eigenvalues.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let weight = Weight::new(&algebra, eigenvalues)?;
        Ok((algebra, weight))
    }
}

impl GroupLiteral {
    pub fn build(&self) -> Result<FiniteAbelianGroup> {
        FiniteAbelianGroup::new(self.invariant_factors.clone())
    }
}

impl AutomorphismLiteral {
    pub fn build(&self, algebra: &MultiMatrixAlgebra) -> Result<Automorphism> {
        let dims = algebra.block_dims();
        let permutation = self.permutation.clone().unwrap_or_else(|| (0..dims.len()).collect());
        let unitaries = match &self.unitaries {
            None => dims.iter().map(|&d| DMatrix::identity(d, d)).collect(),
            Some(blocks) => blocks
                .iter()
                .map(|rows| {
                    let n = rows.len();
                    if rows.iter().any(|r| r.len() != n) {
                        return Err(Error::Shape("unitary literal is not square".into()));
                    }
                    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j].value()))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Automorphism::new(algebra, permutation, unitaries)
    }
}

impl ActionLiteral {
    pub fn build(&self, group: &FiniteAbelianGroup, algebra: &MultiMatrixAlgebra) -> Result<GroupAction> {
        let images = self.generators.iter().map(|g| g.build(algebra)).collect::<Result<Vec<_>>>()?;
        GroupAction::new(group, algebra, images)
    }
}

fn element(group: &FiniteAbelianGroup, coords: &[i64]) -> Result<crate::groups::GroupElement> {
    group.element(coords)
}

impl Model {
    pub fn from_json(text: &str) -> Result<Self> {
        ModelSpec::parse(text)?.build()
    }
}

impl ModelSpec {
    pub fn build(&self) -> Result<Model> {
        if self.window == Some(0) {
            return Err(Error::Validation("window size must be at least 1".into()));
        }
        let (algebra, weight) = self.algebra.build()?;
        let action = match &self.action {
            None => None,
            Some(lit) => {
                let group = lit
                    .group
                    .as_ref()
                    .ok_or_else(|| Error::Validation("the action literal needs a group".into()))?
                    .build()?;
                Some(lit.build(&group, &algebra)?)
            }
        };
        let induced = match &self.induced {
            None => None,
            Some(lit) => {
                let k = lit.k.build()?;
                let gens = lit.h_generators.iter().map(|c| element(&k, c)).collect::<Result<Vec<_>>>()?;
                let inclusion = subgroup_from_generators(&k, &gens)?;
                let n = match &lit.n {
                    Some(n) => n.build()?.0,
                    None => algebra.clone(),
                };
                let action = lit.action.build(inclusion.domain(), &n)?;
                Some(InducedModel { k, inclusion, action })
            }
        };
        let comparison = match &self.comparison {
            None => None,
            Some(lit) => {
                let g = action
                    .as_ref()
                    .ok_or_else(|| Error::Validation("a comparison needs an action to compare against".into()))?
                    .group()
                    .clone();
                let e = lit.e.build()?;
                let images = lit.iota.iter().map(|c| element(&g, c)).collect::<Result<Vec<_>>>()?;
                Some(GroupHom::new(e, g, images)?)
            }
        };
        Ok(Model {
            name: self.name.clone().unwrap_or_else(|| "model".into()),
            algebra,
            weight,
            action,
            induced,
            comparison,
            suites: self.suites.clone(),
            window: self.window,
            out: self.out.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn parses_qubit_with_action() {
        let m = Model::from_json(
            r#"{"algebra":{"blocks":[{"dim":2,"eigenvalues":["2/3","1/3"]}]},
                "action":{"group":{"invariant_factors":[2]},
                          "generators":[{"unitaries":[[[1,0],[0,-1]]]}]},
                "comparison":{"E":{"invariant_factors":[4]},"iota":[[1]]}}"#,
        )
        .unwrap();
        assert_eq!(m.weight.eigenvalues(), &[vec![rat(2, 3), rat(1, 3)]]);
        assert_eq!(m.action.unwrap().group().order(), 2);
        assert!(m.comparison.unwrap().is_surjective());
    }

    #[test]
    fn complex_entries_and_induced() {
        let m = Model::from_json(
            r#"{"algebra":{"blocks":[{"dim":1,"eigenvalues":["1"]}]},
                "induced":{"K":{"invariant_factors":[4]},"H_generators":[[2]],
                           "N":{"blocks":[{"dim":1,"eigenvalues":["1"]},{"dim":1,"eigenvalues":["1"]}]},
                           "action":{"generators":[{"permutation":[1,0],"unitaries":[[[[1,0]]],[[[0,1]]]]}]}}}"#,
        )
        .unwrap();
        let ind = m.induced.unwrap();
        assert_eq!(ind.inclusion.domain().order(), 2);
        assert_eq!(ind.action.algebra().block_dims(), &[1, 1]);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = Model::from_json("{\n  \"algebra\": [}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.starts_with("line 2, column"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Model::from_json(r#"{"algebra":{"blocks":[{"dim":2,"eigenvalues":["1/2"]}]}}"#).is_err());
        assert!(Model::from_json(r#"{"algebra":{"blocks":[{"dim":1,"eigenvalues":["1"]}]},"window":0}"#).is_err());
    }
}
