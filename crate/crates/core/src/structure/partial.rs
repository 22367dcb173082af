use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::calculus::{AtomSet, SCalculus};
use crate::error::{Error, Result};
use crate::groups::RatioGroupElement;

/// Partial action of the ratio group on the atoms `X` of `Z_φ`, stored over
/// a finite window: domains `A_γ` and bijections `T_γ : A_γ -> A_{γ⁻¹}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialActionData {
    num_atoms: usize,
    window: BTreeSet<RatioGroupElement>,
    domains: BTreeMap<RatioGroupElement, AtomSet>,
    maps: BTreeMap<RatioGroupElement, BTreeMap<usize, usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialActionReport {
    pub atoms: Vec<usize>,
    pub domains: BTreeMap<String, Vec<usize>>,
    pub maps: BTreeMap<String, BTreeMap<String, usize>>,
    pub orbits: Vec<Vec<usize>>,
}

/// `T_γ(x)` is the atom carrying `S_γ(χ_x)`, for `x` under `p_γ`.
pub fn partial_action(calc: &SCalculus, window: &BTreeSet<RatioGroupElement>) -> Result<PartialActionData> {
    let mut domains = BTreeMap::new();
    let mut maps = BTreeMap::new();
    for gamma in window {
        let domain = calc.p_gamma_atoms(gamma)?;
        let mut t = BTreeMap::new();
        for &x in &domain {
            let image = calc.s_gamma_atoms(gamma, &AtomSet::from([x]))?;
            let mut it = image.iter();
            match (it.next(), it.next()) {
                (Some(&y), None) => {
                    t.insert(x, y);
                }
                _ => {
                    return Err(Error::InvariantViolation(format!(
                        "S_{gamma} sends atom {x} to {image:?}, not to a single atom"
                    )))
                }
            }
        }
        domains.insert(gamma.clone(), domain);
        maps.insert(gamma.clone(), t);
    }
    Ok(PartialActionData { num_atoms: calc.num_atoms(), window: window.clone(), domains, maps })
}

impl PartialActionData {
    pub fn from_parts(
        num_atoms: usize,
        window: BTreeSet<RatioGroupElement>,
        domains: BTreeMap<RatioGroupElement, AtomSet>,
        maps: BTreeMap<RatioGroupElement, BTreeMap<usize, usize>>,
    ) -> Self {
        Self { num_atoms, window, domains, maps }
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn window(&self) -> &BTreeSet<RatioGroupElement> {
        &self.window
    }

    pub fn domain(&self, gamma: &RatioGroupElement) -> AtomSet {
        self.domains.get(gamma).cloned().unwrap_or_default()
    }

    pub fn map(&self, gamma: &RatioGroupElement) -> BTreeMap<usize, usize> {
        self.maps.get(gamma).cloned().unwrap_or_default()
    }

    pub fn apply(&self, gamma: &RatioGroupElement, x: usize) -> Option<usize> {
        self.maps.get(gamma).and_then(|m| m.get(&x).copied())
    }

    /// Redirects one edge of `T_γ`; used to corrupt fixtures.
    pub fn with_edge(&self, gamma: &RatioGroupElement, x: usize, y: usize) -> Self {
        let mut out = self.clone();
        out.maps.entry(gamma.clone()).or_default().insert(x, y);
        out.domains.entry(gamma.clone()).or_default().insert(x);
        out
    }

    /// Witnesses against `T_γ : A_γ -> A_{γ⁻¹}` being a bijection with
    /// `T_{γ⁻¹} = T_γ⁻¹`.
    pub fn inverse_law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for gamma in &self.window {
            let inv = gamma.inv();
            let t = self.map(gamma);
            if t.keys().copied().collect::<AtomSet>() != self.domain(gamma) {
                out.push(format!("T_{gamma} is not defined exactly on A_{gamma}"));
            }
            let image: AtomSet = t.values().copied().collect();
            if image.len() != t.len() {
                out.push(format!("T_{gamma} is not injective"));
            }
            if !self.window.contains(&inv) {
                continue;
            }
            if image != self.domain(&inv) {
                out.push(format!("T_{gamma} does not map A_{gamma} onto A_{inv}"));
            }
            for (&x, &y) in &t {
                if self.apply(&inv, y) != Some(x) {
                    out.push(format!("T_{inv}(T_{gamma}({x})) != {x}"));
                }
            }
        }
        out
    }

    /// Witnesses against `T_{γ2} T_{γ1} = T_{γ2γ1}` on
    /// `B = T_{γ1⁻¹}(A_{γ1⁻¹} ∩ A_{γ2})`, for window pairs with `γ2γ1` in the window.
    pub fn composition_law_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for g1 in &self.window {
            let t1_inv = self.map(&g1.inv());
            for g2 in &self.window {
                let g21 = g2.mul(g1);
                if !self.window.contains(&g21) {
                    continue;
                }
                let middle: AtomSet = self.domain(&g1.inv()).intersection(&self.domain(g2)).copied().collect();
                for y in middle {
                    let Some(&x) = t1_inv.get(&y) else { continue };
                    let lhs = self.apply(g1, x).and_then(|z| self.apply(g2, z));
                    let rhs = self.apply(&g21, x);
                    if lhs != rhs {
                        out.push(format!("T_{g2} T_{g1} ({x}) = {lhs:?} but T_{g21} ({x}) = {rhs:?}"));
                    }
                }
            }
        }
        out
    }

    /// Witnesses against `S_γ(χ_F) = χ_F ∘ T_{γ⁻¹}` on atom indicators.
    pub fn s_gamma_consistency_violations(&self, calc: &SCalculus) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for gamma in &self.window {
            for f in 0..self.num_atoms {
                let s = calc.s_gamma_atoms(gamma, &AtomSet::from([f]))?;
                let pulled: AtomSet = self.map(&gamma.inv()).iter().filter(|(_, &y)| y == f).map(|(&x, _)| x).collect();
                if s != pulled {
                    out.push(format!("S_{gamma}(atom {f}) = {s:?} but T_{} pulls back {pulled:?}", gamma.inv()));
                }
            }
        }
        Ok(out)
    }

    /// Orbit partition of `X` under all stored `T_γ`, each orbit sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.num_atoms);
        for t in self.maps.values() {
            for (&x, &y) in t {
                if x < self.num_atoms && y < self.num_atoms {
                    uf.union(x, y);
                }
            }
        }
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.num_atoms {
            classes.entry(uf.find(x)).or_default().push(x);
        }
        let mut orbits: Vec<Vec<usize>> = classes.into_values().collect();
        orbits.sort();
        orbits
    }

    /// A single orbit: every invariant set of atoms is empty or everything.
    pub fn is_ergodic(&self) -> bool {
        self.orbits().len() <= 1
    }

    pub fn report(&self) -> PartialActionReport {
        PartialActionReport {
            atoms: (0..self.num_atoms).collect(),
            domains: self.domains.iter().map(|(g, d)| (g.to_string(), d.iter().copied().collect())).collect(),
            maps: self
                .maps
                .iter()
                .map(|(g, t)| (g.to_string(), t.iter().map(|(x, y)| (x.to_string(), *y)).collect()))
                .collect(),
            orbits: self.orbits(),
        }
    }
}
