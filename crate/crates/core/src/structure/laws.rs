//! Exhaustive checks of the `S_γ` calculus, each returning witnesses of the
//! failures it finds (empty when the law holds).

use std::collections::BTreeSet;

use super::calculus::{AtomSet, SCalculus};
use crate::error::Result;
use crate::groups::RatioGroupElement;

/// Projections of `Z_φ` to test on: every atom set when there are at most
/// five atoms, otherwise the empty set, singletons, pairs, their
/// complements, and the unit.
pub fn test_projections(calc: &SCalculus) -> Vec<AtomSet> {
    let n = calc.num_atoms();
    let mut out: BTreeSet<AtomSet> = BTreeSet::new();
    if n <= 5 {
        for mask in 0u32..(1 << n) {
            out.insert((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    } else {
        let all = calc.all_atoms();
        out.insert(AtomSet::new());
        out.insert(all.clone());
        for i in 0..n {
            for j in i..n {
                let p = AtomSet::from([i, j]);
                out.insert(all.difference(&p).copied().collect());
                out.insert(p);
            }
        }
    }
    out.into_iter().collect()
}

fn inter(a: &AtomSet, b: &AtomSet) -> AtomSet {
    a.intersection(b).copied().collect()
}

fn union(a: &AtomSet, b: &AtomSet) -> AtomSet {
    a.union(b).copied().collect()
}

/// Properties of `S_γ`, `p_γ` and `v_γ` for every `γ` in the window:
/// carriers through `v_γ`, monotonicity, `S_{γ⁻¹} S_γ (p) = p p_γ`,
/// injectivity on `p_γ Z_φ`, multiplicativity, and orthogonal additivity.
pub fn s_gamma_violations(calc: &SCalculus, window: &BTreeSet<RatioGroupElement>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let family = test_projections(calc);
    for gamma in window {
        let s = |p: &AtomSet| calc.s_gamma_atoms(gamma, p);
        let p_gamma = calc.p_gamma_atoms(gamma)?;

        let v = calc.v_gamma(gamma);
        if !calc.grading().contains(gamma, &v) {
            out.push(format!("v_{gamma} leaves the spectral subspace"));
        }
        let vv = v.adjoint().try_mul(&v)?;
        if !vv.is_projection() {
            out.push(format!("v_{gamma} is not a partial isometry"));
        }
        if calc.v_gamma(&gamma.inv()) != v.adjoint() {
            out.push(format!("v_{} differs from v_{gamma}*", gamma.inv()));
        }
        for atom in 0..calc.num_atoms() {
            let p = AtomSet::from([atom]);
            let (lhs, rhs) = (s(&p)?, calc.v_carrier_atoms(gamma, &p)?);
            if lhs != rhs {
                out.push(format!("S_{gamma}(atom {atom}) = {lhs:?} but v_{gamma} carries it to {rhs:?}"));
            }
        }

        for p in &family {
            let sp = s(p)?;
            let back = calc.s_gamma_atoms(&gamma.inv(), &sp)?;
            if back != inter(p, &p_gamma) {
                out.push(format!("S_{}(S_{gamma}({p:?})) = {back:?}, expected {:?}", gamma.inv(), inter(p, &p_gamma)));
            }
            for q in &family {
                let sq = s(q)?;
                if p.is_subset(q) && !sp.is_subset(&sq) {
                    out.push(format!("S_{gamma} is not monotone on {p:?} <= {q:?}"));
                }
                let meet = s(&inter(p, q))?;
                if meet != inter(&sp, &sq) {
                    out.push(format!("S_{gamma}({p:?} {q:?}) = {meet:?} is not the product of the images"));
                }
                if p.is_disjoint(q) {
                    let join = s(&union(p, q))?;
                    if join != union(&sp, &sq) {
                        out.push(format!("S_{gamma} is not additive on {p:?} + {q:?}"));
                    }
                }
                if p != q && p.is_subset(&p_gamma) && q.is_subset(&p_gamma) && sp == sq {
                    out.push(format!("S_{gamma} identifies {p:?} and {q:?} under p_{gamma}"));
                }
            }
        }
    }
    Ok(out)
}

/// Properties relating different `γ`: `S_γ` maps `p_γ Z_φ` isomorphically
/// onto `p_{γ⁻¹} Z_φ`; `p_1 = 1` and `S_1 = id`; and for
/// `q = S_{γ2⁻¹}(p_{γ1})`, `q <= p_{γ1γ2}` with `S_{γ1} S_{γ2} = S_{γ1γ2}` on `q Z_φ`.
pub fn composition_violations(calc: &SCalculus, window: &BTreeSet<RatioGroupElement>) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let one = RatioGroupElement::identity();
    if calc.p_gamma_atoms(&one)? != calc.all_atoms() {
        out.push("p_1 is not the unit".into());
    }
    for p in test_projections(calc) {
        if calc.s_gamma_atoms(&one, &p)? != p {
            out.push(format!("S_1({p:?}) != {p:?}"));
        }
    }
    for gamma in window {
        let dom = calc.p_gamma_atoms(gamma)?;
        let range = calc.p_gamma_atoms(&gamma.inv())?;
        if calc.s_gamma_atoms(gamma, &dom)? != range {
            out.push(format!("S_{gamma}(p_{gamma}) != p_{}", gamma.inv()));
        }
        let mut images = AtomSet::new();
        for &x in &dom {
            let img = calc.s_gamma_atoms(gamma, &AtomSet::from([x]))?;
            if img.len() != 1 || !img.is_disjoint(&images) {
                out.push(format!("S_{gamma} does not send atom {x} to a fresh atom"));
            }
            images.extend(img);
        }
        if images != range {
            out.push(format!("S_{gamma} is not onto p_{}", gamma.inv()));
        }
    }
    for g1 in window {
        let p1 = calc.p_gamma_atoms(g1)?;
        for g2 in window {
            let q = calc.s_gamma_atoms(&g2.inv(), &p1)?;
            let g12 = g1.mul(g2);
            if !q.is_subset(&calc.p_gamma_atoms(&g12)?) {
                out.push(format!("S_{}(p_{g1}) = {q:?} is not under p_{g12}", g2.inv()));
            }
            let mut subs: Vec<AtomSet> = q.iter().map(|&x| AtomSet::from([x])).collect();
            subs.push(q.clone());
            for p in subs {
                let lhs = calc.s_gamma_atoms(g1, &calc.s_gamma_atoms(g2, &p)?)?;
                let rhs = calc.s_gamma_atoms(&g12, &p)?;
                if lhs != rhs {
                    out.push(format!("S_{g1} S_{g2} ({p:?}) = {lhs:?} but S_{g12} gives {rhs:?}"));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MultiMatrixAlgebra, Weight};
    use crate::scalar::rat;
    use crate::spectral::SpectralGrading;

    #[test]
    fn laws_hold_on_a_three_level_block() {
        let a = MultiMatrixAlgebra::new(vec![3, 1]).unwrap();
        let w = Weight::new(&a, vec![vec![rat(4, 7), rat(2, 7), rat(4, 7)], vec![rat(1, 7)]]).unwrap();
        let g = SpectralGrading::build(&a, &w).unwrap();
        let calc = SCalculus::new(&g);
        let window = g.window(2);
        assert_eq!(s_gamma_violations(&calc, &window).unwrap(), Vec::<String>::new());
        assert_eq!(composition_violations(&calc, &window).unwrap(), Vec::<String>::new());
    }
}
