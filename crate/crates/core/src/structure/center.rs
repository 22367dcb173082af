use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::calculus::{AtomSet, SCalculus};
use super::partial::PartialActionData;
use crate::algebra::{AlgebraElement, MultiMatrixAlgebra, Subalgebra};
use crate::crossed::GammaMatrix;
use crate::error::{Error, Result};
use crate::groups::RatioGroupElement;
use crate::operators::{commutant_dimension_within, FSpan};
use crate::report::IdentityRecord;
use crate::scalar::real;
use crate::spectral::SpectralGrading;

/// Membership in `Z(M)` through the centralizer data: `x` is central in
/// `M_φ` and `S_γ(x) = x p_{γ⁻¹}` for every `γ` in the window.
pub fn center_membership_test(calc: &SCalculus, x: &AlgebraElement, window: &BTreeSet<RatioGroupElement>) -> Result<bool> {
    if !calc.centralizer().is_central(x) {
        return Ok(false);
    }
    for gamma in window {
        let lhs = calc.s_gamma_central(gamma, x)?;
        let rhs = x.try_mul(&calc.p_gamma(&gamma.inv())?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x` commutes with every matrix unit of `M`.
pub fn direct_center_membership(x: &AlgebraElement) -> Result<bool> {
    for u in x.algebra().matrix_units() {
        if !x.commutes_with(&x.algebra().unit(u)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the center of the operator algebra spanned by the given
/// matrix units, by solving the commutation equations numerically.
fn operator_center_dimension(algebra: &MultiMatrixAlgebra, units: &[crate::algebra::MatrixUnit]) -> usize {
    let ops: Vec<_> = units.iter().map(|&u| algebra.unit(u).expect("unit in range").to_operator()).collect();
    let span = FSpan::of(algebra.hilbert_dim(), &ops);
    commutant_dimension_within(&span, &ops)
}

/// Whether `M` is a factor, from its commutation equations alone.
pub fn direct_is_factor(algebra: &MultiMatrixAlgebra) -> bool {
    operator_center_dimension(algebra, &algebra.matrix_units()) == 1
}

/// Whether a unit-spanned subalgebra is a factor, from its commutation equations.
pub fn direct_subalgebra_is_factor(n: &Subalgebra) -> bool {
    operator_center_dimension(n.ambient(), &n.basis()) == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorialityReport {
    pub m_is_factor: bool,
    pub t_ergodic: bool,
    pub m_phi_is_factor: bool,
    pub q_is_factor: bool,
    pub trivial_spectrum: bool,
    /// Set when `M_φ` is a factor: every `p_γ` in the window is 0 or 1.
    pub p_gamma_trivial: Option<bool>,
    /// Set when `M_φ` is a factor: `{γ : p_γ = 1}` is closed in the window.
    pub gamma_prime_is_group: Option<bool>,
}

/// Factoriality of `M` by direct center computation, checked against
/// ergodicity of the partial action; `Q` is a factor exactly when `M_φ` is.
pub fn factoriality(calc: &SCalculus, action: &PartialActionData) -> Result<FactorialityReport> {
    let m_is_factor = direct_is_factor(calc.algebra());
    let t_ergodic = action.is_ergodic();
    if m_is_factor != t_ergodic {
        return Err(Error::InvariantViolation(format!(
            "center of M says factor = {m_is_factor} but the partial action says ergodic = {t_ergodic}"
        )));
    }
    let m_phi_is_factor = direct_subalgebra_is_factor(calc.centralizer());
    let (mut p_gamma_trivial, mut gamma_prime_is_group) = (None, None);
    if m_phi_is_factor {
        let all = calc.all_atoms();
        let mut full = BTreeSet::new();
        let mut trivial = true;
        for gamma in action.window() {
            let p = calc.p_gamma_atoms(gamma)?;
            if p == all {
                full.insert(gamma.clone());
            } else if !p.is_empty() {
                trivial = false;
            }
        }
        let closed = full.iter().all(|g| {
            (!action.window().contains(&g.inv()) || full.contains(&g.inv()))
                && full.iter().all(|h| !action.window().contains(&g.mul(h)) || full.contains(&g.mul(h)))
        });
        p_gamma_trivial = Some(trivial);
        gamma_prime_is_group = Some(closed && full.contains(&RatioGroupElement::identity()));
    }
    Ok(FactorialityReport {
        m_is_factor,
        t_ergodic,
        m_phi_is_factor,
        q_is_factor: m_phi_is_factor,
        trivial_spectrum: calc.grading().is_trivial(),
        p_gamma_trivial,
        gamma_prime_is_group,
    })
}

/// Outcome of the window-limited center test for a generalized matrix.
#[derive(Clone, Debug, Default, Serialize)]
pub struct WindowCenterCheck {
    pub off_diagonal_vanishes: bool,
    pub diagonal_in_center: bool,
    pub equivariant: bool,
    pub witnesses: Vec<String>,
}

impl WindowCenterCheck {
    pub fn passed(&self) -> bool {
        self.off_diagonal_vanishes && self.diagonal_in_center && self.equivariant
    }
}

fn check_window(window: &BTreeSet<RatioGroupElement>) -> Result<()> {
    if !window.contains(&RatioGroupElement::identity()) {
        return Err(Error::Contract("window must contain 1".into()));
    }
    if let Some(g) = window.iter().find(|g| !window.contains(&g.inv())) {
        return Err(Error::Contract(format!("window contains {g} but not its inverse")));
    }
    Ok(())
}

/// Necessary conditions for `x` to lie in the center of `Q`, checked on a
/// finite window: off-diagonal entries vanish, diagonal entries lie in
/// `Z_φ`, and `S_{γ1}(x_{γ,γ} p_{γ1}) = x_{γγ1,γγ1} p_{γ1⁻¹}` whenever `γ`
/// and `γγ1` are in the window.
pub fn q_center_window_check(
    calc: &SCalculus,
    x: &GammaMatrix,
    window: &BTreeSet<RatioGroupElement>,
) -> Result<WindowCenterCheck> {
    check_window(window)?;
    if let Some(((r, c), _)) = x.entries().iter().find(|((r, c), _)| !window.contains(r) || !window.contains(c)) {
        return Err(Error::Contract(format!("entry ({r}, {c}) lies outside the window")));
    }
    let mut out = WindowCenterCheck { off_diagonal_vanishes: true, diagonal_in_center: true, equivariant: true, ..Default::default() };
    for (r, c) in x.entries().keys().filter(|(r, c)| r != c) {
        out.off_diagonal_vanishes = false;
        out.witnesses.push(format!("nonzero off-diagonal entry ({r}, {c})"));
    }
    for gamma in window {
        let d = x.entry(gamma, gamma);
        if !calc.centralizer().is_central(&d) {
            out.diagonal_in_center = false;
            out.witnesses.push(format!("diagonal entry at {gamma} is not in the center of the centralizer"));
        }
    }
    if !out.diagonal_in_center {
        out.equivariant = false;
        return Ok(out);
    }
    for gamma in window {
        let d = x.entry(gamma, gamma);
        for g1 in calc.grading().point_spectrum() {
            let target = gamma.mul(&g1);
            if !window.contains(&target) {
                continue;
            }
            let lhs = calc.s_gamma_central(&g1, &d.try_mul(&calc.p_gamma(&g1)?)?)?;
            let rhs = x.entry(&target, &target).try_mul(&calc.p_gamma(&g1.inv())?)?;
            if lhs != rhs {
                out.equivariant = false;
                out.witnesses.push(format!("equivariance fails at γ = {gamma}, γ1 = {g1}"));
            }
        }
    }
    Ok(out)
}

/// Diagonal field `x_{γ,γ} = S_γ(p)` over the window.
pub fn s_pattern_field(
    calc: &SCalculus,
    grading: &Arc<SpectralGrading>,
    p: &AtomSet,
    window: &BTreeSet<RatioGroupElement>,
) -> Result<GammaMatrix> {
    let mut x = GammaMatrix::zero(grading);
    for gamma in window {
        x.set(gamma.clone(), gamma.clone(), calc.projection(&calc.s_gamma_atoms(gamma, p)?))?;
    }
    Ok(x)
}

/// Compares the corner of `Q` at a single diagonal point `γ0` with `M_φ`:
/// products, adjoints, the constraint, and `tr_Q = γ0 φ`.
pub fn corner_isomorphism_check(
    calc: &SCalculus,
    grading: &Arc<SpectralGrading>,
    gamma0: &RatioGroupElement,
) -> Result<Vec<IdentityRecord>> {
    let basis: Vec<AlgebraElement> =
        calc.centralizer().basis().into_iter().map(|u| calc.algebra().unit(u)).collect::<Result<_>>()?;
    let corner = |a: &AlgebraElement| -> Result<GammaMatrix> {
        let mut x = GammaMatrix::zero(grading);
        x.set(gamma0.clone(), gamma0.clone(), a.clone())?;
        Ok(x)
    };
    let corners: Vec<GammaMatrix> = basis.iter().map(corner).collect::<Result<_>>()?;
    let mut products = true;
    for (a, ca) in basis.iter().zip(&corners) {
        for (b, cb) in basis.iter().zip(&corners) {
            if ca.mul(cb)? != corner(&a.try_mul(b)?)? {
                products = false;
            }
        }
    }
    let adjoints = basis.iter().zip(&corners).all(|(a, ca)| corner(&a.adjoint()).map(|c| c == ca.adjoint()).unwrap_or(false));
    let constraint = corners.iter().all(|c| c.constraint_violations().is_empty());
    let scale = real(gamma0.value());
    let mut traces = true;
    for (a, ca) in basis.iter().zip(&corners) {
        if ca.tr_q() != calc.grading().weight().eval(a)? * &scale {
            traces = false;
        }
    }
    Ok(vec![
        IdentityRecord::exact("corner products match the centralizer", products),
        IdentityRecord::exact("corner adjoints match the centralizer", adjoints),
        IdentityRecord::exact("corner entries satisfy the spectral constraint", constraint),
        IdentityRecord::exact("corner trace equals the ratio times the weight", traces),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MatrixUnit, Weight};
    use crate::report::all_pass;
    use crate::scalar::rat;
    use crate::structure::partial_action;

    fn r(n: u64, d: u64) -> RatioGroupElement {
        RatioGroupElement::from_fraction(n, d).unwrap()
    }

    fn build(dims: Vec<usize>, eigs: Vec<Vec<(i64, i64)>>) -> (Arc<SpectralGrading>, SCalculus) {
        let a = MultiMatrixAlgebra::new(dims).unwrap();
        let w = Weight::new(&a, eigs.into_iter().map(|b| b.into_iter().map(|(n, d)| rat(n, d)).collect()).collect())
            .unwrap();
        let g = Arc::new(SpectralGrading::build(&a, &w).unwrap());
        let calc = SCalculus::new(&g);
        (g, calc)
    }

    #[test]
    fn membership_examples() {
        let (g, calc) = build(vec![2], vec![vec![(2, 3), (1, 3)]]);
        let w = g.window(1);
        let a = calc.algebra().clone();
        assert!(center_membership_test(&calc, &a.identity(), &w).unwrap());
        let e11 = a.unit(MatrixUnit::new(0, 0, 0)).unwrap();
        assert!(!center_membership_test(&calc, &e11, &w).unwrap());
        assert!(!direct_center_membership(&e11).unwrap());

        let (g, calc) = build(vec![2, 2], vec![vec![(2, 3), (1, 3)], vec![(2, 3), (1, 3)]]);
        let block = calc.projection(&AtomSet::from([0, 1])).scale(&crate::scalar::sc(5, 2));
        assert!(center_membership_test(&calc, &block, &g.window(1)).unwrap());
        assert!(direct_center_membership(&block).unwrap());
    }

    #[test]
    fn factoriality_examples() {
        let (g, calc) = build(vec![2], vec![vec![(2, 3), (1, 3)]]);
        let t = partial_action(&calc, &g.window(1)).unwrap();
        let f = factoriality(&calc, &t).unwrap();
        assert!(f.m_is_factor && f.t_ergodic && !f.m_phi_is_factor && !f.q_is_factor);

        let (g, calc) = build(vec![2, 2], vec![vec![(2, 3), (1, 3)], vec![(2, 3), (1, 3)]]);
        let f = factoriality(&calc, &partial_action(&calc, &g.window(1)).unwrap()).unwrap();
        assert!(!f.m_is_factor && !f.t_ergodic);

        let (g, calc) = build(vec![2], vec![vec![(1, 2), (1, 2)]]);
        let f = factoriality(&calc, &partial_action(&calc, &g.window(1)).unwrap()).unwrap();
        assert!(f.m_is_factor && f.trivial_spectrum && f.m_phi_is_factor);
        assert_eq!(f.p_gamma_trivial, Some(true));
        assert_eq!(f.gamma_prime_is_group, Some(true));
    }

    #[test]
    fn window_center_examples() {
        let (g, calc) = build(vec![2], vec![vec![(2, 3), (1, 3)]]);
        let window = g.window(2);
        let mut scalar = GammaMatrix::zero(&g);
        for gamma in &window {
            scalar.set(gamma.clone(), gamma.clone(), calc.algebra().identity().scale(&crate::scalar::sc(3, 1))).unwrap();
        }
        assert!(q_center_window_check(&calc, &scalar, &window).unwrap().passed());

        let x = s_pattern_field(&calc, &g, &AtomSet::from([0]), &window).unwrap();
        assert_eq!(x.entry(&r(2, 1), &r(2, 1)), calc.projection(&AtomSet::from([1])));
        assert!(q_center_window_check(&calc, &x, &window).unwrap().passed());

        let mut bad = x.clone();
        bad.set(r(2, 1), r(2, 1), calc.algebra().zero()).unwrap();
        let check = q_center_window_check(&calc, &bad, &window).unwrap();
        assert!(!check.passed() && !check.witnesses.is_empty());

        let lopsided: BTreeSet<_> = [r(1, 1), r(2, 1)].into();
        assert!(matches!(q_center_window_check(&calc, &scalar, &lopsided), Err(Error::Contract(_))));
    }

    #[test]
    fn corner_examples() {
        let (g, calc) = build(vec![2], vec![vec![(2, 3), (1, 3)]]);
        assert!(all_pass(&corner_isomorphism_check(&calc, &g, &r(1, 1)).unwrap()));
        assert!(all_pass(&corner_isomorphism_check(&calc, &g, &r(2, 1)).unwrap()));
        let mut x = GammaMatrix::zero(&g);
        x.set(r(2, 1), r(2, 1), calc.algebra().unit(MatrixUnit::new(0, 0, 0)).unwrap()).unwrap();
        assert_eq!(x.tr_q(), crate::scalar::sc(4, 3));
    }
}
