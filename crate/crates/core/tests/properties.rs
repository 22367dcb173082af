use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crossdecomp::algebra::{centralizer, tensor, AlgebraElement, MultiMatrixAlgebra, Weight};
use crossdecomp::demo::{binomial_eigenvalues, powers_truncation, tensor_subspace_violations};
use crossdecomp::groups::{fourier_inverse, fourier_plancherel, lattice_basis, ratio_membership, FiniteAbelianGroup, RatioGroupElement};
use crossdecomp::scalar::{int, rat, real, Rational, Scalar};
use crossdecomp::spectral::{kms_oracle, SpectralGrading};
use crossdecomp::structure::laws::{composition_violations, s_gamma_violations};
use crossdecomp::structure::{direct_is_factor, partial_action, SCalculus};
use crossdecomp::verify::{random_gamma_matrix, run_suites, Fixture, Suite, SuiteConfig};

/// Block dimensions (at most three blocks of size at most three) with
/// eigenvalues drawn from `{1/7, ..., 6/7}`.
fn weighted_algebra() -> impl Strategy<Value = (MultiMatrixAlgebra, Weight)> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_flat_map(|dims| {
            let total: usize = dims.iter().sum();
            (Just(dims), prop::collection::vec(1i64..=6, total))
        })
        .prop_map(|(dims, numerators)| {
            let algebra = MultiMatrixAlgebra::new(dims.clone()).unwrap();
            let mut it = numerators.into_iter();
            let eigs = dims.iter().map(|&d| (0..d).map(|_| rat(it.next().unwrap(), 7)).collect()).collect();
            let weight = Weight::new(&algebra, eigs).unwrap();
            (algebra, weight)
        })
}

fn element(algebra: &MultiMatrixAlgebra, coeffs: &[(i64, i64)]) -> AlgebraElement {
    let units = algebra.matrix_units();
    algebra
        .element(units.into_iter().zip(coeffs.iter().cycle()).map(|(u, &(re, im))| (u, Scalar::new(int(re), int(im)))))
        .unwrap()
}

fn fixture(algebra: &MultiMatrixAlgebra, weight: &Weight) -> Fixture {
    Fixture::new("generated", algebra, weight).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grading_is_a_basis_with_adjoint_and_product_laws((algebra, weight) in weighted_algebra()) {
        let g = SpectralGrading::build(&algebra, &weight).unwrap();
        let mut seen = BTreeSet::new();
        for units in g.buckets().values() {
            for u in units {
                prop_assert!(seen.insert(*u));
            }
        }
        prop_assert_eq!(seen.len(), algebra.dimension());
        for (gamma, units) in g.buckets() {
            let adj: BTreeSet<_> = units.iter().map(|u| u.adjoint()).collect();
            let inv: BTreeSet<_> = g.bucket(&gamma.inv()).iter().copied().collect();
            prop_assert_eq!(adj, inv);
        }
        for u in algebra.matrix_units() {
            for v in algebra.matrix_units() {
                let p = algebra.unit(u).unwrap().try_mul(&algebra.unit(v).unwrap()).unwrap();
                let label = g.label_of(&u).unwrap().mul(g.label_of(&v).unwrap());
                prop_assert!(g.contains(&label, &p));
            }
        }
    }

    #[test]
    fn grading_agrees_with_the_kms_relation((algebra, weight) in weighted_algebra()) {
        let g = SpectralGrading::build(&algebra, &weight).unwrap();
        let spectrum = g.point_spectrum();
        for (gamma, units) in g.buckets() {
            for u in units {
                let a = algebra.unit(*u).unwrap();
                for other in &spectrum {
                    prop_assert_eq!(kms_oracle(&weight, &a, other).unwrap(), other == gamma);
                }
            }
        }
    }

    #[test]
    fn spectral_projections_resolve_the_identity(
        (algebra, weight) in weighted_algebra(),
        coeffs in prop::collection::vec((-3i64..=3, -3i64..=3), 1..8),
    ) {
        let g = SpectralGrading::build(&algebra, &weight).unwrap();
        let a = element(&algebra, &coeffs);
        let mut total = algebra.zero();
        for gamma in g.buckets().keys() {
            let e = g.project(gamma, &a);
            prop_assert_eq!(g.project(gamma, &e), e.clone());
            total = total.try_add(&e).unwrap();
        }
        prop_assert_eq!(total, a.clone());
        let support = g.spectrum_of(&a);
        for gamma in g.buckets().keys() {
            prop_assert_eq!(support.contains(gamma), !g.project(gamma, &a).is_zero());
        }
    }

    #[test]
    fn trace_on_generalized_matrices_is_tracial_and_scaled((algebra, weight) in weighted_algebra(), seed in any::<u64>()) {
        let fx = fixture(&algebra, &weight);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let columns: Vec<_> = fx.window(1).into_iter().collect();
        for _ in 0..4 {
            let x = random_gamma_matrix(&fx, &mut rng, &columns).unwrap();
            let y = random_gamma_matrix(&fx, &mut rng, &columns).unwrap();
            let z = random_gamma_matrix(&fx, &mut rng, &columns).unwrap();
            prop_assert_eq!(x.mul(&y).unwrap().tr_q(), y.mul(&x).unwrap().tr_q());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().adjoint(), y.adjoint().mul(&x.adjoint()).unwrap());
            prop_assert!(x.mul(&y).unwrap().constraint_violations().is_empty());
            for gamma in fx.grading.generators() {
                prop_assert_eq!(x.dual_shift(gamma).tr_q(), x.tr_q() * real(gamma.inv().value()));
                prop_assert_eq!(x.dual_shift(gamma).mul(&y.dual_shift(gamma)).unwrap(), x.mul(&y).unwrap().dual_shift(gamma));
            }
        }
    }

    #[test]
    fn s_gamma_laws_and_partial_action((algebra, weight) in weighted_algebra()) {
        let g = SpectralGrading::build(&algebra, &weight).unwrap();
        let calc = SCalculus::new(&g);
        let window = g.window(2);
        prop_assert_eq!(s_gamma_violations(&calc, &window).unwrap(), Vec::<String>::new());
        prop_assert_eq!(composition_violations(&calc, &window).unwrap(), Vec::<String>::new());
        let pa = partial_action(&calc, &window).unwrap();
        prop_assert!(pa.inverse_law_violations().is_empty());
        prop_assert!(pa.composition_law_violations().is_empty());
        prop_assert_eq!(pa.is_ergodic(), direct_is_factor(&algebra));
    }

    #[test]
    fn tensor_subspaces_factor((a1, w1) in weighted_algebra(), (a2, w2) in weighted_algebra()) {
        prop_assume!(a1.dimension() * a2.dimension() <= 81);
        let (a, w) = tensor(&a1, &w1, &a2, &w2).unwrap();
        let g1 = SpectralGrading::build(&a1, &w1).unwrap();
        let g2 = SpectralGrading::build(&a2, &w2).unwrap();
        let g = SpectralGrading::build(&a, &w).unwrap();
        prop_assert_eq!(tensor_subspace_violations(&g1, &g2, &g), Vec::<String>::new());
    }

    #[test]
    fn powers_eigenvalues_are_binomial(num in 1i64..20, den_extra in 1i64..20, level in 1usize..=8) {
        let mu = Rational::new(num.into(), (num + den_extra).into());
        let p = powers_truncation(&mu, level).unwrap();
        let mut seen: BTreeMap<Rational, usize> = BTreeMap::new();
        for l in &p.weight.eigenvalues()[0] {
            *seen.entry(l.clone()).or_default() += 1;
        }
        let expected: BTreeMap<Rational, usize> = binomial_eigenvalues(&mu, level).into_iter().collect();
        prop_assert_eq!(seen, expected);
        if level <= 4 {
            let dims = centralizer(&p.algebra, &p.weight).block_dims();
            let mut dims_sorted = dims.clone();
            dims_sorted.sort();
            let mut expected: Vec<usize> = (0..=level).map(|j| crossdecomp::demo::binomial(level, j)).collect();
            expected.sort();
            prop_assert_eq!(dims_sorted, expected);
        }
    }

    #[test]
    fn ratio_membership_finds_exact_exponents(a in -4i64..=4, b in -4i64..=4) {
        let two = RatioGroupElement::prime(2).unwrap();
        let three = RatioGroupElement::prime(3).unwrap();
        let target = two.pow(a).mul(&three.pow(b));
        prop_assert_eq!(ratio_membership(&target, &[two.clone(), three.clone()]), Some(vec![a, b]));
        prop_assert_eq!(RatioGroupElement::from_rational(&target.value()).unwrap(), target.clone());
        prop_assert_eq!(lattice_basis(&[two.clone(), three.clone(), target]).len(), 2);
        if b != 0 {
            prop_assert_eq!(ratio_membership(&two.pow(a).mul(&three.pow(b)), std::slice::from_ref(&two)), None);
        }
    }

    #[test]
    fn fourier_plancherel_is_unitary_for_normalized_haar_measure(
        factors in prop::collection::vec(2u64..=4, 1..=2),
        values in prop::collection::vec((-5i32..=5, -5i32..=5), 16),
    ) {
        let group = FiniteAbelianGroup::new(factors).unwrap();
        let xi: Vec<Complex64> = values.iter().take(group.order()).map(|&(r, i)| Complex64::new(r as f64, i as f64)).collect();
        let hat = fourier_plancherel(&group, &xi).unwrap();
        let back = fourier_inverse(&group, &hat).unwrap();
        let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let haar = norm(&xi) / group.order() as f64;
        prop_assert!((haar - norm(&hat)).abs() <= 1e-9 * (1.0 + haar));
        for (x, y) in xi.iter().zip(&back) {
            prop_assert!((x - y).norm() <= 1e-9);
        }
    }

    #[test]
    fn suite_reports_are_deterministic((algebra, weight) in weighted_algebra(), seed in 0u64..4) {
        let fx = fixture(&algebra, &weight);
        let cfg = SuiteConfig { seed, cases: 5, window: 1 };
        let first = serde_json::to_string(&run_suites(&fx, &Suite::STRUCTURAL, &cfg)).unwrap();
        let second = serde_json::to_string(&run_suites(&fx, &Suite::STRUCTURAL, &cfg)).unwrap();
        prop_assert_eq!(first, second);
    }
}

#[test]
fn grading_shares_through_arc() {
    let algebra = MultiMatrixAlgebra::new(vec![2]).unwrap();
    let weight = Weight::new(&algebra, vec![vec![rat(2, 3), rat(1, 3)]]).unwrap();
    let g = Arc::new(SpectralGrading::build(&algebra, &weight).unwrap());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let g = Arc::clone(&g);
            std::thread::spawn(move || g.point_spectrum().len())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), 3);
    }
}
