use crate::crossed::{arveson_with, covariant_pi, GroupAction, GroupTables};
use crate::error::{Error, Result};
use crate::groups::{dual_hom, GroupElement, GroupHom};
use crate::operators::{conjugate, deviation, eye, kron, span_closure, unit_operators, with_adjoints, zeros, CMat, FSpan, TOL};
use crate::report::IdentityRecord;

/// Index of `ι̂(γ)` in `Ê` for every `γ` in `Ĝ`.
fn dual_image_indices(iota: &GroupHom) -> Result<Vec<usize>> {
    let ihat = dual_hom(iota)?;
    let g = iota.codomain();
    let e = iota.domain();
    Ok(g.elements().iter().map(|gamma| e.index_of(&ihat.apply(&GroupElement(gamma.0.clone())))).collect())
}

fn indicator(t: &GroupTables, at: usize) -> CMat {
    t.multiplication(|x| if x == at { 1.0.into() } else { 0.0.into() })
}

/// Compares the Fourier picture of `M ⋊_{α∘ι} E` with the algebra on
/// `l^2(Ê) ⊗ H` generated by `M_F ⊗ 1` and `λ_{ι̂(γ)} ⊗ a` for `a` in the
/// spectral subspace of `γ` under `α`.
pub fn dual_group_picture_check(iota: &GroupHom, action: &GroupAction) -> Result<Vec<IdentityRecord>> {
    let pulled = action.pullback(iota)?;
    let te = GroupTables::new(iota.domain());
    let tg = GroupTables::new(iota.codomain());
    let ihat = dual_image_indices(iota)?;
    let d = action.algebra().hilbert_dim();
    let n = te.order;
    let units = unit_operators(action.algebra());
    let f = kron(&te.fourier_unitary(), &eye(d));
    let mut records = Vec::new();

    let mut spectral = 0.0f64;
    for mu in 0..n {
        let source = ihat.iter().position(|&x| x == mu);
        for e in &units {
            let lhs = arveson_with(&te, &pulled, mu, e);
            let rhs = match source {
                Some(gamma) => arveson_with(&tg, action, gamma, e),
                None => zeros(d),
            };
            spectral = spectral.max(deviation(&lhs, &rhs));
        }
    }
    records.push(IdentityRecord::within(
        "spectral subspaces of the composite action are indexed through the dual map",
        spectral,
        TOL,
    ));

    let mut pi_dev = 0.0f64;
    for e in &units {
        let lhs = conjugate(&f, &covariant_pi(&te, &pulled, e));
        let mut rhs = zeros(n * d);
        for (gamma, &mu) in ihat.iter().enumerate() {
            rhs += kron(&te.shift(mu), &arveson_with(&tg, action, gamma, e));
        }
        pi_dev = pi_dev.max(deviation(&lhs, &rhs));
    }
    records.push(IdentityRecord::within("covariant representation becomes shifts by dual images", pi_dev, TOL));

    let mut conjugated: Vec<CMat> = (0..n).map(|t| conjugate(&f, &kron(&te.shift(t), &eye(d)))).collect();
    conjugated.extend(units.iter().map(|e| conjugate(&f, &covariant_pi(&te, &pulled, e))));
    let mut fourier_side: Vec<CMat> = (0..n).map(|mu| kron(&indicator(&te, mu), &eye(d))).collect();
    for (gamma, &mu) in ihat.iter().enumerate() {
        let bucket = FSpan::of(d, &units.iter().map(|e| arveson_with(&tg, action, gamma, e)).collect::<Vec<_>>());
        fourier_side.extend(bucket.basis().iter().map(|b| kron(&te.shift(mu), b)));
    }
    let a = span_closure(n * d, &with_adjoints(&conjugated));
    let b = span_closure(n * d, &with_adjoints(&fourier_side));
    records.push(IdentityRecord::within(
        "generated algebras coincide after Fourier conjugation",
        a.containment_deviation(&b).max(b.containment_deviation(&a)),
        TOL,
    ));

    let mut dual = 0.0f64;
    for mu in 0..n {
        let m = kron(&te.multiplication(|x| te.chi[x][mu].conj()), &eye(d));
        dual = dual.max(deviation(&conjugate(&f, &m), &kron(&te.shift(te.neg[mu]), &eye(d))));
    }
    records.push(IdentityRecord::within("dual action becomes dual translation", dual, TOL));
    Ok(records)
}

/// Builds the induced algebra `R` on `l^2(Ê) ⊗ l^2(Ĝ) ⊗ H` and the unitary
/// `(Uξ)(μ,γ) = ξ(ι̂(γ) - μ, γ)`, then checks the conjugation identities and
/// `U R U` against the Fourier picture of `M ⋊_{α∘ι} E`.
pub fn induced_picture_check(iota: &GroupHom, action: &GroupAction) -> Result<Vec<IdentityRecord>> {
    if !iota.is_surjective() {
        return Err(Error::Precondition("the homomorphism E -> G must be surjective".into()));
    }
    if iota.codomain() != action.group() {
        return Err(Error::Shape("homomorphism does not land in the acting group".into()));
    }
    let te = GroupTables::new(iota.domain());
    let tg = GroupTables::new(iota.codomain());
    let ihat = dual_image_indices(iota)?;
    let (ne, ng) = (te.order, tg.order);
    let d = action.algebra().hilbert_dim();
    let side = ne * ng * d;
    let units = unit_operators(action.algebra());
    let iota_idx: Vec<usize> =
        iota.domain().elements().iter().map(|t| iota.codomain().index_of(&iota.apply(t))).collect();

    let mut u2 = zeros(ne * ng);
    for mu in 0..ne {
        for gamma in 0..ng {
            let src = te.add[ihat[gamma]][te.neg[mu]];
            u2[(mu * ng + gamma, src * ng + gamma)] = 1.0.into();
        }
    }
    let u = kron(&u2, &eye(d));
    let mut records = vec![IdentityRecord::within(
        "U is a self-adjoint involution",
        deviation(&(&u2 * &u2), &eye(ne * ng)).max(deviation(&u2.adjoint(), &u2)),
        TOL,
    )];

    let mut first = 0.0f64;
    for t in 0..ne {
        for g in 0..ng {
            let lhs = conjugate(&u2, &kron(&te.multiplication(|x| te.chi[t][x]), &tg.multiplication(|x| tg.chi[g][x])));
            let shifted = tg.add[iota_idx[t]][g];
            let rhs = kron(&te.multiplication(|x| te.chi[t][x].conj()), &tg.multiplication(|x| tg.chi[shifted][x]));
            first = first.max(deviation(&lhs, &rhs));
        }
    }
    records.push(IdentityRecord::within("U turns character products into conjugate and shifted characters", first, TOL));
    let (mut second, mut third) = (0.0f64, 0.0f64);
    for gamma in 0..ng {
        let lhs = conjugate(&u2, &kron(&eye(ne), &tg.shift(gamma)));
        second = second.max(deviation(&lhs, &kron(&te.shift(ihat[gamma]), &tg.shift(gamma))));
        let inv = tg.neg[gamma];
        let lhs = conjugate(&u2, &kron(&te.shift(te.neg[ihat[gamma]]), &tg.shift(inv)));
        third = third.max(deviation(&lhs, &kron(&eye(ne), &tg.shift(inv))));
    }
    records.push(IdentityRecord::within("U carries shifts of the dual group to diagonal shifts", second, TOL));
    records.push(IdentityRecord::within("U carries the inducing shifts to dual-group shifts", third, TOL));
    let fourth = (0..ne)
        .map(|mu| {
            let lhs = conjugate(&u2, &kron(&te.shift(mu), &eye(ng)));
            deviation(&lhs, &kron(&te.shift(te.neg[mu]), &eye(ng)))
        })
        .fold(0.0, f64::max);
    records.push(IdentityRecord::within("U inverts translations of the first leg", fourth, TOL));

    // spectral subspaces of α, as bases
    let buckets: Vec<Vec<CMat>> = (0..ng)
        .map(|gamma| FSpan::of(d, &units.iter().map(|e| arveson_with(&tg, action, gamma, e)).collect::<Vec<_>>()).basis())
        .collect();

    // L^∞(Ê, P) is spanned by δ_μ ⊗ δ_γ' λ_γ ⊗ a; R is its fixed points under
    // Ad(λ_{-ι̂γ} ⊗ λ_{-γ} ⊗ 1)
    let inducing: Vec<CMat> =
        (0..ng).map(|gamma| kron(&kron(&te.shift(te.neg[ihat[gamma]]), &tg.shift(tg.neg[gamma])), &eye(d))).collect();
    let mut r = FSpan::new(side);
    for mu in 0..ne {
        for gp in 0..ng {
            for gamma in 0..ng {
                let leg = &indicator(&tg, gp) * &tg.shift(gamma);
                for a in &buckets[gamma] {
                    let x = kron(&kron(&indicator(&te, mu), &leg), a);
                    let mut avg = zeros(side);
                    for w in &inducing {
                        avg += conjugate(w, &x);
                    }
                    r.insert(&(avg / nalgebra::Complex::new(ng as f64, 0.0)));
                }
            }
        }
    }
    let fixed = r
        .basis()
        .iter()
        .flat_map(|b| inducing.iter().map(move |w| deviation(&conjugate(w, b), b)))
        .fold(0.0, f64::max);
    records.push(IdentityRecord::within("induced algebra is fixed by the inducing action", fixed, TOL));

    let mut target_gens: Vec<CMat> = (0..ne).map(|mu| kron(&kron(&indicator(&te, mu), &eye(ng)), &eye(d))).collect();
    for gamma in 0..ng {
        for a in &buckets[gamma] {
            target_gens.push(kron(&kron(&te.shift(ihat[gamma]), &tg.shift(gamma)), a));
        }
    }
    let target_gens = with_adjoints(&target_gens);
    let target = span_closure(side, &target_gens);
    let expected = (ne * action.algebra().dimension()) as f64;
    records.push(IdentityRecord::within(
        "induced algebra and Fourier picture both have dimension |E| dim M",
        (r.dimension() as f64 - expected).abs().max((target.dimension() as f64 - expected).abs()),
        0.0,
    ));
    let moved = FSpan::of(side, &r.basis().iter().map(|b| conjugate(&u, b)).collect::<Vec<_>>());
    records.push(IdentityRecord::within(
        "U R U equals the Fourier picture of the composite crossed product",
        moved.containment_deviation(&target).max(target.containment_deviation(&moved)),
        TOL,
    ));

    let mut tau = 0.0f64;
    for mu in 0..ne {
        let lam = kron(&kron(&te.shift(mu), &eye(ng)), &eye(d));
        let lam_inv = kron(&kron(&te.shift(te.neg[mu]), &eye(ng)), &eye(d));
        for b in r.basis() {
            let image = conjugate(&lam, &b);
            tau = tau.max(r.residual(&image));
            tau = tau.max(deviation(&conjugate(&u, &image), &conjugate(&lam_inv, &conjugate(&u, &b))));
        }
    }
    records.push(IdentityRecord::within("translations of R match the dual action", tau, TOL));
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiMatrixAlgebra;
    use crate::crossed::{fourier_picture_check, Automorphism};
    use crate::groups::FiniteAbelianGroup;
    use crate::report::all_pass;
    use nalgebra::DVector;
    use num_complex::Complex64;

    fn z2_on_m2() -> GroupAction {
        let m2 = MultiMatrixAlgebra::new(vec![2]).unwrap();
        let u = CMat::from_diagonal(&DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]));
        GroupAction::new(&FiniteAbelianGroup::cyclic(2).unwrap(), &m2, vec![Automorphism::inner(&m2, vec![u]).unwrap()])
            .unwrap()
    }

    fn reduction(n: u64, m: u64) -> GroupHom {
        let e = FiniteAbelianGroup::cyclic(n).unwrap();
        let g = FiniteAbelianGroup::cyclic(m).unwrap();
        GroupHom::new(e, g.clone(), vec![g.generator(0)]).unwrap()
    }

    #[test]
    fn dual_group_picture_on_reduction_and_identity() {
        let action = z2_on_m2();
        assert!(all_pass(&dual_group_picture_check(&reduction(4, 2), &action).unwrap()));
        let id = GroupHom::identity(action.group());
        let r = dual_group_picture_check(&id, &action).unwrap();
        assert!(all_pass(&r));
        assert!(all_pass(&fourier_picture_check(&action)));
    }

    #[test]
    fn induced_picture_on_reduction() {
        let r = induced_picture_check(&reduction(4, 2), &z2_on_m2()).unwrap();
        assert!(all_pass(&r), "{r:#?}");
        let r = induced_picture_check(&GroupHom::identity(z2_on_m2().group()), &z2_on_m2()).unwrap();
        assert!(all_pass(&r), "{r:#?}");
    }

    #[test]
    fn non_surjective_is_rejected() {
        let e = FiniteAbelianGroup::cyclic(2).unwrap();
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let doubling = GroupHom::new(e, g.clone(), vec![g.element(&[2]).unwrap()]).unwrap();
        let c1 = MultiMatrixAlgebra::new(vec![1]).unwrap();
        let action = GroupAction::trivial(&g, &c1);
        assert!(matches!(induced_picture_check(&doubling, &action), Err(Error::Precondition(_))));
    }
}
