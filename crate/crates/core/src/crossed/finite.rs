use std::collections::VecDeque;

use num_complex::Complex64;

use crate::algebra::MultiMatrixAlgebra;
use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement, GroupHom};
use crate::groups::pairing_unchecked;
use crate::operators::{
    center_dimension, conjugate, deviation, eye, kron, span_closure, unit_operators, with_adjoints, zeros, CMat,
    FSpan, TOL,
};
use crate::report::IdentityRecord;

/// Automorphism of a multi-matrix algebra: block `i` is carried onto block
/// `permutation[i]` and conjugated by `unitaries[i]`.
#[derive(Clone, Debug)]
pub struct Automorphism {
    algebra: MultiMatrixAlgebra,
    permutation: Vec<usize>,
    unitaries: Vec<CMat>,
    spatial: CMat,
}

impl Automorphism {
    pub fn new(algebra: &MultiMatrixAlgebra, permutation: Vec<usize>, unitaries: Vec<CMat>) -> Result<Self> {
        let dims = algebra.block_dims();
        let k = dims.len();
        if permutation.len() != k || unitaries.len() != k {
            return Err(Error::Shape(format!("automorphism needs {k} block images and {k} unitaries")));
        }
        let mut seen = vec![false; k];
        for (i, &t) in permutation.iter().enumerate() {
            if t >= k || std::mem::replace(&mut seen[t], true) {
                return Err(Error::Validation(format!("{permutation:?} is not a permutation of the blocks")));
            }
            if dims[t] != dims[i] {
                return Err(Error::Validation(format!("block {i} of size {} cannot move to block {t}", dims[i])));
            }
            let u = &unitaries[i];
            if u.nrows() != dims[i] || u.ncols() != dims[i] {
                return Err(Error::Shape(format!("unitary for block {i} must be {0}x{0}", dims[i])));
            }
            if deviation(&(u.adjoint() * u), &eye(dims[i])) > TOL {
                return Err(Error::Validation(format!("matrix for block {i} is not unitary")));
            }
        }
        let n = algebra.hilbert_dim();
        let mut spatial = zeros(n);
        for (i, u) in unitaries.iter().enumerate() {
            let (src, dst) = (algebra.offset(i), algebra.offset(permutation[i]));
            spatial.view_mut((dst, src), (dims[i], dims[i])).copy_from(u);
        }
        Ok(Self { algebra: algebra.clone(), permutation, unitaries, spatial })
    }

    pub fn identity(algebra: &MultiMatrixAlgebra) -> Self {
        let dims = algebra.block_dims();
        Self::new(algebra, (0..dims.len()).collect(), dims.iter().map(|&d| eye(d)).collect())
            .expect("identity is an automorphism")
    }

    /// `Ad(u)` for a block-diagonal unitary given blockwise.
    pub fn inner(algebra: &MultiMatrixAlgebra, unitaries: Vec<CMat>) -> Result<Self> {
        Self::new(algebra, (0..algebra.num_blocks()).collect(), unitaries)
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn unitaries(&self) -> &[CMat] {
        &self.unitaries
    }

    /// Unitary `W` on `H` with `α(a) = W a W*`.
    pub fn spatial(&self) -> &CMat {
        &self.spatial
    }

    pub fn apply(&self, a: &CMat) -> CMat {
        conjugate(&self.spatial, a)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let permutation: Vec<usize> = other.permutation.iter().map(|&t| self.permutation[t]).collect();
        let unitaries = other
            .unitaries
            .iter()
            .zip(&other.permutation)
            .map(|(u, &t)| &self.unitaries[t] * u)
            .collect();
        let spatial = &self.spatial * &other.spatial;
        Automorphism { algebra: self.algebra.clone(), permutation, unitaries, spatial }
    }

    /// Largest deviation between the images of the matrix units.
    pub fn distance(&self, other: &Automorphism) -> f64 {
        unit_operators(&self.algebra)
            .iter()
            .map(|e| deviation(&self.apply(e), &other.apply(e)))
            .fold(0.0, f64::max)
    }
}

/// Action of a finite abelian group by automorphisms, tabulated over all
/// group elements in [`FiniteAbelianGroup::element_at`] order.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteAbelianGroup,
    algebra: MultiMatrixAlgebra,
    generator_images: Vec<Automorphism>,
    maps: Vec<Automorphism>,
}

impl GroupAction {
    /// Extends the generator images over the Cayley graph, rejecting them
    /// unless every relation of the group holds.
    pub fn new(group: &FiniteAbelianGroup, algebra: &MultiMatrixAlgebra, generator_images: Vec<Automorphism>) -> Result<Self> {
        if generator_images.len() != group.rank() {
            return Err(Error::Shape(format!(
                "group has {} generators, {} images given",
                group.rank(),
                generator_images.len()
            )));
        }
        if generator_images.iter().any(|a| a.algebra() != algebra) {
            return Err(Error::Shape("generator image acts on a different algebra".into()));
        }
        let mut maps: Vec<Option<Automorphism>> = vec![None; group.order()];
        let start = group.index_of(&group.identity());
        maps[start] = Some(Automorphism::identity(algebra));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            let here = maps[group.index_of(&g)].clone().expect("visited");
            for (i, image) in generator_images.iter().enumerate() {
                let h = group.add(&g, &group.generator(i));
                let candidate = image.compose(&here);
                let slot = &mut maps[group.index_of(&h)];
                match slot {
                    None => {
                        *slot = Some(candidate);
                        queue.push_back(h);
                    }
                    Some(existing) => {
                        let dev = existing.distance(&candidate);
                        if dev > TOL {
                            return Err(Error::Validation(format!(
                                "generator images do not define an action: two words for {:?} differ by {dev:e}",
                                h.0
                            )));
                        }
                    }
                }
            }
        }
        let maps = maps.into_iter().map(|m| m.expect("generators reach every element")).collect();
        Ok(Self { group: group.clone(), algebra: algebra.clone(), generator_images, maps })
    }

    pub fn trivial(group: &FiniteAbelianGroup, algebra: &MultiMatrixAlgebra) -> Self {
        let images = (0..group.rank()).map(|_| Automorphism::identity(algebra)).collect();
        Self::new(group, algebra, images).expect("trivial action")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn generator_images(&self) -> &[Automorphism] {
        &self.generator_images
    }

    pub fn automorphism(&self, g: &GroupElement) -> &Automorphism {
        &self.maps[self.group.index_of(g)]
    }

    pub fn automorphism_at(&self, index: usize) -> &Automorphism {
        &self.maps[index]
    }

    pub fn apply(&self, g: &GroupElement, a: &CMat) -> CMat {
        self.automorphism(g).apply(a)
    }

    /// The composite action `α ∘ ι` of the domain of `iota`.
    pub fn pullback(&self, iota: &GroupHom) -> Result<GroupAction> {
        if iota.codomain() != &self.group {
            return Err(Error::Shape("homomorphism does not land in the acting group".into()));
        }
        let images = iota.images().iter().map(|g| self.automorphism(g).clone()).collect();
        GroupAction::new(iota.domain(), &self.algebra, images)
    }

    /// Largest deviation of `α_g α_h = α_{g+h}` over all pairs.
    pub fn homomorphism_deviation(&self) -> f64 {
        let elems = self.group.elements();
        let mut worst = 0.0f64;
        for g in &elems {
            for h in &elems {
                let lhs = self.automorphism(g).compose(self.automorphism(h));
                worst = worst.max(lhs.distance(self.automorphism(&self.group.add(g, h))));
            }
        }
        worst
    }
}

/// Index tables of a finite abelian group in `element_at` order.
pub(crate) struct GroupTables {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    /// `chi[g][γ] = <g, γ>`, dual elements indexed like group elements.
    pub chi: Vec<Vec<Complex64>>,
}

impl GroupTables {
    pub fn new(group: &FiniteAbelianGroup) -> Self {
        let elems = group.elements();
        let order = elems.len();
        let add = elems
            .iter()
            .map(|a| elems.iter().map(|b| group.index_of(&group.add(a, b))).collect())
            .collect();
        let neg = elems.iter().map(|a| group.index_of(&group.neg(a))).collect();
        let chi = elems
            .iter()
            .map(|g| elems.iter().map(|gamma| pairing_unchecked(group, &g.0, &gamma.0)).collect())
            .collect();
        Self { order, add, neg, chi }
    }

    /// `λ_g` on `l^2` of the group: `e_x -> e_{x+g}`.
    pub fn shift(&self, g: usize) -> CMat {
        let mut m = zeros(self.order);
        for x in 0..self.order {
            m[(self.add[x][g], x)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Multiplication by `f` on `l^2` of the group.
    pub fn multiplication(&self, f: impl Fn(usize) -> Complex64) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_fn(self.order, |i, _| f(i)))
    }

    /// Unitary Fourier transform `l^2(G) -> l^2(Ĝ)`, `[γ, g] = |G|^{-1/2} conj<g,γ>`.
    pub fn fourier_unitary(&self) -> CMat {
        let s = 1.0 / (self.order as f64).sqrt();
        CMat::from_fn(self.order, self.order, |gamma, g| self.chi[g][gamma].conj() * s)
    }
}

/// Finite Arveson projection `E_γ(a) = |G|^{-1} sum_g <g,γ> α_g(a)`.
pub fn arveson_projection(action: &GroupAction, gamma_index: usize, a: &CMat) -> CMat {
    let t = GroupTables::new(action.group());
    arveson_with(&t, action, gamma_index, a)
}

pub(crate) fn arveson_with(t: &GroupTables, action: &GroupAction, gamma: usize, a: &CMat) -> CMat {
    let mut acc = zeros(a.nrows());
    for g in 0..t.order {
        acc += action.automorphism_at(g).apply(a) * t.chi[g][gamma];
    }
    acc / Complex64::new(t.order as f64, 0.0)
}

/// The crossed product `M ⋊_α G` realized on `L^2(G) ⊗ H` (index
/// `g * dim H + h`), generated by `λ_g ⊗ 1` and `π_α(a)`.
#[derive(Clone, Debug)]
pub struct FiniteCrossedProduct {
    action: GroupAction,
    lambdas: Vec<CMat>,
    units: Vec<CMat>,
    generators: Vec<CMat>,
    span: FSpan,
}

pub fn finite_crossed_product(action: &GroupAction) -> FiniteCrossedProduct {
    let t = GroupTables::new(action.group());
    let d = action.algebra().hilbert_dim();
    let lambdas: Vec<CMat> = (0..t.order).map(|g| kron(&t.shift(g), &eye(d))).collect();
    let units = unit_operators(action.algebra());
    let mut generators: Vec<CMat> = Vec::new();
    for i in 0..action.group().rank() {
        let g = action.group().index_of(&action.group().generator(i));
        generators.push(lambdas[g].clone());
        generators.push(lambdas[t.neg[g]].clone());
    }
    generators.extend(units.iter().map(|e| covariant_pi(&t, action, e)));
    let generators = with_adjoints(&generators);
    let span = span_closure(t.order * d, &generators);
    FiniteCrossedProduct { action: action.clone(), lambdas, units, generators, span }
}

/// `π_α(a) = sum_h e_hh ⊗ α_{-h}(a)`.
pub(crate) fn covariant_pi(t: &GroupTables, action: &GroupAction, a: &CMat) -> CMat {
    let d = a.nrows();
    let mut m = zeros(t.order * d);
    for h in 0..t.order {
        let block = action.automorphism_at(t.neg[h]).apply(a);
        m.view_mut((h * d, h * d), (d, d)).copy_from(&block);
    }
    m
}

impl FiniteCrossedProduct {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn dimension(&self) -> usize {
        self.span.dimension()
    }

    /// `|G| dim M`, the dimension forced by linear independence of `λ_g π(a)`.
    pub fn expected_dimension(&self) -> usize {
        self.action.group().order() * self.action.algebra().dimension()
    }

    pub fn span(&self) -> &FSpan {
        &self.span
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }

    pub fn lambda(&self, g: &GroupElement) -> &CMat {
        &self.lambdas[self.action.group().index_of(g)]
    }

    pub fn pi(&self, a: &CMat) -> CMat {
        covariant_pi(&GroupTables::new(self.action.group()), &self.action, a)
    }

    /// Worst deviation of `λ_g π(a) λ_g* = π(α_g(a))` over all `g` and
    /// matrix units `a`.
    pub fn covariance_deviation(&self) -> f64 {
        let t = GroupTables::new(self.action.group());
        let mut worst = 0.0f64;
        for (g, lambda) in self.lambdas.iter().enumerate() {
            for e in &self.units {
                let lhs = conjugate(lambda, &covariant_pi(&t, &self.action, e));
                let rhs = covariant_pi(&t, &self.action, &self.action.automorphism_at(g).apply(e));
                worst = worst.max(deviation(&lhs, &rhs));
            }
        }
        worst
    }

    pub fn center_dimension(&self) -> usize {
        center_dimension(&self.span, &self.generators)
    }

    pub fn is_factor(&self) -> bool {
        self.center_dimension() == 1
    }
}

/// Conjugates the crossed product by `F ⊗ 1` and compares it with the
/// picture generated by `M_f ⊗ 1` and `λ_γ ⊗ a` for `a` in the spectral
/// subspace of `γ`, including the transport of the dual action.
pub fn fourier_picture_check(action: &GroupAction) -> Vec<IdentityRecord> {
    let t = GroupTables::new(action.group());
    let d = action.algebra().hilbert_dim();
    let n = t.order;
    let f = kron(&t.fourier_unitary(), &eye(d));
    let units = unit_operators(action.algebra());
    let shifts: Vec<CMat> = (0..n).map(|g| t.shift(g)).collect();
    let mut records = Vec::new();

    let lambda_dev = (0..n)
        .map(|g| {
            let lhs = conjugate(&f, &kron(&shifts[g], &eye(d)));
            let rhs = kron(&t.multiplication(|gamma| t.chi[g][gamma].conj()), &eye(d));
            deviation(&lhs, &rhs)
        })
        .fold(0.0, f64::max);
    records.push(IdentityRecord::within("translations become character multiplications", lambda_dev, TOL));

    let pi_dev = units
        .iter()
        .map(|e| {
            let lhs = conjugate(&f, &covariant_pi(&t, action, e));
            let mut rhs = zeros(n * d);
            for gamma in 0..n {
                rhs += kron(&shifts[gamma], &arveson_with(&t, action, gamma, e));
            }
            deviation(&lhs, &rhs)
        })
        .fold(0.0, f64::max);
    records.push(IdentityRecord::within("covariant representation becomes graded shifts", pi_dev, TOL));

    let mut conjugated: Vec<CMat> = Vec::new();
    for g in 0..n {
        conjugated.push(conjugate(&f, &kron(&shifts[g], &eye(d))));
    }
    conjugated.extend(units.iter().map(|e| conjugate(&f, &covariant_pi(&t, action, e))));
    let mut fourier_side: Vec<CMat> = Vec::new();
    for gamma in 0..n {
        fourier_side.push(kron(&t.multiplication(|x| if x == gamma { 1.0.into() } else { 0.0.into() }), &eye(d)));
        let bucket = FSpan::of(d, &units.iter().map(|e| arveson_with(&t, action, gamma, e)).collect::<Vec<_>>());
        fourier_side.extend(bucket.basis().iter().map(|b| kron(&shifts[gamma], b)));
    }
    let a = span_closure(n * d, &with_adjoints(&conjugated));
    let b = span_closure(n * d, &with_adjoints(&fourier_side));
    let gen_dev = a.containment_deviation(&b).max(b.containment_deviation(&a));
    records.push(IdentityRecord::within("generated algebras coincide after Fourier conjugation", gen_dev, TOL));

    let mut dual_dev = 0.0f64;
    for gamma in 0..n {
        let m = kron(&t.multiplication(|x| t.chi[x][gamma].conj()), &eye(d));
        let lhs = conjugate(&f, &m);
        dual_dev = dual_dev.max(deviation(&lhs, &kron(&shifts[t.neg[gamma]], &eye(d))));
        for g in 0..n {
            let lg = kron(&shifts[g], &eye(d));
            let expected = &lg * t.chi[g][gamma].conj();
            dual_dev = dual_dev.max(deviation(&conjugate(&m, &lg), &expected));
        }
        for e in &units {
            let p = covariant_pi(&t, action, e);
            dual_dev = dual_dev.max(deviation(&conjugate(&m, &p), &p));
        }
    }
    records.push(IdentityRecord::within("dual action becomes dual translation", dual_dev, TOL));
    records
}

/// Builds `(M ⋊ G) ⋊ Ĝ` on `l^2(Ĝ) ⊗ L^2(G) ⊗ H` and compares it, after an
/// explicit unitary, with `B(L^2(G)) ⊗ π_α(M) ≅ M ⊗ M_{|G|}`.
pub fn takesaki_duality_check(action: &GroupAction) -> Vec<IdentityRecord> {
    let t = GroupTables::new(action.group());
    let d = action.algebra().hilbert_dim();
    let n = t.order;
    let side = n * n * d;
    let units = unit_operators(action.algebra());
    let idg = eye(n);
    let idd = eye(d);

    // generators: λ_γ ⊗ 1 ⊗ 1, sum_δ e_δδ ⊗ <g,δ> λ_g ⊗ 1, 1 ⊗ π_α(a)
    let mut gens: Vec<CMat> = Vec::new();
    for i in 0..action.group().rank() {
        let g = action.group().index_of(&action.group().generator(i));
        for x in [g, t.neg[g]] {
            gens.push(kron(&kron(&t.shift(x), &idg), &idd));
            let phase = t.multiplication(|delta| t.chi[x][delta]);
            gens.push(kron(&kron(&phase, &t.shift(x)), &idd));
        }
    }
    for e in &units {
        gens.push(kron(&idg, &covariant_pi(&t, action, e)));
    }
    let gens = with_adjoints(&gens);
    let double = span_closure(side, &gens);
    let expected = n * n * action.algebra().dimension();
    let mut records = vec![IdentityRecord::within(
        "double crossed product has dimension |G|^2 dim M",
        (double.dimension() as f64 - expected as f64).abs(),
        0.0,
    )];

    let w = duality_unitary(&t, d);
    records.push(IdentityRecord::within(
        "intertwiner is unitary",
        deviation(&(w.adjoint() * &w), &eye(side)),
        TOL,
    ));
    let moved = span_closure(side, &gens.iter().map(|g| conjugate(&w, g)).collect::<Vec<_>>());
    let mut target_items = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let euv = crate::operators::matrix_unit(n, u, v);
            for e in &units {
                target_items.push(kron(&euv, &covariant_pi(&t, action, e)));
            }
        }
    }
    let target = FSpan::of(side, &target_items);
    records.push(IdentityRecord::within(
        "conjugated double crossed product lies in B(L2(G)) tensor the crossed copy of M",
        moved.containment_deviation(&target),
        TOL,
    ));
    records.push(IdentityRecord::within(
        "B(L2(G)) tensor the crossed copy of M lies in the conjugated double crossed product",
        target.containment_deviation(&moved),
        TOL,
    ));
    records
}

/// `W = Q P Φ V` with `V = conj<x,δ>`, `Φ` the inverse Fourier transform in
/// the first leg, `(Pζ)(u,h) = ζ(u-h,h)` and `(Qη)(u,w) = η(u,w+u)`.
fn duality_unitary(t: &GroupTables, d: usize) -> CMat {
    let n = t.order;
    let idd = eye(d);
    let mut v = zeros(n * n);
    for delta in 0..n {
        for x in 0..n {
            v[(delta * n + x, delta * n + x)] = t.chi[x][delta].conj();
        }
    }
    let phi = kron(&t.fourier_unitary().transpose(), &eye(n));
    let mut p = zeros(n * n);
    let mut q = zeros(n * n);
    for u in 0..n {
        for h in 0..n {
            p[(u * n + h, t.add[u][t.neg[h]] * n + h)] = 1.0.into();
            q[(u * n + h, u * n + t.add[h][u])] = 1.0.into();
        }
    }
    kron(&(q * p * phi * v), &idd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn z2_on_m2() -> GroupAction {
        let m2 = MultiMatrixAlgebra::new(vec![2]).unwrap();
        let u = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-1.0)]));
        let a = Automorphism::inner(&m2, vec![u]).unwrap();
        GroupAction::new(&FiniteAbelianGroup::cyclic(2).unwrap(), &m2, vec![a]).unwrap()
    }

    fn z2_flip() -> GroupAction {
        let c2 = MultiMatrixAlgebra::new(vec![1, 1]).unwrap();
        let a = Automorphism::new(&c2, vec![1, 0], vec![eye(1), eye(1)]).unwrap();
        GroupAction::new(&FiniteAbelianGroup::cyclic(2).unwrap(), &c2, vec![a]).unwrap()
    }

    fn z4_rotation() -> GroupAction {
        let c4 = MultiMatrixAlgebra::new(vec![1; 4]).unwrap();
        let a = Automorphism::new(&c4, vec![1, 2, 3, 0], vec![eye(1); 4]).unwrap();
        GroupAction::new(&FiniteAbelianGroup::cyclic(4).unwrap(), &c4, vec![a]).unwrap()
    }

    #[test]
    fn crossed_product_dimensions() {
        let c1 = MultiMatrixAlgebra::new(vec![1]).unwrap();
        let triv = GroupAction::trivial(&FiniteAbelianGroup::cyclic(2).unwrap(), &c1);
        let cp = finite_crossed_product(&triv);
        assert_eq!(cp.dimension(), 2);
        let cp = finite_crossed_product(&z2_on_m2());
        assert_eq!(cp.dimension(), 8);
        assert!(cp.covariance_deviation() < TOL);
        let cp = finite_crossed_product(&z2_flip());
        assert_eq!(cp.dimension(), 4);
        assert_eq!(cp.center_dimension(), 1);
    }

    #[test]
    fn inconsistent_generator_is_rejected() {
        let c3 = MultiMatrixAlgebra::new(vec![1, 1, 1]).unwrap();
        let a = Automorphism::new(&c3, vec![1, 2, 0], vec![eye(1); 3]).unwrap();
        let err = GroupAction::new(&FiniteAbelianGroup::cyclic(2).unwrap(), &c3, vec![a]);
        assert!(matches!(err, Err(Error::Validation(_))));
    }

    #[test]
    fn fourier_picture_examples() {
        let c1 = MultiMatrixAlgebra::new(vec![1]).unwrap();
        let triv = GroupAction::trivial(&FiniteAbelianGroup::cyclic(3).unwrap(), &c1);
        for action in [triv, z2_on_m2(), z4_rotation()] {
            let r = fourier_picture_check(&action);
            assert_eq!(r.len(), 4);
            assert!(all_pass(&r), "{r:?}");
        }
    }

    #[test]
    fn duality_examples() {
        let c1 = MultiMatrixAlgebra::new(vec![1]).unwrap();
        let triv = GroupAction::trivial(&FiniteAbelianGroup::cyclic(2).unwrap(), &c1);
        for action in [triv, z2_on_m2(), z2_flip()] {
            let r = takesaki_duality_check(&action);
            assert!(all_pass(&r), "{r:?}");
        }
    }
}
