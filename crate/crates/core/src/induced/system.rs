use crate::crossed::GroupAction;
use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement, GroupHom};
use crate::operators::{deviation, eye, kron, matrix_unit, unit_operators, zeros, CMat, FSpan, TOL};
use crate::report::IdentityRecord;

/// The subgroup of `K` generated by independent elements, as an injective
/// homomorphism from the product of the cyclic groups they generate.
pub fn subgroup_from_generators(k: &FiniteAbelianGroup, generators: &[GroupElement]) -> Result<GroupHom> {
    for g in generators {
        if !k.contains(g) {
            return Err(Error::Validation(format!("{:?} is not an element of K", g.0)));
        }
    }
    let orders = generators.iter().map(|g| k.element_order(g)).collect();
    let h = FiniteAbelianGroup::new(orders)?;
    let inclusion = GroupHom::new(h, k.clone(), generators.to_vec())?;
    if !inclusion.is_injective() {
        return Err(Error::Validation("subgroup generators are not independent".into()));
    }
    Ok(inclusion)
}

/// `M = {f : K -> N | β_h f = f}` with `(β_h f)(k) = α_h(f(k + h))`,
/// realized as block-diagonal operators on `l^2(K) ⊗ H`, together with the
/// translations `(τ_k f)(k') = f(k' - k)`.
#[derive(Clone, Debug)]
pub struct InducedSystem {
    k: FiniteAbelianGroup,
    inclusion: GroupHom,
    action: GroupAction,
    basis: FSpan,
}

pub fn induce(k: &FiniteAbelianGroup, inclusion: &GroupHom, action: &GroupAction) -> Result<InducedSystem> {
    if inclusion.codomain() != k || inclusion.domain() != action.group() {
        return Err(Error::Shape("subgroup inclusion does not match K and the acting group".into()));
    }
    if !inclusion.is_injective() {
        return Err(Error::Validation("subgroup inclusion is not injective".into()));
    }
    let dev = action.homomorphism_deviation();
    if dev > TOL {
        return Err(Error::Validation(format!("action is not a homomorphism (deviation {dev:e})")));
    }
    let mut system = InducedSystem { k: k.clone(), inclusion: inclusion.clone(), action: action.clone(), basis: FSpan::new(0) };
    let n = k.order();
    let d = action.algebra().hilbert_dim();
    let mut basis = FSpan::new(n * d);
    for x in 0..n {
        for e in unit_operators(action.algebra()) {
            basis.insert(&system.average(&kron(&matrix_unit(n, x, x), &e)));
        }
    }
    system.basis = basis;
    Ok(system)
}

impl InducedSystem {
    pub fn k(&self) -> &FiniteAbelianGroup {
        &self.k
    }

    pub fn inclusion(&self) -> &GroupHom {
        &self.inclusion
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn basis(&self) -> &FSpan {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    /// `dim N |K| / |H|`.
    pub fn expected_dimension(&self) -> usize {
        self.action.algebra().dimension() * self.k.order() / self.action.group().order()
    }

    fn d(&self) -> usize {
        self.action.algebra().hilbert_dim()
    }

    fn block(&self, f: &CMat, x: usize) -> CMat {
        let d = self.d();
        f.view((x * d, x * d), (d, d)).into_owned()
    }

    fn assemble(&self, blocks: impl Fn(usize) -> CMat) -> CMat {
        let d = self.d();
        let n = self.k.order();
        let mut out = zeros(n * d);
        for x in 0..n {
            out.view_mut((x * d, x * d), (d, d)).copy_from(&blocks(x));
        }
        out
    }

    /// `β_h` for `h` in the abstract subgroup.
    pub fn beta(&self, h: &GroupElement, f: &CMat) -> CMat {
        let shift = self.inclusion.apply(h);
        let auto = self.action.automorphism(h);
        self.assemble(|x| {
            let y = self.k.index_of(&self.k.add(&self.k.element_at(x), &shift));
            auto.apply(&self.block(f, y))
        })
    }

    /// `|H|^{-1} sum_h β_h f`, the projection onto the fixed points.
    pub fn average(&self, f: &CMat) -> CMat {
        let elems = self.action.group().elements();
        let mut acc = zeros(f.nrows());
        for h in &elems {
            acc += self.beta(h, f);
        }
        acc / nalgebra::Complex::new(elems.len() as f64, 0.0)
    }

    pub fn tau(&self, k: &GroupElement, f: &CMat) -> CMat {
        self.assemble(|x| {
            let y = self.k.index_of(&self.k.sub(&self.k.element_at(x), k));
            self.block(f, y)
        })
    }

    pub fn report(&self) -> Vec<IdentityRecord> {
        let basis = self.basis.basis();
        let h_elems = self.action.group().elements();
        let k_elems = self.k.elements();
        let fixed = basis
            .iter()
            .flat_map(|b| h_elems.iter().map(move |h| deviation(&self.beta(h, b), b)))
            .fold(0.0, f64::max);
        let invariant = basis
            .iter()
            .flat_map(|b| k_elems.iter().map(move |k| self.basis.residual(&self.tau(k, b))))
            .fold(0.0, f64::max);
        let mut hom = 0.0f64;
        for b in &basis {
            for k in &k_elems {
                for l in &k_elems {
                    hom = hom.max(deviation(&self.tau(k, &self.tau(l, b)), &self.tau(&self.k.add(k, l), b)));
                }
            }
        }
        let mut closed = 0.0f64;
        for b in &basis {
            closed = closed.max(self.basis.residual(&b.adjoint()));
            for c in &basis {
                closed = closed.max(self.basis.residual(&(b * c)));
            }
        }
        closed = closed.max(self.basis.residual(&eye(self.basis.side())));
        vec![
            IdentityRecord::within(
                "fixed-point algebra has dimension dim N |K| / |H|",
                (self.dimension() as f64 - self.expected_dimension() as f64).abs(),
                0.0,
            ),
            IdentityRecord::within("fixed-point basis is invariant under the twisted subgroup action", fixed, TOL),
            IdentityRecord::within("fixed-point algebra is a unital *-subalgebra", closed, TOL),
            IdentityRecord::within("translations leave the fixed-point algebra invariant", invariant, TOL),
            IdentityRecord::within("translations compose as a homomorphism", hom, TOL),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiMatrixAlgebra;
    use crate::crossed::Automorphism;
    use crate::report::all_pass;

    fn flip() -> (MultiMatrixAlgebra, Automorphism) {
        let c2 = MultiMatrixAlgebra::new(vec![1, 1]).unwrap();
        let a = Automorphism::new(&c2, vec![1, 0], vec![eye(1), eye(1)]).unwrap();
        (c2, a)
    }

    #[test]
    fn index_two_subgroup_with_flip() {
        let k = FiniteAbelianGroup::cyclic(4).unwrap();
        let inc = subgroup_from_generators(&k, &[k.element(&[2]).unwrap()]).unwrap();
        let (c2, a) = flip();
        let action = GroupAction::new(inc.domain(), &c2, vec![a]).unwrap();
        let sys = induce(&k, &inc, &action).unwrap();
        assert_eq!(sys.dimension(), 4);
        assert!(all_pass(&sys.report()));
    }

    #[test]
    fn whole_group_and_trivial_subgroup() {
        let k = FiniteAbelianGroup::cyclic(2).unwrap();
        let (c2, a) = flip();
        let inc = subgroup_from_generators(&k, &[k.generator(0)]).unwrap();
        let action = GroupAction::new(inc.domain(), &c2, vec![a]).unwrap();
        let sys = induce(&k, &inc, &action).unwrap();
        assert_eq!(sys.dimension(), 2);
        assert!(all_pass(&sys.report()));

        let k3 = FiniteAbelianGroup::cyclic(3).unwrap();
        let inc = subgroup_from_generators(&k3, &[]).unwrap();
        let action = GroupAction::trivial(inc.domain(), &c2);
        let sys = induce(&k3, &inc, &action).unwrap();
        assert_eq!(sys.dimension(), 6);
        assert!(all_pass(&sys.report()));
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let k = FiniteAbelianGroup::cyclic(4).unwrap();
        let gens = [k.element(&[1]).unwrap(), k.element(&[2]).unwrap()];
        assert!(matches!(subgroup_from_generators(&k, &gens), Err(Error::Validation(_))));
    }
}
