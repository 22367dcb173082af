use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Product of cyclic groups `Z_{n_1} x ... x Z_{n_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

/// Element of a [`FiniteAbelianGroup`], one reduced coordinate per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

/// Character of a finite abelian group, written in the same coordinates as
/// the group itself (a finite abelian group is isomorphic to its dual).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualElement(pub Vec<u64>);

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if let Some(bad) = invariant_factors.iter().find(|&&n| n < 2) {
            return Err(Error::Validation(format!(
                "invariant factor {bad} is smaller than 2"
            )));
        }
        Ok(Self { invariant_factors })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self { invariant_factors: Vec::new() }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> usize {
        self.invariant_factors.iter().product::<u64>() as usize
    }

    /// The dual group, in the coordinates used by [`DualElement`].
    pub fn dual(&self) -> FiniteAbelianGroup {
        self.clone()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.invariant_factors[i];
        GroupElement(c)
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    /// Element with the given mixed-radix index (last factor varies fastest).
    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        for (slot, &n) in c.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        GroupElement(c)
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.invariant_factors)
            .fold(0, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn dual_elements(&self) -> Vec<DualElement> {
        self.elements().into_iter().map(|g| DualElement(g.0)).collect()
    }

    pub fn dual_index_of(&self, gamma: &DualElement) -> usize {
        self.index_of(&GroupElement(gamma.0.clone()))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.invariant_factors)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &n)| ((x as i128 * k as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        )
    }

    pub fn dual_add(&self, a: &DualElement, b: &DualElement) -> DualElement {
        DualElement(self.add(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    pub fn dual_neg(&self, a: &DualElement) -> DualElement {
        DualElement(self.neg(&GroupElement(a.0.clone())).0)
    }

    /// Order of `g`: the lcm over coordinates of `n_i / gcd(g_i, n_i)`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.invariant_factors)
            .map(|(&c, &n)| n / c.gcd(&n))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.invariant_factors).all(|(&c, &n)| c < n)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::Shape(format!(
                "expected {} coordinates, got {len}",
                self.rank()
            )));
        }
        Ok(())
    }

    fn check_element(&self, g: &[u64]) -> Result<()> {
        self.check_len(g.len())?;
        if g.iter().zip(&self.invariant_factors).any(|(&c, &n)| c >= n) {
            return Err(Error::Shape(format!("coordinates {g:?} are not reduced")));
        }
        Ok(())
    }
}

/// `exp(2 pi i sum_j g_j gamma_j / n_j)`, with the phase reduced exactly
/// before the exponential is taken.
pub fn pairing(group: &FiniteAbelianGroup, g: &GroupElement, gamma: &DualElement) -> Result<Complex64> {
    group.check_element(&g.0)?;
    group.check_element(&gamma.0)?;
    Ok(pairing_unchecked(group, &g.0, &gamma.0))
}

pub(crate) fn pairing_unchecked(group: &FiniteAbelianGroup, g: &[u64], gamma: &[u64]) -> Complex64 {
    let l = group.invariant_factors.iter().fold(1u64, |acc, &n| acc.lcm(&n));
    let mut phase: u128 = 0;
    for ((&x, &y), &n) in g.iter().zip(gamma).zip(&group.invariant_factors) {
        phase += (x as u128 * y as u128 % n as u128) * (l / n) as u128;
    }
    let k = (phase % l as u128) as u64;
    // exact values at the quarter turns keep products of characters clean
    if (4 * k).is_multiple_of(l) {
        return match 4 * k / l {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / l as f64)
}

/// Fourier-Plancherel transform from `L^2(G)` with normalized Haar measure to
/// `l^2` of the dual with counting measure:
/// `(F xi)(gamma) = |G|^{-1} sum_g conj<g,gamma> xi(g)`.
///
/// Both vectors are indexed by [`FiniteAbelianGroup::element_at`] order.
pub fn fourier_plancherel(group: &FiniteAbelianGroup, xi: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = group.order();
    if xi.len() != n {
        return Err(Error::Shape(format!("function has {} values, group has order {n}", xi.len())));
    }
    let elems = group.elements();
    let scale = 1.0 / n as f64;
    Ok(elems
        .iter()
        .map(|gamma| {
            elems
                .iter()
                .zip(xi)
                .map(|(g, v)| pairing_unchecked(group, &g.0, &gamma.0).conj() * v)
                .sum::<Complex64>()
                * scale
        })
        .collect())
}

/// Inverse of [`fourier_plancherel`]: `xi(g) = sum_gamma <g,gamma> (F xi)(gamma)`.
pub fn fourier_inverse(group: &FiniteAbelianGroup, hat: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = group.order();
    if hat.len() != n {
        return Err(Error::Shape(format!("function has {} values, group has order {n}", hat.len())));
    }
    let elems = group.elements();
    Ok(elems
        .iter()
        .map(|g| {
            elems
                .iter()
                .zip(hat)
                .map(|(gamma, v)| pairing_unchecked(group, &g.0, &gamma.0) * v)
                .sum()
        })
        .collect())
}

/// Matrix of [`fourier_plancherel`] acting on coordinate vectors:
/// rows are characters, columns group elements.
pub fn fourier_matrix(group: &FiniteAbelianGroup) -> DMatrix<Complex64> {
    let elems = group.elements();
    let n = elems.len();
    let scale = 1.0 / n as f64;
    DMatrix::from_fn(n, n, |r, c| pairing_unchecked(group, &elems[c].0, &elems[r].0).conj() * scale)
}

/// Homomorphism between finite abelian groups, given by the images of the
/// domain's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    domain: FiniteAbelianGroup,
    codomain: FiniteAbelianGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(
        domain: FiniteAbelianGroup,
        codomain: FiniteAbelianGroup,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::Validation(format!(
                "{} generator images given for a domain of rank {}",
                images.len(),
                domain.rank()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if !codomain.contains(img) {
                return Err(Error::Validation(format!("image {img:?} is not in the codomain")));
            }
            let n = domain.invariant_factors[i];
            if !n.is_multiple_of(codomain.element_order(img)) {
                return Err(Error::Validation(format!(
                    "generator {i} has order {n} but its image has order {}",
                    codomain.element_order(img)
                )));
            }
        }
        Ok(Self { domain, codomain, images })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        let images = (0..group.rank()).map(|i| group.generator(i)).collect();
        Self { domain: group.clone(), codomain: group.clone(), images }
    }

    pub fn domain(&self) -> &FiniteAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteAbelianGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        g.0.iter().zip(&self.images).fold(self.codomain.identity(), |acc, (&c, img)| {
            self.codomain.add(&acc, &self.codomain.scale(c as i64, img))
        })
    }

    pub fn is_surjective(&self) -> bool {
        let image: std::collections::BTreeSet<_> =
            self.domain.elements().iter().map(|g| self.apply(g)).collect();
        image.len() == self.codomain.order()
    }

    pub fn is_injective(&self) -> bool {
        let id = self.codomain.identity();
        self.domain.elements().iter().filter(|g| self.apply(g) == id).count() == 1
    }
}

/// The dual homomorphism `Ĝ -> Ê` characterized by `<t, ι̂(γ)> = <ι(t), γ>`.
pub fn dual_hom(iota: &GroupHom) -> Result<GroupHom> {
    let e = &iota.domain;
    let g = &iota.codomain;
    for (i, img) in iota.images.iter().enumerate() {
        if !g.contains(img) || !e.invariant_factors[i].is_multiple_of(g.element_order(img)) {
            return Err(Error::Validation(format!("generator image {i} is invalid")));
        }
    }
    let l = g.invariant_factors.iter().fold(1u64, |acc, &n| acc.lcm(&n));
    let images = (0..g.rank())
        .map(|j| {
            let gamma = g.generator(j);
            let coords = iota
                .images
                .iter()
                .zip(&e.invariant_factors)
                .map(|(img, &n_i)| {
                    // <iota(e_i), gamma> = exp(2 pi i k / l); need c with c / n_i = k / l
                    let k: u128 = img
                        .0
                        .iter()
                        .zip(&gamma.0)
                        .zip(&g.invariant_factors)
                        .map(|((&x, &y), &m)| (x as u128 * y as u128 % m as u128) * (l / m) as u128)
                        .sum::<u128>()
                        % l as u128;
                    let num = k * n_i as u128;
                    if !num.is_multiple_of(l as u128) {
                        return Err(Error::Validation(
                            "pairing identity has no solution; homomorphism is invalid".into(),
                        ));
                    }
                    Ok(((num / l as u128) % n_i as u128) as u64)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(GroupElement(coords))
        })
        .collect::<Result<Vec<_>>>()?;
    GroupHom::new(g.dual(), e.dual(), images)
}
