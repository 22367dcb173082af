//! Truncated Powers models: tensor powers of a weighted `M_2`, products of
//! two of them, and the spectral-subspace structure generated by a single
//! partial isometry.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{centralizer, exact_rank, tensor, tensor_unit, AlgebraElement, MatrixUnit, MultiMatrixAlgebra, Weight};
use crate::error::{Error, Result};
use crate::groups::{lattice_basis, ratio_membership, RatioGroupElement};
use crate::scalar::{format_rational, Rational};
use crate::spectral::SpectralGrading;
use crate::structure::SCalculus;

/// `k`-fold tensor power of `(M_2, diag(λ, 1 - λ))` with `λ = (1 + μ)⁻¹`.
#[derive(Clone, Debug)]
pub struct PowersTruncation {
    pub mu: Rational,
    pub level: usize,
    pub algebra: MultiMatrixAlgebra,
    pub weight: Weight,
}

pub fn powers_truncation(mu: &Rational, level: usize) -> Result<PowersTruncation> {
    if *mu <= Rational::zero() || *mu >= Rational::one() {
        return Err(Error::Domain(format!("μ = {} must lie strictly between 0 and 1", format_rational(mu))));
    }
    if level == 0 {
        return Err(Error::Domain("truncation level must be at least 1".into()));
    }
    let lambda = (Rational::one() + mu).recip();
    let m2 = MultiMatrixAlgebra::new(vec![2])?;
    let w2 = Weight::new(&m2, vec![vec![lambda.clone(), Rational::one() - &lambda]])?;
    let (mut algebra, mut weight) = (m2.clone(), w2.clone());
    for _ in 1..level {
        (algebra, weight) = tensor(&algebra, &weight, &m2, &w2)?;
    }
    Ok(PowersTruncation { mu: mu.clone(), level, algebra, weight })
}

/// `λ^{k-j} (1-λ)^j` repeated `C(k, j)` times, in ascending `j`.
pub fn binomial_eigenvalues(mu: &Rational, level: usize) -> Vec<(Rational, usize)> {
    let lambda = (Rational::one() + mu).recip();
    let rest = Rational::one() - &lambda;
    (0..=level)
        .map(|j| {
            let value = num_traits::pow(lambda.clone(), level - j) * num_traits::pow(rest.clone(), j);
            (value, binomial(level, j))
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Tensor product of several Powers truncations at a common level, with
/// the factor gradings kept for the product-of-subspaces comparison.
#[derive(Clone, Debug)]
pub struct TensorModel {
    pub factors: Vec<PowersTruncation>,
    pub algebra: MultiMatrixAlgebra,
    pub weight: Weight,
    pub grading: SpectralGrading,
    factor_gradings: Vec<SpectralGrading>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub spectrum: Vec<RatioGroupElement>,
    pub centralizer_blocks: Vec<usize>,
    pub gamma_rank: usize,
    pub gamma_generators: Vec<RatioGroupElement>,
    pub independent: bool,
    pub product_subspaces_match: bool,
    pub product_subspace_witnesses: Vec<String>,
    pub residuals: Vec<SubspaceGeneration>,
}

/// The product of Powers truncations for multiplicatively independent `μ_i`.
pub fn tensor_model(mus: &[Rational], level: usize) -> Result<TensorModel> {
    if mus.is_empty() {
        return Err(Error::Precondition("at least one parameter is required".into()));
    }
    let ratios = mus.iter().map(RatioGroupElement::from_rational).collect::<Result<Vec<_>>>()?;
    if lattice_basis(&ratios).len() != ratios.len() {
        return Err(Error::Precondition(format!(
            "parameters {} are multiplicatively dependent",
            mus.iter().map(format_rational).collect::<Vec<_>>().join(", ")
        )));
    }
    let factors = mus.iter().map(|mu| powers_truncation(mu, level)).collect::<Result<Vec<_>>>()?;
    let mut algebra = factors[0].algebra.clone();
    let mut weight = factors[0].weight.clone();
    for f in &factors[1..] {
        (algebra, weight) = tensor(&algebra, &weight, &f.algebra, &f.weight)?;
    }
    let grading = SpectralGrading::build(&algebra, &weight)?;
    let factor_gradings = factors.iter().map(|f| SpectralGrading::build(&f.algebra, &f.weight)).collect::<Result<_>>()?;
    Ok(TensorModel { factors, algebra, weight, grading, factor_gradings })
}

pub fn two_parameter_model(mu1: &Rational, mu2: &Rational, level: usize) -> Result<TensorModel> {
    tensor_model(&[mu1.clone(), mu2.clone()], level)
}

impl TensorModel {
    /// Witnesses against each spectral subspace of the product being spanned
    /// by tensor products of factor subspaces.
    pub fn product_subspace_violations(&self) -> Vec<String> {
        let mut current = self.factor_gradings[0].clone();
        let mut out = Vec::new();
        for (f, fg) in self.factors.iter().zip(&self.factor_gradings).skip(1) {
            let (algebra, weight) = tensor(current.algebra(), current.weight(), &f.algebra, &f.weight)
                .expect("factors tensor together");
            let product = SpectralGrading::build(&algebra, &weight).expect("product weight is faithful");
            out.extend(tensor_subspace_violations(&current, fg, &product));
            current = product;
        }
        if current != self.grading {
            out.push("the iterated product grading differs from the model grading".into());
        }
        out
    }

    /// No relation `prod μ_i^{n_i} = 1` with `|n_i| <= bound`, other than the
    /// trivial one, found by the membership oracle.
    pub fn independent_within(&self, bound: i64) -> bool {
        let ratios: Vec<RatioGroupElement> =
            self.factors.iter().map(|f| RatioGroupElement::from_rational(&f.mu).expect("valid parameter")).collect();
        for (i, r) in ratios.iter().enumerate() {
            let others: Vec<_> = ratios.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            for n in 1..=bound {
                if ratio_membership(&r.pow(n), &others).is_some() {
                    return false;
                }
            }
        }
        true
    }

    pub fn report(&self) -> Result<DemoReport> {
        let witnesses = self.product_subspace_violations();
        let residuals = self.factors.iter().map(|f| subspace_generation(&f.mu, f.level)).collect::<Result<_>>()?;
        Ok(DemoReport {
            spectrum: self.grading.point_spectrum().into_iter().collect(),
            centralizer_blocks: centralizer(&self.algebra, &self.weight).block_dims(),
            gamma_rank: self.grading.gamma_rank(),
            gamma_generators: self.grading.generators().to_vec(),
            independent: self.independent_within(self.factors[0].level as i64 * 2),
            product_subspaces_match: witnesses.is_empty(),
            product_subspace_witnesses: witnesses,
            residuals,
        })
    }
}

/// Compares each spectral subspace of `M1 ⊗ M2` with the span of
/// `e ⊗ f` over units `e`, `f` of degrees `γ1`, `γ2` with `γ1γ2 = γ`.
pub fn tensor_subspace_violations(g1: &SpectralGrading, g2: &SpectralGrading, product: &SpectralGrading) -> Vec<String> {
    let mut generated: BTreeMap<RatioGroupElement, BTreeSet<MatrixUnit>> = BTreeMap::new();
    for (a, us1) in g1.buckets() {
        for (b, us2) in g2.buckets() {
            let slot = generated.entry(a.mul(b)).or_default();
            for &e in us1 {
                for &f in us2 {
                    slot.insert(tensor_unit(g2.algebra(), e, f));
                }
            }
        }
    }
    let labels: BTreeSet<_> = generated.keys().chain(product.buckets().keys()).cloned().collect();
    let mut out = Vec::new();
    for g in labels {
        let lhs: BTreeSet<MatrixUnit> = product.bucket(&g).iter().copied().collect();
        let rhs = generated.get(&g).cloned().unwrap_or_default();
        if lhs != rhs {
            out.push(format!("subspace {g}: {} units in the product, {} from factor products", lhs.len(), rhs.len()));
        }
    }
    out
}

/// One row of the truncated spectral-subspace comparison, for `μ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualRow {
    pub n: i64,
    pub bucket_dim: usize,
    /// `sum_j C(k, j) C(k, j + n)`.
    pub expected_bucket_dim: usize,
    /// `dim M_φ w_n` with `w_n = (v*)^n` for `n >= 0` and `v^{-n}` otherwise.
    pub left_span_dim: usize,
    pub left_residual: usize,
    /// `dim M_φ w_n M_φ`.
    pub two_sided_span_dim: usize,
    pub two_sided_residual: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubspaceGeneration {
    pub mu: String,
    pub level: usize,
    pub v: Vec<(usize, usize, usize)>,
    pub v_is_partial_isometry: bool,
    pub v_is_isometry: bool,
    pub rows: Vec<ResidualRow>,
}

impl SubspaceGeneration {
    pub fn two_sided_residuals_vanish(&self) -> bool {
        self.rows.iter().all(|r| r.two_sided_residual == 0)
    }
}

/// Compares each spectral subspace of a Powers truncation with the
/// subspaces generated from the centralizer by powers of `v = v_{μ⁻¹}`.
pub fn subspace_generation(mu: &Rational, level: usize) -> Result<SubspaceGeneration> {
    let p = powers_truncation(mu, level)?;
    let grading = SpectralGrading::build(&p.algebra, &p.weight)?;
    let calc = SCalculus::new(&grading);
    let gamma = RatioGroupElement::from_rational(mu)?;
    let v = calc.v_gamma(&gamma.inv());
    let vstar = v.adjoint();
    let centralizer_basis: Vec<AlgebraElement> =
        calc.centralizer().basis().into_iter().map(|u| p.algebra.unit(u)).collect::<Result<_>>()?;
    let k = level as i64;
    let mut rows = Vec::new();
    for n in -k..=k {
        let step = if n >= 0 { &vstar } else { &v };
        let mut w = p.algebra.identity();
        for _ in 0..n.unsigned_abs() {
            w = w.try_mul(step)?;
        }
        let left: Vec<AlgebraElement> = centralizer_basis.iter().map(|b| b.try_mul(&w)).collect::<Result<_>>()?;
        let mut two_sided = Vec::new();
        for l in &left {
            for c in &centralizer_basis {
                two_sided.push(l.try_mul(c)?);
            }
        }
        let bucket_dim = grading.bucket(&gamma.pow(n)).len();
        let left_span_dim = exact_rank(&left);
        let two_sided_span_dim = exact_rank(&two_sided);
        let expected_bucket_dim =
            (0..=level).map(|j| binomial(level, j) * binomial(level, (j as i64 + n).max(-1) as usize)).sum::<usize>();
        rows.push(ResidualRow {
            n,
            bucket_dim,
            expected_bucket_dim: if n.unsigned_abs() as usize > level { 0 } else { expected_bucket_dim },
            left_span_dim,
            left_residual: bucket_dim.saturating_sub(left_span_dim),
            two_sided_span_dim,
            two_sided_residual: bucket_dim.saturating_sub(two_sided_span_dim),
        });
    }
    let vv = vstar.try_mul(&v)?;
    Ok(SubspaceGeneration {
        mu: format_rational(mu),
        level,
        v: v.support().map(|u| (u.block, u.row, u.col)).collect(),
        v_is_partial_isometry: vv.is_projection(),
        v_is_isometry: vv == p.algebra.identity(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn r(n: u64, d: u64) -> RatioGroupElement {
        RatioGroupElement::from_fraction(n, d).unwrap()
    }

    #[test]
    fn powers_examples() {
        let p = powers_truncation(&rat(1, 2), 1).unwrap();
        assert_eq!(p.weight.eigenvalues(), &[vec![rat(2, 3), rat(1, 3)]]);
        let p = powers_truncation(&rat(1, 2), 2).unwrap();
        assert_eq!(p.weight.eigenvalues(), &[vec![rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9)]]);
        assert_eq!(centralizer(&p.algebra, &p.weight).block_dims(), vec![1, 2, 1]);
        let g = SpectralGrading::build(&p.algebra, &p.weight).unwrap();
        let expected: BTreeSet<_> = [r(1, 4), r(1, 2), r(1, 1), r(2, 1), r(4, 1)].into();
        assert_eq!(g.point_spectrum(), expected);
        assert!(matches!(powers_truncation(&rat(3, 2), 1), Err(Error::Domain(_))));
        assert!(matches!(powers_truncation(&rat(0, 1), 1), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_multiplicities() {
        for k in 1..=4 {
            let p = powers_truncation(&rat(1, 3), k).unwrap();
            let mut seen: BTreeMap<Rational, usize> = BTreeMap::new();
            for l in &p.weight.eigenvalues()[0] {
                *seen.entry(l.clone()).or_default() += 1;
            }
            let expected: BTreeMap<Rational, usize> = binomial_eigenvalues(&rat(1, 3), k).into_iter().collect();
            assert_eq!(seen, expected);
        }
    }

    #[test]
    fn two_parameter_examples() {
        let m = two_parameter_model(&rat(1, 2), &rat(1, 3), 1).unwrap();
        assert_eq!(m.algebra.block_dims(), &[4]);
        assert_eq!(m.grading.buckets().len(), 9);
        assert_eq!(m.grading.gamma_rank(), 2);
        assert!(m.product_subspace_violations().is_empty());
        assert!(m.independent_within(4));
        let single = tensor_model(&[rat(1, 2)], 2).unwrap();
        assert_eq!(single.weight, powers_truncation(&rat(1, 2), 2).unwrap().weight);
        assert!(matches!(two_parameter_model(&rat(1, 2), &rat(1, 4), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn subspace_generation_rows() {
        let rep = subspace_generation(&rat(1, 2), 1).unwrap();
        assert_eq!(rep.v, vec![(0, 1, 0)]);
        let row0 = rep.rows.iter().find(|r| r.n == 0).unwrap();
        assert_eq!((row0.bucket_dim, row0.left_span_dim, row0.left_residual), (2, 2, 0));
        for row in &rep.rows {
            assert_eq!(row.left_residual, 0);
            assert_eq!(row.bucket_dim, row.expected_bucket_dim);
        }
        let rep = subspace_generation(&rat(1, 2), 2).unwrap();
        let row1 = rep.rows.iter().find(|r| r.n == 1).unwrap();
        assert_eq!(row1.bucket_dim, 4);
        assert!(rep.two_sided_residuals_vanish());
        assert!(rep.v_is_partial_isometry && !rep.v_is_isometry);
    }
}
