//! Verification drivers: fixtures, the check suites, the test corpus,
//! single-point corruptions for negative controls, and the report builders
//! behind the command-line front end.

mod corpus;
mod fixture;
mod suites;

use serde::Serialize;
use serde_json::json;

pub use corpus::{comparison_fixtures, corpus, corpus_shapes, family_weight, named_actions, named_examples, Family};
pub use fixture::Fixture;
pub use suites::{random_gamma_matrix, run_suite, run_suites, slug, Suite, SuiteConfig};

use crate::algebra::centralizer;
use crate::demo::tensor_model;
use crate::error::Result;
use crate::groups::RatioGroupElement;
use crate::report::{CheckRecord, Report};
use crate::scalar::{format_rational, Rational};
use crate::structure::{direct_is_factor, direct_subalgebra_is_factor, factoriality, PartialActionReport};

/// A corrupted copy of a fixture and what was changed.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub kind: MutationKind,
    pub description: String,
    pub fixture: Fixture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MutationKind {
    BucketAssignment,
    TraceWeight,
    PartialActionEdge,
}

/// Every single-point corruption of a fixture: each matrix unit moved to
/// another spectral subspace, each eigenvalue of the trace weight doubled,
/// and each edge of the partial action redirected (or a spurious edge added
/// for atoms outside a domain).
pub fn mutations(fx: &Fixture, radius: usize) -> Result<Vec<Mutation>> {
    let mut out = Vec::new();
    let shift = fx.grading.generators().first().cloned().unwrap_or(RatioGroupElement::prime(2)?);
    for u in fx.algebra().matrix_units() {
        let from = fx.grading.label_of(&u).cloned().unwrap_or_default();
        let m = fx.with_moved_unit(u, &from.mul(&shift))?;
        out.push(Mutation { kind: MutationKind::BucketAssignment, description: m.name.clone(), fixture: m });
    }
    for (b, eigs) in fx.trace_weight.eigenvalues().iter().enumerate() {
        for (i, l) in eigs.iter().enumerate() {
            let m = fx.with_trace_eigenvalue(b, i, l * Rational::from_integer(2.into()))?;
            out.push(Mutation { kind: MutationKind::TraceWeight, description: m.name.clone(), fixture: m });
        }
    }
    let calc = fx.calculus();
    let pa = fx.partial_action(&calc, radius)?;
    let n = pa.num_atoms();
    for gamma in pa.window() {
        for x in 0..n {
            let y = match pa.apply(gamma, x) {
                Some(_) if n < 2 => continue,
                Some(t) => (t + 1) % n,
                None => 0,
            };
            let m = fx.with_partial_edge(radius, gamma, x, y)?;
            out.push(Mutation { kind: MutationKind::PartialActionEdge, description: m.name.clone(), fixture: m });
        }
    }
    Ok(out)
}

/// The first failed check (which always carries a witness) when the
/// structural suites run on a corrupted fixture.
pub fn detect(fx: &Fixture, cfg: &SuiteConfig) -> Option<CheckRecord> {
    Suite::STRUCTURAL.iter().flat_map(|&s| run_suite(fx, s, cfg)).find(|r| r.failed() && r.witness.is_some())
}

/// Structural data of a weighted algebra.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub gamma_gens: Vec<RatioGroupElement>,
    pub gamma_rank: usize,
    pub trivial_spectrum: bool,
    pub buckets: std::collections::BTreeMap<String, Vec<(usize, usize, usize)>>,
    pub centralizer_blocks: Vec<usize>,
    pub atoms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_action: Option<PartialActionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ergodic: Option<bool>,
    #[serde(rename = "M_factor")]
    pub m_factor: bool,
    #[serde(rename = "M_phi_factor")]
    pub m_phi_factor: bool,
    #[serde(rename = "Q_factor")]
    pub q_factor: bool,
}

pub fn analyze(fx: &Fixture, radius: usize) -> Result<Report> {
    let grading = &fx.grading;
    let calc = fx.calculus();
    let report = grading.report();
    let m_factor = direct_is_factor(fx.algebra());
    let m_phi_factor = direct_subalgebra_is_factor(calc.centralizer());
    let mut analysis = Analysis {
        gamma_gens: report.gamma_gens,
        gamma_rank: grading.gamma_rank(),
        trivial_spectrum: report.trivial_spectrum,
        buckets: report.buckets,
        centralizer_blocks: centralizer(fx.algebra(), &fx.weight).block_dims(),
        atoms: calc.num_atoms(),
        partial_action: None,
        ergodic: None,
        m_factor,
        m_phi_factor,
        q_factor: m_phi_factor,
    };
    let id = "analyze.ergodic-iff-factor";
    let citation = "M is a factor exactly when the partial action is ergodic";
    let check = if grading.is_trivial() {
        CheckRecord::skipped(id, citation, "the point spectrum is trivial, so M is its own centralizer")
    } else {
        let pa = fx.partial_action(&calc, radius)?;
        analysis.partial_action = Some(pa.report());
        analysis.ergodic = Some(pa.is_ergodic());
        match factoriality(&calc, &pa) {
            Ok(f) => {
                analysis.q_factor = f.q_is_factor;
                CheckRecord::pass(id, citation)
            }
            Err(e) => CheckRecord::fail(id, citation, e.to_string()),
        }
    };
    let data = serde_json::to_value(&analysis).expect("analysis serializes");
    Ok(Report::new("analyze", fx.name.clone(), vec![check], Some(data)))
}

/// Runs the selected suites; with `timings`, records the wall-clock time of each.
pub fn verify(fx: &Fixture, suites: &[Suite], cfg: &SuiteConfig, timings: bool) -> Report {
    let mut checks = Vec::new();
    let mut elapsed = std::collections::BTreeMap::new();
    for &suite in suites {
        let start = std::time::Instant::now();
        checks.extend(run_suite(fx, suite, cfg));
        elapsed.insert(suite.name().to_string(), start.elapsed().as_secs_f64() * 1e3);
    }
    let data = json!({
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "window": cfg.window,
        "seed": cfg.seed,
        "cases": cfg.cases,
    });
    let mut report = Report::new("verify", fx.name.clone(), checks, Some(data));
    if timings {
        report.elapsed_ms = Some(elapsed);
    }
    report
}

pub fn duality(fx: &Fixture) -> Report {
    Report::new("duality", fx.name.clone(), run_suite(fx, Suite::Duality, &SuiteConfig::default()), None)
}

pub fn induce(fx: &Fixture) -> Report {
    Report::new("induce", fx.name.clone(), run_suite(fx, Suite::Induced, &SuiteConfig::default()), None)
}

/// Product of Powers truncations: subspace factorization, rank and
/// independence of the ratio group, truncated spectra, and the subspaces
/// generated from the centralizer by powers of one partial isometry.
pub fn powers(mus: &[Rational], level: usize) -> Result<Report> {
    let model = tensor_model(mus, level)?;
    let data = model.report()?;
    let mut checks = vec![
        CheckRecord::from_violations(
            "powers.product-subspaces",
            "each spectral subspace of the product is spanned by products of factor subspaces",
            &data.product_subspace_witnesses,
        ),
        if data.gamma_rank == mus.len() {
            CheckRecord::pass("powers.gamma-rank", "the ratio group is free of rank equal to the number of parameters")
        } else {
            CheckRecord::fail(
                "powers.gamma-rank",
                "the ratio group is free of rank equal to the number of parameters",
                format!("rank {} for {} parameters", data.gamma_rank, mus.len()),
            )
        },
    ];
    let independence = "no nontrivial relation among the parameters is found by the membership oracle";
    checks.push(if data.independent {
        CheckRecord::pass("powers.independence", independence)
    } else {
        CheckRecord::fail("powers.independence", independence, "a relation was found")
    });
    for (factor, rows) in model.factors.iter().zip(&data.residuals) {
        let mu = format_rational(&factor.mu);
        let grading = crate::spectral::SpectralGrading::build(&factor.algebra, &factor.weight)?;
        let base = RatioGroupElement::from_rational(&factor.mu)?;
        let expected: std::collections::BTreeSet<_> = (-(level as i64)..=level as i64).map(|n| base.pow(n)).collect();
        let citation = "the truncation at level k has point spectrum {μⁿ : |n| <= k}";
        checks.push(if grading.point_spectrum() == expected {
            CheckRecord::pass(format!("powers.spectrum.{mu}"), citation)
        } else {
            CheckRecord::fail(format!("powers.spectrum.{mu}"), citation, format!("{:?}", grading.point_spectrum()))
        });
        let dims: Vec<String> = rows
            .rows
            .iter()
            .filter(|r| r.bucket_dim != r.expected_bucket_dim)
            .map(|r| format!("μ^{}: {} instead of {}", r.n, r.bucket_dim, r.expected_bucket_dim))
            .collect();
        checks.push(CheckRecord::from_violations(
            format!("powers.subspace-dimensions.{mu}"),
            "dim of the subspace of μⁿ is Σ_j C(k, j) C(k, j + n)",
            &dims,
        ));
        let residual: Vec<String> = rows
            .rows
            .iter()
            .filter(|r| r.two_sided_residual != 0)
            .map(|r| format!("μ^{}: residual {}", r.n, r.two_sided_residual))
            .collect();
        checks.push(CheckRecord::from_violations(
            format!("powers.two-sided-generation.{mu}"),
            "M_φ wₙ M_φ spans the subspace of μⁿ",
            &residual,
        ));
        let citation = "v_{μ⁻¹} is a partial isometry";
        checks.push(if rows.v_is_partial_isometry {
            CheckRecord::pass(format!("powers.partial-isometry.{mu}"), citation)
        } else {
            CheckRecord::fail(format!("powers.partial-isometry.{mu}"), citation, "v*v is not a projection")
        });
    }
    let name = format!("{} level {level}", mus.iter().map(format_rational).collect::<Vec<_>>().join(" "));
    Ok(Report::new("powers", name, checks, Some(serde_json::to_value(&data).expect("demo report serializes"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn analysis_of_named_examples() {
        let named = named_examples().unwrap();
        let qubit = analyze(&named[0], 2).unwrap();
        let data = qubit.data.unwrap();
        assert_eq!(data["gamma_gens"], json!(["2"]));
        assert_eq!((data["ergodic"].clone(), data["M_factor"].clone(), data["Q_factor"].clone()), (json!(true), json!(true), json!(false)));
        let tracial = analyze(&named[1], 2).unwrap().data.unwrap();
        assert_eq!(tracial["trivial_spectrum"], json!(true));
        assert!(tracial.get("partial_action").is_none());
        let doubled = analyze(&named[2], 2).unwrap().data.unwrap();
        assert_eq!(doubled["ergodic"], json!(false));
    }

    #[test]
    fn powers_report() {
        let r = powers(&[rat(1, 2), rat(1, 3)], 1).unwrap();
        assert!(r.passed, "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.data.unwrap()["gamma_rank"], json!(2));
    }

    #[test]
    fn mutations_are_detected_on_the_qubit() {
        let fx = &named_examples().unwrap()[0];
        let cfg = SuiteConfig { cases: 10, ..Default::default() };
        let muts = mutations(fx, 2).unwrap();
        assert!(muts.len() >= 10);
        for m in &muts {
            assert!(detect(&m.fixture, &cfg).is_some(), "undetected: {}", m.description);
        }
    }
}
