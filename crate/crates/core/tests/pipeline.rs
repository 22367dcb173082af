use crossdecomp::algebra::MatrixUnit;
use crossdecomp::groups::RatioGroupElement;
use crossdecomp::model::Model;
use crossdecomp::report::Status;
use crossdecomp::scalar::rat;
use crossdecomp::verify::{self, detect, mutations, named_examples, Fixture, MutationKind, Suite, SuiteConfig};

const QUBIT: &str = r#"{"name": "qubit", "algebra": {"blocks": [{"dim": 2, "eigenvalues": ["2/3", "1/3"]}]}}"#;

fn qubit() -> Fixture {
    Fixture::from_model(&Model::from_json(QUBIT).unwrap()).unwrap()
}

#[test]
fn qubit_model_verifies_cleanly() {
    let report = verify::verify(&qubit(), &Suite::ALL, &SuiteConfig::default(), false);
    assert!(report.passed, "{:#?}", report.failures().collect::<Vec<_>>());
    assert_eq!(report.counts.fail, 0);
    assert!(report.counts.pass > 20);
    assert!(report.elapsed_ms.is_none());
    let mut ids: Vec<_> = report.checks.iter().map(|c| c.check_id.clone()).collect();
    let sorted = ids.clone();
    ids.dedup();
    assert_eq!(ids, sorted);
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn qubit_analysis_matches_hand_computation() {
    let data = verify::analyze(&qubit(), 2).unwrap().data.unwrap();
    assert_eq!(data["gamma_gens"], serde_json::json!(["2"]));
    assert_eq!(data["gamma_rank"], 1);
    assert_eq!(data["centralizer_blocks"], serde_json::json!([1, 1]));
    assert_eq!(data["M_factor"], true);
    assert_eq!(data["M_phi_factor"], false);
    assert_eq!(data["ergodic"], true);
}

#[test]
fn corrupted_bucket_fails_with_a_witness() {
    let fx = qubit();
    let e12 = MatrixUnit::new(0, 0, 1);
    let corrupt = fx.with_moved_unit(e12, &RatioGroupElement::identity()).unwrap();
    let report = verify::verify(&corrupt, &[Suite::Spectral], &SuiteConfig::default(), false);
    assert!(!report.passed);
    let failure = report.failures().next().unwrap();
    assert_eq!(failure.status, Status::Fail);
    assert!(failure.witness.as_deref().is_some_and(|w| !w.is_empty()));
}

#[test]
fn doubled_trace_eigenvalue_is_caught() {
    let fx = qubit().with_trace_eigenvalue(0, 0, rat(4, 3)).unwrap();
    let record = detect(&fx, &SuiteConfig { cases: 20, ..Default::default() }).expect("corruption detected");
    assert!(record.check_id.starts_with("trace."), "{}", record.check_id);
}

#[test]
fn every_mutation_kind_appears_and_is_detected() {
    let fx = &named_examples().unwrap()[3];
    let cfg = SuiteConfig { cases: 10, ..Default::default() };
    let muts = mutations(fx, 2).unwrap();
    for kind in [MutationKind::BucketAssignment, MutationKind::TraceWeight, MutationKind::PartialActionEdge] {
        assert!(muts.iter().any(|m| m.kind == kind), "{kind:?} missing");
    }
    for m in &muts {
        assert!(detect(&m.fixture, &cfg).is_some(), "undetected: {}", m.description);
    }
}

#[test]
fn reduction_model_passes_induced_and_duality_suites() {
    let text = r#"{
      "name": "reduction",
      "algebra": {"blocks": [{"dim": 2, "eigenvalues": ["2/3", "1/3"]}]},
      "action": {"group": {"invariant_factors": [2]}, "generators": [{"unitaries": [[[1, 0], [0, -1]]]}]},
      "comparison": {"E": {"invariant_factors": [4]}, "iota": [[1]]},
      "induced": {
        "K": {"invariant_factors": [4]},
        "H_generators": [[2]],
        "N": {"blocks": [{"dim": 1, "eigenvalues": ["1"]}, {"dim": 1, "eigenvalues": ["1"]}]},
        "action": {"generators": [{"permutation": [1, 0]}]}
      }
    }"#;
    let fx = Fixture::from_model(&Model::from_json(text).unwrap()).unwrap();
    for report in [verify::induce(&fx), verify::duality(&fx)] {
        assert!(report.passed, "{}: {:#?}", report.command, report.failures().collect::<Vec<_>>());
        assert_eq!(report.counts.skipped, 0, "{}", report.command);
    }
}

#[test]
fn suites_without_an_action_are_skipped() {
    let report = verify::duality(&qubit());
    assert!(report.passed);
    assert_eq!(report.counts.pass, 0);
    assert!(report.counts.skipped > 0);
}

#[test]
fn powers_rejects_dependent_parameters() {
    assert!(verify::powers(&[rat(1, 2), rat(1, 4)], 1).is_err());
    assert!(verify::powers(&[rat(3, 2)], 1).is_err());
    let report = verify::powers(&[rat(1, 2)], 2).unwrap();
    assert!(report.passed);
    assert_eq!(report.model, "1/2 level 2");
}

#[test]
fn malformed_models_are_rejected() {
    for text in [
        "{",
        r#"{"algebra": {"blocks": []}}"#,
        r#"{"algebra": {"blocks": [{"dim": 2, "eigenvalues": ["1/2"]}]}}"#,
        r#"{"algebra": {"blocks": [{"dim": 1, "eigenvalues": ["-1"]}]}}"#,
        r#"{"algebra": {"blocks": [{"dim": 1, "eigenvalues": ["1"]}]}, "window": 0}"#,
        r#"{"algebra": {"blocks": [{"dim": 1, "eigenvalues": ["1"]}]}, "colour": 1}"#,
    ] {
        assert!(Model::from_json(text).is_err(), "{text}");
    }
}
