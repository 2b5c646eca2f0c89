use prefix_compete::simulate::{read_report, run_experiment, write_report, ExperimentConfig};
use prefix_compete::Method;

#[test]
fn leaf_fraction_is_nondecreasing_in_n() {
    let cfg = ExperimentConfig::new(4, 20, 100_000, 11, Method::LeafCondition);
    let report = run_experiment(&cfg).unwrap();
    for pair in report.rows.windows(2) {
        assert!(
            pair[1].fraction + 0.01 >= pair[0].fraction,
            "n={} {} then n={} {}",
            pair[0].n,
            pair[0].fraction,
            pair[1].n,
            pair[1].fraction
        );
    }
}

#[test]
fn leaf_never_exceeds_subset() {
    let leaf = ExperimentConfig::new(4, 10, 3_000, 5, Method::LeafCondition);
    let subset = ExperimentConfig {
        method: Method::SubsetExact,
        ..leaf.clone()
    };
    let a = run_experiment(&leaf).unwrap();
    let b = run_experiment(&subset).unwrap();
    for (x, y) in a.rows.iter().zip(&b.rows) {
        assert!(x.flagged <= y.flagged, "n={}", x.n);
    }
}

#[test]
fn small_sources_never_flagged() {
    let cfg = ExperimentConfig::new(3, 3, 1_000, 7, Method::LeafCondition);
    let report = run_experiment(&cfg).unwrap();
    assert_eq!(
        report.to_csv().unwrap(),
        "n,samples,flagged,fraction,method,seed\n3,1000,0,0.000000,leaf,7\n"
    );
}

#[test]
fn reports_round_trip_through_files() {
    // Hexahedron is only defined for four symbols.
    assert!(run_experiment(&ExperimentConfig::new(4, 6, 500, 2, Method::Hexahedron)).is_err());

    let dir = tempfile::tempdir().unwrap();
    let report =
        run_experiment(&ExperimentConfig::new(4, 6, 500, 2, Method::LeafCondition)).unwrap();
    let json = dir.path().join("r.json");
    write_report(&report, &json).unwrap();
    assert_eq!(read_report(&json).unwrap(), report);
    let csv = dir.path().join("r.csv");
    write_report(&report, &csv).unwrap();
    assert_eq!(read_report(&csv).unwrap(), report.without_timings());
}
