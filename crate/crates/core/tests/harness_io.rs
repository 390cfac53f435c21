use circnoc::harness::{fuzz_termination, run_experiment, ExperimentConfig, Figure, FuzzConfig, OutputFormat};

fn save(cfg: &mut ExperimentConfig, dir: &std::path::Path, name: &str) -> Vec<u8> {
    let path = dir.join(name);
    cfg.output = Some(path.clone());
    run_experiment(cfg).unwrap();
    std::fs::read(path).unwrap()
}

fn small(figure: Figure) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(figure);
    cfg.values = match figure {
        Figure::TopologyMetrics => vec![3, 4, 5, 6],
        Figure::Cycles => (5..=40).collect(),
        Figure::Capacity => Vec::new(),
        _ => vec![9, 16, 25, 36],
    };
    cfg
}

#[test]
fn csv_datasets_match_their_schema() {
    let dir = tempfile::tempdir().unwrap();
    for figure in Figure::ALL {
        let mut cfg = small(figure);
        cfg.format = OutputFormat::Csv;
        let bytes = save(&mut cfg, dir.path(), &format!("{figure}.csv"));
        let mut reader = csv::Reader::from_reader(bytes.as_slice());
        let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        assert_eq!(header, figure.columns(), "{figure}");
        let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        let expected = match figure {
            Figure::Efficiency | Figure::Resources => 3 * cfg.values.len(),
            Figure::Capacity => 3,
            _ => cfg.values.len(),
        };
        assert_eq!(rows.len(), expected, "{figure}");
        assert!(rows.iter().all(|r| r.len() == header.len()));
        assert_eq!(bytes, save(&mut cfg, dir.path(), &format!("{figure}.again.csv")), "{figure}");
    }
}

#[test]
fn json_datasets_are_arrays() {
    let dir = tempfile::tempdir().unwrap();
    for figure in Figure::ALL {
        let mut cfg = small(figure);
        cfg.format = OutputFormat::Json;
        let bytes = save(&mut cfg, dir.path(), &format!("{figure}.json"));
        let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert!(v.as_array().is_some_and(|a| !a.is_empty()), "{figure}");
    }
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small(Figure::Memory);
    cfg.output = Some(dir.path().join("missing/out.csv"));
    let err = run_experiment(&cfg).unwrap_err();
    assert!(matches!(err, circnoc::Error::Io { .. }));
    assert!(!err.is_validation());
}

#[test]
fn fuzz_reports_are_reproducible() {
    let cfg = FuzzConfig { trials: 500, ..FuzzConfig::default() };
    let a = fuzz_termination(&cfg).unwrap();
    assert!(a.passed());
    assert_eq!(a.trials_per_algorithm.iter().sum::<usize>(), 500);
    assert_eq!(a.to_json().unwrap(), fuzz_termination(&cfg).unwrap().to_json().unwrap());
    let other = fuzz_termination(&FuzzConfig { seed: 2, ..cfg }).unwrap();
    assert_ne!(a.total_hops, other.total_hops);
}
