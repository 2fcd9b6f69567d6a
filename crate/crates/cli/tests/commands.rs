//! Command behaviour, exit codes and determinism.

mod common;

use common::{json, run, run_binary};

#[test]
fn fixed_point_estimate_matches_library() {
    let (code, out, _) = run(&["estimate", "--n", "16", "--d", "7", "--alpha2", "12", "--we", "5", "--wm", "3", "--factory", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let err = errormodel::ErrorParams64::with_ratio(1e-5, 12.0).unwrap();
    let e = estimator::estimate(&estimator::AlgoParams64::new(16, 5, 3, 12.0, 7, 4), &err, &errormodel::factory_table())
        .unwrap();
    assert_eq!(v["result"], serde_json::to_value(&e).unwrap());
    assert_eq!(v["config"]["kappa_ratio"], 1e-5);
    assert_eq!(v["config"]["cycle_ns"], 500.0);
}

#[test]
fn partial_estimate_searches_free_parameters() {
    let (code, out, _) = run(&["estimate", "--n", "12", "--d", "9", "--we", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["params"]["d"], 9);
    assert_eq!(v["result"]["params"]["w_e"], 4);
    assert_eq!(v["config"]["objective"], "photons_qubits_time");
}

#[test]
fn cycle_time_scales_run_time() {
    let args = ["estimate", "--n", "16", "--d", "7", "--alpha2", "12", "--we", "5", "--wm", "3", "--factory", "4"];
    let fast = json(&run(&args).1);
    let mut slow_args = args.to_vec();
    slow_args.extend(["--cycle-ns", "1000"]);
    let slow = json(&run(&slow_args).1);
    let ratio = slow["result"]["t_run"].as_f64().unwrap() / fast["result"]["t_run"].as_f64().unwrap();
    assert!((ratio - 2.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["estimate"],
        vec!["estimate", "--n", "16", "--d", "8"],
        vec!["estimate", "--n", "16", "--alpha2", "12.5"],
        vec!["estimate", "--n", "16", "--we", "40"],
        vec!["optimize", "--n", "16", "--objective", "cheapest"],
        vec!["qec-sample", "--d", "3", "--alpha2", "4", "--trials", "0"],
        vec!["qec-sample", "--d", "4", "--alpha2", "4", "--trials", "5"],
        vec!["qec-sample", "--alpha2", "4"],
        vec!["verify-circuits", "--prime", "11"],
        vec!["table", "--kappa-ratio", "-1"],
        vec!["table", "--factory-table", "/nonexistent/factories.csv"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 1, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-circuits"));
}

#[test]
fn infeasible_requests_exit_two() {
    let (code, _, err) =
        run(&["estimate", "--n", "64", "--d", "3", "--alpha2", "4", "--we", "8", "--wm", "4", "--factory", "0", "--kappa-ratio", "5e-2"]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("infeasible"));

    let dir = std::env::temp_dir().join(format!("catshor-factories-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("slow.csv");
    std::fs::write(&path, "i,d_f,alpha_sq_f,error_prob,steps,prep_time_s,acceptance\n0,3,4,1e-3,10,1e-3,1e-3\n").unwrap();
    let (code, _, err) = run(&["optimize", "--n", "8", "--factory-table", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn empty_table_is_header_only_csv() {
    let (code, out, _) = run(&["table", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{}\n", estimator::TABLE_CSV_HEADER.join(",")));
    let (_, out, _) = run(&["table", "--n", "--format", "csv"]);
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn table_rows_and_text() {
    let (code, out, _) = run(&["table", "--n", "8,10", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("8,16,"));
    let (_, text, _) = run(&["table", "--n", "8", "--format", "text"]);
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn qec_single_trial_record() {
    let (code, out, _) = run(&["qec-sample", "--d", "3", "--alpha2", "4", "--kappa-ratio", "1e-3", "--trials", "1", "--seed", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["trials"], 1);
    let p = v["result"]["p_zl_per_cycle"].as_f64().unwrap();
    assert!(p == 0.0 || (p - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(v["config"]["seed"], 1);
}

#[test]
fn qec_sample_is_deterministic_across_workers() {
    let args = ["qec-sample", "--d", "5", "--alpha2", "4", "--kappa-ratio", "1e-3", "--trials", "3000", "--seed", "9"];
    let outputs: Vec<String> = ["1", "2", "3"]
        .into_iter()
        .map(|w| {
            let mut a = args.to_vec();
            a.extend(["--workers", w]);
            run(&a).1
        })
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let mut other = args.to_vec();
    other[9] = "10";
    assert_ne!(run(&other).1, outputs[0]);
}

#[test]
fn config_file_precedence() {
    let dir = std::env::temp_dir().join(format!("catshor-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(&path, r#"{"d": 3, "alpha2": 4, "trials": 200, "seed": 5, "kappa_ratio": 1e-3}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let v = json(&run(&["qec-sample", "--config", cfg]).1);
    assert_eq!((v["config"]["trials"].as_u64(), v["config"]["kappa_ratio"].as_f64()), (Some(200), Some(1e-3)));
    let v = json(&run(&["qec-sample", "--config", cfg, "--trials", "300"]).1);
    assert_eq!(v["config"]["trials"], 300);
    assert_eq!(v["config"]["seed"], 5);

    std::fs::write(&path, r#"{"d": 3, "alpha": 4}"#).unwrap();
    let (code, _, err) = run(&["qec-sample", "--config", cfg]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown field"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("catshor-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let (code, out, _) = run(&["table", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("n,n_e,"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verification_suites_pass_and_faults_are_caught() {
    for suite in ["adders", "modular", "montgomery", "kaliski", "ecc"] {
        let (code, out, err) = run(&["verify-circuits", "--suite", suite, "--prime", "7", "--format", "text"]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
        assert!(out.contains("all suites passed"));

        let (code, out, err) = run(&["verify-circuits", "--suite", suite, "--prime", "13", "--inject-fault"]);
        assert_eq!(code, 3, "{suite}");
        let v = json(&out);
        assert_eq!(v["result"]["passed"], false);
        let cx = &v["result"]["exhaustive"][0]["counterexample"];
        assert!(cx["inputs"].as_str().is_some_and(|s| !s.is_empty()));
        assert_ne!(cx["expected"], cx["got"]);
        assert!(err.contains("expected") && err.contains("got"), "{err}");
    }
}

#[test]
fn verification_csv_and_binary_exit_code() {
    let (code, out, _) = run(&["verify-circuits", "--suite", "adders", "--prime", "13", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("suite,scope,prime,checks,passed"));
    let (code, _) = run_binary(&["verify-circuits", "--suite", "montgomery", "--prime", "7", "--inject-fault"]);
    assert_eq!(code, 3);
    let (code, _) = run_binary(&["estimate"]);
    assert_eq!(code, 1);
}
