//! Grid search and results table.

use errormodel::{factory_table, ErrorParams64};
use estimator::{
    emit_results_table, emit_results_table_in, estimate, optimize, optimize_in, write_table_csv, AlgoParams64,
    Objective, SearchSpace, TableRow, TABLE_CSV_HEADER,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn err() -> ErrorParams64 {
    ErrorParams64::with_ratio(1e-5, 19.0).unwrap()
}

#[test]
fn optimum_beats_random_grid_points() {
    let r = optimize(16, &err(), Objective::default()).unwrap();
    assert_eq!(r.evaluated as usize, SearchSpace::default().size(16));
    assert!(r.feasible > 0 && r.feasible <= r.evaluated);
    let t = factory_table();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 100 {
        let p = AlgoParams64::new(
            16,
            rng.gen_range(1..=16),
            rng.gen_range(1..=10),
            f64::from(rng.gen_range(4u32..=30)),
            2 * rng.gen_range(1u32..=15) + 1,
            rng.gen_range(0..=14),
        );
        if let Ok(e) = estimate(&p, &err(), &t) {
            assert!(Objective::default().value(&e) >= r.objective_value, "{p:?}");
            checked += 1;
        }
    }
}

#[test]
fn coarse_rescan_finds_nothing_better() {
    let fine = optimize(12, &err(), Objective::QubitsTime).unwrap();
    let coarse = SearchSpace { w_e: 1..=12, w_m: 1..=10, alpha_sq: 4..=30, d: 3..=31, factory_i: 0..=14 };
    let t = factory_table();
    for w_e in coarse.w_e.clone().step_by(3) {
        for a2 in coarse.alpha_sq.clone().step_by(2) {
            for d in coarse.d.clone().step_by(4) {
                for i in coarse.factory_i.clone().step_by(2) {
                    let p = AlgoParams64::new(12, w_e, 4, f64::from(a2), d, i);
                    if let Ok(e) = estimate(&p, &err(), &t) {
                        assert!(Objective::QubitsTime.value(&e) >= fine.objective_value);
                    }
                }
            }
        }
    }
}

#[test]
fn worker_count_independent() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| optimize(16, &err(), Objective::default()).unwrap())
    };
    let a = run(1);
    let b = run(3);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn slower_cycles_never_speed_up_the_optimum() {
    let fast = optimize(16, &err(), Objective::default()).unwrap();
    let slow_err = ErrorParams64::new(1e-5, 19.0, 1e-6).unwrap();
    let slow = optimize(16, &slow_err, Objective::default()).unwrap();
    assert!(slow.best.t_exp >= fast.best.t_exp);
}

#[test]
fn tie_break_prefers_smallest_tuple() {
    let space = SearchSpace { w_e: 4..=4, w_m: 2..=2, alpha_sq: 10..=12, d: 5..=5, factory_i: 12..=14 };
    let r = optimize_in(8, &err(), Objective::default(), &factory_table(), &space).unwrap();
    let again = optimize_in(8, &err(), Objective::default(), &factory_table(), &space).unwrap();
    assert_eq!(r, again);
    assert_eq!(r.evaluated, 9);
}

#[test]
fn empty_search_space() {
    let space = SearchSpace { w_e: 4..=4, w_m: 2..=2, alpha_sq: 10..=10, d: 4..=4, factory_i: 0..=0 };
    assert!(optimize_in(8, &err(), Objective::default(), &factory_table(), &space).is_err());
}

#[test]
fn results_table_small_sizes() {
    let rows = emit_results_table(&[8, 16], &err()).unwrap();
    assert_eq!(rows.len(), 2);
    for r in &rows {
        assert_eq!(r.logical_qubits, 9 * r.n as u64 + r.w_e as u64 + 4);
        assert_eq!(r.n_e, 2 * r.n);
        assert!(r.t_exp >= r.t_run);
    }
    let mut buf = Vec::new();
    write_table_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert_eq!(text.lines().next().unwrap(), TABLE_CSV_HEADER.join(","));
}

#[test]
fn empty_table_has_header_only() {
    let rows: Vec<TableRow<f64>> =
        emit_results_table_in(&[], &err(), Objective::default(), &factory_table(), &SearchSpace::default()).unwrap();
    assert!(rows.is_empty());
    let mut buf = Vec::new();
    write_table_csv(&rows, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", TABLE_CSV_HEADER.join(",")));
}

#[test]
fn objective_tags_round_trip() {
    for o in [Objective::PhotonsQubitsTime, Objective::QubitsTime, Objective::ExpectedTime] {
        assert_eq!(o.tag().parse::<Objective>().unwrap(), o);
    }
    assert!("cheapest".parse::<Objective>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn higher_loss_never_shortens_expected_time(
        w_e in 1usize..=12, w_m in 1usize..=10, a2 in 4u32..=30, k in 1u32..=15, i in 0usize..=14, f in 1.0f64..100.0
    ) {
        let p = AlgoParams64::new(12, w_e, w_m, f64::from(a2), 2 * k + 1, i);
        let t = factory_table();
        let lo = estimate(&p, &ErrorParams64::with_ratio(1e-6, 19.0).unwrap(), &t);
        let hi = estimate(&p, &ErrorParams64::with_ratio(1e-6 * f, 19.0).unwrap(), &t);
        if let (Ok(lo), Ok(hi)) = (&lo, &hi) {
            prop_assert!(hi.t_exp >= lo.t_exp);
        }
        prop_assert!(!(lo.is_err() && hi.is_ok()));
    }
}
