//! Sampling, decoding and rate estimation.

use errormodel::{logical_error_rate, ErrorParams64};
use qecsim::{
    decode, detection_events, logical_z_rate, sample_cycle_history, simulate, trial_rng, Defect, Injection,
    NoiseModel64, QecRecord, SyndromeHistory,
};

#[test]
fn noiseless_history_is_trivial() {
    for d in [3, 5, 9] {
        let s = sample_cycle_history(d, &NoiseModel64::noiseless(), 7).unwrap();
        assert!(s.history.is_trivial());
        assert!(s.residual.iter().all(|&b| !b));
        assert_eq!((s.history.stabilizers(), s.history.rounds()), (d - 1, d + 1));
    }
}

#[test]
fn single_injection_gives_two_or_one_events() {
    let d = 5;
    for round in 0..d {
        for qubit in 0..d {
            let s = simulate(d, &NoiseModel64::noiseless(), &mut trial_rng(0, 0), &[Injection { round, qubit }]).unwrap();
            let events = detection_events(&s.history);
            let expected = if qubit == 0 || qubit == d - 1 { 1 } else { 2 };
            assert_eq!(events.len(), expected, "round {round} qubit {qubit}");
            assert!(events.iter().all(|e| e.round == round));
            let correction = decode(&s.history);
            let logical = s.residual.iter().zip(&correction).map(|(a, b)| a ^ b).collect::<Vec<_>>();
            assert!(logical.iter().all(|&b| !b), "round {round} qubit {qubit}");
        }
    }
}

#[test]
fn seeded_sampling_is_reproducible() {
    let noise = NoiseModel64::from_params(&ErrorParams64::with_ratio(1e-2, 4.0).unwrap()).unwrap();
    let a = sample_cycle_history(7, &noise, 42).unwrap();
    let b = sample_cycle_history(7, &noise, 42).unwrap();
    assert_eq!(a, b);
    let differs = (43..60).any(|s| sample_cycle_history(7, &noise, s).unwrap() != a);
    assert!(differs);
}

#[test]
fn empty_syndrome_empty_correction() {
    assert_eq!(decode(&SyndromeHistory::zeros(5)), vec![false; 5]);
}

#[test]
fn adjacent_defects_matched_together() {
    let d = 7;
    let mut h = SyndromeHistory::zeros(d);
    for t in 2..=d {
        h.set(2, t, true);
        h.set(3, t, true);
    }
    assert_eq!(detection_events(&h), vec![Defect { stabilizer: 2, round: 2 }, Defect { stabilizer: 3, round: 2 }]);
    let c = decode(&h);
    assert_eq!(c.iter().filter(|&&b| b).count(), 1);
    assert!(c[3]);
}

#[test]
fn boundary_preferred_over_distant_pair() {
    let d = 9;
    let mut h = SyndromeHistory::zeros(d);
    for t in 1..=d {
        h.set(0, t, true);
    }
    for t in 6..=d {
        h.set(7, t, true);
    }
    // Pairing costs 7 + 5 = 12; two boundary matches cost 1 + 1 = 2.
    let c = decode(&h);
    let mut expected = vec![false; d];
    expected[0] = true;
    expected[8] = true;
    assert_eq!(c, expected);
}

fn weight_patterns(d: usize, max_weight: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..max_weight {
        let mut next = Vec::new();
        for p in &out {
            let start = p.last().map_or(0, |&q| q + 1);
            for q in start..d {
                let mut e = p.clone();
                e.push(q);
                next.push(e);
            }
        }
        out.extend(next.into_iter().filter(|e| e.len() <= max_weight));
        out.sort();
        out.dedup();
    }
    out
}

#[test]
fn correctable_single_round_patterns() {
    for d in [3usize, 5] {
        for pattern in weight_patterns(d, (d - 1) / 2) {
            for round in 0..d {
                let inj: Vec<Injection> = pattern.iter().map(|&qubit| Injection { round, qubit }).collect();
                let s = simulate(d, &NoiseModel64::noiseless(), &mut trial_rng(0, 0), &inj).unwrap();
                let c = decode(&s.history);
                assert!(!(s.residual[0] ^ c[0]), "d={d} pattern {pattern:?} round {round}");
            }
        }
    }
}

#[test]
fn many_defects_use_fallback_and_stay_consistent() {
    let d = 15;
    let noise = NoiseModel64::from_params(&ErrorParams64::with_ratio(2e-2, 4.0).unwrap()).unwrap();
    for seed in 0..20 {
        let s = sample_cycle_history(d, &noise, seed).unwrap();
        let c = decode(&s.history);
        let diff: Vec<bool> = s.residual.iter().zip(&c).map(|(a, b)| a ^ b).collect();
        assert!(diff.iter().all(|&b| b == diff[0]), "residual after correction must be a stabilizer or logical");
    }
}

#[test]
fn zero_noise_rate_is_zero() {
    let p = ErrorParams64::with_ratio(1e-12, 30.0).unwrap();
    let r = logical_z_rate(3, &p, 2000, 1).unwrap();
    assert_eq!(r.failures, 0);
    assert_eq!(r.per_cycle, 0.0);
}

#[test]
fn small_distance_rates_bracket_fitted_phase_term() {
    let p = ErrorParams64::with_ratio(1e-3, 4.0).unwrap();
    let r3 = logical_z_rate(3, &p, 100_000, 1).unwrap();
    let r5 = logical_z_rate(5, &p, 100_000, 1).unwrap();
    let f3 = logical_error_rate(&p, 3).unwrap().phase;
    let f5 = logical_error_rate(&p, 5).unwrap().phase;
    assert!(r3.per_cycle >= f3 / 2.0 && r3.per_cycle <= f3 * 2.0, "d=3 {} vs {f3}", r3.per_cycle);
    assert!(r5.per_cycle >= f5 / 2.0 && r5.per_cycle <= f5 * 2.0, "d=5 {} vs {f5}", r5.per_cycle);
    assert!(r5.per_cycle < r3.per_cycle);
}

#[test]
fn rate_grows_with_loss_ratio() {
    let lo = logical_z_rate(3, &ErrorParams64::with_ratio(5e-4, 4.0).unwrap(), 40_000, 3).unwrap();
    let hi = logical_z_rate(3, &ErrorParams64::with_ratio(4e-3, 4.0).unwrap(), 40_000, 3).unwrap();
    assert!(hi.per_cycle > lo.per_cycle);
}

#[test]
fn worker_count_does_not_change_result() {
    let p = ErrorParams64::with_ratio(1e-3, 4.0).unwrap();
    let run = |n| {
        rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap().install(|| logical_z_rate(5, &p, 20_000, 9).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn record_serialization() {
    let p = ErrorParams64::with_ratio(1e-3, 4.0).unwrap();
    let r = logical_z_rate(3, &p, 1, 5).unwrap();
    let json = serde_json::to_value(QecRecord::new(&p, &r)).unwrap();
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    assert_eq!(keys.len(), 6);
    for k in ["d", "alpha_sq", "kappa_ratio", "trials", "p_zl_per_cycle", "stderr"] {
        assert!(json.get(k).is_some(), "{k}");
    }
}

#[test]
fn invalid_inputs() {
    let p = ErrorParams64::with_ratio(1e-3, 4.0).unwrap();
    assert!(logical_z_rate(4, &p, 10, 0).is_err());
    assert!(logical_z_rate(1, &p, 10, 0).is_err());
    assert!(logical_z_rate(3, &p, 0, 0).is_err());
}

#[test]
fn flip_between_cnot_rounds_is_a_single_diagonal_edge() {
    let a = Defect { stabilizer: 1, round: 3 };
    let b = Defect { stabilizer: 2, round: 4 };
    assert_eq!(qecsim::pair_weight(a, b), 1);
    assert_eq!(qecsim::pair_weight(b, a), 1);
    assert_eq!(qecsim::pair_weight(Defect { stabilizer: 2, round: 3 }, Defect { stabilizer: 1, round: 4 }), 2);

    let d = 3;
    let mut h = SyndromeHistory::zeros(d);
    for t in 1..=d {
        h.set(0, t, true);
    }
    for t in 2..=d {
        h.set(1, t, true);
    }
    assert_eq!(decode(&h), vec![false, true, false]);
}
