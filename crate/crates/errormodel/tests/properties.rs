//! Monotonicity properties of the error model.

use errormodel::{layout_qubits, logical_error_rate, ErrorParams64, LayoutSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn phase_part_increases_with_loss_ratio(a2 in 1.0f64..30.0, r in 1e-7f64..1e-3, f in 1.01f64..10.0, k in 0u32..15) {
        let d = 2 * k + 1;
        let lo = logical_error_rate(&ErrorParams64::with_ratio(r, a2).unwrap(), d).unwrap();
        let hi = logical_error_rate(&ErrorParams64::with_ratio(r * f, a2).unwrap(), d).unwrap();
        prop_assert!(hi.phase > lo.phase);
        prop_assert_eq!(hi.bit, lo.bit);
    }

    #[test]
    fn bit_part_decreases_with_photons(a2 in 1.0f64..30.0, da in 0.01f64..5.0, k in 1u32..15) {
        let d = 2 * k + 1;
        let lo = logical_error_rate(&ErrorParams64::with_ratio(1e-5, a2).unwrap(), d).unwrap();
        let hi = logical_error_rate(&ErrorParams64::with_ratio(1e-5, a2 + da).unwrap(), d).unwrap();
        prop_assert!(hi.bit < lo.bit);
    }

    #[test]
    fn phase_part_decreases_with_distance_below_threshold(a2 in 1.0f64..30.0, r in 1e-7f64..1e-4, k in 0u32..14) {
        let p = ErrorParams64::with_ratio(r, a2).unwrap();
        let base = a2.powf(0.86) * r / 1.3e-2;
        prop_assume!(base < 1.0);
        let a = logical_error_rate(&p, 2 * k + 1).unwrap();
        let b = logical_error_rate(&p, 2 * k + 3).unwrap();
        prop_assert!(b.phase < a.phase);
    }

    #[test]
    fn layout_is_monotone(nb_log in 0u64..5000, nb_f in 0u64..200, d in 1u64..40, d_f in 1u64..40, which in 0usize..4) {
        let spec = LayoutSpec { nb_log, nb_factories: nb_f, d };
        let base = layout_qubits(spec, d_f).total;
        let bumped = match which {
            0 => layout_qubits(LayoutSpec { nb_log: nb_log + 1, ..spec }, d_f),
            1 => layout_qubits(LayoutSpec { nb_factories: nb_f + 1, ..spec }, d_f),
            2 => layout_qubits(LayoutSpec { d: d + 1, ..spec }, d_f),
            _ => layout_qubits(spec, d_f + 1),
        };
        prop_assert!(bumped.total >= base);
    }

    #[test]
    fn layout_items_sum_to_total(nb_log in 0u64..5000, nb_f in 0u64..200, d in 1u64..40, d_f in 1u64..40) {
        let b = layout_qubits(LayoutSpec { nb_log, nb_factories: nb_f, d }, d_f);
        prop_assert_eq!(b.total, b.logical + b.routing + b.side_routing + b.factories);
    }
}

#[test]
fn interior_photon_minimum() {
    for d in [3u32, 7, 13, 21] {
        let totals: Vec<f64> = (1..=60)
            .map(|a2| logical_error_rate(&ErrorParams64::with_ratio(1e-5, a2 as f64).unwrap(), d).unwrap().total())
            .collect();
        let (argmin, _) = totals.iter().enumerate().fold((0, f64::INFINITY), |b, (i, &v)| if v < b.1 { (i, v) } else { b });
        assert!(argmin > 0 && argmin < totals.len() - 1, "d={d} argmin at edge");
    }
}
