//! Reference values of the gate error tables, factory table and layout.

use approx::assert_relative_eq;
use errormodel::{
    ccx_errors, factory_lookup, factory_table, layout_qubits, logical_qubit_count, parse_factory_csv,
    physical_errors, ErrorModelError, ErrorParams64, FactoryTable, Gate, LayoutSpec,
};

/// True when `value` lies within one unit of the last printed digit of a
/// two-significant-figure reference.
fn within_last_digit(value: f64, printed: f64) -> bool {
    let unit = 10f64.powf(printed.abs().log10().floor() - 1.0);
    (value - printed).abs() < unit
}

fn params() -> ErrorParams64 {
    ErrorParams64::with_ratio(1e-5, 19.0).unwrap()
}

#[test]
fn preparation_and_measurement() {
    for gate in [Gate::Prep, Gate::Meas] {
        let e = physical_errors(&params(), gate);
        assert_relative_eq!(e.infidelity(), 1.9e-4, max_relative = 1e-12);
        assert!(within_last_digit(e.infidelity(), 1.9e-4));
        assert_eq!(e.bit_flip, None);
    }
}

#[test]
fn fast_cnot() {
    let e = physical_errors(&params(), Gate::CnotFast);
    let z1 = e.probability("Z1").unwrap();
    let z2 = e.probability("Z2").unwrap();
    assert_eq!(z2, e.probability("Z1Z2").unwrap());
    assert!(within_last_digit(z1, 8.3e-3), "{z1}");
    assert!(within_last_digit(z2, 9.5e-5), "{z2}");
    assert!(within_last_digit(e.infidelity(), 8.4e-3), "{}", e.infidelity());
    let expected_z1 = 19.0 * 1e-5 + std::f64::consts::PI.powi(2) / (64.0 * 19.0);
    assert_relative_eq!(z1, expected_z1, max_relative = 1e-14);
    assert_relative_eq!(e.bit_flip.unwrap(), 0.5 * (-38f64).exp(), max_relative = 1e-14);
}

#[test]
fn slow_cnot_is_independent_of_photon_number() {
    for a2 in [4.0, 11.0, 19.0, 27.0] {
        let e = physical_errors(&ErrorParams64::with_ratio(1e-5, a2).unwrap(), Gate::CnotSlow);
        assert!(within_last_digit(e.infidelity(), 3.5e-3), "{}", e.infidelity());
        assert!(within_last_digit(e.probability("Z1").unwrap(), 2.6e-3));
        assert!(within_last_digit(e.probability("Z2").unwrap(), 4.4e-4));
        assert_relative_eq!(e.duration * a2, 89.0, max_relative = 1e-14);
        assert_relative_eq!(e.bit_flip.unwrap(), 0.02 * (-2.0 * a2).exp(), max_relative = 1e-14);
    }
}

#[test]
fn toffoli_formula_values() {
    let e = physical_errors(&params(), Gate::Ccx);
    let loss = 89.0 * 1e-5;
    let nonadiabatic = std::f64::consts::PI.powi(2) / (128.0 * 89.0);
    assert_relative_eq!(e.probability("Z1").unwrap(), loss + nonadiabatic, max_relative = 1e-14);
    assert_eq!(e.probability("Z1"), e.probability("Z2"));
    assert_relative_eq!(e.probability("Z3").unwrap(), 5.0 * loss / 8.0, max_relative = 1e-14);
    assert_relative_eq!(e.probability("Z1Z2").unwrap(), nonadiabatic, max_relative = 1e-14);
    for s in ["Z1Z3", "Z2Z3", "Z1Z2Z3"] {
        assert_relative_eq!(e.probability(s).unwrap(), loss / 8.0, max_relative = 1e-14);
    }
    assert!(within_last_digit(e.probability("Z1").unwrap(), 1.8e-3));
}

#[test]
fn toffoli_reference_values_not_jointly_reachable_for_any_gate_time() {
    let p = params();
    let targets = [("Z1", 1.8e-3), ("Z3", 1.1e-4), ("Z1Z2", 8.8e-4), ("Z1Z3", 2.3e-5)];
    let reachable = (1..=200_000).any(|k| {
        let e = ccx_errors(&p, k as f64 * 1e-3);
        targets.iter().all(|&(s, v)| within_last_digit(e.probability(s).unwrap(), v))
    });
    assert!(!reachable);
}

#[test]
fn unknown_gate_tag() {
    assert!(matches!("cz".parse::<Gate>(), Err(ErrorModelError::UnknownGate(_))));
    for g in Gate::ALL {
        assert_eq!(g.tag().parse::<Gate>().unwrap(), g);
    }
}

#[test]
fn factory_rows() {
    let r12 = factory_lookup::<f64>(12).unwrap();
    assert_eq!((r12.d_f, r12.steps), (19, 9576));
    assert_eq!((r12.alpha_sq_f, r12.error_prob, r12.prep_time, r12.acceptance), (17.35, 7.90e-12, 4.92e-3, 1.0));
    let r0 = factory_lookup::<f64>(0).unwrap();
    assert_eq!((r0.d_f, r0.error_prob, r0.acceptance), (3, 1.05e-3, 0.84));
    let r4 = factory_lookup::<f64>(4).unwrap();
    assert_eq!((r4.error_prob, r4.prep_time), (7.00e-7, 57.8e-6));
    assert!(matches!(factory_lookup::<f64>(15), Err(ErrorModelError::IndexOutOfRange { index: 15, len: 15 })));

    let t = factory_table::<f64>();
    assert_eq!(t.len(), 15);
    for w in t.rows().windows(2) {
        assert!(w[1].error_prob < w[0].error_prob);
    }
    for r in t.rows() {
        assert_eq!(r.acceptance == 1.0, r.i >= 12);
        assert_eq!(r.is_heralded(), r.i <= 11);
    }
    let t32 = factory_table::<f32>();
    assert_eq!(t32.get(7).unwrap().error_prob, 8.40e-9f32);
}

fn table_as_csv(t: &FactoryTable<f64>) -> String {
    let mut s = String::from("i,d_f,alpha_sq_f,error_prob,steps,prep_time_s,acceptance\n");
    for r in t.rows() {
        s += &format!(
            "{},{},{},{},{},{},{}\n",
            r.i, r.d_f, r.alpha_sq_f, r.error_prob, r.steps, r.prep_time, r.acceptance
        );
    }
    s
}

#[test]
fn factory_csv_round_trip_and_header_check() {
    let t = factory_table::<f64>();
    let csv = table_as_csv(&t);
    assert_eq!(parse_factory_csv(csv.as_bytes()).unwrap(), t);

    let bad_header = csv.replacen("prep_time_s", "time", 1);
    assert!(matches!(parse_factory_csv(bad_header.as_bytes()), Err(ErrorModelError::FactoryTable(_))));

    let bad_acceptance = "i,d_f,alpha_sq_f,error_prob,steps,prep_time_s,acceptance\n0,3,3.75,1e-3,23,5e-5,1.5\n";
    assert!(parse_factory_csv(bad_acceptance.as_bytes()).is_err());

    let bad_index = "i,d_f,alpha_sq_f,error_prob,steps,prep_time_s,acceptance\n1,3,3.75,1e-3,23,5e-5,0.5\n";
    assert!(parse_factory_csv(bad_index.as_bytes()).is_err());
}

#[test]
fn layout_skeleton() {
    let b = layout_qubits(LayoutSpec { nb_log: 0, nb_factories: 0, d: 5 }, 5);
    assert_eq!(b.routing_lines, 1);
    assert_eq!((b.logical, b.routing, b.side_routing, b.factories), (0, 9, 4, 0));
    assert_eq!(b.total, 13);
}

#[test]
fn layout_four_logical_one_factory() {
    let b = layout_qubits(LayoutSpec { nb_log: 4, nb_factories: 1, d: 5 }, 5);
    // 4 rows of 9, 4 routing rows of 9, 2 × (3·(4 + 4 + 4) − 1) side qubits, 5 factory rows of 9.
    assert_eq!(b.logical, 36);
    assert_eq!(b.routing_lines, 4);
    assert_eq!(b.routing, 36);
    assert_eq!(b.side_routing, 70);
    assert_eq!(b.factories, 45);
    assert_eq!(b.total, 187);
}

#[test]
fn layout_full_size_configuration() {
    let b = layout_qubits(LayoutSpec { nb_log: 2326, nb_factories: 84, d: 13 }, 19);
    let rel = (b.total as f64 - 126133.0).abs() / 126133.0;
    assert!(rel <= 0.15, "total {} off by {rel}", b.total);
    let rel_f = (b.factories as f64 - 18101.0).abs() / 18101.0;
    assert!(rel_f <= 0.15, "factories {} off by {rel_f}", b.factories);
}

#[test]
fn logical_qubit_column() {
    let rows = [(8, 9, 85), (16, 11, 159), (32, 13, 305), (64, 15, 595), (128, 17, 1173), (256, 18, 2326), (512, 20, 4632)];
    for (n, w_e, expected) in rows {
        assert_eq!(logical_qubit_count(n, w_e), expected);
    }
}
