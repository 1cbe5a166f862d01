use ionlink_core::purify::{run_level, werner, Level, NoiseModel, Rotation};
use ionlink_core::qcore::gates::gate_matrix;
use ionlink_core::qcore::{C64, GateKind};
use ionlink_core::stabtool::*;
use ionlink_core::{DensityMatrix, PauliString};
use proptest::prelude::*;

fn reference(eps: f64) -> NoiseModel {
    NoiseModel::reference(eps).unwrap()
}

#[test]
fn zero_noise_tables_are_ideal() {
    let n = NoiseModel::noiseless();
    for basis in [ParityBasis::X, ParityBasis::Z] {
        for level in [Level::L1, Level::L3] {
            assert_eq!(build_parity_superop_ancilla(level, &n, basis).unwrap(), ParityErrorTable::ideal(basis));
            assert_eq!(build_parity_superop_ghz(level, &n, basis).unwrap(), ParityErrorTable::ideal(basis));
        }
    }
}

#[test]
fn ghz_from_perfect_pairs() {
    let ghz = build_ghz(&RemoteGateResource::perfect(), &NoiseModel::noiseless()).unwrap();
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut psi = vec![C64::new(0.0, 0.0); 16];
    psi[0] = s;
    psi[15] = s;
    assert!((ghz.overlap(&psi).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn level_three_errors_are_mostly_lies() {
    let t = build_parity_superop_ancilla(Level::L3, &reference(0.1), ParityBasis::Z).unwrap();
    let dominant = t.dominant_error().unwrap();
    assert!(dominant.pauli.is_identity() && dominant.lie, "{dominant:?}");
    assert!(t.is_identity_dominant());
    let l1 = build_parity_superop_ancilla(Level::L1, &reference(0.1), ParityBasis::Z).unwrap();
    assert!(l1.error_mass() > t.error_mass());
}

#[test]
fn ghz_beats_ancilla_at_level_three() {
    let a = build_parity_superop_ancilla(Level::L3, &reference(0.1), ParityBasis::Z).unwrap();
    let b = build_parity_superop_ghz(Level::L3, &reference(0.1), ParityBasis::Z).unwrap();
    assert!(b.error_mass() < a.error_mass(), "{} vs {}", b.error_mass(), a.error_mass());
}

#[test]
fn error_mass_falls_with_level() {
    for eps in [0.05, 0.1, 0.15] {
        for method in [StabilizerMethod::Ancilla, StabilizerMethod::Ghz] {
            let mass: Vec<f64> = Level::ALL
                .iter()
                .map(|&l| build_parity_table(method, l, &reference(eps), ParityBasis::Z, 12).unwrap().error_mass())
                .collect();
            assert!(mass[0] >= mass[1] && mass[1] >= mass[2], "{method} eps {eps}: {mass:?}");
        }
    }
}

#[test]
fn tables_sum_to_one() {
    for method in [StabilizerMethod::Ancilla, StabilizerMethod::Ghz] {
        for basis in [ParityBasis::X, ParityBasis::Z] {
            let t = build_parity_table(method, Level::L2, &reference(0.12), basis, 12).unwrap();
            let total: f64 = t.entries().iter().map(|e| e.probability).sum();
            assert!((total - 1.0).abs() < 1e-9);
            assert!(t.entries().iter().all(|e| e.probability >= 0.0));
            assert!(t.is_identity_dominant());
        }
    }
}

#[test]
fn x_table_mirrors_z_table() {
    let n = NoiseModel { p1: 0.0, ..reference(0.1) };
    let z = build_parity_superop_ancilla(Level::L2, &n, ParityBasis::Z).unwrap();
    let x = build_parity_superop_ancilla(Level::L2, &n, ParityBasis::X).unwrap();
    for e in z.entries() {
        let swapped = PauliString::from_masks(4, e.pauli.z_mask(), e.pauli.x_mask());
        assert!((x.probability(&swapped, e.lie) - e.probability).abs() < 1e-12);
    }
}

#[test]
fn steering_keeps_gate_infidelity() {
    let cz = gate_matrix(&GateKind::Cphase);
    let pair = run_level(Level::L2, &reference(0.1)).unwrap().state;
    // perfect local operations: only the resource is noisy
    let noise = NoiseModel::noiseless();
    let infidelity = |word: &'static [Rotation]| {
        let r = RemoteGateResource::new(pair.clone(), word).unwrap();
        1.0 - remote_cphase_superop(&r, &noise).unwrap().process_fidelity(&cz).unwrap()
    };
    let base = infidelity(&[]);
    for w in Rotation::group_words() {
        assert!((infidelity(w) - base).abs() < 1e-10);
    }
}

#[test]
fn werner_resource_channel() {
    let cz = gate_matrix(&GateKind::Cphase);
    let eps = 0.12;
    let r = RemoteGateResource::new(werner(eps).unwrap(), &[]).unwrap();
    let s = remote_cphase_superop(&r, &NoiseModel::noiseless()).unwrap();
    assert!((s.process_fidelity(&cz).unwrap() - (1.0 - eps)).abs() < 1e-12);
    let kraus = s.kraus_terms(1e-12);
    assert_eq!(kraus.len(), 4);
    for k in &kraus[1..] {
        assert!((k.probability - eps / 3.0).abs() < 1e-12);
    }
}

#[test]
fn branches_of_an_entangled_input() {
    // Bell input on the application qubits: every branch must still be cPhase
    let cz = gate_matrix(&GateKind::Cphase);
    let phi = ionlink_core::qcore::make_bell(ionlink_core::BellLabel::PhiPlus);
    let rho: DensityMatrix = phi.tensor(&phi);
    let want = rho.operator().conjugate(&[0, 2], &cz).unwrap();
    for outcomes in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let b = remote_cphase_branch(&rho, 0, 2, &RemoteGateResource::perfect(), &NoiseModel::noiseless(), outcomes).unwrap();
        assert!(b.normalized().unwrap().operator().max_abs_diff(&want) < 1e-12);
    }
}

#[test]
fn serialized_table_is_stable() {
    let t = build_parity_superop_ghz(Level::L1, &reference(0.1), ParityBasis::X).unwrap();
    let again = build_parity_superop_ghz(Level::L1, &reference(0.1), ParityBasis::X).unwrap();
    assert_eq!(t.to_string(), again.to_string());
    let back: ParityErrorTable = t.to_string().parse().unwrap();
    for e in t.entries() {
        let p = back.probability(&e.pauli, e.lie);
        assert!((p - e.probability).abs() <= 1e-11 * e.probability.max(1e-300));
    }
}

#[test]
fn budget_is_enforced() {
    let r = RemoteGateResource::perfect();
    assert!(matches!(
        ancilla_parity(&r, &NoiseModel::noiseless(), ParityBasis::Z, 7),
        Err(ionlink_core::Error::QubitBudget { .. })
    ));
}

fn letters() -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('I'), Just('X'), Just('Y'), Just('Z')], 4).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #[test]
    fn text_round_trip(raw in proptest::collection::vec((letters(), any::<bool>(), 1e-9f64..1.0), 1..12), z in any::<bool>()) {
        let basis = if z { ParityBasis::Z } else { ParityBasis::X };
        let total: f64 = raw.iter().map(|r| r.2).sum();
        let entries = raw
            .iter()
            .map(|(p, lie, w)| TableEntry { pauli: p.parse().unwrap(), lie: *lie, probability: w / total })
            .collect();
        let t = ParityErrorTable::new(basis, entries).unwrap();
        let text = t.to_string();
        let back: ParityErrorTable = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back.entries().len(), t.entries().len());
    }
}
