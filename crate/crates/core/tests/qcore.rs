use ionlink_core::purify::{rotate_pair, Rotation};
use ionlink_core::qcore::channels::{depolarize_1q, depolarize_2q};
use ionlink_core::qcore::gates::gate_matrix;
use ionlink_core::qcore::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let dim = 1 << n;
    let a: Vec<C64> = (0..dim * dim).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let a = Operator::from_entries(n, a).unwrap();
    let mut rho = a.matmul(&a.dagger());
    let t = rho.trace().re;
    rho = rho.scaled(C64::new(1.0 / t, 0.0));
    DensityMatrix::from_operator(rho).unwrap()
}

#[test]
fn bell_state_relations() {
    let phi = make_bell(BellLabel::PhiPlus);
    for (r, c) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
        assert!((phi.get(r, c).re - 0.5).abs() < 1e-15);
    }
    let x_on_1 = phi.apply_gate(&GateOp::single(GateKind::X, 1).unwrap()).unwrap();
    assert!(x_on_1.operator().max_abs_diff(make_bell(BellLabel::PsiPlus).operator()) < 1e-15);
    assert!(bell_fidelity(&make_bell(BellLabel::PhiMinus), BellLabel::PhiPlus).unwrap().abs() < 1e-15);
    assert!(bell_fidelity(&make_bell(BellLabel::PsiMinus), BellLabel::PhiPlus).unwrap().abs() < 1e-15);
}

#[test]
fn rotations_leave_phi_plus_invariant() {
    let phi = make_bell(BellLabel::PhiPlus);
    let g1 = phi
        .apply_gate(&GateOp::single(GateKind::H, 0).unwrap())
        .and_then(|s| s.apply_gate(&GateOp::single(GateKind::H, 1).unwrap()))
        .unwrap();
    let g2 = phi
        .apply_gate(&GateOp::single(GateKind::SDagger, 0).unwrap())
        .and_then(|s| s.apply_gate(&GateOp::single(GateKind::S, 1).unwrap()))
        .unwrap();
    assert!(g1.operator().max_abs_diff(phi.operator()) < 1e-15);
    assert!(g2.operator().max_abs_diff(phi.operator()) < 1e-15);
}

#[test]
fn depolarizing_examples() {
    let phi = make_bell(BellLabel::PhiPlus);
    let one = phi.apply_single_qubit_noise(1, 1e-6).unwrap();
    assert!((bell_fidelity(&one, BellLabel::PhiPlus).unwrap() - (1.0 - 1e-6)).abs() < 1e-15);
    let two = phi.apply_two_qubit_noise(0, 1, 1e-3).unwrap();
    // 12 of the 15 Pauli pairs leave the Phi+ subspace
    assert!((bell_fidelity(&two, BellLabel::PhiPlus).unwrap() - (1.0 - 0.0008)).abs() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rho = random_state(2, &mut rng);
    let full = rho.apply_two_qubit_noise(0, 1, 15.0 / 16.0).unwrap();
    assert!(full.operator().max_abs_diff(DensityMatrix::maximally_mixed(2).operator()) < 1e-14);
    let single = random_state(1, &mut rng).apply_single_qubit_noise(0, 0.75).unwrap();
    assert!(single.operator().max_abs_diff(DensityMatrix::maximally_mixed(1).operator()) < 1e-14);
    assert_eq!(rho.apply_single_qubit_noise(0, 0.0).unwrap(), rho);
}

#[test]
fn measurement_examples() {
    let zero = DensityMatrix::zero(1);
    assert!((zero.measure_branch(0, Basis::Z, 0.0, 0).unwrap().norm() - 1.0).abs() < 1e-15);
    assert!((zero.measure_branch(0, Basis::Z, 5e-4, 1).unwrap().norm() - 5e-4).abs() < 1e-15);
    let mixed = DensityMatrix::maximally_mixed(1);
    for m in 0..2 {
        assert!((mixed.measure_branch(0, Basis::Z, 0.0, m).unwrap().norm() - 0.5).abs() < 1e-15);
    }
}

#[test]
fn partial_trace_examples() {
    let phi = make_bell(BellLabel::PhiPlus);
    assert!(phi.partial_trace(&[0]).unwrap().operator().max_abs_diff(DensityMatrix::maximally_mixed(1).operator()) < 1e-15);
    assert_eq!(phi.partial_trace(&[0, 1]).unwrap(), phi);
    let two = phi.tensor(&phi);
    assert!(two.partial_trace(&[0, 2]).unwrap().operator().max_abs_diff(DensityMatrix::maximally_mixed(2).operator()) < 1e-15);
}

#[test]
fn choi_examples() {
    let id = Superoperator::identity(1);
    assert!(id.choi().operator().max_abs_diff(make_bell(BellLabel::PhiPlus).operator()) < 1e-15);
    let m = FnProcess::new(1, 0, 2, |x: &Operator| {
        Ok(vec![channels::measure_branch(x, 0, Basis::Z, 0.0, 0)?.kron(&Operator::basis_element(1, 0, 0)), {
            channels::measure_branch(x, 0, Basis::Z, 0.0, 1)?.kron(&Operator::basis_element(1, 1, 1))
        }])
    });
    let branches = extract_superoperator(&m, DEFAULT_QUBIT_BUDGET).unwrap();
    assert!((branches[0].branch_probability() - 0.5).abs() < 1e-15);
    let cz = gate_matrix(&GateKind::Cphase);
    let noisy = FnProcess::new(2, 0, 1, |x: &Operator| {
        let y = channels::apply_gate(x, &GateOp::cphase(0, 1)?)?;
        Ok(vec![depolarize_2q(&y, 0, 1, 1e-3)?])
    });
    let s = &extract_superoperator(&noisy, DEFAULT_QUBIT_BUDGET).unwrap()[0];
    let kraus = s.kraus_terms(1e-12);
    assert_eq!(kraus.len(), 16);
    assert!((kraus[0].probability - 0.999).abs() < 1e-12);
    assert!(kraus[1..].iter().all(|k| (k.probability - 1e-3 / 15.0).abs() < 1e-12));
    assert!((s.process_fidelity(&cz).unwrap() - 0.999).abs() < 1e-12);
}

#[test]
fn rotation_group_acts_as_all_permutations() {
    let labeled = bell_mixture([0.4, 0.3, 0.2, 0.1]).unwrap();
    let mut seen = Vec::new();
    for w in Rotation::group_words() {
        let (weights, dev) = bell_decomposition(&rotate_pair(&labeled, w, 0.0).unwrap()).unwrap();
        assert!(dev < 1e-14);
        assert!((weights[0] - 0.4).abs() < 1e-14);
        let key: Vec<i64> = weights[1..].iter().map(|x| (x * 10.0).round() as i64).collect();
        assert!(!seen.contains(&key));
        seen.push(key);
    }
    assert_eq!(seen.len(), 6);
    let (g1, _) = bell_decomposition(&rotate_pair(&labeled, &[Rotation::G1], 0.0).unwrap()).unwrap();
    assert!((g1[1] - 0.2).abs() < 1e-14 && (g1[2] - 0.3).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn channels_keep_states_physical(seed in any::<u64>(), p1 in 0.0f64..1.0, p2 in 0.0f64..1.0, pm in 0.0f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_state(3, &mut rng);
        let a = rho.apply_single_qubit_noise(1, p1).unwrap();
        a.check_invariants().unwrap();
        let b = a.apply_two_qubit_noise(0, 2, p2).unwrap();
        b.check_invariants().unwrap();
        let c = b.apply_gate(&GateOp::cnot(2, 0).unwrap()).unwrap();
        c.check_invariants().unwrap();
        let mut total = 0.0;
        for m in 0..2 {
            let br = c.measure_branch(1, Basis::Y, pm, m).unwrap();
            total += br.norm();
            br.normalized().unwrap().check_invariants().unwrap();
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn depolarizing_composes(seed in any::<u64>(), p in 0.0f64..0.75, q in 0.0f64..0.75) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_state(2, &mut rng);
        let twice = depolarize_1q(&depolarize_1q(rho.operator(), 0, p).unwrap(), 0, q).unwrap();
        // shrink factors multiply
        let lambda = (1.0 - 4.0 * p / 3.0) * (1.0 - 4.0 * q / 3.0);
        let once = depolarize_1q(rho.operator(), 0, 0.75 * (1.0 - lambda)).unwrap();
        prop_assert!(twice.max_abs_diff(&once) < 1e-12);
    }

    #[test]
    fn choi_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p1, p2, pm) = (rng.random_range(0.0..0.1), rng.random_range(0.0..0.1), rng.random_range(0.0..0.1));
        let circuit = move |x: &Operator| -> ionlink_core::Result<Vec<Operator>> {
            let y = x.kron(&Operator::basis_element(1, 0, 0));
            let y = channels::apply_gate(&y, &GateOp::single(GateKind::H, 0)?)?;
            let y = depolarize_1q(&y, 0, p1)?;
            let y = channels::apply_gate(&y, &GateOp::cnot(0, 2)?)?;
            let y = depolarize_2q(&y, 0, 2, p2)?;
            let y = channels::apply_gate(&y, &GateOp::cphase(1, 2)?)?;
            Ok(vec![channels::measure_branch(&y, 2, Basis::X, pm, 0)?, channels::measure_branch(&y, 2, Basis::X, pm, 1)?])
        };
        let process = FnProcess::new(2, 1, 2, circuit);
        let branches = extract_superoperator(&process, DEFAULT_QUBIT_BUDGET).unwrap();
        for _ in 0..50 {
            let rho = random_state(2, &mut rng);
            let direct = circuit(rho.operator()).unwrap();
            for (s, d) in branches.iter().zip(&direct) {
                prop_assert!(s.apply(rho.operator()).unwrap().max_abs_diff(d) < 1e-9);
            }
        }
    }
}
