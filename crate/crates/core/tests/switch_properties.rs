use proptest::prelude::*;

use switchlab::linalg::{c, max_abs_diff, r, CMat2, Ket2};
use switchlab::qchannel::{DensityMatrix, KrausSet};
use switchlab::random::{self, substream};
use switchlab::switch::{
    branch_maps, default_control, effective_channel, effective_channel_brute, pauli_branches, run_switch,
    ControlledOp,
};

fn half_identity() -> DensityMatrix {
    DensityMatrix::maximally_mixed_qubit()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pauli_branches_match_brute_force(seed in any::<u64>()) {
        let p = random::pauli_channel(&mut substream(seed, 0));
        let (plus, minus) = pauli_branches(&p).cp_maps();
        let (bp, bm) = branch_maps(&KrausSet::new(p.kraus()));
        prop_assert!(max_abs_diff(plus.choi().matrix(), bp.choi().matrix()) < 1e-9);
        prop_assert!(max_abs_diff(minus.choi().matrix(), bm.choi().matrix()) < 1e-9);
    }

    #[test]
    fn branch_weight_is_plus_trace(seed in any::<u64>()) {
        let p = random::pauli_channel(&mut substream(seed, 0));
        let q = pauli_branches(&p).q;
        let sr = run_switch(&KrausSet::new(p.kraus()), &half_identity(), &default_control()).unwrap();
        let half = CMat2::identity() * r(0.5);
        prop_assert!((sr.branch_plus.apply_operator(&half).trace().re - q).abs() < 1e-10);
        prop_assert!((sr.branch_minus.apply_operator(&half).trace().re - (1.0 - q)).abs() < 1e-10);
    }

    #[test]
    fn branch_traces_sum_to_one_for_any_channel(seed in any::<u64>()) {
        let mut rng = substream(seed, 0);
        let ch = random::any_channel(&mut rng);
        let rho = *random::mixed_state(&mut rng).as_qubit().unwrap();
        let (plus, minus) = branch_maps(ch.kraus());
        let total = plus.apply_operator(&rho).trace().re + minus.apply_operator(&rho).trace().re;
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn branch_decomposition_matches_joint_state(seed in any::<u64>()) {
        let mut rng = substream(seed, 0);
        let ch = random::any_channel(&mut rng);
        let op = random::controlled_op(&mut rng);
        let omega = random::mixed_state(&mut rng);
        let fast = effective_channel(ch.kraus(), &op, &omega).unwrap();
        let brute = effective_channel_brute(ch.kraus(), &op, &omega, None).unwrap();
        prop_assert!(fast.tmatrix().max_abs_diff(brute.tmatrix()) < 1e-10);
    }

    #[test]
    fn control_phase_covariance(seed in any::<u64>(), alpha in 0.0f64..6.3, beta in 0.0f64..6.3) {
        let mut rng = substream(seed, 0);
        let ch = random::any_channel(&mut rng);
        let op = random::controlled_op(&mut rng);
        let omega = random::mixed_state(&mut rng);
        let v = CMat2::new(c(alpha.cos(), alpha.sin()), r(0.0), r(0.0), c(beta.cos(), beta.sin()));
        let w = *omega.as_qubit().unwrap();
        let omega_v = DensityMatrix::qubit(v * w * v.adjoint()).unwrap();
        let [a, b] = op.basis();
        let [l1, l2] = op.channels();
        let rotated = ControlledOp::new(Ket2::from(v * a), Ket2::from(v * b), l1.clone(), l2.clone()).unwrap();
        let before = effective_channel_brute(ch.kraus(), &op, &omega, None).unwrap();
        let after = effective_channel_brute(ch.kraus(), &rotated, &omega_v, None).unwrap();
        prop_assert!(before.tmatrix().max_abs_diff(after.tmatrix()) < 1e-10);
    }
}
