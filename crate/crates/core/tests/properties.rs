use std::sync::Arc;

use num_complex::Complex;
use oqs_market::dynamics::{evolve, IntegratorConfig, RhsModel};
use oqs_market::hermcore::{HermMatrix, MarketState};
use oqs_market::observables::{pinch_diagonal, von_neumann_entropy, ProbVector};
use oqs_market::operators::{DissipatorSpec, LadderKernel, PriceGrid};
use oqs_market::oracle::{
    classical_walk, dense_dissipator_reference, random_density, random_density_supported,
    variance_rate_check, WalkSpec, RATE_SUPPORT_MARGIN,
};
use oqs_market::scenarios::{build_initial_state, InitialStateSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec_strategy() -> impl Strategy<Value = DissipatorSpec<f64>> {
    prop_oneof![
        (0.1f64..500.0).prop_map(|s| DissipatorSpec::gaussian(s).unwrap()),
        (0.1f64..500.0, 0.0f64..1.0)
            .prop_map(|(s, f)| DissipatorSpec::coherent(s, f * s, f * s).unwrap()),
        (0.1f64..500.0, 0.0f64..0.5).prop_map(|(s, h)| {
            DissipatorSpec::non_local(s, LadderKernel::from_jump_weight(h).unwrap()).unwrap()
        }),
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fast_rhs_matches_dense_reference(
        seed in any::<u64>(),
        n in prop::sample::select(vec![4usize, 8, 32, 64]),
        spec in spec_strategy(),
    ) {
        let rho = random_density::<f64, _>(n, &mut rng(seed));
        let model = RhsModel::new(spec.clone(), n).unwrap();
        let mut fast = HermMatrix::zeros(n);
        model.apply(&rho, &mut fast).unwrap();
        let reference = dense_dissipator_reference(&rho, &spec).unwrap();
        let scale = spec.sigma2().max(1.0);
        prop_assert!(fast.max_abs_diff(&reference) < 1e-12 * scale);
    }

    #[test]
    fn rhs_is_traceless_and_hermitian(
        seed in any::<u64>(),
        n in 3usize..48,
        spec in spec_strategy(),
    ) {
        let rho = random_density::<f64, _>(n, &mut rng(seed));
        let model = RhsModel::new(spec.clone(), n).unwrap();
        let mut d = HermMatrix::zeros(n);
        model.apply(&rho, &mut d).unwrap();
        let scale = spec.sigma2().max(1.0);
        prop_assert!(d.trace().norm() < 1e-12 * n as f64 * scale);
        prop_assert_eq!(d.hermitian_residual(), 0.0);
    }

    #[test]
    fn general_apply_agrees_with_hermitian_apply(
        seed in any::<u64>(),
        n in 3usize..24,
        spec in spec_strategy(),
    ) {
        let rho = random_density::<f64, _>(n, &mut rng(seed));
        let model = RhsModel::new(spec, n).unwrap();
        let mut a = HermMatrix::zeros(n);
        let mut b = HermMatrix::zeros(n);
        model.apply(&rho, &mut a).unwrap();
        model.apply_general(&rho, &mut b).unwrap();
        prop_assert!(a.max_abs_diff(&b) < 1e-12 * a.max_abs().max(1.0));
    }

    #[test]
    fn pinching_never_lowers_entropy(seed in any::<u64>(), n in 2usize..=32) {
        let rho = random_density::<f64, _>(n, &mut rng(seed));
        let grid = Arc::new(PriceGrid::centered(n, 1.0).unwrap());
        let state = MarketState::new(rho, grid).unwrap();
        let before = von_neumann_entropy(&state).unwrap();
        let after = von_neumann_entropy(&pinch_diagonal(&state)).unwrap();
        prop_assert!(after >= before - 1e-12);
        prop_assert_eq!(state.probabilities(), pinch_diagonal(&state).probabilities());
    }

    #[test]
    fn closed_form_rates_match_finite_differences(seed in any::<u64>(), spec in spec_strategy()) {
        let n = 64;
        let m = RATE_SUPPORT_MARGIN;
        let rho = random_density_supported::<f64, _>(n, m..n - m, &mut rng(seed)).unwrap();
        let grid = Arc::new(PriceGrid::centered(n, 1e-3).unwrap());
        let state = MarketState::new(rho, grid).unwrap();
        let r = variance_rate_check(&state, &spec).unwrap();
        // Rounding in the difference quotient scales as ε / (dt σ²).
        let tol = 1e-6 * (400.0 / spec.sigma2()).max(1.0);
        prop_assert!(r.rel_diff() < tol, "{:?}", r);
    }

    #[test]
    fn initial_diagonal_ignores_theta(theta in 0.0f64..=1.0, n in 9usize..80) {
        let base = InitialStateSpec { n, width: 0.05, theta: 1.0, grid: None };
        let p = build_initial_state(&base).unwrap().probabilities();
        let q = build_initial_state(&base.with_theta(theta)).unwrap().probabilities();
        for (a, b) in p.iter().zip(&q) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn walk_entropy_and_variance_increase(
        weights in prop::collection::vec(0.01f64..1.0, 2..6),
        offset in -3isize..=0,
        steps in 1usize..30,
    ) {
        let width = weights.len();
        let reach = steps * (offset.unsigned_abs().max(width - 1 + offset.max(0) as usize));
        let n = 2 * reach + width + 3;
        let mut initial = vec![0.0; n];
        initial[n / 2] = 1.0;
        let spec = WalkSpec {
            initial: ProbVector::new(initial).unwrap(),
            step: ProbVector::normalized(weights).unwrap(),
            min_offset: offset,
            n_steps: steps,
        };
        let path = classical_walk(&spec).unwrap();
        for k in 1..=steps {
            prop_assert!(path.entropy[k] > path.entropy[k - 1]);
            prop_assert!(path.variance[k] > path.variance[k - 1]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn short_runs_stay_valid_states(
        seed in any::<u64>(),
        n in 8usize..24,
        spec in spec_strategy(),
    ) {
        let rho = random_density::<f64, _>(n, &mut rng(seed));
        let grid = Arc::new(PriceGrid::centered(n, 1e-3).unwrap());
        let state = MarketState::new(rho, grid).unwrap();
        let model = RhsModel::new(spec, n).unwrap();
        let cfg = IntegratorConfig { dt: 1e-3, steps: 20, checkpoint_every: 5, ..Default::default() };
        let (fin, tr) = evolve(&state, &model, &cfg).unwrap();
        for c in &tr.checkpoints {
            prop_assert!(c.trace_error < 1e-8);
            prop_assert!(c.min_eig > -1e-6);
        }
        prop_assert_eq!(fin.matrix().hermitian_residual(), 0.0);
        prop_assert!((fin.matrix().trace() - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }
}
