//! Property-based tests for the library invariants.

use proptest::prelude::*;

use singmin_lab::ensembles::{EnsembleKind, EnsembleSpec};
use singmin_lab::linalg::{self, Mat, PNorm, RVec};
use singmin_lab::rng::Seed;
use singmin_lab::tails;
use singmin_lab::theorems;

fn entry() -> impl Strategy<Value = f64> {
    (-300i32..=300).prop_map(|x| x as f64 / 100.0)
}

fn square_mat(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(entry(), n * n)
        .prop_map(move |data| Mat::new(n, n, data).expect("finite entries"))
}

fn row_stack(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(entry(), (n - 1) * n)
        .prop_map(move |data| Mat::new(n - 1, n, data).expect("finite entries"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cross_product_is_alternating(stack in row_stack(4), i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let w = linalg::cross_product(&stack).unwrap();
        let mut rows: Vec<Vec<f64>> = (0..3).map(|r| stack.row(r).to_vec()).collect();
        rows.swap(i, j);
        let swapped = Mat::new(3, 4, rows.concat()).unwrap();
        let ws = linalg::cross_product(&swapped).unwrap();
        let scale = w.norm_inf().max(ws.norm_inf()).max(1.0);
        for (a, b) in w.as_slice().iter().zip(ws.as_slice()) {
            prop_assert!((a + b).abs() <= 1e-12 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn cross_product_is_homogeneous(stack in row_stack(3), c in -4.0f64..4.0, row in 0usize..2) {
        // Scaling one row scales the product by the same factor.
        let w = linalg::cross_product(&stack).unwrap();
        let mut rows: Vec<Vec<f64>> = (0..2).map(|r| stack.row(r).to_vec()).collect();
        for v in &mut rows[row] {
            *v *= c;
        }
        let scaled = Mat::new(2, 3, rows.concat()).unwrap();
        let wc = linalg::cross_product(&scaled).unwrap();
        let scale = w.norm_inf().max(1.0) * c.abs().max(1.0);
        for (a, b) in w.as_slice().iter().zip(wc.as_slice()) {
            prop_assert!((c * a - b).abs() <= 1e-12 * scale, "{a} {b}");
        }
    }

    #[test]
    fn cross_product_is_additive_in_a_row(stack in row_stack(3), extra in prop::collection::vec(entry(), 3)) {
        // Additivity in the first row, the other held fixed.
        let base = linalg::cross_product(&stack).unwrap();
        let mut sum_rows = stack.row(0).to_vec();
        for (s, e) in sum_rows.iter_mut().zip(&extra) {
            *s += e;
        }
        let with_sum =
            Mat::new(2, 3, [sum_rows, stack.row(1).to_vec()].concat()).unwrap();
        let with_extra =
            Mat::new(2, 3, [extra.clone(), stack.row(1).to_vec()].concat()).unwrap();
        let lhs = linalg::cross_product(&with_sum).unwrap();
        let a = linalg::cross_product(&with_extra).unwrap();
        let scale = lhs.norm_inf().max(base.norm_inf()).max(a.norm_inf()).max(1.0);
        for k in 0..3 {
            prop_assert!(
                (lhs.get(k) - base.get(k) - a.get(k)).abs() <= 1e-12 * scale
            );
        }
    }

    #[test]
    fn cross_product_orthogonal_to_rows(stack in row_stack(4)) {
        let w = linalg::cross_product(&stack).unwrap();
        for r in 0..3 {
            let row = RVec::new(stack.row(r).to_vec()).unwrap();
            let bound = 1e-10 * row.norm_l2() * w.norm_l2() + 1e-12;
            prop_assert!(row.dot(&w).abs() <= bound);
        }
    }

    #[test]
    fn condition_number_row_permutation_invariant(m in square_mat(3), p in 0usize..3) {
        let norm = [PNorm::One, PNorm::Two, PNorm::Inf][p];
        let kappa = linalg::condition_number(&m, norm).unwrap();
        // Rotate the rows by one.
        let permuted = Mat::new(
            3,
            3,
            [m.row(1).to_vec(), m.row(2).to_vec(), m.row(0).to_vec()].concat(),
        )
        .unwrap();
        let kappa_p = linalg::condition_number(&permuted, norm).unwrap();
        if kappa.is_finite() && kappa_p.is_finite() {
            prop_assert!((kappa - kappa_p).abs() <= 1e-8 * kappa.max(1.0), "{kappa} {kappa_p}");
        } else {
            prop_assert_eq!(kappa.is_finite(), kappa_p.is_finite());
        }
    }

    #[test]
    fn condition_number_transpose_invariant_spectral(m in square_mat(3)) {
        let kappa = linalg::condition_number(&m, PNorm::Two).unwrap();
        let kappa_t = linalg::condition_number(&m.transpose(), PNorm::Two).unwrap();
        if kappa.is_finite() && kappa_t.is_finite() {
            prop_assert!((kappa - kappa_t).abs() <= 1e-8 * kappa.max(1.0));
        } else {
            prop_assert_eq!(kappa.is_finite(), kappa_t.is_finite());
        }
    }

    #[test]
    fn sigma_min_duality_on_invertible(m in square_mat(4)) {
        if let Ok(inv) = linalg::inverse(&m) {
            let product = linalg::sigma_min(&m).unwrap()
                * linalg::op_norm(&inv, PNorm::Two).unwrap();
            prop_assert!((product - 1.0).abs() <= 1e-8, "{product}");
        }
    }

    #[test]
    fn inverse_residual_within_conditioned_bound(m in square_mat(3)) {
        if let Ok(inv) = linalg::inverse(&m) {
            let kappa = linalg::condition_number(&m, PNorm::Two).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let mut s = 0.0;
                    for k in 0..3 {
                        s += m.get(i, k) * inv.get(k, j);
                    }
                    let target = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((s - target).abs() <= 1e-9 * kappa);
                }
            }
        }
    }

    #[test]
    fn hill_power_of_two_scale_invariance(seed in 0u64..50, j in -8i32..8) {
        let law = singmin_lab::laws::Pareto { alpha: 1.5 };
        use singmin_lab::laws::VectorLaw;
        let samples: Vec<f64> = (0..500).map(|i| law.sample(Seed(seed), i).get(0)).collect();
        let scaled: Vec<f64> = samples.iter().map(|x| x * 2f64.powi(j)).collect();
        let a = tails::hill_estimator(&samples, 40).unwrap();
        let b = tails::hill_estimator(&scaled, 40).unwrap();
        prop_assert_eq!(a.alpha_hat, b.alpha_hat);
    }

    #[test]
    fn moment_monotone_in_alpha(seed in 0u64..50) {
        let law = singmin_lab::laws::Pareto { alpha: 2.0 };
        use singmin_lab::laws::VectorLaw;
        // Pareto samples are >= 1, so moments grow with alpha.
        let samples: Vec<f64> = (0..200).map(|i| law.sample(Seed(seed), i).get(0)).collect();
        let mut prev = 0.0;
        for alpha in [0.0, 0.25, 0.5, 0.75, 1.0, 1.2] {
            let m = tails::empirical_moment(&samples, alpha).unwrap();
            prop_assert!(m >= prev);
            prev = m;
        }
    }

    #[test]
    fn cdf_counts_always_nested(seed in 0u64..20, kind in 0usize..3) {
        let kinds = [
            EnsembleKind::GaussianIid,
            EnsembleKind::RademacherIid,
            EnsembleKind::CauchyIid,
        ];
        let spec = EnsembleSpec::new(kinds[kind], 2).unwrap();
        let grid = [1e-4, 1e-2, 0.5, 2.0];
        let cdf = theorems::estimate_sigma_min_cdf(&spec, &grid, 500, Seed(seed), 0.95, 1)
            .unwrap();
        for w in cdf.counts.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        for &(p, lo, hi) in &cdf.points {
            prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
        }
    }

    #[test]
    fn row_exchangeability(matrix_index in 0u64..200) {
        // Drawing row j of a matrix equals drawing with the indices permuted:
        // rows are keyed only by their own index tuple.
        let spec = EnsembleSpec::new(EnsembleKind::LogConcaveLaplace, 4).unwrap();
        let m = spec.sample_matrix(Seed(6), matrix_index);
        for j in 0..4u64 {
            let row = spec.sample_row(Seed(6), matrix_index, j).unwrap();
            prop_assert_eq!(m.row(j as usize), row.as_slice());
        }
    }
}
