//! Randomised invariants of every module.

use std::sync::OnceLock;

use cmcls::cheb_basis::{diff_coeffs, diff_coeffs_nu, eval_t, eval_u};
use cmcls::dense_linalg::{matmul, one_norm, LuFactorization};
use cmcls::differentiation::{derivative_s1, derivative_s2};
use cmcls::grid::{
    equispaced_nodes, mock_chebyshev_select, node_counts, secondary_mock_chebyshev_select,
};
use cmcls::interp::{dense_grid, LagrangeBasisSet};
use cmcls::{ChebSeries, DenseMatrix, Error, NodeKind, NodeSet, Problem};
use proptest::prelude::*;

fn problem(n: usize) -> &'static Problem {
    static P66: OnceLock<Problem> = OnceLock::new();
    static P100: OnceLock<Problem> = OnceLock::new();
    static P500: OnceLock<Problem> = OnceLock::new();
    let cell = match n {
        66 => &P66,
        100 => &P100,
        500 => &P500,
        _ => unreachable!("no cached problem for n = {n}"),
    };
    cell.get_or_init(|| Problem::build(n).unwrap())
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn grid_n() -> impl Strategy<Value = usize> {
    prop_oneof![Just(66usize), Just(100), Just(500)]
}

fn samples_for(n: usize, seed: u64) -> Vec<f64> {
    // deterministic, rough data: exercises the operator away from smooth inputs
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..=n)
        .map(|_| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn node_counts_are_consistent(n in 12usize..200_000) {
        let c = node_counts(n).unwrap();
        prop_assert_eq!(c.r, c.m + c.p + 1);
        prop_assert_eq!(c.q, n / 6);
        prop_assert!(c.p <= c.m && c.r <= n);
        let next = node_counts(n + 1).unwrap();
        prop_assert!(next.m >= c.m && next.p >= c.p);
    }

    #[test]
    fn selections_pick_nearest_distinct_nodes(n in 12usize..3000) {
        let grid = equispaced_nodes(n).unwrap();
        let c = node_counts(n).unwrap();
        let h = 2.0 / n as f64;
        match mock_chebyshev_select(&grid, c.m) {
            Ok(sel) => {
                let idx = sel.indices();
                prop_assert_eq!(idx.len(), c.m + 1);
                prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(idx[0], 0);
                prop_assert_eq!(idx[c.m], n);
                for (k, &i) in idx.iter().enumerate() {
                    let t = -(std::f64::consts::PI * k as f64 / c.m as f64).cos();
                    prop_assert!((grid.values()[i] - t).abs() <= h / 2.0 + 1e-12);
                }
                if let Ok(sec) = secondary_mock_chebyshev_select(&grid, &sel, &c) {
                    prop_assert_eq!(sec.len(), c.p + 1);
                    prop_assert!(sec.indices().iter().all(|i| !sel.contains(*i)));
                    prop_assert!(sec.indices().windows(2).all(|w| w[0] < w[1]));
                }
            }
            Err(e) => {
                prop_assert!(matches!(e, Error::Selection { .. }), "unexpected error {:?}", e);
            }
        }
    }

    #[test]
    fn chebyshev_identities(k in 2usize..200, theta in 0.0f64..std::f64::consts::PI) {
        let x = theta.cos();
        let t = eval_t(k, x).unwrap();
        prop_assert!(t.abs() <= 1.0 + 1e-12);
        prop_assert!((t - (k as f64 * theta).cos()).abs() <= 1e-10);
        let u = eval_u(k, x).unwrap() - eval_u(k - 2, x).unwrap();
        prop_assert!((u - 2.0 * t).abs() <= 1e-9 * (k as f64));
        prop_assert!(eval_u(k, x).unwrap().abs() <= (k + 1) as f64 * (1.0 + 1e-12));
    }

    #[test]
    fn series_is_linear_and_diff_matches_difference_quotient(
        a in prop::collection::vec(-1.0f64..1.0, 1..15),
        b in prop::collection::vec(-1.0f64..1.0, 1..15),
        lambda in -3.0f64..3.0,
        x in -0.9f64..0.9,
    ) {
        let sa = ChebSeries::new(a).unwrap();
        let sb = ChebSeries::new(b).unwrap();
        let comb = sa.linear_combination(lambda, &sb, 1.0);
        let lhs = comb.eval(x).unwrap();
        let rhs = lambda * sa.eval(x).unwrap() + sb.eval(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));

        let h = 1e-5;
        let fd = (sa.eval(x + h).unwrap() - sa.eval(x - h).unwrap()) / (2.0 * h);
        let d = diff_coeffs(&sa).eval(x).unwrap();
        prop_assert!((fd - d).abs() <= 1e-5 * (1.0 + d.abs()));
    }

    #[test]
    fn lu_solves_and_inverts(
        size in 2usize..30,
        entries in prop::collection::vec(-1.0f64..1.0, 900),
        rhs in prop::collection::vec(-5.0f64..5.0, 30),
    ) {
        let mut a = DenseMatrix::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                let bump = if i == j { size as f64 } else { 0.0 };
                a.set(i, j, entries[i * 30 + j] + bump);
            }
        }
        let lu = LuFactorization::new(&a).unwrap();
        let x = lu.solve_vec(&rhs[..size]).unwrap();
        let ax = a.mul_vec(&x).unwrap();
        prop_assert!(max_diff(&ax, &rhs[..size]) <= 1e-11 * (1.0 + sup(&rhs[..size])));
        let prod = matmul(&a, &lu.inverse().unwrap()).unwrap();
        let err = one_norm(&prod.sub(&DenseMatrix::identity(size)).unwrap());
        prop_assert!(err <= 1e-12 * size as f64);

        // row swaps permute the solution of the permuted system trivially
        let mut pa = a.clone();
        let mut pb = rhs[..size].to_vec();
        for j in 0..size {
            pa.set(0, j, a.get(size - 1, j));
            pa.set(size - 1, j, a.get(0, j));
        }
        pb.swap(0, size - 1);
        let px = LuFactorization::new(&pa).unwrap().solve_vec(&pb).unwrap();
        prop_assert!(max_diff(&px, &x) <= 1e-11 * (1.0 + sup(&x)));
    }

    #[test]
    fn barycentric_partition_of_unity(
        mut pts in prop::collection::btree_set(-1000i32..=1000, 2..40),
        x in -1.0f64..1.0,
    ) {
        pts.insert(-1000);
        pts.insert(1000);
        let nodes = NodeSet::new(pts.iter().map(|&p| p as f64 / 1000.0).collect(), NodeKind::Combined).unwrap();
        let basis = LagrangeBasisSet::new(nodes);
        let ell = basis.fundamentals_at(x);
        let s: f64 = ell.iter().sum();
        // clustered nodes have a huge Lebesgue function; roundoff scales with it
        let lebesgue: f64 = ell.iter().map(|l| l.abs()).sum();
        prop_assert!((s - 1.0).abs() <= 1e-13 * lebesgue.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operator_is_linear(n in grid_n(), s1 in any::<u64>(), s2 in any::<u64>(), lambda in -10.0f64..10.0, mu in -10.0f64..10.0) {
        let p = problem(n);
        let f = samples_for(n, s1);
        let g = samples_for(n, s2);
        let h: Vec<f64> = f.iter().zip(&g).map(|(a, b)| lambda * a + mu * b).collect();
        let fit_h = p.fit(&h).unwrap();
        let comb = p.fit(&f).unwrap().series().linear_combination(lambda, p.fit(&g).unwrap().series(), mu);
        let tol = 1e-9 * (lambda.abs() + mu.abs()) * sup(&f).max(sup(&g));
        prop_assert!(max_diff(fit_h.series().coeffs(), comb.coeffs()) <= tol);
        // range is the polynomials of degree <= r
        prop_assert_eq!(fit_h.series().coeffs().len(), p.config().r + 1);
    }

    #[test]
    fn operator_reproduces_polynomials(n in grid_n(), coeffs in prop::collection::vec(-1.0f64..1.0, 300)) {
        let p = problem(n);
        let r = p.config().r;
        let q = ChebSeries::new(coeffs[..=r].to_vec()).unwrap();
        let fit = p.fit_fn(|x| q.eval(x).unwrap()).unwrap();
        prop_assert!(max_diff(fit.series().coeffs(), q.coeffs()) <= 1e-8);
    }

    #[test]
    fn operator_interpolates_on_primary_nodes(n in grid_n(), seed in any::<u64>()) {
        let p = problem(n);
        let b = samples_for(n, seed);
        let fit = p.fit(&b).unwrap();
        let d: Vec<f64> = p.primary().indices().iter().map(|&i| b[i]).collect();
        for (&x, &di) in p.primary_nodes().values().iter().zip(&d) {
            prop_assert!((fit.evaluate(x).unwrap() - di).abs() <= 1e-8 * (1.0 + sup(&d)));
        }
    }

    #[test]
    fn operator_is_idempotent(n in grid_n(), seed in any::<u64>()) {
        let p = problem(n);
        let fit = p.fit(&samples_for(n, seed)).unwrap();
        let again = p.refit_from_fit(&fit).unwrap();
        prop_assert!(max_diff(fit.series().coeffs(), again.series().coeffs()) <= 1e-8);
    }

    #[test]
    fn operator_sees_only_grid_values(n in grid_n(), amp in -5.0f64..5.0, shift in -1.0f64..1.0) {
        // g - f vanishes on the grid
        let p = problem(n);
        let f = |x: f64| (2.0 * x + shift).exp();
        let g = |x: f64| f(x) + amp * (std::f64::consts::PI * n as f64 * (x + 1.0) / 2.0).sin();
        let a = p.fit_fn(f).unwrap();
        let b = p.fit_fn(g).unwrap();
        let scale = 1.0 + amp.abs();
        prop_assert!(max_diff(a.series().coeffs(), b.series().coeffs()) <= 1e-9 * scale);
    }

    #[test]
    fn operator_norm_is_below_bound(n in grid_n(), seed in any::<u64>()) {
        let p = problem(n);
        let b = samples_for(n, seed);
        let fit = p.fit(&b).unwrap();
        let report = cmcls::BoundReport::from_problem(p);
        let sup_fit = dense_grid(&[]).iter().fold(0.0f64, |m, &x| m.max(fit.evaluate(x).unwrap().abs()));
        prop_assert!(sup_fit <= report.b_n * sup(&b));
    }

    #[test]
    fn kkt_solution_is_constrained_minimum(n in grid_n(), seed in any::<u64>(), dirs in prop::collection::vec(-1.0f64..1.0, 600)) {
        let p = problem(n);
        let b = samples_for(n, seed);
        let fit = p.fit(&b).unwrap();
        let v = p.vandermonde();
        let c = p.constraints();
        let a_hat = fit.series().coeffs();
        let cols = a_hat.len();
        let cct = matmul(c, &c.transpose()).unwrap();
        let cct_lu = LuFactorization::new(&cct).unwrap();
        let resid = |a: &[f64]| -> f64 {
            let va = v.mul_vec(a).unwrap();
            va.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
        };
        let base = resid(a_hat);
        for k in 0..50 {
            let raw: Vec<f64> = (0..cols).map(|j| dirs[(k * 7 + j) % dirs.len()]).collect();
            // project onto ker C
            let y = cct_lu.solve_vec(&c.mul_vec(&raw).unwrap()).unwrap();
            let corr = c.transpose_mul_vec(&y).unwrap();
            let delta: Vec<f64> = raw.iter().zip(&corr).map(|(a, b)| a - b).collect();
            prop_assert!(sup(&c.mul_vec(&delta).unwrap()) <= 1e-9 * (1.0 + sup(&raw)));
            for t in [1e-3, -1e-3] {
                let moved: Vec<f64> = a_hat.iter().zip(&delta).map(|(a, d)| a + t * d).collect();
                prop_assert!(resid(&moved) >= base - 1e-10);
            }
        }
    }

    #[test]
    fn derivatives_are_linear_and_drop_degree(
        a in prop::collection::vec(-1.0f64..1.0, 2..20),
        b in prop::collection::vec(-1.0f64..1.0, 2..20),
        lambda in -4.0f64..4.0,
        nu in 1usize..4,
    ) {
        let sa = ChebSeries::new(a).unwrap();
        let sb = ChebSeries::new(b).unwrap();
        let lhs = diff_coeffs_nu(&sa.linear_combination(lambda, &sb, 1.0), nu);
        let rhs = diff_coeffs_nu(&sa, nu).linear_combination(lambda, &diff_coeffs_nu(&sb, nu), 1.0);
        let scale = 1.0 + lhs.max_abs();
        prop_assert!(max_diff(lhs.coeffs(), rhs.coeffs()) <= 1e-12 * scale);
        let d = lhs.degree_bound();
        if nu <= d {
            prop_assert!(lhs.coeffs()[d + 1 - nu..].iter().all(|&c| c == 0.0));
        }
    }

    #[test]
    fn strategies_agree_on_random_data(n in grid_n(), seed in any::<u64>()) {
        let p = problem(n);
        let fit = p.fit_fn(|x| {
            let s = (seed % 1000) as f64 / 1000.0;
            (3.0 * x + s).sin() + (x - s).exp()
        }).unwrap();
        let s1 = derivative_s1(p, &fit, 1).unwrap();
        let s2 = derivative_s2(&fit, 1);
        let scale = 1.0 + s2.series().max_abs();
        prop_assert!(max_diff(s1.series().coeffs(), s2.series().coeffs()) <= 1e-8 * scale);
    }
}
