use intertwine::dixon_anderson::{
    check_kernel_eigenrelation, da_gibbs_chain, da_integrate, da_log_density, write_samples_csv, EigenMode,
    GibbsConfig, InterlacingPair, LogDensity,
};
use intertwine::algebra::Family;
use intertwine::jack::{kernel_eigenvalue, JackEngine, Partition};
use intertwine::part;
use intertwine::stats::Estimate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// With `n = 1` the kernel is `Beta(θ, θ)` on `[x1, x2]`.
#[test]
fn one_point_kernel_is_a_scaled_beta() {
    let (x1, x2) = (0.3, 1.7);
    for theta in [0.5, 0.75, 1.0, 2.0, 3.5] {
        let mean = 0.5 * (x1 + x2);
        let var = (x2 - x1) * (x2 - x1) / (4.0 * (2.0 * theta + 1.0));
        let m1 = da_integrate(&[x1, x2], |y| y[0], theta, 1e-12).unwrap().value;
        let m2 = da_integrate(&[x1, x2], |y| y[0] * y[0], theta, 1e-12).unwrap().value;
        assert!((m1 - mean).abs() < 1e-12, "θ={theta}: {m1}");
        assert!((m2 - (var + mean * mean)).abs() < 1e-12, "θ={theta}: {m2}");
    }
}

/// At `θ = 1` the kernel is `2 (y2 - y1) / V(x)`, a polynomial, so a single
/// Simpson panel per axis integrates `y1 + y2` against it exactly.
#[test]
fn theta_one_against_simpson() {
    let x = [0.1, 0.45, 0.9];
    let v = (x[1] - x[0]) * (x[2] - x[0]) * (x[2] - x[1]);
    let simpson = |lo: f64, hi: f64, f: &dyn Fn(f64) -> f64| (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    let dens = |y1: f64, y2: f64| 2.0 * (y2 - y1) / v;
    let mass = simpson(x[0], x[1], &|y1| simpson(x[1], x[2], &|y2| dens(y1, y2)));
    let first = simpson(x[0], x[1], &|y1| simpson(x[1], x[2], &|y2| dens(y1, y2) * (y1 + y2)));
    assert!((mass - 1.0).abs() < 1e-14);
    let quad = da_integrate(&x, |y| y[0] + y[1], 1.0, 1e-12).unwrap().value;
    assert!((quad - first).abs() < 1e-12, "{quad} vs {first}");
    // and the eigenrelation: J_(1) = e_1, c((1), 2, 1) = 2/3
    assert!((first - 2.0 / 3.0 * x.iter().sum::<f64>()).abs() < 1e-14);
}

#[test]
fn eigenrelation_and_stochasticity_by_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for theta in [0.5, 1.0, 2.0] {
        for n in 1..=3usize {
            let x: Vec<f64> = (1..=n + 1).map(|i| (i as f64 / (n + 2) as f64).powf(1.2)).collect();
            let mass = da_integrate(&x, |_| 1.0, theta, 1e-10).unwrap().value;
            assert!((mass - 1.0).abs() < 1e-8, "θ={theta} n={n}: {mass}");
            for lam in Partition::up_to_weight(3, n).into_iter().filter(|l| !l.is_empty()) {
                let r = check_kernel_eigenrelation(&lam, &x, theta, EigenMode::Quadrature, 1e-9, 0, &mut rng).unwrap();
                assert!(r.error < 1e-6, "θ={theta} n={n} {lam}: {r:?}");
            }
        }
    }
}

#[test]
fn gibbs_mean_matches_eigenvalue() {
    let x = [0.05, 0.3, 0.62, 0.95];
    let theta = 1.5;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let ys = da_gibbs_chain(&x, theta, 20_000, GibbsConfig::default(), &mut rng).unwrap();
    for y in &ys {
        assert!(x[0] < y[0] && y[0] < x[1] && x[1] < y[1] && y[1] < x[2] && x[2] < y[2] && y[2] < x[3]);
    }
    let engine = JackEngine::new(theta).unwrap();
    let lam = part![2];
    let j = engine.expand(&lam, 3).unwrap().to_poly();
    let v: Vec<f64> = ys.iter().map(|y| j.eval_f64(y)).collect();
    let est = Estimate::batch_means(&v, 50);
    let target = kernel_eigenvalue(&lam, 3, &theta) * engine.eval(&lam, &x).unwrap();
    assert!(est.z_against(target) < 3.0, "{est:?} vs {target}");
}

#[test]
fn density_edges() {
    let pair = InterlacingPair::new(vec![0.0, 1.0], vec![0.5], Family::Jacobi).unwrap();
    // θ = 1: uniform on [0, 1]
    assert!((da_log_density(&pair, 1.0).unwrap().value()).abs() < 1e-15);
    let touching = InterlacingPair::new(vec![0.0, 1.0], vec![1.0], Family::Jacobi).unwrap();
    assert_eq!(da_log_density(&touching, 0.5).unwrap(), LogDensity::Infinite);
    assert_eq!(da_log_density(&touching, 2.0).unwrap(), LogDensity::Zero);
    assert!(InterlacingPair::new(vec![0.0, 1.0], vec![1.5], Family::Jacobi).is_err());
    assert!(da_integrate(&[0.5, 0.2], |_| 1.0, 1.0, 1e-9).is_err());
}

#[test]
fn csv_dump_layout() {
    let mut buf = Vec::new();
    write_samples_csv(&mut buf, &[0.0, 1.0, 2.0], &[vec![0.5, 1.5]], 0.5, 9).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text, "# n=2 theta=0.5 seed=9\nx1,x2,x3,y1,y2\n0,1,2,0.5,1.5\n");
}
