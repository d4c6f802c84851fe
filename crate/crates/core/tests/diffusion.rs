use intertwine::algebra::ModelParams;
use intertwine::diffusion::{check_exact_moment, check_norm_process, mc_moment, path_rng, simulate, SimConfig};
use intertwine::part;
use rand::Rng;

fn cfg(paths: usize, seed: u64) -> SimConfig {
    SimConfig { paths, seed, ..SimConfig::default() }
}

/// `θ = 1`, one particle: squared Bessel of dimension `d`, with
/// `E X = x + dt` and `Var X = 4xt + 2dt²`.
#[test]
fn squared_bessel_mean_and_variance() {
    let (x, d, t) = (0.5, 3.0, 1.0);
    let ends = simulate(&[x], &ModelParams::laguerre(1, 1.0, d), t, &cfg(10_000, 3)).unwrap();
    let est = mc_moment(&ends, |v| v[0]);
    assert!(est.z_against(x + d * t) < 3.0, "{est:?}");
    let var = ends.iter().map(|v| (v[0] - est.mean).powi(2)).sum::<f64>() / (ends.len() - 1) as f64;
    let want = 4.0 * x * t + 2.0 * d * t * t;
    assert!((var / want - 1.0).abs() < 0.08, "{var} vs {want}");
    assert!(ends.iter().all(|v| v[0] >= 0.0));
}

/// One Jacobi particle: `E X_t = m + (x - m) e^{-2θ(a+b)t}`, `m = a/(a+b)`.
#[test]
fn one_jacobi_particle_mean() {
    let (theta, a, b, x, t) = (0.75, 2.5, 1.5, 0.2, 0.3);
    let ends = simulate(&[x], &ModelParams::jacobi(1, theta, a, b), t, &cfg(10_000, 4)).unwrap();
    let m = a / (a + b);
    let want = m + (x - m) * (-2.0 * theta * (a + b) * t).exp();
    assert!(mc_moment(&ends, |v| v[0]).z_against(want) < 3.0);
    assert!(ends.iter().all(|v| (0.0..=1.0).contains(&v[0])));
}

#[test]
fn norm_process_dimension() {
    let p = ModelParams::laguerre(3, 0.5, 2.0);
    let r = check_norm_process(&p, &[0.5, 1.0, 1.5], 0.5, &cfg(10_000, 8)).unwrap();
    assert_eq!(r.dimension, 1.0 * (2.0 * 3.0 / 2.0 + 6.0));
    assert!(r.mean.z < 3.0, "{r:?}");
    assert!((r.variance / r.variance_target - 1.0).abs() < 0.08, "{r:?}");
}

#[test]
fn jacobi_pair_moment_and_ordering() {
    let p = ModelParams::jacobi(2, 1.0, 2.0, 2.0);
    let r = check_exact_moment(&part![2], &p, &[0.3, 0.6], 0.5, &cfg(10_000, 9)).unwrap();
    assert!(r.z < 3.0, "{r:?}");
    let ends = simulate(&[0.0, 0.0], &p, 0.2, &cfg(2_000, 9)).unwrap();
    for x in &ends {
        assert!(0.0 <= x[0] && x[0] <= x[1] && x[1] <= 1.0, "{x:?}");
    }
}

#[test]
fn same_seed_same_paths() {
    let p = ModelParams::laguerre(2, 1.0, 3.0);
    let a = simulate(&[0.5, 1.5], &p, 0.25, &cfg(500, 11)).unwrap();
    let b = simulate(&[0.5, 1.5], &p, 0.25, &cfg(500, 11)).unwrap();
    let c = simulate(&[0.5, 1.5], &p, 0.25, &cfg(500, 12)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    let (u, v): (f64, f64) = (path_rng(11, 0).gen(), path_rng(11, 1).gen());
    assert_ne!(u, v);
}

#[test]
fn bad_starts_and_steps() {
    let lag = ModelParams::laguerre(2, 1.0, 3.0);
    assert!(simulate(&[1.0, 0.5], &lag, 1.0, &cfg(10, 1)).is_err());
    assert!(simulate(&[-0.1, 0.5], &lag, 1.0, &cfg(10, 1)).is_err());
    assert!(simulate(&[0.5], &lag, 1.0, &cfg(10, 1)).is_err());
    assert!(simulate(&[0.2, 1.2], &ModelParams::jacobi(2, 1.0, 2.0, 2.0), 1.0, &cfg(10, 1)).is_err());
    let zero_dt = SimConfig { dt: 0.0, ..cfg(10, 1) };
    assert!(simulate(&[0.1, 0.2], &lag, 1.0, &zero_dt).is_err());
}
