use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn intertwine(args: &[&str], workers: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intertwine"))
        .args(args)
        .env("INTERTWINE_WORKERS", workers)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Drops `wall_time_s` everywhere.
fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_s");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

const SMALL_KERNEL: &[&str] = &["--grid", "theta=1", "--grid", "n=1,2", "--grid", "mc_samples=2000"];

#[test]
fn generator_passes_and_its_control_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gen.json");
    let o = intertwine(&["verify", "generator", "--out", out.to_str().unwrap()], "2");
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    let recs = r["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    for rec in recs {
        assert_eq!(rec["pass"], true);
        if rec["check"] == "generator.laguerre" || rec["check"] == "generator.jacobi" {
            assert!(rec["observed"].as_f64().unwrap() < 1e-10);
        }
    }
    assert_eq!(r["summary"]["failed"], 0);

    let ctl = dir.path().join("ctl.json");
    let o = intertwine(&["verify", "generator", "--control", "--out", ctl.to_str().unwrap()], "2");
    assert_eq!(code(&o), 2);
    let r = report(&ctl);
    assert!(r["records"].as_array().unwrap().iter().all(|rec| rec["pass"] == false));
}

#[test]
fn malformed_config_exits_3_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    let out = dir.path().join("never.json");
    std::fs::write(&cfg, "[generator\ntheta = [1").unwrap();
    let o = intertwine(&["verify", "generator", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], "1");
    assert_eq!(code(&o), 3);
    assert!(!out.exists());

    std::fs::write(&cfg, "[generator]\ntheta = [0.25]\n").unwrap();
    let o = intertwine(&["verify", "generator", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], "1");
    assert_eq!(code(&o), 3);
    assert!(!out.exists());

    assert_eq!(code(&intertwine(&["verify", "everything"], "1")), 3);
    assert_eq!(code(&intertwine(&["verify", "kernel", "--grid", "no_such_key=1"], "1")), 3);
}

#[test]
fn reports_are_deterministic_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for (i, workers) in ["1", "3", "1"].iter().enumerate() {
        let out = dir.path().join(format!("k{i}.json"));
        let mut args = vec!["verify", "kernel", "--seed", "42", "--out", out.to_str().unwrap()];
        args.extend_from_slice(SMALL_KERNEL);
        let o = intertwine(&args, workers);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let mut r = report(&out);
        strip_timing(&mut r);
        runs.push(serde_json::to_string(&r).unwrap());
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);

    let out = dir.path().join("other.json");
    let mut args = vec!["verify", "kernel", "--seed", "43", "--out", out.to_str().unwrap()];
    args.extend_from_slice(SMALL_KERNEL);
    assert_eq!(code(&intertwine(&args, "1")), 0);
    let mut r = report(&out);
    strip_timing(&mut r);
    assert_ne!(serde_json::to_string(&r).unwrap(), runs[0]);
}

#[test]
fn describe_known_and_unknown() {
    let o = intertwine(&["describe", "kernel.eigenrelation"], "1");
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("c(λ, n, θ)"));
    let o = intertwine(&["describe", "step2.norm"], "1");
    assert!(String::from_utf8(o.stdout).unwrap().contains("squared Bessel process of dimension"));
    assert_ne!(code(&intertwine(&["describe", "kernel.nope"], "1")), 0);
    let o = intertwine(&["describe", "list"], "1");
    assert!(String::from_utf8(o.stdout).unwrap().contains("corollary.mc"));
}

#[test]
fn sampling_commands_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim.csv");
    let o = intertwine(
        &["simulate", "--family", "jacobi", "--theta", "1", "--x0", "0.3,0.6", "--t", "0.1", "--paths", "50",
          "--out", sim.to_str().unwrap()],
        "1",
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&sim).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "path,x1,x2");
    assert_eq!(rows.len(), 51);
    for row in &rows[1..] {
        let v: Vec<f64> = row.split(',').skip(1).map(|s| s.parse().unwrap()).collect();
        assert!(0.0 <= v[0] && v[0] <= v[1] && v[1] <= 1.0);
    }

    let ker = dir.path().join("ker.csv");
    let o = intertwine(
        &["sample-kernel", "--x", "0.1,0.5,0.9", "--theta", "0.75", "--samples", "20", "--out", ker.to_str().unwrap()],
        "1",
    );
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&ker).unwrap();
    assert!(text.lines().any(|l| l == "x1,x2,x3,y1,y2"));
    for row in text.lines().filter(|l| !l.starts_with('#') && !l.starts_with('x')) {
        let v: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
        assert!(v[0] < v[3] && v[3] < v[1] && v[1] < v[4] && v[4] < v[2]);
    }

    let ens = dir.path().join("ens.csv");
    let o = intertwine(
        &["sample-ensemble", "--n", "2", "--a", "2", "--b", "2", "--beta", "2", "--samples", "30",
          "--out", ens.to_str().unwrap()],
        "1",
    );
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&ens).unwrap().lines().count(), 32);

    // out-of-domain sampler parameters are configuration errors
    assert_eq!(code(&intertwine(&["sample-ensemble", "--n", "2", "--a", "0", "--b", "2", "--beta", "2"], "1")), 3);
}
