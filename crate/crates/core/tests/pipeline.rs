mod common;

use num_bigint::BigInt;
use rand::RngExt;
use serde_json::Value;

use torus_dense::config::{ArcFamilySpec, GroupSpec, Int, JobConfig, Rational, SetSpec};
use torus_dense::pipeline::{certify_report, run_densify, EXIT_CERTIFICATE, EXIT_EXHAUSTED, EXIT_INVALID};

use common::{boolean_cube_config, grid, q, rng, run_bin, write_config};

/// Either a Weyl-style job on `Z` or `Z^2` with a set layered by powers of a
/// prime above 5.
fn generated(i: usize) -> JobConfig {
    let mut r = rng(100 + i as u64);
    if i.is_multiple_of(2) {
        return JobConfig::weyl(r.random_range(50..600), r.random_range(2..12), r.random_range(16..256));
    }
    let p: i64 = *[7i64, 11, 13].get(r.random_range(0..3)).unwrap();
    let levels = r.random_range(3..6u32);
    let mut elements = Vec::new();
    for e in (0..=levels).rev() {
        let s = p.pow(e);
        let a = r.random_range(1..p);
        let b = r.random_range(-9..10i64);
        for v in [[s, 0], [0, s], [a * s, b * s]] {
            elements.push(v.iter().map(|&c| Int(c.into())).collect());
        }
    }
    JobConfig {
        k: 2,
        budget: (2 * levels as u64).min(7),
        max_blocks: 2,
        epsilon: None,
        grid_resolution: 16,
        reuse: false,
        max_n: 4,
        output: None,
        group: GroupSpec {
            free_rank: 2,
            ..GroupSpec::default()
        },
        set: SetSpec::Explicit { elements },
        arcs: ArcFamilySpec::Grid {
            count: 2,
            length: Rational(q(1, 2)),
        },
        probes: Vec::new(),
    }
}

fn edit_lines(text: &str, kind: &str, f: impl Fn(&mut Value)) -> String {
    text.lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            if v["kind"] == kind {
                f(&mut v);
            }
            v.to_string() + "\n"
        })
        .collect()
}

/// Moves a recorded image by 1/1000 in its first coordinate.
fn shift(v: &mut Value) {
    let image = v["image"].as_str().unwrap();
    v["image"] = format!("[1/1000 + {}", &image[1..]).into();
}

#[test]
fn closed_loop_over_generated_jobs() {
    for i in 0..50 {
        let cfg = generated(i);
        let run = run_densify(&cfg).unwrap_or_else(|e| panic!("job {i}: {e}"));
        let text = run.text();
        let summary = certify_report(&text, &cfg).unwrap_or_else(|e| panic!("job {i}: {e}"));
        assert_eq!(summary.certificates, run.output.certificates.len());

        let moved = edit_lines(&text, "certificate", shift);
        assert!(certify_report(&moved, &cfg).is_err(), "job {i}: shifted images accepted");
    }
}

#[test]
fn malformed_jobs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = JobConfig::weyl(100, 4, 64);
    let good = cfg.to_toml();
    let float = good.replace("length = \"1/4\"", "length = 0.25");
    assert_ne!(float, good);
    let path = dir.path().join("float.toml");
    std::fs::write(&path, float).unwrap();
    let out = run_bin(&["densify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID as i32, "{}", out.stderr);
    assert!(out.stderr.contains("float"), "{}", out.stderr);

    cfg.k = 0;
    let path = write_config(dir.path(), "k0.toml", &cfg);
    assert_eq!(run_bin(&["densify", "--config", &path]).code, EXIT_INVALID as i32);

    let path = dir.path().join("garbage.toml");
    std::fs::write(&path, "k = [").unwrap();
    assert_eq!(run_bin(&["analyze", "--config", path.to_str().unwrap()]).code, EXIT_INVALID as i32);
}

#[test]
fn bounded_torsion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), "cube.toml", &boolean_cube_config(1, grid(4, 1, 2), 5));
    let out = run_bin(&["densify", "--config", &path]);
    assert_eq!(out.code, EXIT_EXHAUSTED as i32, "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn tampered_reports_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = JobConfig::weyl(300, 8, 128);
    let cfg_path = write_config(dir.path(), "weyl.toml", &cfg);
    let report = dir.path().join("weyl.jsonl");
    let out = run_bin(&["densify", "--config", &cfg_path, "-o", report.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(run_bin(&["certify", "--report", report.to_str().unwrap(), "--config", &cfg_path]).code, 0);

    let zeroed = edit_lines(&text, "generator", |v| v["image"] = "[0]".into());
    let shifted = edit_lines(&text, "certificate", shift);
    let foreign = edit_lines(&text, "certificate", |v| {
        if v["stage"] == 2 {
            v["witness"] = Value::from(vec![BigInt::from(2).to_string()]);
        }
    });
    for (name, bad) in [("zeroed", zeroed), ("shifted", shifted), ("foreign", foreign)] {
        let p = dir.path().join(format!("{name}.jsonl"));
        std::fs::write(&p, bad).unwrap();
        let out = run_bin(&["certify", "--report", p.to_str().unwrap(), "--config", &cfg_path]);
        assert_eq!(out.code, EXIT_CERTIFICATE as i32, "{name}: {}", out.stderr);
    }
}
