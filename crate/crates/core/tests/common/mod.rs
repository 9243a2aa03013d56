#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_dense::config::{ArcFamilySpec, GroupSpec, Int, JobConfig, Rational, SetSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Number of index-11 steps the set in [`z3_config`] supports.
pub const Z3_LEVELS: u32 = 61;

/// `G = Z^3`, `k = 6`, 64 boxes from 8 arcs of length 1/4 and a set of 500
/// points: `11^61·e1`, `e2`, `e3`, then a few random `11^e·v` per level
/// `e = 60..0` with `v1` prime to 11. Each level lets one more stage find a
/// witness of order 11 over the subgroup built so far.
pub fn z3_config(seed: u64) -> JobConfig {
    let mut r = rng(seed);
    let eleven = BigInt::from(11);
    let mut elements: Vec<Vec<BigInt>> = vec![
        vec![num_traits::pow(eleven.clone(), Z3_LEVELS as usize), 0.into(), 0.into()],
        vec![0.into(), 1.into(), 0.into()],
        vec![0.into(), 0.into(), 1.into()],
    ];
    let mut seen: BTreeSet<Vec<BigInt>> = elements.iter().cloned().collect();
    let mut push_level = |e: u32, r: &mut ChaCha8Rng, elements: &mut Vec<Vec<BigInt>>| loop {
        let v1: i64 = loop {
            let c = r.random_range(-60..=60i64);
            if c % 11 != 0 {
                break c;
            }
        };
        let scale = num_traits::pow(eleven.clone(), e as usize);
        let v: Vec<BigInt> = [v1, r.random_range(-60..=60i64), r.random_range(-60..=60i64)]
            .iter()
            .map(|&c| &scale * c)
            .collect();
        if seen.insert(v.clone()) {
            elements.push(v);
            return;
        }
    };
    for e in (0..Z3_LEVELS).rev() {
        for _ in 0..8 {
            push_level(e, &mut r, &mut elements);
        }
    }
    while elements.len() < 500 {
        push_level(0, &mut r, &mut elements);
    }
    JobConfig {
        k: 6,
        budget: 64,
        max_blocks: 2,
        epsilon: None,
        grid_resolution: 4,
        reuse: false,
        max_n: 10,
        output: None,
        group: GroupSpec {
            free_rank: 3,
            ..GroupSpec::default()
        },
        set: SetSpec::Explicit {
            elements: elements
                .into_iter()
                .map(|v| v.into_iter().map(Int).collect())
                .collect(),
        },
        arcs: ArcFamilySpec::Grid {
            count: 8,
            length: Rational(q(1, 4)),
        },
        probes: Vec::new(),
    }
}

/// `(Z/2)^10 × Z` with `S` the 1024 elements whose `Z` coordinate is 1.
pub fn boolean_cube_config(k: usize, arcs: ArcFamilySpec, budget: u64) -> JobConfig {
    JobConfig {
        k,
        budget,
        max_blocks: 1,
        epsilon: None,
        grid_resolution: 16,
        reuse: false,
        max_n: 2,
        output: None,
        group: GroupSpec {
            free_rank: 1,
            invariant_factors: vec![2.into(); 10],
            ..GroupSpec::default()
        },
        set: SetSpec::TorsionFiber { free: vec![1.into()] },
        arcs,
        probes: Vec::new(),
    }
}

pub fn grid(count: u64, n: i64, d: i64) -> ArcFamilySpec {
    ArcFamilySpec::Grid {
        count,
        length: Rational(q(n, d)),
    }
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_bin(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_torus-dense"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn write_config(dir: &Path, name: &str, cfg: &JobConfig) -> String {
    let p = dir.join(name);
    std::fs::write(&p, cfg.to_toml()).expect("write config");
    p.to_string_lossy().into_owned()
}
