use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use torus_dense::config::{ArcSpec, JobConfig};
use torus_dense::densify::BoxNeighborhood;
use torus_dense::pipeline::{self, Failure, EXIT_OK};
use torus_dense::report::{self, BoxRecord};

#[derive(Parser)]
#[command(name = "torus-dense", version, about = "Dense monomorphisms of abelian groups into tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Overrides {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    max_blocks: Option<usize>,
    #[arg(long)]
    grid_resolution: Option<usize>,
    #[arg(long)]
    reuse: bool,
    #[arg(long)]
    max_n: Option<u64>,
}

impl Overrides {
    fn apply(&self, cfg: &mut JobConfig) {
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(b) = self.budget {
            cfg.budget = b;
        }
        if let Some(b) = self.max_blocks {
            cfg.max_blocks = b;
        }
        if let Some(r) = self.grid_resolution {
            cfg.grid_resolution = r;
        }
        if let Some(n) = self.max_n {
            cfg.max_n = n;
        }
        cfg.reuse |= self.reuse;
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the homomorphism and write a report with every certificate.
    Densify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Report |nS| and probe containments.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Re-check a densify report against its job file.
    Certify {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        config: PathBuf,
    },
    /// Squares in Z mapped densely into the circle.
    Weyl {
        #[arg(long, default_value_t = 5000)]
        bound: u64,
        #[arg(long, default_value_t = 128)]
        grid: u64,
        #[arg(long, default_value_t = 4096)]
        resolution: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also write the generated job file here.
        #[arg(long)]
        save_config: Option<PathBuf>,
    },
    /// Print the box for per-coordinate arcs given as `start:length`.
    Refine {
        #[arg(required = true)]
        arcs: Vec<String>,
    },
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf, overrides: Option<&Overrides>) -> Result<JobConfig, Failure> {
    let mut cfg = JobConfig::from_toml(&read(path)?)?;
    if let Some(o) = overrides {
        o.apply(&mut cfg);
    }
    Ok(cfg)
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn densify_to(cfg: &JobConfig, output: Option<PathBuf>) -> Result<(), Failure> {
    let run = pipeline::run_densify(cfg)?;
    let out = output.or_else(|| cfg.output.clone().map(PathBuf::from));
    emit(&run.text(), out.as_ref())?;
    eprintln!("{}", pipeline::describe(&run));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Densify {
            config,
            output,
            overrides,
        } => densify_to(&load(&config, Some(&overrides))?, output),
        Command::Analyze {
            config,
            output,
            overrides,
        } => {
            let cfg = load(&config, Some(&overrides))?;
            let (rep, lines) = pipeline::run_analyze(&cfg)?;
            emit(&report::to_text(&lines), output.as_ref())?;
            eprintln!("|S| = {}, min |nS| = {}, collapses at {:?}", rep.set_size, rep.min_size(), rep.collapses);
            Ok(())
        }
        Command::Certify { report, config } => {
            let cfg = load(&config, None)?;
            let summary = pipeline::certify_report(&read(&report)?, &cfg)?;
            println!(
                "ok: {} certificates, {} generators, injective",
                summary.certificates, summary.generators
            );
            Ok(())
        }
        Command::Weyl {
            bound,
            grid,
            resolution,
            output,
            save_config,
        } => {
            let cfg = JobConfig::weyl(bound, grid, resolution);
            if let Some(p) = save_config {
                fs::write(&p, cfg.to_toml()).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            }
            densify_to(&cfg, output)
        }
        Command::Refine { arcs } => {
            let per_coordinate = arcs
                .iter()
                .map(|a| {
                    let (s, l) = a
                        .split_once(':')
                        .ok_or_else(|| Failure::Report(format!("{a:?} is not start:length")))?;
                    let spec: ArcSpec = serde_json::from_value(serde_json::json!({ "start": s, "length": l }))
                        .map_err(|e| Failure::Report(e.to_string()))?;
                    Ok(spec.to_arc()?)
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let b = BoxNeighborhood::refining(&per_coordinate).map_err(|e| Failure::Report(e.to_string()))?;
            println!("{}", serde_json::to_string(&BoxRecord::from_box(&b)).expect("box serializes"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
