//! End-to-end commands over job files, shared by the binary and the examples.
//! Each failure maps to a process exit code.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::certify::{covering_radius, wideness_report, CertifyError, CoveringReport, WidenessReport};
use crate::config::{ConfigError, JobConfig};
use crate::densify::{densify, image_of_set, DensifyError, DensifyOptions, DensifyOutput};
use crate::extension::{ExactGroup, HomSpec, TorusSpace};
use crate::group::{GroupElement, GroupPresentation};
use crate::report::{self, Line};
use crate::solver::TorusVector;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_EXHAUSTED: u8 = 3;
pub const EXIT_CERTIFICATE: u8 = 4;

#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("bad report: {0}")]
    Report(String),
    #[error(transparent)]
    Densify(DensifyError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error("certificate failure{}: {reason}", .stage.map(|s| format!(" at stage {s}")).unwrap_or_default())]
    Certificate { stage: Option<usize>, reason: String },
    #[error("{0}")]
    Io(String),
}

impl From<DensifyError> for Failure {
    fn from(e: DensifyError) -> Self {
        Failure::Densify(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Densify(DensifyError::Group(_) | DensifyError::Dimension { .. }) => EXIT_INVALID,
            Failure::Densify(_) => EXIT_EXHAUSTED,
            Failure::Certificate { .. } => EXIT_CERTIFICATE,
            Failure::Config(_) | Failure::Report(_) | Failure::Certify(_) | Failure::Io(_) => EXIT_INVALID,
        }
    }
}

pub struct DensifyRun {
    pub group: GroupPresentation,
    pub output: DensifyOutput,
    pub covering: CoveringReport,
    pub lines: Vec<Line>,
}

impl DensifyRun {
    pub fn text(&self) -> String {
        report::to_text(&self.lines)
    }
}

pub fn run_densify(cfg: &JobConfig) -> Result<DensifyRun, Failure> {
    let job = cfg.resolve()?;
    let options = DensifyOptions { reuse: cfg.reuse };
    let output = densify(&job.group, &job.set, &job.plan, options)?;
    let points = image_of_set(&job.group, &output.phi, cfg.k, &job.set);
    let covering = covering_radius(&points, cfg.k, cfg.grid_resolution, cfg.epsilon.as_ref().map(|e| e.0.clone()))?;
    let lines = report::densify_lines(
        &job.group,
        &job.plan,
        &output.phi,
        &output.certificates,
        Some(&covering),
        true,
    );
    Ok(DensifyRun {
        group: job.group,
        output,
        covering,
        lines,
    })
}

pub fn run_analyze(cfg: &JobConfig) -> Result<(WidenessReport, Vec<Line>), Failure> {
    let job = cfg.resolve()?;
    let rep = wideness_report(&job.group, &job.set, cfg.max_n, &job.probes)?;
    let lines = report::wideness_lines(&job.group, &rep);
    Ok((rep, lines))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifySummary {
    pub generators: usize,
    pub certificates: usize,
}

fn bad(e: impl ToString) -> Failure {
    Failure::Report(e.to_string())
}

fn element(group: &GroupPresentation, coords: &[String]) -> Result<GroupElement, Failure> {
    let c = coords
        .iter()
        .map(|s| s.parse::<BigInt>().map_err(bad))
        .collect::<Result<Vec<_>, _>>()?;
    group.element(c).map_err(bad)
}

/// Re-checks a densify report against its job: the map on generators is a
/// well-defined injective homomorphism, every certificate's image is `φ` of
/// its witness, the witness is in `S`, and the image lies in that stage's box.
pub fn certify_report(text: &str, cfg: &JobConfig) -> Result<CertifySummary, Failure> {
    let lines = report::parse(text).map_err(Failure::Report)?;
    let job = cfg.resolve()?;
    let group = &job.group;
    let k = cfg.k;
    let space = TorusSpace { k };

    let mut phi: HomSpec<GroupElement, TorusVector> = HomSpec::empty();
    let mut certificates = Vec::new();
    for line in &lines {
        match line {
            Line::Group {
                free_rank,
                invariant_factors,
            } => {
                let factors = invariant_factors
                    .iter()
                    .map(|s| s.parse::<BigInt>().map_err(bad))
                    .collect::<Result<Vec<_>, _>>()?;
                let reported = GroupPresentation::new(*free_rank, factors).map_err(bad)?;
                if &reported != group {
                    return Err(bad(format!("report is for {reported}, job is for {group}")));
                }
            }
            Line::Plan { k: rk, stages } => {
                if *rk != k || *stages != job.plan.len() {
                    return Err(bad("report plan does not match the job"));
                }
            }
            Line::Generator { index, element: e, image } => {
                if *index != phi.len() {
                    return Err(bad("generators out of order"));
                }
                let image: TorusVector = image.parse().map_err(bad)?;
                if image.dim() != k {
                    return Err(bad("generator image has the wrong dimension"));
                }
                phi.push(element(group, e)?, image);
            }
            Line::Certificate {
                stage,
                witness,
                image,
                neighborhood,
                ..
            } => {
                let image: TorusVector = image.parse().map_err(bad)?;
                let nbhd = neighborhood.to_box(k).map_err(bad)?;
                certificates.push((*stage, element(group, witness)?, image, nbhd));
            }
            _ => {}
        }
    }

    let fail = |stage: Option<usize>, reason: &str| Failure::Certificate {
        stage,
        reason: reason.to_string(),
    };
    if !phi.is_well_defined(group, &space) {
        return Err(fail(None, "generator images violate a relation of the domain"));
    }
    if !phi.is_injective(group, &space) {
        return Err(fail(None, "φ is not injective"));
    }
    let span = group.span(&phi.domain_generators).map_err(bad)?;
    let plan = job.plan.neighborhoods();
    if certificates.len() != plan.len() {
        return Err(fail(None, "certificate count differs from the number of boxes"));
    }
    for (i, (stage, witness, image, nbhd)) in certificates.iter().enumerate() {
        let at = *stage;
        let stage = Some(at);
        if i != at || &plan[i] != nbhd {
            return Err(fail(stage, "box differs from the job's plan"));
        }
        if !job.set.contains(witness) {
            return Err(fail(stage, "witness is not in S"));
        }
        let coeffs = span
            .express(witness)
            .ok_or_else(|| fail(stage, "witness is outside the domain of φ"))?;
        if &space.combine(&coeffs, &phi.images) != image {
            return Err(fail(stage, "recorded image differs from φ(witness)"));
        }
        if !nbhd.contains(image) {
            return Err(fail(stage, "image is outside the box"));
        }
    }
    Ok(CertifySummary {
        generators: phi.len(),
        certificates: certificates.len(),
    })
}

/// One-line human summary of a densify run.
pub fn describe(run: &DensifyRun) -> String {
    let eps = run
        .covering
        .epsilon
        .as_ref()
        .and_then(|e| e.to_f64())
        .map(|e| format!(" (target {e})"))
        .unwrap_or_default();
    format!(
        "{} stages, {} generators in {}, covering radius <= {:.6}{}",
        run.output.certificates.len(),
        run.output.phi.len(),
        run.group,
        run.covering.max_gap,
        eps
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SetSpec;

    #[test]
    fn closed_loop_small_weyl() {
        let cfg = JobConfig::weyl(400, 8, 256);
        let run = run_densify(&cfg).unwrap();
        let text = run.text();
        let summary = certify_report(&text, &cfg).unwrap();
        assert_eq!(summary.certificates, 9);
        assert_eq!(summary.generators, 1);
    }

    #[test]
    fn tampering_is_caught() {
        let cfg = JobConfig::weyl(400, 8, 256);
        let text = run_densify(&cfg).unwrap().text();
        let zeroed = text
            .lines()
            .map(|l| {
                if l.contains("\"kind\":\"generator\"") {
                    let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                    v["image"] = "[0]".into();
                    v.to_string()
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        let err = certify_report(&zeroed, &cfg).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_CERTIFICATE);
        assert!(err.to_string().contains("injective"), "{err}");
    }

    #[test]
    fn bounded_group_exhausts_with_code_3() {
        let mut cfg = JobConfig::weyl(10, 4, 64);
        cfg.reuse = false;
        cfg.group.free_rank = 0;
        cfg.group.invariant_factors = vec![6.into()];
        cfg.set = SetSpec::Explicit {
            elements: (0..6).map(|i| vec![i.into()]).collect(),
        };
        let err = run_densify(&cfg).err().unwrap();
        assert_eq!(err.exit_code(), EXIT_EXHAUSTED);
    }
}
