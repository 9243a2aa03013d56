//! Line-delimited JSON reports. Every line is one object tagged by `kind`; the
//! first line is a versioned header. Group coordinates are decimal strings and
//! torus values use the exact text form of [`TorusVector`].

use serde::{Deserialize, Serialize};

use crate::certify::{CoveringReport, WidenessReport};
use crate::config::{ArcSpec, ConfigError};
use crate::densify::{BoxNeighborhood, Certificate, StagePlan};
use crate::extension::HomSpec;
use crate::group::{GroupElement, GroupPresentation};
use crate::solver::TorusVector;

pub const FORMAT: &str = "torus-dense-report";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxRecord {
    pub blocks: Vec<(usize, usize)>,
    pub arcs: Vec<ArcSpec>,
}

impl BoxRecord {
    pub fn from_box(b: &BoxNeighborhood) -> Self {
        BoxRecord {
            blocks: b.blocks().iter().map(|r| (r.start, r.end)).collect(),
            arcs: b.arcs().iter().map(ArcSpec::from_arc).collect(),
        }
    }

    pub fn to_box(&self, k: usize) -> Result<BoxNeighborhood, ConfigError> {
        let arcs = self.arcs.iter().map(ArcSpec::to_arc).collect::<Result<Vec<_>, _>>()?;
        let blocks = self.blocks.iter().map(|&(a, b)| a..b).collect();
        BoxNeighborhood::new(k, blocks, arcs).map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Line {
    Header {
        format: String,
        version: u32,
        command: String,
    },
    Group {
        free_rank: usize,
        invariant_factors: Vec<String>,
    },
    Plan {
        k: usize,
        stages: usize,
    },
    Generator {
        index: usize,
        element: Vec<String>,
        image: String,
    },
    Certificate {
        stage: usize,
        witness: Vec<String>,
        image: String,
        #[serde(rename = "box")]
        neighborhood: BoxRecord,
        n_alpha: String,
        source: String,
    },
    Covering {
        resolution: usize,
        points: usize,
        cells: usize,
        cells_hit: usize,
        /// Numeric bound, not an exact value.
        max_gap_upper_bound: f64,
        epsilon: Option<String>,
        meets_epsilon: Option<bool>,
    },
    Wideness {
        set_size: usize,
        per_n: Vec<(u64, usize)>,
        collapses: Vec<u64>,
        first_failure: Option<(u64, usize)>,
        probe_checks: Vec<(usize, u64, bool)>,
        notes: Vec<String>,
    },
    Summary {
        stages: usize,
        generators: usize,
        injective: bool,
    },
}

pub fn header(command: &str) -> Line {
    Line::Header {
        format: FORMAT.to_string(),
        version: VERSION,
        command: command.to_string(),
    }
}

pub fn coords(g: &GroupElement) -> Vec<String> {
    g.coords().iter().map(ToString::to_string).collect()
}

pub fn group_line(g: &GroupPresentation) -> Line {
    Line::Group {
        free_rank: g.free_rank(),
        invariant_factors: g.invariant_factors().iter().map(ToString::to_string).collect(),
    }
}

pub fn densify_lines(
    group: &GroupPresentation,
    plan: &StagePlan,
    phi: &HomSpec<GroupElement, TorusVector>,
    certificates: &[Certificate],
    covering: Option<&CoveringReport>,
    injective: bool,
) -> Vec<Line> {
    let mut out = vec![
        header("densify"),
        group_line(group),
        Line::Plan {
            k: plan.k(),
            stages: plan.len(),
        },
    ];
    for (index, (x, image)) in phi.domain_generators.iter().zip(&phi.images).enumerate() {
        out.push(Line::Generator {
            index,
            element: coords(x),
            image: image.to_string(),
        });
    }
    for c in certificates {
        out.push(Line::Certificate {
            stage: c.stage,
            witness: coords(&c.witness),
            image: c.image.to_string(),
            neighborhood: BoxRecord::from_box(&plan.neighborhoods()[c.stage]),
            n_alpha: plan.n_of_stage()[c.stage].to_string(),
            source: c.kind.to_string(),
        });
    }
    if let Some(cov) = covering {
        out.push(covering_line(cov));
    }
    out.push(Line::Summary {
        stages: certificates.len(),
        generators: phi.len(),
        injective,
    });
    out
}

pub fn covering_line(cov: &CoveringReport) -> Line {
    Line::Covering {
        resolution: cov.resolution,
        points: cov.points,
        cells: cov.hit_table.len(),
        cells_hit: cov.cells_hit(),
        max_gap_upper_bound: cov.max_gap,
        epsilon: cov.epsilon.as_ref().map(ToString::to_string),
        meets_epsilon: cov.meets_epsilon(),
    }
}

pub fn wideness_lines(group: &GroupPresentation, rep: &WidenessReport) -> Vec<Line> {
    vec![
        header("analyze"),
        group_line(group),
        Line::Wideness {
            set_size: rep.set_size,
            per_n: rep.per_n.clone(),
            collapses: rep.collapses.clone(),
            first_failure: rep.first_failure,
            probe_checks: rep.probe_checks.iter().map(|p| (p.probe, p.n, p.contained)).collect(),
            notes: rep.notes.clone(),
        },
    ]
}

pub fn to_text(lines: &[Line]) -> String {
    let mut s = String::new();
    for l in lines {
        s.push_str(&serde_json::to_string(l).expect("report lines serialize"));
        s.push('\n');
    }
    s
}

pub fn parse(text: &str) -> Result<Vec<Line>, String> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("line {}: {e}", i + 1)))
        .collect::<Result<_, _>>()?;
    match lines.first() {
        Some(Line::Header { format, version, .. }) if format == FORMAT && *version == VERSION => Ok(lines),
        Some(Line::Header { format, version, .. }) => {
            Err(format!("unsupported report {format} version {version}"))
        }
        _ => Err("report does not start with a header".to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Rational;
    use num_rational::BigRational;

    #[test]
    fn lines_round_trip() {
        let lines = vec![
            header("densify"),
            Line::Certificate {
                stage: 3,
                witness: vec!["5".into(), "-2".into()],
                image: "[1/3 + (1/2)*sqrt(2)]".into(),
                neighborhood: BoxRecord {
                    blocks: vec![(0, 1)],
                    arcs: vec![ArcSpec {
                        start: Rational(BigRational::new(1.into(), 4.into())),
                        length: Rational(BigRational::new(1.into(), 2.into())),
                    }],
                },
                n_alpha: "5".into(),
                source: "free".into(),
            },
        ];
        let text = to_text(&lines);
        assert_eq!(parse(&text).unwrap(), lines);
        assert!(parse("{\"kind\":\"plan\",\"k\":1,\"stages\":1}").is_err());
    }
}
