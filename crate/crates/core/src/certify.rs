//! Finite checks on the construction's inputs and outputs: how much `nS`
//! shrinks, how densely a point set covers `T^k`, and whether multiplying a
//! dense set by `n` keeps it proportionally dense.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupPresentation};
use crate::solver::TorusVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("N must be at least 1")]
    ZeroRange,
    #[error("grid resolution must be at least 1")]
    ZeroResolution,
    #[error("no points to measure")]
    NoPoints,
    #[error("a grid of {resolution}^{k} cells is too large")]
    TooManyCells { resolution: usize, k: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Outcome of testing `nS ⊆ ⟨S'⟩` for one probe and one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeCheck {
    pub probe: usize,
    pub n: u64,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidenessReport {
    pub set_size: usize,
    /// `(n, |nS|)` for `n = 1..=N`.
    pub per_n: Vec<(u64, usize)>,
    /// The `n` with `|nS| < |S|`.
    pub collapses: Vec<u64>,
    pub probe_checks: Vec<ProbeCheck>,
    /// First `(n, probe)` with `nS ⊆ ⟨S'⟩`.
    pub first_failure: Option<(u64, usize)>,
    pub notes: Vec<String>,
}

impl WidenessReport {
    pub fn min_size(&self) -> usize {
        self.per_n.iter().map(|&(_, c)| c).min().unwrap_or(0)
    }

    pub fn size_at(&self, n: u64) -> Option<usize> {
        self.per_n.iter().find(|&&(m, _)| m == n).map(|&(_, c)| c)
    }
}

pub fn wideness_report(
    group: &GroupPresentation,
    set: &[GroupElement],
    max_n: u64,
    probes: &[Vec<GroupElement>],
) -> Result<WidenessReport, CertifyError> {
    if max_n == 0 {
        return Err(CertifyError::ZeroRange);
    }
    let distinct = group.scale_set(&BigInt::from(1), set)?.len();
    let mut per_n = Vec::new();
    let mut collapses = Vec::new();
    let mut scaled_sets = Vec::new();
    for n in 1..=max_n {
        let scaled = group.scale_set(&BigInt::from(n), set)?;
        if scaled.len() < distinct {
            collapses.push(n);
        }
        per_n.push((n, scaled.len()));
        scaled_sets.push(scaled);
    }

    let mut probe_checks = Vec::new();
    let mut first_failure = None;
    let mut notes = Vec::new();
    for (i, probe) in probes.iter().enumerate() {
        let span = group.span(probe)?;
        if set.iter().all(|s| span.contains(s)) {
            notes.push(format!(
                "probe {i} generates all of S, so it cannot witness wideness; use probes smaller than the budget"
            ));
        }
        for (n, scaled) in (1..=max_n).zip(&scaled_sets) {
            let contained = scaled.iter().all(|x| span.contains(x));
            if contained && first_failure.is_none_or(|(m, _)| n < m) {
                first_failure = Some((n, i));
            }
            probe_checks.push(ProbeCheck { probe: i, n, contained });
        }
    }
    if distinct < set.len() {
        notes.push(format!("S lists {} entries but only {distinct} are distinct", set.len()));
    }
    Ok(WidenessReport {
        set_size: distinct,
        per_n,
        collapses,
        probe_checks,
        first_failure,
        notes,
    })
}

/// Largest cell count [`covering_radius`] will evaluate.
pub const MAX_CELLS: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq)]
pub struct CoveringReport {
    pub k: usize,
    pub resolution: usize,
    pub points: usize,
    /// Upper bound on the max-metric covering radius, including grid and
    /// rounding slack.
    pub max_gap: f64,
    /// Width of the numeric enclosures, already folded into `max_gap`.
    pub rounding: f64,
    /// One entry per grid cell in row-major order: some point lies in the
    /// closed cell.
    pub hit_table: Vec<bool>,
    pub epsilon: Option<BigRational>,
}

impl CoveringReport {
    pub fn cells_hit(&self) -> usize {
        self.hit_table.iter().filter(|&&h| h).count()
    }

    pub fn grid_slack(&self) -> f64 {
        0.5 / self.resolution as f64
    }

    /// Whether `max_gap <= epsilon`, when a target was given.
    pub fn meets_epsilon(&self) -> Option<bool> {
        self.epsilon
            .as_ref()
            .map(|e| self.max_gap <= e.to_f64().unwrap_or(f64::INFINITY))
    }
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Midpoints of the numeric enclosures, and the largest enclosure radius.
fn numeric_points(points: &[TorusVector], k: usize) -> Result<(Vec<Vec<f64>>, f64), CertifyError> {
    let mut err: f64 = 0.0;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        if p.dim() != k {
            return Err(CertifyError::Dimension {
                expected: k,
                found: p.dim(),
            });
        }
        out.push(
            p.coords()
                .iter()
                .map(|c| {
                    let (lo, hi) = c.to_f64_bounds();
                    err = err.max((hi - lo) / 2.0);
                    (lo + hi) / 2.0
                })
                .collect(),
        );
    }
    Ok((out, err))
}

/// Upper bound on the covering radius of `points` in `T^k`, from distances
/// between cell centres of a `resolution^k` grid and the points.
pub fn covering_radius(
    points: &[TorusVector],
    k: usize,
    resolution: usize,
    epsilon: Option<BigRational>,
) -> Result<CoveringReport, CertifyError> {
    if resolution == 0 {
        return Err(CertifyError::ZeroResolution);
    }
    if points.is_empty() {
        return Err(CertifyError::NoPoints);
    }
    let cells = u32::try_from(k)
        .ok()
        .and_then(|e| resolution.checked_pow(e))
        .filter(|&c| c <= MAX_CELLS)
        .ok_or(CertifyError::TooManyCells { resolution, k })?;
    let (pts, rounding) = numeric_points(points, k)?;
    let r = resolution as f64;

    let mut hit_table = vec![false; cells];
    for p in &pts {
        let mut index = 0;
        for &x in p {
            let cell = ((x * r).floor() as usize).min(resolution - 1);
            index = index * resolution + cell;
        }
        hit_table[index] = true;
    }

    let mut worst: f64 = 0.0;
    let mut digits = vec![0usize; k];
    for _ in 0..cells {
        let centre: Vec<f64> = digits.iter().map(|&d| (d as f64 + 0.5) / r).collect();
        let nearest = pts
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&centre)
                    .map(|(&a, &b)| circle_distance(a, b))
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(nearest);
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < resolution {
                break;
            }
            *d = 0;
        }
    }

    Ok(CoveringReport {
        k,
        resolution,
        points: points.len(),
        max_gap: worst + 0.5 / r + rounding,
        rounding,
        hit_table,
        epsilon,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Propagation {
    /// The scaled set is within `bound` of everything.
    Holds { radius: f64, bound: f64 },
    Fails { radius: f64, bound: f64 },
    /// The input set was not `epsilon`-dense to begin with.
    HypothesisUnmet { radius: f64 },
}

impl Propagation {
    pub fn holds(&self) -> bool {
        matches!(self, Propagation::Holds { .. })
    }
}

/// If `points` is `epsilon`-dense, checks that `n·points` is `n·epsilon`-dense
/// up to the grid slack of one extra half cell.
pub fn propagation_check(
    points: &[TorusVector],
    k: usize,
    n: i64,
    epsilon: f64,
    resolution: usize,
) -> Result<Propagation, CertifyError> {
    let base = covering_radius(points, k, resolution, None)?;
    if base.max_gap > epsilon {
        return Ok(Propagation::HypothesisUnmet {
            radius: base.max_gap,
        });
    }
    let scaled: Vec<TorusVector> = points.iter().map(|p| p.scale_i64(n)).collect();
    let after = covering_radius(&scaled, k, resolution, None)?;
    let bound = n as f64 * epsilon + after.grid_slack() + after.rounding;
    Ok(if after.max_gap <= bound {
        Propagation::Holds {
            radius: after.max_gap,
            bound,
        }
    } else {
        Propagation::Fails {
            radius: after.max_gap,
            bound,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{rat, Marker};
    use crate::torus::TorusElement;

    fn pt(n: i64, d: i64) -> TorusVector {
        TorusVector::new(vec![TorusElement::from_ratio(n, d)])
    }

    #[test]
    fn example_3_10_surrogate_collapses() {
        let mut factors = vec![BigInt::from(2); 10];
        factors.sort();
        let g = GroupPresentation::new(1, factors).unwrap();
        let set: Vec<_> = (0..1024i64)
            .map(|bits| {
                let mut c = vec![1i64];
                c.extend((0..10).map(|i| (bits >> i) & 1));
                g.element_i64(&c).unwrap()
            })
            .collect();
        let rep = wideness_report(&g, &set, 2, &[]).unwrap();
        assert_eq!(rep.per_n, vec![(1, 1024), (2, 1)]);
        assert_eq!(rep.collapses, vec![2]);
    }

    #[test]
    fn torsion_free_is_constant() {
        let z = GroupPresentation::free(1);
        let set: Vec<_> = (1..=100).map(|i| z.element_i64(&[i]).unwrap()).collect();
        let rep = wideness_report(&z, &set, 5, std::slice::from_ref(&set)).unwrap();
        assert!(rep.per_n.iter().all(|&(_, c)| c == 100));
        assert!(rep.collapses.is_empty());
        assert_eq!(rep.first_failure, Some((1, 0)));
        assert!(!rep.notes.is_empty());
        assert!(wideness_report(&z, &set, 0, &[]).is_err());
    }

    #[test]
    fn quarter_points() {
        let pts = vec![pt(0, 1), pt(1, 4), pt(1, 2), pt(3, 4)];
        let rep = covering_radius(&pts, 1, 64, None).unwrap();
        assert!(rep.max_gap <= 0.125 + 1.0 / 64.0 + 1e-12);
        assert!(rep.max_gap >= 0.125);
        assert_eq!(rep.cells_hit(), 4);
        assert!(covering_radius(&pts, 1, 0, None).is_err());
        assert!(covering_radius(&[], 1, 4, None).is_err());
    }

    #[test]
    fn adding_points_does_not_increase_gap() {
        let a = vec![pt(1, 7), pt(3, 5)];
        let mut b = a.clone();
        b.push(TorusVector::new(vec![TorusElement::surd(Marker(0), rat(1, 1))]));
        let ra = covering_radius(&a, 1, 50, None).unwrap();
        let rb = covering_radius(&b, 1, 50, None).unwrap();
        assert!(rb.max_gap <= ra.max_gap);
    }

    #[test]
    fn propagation_cases() {
        let pts: Vec<_> = (0..16).map(|i| pt(i, 16)).collect();
        let eps = covering_radius(&pts, 1, 128, None).unwrap().max_gap;
        assert!(propagation_check(&pts, 1, 2, eps, 128).unwrap().holds());
        let p1 = propagation_check(&pts, 1, 1, eps, 128).unwrap();
        assert!(p1.holds());
        let sparse = vec![pt(0, 1)];
        assert!(matches!(
            propagation_check(&sparse, 1, 2, 0.1, 16).unwrap(),
            Propagation::HypothesisUnmet { .. }
        ));
    }
}
