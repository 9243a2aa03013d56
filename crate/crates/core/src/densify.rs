//! The stage recursion: enumerate boxes in `T^k`, and for each box choose a
//! new element of `S` whose image under an extended monomorphism lands in it.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::extension::{ExactGroup, Extension, ExtensionError, HomSpec, TorusSpace};
use crate::group::{GroupElement, GroupError, GroupPresentation, Order, SubgroupBasis};
use crate::real::Marker;
use crate::solver::{
    avoid_free, avoid_with_lift, length_bound_index, truncated_pairs, SolverError, TorusSubgroup,
    TorusVector,
};
use crate::torus::{Arc, IrrationalBasis, TorusElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("arc family is empty")]
    EmptyFamily,
    #[error("coordinate count must be positive")]
    NoCoordinates,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("budget {budget} exceeds the {available} available neighborhoods")]
    BudgetTooLarge { budget: u64, available: BigInt },
    #[error("blocks must be non-empty consecutive ranges covering 0..{0}")]
    BadPartition(usize),
}

/// A product of arcs that is constant on each block of an interval partition
/// of the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxNeighborhood {
    blocks: Vec<Range<usize>>,
    arcs: Vec<Arc>,
}

impl BoxNeighborhood {
    pub fn new(k: usize, blocks: Vec<Range<usize>>, arcs: Vec<Arc>) -> Result<Self, PlanError> {
        let mut next = 0;
        for b in &blocks {
            if b.start != next || b.end <= b.start {
                return Err(PlanError::BadPartition(k));
            }
            next = b.end;
        }
        if next != k || k == 0 || blocks.len() != arcs.len() {
            return Err(PlanError::BadPartition(k));
        }
        Ok(BoxNeighborhood { blocks, arcs })
    }

    pub fn full(k: usize) -> Self {
        BoxNeighborhood {
            blocks: vec![0..k],
            arcs: vec![Arc::full()],
        }
    }

    /// The coarsest interval partition carrying the given per-coordinate arcs.
    pub fn refining(per_coordinate: &[Arc]) -> Result<Self, PlanError> {
        let mut blocks: Vec<Range<usize>> = Vec::new();
        let mut arcs: Vec<Arc> = Vec::new();
        for (i, a) in per_coordinate.iter().enumerate() {
            match (blocks.last_mut(), arcs.last()) {
                (Some(b), Some(last)) if last == a => b.end = i + 1,
                _ => {
                    blocks.push(i..i + 1);
                    arcs.push(a.clone());
                }
            }
        }
        Self::new(per_coordinate.len(), blocks, arcs)
    }

    pub fn k(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.end)
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn coordinate_arcs(&self) -> Vec<Arc> {
        self.blocks
            .iter()
            .zip(&self.arcs)
            .flat_map(|(b, a)| std::iter::repeat_n(a.clone(), b.len()))
            .collect()
    }

    pub fn min_length(&self) -> &BigRational {
        self.arcs.iter().map(Arc::length).min().expect("non-empty")
    }

    pub fn is_everything(&self) -> bool {
        self.arcs.iter().all(Arc::is_full)
    }

    pub fn contains(&self, v: &TorusVector) -> bool {
        v.dim() == self.k()
            && self
                .blocks
                .iter()
                .zip(&self.arcs)
                .all(|(b, a)| v.coords()[b.clone()].iter().all(|c| a.contains(c)))
    }
}

impl fmt::Display for BoxNeighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (b, a)) in self.blocks.iter().zip(&self.arcs).enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}..{}: {a}", b.start, b.end)?;
        }
        Ok(())
    }
}

/// Stage order plus the integer `n_α` of each stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagePlan {
    k: usize,
    neighborhoods: Vec<BoxNeighborhood>,
    n_of_stage: Vec<BigInt>,
}

impl StagePlan {
    /// Plan over explicit boxes; the full box is put first if missing.
    pub fn from_neighborhoods(k: usize, boxes: Vec<BoxNeighborhood>) -> Result<Self, PlanError> {
        if k == 0 {
            return Err(PlanError::NoCoordinates);
        }
        let mut neighborhoods = vec![BoxNeighborhood::full(k)];
        for b in boxes {
            if b.k() != k {
                return Err(PlanError::BadPartition(k));
            }
            if b != neighborhoods[0] {
                neighborhoods.push(b);
            }
        }
        let n_of_stage = neighborhoods
            .iter()
            .map(|b| length_bound_index(&b.arcs))
            .collect();
        Ok(StagePlan {
            k,
            neighborhoods,
            n_of_stage,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn neighborhoods(&self) -> &[BoxNeighborhood] {
        &self.neighborhoods
    }

    pub fn n_of_stage(&self) -> &[BigInt] {
        &self.n_of_stage
    }

    pub fn len(&self) -> usize {
        self.neighborhoods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighborhoods.is_empty()
    }
}

fn binomial(n: usize, r: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Next `r`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn next_odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The first `budget` box neighborhoods in canonical order: the full box, then
/// by block count, then by cut positions (lexicographic), then by arc
/// assignment (lexicographic in family order). Boxes made only of full arcs
/// repeat the full box and are skipped.
pub fn enumerate_neighborhoods(
    k: usize,
    arc_family: &[Arc],
    max_blocks: usize,
    budget: u64,
) -> Result<StagePlan, PlanError> {
    if arc_family.is_empty() {
        return Err(PlanError::EmptyFamily);
    }
    if k == 0 {
        return Err(PlanError::NoCoordinates);
    }
    if budget == 0 {
        return Err(PlanError::ZeroBudget);
    }
    let max_blocks = max_blocks.clamp(1, k);
    let fam = BigInt::from(arc_family.len());
    let full = BigInt::from(arc_family.iter().filter(|a| a.is_full()).count());
    let mut available = BigInt::one();
    for b in 1..=max_blocks {
        let cuts = binomial(k - 1, b - 1);
        available += &cuts * (num_traits::pow(fam.clone(), b) - num_traits::pow(full.clone(), b));
    }
    if BigInt::from(budget) > available {
        return Err(PlanError::BudgetTooLarge { budget, available });
    }

    let mut boxes = Vec::new();
    let want = usize::try_from(budget).expect("budget fits in memory") - 1;
    'outer: for b in 1..=max_blocks {
        let mut cuts: Vec<usize> = (0..b - 1).collect();
        loop {
            let mut edges = vec![0];
            edges.extend(cuts.iter().map(|c| c + 1));
            edges.push(k);
            let blocks: Vec<Range<usize>> = edges.windows(2).map(|w| w[0]..w[1]).collect();
            let mut digits = vec![0usize; b];
            loop {
                if boxes.len() == want {
                    break 'outer;
                }
                let arcs: Vec<Arc> = digits.iter().map(|&d| arc_family[d].clone()).collect();
                if !arcs.iter().all(Arc::is_full) {
                    boxes.push(BoxNeighborhood {
                        blocks: blocks.clone(),
                        arcs,
                    });
                }
                if !next_odometer(&mut digits, arc_family.len()) {
                    break;
                }
            }
            if b == 1 || !next_combination(&mut cuts, k - 1) {
                break;
            }
        }
    }
    let mut plan = StagePlan::from_neighborhoods(k, Vec::new())?;
    for b in boxes {
        plan.n_of_stage.push(length_bound_index(&b.arcs));
        plan.neighborhoods.push(b);
    }
    Ok(plan)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensifyError {
    #[error("S has no nonzero element")]
    EmptySet,
    #[error("S is not wide enough at stage {stage}, modulus {modulus}")]
    Exhausted { stage: usize, modulus: BigInt },
    #[error("stage {stage}: {source}")]
    Solver { stage: usize, source: SolverError },
    #[error("stage {stage}: {source}")]
    Extension { stage: usize, source: ExtensionError },
    #[error("plan has {plan} coordinates but the run uses {run}")]
    Dimension { plan: usize, run: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// How a stage obtained its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageKind {
    /// First stage: `x_0 ↦` a fresh irrational, or `1/d` for torsion of order `d`.
    Initial,
    /// `x_α` independent of the earlier witnesses.
    Free,
    /// `m·x_α` is the first multiple in the earlier subgroup.
    Lift { m: BigInt },
    /// No fresh witness; an element of `S` already in the subgroup happens to
    /// land in the box.
    Reused,
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageKind::Initial => f.write_str("initial"),
            StageKind::Free => f.write_str("free"),
            StageKind::Lift { m } => write!(f, "lift {m}"),
            StageKind::Reused => f.write_str("reused"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub stage: usize,
    pub witness: GroupElement,
    pub image: TorusVector,
    pub kind: StageKind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DensifyOptions {
    /// When no element of `S` escapes the subgroup, accept an element already
    /// in it whose image lies in the box.
    pub reuse: bool,
}

/// Homomorphism under construction.
#[derive(Clone, Debug)]
pub struct ConstructionState {
    group: GroupPresentation,
    k: usize,
    phi: HomSpec<GroupElement, TorusVector>,
    span: SubgroupBasis,
    certificates: Vec<Certificate>,
    basis: IrrationalBasis,
}

pub fn factorial(n: &BigInt) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = BigInt::from(2);
    while &i <= n {
        acc *= &i;
        i += 1;
    }
    acc
}

/// Whether `d` divides `n!`.
fn divides_factorial(d: &BigInt, n: &BigInt) -> bool {
    if d <= n {
        return true;
    }
    let mut acc = BigInt::one();
    let mut i = BigInt::from(2);
    while &i <= n {
        acc = (acc * &i) % d;
        if acc.is_zero() {
            return true;
        }
        i += 1;
    }
    false
}

/// First `s ∈ S` with `n_α!·s ∉ H`, with its order modulo `H`. The order `d`
/// decides it: `n_α!·s ∈ H` exactly when `d` is finite and divides `n_α!`.
pub fn pick_witness(
    group: &GroupPresentation,
    set: &[GroupElement],
    previous: &SubgroupBasis,
    n_alpha: &BigInt,
) -> Result<Option<(GroupElement, Order)>, GroupError> {
    for s in set {
        let order = group.order_in_quotient(s, previous)?;
        let escapes = match &order {
            Order::Infinite => true,
            Order::Finite(d) => !divides_factorial(d, n_alpha),
        };
        if escapes {
            if let Order::Finite(d) = &order {
                assert!(d > n_alpha, "a multiple n·s with n <= n_α lies in H");
            }
            return Ok(Some((s.clone(), order)));
        }
    }
    Ok(None)
}

impl ConstructionState {
    pub fn new(group: GroupPresentation, k: usize) -> Self {
        let span = group.span(&[]).expect("empty span");
        ConstructionState {
            group,
            k,
            phi: HomSpec::empty(),
            span,
            certificates: Vec::new(),
            basis: IrrationalBasis::new(),
        }
    }

    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    pub fn phi(&self) -> &HomSpec<GroupElement, TorusVector> {
        &self.phi
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    pub fn subgroup(&self) -> &SubgroupBasis {
        &self.span
    }

    pub fn evaluate(&self, g: &GroupElement) -> Option<TorusVector> {
        let coeffs = self.span.express(g)?;
        Some(TorusSpace { k: self.k }.combine(&coeffs, &self.phi.images))
    }

    pub fn is_injective(&self) -> bool {
        self.phi.is_injective(&self.group, &TorusSpace { k: self.k })
    }

    fn image_subgroup(&self) -> TorusSubgroup {
        TorusSubgroup::new(self.k, self.phi.images.clone())
    }

    fn commit(&mut self, stage: usize, x: GroupElement, image: TorusVector, kind: StageKind) -> Result<(), DensifyError> {
        self.phi.push(x.clone(), image.clone());
        self.span = self.span.with(&x)?;
        assert!(self.is_injective(), "stage {stage} broke injectivity");
        self.certificates.push(Certificate {
            stage,
            witness: x,
            image,
            kind,
        });
        Ok(())
    }

    fn initial(&mut self, set: &[GroupElement]) -> Result<(), DensifyError> {
        let x = set
            .iter()
            .find(|s| s.coords().iter().any(|c| !c.is_zero()))
            .ok_or(DensifyError::EmptySet)?
            .clone();
        let first = match self.group.element_order(&x)? {
            Order::Infinite => TorusElement::surd(self.basis.fresh(), BigRational::one()),
            Order::Finite(d) => TorusElement::from_rational(BigRational::new(BigInt::one(), d)),
        };
        let image = TorusVector::zero(self.k).with_coord(0, first);
        self.commit(0, x, image, StageKind::Initial)
    }

    /// One step of the recursion against `nbhd`.
    pub fn run_stage(
        &mut self,
        stage: usize,
        nbhd: &BoxNeighborhood,
        n_alpha: &BigInt,
        set: &[GroupElement],
        options: DensifyOptions,
    ) -> Result<(), DensifyError> {
        if nbhd.k() != self.k {
            return Err(DensifyError::Dimension {
                plan: nbhd.k(),
                run: self.k,
            });
        }
        if self.phi.is_empty() {
            return self.initial(set);
        }
        let arcs = nbhd.coordinate_arcs();
        let picked = pick_witness(&self.group, set, &self.span, n_alpha)?;
        let Some((x, order)) = picked else {
            if options.reuse {
                if let Some(hit) = self.reuse(stage, nbhd, set) {
                    self.certificates.push(hit);
                    return Ok(());
                }
            }
            return Err(DensifyError::Exhausted {
                stage,
                modulus: factorial(n_alpha),
            });
        };
        let solver_err = |source| DensifyError::Solver { stage, source };
        let k_image = self.image_subgroup();
        match order {
            Order::Infinite => {
                let k = self.k;
                let constraints = truncated_pairs(&k_image, u64::try_from(n_alpha).unwrap_or(u64::MAX), k);
                let f = avoid_free(&arcs, &k_image, &constraints, &mut self.basis).map_err(solver_err)?;
                self.commit(stage, x, f, StageKind::Free)
            }
            Order::Finite(m) => {
                assert!(&m > n_alpha);
                let mx = self.group.scale(&m, &x)?;
                let f_prime = self.evaluate(&mx).expect("m·x lies in the earlier subgroup");
                let sol = avoid_with_lift(&arcs, &k_image, &f_prime, &m).map_err(solver_err)?;
                let space = TorusSpace { k: self.k };
                let ext = Extension {
                    domain: &self.group,
                    codomain: &space,
                    psi: &self.phi,
                    k_star: &self.phi.images,
                    x: x.clone(),
                    x_star: sol.f.clone(),
                    m: m.clone(),
                };
                let extended = ext
                    .extend()
                    .map_err(|source| DensifyError::Extension { stage, source })?;
                debug_assert_eq!(extended.images.last(), Some(&sol.f));
                self.commit(stage, x, sol.f, StageKind::Lift { m })
            }
        }
    }

    fn reuse(&self, stage: usize, nbhd: &BoxNeighborhood, set: &[GroupElement]) -> Option<Certificate> {
        set.iter().find_map(|s| {
            let image = self.evaluate(s)?;
            nbhd.contains(&image).then(|| Certificate {
                stage,
                witness: s.clone(),
                image,
                kind: StageKind::Reused,
            })
        })
    }

    /// Markers allocated so far, in allocation order.
    pub fn markers(&self) -> &[Marker] {
        self.basis.symbols()
    }
}

#[derive(Clone, Debug)]
pub struct DensifyOutput {
    pub phi: HomSpec<GroupElement, TorusVector>,
    pub certificates: Vec<Certificate>,
}

/// Runs every stage of `plan`; the result is injective and has one
/// certificate per box.
pub fn densify(
    group: &GroupPresentation,
    set: &[GroupElement],
    plan: &StagePlan,
    options: DensifyOptions,
) -> Result<DensifyOutput, DensifyError> {
    let mut state = ConstructionState::new(group.clone(), plan.k());
    for (stage, (nbhd, n_alpha)) in plan.neighborhoods.iter().zip(&plan.n_of_stage).enumerate() {
        let previous = state.phi.clone();
        state.run_stage(stage, nbhd, n_alpha, set, options)?;
        for (g, img) in previous.domain_generators.iter().zip(&previous.images) {
            assert_eq!(state.evaluate(g).as_ref(), Some(img), "stage {stage} changed an earlier value");
        }
        let cert = state.certificates.last().expect("stage produced a certificate");
        assert!(nbhd.contains(&cert.image), "stage {stage} missed its box");
    }
    assert!(state.is_injective());
    Ok(DensifyOutput {
        phi: state.phi,
        certificates: state.certificates,
    })
}

/// Images of `S ∩ H` under `φ`, in the order of `S`.
pub fn image_of_set(
    group: &GroupPresentation,
    phi: &HomSpec<GroupElement, TorusVector>,
    k: usize,
    set: &[GroupElement],
) -> Vec<TorusVector> {
    let space = TorusSpace { k };
    let Ok(span) = group.span(&phi.domain_generators) else {
        return Vec::new();
    };
    set.iter()
        .filter_map(|s| span.express(s))
        .map(|c| space.combine(&c, &phi.images))
        .collect()
}

/// `φ(g)`, or `None` outside the domain of `φ`.
pub fn evaluate(
    group: &GroupPresentation,
    phi: &HomSpec<GroupElement, TorusVector>,
    k: usize,
    g: &GroupElement,
) -> Option<TorusVector> {
    phi.evaluate(group, &TorusSpace { k }, g)
}
