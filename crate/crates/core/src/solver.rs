//! Vectors in `T^k`, finitely generated subgroups of `T^k` with exact
//! membership, and the two coordinate-by-coordinate constructions that place a
//! vector inside a product of arcs while keeping its multiples out of a subgroup.
//!
//! Membership works on a flattened coefficient space: every coordinate
//! contributes one slot for its rational part (taken modulo 1) and one slot per
//! formal irrational (taken exactly). After clearing denominators, `v ∈ K`
//! becomes membership of an integer vector in the lattice spanned by the scaled
//! generators and the scaled unit vectors of the rational slots.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::Order;
use crate::lattice::Echelon;
use crate::real::Marker;
use crate::torus::{solve_arc, Arc, IrrationalBasis, TorusElement, TorusError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("{constraints} constraints do not fit on {coordinates} coordinates")]
    TooManyConstraints { constraints: usize, coordinates: usize },
    #[error("expected vectors with {expected} coordinates, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("no arcs given")]
    NoArcs,
    #[error("m = {0} is below 2")]
    BadModulus(BigInt),
    #[error("2/{m} is not below the length {length} of the arc at coordinate {coordinate}")]
    ArcTooShort { m: BigInt, coordinate: usize, length: BigRational },
    #[error("f' is not in K")]
    LiftTargetOutsideSubgroup,
    #[error("{n}·f lands in K and all {coordinates} coordinates are already committed")]
    InsufficientCoordinates { n: BigInt, coordinates: usize },
    #[error(transparent)]
    Torus(#[from] TorusError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusVector {
    coords: Vec<TorusElement>,
}

impl TorusVector {
    pub fn new(coords: Vec<TorusElement>) -> Self {
        TorusVector { coords }
    }

    pub fn zero(k: usize) -> Self {
        TorusVector {
            coords: vec![TorusElement::zero(); k],
        }
    }

    pub fn coords(&self) -> &[TorusElement] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(TorusElement::is_zero)
    }

    pub fn add(&self, other: &TorusVector) -> TorusVector {
        assert_eq!(self.dim(), other.dim(), "torus dimension mismatch");
        TorusVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &TorusVector) -> TorusVector {
        assert_eq!(self.dim(), other.dim(), "torus dimension mismatch");
        TorusVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, n: &BigInt) -> TorusVector {
        TorusVector {
            coords: self.coords.iter().map(|a| a.scale(n)).collect(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> TorusVector {
        self.scale(&BigInt::from(n))
    }

    pub fn with_coord(&self, i: usize, value: TorusElement) -> TorusVector {
        let mut coords = self.coords.clone();
        coords[i] = value;
        TorusVector { coords }
    }

    fn markers(&self) -> impl Iterator<Item = Marker> + '_ {
        self.coords.iter().flat_map(|c| c.surds().keys().copied())
    }
}

impl fmt::Display for TorusVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for TorusVector {
    type Err = TorusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| TorusError::Parse {
                input: s.to_string(),
                reason: "expected [a; b; …]".into(),
            })?;
        if inner.trim().is_empty() {
            return Ok(TorusVector::new(Vec::new()));
        }
        inner
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(TorusVector::new)
    }
}

/// Scaled integer lattice for `K + Z^k` in the flattened coefficient space.
#[derive(Debug)]
struct FlatLattice {
    k: usize,
    markers: Vec<Marker>,
    denom: BigInt,
    ngens: usize,
    echelon: Echelon,
}

impl FlatLattice {
    fn build(k: usize, gens: &[TorusVector]) -> Self {
        let markers: Vec<Marker> = gens
            .iter()
            .flat_map(TorusVector::markers)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut denom = BigInt::one();
        for g in gens {
            for c in &g.coords {
                denom = denom.lcm(c.rational_part().denom());
                for q in c.surds().values() {
                    denom = denom.lcm(q.denom());
                }
            }
        }
        let mut out = FlatLattice {
            k,
            markers,
            denom,
            ngens: gens.len(),
            echelon: Echelon::new(&[], 0),
        };
        let width = out.width();
        let d = BigRational::from_integer(out.denom.clone());
        let mut rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                out.flatten(g)
                    .expect("generator markers are in the lattice")
                    .into_iter()
                    .map(|x| (x * &d).to_integer())
                    .collect()
            })
            .collect();
        for i in 0..k {
            let mut row = vec![BigInt::zero(); width];
            row[i] = out.denom.clone();
            rows.push(row);
        }
        out.echelon = Echelon::new(&rows, width);
        out
    }

    fn width(&self) -> usize {
        self.k * (1 + self.markers.len())
    }

    /// Unscaled flat coordinates; `None` if `v` uses a marker the lattice lacks.
    fn flatten(&self, v: &TorusVector) -> Option<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); self.width()];
        for (i, c) in v.coords.iter().enumerate() {
            out[i] = c.rational_part().clone();
            for (m, q) in c.surds() {
                let j = self.markers.binary_search(m).ok()?;
                out[self.k + i * self.markers.len() + j] = q.clone();
            }
        }
        Some(out)
    }

    fn scaled(&self, v: &TorusVector) -> Option<Vec<BigRational>> {
        let d = BigRational::from_integer(self.denom.clone());
        Some(self.flatten(v)?.into_iter().map(|x| x * &d).collect())
    }

    fn scaled_int(&self, v: &TorusVector) -> Option<Vec<BigInt>> {
        self.scaled(v)?
            .into_iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    fn contains(&self, v: &TorusVector) -> bool {
        self.scaled_int(v).is_some_and(|x| self.echelon.contains(&x))
    }

    fn order_of(&self, v: &TorusVector) -> Order {
        match self.scaled(v) {
            Some(x) => self.echelon.order_of(&x).into(),
            None => Order::Infinite,
        }
    }

    fn express(&self, v: &TorusVector) -> Option<Vec<BigInt>> {
        let x = self.scaled_int(v)?;
        let mut sol = self.echelon.solve(&x)?;
        sol.truncate(self.ngens);
        Some(sol)
    }

    fn relations(&self) -> Vec<Vec<BigInt>> {
        self.echelon
            .kernel()
            .iter()
            .map(|r| r[..self.ngens].to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect()
    }
}

/// `⟨generators⟩ ≤ T^k`.
#[derive(Debug)]
pub struct TorusSubgroup {
    k: usize,
    generators: Vec<TorusVector>,
    lattice: OnceLock<FlatLattice>,
}

impl Clone for TorusSubgroup {
    fn clone(&self) -> Self {
        TorusSubgroup::new(self.k, self.generators.clone())
    }
}

impl PartialEq for TorusSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.generators == other.generators
    }
}

impl TorusSubgroup {
    pub fn new(k: usize, generators: Vec<TorusVector>) -> Self {
        for g in &generators {
            assert_eq!(g.dim(), k, "generator dimension mismatch");
        }
        TorusSubgroup {
            k,
            generators,
            lattice: OnceLock::new(),
        }
    }

    pub fn trivial(k: usize) -> Self {
        Self::new(k, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[TorusVector] {
        &self.generators
    }

    fn lattice(&self) -> &FlatLattice {
        self.lattice
            .get_or_init(|| FlatLattice::build(self.k, &self.generators))
    }

    pub fn contains(&self, v: &TorusVector) -> bool {
        v.dim() == self.k && self.lattice().contains(v)
    }

    /// Smallest `n >= 1` with `n·v ∈ K`.
    pub fn order_of(&self, v: &TorusVector) -> Order {
        self.lattice().order_of(v)
    }

    /// Integer coefficients on the generators summing to `v`.
    pub fn express(&self, v: &TorusVector) -> Option<Vec<BigInt>> {
        self.lattice().express(v)
    }

    /// Basis of the integer relations among the generators.
    pub fn relations(&self) -> Vec<Vec<BigInt>> {
        self.lattice().relations()
    }

    pub fn combine(&self, coeffs: &[BigInt]) -> TorusVector {
        let mut acc = TorusVector::zero(self.k);
        for (a, g) in coeffs.iter().zip(&self.generators) {
            if !a.is_zero() {
                acc = acc.add(&g.scale(a));
            }
        }
        acc
    }
}

pub fn member_t(v: &TorusVector, k: &TorusSubgroup) -> bool {
    k.contains(v)
}

fn check_arcs(arcs: &[Arc], subgroup: &TorusSubgroup) -> Result<(), SolverError> {
    if arcs.is_empty() {
        return Err(SolverError::NoArcs);
    }
    if subgroup.dim() != arcs.len() {
        return Err(SolverError::Dimension {
            expected: arcs.len(),
            found: subgroup.dim(),
        });
    }
    Ok(())
}

/// Smallest integer `k'` with `2/k' <` every arc length.
pub fn length_bound_index(arcs: &[Arc]) -> BigInt {
    let min = arcs
        .iter()
        .map(Arc::length)
        .min()
        .expect("at least one arc");
    (BigRational::from_integer(2.into()) / min).floor().to_integer() + 1
}

/// Multiples `1..=n_max` checked literally after a solver run.
pub const FREE_CHECK_MULTIPLES: i64 = 10;

/// Builds `f ∈ Π arcs` with `⟨f⟩ ≅ Z` and `⟨f⟩ ∩ K = {0}`.
///
/// Constraint `j` is placed on coordinate `j`: there `f` is a solution of
/// `m·y = 0` with `m = n_j(k'+1)` that avoids `n_j·y = h_j(j)`. Remaining
/// coordinates take their arc midpoints. Finally one coordinate (the first
/// unconstrained one, else coordinate 0) is shifted by a small multiple of a
/// freshly allocated irrational, so every nonzero multiple of `f` has a surd
/// term no element of `K` carries.
pub fn avoid_free(
    arcs: &[Arc],
    subgroup: &TorusSubgroup,
    constraints: &[(TorusVector, BigInt)],
    basis: &mut IrrationalBasis,
) -> Result<TorusVector, SolverError> {
    check_arcs(arcs, subgroup)?;
    let k = arcs.len();
    if constraints.len() > k {
        return Err(SolverError::TooManyConstraints {
            constraints: constraints.len(),
            coordinates: k,
        });
    }
    for (h, _) in constraints {
        if h.dim() != k {
            return Err(SolverError::Dimension {
                expected: k,
                found: h.dim(),
            });
        }
    }
    let kp1 = length_bound_index(arcs) + 1;
    let zero = TorusElement::zero();
    let mut coords: Vec<TorusElement> = arcs.iter().map(Arc::midpoint).collect();
    for (gamma, (h, n)) in constraints.iter().enumerate() {
        let m = n * &kp1;
        coords[gamma] = solve_arc(&arcs[gamma], &zero, &h.coords[gamma], &m, n)?;
    }

    let target = if constraints.len() < k { constraints.len() } else { 0 };
    let marker = basis.fresh();
    let y = coords[target].rational_part().clone();
    let room = arcs[target]
        .clearance(&y)
        .expect("solver output lies inside its arc");
    let root_ceiling = BigInt::from(marker.prime()).sqrt() + 1;
    let eps = room / BigRational::from_integer(root_ceiling * 2);
    coords[target] = coords[target].add(&TorusElement::surd(marker, eps));
    let f = TorusVector::new(coords);

    for (gamma, arc) in arcs.iter().enumerate() {
        assert!(arc.contains(&f.coords[gamma]), "coordinate {gamma} left its arc");
    }
    for (gamma, (h, n)) in constraints.iter().enumerate() {
        assert_ne!(f.coords[gamma].scale(n), h.coords[gamma]);
    }
    assert_eq!(subgroup.order_of(&f), Order::Infinite);
    for n in 1..=FREE_CHECK_MULTIPLES {
        assert!(!subgroup.contains(&f.scale_i64(n)), "{n}·f fell into K");
    }
    Ok(f)
}

/// Outcome of [`avoid_with_lift`], with the constraints that were actually
/// committed to coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSolution {
    pub f: TorusVector,
    /// `(coordinate, h, n)` for each defeated pair `n·f = h`.
    pub committed: Vec<(usize, TorusVector, BigInt)>,
}

/// Largest `m` for which the conclusion is also re-checked one multiple at a
/// time; beyond it only the order computation is used.
pub const LITERAL_CHECK_LIMIT: u64 = 4096;

/// Builds `f ∈ Π arcs` with `m·f = f'` and `n·f ∉ K` for `1 <= n < m`.
///
/// Every coordinate starts at the first lift of `f'(γ)` inside its arc. The
/// exact order `d` of `f` modulo `K` divides `m`; while `d < m`, the pair
/// `(d·f, d)` is a member of `K × {1..m-1}` that `f` fails to avoid, so the next
/// free coordinate is re-solved to dodge it. Each pair is handled on its own
/// coordinate and never re-broken, so the run ends once `f` has order `m`
/// or the coordinates run out.
pub fn avoid_with_lift(
    arcs: &[Arc],
    subgroup: &TorusSubgroup,
    f_prime: &TorusVector,
    m: &BigInt,
) -> Result<LiftSolution, SolverError> {
    check_arcs(arcs, subgroup)?;
    let k = arcs.len();
    if f_prime.dim() != k {
        return Err(SolverError::Dimension {
            expected: k,
            found: f_prime.dim(),
        });
    }
    if m < &BigInt::from(2) {
        return Err(SolverError::BadModulus(m.clone()));
    }
    let two_over_m = BigRational::new(2.into(), m.clone());
    for (coordinate, arc) in arcs.iter().enumerate() {
        if &two_over_m >= arc.length() {
            return Err(SolverError::ArcTooShort {
                m: m.clone(),
                coordinate,
                length: arc.length().clone(),
            });
        }
    }
    if !subgroup.contains(f_prime) {
        return Err(SolverError::LiftTargetOutsideSubgroup);
    }

    let one = BigInt::one();
    let zero = TorusElement::zero();
    let mut coords = Vec::with_capacity(k);
    for (gamma, arc) in arcs.iter().enumerate() {
        coords.push(solve_arc(arc, &f_prime.coords[gamma], &zero, m, &one)?);
    }
    let mut f = TorusVector::new(coords);
    let mut committed = Vec::new();
    loop {
        let d = match subgroup.order_of(&f) {
            Order::Finite(d) => d,
            Order::Infinite => unreachable!("m·f = f' lies in K"),
        };
        debug_assert!(m.is_multiple_of(&d));
        if &d == m {
            break;
        }
        let h = f.scale(&d);
        let gamma = committed.len();
        if gamma == k {
            return Err(SolverError::InsufficientCoordinates { n: d, coordinates: k });
        }
        let y = solve_arc(&arcs[gamma], &f_prime.coords[gamma], &h.coords[gamma], m, &d)?;
        f = f.with_coord(gamma, y);
        committed.push((gamma, h, d));
    }

    assert_eq!(f.scale(m), *f_prime);
    for (gamma, arc) in arcs.iter().enumerate() {
        assert!(arc.contains(&f.coords[gamma]), "coordinate {gamma} left its arc");
    }
    if m <= &BigInt::from(LITERAL_CHECK_LIMIT) {
        let mut n = BigInt::one();
        while &n < m {
            assert!(!subgroup.contains(&f.scale(&n)), "{n}·f fell into K");
            n += 1;
        }
    }
    Ok(LiftSolution { f, committed })
}

/// The first `limit` pairs of `K × {1..=n_max}`, taking `0` and then the
/// generators of `K` for each `n` in turn.
pub fn truncated_pairs(
    subgroup: &TorusSubgroup,
    n_max: u64,
    limit: usize,
) -> Vec<(TorusVector, BigInt)> {
    let mut elements = vec![TorusVector::zero(subgroup.dim())];
    elements.extend(subgroup.generators().iter().cloned());
    let mut out = Vec::new();
    'outer: for n in 1..=n_max {
        for h in &elements {
            if out.len() == limit {
                break 'outer;
            }
            out.push((h.clone(), BigInt::from(n)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::rat;

    fn tv(parts: &[(i64, i64)]) -> TorusVector {
        TorusVector::new(parts.iter().map(|&(n, d)| TorusElement::from_ratio(n, d)).collect())
    }

    #[test]
    fn member_examples() {
        let k = TorusSubgroup::new(1, vec![tv(&[(1, 4)])]);
        assert!(member_t(&tv(&[(1, 2)]), &k));
        assert!(!member_t(&tv(&[(1, 3)]), &k));
        assert!(member_t(&tv(&[(0, 1)]), &k));

        let v = TorusVector::new(vec![TorusElement::surd(Marker(0), rat(1, 2)), TorusElement::zero()]);
        let k = TorusSubgroup::new(
            2,
            vec![TorusVector::new(vec![
                TorusElement::zero(),
                TorusElement::surd(Marker(0), rat(1, 2)),
            ])],
        );
        assert!(!member_t(&v, &k));
    }

    #[test]
    fn order_and_express() {
        let alpha = TorusElement::surd(Marker(0), rat(1, 1));
        let k = TorusSubgroup::new(1, vec![TorusVector::new(vec![alpha.clone()])]);
        let x = TorusVector::new(vec![alpha.scale(&BigInt::from(5)).add(&TorusElement::from_ratio(3, 1))]);
        assert_eq!(k.express(&x), Some(vec![BigInt::from(5)]));
        let third = TorusVector::new(vec![TorusElement::surd(Marker(0), rat(2, 3))]);
        assert_eq!(k.order_of(&third), Order::Finite(3.into()));
        let other = TorusVector::new(vec![TorusElement::surd(Marker(1), rat(1, 1))]);
        assert_eq!(k.order_of(&other), Order::Infinite);

        let k = TorusSubgroup::new(1, vec![tv(&[(1, 2)]), tv(&[(1, 3)])]);
        assert_eq!(k.order_of(&tv(&[(1, 12)])), Order::Finite(2.into()));
        let rel = k.relations();
        assert!(!rel.is_empty());
        for r in rel {
            assert!(k.combine(&r).is_zero());
        }
    }

    #[test]
    fn vector_parse_roundtrip() {
        let v = TorusVector::new(vec![
            TorusElement::from_ratio(1, 3),
            TorusElement::surd(Marker(1), rat(-2, 7)),
        ]);
        assert_eq!(v.to_string().parse::<TorusVector>().unwrap(), v);
    }

    #[test]
    fn avoid_free_trivial_subgroup() {
        let mut basis = IrrationalBasis::new();
        let arcs = vec![Arc::full(), Arc::full()];
        let k = TorusSubgroup::trivial(2);
        let f = avoid_free(&arcs, &k, &[], &mut basis).unwrap();
        for n in 1..=10 {
            assert!(!member_t(&f.scale_i64(n), &k));
        }
        assert!(f.coords().iter().any(|c| !c.surds().is_empty()));
    }

    #[test]
    fn avoid_free_half_arcs() {
        let mut basis = IrrationalBasis::new();
        let arcs = vec![
            Arc::from_ratios((0, 1), (1, 2)).unwrap(),
            Arc::from_ratios((1, 4), (1, 2)).unwrap(),
        ];
        let gen = tv(&[(1, 2), (0, 1)]);
        let k = TorusSubgroup::new(2, vec![gen.clone()]);
        let constraints = vec![(gen.clone(), BigInt::from(1)), (gen.clone(), BigInt::from(2))];
        let f = avoid_free(&arcs, &k, &constraints, &mut basis).unwrap();
        assert!(arcs[0].contains(&f.coords()[0]) && arcs[1].contains(&f.coords()[1]));
        assert!(!member_t(&f, &k));
        assert!(!member_t(&f.scale_i64(2), &k));
    }

    #[test]
    fn avoid_free_too_many_constraints() {
        let mut basis = IrrationalBasis::new();
        let k = TorusSubgroup::trivial(1);
        let c = (TorusVector::zero(1), BigInt::one());
        let err = avoid_free(&[Arc::full()], &k, &[c.clone(), c.clone(), c], &mut basis).unwrap_err();
        assert!(matches!(err, SolverError::TooManyConstraints { .. }));
    }

    #[test]
    fn avoid_with_lift_third() {
        let k = TorusSubgroup::new(1, vec![tv(&[(1, 3)])]);
        let sol = avoid_with_lift(&[Arc::full()], &k, &tv(&[(1, 3)]), &3.into()).unwrap();
        assert_eq!(sol.f, tv(&[(1, 9)]));
        assert!(sol.committed.is_empty());
    }

    #[test]
    fn avoid_with_lift_preconditions() {
        let k = TorusSubgroup::trivial(1);
        // m = 2 never satisfies 2/m < l(V)
        let err = avoid_with_lift(&[Arc::full()], &k, &tv(&[(0, 1)]), &2.into()).unwrap_err();
        assert!(matches!(err, SolverError::ArcTooShort { .. }));
        let half = Arc::from_ratios((0, 1), (1, 2)).unwrap();
        let err = avoid_with_lift(&[half], &k, &tv(&[(0, 1)]), &4.into()).unwrap_err();
        assert!(matches!(err, SolverError::ArcTooShort { .. }));
        let err = avoid_with_lift(&[Arc::full()], &k, &tv(&[(1, 2)]), &3.into()).unwrap_err();
        assert_eq!(err, SolverError::LiftTargetOutsideSubgroup);
    }

    #[test]
    fn avoid_with_lift_trivial_subgroup_m3() {
        let k = TorusSubgroup::trivial(1);
        let sol = avoid_with_lift(&[Arc::full()], &k, &tv(&[(0, 1)]), &3.into()).unwrap();
        assert_eq!(sol.f, tv(&[(1, 3)]));
    }

    #[test]
    fn avoid_with_lift_commits_coordinates() {
        // K = ⟨(1/2, 0)⟩, f' = 0, m = 4: the default lift (1/4, 1/4) has order 4,
        // so force a case where the default collides by taking arcs around 1/2.
        let k = TorusSubgroup::new(2, vec![tv(&[(1, 2), (0, 1)])]);
        let arcs = vec![
            Arc::from_ratios((2, 5), (3, 5)).unwrap(),
            Arc::from_ratios((2, 5), (3, 5)).unwrap(),
        ];
        let sol = avoid_with_lift(&arcs, &k, &tv(&[(0, 1), (0, 1)]), &4.into()).unwrap();
        assert_eq!(k.order_of(&sol.f), Order::Finite(4.into()));
        assert_eq!(sol.f.scale_i64(4), tv(&[(0, 1), (0, 1)]));
    }

    #[test]
    fn avoid_with_lift_runs_out() {
        // K contains every 2-torsion point of T^1, m = 4, f' = 1/2 ∈ K... use f' = 0:
        // lifts are quarter points; 2·f always lands in {0, 1/2} = K.
        let k = TorusSubgroup::new(1, vec![tv(&[(1, 2)])]);
        let err = avoid_with_lift(&[Arc::full()], &k, &tv(&[(0, 1)]), &4.into()).unwrap_err();
        assert!(matches!(err, SolverError::InsufficientCoordinates { .. }));
    }

    #[test]
    fn truncation_order() {
        let k = TorusSubgroup::new(1, vec![tv(&[(1, 2)])]);
        let pairs = truncated_pairs(&k, 3, 5);
        assert_eq!(pairs.len(), 5);
        assert_eq!(pairs[0], (tv(&[(0, 1)]), BigInt::from(1)));
        assert_eq!(pairs[1], (tv(&[(1, 2)]), BigInt::from(1)));
        assert_eq!(pairs[2], (tv(&[(0, 1)]), BigInt::from(2)));
    }
}
