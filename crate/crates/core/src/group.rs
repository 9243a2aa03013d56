//! Finitely generated abelian groups in invariant-factor form.
//!
//! A [`GroupPresentation`] describes `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_t` with
//! `d_1 | d_2 | … | d_t`. Elements are integer coordinate vectors whose torsion
//! coordinates are kept reduced. Subgroups are stored as an echelon basis of the
//! lifted lattice (generators plus the torsion relations `d_i·e_{r+i}`), which
//! makes membership and quotient orders exact linear algebra.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{smith, Echelon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invariant factor {0} is smaller than 2")]
    FactorTooSmall(BigInt),
    #[error("invariant factor {0} does not divide {1}")]
    NotAChain(BigInt, BigInt),
    #[error("element has {found} coordinates, presentation expects {expected}")]
    PresentationMismatch { expected: usize, found: usize },
    #[error("relation row {row} has {found} entries, expected {expected}")]
    RelationWidth { row: usize, expected: usize, found: usize },
}

/// Either a positive integer or "infinite".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl From<Option<BigInt>> for Order {
    fn from(v: Option<BigInt>) -> Self {
        v.map_or(Order::Infinite, Order::Finite)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

/// How coordinates over the original generators of a relation presentation map
/// into invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    ngens: usize,
    column_transform: Vec<Vec<BigInt>>,
    free_cols: Vec<usize>,
    torsion_cols: Vec<usize>,
}

impl CoordinateMap {
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Maps an integer vector over the original generators to an element.
    pub fn apply(
        &self,
        group: &GroupPresentation,
        coords: &[BigInt],
    ) -> Result<GroupElement, GroupError> {
        if coords.len() != self.ngens {
            return Err(GroupError::PresentationMismatch {
                expected: self.ngens,
                found: coords.len(),
            });
        }
        let image = |col: usize| -> BigInt {
            coords
                .iter()
                .zip(&self.column_transform)
                .map(|(x, row)| x * &row[col])
                .sum()
        };
        let out = self
            .free_cols
            .iter()
            .chain(&self.torsion_cols)
            .map(|&c| image(c))
            .collect();
        group.element(out)
    }
}

impl GroupPresentation {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, GroupError> {
        let two = BigInt::from(2);
        for d in &invariant_factors {
            if d < &two {
                return Err(GroupError::FactorTooSmall(d.clone()));
            }
        }
        for w in invariant_factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(GroupError::NotAChain(w[0].clone(), w[1].clone()));
            }
        }
        Ok(GroupPresentation {
            free_rank,
            invariant_factors,
        })
    }

    pub fn free(rank: usize) -> Self {
        GroupPresentation {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z^r` over generators subject to integer relations (rows), reduced to
    /// invariant factors once.
    pub fn from_relations(
        ngens: usize,
        relations: &[Vec<BigInt>],
    ) -> Result<(Self, CoordinateMap), GroupError> {
        for (row, r) in relations.iter().enumerate() {
            if r.len() != ngens {
                return Err(GroupError::RelationWidth {
                    row,
                    expected: ngens,
                    found: r.len(),
                });
            }
        }
        let snf = smith(relations, ngens);
        let mut free_cols = Vec::new();
        let mut torsion = Vec::new();
        for (c, d) in snf.diagonal.iter().enumerate() {
            if d.is_zero() {
                free_cols.push(c);
            } else if !d.is_one() {
                torsion.push((c, d.clone()));
            }
        }
        let group = GroupPresentation::new(
            free_cols.len(),
            torsion.iter().map(|(_, d)| d.clone()).collect(),
        )?;
        let map = CoordinateMap {
            ngens,
            column_transform: snf.column_transform,
            free_cols,
            torsion_cols: torsion.into_iter().map(|(c, _)| c).collect(),
        };
        Ok((group, map))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Number of coordinates of an element.
    pub fn width(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order when finite.
    pub fn order(&self) -> Order {
        if self.free_rank > 0 {
            Order::Infinite
        } else {
            Order::Finite(self.invariant_factors.iter().product())
        }
    }

    pub fn torsion_part(&self) -> GroupPresentation {
        GroupPresentation {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    fn modulus(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.free_rank)
            .map(|t| &self.invariant_factors[t])
    }

    fn reduce(&self, mut coords: Vec<BigInt>) -> GroupElement {
        for (i, c) in coords.iter_mut().enumerate() {
            if let Some(d) = self.modulus(i) {
                *c = c.mod_floor(d);
            }
        }
        GroupElement { coords }
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if a.coords.len() != self.width() {
            return Err(GroupError::PresentationMismatch {
                expected: self.width(),
                found: a.coords.len(),
            });
        }
        Ok(())
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.width() {
            return Err(GroupError::PresentationMismatch {
                expected: self.width(),
                found: coords.len(),
            });
        }
        Ok(self.reduce(coords))
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.width()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect()))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect()))
    }

    pub fn scale(&self, n: &BigInt, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.reduce(a.coords.iter().map(|x| n * x).collect()))
    }

    /// `nS = { n·s : s ∈ S }`, first occurrences kept in input order.
    pub fn scale_set(
        &self,
        n: &BigInt,
        set: &[GroupElement],
    ) -> Result<Vec<GroupElement>, GroupError> {
        let mut seen = HashSet::with_capacity(set.len());
        let mut out = Vec::new();
        for s in set {
            let t = self.scale(n, s)?;
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
        Ok(out)
    }

    /// Order of `a` in the group.
    pub fn element_order(&self, a: &GroupElement) -> Result<Order, GroupError> {
        self.check(a)?;
        if a.coords[..self.free_rank].iter().any(|c| !c.is_zero()) {
            return Ok(Order::Infinite);
        }
        let ord = a.coords[self.free_rank..]
            .iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d))));
        Ok(Order::Finite(ord))
    }

    fn relation_rows(&self) -> Vec<Vec<BigInt>> {
        self.invariant_factors
            .iter()
            .enumerate()
            .map(|(t, d)| {
                let mut row = vec![BigInt::zero(); self.width()];
                row[self.free_rank + t] = d.clone();
                row
            })
            .collect()
    }

    fn lattice_of(&self, gens: &[GroupElement]) -> Echelon {
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords.clone()).collect();
        rows.extend(self.relation_rows());
        Echelon::new(&rows, self.width())
    }

    pub fn span(&self, set: &[GroupElement]) -> Result<SubgroupBasis, GroupError> {
        for s in set {
            self.check(s)?;
        }
        Ok(SubgroupBasis {
            ambient: self.clone(),
            generators: set.to_vec(),
            normal_form: self.lattice_of(set),
        })
    }

    pub fn member(&self, g: &GroupElement, b: &SubgroupBasis) -> Result<bool, GroupError> {
        self.check(g)?;
        self.same_ambient(b)?;
        Ok(b.normal_form.contains(&g.coords))
    }

    /// Smallest `n >= 1` with `n·x ∈ B`, read off the rational decomposition of
    /// `x` against the echelon basis of `B`.
    pub fn order_in_quotient(&self, x: &GroupElement, b: &SubgroupBasis) -> Result<Order, GroupError> {
        self.check(x)?;
        self.same_ambient(b)?;
        let v: Vec<BigRational> = x
            .coords
            .iter()
            .cloned()
            .map(BigRational::from_integer)
            .collect();
        Ok(b.normal_form.order_of(&v).into())
    }

    /// Integer coefficients `a` with `Σ a_i·gens_i = target`.
    pub fn express(&self, target: &GroupElement, gens: &[GroupElement]) -> Option<Vec<BigInt>> {
        let lattice = self.lattice_of(gens);
        let mut sol = lattice.solve(&target.coords)?;
        sol.truncate(gens.len());
        Some(sol)
    }

    /// Basis of the integer relations among `gens`.
    pub fn relations(&self, gens: &[GroupElement]) -> Vec<Vec<BigInt>> {
        let lattice = self.lattice_of(gens);
        lattice
            .kernel()
            .iter()
            .map(|k| k[..gens.len()].to_vec())
            .filter(|k| k.iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn combine(&self, coeffs: &[BigInt], gens: &[GroupElement]) -> GroupElement {
        let mut acc = vec![BigInt::zero(); self.width()];
        for (a, g) in coeffs.iter().zip(gens) {
            if a.is_zero() {
                continue;
            }
            for (x, y) in acc.iter_mut().zip(&g.coords) {
                *x += a * y;
            }
        }
        self.reduce(acc)
    }

    /// Every element of a finite group, in lexicographic coordinate order.
    pub fn enumerate(&self) -> Option<Vec<GroupElement>> {
        if self.free_rank > 0 {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut c = BigInt::zero();
                while &c < d {
                    let mut p: Vec<BigInt> = prefix.clone();
                    p.push(c.clone());
                    next.push(p);
                    c += 1;
                }
            }
            out = next;
        }
        Some(out.into_iter().map(|coords| GroupElement { coords }).collect())
    }

    fn same_ambient(&self, b: &SubgroupBasis) -> Result<(), GroupError> {
        if b.ambient != *self {
            return Err(GroupError::PresentationMismatch {
                expected: self.width(),
                found: b.ambient.width(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A subgroup `⟨generators⟩` with its echelon normal form.
#[derive(Clone, Debug)]
pub struct SubgroupBasis {
    ambient: GroupPresentation,
    generators: Vec<GroupElement>,
    normal_form: Echelon,
}

impl SubgroupBasis {
    pub fn ambient(&self) -> &GroupPresentation {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Echelon rows reduced back into the group; they generate the same subgroup.
    pub fn normal_form_generators(&self) -> Vec<GroupElement> {
        self.normal_form
            .rows()
            .iter()
            .map(|r| self.ambient.reduce(r.clone()))
            .filter(|g| g.coords.iter().any(|c| !c.is_zero()))
            .collect()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.ambient.width() && self.normal_form.contains(&g.coords)
    }

    /// Integer coefficients on the generators summing to `g`.
    pub fn express(&self, g: &GroupElement) -> Option<Vec<BigInt>> {
        if g.coords.len() != self.ambient.width() {
            return None;
        }
        let mut sol = self.normal_form.solve(&g.coords)?;
        sol.truncate(self.generators.len());
        Some(sol)
    }

    /// Rank of the free part of the subgroup.
    pub fn rank(&self) -> usize {
        self.normal_form.rank() - self.ambient.invariant_factors.len()
    }

    pub fn with(&self, g: &GroupElement) -> Result<SubgroupBasis, GroupError> {
        let mut gens = self.generators.clone();
        gens.push(g.clone());
        self.ambient.span(&gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &GroupPresentation, c: &[i64]) -> GroupElement {
        g.element_i64(c).unwrap()
    }

    #[test]
    fn add_examples() {
        let z = GroupPresentation::free(1);
        assert_eq!(z.add(&el(&z, &[3]), &el(&z, &[4])).unwrap(), el(&z, &[7]));
        let z4 = GroupPresentation::new(0, vec![4.into()]).unwrap();
        assert_eq!(z4.add(&el(&z4, &[3]), &el(&z4, &[2])).unwrap(), el(&z4, &[1]));
        let g = GroupPresentation::new(1, vec![6.into()]).unwrap();
        assert_eq!(g.add(&el(&g, &[1, 5]), &el(&g, &[2, 3])).unwrap(), el(&g, &[3, 2]));
    }

    #[test]
    fn mismatch_is_an_error() {
        let z = GroupPresentation::free(1);
        let z2 = GroupPresentation::free(2);
        let a = el(&z2, &[1, 1]);
        assert!(matches!(
            z.add(&a, &a),
            Err(GroupError::PresentationMismatch { .. })
        ));
        let b = z.span(&[el(&z, &[2])]).unwrap();
        assert!(z2.member(&a, &b).is_err());
    }

    #[test]
    fn invalid_factors() {
        assert!(GroupPresentation::new(0, vec![1.into()]).is_err());
        assert!(GroupPresentation::new(0, vec![4.into(), 6.into()]).is_err());
        assert!(GroupPresentation::new(0, vec![2.into(), 6.into()]).is_ok());
    }

    #[test]
    fn scale_set_examples() {
        let z = GroupPresentation::free(1);
        let s: Vec<_> = (0..3).map(|i| el(&z, &[i])).collect();
        let out = z.scale_set(&2.into(), &s).unwrap();
        assert_eq!(out, vec![el(&z, &[0]), el(&z, &[2]), el(&z, &[4])]);
        let z2 = GroupPresentation::new(0, vec![2.into()]).unwrap();
        let s: Vec<_> = (0..2).map(|i| el(&z2, &[i])).collect();
        assert_eq!(z2.scale_set(&2.into(), &s).unwrap(), vec![el(&z2, &[0])]);
    }

    #[test]
    fn span_and_member_examples() {
        let z = GroupPresentation::free(1);
        let b = z.span(&[el(&z, &[2])]).unwrap();
        assert!(z.member(&el(&z, &[4]), &b).unwrap());
        assert!(!z.member(&el(&z, &[3]), &b).unwrap());
        for k in -10..10 {
            assert_eq!(z.member(&el(&z, &[k]), &b).unwrap(), k % 2 == 0);
        }
        let b = z.span(&[el(&z, &[2]), el(&z, &[3])]).unwrap();
        assert!((-10..10).all(|k| z.member(&el(&z, &[k]), &b).unwrap()));

        let g = GroupPresentation::new(1, vec![2.into()]).unwrap();
        let b = g.span(&[el(&g, &[1, 1])]).unwrap();
        for k in -6..6 {
            assert!(g.member(&el(&g, &[k, k.rem_euclid(2)]), &b).unwrap());
            assert!(!g.member(&el(&g, &[k, (k + 1).rem_euclid(2)]), &b).unwrap());
        }
        assert!(g.member(&el(&g, &[5, 1]), &b).unwrap());
    }

    #[test]
    fn order_in_quotient_examples() {
        let z = GroupPresentation::free(1);
        let b = z.span(&[el(&z, &[3])]).unwrap();
        assert_eq!(z.order_in_quotient(&el(&z, &[1]), &b).unwrap(), Order::Finite(3.into()));
        let b = z.span(&[el(&z, &[0])]).unwrap();
        assert_eq!(z.order_in_quotient(&el(&z, &[1]), &b).unwrap(), Order::Infinite);
        let g = GroupPresentation::new(1, vec![6.into()]).unwrap();
        let b = g.span(&[el(&g, &[4, 0]), el(&g, &[0, 1])]).unwrap();
        assert_eq!(g.order_in_quotient(&el(&g, &[1, 0]), &b).unwrap(), Order::Finite(4.into()));
    }

    #[test]
    fn torsion_part_examples() {
        let g = GroupPresentation::new(2, vec![4.into()]).unwrap();
        assert_eq!(g.torsion_part(), GroupPresentation::new(0, vec![4.into()]).unwrap());
        assert_eq!(GroupPresentation::free(3).torsion_part().width(), 0);
        let g = GroupPresentation::new(0, vec![2.into(), 6.into()]).unwrap();
        assert_eq!(g.torsion_part(), g);
    }

    #[test]
    fn relations_to_invariant_factors() {
        // Z^2 / ⟨(2,0),(0,3)⟩ ≅ Z/6
        let rel = vec![
            vec![BigInt::from(2), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(3)],
        ];
        let (g, map) = GroupPresentation::from_relations(2, &rel).unwrap();
        assert_eq!(g, GroupPresentation::new(0, vec![6.into()]).unwrap());
        let a = map.apply(&g, &[1.into(), 0.into()]).unwrap();
        let b = map.apply(&g, &[0.into(), 1.into()]).unwrap();
        assert_eq!(g.element_order(&a).unwrap(), Order::Finite(2.into()));
        assert_eq!(g.element_order(&b).unwrap(), Order::Finite(3.into()));
        // Z^2 / ⟨(2,4)⟩ ≅ Z ⊕ Z/2
        let (g, _) = GroupPresentation::from_relations(2, &[vec![2.into(), 4.into()]]).unwrap();
        assert_eq!(g, GroupPresentation::new(1, vec![2.into()]).unwrap());
    }

    #[test]
    fn element_order() {
        let g = GroupPresentation::new(0, vec![4.into(), 12.into()]).unwrap();
        assert_eq!(g.element_order(&el(&g, &[2, 3])).unwrap(), Order::Finite(4.into()));
        assert_eq!(g.element_order(&el(&g, &[0, 0])).unwrap(), Order::Finite(1.into()));
    }
}
