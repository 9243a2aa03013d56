//! Extending an isomorphism `ψ: K → K*` to `K + ⟨x⟩ → K* + ⟨x*⟩` with `x ↦ x*`,
//! given `m·x ∈ K`, `m·x* ∈ K*`, no smaller multiple of either in its subgroup,
//! and `ψ(m·x) = m·x*`. Then `φ(h + kx) = ψ(h) + k·x*`.
//!
//! Everything here works for any group with exact membership, so the same
//! code handles subgroups of a presented group and subgroups of `T^k`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{GroupElement, GroupPresentation, Order};
use crate::solver::{TorusSubgroup, TorusVector};

/// An abelian group whose finitely generated subgroups can be decided exactly.
pub trait ExactGroup {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, n: &BigInt, a: &Self::Elem) -> Self::Elem;
    /// Integer coefficients on `gens` summing to `target`, if any.
    fn express(&self, target: &Self::Elem, gens: &[Self::Elem]) -> Option<Vec<BigInt>>;
    /// A basis of the integer relations among `gens`.
    fn relations(&self, gens: &[Self::Elem]) -> Vec<Vec<BigInt>>;
    /// Smallest `n >= 1` with `n·x ∈ ⟨gens⟩`.
    fn order_modulo(&self, x: &Self::Elem, gens: &[Self::Elem]) -> Order;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&-BigInt::one(), b))
    }

    fn contains(&self, target: &Self::Elem, gens: &[Self::Elem]) -> bool {
        self.express(target, gens).is_some()
    }

    fn combine(&self, coeffs: &[BigInt], gens: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (a, g) in coeffs.iter().zip(gens) {
            if !a.is_zero() {
                acc = self.add(&acc, &self.scale(a, g));
            }
        }
        acc
    }
}

impl ExactGroup for GroupPresentation {
    type Elem = GroupElement;

    fn zero(&self) -> GroupElement {
        GroupPresentation::zero(self)
    }

    fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupPresentation::add(self, a, b).expect("element of this presentation")
    }

    fn scale(&self, n: &BigInt, a: &GroupElement) -> GroupElement {
        GroupPresentation::scale(self, n, a).expect("element of this presentation")
    }

    fn express(&self, target: &GroupElement, gens: &[GroupElement]) -> Option<Vec<BigInt>> {
        GroupPresentation::express(self, target, gens)
    }

    fn relations(&self, gens: &[GroupElement]) -> Vec<Vec<BigInt>> {
        GroupPresentation::relations(self, gens)
    }

    fn order_modulo(&self, x: &GroupElement, gens: &[GroupElement]) -> Order {
        let span = self.span(gens).expect("elements of this presentation");
        self.order_in_quotient(x, &span).expect("element of this presentation")
    }

    fn combine(&self, coeffs: &[BigInt], gens: &[GroupElement]) -> GroupElement {
        GroupPresentation::combine(self, coeffs, gens)
    }
}

/// `T^k` as an [`ExactGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusSpace {
    pub k: usize,
}

impl ExactGroup for TorusSpace {
    type Elem = TorusVector;

    fn zero(&self) -> TorusVector {
        TorusVector::zero(self.k)
    }

    fn add(&self, a: &TorusVector, b: &TorusVector) -> TorusVector {
        a.add(b)
    }

    fn scale(&self, n: &BigInt, a: &TorusVector) -> TorusVector {
        a.scale(n)
    }

    fn express(&self, target: &TorusVector, gens: &[TorusVector]) -> Option<Vec<BigInt>> {
        TorusSubgroup::new(self.k, gens.to_vec()).express(target)
    }

    fn relations(&self, gens: &[TorusVector]) -> Vec<Vec<BigInt>> {
        TorusSubgroup::new(self.k, gens.to_vec()).relations()
    }

    fn order_modulo(&self, x: &TorusVector, gens: &[TorusVector]) -> Order {
        TorusSubgroup::new(self.k, gens.to_vec()).order_of(x)
    }
}

/// A homomorphism given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct HomSpec<A, B> {
    pub domain_generators: Vec<A>,
    pub images: Vec<B>,
}

impl<A: Clone, B: Clone> HomSpec<A, B> {
    pub fn new(domain_generators: Vec<A>, images: Vec<B>) -> Self {
        assert_eq!(domain_generators.len(), images.len(), "one image per generator");
        HomSpec {
            domain_generators,
            images,
        }
    }

    pub fn empty() -> Self {
        HomSpec {
            domain_generators: Vec::new(),
            images: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn push(&mut self, x: A, image: B) {
        self.domain_generators.push(x);
        self.images.push(image);
    }

    /// Value on `g`, or `None` if `g` is outside the generated subgroup.
    pub fn evaluate<D, C>(&self, domain: &D, codomain: &C, g: &A) -> Option<B>
    where
        D: ExactGroup<Elem = A>,
        C: ExactGroup<Elem = B>,
    {
        let coeffs = domain.express(g, &self.domain_generators)?;
        Some(codomain.combine(&coeffs, &self.images))
    }

    /// Every relation among the domain generators holds among the images.
    pub fn is_well_defined<D, C>(&self, domain: &D, codomain: &C) -> bool
    where
        D: ExactGroup<Elem = A>,
        C: ExactGroup<Elem = B>,
        B: PartialEq,
    {
        let zero = codomain.zero();
        domain
            .relations(&self.domain_generators)
            .iter()
            .all(|r| codomain.combine(r, &self.images) == zero)
    }

    /// Every relation among the images already holds among the domain
    /// generators, i.e. the kernel is trivial.
    pub fn is_injective<D, C>(&self, domain: &D, codomain: &C) -> bool
    where
        D: ExactGroup<Elem = A>,
        C: ExactGroup<Elem = B>,
        A: PartialEq,
    {
        let zero = domain.zero();
        codomain
            .relations(&self.images)
            .iter()
            .all(|r| domain.combine(r, &self.domain_generators) == zero)
    }
}

/// Which hypotheses of the extension step hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreconditionReport {
    pub mx_in_k: bool,
    pub mx_star_in_k_star: bool,
    /// `n·x ∉ K` for `1 <= n < m`.
    pub x_avoids_k: bool,
    pub x_star_avoids_k_star: bool,
    /// `ψ(m·x) = m·x*`; false whenever `m·x ∉ K`.
    pub psi_matches: bool,
}

impl PreconditionReport {
    pub fn a(&self) -> bool {
        self.mx_in_k && self.mx_star_in_k_star
    }

    pub fn b(&self) -> bool {
        self.x_avoids_k && self.x_star_avoids_k_star
    }

    pub fn c(&self) -> bool {
        self.psi_matches
    }

    pub fn all(&self) -> bool {
        self.a() && self.b() && self.c()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("m = {0} is below 2")]
    BadModulus(BigInt),
    #[error("extension hypotheses fail: {0:?}")]
    Preconditions(PreconditionReport),
    #[error("element is not in K + ⟨x⟩")]
    OutsideDomain,
}

/// The data of one extension step. `K` is generated by `psi.domain_generators`,
/// `K*` by `k_star`.
pub struct Extension<'a, D: ExactGroup, C: ExactGroup> {
    pub domain: &'a D,
    pub codomain: &'a C,
    pub psi: &'a HomSpec<D::Elem, C::Elem>,
    pub k_star: &'a [C::Elem],
    pub x: D::Elem,
    pub x_star: C::Elem,
    pub m: BigInt,
}

fn avoids(order: &Order, m: &BigInt) -> bool {
    match order {
        Order::Infinite => true,
        Order::Finite(d) => d >= m,
    }
}

impl<D: ExactGroup, C: ExactGroup> Extension<'_, D, C> {
    pub fn check(&self) -> PreconditionReport {
        let k = &self.psi.domain_generators;
        let mx = self.domain.scale(&self.m, &self.x);
        let mx_star = self.codomain.scale(&self.m, &self.x_star);
        let mx_in_k = self.domain.contains(&mx, k);
        let psi_matches = mx_in_k
            && self.psi.evaluate(self.domain, self.codomain, &mx).as_ref() == Some(&mx_star);
        PreconditionReport {
            mx_in_k,
            mx_star_in_k_star: self.codomain.contains(&mx_star, self.k_star),
            x_avoids_k: avoids(&self.domain.order_modulo(&self.x, k), &self.m),
            x_star_avoids_k_star: avoids(
                &self.codomain.order_modulo(&self.x_star, self.k_star),
                &self.m,
            ),
            psi_matches,
        }
    }

    /// The extended map on generators `K ∪ {x}`.
    pub fn extend(&self) -> Result<HomSpec<D::Elem, C::Elem>, ExtensionError> {
        if self.m < BigInt::from(2) {
            return Err(ExtensionError::BadModulus(self.m.clone()));
        }
        let report = self.check();
        if !report.all() {
            return Err(ExtensionError::Preconditions(report));
        }
        let mut phi = self.psi.clone();
        phi.push(self.x.clone(), self.x_star.clone());
        assert!(
            phi.is_well_defined(self.domain, self.codomain),
            "extension is not well defined although the hypotheses hold"
        );
        Ok(phi)
    }

    /// Canonical `(h, k)` with `g = h + k·x`, `h ∈ K` and `0 <= k < m`.
    pub fn decompose(&self, g: &D::Elem) -> Result<(D::Elem, BigInt), ExtensionError> {
        let mut gens = self.psi.domain_generators.clone();
        gens.push(self.x.clone());
        let coeffs = self
            .domain
            .express(g, &gens)
            .ok_or(ExtensionError::OutsideDomain)?;
        let k = coeffs.last().expect("x is a generator").mod_floor(&self.m);
        let h = self.domain.sub(g, &self.domain.scale(&k, &self.x));
        Ok((h, k))
    }

    /// `φ(h + kx) = ψ(h) + k·x*`.
    pub fn apply_formula(&self, g: &D::Elem) -> Result<C::Elem, ExtensionError> {
        let (h, k) = self.decompose(g)?;
        let psi_h = self
            .psi
            .evaluate(self.domain, self.codomain, &h)
            .expect("h lies in K by construction");
        Ok(self
            .codomain
            .add(&psi_h, &self.codomain.scale(&k, &self.x_star)))
    }
}
