//! Injective homomorphisms from finitely generated abelian groups into tori
//! `T^k`, built one box at a time so that a chosen subset lands in every box
//! of a plan. Torus values are exact: rationals plus rational multiples of
//! square roots of primes.
//!
//! The pieces, bottom up: [`lattice`] and [`group`] for integer linear algebra
//! and group arithmetic, [`real`] and [`torus`] for exact circle values and
//! arcs, [`solver`] for choosing points that avoid a subgroup, [`extension`]
//! for extending a homomorphism by one generator, [`densify`] for the staged
//! construction, [`certify`] for wideness and covering checks, and
//! [`config`], [`report`] and [`pipeline`] for job files and reports.

#![allow(clippy::single_range_in_vec_init)]

pub mod certify;
pub mod config;
pub mod densify;
pub mod extension;
pub mod group;
pub mod lattice;
pub mod pipeline;
pub mod real;
pub mod report;
pub mod solver;
pub mod torus;
