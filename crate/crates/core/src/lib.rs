//! Refined DT invariants of quivers via the flow tree formula.
//!
//! The crate computes the universal coefficients `F` of the attractor
//! reconstruction as signed sums over binary trees decorated by a discrete
//! attractor flow, assembles rational DT invariants from attractor data,
//! and cross-checks everything against an independent rank-2 scattering
//! diagram reconstruction.

pub mod algebra;
pub mod cli;
pub mod dt;
pub mod flow;
pub mod lattice;
pub mod scattering;
pub mod trees;
