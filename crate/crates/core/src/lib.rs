//! Exact root-system verification of the bracket-generating (Chow) condition
//! for the Hodge-type, non-Hermitian simple groups, plus a finite-difference
//! integrator for the horizontal harmonic map heat flow into model
//! Riemannian submersions.
//!
//! The crate is split into three layers:
//!
//! - [`roots`]: integer root systems, compact/noncompact splittings and the
//!   witness search showing every compact root is a sum of two noncompact ones.
//! - [`geometry`]: model submersions (coordinate charts or structure constants),
//!   projections, the O'Neill A-tensor and horizontal curvature.
//! - [`flow`]: discrete maps from flat circles/tori, tension, the explicit
//!   Euler stepper and the diagnostics that monitor the flow invariants.
//!
//! Data-parallel loops go through [`Exec`]; with the `parallel` feature off
//! every path runs sequentially and produces identical results.

pub mod checks;
pub mod error;
pub mod exec;
pub mod flow;
pub mod geometry;
pub mod roots;

pub use error::{Error, Result};
pub use exec::Exec;
