//! Quantum and classical harmonic oscillator on the sphere and the
//! hyperbolic plane, written in terms of a single deformation parameter
//! `lambda` (minus the curvature).
//!
//! The crate builds the deformed Hermite polynomials exactly, assembles the
//! bound-state spectrum and wavefunctions, and checks them against several
//! independent oracles: quadrature, finite differences, a grid eigensolver
//! and the classical equations of motion.

pub mod classical;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod polyengine;
pub mod quadrature;
pub mod scalar;
pub mod spectrum;
pub mod validation;

pub use error::{Error, Result};
pub use geometry::DeformParam;
pub use spectrum::{EigenState, QuantumNumbers};
