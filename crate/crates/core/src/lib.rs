//! Fibres of the Wronski map over Schubert cells.
//!
//! The crate computes `Wr^{-1}(g)` for spaces of polynomials with prescribed
//! degrees, labels the solutions over special target polynomials by
//! weakly increasing tableaux, transports orientation signs along
//! root-coalescence paths, and verifies the resulting degree and bound
//! identities (real solution counts against symmetric group characters) at
//! desk scale.
//!
//! Modules:
//! - [`combi`]: partitions, compositions, tableaux, border strips, the swap
//!   graph on standard tableaux.
//! - [`chars`]: character values by the Murnaghan–Nakayama recursion with a
//!   Frobenius-formula oracle.
//! - [`poly`]: univariate polynomials over exact rationals or complex
//!   doubles; Wronskians, discriminants, root finding, Sturm counts.
//! - [`cell`]: the Schubert cell in affine and Pluecker coordinates, the
//!   Wronski map two ways, its Jacobian, and vanishing-order tests.
//! - [`solve`]: fibre solvers (hook shapes, slice closed forms, exact
//!   elimination) and a predictor-corrector path tracker with crossing
//!   detection.
//! - [`degen`]: special target fibres, tableau labelling by valuation
//!   estimation, coalescence paths, and the crossing-sign ledger pipeline.
//! - [`verify`]: the runnable verification suites behind the CLI.

pub mod cell;
pub mod chars;
pub mod combi;
pub mod degen;
pub mod mpoly;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod solve;
pub mod verify;

pub use combi::{Composition, Partition};
pub use poly::UniPoly;
pub use scalar::{C64, Rat};
