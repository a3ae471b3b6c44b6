//! Fibre solvers for the Wronski map: hook shapes by critical points, slice
//! closed forms, exact elimination at desk scale, Newton polishing, and a
//! predictor-corrector tracker with crossing detection.

mod exact;
mod groebner;
mod hook;
mod newton;
mod slices;
mod track;

pub use exact::{exact_solve, ExactOptions};
pub use groebner::{buchberger, reduce};
pub use hook::{ambient_sign_hook, solve_hook};
pub use newton::{newton_polish, NewtonOptions};
pub use slices::{solve_slice1, solve_slice2, RootPair, Slice2};
pub use track::{
    track_fibre, BasePath, LedgerEvent, LedgerEventKind, LoopPath, PathLedger, TrackOptions,
    TrackOutcome, TrackedBranch,
};

use crate::cell::{CellError, CellPoint};
use crate::combi::{Partition, Tableau};
use crate::poly::{RootError, UniPoly};
use crate::scalar::C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("shape size {n} exceeds the exact-solve guard (5, or 6 with the flag)")]
    SizeGuard { n: usize },
    #[error("degree of g ({deg}) does not match |lambda| = {n}")]
    DegreeMismatch { deg: usize, n: usize },
    #[error("lex basis not in shape position after {tries} translations")]
    NonShapePosition { tries: usize },
    #[error("root finding failed: {0}")]
    Roots(#[from] RootError),
    #[error("cell operation failed: {0}")]
    Cell(#[from] CellError),
    #[error("newton iteration diverged (residual {residual:.3e})")]
    NewtonDiverged { residual: f64 },
    #[error("jacobian singular at the requested point")]
    SingularJacobian,
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("branch pairing ambiguous at collision (t = {t})")]
    PairingAmbiguous { t: f64 },
    #[error("{0}")]
    Numerical(String),
}

/// One point of a fibre.
#[derive(Debug, Clone)]
pub struct Solution {
    pub point: CellPoint<C64>,
    pub multiplicity: usize,
    pub real: bool,
    /// Relative residual of `Wr(point) - g`.
    pub residual: f64,
    pub tableau: Option<Tableau>,
    /// Ambient-orientation sign.
    pub asgn: Option<i64>,
    /// Character-orientation sign.
    pub sgn: Option<i64>,
    /// Dual character-orientation sign.
    pub sgn_dual: Option<i64>,
}

impl Solution {
    pub fn bare(point: CellPoint<C64>, multiplicity: usize, real: bool, residual: f64) -> Self {
        Solution {
            point,
            multiplicity,
            real,
            residual,
            tableau: None,
            asgn: None,
            sgn: None,
            sgn_dual: None,
        }
    }
}

/// All solutions of `Wr^{-1}(g)` for one shape.
#[derive(Debug, Clone)]
pub struct FibreReport {
    pub lambda: Partition,
    /// The target polynomial (complex view; exact inputs keep their own copy
    /// at the call site).
    pub g: UniPoly<C64>,
    pub solutions: Vec<Solution>,
    /// True when the real count is certified by exact elimination.
    pub certified: bool,
    /// Whether the fibre is reduced (known only in exact mode).
    pub reduced: Option<bool>,
}

impl FibreReport {
    /// Total number of complex solutions counted with multiplicity.
    pub fn complex_count(&self) -> usize {
        self.solutions.iter().map(|s| s.multiplicity).sum()
    }

    /// Real solutions counted with algebraic multiplicity.
    pub fn real_count_with_multiplicity(&self) -> usize {
        self.solutions
            .iter()
            .filter(|s| s.real)
            .map(|s| s.multiplicity)
            .sum()
    }

    /// Deterministic order: coordinates compared componentwise.
    pub fn sort_canonical(&mut self) {
        self.solutions.sort_by(|a, b| {
            let ka: Vec<(f64, f64)> = a.point.coords.iter().map(|c| (c.re, c.im)).collect();
            let kb: Vec<(f64, f64)> = b.point.coords.iter().map(|c| (c.re, c.im)).collect();
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        });
    }
}

/// Ambient-orientation sign of a real regular point: `calibration *
/// sign(det J)`. The calibration constant is fixed once per shape so the
/// row-reading solution over the all-real ladder target gets `+1`.
pub fn ambient_sign(x: &CellPoint<C64>, calibration: i64) -> Result<i64, SolveError> {
    let dj = crate::cell::jacobian_det(x);
    if dj.norm() < 1e-12 {
        return Err(SolveError::SingularJacobian);
    }
    Ok(calibration * if dj.re >= 0.0 { 1 } else { -1 })
}

/// Relative residual of a candidate solution against the target.
pub fn fibre_residual(x: &CellPoint<C64>, g: &UniPoly<C64>) -> f64 {
    let w = crate::cell::wronski_affine(x);
    let scale = g.max_mag().max(1.0);
    let mut worst = 0.0f64;
    for k in 0..=g.degree().unwrap_or(0) {
        worst = worst.max((w.coeff(k) - g.coeff(k)).norm());
    }
    worst / scale
}
