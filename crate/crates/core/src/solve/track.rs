//! Predictor-corrector continuation of whole fibres along base paths, with
//! discriminant-crossing classification and collision (ramification)
//! detection.

use super::newton::{newton_polish, solve_linear_equilibrated, NewtonOptions};
use super::{fibre_residual, SolveError};
use crate::cell::{classify_two, jacobian_det, point_distance, CellPoint, Chart, RankOptions};
use crate::combi::Partition;
use crate::poly::UniPoly;
use crate::scalar::C64;
use serde::Serialize;

/// Crossing kinds accumulated along a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LedgerEventKind {
    /// Ramification: two branches collide.
    R,
    /// Discriminant contact on the horizontal-domino stratum.
    H,
    /// Discriminant contact on the vertical-domino stratum.
    V,
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerEvent {
    pub t: f64,
    pub kind: LedgerEventKind,
}

/// Ordered crossing events of one tracked branch.
#[derive(Debug, Clone, Default, Serialize)]
pub struct PathLedger {
    pub events: Vec<LedgerEvent>,
}

impl PathLedger {
    pub fn push(&mut self, t: f64, kind: LedgerEventKind) {
        self.events.push(LedgerEvent { t, kind });
        self.events
            .sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap_or(std::cmp::Ordering::Equal));
    }

    pub fn count(&self, kind: LedgerEventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }
}

/// A path of monic real polynomials given by the motion of their roots.
pub trait BasePath: Sync {
    /// Roots of `g_t` (the monic target is their product of linear factors).
    fn roots_at(&self, t: f64) -> Vec<C64>;

    /// Times in `(0, 1)` where `g_t` acquires a double root, with the root
    /// location at that time.
    fn discriminant_events(&self) -> Vec<(f64, C64)>;

    /// Whether `g_t` has real coefficients for every `t` (enables realness
    /// projection of real branches).
    fn is_real_path(&self) -> bool {
        true
    }

    fn poly_at(&self, t: f64) -> UniPoly<C64> {
        UniPoly::from_roots(&self.roots_at(t))
    }
}

/// A closed loop that moves every root on a small circle-ish real motion:
/// `a_j(t) = base_j * (1 + scale_amp sin(2 pi t)) + shift_amp sin(2 pi t)`.
pub struct LoopPath {
    pub base_roots: Vec<C64>,
    pub shift_amp: f64,
    pub scale_amp: f64,
}

impl BasePath for LoopPath {
    fn roots_at(&self, t: f64) -> Vec<C64> {
        let s = (2.0 * std::f64::consts::PI * t).sin();
        self.base_roots
            .iter()
            .map(|&r| r * C64::new(1.0 + self.scale_amp * s, 0.0) + C64::new(self.shift_amp * s, 0.0))
            .collect()
    }

    fn discriminant_events(&self) -> Vec<(f64, C64)> {
        Vec::new()
    }
}

#[derive(Debug, Clone)]
pub struct TrackOptions {
    pub step0: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub corrector_tol: f64,
    pub max_newton: usize,
    /// Pair-distance shrinkage (relative to the distance at the path
    /// start) that triggers collision handling.
    pub collide_enter: f64,
    /// Shrinkage at which the collision is recorded.
    pub collide_stop: f64,
    /// |det J| dip relative to the running median that triggers collision
    /// handling.
    pub det_dip: f64,
    pub rank: RankOptions,
    /// Realness threshold for endpoint classification.
    pub realness_tol: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            step0: 1e-2,
            min_step: 1e-12,
            max_step: 2.5e-2,
            corrector_tol: 1e-10,
            max_newton: 8,
            collide_enter: 1e-3,
            collide_stop: 1e-6,
            det_dip: 1e-6,
            rank: RankOptions::default(),
            realness_tol: 1e-8,
        }
    }
}

/// Where one branch ended up.
#[derive(Debug, Clone)]
pub struct TrackedBranch {
    pub start: CellPoint<C64>,
    /// Present unless the branch died in a collision.
    pub end: Option<CellPoint<C64>>,
    pub ledger: PathLedger,
    /// Collision time and partner branch index, for branches that died.
    pub collision: Option<(f64, usize)>,
    pub real_end: bool,
}

#[derive(Debug)]
pub struct TrackOutcome {
    pub branches: Vec<TrackedBranch>,
}

struct LiveBranch {
    idx: usize,
    x: CellPoint<C64>,
    is_real: bool,
    det_history: Vec<f64>,
    ledger: PathLedger,
}

/// Continue every starting point of a fibre along the path to `t = 1`.
///
/// Branches that collide (simple ramification) are recorded with an `R`
/// event and retired in pairs; every announced discriminant time adds a
/// classified contact event to every live branch's ledger.
pub fn track_fibre(
    lambda: &Partition,
    starts: &[CellPoint<C64>],
    path: &dyn BasePath,
    opts: &TrackOptions,
) -> Result<TrackOutcome, SolveError> {
    let chart = Chart::new(lambda);
    let real_path = path.is_real_path();
    let mut events: Vec<(f64, C64)> = path.discriminant_events();
    events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut outcome: Vec<TrackedBranch> = starts
        .iter()
        .map(|x| TrackedBranch {
            start: x.clone(),
            end: None,
            ledger: PathLedger::default(),
            collision: None,
            real_end: false,
        })
        .collect();
    let mut live: Vec<LiveBranch> = starts
        .iter()
        .enumerate()
        .map(|(idx, x)| LiveBranch {
            idx,
            x: x.clone(),
            is_real: real_path && x.coords.iter().all(|c| c.im.abs() <= opts.realness_tol * x.scale()),
            det_history: vec![jacobian_det(x).norm()],
            ledger: PathLedger::default(),
        })
        .collect();

    // Initial pair separations, keyed by outcome indices and normalized by
    // the pair scale (paths that contract every coordinate must not look
    // like collisions); triggers are relative to these.
    let mut d0: std::collections::HashMap<(usize, usize), f64> = std::collections::HashMap::new();
    for i in 0..live.len() {
        for j in i + 1..live.len() {
            let d = normalized_distance(&live[i].x, &live[j].x);
            d0.insert((live[i].idx, live[j].idx), d.max(1e-300));
        }
    }

    let mut t = 0.0f64;
    let mut step = opts.step0;
    let mut streak = 0usize;
    let mut next_event = 0usize;

    while t < 1.0 {
        // Never step across an announced discriminant time.
        let mut target = (t + step).min(1.0);
        let mut at_event = None;
        if next_event < events.len() {
            let te = events[next_event].0;
            if te > t && te <= target + 1e-15 {
                target = te;
                at_event = Some(next_event);
            }
        }
        match advance_all(&chart, &mut live, path, t, target, opts) {
            Ok(()) => {
                t = target;
                streak += 1;
                if streak >= 4 {
                    step = (step * 2.0).min(opts.max_step);
                    streak = 0;
                }
                if let Some(e) = at_event {
                    let (te, root) = events[e];
                    let a = -root;
                    let g_event = path.poly_at(te);
                    for b in &mut live {
                        // Classification wants full accuracy, not just the
                        // corrector tolerance.
                        if let Ok(mut polished) =
                            newton_polish(&b.x, &g_event, &NewtonOptions::default())
                        {
                            if b.is_real {
                                for c in &mut polished.coords {
                                    c.im = 0.0;
                                }
                            }
                            b.x = polished;
                        }
                        let kind = classify_two(&b.x, &a, &opts.rank)?;
                        b.ledger.push(
                            te,
                            match kind {
                                crate::cell::DominoKind::H => LedgerEventKind::H,
                                crate::cell::DominoKind::V => LedgerEventKind::V,
                            },
                        );
                    }
                    next_event += 1;
                }
                // Collision scan among live branches: relative shrinkage of
                // a pair distance, or a |det J| dip below the running
                // median (both signatures of an approaching fold).
                if let Some((i, j, shrink)) = most_shrunk_pair(&live, &d0) {
                    let det_trigger = {
                        let b = &live[i];
                        let median = median(&b.det_history);
                        b.det_history.last().copied().unwrap_or(median) < opts.det_dip * median
                    };
                    if shrink < opts.collide_enter || (det_trigger && shrink < 0.2) {
                        resolve_collision(
                            &chart, &mut live, &mut outcome, path, &mut t, i, j, &d0, opts,
                        )?;
                        step = opts.step0.min(step);
                        streak = 0;
                    }
                }
            }
            Err(_) if step > opts.min_step => {
                step = (step / 2.0).max(opts.min_step);
                streak = 0;
                // A persistent failure right above min_step with two close
                // branches is a collision that the scan has not caught yet.
                if step <= 16.0 * opts.min_step {
                    if let Some((i, j, shrink)) = most_shrunk_pair(&live, &d0) {
                        if shrink < 0.2 {
                            resolve_collision(
                                &chart, &mut live, &mut outcome, path, &mut t, i, j, &d0, opts,
                            )?;
                            step = opts.step0;
                            continue;
                        }
                    }
                    return Err(SolveError::StepUnderflow { t });
                }
            }
            Err(e) => return Err(e),
        }
    }

    // Finalize survivors.
    let g1 = path.poly_at(1.0);
    for b in live {
        let polished = newton_polish(&b.x, &g1, &NewtonOptions::default()).unwrap_or(b.x);
        let scale = polished.scale();
        let real = polished
            .coords
            .iter()
            .all(|c| c.im.abs() <= opts.realness_tol * scale);
        let mut end = polished;
        if real && real_path {
            for c in &mut end.coords {
                c.im = 0.0;
            }
        }
        outcome[b.idx].end = Some(end);
        outcome[b.idx].ledger = b.ledger;
        outcome[b.idx].real_end = real;
    }
    Ok(TrackOutcome { branches: outcome })
}

/// One predictor-corrector move of every live branch from `t` to `target`.
fn advance_all(
    chart: &Chart,
    live: &mut [LiveBranch],
    path: &dyn BasePath,
    t: f64,
    target: f64,
    opts: &TrackOptions,
) -> Result<(), SolveError> {
    let g_now = path.poly_at(t);
    let g_next = path.poly_at(target);
    let n = chart.n;
    let mut moved: Vec<(CellPoint<C64>, f64)> = Vec::with_capacity(live.len());
    for b in live.iter() {
        // Euler predictor on the implicit system: J dx = dG.
        let jac = chart.jacobian_matrix(&b.x);
        let rhs: Vec<C64> = (0..n).map(|l| g_next.coeff(l) - g_now.coeff(l)).collect();
        let mut x = b.x.clone();
        if let Some(dx) = solve_linear_equilibrated(jac, rhs, 1e-14) {
            for (c, d) in x.coords.iter_mut().zip(&dx) {
                *c += *d;
            }
        }
        // Newton corrector against the target polynomial.
        let corrected = newton_polish(
            &x,
            &g_next,
            &NewtonOptions {
                tol: opts.corrector_tol,
                max_iters: opts.max_newton,
                singular_tol: 1e-14,
            },
        )
        .map_err(|_| SolveError::Numerical("corrector failed".into()))?;
        let mut xc = corrected;
        if b.is_real {
            // A real branch of a real path stays real until a collision;
            // drift beyond the projection budget aborts the step.
            let scale = xc.scale();
            for c in &mut xc.coords {
                if c.im.abs() > 1e-5 * scale {
                    return Err(SolveError::Numerical("real branch drifted".into()));
                }
                c.im = 0.0;
            }
            let res = fibre_residual(&xc, &g_next);
            if res > 10.0 * opts.corrector_tol {
                return Err(SolveError::Numerical("projection broke the residual".into()));
            }
        }
        let det = jacobian_det(&xc).norm();
        moved.push((xc, det));
    }
    // Accept: branches must remain separated enough to be distinguishable.
    for (b, (x, det)) in live.iter_mut().zip(moved) {
        b.x = x;
        b.det_history.push(det);
    }
    Ok(())
}

/// The live pair whose distance has shrunk the most relative to its
/// starting separation; returns `(i, j, d / d0)`.
fn normalized_distance(a: &CellPoint<C64>, b: &CellPoint<C64>) -> f64 {
    point_distance(a, b) / a.scale().max(b.scale())
}

fn most_shrunk_pair(
    live: &[LiveBranch],
    d0: &std::collections::HashMap<(usize, usize), f64>,
) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..live.len() {
        for j in i + 1..live.len() {
            let d = normalized_distance(&live[i].x, &live[j].x);
            let key = (live[i].idx.min(live[j].idx), live[i].idx.max(live[j].idx));
            let base = d0.get(&key).copied().unwrap_or(1.0);
            let shrink = d / base;
            if best.is_none_or(|(_, _, bs)| shrink < bs) {
                best = Some((i, j, shrink));
            }
        }
    }
    best
}

fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 1.0;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    v[v.len() / 2].max(1e-300)
}

/// Approach the fold where branches `i` and `j` meet, record the
/// ramification event on both ledgers, and retire the pair.
#[allow(clippy::too_many_arguments)]
fn resolve_collision(
    chart: &Chart,
    live: &mut Vec<LiveBranch>,
    outcome: &mut [TrackedBranch],
    path: &dyn BasePath,
    t: &mut f64,
    i: usize,
    j: usize,
    d0: &std::collections::HashMap<(usize, usize), f64>,
    opts: &TrackOptions,
) -> Result<(), SolveError> {
    // Refine toward the fold: distance behaves like K sqrt(t* - t).
    let mut t_now = *t;
    let mut d_now = normalized_distance(&live[i].x, &live[j].x);
    let key = (live[i].idx.min(live[j].idx), live[i].idx.max(live[j].idx));
    let base = d0.get(&key).copied().unwrap_or(1.0);
    let stop = (opts.collide_stop * base).max(1e-14);
    let mut t_star = t_now + d_now * d_now; // crude initial guess
    for _ in 0..60 {
        if d_now <= stop {
            break;
        }
        // Fit t* from two samples ahead.
        let probe = (t_now + 0.25 * (t_star - t_now).max(1e-14)).min(1.0);
        if probe <= t_now || probe >= 1.0 {
            break;
        }
        match advance_pair(chart, live, path, t_now, probe, i, j, opts) {
            Ok((d_probe, _)) => {
                // d^2 is close to linear in t near a simple fold.
                let denom = d_now * d_now - d_probe * d_probe;
                t_star = if denom > 0.0 {
                    let slope = denom / (probe - t_now);
                    (probe + d_probe * d_probe / slope).min(1.0)
                } else {
                    (probe + 2.0 * (probe - t_now)).min(1.0)
                };
                t_now = probe;
                d_now = d_probe;
            }
            Err(_) => {
                // The corrector already cannot separate the pair.
                break;
            }
        }
    }
    let t_fold = t_star.clamp(t_now, 1.0);

    // Partner sanity: the two branches must be much closer to each other
    // than to anyone else.
    let third = live
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, b)| {
            normalized_distance(&b.x, &live[i].x).min(normalized_distance(&b.x, &live[j].x))
        })
        .fold(f64::INFINITY, f64::min);
    if third < 4.0 * d_now {
        return Err(SolveError::PairingAmbiguous { t: t_fold });
    }

    for &k in &[i, j] {
        live[k].ledger.push(t_fold, LedgerEventKind::R);
    }
    let (bi, bj) = (live[i].idx, live[j].idx);
    outcome[bi].collision = Some((t_fold, bj));
    outcome[bj].collision = Some((t_fold, bi));
    outcome[bi].ledger = live[i].ledger.clone();
    outcome[bj].ledger = live[j].ledger.clone();
    let mut remove = [i, j];
    remove.sort_unstable();
    live.remove(remove[1]);
    live.remove(remove[0]);
    *t = t_now;
    Ok(())
}

/// Advance only branches `i` and `j` to `target`, returning their distance
/// and the worse of the two residuals. Used inside collision refinement.
#[allow(clippy::too_many_arguments)]
fn advance_pair(
    chart: &Chart,
    live: &mut [LiveBranch],
    path: &dyn BasePath,
    t: f64,
    target: f64,
    i: usize,
    j: usize,
    opts: &TrackOptions,
) -> Result<(f64, f64), SolveError> {
    let g_now = path.poly_at(t);
    let g_next = path.poly_at(target);
    let n = chart.n;
    let mut new_points = Vec::with_capacity(2);
    for &k in &[i, j] {
        let b = &live[k];
        let jac = chart.jacobian_matrix(&b.x);
        let rhs: Vec<C64> = (0..n).map(|l| g_next.coeff(l) - g_now.coeff(l)).collect();
        let mut x = b.x.clone();
        if let Some(dx) = solve_linear_equilibrated(jac, rhs, 1e-14) {
            for (c, d) in x.coords.iter_mut().zip(&dx) {
                *c += *d;
            }
        }
        let corrected = newton_polish(
            &x,
            &g_next,
            &NewtonOptions {
                tol: opts.corrector_tol,
                max_iters: opts.max_newton,
                singular_tol: 1e-14,
            },
        )
        .map_err(|_| SolveError::Numerical("pair corrector failed".into()))?;
        new_points.push(corrected);
    }
    // Reject if the corrector merged the pair onto one sheet.
    let d = normalized_distance(&new_points[0], &new_points[1]);
    if d < 1e-14 * new_points[0].scale().max(1.0) {
        return Err(SolveError::Numerical("pair merged".into()));
    }
    let r0 = fibre_residual(&new_points[0], &g_next);
    let r1 = fibre_residual(&new_points[1], &g_next);
    live[i].x = new_points.remove(0);
    live[j].x = new_points.remove(0);
    Ok((d, r0.max(r1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RootConfig;
    use crate::scalar::{rat, Rat};
    use crate::solve::solve_hook;

    #[test]
    fn constant_loop_returns_the_fibre() {
        // Track the hook fibre of (z+1/8)(z+1/4)(z+1/2) around a closed
        // real loop with no discriminant crossing.
        let h13: UniPoly<Rat> = UniPoly::from_roots(&[rat(-1, 8), rat(-1, 4), rat(-1, 2)]);
        let report = solve_hook(3, &h13.to_c64(), &RootConfig::default()).unwrap();
        let starts: Vec<CellPoint<C64>> =
            report.solutions.iter().map(|s| s.point.clone()).collect();
        let path = LoopPath {
            base_roots: vec![
                C64::new(-0.125, 0.0),
                C64::new(-0.25, 0.0),
                C64::new(-0.5, 0.0),
            ],
            shift_amp: 0.05,
            scale_amp: 0.1,
        };
        let lambda = Partition::new(vec![2, 1]);
        let out = track_fibre(&lambda, &starts, &path, &TrackOptions::default()).unwrap();
        for (branch, start) in out.branches.iter().zip(&starts) {
            let end = branch.end.as_ref().expect("no collisions on this loop");
            assert!(point_distance(end, start) < 1e-8);
            assert!(branch.ledger.events.is_empty());
            assert!(branch.real_end);
        }
    }
}
