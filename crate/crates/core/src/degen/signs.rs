//! The crossing-sign ledger pipeline: orientation signs of the real fibre
//! points over the special targets, transported from the all-real target
//! through swap paths and coalescence steps, with every crossing verified
//! against its ledger.

use super::label::{choose_epsilon, label_fibre, LabelError};
use super::paths::{merge_sequence, CoalescencePath, MergeOrder, MergeStep};
use crate::cell::{point_distance, CellPoint};
use crate::combi::{
    cell_distance, swap_entries, swap_graph, Composition, Partition, Tableau, TreeEdge,
};
use crate::scalar::{C64, Rat};
use crate::solve::{
    track_fibre, LedgerEventKind, PathLedger, SolveError, TrackOptions, TrackedBranch,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SignError {
    #[error("{0}")]
    Label(#[from] LabelError),
    #[error("{0}")]
    Solve(#[from] SolveError),
    #[error("ledger anomaly: {0}")]
    LedgerAnomaly(String),
    #[error("pipeline mismatch: {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone)]
pub struct SignOptions {
    pub allow_n6: bool,
    /// `None` takes the canonical breadth-first spanning tree of the swap
    /// graph; a seed shuffles the traversal.
    pub tree_seed: Option<u64>,
    pub merge_order: MergeOrder,
    /// Fixed ladder parameter; `None` chooses the largest admissible one.
    pub eps: Option<Rat>,
    pub track: TrackOptions,
}

impl Default for SignOptions {
    fn default() -> Self {
        SignOptions {
            allow_n6: false,
            tree_seed: None,
            merge_order: MergeOrder::LastToFirst,
            eps: None,
            track: TrackOptions::default(),
        }
    }
}

/// One verified swap-path edge: the combined ledger over both legs shows
/// exactly one ramification event and one contact of each stratum kind.
#[derive(Debug, Clone)]
pub struct SwapEdgeRecord {
    pub from: Tableau,
    pub to: Tableau,
    pub entry: usize,
    pub ledger: PathLedger,
    /// Contact kind on the from-leg and on the to-leg (recorded, not
    /// asserted to a fixed orientation).
    pub leg_kinds: (LedgerEventKind, LedgerEventKind),
}

/// One coalescence step: ledgers of the surviving real branches.
#[derive(Debug, Clone)]
pub struct MergeRecord {
    pub step: MergeStep,
    /// `(label before, label after, ledger)` per surviving branch.
    pub survivors: Vec<(Tableau, Tableau, PathLedger)>,
    /// Labels of branch pairs that went non-real at a fold.
    pub retired_pairs: Vec<(Tableau, Tableau)>,
}

/// Output of the sign pipeline over one `(lambda, mu)`.
#[derive(Debug)]
pub struct SignPipeline {
    pub lambda: Partition,
    pub mu: Composition,
    pub eps: Rat,
    /// `(tableau, sign, dual sign)` for every real solution label.
    pub per_tableau: Vec<(Tableau, i64, i64)>,
    /// Accumulated crossing ledger per label, events timed as
    /// `step index + t` across the coalescence steps.
    pub per_tableau_ledgers: Vec<(Tableau, PathLedger)>,
    pub sum: i64,
    pub dual_sum: i64,
    pub swap_edges: Vec<SwapEdgeRecord>,
    pub merges: Vec<MergeRecord>,
}

impl SignPipeline {
    pub fn sign_of(&self, t: &Tableau) -> Option<i64> {
        self.per_tableau
            .iter()
            .find(|(s, _, _)| s == t)
            .map(|(_, sgn, _)| *sgn)
    }
}

/// Transport character signs from the all-real target to `h_mu`.
///
/// Starting from the fibre over `h_{1^n}` with the row-reading solution at
/// `+1`, signs propagate over all standard labels through swap paths (each
/// contributes `(-1)^{c_R + c_V} = +1`, verified on its ledger), then each
/// coalescence step multiplies the surviving branches by `(-1)^{c_V}` of
/// their ledgers. Dual signs count `c_H` instead.
pub fn character_signs(
    lambda: &Partition,
    mu: &Composition,
    opts: &SignOptions,
) -> Result<SignPipeline, SignError> {
    let n = lambda.size();
    assert_eq!(n, mu.size(), "content size must match the shape");
    assert!(mu.is_restricted(), "parts must lie in {{1,2}}");
    let ones = Composition::ones(n);

    // One ladder parameter for the whole pipeline.
    let (eps, base) = match &opts.eps {
        Some(e) => (e.clone(), label_fibre(lambda, &ones, e, opts.allow_n6)?),
        None => {
            let (e1, base) = choose_epsilon(lambda, &ones, opts.allow_n6)?;
            let (e2, _) = choose_epsilon(lambda, mu, opts.allow_n6)?;
            if e2 < e1 {
                (e2.clone(), label_fibre(lambda, &ones, &e2, opts.allow_n6)?)
            } else {
                (e1, base)
            }
        }
    };
    if base.report.real_count_with_multiplicity() != base.report.solutions.len() {
        return Err(SignError::Mismatch(
            "the all-real target must have an all-real fibre".into(),
        ));
    }

    // Standard labels and points in graph vertex order.
    let graph = swap_graph(lambda);
    let mut points: Vec<CellPoint<C64>> = Vec::with_capacity(graph.tableaux.len());
    for t in &graph.tableaux {
        let idx = base.solution_of(t).ok_or_else(|| {
            SignError::Mismatch(format!("standard label {:?} missing over h_1n", t.rows()))
        })?;
        points.push(base.report.solutions[idx].point.clone());
    }

    // Swap propagation over a spanning tree.
    let tree: Vec<TreeEdge> = match opts.tree_seed {
        None => graph.spanning_tree(),
        Some(seed) => graph.spanning_tree_seeded(seed),
    };
    let mut needed_entries: Vec<usize> = tree.iter().map(|e| e.entry).collect();
    needed_entries.sort_unstable();
    needed_entries.dedup();

    let mut swap_edges = Vec::new();
    let mut edge_sign: std::collections::HashMap<(usize, usize), (i64, i64)> =
        std::collections::HashMap::new();
    for &b in &needed_entries {
        let path = CoalescencePath::new(&ones, b, &eps)
            .expect("1^n always admits a merge at (b, b+1)");
        let tracked = track_fibre(lambda, &points, &path, &opts.track)?;
        for (i, branch) in tracked.branches.iter().enumerate() {
            let Some((t_fold, j)) = branch.collision else {
                continue;
            };
            if j < i {
                continue; // each pair once
            }
            let t_i = &graph.tableaux[i];
            let t_j = &graph.tableaux[j];
            let expected = swap_entries(t_i, b).ok_or_else(|| {
                SignError::LedgerAnomaly(format!(
                    "colliding branch {:?} has adjacent entries {b},{}",
                    t_i.rows(),
                    b + 1
                ))
            })?;
            if &expected != t_j {
                return Err(SignError::LedgerAnomaly(format!(
                    "collision partners {:?} and {:?} are not a {b}-swap pair",
                    t_i.rows(),
                    t_j.rows()
                )));
            }
            let ki = single_contact(branch, "swap leg")?;
            let kj = single_contact(&tracked.branches[j], "swap leg")?;
            if ki == kj {
                return Err(SignError::LedgerAnomaly(format!(
                    "both swap legs crossed the same stratum {ki:?}"
                )));
            }
            // Combined swap-path ledger: leg one forward, fold, leg two
            // mirrored back.
            let mut ledger = PathLedger::default();
            ledger.push(0.5, ki);
            ledger.push(t_fold, LedgerEventKind::R);
            ledger.push(2.0 * t_fold - 0.5, kj);
            let c_r = ledger.count(LedgerEventKind::R) as u32;
            let c_v = ledger.count(LedgerEventKind::V) as u32;
            let c_h = ledger.count(LedgerEventKind::H) as u32;
            edge_sign.insert(
                (i, j),
                ((-1i64).pow(c_r + c_v), (-1i64).pow(c_r + c_h)),
            );
            swap_edges.push(SwapEdgeRecord {
                from: t_i.clone(),
                to: t_j.clone(),
                entry: b,
                ledger,
                leg_kinds: (ki, kj),
            });
        }
    }

    // Walk the tree from the root at +1.
    let mut sgn = vec![0i64; graph.tableaux.len()];
    let mut dual = vec![0i64; graph.tableaux.len()];
    sgn[graph.root] = 1;
    dual[graph.root] = 1;
    for edge in &tree {
        let key = (
            edge.parent.min(edge.child),
            edge.parent.max(edge.child),
        );
        let (ds, dd) = edge_sign.get(&key).copied().ok_or_else(|| {
            SignError::LedgerAnomaly(format!(
                "tree edge {:?} -> {:?} produced no collision",
                graph.tableaux[edge.parent].rows(),
                graph.tableaux[edge.child].rows()
            ))
        })?;
        sgn[edge.child] = sgn[edge.parent] * ds;
        dual[edge.child] = dual[edge.parent] * dd;
    }

    // Coalescence steps.
    #[derive(Clone)]
    struct State {
        label: Tableau,
        point: CellPoint<C64>,
        sgn: i64,
        dual: i64,
        ledger: PathLedger,
    }
    let mut state: Vec<State> = graph
        .tableaux
        .iter()
        .enumerate()
        .map(|(k, t)| State {
            label: t.clone(),
            point: points[k].clone(),
            sgn: sgn[k],
            dual: dual[k],
            ledger: PathLedger::default(),
        })
        .collect();

    let steps = merge_sequence(mu, opts.merge_order);
    let mut merges = Vec::new();
    for (step_idx, step) in steps.into_iter().enumerate() {
        let path = CoalescencePath::new(&step.before, step.q, &eps).ok_or_else(|| {
            SignError::Mismatch(format!("invalid merge at {} of {}", step.q, step.before))
        })?;
        let starts: Vec<CellPoint<C64>> = state.iter().map(|s| s.point.clone()).collect();
        let tracked = track_fibre(lambda, &starts, &path, &opts.track)?;
        let mut survivors = Vec::new();
        let mut retired = Vec::new();
        let mut next_state = Vec::new();
        for (i, branch) in tracked.branches.iter().enumerate() {
            match (&branch.end, branch.collision) {
                (Some(end), None) => {
                    if !branch.real_end {
                        return Err(SignError::LedgerAnomaly(
                            "surviving branch ended non-real without a fold".into(),
                        ));
                    }
                    if branch.ledger.count(LedgerEventKind::R) != 0 {
                        return Err(SignError::LedgerAnomaly(
                            "ramification event on a surviving branch".into(),
                        ));
                    }
                    let kind = single_contact(branch, "coalescence")?;
                    // The merged entries must form the matching domino.
                    let cells_q = state[i].label.level_cells(step.q);
                    let cells_q1 = state[i].label.level_cells(step.q + 1);
                    if cells_q.len() != 1 || cells_q1.len() != 1 {
                        return Err(SignError::LedgerAnomaly(
                            "merged entries are not single cells".into(),
                        ));
                    }
                    if cell_distance(cells_q[0], cells_q1[0]) != 1 {
                        return Err(SignError::LedgerAnomaly(format!(
                            "surviving branch {:?} merged non-adjacent entries",
                            state[i].label.rows()
                        )));
                    }
                    let vertical = cells_q[0].1 == cells_q1[0].1;
                    let expected = if vertical {
                        LedgerEventKind::V
                    } else {
                        LedgerEventKind::H
                    };
                    if kind != expected {
                        return Err(SignError::LedgerAnomaly(format!(
                            "contact kind {kind:?} does not match the {:?} domino of {:?}",
                            expected,
                            state[i].label.rows()
                        )));
                    }
                    let after = state[i].label.merge_levels(step.q);
                    let flip = if kind == LedgerEventKind::V { -1 } else { 1 };
                    let flip_dual = if kind == LedgerEventKind::H { -1 } else { 1 };
                    survivors.push((state[i].label.clone(), after.clone(), branch.ledger.clone()));
                    let mut cumulative = state[i].ledger.clone();
                    for e in &branch.ledger.events {
                        cumulative.push(step_idx as f64 + e.t, e.kind);
                    }
                    next_state.push(State {
                        label: after,
                        point: end.clone(),
                        sgn: state[i].sgn * flip,
                        dual: state[i].dual * flip_dual,
                        ledger: cumulative,
                    });
                }
                (None, Some((_, j))) => {
                    if j > i {
                        let ti = &state[i].label;
                        let tj = &state[j].label;
                        let swapped = swap_entries(ti, step.q);
                        if swapped.as_ref() != Some(tj) {
                            return Err(SignError::LedgerAnomaly(format!(
                                "retiring pair {:?}, {:?} is not a swap pair at {}",
                                ti.rows(),
                                tj.rows(),
                                step.q
                            )));
                        }
                        retired.push((ti.clone(), tj.clone()));
                    }
                }
                _ => {
                    return Err(SignError::Mismatch(
                        "branch neither survived nor collided cleanly".into(),
                    ))
                }
            }
        }
        merges.push(MergeRecord {
            step,
            survivors,
            retired_pairs: retired,
        });
        state = next_state;
    }

    // Cross-check the final labels against the independent labelling.
    let final_labels = label_fibre(lambda, mu, &eps, opts.allow_n6)?;
    if state.len() != final_labels.report.real_count_with_multiplicity() {
        return Err(SignError::Mismatch(format!(
            "pipeline kept {} branches but the labelled fibre has {} real points",
            state.len(),
            final_labels.report.real_count_with_multiplicity()
        )));
    }
    for s in &state {
        let idx = final_labels.solution_of(&s.label).ok_or_else(|| {
            SignError::Mismatch(format!(
                "pipeline label {:?} is not a label of the final fibre",
                s.label.rows()
            ))
        })?;
        let dist = point_distance(&s.point, &final_labels.report.solutions[idx].point);
        if dist > 1e-5 * (1.0 + s.point.scale()) {
            return Err(SignError::Mismatch(format!(
                "pipeline endpoint is {dist:.2e} away from the labelled solution {:?}",
                s.label.rows()
            )));
        }
    }

    let mut per_tableau: Vec<(Tableau, i64, i64)> = state
        .iter()
        .map(|s| (s.label.clone(), s.sgn, s.dual))
        .collect();
    per_tableau.sort_by_cached_key(|(t, _, _)| t.reading_word());
    let mut per_tableau_ledgers: Vec<(Tableau, PathLedger)> = state
        .iter()
        .map(|s| (s.label.clone(), s.ledger.clone()))
        .collect();
    per_tableau_ledgers.sort_by_cached_key(|(t, _)| t.reading_word());
    let sum = per_tableau.iter().map(|(_, s, _)| s).sum();
    let dual_sum = per_tableau.iter().map(|(_, _, d)| d).sum();
    Ok(SignPipeline {
        lambda: lambda.clone(),
        mu: mu.clone(),
        eps,
        per_tableau,
        per_tableau_ledgers,
        sum,
        dual_sum,
        swap_edges,
        merges,
    })
}

/// The single stratum-contact event of a ledger (exactly one expected).
fn single_contact(branch: &TrackedBranch, what: &str) -> Result<LedgerEventKind, SignError> {
    let contacts: Vec<LedgerEventKind> = branch
        .ledger
        .events
        .iter()
        .filter(|e| e.kind != LedgerEventKind::R)
        .map(|e| e.kind)
        .collect();
    match contacts[..] {
        [k] => Ok(k),
        _ => Err(SignError::LedgerAnomaly(format!(
            "{what} ledger has {} stratum contacts, expected exactly one",
            contacts.len()
        ))),
    }
}

/// The per-shape calibration constant of the ambient orientation: the sign
/// of the Jacobian determinant at the row-reading solution over the
/// all-real ladder target.
pub fn ambient_calibration(
    lambda: &Partition,
    eps: &Rat,
    allow_n6: bool,
) -> Result<i64, SignError> {
    let base = label_fibre(lambda, &Composition::ones(lambda.size()), eps, allow_n6)?;
    let t0 = crate::combi::t_zero(lambda);
    let idx = base
        .solution_of(&t0)
        .ok_or_else(|| SignError::Mismatch("row-reading label missing".into()))?;
    let dj = crate::cell::jacobian_det(&base.report.solutions[idx].point);
    if dj.norm() < 1e-12 {
        return Err(SignError::Mismatch(
            "calibration point is ramified".into(),
        ));
    }
    Ok(if dj.re >= 0.0 { 1 } else { -1 })
}

/// Verification of the dual-sign relation on a pipeline:
/// `sgn * sgn_dual = (-1)^{n_2}` at every labelled real solution.
#[derive(Debug)]
pub struct DualCheck {
    pub expected: i64,
    pub per_tableau: Vec<(Tableau, i64)>,
    pub pass: bool,
}

pub fn dual_signs_check(pipeline: &SignPipeline) -> DualCheck {
    let expected = if pipeline.mu.count_twos().is_multiple_of(2) {
        1
    } else {
        -1
    };
    let per_tableau: Vec<(Tableau, i64)> = pipeline
        .per_tableau
        .iter()
        .map(|(t, s, d)| (t.clone(), s * d))
        .collect();
    let pass = per_tableau.iter().all(|(_, p)| *p == expected);
    DualCheck {
        expected,
        per_tableau,
        pass,
    }
}
