//! Tableau labels for the solutions over a special target, read off the
//! growth rates (valuations) of normalized Pluecker coordinates as the
//! ladder parameter shrinks.

use super::paths::HomotopyInEps;
use super::{h_mu, DegenError};
use crate::cell::{pluecker, point_distance, CellError, CellPoint};
use crate::combi::{domino_stats, Composition, Partition, Tableau};
use crate::scalar::{rat, rat_to_f64, C64, Rat};
use crate::solve::{
    exact_solve, track_fibre, ExactOptions, FibreReport, SolveError, TrackOptions,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabelError {
    #[error("{0}")]
    Degen(#[from] DegenError),
    #[error("{0}")]
    Solve(#[from] SolveError),
    #[error("{0}")]
    Cell(#[from] CellError),
    #[error("fibre over the target is not regular at this epsilon")]
    NotRegular,
    #[error("valuation {value:.3} is more than 0.2 from an integer (kappa = {kappa})")]
    NonIntegerValuation { kappa: Partition, value: f64 },
    #[error("argmin set at level {level} has no unique maximal element")]
    NoUniqueMax { level: usize },
    #[error("label chain broken at level {level}")]
    ChainBroken { level: usize },
    #[error("labelling inconsistent: {0}")]
    Inconsistent(String),
}

/// A labelled special fibre: every solution carries a tableau; clusters
/// collect the solutions sharing one.
#[derive(Debug)]
pub struct LabelledFibre {
    pub lambda: Partition,
    pub mu: Composition,
    pub eps: Rat,
    pub report: FibreReport,
    /// Solution indices per tableau, tableaux in reading-word order.
    pub clusters: Vec<(Tableau, Vec<usize>)>,
    /// Per solution: integer valuations of the normalized Pluecker
    /// coordinates.
    pub valuations: Vec<BTreeMap<Partition, i64>>,
    /// The accepted estimates before rounding (infinite for identically
    /// vanishing coordinates).
    pub raw_valuations: Vec<BTreeMap<Partition, f64>>,
    /// Per solution: raw float valuation estimates of the affine
    /// coordinates (not rounded; some may be meaningless for zero coords).
    pub coord_valuations: Vec<Vec<f64>>,
}

impl LabelledFibre {
    /// The solution labelled by a given tableau, when the cluster is a
    /// singleton.
    pub fn solution_of(&self, t: &Tableau) -> Option<usize> {
        self.clusters
            .iter()
            .find(|(s, _)| s == t)
            .and_then(|(_, v)| if v.len() == 1 { Some(v[0]) } else { None })
    }
}

/// Label the fibre over `h_mu(eps)`.
///
/// Solves exactly at `eps` and `eps/2`, matches the two fibres by tracking
/// in the ladder parameter, estimates the valuation of every normalized
/// Pluecker coordinate from the two samples (with a third sample at `eps/4`
/// when an estimate is ambiguous), and assembles the label of each solution
/// from the argmin partitions level by level.
pub fn label_fibre(
    lambda: &Partition,
    mu: &Composition,
    eps: &Rat,
    allow_n6: bool,
) -> Result<LabelledFibre, LabelError> {
    let n = lambda.size();
    let exact_opts = ExactOptions {
        allow_n6,
        ..ExactOptions::default()
    };
    let h1 = h_mu(mu, eps)?;
    let half = eps * rat(1, 2);
    let h2 = h_mu(mu, &half)?;
    let rep1 = exact_solve(lambda, &h1, &exact_opts)?;
    let rep2 = exact_solve(lambda, &h2, &exact_opts)?;
    if rep1.reduced != Some(true) || rep2.reduced != Some(true) {
        return Err(LabelError::NotRegular);
    }

    // Match fibres by tracking in the ladder parameter.
    let starts: Vec<CellPoint<C64>> = rep1.solutions.iter().map(|s| s.point.clone()).collect();
    let path = HomotopyInEps {
        mu: mu.clone(),
        eps_from: rat_to_f64(eps),
        eps_to: rat_to_f64(&half),
    };
    let tracked = track_fibre(lambda, &starts, &path, &TrackOptions::default())?;
    let mut partner: Vec<usize> = Vec::with_capacity(starts.len());
    let mut used = vec![false; rep2.solutions.len()];
    for branch in &tracked.branches {
        let end = branch
            .end
            .as_ref()
            .ok_or_else(|| LabelError::Inconsistent("collision while matching fibres".into()))?;
        let (best, dist) = rep2
            .solutions
            .iter()
            .enumerate()
            .map(|(k, s)| (k, point_distance(end, &s.point)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if used[best] || dist > 1e-5 * (1.0 + end.scale()) {
            return Err(LabelError::Inconsistent(format!(
                "fibre matching failed (distance {dist:.2e})"
            )));
        }
        used[best] = true;
        partner.push(best);
    }

    // Valuation estimates per solution. Level k of the sample ladder
    // holds the fibre at eps/2^k; levels beyond the first two are solved
    // lazily when a two-sample estimate stays ambiguous and the slope needs
    // Richardson extrapolation (first the linear error term is cancelled,
    // then the quadratic one). Coordinates that vanish identically on a
    // solution show up as noise; magnitudes below the level floor (the
    // smallest value a genuine valuation could take at that depth) count
    // as infinite valuation.
    let kappas = lambda.subpartitions();
    let vmax = ((n * (n + 1)) / 2 + 3) as i32;
    let eps_f = rat_to_f64(eps);
    let floor_at = |k: usize| -> f64 {
        (eps_f / 2f64.powi(k as i32))
            .powi(vmax)
            .max(1e-200)
            .min(1e-10)
    };
    let mut reports: Vec<FibreReport> = vec![rep1, rep2];
    // chain[k][i] = index at level k of the solution with index i at level 0.
    let mut chain: Vec<Vec<usize>> = vec![(0..starts.len()).collect(), partner];
    let mut plmags: Vec<Vec<BTreeMap<Partition, f64>>> = Vec::new();
    for rep in &reports {
        plmags.push(pluecker_mags(rep, &kappas)?);
    }

    let mut all_valuations = Vec::with_capacity(starts.len());
    let mut all_raw = Vec::with_capacity(starts.len());
    let mut coord_valuations = Vec::with_capacity(starts.len());
    for idx in 0..starts.len() {
        let mut vals: BTreeMap<Partition, i64> = BTreeMap::new();
        let mut raw: BTreeMap<Partition, f64> = BTreeMap::new();
        for kappa in &kappas {
            let mag =
                |k: usize, plmags: &Vec<Vec<BTreeMap<Partition, f64>>>, chain: &Vec<Vec<usize>>| {
                    plmags[k][chain[k][idx]][kappa]
                };
            // Slope between consecutive levels, None in the noise regime.
            let slope = |k: usize,
                         plmags: &Vec<Vec<BTreeMap<Partition, f64>>>,
                         chain: &Vec<Vec<usize>>| {
                let a = mag(k, plmags, chain);
                let b = mag(k + 1, plmags, chain);
                if a < floor_at(k) || b < floor_at(k + 1) {
                    None
                } else {
                    Some((a / b).log2())
                }
            };
            let accept = |v: f64| {
                let nearest = v.round();
                if (v - nearest).abs() <= 0.2 {
                    Some(nearest as i64)
                } else {
                    None
                }
            };

            let mut value: Option<i64> = None;
            let mut zero = false;
            let mut last_est = f64::NAN;
            match slope(0, &plmags, &chain) {
                None => {
                    // Probe deeper before declaring the coordinate
                    // identically zero; genuine deep valuations recover a
                    // clean slope further down the ladder.
                    extend_ladder(lambda, mu, eps, allow_n6, &mut reports, &mut chain, &mut plmags, &kappas)?;
                    zero = mag(1, &plmags, &chain) < floor_at(1)
                        && mag(2, &plmags, &chain) < floor_at(2);
                    if !zero {
                        match slope(1, &plmags, &chain) {
                            Some(r2) => {
                                value = accept(r2);
                                last_est = r2;
                                if value.is_none() {
                                    extend_ladder(lambda, mu, eps, allow_n6, &mut reports, &mut chain, &mut plmags, &kappas)?;
                                    if let Some(r3) = slope(2, &plmags, &chain) {
                                        let s = 2.0 * r3 - r2;
                                        last_est = s;
                                        value = accept(s);
                                    }
                                }
                            }
                            None => {
                                extend_ladder(lambda, mu, eps, allow_n6, &mut reports, &mut chain, &mut plmags, &kappas)?;
                                zero = mag(2, &plmags, &chain) < floor_at(2)
                                    && mag(3, &plmags, &chain) < floor_at(3);
                                if !zero {
                                    if let Some(r3) = slope(2, &plmags, &chain) {
                                        value = accept(r3);
                                        last_est = r3;
                                    }
                                }
                            }
                        }
                    }
                }
                Some(r1) => {
                    last_est = r1;
                    value = accept(r1);
                    if value.is_none() {
                        extend_ladder(lambda, mu, eps, allow_n6, &mut reports, &mut chain, &mut plmags, &kappas)?;
                        if let Some(r2) = slope(1, &plmags, &chain) {
                            let s1 = 2.0 * r2 - r1;
                            last_est = s1;
                            value = accept(s1);
                            if value.is_none() {
                                extend_ladder(lambda, mu, eps, allow_n6, &mut reports, &mut chain, &mut plmags, &kappas)?;
                                if let Some(r3) = slope(2, &plmags, &chain) {
                                    let est = (8.0 * r3 - 6.0 * r2 + r1) / 3.0;
                                    last_est = est;
                                    value = accept(est);
                                }
                            }
                        }
                    }
                }
            }
            if zero {
                vals.insert(kappa.clone(), i64::MAX / 4);
                raw.insert(kappa.clone(), f64::INFINITY);
            } else if let Some(v) = value {
                vals.insert(kappa.clone(), v);
                raw.insert(kappa.clone(), last_est);
            } else {
                return Err(LabelError::NonIntegerValuation {
                    kappa: kappa.clone(),
                    value: last_est,
                });
            }
        }
        all_valuations.push(vals);
        all_raw.push(raw);
        let j = chain[1][idx];
        coord_valuations.push(
            reports[0].solutions[idx]
                .point
                .coords
                .iter()
                .zip(&reports[1].solutions[j].point.coords)
                .map(|(a, b)| (a.norm() / b.norm()).log2())
                .collect(),
        );
    }
    let rep1 = reports.swap_remove(0);

    // Assemble labels level by level.
    let mut report = rep1;
    let mut clusters: BTreeMap<Vec<usize>, (Tableau, Vec<usize>)> = BTreeMap::new();
    for (idx, vals) in all_valuations.iter().enumerate() {
        let mut chain = Vec::with_capacity(mu.len());
        let mut prev = Partition::empty();
        for b in 1..=mu.len() {
            let weight = mu.mu_bar(b) as i64;
            let score = |kappa: &Partition| vals[kappa] + weight * kappa.size() as i64;
            let best = kappas.iter().map(&score).min().unwrap();
            let argmin: Vec<&Partition> =
                kappas.iter().filter(|k| score(k) == best).collect();
            let top = argmin
                .iter()
                .max_by_key(|k| k.size())
                .copied()
                .unwrap()
                .clone();
            if !argmin.iter().all(|k| top.contains(k)) {
                return Err(LabelError::NoUniqueMax { level: b });
            }
            if !top.contains(&prev) || top.size() != prev.size() + mu.parts()[b - 1] {
                return Err(LabelError::ChainBroken { level: b });
            }
            prev = top.clone();
            chain.push(top);
        }
        let tableau = Tableau::from_chain(chain);
        report.solutions[idx].tableau = Some(tableau.clone());
        clusters
            .entry(tableau.reading_word())
            .or_insert_with(|| (tableau, Vec::new()))
            .1
            .push(idx);
    }

    // Consistency: real solutions get twoskew-free tableaux, clusters have
    // size 2^{#twoskew}.
    for (tableau, members) in clusters.values() {
        let stats = domino_stats(tableau)
            .map_err(|e| LabelError::Inconsistent(format!("domino stats: {e}")))?;
        if members.len() != 1usize << stats.twoskews {
            return Err(LabelError::Inconsistent(format!(
                "cluster of {:?} has {} members, expected {}",
                tableau.rows(),
                members.len(),
                1usize << stats.twoskews
            )));
        }
        for &m in members {
            let real = report.solutions[m].real;
            if real != (stats.twoskews == 0) {
                return Err(LabelError::Inconsistent(format!(
                    "realness does not match the label {:?}",
                    tableau.rows()
                )));
            }
        }
    }

    Ok(LabelledFibre {
        lambda: lambda.clone(),
        mu: mu.clone(),
        eps: eps.clone(),
        report,
        clusters: clusters.into_values().collect(),
        valuations: all_valuations,
        raw_valuations: all_raw,
        coord_valuations,
    })
}

/// Pluecker coordinate magnitudes of every solution of a report.
fn pluecker_mags(
    rep: &FibreReport,
    kappas: &[Partition],
) -> Result<Vec<BTreeMap<Partition, f64>>, LabelError> {
    rep.solutions
        .iter()
        .map(|s| {
            let pl = pluecker(&s.point)?;
            Ok(kappas
                .iter()
                .map(|k| (k.clone(), pl.value(k).norm()))
                .collect())
        })
        .collect()
}

/// Solve and match one more rung of the sample ladder (`eps / 2^level`).
#[allow(clippy::too_many_arguments)]
fn extend_ladder(
    lambda: &Partition,
    mu: &Composition,
    eps: &Rat,
    allow_n6: bool,
    reports: &mut Vec<FibreReport>,
    chain: &mut Vec<Vec<usize>>,
    plmags: &mut Vec<Vec<BTreeMap<Partition, f64>>>,
    kappas: &[Partition],
) -> Result<(), LabelError> {
    if reports.len() >= 4 {
        return Ok(());
    }
    let level = reports.len();
    let exact_opts = ExactOptions {
        allow_n6,
        ..ExactOptions::default()
    };
    let mut eps_k = eps.clone();
    for _ in 0..level {
        eps_k *= rat(1, 2);
    }
    let h = h_mu(mu, &eps_k)?;
    let rep = exact_solve(lambda, &h, &exact_opts)?;
    if rep.reduced != Some(true) {
        return Err(LabelError::NotRegular);
    }
    let prev = reports.last().unwrap();
    let starts: Vec<CellPoint<C64>> = prev.solutions.iter().map(|s| s.point.clone()).collect();
    let path = HomotopyInEps {
        mu: mu.clone(),
        eps_from: rat_to_f64(&(eps_k.clone() * rat_i2())),
        eps_to: rat_to_f64(&eps_k),
    };
    let tracked = track_fibre(lambda, &starts, &path, &TrackOptions::default())?;
    let mut level_partner = Vec::with_capacity(starts.len());
    for branch in &tracked.branches {
        let end = branch
            .end
            .as_ref()
            .ok_or_else(|| LabelError::Inconsistent("collision while matching fibres".into()))?;
        let (best, dist) = rep
            .solutions
            .iter()
            .enumerate()
            .map(|(k, s)| (k, point_distance(end, &s.point)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if dist > 1e-5 * (1.0 + end.scale()) {
            return Err(LabelError::Inconsistent(
                "deep-sample matching failed".into(),
            ));
        }
        level_partner.push(best);
    }
    let prev_chain = chain.last().unwrap().clone();
    chain.push(prev_chain.iter().map(|&i| level_partner[i]).collect());
    plmags.push(pluecker_mags(&rep, kappas)?);
    reports.push(rep);
    Ok(())
}

fn rat_i2() -> Rat {
    crate::scalar::rat_i(2)
}

/// Estimated valuations of arbitrary quantities sampled at `eps` and
/// `eps/2` (two-sample log ratio).
pub fn valuations(at_eps: &[f64], at_half: &[f64]) -> Vec<f64> {
    at_eps
        .iter()
        .zip(at_half)
        .map(|(a, b)| (a / b).log2())
        .collect()
}

/// Pick the largest epsilon in the dyadic ladder at which the fibre over
/// the target is regular with a real count that is stable one rung deeper.
/// A label-free alternative to [`choose_epsilon`] for counting claims past
/// the labelling scale.
pub fn choose_epsilon_counts(
    lambda: &Partition,
    mu: &Composition,
    allow_n6: bool,
) -> Result<(Rat, FibreReport), LabelError> {
    let exact_opts = ExactOptions {
        allow_n6,
        ..ExactOptions::default()
    };
    let mut eps = rat(1, 2);
    let mut last_err: Option<LabelError> = None;
    for _ in 0..20 {
        let attempt = (|| -> Result<(Rat, FibreReport), LabelError> {
            let rep1 = exact_solve(lambda, &h_mu(mu, &eps)?, &exact_opts)?;
            let half = &eps * rat(1, 2);
            let rep2 = exact_solve(lambda, &h_mu(mu, &half)?, &exact_opts)?;
            if rep1.reduced != Some(true) || rep2.reduced != Some(true) {
                return Err(LabelError::NotRegular);
            }
            if rep1.real_count_with_multiplicity() != rep2.real_count_with_multiplicity() {
                return Err(LabelError::Inconsistent(
                    "real count not yet stable in the ladder".into(),
                ));
            }
            Ok((eps.clone(), rep1))
        })();
        match attempt {
            Ok(found) => return Ok(found),
            Err(LabelError::Solve(SolveError::SizeGuard { n })) => {
                return Err(LabelError::Solve(SolveError::SizeGuard { n }))
            }
            Err(e) => {
                last_err = Some(e);
                eps *= rat(1, 2);
            }
        }
    }
    Err(last_err.unwrap_or(LabelError::Degen(DegenError::EpsilonUnderflow(20))))
}

/// Pick the largest admissible epsilon in the dyadic ladder: the fibre over
/// the target must be regular and the labelling integer-consistent.
pub fn choose_epsilon(
    lambda: &Partition,
    mu: &Composition,
    allow_n6: bool,
) -> Result<(Rat, LabelledFibre), LabelError> {
    let mut eps = rat(1, 2);
    for _ in 0..20 {
        match label_fibre(lambda, mu, &eps, allow_n6) {
            Ok(labelled) => return Ok((eps, labelled)),
            Err(LabelError::Degen(e)) => return Err(LabelError::Degen(e)),
            Err(LabelError::Solve(SolveError::SizeGuard { .. })) => {
                return Err(LabelError::Solve(SolveError::SizeGuard {
                    n: lambda.size(),
                }))
            }
            Err(_) => {
                eps *= rat(1, 2);
            }
        }
    }
    Err(LabelError::Degen(DegenError::EpsilonUnderflow(20)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn hook_standard_labels_match_the_worked_example() {
        // lambda = (2,1), mu = 1^3 at eps = 1/2: the smaller critical point
        // gets the row-reading tableau.
        let labelled = label_fibre(&lam(&[2, 1]), &comp(&[1, 1, 1]), &rat(1, 2), false).unwrap();
        assert_eq!(labelled.report.solutions.len(), 2);
        assert_eq!(labelled.clusters.len(), 2);
        // Valuations of the normalized Pluecker coordinates of the
        // T0-labelled solution: the worked series give (6, 3, 2, 1, 0) on
        // (empty, (1), (1,1), (2), (2,1)).
        let t0 = crate::combi::t_zero(&lam(&[2, 1]));
        let idx = labelled.solution_of(&t0).expect("T0 is a singleton");
        let vals = &labelled.valuations[idx];
        assert_eq!(vals[&Partition::empty()], 6);
        assert_eq!(vals[&lam(&[1])], 3);
        assert_eq!(vals[&lam(&[1, 1])], 2);
        assert_eq!(vals[&lam(&[2])], 1);
        assert_eq!(vals[&lam(&[2, 1])], 0);
        // The other solution is labelled [1,3],[2].
        let other = Tableau::from_rows(vec![vec![1, 3], vec![2]]).unwrap();
        assert!(labelled.solution_of(&other).is_some());
    }

    #[test]
    fn labels_for_21_and_12() {
        // mu = (2,1): two real solutions labelled by the domino fillings.
        let labelled = label_fibre(&lam(&[2, 1]), &comp(&[2, 1]), &rat(1, 2), false).unwrap();
        let rows: Vec<Vec<Vec<usize>>> = labelled
            .clusters
            .iter()
            .map(|(t, _)| t.rows())
            .collect();
        assert!(rows.contains(&vec![vec![1, 1], vec![2]]));
        assert!(rows.contains(&vec![vec![1, 2], vec![1]]));
        assert_eq!(labelled.report.real_count_with_multiplicity(), 2);

        // mu = (1,2): both solutions non-real, sharing the unique skew
        // tableau in a cluster of size 2.
        let labelled = label_fibre(&lam(&[2, 1]), &comp(&[1, 2]), &rat(1, 2), false).unwrap();
        assert_eq!(labelled.report.real_count_with_multiplicity(), 0);
        assert_eq!(labelled.clusters.len(), 1);
        assert_eq!(labelled.clusters[0].1.len(), 2);
        assert_eq!(
            labelled.clusters[0].0.rows(),
            vec![vec![1, 2], vec![2]]
        );
    }

    #[test]
    fn real_count_matches_mn_for_22() {
        for parts in [vec![1usize, 1, 1, 1], vec![2, 1, 1], vec![1, 2, 1], vec![2, 2]] {
            let mu = comp(&parts);
            let (_, labelled) = choose_epsilon(&lam(&[2, 2]), &mu, false).unwrap();
            let mn = crate::combi::mn_filter(&lam(&[2, 2]), &mu).unwrap();
            assert_eq!(
                labelled.report.real_count_with_multiplicity(),
                mn.len(),
                "mu = {mu}"
            );
        }
    }

    #[test]
    fn choose_epsilon_starts_at_one_half() {
        // One half is already admissible for every content of the hook of 3,
        // and for the linear fibre.
        for mu in crate::combi::compositions_12(3) {
            let (eps, _) = choose_epsilon(&lam(&[2, 1]), &mu, false).unwrap();
            assert_eq!(eps, rat(1, 2), "mu = {mu}");
        }
        let (eps, _) = choose_epsilon(&lam(&[1]), &comp(&[1]), false).unwrap();
        assert_eq!(eps, rat(1, 2));
    }
}
