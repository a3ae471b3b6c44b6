//! Certified fibre computation by lexicographic elimination: all solutions
//! with multiplicity, real counts by Sturm sequences, numeric coordinates by
//! back-substitution.

use super::groebner::buchberger;
use super::newton::{newton_polish, NewtonOptions};
use super::{fibre_residual, FibreReport, Solution, SolveError};
use crate::cell::{CellPoint, Chart};
use crate::combi::Partition;
use crate::mpoly::{MPoly, Mono};
use crate::poly::sturm::{count_distinct_real_roots, is_square_free, square_free_decomposition};
use crate::poly::{roots, RootConfig, UniPoly};
use crate::scalar::{rat, rat_i, C64, Rat, Scalar};
use num_traits::ToPrimitive;

#[derive(Debug, Clone)]
pub struct ExactOptions {
    /// Permit n = 6 (the hard guard is n <= 5 otherwise).
    pub allow_n6: bool,
    /// Attempts of random rational translation when no variable order puts
    /// the lex basis in shape position.
    pub max_translations: usize,
    pub root_cfg: RootConfig,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            allow_n6: false,
            max_translations: 6,
            root_cfg: RootConfig::default(),
        }
    }
}

/// All `f^lambda` solutions of `Wr^{-1}(g)` with multiplicity over the
/// complex numbers, by exact lexicographic elimination; the real count is
/// certified.
///
/// Variables enter the lex order in row-reading order. When the basis is
/// not in shape position the solver first promotes a different coordinate
/// to the eliminant slot (some coordinates are constant on every fibre) and
/// then falls back on random rational translations of the target.
pub fn exact_solve(
    lambda: &Partition,
    g: &UniPoly<Rat>,
    opts: &ExactOptions,
) -> Result<FibreReport, SolveError> {
    let n = lambda.size();
    let max_n = if opts.allow_n6 { 6 } else { 5 };
    if n == 0 || n > max_n {
        return Err(SolveError::SizeGuard { n });
    }
    let deg = g.degree().unwrap_or(0);
    if deg != n {
        return Err(SolveError::DegreeMismatch { deg, n });
    }
    let g = g.monic();

    // Deterministic translation ladder; entry 0 solves the system as given.
    let shifts: Vec<Rat> = std::iter::once(rat_i(0))
        .chain((1..=opts.max_translations as i64).map(|k| {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            rat(sign * (k / 2 + 1), k % 3 + 2)
        }))
        .collect();

    let mut last_err = SolveError::NonShapePosition {
        tries: opts.max_translations,
    };
    for c in &shifts {
        let shifted = g.taylor_shift(c);
        // Candidate eliminant coordinates: reversed row-reading order.
        for shape_coord in (0..n).rev() {
            match solve_in_shape_position(lambda, &shifted, shape_coord, opts) {
                Ok(mut report) => {
                    if !c.is_zero() {
                        translate_back(&mut report, lambda, &g, c)?;
                    }
                    report.sort_canonical();
                    return Ok(report);
                }
                Err(e @ SolveError::NonShapePosition { .. }) => {
                    last_err = e;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Err(last_err)
}

/// One elimination attempt with the coordinate `shape_coord` moved to the
/// end of the lex order; fails with `NonShapePosition` when the eliminant
/// degree falls short or the shape elements are missing.
fn solve_in_shape_position(
    lambda: &Partition,
    g: &UniPoly<Rat>,
    shape_coord: usize,
    opts: &ExactOptions,
) -> Result<FibreReport, SolveError> {
    let n = lambda.size();
    let chart = Chart::new(lambda);
    let f_lambda = lambda.syt_count().to_usize().expect("desk scale");

    // Lex position of each coordinate: `shape_coord` goes last, the rest
    // keep row-reading order.
    let mut pos_of_coord: Vec<usize> = Vec::with_capacity(n);
    let mut next = 0;
    for k in 0..n {
        if k == shape_coord {
            pos_of_coord.push(n - 1);
        } else {
            pos_of_coord.push(next);
            next += 1;
        }
    }
    let mut coord_at_pos = vec![0usize; n];
    for (k, &p) in pos_of_coord.iter().enumerate() {
        coord_at_pos[p] = k;
    }
    let permute = |p: &MPoly| -> MPoly {
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u8; n];
                for (k, &exp) in m.0.iter().enumerate() {
                    e[pos_of_coord[k]] = exp;
                }
                (Mono(e), c.clone())
            })
            .collect();
        let mut q = MPoly { nvars: n, terms };
        q.terms.sort_by(|a, b| b.0.cmp(&a.0));
        q
    };

    // The square system: coefficient l of the monic Wronskian equals g_l.
    let eqs: Vec<MPoly> = (0..n)
        .map(|l| {
            permute(&chart.sym_coeffs[l])
                .sub(&MPoly::constant(n, g.coeff(l)))
                .primitive()
        })
        .collect();
    let gb = buchberger(&eqs);

    // Eliminant: the basis element univariate in the last position.
    let last = n - 1;
    let eliminant = gb
        .iter()
        .find_map(|p| p.to_univariate(last))
        .ok_or(SolveError::NonShapePosition { tries: 0 })?;
    let e_deg = eliminant.degree().unwrap_or(0);
    if e_deg != f_lambda {
        return Err(SolveError::NonShapePosition { tries: 0 });
    }

    // Shape elements: position_i - p_i(position_last) for every other slot.
    let mut subs: Vec<Option<(Rat, UniPoly<Rat>)>> = vec![None; n];
    for p in &gb {
        let Some((lm, lc)) = p.leading() else { continue };
        let var = (0..n).find(|&i| lm.0[i] == 1 && lm.total_degree() == 1);
        if let Some(i) = var {
            if i == last {
                continue;
            }
            let tail = MPoly {
                nvars: n,
                terms: p.terms[1..].to_vec(),
            };
            if let Some(t) = tail.to_univariate(last) {
                subs[i] = Some((lc.clone(), t));
            }
        }
    }
    if (0..n - 1).any(|i| subs[i].is_none()) {
        return Err(SolveError::NonShapePosition { tries: 0 });
    }

    // Certified counts from the square-free decomposition.
    let decomp = square_free_decomposition(&eliminant);
    let reduced = is_square_free(&eliminant);

    let mut solutions = Vec::new();
    let g64 = g.to_c64();
    for (factor, mult) in &decomp {
        let certified_real = count_distinct_real_roots(factor);
        let froots = repair_realness(roots(factor, &opts.root_cfg)?, factor, certified_real)?;
        for r in froots {
            let mut coords = vec![C64::zero(); n];
            coords[shape_coord] = r;
            for i in 0..n - 1 {
                let (lc, tail) = subs[i].as_ref().unwrap();
                coords[coord_at_pos[i]] = -tail.to_c64().eval(&r) / lc.to_c64();
            }
            let mut point = CellPoint::new(lambda.clone(), coords).unwrap();
            let mut real = r.im == 0.0;
            if real {
                // Rational back-substitution keeps real points exactly real.
                for c in &mut point.coords {
                    c.im = 0.0;
                }
            }
            if *mult == 1 {
                if let Ok(polished) = newton_polish(&point, &g64, &NewtonOptions::default()) {
                    point = polished;
                    if real {
                        for c in &mut point.coords {
                            c.im = 0.0;
                        }
                    }
                }
            }
            real = point.coords.iter().all(|c| c.im == 0.0);
            let residual = fibre_residual(&point, &g64);
            solutions.push(Solution::bare(point, *mult, real, residual));
        }
    }

    Ok(FibreReport {
        lambda: lambda.clone(),
        g: g64,
        solutions,
        certified: true,
        reduced: Some(reduced),
    })
}

/// Reconcile the numeric realness split with the certified real count of a
/// square-free factor: borderline conjugate pairs of a real polynomial are
/// actually pairs of close real roots, recovered by real Newton from both
/// sides of the midpoint.
fn repair_realness(
    mut froots: Vec<C64>,
    factor: &UniPoly<Rat>,
    certified_real: usize,
) -> Result<Vec<C64>, SolveError> {
    let numeric_real = froots.iter().filter(|r| r.im == 0.0).count();
    if numeric_real == certified_real {
        return Ok(froots);
    }
    if numeric_real > certified_real {
        return Err(SolveError::Numerical(format!(
            "numeric real roots {numeric_real} exceed the certified count {certified_real}"
        )));
    }
    let fc = factor.to_c64();
    let dfc = fc.derivative();
    // Snap the pairs with the smallest imaginary parts.
    while froots.iter().filter(|r| r.im == 0.0).count() < certified_real {
        let Some((k, _)) = froots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.im > 0.0)
            .min_by(|a, b| a.1.im.partial_cmp(&b.1.im).unwrap())
        else {
            return Err(SolveError::Numerical(
                "no borderline pair left to repair against the certified count".into(),
            ));
        };
        let z = froots[k];
        let partner = froots
            .iter()
            .position(|w| (*w - z.conj()).norm() < 1e-12 * (1.0 + z.norm()))
            .ok_or_else(|| SolveError::Numerical("unpaired borderline root".into()))?;
        // Real Newton from both sides of the midpoint.
        let mut fixed = Vec::new();
        for start in [z.re - z.im.abs(), z.re + z.im.abs()] {
            let mut x = C64::new(start, 0.0);
            for _ in 0..60 {
                let d = dfc.eval(&x);
                if d.norm() == 0.0 {
                    break;
                }
                let step = fc.eval(&x) / d;
                x = C64::new(x.re - step.re, 0.0);
                if step.norm() < 1e-16 * (1.0 + x.norm()) {
                    break;
                }
            }
            fixed.push(x);
        }
        if (fixed[0] - fixed[1]).norm() < 1e-14 * (1.0 + fixed[0].norm()) {
            return Err(SolveError::Numerical(
                "borderline pair could not be separated into real roots".into(),
            ));
        }
        let mut idx = [k, partner];
        idx.sort_unstable();
        froots[idx[0]] = fixed[0];
        froots[idx[1]] = fixed[1];
    }
    Ok(froots)
}

/// Map a fibre of `g(z + c)` back to the fibre of `g`: each basis
/// polynomial is shifted by `-c` and the coordinates are re-extracted.
fn translate_back(
    report: &mut FibreReport,
    lambda: &Partition,
    g: &UniPoly<Rat>,
    c: &Rat,
) -> Result<(), SolveError> {
    let chart = Chart::new(lambda);
    let minus_c = (-c.clone()).to_c64();
    let g64 = g.to_c64();
    for sol in &mut report.solutions {
        let basis = chart.basis_polys(&sol.point);
        let shifted: Vec<UniPoly<C64>> = basis.iter().map(|f| f.taylor_shift(&minus_c)).collect();
        let mut point = chart.from_basis(&shifted, 1e-9)?;
        if sol.real {
            for z in &mut point.coords {
                z.im = 0.0;
            }
        }
        if sol.multiplicity == 1 {
            if let Ok(p) = newton_polish(&point, &g64, &NewtonOptions::default()) {
                point = p;
                if sol.real {
                    for z in &mut point.coords {
                        z.im = 0.0;
                    }
                }
            }
        }
        sol.residual = fibre_residual(&point, &g64);
        sol.point = point;
    }
    report.g = g64;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn hook_fibres_match_the_examples() {
        // h_{1^3}: two solutions, both real.
        let h13 = UniPoly::from_roots(&[rat(-1, 8), rat(-1, 4), rat(-1, 2)]);
        let report = exact_solve(&lam(&[2, 1]), &h13, &ExactOptions::default()).unwrap();
        assert_eq!(report.complex_count(), 2);
        assert_eq!(report.real_count_with_multiplicity(), 2);
        assert_eq!(report.reduced, Some(true));

        // h_{12}: two solutions, none real.
        let pair = UniPoly::new(vec![rat(9, 64), rat_i(0), rat_i(1)]);
        let h12 = pair.mul(&UniPoly::from_roots(&[rat(-1, 8)]));
        let report = exact_solve(&lam(&[2, 1]), &h12, &ExactOptions::default()).unwrap();
        assert_eq!(report.complex_count(), 2);
        assert_eq!(report.real_count_with_multiplicity(), 0);
    }

    #[test]
    fn two_by_two_with_four_real_roots() {
        // f^{(2,2)} = 2 and all-real targets have all-real fibres; note the
        // lex-last coordinate is constant on this fibre, so the eliminant
        // slot has to move.
        let g = UniPoly::from_roots(&[rat_i(-1), rat_i(-2), rat_i(-3), rat_i(-4)]);
        let report = exact_solve(&lam(&[2, 2]), &g, &ExactOptions::default()).unwrap();
        assert_eq!(report.complex_count(), 2);
        assert_eq!(report.real_count_with_multiplicity(), 2);
        for s in &report.solutions {
            assert!(s.residual < 1e-9, "residual {}", s.residual);
        }
    }

    #[test]
    fn agrees_with_hook_solver() {
        use crate::solve::solve_hook;
        let g = UniPoly::from_roots(&[rat_i(-1), rat_i(1), rat_i(-3), rat(5, 2)]);
        let exact = exact_solve(&lam(&[3, 1]), &g, &ExactOptions::default()).unwrap();
        let hook = solve_hook(4, &g.to_c64(), &RootConfig::default()).unwrap();
        assert_eq!(exact.complex_count(), 3);
        assert_eq!(exact.complex_count(), hook.complex_count());
        assert_eq!(
            exact.real_count_with_multiplicity(),
            hook.real_count_with_multiplicity()
        );
        // Match solutions pairwise within 1e-9.
        for es in &exact.solutions {
            let best = hook
                .solutions
                .iter()
                .map(|hs| crate::cell::point_distance(&es.point, &hs.point))
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-9, "unmatched solution, distance {best}");
        }
    }

    #[test]
    fn multiplicity_at_a_discriminant_point() {
        // The hook with a double critical point: g' = 3(z-1)^2.
        let g = UniPoly::new(vec![rat_i(0), rat_i(3), rat_i(-3), rat_i(1)]);
        let report = exact_solve(&lam(&[2, 1]), &g, &ExactOptions::default()).unwrap();
        assert_eq!(report.complex_count(), 2);
        assert_eq!(report.reduced, Some(false));
        assert_eq!(report.solutions.len(), 1);
        assert_eq!(report.solutions[0].multiplicity, 2);
        assert!(report.solutions[0].real);
    }

    #[test]
    fn size_guard() {
        let g = UniPoly::from_roots(&vec![rat_i(-1); 6]);
        let err = exact_solve(&lam(&[3, 2, 1]), &g, &ExactOptions::default()).unwrap_err();
        assert!(matches!(err, SolveError::SizeGuard { n: 6 }));
        // With the flag the staircase runs (f^{(3,2,1)} = 16, all real).
        let opts = ExactOptions {
            allow_n6: true,
            ..ExactOptions::default()
        };
        let g = UniPoly::from_roots(&[
            rat_i(-1),
            rat_i(-2),
            rat_i(-3),
            rat_i(-4),
            rat_i(-5),
            rat_i(-6),
        ]);
        let report = exact_solve(&lam(&[3, 2, 1]), &g, &opts).unwrap();
        assert_eq!(report.complex_count(), 16);
        assert_eq!(report.real_count_with_multiplicity(), 16);
    }
}
