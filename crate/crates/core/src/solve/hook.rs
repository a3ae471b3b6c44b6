//! The hook-shape fibre: solutions are the critical points of the target.

use super::{fibre_residual, FibreReport, Solution, SolveError};
use crate::cell::Chart;
use crate::combi::Partition;
use crate::poly::{roots, RootConfig, UniPoly};
use crate::scalar::{C64, Scalar};

/// Solve `Wr^{-1}(g)` for the hook shape `(n-1, 1)`.
///
/// Every solution is spanned by `(f1, z - c)` with `g'(c) = 0`; `f1` is
/// recovered from `f1'' = -g'/(z - c)` by double integration, with the
/// integration constant fixed by `Wr(f1, f2) = g`.
pub fn solve_hook(n: usize, g: &UniPoly<C64>, cfg: &RootConfig) -> Result<FibreReport, SolveError> {
    assert!(n >= 2, "hook shapes need n >= 2");
    let deg = g.degree().unwrap_or(0);
    if deg != n {
        return Err(SolveError::DegreeMismatch { deg, n });
    }
    let lambda = Partition::new(vec![n - 1, 1]);
    let chart = Chart::new(&lambda);
    let dg = g.derivative();
    let crit = roots(&dg, cfg)?;
    // Cluster repeated critical points (multiplicity in floating mode).
    let clusters = cluster_points(&crit, 1e-6);

    let mut report = FibreReport {
        lambda,
        g: g.clone(),
        solutions: Vec::new(),
        certified: false,
        reduced: None,
    };
    for (c, mult) in clusters {
        let point = hook_point(&chart, g, c)?;
        let residual = fibre_residual(&point, g);
        let real = c.im == 0.0;
        report
            .solutions
            .push(Solution::bare(point, mult, real, residual));
    }
    report.sort_canonical();
    Ok(report)
}

/// The cell point over `g` at the critical point `c`.
fn hook_point(chart: &Chart, g: &UniPoly<C64>, c: C64) -> Result<crate::cell::CellPoint<C64>, SolveError> {
    let f2 = UniPoly::new(vec![-c, C64::one()]);
    // f1'' = -g' / (z - c), exact because g'(c) = 0 up to roundoff.
    let (q, _rem) = g.derivative().neg().divrem(&f2);
    // Integrate twice with zero constants.
    let p = integrate(&integrate(&q));
    // Wr(p + beta, z - c) = (p - p'(z-c)) + beta; match the constant term.
    let w0 = p.sub(&p.derivative().mul(&f2));
    let beta = g.sub(&w0).coeff(0);
    let f1 = p.add(&UniPoly::constant(beta));
    let point = chart.from_basis(&[f1, f2], 1e-9)?;
    Ok(point)
}

fn integrate(p: &UniPoly<C64>) -> UniPoly<C64> {
    let mut coeffs = vec![C64::zero()];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs.push(*c / C64::from_i64(k as i64 + 1));
    }
    UniPoly::new(coeffs)
}

/// Group near-coincident points; returns (representative, count).
fn cluster_points(points: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut out: Vec<(C64, usize)> = Vec::new();
    for &p in points {
        match out
            .iter_mut()
            .find(|(q, _)| (*q - p).norm() <= tol * (1.0 + q.norm()))
        {
            Some((q, count)) => {
                // Running mean keeps the representative centred.
                *q = (*q * C64::from_i64(*count as i64) + p) / C64::from_i64(*count as i64 + 1);
                *count += 1;
            }
            None => out.push((p, 1)),
        }
    }
    out
}

/// Ambient-orientation sign of the hook solution at critical point `c`:
/// the sign of `(-1)^n g''(c)`.
pub fn ambient_sign_hook(g: &UniPoly<C64>, c: C64) -> i64 {
    let n = g.degree().unwrap_or(0);
    let val = g.derivative().derivative().eval(&c).re;
    let signed = if n.is_multiple_of(2) { val } else { -val };
    if signed > 0.0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i, Rat};

    #[test]
    fn cubic_with_two_real_critical_points() {
        // g = z^3 - 3z: critical points at +-1.
        let g = UniPoly::new(vec![rat_i(0), rat_i(-3), rat_i(0), rat_i(1)]).to_c64();
        let report = solve_hook(3, &g, &RootConfig::default()).unwrap();
        assert_eq!(report.complex_count(), 2);
        assert_eq!(report.real_count_with_multiplicity(), 2);
        for s in &report.solutions {
            assert!(s.residual < 1e-10, "residual {}", s.residual);
        }
        // Ambient signs alternate between consecutive critical points.
        assert_eq!(ambient_sign_hook(&g, C64::new(-1.0, 0.0)), -1 * ambient_sign_hook(&g, C64::new(1.0, 0.0)));
    }

    #[test]
    fn special_targets_match_the_worked_example() {
        // h_{1^3} = (z+1/8)(z+1/4)(z+1/2): two real critical points.
        let h13 = UniPoly::from_roots(&[rat(-1, 8), rat(-1, 4), rat(-1, 2)]).to_c64();
        let report = solve_hook(3, &h13, &RootConfig::default()).unwrap();
        assert_eq!(report.real_count_with_multiplicity(), 2);

        // h_{12} = (z+1/8)(z^2+(3/8)^2): no real critical point.
        let pair = UniPoly::new(vec![rat(9, 64), rat_i(0), rat_i(1)]);
        let h12 = pair.mul(&UniPoly::from_roots(&[rat(-1, 8)])).to_c64();
        let report = solve_hook(3, &h12, &RootConfig::default()).unwrap();
        assert_eq!(report.complex_count(), 2);
        assert_eq!(report.real_count_with_multiplicity(), 0);

        // h_{21} = (z^2+(3/16)^2)(z+1/2): two real critical points again.
        let pair = UniPoly::new(vec![rat(9, 256), rat_i(0), rat_i(1)]);
        let h21 = pair.mul(&UniPoly::from_roots(&[rat(-1, 2)])).to_c64();
        let report = solve_hook(3, &h21, &RootConfig::default()).unwrap();
        assert_eq!(report.real_count_with_multiplicity(), 2);
    }

    #[test]
    fn hook_degree_parity() {
        // Sum of ambient signs over a fibre with all-real roots: 1 for even
        // n, 0 for odd n.
        for n in 3..=8usize {
            let roots_r: Vec<Rat> = (1..=n as i64).map(|k| rat(-k, 1)).collect();
            let g = UniPoly::from_roots(&roots_r).to_c64();
            let crit = roots(&g.derivative(), &RootConfig::default()).unwrap();
            let total: i64 = crit
                .iter()
                .filter(|c| c.im == 0.0)
                .map(|&c| ambient_sign_hook(&g, c))
                .sum();
            let expect = if n % 2 == 0 { 1 } else { 0 };
            assert_eq!(total, expect, "n = {n}");
        }
    }
}
