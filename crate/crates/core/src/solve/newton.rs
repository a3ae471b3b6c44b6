//! Newton correction of approximate fibre points.

use super::{fibre_residual, SolveError};
use crate::cell::{CellPoint, Chart};
use crate::poly::UniPoly;
use crate::scalar::C64;

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    /// Relative residual target.
    pub tol: f64,
    pub max_iters: usize,
    /// Relative pivot threshold treated as a singular Jacobian.
    pub singular_tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-12,
            max_iters: 40,
            singular_tol: 1e-13,
        }
    }
}

/// Solve `A x = b` after row/column equilibration; the graded systems of
/// deep ladder targets are badly scaled and raw LU loses too many digits.
pub fn solve_linear_equilibrated(
    mut a: Vec<Vec<C64>>,
    mut b: Vec<C64>,
    singular_tol: f64,
) -> Option<Vec<C64>> {
    let n = a.len();
    for r in 0..n {
        let s = a[r].iter().map(|z| z.norm()).fold(0.0, f64::max);
        if s > 0.0 {
            let inv = 1.0 / s;
            for z in &mut a[r] {
                *z *= inv;
            }
            b[r] *= inv;
        }
    }
    let mut col_scale = vec![1.0f64; n];
    for (c, sc) in col_scale.iter_mut().enumerate() {
        let s = a.iter().map(|row| row[c].norm()).fold(0.0, f64::max);
        if s > 0.0 {
            *sc = 1.0 / s;
            for row in &mut a {
                row[c] *= *sc;
            }
        }
    }
    let y = solve_linear(a, b, singular_tol)?;
    Some(
        y.into_iter()
            .zip(col_scale)
            .map(|(v, s)| v * s)
            .collect(),
    )
}

/// Solve `A x = b` by LU with partial pivoting; `None` when a pivot falls
/// below `singular_tol` relative to the matrix scale.
pub fn solve_linear(
    mut a: Vec<Vec<C64>>,
    mut b: Vec<C64>,
    singular_tol: f64,
) -> Option<Vec<C64>> {
    let n = a.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter().map(|z| z.norm()))
        .fold(1e-300, f64::max);
    for col in 0..n {
        let (pivot, mag) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal))?;
        if mag <= singular_tol * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let s = a[col][k];
                a[r][k] -= f * s;
            }
            let s = b[col];
            b[r] -= f * s;
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for k in r + 1..n {
            acc -= a[r][k] * x[k];
        }
        x[r] = acc / a[r][r];
    }
    Some(x)
}

/// Newton-correct `x0` toward the fibre of `g`; quadratic convergence is
/// monitored and divergence reported.
pub fn newton_polish(
    x0: &CellPoint<C64>,
    g: &UniPoly<C64>,
    opts: &NewtonOptions,
) -> Result<CellPoint<C64>, SolveError> {
    let chart = Chart::new(&x0.lambda);
    let n = chart.n;
    let mut x = x0.clone();
    let mut best = x.clone();
    let mut best_residual = fibre_residual(&x, g);
    let mut worse_steps = 0;
    for _ in 0..opts.max_iters {
        if best_residual <= opts.tol {
            return Ok(best);
        }
        let w = chart.wronski(&x);
        let rhs: Vec<C64> = (0..n).map(|l| w.coeff(l) - g.coeff(l)).collect();
        let jac = chart.jacobian_matrix(&x);
        let Some(delta) = solve_linear_equilibrated(jac, rhs, opts.singular_tol) else {
            return Err(SolveError::SingularJacobian);
        };
        for (c, d) in x.coords.iter_mut().zip(&delta) {
            *c -= *d;
        }
        let residual = fibre_residual(&x, g);
        if residual < best_residual {
            best_residual = residual;
            best = x.clone();
            worse_steps = 0;
        } else {
            worse_steps += 1;
            if worse_steps >= 3 {
                break;
            }
        }
    }
    if best_residual <= opts.tol {
        Ok(best)
    } else {
        Err(SolveError::NewtonDiverged {
            residual: best_residual,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::Partition;
    use crate::poly::RootConfig;
    use crate::scalar::{rat_i, Rat};
    use crate::solve::solve_hook;

    #[test]
    fn fixed_point_and_basin() {
        // g = z^3 - 3z over the hook.
        let g: crate::poly::UniPoly<Rat> =
            crate::poly::UniPoly::new(vec![rat_i(0), rat_i(-3), rat_i(0), rat_i(1)]);
        let g = g.to_c64();
        let report = solve_hook(3, &g, &RootConfig::default()).unwrap();
        let exactish = &report.solutions[0].point;
        // Exact solution stays put.
        let polished = newton_polish(exactish, &g, &NewtonOptions::default()).unwrap();
        assert!(crate::cell::point_distance(&polished, exactish) < 1e-12);
        // A perturbed solution converges back.
        let mut off = exactish.clone();
        off.coords[0] += C64::new(1e-3, 0.0);
        off.coords[2] += C64::new(-2e-3, 1e-3);
        let polished = newton_polish(&off, &g, &NewtonOptions::default()).unwrap();
        assert!(crate::cell::point_distance(&polished, exactish) < 1e-10);
    }

    #[test]
    fn singular_at_a_double_point() {
        // g = z^3 - 3z^2 + 3z has g' = 3(z-1)^2: the fibre point over the
        // double critical point lies on the ramification divisor. Build it
        // exactly: f1 = -z^3/2 + 3z^2/2, f2 = z - 1.
        use crate::cell::Chart;
        let chart = Chart::new(&Partition::new(vec![2, 1]));
        let f1: crate::poly::UniPoly<Rat> =
            crate::poly::UniPoly::new(vec![rat_i(0), rat_i(0), crate::scalar::rat(3, 2), crate::scalar::rat(-1, 2)]);
        let f2 = crate::poly::UniPoly::new(vec![rat_i(-1), rat_i(1)]);
        let x = chart.from_basis(&[f1, f2], 1e-12).unwrap();
        let w = crate::cell::wronski_affine(&x);
        assert_eq!(
            w,
            crate::poly::UniPoly::new(vec![rat_i(0), rat_i(3), rat_i(-3), rat_i(1)])
        );
        assert_eq!(crate::cell::jacobian_det(&x), rat_i(0));
        // Correcting from the ramification point toward a different target
        // hits the vanishing Jacobian immediately.
        let other = crate::poly::UniPoly::monomial(3, rat_i(1)).to_c64();
        let err = newton_polish(&x.to_c64(), &other, &NewtonOptions::default());
        assert!(matches!(err, Err(SolveError::SingularJacobian)), "{err:?}");
    }

    #[test]
    fn linear_solver_smoke() {
        let a = vec![
            vec![C64::new(2.0, 0.0), C64::new(1.0, 0.0)],
            vec![C64::new(1.0, 0.0), C64::new(3.0, 0.0)],
        ];
        let b = vec![C64::new(5.0, 0.0), C64::new(10.0, 0.0)];
        let x = solve_linear(a, b, 1e-14).unwrap();
        assert!((x[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - C64::new(3.0, 0.0)).norm() < 1e-12);
        // Singular matrix.
        let a = vec![
            vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)],
            vec![C64::new(2.0, 0.0), C64::new(4.0, 0.0)],
        ];
        assert!(solve_linear(a, vec![C64::new(1.0, 0.0); 2], 1e-13).is_none());
        let _ = Partition::new(vec![1]);
    }
}
