//! Vanishing-order tests: which Schubert stratum a point meets at a given
//! root, and the two-box classification at a double root contact.

use super::{CellError, CellPoint, Chart};
use crate::combi::Partition;
use crate::poly::UniPoly;
use crate::scalar::{Rat, Scalar};
use serde::Serialize;

#[derive(Debug, Clone, Copy)]
pub struct RankOptions {
    /// An entry is negligible when below `tol * (max magnitude of the
    /// remaining rows)`.
    pub tol: f64,
    /// Entries within this factor of the cutoff flag the result as
    /// ambiguous instead of silently rounding.
    pub guard: f64,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            tol: 1e-6,
            guard: 1e-1,
        }
    }
}

/// The two contact types at a double root: horizontal-domino stratum or
/// vertical-domino stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DominoKind {
    /// Vanishing partition `(2)`.
    H,
    /// Vanishing partition `(1,1)`.
    V,
}

impl DominoKind {
    pub fn flipped(self) -> DominoKind {
        match self {
            DominoKind::H => DominoKind::V,
            DominoKind::V => DominoKind::H,
        }
    }
}

/// Orders of vanishing of the span of `polys` at `z = -a`: the pivot columns
/// of the Taylor coefficient matrix, ascending.
pub fn vanishing_orders<T: Scalar>(
    polys: &[UniPoly<T>],
    a: &T,
    opts: &RankOptions,
) -> Result<Vec<usize>, CellError> {
    if !T::is_exact() {
        // Real floating data goes through exact rational arithmetic: the
        // only noise is then the input error, not elimination roundoff.
        let as_c64: Vec<crate::poly::UniPoly<crate::scalar::C64>> =
            polys.iter().map(|p| p.to_c64()).collect();
        let ac = a.to_c64();
        let all_real = ac.im == 0.0
            && as_c64
                .iter()
                .all(|p| p.coeffs().iter().all(|c| c.im == 0.0));
        if all_real {
            return vanishing_orders_real_noisy(&as_c64, ac.re, opts);
        }
    }
    let d = polys.len();
    let width = polys
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0)
        + 1;
    let shift = a.clone().neg();
    let mut rows: Vec<Vec<T>> = polys
        .iter()
        .map(|f| {
            let s = f.taylor_shift(&shift);
            (0..width).map(|k| s.coeff(k)).collect()
        })
        .collect();

    // Equilibrate rows and columns before floating rank decisions; the
    // ladder targets have entries spanning many orders of magnitude, and
    // pivot-column structure is invariant under diagonal scaling.
    if !T::is_exact() {
        // Column c carries the natural weight |a|^c (substituting
        // z = |a| w balances the ladder scales); the weight must not depend
        // on the data, or pure-noise columns would inflate into fake
        // pivots. Rows are then normalized to unit max.
        let rho = a.approx_mag();
        if rho > 0.0 {
            for r in rows.iter_mut() {
                let mut w = 1.0;
                for c in r.iter_mut() {
                    *c = c.clone() * scale_of::<T>(w);
                    w *= rho;
                }
            }
        }
        for r in &mut rows {
            let m = r.iter().map(|c| c.approx_mag()).fold(0.0, f64::max);
            if m > 0.0 {
                for c in r.iter_mut() {
                    *c = c.clone() * scale_of::<T>(1.0 / m);
                }
            }
        }
    }

    let mut orders = Vec::with_capacity(d);
    let mut row = 0;
    let mut col = 0;
    while row < d && col < width {
        // Compare against the whole remaining submatrix to the right.
        let scale: f64 = rows[row..]
            .iter()
            .map(|r| r[col..].iter().map(|c| c.approx_mag()).fold(0.0, f64::max))
            .fold(1e-300, f64::max);
        let (best, mag) = (row..d)
            .map(|r| (r, rows[r][col].approx_mag()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        let significant = if T::is_exact() {
            !rows[best][col].is_zero()
        } else {
            if mag > opts.tol * scale * opts.guard && mag <= opts.tol * scale / opts.guard {
                return Err(CellError::AmbiguousRank);
            }
            mag > opts.tol * scale
        };
        if significant {
            rows.swap(row, best);
            let pivot = rows[row][col].clone();
            for r in row + 1..d {
                if !rows[r][col].is_zero() {
                    let f = rows[r][col].clone() / pivot.clone();
                    for k in col..width {
                        rows[r][k] = rows[r][k].clone() - f.clone() * rows[row][k].clone();
                    }
                }
            }
            orders.push(col);
            row += 1;
        }
        col += 1;
    }
    if orders.len() != d {
        return Err(CellError::NotInCell(
            "family is linearly dependent at the contact point".into(),
        ));
    }
    Ok(orders)
}

/// An exact scalar carrying the float equilibration factor (only ever
/// instantiated on the floating path).
fn scale_of<T: Scalar>(f: f64) -> T {
    T::from_rat(&Rat::from_float(f).expect("finite equilibration factor"))
}

/// Rank of noisy real data by exact elimination: entries are converted to
/// exact rationals, the shift and all row operations are exact, and only
/// the negligibility decisions use the scaled float magnitudes.
fn vanishing_orders_real_noisy(
    polys: &[UniPoly<crate::scalar::C64>],
    a: f64,
    opts: &RankOptions,
) -> Result<Vec<usize>, CellError> {
    use crate::scalar::rat_to_f64;
    let d = polys.len();
    let width = polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0) + 1;
    let shift = Rat::from_float(-a).ok_or(CellError::AmbiguousRank)?;
    let mut rows: Vec<Vec<Rat>> = polys
        .iter()
        .map(|f| {
            let exact = f.map(|c| Rat::from_float(c.re).expect("finite coefficient"));
            let s = exact.taylor_shift(&shift);
            (0..width).map(|k| s.coeff(k)).collect()
        })
        .collect();
    let rho = a.abs().max(1e-300);
    let col_weight: Vec<f64> = (0..width).map(|c| rho.powi(c as i32)).collect();

    let mut orders = Vec::with_capacity(d);
    let mut row = 0;
    let mut col = 0;
    while row < d && col < width {
        // Normalized decision magnitude: |entry| * rho^c / row scale.
        let row_scale: Vec<f64> = (row..d)
            .map(|r| {
                rows[r]
                    .iter()
                    .enumerate()
                    .map(|(c, e)| rat_to_f64(e).abs() * col_weight[c])
                    .fold(1e-300, f64::max)
            })
            .collect();
        let mag = |r: usize, c: usize| {
            rat_to_f64(&rows[r][c]).abs() * col_weight[c] / row_scale[r - row]
        };
        let scale: f64 = (row..d)
            .map(|r| {
                (col..width)
                    .map(|c| mag(r, c))
                    .fold(0.0, f64::max)
            })
            .fold(1e-300, f64::max);
        let (best, m) = (row..d)
            .map(|r| (r, mag(r, col)))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        if m > opts.tol * scale * opts.guard && m <= opts.tol * scale / opts.guard {
            return Err(CellError::AmbiguousRank);
        }
        if m > opts.tol * scale {
            rows.swap(row, best);
            let pivot = rows[row][col].clone();
            for r in row + 1..d {
                if !Scalar::is_zero(&rows[r][col]) {
                    let f = rows[r][col].clone() / pivot.clone();
                    for k in col..width {
                        rows[r][k] = rows[r][k].clone() - f.clone() * rows[row][k].clone();
                    }
                }
            }
            orders.push(col);
            row += 1;
        }
        col += 1;
    }
    if orders.len() != d {
        return Err(CellError::NotInCell(
            "family is linearly dependent at the contact point".into(),
        ));
    }
    Ok(orders)
}

/// `kappa_{d+1-i} = e_i - (i-1)` for ascending orders `e_1 < ... < e_d`.
pub fn partition_from_orders(orders: &[usize]) -> Partition {
    Partition::new(orders.iter().enumerate().map(|(i, &e)| e - i).collect())
}

/// The partition `kappa` with `x` in the open stratum at `z = -a`; its size
/// equals the multiplicity of `-a` as a root of the Wronskian.
pub fn vanishing_partition<T: Scalar>(
    x: &CellPoint<T>,
    a: &T,
    opts: &RankOptions,
) -> Result<Partition, CellError> {
    let chart = Chart::new(&x.lambda);
    let orders = vanishing_orders(&chart.basis_polys(x), a, opts)?;
    Ok(partition_from_orders(&orders))
}

/// Classify a double-root contact: `x` whose Wronskian has a double root at
/// `-a` lies on the horizontal stratum (vanishing partition `(2)`) or the
/// vertical one (`(1,1)`), never both.
pub fn classify_two<T: Scalar>(
    x: &CellPoint<T>,
    a: &T,
    opts: &RankOptions,
) -> Result<DominoKind, CellError> {
    let kappa = vanishing_partition(x, a, opts)?;
    if kappa.parts() == [2] {
        Ok(DominoKind::H)
    } else if kappa.parts() == [1, 1] {
        Ok(DominoKind::V)
    } else {
        Err(CellError::NotADoublePoint(kappa))
    }
}
