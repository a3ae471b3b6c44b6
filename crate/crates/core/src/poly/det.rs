//! Determinants, resultants, discriminants.

use super::UniPoly;
use crate::scalar::Scalar;

/// Determinant by Gaussian elimination with magnitude pivoting.
///
/// Exact over rationals; for floating scalars the pivot choice keeps the
/// elimination stable.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| {
                m[a][col]
                    .approx_mag()
                    .partial_cmp(&m[b][col].approx_mag())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if m[pivot][col].is_zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            det = det.neg();
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone() / p.clone();
            let (head, tail) = m.split_at_mut(row);
            let src = &head[col];
            let dst = &mut tail[0];
            for k in col..n {
                dst[k] = dst[k].clone() - factor.clone() * src[k].clone();
            }
        }
    }
    det
}

/// Determinant of a matrix of polynomials, by evaluation at `bound + 1`
/// sample points and Lagrange interpolation.
pub fn poly_matrix_det<T: Scalar>(m: &[Vec<UniPoly<T>>]) -> UniPoly<T> {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    // Degree bound: best possible column sum of row-degree maxima.
    let bound: usize = m
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|p| p.degree())
                .max()
                .unwrap_or(0)
        })
        .sum();
    let samples: Vec<T> = (0..=bound as i64).map(T::from_i64).collect();
    let values: Vec<T> = samples
        .iter()
        .map(|z| {
            determinant(
                m.iter()
                    .map(|row| row.iter().map(|p| p.eval(z)).collect())
                    .collect(),
            )
        })
        .collect();
    lagrange(&samples, &values)
}

/// Interpolating polynomial through `(xs[k], ys[k])`.
pub fn lagrange<T: Scalar>(xs: &[T], ys: &[T]) -> UniPoly<T> {
    let mut acc = UniPoly::zero();
    for (k, y) in ys.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        let mut num = UniPoly::constant(y.clone());
        let mut den = T::one();
        for (j, x) in xs.iter().enumerate() {
            if j != k {
                num = num.mul(&UniPoly::new(vec![x.clone().neg(), T::one()]));
                den = den * (xs[k].clone() - x.clone());
            }
        }
        acc = acc.add(&num.scale(&(T::one() / den)));
    }
    acc
}

/// Resultant of `f` and `g` via the Sylvester matrix.
pub fn resultant<T: Scalar>(f: &UniPoly<T>, g: &UniPoly<T>) -> T {
    let (Some(n), Some(m)) = (f.degree(), g.degree()) else {
        return T::zero();
    };
    if n == 0 && m == 0 {
        return T::one();
    }
    let size = n + m;
    let mut mat = vec![vec![T::zero(); size]; size];
    for row in 0..m {
        for k in 0..=n {
            mat[row][row + k] = f.coeff(n - k);
        }
    }
    for row in 0..n {
        for k in 0..=m {
            mat[m + row][row + k] = g.coeff(m - k);
        }
    }
    determinant(mat)
}

/// Discriminant of `g`: `(-1)^{n(n-1)/2} Res(g, g') / lc(g)`.
///
/// Zero exactly when `g` has a repeated root. Panics on constant input.
pub fn discriminant<T: Scalar>(g: &UniPoly<T>) -> T {
    let n = g
        .degree()
        .expect("discriminant of the zero polynomial is undefined");
    assert!(n >= 1, "discriminant needs degree >= 1");
    if n == 1 {
        return T::one();
    }
    let res = resultant(g, &g.derivative());
    let lead = g.leading().cloned().unwrap();
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
        T::one()
    } else {
        T::one().neg()
    };
    sign * res / lead
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_i, Rat};

    fn p(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn quadratic_discriminant_is_classical() {
        // z^2 + bz + c -> b^2 - 4c
        for (b, c) in [(3i64, 1i64), (0, -4), (-5, 6)] {
            let g = p(&[c, b, 1]);
            assert_eq!(discriminant(&g), rat_i(b * b - 4 * c));
        }
    }

    #[test]
    fn repeated_root_kills_discriminant() {
        // (z-1)^2 (z+2)
        let g = UniPoly::from_roots(&[rat_i(1), rat_i(1), rat_i(-2)]);
        assert_eq!(discriminant(&g), rat_i(0));
        let h = UniPoly::from_roots(&[rat_i(1), rat_i(2), rat_i(-2)]);
        assert!(!discriminant(&h).is_zero());
    }

    #[test]
    fn poly_det_matches_hand_wronskian() {
        // Wr(f1, f2) = f1 f2' - f1' f2 for f1 = z^2, f2 = z + 3.
        let f1 = p(&[0, 0, 1]);
        let f2 = p(&[3, 1]);
        let m = vec![
            vec![f1.clone(), f1.derivative()],
            vec![f2.clone(), f2.derivative()],
        ];
        let det = poly_matrix_det(&m);
        let hand = f1.mul(&f2.derivative()).sub(&f1.derivative().mul(&f2));
        assert_eq!(det, hand);
    }

    #[test]
    fn determinant_zero_for_singular() {
        let m = vec![
            vec![rat_i(1), rat_i(2)],
            vec![rat_i(2), rat_i(4)],
        ];
        assert_eq!(determinant(m), rat_i(0));
    }
}
