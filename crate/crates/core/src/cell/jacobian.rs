//! Jacobian determinant of the Wronski map in affine coordinates.

use super::{CellPoint, Chart};
use crate::poly::det::determinant;
use crate::scalar::Scalar;

/// Determinant of the matrix of partial derivatives of the non-leading
/// Wronskian coefficients with respect to the cell coordinates in
/// row-reading order. Vanishes exactly on the ramification divisor.
pub fn jacobian_det<T: Scalar>(x: &CellPoint<T>) -> T {
    let chart = Chart::new(&x.lambda);
    determinant(chart.jacobian_matrix(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::Partition;
    use crate::scalar::{rat, rat_i};

    #[test]
    fn identity_chart_for_single_box() {
        // lambda = (1): Wr = z + x11, the Jacobian is the constant 1.
        let x = CellPoint::new(Partition::new(vec![1]), vec![rat(3, 7)]).unwrap();
        assert_eq!(jacobian_det(&x), rat_i(1));
    }

    #[test]
    fn vanishes_at_a_double_fibre_point() {
        // lambda = (2): Wr = z^2 + 2 x12 z + 2 x11; the Jacobian matrix is
        // [[2, 0], [0, 2]], constant 4: never ramified (f^lambda = 1).
        let x = CellPoint::new(Partition::new(vec![2]), vec![rat_i(1), rat_i(1)]).unwrap();
        assert_eq!(jacobian_det(&x), rat_i(4));
    }

    #[test]
    fn hook_jacobian_tracks_second_derivative_sign() {
        // For lambda = (n-1,1) the Jacobian is g''(c) up to one constant of
        // fixed sign per n; checked here by sampling two points on each side.
        // g = z^3 - 3z has critical points at -1 (g'' < 0) and 1 (g'' > 0).
        // The corresponding cell points are recovered from the bases
        // (f1, z - c) with Wr(f1, f2) = g.
        use crate::cell::Chart;
        use crate::poly::UniPoly;
        let chart = Chart::new(&Partition::new(vec![2, 1]));
        // c = 1: f2 = z - 1; f1'' = -g'/(z-c) = -3(z+1); f1 = -z^3/2 - 3z^2/2 + alpha z + beta.
        // Wr(f1, f2) = g fixes beta + alpha = g(1) - p(1) form; solve directly:
        // take f1 = -z^3/2 - 3z^2/2 + beta with Wr = f1 - f1'(z-1).
        // f1' = -3z^2/2 - 3z; f1 - f1'(z-1) = (-z^3/2 - 3z^2/2 + beta)
        //   - (-3z^3/2 - 3z^2 + 3z^2/2 + 3z) = z^3 - 3z + beta; beta = 0.
        let f1 = UniPoly::new(vec![rat_i(0), rat_i(0), rat(-3, 2), rat(-1, 2)]);
        let f2 = UniPoly::new(vec![rat_i(-1), rat_i(1)]);
        let w = crate::cell::wronskian(&[f1.clone(), f2.clone()]).monic();
        assert_eq!(w, UniPoly::new(vec![rat_i(0), rat_i(-3), rat_i(0), rat_i(1)]));
        let x = chart.from_basis(&[f1, f2], 1e-12).unwrap();
        let j_plus = jacobian_det(&x);
        // Mirror point at c = -1 by the sign symmetry z -> -z.
        let f1m = UniPoly::new(vec![rat_i(0), rat_i(0), rat(3, 2), rat(-1, 2)]);
        let f2m = UniPoly::new(vec![rat_i(1), rat_i(1)]);
        let xm = chart.from_basis(&[f1m, f2m], 1e-12).unwrap();
        let j_minus = jacobian_det(&xm);
        // g''(1) = 6 > 0, g''(-1) = -6 < 0: the two Jacobians have opposite
        // signs.
        assert!(crate::scalar::rat_sign(&j_plus) * crate::scalar::rat_sign(&j_minus) == -1);
    }
}
