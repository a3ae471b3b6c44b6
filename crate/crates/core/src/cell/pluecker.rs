//! Pluecker coordinates of a cell point and the Wronski map expressed
//! through them; the independent second route of every Wronskian identity.

use super::{CellError, CellPoint, Chart};
use crate::combi::Partition;
use crate::poly::det::determinant;
use crate::poly::UniPoly;
use crate::scalar::{factorial, Rat, Scalar};
use std::collections::BTreeMap;

/// Normalized Pluecker coordinates: one value per subpartition of the shape,
/// with the top coordinate scaled to 1.
#[derive(Debug, Clone)]
pub struct PlueckerVector<T: Scalar> {
    pub lambda: Partition,
    pub values: BTreeMap<Partition, T>,
}

impl<T: Scalar> PlueckerVector<T> {
    pub fn value(&self, kappa: &Partition) -> T {
        self.values.get(kappa).cloned().unwrap_or_else(T::zero)
    }
}

/// Pluecker coordinates of `x` from the maximal minors of the coefficient
/// matrix `M[i][c] = f_i^{(c)}(0)`, ambient width fixed by the shape.
pub fn pluecker<T: Scalar>(x: &CellPoint<T>) -> Result<PlueckerVector<T>, CellError> {
    let chart = Chart::new(&x.lambda);
    let d = chart.d;
    let m = x.lambda.part(1).max(1);
    let width = d + m;
    let basis = chart.basis_polys(x);
    let matrix: Vec<Vec<T>> = basis
        .iter()
        .map(|f| {
            (0..width)
                .map(|c| f.coeff(c) * T::from_rat(&factorial(c)))
                .collect()
        })
        .collect();

    let minor = |kappa: &Partition| -> T {
        // Columns 1 + kappa_d, 2 + kappa_{d-1}, ..., d + kappa_1 (1-indexed).
        let cols: Vec<usize> = (1..=d).map(|i| i + kappa.part(d + 1 - i) - 1).collect();
        let mat: Vec<Vec<T>> = matrix
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        determinant(mat)
    };

    let top = minor(&x.lambda);
    if top.is_zero() {
        return Err(CellError::ZeroNormalizer);
    }
    let inv = T::one() / top;
    let mut values = BTreeMap::new();
    for kappa in x.lambda.subpartitions() {
        values.insert(kappa.clone(), minor(&kappa) * inv.clone());
    }
    Ok(PlueckerVector {
        lambda: x.lambda.clone(),
        values,
    })
}

/// The Wronski map through Pluecker coordinates:
/// `z^n + (f^lambda / n!)^{-1} sum_kappa f^kappa x_kappa z^l / l!`.
pub fn wronski_pluecker<T: Scalar>(x: &CellPoint<T>) -> Result<UniPoly<T>, CellError> {
    let n = x.lambda.size();
    let pl = pluecker(x)?;
    let f_lambda = Rat::from_integer(x.lambda.syt_count());
    let norm = factorial(n) / f_lambda;
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    for (kappa, value) in &pl.values {
        let l = kappa.size();
        if l == n {
            continue;
        }
        let f_kappa = Rat::from_integer(kappa.syt_count());
        let c = &norm * f_kappa / factorial(l);
        coeffs[l] = coeffs[l].clone() + T::from_rat(&c) * value.clone();
    }
    Ok(UniPoly::new(coeffs))
}
