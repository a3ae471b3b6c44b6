//! The Schubert cell of polynomial subspaces with prescribed degrees, in
//! affine coordinates: the distinguished basis, the Wronski map and its
//! symbolic chart, Grassmann duality.

mod jacobian;
mod pluecker;
mod rank;

pub use crate::poly::wronskian;
pub use jacobian::jacobian_det;
pub use pluecker::{pluecker, wronski_pluecker, PlueckerVector};
pub use rank::{
    classify_two, partition_from_orders, vanishing_orders, vanishing_partition, DominoKind,
    RankOptions,
};

use crate::combi::Partition;
use crate::mpoly::{Mono, MPoly};
use crate::poly::det::poly_matrix_det;
use crate::poly::UniPoly;
use crate::scalar::{factorial, rat_i, C64, Rat, Scalar};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CellError {
    #[error("coordinate count {got} does not match |lambda| = {want}")]
    CoordCount { got: usize, want: usize },
    #[error("basis does not span a point of the cell: {0}")]
    NotInCell(String),
    #[error("rank decision below tolerance; vanishing orders ambiguous")]
    AmbiguousRank,
    #[error("normalizing Pluecker coordinate vanished (point outside the cell chart)")]
    ZeroNormalizer,
    #[error("expected a double root contact, found vanishing partition {0}")]
    NotADoublePoint(Partition),
}

/// A point of the cell: one scalar per cell of `lambda`, row-reading order.
#[derive(Clone, PartialEq)]
pub struct CellPoint<T: Scalar> {
    pub lambda: Partition,
    pub coords: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for CellPoint<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CellPoint[{:?}; {:?}]", self.lambda, self.coords)
    }
}

impl<T: Scalar> CellPoint<T> {
    pub fn new(lambda: Partition, coords: Vec<T>) -> Result<Self, CellError> {
        if coords.len() != lambda.size() {
            return Err(CellError::CoordCount {
                got: coords.len(),
                want: lambda.size(),
            });
        }
        Ok(CellPoint { lambda, coords })
    }

    pub fn origin(lambda: Partition) -> Self {
        let n = lambda.size();
        CellPoint {
            lambda,
            coords: vec![T::zero(); n],
        }
    }

    /// Coordinate at the cell `(i, j)` (1-indexed).
    pub fn coord(&self, cell: (usize, usize)) -> &T {
        let idx = self
            .lambda
            .cells()
            .iter()
            .position(|&c| c == cell)
            .expect("cell inside the shape");
        &self.coords[idx]
    }

    pub fn to_c64(&self) -> CellPoint<C64> {
        CellPoint {
            lambda: self.lambda.clone(),
            coords: self.coords.iter().map(|c| c.to_c64()).collect(),
        }
    }

    /// Transposed coordinates on the conjugate shape.
    pub fn dualize(&self) -> CellPoint<T> {
        let dual = self.lambda.conjugate();
        let cells = self.lambda.cells();
        let mut map: HashMap<(usize, usize), T> = HashMap::new();
        for (cell, value) in cells.iter().zip(&self.coords) {
            map.insert((cell.1, cell.0), value.clone());
        }
        let coords = dual.cells().iter().map(|c| map[c].clone()).collect();
        CellPoint {
            lambda: dual,
            coords,
        }
    }

    /// Maximum coordinate magnitude (1 floor).
    pub fn scale(&self) -> f64 {
        self.coords
            .iter()
            .map(|c| c.approx_mag())
            .fold(1.0, f64::max)
    }
}

/// Distance between two points of the same cell, as max coordinate distance.
pub fn point_distance(a: &CellPoint<C64>, b: &CellPoint<C64>) -> f64 {
    a.coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| (*x - *y).norm())
        .fold(0.0, f64::max)
}

/// Precomputed data for one shape: the affine basis monomials and the
/// Wronski map expanded symbolically in the cell coordinates.
pub struct Chart {
    pub lambda: Partition,
    pub d: usize,
    pub n: usize,
    /// Cells in row-reading order; the coordinate index of `cells[k]` is `k`.
    pub cells: Vec<(usize, usize)>,
    /// Leading exponents `e_i = lambda_i + d - i`, one per row.
    pub lead_exp: Vec<usize>,
    /// Per cell: exponent `j - conj(lambda)_j + d - 1` and sign.
    pub cell_exp: Vec<usize>,
    pub cell_sign: Vec<i64>,
    /// Coefficient `l` of the monic Wronskian as a polynomial in the cell
    /// coordinates, `l = 0..n-1` (the `z^n` coefficient is 1).
    pub sym_coeffs: Vec<MPoly>,
    /// `jac[l][c] = d(sym_coeffs[l]) / d(x_c)`.
    pub jac: Vec<Vec<MPoly>>,
}

impl Chart {
    pub fn new(lambda: &Partition) -> Arc<Chart> {
        {
            let cache = CHART_CACHE.read().unwrap();
            if let Some(map) = cache.as_ref() {
                if let Some(chart) = map.get(lambda) {
                    return chart.clone();
                }
            }
        }
        let chart = Arc::new(Chart::build(lambda));
        CHART_CACHE
            .write()
            .unwrap()
            .get_or_insert_with(HashMap::new)
            .insert(lambda.clone(), chart.clone());
        chart
    }

    fn build(lambda: &Partition) -> Chart {
        let d = lambda.rows();
        let n = lambda.size();
        let conj = lambda.conjugate();
        let cells = lambda.cells();
        let lead_exp: Vec<usize> = (1..=d).map(|i| lambda.part(i) + d - i).collect();
        let mut cell_exp = Vec::with_capacity(n);
        let mut cell_sign = Vec::with_capacity(n);
        for &(i, j) in &cells {
            cell_exp.push(j + d - 1 - conj.part(j));
            cell_sign.push(if (i + conj.part(j)).is_multiple_of(2) { 1 } else { -1 });
        }

        // Monomial summands of each basis row: index 0 is the leading term.
        let row_options: Vec<Vec<(Option<usize>, UniPoly<Rat>)>> = (1..=d)
            .map(|i| {
                let mut opts = vec![(
                    None,
                    UniPoly::monomial(lead_exp[i - 1], rat_i(1) / factorial(lead_exp[i - 1])),
                )];
                for (k, &(ci, _)) in cells.iter().enumerate() {
                    if ci == i {
                        let c = Rat::from_i64(cell_sign[k]) / factorial(cell_exp[k]);
                        opts.push((Some(k), UniPoly::monomial(cell_exp[k], c)));
                    }
                }
                opts
            })
            .collect();

        // Expand the Wronskian determinant over all monomial choices; it is
        // multilinear in the rows, so each choice contributes the constant
        // Wronskian of plain monomials times the product of chosen
        // coordinates.
        let mut sym: Vec<MPoly> = (0..=n).map(|_| MPoly::zero(n)).collect();
        let mut choice = vec![0usize; d];
        loop {
            let mut mono = Mono::unit(n);
            let mut rows: Vec<Vec<UniPoly<Rat>>> = Vec::with_capacity(d);
            for i in 0..d {
                let (var, poly) = &row_options[i][choice[i]];
                if let Some(k) = var {
                    mono.0[*k] += 1;
                }
                let mut row = Vec::with_capacity(d);
                let mut der = poly.clone();
                for _ in 0..d {
                    row.push(der.clone());
                    der = der.derivative();
                }
                rows.push(row);
            }
            let det = poly_matrix_det(&rows);
            for l in 0..=n {
                let c = det.coeff(l);
                if !c.is_zero() {
                    sym[l] = sym[l].add(&MPoly {
                        nvars: n,
                        terms: vec![(mono.clone(), c)],
                    });
                }
            }
            // Advance the mixed-radix choice counter.
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < row_options[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }

        // The z^n coefficient is a nonzero constant; normalize to monic.
        let lead = sym[n].clone();
        assert!(
            lead.terms.len() == 1 && lead.terms[0].0.is_unit(),
            "leading Wronskian coefficient must be constant on the cell"
        );
        let lead_inv = rat_i(1) / lead.terms[0].1.clone();
        let sym_coeffs: Vec<MPoly> = sym[..n].iter().map(|p| p.scale(&lead_inv)).collect();
        let jac: Vec<Vec<MPoly>> = sym_coeffs
            .iter()
            .map(|p| (0..n).map(|c| p.derivative(c)).collect())
            .collect();
        Chart {
            lambda: lambda.clone(),
            d,
            n,
            cells,
            lead_exp,
            cell_exp,
            cell_sign,
            sym_coeffs,
            jac,
        }
    }

    /// The distinguished basis realizing the affine coordinates.
    pub fn basis_polys<T: Scalar>(&self, x: &CellPoint<T>) -> Vec<UniPoly<T>> {
        assert_eq!(x.lambda, self.lambda);
        (1..=self.d)
            .map(|i| {
                let e = self.lead_exp[i - 1];
                let mut f = UniPoly::monomial(e, T::from_rat(&(rat_i(1) / factorial(e))));
                for (k, &(ci, _)) in self.cells.iter().enumerate() {
                    if ci == i {
                        let c = Rat::from_i64(self.cell_sign[k]) / factorial(self.cell_exp[k]);
                        let term =
                            UniPoly::monomial(self.cell_exp[k], T::from_rat(&c))
                                .scale(&x.coords[k]);
                        f = f.add(&term);
                    }
                }
                f
            })
            .collect()
    }

    /// Monic Wronskian through the symbolic chart.
    pub fn wronski<T: Scalar>(&self, x: &CellPoint<T>) -> UniPoly<T> {
        assert_eq!(x.lambda, self.lambda);
        let mut coeffs: Vec<T> = self
            .sym_coeffs
            .iter()
            .map(|p| p.eval(&x.coords))
            .collect();
        coeffs.push(T::one());
        UniPoly::new(coeffs)
    }

    /// Jacobian matrix `[d coeff_l / d x_c]` of the monic Wronskian.
    pub fn jacobian_matrix<T: Scalar>(&self, x: &CellPoint<T>) -> Vec<Vec<T>> {
        self.jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&x.coords)).collect())
            .collect()
    }

    /// Recover affine coordinates from an arbitrary basis of a subspace.
    ///
    /// Runs a reduced echelon pass pivoting on the leading exponents; fails
    /// when the degree profile does not match the shape.
    pub fn from_basis<T: Scalar>(
        &self,
        polys: &[UniPoly<T>],
        pivot_tol: f64,
    ) -> Result<CellPoint<T>, CellError> {
        if polys.len() != self.d {
            return Err(CellError::NotInCell(format!(
                "need {} basis polynomials, got {}",
                self.d,
                polys.len()
            )));
        }
        let width = self.lead_exp[0] + 1;
        let mut rows: Vec<Vec<T>> = polys
            .iter()
            .map(|p| {
                let mut row: Vec<T> = (0..width).map(|k| p.coeff(k)).collect();
                if p.degree().is_some_and(|dg| dg >= width) {
                    row.clear();
                }
                row
            })
            .collect();
        if rows.iter().any(|r| r.is_empty()) {
            return Err(CellError::NotInCell("degree exceeds the shape".into()));
        }
        for (i, &e) in self.lead_exp.iter().enumerate() {
            // Pivot on z^e among rows i..d.
            let scale: f64 = rows[i..]
                .iter()
                .flat_map(|r| r.iter().map(|c| c.approx_mag()))
                .fold(1e-300, f64::max);
            let (best, mag) = (i..self.d)
                .map(|r| (r, rows[r][e].approx_mag()))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap();
            let bad = if T::is_exact() {
                rows[best][e].is_zero()
            } else {
                mag <= pivot_tol * scale
            };
            if bad {
                return Err(CellError::NotInCell(format!(
                    "no pivot at degree {e} (row {i})"
                )));
            }
            rows.swap(i, best);
            let target = T::from_rat(&(rat_i(1) / factorial(e)));
            let factor = target / rows[i][e].clone();
            for c in &mut rows[i] {
                *c = c.clone() * factor.clone();
            }
            for r in 0..self.d {
                if r != i && !rows[r][e].is_zero() {
                    let f = rows[r][e].clone() * T::from_rat(&factorial(e));
                    for k in 0..width {
                        rows[r][k] = rows[r][k].clone() - f.clone() * rows[i][k].clone();
                    }
                }
            }
        }
        // Read the coordinates off the reduced rows.
        let mut coords = vec![T::zero(); self.n];
        for (k, &(i, _)) in self.cells.iter().enumerate() {
            let c = rows[i - 1][self.cell_exp[k]].clone();
            coords[k] = c * T::from_rat(&(Rat::from_i64(self.cell_sign[k]) * factorial(self.cell_exp[k])));
        }
        let point = CellPoint {
            lambda: self.lambda.clone(),
            coords,
        };
        // Junk check: rebuilt rows must match what we reduced to.
        if !T::is_exact() {
            let rebuilt = self.basis_polys(&point);
            for (i, f) in rebuilt.iter().enumerate() {
                let norm: f64 = rows[i].iter().map(|c| c.approx_mag()).fold(1e-300, f64::max);
                for k in 0..width {
                    let diff = (f.coeff(k) - rows[i][k].clone()).approx_mag();
                    if diff > 1e-6 * norm.max(1.0) {
                        return Err(CellError::NotInCell(format!(
                            "residual coefficient {diff:.2e} at degree {k} of row {i}"
                        )));
                    }
                }
            }
        } else {
            let rebuilt = self.basis_polys(&point);
            for (i, f) in rebuilt.iter().enumerate() {
                for k in 0..width {
                    if f.coeff(k) != rows[i][k] {
                        return Err(CellError::NotInCell(format!(
                            "exact residual at degree {k} of row {i}"
                        )));
                    }
                }
            }
        }
        Ok(point)
    }
}

static CHART_CACHE: RwLock<Option<HashMap<Partition, Arc<Chart>>>> = RwLock::new(None);

/// Monic Wronskian of a point, exact over rationals (affine-coordinate route).
pub fn wronski_affine<T: Scalar>(x: &CellPoint<T>) -> UniPoly<T> {
    Chart::new(&x.lambda).wronski(x)
}

/// The distinguished basis of a point.
pub fn basis_polys<T: Scalar>(x: &CellPoint<T>) -> Vec<UniPoly<T>> {
    Chart::new(&x.lambda).basis_polys(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i};

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn point(parts: &[usize], coords: &[Rat]) -> CellPoint<Rat> {
        CellPoint::new(lam(parts), coords.to_vec()).unwrap()
    }

    #[test]
    fn wronskian_elementary_cases() {
        // Single polynomial: Wr(f) = f.
        let f = UniPoly::new(vec![rat_i(2), rat_i(0), rat_i(1)]);
        assert_eq!(wronskian(&[f.clone()]), f);
        // Wr(f1, f2) = f1 f2' - f1' f2.
        let f1 = UniPoly::new(vec![rat_i(1), rat_i(3), rat_i(1)]);
        let f2 = UniPoly::new(vec![rat_i(-2), rat_i(1)]);
        let hand = f1.mul(&f2.derivative()).sub(&f1.derivative().mul(&f2));
        assert_eq!(wronskian(&[f1, f2]), hand);
        // Wr(1, z, z^2) = 2.
        let w = wronskian(&[
            UniPoly::one(),
            UniPoly::monomial(1, rat_i(1)),
            UniPoly::monomial(2, rat_i(1)),
        ]);
        assert_eq!(w, UniPoly::constant(rat_i(2)));
    }

    #[test]
    fn basis_for_532_matches_display() {
        // The worked example: signs and powers of the three-row basis.
        let shape = lam(&[5, 3, 2]);
        let chart = Chart::new(&shape);
        // Row 1 signs on x11..x15: +, +, -, +, +; exponents 0,1,3,5,6.
        let row1: Vec<(usize, i64)> = chart
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 == 1)
            .map(|(k, _)| (chart.cell_exp[k], chart.cell_sign[k]))
            .collect();
        assert_eq!(row1, vec![(0, 1), (1, 1), (3, -1), (5, 1), (6, 1)]);
        // Row 2: -, -, +; exponents 0,1,3; leading z^4/4!.
        let row2: Vec<(usize, i64)> = chart
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 == 2)
            .map(|(k, _)| (chart.cell_exp[k], chart.cell_sign[k]))
            .collect();
        assert_eq!(row2, vec![(0, -1), (1, -1), (3, 1)]);
        assert_eq!(chart.lead_exp, vec![7, 4, 2]);
        // Row 3: +, +; exponents 0,1.
        let row3: Vec<(usize, i64)> = chart
            .cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 == 3)
            .map(|(k, _)| (chart.cell_exp[k], chart.cell_sign[k]))
            .collect();
        assert_eq!(row3, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn tiny_shapes_instantiate_the_formula() {
        // lambda = (1): f1 = z + x11, Wronskian z + x11.
        let x = point(&[1], &[rat_i(5)]);
        let fs = basis_polys(&x);
        assert_eq!(fs[0], UniPoly::new(vec![rat_i(5), rat_i(1)]));
        assert_eq!(wronski_affine(&x), UniPoly::new(vec![rat_i(5), rat_i(1)]));

        // lambda = (2): f1 = z^2/2 + x12 z + x11; Wr = z^2 + 2 x12 z + 2 x11.
        let x = point(&[2], &[rat_i(3), rat_i(7)]);
        let fs = basis_polys(&x);
        assert_eq!(
            fs[0],
            UniPoly::new(vec![rat_i(3), rat_i(7), rat(1, 2)])
        );
        assert_eq!(
            wronski_affine(&x),
            UniPoly::new(vec![rat_i(6), rat_i(14), rat_i(1)])
        );
    }

    #[test]
    fn origin_maps_to_z_pow_n() {
        for parts in [vec![2usize, 1], vec![3, 2], vec![2, 2, 1]] {
            let shape = lam(&parts);
            let n = shape.size();
            let x = CellPoint::<Rat>::origin(shape);
            assert_eq!(wronski_affine(&x), UniPoly::monomial(n, rat_i(1)));
        }
    }

    #[test]
    fn chart_agrees_with_direct_determinant() {
        let x = point(&[2, 1], &[rat(1, 2), rat(-2, 3), rat(3, 5)]);
        let via_chart = wronski_affine(&x);
        let direct = wronskian(&basis_polys(&x)).monic();
        assert_eq!(via_chart, direct);
    }

    #[test]
    fn dualize_is_an_involution_and_transposes() {
        let x = point(&[2, 1], &[rat_i(1), rat_i(2), rat_i(3)]);
        let y = x.dualize();
        // (2,1) is self-conjugate: coords (x11, x12, x21) -> (x11, x21, x12).
        assert_eq!(y.coords, vec![rat_i(1), rat_i(3), rat_i(2)]);
        assert_eq!(y.dualize(), x);
    }

    #[test]
    fn from_basis_round_trips() {
        let x = point(&[3, 1], &[rat(1, 3), rat_i(-2), rat(5, 7), rat_i(4)]);
        let fs = basis_polys(&x);
        let chart = Chart::new(&x.lambda);
        let back = chart.from_basis(&fs, 1e-10).unwrap();
        assert_eq!(back, x);
        // Mixing the basis by invertible operations keeps the point.
        let mixed = vec![
            fs[0].add(&fs[1].scale(&rat_i(3))),
            fs[1].scale(&rat(2, 5)),
        ];
        let back = chart.from_basis(&mixed, 1e-10).unwrap();
        assert_eq!(back, x);
    }
}
