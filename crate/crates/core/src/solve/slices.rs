//! Closed-form fibre slices: targets `z^{n-1}(z+a)` and `z^{n-2}(z+a1)(z+a2)`
//! met inside the coordinate subspace where only the cells of `lambda/kappa`
//! are switched on.

use super::SolveError;
use crate::cell::{CellPoint, Chart};
use crate::combi::Partition;
use crate::poly::UniPoly;
use crate::scalar::{rat_i, C64, Rat, Scalar};


/// The unique point over `z^{n-1}(z+a)` in the one-box slice:
/// `x = a f^lambda / (n f^kappa)` at the single cell of `lambda/kappa`.
pub fn solve_slice1(
    lambda: &Partition,
    kappa: &Partition,
    a: &Rat,
) -> Result<CellPoint<Rat>, SolveError> {
    let n = lambda.size();
    if !lambda.contains(kappa) || kappa.size() + 1 != n {
        return Err(SolveError::Numerical(format!(
            "kappa {kappa} is not a one-box subshape of {lambda}"
        )));
    }
    let cell = skew_cells(lambda, kappa)[0];
    let f_lambda = Rat::from_integer(lambda.syt_count());
    let f_kappa = Rat::from_integer(kappa.syt_count());
    let value = a * f_lambda / (rat_i(n as i64) * f_kappa);
    let mut point = CellPoint::<Rat>::origin(lambda.clone());
    let idx = lambda.cells().iter().position(|&c| c == cell).unwrap();
    point.coords[idx] = value;
    Ok(point)
}

/// The two target roots of a two-box slice: both real, or a conjugate pair.
#[derive(Debug, Clone)]
pub enum RootPair {
    Real(Rat, Rat),
    /// `re + i*im` and its conjugate.
    Conjugate { re: Rat, im: Rat },
}

impl RootPair {
    pub fn sum(&self) -> Rat {
        match self {
            RootPair::Real(a, b) => a + b,
            RootPair::Conjugate { re, .. } => re + re,
        }
    }

    pub fn product(&self) -> Rat {
        match self {
            RootPair::Real(a, b) => a * b,
            RootPair::Conjugate { re, im } => re * re + im * im,
        }
    }
}

/// Result of a two-box slice solve.
#[derive(Debug, Clone)]
pub struct Slice2 {
    /// The eliminating polynomial for the first coordinate (degree 2 when
    /// the boxes are distant, degree 1 when adjacent), integer-primitive.
    pub eliminant: UniPoly<Rat>,
    /// Discriminant of the eliminant when quadratic.
    pub discriminant: Option<Rat>,
    /// Points with multiplicity.
    pub points: Vec<(CellPoint<C64>, usize)>,
    /// Taxicab distance between the two boxes.
    pub distance: usize,
}

/// Solve `Wr = z^{n-2}(z+a1)(z+a2)` inside the two-box slice of
/// `lambda/kappa`.
///
/// The Wronskian coefficients restricted to the slice are bilinear in the
/// two active coordinates; they are interpolated exactly from the chart and
/// eliminated by hand, so adjacent (distance 1) and distant boxes come out
/// of one code path.
pub fn solve_slice2(
    lambda: &Partition,
    kappa: &Partition,
    pair: &RootPair,
) -> Result<Slice2, SolveError> {
    let n = lambda.size();
    if !lambda.contains(kappa) || kappa.size() + 2 != n {
        return Err(SolveError::Numerical(format!(
            "kappa {kappa} is not a two-box subshape of {lambda}"
        )));
    }
    let cells = skew_cells(lambda, kappa);
    let [c1, c2] = cells[..] else {
        return Err(SolveError::Numerical("expected two skew cells".into()));
    };
    let distance = crate::combi::cell_distance(c1, c2);
    let chart = Chart::new(lambda);
    let all = lambda.cells();
    let i1 = all.iter().position(|&c| c == c1).unwrap();
    let i2 = all.iter().position(|&c| c == c2).unwrap();

    // Interpolate coeff_{n-1} and coeff_{n-2} on the slice in the bilinear
    // basis {1, u, v, uv} from four exact evaluations.
    let eval_at = |u: i64, v: i64, level: usize| -> Rat {
        let mut coords = vec![rat_i(0); n];
        coords[i1] = rat_i(u);
        coords[i2] = rat_i(v);
        chart.sym_coeffs[level].eval(&coords)
    };
    let bilinear = |level: usize| -> [Rat; 4] {
        let f00 = eval_at(0, 0, level);
        let f10 = eval_at(1, 0, level);
        let f01 = eval_at(0, 1, level);
        let f11 = eval_at(1, 1, level);
        let b = &f10 - &f00;
        let c = &f01 - &f00;
        let d = &f11 - &f10 - &f01 + &f00;
        [f00, b, c, d]
    };
    let [a0, a1c, a2c, a3c] = bilinear(n - 1);
    let [b0, b1c, b2c, b3c] = bilinear(n - 2);

    let s = pair.sum();
    let p = pair.product();

    // E1: a0 + a1 u + a2 v + a3 uv = s  =>  (a2 + a3 u) v = s - a0 - a1 u.
    // E2: b0 + b1 u + b2 v + b3 uv = p.
    // Eliminate v: (b0 + b1 u - p)(a2 + a3 u) + (b2 + b3 u)(s - a0 - a1 u) = 0.
    let u = UniPoly::new(vec![rat_i(0), rat_i(1)]);
    let a_lin = UniPoly::constant(a2c.clone()).add(&u.scale(&a3c));
    let rhs1 = UniPoly::constant(&s - &a0).sub(&u.scale(&a1c));
    let e2_rest = UniPoly::constant(&b0 - &p).add(&u.scale(&b1c));
    let v_coeff = UniPoly::constant(b2c.clone()).add(&u.scale(&b3c));
    let mut elim = e2_rest.mul(&a_lin).add(&v_coeff.mul(&rhs1));
    if a_lin.is_zero() && !rhs1.is_zero() {
        // E1 pins u directly; the v_coeff factor is spurious.
        elim = rhs1.clone();
    }
    if elim.is_zero() {
        return Err(SolveError::Numerical(
            "slice elimination degenerated to the zero polynomial".into(),
        ));
    }
    let mut elim = elim.primitive();
    // A root with a_lin(u) = 0 but rhs1(u) != 0 admits no v; strip it.
    if elim.degree() == Some(2) {
        if let Some(1) = a_lin.degree() {
            let u_star = -a_lin.coeff(0) / a_lin.coeff(1);
            if elim.eval(&u_star).is_zero() && !rhs1.eval(&u_star).is_zero() {
                let (q, r) = elim.divrem(&UniPoly::new(vec![-u_star, rat_i(1)]));
                debug_assert!(r.is_zero());
                elim = q.primitive();
            }
        }
    }
    let elim = elim;

    let discriminant = match elim.degree() {
        Some(2) => {
            let a = elim.coeff(2);
            let b = elim.coeff(1);
            let c = elim.coeff(0);
            Some(&b * &b - rat_i(4) * a * c)
        }
        _ => None,
    };

    // Numeric points: roots of the eliminant, v back-solved from E1 (or E2
    // when E1 degenerates at that root).
    let mut points = Vec::new();
    let uroots: Vec<(C64, usize)> = match elim.degree() {
        Some(1) => vec![(
            (-elim.coeff(0).clone() / elim.coeff(1).clone()).to_c64(),
            1,
        )],
        Some(2) => {
            let disc = discriminant.clone().unwrap();
            if disc.is_zero() {
                let r = -elim.coeff(1).clone() / (rat_i(2) * elim.coeff(2).clone());
                vec![(r.to_c64(), 2)]
            } else {
                let a = elim.coeff(2).to_c64();
                let b = elim.coeff(1).to_c64();
                let dsq = disc.to_c64().sqrt();
                let two = C64::from_i64(2);
                vec![((-b + dsq) / (two * a), 1), ((-b - dsq) / (two * a), 1)]
            }
        }
        _ => {
            return Err(SolveError::Numerical(format!(
                "unexpected slice eliminant degree {:?}",
                elim.degree()
            )))
        }
    };
    for (ur, mult) in uroots {
        let denom = a2c.to_c64() + a3c.to_c64() * ur;
        let v = if denom.norm() > 1e-12 {
            ((&s - &a0).to_c64() - a1c.to_c64() * ur) / denom
        } else {
            let denom2 = b2c.to_c64() + b3c.to_c64() * ur;
            if denom2.norm() <= 1e-12 {
                return Err(SolveError::Numerical(
                    "second coordinate undetermined on the slice".into(),
                ));
            }
            ((&p - &b0).to_c64() - b1c.to_c64() * ur) / denom2
        };
        let mut coords = vec![C64::zero(); n];
        coords[i1] = ur;
        coords[i2] = v;
        points.push((
            CellPoint::new(lambda.clone(), coords).unwrap(),
            mult,
        ));
    }
    Ok(Slice2 {
        eliminant: elim,
        discriminant,
        points,
        distance,
    })
}

/// Cells of `lambda/kappa` in row-reading order.
fn skew_cells(lambda: &Partition, kappa: &Partition) -> Vec<(usize, usize)> {
    lambda
        .cells()
        .into_iter()
        .filter(|&c| !kappa.has_cell(c))
        .collect()
}
