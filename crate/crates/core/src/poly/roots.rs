//! Simultaneous root finding (Aberth–Ehrlich) with Newton polishing, and
//! classification of real polynomials by root pattern.

use super::UniPoly;
use crate::combi::Partition;
use crate::scalar::{C64, Scalar};
use num_complex::Complex;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy)]
pub struct RootConfig {
    /// Relative backward-error bound required of every polished root.
    pub residual_tol: f64,
    /// A root `z` counts as real when `|Im z| <= realness_tol * (1 + |z|)`.
    pub realness_tol: f64,
    pub max_iters: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            residual_tol: 1e-12,
            realness_tol: 1e-8,
            max_iters: 400,
        }
    }
}

#[derive(Debug, Error)]
pub enum RootError {
    #[error("cannot take roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("root finding did not converge after {iters} iterations (worst residual {residual:.3e})")]
    DidNotConverge { iters: usize, residual: f64 },
}

/// All `deg` roots of `p`, with multiplicity, polished by Newton.
///
/// Accepts any scalar kind; exact input is converted to complex doubles.
/// The output of a real polynomial is exactly conjugate-symmetric.
pub fn roots<T: Scalar>(p: &UniPoly<T>, cfg: &RootConfig) -> Result<Vec<C64>, RootError> {
    let pc = p.to_c64();
    let deg = match pc.degree() {
        None => return Err(RootError::ZeroPolynomial),
        Some(0) => return Err(RootError::ZeroPolynomial),
        Some(d) => d,
    };
    // Exact zero constant coefficients give roots at the origin.
    let mut coeffs = pc.coeffs().to_vec();
    let mut zeros_at_origin = 0;
    while coeffs.first().is_some_and(|c| c.is_zero()) && coeffs.len() > 1 {
        coeffs.remove(0);
        zeros_at_origin += 1;
    }
    let lead = *coeffs.last().unwrap();
    let monic = UniPoly::new(coeffs.iter().map(|c| c / lead).collect());
    let m = monic.degree().unwrap_or(0);

    let mut found = if m == 0 {
        Vec::new()
    } else {
        aberth(&monic, cfg)?
    };
    for r in &mut found {
        newton_polish_root(&monic, r);
    }

    // Backward error check: |p(z)| relative to sum |a_i||z|^i.
    let mut worst = 0.0f64;
    for r in &found {
        worst = worst.max(relative_residual(&monic, *r));
    }
    if worst > cfg.residual_tol {
        return Err(RootError::DidNotConverge {
            iters: cfg.max_iters,
            residual: worst,
        });
    }

    found.extend(std::iter::repeat_n(C64::zero(), zeros_at_origin));
    if pc.is_real_within(0.0) {
        symmetrize(&mut found, cfg.realness_tol);
    }
    found.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    debug_assert_eq!(found.len(), deg);
    Ok(found)
}

fn relative_residual(p: &UniPoly<C64>, z: C64) -> f64 {
    let val = p.eval(&z).norm();
    let mut scale = 0.0;
    let mut zpow = 1.0;
    for c in p.coeffs() {
        scale += c.norm() * zpow;
        zpow *= z.norm();
    }
    val / scale.max(f64::MIN_POSITIVE)
}

/// One Newton pass to machine accuracy (quadratic once in the basin).
fn newton_polish_root(p: &UniPoly<C64>, z: &mut C64) {
    let dp = p.derivative();
    for _ in 0..12 {
        let val = p.eval(z);
        let der = dp.eval(z);
        if der.norm() == 0.0 {
            return;
        }
        let step = val / der;
        *z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            return;
        }
    }
}

/// Aberth–Ehrlich simultaneous iteration on a monic polynomial.
fn aberth(p: &UniPoly<C64>, cfg: &RootConfig) -> Result<Vec<C64>, RootError> {
    let n = p.degree().unwrap();
    let dp = p.derivative();
    let mut z = initial_guesses(p);
    for _ in 0..cfg.max_iters {
        let mut max_rel_step = 0.0f64;
        for k in 0..n {
            let val = p.eval(&z[k]);
            let der = dp.eval(&z[k]);
            let newton = if der.norm() == 0.0 {
                // Nudge off the exact critical point.
                Complex::new(1e-8, 1e-8) * (1.0 + z[k].norm())
            } else {
                val / der
            };
            let mut s = C64::zero();
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        continue;
                    }
                    s += diff.inv();
                }
            }
            let denom = C64::one() - newton * s;
            let step = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            z[k] -= step;
            max_rel_step = max_rel_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_rel_step < 1e-14 {
            return Ok(z);
        }
    }
    // Accept anyway if the backward error is already fine; the caller
    // re-checks after polishing.
    let worst = z
        .iter()
        .map(|r| relative_residual(p, *r))
        .fold(0.0, f64::max);
    if worst < cfg.residual_tol {
        Ok(z)
    } else {
        Err(RootError::DidNotConverge {
            iters: cfg.max_iters,
            residual: worst,
        })
    }
}

/// Starting points from the Newton polygon of the coefficients (Bini's
/// heuristic), which adapts to widely separated root moduli.
fn initial_guesses(p: &UniPoly<C64>) -> Vec<C64> {
    let n = p.degree().unwrap();
    let pts: Vec<(usize, f64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(i, c)| (i, c.norm().ln()))
        .collect();
    // Upper convex hull of (i, ln|a_i|).
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &(x, y) in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 - x1) as f64 * (y - y1) - (x - x1) as f64 * (y2 - y1);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let mut z = Vec::with_capacity(n);
    let golden = 0.618_033_988_749_894_9;
    let mut counter = 0usize;
    for w in hull.windows(2) {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let m = k2 - k1;
        let radius = ((y1 - y2) / m as f64).exp();
        for j in 0..m {
            let angle = 2.0 * std::f64::consts::PI
                * (j as f64 / m as f64 + golden * counter as f64 / n as f64)
                + 0.7;
            z.push(Complex::from_polar(radius, angle));
            counter += 1;
        }
    }
    while z.len() < n {
        z.push(Complex::from_polar(1.0, 0.7 * z.len() as f64));
    }
    z.truncate(n);
    z
}

/// Force exact conjugate symmetry on the root multiset of a real polynomial.
fn symmetrize(roots: &mut [C64], realness_tol: f64) {
    let mut pending: Vec<usize> = Vec::new();
    for (i, r) in roots.iter_mut().enumerate() {
        if r.im.abs() <= realness_tol * (1.0 + r.norm()) {
            r.im = 0.0;
        } else {
            pending.push(i);
        }
    }
    // Pair the remaining roots with their nearest conjugates.
    while pending.len() >= 2 {
        let i = pending[0];
        let target = roots[i].conj();
        let (pos, &j) = pending[1..]
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                (roots[a] - target)
                    .norm()
                    .partial_cmp(&(roots[b] - target).norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        let mean = (roots[i] + roots[j].conj()) / 2.0;
        roots[i] = mean;
        roots[j] = mean.conj();
        pending.remove(pos + 1);
        pending.remove(0);
    }
    // An unpaired leftover can only be a borderline real root.
    if let Some(&i) = pending.first() {
        roots[i].im = 0.0;
    }
}

/// Root pattern of a real polynomial: `n1` distinct real roots and `n2`
/// conjugate pairs, i.e. membership in the stratum labelled by the partition
/// `2^{n2} 1^{n1}`.
#[derive(Debug, Clone, Serialize)]
pub struct RootPattern {
    /// Real roots, ascending.
    pub real_roots: Vec<f64>,
    /// One representative per conjugate pair (positive imaginary part).
    pub pair_roots: Vec<(f64, f64)>,
    /// Set when the classification is unreliable: a non-real root too close
    /// to the real axis, or two real roots too close together.
    pub boundary: bool,
}

impl RootPattern {
    pub fn n1(&self) -> usize {
        self.real_roots.len()
    }

    pub fn n2(&self) -> usize {
        self.pair_roots.len()
    }

    /// The partition `2^{n2} 1^{n1}`, or `None` on the boundary.
    pub fn mu(&self) -> Option<Partition> {
        if self.boundary {
            return None;
        }
        let mut parts = vec![2usize; self.n2()];
        parts.extend(std::iter::repeat_n(1usize, self.n1()));
        Some(Partition::new(parts))
    }
}

/// Classify a real polynomial by its root pattern.
///
/// `tol` is the boundary threshold; realness itself is decided at the finer
/// `RootConfig::realness_tol`.
pub fn classify_pattern<T: Scalar>(
    g: &UniPoly<T>,
    tol: f64,
    cfg: &RootConfig,
) -> Result<RootPattern, RootError> {
    let all = roots(g, cfg)?;
    let mut real_roots = Vec::new();
    let mut pair_roots = Vec::new();
    let mut boundary = false;
    for r in &all {
        if r.im == 0.0 {
            real_roots.push(r.re);
        } else if r.im > 0.0 {
            pair_roots.push((r.re, r.im));
            if r.im.abs() <= tol * (1.0 + r.norm()) {
                boundary = true;
            }
        }
    }
    real_roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in real_roots.windows(2) {
        if (w[1] - w[0]).abs() <= tol * (1.0 + w[0].abs().max(w[1].abs())) {
            boundary = true;
        }
    }
    Ok(RootPattern {
        real_roots,
        pair_roots,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_i, Rat};

    #[test]
    fn simple_quadratic() {
        // z^2 + 1 -> {-i, i}
        let p: UniPoly<Rat> = UniPoly::new(vec![rat_i(1), rat_i(0), rat_i(1)]);
        let rs = roots(&p, &RootConfig::default()).unwrap();
        assert_eq!(rs.len(), 2);
        assert!((rs[0] - C64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((rs[1] - C64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn geometric_ladder_of_real_roots() {
        // (z+1/8)(z+1/4)(z+1/2): the special-fibre shape of root ladders.
        let p = UniPoly::from_roots(&[rat(-1, 8), rat(-1, 4), rat(-1, 2)]);
        let rs = roots(&p, &RootConfig::default()).unwrap();
        let expected = [-0.5, -0.25, -0.125];
        for (r, e) in rs.iter().zip(expected) {
            assert!((r - C64::new(e, 0.0)).norm() < 1e-12, "{r} vs {e}");
        }
        // Deeper ladder with u = 1/2: roots -u, -u^2, ..., -u^8.
        let deep: Vec<Rat> = (1..=8).map(|j| -crate::scalar::rat_pow(&rat(1, 2), j)).collect();
        let p = UniPoly::from_roots(&deep);
        let rs = roots(&p, &RootConfig::default()).unwrap();
        for r in rs {
            let nearest = (1..=8)
                .map(|j| (r + C64::new(0.5f64.powi(j), 0.0)).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-10, "root {r} off the ladder");
        }
    }

    #[test]
    fn planted_random_roots_recovered() {
        // roots ∘ expand round trip at 1e-9, mixing real roots and pairs.
        let planted = [
            C64::new(1.5, 0.0),
            C64::new(-2.0, 0.0),
            C64::new(0.3, 1.2),
            C64::new(0.3, -1.2),
            C64::new(-0.7, 0.4),
            C64::new(-0.7, -0.4),
        ];
        let p = UniPoly::from_roots(&planted);
        let mut rs = roots(&p, &RootConfig::default()).unwrap();
        for target in planted {
            let (k, _) = rs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    (*a - target).norm().partial_cmp(&(*b - target).norm()).unwrap()
                })
                .unwrap();
            assert!((rs[k] - target).norm() < 1e-9);
            rs.remove(k);
        }
    }

    #[test]
    fn pattern_classification() {
        // (z^2 + (3/16)^2)(z + 1/2): one real root, one pair.
        let pair = UniPoly::new(vec![rat(9, 256), rat_i(0), rat_i(1)]);
        let g = pair.mul(&UniPoly::from_roots(&[rat(-1, 2)]));
        let pat = classify_pattern(&g, 1e-6, &RootConfig::default()).unwrap();
        assert!(!pat.boundary);
        assert_eq!((pat.n1(), pat.n2()), (1, 1));
        assert_eq!(pat.mu().unwrap().parts(), &[2, 1]);

        // z(z^2+1)^2 is a genuine pattern point: repeated non-real roots are allowed.
        let i2 = UniPoly::new(vec![rat_i(1), rat_i(0), rat_i(1)]);
        let g = UniPoly::monomial(1, rat_i(1)).mul(&i2).mul(&i2);
        let pat = classify_pattern(&g, 1e-6, &RootConfig::default()).unwrap();
        assert!(!pat.boundary);
        assert_eq!((pat.n1(), pat.n2()), (1, 2));

        // z^3 (z^2+1) has a repeated real root: boundary, no pattern.
        let g = UniPoly::monomial(3, rat_i(1)).mul(&i2);
        let pat = classify_pattern(&g, 1e-6, &RootConfig::default()).unwrap();
        assert!(pat.boundary);
        assert!(pat.mu().is_none());
    }
}
