//! Base paths in the target space: the root-coalescence motion that merges
//! two real ladder roots into a conjugate pair, and the homotopy in the
//! ladder parameter used to match fibres at different epsilon.

use super::SpecialFibreSpec;
use crate::combi::Composition;
use crate::scalar::{rat_to_f64, C64, Rat};
use crate::solve::BasePath;

/// The coalescence motion: starting from the ladder of `nu` (which has two
/// 1-parts at positions `q`, `q+1`), the roots `-eps^c` and `-eps^{c+1}`
/// (with `c = nubar_{q+1}`) move together along the real axis, collide at
/// `t = 1/2` at `-(eps^c + eps^{c+1})/2`, and separate as a conjugate pair
/// on the circle, ending at `-+ i (eps^c + eps^{c+1})/2`. All other roots
/// stay put; the endpoints are the ladders of `nu` and of `nu` with the two
/// parts merged.
pub struct CoalescencePath {
    fixed: Vec<C64>,
    root_low: f64,
    root_high: f64,
    /// `(eps^c + eps^{c+1}) / 2`.
    radius: f64,
}

impl CoalescencePath {
    /// `nu` must have parts 1, 1 at positions `q` and `q + 1` (1-indexed).
    pub fn new(nu: &Composition, q: usize, eps: &Rat) -> Option<CoalescencePath> {
        if q < 1 || q >= nu.len() || nu.parts()[q - 1] != 1 || nu.parts()[q] != 1 {
            return None;
        }
        let spec = SpecialFibreSpec::new(nu.clone(), eps.clone()).ok()?;
        let all = spec.roots();
        // The two moving roots belong to parts q and q+1 of the ladder.
        let c = nu.mu_bar(q + 1);
        let root_high = rat_to_f64(&crate::scalar::rat_pow(eps, c as u32));
        let root_low = rat_to_f64(&crate::scalar::rat_pow(eps, c as u32 + 1));
        let near = |x: f64, target: f64| (x - target).abs() <= 1e-12 * target;
        let fixed: Vec<C64> = all
            .into_iter()
            .filter(|r| {
                r.im != 0.0 || !(near(-r.re, root_high) || near(-r.re, root_low))
            })
            .collect();
        assert_eq!(fixed.len() + 2, nu.size(), "moving roots not identified");
        Some(CoalescencePath {
            fixed,
            root_low,
            root_high,
            radius: (root_high + root_low) / 2.0,
        })
    }

    /// The double-root location at `t = 1/2` (a root of `g_{1/2}`).
    pub fn fold_root(&self) -> C64 {
        C64::new(-self.radius, 0.0)
    }
}

impl BasePath for CoalescencePath {
    fn roots_at(&self, t: f64) -> Vec<C64> {
        let mut out = self.fixed.clone();
        if t <= 0.5 {
            let a_c = (1.0 - t) * self.root_high + t * self.root_low;
            let a_c1 = t * self.root_high + (1.0 - t) * self.root_low;
            out.push(C64::new(-a_c, 0.0));
            out.push(C64::new(-a_c1, 0.0));
        } else {
            let phase = C64::from_polar(self.radius, std::f64::consts::PI * (t - 0.5));
            out.push(-phase);
            out.push(-phase.conj());
        }
        out
    }

    fn discriminant_events(&self) -> Vec<(f64, C64)> {
        vec![(0.5, self.fold_root())]
    }
}

/// Fibre matching homotopy: the ladder of `mu` with the parameter moving
/// from `eps_from` to `eps_to`; no discriminant contact on the way.
pub struct HomotopyInEps {
    pub mu: Composition,
    pub eps_from: f64,
    pub eps_to: f64,
}

impl BasePath for HomotopyInEps {
    fn roots_at(&self, t: f64) -> Vec<C64> {
        let e = self.eps_from + (self.eps_to - self.eps_from) * t;
        let mut out = Vec::with_capacity(self.mu.size());
        for (b0, &part) in self.mu.parts().iter().enumerate() {
            let bar = self.mu.mu_bar(b0 + 1) as i32;
            match part {
                1 => out.push(C64::new(-e.powi(bar), 0.0)),
                2 => {
                    let r = (e.powi(bar) + e.powi(bar + 1)) / 2.0;
                    out.push(C64::new(0.0, r));
                    out.push(C64::new(0.0, -r));
                }
                _ => unreachable!("restricted composition"),
            }
        }
        out
    }

    fn discriminant_events(&self) -> Vec<(f64, C64)> {
        Vec::new()
    }
}

/// Order in which the 2-parts of the target composition are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeOrder {
    LastToFirst,
    FirstToLast,
}

/// One coalescence step: the composition before the merge and the position
/// `q` of the two 1-parts being joined.
#[derive(Debug, Clone)]
pub struct MergeStep {
    pub before: Composition,
    pub after: Composition,
    /// 1-indexed position in `before` of the first merged part.
    pub q: usize,
}

/// The sequence of coalescence steps from `1^n` to `mu`.
pub fn merge_sequence(mu: &Composition, order: MergeOrder) -> Vec<MergeStep> {
    assert!(mu.is_restricted());
    // Working list: (original part index, current size).
    let mut work: Vec<(usize, usize)> = Vec::new();
    for (i, &part) in mu.parts().iter().enumerate() {
        for _ in 0..part {
            work.push((i, 1));
        }
    }
    let mut positions: Vec<usize> = mu
        .parts()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == 2)
        .map(|(i, _)| i)
        .collect();
    if order == MergeOrder::LastToFirst {
        positions.reverse();
    }
    let mut steps = Vec::new();
    for target in positions {
        let before = Composition::new(work.iter().map(|&(_, s)| s).collect());
        let q = work
            .iter()
            .position(|&(i, s)| i == target && s == 1)
            .expect("unmerged pair present")
            + 1;
        debug_assert_eq!(work[q], (target, 1));
        work[q - 1] = (target, 2);
        work.remove(q);
        let after = Composition::new(work.iter().map(|&(_, s)| s).collect());
        steps.push(MergeStep { before, after, q });
    }
    if let Some(last) = steps.last() {
        assert_eq!(last.after.parts(), mu.parts());
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn path_endpoints_are_ladders() {
        // nu = (1,1,1), q = 1: path from h_{1^3} to h_{21}.
        let eps = rat(1, 2);
        let path = CoalescencePath::new(&comp(&[1, 1, 1]), 1, &eps).unwrap();
        let start = crate::poly::UniPoly::from_roots(&path.roots_at(0.0));
        let expect0 = super::super::h_mu(&comp(&[1, 1, 1]), &eps).unwrap().to_c64();
        for k in 0..=3 {
            assert!((start.coeff(k) - expect0.coeff(k)).norm() < 1e-15);
        }
        let end = crate::poly::UniPoly::from_roots(&path.roots_at(1.0));
        let expect1 = super::super::h_mu(&comp(&[2, 1]), &eps).unwrap().to_c64();
        for k in 0..=3 {
            assert!((end.coeff(k) - expect1.coeff(k)).norm() < 1e-15, "k={k}");
        }
        // t = 1/2 has the double real root at -(eps^2 + eps^3)/2 = -3/16.
        let mid = path.roots_at(0.5);
        let double: Vec<&C64> = mid
            .iter()
            .filter(|r| (*r - C64::new(-3.0 / 16.0, 0.0)).norm() < 1e-15)
            .collect();
        assert_eq!(double.len(), 2);
        // t = 1: the moving pair sits at +- i 3/16.
        let end_roots = path.roots_at(1.0);
        assert!(end_roots
            .iter()
            .any(|r| (r - C64::new(0.0, 3.0 / 16.0)).norm() < 1e-15));
        assert!(end_roots
            .iter()
            .any(|r| (r - C64::new(0.0, -3.0 / 16.0)).norm() < 1e-15));
    }

    #[test]
    fn merge_sequences_reach_the_target() {
        // mu = (2,1,2): last-to-first merges (4,5) then (1,2).
        let steps = merge_sequence(&comp(&[2, 1, 2]), MergeOrder::LastToFirst);
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].before.parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(steps[0].q, 4);
        assert_eq!(steps[0].after.parts(), &[1, 1, 1, 2]);
        assert_eq!(steps[1].q, 1);
        assert_eq!(steps[1].after.parts(), &[2, 1, 2]);

        let steps = merge_sequence(&comp(&[2, 1, 2]), MergeOrder::FirstToLast);
        assert_eq!(steps[0].q, 1);
        assert_eq!(steps[0].after.parts(), &[2, 1, 1, 1]);
        assert_eq!(steps[1].q, 3);
        assert_eq!(steps[1].after.parts(), &[2, 1, 2]);
    }

    #[test]
    fn chained_steps_share_endpoints() {
        // The end polynomial of each step equals the start of the next.
        let eps = rat(1, 2);
        for order in [MergeOrder::LastToFirst, MergeOrder::FirstToLast] {
            let steps = merge_sequence(&comp(&[2, 2, 1]), order);
            for w in steps.windows(2) {
                let p0 = CoalescencePath::new(&w[0].before, w[0].q, &eps).unwrap();
                let p1 = CoalescencePath::new(&w[1].before, w[1].q, &eps).unwrap();
                let end = crate::poly::UniPoly::from_roots(&p0.roots_at(1.0));
                let start = crate::poly::UniPoly::from_roots(&p1.roots_at(0.0));
                for k in 0..=5 {
                    assert!((end.coeff(k) - start.coeff(k)).norm() < 1e-14);
                }
            }
        }
    }
}
