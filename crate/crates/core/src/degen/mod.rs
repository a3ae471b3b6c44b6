//! Special target fibres with geometrically separated root ladders, tableau
//! labelling by valuation estimation, root-coalescence base paths, and the
//! crossing-sign ledger pipeline.

mod label;
mod paths;
mod signs;

pub use label::{
    choose_epsilon, choose_epsilon_counts, label_fibre, valuations, LabelError, LabelledFibre,
};
pub use paths::{merge_sequence, CoalescencePath, HomotopyInEps, MergeOrder, MergeStep};
pub use signs::{
    ambient_calibration, character_signs, dual_signs_check, DualCheck, MergeRecord, SignError,
    SignOptions, SignPipeline, SwapEdgeRecord,
};

use crate::combi::Composition;
use crate::poly::UniPoly;
use crate::scalar::{rat, rat_i, rat_pow, C64, Rat, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DegenError {
    #[error("composition parts must lie in {{1, 2}}: {0}")]
    NotRestricted(Composition),
    #[error("epsilon must satisfy 0 < eps < 1, got {0}")]
    BadEpsilon(Rat),
    #[error("no epsilon in the dyadic ladder down to 2^-{0} was admissible")]
    EpsilonUnderflow(u32),
}

/// The special target: root data of `h_mu(eps)`.
///
/// Every part of the composition contributes either the real root
/// `-eps^{mubar_b}` or the conjugate pair `+- i (eps^{mubar_b} +
/// eps^{mubar_b + 1}) / 2`.
#[derive(Debug, Clone)]
pub struct SpecialFibreSpec {
    pub mu: Composition,
    pub eps: Rat,
}

impl SpecialFibreSpec {
    pub fn new(mu: Composition, eps: Rat) -> Result<Self, DegenError> {
        if !mu.is_restricted() {
            return Err(DegenError::NotRestricted(mu));
        }
        if eps <= rat_i(0) || eps >= rat_i(1) {
            return Err(DegenError::BadEpsilon(eps));
        }
        Ok(SpecialFibreSpec { mu, eps })
    }

    /// The monic polynomial, exact:
    /// `prod_b (z^{mu_b} + ((eps^{mubar_b} + eps^{mubar_b + mu_b - 1})/2)^{mu_b})`.
    pub fn poly(&self) -> UniPoly<Rat> {
        let mut acc = UniPoly::one();
        for (b0, &part) in self.mu.parts().iter().enumerate() {
            let bar = self.mu.mu_bar(b0 + 1) as u32;
            match part {
                1 => {
                    // z + eps^bar
                    acc = acc.mul(&UniPoly::new(vec![rat_pow(&self.eps, bar), rat_i(1)]));
                }
                2 => {
                    // z^2 + ((eps^bar + eps^{bar+1}) / 2)^2
                    let radius =
                        (rat_pow(&self.eps, bar) + rat_pow(&self.eps, bar + 1)) * rat(1, 2);
                    acc = acc.mul(&UniPoly::new(vec![
                        &radius * &radius,
                        rat_i(0),
                        rat_i(1),
                    ]));
                }
                _ => unreachable!("restricted composition"),
            }
        }
        acc
    }

    /// Complex roots, one entry per degree, exact data rounded to doubles.
    pub fn roots(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.mu.size());
        for (b0, &part) in self.mu.parts().iter().enumerate() {
            let bar = self.mu.mu_bar(b0 + 1) as u32;
            match part {
                1 => out.push(-rat_pow(&self.eps, bar).to_c64()),
                2 => {
                    let r = ((rat_pow(&self.eps, bar) + rat_pow(&self.eps, bar + 1)) * rat(1, 2))
                        .to_c64();
                    out.push(C64::new(0.0, 1.0) * r);
                    out.push(C64::new(0.0, -1.0) * r);
                }
                _ => unreachable!(),
            }
        }
        out
    }
}

/// `h_mu(eps)` as an exact polynomial.
pub fn h_mu(mu: &Composition, eps: &Rat) -> Result<UniPoly<Rat>, DegenError> {
    Ok(SpecialFibreSpec::new(mu.clone(), eps.clone())?.poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::det::discriminant;
    use crate::poly::{classify_pattern, RootConfig};

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn worked_targets_for_the_hook() {
        let eps = rat(1, 2);
        // h_{1^3} = (z+1/8)(z+1/4)(z+1/2).
        let h = h_mu(&comp(&[1, 1, 1]), &eps).unwrap();
        let expect = UniPoly::from_roots(&[rat(-1, 8), rat(-1, 4), rat(-1, 2)]);
        assert_eq!(h, expect);
        // h_{21} = (z^2 + (3/16)^2)(z + 1/2).
        let h = h_mu(&comp(&[2, 1]), &eps).unwrap();
        let expect = UniPoly::new(vec![rat(9, 256), rat_i(0), rat_i(1)])
            .mul(&UniPoly::new(vec![rat(1, 2), rat_i(1)]));
        assert_eq!(h, expect);
        // h_{12} = (z + 1/8)(z^2 + (3/8)^2), the general formula.
        let h = h_mu(&comp(&[1, 2]), &eps).unwrap();
        let expect = UniPoly::new(vec![rat(9, 64), rat_i(0), rat_i(1)])
            .mul(&UniPoly::new(vec![rat(1, 8), rat_i(1)]));
        assert_eq!(h, expect);
    }

    #[test]
    fn exponent_ladder_for_21221() {
        // mu = (2,1,2,2,1): exponents 7,6,4,2,1 on the five factors.
        let eps = rat(1, 2);
        let spec = SpecialFibreSpec::new(comp(&[2, 1, 2, 2, 1]), eps).unwrap();
        let h = spec.poly();
        assert_eq!(h.degree(), Some(8));
        let direct = UniPoly::new(vec![
            {
                let r = (rat_pow(&rat(1, 2), 7) + rat_pow(&rat(1, 2), 8)) * rat(1, 2);
                &r * &r
            },
            rat_i(0),
            rat_i(1),
        ])
        .mul(&UniPoly::new(vec![rat_pow(&rat(1, 2), 6), rat_i(1)]))
        .mul(&UniPoly::new(vec![
            {
                let r = (rat_pow(&rat(1, 2), 4) + rat_pow(&rat(1, 2), 5)) * rat(1, 2);
                &r * &r
            },
            rat_i(0),
            rat_i(1),
        ]))
        .mul(&UniPoly::new(vec![
            {
                let r = (rat_pow(&rat(1, 2), 2) + rat_pow(&rat(1, 2), 3)) * rat(1, 2);
                &r * &r
            },
            rat_i(0),
            rat_i(1),
        ]))
        .mul(&UniPoly::new(vec![rat(1, 2), rat_i(1)]));
        assert_eq!(h, direct);
    }

    #[test]
    fn target_lies_in_its_pattern_stratum() {
        // classify_pattern returns exactly mu, boundary false, and the
        // discriminant is nonzero.
        for parts in [vec![1usize, 1, 1], vec![2, 1], vec![1, 2], vec![2, 2, 1]] {
            let mu = comp(&parts);
            let h = h_mu(&mu, &rat(1, 2)).unwrap();
            assert!(!discriminant(&h).is_zero());
            let pat = classify_pattern(&h, 1e-9, &RootConfig::default()).unwrap();
            assert!(!pat.boundary);
            assert_eq!(pat.n1(), mu.count_ones(), "{mu}");
            assert_eq!(pat.n2(), mu.count_twos(), "{mu}");
        }
    }
}
