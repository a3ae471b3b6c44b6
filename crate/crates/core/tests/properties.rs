//! Property suites over exact arithmetic: ring axioms, derivative rules,
//! Wronskian multilinearity, discriminant-gcd agreement, and order
//! invariance of the combinatorial side.

use proptest::prelude::*;
use wronski::cell::wronskian;
use wronski::chars::chi;
use wronski::combi::{mn_filter, partitions_of, Composition, Partition};
use wronski::poly::det::discriminant;
use wronski::poly::{roots, RootConfig, UniPoly};
use wronski::scalar::{rat, Rat, Scalar};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = UniPoly<Rat>> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(UniPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in small_poly(4), b in small_poly(4), c in small_poly(3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn derivative_rules(a in small_poly(4), b in small_poly(4)) {
        // Linearity and the Leibniz rule.
        prop_assert_eq!(a.add(&b).derivative(), a.derivative().add(&b.derivative()));
        let left = a.mul(&b).derivative();
        let right = a.derivative().mul(&b).add(&a.mul(&b.derivative()));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn division_invariant(a in small_poly(5), b in small_poly(3)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(a, q.mul(&b).add(&r));
        if let (Some(rd), Some(bd)) = (r.degree(), b.degree()) {
            prop_assert!(rd < bd);
        }
    }

    #[test]
    fn wronskian_row_operations(
        f1 in small_poly(4),
        f2 in small_poly(3),
        m in (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4),
    ) {
        // Wr(A fs) = det(A) Wr(fs) for an integer 2x2 change of basis.
        let (a, b, c, d) = m;
        let det = rat(a * d - b * c, 1);
        let g1 = f1.scale(&rat(a, 1)).add(&f2.scale(&rat(b, 1)));
        let g2 = f1.scale(&rat(c, 1)).add(&f2.scale(&rat(d, 1)));
        let lhs = wronskian(&[g1, g2]);
        let rhs = wronskian(&[f1, f2]).scale(&det);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_iff_repeated_root(
        roots_r in prop::collection::vec(-5i64..=5, 2..=5),
    ) {
        let rs: Vec<Rat> = roots_r.iter().map(|&k| rat(k, 1)).collect();
        let g = UniPoly::from_roots(&rs);
        let has_repeat = {
            let mut sorted = roots_r.clone();
            sorted.sort_unstable();
            sorted.windows(2).any(|w| w[0] == w[1])
        };
        let disc_zero = discriminant(&g) == rat(0, 1);
        let gcd = g.gcd(&g.derivative());
        let gcd_nonconst = gcd.degree().is_some_and(|d| d > 0);
        prop_assert_eq!(disc_zero, has_repeat);
        prop_assert_eq!(gcd_nonconst, has_repeat);
    }

    #[test]
    fn planted_roots_recovered(
        roots_r in prop::collection::vec((-6i64..=6, 1i64..=3), 2..=6),
    ) {
        // Distinct planted rational roots are recovered within 1e-9.
        let mut rs: Vec<Rat> = roots_r.iter().map(|&(p, q)| rat(p, q)).collect();
        rs.sort();
        rs.dedup();
        prop_assume!(rs.len() >= 2);
        let g = UniPoly::from_roots(&rs);
        let found = roots(&g, &RootConfig::default()).unwrap();
        for r in &rs {
            let target = r.to_c64();
            let best = found
                .iter()
                .map(|z| (z - target).norm())
                .fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-9, "missed {target} by {best:e}");
        }
    }

    #[test]
    fn character_is_a_class_function(perm in prop::sample::subsequence(vec![0usize,1,2,3,4], 5)) {
        // Reordering mu never changes chi (exercised over all shapes of 5).
        let mut parts = vec![2usize, 2, 1];
        if perm.len() % 2 == 0 {
            parts.reverse();
        }
        let mu1 = Composition::new(parts.clone());
        let k = 1.min(parts.len() - 1);
        parts.rotate_left(k);
        let mu2 = Composition::new(parts);
        for lambda in partitions_of(5) {
            prop_assert_eq!(chi(&lambda, &mu1).unwrap(), chi(&lambda, &mu2).unwrap());
        }
    }
}

#[test]
fn strip_filter_signs_total_to_chi() {
    // The signed strip-tableau count is the character, everywhere small.
    for n in 1..=6 {
        for lambda in partitions_of(n) {
            for mu in wronski::combi::compositions_12(n) {
                let total: i64 = mn_filter(&lambda, &mu)
                    .unwrap()
                    .iter()
                    .map(|(_, s)| s)
                    .sum();
                assert_eq!(total, chi(&lambda, &mu).unwrap(), "{lambda} {mu}");
            }
        }
    }
}

#[test]
fn conjugation_transports_strip_counts() {
    for n in 1..=6 {
        for lambda in partitions_of(n) {
            assert_eq!(lambda.conjugate().conjugate(), lambda);
            let f = lambda.syt_count();
            assert_eq!(f, lambda.conjugate().syt_count());
            let _ = Partition::parse(&format!("{lambda}")).unwrap();
        }
    }
}
