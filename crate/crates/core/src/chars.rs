//! Symmetric group characters: the Murnaghan–Nakayama recursion as the
//! production path, and a Frobenius-formula expansion as an independent
//! oracle at small sizes.

use crate::combi::{removable_border_strips, CombiError, Composition, Partition};
use std::collections::HashMap;
use std::sync::RwLock;

static CACHE: RwLock<Option<HashMap<(Vec<usize>, Vec<usize>), i64>>> = RwLock::new(None);

/// Exact character value `chi^lambda(mu)` by signed border-strip peeling.
///
/// `mu` may be any composition; the value depends only on its sorted parts,
/// and results are cached per `(lambda, sorted mu)`.
pub fn chi(lambda: &Partition, mu: &Composition) -> Result<i64, CombiError> {
    if lambda.size() != mu.size() {
        return Err(CombiError::SizeMismatch {
            mu: mu.size(),
            lambda: lambda.size(),
        });
    }
    let mut parts = mu.parts().to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(chi_sorted(lambda.parts().to_vec(), parts))
}

fn chi_sorted(lambda: Vec<usize>, mu: Vec<usize>) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(cache) = CACHE.read().unwrap().as_ref() {
        if let Some(&v) = cache.get(&key) {
            return v;
        }
    }
    let shape = Partition::new(lambda);
    let (first, rest) = mu.split_first().unwrap();
    let mut total = 0i64;
    for (kappa, rows) in removable_border_strips(&shape, *first) {
        let sign = if (rows - 1) % 2 == 0 { 1 } else { -1 };
        total += sign * chi_sorted(kappa.parts().to_vec(), rest.to_vec());
    }
    CACHE
        .write()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, total);
    total
}

/// Upper bound accepted by [`chi_oracle`]; the dense expansion grows quickly
/// past this.
pub const ORACLE_MAX_N: usize = 8;

/// Independent verification oracle: `chi^lambda(mu)` as the coefficient of
/// `x^{lambda + delta}` in `p_mu(x) * prod_{i<j}(x_i - x_j)`, expanded with
/// exact integer arithmetic in `d = rows(lambda)` variables.
pub fn chi_oracle(lambda: &Partition, mu: &Composition) -> Result<i64, CombiError> {
    let n = lambda.size();
    if n != mu.size() {
        return Err(CombiError::SizeMismatch {
            mu: mu.size(),
            lambda: lambda.size(),
        });
    }
    if n > ORACLE_MAX_N {
        return Err(CombiError::Invalid(format!(
            "chi_oracle is guarded to n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(1);
    }
    let d = lambda.rows();
    // Target exponent vector lambda + delta, delta = (d-1, ..., 1, 0).
    let target: Vec<u16> = (0..d)
        .map(|i| (lambda.part(i + 1) + d - 1 - i) as u16)
        .collect();

    // Vandermonde expansion: sum over permutations of sgn(w) x_i^{d - w(i)}.
    let mut terms: HashMap<Vec<u16>, i64> = HashMap::new();
    let mut perm: Vec<usize> = (1..=d).collect();
    loop {
        let mono: Vec<u16> = perm.iter().map(|&w| (d - w) as u16).collect();
        if mono.iter().zip(&target).all(|(e, t)| e <= t) {
            *terms.entry(mono).or_insert(0) += perm_sign(&perm);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    // Multiply by each power sum, truncating exponents beyond the target.
    for &part in mu.parts() {
        let mut next: HashMap<Vec<u16>, i64> = HashMap::new();
        for (mono, coeff) in &terms {
            for i in 0..d {
                let mut m = mono.clone();
                m[i] += part as u16;
                if m[i] <= target[i] {
                    *next.entry(m).or_insert(0) += coeff;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        terms = next;
    }
    Ok(terms.get(&target).copied().unwrap_or(0))
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::{compositions_12, partitions_of};
    use num_traits::ToPrimitive;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn hook_character_is_n1_minus_1() {
        for n in 2..=12 {
            let shape = lam(&[n - 1, 1]);
            for n2 in 0..=(n / 2) {
                let n1 = n - 2 * n2;
                if n1 == 0 && n % 2 == 1 {
                    continue;
                }
                let mut parts = vec![2; n2];
                parts.extend(std::iter::repeat_n(1, n1));
                if parts.iter().sum::<usize>() != n {
                    continue;
                }
                let value = chi(&shape, &comp(&parts)).unwrap();
                assert_eq!(value, n1 as i64 - 1, "n = {n}, n2 = {n2}");
            }
        }
    }

    #[test]
    fn known_small_values() {
        assert_eq!(chi(&lam(&[2, 1]), &comp(&[2, 1])).unwrap(), 0);
        assert_eq!(chi(&lam(&[2, 1]), &comp(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(chi(&lam(&[2, 1]), &comp(&[3])).unwrap(), -1);
        // 3^6 with 2^6 1^6: zero (one of the tightness examples).
        let shape = lam(&[3, 3, 3, 3, 3, 3]);
        assert_eq!(chi(&shape, &comp(&[2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn oracle_agrees_with_recursion() {
        for n in 1..=6 {
            for shape in partitions_of(n) {
                for mu in partitions_of(n) {
                    let mu = comp(mu.parts());
                    let a = chi(&shape, &mu).unwrap();
                    let b = chi_oracle(&shape, &mu).unwrap();
                    assert_eq!(a, b, "lambda = {shape}, mu = {mu}");
                }
            }
        }
    }

    #[test]
    fn oracle_specific_values() {
        assert_eq!(chi_oracle(&lam(&[2, 1]), &comp(&[1, 1, 1])).unwrap(), 2);
        // Direct expansion of p_3 (x1 - x2) in two variables gives -1 at
        // the target exponent (3, 1): p_3*x1 - p_3*x2 has x1^3 x2 only from
        // -x2 * x1^3.
        assert_eq!(chi_oracle(&lam(&[2, 1]), &comp(&[3])).unwrap(), -1);
        assert!(chi_oracle(&lam(&[5, 4]), &comp(&[3, 3, 3])).is_err());
    }

    #[test]
    fn chi_at_identity_is_syt_count() {
        for n in 1..=7 {
            for shape in partitions_of(n) {
                let value = chi(&shape, &Composition::ones(n)).unwrap();
                assert_eq!(Some(value), shape.syt_count().to_i64(), "{shape}");
            }
        }
    }

    #[test]
    fn independent_of_part_order() {
        let shape = lam(&[3, 2, 1]);
        let a = chi(&shape, &comp(&[2, 1, 2, 1])).unwrap();
        let b = chi(&shape, &comp(&[1, 1, 2, 2])).unwrap();
        let c = chi(&shape, &comp(&[2, 2, 1, 1])).unwrap();
        assert!(a == b && b == c);
    }

    #[test]
    fn conjugate_duality_sign() {
        for n in 1..=8 {
            for shape in partitions_of(n) {
                for mu in compositions_12(n) {
                    let value = chi(&shape, &mu).unwrap();
                    let dual = chi(&shape.conjugate(), &mu).unwrap();
                    let sign = if mu.count_twos() % 2 == 0 { 1 } else { -1 };
                    assert_eq!(dual, sign * value, "{shape} {mu}");
                }
            }
        }
    }

    #[test]
    fn minimum_absolute_character_for_3x5() {
        let shape = lam(&[3, 3, 3, 3, 3]);
        let mut best = i64::MAX;
        let mut best_n2 = 0;
        for n2 in 0..=7 {
            let n1 = 15 - 2 * n2;
            let mut parts = vec![2; n2];
            parts.extend(std::iter::repeat_n(1, n1));
            let v = chi(&shape, &comp(&parts)).unwrap().abs();
            if v < best {
                best = v;
                best_n2 = n2;
            }
        }
        assert_eq!(best, 6);
        assert_eq!(best_n2, 4); // attained at mu = 2^4 1^7
    }
}
