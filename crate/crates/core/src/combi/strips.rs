//! Border strips and the Murnaghan–Nakayama tableau filter.

use super::{CombiError, Composition, Partition, Tableau};

/// All ways to remove a border strip of `size` cells from `lambda`.
///
/// A border strip is a connected skew shape with no 2x2 square. Returns the
/// remaining partition together with the number of rows the strip spans
/// (its height plus one).
pub fn removable_border_strips(lambda: &Partition, size: usize) -> Vec<(Partition, usize)> {
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    let d = lambda.rows();
    for r2 in 1..=d {
        for r1 in 1..=r2 {
            // Strip occupies rows r1..=r2; in rows r1..r2 it spans columns
            // lambda_{i+1}..lambda_i, and in row r2 the last `rest` columns.
            let upper: usize = (r1..r2)
                .map(|i| lambda.part(i) - lambda.part(i + 1) + 1)
                .sum();
            if upper >= size && r1 < r2 {
                continue;
            }
            let rest = size - upper;
            if rest == 0 || rest > lambda.part(r2) {
                continue;
            }
            let start_col = lambda.part(r2) + 1 - rest;
            if start_col <= lambda.part(r2 + 1) {
                continue;
            }
            let mut parts: Vec<usize> = lambda.parts().to_vec();
            for i in r1..r2 {
                parts[i - 1] = lambda.part(i + 1).saturating_sub(1);
            }
            parts[r2 - 1] = start_col - 1;
            // Rows r1..r2 get lambda_{i+1} - 1, which needs lambda_{i+1} >= 1.
            if (r1..r2).any(|i| lambda.part(i + 1) == 0) {
                continue;
            }
            let kappa = Partition::new(parts.clone());
            // Re-check monotonicity before the sort inside Partition::new
            // erased any violation.
            if parts.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            debug_assert_eq!(kappa.size() + size, lambda.size());
            out.push((kappa, r2 - r1 + 1));
        }
    }
    out
}

/// Murnaghan–Nakayama tableaux of shape `lambda`, content `mu`, with signs.
///
/// Enumerated by recursively peeling the border strip of the largest entry.
/// Supports arbitrary strip sizes; for {1,2} contents the sign reduces to
/// `(-1)^{#vdominoes}`.
pub fn mn_filter(
    lambda: &Partition,
    mu: &Composition,
) -> Result<Vec<(Tableau, i64)>, CombiError> {
    if lambda.size() != mu.size() {
        return Err(CombiError::SizeMismatch {
            mu: mu.size(),
            lambda: lambda.size(),
        });
    }
    let mut out = Vec::new();
    let mut suffix: Vec<(Partition, i64)> = Vec::new();
    fn peel(
        shape: &Partition,
        mu: &[usize],
        suffix: &mut Vec<(Partition, i64)>,
        out: &mut Vec<(Tableau, i64)>,
    ) {
        let Some((&last, head)) = mu.split_last() else {
            debug_assert_eq!(shape.size(), 0);
            let mut chain: Vec<Partition> = Vec::new();
            let mut sign = 1i64;
            for (p, s) in suffix.iter().rev() {
                chain.push(p.clone());
                sign *= s;
            }
            // The chain was collected outer-to-inner; the tableau wants the
            // prefixes. `chain` currently holds shapes after each peel from
            // the inside out, which are exactly shape(T|<=b) for b = 1..k.
            out.push((Tableau::from_chain(chain), sign));
            return;
        };
        for (kappa, rows) in removable_border_strips(shape, last) {
            let sign = if (rows - 1) % 2 == 0 { 1 } else { -1 };
            suffix.push((shape.clone(), sign));
            peel(&kappa, head, suffix, out);
            suffix.pop();
        }
    }
    peel(lambda, mu.parts(), &mut suffix, &mut out);
    out.sort_by_cached_key(|(t, _)| t.reading_word());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::{domino_stats, enumerate_tab};

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn border_strips_of_a_hook() {
        // Whole (2,1) is a border strip of size 3 spanning 2 rows.
        let strips = removable_border_strips(&lam(&[2, 1]), 3);
        assert_eq!(strips, vec![(Partition::empty(), 2)]);
        // No 2-strip is removable: {(1,2),(2,1)} is disconnected and both
        // 2-cell rim pieces leave a non-partition.
        assert!(removable_border_strips(&lam(&[2, 1]), 2).is_empty());
        // 1-strips are the corners.
        let strips = removable_border_strips(&lam(&[2, 1]), 1);
        assert_eq!(strips.len(), 2);
        assert!(strips.contains(&(lam(&[1, 1]), 1)));
        assert!(strips.contains(&(lam(&[2]), 1)));
        // (3,2): the unique 4-strip is rows 1-2 hugging the rim.
        let strips = removable_border_strips(&lam(&[3, 2]), 4);
        assert_eq!(strips, vec![(lam(&[1]), 2)]);
    }

    #[test]
    fn mn_tableaux_and_signs_for_21() {
        // mu = (2,1): the hdomino and vdomino fillings with opposite signs.
        let ts = mn_filter(&lam(&[2, 1]), &Composition::new(vec![2, 1])).unwrap();
        assert_eq!(ts.len(), 2);
        let signed: Vec<(Vec<Vec<usize>>, i64)> =
            ts.iter().map(|(t, s)| (t.rows(), *s)).collect();
        assert!(signed.contains(&(vec![vec![1, 1], vec![2]], 1)));
        assert!(signed.contains(&(vec![vec![1, 2], vec![1]], -1)));

        // mu = (1,2): no MN filling at all.
        let ts = mn_filter(&lam(&[2, 1]), &Composition::new(vec![1, 2])).unwrap();
        assert!(ts.is_empty());

        // mu = (3): the whole hook is one strip over 2 rows, sign -1.
        let ts = mn_filter(&lam(&[2, 1]), &Composition::new(vec![3])).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].1, -1);
    }

    #[test]
    fn mn_subset_of_tab_is_twoskew_free() {
        for n in 1..=6 {
            for shape in crate::combi::partitions_of(n) {
                for mu in crate::combi::compositions_12(n) {
                    let mn = mn_filter(&shape, &mu).unwrap();
                    let expected: Vec<Tableau> = enumerate_tab(&shape, &mu)
                        .unwrap()
                        .into_iter()
                        .filter(|t| domino_stats(t).unwrap().twoskews == 0)
                        .collect();
                    let got: Vec<Tableau> = mn.iter().map(|(t, _)| t.clone()).collect();
                    assert_eq!(got, expected, "{shape} {mu}");
                    for (t, sign) in &mn {
                        let stats = domino_stats(t).unwrap();
                        let expect_sign = if stats.vdominoes % 2 == 0 { 1 } else { -1 };
                        assert_eq!(*sign, expect_sign);
                    }
                }
            }
        }
    }
}
