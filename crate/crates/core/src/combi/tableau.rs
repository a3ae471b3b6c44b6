//! Weakly increasing tableaux as chains of partitions, and their domino
//! statistics for contents with parts in {1, 2}.

use super::{CombiError, Composition, Partition};
use serde::Serialize;
use std::fmt;

/// A filling of `shape` weakly increasing along rows and columns.
///
/// Stored as the chain `shape(T|<=b)`; the level sets are the skew layers
/// between consecutive chain entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    chain: Vec<Partition>,
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:?}", self.rows())
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(ser)
    }
}

impl Tableau {
    /// Build from the chain `[shape(T|<=1), ..., shape(T|<=k)]`.
    pub fn from_chain(chain: Vec<Partition>) -> Self {
        debug_assert!(chain.windows(2).all(|w| w[1].contains(&w[0])));
        Tableau { chain }
    }

    /// Build from explicit rows of entries.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, CombiError> {
        let max = rows.iter().flatten().copied().max().unwrap_or(0);
        let mut chain = Vec::with_capacity(max);
        for b in 1..=max {
            let parts: Vec<usize> = rows
                .iter()
                .map(|row| row.iter().filter(|&&e| e <= b).count())
                .collect();
            let sorted_ok = parts.windows(2).all(|w| w[0] >= w[1]);
            if !sorted_ok {
                return Err(CombiError::Invalid("rows do not form a tableau".into()));
            }
            chain.push(Partition::new(parts));
        }
        let t = Tableau { chain };
        if t.rows() != rows {
            return Err(CombiError::Invalid("entries not weakly increasing".into()));
        }
        Ok(t)
    }

    pub fn shape(&self) -> Partition {
        self.chain.last().cloned().unwrap_or_else(Partition::empty)
    }

    /// Largest entry.
    pub fn levels(&self) -> usize {
        self.chain.len()
    }

    /// `shape(T|<=b)`; `b = 0` gives the empty partition.
    pub fn shape_upto(&self, b: usize) -> Partition {
        if b == 0 {
            Partition::empty()
        } else {
            self.chain[b - 1].clone()
        }
    }

    /// Cells holding the entry `b`, in row order.
    pub fn level_cells(&self, b: usize) -> Vec<(usize, usize)> {
        let prev = self.shape_upto(b - 1);
        let next = self.shape_upto(b);
        let mut out = Vec::new();
        for i in 1..=next.rows() {
            for j in prev.part(i) + 1..=next.part(i) {
                out.push((i, j));
            }
        }
        out
    }

    /// The entry at a cell (1-indexed).
    pub fn entry(&self, cell: (usize, usize)) -> usize {
        for b in 1..=self.levels() {
            if self.shape_upto(b).has_cell(cell) {
                return b;
            }
        }
        panic!("cell {cell:?} outside the shape");
    }

    /// Content histogram: `content()[b-1]` = number of entries equal to `b`.
    pub fn content(&self) -> Vec<usize> {
        (1..=self.levels())
            .map(|b| self.shape_upto(b).size() - self.shape_upto(b - 1).size())
            .collect()
    }

    /// Entries row by row.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let shape = self.shape();
        shape
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &len)| (1..=len).map(|j| self.entry((i + 1, j))).collect())
            .collect()
    }

    /// Row-reading word (rows concatenated top to bottom).
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows().into_iter().flatten().collect()
    }

    /// `(cell, entry)` for every cell, built in one pass over the levels.
    pub fn entries(&self) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::with_capacity(self.shape().size());
        for b in 1..=self.levels() {
            for cell in self.level_cells(b) {
                out.push((cell, b));
            }
        }
        out
    }

    /// Join levels `q` and `q + 1` into one level (entries above shift down
    /// by one); on the chain this just removes `shape(T|<=q)`.
    pub fn merge_levels(&self, q: usize) -> Tableau {
        assert!(q >= 1 && q < self.levels());
        let chain = self
            .chain
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != q - 1)
            .map(|(_, p)| p.clone())
            .collect();
        Tableau { chain }
    }
}

/// The four level-set cases for {1,2} contents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DominoStats {
    pub singles: usize,
    pub hdominoes: usize,
    pub vdominoes: usize,
    pub twoskews: usize,
}

/// Count level-set shapes of a {1,2}-content tableau.
pub fn domino_stats(t: &Tableau) -> Result<DominoStats, CombiError> {
    let mut stats = DominoStats {
        singles: 0,
        hdominoes: 0,
        vdominoes: 0,
        twoskews: 0,
    };
    for b in 1..=t.levels() {
        let cells = t.level_cells(b);
        match cells.len() {
            1 => stats.singles += 1,
            2 => {
                let (a, c) = (cells[0], cells[1]);
                if a.0 == c.0 {
                    stats.hdominoes += 1;
                } else if a.1 == c.1 {
                    stats.vdominoes += 1;
                } else {
                    stats.twoskews += 1;
                }
            }
            p => return Err(CombiError::ContentTooLarge { part: p }),
        }
    }
    Ok(stats)
}

/// Visit every weakly increasing tableau of shape `lambda` and content `mu`
/// without materializing the whole set.
pub fn for_each_tab(
    lambda: &Partition,
    mu: &Composition,
    mut f: impl FnMut(&Tableau),
) -> Result<(), CombiError> {
    if lambda.size() != mu.size() {
        return Err(CombiError::SizeMismatch {
            mu: mu.size(),
            lambda: lambda.size(),
        });
    }
    let mut chain: Vec<Partition> = Vec::new();
    fn grow(
        lambda: &Partition,
        mu: &[usize],
        level: usize,
        chain: &mut Vec<Partition>,
        f: &mut impl FnMut(&Tableau),
    ) {
        if level == mu.len() {
            let t = Tableau {
                chain: chain.clone(),
            };
            f(&t);
            return;
        }
        let prev = chain.last().cloned().unwrap_or_else(Partition::empty);
        for next in grow_by(lambda, &prev, mu[level]) {
            chain.push(next);
            grow(lambda, mu, level + 1, chain, f);
            chain.pop();
        }
    }
    grow(lambda, mu.parts(), 0, &mut chain, &mut f);
    Ok(())
}

/// All weakly increasing tableaux of shape `lambda` and content `mu`,
/// ordered lexicographically by reading word.
pub fn enumerate_tab(lambda: &Partition, mu: &Composition) -> Result<Vec<Tableau>, CombiError> {
    let mut out = Vec::new();
    for_each_tab(lambda, mu, |t| out.push(t.clone()))?;
    out.sort_by_cached_key(|t| t.reading_word());
    Ok(out)
}

/// Partitions `nu` with `prev ⊆ nu ⊆ lambda` and `|nu| = |prev| + add`.
fn grow_by(lambda: &Partition, prev: &Partition, add: usize) -> Vec<Partition> {
    let rows = lambda.rows();
    let mut out = Vec::new();
    let mut parts: Vec<usize> = (1..=rows).map(|i| prev.part(i)).collect();
    fn rec(
        lambda: &Partition,
        prev: &Partition,
        row: usize,
        add: usize,
        parts: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if add == 0 {
            for i in row..parts.len() {
                parts[i] = prev.part(i + 1);
            }
            // Validate the partition condition below the last change.
            if parts.windows(2).all(|w| w[0] >= w[1]) {
                out.push(Partition::new(parts.clone()));
            }
            return;
        }
        if row == parts.len() {
            return;
        }
        let lo = prev.part(row + 1);
        let hi_shape = lambda.part(row + 1);
        let hi_above = if row == 0 { usize::MAX } else { parts[row - 1] };
        for v in lo..=hi_shape.min(hi_above).min(lo + add) {
            parts[row] = v;
            rec(lambda, prev, row + 1, add - (v - lo), parts, out);
        }
        parts[row] = lo;
    }
    rec(lambda, prev, 0, add, &mut parts, &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn enumerate_standard_tableaux() {
        // lambda = (2,1), mu = 1^3: the two standard tableaux.
        let ts = enumerate_tab(&lam(&[2, 1]), &Composition::ones(3)).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0].rows(), vec![vec![1, 2], vec![3]]);
        assert_eq!(ts[1].rows(), vec![vec![1, 3], vec![2]]);

        // Brute-force oracle for #SYT(3,2,1): enumeration agrees with hooks.
        let shape = lam(&[3, 2, 1]);
        let ts = enumerate_tab(&shape, &Composition::ones(6)).unwrap();
        assert_eq!(ts.len(), 16);
        assert_eq!(shape.syt_count().to_i64(), Some(16));
    }

    #[test]
    fn hook_formula_matches_enumeration_everywhere() {
        for n in 0..=8 {
            for shape in super::super::partitions_of(n) {
                let count = enumerate_tab(&shape, &Composition::ones(n)).unwrap().len();
                assert_eq!(shape.syt_count().to_usize(), Some(count), "{shape}");
            }
        }
    }

    #[test]
    fn unique_skew_filling_for_mu_12() {
        // lambda = (2,1), mu = (1,2): one tableau, with the 2s non-adjacent.
        let ts = enumerate_tab(&lam(&[2, 1]), &Composition::new(vec![1, 2])).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].rows(), vec![vec![1, 2], vec![2]]);
        let stats = domino_stats(&ts[0]).unwrap();
        assert_eq!(
            stats,
            DominoStats {
                singles: 1,
                hdominoes: 0,
                vdominoes: 0,
                twoskews: 1
            }
        );
    }

    #[test]
    fn paper_example_statistics() {
        // lambda = 543, mu = (1,1,2,2,1,1,1,2,1): the worked tableau with
        // stats (6, 2, 1, 0).
        let t = Tableau::from_rows(vec![
            vec![1, 2, 4, 6, 7],
            vec![3, 3, 4, 9],
            vec![5, 8, 8],
        ])
        .unwrap();
        assert_eq!(t.content(), vec![1, 1, 2, 2, 1, 1, 1, 2, 1]);
        let stats = domino_stats(&t).unwrap();
        assert_eq!(
            stats,
            DominoStats {
                singles: 6,
                hdominoes: 2,
                vdominoes: 1,
                twoskews: 0
            }
        );
    }

    #[test]
    fn syt_have_all_singles() {
        let ts = enumerate_tab(&lam(&[3, 2]), &Composition::ones(5)).unwrap();
        for t in ts {
            let stats = domino_stats(&t).unwrap();
            assert_eq!(stats.singles, 5);
            assert_eq!(stats.hdominoes + stats.vdominoes + stats.twoskews, 0);
        }
    }

    #[test]
    fn easy_identity_restricted_form() {
        // sum over Tab(lambda; mu) of 2^{#twoskew} = #SYT(lambda),
        // spot-checked here; the acceptance suite covers all n <= 8.
        let shape = lam(&[2, 2]);
        let mu = Composition::new(vec![2, 2]);
        let ts = enumerate_tab(&shape, &mu).unwrap();
        let total: usize = ts
            .iter()
            .map(|t| 1usize << domino_stats(t).unwrap().twoskews)
            .sum();
        assert_eq!(total, 2);
        assert_eq!(shape.syt_count().to_usize(), Some(2));
    }

    #[test]
    fn rejects_size_mismatch() {
        let err = enumerate_tab(&lam(&[2, 1]), &Composition::new(vec![1, 1])).unwrap_err();
        assert_eq!(err, CombiError::SizeMismatch { mu: 2, lambda: 3 });
    }
}
