//! Partitions, compositions, tableaux, and their statistics.

mod strips;
mod syt;
mod tableau;

pub use strips::{mn_filter, removable_border_strips};
pub use syt::{inv_stat, iota, swap_entries, swap_graph, t_zero, SwapGraph, TreeEdge};
pub use tableau::{domino_stats, enumerate_tab, for_each_tab, DominoStats, Tableau};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombiError {
    #[error("content and shape sizes differ: |mu| = {mu}, |lambda| = {lambda}")]
    SizeMismatch { mu: usize, lambda: usize },
    #[error("content part {part} exceeds 2")]
    ContentTooLarge { part: usize },
    #[error("{0}")]
    Invalid(String),
}

/// A partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(ser)
    }
}

impl Partition {
    /// Sorts the given parts decreasingly and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Parse `"3,2,1"`; the empty string and `"0"` give the empty partition.
    pub fn parse(s: &str) -> Result<Self, CombiError> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| CombiError::Invalid(format!("bad partition entry {tok:?}")))?;
            if v > 0 {
                parts.push(v);
            }
        }
        let sorted = {
            let mut q = parts.clone();
            q.sort_unstable_by(|a, b| b.cmp(a));
            q
        };
        if sorted != parts {
            return Err(CombiError::Invalid(format!(
                "partition parts must be weakly decreasing: {s:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total size |lambda|.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Part `i`, 1-indexed, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are 1-indexed");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Complement `(m - lambda_d, ..., m - lambda_1)` inside a `d x m` box.
    pub fn complement(&self, d: usize, m: usize) -> Partition {
        assert!(self.rows() <= d && self.parts.first().copied().unwrap_or(0) <= m);
        let parts = (0..d)
            .rev()
            .map(|i| m - self.parts.get(i).copied().unwrap_or(0))
            .collect();
        Partition::new(parts)
    }

    /// kappa ⊆ lambda (containment of diagrams).
    pub fn contains(&self, kappa: &Partition) -> bool {
        kappa
            .parts
            .iter()
            .enumerate()
            .all(|(i, &k)| self.parts.get(i).copied().unwrap_or(0) >= k)
    }

    /// Cells `(i, j)`, 1-indexed, in row-reading order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 1..=len {
                out.push((i + 1, j));
            }
        }
        out
    }

    pub fn has_cell(&self, cell: (usize, usize)) -> bool {
        cell.0 >= 1 && cell.1 >= 1 && self.part(cell.0) >= cell.1
    }

    /// Removable corners: cells whose removal leaves a partition.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.rows() {
            if self.part(i) > self.part(i + 1) {
                out.push((i, self.part(i)));
            }
        }
        out
    }

    /// Remove one cell (must be a corner).
    pub fn remove_corner(&self, cell: (usize, usize)) -> Partition {
        debug_assert!(self.corners().contains(&cell));
        let mut parts = self.parts.clone();
        parts[cell.0 - 1] -= 1;
        Partition::new(parts)
    }

    /// Hook length of the cell `(i, j)`.
    pub fn hook(&self, cell: (usize, usize)) -> usize {
        let (i, j) = cell;
        let arm = self.part(i) - j;
        let leg = self.conjugate().part(j) - i;
        arm + leg + 1
    }

    /// `#SYT(lambda)` by the hook-length formula.
    pub fn syt_count(&self) -> BigInt {
        let n = self.size();
        let mut num = BigInt::one();
        for k in 2..=n {
            num *= BigInt::from(k);
        }
        let mut den = BigInt::one();
        for cell in self.cells() {
            den *= BigInt::from(self.hook(cell));
        }
        num / den
    }

    /// All subpartitions kappa ⊆ lambda.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        fn rec(
            lambda: &[usize],
            row: usize,
            max: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if row == lambda.len() {
                out.push(Partition::new(current.clone()));
                return;
            }
            let cap = lambda[row].min(max);
            for v in (0..=cap).rev() {
                current.push(v);
                rec(lambda, row + 1, v, current, out);
                current.pop();
            }
        }
        rec(&self.parts, 0, usize::MAX, &mut current, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

/// Taxicab distance between two cells of a diagram.
pub fn cell_distance(a: (usize, usize), b: (usize, usize)) -> usize {
    a.0.abs_diff(b.0) + a.1.abs_diff(b.1)
}

/// All partitions of `n`, decreasing lexicographic, each exactly once.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            current.push(first);
            rec(rest - first, first, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out
}

/// An ordered composition with positive parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "composition parts must be positive");
        Composition { parts }
    }

    pub fn parse(s: &str) -> Result<Self, CombiError> {
        let mut parts = Vec::new();
        for tok in s.trim().split(',') {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| CombiError::Invalid(format!("bad composition entry {tok:?}")))?;
            if v == 0 {
                return Err(CombiError::Invalid("composition parts must be positive".into()));
            }
            parts.push(v);
        }
        Ok(Composition { parts })
    }

    pub fn ones(n: usize) -> Self {
        Composition {
            parts: vec![1; n],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All parts in {1, 2}.
    pub fn is_restricted(&self) -> bool {
        self.parts.iter().all(|&p| p == 1 || p == 2)
    }

    pub fn count_ones(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    pub fn count_twos(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 2).count()
    }

    /// The associated partition (parts sorted decreasingly).
    pub fn as_partition(&self) -> Partition {
        Partition::new(self.parts.clone())
    }

    /// `mu_bar_b = n + 1 - sum_{i <= b} mu_i`, 1-indexed.
    pub fn mu_bar(&self, b: usize) -> usize {
        let n = self.size();
        let prefix: usize = self.parts[..b].iter().sum();
        n + 1 - prefix
    }
}

/// All compositions of `n` with parts in {1, 2}, in binary-counting order.
pub fn compositions_12(n: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, current: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition {
                parts: current.clone(),
            });
            return;
        }
        for p in 1..=2.min(rest) {
            current.push(p);
            rec(rest - p, current, out);
            current.pop();
        }
    }
    if n > 0 {
        rec(n, &mut current, &mut out);
    }
    out
}
