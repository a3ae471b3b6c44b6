//! Standard Young tableaux: the row-reading tableau, inversions, the signed
//! inversion sum, and the entry-swap graph.

use super::{cell_distance, Composition, Partition, Tableau};
use crate::combi::tableau::for_each_tab;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// The standard tableau with entries 1..n placed left to right, top to
/// bottom.
pub fn t_zero(lambda: &Partition) -> Tableau {
    let mut rows = Vec::new();
    let mut next = 1;
    for &len in lambda.parts() {
        rows.push((next..next + len).collect::<Vec<usize>>());
        next += len;
    }
    Tableau::from_rows(rows).expect("row reading filling is standard")
}

/// Number of inversions: pairs of cells `(i,j), (i',j')` with `i < i'` and
/// `T(i,j) > T(i',j')`.
pub fn inv_stat(t: &Tableau) -> usize {
    let entries = t.entries();
    let mut count = 0;
    for (a, (cell_a, e_a)) in entries.iter().enumerate() {
        for (cell_b, e_b) in &entries[a + 1..] {
            let ((i, _), (ip, _)) = (cell_a, cell_b);
            if (i < ip && e_a > e_b) || (ip < i && e_b > e_a) {
                count += 1;
            }
        }
    }
    count
}

/// `I_lambda = sum over SYT(lambda) of (-1)^{inv(T)}`.
pub fn iota(lambda: &Partition) -> i64 {
    let n = lambda.size();
    let mut total = 0i64;
    for_each_tab(lambda, &Composition::ones(n), |t| {
        total += if inv_stat(t).is_multiple_of(2) { 1 } else { -1 };
    })
    .expect("content 1^n always matches");
    total
}

/// An edge of a spanning tree, oriented away from the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: usize,
    pub child: usize,
    /// The swapped entries are `entry` and `entry + 1`.
    pub entry: usize,
}

/// The swap graph on `SYT(lambda)`: vertices in canonical (reading word)
/// order, an edge for every swap of consecutive entries in non-adjacent
/// cells.
pub struct SwapGraph {
    pub tableaux: Vec<Tableau>,
    /// `(a, b, entry)` with `a < b` vertex indices.
    pub edges: Vec<(usize, usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    pub root: usize,
}

impl SwapGraph {
    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.tableaux.iter().position(|s| s == t)
    }

    /// Breadth-first spanning tree from the root (the canonical tree).
    pub fn spanning_tree(&self) -> Vec<TreeEdge> {
        self.tree_from_order(|adj| adj.to_vec())
    }

    /// A seeded random spanning tree; seed 0 reproduces a shuffled BFS.
    pub fn spanning_tree_seeded(&self, seed: u64) -> Vec<TreeEdge> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.tree_from_order(move |adj| {
            let mut order = adj.to_vec();
            order.shuffle(&mut rng);
            order
        })
    }

    fn tree_from_order(
        &self,
        mut order: impl FnMut(&[(usize, usize)]) -> Vec<(usize, usize)>,
    ) -> Vec<TreeEdge> {
        let mut seen = vec![false; self.tableaux.len()];
        let mut queue = std::collections::VecDeque::new();
        let mut tree = Vec::new();
        seen[self.root] = true;
        queue.push_back(self.root);
        while let Some(v) = queue.pop_front() {
            for (w, entry) in order(&self.adjacency[v]) {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(TreeEdge {
                        parent: v,
                        child: w,
                        entry,
                    });
                    queue.push_back(w);
                }
            }
        }
        assert!(
            seen.iter().all(|&s| s),
            "swap graph should be connected"
        );
        tree
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.tableaux.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Swap entries `b` and `b+1` of a standard tableau when their cells are
/// non-adjacent; `None` otherwise.
pub fn swap_entries(t: &Tableau, b: usize) -> Option<Tableau> {
    let cell_b = t.level_cells(b);
    let cell_b1 = t.level_cells(b + 1);
    let (&[c1], &[c2]) = (&cell_b[..], &cell_b1[..]) else {
        return None;
    };
    if cell_distance(c1, c2) <= 1 {
        return None;
    }
    let mut rows = t.rows();
    rows[c1.0 - 1][c1.1 - 1] = b + 1;
    rows[c2.0 - 1][c2.1 - 1] = b;
    Some(Tableau::from_rows(rows).expect("swapping non-adjacent consecutive entries keeps standardness"))
}

/// Build the swap graph of `lambda`, rooted at the row-reading tableau.
pub fn swap_graph(lambda: &Partition) -> SwapGraph {
    let n = lambda.size();
    let tableaux = super::enumerate_tab(lambda, &Composition::ones(n))
        .expect("standard content always matches");
    let index: HashMap<Vec<usize>, usize> = tableaux
        .iter()
        .enumerate()
        .map(|(i, t)| (t.reading_word(), i))
        .collect();
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); tableaux.len()];
    for (i, t) in tableaux.iter().enumerate() {
        for b in 1..n {
            if let Some(other) = swap_entries(t, b) {
                let j = index[&other.reading_word()];
                if i < j {
                    edges.push((i, j, b));
                    adjacency[i].push((j, b));
                    adjacency[j].push((i, b));
                }
            }
        }
    }
    let root = index[&t_zero(lambda).reading_word()];
    SwapGraph {
        tableaux,
        edges,
        adjacency,
        root,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi::partitions_of;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn t_zero_is_row_reading() {
        assert_eq!(t_zero(&lam(&[2, 1])).rows(), vec![vec![1, 2], vec![3]]);
        assert_eq!(t_zero(&lam(&[4])).rows(), vec![vec![1, 2, 3, 4]]);
        assert_eq!(t_zero(&lam(&[2, 2])).rows(), vec![vec![1, 2], vec![3, 4]]);
        // Row-dominance property of T0.
        let t = t_zero(&lam(&[3, 2, 1]));
        for (c1, e1) in t.entries() {
            for (c2, e2) in t.entries() {
                if c1.0 < c2.0 {
                    assert!(e1 < e2);
                }
            }
        }
    }

    #[test]
    fn inversions_and_iota() {
        // The two SYT of (2,1) have 0 and 1 inversions.
        let g = swap_graph(&lam(&[2, 1]));
        let invs: Vec<usize> = g.tableaux.iter().map(inv_stat).collect();
        assert_eq!(invs, vec![0, 1]);
        assert_eq!(iota(&lam(&[2, 1])), 0);
        // Hooks: degree 1 when n even, 0 when n odd.
        for n in 2..=9 {
            let expect = if n % 2 == 0 { 1 } else { 0 };
            assert_eq!(iota(&lam(&[n - 1, 1])), expect, "hook n = {n}");
        }
    }

    #[test]
    fn swap_graph_small_cases() {
        // (2,1): a single edge swapping 2 and 3.
        let g = swap_graph(&lam(&[2, 1]));
        assert_eq!(g.edges, vec![(0, 1, 2)]);
        // Single row: one vertex, no edges.
        let g = swap_graph(&lam(&[5]));
        assert!(g.edges.is_empty());
        assert_eq!(g.tableaux.len(), 1);
        // (2,2): connected on 2 vertices.
        let g = swap_graph(&lam(&[2, 2]));
        assert_eq!(g.tableaux.len(), 2);
        assert!(g.is_connected());
    }

    #[test]
    fn swap_graph_connected_up_to_8() {
        for n in 1..=8 {
            for shape in partitions_of(n) {
                let g = swap_graph(&shape);
                assert!(g.is_connected(), "{shape}");
                let tree = g.spanning_tree();
                assert_eq!(tree.len(), g.tableaux.len() - 1);
                let seeded = g.spanning_tree_seeded(7);
                assert_eq!(seeded.len(), g.tableaux.len() - 1);
            }
        }
    }
}
