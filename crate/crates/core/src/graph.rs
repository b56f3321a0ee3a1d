//! Reachability analysis on the directed graph of positive transition
//! entries. Backs state classification and recurrent-class detection.

use crate::linalg::ComplexMatrix;

/// Directed graph on matrix indices; an edge i→j marks a positive entry.
#[derive(Debug, Clone)]
pub struct Digraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn from_positive_entries(m: &ComplexMatrix, cutoff: f64) -> Self {
        let mut g = Self::new(m.rows());
        g.add_positive_entries(m, cutoff);
        g
    }

    /// Union graph over several matrices of the same dimension.
    pub fn from_union<'a>(ms: impl IntoIterator<Item = &'a ComplexMatrix>, cutoff: f64) -> Self {
        let mut iter = ms.into_iter().peekable();
        let n = iter.peek().map_or(0, |m| m.rows());
        let mut g = Self::new(n);
        for m in iter {
            g.add_positive_entries(m, cutoff);
        }
        g
    }

    fn add_positive_entries(&mut self, m: &ComplexMatrix, cutoff: f64) {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.get(i, j).norm() > cutoff {
                    self.adj[i][j] = true;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Transitive closure over paths of length ≥ 1: `reach[i][j]` is true
    /// iff j is a consequent of i. `reach[i][i]` holds only when i lies
    /// on a cycle.
    pub fn consequents(&self) -> Vec<Vec<bool>> {
        let mut reach = self.adj.clone();
        for k in 0..self.n {
            let via_k = reach.iter().map(|row| row[k]).collect::<Vec<_>>();
            let row_k = reach[k].clone();
            for (i, row) in reach.iter_mut().enumerate() {
                if via_k[i] {
                    for (j, cell) in row.iter_mut().enumerate() {
                        *cell = *cell || row_k[j];
                    }
                }
            }
        }
        reach
    }

    /// Strongly connected components, as sorted index sets. Acyclic nodes
    /// form singleton components.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let reach = self.consequents();
        let mut assigned = vec![false; self.n];
        let mut out = Vec::new();
        for i in 0..self.n {
            if assigned[i] {
                continue;
            }
            let mut class = vec![i];
            assigned[i] = true;
            for j in i + 1..self.n {
                if !assigned[j] && reach[i][j] && reach[j][i] {
                    class.push(j);
                    assigned[j] = true;
                }
            }
            out.push(class);
        }
        out
    }

    /// Strongly connected components with no edge leaving them; these are
    /// the asymptotically recurrent classes of a stochastic machine.
    pub fn absorbing_classes(&self) -> Vec<Vec<usize>> {
        self.sccs()
            .into_iter()
            .filter(|class| {
                class.iter().all(|&i| {
                    (0..self.n).all(|j| !self.adj[i][j] || class.contains(&j))
                })
            })
            .collect()
    }
}
