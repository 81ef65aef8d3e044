use std::ops::Range;

use crate::gf2::{Gf2Vector, SparseGf2Matrix};
use crate::{Error, Result};

/// A contiguous, independent piece of a Tanner graph.
///
/// Graphs built from a block-diagonal matrix keep one block per diagonal
/// entry; no edge crosses between blocks, so each block can be decoded (and
/// stopped) on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphBlock {
    pub checks: Range<usize>,
    pub vars: Range<usize>,
}

/// Bipartite check/variable graph of a parity-check matrix.
///
/// Edges are numbered row-major, so the edges of check `m` form the
/// contiguous range `check_edges(m)`. The edges of variable `n` are listed,
/// in ascending check order, by `var_edges(n)`; `var_slot(e)` gives the
/// position of edge `e` in that variable-major listing.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    matrix: SparseGf2Matrix,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    check_ptr: Vec<usize>,
    var_ptr: Vec<usize>,
    var_edge_list: Vec<usize>,
    var_slot: Vec<usize>,
    blocks: Vec<GraphBlock>,
}

impl TannerGraph {
    pub fn new(h: &SparseGf2Matrix) -> Result<Self> {
        if h.rows() == 0 || h.cols() == 0 {
            return Err(Error::InvalidMatrix(format!(
                "cannot build a Tanner graph from an empty {}x{} matrix",
                h.rows(),
                h.cols()
            )));
        }
        let blocks = vec![GraphBlock {
            checks: 0..h.rows(),
            vars: 0..h.cols(),
        }];
        Ok(Self::with_blocks(h.clone(), blocks))
    }

    /// Graph of `diag(parts[0], parts[1], ...)`, one block per part.
    pub fn block_diagonal(parts: &[&SparseGf2Matrix]) -> Result<Self> {
        let Some((first, rest)) = parts.split_first() else {
            return Err(Error::InvalidMatrix("no blocks given".into()));
        };
        let mut blocks = Vec::with_capacity(parts.len());
        let mut matrix = (*first).clone();
        blocks.push(GraphBlock {
            checks: 0..first.rows(),
            vars: 0..first.cols(),
        });
        for part in rest {
            blocks.push(GraphBlock {
                checks: matrix.rows()..matrix.rows() + part.rows(),
                vars: matrix.cols()..matrix.cols() + part.cols(),
            });
            matrix = matrix.block_diag(part);
        }
        if parts.iter().any(|p| p.rows() == 0 || p.cols() == 0) {
            return Err(Error::InvalidMatrix("empty block in block-diagonal graph".into()));
        }
        Ok(Self::with_blocks(matrix, blocks))
    }

    fn with_blocks(matrix: SparseGf2Matrix, blocks: Vec<GraphBlock>) -> Self {
        let mut edge_var = Vec::with_capacity(matrix.nnz());
        let mut edge_check = Vec::with_capacity(matrix.nnz());
        let mut check_ptr = Vec::with_capacity(matrix.rows() + 1);
        check_ptr.push(0);
        for m in 0..matrix.rows() {
            for &n in matrix.row(m) {
                edge_var.push(n);
                edge_check.push(m);
            }
            check_ptr.push(edge_var.len());
        }

        let mut var_ptr = vec![0usize; matrix.cols() + 1];
        for &n in &edge_var {
            var_ptr[n + 1] += 1;
        }
        for n in 0..matrix.cols() {
            var_ptr[n + 1] += var_ptr[n];
        }
        let mut fill = var_ptr.clone();
        let mut var_edge_list = vec![0usize; edge_var.len()];
        let mut var_slot = vec![0usize; edge_var.len()];
        for (e, &n) in edge_var.iter().enumerate() {
            var_edge_list[fill[n]] = e;
            var_slot[e] = fill[n];
            fill[n] += 1;
        }

        Self {
            matrix,
            edge_var,
            edge_check,
            check_ptr,
            var_ptr,
            var_edge_list,
            var_slot,
            blocks,
        }
    }

    /// Number of check nodes (M).
    #[inline]
    pub fn num_checks(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of variable nodes (N).
    #[inline]
    pub fn num_vars(&self) -> usize {
        self.matrix.cols()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    pub fn matrix(&self) -> &SparseGf2Matrix {
        &self.matrix
    }

    pub fn blocks(&self) -> &[GraphBlock] {
        &self.blocks
    }

    /// Edge ids incident to check `m`; a contiguous range.
    #[inline]
    pub fn check_edges(&self, m: usize) -> Range<usize> {
        self.check_ptr[m]..self.check_ptr[m + 1]
    }

    /// Range of variable-major slots belonging to variable `n`.
    #[inline]
    pub fn var_slots(&self, n: usize) -> Range<usize> {
        self.var_ptr[n]..self.var_ptr[n + 1]
    }

    /// Edge ids incident to variable `n`, in ascending check order.
    #[inline]
    pub fn var_edges(&self, n: usize) -> &[usize] {
        &self.var_edge_list[self.var_slots(n)]
    }

    /// Variable-major slot of edge `e`.
    #[inline]
    pub fn var_slot(&self, e: usize) -> usize {
        self.var_slot[e]
    }

    /// The full edge to slot permutation.
    #[inline]
    pub(crate) fn var_slot_table(&self) -> &[usize] {
        &self.var_slot
    }

    pub(crate) fn var_edge_table(&self) -> &[usize] {
        &self.var_edge_list
    }

    /// Edge offsets per check, `num_checks + 1` entries.
    #[inline]
    pub(crate) fn check_ptr_table(&self) -> &[usize] {
        &self.check_ptr
    }

    /// Slot offsets per variable, `num_vars + 1` entries.
    #[inline]
    pub(crate) fn var_ptr_table(&self) -> &[usize] {
        &self.var_ptr
    }

    /// `(check, variable)` endpoints of edge `e`.
    #[inline]
    pub fn edge(&self, e: usize) -> (usize, usize) {
        (self.edge_check[e], self.edge_var[e])
    }

    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    /// Variables adjacent to check `m` (S_v(m)).
    pub fn check_neighbors(&self, m: usize) -> &[usize] {
        &self.edge_var[self.check_edges(m)]
    }

    /// Checks adjacent to variable `n` (S_c(n)).
    pub fn var_neighbors(&self, n: usize) -> &[usize] {
        self.matrix.col(n)
    }

    pub fn check_degree(&self, m: usize) -> usize {
        self.check_ptr[m + 1] - self.check_ptr[m]
    }

    pub fn var_degree(&self, n: usize) -> usize {
        self.var_ptr[n + 1] - self.var_ptr[n]
    }

    pub fn check_degrees(&self) -> Vec<usize> {
        (0..self.num_checks()).map(|m| self.check_degree(m)).collect()
    }

    pub fn var_degrees(&self) -> Vec<usize> {
        (0..self.num_vars()).map(|n| self.var_degree(n)).collect()
    }

    /// Syndrome of `e` under this graph's matrix.
    pub fn syndrome(&self, e: &Gf2Vector) -> Result<Gf2Vector> {
        self.matrix.mul_vec(e)
    }

    /// Verifies that the check and variable slices partition the same edge
    /// set.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMatrix(msg));
        let mut seen = vec![0u8; self.num_edges()];
        for n in 0..self.num_vars() {
            for &e in self.var_edges(n) {
                if self.edge_var[e] != n {
                    return bad(format!("edge {e} listed under variable {n} but attached to {}", self.edge_var[e]));
                }
                seen[e] += 1;
            }
        }
        if seen.iter().any(|&c| c != 1) {
            return bad("variable slices do not partition the edge set".into());
        }
        for m in 0..self.num_checks() {
            if self.check_edges(m).any(|e| self.edge_check[e] != m) {
                return bad(format!("check {m} slice contains a foreign edge"));
            }
        }
        let dc: usize = self.check_degrees().iter().sum();
        let dv: usize = self.var_degrees().iter().sum();
        if dc != self.num_edges() || dv != self.num_edges() {
            return bad(format!("degree sums {dc}/{dv} differ from edge count {}", self.num_edges()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::toy_code;

    #[test]
    fn toy_graph_shape() {
        let g = TannerGraph::new(&toy_code()).unwrap();
        assert_eq!((g.num_checks(), g.num_vars(), g.num_edges()), (3, 6, 12));
        assert!(g.check_degrees().iter().all(|&d| d == 4));
        assert!(g.var_degrees().iter().all(|&d| d == 2));
        assert_eq!(g.check_neighbors(0), &[0, 2, 3, 5]);
        assert_eq!(g.var_neighbors(1), &[1, 2]);
        g.validate().unwrap();
    }

    #[test]
    fn single_entry_graph() {
        let h = SparseGf2Matrix::identity(1);
        let g = TannerGraph::new(&h).unwrap();
        assert_eq!((g.num_checks(), g.num_vars(), g.num_edges()), (1, 1, 1));
    }

    #[test]
    fn empty_matrix_rejected() {
        assert!(TannerGraph::new(&SparseGf2Matrix::zeros(0, 4)).is_err());
        assert!(TannerGraph::new(&SparseGf2Matrix::zeros(3, 0)).is_err());
    }

    #[test]
    fn edges_are_row_major() {
        let g = TannerGraph::new(&toy_code()).unwrap();
        let edges: Vec<_> = (0..g.num_edges()).map(|e| g.edge(e)).collect();
        let mut sorted = edges.clone();
        sorted.sort();
        assert_eq!(edges, sorted);
        for e in 0..g.num_edges() {
            assert_eq!(g.var_edge_table()[g.var_slot(e)], e);
        }
    }

    #[test]
    fn block_diagonal_blocks() {
        let h = toy_code();
        let i = SparseGf2Matrix::identity(2);
        let g = TannerGraph::block_diagonal(&[&h, &i]).unwrap();
        assert_eq!(g.blocks().len(), 2);
        assert_eq!(g.blocks()[1], GraphBlock { checks: 3..5, vars: 6..8 });
        assert_eq!(g.num_edges(), 14);
        g.validate().unwrap();
    }
}
