use super::vector::words_for;
use super::{Gf2Vector, SparseGf2Matrix};

/// Row-major bit-packed dense matrix used for elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn from_rows(cols: usize, rows: &[Gf2Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row length mismatch");
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.words[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.words[r * self.stride + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.words[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> Gf2Vector {
        Gf2Vector::from_words(self.cols, self.row_words(r).to_vec())
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let stride = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.words.split_at_mut(src * stride);
            (&mut lo[dst * stride..(dst + 1) * stride], &hi[..stride])
        } else {
            let (lo, hi) = self.words.split_at_mut(dst * stride);
            (&mut hi[..stride], &lo[src * stride..(src + 1) * stride])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot column of each of the leading `rank` rows.
    pub fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(next, p);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_rows(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// A basis for `{x : M x^T = 0}`.
    pub fn kernel_basis(&self) -> Vec<Gf2Vector> {
        let mut m = self.clone();
        let pivots = m.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = Gf2Vector::zeros(self.cols);
                v.set(free, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Precomputed reduced echelon basis of a matrix's row space, for fast
/// repeated membership queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(h: &SparseGf2Matrix) -> Self {
        let mut basis = h.to_dense();
        let pivots = basis.reduce();
        Self {
            cols: h.cols(),
            basis,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        assert_eq!(v.len(), self.cols, "row space membership length mismatch");
        let mut words = v.words().to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if (words[p / 64] >> (p % 64)) & 1 == 1 {
                for (w, b) in words.iter_mut().zip(self.basis.row_words(r)) {
                    *w ^= b;
                }
            }
        }
        words.iter().all(|&w| w == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_toy() {
        let h = SparseGf2Matrix::from_dense(&[
            [1, 0, 1, 1, 0, 1],
            [1, 1, 0, 1, 1, 0],
            [0, 1, 1, 0, 1, 1],
        ])
        .unwrap();
        let kernel = h.to_dense().kernel_basis();
        assert_eq!(kernel.len(), 6 - 2);
        for v in &kernel {
            assert!(h.mul_vec(v).unwrap().is_zero());
        }
        assert_eq!(BitMatrix::from_rows(6, &kernel).rank(), 4);
    }

    #[test]
    fn row_space_matches_rank_test() {
        let h = SparseGf2Matrix::from_row_supports(3, 70, vec![vec![0, 65], vec![1, 65, 69], vec![0, 1, 69]])
            .unwrap();
        let rs = h.row_space();
        assert_eq!(rs.rank(), 2);
        let sum = &h.row_vector(0) ^ &h.row_vector(1);
        assert!(rs.contains(&sum));
        assert!(!rs.contains(&Gf2Vector::unit(70, 65)));
    }
}
