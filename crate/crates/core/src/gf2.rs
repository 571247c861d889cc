//! Dense matrices over GF(2) with word-packed rows.

use crate::bitset::BitSet;
use crate::graph::GraphError;

/// A rectangular 0/1 matrix; each row is a [`BitSet`] of length `cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitSet>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![BitSet::new(cols); rows],
        }
    }

    /// Builds a matrix from boolean rows; every row must have the same length.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self, GraphError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut out = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(GraphError::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
            out.push(BitSet::from_indices(
                cols,
                r.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j),
            ));
        }
        Ok(Gf2Matrix { cols, rows: out })
    }

    pub fn from_bitsets(cols: usize, rows: Vec<BitSet>) -> Result<Self, GraphError> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(GraphError::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Gf2Matrix { cols, rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i].insert(j);
        } else {
            self.rows[i].remove(j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = self.rows.iter().map(|r| r.words().to_vec()).collect();
        rank_of_word_rows(&mut rows, self.cols)
    }
}

/// Rank of equal-width word rows by Gaussian elimination. Destroys `rows`.
pub fn rank_of_word_rows(rows: &mut [Vec<u64>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                // Words left of `w` are already zero in the pivot row.
                for (a, b) in row[w..].iter_mut().zip(&prow[w..]) {
                    *a ^= *b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a list of single-word rows (at most 64 columns), via an XOR basis.
pub fn rank_of_masks<I: IntoIterator<Item = u64>>(rows: I) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut r in rows {
        while r != 0 {
            let top = 63 - r.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = r;
                rank += 1;
                break;
            }
            r ^= basis[top];
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_rows_rank_one() {
        let m = Gf2Matrix::from_rows(&[[true, true], [true, true]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn identity_full_rank() {
        for k in 0..10 {
            let rows: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| i == j).collect()).collect();
            assert_eq!(Gf2Matrix::from_rows(&rows).unwrap().rank(), k);
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![true, false], vec![true]];
        assert!(matches!(
            Gf2Matrix::from_rows(&rows),
            Err(GraphError::RaggedMatrix { row: 1, .. })
        ));
    }

    #[test]
    fn empty_matrix_rank_zero() {
        let rows: Vec<Vec<bool>> = vec![];
        assert_eq!(Gf2Matrix::from_rows(&rows).unwrap().rank(), 0);
        assert_eq!(Gf2Matrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn wide_rows_span_words() {
        // Rows differ only beyond bit 64; their sum is a third independent-looking row.
        let mut m = Gf2Matrix::zeros(3, 130);
        m.set(0, 1, true);
        m.set(0, 100, true);
        m.set(1, 100, true);
        m.set(1, 129, true);
        m.set(2, 1, true);
        m.set(2, 129, true);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn mask_rank_matches_dense() {
        let masks = [0b011u64, 0b110, 0b101, 0b111];
        let rows: Vec<Vec<bool>> = masks
            .iter()
            .map(|m| (0..3).map(|j| m >> j & 1 == 1).collect())
            .collect();
        assert_eq!(rank_of_masks(masks), Gf2Matrix::from_rows(&rows).unwrap().rank());
    }
}
