//! Exact sparse Gaussian elimination over the rationals.
//!
//! Rows are reduced into echelon form keyed by their leading (leftmost)
//! column; kernel vectors are then produced by back-substitution, one per
//! free column, which is exactly the basis read off the reduced row echelon
//! form for the given column order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    /// leading column → row (leading entry nonzero).
    pivots: BTreeMap<usize, SparseVec>,
}

fn axpy(row: &mut SparseVec, a: &Rational, other: &SparseVec) {
    for (c, v) in other {
        let e = row.entry(*c).or_insert_with(Rational::zero);
        *e += a * v;
        if e.is_zero() {
            row.remove(c);
        }
    }
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `row` against the current pivots and stores it if it is independent.
    /// Returns `true` when the rank grew.
    pub fn insert(&mut self, mut row: SparseVec) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lv)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    assert!(lead < self.ncols, "column {lead} out of range");
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(prow) => {
                    let factor = -(lv / &prow[&lead]);
                    axpy(&mut row, &factor, prow);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect()
    }

    /// Kernel basis: for each free column `f`, the vector with 1 at `f`, 0 at the
    /// other free columns, and pivot entries solved bottom-up.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = SparseVec::new();
                v.insert(f, Rational::one());
                for (&lead, row) in self.pivots.iter().rev() {
                    let mut s = Rational::zero();
                    for (c, a) in row.range(lead + 1..) {
                        if let Some(x) = v.get(c) {
                            s += a * x;
                        }
                    }
                    if !s.is_zero() {
                        v.insert(lead, -(s / &row[&lead]));
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank of a set of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn row(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        // [1 1 0; 0 1 1]  → kernel spanned by (1,-1,1)
        let mut e = Echelon::new(3);
        e.insert(row(&[(0, 1), (1, 1)]));
        e.insert(row(&[(1, 1), (2, 1)]));
        let k = e.kernel();
        assert_eq!(k, vec![row(&[(0, 1), (1, -1), (2, 1)])]);
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let rows = vec![
            row(&[(0, 2), (1, 4)]),
            row(&[(0, 1), (1, 2)]),
            row(&[(2, 3)]),
        ];
        assert_eq!(rank(rows, 3), 2);
    }
}
