//! Construction of the reduced polynomial of a cost matrix.
//!
//! Each column is sorted ascending; the first sorted value is paid
//! unconditionally and every later step up is paid only when all rows
//! below it in the order are closed (`y_i = 1`). Equal costs therefore
//! cancel, and like terms from different columns are summed.

use std::collections::BTreeMap;
use std::fmt;

use super::matrix::{write_grid, CostMatrix};
use super::polynomial::{Polynomial, Term};
use crate::error::{Error, Result};

/// Per-column orderings of row indices that sort the cost matrix
/// non-decreasingly. Ties keep ascending row order. Stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMatrix {
    rows: usize,
    cols: usize,
    order: Vec<u32>,
}

impl PermutationMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based row of `c` holding the `rank`-th smallest value of column `col`.
    #[inline]
    pub fn get(&self, rank: usize, col: usize) -> u32 {
        self.order[rank * self.cols + col]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = u32> + '_ {
        self.order.iter().skip(col).step_by(self.cols).copied()
    }

    /// 1-based rows, in display layout.
    pub fn to_one_based_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) + 1).collect())
            .collect()
    }

    /// Builds a permutation matrix from explicit 0-based column orders,
    /// checking that each is a permutation sorting `c`.
    pub fn from_columns(c: &CostMatrix, columns: &[Vec<u32>]) -> Result<Self> {
        let (m, n) = (c.rows(), c.cols());
        if columns.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: columns.len(),
            });
        }
        let mut order = vec![0u32; m * n];
        for (j, col) in columns.iter().enumerate() {
            let mut seen = vec![false; m];
            if col.len() != m {
                return Err(Error::Dimension {
                    expected: m,
                    actual: col.len(),
                });
            }
            for (k, &r) in col.iter().enumerate() {
                let slot = seen
                    .get_mut(r as usize)
                    .ok_or_else(|| Error::consistency(format!("row {r} out of range")))?;
                if *slot {
                    return Err(Error::consistency(format!("row {r} repeated in column {j}")));
                }
                *slot = true;
                order[k * n + j] = r;
            }
            if col.windows(2).any(|w| c.get(w[0] as usize, j) > c.get(w[1] as usize, j)) {
                return Err(Error::consistency(format!("column {j} order does not sort costs")));
            }
        }
        Ok(PermutationMatrix { rows: m, cols: n, order })
    }
}

impl fmt::Display for PermutationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, |r, c| (self.get(r, c) + 1).to_string())
    }
}

/// First sorted value of each column followed by successive differences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<u64>,
}

impl DeltaMatrix {
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.cells[row * self.cols + col]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.cells.chunks(self.cols).map(<[u64]>::to_vec).collect()
    }
}

impl fmt::Display for DeltaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, |r, c| self.get(r, c).to_string())
    }
}

/// The monomial attached to every cell of the delta matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermsMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Term>,
}

impl TermsMatrix {
    pub fn get(&self, row: usize, col: usize) -> &Term {
        &self.cells[row * self.cols + col]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = &Term> + '_ {
        self.cells.iter().skip(col).step_by(self.cols)
    }
}

impl fmt::Display for TermsMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, |r, c| {
            let t = self.get(r, c);
            if t.is_constant() {
                "1".to_string()
            } else {
                t.to_string().replace('*', "")
            }
        })
    }
}

pub fn permutation_matrix(c: &CostMatrix) -> PermutationMatrix {
    let (m, n) = (c.rows(), c.cols());
    let mut order = vec![0u32; m * n];
    let mut idx: Vec<u32> = Vec::with_capacity(m);
    for j in 0..n {
        idx.clear();
        idx.extend(0..m as u32);
        // stable: equal costs keep ascending row order
        idx.sort_by_key(|&r| c.get(r as usize, j));
        for (k, &r) in idx.iter().enumerate() {
            order[k * n + j] = r;
        }
    }
    PermutationMatrix { rows: m, cols: n, order }
}

/// `c` with each column rearranged by `pi`.
pub fn sorted_matrix(c: &CostMatrix, pi: &PermutationMatrix) -> CostMatrix {
    let (m, n) = (c.rows(), c.cols());
    let mut cells = Vec::with_capacity(m * n);
    for k in 0..m {
        for j in 0..n {
            cells.push(c.get(pi.get(k, j) as usize, j));
        }
    }
    CostMatrix::new(m, n, cells).expect("same shape and bounds as input")
}

pub fn delta_matrix(c: &CostMatrix, pi: &PermutationMatrix) -> DeltaMatrix {
    let (m, n) = (c.rows(), c.cols());
    let mut cells = vec![0u64; m * n];
    for j in 0..n {
        let mut prev = 0;
        for k in 0..m {
            let v = c.get(pi.get(k, j) as usize, j);
            cells[k * n + j] = v - prev;
            prev = v;
        }
    }
    DeltaMatrix { rows: m, cols: n, cells }
}

pub fn terms_matrix(pi: &PermutationMatrix) -> TermsMatrix {
    let (m, n) = (pi.rows(), pi.cols());
    let mut cells = vec![Term::constant(); m * n];
    for j in 0..n {
        let mut prefix = Term::constant();
        for k in 1..m {
            prefix.push_sorted(pi.get(k - 1, j));
            cells[k * n + j] = prefix.clone();
        }
    }
    TermsMatrix { rows: m, cols: n, cells }
}

/// Reduced polynomial of `c`: every delta times its term, like terms summed.
pub fn reduce(c: &CostMatrix) -> Polynomial {
    reduce_with(c, &permutation_matrix(c))
}

/// Like [`reduce`] but with a caller-supplied (valid) column ordering.
pub fn reduce_with(c: &CostMatrix, pi: &PermutationMatrix) -> Polynomial {
    let (m, n) = (c.rows(), c.cols());
    let mut terms: BTreeMap<Term, u64> = BTreeMap::new();
    for j in 0..n {
        let mut prefix = Term::constant();
        let mut prev = 0u64;
        for k in 0..m {
            let row = pi.get(k, j);
            let v = c.get(row as usize, j);
            let delta = v - prev;
            if delta > 0 {
                *terms.entry(prefix.clone()).or_insert(0) += delta;
            }
            prev = v;
            prefix.push_sorted(row);
        }
    }
    Polynomial::from_map_unchecked(m, terms)
}

/// Every intermediate artifact of one reduction, for inspection.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub cost: CostMatrix,
    pub permutation: PermutationMatrix,
    pub sorted: CostMatrix,
    pub delta: DeltaMatrix,
    pub terms: TermsMatrix,
    pub polynomial: Polynomial,
}

impl ReductionTrace {
    pub fn new(c: &CostMatrix) -> Self {
        let permutation = permutation_matrix(c);
        let sorted = sorted_matrix(c, &permutation);
        let delta = delta_matrix(c, &permutation);
        let terms = terms_matrix(&permutation);
        let polynomial = reduce_with(c, &permutation);
        ReductionTrace {
            cost: c.clone(),
            permutation,
            sorted,
            delta,
            terms,
            polynomial,
        }
    }
}
