//! Penalty-based pseudo-Boolean polynomials of cost matrices.

mod matrix;
mod pack;
mod polynomial;
mod reduce;

pub use matrix::{CostMatrix, MAX_CELL, MAX_CELLS};
pub use pack::{column_pack, ColumnPacking};
pub use polynomial::{EquivalenceKey, Monomial, Polynomial, Term};
pub use reduce::{
    delta_matrix, permutation_matrix, reduce, reduce_with, sorted_matrix, terms_matrix, DeltaMatrix,
    PermutationMatrix, ReductionTrace, TermsMatrix,
};

/// Degree of `reduce(c)` without building the polynomial: per column, the
/// number of rows strictly below the column maximum.
pub fn reduced_degree(c: &CostMatrix) -> usize {
    (0..c.cols())
        .map(|j| {
            let max = c.column_max(j);
            c.column(j).filter(|&v| v < max).count()
        })
        .max()
        .unwrap_or(0)
}
