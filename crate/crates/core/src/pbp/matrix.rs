use std::fmt;

use crate::error::{Error, Result};

/// Largest value a single cost cell may hold.
pub const MAX_CELL: u64 = (1 << 31) - 1;
/// Largest number of cells in one cost matrix.
pub const MAX_CELLS: usize = 1 << 20;

/// An `m × n` grid of non-negative integer costs, stored row-major.
///
/// The bounds on cell values and cell count guarantee that every sum formed
/// during reduction fits in a `u64` without overflow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<u64>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, cells: Vec<u64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::param(format!(
                "cost matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        let count = rows
            .checked_mul(cols)
            .filter(|&c| c <= MAX_CELLS)
            .ok_or_else(|| Error::param(format!("cost matrix {rows}x{cols} exceeds {MAX_CELLS} cells")))?;
        if cells.len() != count {
            return Err(Error::Dimension {
                expected: count,
                actual: cells.len(),
            });
        }
        if let Some(v) = cells.iter().find(|&&v| v > MAX_CELL) {
            return Err(Error::param(format!("cost {v} exceeds {MAX_CELL}")));
        }
        Ok(CostMatrix { rows, cols, cells })
    }

    /// Builds a matrix from nested rows. All rows must have the same length.
    pub fn from_rows<R, T>(rows: &[R]) -> Result<Self>
    where
        R: AsRef<[T]>,
        T: Copy + Into<u64>,
    {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut cells = Vec::with_capacity(m * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: row.len(),
                });
            }
            cells.extend(row.iter().map(|&v| v.into()));
        }
        Self::new(m, n, cells)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.cells[row * self.cols + col]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = u64> + '_ {
        self.cells.iter().skip(col).step_by(self.cols).copied()
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    /// Swaps rows and columns.
    pub fn transpose(&self) -> CostMatrix {
        let mut cells = Vec::with_capacity(self.cells.len());
        for c in 0..self.cols {
            cells.extend(self.column(c));
        }
        CostMatrix {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    pub fn column_min(&self, col: usize) -> u64 {
        self.column(col).min().unwrap_or(0)
    }

    pub fn column_max(&self, col: usize) -> u64 {
        self.column(col).max().unwrap_or(0)
    }
}

impl fmt::Display for CostMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_grid(f, self.rows, self.cols, |r, c| self.get(r, c).to_string())
    }
}

/// Writes a right-aligned text grid, one row per line.
pub(crate) fn write_grid(
    f: &mut impl fmt::Write,
    rows: usize,
    cols: usize,
    cell: impl Fn(usize, usize) -> String,
) -> fmt::Result {
    let text: Vec<Vec<String>> = (0..rows)
        .map(|r| (0..cols).map(|c| cell(r, c)).collect())
        .collect();
    let widths: Vec<usize> = (0..cols)
        .map(|c| text.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    for row in &text {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        writeln!(f, "{}", line.join("  "))?;
    }
    Ok(())
}
