//! Compact column layout of a reduced polynomial.
//!
//! Monomials are arranged into columns where each column is a chain of
//! strictly growing row sets. The fewest such columns equals the largest
//! antichain of terms (Dilworth); it is found as `terms - max matching` on
//! the strict-subset relation, which is transitive, so path covers in its
//! graph are chain partitions.

use super::polynomial::{Polynomial, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnPacking {
    columns: Vec<Vec<(Term, u64)>>,
}

impl ColumnPacking {
    pub fn columns(&self) -> &[Vec<(Term, u64)>] {
        &self.columns
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    /// Longest chain; the row count of the packed display.
    pub fn height(&self) -> usize {
        self.columns.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Display grid with columns bottom-aligned by term size, as
    /// `height × width` cells of `coeff*y..` text (empty where absent).
    pub fn to_grid(&self, rows: usize) -> Vec<Vec<String>> {
        let mut grid = vec![vec![String::new(); self.columns.len()]; rows.max(1)];
        for (c, col) in self.columns.iter().enumerate() {
            for (t, coeff) in col {
                let cell = if t.is_constant() {
                    coeff.to_string()
                } else {
                    format!("{coeff}*{t}")
                };
                if let Some(row) = grid.get_mut(t.len()) {
                    row[c] = cell;
                }
            }
        }
        grid
    }
}

pub fn column_pack(p: &Polynomial) -> ColumnPacking {
    let terms: Vec<(&Term, u64)> = p.terms().collect();
    let n = terms.len();
    if n == 0 {
        return ColumnPacking { columns: Vec::new() };
    }

    // succ[i]: terms strictly containing term i
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| terms[i].0.len() < terms[j].0.len() && terms[i].0.is_subset(terms[j].0))
                .collect()
        })
        .collect();

    // Kuhn's augmenting paths; deterministic visiting order.
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        augment(i, &succ, &mut seen, &mut match_left, &mut match_right);
    }

    let mut columns = Vec::new();
    for (start, matched) in match_right.iter().enumerate() {
        if matched.is_some() {
            continue;
        }
        let mut chain = Vec::new();
        let mut cur = Some(start);
        while let Some(i) = cur {
            chain.push((terms[i].0.clone(), terms[i].1));
            cur = match_left[i];
        }
        columns.push(chain);
    }
    ColumnPacking { columns }
}

fn augment(
    u: usize,
    succ: &[Vec<usize>],
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &v in &succ[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if match_right[v].is_none_or(|w| augment(w, succ, seen, match_left, match_right)) {
            match_right[v] = Some(u);
            match_left[u] = Some(v);
            return true;
        }
    }
    false
}
