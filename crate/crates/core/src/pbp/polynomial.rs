use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A product of Boolean variables, identified by the set of origin-matrix
/// rows it multiplies. The empty set is the constant monomial.
///
/// Rows are stored 0-based and sorted; every textual form is 1-based.
/// Terms order first by size, then colexicographically (by highest row,
/// then the next highest, ...), which is the order used for display.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Term(Vec<u32>);

impl Term {
    pub fn constant() -> Self {
        Term(Vec::new())
    }

    /// Builds a term from 0-based row indices in any order; duplicates collapse.
    pub fn from_rows(rows: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = rows.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Term(v)
    }

    /// Builds a term from 1-based row numbers as written in `y_i` notation.
    pub fn from_one_based(rows: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v = Vec::new();
        for r in rows {
            if r == 0 {
                return Err(Error::param("variable indices are 1-based"));
            }
            v.push(r - 1);
        }
        Ok(Self::from_rows(v))
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.0.iter().map(|r| r + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_constant()
    }

    pub fn is_subset(&self, other: &Term) -> bool {
        // both sorted
        let mut it = other.0.iter();
        self.0.iter().all(|r| it.by_ref().any(|o| o == r))
    }

    pub(crate) fn push_sorted(&mut self, row: u32) {
        let pos = self.0.binary_search(&row).unwrap_or_else(|p| p);
        if self.0.get(pos) != Some(&row) {
            self.0.insert(pos, row);
        }
    }

    /// Value of the monomial under an assignment of the variables.
    pub fn eval(&self, y: &[bool]) -> bool {
        self.0.iter().all(|&r| y[r as usize])
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "y{}", r + 1)?;
        }
        Ok(())
    }
}

/// One monomial in the JSON exchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: u64,
    /// 1-based row numbers, ascending.
    pub rows: Vec<u32>,
}

/// A canonical penalty-based pseudo-Boolean polynomial.
///
/// Coefficients are strictly positive; terms are keyed by their row set and
/// each has at most `m - 1` variables, `m` being the row count of the cost
/// matrix the polynomial came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    rows: usize,
    terms: BTreeMap<Term, u64>,
}

impl Polynomial {
    pub fn zero(rows: usize) -> Self {
        Polynomial {
            rows,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a canonical polynomial, summing repeated terms and dropping
    /// zero coefficients.
    pub fn from_terms(rows: usize, terms: impl IntoIterator<Item = (Term, u64)>) -> Result<Self> {
        if rows == 0 {
            return Err(Error::param("polynomial needs at least one origin row"));
        }
        let mut p = Polynomial::zero(rows);
        for (t, c) in terms {
            if let Some(&r) = t.rows().last() {
                if r as usize >= rows {
                    return Err(Error::param(format!("variable y{} exceeds row count {rows}", r + 1)));
                }
            }
            if t.len() >= rows {
                return Err(Error::param(format!(
                    "term {t} has {} variables, at most {} allowed",
                    t.len(),
                    rows - 1
                )));
            }
            p.add(t, c)?;
        }
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(rows: usize, terms: BTreeMap<Term, u64>) -> Self {
        Polynomial { rows, terms }
    }

    fn add(&mut self, t: Term, c: u64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(t).or_insert(0);
        *slot = slot
            .checked_add(c)
            .ok_or_else(|| Error::consistency("coefficient overflow"))?;
        Ok(())
    }

    /// Row count of the origin matrix (number of Boolean variables).
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Term, u64)> + '_ {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn term_map(&self) -> &BTreeMap<Term, u64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &Term) -> u64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    pub fn constant(&self) -> u64 {
        self.coefficient(&Term::constant())
    }

    /// Largest number of variables in any stored monomial; 0 for constants.
    pub fn degree(&self) -> usize {
        // BTreeMap order is size-major, so the last key is a largest term.
        self.terms.keys().next_back().map_or(0, Term::len)
    }

    pub fn evaluate(&self, y: &[bool]) -> Result<u64> {
        if y.len() != self.rows {
            return Err(Error::Dimension {
                expected: self.rows,
                actual: y.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .filter(|(t, _)| t.eval(y))
            .map(|(_, &c)| c)
            .sum())
    }

    /// Drops every monomial with `degree` or more variables.
    pub fn truncate(&self, degree: usize) -> Result<Polynomial> {
        if degree == 0 {
            return Err(Error::param("truncation degree must be at least 1"));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(t, _)| t.len() < degree)
            .map(|(t, &c)| (t.clone(), c))
            .collect();
        Ok(Polynomial {
            rows: self.rows,
            terms,
        })
    }

    pub fn equivalence_key(&self, include_constant: bool) -> EquivalenceKey {
        let terms = self
            .terms
            .iter()
            .filter(|(t, _)| include_constant || !t.is_constant())
            .map(|(t, &c)| (t.rows().to_vec(), c))
            .collect();
        EquivalenceKey {
            rows: self.rows,
            terms,
        }
    }

    /// Text form: `c0 + c1*y1*y3 + ...`, terms in size-then-colex order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the text form written by [`Polynomial::to_text`].
    pub fn parse_text(s: &str, rows: usize) -> Result<Polynomial> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::param("empty polynomial text"));
        }
        let mut terms = Vec::new();
        for piece in s.split('+') {
            let mut factors = piece.trim().split('*').map(str::trim);
            let coeff = factors
                .next()
                .filter(|f| !f.is_empty())
                .ok_or_else(|| Error::param(format!("missing coefficient in {piece:?}")))?;
            let coeff: u64 = coeff
                .parse()
                .map_err(|_| Error::param(format!("bad coefficient {coeff:?}")))?;
            let mut vars = Vec::new();
            for f in factors {
                let idx = f
                    .strip_prefix('y')
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(|| Error::param(format!("bad variable {f:?}")))?;
                vars.push(idx);
            }
            terms.push((Term::from_one_based(vars)?, coeff));
        }
        Polynomial::from_terms(rows, terms)
    }

    pub fn to_monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(t, &coeff)| Monomial {
                coeff,
                rows: t.one_based(),
            })
            .collect()
    }

    pub fn from_monomials(rows: usize, monomials: &[Monomial]) -> Result<Polynomial> {
        let terms = monomials
            .iter()
            .map(|m| Ok((Term::from_one_based(m.rows.iter().copied())?, m.coeff)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(rows, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_monomials()).expect("monomials serialize")
    }

    pub fn from_json(s: &str, rows: usize) -> Result<Polynomial> {
        let monomials: Vec<Monomial> =
            serde_json::from_str(s).map_err(|e| Error::param(format!("bad polynomial JSON: {e}")))?;
        Polynomial::from_monomials(rows, &monomials)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.is_constant() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{t}")?;
            }
        }
        Ok(())
    }
}

/// Comparable fingerprint of a polynomial: equal keys exactly when the
/// polynomials (optionally ignoring their constants) are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivalenceKey {
    rows: usize,
    terms: Vec<(Vec<u32>, u64)>,
}

impl fmt::Display for EquivalenceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.rows)?;
        for (rows, c) in &self.terms {
            write!(f, "|{c}")?;
            for r in rows {
                write!(f, ".{}", r + 1)?;
            }
        }
        Ok(())
    }
}
