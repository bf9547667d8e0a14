//! Superregularity of the lower triangular Toeplitz matrix with first column
//! `a_1, ..., a_gamma`.
//!
//! A minor on rows `i_1 < ... < i_m` and columns `j_1 < ... < j_m` is
//! trivially zero exactly when `j_l > i_l` for some `l`. For a fixed row set
//! the allowed column selections are therefore the intervals `j_l <= i_l`,
//! and the same pruned search as for sliding matrices applies.

use crate::gf::FieldSpec;
use crate::gfmatrix::GfMatrix;

use super::{first_dependent, Selectable};

pub fn toeplitz_matrix(field: &FieldSpec, a: &[u32]) -> GfMatrix {
    let g = a.len();
    let mut m = GfMatrix::zeros(field, g, g);
    for i in 0..g {
        for j in 0..=i {
            m.set(i, j, a[i - j]);
        }
    }
    m
}

pub fn toeplitz_minor_is_trivially_zero(rows: &[usize], cols: &[usize]) -> bool {
    rows.iter().zip(cols).any(|(i, j)| j > i)
}

/// Columns `0..=last` of the Toeplitz matrix restricted to a row set.
struct RowView<'a> {
    field: &'a FieldSpec,
    rows: &'a [usize],
    reach: Vec<usize>,
    columns: Vec<Vec<u32>>,
}

impl<'a> RowView<'a> {
    fn new(field: &'a FieldSpec, a: &[u32], rows: &'a [usize]) -> Self {
        let last = *rows.last().expect("nonempty row set");
        let columns = (0..=last)
            .map(|j| rows.iter().map(|&i| if i >= j { a[i - j] } else { 0 }).collect())
            .collect();
        let mut reach = rows.to_vec();
        for l in (0..rows.len().saturating_sub(1)).rev() {
            reach[l] = reach[l].min(reach[l + 1] - 1);
        }
        RowView {
            field,
            rows,
            reach,
            columns,
        }
    }
}

impl Selectable for RowView<'_> {
    fn field(&self) -> &FieldSpec {
        self.field
    }
    fn ambient(&self) -> usize {
        self.rows.len()
    }
    fn candidate_count(&self) -> usize {
        self.columns.len()
    }
    fn candidate(&self, i: usize) -> &[u32] {
        &self.columns[i]
    }
    fn extends(&self, prefix: &[usize], next: usize) -> bool {
        let p = prefix.len();
        p < self.rows.len() && prefix.last().map_or(true, |&x| next > x) && next <= self.reach[p]
    }
}

/// A vanishing, not trivially zero minor whose last row is `a.len() - 1`,
/// as `(rows, cols)`.
pub(crate) fn last_row_violation(field: &FieldSpec, a: &[u32]) -> Option<(Vec<usize>, Vec<usize>)> {
    let last = a.len().checked_sub(1)?;
    // Row sets containing `last`, by bitmask over the earlier rows.
    for mask in 0u64..(1u64 << last) {
        let mut rows: Vec<usize> = (0..last).filter(|&i| mask >> i & 1 == 1).collect();
        rows.push(last);
        let view = RowView::new(field, a, &rows);
        if let Some(prefix) = first_dependent(&view) {
            let mut cols = prefix;
            while cols.len() < rows.len() {
                let start = cols.last().map_or(0, |&x| x + 1);
                let next = (start..view.candidate_count())
                    .find(|&c| view.extends(&cols, c))
                    .expect("dependent prefix is extendable");
                cols.push(next);
            }
            return Some((rows, cols));
        }
    }
    None
}

/// First vanishing minor that is not trivially zero, ordered by last row.
pub fn superregular_violation(field: &FieldSpec, a: &[u32]) -> Option<(Vec<usize>, Vec<usize>)> {
    (1..=a.len()).find_map(|t| last_row_violation(field, &a[..t]))
}

pub fn is_superregular_toeplitz(field: &FieldSpec, a: &[u32]) -> bool {
    superregular_violation(field, a).is_none()
}
