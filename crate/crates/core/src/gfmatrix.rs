//! Dense matrices over GF(q), plus the incremental column eliminator that
//! drives every minor-enumeration search in [`crate::verify`].

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry {value} is not an element of GF({q})")]
    EntryOutOfRange { value: u32, q: u32 },
    #[error("matrices over different fields")]
    FieldMismatch,
    #[error("pop on an empty eliminator")]
    EmptyPop,
}

/// Row-major dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GfMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from nested rows, validating shape and entries.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for &v in row {
                if !field.contains(v) {
                    return Err(MatrixError::EntryOutOfRange { value: v, q: field.q() });
                }
            }
            data.extend_from_slice(row);
        }
        Ok(GfMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_flat(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(&value) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(MatrixError::EntryOutOfRange { value, q: field.q() });
        }
        Ok(GfMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Submatrix on the given row and column index lists (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> GfMatrix {
        let mut out = GfMatrix::zeros(&self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> GfMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn mul(&self, other: &GfMatrix) -> Result<GfMatrix, MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = GfMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        row_reduce(&self.field, &mut work, self.rows, self.cols).0
    }

    /// Basis of the right nullspace `{x : A x = 0}`, one vector per free column
    /// of the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        for c in 0..cols {
            let r = pivots.len();
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            let inv = f.inv(a[r * cols + c]);
            for j in 0..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
            for i in 0..rows {
                let factor = a[i * cols + c];
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..cols {
                    a[i * cols + j] = f.sub(a[i * cols + j], f.mul(factor, a[r * cols + j]));
                }
            }
            pivots.push(c);
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![0; cols];
            x[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(a[r * cols + free]);
            }
            basis.push(x);
        }
        basis
    }

    pub fn det(&self) -> Result<u32, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(det_in_place(&self.field, &mut self.data.clone(), self.rows))
    }
}

/// Forward elimination; returns `(rank, product of pivots with swap sign)`.
fn row_reduce(f: &FieldSpec, a: &mut [u32], rows: usize, cols: usize) -> (usize, u32) {
    let mut rank = 0;
    let mut scale = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
            scale = f.neg(scale);
        }
        let pivot = a[rank * cols + c];
        scale = f.mul(scale, pivot);
        let pinv = f.inv(pivot);
        for r in rank + 1..rows {
            let factor = f.mul(a[r * cols + c], pinv);
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let v = f.sub(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
                a[r * cols + j] = v;
            }
        }
        rank += 1;
    }
    (rank, scale)
}

/// Determinant of a square row-major buffer, destroying it.
pub(crate) fn det_in_place(f: &FieldSpec, a: &mut [u32], n: usize) -> u32 {
    let (rank, scale) = row_reduce(f, a, n, n);
    if rank < n {
        0
    } else {
        scale
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Serialize for GfMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

/// Maintains a set of linearly independent vectors of fixed length and tests
/// whether the next one extends it.
///
/// Accepted vectors are stored in reduced form: each has a pivot coordinate
/// equal to 1, and is zero at the pivots of all earlier vectors. A candidate is
/// reduced against them in order; it is independent iff something survives.
/// The stack of reduced vectors doubles as the undo log, so [`pop`] restores
/// the exact previous state.
///
/// [`pop`]: IncrementalEliminator::pop
#[derive(Clone)]
pub struct IncrementalEliminator {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<u32>,
    pivots: Vec<usize>,
    scratch: Vec<u32>,
}

impl IncrementalEliminator {
    pub fn new(field: &FieldSpec, ambient: usize) -> Self {
        IncrementalEliminator {
            field: field.clone(),
            ambient,
            basis: Vec::with_capacity(ambient * ambient),
            pivots: Vec::with_capacity(ambient),
            scratch: vec![0; ambient],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    /// Whether `v` is independent of the accepted set, without changing state.
    pub fn is_independent(&mut self, v: &[u32]) -> Result<bool, MatrixError> {
        self.reduce(v).map(|p| p.is_some())
    }

    /// Accepts `v` if it is independent of the accepted set. Returns whether it
    /// was accepted; a rejected push leaves the state untouched.
    pub fn try_push(&mut self, v: &[u32]) -> Result<bool, MatrixError> {
        let Some(pivot) = self.reduce(v)? else {
            return Ok(false);
        };
        let f = &self.field;
        let inv = f.inv(self.scratch[pivot]);
        for x in self.scratch.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.basis.extend_from_slice(&self.scratch);
        self.pivots.push(pivot);
        Ok(true)
    }

    pub fn pop(&mut self) -> Result<(), MatrixError> {
        if self.pivots.pop().is_none() {
            return Err(MatrixError::EmptyPop);
        }
        self.basis.truncate(self.pivots.len() * self.ambient);
        Ok(())
    }

    pub fn clear(&mut self) {
        self.pivots.clear();
        self.basis.clear();
    }

    /// Reduces `v` into the scratch buffer; returns the first surviving coordinate.
    fn reduce(&mut self, v: &[u32]) -> Result<Option<usize>, MatrixError> {
        if v.len() != self.ambient {
            return Err(MatrixError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let f = &self.field;
        let n = self.ambient;
        self.scratch.copy_from_slice(v);
        for (i, &p) in self.pivots.iter().enumerate() {
            let factor = self.scratch[p];
            if factor == 0 {
                continue;
            }
            let b = &self.basis[i * n..(i + 1) * n];
            for (x, &bj) in self.scratch.iter_mut().zip(b) {
                if bj != 0 {
                    *x = f.sub(*x, f.mul(factor, bj));
                }
            }
        }
        Ok(self.scratch.iter().position(|&x| x != 0))
    }
}

impl PartialEq for IncrementalEliminator {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.ambient == other.ambient
            && self.pivots == other.pivots
            && self.basis == other.basis
    }
}

impl Eq for IncrementalEliminator {}

impl fmt::Debug for IncrementalEliminator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IncrementalEliminator")
            .field("ambient", &self.ambient)
            .field("pivots", &self.pivots)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn random_matrix(f: &FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> GfMatrix {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..f.q())).collect();
        GfMatrix::from_flat(f, rows, cols, data).unwrap()
    }

    /// Permutation-expansion determinant, independent of elimination.
    fn leibniz_det(m: &GfMatrix) -> u32 {
        let f = m.field();
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0;
        permute(&mut perm, 0, &mut |p| {
            let mut term = 1;
            for (r, &c) in p.iter().enumerate() {
                term = f.mul(term, m.get(r, c));
            }
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            if inversions % 2 == 1 {
                term = f.neg(term);
            }
            total = f.add(total, term);
        });
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            visit(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, visit);
            p.swap(k, i);
        }
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    /// Rank as the size of the largest nonvanishing minor.
    fn rank_by_minors(m: &GfMatrix) -> usize {
        (1..=m.rows().min(m.cols()))
            .rev()
            .find(|&s| {
                combinations(m.rows(), s).iter().any(|rs| {
                    combinations(m.cols(), s)
                        .iter()
                        .any(|cs| leibniz_det(&m.select(rs, cs)) != 0)
                })
            })
            .unwrap_or(0)
    }

    #[test]
    fn rank_examples() {
        let f = gf(3);
        assert_eq!(GfMatrix::identity(&f, 3).rank(), 3);
        assert_eq!(GfMatrix::zeros(&f, 2, 4).rank(), 0);
        let m = GfMatrix::from_rows(&f, &[vec![1, 0, 1, 2], vec![0, 1, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn det_examples() {
        let f = gf(3);
        let m = GfMatrix::from_rows(&f, &[vec![1, 2], vec![1, 1]]).unwrap();
        assert_eq!(m.det().unwrap(), 2);
        assert_eq!(GfMatrix::identity(&f, 4).det().unwrap(), 1);
        let s = GfMatrix::from_rows(&f, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(s.det().unwrap(), 0);
        let ns = GfMatrix::zeros(&f, 2, 3);
        assert!(matches!(ns.det(), Err(MatrixError::NotSquare { .. })));
    }

    #[test]
    fn from_rows_validation() {
        let f = gf(3);
        assert!(matches!(
            GfMatrix::from_rows(&f, &[vec![1, 3]]),
            Err(MatrixError::EntryOutOfRange { value: 3, q: 3 })
        ));
        assert!(matches!(
            GfMatrix::from_rows(&f, &[vec![1, 2], vec![1]]),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn det_matches_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = gf(q);
            for n in 1..=5 {
                for _ in 0..20 {
                    let m = random_matrix(&f, n, n, &mut rng);
                    assert_eq!(m.det().unwrap(), leibniz_det(&m));
                }
            }
        }
    }

    #[test]
    fn rank_matches_minor_inspection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            for (r, c) in [(2, 3), (3, 3), (4, 4), (3, 6), (6, 3), (4, 6), (6, 6)] {
                for _ in 0..10 {
                    // Low-rank products make rank deficiency common.
                    let inner = rng.gen_range(1..=r.min(c));
                    let a = random_matrix(&f, r, inner, &mut rng);
                    let b = random_matrix(&f, inner, c, &mut rng);
                    let m = if rng.gen_bool(0.5) {
                        a.mul(&b).unwrap()
                    } else {
                        random_matrix(&f, r, c, &mut rng)
                    };
                    assert_eq!(m.rank(), rank_by_minors(&m), "{m:?}");
                }
            }
        }
    }

    #[test]
    fn nullspace_is_annihilated_and_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2u64, 3, 4, 7] {
            let f = gf(q);
            for (r, c) in [(1, 3), (2, 5), (3, 3), (4, 7), (5, 4)] {
                let m = random_matrix(&f, r, c, &mut rng);
                let ns = m.nullspace();
                assert_eq!(ns.len(), c - m.rank());
                for x in &ns {
                    let col = GfMatrix::from_flat(&f, c, 1, x.clone()).unwrap();
                    assert!(m.mul(&col).unwrap().is_zero());
                }
                let rows: Vec<Vec<u32>> = ns.clone();
                if !rows.is_empty() {
                    assert_eq!(GfMatrix::from_rows(&f, &rows).unwrap().rank(), ns.len());
                }
            }
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..1000 {
            let q = [2u64, 3, 4, 5, 7][trial % 5];
            let f = gf(q);
            let n = 1 + trial % 5;
            let a = random_matrix(&f, n, n, &mut rng);
            let b = random_matrix(&f, n, n, &mut rng);
            let ab = a.mul(&b).unwrap();
            assert_eq!(
                ab.det().unwrap(),
                f.mul(a.det().unwrap(), b.det().unwrap())
            );
        }
    }

    #[test]
    fn eliminator_basic() {
        let f = gf(2);
        let mut e = IncrementalEliminator::new(&f, 2);
        assert!(e.try_push(&[1, 0]).unwrap());
        assert!(!e.try_push(&[1, 0]).unwrap());
        let f3 = gf(3);
        let mut e = IncrementalEliminator::new(&f3, 2);
        assert!(e.try_push(&[1, 0]).unwrap());
        assert!(e.try_push(&[0, 1]).unwrap());
        assert!(e.is_full());
        assert!(matches!(
            e.try_push(&[1]),
            Err(MatrixError::DimensionMismatch { .. })
        ));
        e.pop().unwrap();
        e.pop().unwrap();
        assert_eq!(e.pop(), Err(MatrixError::EmptyPop));
    }

    #[test]
    fn eliminator_dfs_matches_determinants() {
        let f = gf(5);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        // Make some 6-subsets dependent by repeating a few columns.
        let mut m = random_matrix(&f, 6, 12, &mut rng);
        for r in 0..6 {
            let v = m.get(r, 0);
            m.set(r, 7, f.mul(v, 3));
            let w = f.add(m.get(r, 1), m.get(r, 2));
            m.set(r, 9, w);
        }
        let cols: Vec<Vec<u32>> = (0..12).map(|c| m.column(c)).collect();
        let mut e = IncrementalEliminator::new(&f, 6);
        let mut nonsingular = Vec::new();
        fn dfs(
            start: usize,
            cols: &[Vec<u32>],
            e: &mut IncrementalEliminator,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == 6 {
                out.push(cur.clone());
                return;
            }
            for c in start..cols.len() {
                if e.try_push(&cols[c]).unwrap() {
                    cur.push(c);
                    dfs(c + 1, cols, e, cur, out);
                    cur.pop();
                    e.pop().unwrap();
                }
            }
        }
        dfs(0, &cols, &mut e, &mut Vec::new(), &mut nonsingular);
        let expected: Vec<Vec<usize>> = combinations(12, 6)
            .into_iter()
            .filter(|s| m.select_columns(s).det().unwrap() != 0)
            .collect();
        assert_eq!(nonsingular, expected);
        assert!(expected.len() < 924);
    }

    #[test]
    fn push_pop_restores_state() {
        let f = gf(7);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let mut e = IncrementalEliminator::new(&f, 5);
            let mut replay: Vec<Vec<u32>> = Vec::new();
            for _ in 0..30 {
                if rng.gen_bool(0.6) || e.is_empty() {
                    let v: Vec<u32> = (0..5).map(|_| rng.gen_range(0..7)).collect();
                    let before = e.clone();
                    if e.try_push(&v).unwrap() {
                        replay.push(v);
                    } else {
                        assert_eq!(e, before);
                    }
                } else {
                    e.pop().unwrap();
                    replay.pop();
                }
            }
            let mut fresh = IncrementalEliminator::new(&f, 5);
            for v in &replay {
                assert!(fresh.try_push(v).unwrap());
            }
            assert_eq!(e, fresh);
        }
    }
}
