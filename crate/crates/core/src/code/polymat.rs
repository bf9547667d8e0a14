//! Polynomial matrices given as coefficient lists `M(z) = M_0 + M_1 z + ...`.

use crate::gf::poly::Poly;
use crate::gf::FieldSpec;
use crate::gfmatrix::{GfMatrix, IncrementalEliminator, MatrixError};

use super::CodeError;

/// Entry matrix of polynomials.
pub fn entries(coeffs: &[GfMatrix]) -> Vec<Vec<Poly>> {
    let (rows, cols) = (coeffs[0].rows(), coeffs[0].cols());
    (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| Poly::from_coeffs(coeffs.iter().map(|m| m.get(r, c)).collect()))
                .collect()
        })
        .collect()
}

/// Product of two polynomial matrices.
pub fn multiply(field: &FieldSpec, a: &[GfMatrix], b: &[GfMatrix]) -> Result<Vec<GfMatrix>, MatrixError> {
    let mut out = vec![GfMatrix::zeros(field, a[0].rows(), b[0].cols()); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let p = ai.mul(bj)?;
            let acc = &mut out[i + j];
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    acc.set(r, c, field.add(acc.get(r, c), p.get(r, c)));
                }
            }
        }
    }
    Ok(out)
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination; every division is exact.
pub fn det(field: &FieldSpec, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let mut negate = false;
    let mut prev = Poly::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k], field).sub(&m[i][k].mul(&m[k][j], field), field);
                let (q, r) = num.div_rem(&prev, field);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.scale(field.neg(1), field)
    } else {
        d
    }
}

/// Monic gcd of all full-size minors; the zero polynomial if none is nonzero.
pub fn full_minor_gcd(field: &FieldSpec, coeffs: &[GfMatrix]) -> Poly {
    let e = entries(coeffs);
    let (rows, cols) = (e.len(), e[0].len());
    let wide = rows <= cols;
    let size = rows.min(cols);
    let pick = if wide { cols } else { rows };
    let mut g = Poly::zero();
    for subset in combinations(pick, size) {
        let sub: Vec<Vec<Poly>> = if wide {
            e.iter().map(|row| subset.iter().map(|&c| row[c].clone()).collect()).collect()
        } else {
            subset.iter().map(|&r| e[r].clone()).collect()
        };
        g = g.gcd(&det(field, sub), field);
        if g.is_nonzero_constant() {
            break;
        }
    }
    g
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Minimal polynomial basis of the right kernel of `M(z)` (`rows x cols`,
/// assumed of full row rank), returned as the coefficients of a
/// `cols x (cols - rows)` matrix.
///
/// Works degree by degree: the kernel vectors of degree at most `d` are the
/// nullspace of a block-Toeplitz matrix, and a new basis vector is taken
/// whenever that nullspace is not spanned by shifts of earlier ones. Choosing
/// greedily by degree makes the leading column coefficients independent.
pub fn kernel_basis(field: &FieldSpec, coeffs: &[GfMatrix], max_degree: usize) -> Result<Vec<GfMatrix>, CodeError> {
    let (rows, cols) = (coeffs[0].rows(), coeffs[0].cols());
    let want = cols - rows;
    let deg = coeffs.len() - 1;
    let mut basis: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut d = 0;
    while basis.len() < want {
        if d > max_degree {
            let found = basis.iter().map(|(dd, _)| dd).sum();
            return Err(CodeError::KernelDegree {
                found,
                expected: max_degree,
            });
        }
        let block_rows = d + deg + 1;
        let mut t = GfMatrix::zeros(field, block_rows * rows, (d + 1) * cols);
        for bi in 0..=d {
            for (i, h) in coeffs.iter().enumerate() {
                for r in 0..rows {
                    for c in 0..cols {
                        t.set((bi + i) * rows + r, bi * cols + c, h.get(r, c));
                    }
                }
            }
        }
        let len = (d + 1) * cols;
        let mut elim = IncrementalEliminator::new(field, len);
        for (bd, v) in &basis {
            for shift in 0..=d - bd {
                let mut x = vec![0; len];
                x[shift * cols..shift * cols + v.len()].copy_from_slice(v);
                elim.try_push(&x)?;
            }
        }
        for x in t.nullspace() {
            if basis.len() == want {
                break;
            }
            if elim.try_push(&x)? {
                basis.push((d, x));
            }
        }
        d += 1;
    }
    let top = basis.iter().map(|(bd, _)| *bd).max().unwrap_or(0);
    let mut out = vec![GfMatrix::zeros(field, cols, want); top + 1];
    for (j, (bd, v)) in basis.iter().enumerate() {
        for i in 0..=*bd {
            for r in 0..cols {
                out[i].set(r, j, v[i * cols + r]);
            }
        }
    }
    Ok(out)
}
