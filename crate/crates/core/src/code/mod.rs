//! Convolutional code representations: parameters, polynomial parity-check
//! and generator matrices, their sliding matrices, and derived codes.

mod distance;
mod file;
pub mod polymat;
mod sliding;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::poly::Poly;
use crate::gf::{FieldSpec, GfError};
use crate::gfmatrix::{GfMatrix, MatrixError};

pub use distance::{column_distance, column_distances, DistanceProfile, DISTANCE_WORK_LIMIT};
pub use file::{Code, CodeFile, CodeKind};
pub use sliding::{SelectionRule, SlidingKind, SlidingMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("{what}: expected {expected:?}, found {found:?}")]
    Shape {
        what: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("coefficient matrices over different fields")]
    FieldMismatch,
    #[error(
        "parity-check matrix is not row proper: row degrees sum to {row_degree_sum} \
         (delta = {delta}), leading row coefficient matrix has rank {leading_rank} of {rows}"
    )]
    NotRowProper {
        row_degree_sum: usize,
        delta: usize,
        leading_rank: usize,
        rows: usize,
    },
    #[error(
        "generator matrix is not minimal: column degrees sum to {column_degree_sum} \
         (delta = {delta}), leading column coefficient matrix has rank {leading_rank} of {cols}"
    )]
    NotMinimal {
        column_degree_sum: usize,
        delta: usize,
        leading_rank: usize,
        cols: usize,
    },
    #[error("the code is catastrophic (full-size minors share the factor {0:?})")]
    Catastrophic(Vec<u32>),
    #[error("matrix degree {degree} exceeds nu = {nu}")]
    DegreeExceedsNu { degree: usize, nu: usize },
    #[error("kernel computation produced degree {found}, expected {expected}")]
    KernelDegree { found: usize, expected: usize },
    #[error("work estimate {work} exceeds the limit {limit}")]
    TooLarge { work: u128, limit: u128 },
    #[error("malformed code file: {0}")]
    File(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The triple `(n, k, delta)`; `L`, `nu` and `r` are always derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct CodeParams {
    n: usize,
    k: usize,
    delta: usize,
}

#[derive(Deserialize)]
struct RawParams {
    n: usize,
    k: usize,
    delta: usize,
}

impl TryFrom<RawParams> for CodeParams {
    type Error = CodeError;
    fn try_from(raw: RawParams) -> Result<Self, CodeError> {
        CodeParams::new(raw.n, raw.k, raw.delta)
    }
}

impl CodeParams {
    pub fn new(n: usize, k: usize, delta: usize) -> Result<Self, CodeError> {
        if k == 0 || k >= n {
            return Err(CodeError::InvalidParams(format!(
                "need 1 <= k < n, got n={n}, k={k}"
            )));
        }
        Ok(CodeParams { n, k, delta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Redundancy `n - k`.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// `L = floor(delta/k) + floor(delta/(n-k))`.
    pub fn l(&self) -> usize {
        self.delta / self.k + self.delta / self.redundancy()
    }

    /// `nu = ceil(delta/(n-k))`, the generic row degree bound.
    pub fn nu(&self) -> usize {
        self.delta.div_ceil(self.redundancy())
    }

    /// `r = delta mod (n-k)`.
    pub fn r(&self) -> usize {
        self.delta % self.redundancy()
    }

    /// Generic column degree bound `ceil(delta/k)`.
    pub fn mu(&self) -> usize {
        self.delta.div_ceil(self.k)
    }

    /// Parameters of the dual code `(n, n-k, delta)`.
    pub fn dual(&self) -> CodeParams {
        CodeParams {
            n: self.n,
            k: self.n - self.k,
            delta: self.delta,
        }
    }

    /// Upper bound `(n-k)(j+1)+1` on the j-th column distance.
    pub fn column_distance_bound(&self, j: usize) -> usize {
        self.redundancy() * (j + 1) + 1
    }
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.delta)
    }
}

fn check_coeffs(
    field: &FieldSpec,
    coeffs: &[GfMatrix],
    shape: (usize, usize),
    what: &'static str,
) -> Result<(), CodeError> {
    for c in coeffs {
        if c.field() != field {
            return Err(CodeError::FieldMismatch);
        }
        if (c.rows(), c.cols()) != shape {
            return Err(CodeError::Shape {
                what,
                expected: shape,
                found: (c.rows(), c.cols()),
            });
        }
    }
    Ok(())
}

/// Drops trailing zero coefficients, then pads with zeros to at least `min_len`.
fn normalize_len(field: &FieldSpec, mut coeffs: Vec<GfMatrix>, shape: (usize, usize), min_len: usize) -> Vec<GfMatrix> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(GfMatrix::is_zero) {
        coeffs.pop();
    }
    while coeffs.len() < min_len.max(1) {
        coeffs.push(GfMatrix::zeros(field, shape.0, shape.1));
    }
    coeffs
}

fn matrices_from_nested(field: &FieldSpec, nested: &[Vec<Vec<u32>>]) -> Result<Vec<GfMatrix>, CodeError> {
    nested
        .iter()
        .map(|rows| GfMatrix::from_rows(field, rows).map_err(CodeError::from))
        .collect()
}

/// Highest index `i` with `coeffs[i][r][c] != 0` over the given entries.
fn degree_of<I: Iterator<Item = (usize, usize)> + Clone>(coeffs: &[GfMatrix], entries: I) -> Option<usize> {
    (0..coeffs.len())
        .rev()
        .find(|&i| entries.clone().any(|(r, c)| coeffs[i].get(r, c) != 0))
}

/// Parity-check matrix `H(z) = H_0 + H_1 z + ... ` with `(n-k) x n` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheck {
    params: CodeParams,
    field: FieldSpec,
    coeffs: Vec<GfMatrix>,
}

impl ParityCheck {
    /// Coefficients are indexed by the power of `z`. Fewer than `nu + 1`
    /// matrices are padded with zeros.
    pub fn new(field: &FieldSpec, params: CodeParams, coeffs: Vec<GfMatrix>) -> Result<Self, CodeError> {
        let shape = (params.redundancy(), params.n());
        check_coeffs(field, &coeffs, shape, "parity-check coefficient")?;
        Ok(ParityCheck {
            params,
            field: field.clone(),
            coeffs: normalize_len(field, coeffs, shape, params.nu() + 1),
        })
    }

    pub fn from_nested(field: &FieldSpec, params: CodeParams, nested: &[Vec<Vec<u32>>]) -> Result<Self, CodeError> {
        Self::new(field, params, matrices_from_nested(field, nested)?)
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Stored coefficients; at least `nu + 1` of them.
    pub fn coeffs(&self) -> &[GfMatrix] {
        &self.coeffs
    }

    /// Entry `(r, c)` of `H_i`, zero beyond the stored coefficients.
    pub fn entry(&self, i: usize, r: usize, c: usize) -> u32 {
        self.coeffs.get(i).map_or(0, |m| m.get(r, c))
    }

    pub fn poly_entry(&self, r: usize, c: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|m| m.get(r, c)).collect())
    }

    /// Degree of `H(z)`, i.e. the largest index of a nonzero coefficient.
    pub fn degree(&self) -> usize {
        let n = self.params.n();
        degree_of(&self.coeffs, (0..self.params.redundancy()).flat_map(|r| (0..n).map(move |c| (r, c)))).unwrap_or(0)
    }

    /// Degree of each row (zero rows count as degree 0).
    pub fn row_degrees(&self) -> Vec<usize> {
        let n = self.params.n();
        (0..self.params.redundancy())
            .map(|r| degree_of(&self.coeffs, (0..n).map(move |c| (r, c))).unwrap_or(0))
            .collect()
    }

    /// Matrix whose row `r` is row `r` of `H_{deg row r}`.
    pub fn leading_row_matrix(&self) -> GfMatrix {
        let degs = self.row_degrees();
        let mut out = GfMatrix::zeros(&self.field, self.params.redundancy(), self.params.n());
        for (r, &d) in degs.iter().enumerate() {
            for c in 0..self.params.n() {
                out.set(r, c, self.coeffs[d].get(r, c));
            }
        }
        out
    }

    /// Row degrees sum to `delta` and the leading row coefficient matrix has full rank.
    pub fn check_row_proper(&self) -> Result<(), CodeError> {
        let sum: usize = self.row_degrees().iter().sum();
        let rank = self.leading_row_matrix().rank();
        let rows = self.params.redundancy();
        if sum == self.params.delta() && rank == rows {
            Ok(())
        } else {
            Err(CodeError::NotRowProper {
                row_degree_sum: sum,
                delta: self.params.delta(),
                leading_rank: rank,
                rows,
            })
        }
    }

    pub fn is_row_proper(&self) -> bool {
        self.check_row_proper().is_ok()
    }

    /// Gcd of all full-size minors (monic; zero if `H` is rank deficient).
    pub fn minor_gcd(&self) -> Poly {
        polymat::full_minor_gcd(&self.field, &self.coeffs)
    }

    pub fn is_left_prime(&self) -> bool {
        self.minor_gcd().is_nonzero_constant()
    }

    /// The dual code's generator: `H(z)` transposed.
    pub fn dualize(&self) -> Result<Generator, CodeError> {
        let g = self.minor_gcd();
        if !g.is_nonzero_constant() {
            return Err(CodeError::Catastrophic(g.coeffs().to_vec()));
        }
        Generator::new(
            &self.field,
            self.params.dual(),
            self.coeffs.iter().map(GfMatrix::transpose).collect(),
        )
    }

    /// A minimal generator matrix of the code, from the right kernel of `H(z)`.
    pub fn to_generator(&self) -> Result<Generator, CodeError> {
        let basis = polymat::kernel_basis(&self.field, &self.coeffs, self.params.delta())?;
        let g = Generator::new(&self.field, self.params, basis)?;
        let found: usize = g.column_degrees().iter().sum();
        if found != self.params.delta() {
            return Err(CodeError::KernelDegree {
                found,
                expected: self.params.delta(),
            });
        }
        Ok(g)
    }

    /// `z^{row degree} h(z^{-1})` for every row: the reverse code's parity check
    /// when `H` is row proper and left prime.
    pub fn reverse(&self) -> ParityCheck {
        let degs = self.row_degrees();
        let mut coeffs = vec![GfMatrix::zeros(&self.field, self.params.redundancy(), self.params.n()); self.coeffs.len()];
        for (r, &d) in degs.iter().enumerate() {
            for i in 0..=d {
                for c in 0..self.params.n() {
                    coeffs[d - i].set(r, c, self.coeffs[i].get(r, c));
                }
            }
        }
        ParityCheck {
            params: self.params,
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sliding(&self, kind: SlidingKind) -> Result<SlidingMatrix, CodeError> {
        SlidingMatrix::from_parity_check(self, kind, self.params.l())
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        let deg = self.degree();
        self.coeffs[..=deg].iter().map(GfMatrix::to_rows).collect()
    }
}

/// Generator matrix `G(z) = G_0 + G_1 z + ...` with `n x k` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    params: CodeParams,
    field: FieldSpec,
    coeffs: Vec<GfMatrix>,
}

impl Generator {
    pub fn new(field: &FieldSpec, params: CodeParams, coeffs: Vec<GfMatrix>) -> Result<Self, CodeError> {
        let shape = (params.n(), params.k());
        check_coeffs(field, &coeffs, shape, "generator coefficient")?;
        Ok(Generator {
            params,
            field: field.clone(),
            coeffs: normalize_len(field, coeffs, shape, 1),
        })
    }

    pub fn from_nested(field: &FieldSpec, params: CodeParams, nested: &[Vec<Vec<u32>>]) -> Result<Self, CodeError> {
        Self::new(field, params, matrices_from_nested(field, nested)?)
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[GfMatrix] {
        &self.coeffs
    }

    /// Entry `(r, c)` of `G_i`, zero beyond the stored coefficients.
    pub fn entry(&self, i: usize, r: usize, c: usize) -> u32 {
        self.coeffs.get(i).map_or(0, |m| m.get(r, c))
    }

    pub fn poly_entry(&self, r: usize, c: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|m| m.get(r, c)).collect())
    }

    /// Column degrees `delta_1, ..., delta_k` (zero columns count as 0).
    pub fn column_degrees(&self) -> Vec<usize> {
        let n = self.params.n();
        (0..self.params.k())
            .map(|c| degree_of(&self.coeffs, (0..n).map(move |r| (r, c))).unwrap_or(0))
            .collect()
    }

    /// Largest column degree.
    pub fn mu(&self) -> usize {
        self.column_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn leading_column_matrix(&self) -> GfMatrix {
        let degs = self.column_degrees();
        let mut out = GfMatrix::zeros(&self.field, self.params.n(), self.params.k());
        for (c, &d) in degs.iter().enumerate() {
            for r in 0..self.params.n() {
                out.set(r, c, self.coeffs[d].get(r, c));
            }
        }
        out
    }

    /// Column degrees sum to `delta` and the leading column coefficient matrix
    /// has full rank.
    pub fn check_minimal(&self) -> Result<(), CodeError> {
        let sum: usize = self.column_degrees().iter().sum();
        let rank = self.leading_column_matrix().rank();
        let cols = self.params.k();
        if sum == self.params.delta() && rank == cols {
            Ok(())
        } else {
            Err(CodeError::NotMinimal {
                column_degree_sum: sum,
                delta: self.params.delta(),
                leading_rank: rank,
                cols,
            })
        }
    }

    pub fn is_minimal(&self) -> bool {
        self.check_minimal().is_ok()
    }

    pub fn minor_gcd(&self) -> Poly {
        polymat::full_minor_gcd(&self.field, &self.coeffs)
    }

    /// Right primeness of `G(z)`: the gcd of its `k x k` minors is a nonzero constant.
    pub fn is_noncatastrophic(&self) -> bool {
        self.minor_gcd().is_nonzero_constant()
    }

    /// The dual code's parity check: `G(z)` transposed.
    pub fn dualize(&self) -> Result<ParityCheck, CodeError> {
        let g = self.minor_gcd();
        if !g.is_nonzero_constant() {
            return Err(CodeError::Catastrophic(g.coeffs().to_vec()));
        }
        ParityCheck::new(
            &self.field,
            self.params.dual(),
            self.coeffs.iter().map(GfMatrix::transpose).collect(),
        )
    }

    /// A minimal parity-check matrix, from the left kernel of `G(z)`.
    pub fn to_parity_check(&self) -> Result<ParityCheck, CodeError> {
        let transposed: Vec<GfMatrix> = self.coeffs.iter().map(GfMatrix::transpose).collect();
        let basis = polymat::kernel_basis(&self.field, &transposed, self.params.delta())?;
        let h = ParityCheck::new(&self.field, self.params, basis.iter().map(GfMatrix::transpose).collect())?;
        let found: usize = h.row_degrees().iter().sum();
        if found != self.params.delta() {
            return Err(CodeError::KernelDegree {
                found,
                expected: self.params.delta(),
            });
        }
        Ok(h)
    }

    /// Entry `(i, j)` becomes `z^{delta_j} g_ij(z^{-1})`.
    pub fn reverse(&self) -> Generator {
        let degs = self.column_degrees();
        let mut coeffs = vec![GfMatrix::zeros(&self.field, self.params.n(), self.params.k()); self.coeffs.len()];
        for (c, &d) in degs.iter().enumerate() {
            for i in 0..=d {
                for r in 0..self.params.n() {
                    coeffs[d - i].set(r, c, self.coeffs[i].get(r, c));
                }
            }
        }
        Generator {
            params: self.params,
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Codeword coefficients `v_0..v_{len-1}` of `G(z) m(z)` for a message
    /// given as its coefficient vectors `m_0, m_1, ...`.
    pub fn encode(&self, message: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
        let f = &self.field;
        let (n, k) = (self.params.n(), self.params.k());
        (0..len)
            .map(|t| {
                let mut v = vec![0; n];
                for (i, g) in self.coeffs.iter().enumerate().take(t + 1) {
                    let Some(m) = message.get(t - i) else { continue };
                    for r in 0..n {
                        for c in 0..k {
                            v[r] = f.add(v[r], f.mul(g.get(r, c), m[c]));
                        }
                    }
                }
                v
            })
            .collect()
    }

    pub fn sliding(&self) -> Result<SlidingMatrix, CodeError> {
        SlidingMatrix::from_generator(self, self.params.l())
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        let deg = self.mu();
        self.coeffs[..=deg].iter().map(GfMatrix::to_rows).collect()
    }
}
