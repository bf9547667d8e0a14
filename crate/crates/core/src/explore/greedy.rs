//! Entry-by-entry construction of an MDP parity-check matrix over a field
//! larger than the counting bound.
//!
//! `H_0, ..., H_L` are filled in order. When entry `(y, c)` of `H_L` is
//! chosen, every minor on rows `0..=y` that contains column `c`, satisfies
//! the interval rule and involves no unfilled entry is affine in the new
//! value `x`, say `beta + alpha x`. Each such minor forbids at most one value
//! of `x`, and the bound guarantees a survivor.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bounds::{binomial, bound_one, bound_s};
use crate::code::{CodeFile, CodeParams, ParityCheck};
use crate::gf::primes::next_prime_power;
use crate::gf::FieldSpec;
use crate::gfmatrix::{det_in_place, GfMatrix};
use crate::verify;

use super::{ExploreError, SearchConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyOutcome {
    pub params: CodeParams,
    pub q: u64,
    /// Bound the field size was chosen to exceed (`bound_S`, or `bound_one` when `L = 0`).
    pub threshold_name: String,
    pub threshold: String,
    /// Whether the matrix was built for the dual parameters and dualized.
    pub via_dual: bool,
    pub entries: usize,
    pub backtracks: u64,
    pub mdp: bool,
    pub left_prime: bool,
    pub code: CodeFile,
}

/// Builds an MDP code for `params` with `delta < max(k, n-k)`. Without `q`
/// the field is the smallest prime power above the bound. When only
/// `delta < n-k` holds (or the dual bound is smaller) the dual code is built
/// and dualized, which preserves MDP.
pub fn greedy_construct(params: CodeParams, q: Option<u64>, config: &SearchConfig) -> Result<GreedyOutcome, ExploreError> {
    let (k, rk, d) = (params.k(), params.redundancy(), params.delta());
    let n = params.n();
    // With L = 0 and both routes open, take the one with the smaller bound.
    let dual_cheaper = params.l() == 0 && d < rk && binomial(n - 1, k - 1) < binomial(n - 1, rk - 1);
    let via_dual = if d < k && !dual_cheaper {
        false
    } else if d < rk {
        true
    } else {
        return Err(ExploreError::NotApplicable(format!(
            "greedy construction needs delta < max(k, n-k), got {params}"
        )));
    };
    let (threshold_name, threshold) = if params.l() == 0 {
        ("bound_one", bound_one(params)?)
    } else {
        ("bound_S", bound_s(params)?)
    };
    let q = match q {
        Some(q) => q,
        None => {
            let t = threshold.to_u64().filter(|&t| t < 1 << 40).ok_or_else(|| {
                ExploreError::NotApplicable(format!("threshold {threshold} is beyond the supported field sizes"))
            })?;
            next_prime_power(t + 1)
        }
    };
    let field = FieldSpec::of_order(q)?;
    let target = if via_dual { params.dual() } else { params };
    let mut builder = Builder::new(&field, target);
    let backtracks = builder.run(config.backtrack_budget)?;
    let mut h = builder.finish()?;
    if via_dual {
        // Code with parity check H' is the dual; the transpose of its
        // generator is a parity check of the original code.
        let g = h.to_generator()?;
        h = g.dualize()?;
    }
    let mdp = verify::is_mdp(&h)?.holds();
    Ok(GreedyOutcome {
        params,
        q,
        threshold_name: threshold_name.to_string(),
        threshold: threshold.to_string(),
        via_dual,
        entries: builder.entries.len(),
        backtracks,
        mdp,
        left_prime: h.is_left_prime(),
        code: CodeFile::from_code(&crate::code::Code::Parity(h)),
    })
}

struct Builder {
    field: FieldSpec,
    params: CodeParams,
    /// `H_0, ..., H_L`, row major `(n-k) x n` each.
    coeffs: Vec<Vec<u32>>,
    /// `(block, row, col)` in fill order.
    entries: Vec<(usize, usize, usize)>,
    /// Block whose rows `diag_from..` form part of the leading row matrix.
    diag_block: usize,
    diag_from: usize,
}

struct Frame {
    excluded: Vec<u32>,
    dead: bool,
    current: Option<u32>,
}

impl Builder {
    fn new(field: &FieldSpec, params: CodeParams) -> Self {
        let (n, rk, l) = (params.n(), params.redundancy(), params.l());
        let mut entries = Vec::new();
        for b in 0..=l {
            for r in 0..rk {
                for c in 0..n {
                    entries.push((b, r, c));
                }
            }
        }
        // With delta < k, nu = L when (n-k) | delta and nu = L + 1 otherwise;
        // in the latter case H_nu = [I_a 0; 0 0] is fixed outside H_L.
        let a = params.delta() - rk * (params.nu() - 1);
        let diag_from = if params.r() == 0 { 0 } else { a };
        Builder {
            field: field.clone(),
            params,
            coeffs: vec![vec![0; rk * n]; l + 1],
            entries,
            diag_block: l,
            diag_from,
        }
    }

    /// Entry of `H_L` at `(row, col)`.
    fn hl(&self, row: usize, col: usize) -> u32 {
        let (n, rk) = (self.params.n(), self.params.redundancy());
        let (rb, cb) = (row / rk, col / n);
        if cb > rb {
            0
        } else {
            self.coeffs[rb - cb][(row % rk) * n + col % n]
        }
    }

    /// Values forbidden for entry `(b, r, c)`, or `None` if some minor
    /// vanishes whatever the value.
    fn exclusions(&mut self, b: usize, r: usize, c: usize) -> Option<Vec<u32>> {
        let (n, rk) = (self.params.n(), self.params.redundancy());
        let y = b * rk + r;
        let m = y + 1;
        let cols = (b + 1) * n;
        let mut hi = vec![cols - 1; m];
        for s in 1..=b {
            hi[s * rk - 1] = s * n - 1;
        }
        let mut excluded = Vec::new();
        let mut dead = false;
        let mut sel = Vec::with_capacity(m);
        let mut buf = vec![0u32; m * m];
        let slot = r * n + c;
        let mut visit = |this: &mut Builder, sel: &[usize]| {
            let mut eval = |x: u32| {
                this.coeffs[b][slot] = x;
                for i in 0..m {
                    for (j, &col) in sel.iter().enumerate() {
                        buf[i * m + j] = this.hl(i, col);
                    }
                }
                det_in_place(&this.field, &mut buf, m)
            };
            let beta = eval(0);
            let gamma = eval(1);
            let f = &this.field;
            let alpha = f.sub(gamma, beta);
            if alpha == 0 {
                dead |= beta == 0;
            } else {
                excluded.push(f.neg(f.div(beta, alpha)));
            }
        };
        self.walk(&mut sel, m, cols, c, n, &hi, &mut visit);
        self.coeffs[b][slot] = 0;
        if b == self.diag_block && r == c && r >= self.diag_from {
            // Leading principal minors of the leading row matrix block.
            let o = self.diag_from;
            let size = r - o + 1;
            let eval = |this: &mut Builder, x: u32| {
                this.coeffs[b][slot] = x;
                let mut buf: Vec<u32> = (o..=r)
                    .flat_map(|i| (o..=r).map(move |j| (i, j)))
                    .map(|(i, j)| this.coeffs[b][i * n + j])
                    .collect();
                det_in_place(&this.field, &mut buf, size)
            };
            let beta = eval(self, 0);
            let gamma = eval(self, 1);
            self.coeffs[b][slot] = 0;
            let f = &self.field;
            let alpha = f.sub(gamma, beta);
            if alpha == 0 {
                dead |= beta == 0;
            } else {
                excluded.push(f.neg(f.div(beta, alpha)));
            }
        }
        if dead {
            return None;
        }
        excluded.sort_unstable();
        excluded.dedup();
        Some(excluded)
    }

    /// Increasing selections of `m` columns below `cols` that contain `c`,
    /// avoid block-0 columns above `c`, and respect `hi`.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &mut self,
        sel: &mut Vec<usize>,
        m: usize,
        cols: usize,
        c: usize,
        n: usize,
        hi: &[usize],
        visit: &mut dyn FnMut(&mut Builder, &[usize]),
    ) {
        let p = sel.len();
        if p == m {
            visit(self, sel);
            return;
        }
        let start = sel.last().map_or(0, |&x| x + 1);
        let has_c = sel.contains(&c);
        for col in start..=hi[p].min(cols - 1) {
            if cols - col < m - p {
                break;
            }
            if col > c && col < n {
                continue;
            }
            if col > c && !has_c {
                break;
            }
            sel.push(col);
            self.walk(sel, m, cols, c, n, hi, visit);
            sel.pop();
        }
    }

    /// Fills every entry; returns the number of dead ends met.
    fn run(&mut self, budget: u64) -> Result<u64, ExploreError> {
        let q = self.field.q();
        let mut stack: Vec<Frame> = Vec::new();
        let mut backtracks = 0u64;
        let mut idx = 0;
        while idx < self.entries.len() {
            let (b, r, c) = self.entries[idx];
            let n = self.params.n();
            if stack.len() == idx {
                let ex = self.exclusions(b, r, c);
                stack.push(Frame {
                    dead: ex.is_none(),
                    excluded: ex.unwrap_or_default(),
                    current: None,
                });
            }
            let frame = &mut stack[idx];
            let next = if frame.dead {
                None
            } else {
                let start = frame.current.map_or(0, |v| v + 1);
                (start..q).find(|v| frame.excluded.binary_search(v).is_err())
            };
            match next {
                Some(v) => {
                    frame.current = Some(v);
                    self.coeffs[b][r * n + c] = v;
                    idx += 1;
                }
                None => {
                    stack.pop();
                    self.coeffs[b][r * n + c] = 0;
                    backtracks += 1;
                    if backtracks > budget || idx == 0 {
                        return Err(ExploreError::GreedyFailed {
                            backtracks,
                            reason: format!("no admissible value for H_{b}[{r}][{c}]"),
                        });
                    }
                    idx -= 1;
                }
            }
        }
        Ok(backtracks)
    }

    fn finish(&self) -> Result<ParityCheck, ExploreError> {
        let (n, rk, nu) = (self.params.n(), self.params.redundancy(), self.params.nu());
        let mut coeffs: Vec<GfMatrix> = self
            .coeffs
            .iter()
            .map(|flat| GfMatrix::from_flat(&self.field, rk, n, flat.clone()).expect("shape matches"))
            .collect();
        if coeffs.len() <= nu {
            let a = self.params.delta() - rk * (nu - 1);
            let mut top = GfMatrix::zeros(&self.field, rk, n);
            for i in 0..a {
                top.set(i, i, 1);
            }
            coeffs.resize(nu, GfMatrix::zeros(&self.field, rk, n));
            coeffs.push(top);
        }
        Ok(ParityCheck::new(&self.field, self.params, coeffs)?)
    }
}

/// The parameter sets with `delta < k` and `n <= max_n`.
pub fn low_degree_params(max_n: usize) -> Vec<CodeParams> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            for d in 1..k {
                out.push(CodeParams::new(n, k, d).expect("valid"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, k: usize, d: usize) -> CodeParams {
        CodeParams::new(n, k, d).unwrap()
    }

    #[test]
    fn small_sets_succeed_without_backtracking() {
        let cfg = SearchConfig {
            backtrack_budget: 0,
            ..SearchConfig::default()
        };
        for params in [p(3, 2, 1), p(4, 2, 1), p(4, 3, 2), p(5, 3, 2)] {
            let out = greedy_construct(params, None, &cfg).unwrap();
            assert!(out.mdp, "{params}");
            assert_eq!(out.backtracks, 0);
        }
    }

    #[test]
    fn dual_route() {
        let out = greedy_construct(p(4, 1, 2), None, &SearchConfig::default()).unwrap();
        assert!(out.via_dual && out.mdp);
    }

    #[test]
    fn rejects_large_degree() {
        assert!(matches!(
            greedy_construct(p(4, 2, 2), None, &SearchConfig::default()),
            Err(ExploreError::NotApplicable(_))
        ));
    }
}
