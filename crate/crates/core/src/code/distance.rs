//! Column distances by exhaustive search over message prefixes.

use serde::Serialize;

use super::{CodeError, CodeParams, Generator};

/// Largest number of search nodes the column-distance search may visit.
pub const DISTANCE_WORK_LIMIT: u128 = 50_000_000;

/// Column distances `d_0, ..., d_J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    pub params: CodeParams,
    pub values: Vec<usize>,
}

impl DistanceProfile {
    /// Whether `d_j` meets `(n-k)(j+1)+1` for every computed `j`.
    pub fn is_optimal(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(j, &d)| d == self.params.column_distance_bound(j))
    }
}

/// Column distance `d_j`: the least weight of `v_0, ..., v_j` over codewords
/// `G(z) m(z)` with `m_0 != 0`.
pub fn column_distance(g: &Generator, j: usize) -> Result<usize, CodeError> {
    Ok(column_distances(g, j)?.values[j])
}

/// All column distances up to `d_j`, from one branch-and-bound search.
pub fn column_distances(g: &Generator, j: usize) -> Result<DistanceProfile, CodeError> {
    let f = g.field();
    let p = g.params();
    let (n, k) = (p.n(), p.k());
    let q = f.q() as u128;
    let messages = q.pow(k as u32);
    // m_0 is normalized (first nonzero coordinate 1); scaling preserves weights.
    let work = (messages - 1) / (q - 1) * messages.saturating_pow(j as u32);
    if work > DISTANCE_WORK_LIMIT {
        return Err(CodeError::TooLarge {
            work,
            limit: DISTANCE_WORK_LIMIT,
        });
    }
    let messages = messages as usize;
    let vectors: Vec<Vec<u32>> = (0..messages)
        .map(|mut x| {
            (0..k)
                .map(|_| {
                    let d = (x % f.q() as usize) as u32;
                    x /= f.q() as usize;
                    d
                })
                .collect()
        })
        .collect();
    // products[i][m] = G_i m, for i up to min(mu, j).
    let products: Vec<Vec<Vec<u32>>> = g
        .coeffs()
        .iter()
        .take(j + 1)
        .map(|gi| {
            vectors
                .iter()
                .map(|m| {
                    (0..n)
                        .map(|r| (0..k).fold(0, |acc, c| f.add(acc, f.mul(gi.get(r, c), m[c]))))
                        .collect()
                })
                .collect()
        })
        .collect();

    struct Search<'a> {
        field: &'a crate::gf::FieldSpec,
        products: &'a [Vec<Vec<u32>>],
        messages: usize,
        n: usize,
        depth: usize,
        best: Vec<usize>,
        path: Vec<usize>,
    }

    impl Search<'_> {
        fn step(&mut self, t: usize, acc: usize) {
            let mut v = vec![0; self.n];
            for (i, prod) in self.products.iter().enumerate().take(t + 1) {
                let m = self.path[t - i];
                for (x, &y) in v.iter_mut().zip(&prod[m]) {
                    *x = self.field.add(*x, y);
                }
            }
            let w = acc + v.iter().filter(|&&x| x != 0).count();
            if w < self.best[t] {
                self.best[t] = w;
            }
            if t == self.depth {
                return;
            }
            // Later distances only grow along this path; stop if none can improve.
            if self.best[t + 1..].iter().all(|&b| w >= b) {
                return;
            }
            for m in 0..self.messages {
                self.path.push(m);
                self.step(t + 1, w);
                self.path.pop();
            }
        }
    }

    let mut search = Search {
        field: f,
        products: &products,
        messages,
        n,
        depth: j,
        best: vec![usize::MAX; j + 1],
        path: Vec::with_capacity(j + 1),
    };
    for (m0, v) in vectors.iter().enumerate() {
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        search.path.push(m0);
        search.step(0, 0);
        search.path.pop();
    }
    Ok(DistanceProfile {
        params: p,
        values: search.best,
    })
}
