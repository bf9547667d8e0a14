//! Smallest field carrying a `gamma x gamma` superregular lower triangular
//! Toeplitz matrix, by depth-first search over its first column.
//!
//! Scaling the matrix and conjugating by `diag(c^i)` turns `a_1, a_2, ...`
//! into `s a_1, s c a_2, s c^2 a_3, ...`, so `a_1 = a_2 = 1` costs nothing.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf::primes::next_prime_power;
use crate::gf::FieldSpec;
use crate::verify::last_row_violation;

use super::{ExploreError, SearchConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldAttempt {
    pub q: u64,
    pub found: bool,
    /// Partial columns accepted by the search.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperregularSearch {
    pub gamma: usize,
    pub min_field: Option<u64>,
    /// First column `a_1, ..., a_gamma` over the minimal field.
    pub witness: Option<Vec<u32>>,
    pub attempts: Vec<FieldAttempt>,
}

/// Searches `GF(q)` exhaustively. Returns the lexicographically first
/// normalized column, and the number of nodes visited.
pub fn superregular_in_field(
    gamma: usize,
    q: u64,
    config: &SearchConfig,
) -> Result<(Option<Vec<u32>>, u64), ExploreError> {
    let field = FieldSpec::of_order(q)?;
    if gamma <= 2 {
        return Ok((Some(vec![1; gamma]), gamma as u64));
    }
    let leaves = (q as u128 - 1).checked_pow(gamma as u32 - 2);
    if leaves.is_none_or(|l| l > config.budget as u128) {
        return Err(ExploreError::BudgetExceeded {
            needed: format!("({})^{}", q - 1, gamma - 2),
            budget: config.budget,
        });
    }
    let results: Vec<(Option<Vec<u32>>, u64)> = config.install(|| {
        let firsts: Vec<u32> = (1..field.q()).collect();
        // Ordered collect keeps the count deterministic; the witness is the
        // first branch that succeeded.
        firsts
            .par_iter()
            .map(|&a3| {
                let mut a = vec![1, 1, a3];
                let mut nodes = 0;
                if last_row_violation(&field, &a).is_some() {
                    return (None, nodes);
                }
                nodes += 1;
                let found = extend(&field, gamma, &mut a, &mut nodes);
                (found.then_some(a), nodes)
            })
            .collect()
    })?;
    let nodes = results.iter().map(|r| r.1).sum::<u64>() + 2;
    Ok((results.into_iter().find_map(|r| r.0), nodes))
}

fn extend(field: &FieldSpec, gamma: usize, a: &mut Vec<u32>, nodes: &mut u64) -> bool {
    if a.len() == gamma {
        return true;
    }
    for v in 1..field.q() {
        a.push(v);
        if last_row_violation(field, a).is_none() {
            *nodes += 1;
            if extend(field, gamma, a, nodes) {
                return true;
            }
        }
        a.pop();
    }
    false
}

/// Tries prime powers `2, 3, 4, 5, 7, ...` up to `max_q`.
pub fn superregular_min_field(gamma: usize, max_q: u64, config: &SearchConfig) -> Result<SuperregularSearch, ExploreError> {
    let mut attempts = Vec::new();
    let mut q = 2;
    while q <= max_q {
        let (witness, nodes) = superregular_in_field(gamma, q, config)?;
        attempts.push(FieldAttempt {
            q,
            found: witness.is_some(),
            nodes,
        });
        if witness.is_some() {
            return Ok(SuperregularSearch {
                gamma,
                min_field: Some(q),
                witness,
                attempts,
            });
        }
        q = next_prime_power(q + 1);
    }
    Ok(SuperregularSearch {
        gamma,
        min_field: None,
        witness: None,
        attempts,
    })
}

impl SuperregularSearch {
    pub fn to_table(&self) -> String {
        let mut out = format!("superregular {0}x{0} lower triangular Toeplitz\n", self.gamma);
        out += "q      found  nodes\n";
        for a in &self.attempts {
            out += &format!("{:<6} {:<6} {}\n", a.q, a.found, a.nodes);
        }
        match (&self.min_field, &self.witness) {
            (Some(q), Some(w)) => out += &format!("minimal field: GF({q}), first column {w:?}\n"),
            _ => out += "no field found in range\n",
        }
        out
    }
}
