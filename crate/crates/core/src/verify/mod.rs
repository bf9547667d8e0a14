//! MDP, reverse MDP and complete MDP verification, and superregularity of
//! lower triangular Toeplitz matrices.
//!
//! Every check is the same search: walk the strictly increasing selections
//! allowed by a structural rule, left to right, pushing candidates into an
//! [`IncrementalEliminator`]. A candidate that is dependent on the prefix
//! fails the check, provided the prefix can still be completed to a valid
//! selection (every completion then has a zero determinant).

mod superregular;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{CodeError, Generator, ParityCheck, SlidingKind, SlidingMatrix};
use crate::gf::FieldSpec;
use crate::gfmatrix::IncrementalEliminator;

pub(crate) use superregular::last_row_violation;
pub use superregular::{
    is_superregular_toeplitz, superregular_violation, toeplitz_matrix, toeplitz_minor_is_trivially_zero,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Mdp,
    ReverseMdp,
    CompleteMdp,
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Property::Mdp => "mdp",
            Property::ReverseMdp => "reverse",
            Property::CompleteMdp => "complete",
        })
    }
}

impl std::str::FromStr for Property {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mdp" => Ok(Property::Mdp),
            "reverse" | "reverse_mdp" => Ok(Property::ReverseMdp),
            "complete" | "complete_mdp" => Ok(Property::CompleteMdp),
            other => Err(format!("unknown property {other:?} (expected mdp, reverse or complete)")),
        }
    }
}

/// Outcome of a verification. Selections are 0-based candidate indices
/// (columns, or rows for the generator sliding matrix).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// A valid selection with zero determinant. Its first `dependent_prefix`
    /// entries are already linearly dependent.
    Violated {
        matrix: SlidingKind,
        selection: Vec<usize>,
        dependent_prefix: usize,
    },
    /// The property cannot hold for these parameters at all.
    Impossible { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// A family of candidate vectors with a structural rule on selections.
pub(crate) trait Selectable: Sync {
    fn field(&self) -> &FieldSpec;
    fn ambient(&self) -> usize;
    fn candidate_count(&self) -> usize;
    fn candidate(&self, i: usize) -> &[u32];
    fn extends(&self, prefix: &[usize], next: usize) -> bool;
}

impl Selectable for SlidingMatrix {
    fn field(&self) -> &FieldSpec {
        self.matrix().field()
    }
    fn ambient(&self) -> usize {
        SlidingMatrix::ambient(self)
    }
    fn candidate_count(&self) -> usize {
        SlidingMatrix::candidate_count(self)
    }
    fn candidate(&self, i: usize) -> &[u32] {
        SlidingMatrix::candidate(self, i)
    }
    fn extends(&self, prefix: &[usize], next: usize) -> bool {
        SlidingMatrix::extends(self, prefix, next)
    }
}

/// Depth-first search for an extendable dependent prefix. Returns it
/// (ending with the dependent candidate) or `None` if every valid selection
/// is nonsingular.
fn find_dependent<S: Selectable + ?Sized>(
    s: &S,
    elim: &mut IncrementalEliminator,
    prefix: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if prefix.len() == s.ambient() {
        return None;
    }
    let start = prefix.last().map_or(0, |&x| x + 1);
    for c in start..s.candidate_count() {
        if !s.extends(prefix, c) {
            continue;
        }
        let independent = elim.try_push(s.candidate(c)).expect("candidate length matches");
        prefix.push(c);
        if !independent {
            return Some(prefix.clone());
        }
        let found = find_dependent(s, elim, prefix);
        prefix.pop();
        elim.pop().expect("pushed above");
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Sequential search from the empty prefix.
pub(crate) fn first_dependent<S: Selectable + ?Sized>(s: &S) -> Option<Vec<usize>> {
    let mut elim = IncrementalEliminator::new(s.field(), s.ambient());
    find_dependent(s, &mut elim, &mut Vec::new())
}

/// Checks every valid full-size minor of `s`. The first level of the search
/// is split across the rayon pool; the reported witness is always the one
/// from the lowest first candidate, so the result does not depend on the
/// number of threads.
pub fn check_sliding(s: &SlidingMatrix) -> Verdict {
    if s.selection_size() == 0 {
        return Verdict::Holds;
    }
    let firsts: Vec<usize> = (0..s.candidate_count()).filter(|&c| s.extends(&[], c)).collect();
    let found = firsts.par_iter().find_map_first(|&c| {
        let mut elim = IncrementalEliminator::new(s.matrix().field(), s.ambient());
        if !elim.try_push(s.candidate(c)).expect("candidate length matches") {
            return Some(vec![c]);
        }
        find_dependent(s, &mut elim, &mut vec![c])
    });
    match found {
        None => Verdict::Holds,
        Some(prefix) => {
            let selection = s.complete(&prefix).expect("prefix is extendable");
            Verdict::Violated {
                matrix: s.kind(),
                selection,
                dependent_prefix: prefix.len(),
            }
        }
    }
}

/// Reference implementation: the determinant of every valid selection.
pub fn check_sliding_exhaustive(s: &SlidingMatrix) -> Verdict {
    let mut witness = None;
    s.for_each_valid(&mut |sel| {
        if witness.is_none() && s.minor_matrix(sel).det().expect("square") == 0 {
            witness = Some(sel.to_vec());
        }
    });
    match witness {
        None => Verdict::Holds,
        Some(selection) => Verdict::Violated {
            matrix: s.kind(),
            dependent_prefix: selection.len(),
            selection,
        },
    }
}

/// MDP test on a row proper parity-check matrix via the minors of `H_L`.
pub fn is_mdp(h: &ParityCheck) -> Result<Verdict, CodeError> {
    h.check_row_proper()?;
    Ok(check_sliding(&h.sliding(SlidingKind::Hl)?))
}

/// MDP test on a minimal generator via the minors of `G_L`.
pub fn is_mdp_generator(g: &Generator) -> Result<Verdict, CodeError> {
    g.check_minimal()?;
    Ok(check_sliding(&g.sliding()?))
}

/// Reverse MDP: the code and its reverse are both MDP. With `(n-k) | delta`
/// and all row degrees equal to `nu`, the reverse code is tested on the
/// minors of the upper block triangular `H_L` built from `H_nu, ..., H_0`;
/// otherwise the reverse code's generator is built and tested directly.
pub fn is_reverse_mdp(h: &ParityCheck) -> Result<Verdict, CodeError> {
    let forward = is_mdp(h)?;
    if !forward.holds() {
        return Ok(forward);
    }
    let p = h.params();
    if p.r() == 0 && h.row_degrees().iter().all(|&d| d == p.nu()) {
        Ok(check_sliding(&h.sliding(SlidingKind::HlReverse)?))
    } else {
        is_mdp_generator(&h.to_generator()?.reverse())
    }
}

/// Reverse MDP for a code given by a non-catastrophic minimal generator.
pub fn is_reverse_mdp_generator(g: &Generator) -> Result<Verdict, CodeError> {
    let forward = is_mdp_generator(g)?;
    if !forward.holds() {
        return Ok(forward);
    }
    is_mdp_generator(&g.reverse())
}

/// Complete MDP via the minors of the partial parity-check matrix. Reports
/// [`Verdict::Impossible`] unless `(n-k) | delta`.
pub fn is_complete_mdp(h: &ParityCheck) -> Result<Verdict, CodeError> {
    let p = h.params();
    if p.r() != 0 {
        return Ok(complete_impossible(p.redundancy(), p.delta()));
    }
    h.check_row_proper()?;
    Ok(check_sliding(&h.sliding(SlidingKind::PartialH)?))
}

pub(crate) fn complete_impossible(redundancy: usize, delta: usize) -> Verdict {
    Verdict::Impossible {
        reason: format!(
            "complete MDP codes need (n-k) | delta, but n-k = {redundancy} does not divide delta = {delta}"
        ),
    }
}

pub fn check_property(h: &ParityCheck, property: Property) -> Result<Verdict, CodeError> {
    match property {
        Property::Mdp => is_mdp(h),
        Property::ReverseMdp => is_reverse_mdp(h),
        Property::CompleteMdp => is_complete_mdp(h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeParams;

    fn h(q: u64, n: usize, k: usize, d: usize, coeffs: &[Vec<Vec<u32>>]) -> ParityCheck {
        let f = FieldSpec::of_order(q).unwrap();
        ParityCheck::from_nested(&f, CodeParams::new(n, k, d).unwrap(), coeffs).unwrap()
    }

    #[test]
    fn two_one_one_examples() {
        let good = h(3, 2, 1, 1, &[vec![vec![1, 2]], vec![vec![1, 1]]]);
        assert!(is_mdp(&good).unwrap().holds());
        assert!(is_reverse_mdp(&good).unwrap().holds());
        assert!(is_complete_mdp(&good).unwrap().holds());
        let zero_entry = h(3, 2, 1, 1, &[vec![vec![1, 0]], vec![vec![1, 1]]]);
        let v = is_mdp(&zero_entry).unwrap();
        match &v {
            Verdict::Violated { selection, .. } => {
                let s = zero_entry.sliding(SlidingKind::Hl).unwrap();
                assert!(s.is_valid(selection));
                assert_eq!(s.minor_matrix(selection).det().unwrap(), 0);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn example_four_two_one() {
        let code = h(
            3,
            4,
            2,
            1,
            &[vec![vec![1, 0, 1, 2], vec![0, 1, 1, 1]], vec![vec![1, 0, 0, 0], vec![0, 0, 0, 0]]],
        );
        assert!(is_mdp(&code).unwrap().holds());
    }

    #[test]
    fn complete_needs_divisibility() {
        let code = h(5, 3, 1, 1, &[vec![vec![1, 0, 1], vec![0, 1, 1]], vec![vec![1, 2, 3], vec![0, 0, 0]]]);
        assert!(matches!(is_complete_mdp(&code).unwrap(), Verdict::Impossible { .. }));
    }

    #[test]
    fn row_properness_is_enforced() {
        let flat = h(3, 2, 1, 1, &[vec![vec![1, 2]]]);
        assert!(matches!(is_mdp(&flat), Err(CodeError::NotRowProper { .. })));
    }

    #[test]
    fn property_parsing() {
        assert_eq!("complete".parse::<Property>().unwrap(), Property::CompleteMdp);
        assert!("nope".parse::<Property>().is_err());
        let json = serde_json::to_string(&Verdict::Holds).unwrap();
        assert_eq!(json, r#"{"verdict":"holds"}"#);
    }
}
