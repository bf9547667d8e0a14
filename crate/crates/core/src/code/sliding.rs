//! Sliding (block Toeplitz) matrices and the structural rule deciding which
//! full-size minors are not trivially zero.

use serde::{Deserialize, Serialize};

use crate::gfmatrix::GfMatrix;

use super::{CodeError, Generator, ParityCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlidingKind {
    /// Block lower triangular `[H_{a-b}]`, `(L+1)(n-k) x (L+1)n`.
    Hl,
    /// Block lower triangular `[G_{a-b}]`, `(L+1)n x (L+1)k`; minors select rows.
    Gl,
    /// Block upper triangular `[H_{nu-(b-a)}]`, `(L+1)(n-k) x (L+1)n`.
    HlReverse,
    /// Banded `[H_nu ... H_0]` rows, `(L+1)(n-k) x (nu+L+1)n`.
    PartialH,
}

/// Which strictly increasing selections of candidates (columns, or rows for
/// [`SlidingKind::Gl`]) give minors that are not trivially zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectionRule {
    /// Position `p` of the selection must lie in `lo[p]..=hi[p]`.
    Intervals {
        lo: Vec<usize>,
        hi: Vec<usize>,
        /// Largest value at position `p` that still leaves room for the rest.
        reach: Vec<usize>,
        feasible: bool,
    },
    /// The selection must admit a perfect matching onto the other dimension
    /// through structurally free entries; `support[c]` lists them for candidate `c`.
    Matching { support: Vec<Vec<usize>>, size: usize },
}

impl SelectionRule {
    pub fn intervals(lo: Vec<usize>, hi: Vec<usize>, candidates: usize) -> Self {
        let size = lo.len();
        let mut reach = vec![0; size];
        let mut feasible = size <= candidates;
        // Backward pass: position p may go no higher than hi[p] and must stay
        // below the reach of position p + 1.
        let mut bound = candidates;
        for p in (0..size).rev() {
            if !feasible || bound == 0 {
                feasible = false;
                break;
            }
            reach[p] = hi[p].min(bound - 1);
            bound = reach[p];
        }
        // Forward pass: the smallest admissible choices must fit under reach.
        let mut prev: Option<usize> = None;
        for p in 0..size {
            if !feasible {
                break;
            }
            let m = prev.map_or(lo[p], |x| lo[p].max(x + 1));
            feasible = m <= reach[p];
            prev = Some(m);
        }
        SelectionRule::Intervals {
            lo,
            hi,
            reach,
            feasible,
        }
    }

    pub fn selection_size(&self) -> usize {
        match self {
            SelectionRule::Intervals { lo, .. } => lo.len(),
            SelectionRule::Matching { size, .. } => *size,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SlidingMatrix {
    kind: SlidingKind,
    matrix: GfMatrix,
    window: usize,
    nu: usize,
    rule: SelectionRule,
    candidates: Vec<Vec<u32>>,
}

impl SlidingMatrix {
    /// Builds `kind` from a parity-check matrix with window `l` (usually `L`).
    pub fn from_parity_check(h: &ParityCheck, kind: SlidingKind, l: usize) -> Result<Self, CodeError> {
        let p = h.params();
        let (n, rk, nu) = (p.n(), p.redundancy(), p.nu());
        let rows = (l + 1) * rk;
        let (block_cols, coeff_index): (usize, Box<dyn Fn(usize, usize) -> Option<usize>>) = match kind {
            SlidingKind::Hl => (l + 1, Box::new(|a, b| a.checked_sub(b))),
            SlidingKind::HlReverse => (l + 1, Box::new(move |a, b| b.checked_sub(a).and_then(|d| nu.checked_sub(d)))),
            SlidingKind::PartialH => (nu + l + 1, Box::new(move |a, b| b.checked_sub(a).and_then(|d| nu.checked_sub(d)))),
            SlidingKind::Gl => {
                return Err(CodeError::InvalidParams(
                    "the generator sliding matrix is built from a generator".into(),
                ))
            }
        };
        if kind != SlidingKind::Hl && h.degree() > nu {
            return Err(CodeError::DegreeExceedsNu {
                degree: h.degree(),
                nu,
            });
        }
        let mut m = GfMatrix::zeros(h.field(), rows, block_cols * n);
        for a in 0..=l {
            for b in 0..block_cols {
                let Some(i) = coeff_index(a, b) else { continue };
                for r in 0..rk {
                    for c in 0..n {
                        m.set(a * rk + r, b * n + c, h.entry(i, r, c));
                    }
                }
            }
        }
        // 0-based versions of the index conditions j_{s(n-k)} <= sn,
        // j_{s(n-k)+1} > sn and j_{s(n-k)} <= sn + nu n, s = 1..L.
        let cols = m.cols();
        let mut lo = vec![0; rows];
        let mut hi = vec![cols - 1; rows];
        for s in 1..=l {
            match kind {
                SlidingKind::Hl => hi[s * rk - 1] = s * n - 1,
                SlidingKind::HlReverse => lo[s * rk] = s * n,
                SlidingKind::PartialH => {
                    lo[s * rk] = s * n;
                    hi[s * rk - 1] = s * n + nu * n - 1;
                }
                SlidingKind::Gl => unreachable!(),
            }
        }
        let rule = SelectionRule::intervals(lo, hi, cols);
        let candidates = (0..cols).map(|c| m.column(c)).collect();
        Ok(SlidingMatrix {
            kind,
            matrix: m,
            window: l,
            nu,
            rule,
            candidates,
        })
    }

    /// Builds `G_L` with window `l`. Entries of `G_i` beyond the degree of
    /// their column are structural zeros; everything else is treated as free.
    pub fn from_generator(g: &Generator, l: usize) -> Result<Self, CodeError> {
        let p = g.params();
        let (n, k) = (p.n(), p.k());
        let degs = g.column_degrees();
        let mut m = GfMatrix::zeros(g.field(), (l + 1) * n, (l + 1) * k);
        let mut support = vec![Vec::new(); (l + 1) * n];
        for a in 0..=l {
            for b in 0..=a {
                let i = a - b;
                for r in 0..n {
                    for c in 0..k {
                        m.set(a * n + r, b * k + c, g.entry(i, r, c));
                        if i <= degs[c] {
                            support[a * n + r].push(b * k + c);
                        }
                    }
                }
            }
        }
        let candidates = m.to_rows();
        Ok(SlidingMatrix {
            kind: SlidingKind::Gl,
            matrix: m,
            window: l,
            nu: g.mu(),
            rule: SelectionRule::Matching {
                support,
                size: (l + 1) * k,
            },
            candidates,
        })
    }

    pub fn kind(&self) -> SlidingKind {
        self.kind
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.matrix
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// `nu` for parity-check kinds, the largest column degree for `Gl`.
    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn rule(&self) -> &SelectionRule {
        &self.rule
    }

    /// Number of candidates (columns, or rows of `G_L`).
    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidate(&self, i: usize) -> &[u32] {
        &self.candidates[i]
    }

    /// Length of each candidate vector; equals the selection size.
    pub fn ambient(&self) -> usize {
        self.rule.selection_size()
    }

    pub fn selection_size(&self) -> usize {
        self.rule.selection_size()
    }

    /// The square submatrix picked out by `selection`.
    pub fn minor_matrix(&self, selection: &[usize]) -> GfMatrix {
        let all: Vec<usize> = (0..self.ambient()).collect();
        match self.kind {
            SlidingKind::Gl => self.matrix.select(selection, &all),
            _ => self.matrix.select(&all, selection),
        }
    }

    /// Whether `prefix + [next]` (with `next` above every prefix entry) can be
    /// completed to a valid full selection.
    pub fn extends(&self, prefix: &[usize], next: usize) -> bool {
        let p = prefix.len();
        if p >= self.selection_size() || prefix.last().is_some_and(|&x| next <= x) {
            return false;
        }
        match &self.rule {
            SelectionRule::Intervals { lo, reach, feasible, .. } => *feasible && next >= lo[p] && next <= reach[p],
            SelectionRule::Matching { support, size } => {
                let mut chosen: Vec<usize> = prefix.to_vec();
                chosen.push(next);
                if matching_size(support, *size, &chosen) < chosen.len() {
                    return false;
                }
                chosen.extend(next + 1..support.len());
                matching_size(support, *size, &chosen) == *size
            }
        }
    }

    pub fn is_valid(&self, selection: &[usize]) -> bool {
        selection.len() == self.selection_size()
            && (0..selection.len()).all(|p| self.extends(&selection[..p], selection[p]))
    }

    /// Smallest valid completion of an extendable prefix.
    pub fn complete(&self, prefix: &[usize]) -> Option<Vec<usize>> {
        let mut sel = prefix.to_vec();
        while sel.len() < self.selection_size() {
            let start = sel.last().map_or(0, |&x| x + 1);
            let next = (start..self.candidate_count()).find(|&c| self.extends(&sel, c))?;
            sel.push(next);
        }
        Some(sel)
    }

    /// Exact number of valid full selections.
    pub fn valid_selections_count(&self) -> u128 {
        match &self.rule {
            SelectionRule::Intervals { lo, reach, feasible, .. } => {
                if !*feasible {
                    return 0;
                }
                let cols = self.candidate_count();
                // ways[c] = number of valid prefixes of the current length ending at c.
                let mut ways = vec![0u128; cols];
                for p in 0..lo.len() {
                    let mut next = vec![0u128; cols];
                    let mut running = if p == 0 { 1 } else { 0 };
                    for c in 0..cols {
                        if c >= lo[p] && c <= reach[p] {
                            next[c] = running;
                        }
                        if p > 0 {
                            running += ways[c];
                        }
                    }
                    ways = next;
                }
                ways.iter().sum()
            }
            SelectionRule::Matching { .. } => {
                let mut count = 0u128;
                self.for_each_valid(&mut |_| count += 1);
                count
            }
        }
    }

    /// Visits every valid selection in lexicographic order.
    pub fn for_each_valid(&self, visit: &mut dyn FnMut(&[usize])) {
        let mut sel = Vec::with_capacity(self.selection_size());
        self.walk(&mut sel, visit);
    }

    fn walk(&self, sel: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if sel.len() == self.selection_size() {
            visit(sel);
            return;
        }
        let start = sel.last().map_or(0, |&x| x + 1);
        for c in start..self.candidate_count() {
            if self.extends(sel, c) {
                sel.push(c);
                self.walk(sel, visit);
                sel.pop();
            }
        }
    }
}

/// Maximum matching of `chosen` candidates into `0..size` via their supports.
fn matching_size(support: &[Vec<usize>], size: usize, chosen: &[usize]) -> usize {
    fn augment(
        u: usize,
        support: &[Vec<usize>],
        chosen: &[usize],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &v in &support[chosen[u]] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].map_or(true, |w| augment(w, support, chosen, owner, seen)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; size];
    let mut matched = 0;
    for u in 0..chosen.len() {
        let mut seen = vec![false; size];
        if augment(u, support, chosen, &mut owner, &mut seen) {
            matched += 1;
            if matched == size {
                break;
            }
        }
    }
    matched
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::CodeParams;
    use crate::gf::FieldSpec;

    fn h211() -> ParityCheck {
        let f = FieldSpec::new(3, 1).unwrap();
        let p = CodeParams::new(2, 1, 1).unwrap();
        ParityCheck::from_nested(&f, p, &[vec![vec![1, 2]], vec![vec![1, 1]]]).unwrap()
    }

    #[test]
    fn hl_assembly() {
        let s = h211().sliding(SlidingKind::Hl).unwrap();
        assert_eq!(
            s.matrix().to_rows(),
            vec![
                vec![1, 2, 0, 0, 0, 0],
                vec![1, 1, 1, 2, 0, 0],
                vec![0, 0, 1, 1, 1, 2]
            ]
        );
    }

    #[test]
    fn partial_assembly() {
        let s = h211().sliding(SlidingKind::PartialH).unwrap();
        assert_eq!(
            s.matrix().to_rows(),
            vec![
                vec![1, 1, 1, 2, 0, 0, 0, 0],
                vec![0, 0, 1, 1, 1, 2, 0, 0],
                vec![0, 0, 0, 0, 1, 1, 1, 2]
            ]
        );
        let r = h211().sliding(SlidingKind::HlReverse).unwrap();
        assert_eq!(
            r.matrix().to_rows(),
            vec![
                vec![1, 1, 1, 2, 0, 0],
                vec![0, 0, 1, 1, 1, 2],
                vec![0, 0, 0, 0, 1, 1]
            ]
        );
    }

    /// Counts selections satisfying the 1-based index conditions literally.
    fn brute_count(s: &SlidingMatrix, ok: &dyn Fn(&[usize]) -> bool) -> u128 {
        crate::code::polymat::combinations(s.candidate_count(), s.selection_size())
            .into_iter()
            .filter(|sel| {
                let one: Vec<usize> = sel.iter().map(|c| c + 1).collect();
                ok(&one)
            })
            .count() as u128
    }

    #[test]
    fn counts_match_literal_conditions() {
        let f = FieldSpec::new(2, 1).unwrap();
        for (n, k, delta) in [(2, 1, 1), (3, 1, 1), (3, 2, 1), (3, 1, 2), (4, 2, 2), (4, 3, 1), (5, 2, 1)] {
            let p = CodeParams::new(n, k, delta).unwrap();
            let h = ParityCheck::new(&f, p, vec![]).unwrap();
            let (l, rk, nu) = (p.l(), p.redundancy(), p.nu());
            let hl = h.sliding(SlidingKind::Hl).unwrap();
            let c = brute_count(&hl, &|j| (1..=l).all(|s| j[s * rk - 1] <= s * n));
            assert_eq!(hl.valid_selections_count(), c, "{p}");
            let hr = h.sliding(SlidingKind::HlReverse).unwrap();
            let c = brute_count(&hr, &|j| (1..=l).all(|s| j[s * rk] > s * n));
            assert_eq!(hr.valid_selections_count(), c, "{p}");
            let ph = h.sliding(SlidingKind::PartialH).unwrap();
            let c = brute_count(&ph, &|j| {
                (1..=l).all(|s| j[s * rk] > s * n && j[s * rk - 1] <= s * n + nu * n)
            });
            assert_eq!(ph.valid_selections_count(), c, "{p}");
            // DFS enumeration agrees with the interval count.
            let mut seen = 0u128;
            ph.for_each_valid(&mut |sel| {
                assert!(ph.is_valid(sel));
                seen += 1;
            });
            assert_eq!(seen, c);
        }
    }

    #[test]
    fn window_zero_has_no_constraints() {
        let f = FieldSpec::new(2, 1).unwrap();
        let p = CodeParams::new(4, 2, 1).unwrap();
        assert_eq!(p.l(), 0);
        let h = ParityCheck::new(&f, p, vec![]).unwrap();
        assert_eq!(h.sliding(SlidingKind::Hl).unwrap().valid_selections_count(), 6);
    }

    #[test]
    fn two_one_one_counts() {
        let s = h211().sliding(SlidingKind::Hl).unwrap();
        assert_eq!(s.valid_selections_count(), 14);
        let ph = h211().sliding(SlidingKind::PartialH).unwrap();
        let c = ph.valid_selections_count();
        assert!(c <= 56 && c <= 64);
    }

    #[test]
    fn generator_matching_rule() {
        let f = FieldSpec::new(3, 1).unwrap();
        let p = CodeParams::new(2, 1, 1).unwrap();
        let g = Generator::from_nested(&f, p, &[vec![vec![1], vec![2]], vec![vec![1], vec![1]]]).unwrap();
        let s = g.sliding().unwrap();
        assert_eq!((s.matrix().rows(), s.matrix().cols()), (6, 3));
        // Column b of G_2 is nonzero on rows 2b..2b+3: a row selection is
        // valid iff its i-th row falls in block i or i-1.
        let c = brute_count(&s, &|j| (0..3).all(|i| j[i] >= 2 * i + 1 && j[i] <= 2 * i + 4));
        assert_eq!(s.valid_selections_count(), c);
    }

    #[test]
    fn complete_gives_smallest_extension() {
        let s = h211().sliding(SlidingKind::Hl).unwrap();
        assert_eq!(s.complete(&[]), Some(vec![0, 1, 2]));
        assert_eq!(s.complete(&[1]), Some(vec![1, 2, 3]));
        assert!(!s.extends(&[1, 2], 6));
    }
}
