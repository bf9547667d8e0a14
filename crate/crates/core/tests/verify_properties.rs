//! Cross-checks of the minor-based verifiers against independent oracles.

use ccodes::code::{column_distances, CodeParams, Generator, ParityCheck, SlidingKind};
use ccodes::gf::FieldSpec;
use ccodes::gfmatrix::GfMatrix;
use ccodes::verify::{
    check_sliding, check_sliding_exhaustive, is_complete_mdp, is_mdp, is_mdp_generator, is_reverse_mdp,
    is_reverse_mdp_generator, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All parity-check matrices with generic row degrees (the first `r` rows of
/// degree `nu`, the rest of degree `nu - 1` when `r != 0`), as digit vectors.
fn parity_space(p: CodeParams) -> Vec<(usize, usize, usize)> {
    // (coefficient index, row, col) of every free entry.
    let nu = p.nu();
    let heavy = if p.r() == 0 { p.redundancy() } else { p.r() };
    let mut slots = Vec::new();
    for i in 0..=nu {
        for r in 0..p.redundancy() {
            if i == nu && r >= heavy {
                continue;
            }
            for c in 0..p.n() {
                slots.push((i, r, c));
            }
        }
    }
    slots
}

fn build(f: &FieldSpec, p: CodeParams, slots: &[(usize, usize, usize)], digits: &[u32]) -> ParityCheck {
    let mut coeffs = vec![GfMatrix::zeros(f, p.redundancy(), p.n()); p.nu() + 1];
    for (&(i, r, c), &v) in slots.iter().zip(digits) {
        coeffs[i].set(r, c, v);
    }
    ParityCheck::new(f, p, coeffs).unwrap()
}

/// Exhaustive when the space is small, otherwise `samples` random draws.
fn instances(f: &FieldSpec, p: CodeParams, samples: usize, seed: u64) -> Vec<ParityCheck> {
    let slots = parity_space(p);
    let q = f.q() as u64;
    let total = q.checked_pow(slots.len() as u32);
    match total {
        Some(t) if t <= samples as u64 => (0..t)
            .map(|mut x| {
                let digits: Vec<u32> = slots
                    .iter()
                    .map(|_| {
                        let d = (x % q) as u32;
                        x /= q;
                        d
                    })
                    .collect();
                build(f, p, &slots, &digits)
            })
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let digits: Vec<u32> = slots.iter().map(|_| rng.gen_range(0..f.q())).collect();
                    build(f, p, &slots, &digits)
                })
                .collect()
        }
    }
}

/// Codes among the instances: row proper and left prime.
fn codes(f: &FieldSpec, p: CodeParams, samples: usize, seed: u64) -> Vec<(ParityCheck, Generator)> {
    instances(f, p, samples, seed)
        .into_iter()
        .filter(|h| h.is_row_proper() && h.is_left_prime())
        .map(|h| {
            let g = h.to_generator().expect("left prime row proper matrices have kernels");
            (h, g)
        })
        .collect()
}

const FAMILIES: [(usize, usize, usize); 3] = [(2, 1, 1), (3, 1, 1), (3, 2, 1)];

#[test]
fn minor_criterion_matches_column_distances() {
    for q in [3u64, 4] {
        let f = FieldSpec::of_order(q).unwrap();
        for (n, k, d) in FAMILIES {
            let p = CodeParams::new(n, k, d).unwrap();
            let mut mdp = 0;
            let list = codes(&f, p, 20_000, 1);
            assert!(list.len() >= 40, "{p} over GF({q}): only {} codes", list.len());
            for (h, g) in &list {
                let by_minors = is_mdp(h).unwrap().holds();
                let by_distance = column_distances(g, p.l()).unwrap().is_optimal();
                assert_eq!(by_minors, by_distance, "{p} over GF({q}): {h:?}");
                assert_eq!(is_mdp_generator(g).unwrap().holds(), by_minors, "G_L disagrees: {g:?}");
                mdp += by_minors as usize;
            }
            if q == 4 || (n, k) != (3, 2) {
                assert!(mdp > 0, "{p} over GF({q}) has no MDP instance");
            }
        }
    }
}

#[test]
fn duality_preserves_mdp() {
    for q in [3u64, 4, 5] {
        let f = FieldSpec::of_order(q).unwrap();
        for (n, k, d) in FAMILIES {
            let p = CodeParams::new(n, k, d).unwrap();
            for (h, g) in codes(&f, p, 600, 2) {
                let primal = is_mdp(&h).unwrap().holds();
                let dual_generator = h.dualize().unwrap();
                assert_eq!(is_mdp_generator(&dual_generator).unwrap().holds(), primal);
                let dual_parity = g.dualize().unwrap();
                assert_eq!(is_mdp(&dual_parity).unwrap().holds(), primal);
            }
        }
    }
}

#[test]
fn dual_of_dual_keeps_column_distances() {
    let f = FieldSpec::of_order(5).unwrap();
    let p = CodeParams::new(3, 1, 1).unwrap();
    for (_, g) in codes(&f, p, 200, 3) {
        let back = g.dualize().unwrap().dualize().unwrap();
        assert_eq!(column_distances(&back, 2).unwrap(), column_distances(&g, 2).unwrap());
    }
}

#[test]
fn hierarchy_complete_reverse_mdp() {
    for q in [2u64, 3, 4, 5] {
        let f = FieldSpec::of_order(q).unwrap();
        for (n, k, d) in [(2, 1, 1), (3, 2, 1), (4, 2, 2), (3, 1, 1)] {
            let p = CodeParams::new(n, k, d).unwrap();
            for (h, _) in codes(&f, p, 800, 4) {
                let m = is_mdp(&h).unwrap().holds();
                let r = is_reverse_mdp(&h).unwrap().holds();
                let c = is_complete_mdp(&h).unwrap().holds();
                assert!(!c || r, "complete but not reverse: {h:?}");
                assert!(!r || m, "reverse but not MDP: {h:?}");
            }
        }
    }
}

#[test]
fn two_one_one_over_gf2_never_complete() {
    let f = FieldSpec::of_order(2).unwrap();
    let p = CodeParams::new(2, 1, 1).unwrap();
    for h in instances(&f, p, 100, 0) {
        if h.is_row_proper() {
            assert!(!is_complete_mdp(&h).unwrap().holds());
            assert!(!is_mdp(&h).unwrap().holds());
        }
    }
}

/// For (n,1,1) the reverse code is MDP exactly when the code is MDP and
/// every entry of g_1 is nonzero (an entry with g_1 = 0 reverses to g_0 z,
/// putting a zero into the reversed g_0). Checked against column distances
/// of the reversed generator.
#[test]
fn n_one_one_reverse_mdp_needs_full_g1() {
    for (n, q) in [(3usize, 3u64), (3, 4), (4, 4), (3, 5)] {
        let f = FieldSpec::of_order(q).unwrap();
        let p = CodeParams::new(n, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64 * 100 + q);
        let (mut reverse, mut forward_only) = (0, 0);
        for _ in 0..3000 {
            let nested: Vec<Vec<Vec<u32>>> = (0..2)
                .map(|_| (0..n).map(|_| vec![rng.gen_range(0..f.q())]).collect())
                .collect();
            let g = Generator::from_nested(&f, p, &nested).unwrap();
            if !g.is_minimal() || !g.is_noncatastrophic() {
                continue;
            }
            let mdp = is_mdp_generator(&g).unwrap().holds();
            let rev = is_reverse_mdp_generator(&g).unwrap().holds();
            let oracle = mdp && column_distances(&g.reverse(), p.l()).unwrap().is_optimal();
            assert_eq!(rev, oracle, "{g:?}");
            let full_g1 = (0..n).all(|i| g.entry(1, i, 0) != 0);
            assert_eq!(rev, mdp && full_g1, "{g:?}");
            reverse += rev as usize;
            forward_only += (mdp && !rev) as usize;
        }
        // Reverse MDP needs n distinct nonzero ratios g_1/g_0, so q >= n + 1.
        assert_eq!(reverse > 0, q > n as u64);
        assert!(forward_only > 0, "expected MDP codes with a zero in g_1");
    }
}

#[test]
fn pruned_search_matches_exhaustive_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for q in [2u64, 3, 4, 5] {
        let f = FieldSpec::of_order(q).unwrap();
        for (n, k, d) in [(2, 1, 1), (3, 1, 1), (3, 2, 1), (4, 2, 1), (4, 2, 2), (4, 3, 1), (3, 1, 2), (5, 3, 1)] {
            let p = CodeParams::new(n, k, d).unwrap();
            for _ in 0..40 {
                let coeffs: Vec<GfMatrix> = (0..=p.nu())
                    .map(|_| {
                        let data = (0..p.redundancy() * n).map(|_| rng.gen_range(0..f.q())).collect();
                        GfMatrix::from_flat(&f, p.redundancy(), n, data).unwrap()
                    })
                    .collect();
                let h = ParityCheck::new(&f, p, coeffs).unwrap();
                for kind in [SlidingKind::Hl, SlidingKind::HlReverse, SlidingKind::PartialH] {
                    let s = h.sliding(kind).unwrap();
                    if s.matrix().cols() > 12 {
                        continue;
                    }
                    let fast = check_sliding(&s);
                    let slow = check_sliding_exhaustive(&s);
                    assert_eq!(fast.holds(), slow.holds(), "{p} {kind:?}");
                    if let Verdict::Violated { selection, .. } = &fast {
                        assert!(s.is_valid(selection));
                        assert_eq!(s.minor_matrix(selection).det().unwrap(), 0);
                    }
                }
                let g_nested: Vec<Vec<Vec<u32>>> = (0..=p.mu())
                    .map(|_| (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..f.q())).collect()).collect())
                    .collect();
                let g = Generator::from_nested(&f, p, &g_nested).unwrap();
                let s = g.sliding().unwrap();
                if s.matrix().rows() <= 12 {
                    assert_eq!(check_sliding(&s).holds(), check_sliding_exhaustive(&s).holds());
                }
            }
        }
    }
}

#[test]
fn reversal_property_on_codewords() {
    // v_0 + ... + v_d z^d in the code  <=>  v_d + ... + v_0 z^d in the reverse code.
    let f = FieldSpec::of_order(5).unwrap();
    let p = CodeParams::new(3, 1, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (h, g) in codes(&f, p, 100, 5) {
        let rev_h = g.reverse().to_parity_check().unwrap();
        for _ in 0..5 {
            let msg: Vec<Vec<u32>> = (0..3).map(|_| vec![rng.gen_range(0..5)]).collect();
            let word = g.encode(&msg, 4);
            let reversed: Vec<Vec<u32>> = word.iter().rev().cloned().collect();
            assert!(annihilates(&h, &word));
            assert!(annihilates(&rev_h, &reversed));
        }
    }
}

fn annihilates(h: &ParityCheck, word: &[Vec<u32>]) -> bool {
    let f = h.field();
    let p = h.params();
    let deg = word.len() + h.coeffs().len();
    (0..deg).all(|t| {
        (0..p.redundancy()).all(|r| {
            let mut acc = 0;
            for (i, hi) in h.coeffs().iter().enumerate() {
                if t < i || t - i >= word.len() {
                    continue;
                }
                for c in 0..p.n() {
                    acc = f.add(acc, f.mul(hi.get(r, c), word[t - i][c]));
                }
            }
            acc == 0
        })
    })
}
