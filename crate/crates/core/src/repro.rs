//! The reproduction suite: each numbered criterion recomputes a reference
//! count, bound, minimal field or probability and compares it with the
//! expected value.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bounds::{b_gamma, bound_l0, bound_m, bound_one, bound_s, compare, SmallCase};
use crate::code::{column_distances, Code, CodeParams, Generator, ParityCheck};
use crate::explore::{
    enumerate_and_count, estimate_probability, greedy_construct, low_degree_params, sample_codes,
    superregular_min_field, EnumerationResult, SearchConfig,
};
use crate::gf::primes::next_prime_power;
use crate::gf::FieldSpec;
use crate::verify::{is_mdp, is_mdp_generator, is_reverse_mdp_generator, Property};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub tolerance: String,
    pub pass: bool,
    /// Failed, but the failure is established and checked: the claim itself
    /// does not hold.
    pub known_failure: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: u64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} [tolerance: {}; {:.3}s of {}s]: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.tolerance,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub criteria: Vec<CriterionResult>,
    pub passed: usize,
    pub unexpected_failures: usize,
}

impl ReproReport {
    pub fn to_table(&self) -> String {
        let mut out: String = self.criteria.iter().map(|c| c.line() + "\n").collect();
        out += &format!(
            "{}/{} criteria pass; {} unexpected failures\n",
            self.passed,
            self.criteria.len(),
            self.unexpected_failures
        );
        out
    }
}

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure recorded as unattainable; the check of the failure itself passed.
    known_failure: bool,
}

impl Outcome {
    fn check(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            detail,
            known_failure: false,
        }
    }
}

fn p(n: usize, k: usize, d: usize) -> CodeParams {
    CodeParams::new(n, k, d).unwrap()
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn count(params: CodeParams, q: u64, property: Property, runs: &mut Vec<EnumerationResult>) -> EnumerationResult {
    let r = enumerate_and_count(params, q, property, &SearchConfig::default()).unwrap();
    runs.push(r.clone());
    r
}

fn criterion_1(runs: &mut Vec<EnumerationResult>) -> Outcome {
    let mut ok = true;
    let mut got = Vec::new();
    let mut min_field = None;
    for q in [2u64, 3, 4, 5] {
        let r = count(p(2, 1, 1), q, Property::Mdp, runs);
        let expected = (q - 1) * (q - 1) * (q - 2);
        ok &= r.codes.mdp == expected;
        ok &= r.matrices.mdp == r.matrices.complete && r.mdp_not_complete == 0;
        if r.exists && min_field.is_none() {
            min_field = Some(q);
        }
        got.push(r.codes.mdp);
    }
    ok &= min_field == Some(3);
    Outcome::check(
        ok,
        format!("MDP codes {got:?} (want [0, 4, 18, 48]), MDP <=> complete on every instance, min field {min_field:?}"),
    )
}

fn criterion_2(runs: &mut Vec<EnumerationResult>) -> Outcome {
    let mut counts_ok = true;
    let mut got = Vec::new();
    let mut reverse_gaps = Vec::new();
    for n in [3usize, 4] {
        let params = p(n, 1, 1);
        for q in [n as u64 - 1, n as u64] {
            let r = count(params, q, Property::Mdp, runs);
            let want = if q == n as u64 {
                let prod: u64 = (2..n as u64).map(|i| q - i).product();
                q * (q - 1).pow(n as u32 + 1) * prod
            } else {
                0
            };
            counts_ok &= r.matrices.mdp == want;
            got.push((n, q, r.matrices.mdp));
            if r.matrices.mdp != r.matrices.reverse {
                reverse_gaps.push((n, q, r.matrices.mdp - r.matrices.reverse));
            }
        }
    }
    // Explicit instance: MDP over GF(3) but its reverse is not.
    let f = FieldSpec::of_order(3).unwrap();
    let g = Generator::from_nested(
        &f,
        p(3, 1, 1),
        &[vec![vec![2], vec![2], vec![1]], vec![vec![2], vec![1], vec![0]]],
    )
    .unwrap();
    let witness_ok = is_mdp_generator(&g).unwrap().holds() && !is_reverse_mdp_generator(&g).unwrap().holds();
    let reverse_claim = reverse_gaps.is_empty();
    let closed_form_ok = [(3usize, 3u64), (4, 4)].iter().all(|&(n, q)| {
        let sc = SmallCase::new(p(n, 1, 1)).unwrap();
        runs.iter()
            .find(|r| r.params == p(n, 1, 1) && r.q == q)
            .is_some_and(|r| big(r.matrices.reverse) == sc.matrix_count(Property::ReverseMdp, q))
    });
    Outcome {
        pass: counts_ok && reverse_claim,
        detail: format!(
            "MDP counts (n, q, count) {got:?} match; reverse clause does not hold: MDP-but-not-reverse \
             instances {reverse_gaps:?}, e.g. G = (2+2z, 2+z, 1)^T over GF(3); reverse counts follow \
             (q-1)^(n+1) prod_(i=2..n)(q-i) = 0 at q = n"
        ),
        known_failure: counts_ok && !reverse_claim && witness_ok && closed_form_ok,
    }
}

fn criterion_3(runs: &mut Vec<EnumerationResult>) -> Outcome {
    let mut ok = true;
    let mut got = Vec::new();
    for (q, want) in [(3u64, 0u64), (4, 162)] {
        let r = count(p(3, 2, 1), q, Property::CompleteMdp, runs);
        ok &= r.matrices.complete == want && r.matrices.reverse == want;
        got.push(r.matrices.complete);
    }
    let min = SmallCase::new(p(3, 2, 1)).unwrap().min_field(Property::CompleteMdp);
    ok &= min == Some(4) && got[1] > 0 && got[0] == 0;
    Outcome::check(ok, format!("complete MDP counts {got:?} (want [0, 162]), min field {min:?}"))
}

fn criterion_4() -> Outcome {
    let f3 = FieldSpec::of_order(3).unwrap();
    let h0 = vec![vec![1, 0, 1, 2], vec![0, 1, 1, 1]];
    let mut ok = true;
    // Any H_1 keeping generic row degrees: first row of degree 1.
    for h1 in [[1, 0, 0, 0], [0, 2, 1, 1], [2, 2, 2, 2]] {
        let h = ParityCheck::from_nested(&f3, p(4, 2, 1), &[h0.clone(), vec![h1.to_vec(), vec![0; 4]]]).unwrap();
        ok &= is_mdp(&h).unwrap().holds();
    }
    let f5 = FieldSpec::of_order(5).unwrap();
    let h0 = vec![vec![1, 0, 0, 1, 1, 2], vec![0, 1, 0, 1, 2, 1], vec![0, 0, 1, 1, 3, 3]];
    for d in [1, 2] {
        let mut h1 = vec![vec![0; 6]; 3];
        for (i, row) in h1.iter_mut().enumerate().take(d) {
            row[i] = 1;
            row[5] = 3;
        }
        let h = ParityCheck::from_nested(&f5, p(6, 3, d), &[h0.clone(), h1]).unwrap();
        ok &= is_mdp(&h).unwrap().holds();
    }
    Outcome::check(ok, "(4,2,1) over GF(3) with three choices of H_1; (6,3,1) and (6,3,2) over GF(5)".into())
}

fn criterion_5() -> Outcome {
    let mut ok = bound_m(p(2, 1, 1)) == (big(60), big(72), big(54));
    for n in 3..=12u64 {
        let (m1, m2, m3) = bound_m(p(n as usize, 1, 1));
        ok &= m1 == big((4 * n * n - 2 * n) * (n - 1));
        ok &= m2 == big((n * n * n + n * n) * (n - 1));
        ok &= m3 == big((3 * n * n - n) * (n - 1));
    }
    ok &= bound_one(p(3, 2, 1)).unwrap() == big(5);
    ok &= bound_s(p(3, 2, 1)).unwrap() == big(2);
    for n in 3..=12usize {
        ok &= bound_s(p(n, n - 1, 1)).unwrap() == big(n as u64 - 1);
    }
    ok &= bound_l0(p(4, 2, 1)).unwrap() == big(3);
    ok &= bound_l0(p(6, 3, 1)).unwrap() == big(10) && bound_l0(p(6, 3, 2)).unwrap() == big(10);
    ok &= b_gamma(4) == BigRational::from_integer(4.into());
    Outcome::check(ok, "M, bound_one, bound_S, L0 and B_4 regression values".into())
}

fn criterion_6() -> (Outcome, Vec<(usize, Duration)>) {
    let cfg = SearchConfig {
        threads: 0,
        ..SearchConfig::default()
    };
    let mut ok = true;
    let mut found = Vec::new();
    let mut times = Vec::new();
    for (gamma, want, limit) in [(3, 3, 10), (4, 5, 10), (5, 7, 10), (6, 11, 600)] {
        let start = Instant::now();
        let s = superregular_min_field(gamma, 32, &cfg).unwrap();
        let t = start.elapsed();
        ok &= s.min_field == Some(want) && t < Duration::from_secs(limit);
        found.push((gamma, s.min_field));
        times.push((gamma, t));
    }
    (
        Outcome::check(ok, format!("(gamma, min field) {found:?}, want 3, 5, 7, 11")),
        times,
    )
}

/// Verdict pairs `(minor criterion, column distances)` and
/// `(code MDP, dual MDP)` over the random sample.
fn sample_verdicts() -> Vec<(bool, bool, bool)> {
    let mut out = Vec::new();
    for (params, seed) in [(p(3, 1, 1), 7), (p(3, 2, 1), 8)] {
        for code in sample_codes(params, 5, 500, seed).unwrap() {
            let l = params.l();
            let row = match code {
                Code::Generator(g) => {
                    let mdp = is_mdp_generator(&g).unwrap().holds();
                    let dist = column_distances(&g, l).unwrap().is_optimal();
                    let dual = is_mdp(&g.dualize().unwrap()).unwrap().holds();
                    (mdp, dist, dual)
                }
                Code::Parity(h) => {
                    let mdp = is_mdp(&h).unwrap().holds();
                    let dist = column_distances(&h.to_generator().unwrap(), l).unwrap().is_optimal();
                    let dual = is_mdp_generator(&h.dualize().unwrap()).unwrap().holds();
                    (mdp, dist, dual)
                }
            };
            out.push(row);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let cfg = SearchConfig {
        backtrack_budget: 0,
        ..SearchConfig::default()
    };
    let sets = low_degree_params(6);
    let mut failures = Vec::new();
    for params in &sets {
        let threshold = if params.l() == 0 { bound_one(*params) } else { bound_s(*params) };
        let want_q = next_prime_power(u64::try_from(threshold.unwrap()).unwrap() + 1);
        match greedy_construct(*params, None, &cfg) {
            Ok(o) if o.mdp && o.backtracks == 0 && o.q == want_q => {}
            Ok(o) => failures.push(format!("{params}: mdp {} backtracks {} q {}", o.mdp, o.backtracks, o.q)),
            Err(e) => failures.push(format!("{params}: {e}")),
        }
    }
    Outcome::check(
        sets.len() == 20 && failures.is_empty(),
        format!(
            "{}/{} sets built and verified MDP with backtrack budget 0 (q = next prime power above bound_S, \
             or bound_one when L = 0){}",
            sets.len() - failures.len(),
            sets.len(),
            if failures.is_empty() { String::new() } else { format!("; failures {failures:?}") }
        ),
    )
}

fn criterion_10(runs: &mut Vec<EnumerationResult>) -> Outcome {
    let r = count(p(2, 1, 1), 5, Property::Mdp, runs);
    let exact = r.probability();
    let formula = BigRational::new(8.into(), 25.into());
    let cfg = SearchConfig {
        seed: 2024,
        threads: 0,
        ..SearchConfig::default()
    };
    let est = estimate_probability(p(2, 1, 1), 9, Property::Mdp, 100_000, &cfg).unwrap();
    let dev = est.deviation_sigmas.unwrap();
    Outcome::check(
        exact == formula && dev < 3.0,
        format!(
            "GF(5) exhaustive {exact} (want 8/25 = 0.32); GF(9) Monte Carlo {:.5} vs {:.5}, {dev:.2} sigma (< 3)",
            est.estimate,
            est.exact.unwrap()
        ),
    )
}

fn criterion_11() -> Outcome {
    let r = compare(p(5, 3, 2));
    let field = |name: &str, prime: bool| {
        r.entry(name)
            .and_then(|e| if prime { e.min_prime } else { e.min_prime_power })
    };
    let sr = r.entry("superregular_table").and_then(|e| e.value.clone());
    let s = r.entry("bound_S").and_then(|e| e.value.clone());
    let ok = sr.as_deref() == Some("31")
        && field("superregular_table", false) == Some(31)
        && s.as_deref() == Some("34")
        && field("bound_S", true) == Some(37)
        && field("conjecture", true) == Some(67)
        && r.notes.iter().any(|n| n.contains("34") && n.contains("87"));
    Outcome::check(
        ok,
        format!(
            "superregular_table {:?}, bound_S value {s:?} -> |F| >= {:?} (listed as 37), conjecture -> prime {:?}, \
             34-vs-87 note present",
            sr,
            field("bound_S", true),
            field("conjecture", true)
        ),
    )
}

fn criterion_12(runs: &[EnumerationResult]) -> Outcome {
    let violations: u64 = runs.iter().map(|r| r.hierarchy_violations).sum();
    let nested = runs
        .iter()
        .all(|r| r.matrices.complete <= r.matrices.reverse && r.matrices.reverse <= r.matrices.mdp);
    Outcome::check(
        violations == 0 && nested,
        format!("{} exhaustive runs, {violations} per-instance violations, counts nested: {nested}", runs.len()),
    )
}

/// Runs every criterion in order.
pub fn run() -> ReproReport {
    let mut runs = Vec::new();
    let mut results: Vec<(u32, &str, Outcome, Duration, Duration)> = Vec::new();
    let mut timed = |id: u32, tol: &'static str, limit: u64, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut o = f();
        let t = start.elapsed();
        let limit = Duration::from_secs(limit);
        if t > limit {
            o.pass = false;
            o.known_failure = false;
            o.detail += " [over time limit]";
        }
        results.push((id, tol, o, t, limit));
    };
    timed(1, "exact", 1, &mut || criterion_1(&mut runs));
    timed(2, "exact", 30, &mut || criterion_2(&mut runs));
    timed(3, "exact", 60, &mut || criterion_3(&mut runs));
    timed(4, "exact", 1, &mut criterion_4);
    timed(5, "exact", 1, &mut criterion_5);
    timed(6, "exact", 610, &mut || {
        let (o, times) = criterion_6();
        let times: Vec<String> = times.iter().map(|(g, t)| format!("gamma {g}: {:.2}s", t.as_secs_f64())).collect();
        Outcome {
            detail: format!("{}; {}", o.detail, times.join(", ")),
            ..o
        }
    });
    let mut verdicts = Vec::new();
    timed(7, "zero disagreements", 120, &mut || {
        verdicts = sample_verdicts();
        let bad = verdicts.iter().filter(|v| v.0 != v.1).count();
        let mdp = verdicts.iter().filter(|v| v.0).count();
        Outcome::check(
            verdicts.len() >= 500 && bad == 0,
            format!("{} codes ((3,1,1), (3,2,1) over GF(5)), {mdp} MDP, {bad} disagreements", verdicts.len()),
        )
    });
    timed(8, "zero disagreements", 1, &mut || {
        let bad = verdicts.iter().filter(|v| v.0 != v.2).count();
        Outcome::check(bad == 0, format!("{} codes, {bad} disagreements between code and dual", verdicts.len()))
    });
    timed(9, "100% success", 600, &mut criterion_9);
    timed(10, "exact / 3 sigma", 60, &mut || criterion_10(&mut runs));
    timed(11, "exact", 1, &mut criterion_11);
    let snapshot = runs.clone();
    timed(12, "zero violations", 1, &mut || criterion_12(&snapshot));

    let criteria: Vec<CriterionResult> = results
        .into_iter()
        .map(|(id, tol, o, t, limit)| CriterionResult {
            id,
            tolerance: tol.to_string(),
            pass: o.pass,
            known_failure: o.known_failure,
            detail: o.detail,
            seconds: t.as_secs_f64(),
            limit_seconds: limit.as_secs(),
        })
        .collect();
    ReproReport {
        passed: criteria.iter().filter(|c| c.pass).count(),
        unexpected_failures: criteria.iter().filter(|c| !c.pass && !c.known_failure).count(),
        criteria,
    }
}
