//! Exhaustive counting, seeded random search, the greedy constructor, Monte
//! Carlo probability estimates, and the superregular minimal-field search.
//!
//! Every operation is deterministic in its [`SearchConfig`]: work is split
//! into fixed chunks, each chunk draws from its own ChaCha8 stream, and
//! results are merged in chunk order.

mod greedy;
mod superregular;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{probability_lower_bounds, ratio, BoundsError, SmallCase};
use crate::code::{Code, CodeError, CodeFile, CodeParams, Generator, ParityCheck};
use crate::gf::{FieldSpec, GfError};
use crate::gfmatrix::GfMatrix;
use crate::verify::{self, Property};

pub use greedy::{greedy_construct, low_degree_params, GreedyOutcome};
pub use superregular::{superregular_in_field, superregular_min_field, FieldAttempt, SuperregularSearch};

#[derive(Debug, Error)]
pub enum ExploreError {
    #[error("search space of {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("greedy construction failed after {backtracks} backtracks: {reason}")]
    GreedyFailed { backtracks: u64, reason: String },
    #[error("{0}")]
    NotApplicable(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    Random,
    Greedy,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "random" => Ok(Strategy::Random),
            "greedy" => Ok(Strategy::Greedy),
            other => Err(format!("unknown strategy {other:?} (expected exhaustive, random or greedy)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub seed: u64,
    /// Random draws before giving up.
    pub max_tries: u64,
    /// Worker threads; 0 uses the global rayon pool.
    pub threads: usize,
    /// Backtracks allowed to the greedy constructor.
    pub backtrack_budget: u64,
    /// Largest search space (matrices, or superregular leaves) to enumerate.
    pub budget: u64,
    /// Witnesses kept by enumeration.
    pub witness_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            strategy: Strategy::Random,
            seed: 0,
            max_tries: 100_000,
            threads: 1,
            backtrack_budget: 10_000,
            budget: 100_000_000,
            witness_cap: 3,
        }
    }
}

impl SearchConfig {
    /// Runs `f` on a pool with `self.threads` workers.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, ExploreError> {
        if self.threads == 0 {
            return Ok(f());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| ExploreError::ThreadPool(e.to_string()))?;
        Ok(pool.install(f))
    }
}

/// Matrix family enumerated or sampled for given parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// `k = 1`: generators `g_0 + ... + g_delta z^delta` with `g_delta != 0`.
    Generator,
    /// `n - k = 1`: parity checks `h_0 + ... + h_delta z^delta` with `h_delta != 0`.
    ParityCheck,
    /// Parity checks with generic row degrees whose leading row coefficient
    /// matrix starts with an identity block.
    Systematic,
}

impl Representation {
    pub fn for_params(p: CodeParams) -> Self {
        if p.k() == 1 {
            Representation::Generator
        } else if p.redundancy() == 1 {
            Representation::ParityCheck
        } else {
            Representation::Systematic
        }
    }

    /// Whether nonzero scalar multiples give the same code.
    pub fn scalar_quotient(self) -> bool {
        self != Representation::Systematic
    }
}

/// The free entries of a representation: `(coefficient, row, col)` slots
/// over a fixed template.
pub(crate) struct Space {
    field: FieldSpec,
    params: CodeParams,
    rep: Representation,
    slots: Vec<(usize, usize, usize)>,
    template: Vec<GfMatrix>,
    /// Coefficient that must be nonzero, if any.
    leading: Option<usize>,
}

pub(crate) enum Instance {
    G(Generator),
    H(ParityCheck),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Flags {
    pub mdp: bool,
    pub reverse: bool,
    pub complete: bool,
}

impl Flags {
    pub fn get(self, p: Property) -> bool {
        match p {
            Property::Mdp => self.mdp,
            Property::ReverseMdp => self.reverse,
            Property::CompleteMdp => self.complete,
        }
    }
}

impl Space {
    pub fn new(field: &FieldSpec, params: CodeParams) -> Self {
        let rep = Representation::for_params(params);
        let (n, d) = (params.n(), params.delta());
        let mut slots = Vec::new();
        let (template, leading) = match rep {
            Representation::Generator => {
                for i in 0..=d {
                    for r in 0..n {
                        slots.push((i, r, 0));
                    }
                }
                (vec![GfMatrix::zeros(field, n, 1); d + 1], Some(d))
            }
            Representation::ParityCheck => {
                for i in 0..=d {
                    for c in 0..n {
                        slots.push((i, 0, c));
                    }
                }
                (vec![GfMatrix::zeros(field, 1, n); d + 1], Some(d))
            }
            Representation::Systematic => {
                let (nk, nu) = (params.redundancy(), params.nu());
                // Rows below `a` have degree nu, the rest nu - 1.
                let a = d - nk * (nu - 1);
                let mut template = vec![GfMatrix::zeros(field, nk, n); nu + 1];
                for r in 0..nk {
                    let top = if r < a { nu } else { nu - 1 };
                    template[top].set(r, r, 1);
                    for i in 0..=top {
                        for c in 0..n {
                            if i == top && c < nk {
                                continue;
                            }
                            slots.push((i, r, c));
                        }
                    }
                }
                (template, None)
            }
        };
        Space {
            field: field.clone(),
            params,
            rep,
            slots,
            template,
            leading,
        }
    }

    pub fn representation(&self) -> Representation {
        self.rep
    }

    /// `q^slots`, if it fits.
    pub fn raw_size(&self) -> Option<u64> {
        (self.field.q() as u64).checked_pow(self.slots.len() as u32)
    }

    fn raw_size_big(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.field.q()), self.slots.len())
    }

    /// Builds the instance for the given slot values, or `None` when the
    /// leading coefficient vanishes.
    pub fn build(&self, values: &[u32]) -> Option<Instance> {
        let mut coeffs = self.template.clone();
        for (&(i, r, c), &v) in self.slots.iter().zip(values) {
            coeffs[i].set(r, c, v);
        }
        if let Some(l) = self.leading {
            if coeffs[l].is_zero() {
                return None;
            }
        }
        Some(match self.rep {
            Representation::Generator => {
                Instance::G(Generator::new(&self.field, self.params, coeffs).expect("shapes match"))
            }
            _ => Instance::H(ParityCheck::new(&self.field, self.params, coeffs).expect("shapes match")),
        })
    }

    fn decode(&self, mut index: u64, out: &mut [u32]) {
        let q = self.field.q() as u64;
        for v in out.iter_mut() {
            *v = (index % q) as u32;
            index /= q;
        }
    }

    /// Uniform sample, rejecting a vanishing leading coefficient.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Instance {
        let mut values = vec![0; self.slots.len()];
        loop {
            for v in values.iter_mut() {
                *v = rng.gen_range(0..self.field.q());
            }
            if let Some(inst) = self.build(&values) {
                return inst;
            }
        }
    }
}

impl Instance {
    pub fn to_code(&self) -> Code {
        match self {
            Instance::G(g) => Code::Generator(g.clone()),
            Instance::H(h) => Code::Parity(h.clone()),
        }
    }

    /// Property flags, or `None` when the matrix does not define a code of
    /// the given parameters (catastrophic, or not minimal / row proper).
    pub fn evaluate(&self) -> Option<Flags> {
        match self {
            Instance::G(g) => {
                if !g.is_minimal() || !g.is_noncatastrophic() {
                    return None;
                }
                let mdp = verify::is_mdp_generator(g).ok()?.holds();
                let reverse = mdp && verify::is_mdp_generator(&g.reverse()).ok()?.holds();
                let p = g.params();
                let complete = p.r() == 0 && {
                    let h = g.to_parity_check().ok()?;
                    verify::is_complete_mdp(&h).ok()?.holds()
                };
                Some(Flags { mdp, reverse, complete })
            }
            Instance::H(h) => {
                if !h.is_row_proper() || !h.is_left_prime() {
                    return None;
                }
                let mdp = verify::is_mdp(h).ok()?.holds();
                let reverse = mdp && verify::is_reverse_mdp(h).ok()?.holds();
                let complete = verify::is_complete_mdp(h).ok()?.holds();
                Some(Flags { mdp, reverse, complete })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCounts {
    pub mdp: u64,
    pub reverse: u64,
    pub complete: u64,
}

impl PropertyCounts {
    pub fn get(&self, p: Property) -> u64 {
        match p {
            Property::Mdp => self.mdp,
            Property::ReverseMdp => self.reverse,
            Property::CompleteMdp => self.complete,
        }
    }

    fn add(&mut self, f: Flags) {
        self.mdp += f.mdp as u64;
        self.reverse += f.reverse as u64;
        self.complete += f.complete as u64;
    }

    fn merge(&mut self, o: &PropertyCounts) {
        self.mdp += o.mdp;
        self.reverse += o.reverse;
        self.complete += o.complete;
    }

    fn divided(&self, d: u64) -> PropertyCounts {
        PropertyCounts {
            mdp: self.mdp / d,
            reverse: self.reverse / d,
            complete: self.complete / d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationResult {
    pub params: CodeParams,
    pub q: u64,
    pub property: Property,
    pub representation: Representation,
    /// Matrices scanned (leading coefficient nonzero).
    pub total: u64,
    /// Matrices that define a code (non-catastrophic, minimal / row proper).
    pub valid: u64,
    pub matrices: PropertyCounts,
    /// Codes: matrices modulo nonzero scalars for the scalar-quotient
    /// representations, otherwise one code per systematic representative.
    pub codes: PropertyCounts,
    /// Instances breaking complete => reverse => MDP.
    pub hierarchy_violations: u64,
    /// Instances that are MDP but not complete MDP.
    pub mdp_not_complete: u64,
    /// Whether some code over this field has the requested property.
    pub exists: bool,
    pub witnesses: Vec<CodeFile>,
    pub config: SearchConfig,
}

impl EnumerationResult {
    /// `matrices.get(property) / total`, exact.
    pub fn probability(&self) -> BigRational {
        BigRational::new(self.matrices.get(self.property).into(), self.total.into())
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{} over GF({}), {:?} representation\nscanned {} matrices, {} define codes\n",
            self.params, self.q, self.representation, self.total, self.valid
        );
        out += "property   matrices   codes\n";
        for (name, p) in [
            ("mdp", Property::Mdp),
            ("reverse", Property::ReverseMdp),
            ("complete", Property::CompleteMdp),
        ] {
            out += &format!("{:<9}  {:>8}  {:>6}\n", name, self.matrices.get(p), self.codes.get(p));
        }
        out += &format!("hierarchy violations: {}\n", self.hierarchy_violations);
        out += &format!("{} exists: {}\n", self.property, self.exists);
        out
    }
}

const CHUNK: u64 = 2048;

struct ChunkResult {
    total: u64,
    valid: u64,
    counts: PropertyCounts,
    violations: u64,
    mdp_only: u64,
    witnesses: Vec<CodeFile>,
}

/// Exact counts over every matrix of the representation for `params`.
pub fn enumerate_and_count(
    params: CodeParams,
    q: u64,
    property: Property,
    config: &SearchConfig,
) -> Result<EnumerationResult, ExploreError> {
    let field = FieldSpec::of_order(q)?;
    let space = Space::new(&field, params);
    let size = match space.raw_size() {
        Some(s) if s <= config.budget => s,
        _ => {
            return Err(ExploreError::BudgetExceeded {
                needed: space.raw_size_big().to_string(),
                budget: config.budget,
            })
        }
    };
    let cap = config.witness_cap;
    let chunks = size.div_ceil(CHUNK);
    let results: Vec<ChunkResult> = config.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut out = ChunkResult {
                    total: 0,
                    valid: 0,
                    counts: PropertyCounts::default(),
                    violations: 0,
                    mdp_only: 0,
                    witnesses: Vec::new(),
                };
                let mut values = vec![0; space.slots.len()];
                for index in chunk * CHUNK..((chunk + 1) * CHUNK).min(size) {
                    space.decode(index, &mut values);
                    let Some(inst) = space.build(&values) else { continue };
                    out.total += 1;
                    let Some(flags) = inst.evaluate() else { continue };
                    out.valid += 1;
                    out.counts.add(flags);
                    if (flags.complete && !flags.reverse) || (flags.reverse && !flags.mdp) {
                        out.violations += 1;
                    }
                    out.mdp_only += (flags.mdp && !flags.complete) as u64;
                    if flags.get(property) && out.witnesses.len() < cap {
                        out.witnesses.push(CodeFile::from_code(&inst.to_code()));
                    }
                }
                out
            })
            .collect()
    })?;
    let mut total = 0;
    let mut valid = 0;
    let mut matrices = PropertyCounts::default();
    let mut hierarchy_violations = 0;
    let mut mdp_not_complete = 0;
    let mut witnesses = Vec::new();
    for r in results {
        total += r.total;
        valid += r.valid;
        matrices.merge(&r.counts);
        hierarchy_violations += r.violations;
        mdp_not_complete += r.mdp_only;
        for w in r.witnesses {
            if witnesses.len() < cap {
                witnesses.push(w);
            }
        }
    }
    let rep = space.representation();
    let codes = if rep.scalar_quotient() { matrices.divided(q - 1) } else { matrices };
    Ok(EnumerationResult {
        params,
        q,
        property,
        representation: rep,
        total,
        valid,
        exists: matrices.get(property) > 0,
        matrices,
        codes,
        hierarchy_violations,
        mdp_not_complete,
        witnesses,
        config: config.clone(),
    })
}

const DRAWS_PER_CHUNK: u64 = 256;

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub params: CodeParams,
    pub q: u64,
    pub property: Property,
    pub found: bool,
    /// Draws up to and including the witness, or all draws on exhaustion.
    pub tries: u64,
    pub witness: Option<CodeFile>,
    pub config: SearchConfig,
}

/// Draws random matrices until one has the property. The witness is the
/// first one in draw order, whatever the thread count.
pub fn random_search(
    params: CodeParams,
    q: u64,
    property: Property,
    config: &SearchConfig,
) -> Result<SearchOutcome, ExploreError> {
    let field = FieldSpec::of_order(q)?;
    let space = Space::new(&field, params);
    let max = config.max_tries;
    let chunks = max.div_ceil(DRAWS_PER_CHUNK);
    let seed = config.seed;
    let found = config.install(|| {
        (0..chunks).into_par_iter().find_map_first(|chunk| {
            let mut rng = chunk_rng(seed, chunk);
            for i in 0..DRAWS_PER_CHUNK {
                let draw = chunk * DRAWS_PER_CHUNK + i;
                if draw >= max {
                    break;
                }
                let inst = space.sample(&mut rng);
                if inst.evaluate().is_some_and(|f| f.get(property)) {
                    return Some((draw + 1, CodeFile::from_code(&inst.to_code())));
                }
            }
            None
        })
    })?;
    Ok(match found {
        Some((tries, w)) => SearchOutcome {
            params,
            q,
            property,
            found: true,
            tries,
            witness: Some(w),
            config: config.clone(),
        },
        None => SearchOutcome {
            params,
            q,
            property,
            found: false,
            tries: max,
            witness: None,
            config: config.clone(),
        },
    })
}

/// `count` codes drawn uniformly from the representation for `params`,
/// keeping only non-catastrophic (left prime) ones.
pub fn sample_codes(params: CodeParams, q: u64, count: usize, seed: u64) -> Result<Vec<Code>, ExploreError> {
    let field = FieldSpec::of_order(q)?;
    let space = Space::new(&field, params);
    let mut rng = chunk_rng(seed, 0);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let inst = space.sample(&mut rng);
        let ok = match &inst {
            Instance::G(g) => g.is_minimal() && g.is_noncatastrophic(),
            Instance::H(h) => h.is_row_proper() && h.is_left_prime(),
        };
        if ok {
            out.push(inst.to_code());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub params: CodeParams,
    pub q: u64,
    pub property: Property,
    pub representation: Representation,
    pub samples: u64,
    pub seed: u64,
    pub hits: u64,
    pub noncatastrophic: u64,
    pub estimate: f64,
    /// Normal-approximation 95% interval, clamped to `[0, 1]`.
    pub ci95: (f64, f64),
    /// Estimate among non-catastrophic samples.
    pub conditional_estimate: f64,
    /// Closed form for the small families, when it applies.
    pub exact: Option<f64>,
    pub exact_conditional: Option<f64>,
    /// Binomial standard deviation at the exact value (or the estimate).
    pub sigma: f64,
    /// `|estimate - exact| / sigma`.
    pub deviation_sigmas: Option<f64>,
    /// Best Schwartz-Zippel lower bound, when `q` meets its hypothesis.
    pub lower_bound: Option<f64>,
    pub lower_bound_conditional_approx: Option<f64>,
}

/// Monte Carlo estimate of the probability that a random matrix of the
/// representation for `params` has the property.
pub fn estimate_probability(
    params: CodeParams,
    q: u64,
    property: Property,
    samples: u64,
    config: &SearchConfig,
) -> Result<ProbabilityEstimate, ExploreError> {
    let field = FieldSpec::of_order(q)?;
    let space = Space::new(&field, params);
    let chunks = samples.div_ceil(DRAWS_PER_CHUNK);
    let seed = config.seed;
    let (hits, noncat) = config.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = chunk_rng(seed, chunk);
                let (mut hits, mut noncat) = (0u64, 0u64);
                let end = ((chunk + 1) * DRAWS_PER_CHUNK).min(samples);
                for _ in chunk * DRAWS_PER_CHUNK..end {
                    if let Some(f) = space.sample(&mut rng).evaluate() {
                        noncat += 1;
                        hits += f.get(property) as u64;
                    }
                }
                (hits, noncat)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    })?;
    let n = samples.max(1) as f64;
    let estimate = hits as f64 / n;
    // Exact value from the closed-form counts over the same sample space.
    let small = SmallCase::new(params).ok();
    let exact_ratio = small.map(|s| ratio(&s.matrix_count(property, q), &s.sample_space(q)));
    let exact = exact_ratio.as_ref().and_then(|r| r.to_f64());
    let exact_conditional = exact_ratio.as_ref().and_then(|r| {
        let t = BigRational::new(1.into(), q.into());
        let noncat = BigRational::one() - num_traits::pow(t, params.n() - 1);
        (r / noncat).to_f64()
    });
    let p = exact.unwrap_or(estimate);
    let sigma = (p * (1.0 - p) / n).sqrt();
    let half = 1.96 * (estimate * (1.0 - estimate) / n).sqrt();
    let report = probability_lower_bounds(params, q, property);
    let best = report
        .best
        .as_ref()
        .and_then(|b| report.bounds.iter().find(|x| &x.name == b));
    Ok(ProbabilityEstimate {
        params,
        q,
        property,
        representation: space.representation(),
        samples,
        seed,
        hits,
        noncatastrophic: noncat,
        estimate,
        ci95: ((estimate - half).max(0.0), (estimate + half).min(1.0)),
        conditional_estimate: if noncat == 0 { 0.0 } else { hits as f64 / noncat as f64 },
        exact,
        exact_conditional,
        sigma,
        deviation_sigmas: exact.map(|e| if sigma == 0.0 { 0.0 } else { (estimate - e).abs() / sigma }),
        lower_bound: best.map(|b| b.unconditional_f64),
        lower_bound_conditional_approx: best.map(|b| b.conditional_approx_f64),
    })
}

impl ProbabilityEstimate {
    pub fn to_table(&self) -> String {
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.6}"));
        let mut out = format!(
            "{} over GF({}), {}: {} samples (seed {})\n",
            self.params, self.q, self.property, self.samples, self.seed
        );
        out += &format!("estimate      {:.6}  (95% CI {:.6} .. {:.6})\n", self.estimate, self.ci95.0, self.ci95.1);
        out += &format!("conditional   {:.6}  ({} non-catastrophic)\n", self.conditional_estimate, self.noncatastrophic);
        out += &format!("exact         {}\n", opt(self.exact));
        out += &format!("exact cond.   {}\n", opt(self.exact_conditional));
        if let Some(d) = self.deviation_sigmas {
            out += &format!("deviation     {d:.2} sigma\n");
        }
        out += &format!("lower bound   {}\n", opt(self.lower_bound));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, k: usize, d: usize) -> CodeParams {
        CodeParams::new(n, k, d).unwrap()
    }

    #[test]
    fn systematic_space_is_row_proper() {
        let f = FieldSpec::of_order(3).unwrap();
        for params in [p(4, 2, 1), p(4, 2, 2), p(5, 2, 4), p(5, 3, 2)] {
            let space = Space::new(&f, params);
            assert_eq!(space.representation(), Representation::Systematic);
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for _ in 0..20 {
                match space.sample(&mut rng) {
                    Instance::H(h) => {
                        assert!(h.is_row_proper(), "{params}");
                        assert_eq!(h.row_degrees().iter().sum::<usize>(), params.delta());
                    }
                    Instance::G(_) => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn two_one_one_counts() {
        let cfg = SearchConfig::default();
        let r = enumerate_and_count(p(2, 1, 1), 3, Property::Mdp, &cfg).unwrap();
        assert_eq!(r.total, 81 - 9);
        assert_eq!(r.codes.mdp, 4);
        assert_eq!(r.codes.complete, 4);
        assert_eq!(r.hierarchy_violations, 0);
        assert!(r.witnesses.len() <= cfg.witness_cap);
        let r = enumerate_and_count(p(2, 1, 1), 2, Property::Mdp, &cfg).unwrap();
        assert!(!r.exists);
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = SearchConfig {
            budget: 100,
            ..SearchConfig::default()
        };
        assert!(matches!(
            enumerate_and_count(p(2, 1, 1), 5, Property::Mdp, &cfg),
            Err(ExploreError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn random_search_is_deterministic_across_threads() {
        let mut cfg = SearchConfig {
            seed: 11,
            max_tries: 5000,
            ..SearchConfig::default()
        };
        let a = random_search(p(4, 2, 1), 3, Property::Mdp, &cfg).unwrap();
        assert!(a.found);
        cfg.threads = 4;
        let b = random_search(p(4, 2, 1), 3, Property::Mdp, &cfg).unwrap();
        assert_eq!((a.tries, &a.witness), (b.tries, &b.witness));
        let none = random_search(p(2, 1, 1), 2, Property::Mdp, &cfg).unwrap();
        assert!(!none.found && none.tries == cfg.max_tries);
    }

    #[test]
    fn estimate_is_deterministic() {
        let cfg = SearchConfig {
            seed: 5,
            threads: 1,
            ..SearchConfig::default()
        };
        let a = estimate_probability(p(2, 1, 1), 7, Property::Mdp, 3000, &cfg).unwrap();
        let b = estimate_probability(p(2, 1, 1), 7, Property::Mdp, 3000, &SearchConfig { threads: 3, ..cfg }).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.deviation_sigmas.unwrap() < 4.0);
    }
}
