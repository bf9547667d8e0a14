//! `ccodes`: verify, bound, search and count convolutional codes.
//!
//! Exit status: 0 on success or a positive verdict, 1 on a negative verdict
//! or an exhausted search, 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use ccodes::bounds::{compare, BoundsReport};
use ccodes::code::{Code, CodeFile, CodeParams};
use ccodes::explore::{
    enumerate_and_count, estimate_probability, greedy_construct, random_search, superregular_in_field,
    superregular_min_field, ExploreError, SearchConfig, Strategy,
};
use ccodes::verify::{self, Property, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "ccodes", version, about = "Finite-field convolutional codes: MDP checks, bounds and searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "CCODES_THREADS", default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    delta: usize,
}

impl ParamArgs {
    fn params(self) -> Result<CodeParams, Failure> {
        CodeParams::new(self.n, self.k, self.delta).map_err(|e| Failure::Input(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify a matrix file.
    Check {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "mdp")]
        mode: Property,
    },
    /// Every field-size bound for the parameters.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Look for a code with the property over GF(q).
    Search {
        #[command(flatten)]
        params: ParamArgs,
        /// Field size; greedy picks the bound-driven size when omitted.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value = "random")]
        strategy: Strategy,
        #[arg(long, default_value = "mdp")]
        property: Property,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_tries: u64,
        #[arg(long, default_value_t = 10_000)]
        backtrack_budget: u64,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        /// Write the witness matrix file here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive counts over GF(q).
    Count {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "mdp")]
        property: Property,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 3)]
        witnesses: usize,
    },
    /// Monte Carlo probability estimate with exact values and lower bounds.
    Probability {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "mdp")]
        property: Property,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Superregular lower triangular Toeplitz matrices.
    Superregular {
        #[arg(long)]
        gamma: usize,
        /// Search this field only.
        #[arg(long, conflicts_with = "min_field")]
        q: Option<u64>,
        /// Find the smallest field (the default).
        #[arg(long)]
        min_field: bool,
        #[arg(long, default_value_t = 128)]
        max_q: u64,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Ranked comparison of the applicable bounds.
    Compare {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the reproduction suite.
    Repro,
}

enum Failure {
    /// Exit 1.
    Negative,
    /// Exit 2.
    Input(String),
}

impl From<ExploreError> for Failure {
    fn from(e: ExploreError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ccodes::code::CodeError> for Failure {
    fn from(e: ccodes::code::CodeError) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CheckReport {
    params: CodeParams,
    q: u64,
    mode: Property,
    verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SuperregularFieldReport {
    gamma: usize,
    q: u64,
    found: bool,
    witness: Option<Vec<u32>>,
    nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Ranking {
    params: CodeParams,
    /// `(name, min prime power, min prime, proven)` by increasing field size.
    ranked: Vec<(String, u64, Option<u64>, bool)>,
    winner: Option<String>,
    notes: Vec<String>,
}

struct Out {
    format: Format,
}

impl Out {
    fn emit<T: Serialize>(&self, value: &T, table: impl FnOnce() -> String) {
        match self.format {
            Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("reports serialize")),
            Format::Table => print!("{}", table()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { format: cli.format };
    match run(cli.command, cli.threads, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn positive(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn run(command: Command, threads: usize, out: &Out) -> Result<(), Failure> {
    let base = SearchConfig {
        threads,
        ..SearchConfig::default()
    };
    match command {
        Command::Check { file, mode } => check(&file, mode, out),
        Command::Bounds { params } => {
            let r = compare(params.params()?);
            out.emit(&r, || r.to_table());
            Ok(())
        }
        Command::Compare { params } => {
            let r = ranking(&compare(params.params()?));
            out.emit(&r, || ranking_table(&r));
            Ok(())
        }
        Command::Search {
            params,
            q,
            strategy,
            property,
            seed,
            max_tries,
            backtrack_budget,
            budget,
            output,
        } => {
            let params = params.params()?;
            let cfg = SearchConfig {
                strategy,
                seed,
                max_tries,
                backtrack_budget,
                budget,
                ..base
            };
            let need_q = || q.ok_or_else(|| Failure::Input(format!("--q is required for the {strategy:?} strategy")));
            let witness = match strategy {
                Strategy::Random => {
                    let r = random_search(params, need_q()?, property, &cfg)?;
                    out.emit(&r, || {
                        format!(
                            "{} over GF({}): {} after {} draws (seed {})\n",
                            r.params,
                            r.q,
                            if r.found { format!("found a {} code", r.property) } else { "nothing found".into() },
                            r.tries,
                            r.config.seed
                        ) + &r.witness.as_ref().map(witness_text).unwrap_or_default()
                    });
                    r.witness
                }
                Strategy::Exhaustive => {
                    let r = enumerate_and_count(params, need_q()?, property, &cfg)?;
                    out.emit(&r, || {
                        r.to_table() + &r.witnesses.first().map(witness_text).unwrap_or_default()
                    });
                    r.witnesses.into_iter().next()
                }
                Strategy::Greedy => {
                    if property != Property::Mdp {
                        return Err(Failure::Input("the greedy strategy builds MDP codes only".into()));
                    }
                    let r = match greedy_construct(params, q, &cfg) {
                        Ok(r) => r,
                        Err(e @ ExploreError::GreedyFailed { .. }) => {
                            eprintln!("{e}");
                            return Err(Failure::Negative);
                        }
                        Err(e) => return Err(e.into()),
                    };
                    out.emit(&r, || {
                        format!(
                            "{} over GF({}) (above {} = {}){}: {} entries, {} backtracks, MDP {}, left prime {}\n{}",
                            r.params,
                            r.q,
                            r.threshold_name,
                            r.threshold,
                            if r.via_dual { " via the dual" } else { "" },
                            r.entries,
                            r.backtracks,
                            r.mdp,
                            r.left_prime,
                            witness_text(&r.code)
                        )
                    });
                    r.mdp.then_some(r.code)
                }
            };
            if let (Some(path), Some(w)) = (&output, &witness) {
                let json = serde_json::to_string_pretty(w).expect("code files serialize");
                std::fs::write(path, json + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            positive(witness.is_some())
        }
        Command::Count {
            params,
            q,
            property,
            budget,
            witnesses,
        } => {
            let cfg = SearchConfig {
                strategy: Strategy::Exhaustive,
                budget,
                witness_cap: witnesses,
                ..base
            };
            let r = enumerate_and_count(params.params()?, q, property, &cfg)?;
            out.emit(&r, || r.to_table());
            Ok(())
        }
        Command::Probability {
            params,
            q,
            property,
            samples,
            seed,
        } => {
            let cfg = SearchConfig { seed, ..base };
            let r = estimate_probability(params.params()?, q, property, samples, &cfg)?;
            out.emit(&r, || r.to_table());
            Ok(())
        }
        Command::Superregular {
            gamma,
            q,
            min_field: _,
            max_q,
            budget,
        } => {
            if gamma == 0 {
                return Err(Failure::Input("gamma must be at least 1".into()));
            }
            let cfg = SearchConfig { budget, ..base };
            match q {
                Some(q) => {
                    let (witness, nodes) = superregular_in_field(gamma, q, &cfg)?;
                    let r = SuperregularFieldReport {
                        gamma,
                        q,
                        found: witness.is_some(),
                        witness,
                        nodes,
                    };
                    out.emit(&r, || match &r.witness {
                        Some(w) => format!("GF({q}) carries a superregular {gamma}x{gamma} Toeplitz matrix: {w:?}\n"),
                        None => format!("no superregular {gamma}x{gamma} Toeplitz matrix over GF({q})\n"),
                    });
                    positive(r.found)
                }
                None => {
                    let r = superregular_min_field(gamma, max_q, &cfg)?;
                    out.emit(&r, || r.to_table());
                    positive(r.min_field.is_some())
                }
            }
        }
        Command::Repro => {
            let r = ccodes::repro::run();
            out.emit(&r, || r.to_table());
            positive(r.unexpected_failures == 0)
        }
    }
}

fn check(file: &PathBuf, mode: Property, out: &Out) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let code = Code::parse(&text)?;
    let verdict = match (&code, mode) {
        (Code::Parity(h), _) => verify::check_property(h, mode)?,
        (Code::Generator(g), Property::Mdp) => verify::is_mdp_generator(g)?,
        (Code::Generator(g), Property::ReverseMdp) => verify::is_reverse_mdp_generator(g)?,
        (Code::Generator(g), Property::CompleteMdp) => verify::is_complete_mdp(&g.to_parity_check()?)?,
    };
    let r = CheckReport {
        params: code.params(),
        q: code.field().q() as u64,
        mode,
        verdict,
    };
    out.emit(&r, || {
        let head = format!("{} {} over GF({}): ", r.mode, r.params, r.q);
        match &r.verdict {
            Verdict::Holds => head + "holds\n",
            Verdict::Violated {
                matrix,
                selection,
                dependent_prefix,
            } => format!(
                "{head}violated\n  vanishing minor of {matrix:?}: selection {selection:?} (0-based), \
                 first {dependent_prefix} already dependent\n"
            ),
            Verdict::Impossible { reason } => format!("{head}impossible\n  {reason}\n"),
        }
    });
    positive(r.verdict.holds())
}

fn ranking(r: &BoundsReport) -> Ranking {
    let mut ranked: Vec<(String, u64, Option<u64>, bool)> = r
        .entries
        .iter()
        .filter_map(|e| e.min_prime_power.map(|q| (e.name.clone(), q, e.min_prime, e.proven)))
        .collect();
    ranked.sort_by_key(|e| e.1);
    Ranking {
        params: r.params,
        ranked,
        winner: r.winner.as_ref().map(|w| w.name.clone()),
        notes: r.notes.clone(),
    }
}

fn ranking_table(r: &Ranking) -> String {
    let mut out = format!("field sizes sufficient for MDP codes {}\n", r.params);
    out += &format!("{:<20} {:>12} {:>12}  status\n", "bound", "min q", "min prime");
    for (name, q, prime, proven) in &r.ranked {
        let prime = prime.map_or("-".into(), |p| p.to_string());
        let status = if *proven { "proven" } else { "unproven" };
        out += &format!("{name:<20} {q:>12} {prime:>12}  {status}\n");
    }
    out += &format!("winner: {}\n", r.winner.as_deref().unwrap_or("none"));
    for n in &r.notes {
        out += &format!("note: {n}\n");
    }
    out
}

fn witness_text(w: &CodeFile) -> String {
    serde_json::to_string(w).expect("code files serialize") + "\n"
}
