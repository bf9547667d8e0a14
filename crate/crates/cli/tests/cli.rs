use std::path::PathBuf;
use std::process::{Command, Output};

use ccodes::bounds::BoundsReport;
use ccodes::code::Code;
use ccodes::explore::{EnumerationResult, GreedyOutcome, ProbabilityEstimate, SearchOutcome, SuperregularSearch};
use serde::de::DeserializeOwned;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccodes"))
        .args(args)
        .env_remove("CCODES_THREADS")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

/// Parses the JSON output and checks that it re-emits identically.
fn json<T: DeserializeOwned + serde::Serialize>(args: &[&str]) -> T {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    assert_eq!(serde_json::to_string_pretty(&value).unwrap(), text.trim_end());
    value
}

#[test]
fn exit_code_contract() {
    let example = data("four_two_one.json");
    let low = data("three_one_one.json");
    let bad = data("malformed.json");
    let cases: &[(&[&str], i32)] = &[
        (&["check", "--file", &example], 0),
        (&["check", "--file", &example, "--mode", "mdp", "--format", "json"], 0),
        (&["check", "--file", &low, "--mode", "complete"], 1),
        (&["check", "--file", &low, "--mode", "reverse"], 1),
        (&["check", "--file", &bad], 2),
        (&["check", "--file", "/nonexistent.json"], 2),
        (&["check", "--file", &example, "--mode", "sideways"], 2),
        (&["bounds", "--n", "2", "--k", "1", "--delta", "1"], 0),
        (&["bounds", "--n", "2", "--k", "2", "--delta", "1"], 2),
        (&["compare", "--n", "5", "--k", "3", "--delta", "2"], 0),
        (&["count", "--n", "2", "--k", "1", "--delta", "1", "--q", "3"], 0),
        (&["count", "--n", "2", "--k", "1", "--delta", "1", "--q", "6"], 2),
        (&["count", "--n", "4", "--k", "2", "--delta", "2", "--q", "7", "--budget", "1000"], 2),
        (&["search", "--n", "2", "--k", "1", "--delta", "1", "--q", "3", "--seed", "1"], 0),
        (&["search", "--n", "2", "--k", "1", "--delta", "1", "--q", "2", "--max-tries", "500"], 1),
        (&["search", "--n", "2", "--k", "1", "--delta", "1", "--q", "2", "--strategy", "exhaustive"], 1),
        (&["search", "--n", "2", "--k", "1", "--delta", "1", "--strategy", "random"], 2),
        (&["search", "--n", "4", "--k", "3", "--delta", "2", "--strategy", "greedy"], 0),
        (&["search", "--n", "4", "--k", "3", "--delta", "2", "--strategy", "greedy", "--q", "2", "--backtrack-budget", "0"], 1),
        (&["search", "--n", "4", "--k", "2", "--delta", "2", "--strategy", "greedy"], 2),
        (&["probability", "--n", "2", "--k", "1", "--delta", "1", "--q", "5", "--samples", "500"], 0),
        (&["superregular", "--gamma", "4"], 0),
        (&["superregular", "--gamma", "4", "--q", "5"], 0),
        (&["superregular", "--gamma", "4", "--q", "4"], 1),
        (&["superregular", "--gamma", "5", "--max-q", "5"], 1),
        (&["superregular", "--gamma", "4", "--q", "5", "--min-field"], 2),
        (&["frobnicate"], 2),
        (&[], 2),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "{args:?}");
    }
}

#[test]
fn check_messages() {
    let out = run(&["check", "--file", &data("three_one_one.json"), "--mode", "complete"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("impossible") && text.contains("(n-k) | delta"), "{text}");
    let out = run(&["check", "--file", &data("malformed.json")]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("malformed code file"));
}

#[test]
fn count_two_one_one() {
    let r: EnumerationResult = json(&["count", "--n", "2", "--k", "1", "--delta", "1", "--q", "3"]);
    assert_eq!(r.codes.mdp, 4);
    assert_eq!(r.hierarchy_violations, 0);
}

#[test]
fn report_round_trips() {
    let b: BoundsReport = json(&["bounds", "--n", "2", "--k", "1", "--delta", "1"]);
    assert_eq!(b.entry("M1").unwrap().value.as_deref(), Some("60"));
    let _: SearchOutcome = json(&["search", "--n", "3", "--k", "1", "--delta", "1", "--q", "5", "--seed", "4"]);
    let _: GreedyOutcome = json(&["search", "--n", "5", "--k", "3", "--delta", "2", "--strategy", "greedy"]);
    let _: ProbabilityEstimate = json(&["probability", "--n", "3", "--k", "2", "--delta", "1", "--q", "4", "--samples", "300"]);
    let s: SuperregularSearch = json(&["superregular", "--gamma", "3"]);
    assert_eq!(s.min_field, Some(3));
}

#[test]
fn threads_do_not_change_results() {
    let args = ["search", "--n", "4", "--k", "2", "--delta", "1", "--q", "5", "--seed", "9", "--format", "json"];
    let one = run(&args).stdout;
    let env = Command::new(env!("CARGO_BIN_EXE_ccodes"))
        .args(args)
        .env("CCODES_THREADS", "4")
        .output()
        .unwrap();
    let flag = run(&[&args[..], &["--threads", "3"]].concat()).stdout;
    let strip = |b: Vec<u8>| {
        let mut v: serde_json::Value = serde_json::from_slice(&b).unwrap();
        v["config"]["threads"] = 0.into();
        v
    };
    assert_eq!(strip(one.clone()), strip(env.stdout));
    assert_eq!(strip(one), strip(flag));
}

#[test]
fn search_output_verifies() {
    let path = std::env::temp_dir().join(format!("ccodes-witness-{}.json", std::process::id()));
    let p = path.display().to_string();
    assert_eq!(code(&["search", "--n", "3", "--k", "2", "--delta", "1", "--q", "4", "--property", "complete", "--output", &p]), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(Code::parse(&text).is_ok());
    assert_eq!(code(&["check", "--file", &p, "--mode", "complete"]), 0);
    std::fs::remove_file(path).ok();
}
