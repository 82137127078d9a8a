//! Command-line front end.
//!
//! Exit status: 0 on success or a `true` verdict, 1 on a `false` verdict,
//! 2 on usage, input and capacity errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::alphabet::{alphabet_lower_bound, build_poset};
use crate::debruijn::{is_de_bruijn, lyndon_concat, martin, AlphaWord};
use crate::generator::{
    derive_u_cycle, generate_u_word_with_max, scan_starts_with_max, GenerationResult,
    StartScanResult, TraceStep, DEFAULT_MAX_N, DEFAULT_SCAN_MAX_N,
};
use crate::perm::{PermWord, ReducedPerm};
use crate::structure::{check_theorem3, PropertyReport};
use crate::verify::{check_u_cycle, check_u_word, CoverageReport};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ucycle",
    version,
    about = "Universal words and cycles for permutations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the greedy universal word (or the derived cycle)
    Gen(GenArgs),
    /// Check a word or cyclic word for exact coverage of all n-permutations
    Verify(VerifyArgs),
    /// Check the half-split and boundary-window laws of the greedy word
    Props(PropsArgs),
    /// Letter-reuse poset: height, minimal relabelling, edges
    Alphabet(AlphabetArgs),
    /// Run the greedy rule from every (n-1)-permutation
    ScanStarts(ScanArgs),
    /// Greedy de Bruijn sequences and their check
    Debruijn(DebruijnArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    /// Emit the universal word (default)
    #[arg(long, conflicts_with = "cycle")]
    pub word: bool,
    /// Emit the universal cycle instead of the word
    #[arg(long)]
    pub cycle: bool,
    /// Include the step trace (JSON only)
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = "UCYCLE_MAX_N", default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "cycle")]
    pub word: bool,
    /// Treat the input as a cyclic word
    #[arg(long)]
    pub cycle: bool,
    /// Allow repeated letters, as produced by `alphabet --relabel`
    #[arg(long)]
    pub relabeled: bool,
    /// Input file, `-` for stdin
    #[arg(long, default_value = "-")]
    pub input: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    #[arg(long)]
    pub n: usize,
    /// Read the universal word from a file (`-` for stdin) instead of
    /// generating it
    #[arg(long)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, env = "UCYCLE_MAX_N", default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct AlphabetArgs {
    #[arg(long)]
    pub n: usize,
    /// Read the word from a file (`-` for stdin) instead of generating it
    #[arg(long)]
    pub input: Option<String>,
    /// Use cyclic distance (and the universal cycle when generating)
    #[arg(long)]
    pub cyclic: bool,
    /// Emit the relabelled word
    #[arg(long)]
    pub relabel: bool,
    /// Emit the generator edges
    #[arg(long)]
    pub edges: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, env = "UCYCLE_MAX_N", default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SCAN_MAX_N)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct DebruijnArgs {
    #[arg(long)]
    pub k: u32,
    /// Factor length
    #[arg(long = "len")]
    pub len: usize,
    /// Concatenate Lyndon words instead of running the greedy rule
    #[arg(long)]
    pub lyndon: bool,
    /// Check the word read from `--input` instead of generating one
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value = "-")]
    pub input: String,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Debug, Default, Serialize)]
struct Report {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    missing: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    duplicated: Option<Vec<DuplicateJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceStep>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    height: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    heights: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    properties: Option<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    starts: Option<Vec<StartScanResult>>,
}

#[derive(Debug, Serialize)]
struct DuplicateJson {
    pattern: Vec<u32>,
    positions: Vec<usize>,
}

/// What a command produced: its text and its exit status.
struct Outcome {
    text: String,
    status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            status: EXIT_OK,
        }
    }

    fn verdict(text: String, verdict: bool) -> Self {
        let status = if verdict { EXIT_OK } else { EXIT_FALSE };
        Outcome { text, status }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

/// Runs a parsed command line, writing results to `stdout` and diagnostics
/// to `stderr`. Returns the process exit status.
pub fn run(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let out_path = match &cli.command {
        Command::Gen(a) => a.out.clone(),
        _ => None,
    };
    let result = dispatch(cli.command, stdin).and_then(|outcome| {
        match &out_path {
            Some(path) => fs::write(path, &outcome.text)?,
            None => stdout.write_all(outcome.text.as_bytes())?,
        }
        Ok(outcome.status)
    });
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    match command {
        Command::Gen(a) => gen(a),
        Command::Verify(a) => verify(a, stdin),
        Command::Props(a) => props(a, stdin),
        Command::Alphabet(a) => alphabet(a, stdin),
        Command::ScanStarts(a) => scan(a),
        Command::Debruijn(a) => debruijn(a, stdin),
    }
}

fn gen(a: GenArgs) -> Result<Outcome, CliError> {
    if a.trace && a.format == Format::Plain {
        return Err(CliError::Usage("--trace requires --format json".into()));
    }
    let g = generate_u_word_with_max(a.n, a.trace, a.max_n)?;
    let letters = if a.cycle {
        g.u_cycle.letters().to_vec()
    } else {
        g.u_word.letters().to_vec()
    };
    let text = match a.format {
        Format::Plain => plain_line(&letters),
        Format::Json => json(&Report {
            command: "gen",
            n: Some(a.n),
            word: Some(letters),
            trace: g.trace,
            ..Report::default()
        })?,
    };
    Ok(Outcome::ok(text))
}

fn verify(a: VerifyArgs, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let letters = parse_letters(&read_input(&a.input, stdin)?)?;
    if !a.relabeled {
        PermWord::new(letters.clone())?;
    }
    let report = if a.cycle {
        check_u_cycle(&letters, a.n)?
    } else {
        check_u_word(&letters, a.n)?
    };
    let verdict = report.verdict;
    let text = match a.format {
        Format::Plain => format!("{verdict}\n"),
        Format::Json => json(&coverage_report("verify", letters, report))?,
    };
    Ok(Outcome::verdict(text, verdict))
}

fn coverage_report(command: &'static str, word: Vec<u32>, r: CoverageReport) -> Report {
    Report {
        command,
        n: Some(r.n),
        word: Some(word),
        verdict: Some(r.verdict),
        missing: Some(r.missing.into_iter().map(ReducedPerm::into_inner).collect()),
        duplicated: Some(
            r.duplicated
                .into_iter()
                .map(|d| DuplicateJson {
                    pattern: d.pattern.into_inner(),
                    positions: d.positions,
                })
                .collect(),
        ),
        ..Report::default()
    }
}

fn load_or_generate(
    n: usize,
    input: Option<&str>,
    max_n: usize,
    stdin: &mut dyn Read,
) -> Result<GenerationResult, CliError> {
    match input {
        None => Ok(generate_u_word_with_max(n, false, max_n)?),
        Some(src) => {
            let word = PermWord::new(parse_letters(&read_input(src, stdin)?)?)?;
            let u_cycle = derive_u_cycle(&word, n)?;
            Ok(GenerationResult {
                n,
                u_word: word,
                u_cycle,
                trace: None,
            })
        }
    }
}

fn props(a: PropsArgs, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let g = load_or_generate(a.n, a.input.as_deref(), a.max_n, stdin)?;
    let report = check_theorem3(&g)?;
    let verdict = report.all_passed();
    let text = match a.format {
        Format::Plain => format!("{verdict}\n"),
        Format::Json => json(&Report {
            command: "props",
            n: Some(a.n),
            verdict: Some(verdict),
            properties: Some(report),
            ..Report::default()
        })?,
    };
    Ok(Outcome::verdict(text, verdict))
}

fn alphabet(a: AlphabetArgs, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let word = match (&a.input, a.cyclic) {
        (Some(src), _) => PermWord::new(parse_letters(&read_input(src, stdin)?)?)?,
        (None, false) => generate_u_word_with_max(a.n, false, a.max_n)?.u_word,
        (None, true) => generate_u_word_with_max(a.n, false, a.max_n)?
            .u_cycle
            .into(),
    };
    let dag = build_poset(&word, a.n, a.cyclic)?;
    let relabeled: Vec<u32> = dag.heights.iter().map(|&h| h as u32).collect();
    let text = match a.format {
        Format::Plain if a.edges => dag.edge_list(),
        Format::Plain if a.relabel => plain_line(&relabeled),
        Format::Plain => format!("{}\n", dag.height),
        Format::Json => json(&Report {
            command: "alphabet",
            n: Some(a.n),
            word: a.relabel.then_some(relabeled),
            height: Some(dag.height),
            heights: Some(dag.heights.clone()),
            lower_bound: Some(alphabet_lower_bound(a.n)),
            edges: a.edges.then(|| dag.edges.clone()),
            ..Report::default()
        })?,
    };
    Ok(Outcome::ok(text))
}

fn scan(a: ScanArgs) -> Result<Outcome, CliError> {
    let results = scan_starts_with_max(a.n, a.max_n)?;
    let text = match a.format {
        Format::Plain => results
            .iter()
            .map(|r| {
                let status = if r.is_u_word {
                    "u-word".to_string()
                } else {
                    format!("missing {}", r.missing.len())
                };
                format!("{} -> {status}\n", r.start)
            })
            .collect(),
        Format::Json => json(&Report {
            command: "scan-starts",
            n: Some(a.n),
            starts: Some(results),
            ..Report::default()
        })?,
    };
    Ok(Outcome::ok(text))
}

fn debruijn(a: DebruijnArgs, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    if a.check {
        let word = AlphaWord::parse(&read_input(&a.input, stdin)?, a.k)?;
        let r = is_de_bruijn(&word, a.k, a.len)?;
        let verdict = r.verdict;
        let text = match a.format {
            Format::Plain => format!("{verdict}\n"),
            Format::Json => json(&Report {
                command: "debruijn",
                n: Some(a.len),
                k: Some(a.k),
                word: Some(word.letters),
                verdict: Some(verdict),
                missing: Some(r.missing),
                duplicated: Some(
                    r.duplicated
                        .into_iter()
                        .map(|(pattern, positions)| DuplicateJson { pattern, positions })
                        .collect(),
                ),
                ..Report::default()
            })?,
        };
        return Ok(Outcome::verdict(text, verdict));
    }
    let word = if a.lyndon {
        lyndon_concat(a.k, a.len)?
    } else {
        martin(a.k, a.len)?
    };
    let text = match a.format {
        Format::Plain => format!("{word}\n"),
        Format::Json => json(&Report {
            command: "debruijn",
            n: Some(a.len),
            k: Some(a.k),
            word: Some(word.letters),
            ..Report::default()
        })?,
    };
    Ok(Outcome::ok(text))
}

fn json(report: &Report) -> Result<String, CliError> {
    let mut s = serde_json::to_string(report).map_err(io::Error::other)?;
    s.push('\n');
    Ok(s)
}

/// Single-space-separated letters with a trailing newline.
pub fn plain_line(letters: &[u32]) -> String {
    let mut s = letters
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

/// Parses whitespace-separated decimal letters.
pub fn parse_letters(text: &str) -> Result<Vec<u32>, Error> {
    let letters = text
        .split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|e| Error::InvalidInput(format!("{t:?} is not a letter: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if letters.is_empty() {
        return Err(Error::InvalidInput("empty word".into()));
    }
    Ok(letters)
}

fn read_input(src: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut s = String::new();
    if src == "-" {
        stdin.read_to_string(&mut s)?;
    } else {
        s = fs::read_to_string(src).map_err(|e| io::Error::new(e.kind(), format!("{src}: {e}")))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], input: &str) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("ucycle").chain(args.iter().copied()))
            .expect("valid arguments");
        let mut out = Vec::new();
        let mut err = Vec::new();
        let status = run(cli, &mut input.as_bytes(), &mut out, &mut err);
        (
            status,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_plain() {
        let (s, out, _) = run_args(&["gen", "--n", "3", "--word"], "");
        assert_eq!(s, 0);
        assert_eq!(out, "7 8 6 1 3 2 4 5\n");
        let (_, out, _) = run_args(&["gen", "--n", "3", "--cycle"], "");
        assert_eq!(out, "5 6 4 1 3 2\n");
    }

    #[test]
    fn gen_trace_needs_json() {
        let (s, _, err) = run_args(&["gen", "--n", "3", "--trace"], "");
        assert_eq!(s, 2);
        assert!(err.contains("--trace"));
        let (s, out, _) = run_args(&["gen", "--n", "3", "--trace", "--format", "json"], "");
        assert_eq!(s, 0);
        assert!(out.starts_with(r#"{"command":"gen","n":3,"word":[7,8,6,1,3,2,4,5],"trace":[{"k":0,"sigma_prime":[1,2],"J":1,"i":1,"b":1}"#));
    }

    #[test]
    fn verify_cycle_from_stdin() {
        let (s, out, _) = run_args(
            &["verify", "--n", "3", "--cycle", "--input", "-"],
            "5 6 4 1 3 2\n",
        );
        assert_eq!(s, 0);
        assert_eq!(
            out,
            "{\"command\":\"verify\",\"n\":3,\"word\":[5,6,4,1,3,2],\"verdict\":true,\"missing\":[],\"duplicated\":[]}\n"
        );
    }

    #[test]
    fn verify_false_and_errors() {
        let (s, _, _) = run_args(&["verify", "--n", "3"], "1 2 3 4 5");
        assert_eq!(s, 1);
        let (s, _, err) = run_args(&["verify", "--n", "3"], "1 2 x");
        assert_eq!(s, 2);
        assert!(err.contains("not a letter"));
        // repeats need --relabeled
        let (s, _, _) = run_args(&["verify", "--n", "3"], "5 6 4 1 3 2 4 5");
        assert_eq!(s, 2);
        let (s, _, _) = run_args(&["verify", "--n", "3", "--relabeled"], "5 6 4 1 3 2 4 5");
        assert_eq!(s, 0);
        let (s, _, err) = run_args(&["verify", "--n", "3", "--relabeled"], "1 2 1 3");
        assert_eq!(s, 2);
        assert!(err.contains("position 1"));
    }

    #[test]
    fn capacity_is_an_error() {
        let (s, _, err) = run_args(&["gen", "--n", "9", "--max-n", "8"], "");
        assert_eq!(s, 2);
        assert!(err.contains("exceeds"));
    }

    #[test]
    fn debruijn_commands() {
        let (s, out, _) = run_args(&["debruijn", "--k", "3", "--len", "2"], "");
        assert_eq!((s, out.as_str()), (0, "200102112\n"));
        let (_, out, _) = run_args(&["debruijn", "--k", "3", "--len", "2", "--lyndon"], "");
        assert_eq!(out, "001021122\n");
        let (s, out, _) = run_args(
            &[
                "debruijn", "--k", "3", "--len", "2", "--check", "--format", "json",
            ],
            "20010211",
        );
        assert_eq!(s, 1);
        assert!(out.contains(r#""missing":[[2,2]]"#));
    }

    #[test]
    fn alphabet_outputs() {
        let (s, out, _) = run_args(
            &["alphabet", "--n", "3", "--relabel", "--format", "plain"],
            "",
        );
        assert_eq!((s, out.as_str()), (0, "5 6 4 1 3 2 4 5\n"));
        let (_, out, _) = run_args(&["alphabet", "--n", "4", "--format", "plain"], "");
        assert_eq!(out, "14\n");
        let (_, out, _) = run_args(
            &["alphabet", "--n", "2", "--edges", "--format", "plain"],
            "",
        );
        assert_eq!(out, "2 1\n2 3\n");
    }

    #[test]
    fn props_and_scan() {
        let (s, out, _) = run_args(&["props", "--n", "4", "--format", "plain"], "");
        assert_eq!((s, out.as_str()), (0, "true\n"));
        let (s, out, _) = run_args(&["scan-starts", "--n", "3", "--format", "plain"], "");
        assert_eq!(s, 0);
        assert_eq!(out, "1 2 -> u-word\n2 1 -> missing 1\n");
    }

    #[test]
    fn plain_roundtrip() {
        let w = vec![7, 8, 6, 1, 3, 2, 4, 5];
        assert_eq!(parse_letters(&plain_line(&w)).unwrap(), w);
    }
}
