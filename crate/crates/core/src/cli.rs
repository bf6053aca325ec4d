//! The `eqg` command line.
//!
//! Exit status is 0 on success, 1 on domain errors (a singular Gram matrix,
//! an enumeration cap) and 2 on usage errors. Each run writes one log line
//! to standard error with the tool version and the parameters.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group_dual::{analyze_embedding, parse_embedding, DEFAULT_CAP};
use crate::homspace::{
    classify, count_truncations, format_classes, free_projection_witness,
    invariant_state_moment, prop52_equivalence, ClassicalGroup, TruncatedMatrix,
    DEFAULT_TOLERANCE,
};
use crate::oracle::{exact_group_average, mc_averages, SampledGroup, GENERATOR};
use crate::partitions::{is_block_stable, PartitionCategory};
use crate::weingarten::{character_moment, gram_matrix, gram_rank, haar_moment, weingarten_matrix, MomentWord};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "eqg", version, about = "Exact combinatorics and Weingarten integration for easy quantum groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List D(s) in canonical order.
    Partitions(CategoryPoints),
    /// Gram matrix n^{|π∨σ|} as TSV.
    Gram(CategoryPointsDim),
    /// Weingarten matrix (inverse Gram) as TSV.
    Weingarten(CategoryPointsDim),
    /// Haar moment of a word; with --k, the invariant state on the row algebra.
    Moment(MomentArgs),
    /// Moments of the character Σ u_ii for s = 0..=max-power.
    CharMoments(CharArgs),
    /// Check stability of D under removing blocks, up to --points.
    BlockStable(CategoryPoints),
    /// Analyze a group dual embedding read from --input.
    GroupDual(InputArgs),
    /// Count distinct bottom-(n-k)-row truncations of S_n or H_n.
    Truncations(TruncationArgs),
    /// Classify a truncated matrix read from --input as TSV.
    Classify(ClassifyArgs),
    /// Exact (S, H) or Monte Carlo (O, B) Haar average of a word.
    Oracle(OracleArgs),
    /// Norm of the two-projection commutator at angle --theta (or on a grid).
    Witness43(WitnessArgs),
}

#[derive(Debug, Args)]
pub struct CategoryPoints {
    #[arg(long, value_parser = parse_category)]
    pub category: PartitionCategory,
    #[arg(long)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct CategoryPointsDim {
    #[arg(long, value_parser = parse_category)]
    pub category: PartitionCategory,
    #[arg(long)]
    pub points: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct MomentArgs {
    #[arg(long, value_parser = parse_category)]
    pub category: PartitionCategory,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub word: String,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[arg(long, value_parser = parse_category)]
    pub category: PartitionCategory,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub max_power: usize,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct TruncationArgs {
    #[arg(long, value_parser = parse_category)]
    pub category: PartitionCategory,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_parser = parse_category)]
    pub category: PartitionCategory,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "")]
    pub word: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Grid size over [0, π/2] when --theta is absent.
    #[arg(long, default_value_t = 13)]
    pub points: usize,
}

fn parse_category(s: &str) -> std::result::Result<PartitionCategory, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Validated moment word from space-separated `i,j` pairs.
pub fn parse_word(text: &str, n: usize) -> Result<MomentWord> {
    MomentWord::parse(text, n)
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            code
        }
    }
}

/// Dispatches a parsed command.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "eqg {VERSION}: {}", describe(&cli.command));
    match dispatch(&cli.command) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Usage(_) | Error::UnknownCategory(_) | Error::MalformedPair(_) => 2,
                _ => 1,
            }
        }
    }
}

fn describe(cmd: &Command) -> String {
    match cmd {
        Command::Partitions(a) => format!("partitions category={} points={}", a.category, a.points),
        Command::Gram(a) => format!("gram category={} points={} n={}", a.category, a.points, a.n),
        Command::Weingarten(a) => format!("weingarten category={} points={} n={}", a.category, a.points, a.n),
        Command::Moment(a) => format!(
            "moment category={} n={} word=\"{}\"{}",
            a.category,
            a.n,
            a.word,
            a.k.map(|k| format!(" k={k}")).unwrap_or_default()
        ),
        Command::CharMoments(a) => format!("char-moments category={} n={} max-power={}", a.category, a.n, a.max_power),
        Command::BlockStable(a) => format!("block-stable category={} points={}", a.category, a.points),
        Command::GroupDual(a) => format!("group-dual input={}", a.input.display()),
        Command::Truncations(a) => format!("truncations category={} n={} k={}", a.category, a.n, a.k),
        Command::Classify(a) => format!("classify input={} tol={}", a.input.display(), a.tol),
        Command::Oracle(a) => format!(
            "oracle category={} n={} word=\"{}\" samples={} seed={} generator={GENERATOR}",
            a.category, a.n, a.word, a.samples, a.seed
        ),
        Command::Witness43(a) => match a.theta {
            Some(t) => format!("witness43 theta={t}"),
            None => format!("witness43 points={}", a.points),
        },
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn dispatch(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Partitions(a) => Ok(a
            .category
            .enumerate(a.points)
            .iter()
            .map(|p| format!("{p}\n"))
            .collect()),
        Command::Gram(a) => {
            let g = gram_matrix(a.category, a.points, a.n)?;
            debug_assert_eq!(g.rank(), gram_rank(a.category, a.points, a.n)?);
            Ok(g.to_tsv())
        }
        Command::Weingarten(a) => Ok(weingarten_matrix(a.category, a.points, a.n)?.to_tsv()),
        Command::Moment(a) => {
            let word = parse_word(&a.word, a.n)?;
            let value = match a.k {
                Some(k) => invariant_state_moment(a.category, a.n, k, &word)?,
                None => haar_moment(a.category, a.n, &word)?,
            };
            Ok(format!("{value}\n"))
        }
        Command::CharMoments(a) => (0..=a.max_power)
            .map(|s| Ok(format!("{s}→{}\n", character_moment(a.category, a.n, s)?)))
            .collect(),
        Command::BlockStable(a) => {
            let r = is_block_stable(a.category, a.points);
            Ok(match r.witness {
                None => "stable=true\n".to_string(),
                Some(w) => format!("stable=false\nwitness={w}\n"),
            })
        }
        Command::GroupDual(a) => {
            let e = parse_embedding(&read_input(&a.input)?, DEFAULT_CAP)?;
            Ok(analyze_embedding(&e)?.to_key_values())
        }
        Command::Truncations(a) => {
            let group = classical_group(a.category)?;
            Ok(format!("{}\n", count_truncations(group, a.n, a.k)?))
        }
        Command::Classify(a) => {
            if a.tol.is_nan() || a.tol <= 0.0 {
                return Err(Error::Usage("--tol must be positive".into()));
            }
            let m = TruncatedMatrix::from_tsv(&read_input(&a.input)?)?;
            debug_assert!(prop52_equivalence(&m, a.tol));
            Ok(format!("{}\n", format_classes(&classify(&m, a.tol))))
        }
        Command::Oracle(a) => {
            let word = parse_word(&a.word, a.n)?;
            match a.category {
                PartitionCategory::S | PartitionCategory::H => {
                    let group = classical_group(a.category)?;
                    Ok(format!("{}\n", exact_group_average(group, a.n, &word)?))
                }
                PartitionCategory::O | PartitionCategory::B => {
                    let group = if a.category == PartitionCategory::O {
                        SampledGroup::Orthogonal
                    } else {
                        SampledGroup::Bistochastic
                    };
                    let r = mc_averages(group, a.n, &[word], a.samples, a.seed)?;
                    Ok(format!("{}\n", r[0].to_tsv()))
                }
                other => Err(Error::Usage(format!("oracle supports S, H, O, B; got {other}"))),
            }
        }
        Command::Witness43(a) => match a.theta {
            Some(t) => Ok(format!("{}\n", free_projection_witness(t))),
            None => {
                let steps = a.points.max(2) - 1;
                Ok((0..=steps)
                    .map(|t| {
                        let theta = std::f64::consts::FRAC_PI_2 * t as f64 / steps as f64;
                        format!("{theta}\t{}\n", free_projection_witness(theta))
                    })
                    .join(""))
            }
        },
    }
}

fn classical_group(cat: PartitionCategory) -> Result<ClassicalGroup> {
    match cat {
        PartitionCategory::S => Ok(ClassicalGroup::S),
        PartitionCategory::H => Ok(ClassicalGroup::H),
        other => Err(Error::Usage(format!("expected category S or H, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("eqg").chain(args.iter().copied());
        let code = main_with_args(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parse_word_examples() {
        assert_eq!(parse_word("1,1 2,2", 4).unwrap().letters(), &[(1, 1), (2, 2)]);
        assert!(parse_word("", 4).unwrap().is_empty());
        assert_eq!(parse_word("5,1", 4), Err(Error::IndexOutOfRange { index: 5, dim: 4 }));
    }

    #[test]
    fn moment_command() {
        let (code, out, err) = run_args(&["moment", "--category", "S", "--n", "4", "--word", "1,1 2,2"]);
        assert_eq!((code, out.as_str()), (0, "1/12\n"));
        assert!(err.starts_with(&format!("eqg {VERSION}: moment category=S n=4")));
    }

    #[test]
    fn singular_weingarten_exits_one() {
        let (code, out, err) = run_args(&["weingarten", "--category", "S", "--points", "3", "--n", "2"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("singular Gram, rank 4 of 5"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["moment", "--category", "Q", "--n", "4"]).0, 2);
        assert_eq!(run_args(&["moment", "--category", "S", "--n", "4", "--bogus", "1"]).0, 2);
        assert_eq!(run_args(&["moment", "--category", "S", "--n", "4", "--word", "1;1"]).0, 2);
        assert_eq!(run_args(&["truncations", "--category", "O", "--n", "3", "--k", "1"]).0, 2);
    }
}
