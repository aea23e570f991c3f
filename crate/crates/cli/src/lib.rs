//! Command-line surface for `sepwords`.
//!
//! Exit codes: 0 on success, 1 on I/O failure, 2 on invalid input, 3 when a
//! search that must succeed did not (an internal contradiction).

pub mod experiments;
pub mod output;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sepwords_core::arithmetic::find_separating_prime;
use sepwords_core::oracle::{self, adversarial_pair, adversarial_strings, check_profile_equality};
use sepwords_core::separator::{separate_with, Mode, SeparatorConfig};
use sepwords_core::{BinaryString, Error};

use experiments::RNG_NAME;
use output::{metadata, write_atomic};

#[derive(Debug, Parser)]
#[command(name = "sepwords", version, about = "Small DFAs that separate binary words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and verify a DFA accepting x and rejecting y.
    Separate(SeparateArgs),
    /// Pipeline sizes across word lengths, as CSV.
    Growth(GrowthArgs),
    /// Exact minimal separators by exhaustive search.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Distinct separated sets with equal residue profiles for small primes.
    Adversarial(AdversarialArgs),
    /// Numeric checks on sparse polynomials.
    #[command(subcommand)]
    Littlewood(LittlewoodCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Paper,
    Baseline,
    Optimize,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Baseline => Mode::Baseline,
            ModeArg::Optimize => Mode::Optimize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Emit {
    #[default]
    Table,
    Dot,
    Csv,
}

#[derive(Debug, Args, Default)]
pub struct Caps {
    #[arg(long)]
    pub p_max: Option<usize>,
    #[arg(long)]
    pub q_max: Option<usize>,
}

impl Caps {
    fn config(&self) -> SeparatorConfig {
        SeparatorConfig {
            p_max: self.p_max,
            q_max: self.q_max,
        }
    }
}

#[derive(Debug, Args)]
pub struct SeparateArgs {
    #[arg(long, conflicts_with = "x_file", required_unless_present = "x_file")]
    pub x: Option<String>,
    #[arg(long, conflicts_with = "y_file", required_unless_present = "y_file")]
    pub y: Option<String>,
    #[arg(long)]
    pub x_file: Option<PathBuf>,
    #[arg(long)]
    pub y_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "paper")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub caps: Caps,
    /// Directory for dfa.txt, certificate.txt and (with --emit dot) dfa.dot.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub emit: Emit,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// Comma-separated word lengths.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "64,128,256,512,1024,2048,4096,8192,16384,32768,65536"
    )]
    pub lengths: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub caps: Caps,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    pub emit: Emit,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Every pair of distinct words of length n: exact size and pipeline sizes.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_S_MAX)]
        s_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
    /// Exact minimal separator for one pair.
    Pair {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = oracle::DEFAULT_S_MAX)]
        s_max: usize,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
}

#[derive(Debug, Args)]
pub struct AdversarialArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also emit padded words of this length and check their pattern profiles.
    #[arg(long)]
    pub n_out: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LittlewoodCommand {
    /// Compare max |f| near 1 with (n+1)(e/9)^k for the product family.
    OrderCheck {
        #[arg(long, default_value_t = 15)]
        kmax: u32,
        #[arg(long, default_value_t = sepwords_core::littlewood::DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
    /// Max modulus on [1 - n^{-2/3}, 1] for random normalized difference polynomials.
    Eval {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = sepwords_core::littlewood::DEFAULT_GRID)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Contradiction(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Contradiction(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Contradiction(m) => write!(f, "internal contradiction: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Contradiction(m) => CliError::Contradiction(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// Runs one command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Separate(args) => cmd_separate(&args, out),
        Command::Growth(args) => cmd_growth(&args, out),
        Command::Oracle(cmd) => cmd_oracle(&cmd, out),
        Command::Adversarial(args) => cmd_adversarial(&args, out),
        Command::Littlewood(cmd) => cmd_littlewood(&cmd, out),
    }
}

fn read_word(inline: &Option<String>, file: &Option<PathBuf>, name: &str) -> CliResult<BinaryString> {
    let text = match (inline, file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => fs::read_to_string(path)?,
        (None, None) => return Err(CliError::Invalid(format!("missing --{name}"))),
    };
    Ok(text.parse()?)
}

fn save(dir: &Option<PathBuf>, name: &str, contents: &str, out: &mut dyn Write) -> CliResult {
    if let Some(dir) = dir {
        let path = write_atomic(dir, name, contents)?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

pub fn cmd_separate(args: &SeparateArgs, out: &mut dyn Write) -> CliResult {
    let x = read_word(&args.x, &args.x_file, "x")?;
    let y = read_word(&args.y, &args.y_file, "y")?;
    let sep = separate_with(&x, &y, args.mode.into(), &args.caps.config())?;
    let cert = sep.certificate.to_text();
    match args.emit {
        Emit::Dot => out.write_all(sep.dfa.to_dot().as_bytes())?,
        Emit::Table | Emit::Csv => {
            out.write_all(cert.as_bytes())?;
            out.write_all(sep.dfa.to_text().as_bytes())?;
        }
    }
    writeln!(out, "states {}", sep.certificate.states)?;
    save(&args.out, "dfa.txt", &sep.dfa.to_text(), out)?;
    save(&args.out, "certificate.txt", &cert, out)?;
    if args.emit == Emit::Dot {
        save(&args.out, "dfa.dot", &sep.dfa.to_dot(), out)?;
    }
    Ok(())
}

pub fn cmd_growth(args: &GrowthArgs, out: &mut dyn Write) -> CliResult {
    let config = args.caps.config();
    let rows = experiments::growth(&args.lengths, args.pairs, args.seed, &config)?;
    if let Some(bad) = rows.iter().find(|r| !r.verified) {
        return Err(CliError::Contradiction(format!(
            "pair {} at n = {} failed verification",
            bad.pair, bad.n
        )));
    }
    let text = experiments::growth_csv(&rows);
    let mut summary = String::new();
    for mode in Mode::ALL {
        if let Some(e) = experiments::fitted_exponent(&rows, mode) {
            summary.push_str(&format!("fitted exponent ({mode}): {e:.4}\n"));
        }
    }
    match args.emit {
        Emit::Csv => out.write_all(text.as_bytes())?,
        _ => {
            writeln!(out, "{:>8} {:>6} {:>8} {:>8} {:>9} {:>9} {:>12}", "n", "pair", "k", "paper", "baseline", "optimize", "bound")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>8} {:>6} {:>8} {:>8} {:>9} {:>9} {:>12}",
                    r.n, r.pair, r.first_difference, r.states[0], r.states[1], r.states[2], r.bound
                )?;
            }
        }
    }
    out.write_all(summary.as_bytes())?;
    save(&args.out, "growth.csv", &text, out)?;
    let meta = metadata(&[
        ("rng", RNG_NAME.to_string()),
        ("seed", args.seed.to_string()),
        ("pairs_per_length", args.pairs.to_string()),
        ("pair_generator", "uniform x; y agrees before uniform k, flips k, uniform after".into()),
        ("state_bound", format!("ceil({} * n^(1/3) * ln(n)^7)", experiments::BOUND_CONSTANT)),
        ("log", "natural".into()),
    ]);
    save(&args.out, "growth.meta.txt", &format!("{meta}{summary}"), out)?;
    Ok(())
}

pub fn cmd_oracle(cmd: &OracleCommand, out: &mut dyn Write) -> CliResult {
    match cmd {
        OracleCommand::Exact { n, s_max, out: dir, emit } => {
            let rows = experiments::oracle_table(*n, *s_max, &SeparatorConfig::default())?;
            let text = experiments::oracle_csv(&rows);
            if *emit == Emit::Csv {
                out.write_all(text.as_bytes())?;
            } else {
                writeln!(out, "{:>6} {:>12} {:>12} {:>6} {:>6} {:>9} {:>9}", "pair", "x", "y", "exact", "paper", "baseline", "optimize")?;
                for r in &rows {
                    writeln!(
                        out,
                        "{:>6} {:>12} {:>12} {:>6} {:>6} {:>9} {:>9}",
                        r.pair, r.x.to_string(), r.y.to_string(), r.exact, r.pipeline[0], r.pipeline[1], r.pipeline[2]
                    )?;
                }
            }
            let f = rows.iter().map(|r| r.exact).max().unwrap_or(0);
            writeln!(out, "f({n}) = {f}")?;
            save(dir, &format!("oracle_n{n}.csv"), &text, out)?;
        }
        OracleCommand::Pair { x, y, s_max, emit } => {
            let x: BinaryString = x.parse()?;
            let y: BinaryString = y.parse()?;
            match oracle::exact_min_dfa(&x, &y, *s_max)? {
                Some(r) => {
                    writeln!(out, "exact {}", r.size)?;
                    let body = if *emit == Emit::Dot { r.witness.to_dot() } else { r.witness.to_text() };
                    out.write_all(body.as_bytes())?;
                }
                None => writeln!(out, "no separator with at most {s_max} states")?,
            }
        }
    }
    Ok(())
}

pub fn cmd_adversarial(args: &AdversarialArgs, out: &mut dyn Write) -> CliResult {
    let Some(pair) = adversarial_pair(args.n, args.d, args.k, args.budget, args.seed)? else {
        writeln!(out, "not found within budget")?;
        return Ok(());
    };
    if !pair.is_valid() {
        return Err(CliError::Contradiction("generated pair fails its own invariants".into()));
    }
    if find_separating_prime(&pair.a, &pair.b, 2, args.k)?.is_some() {
        return Err(CliError::Contradiction(format!("a prime up to {} separates the pair", args.k)));
    }
    let mut report = metadata(&[
        ("n", args.n.to_string()),
        ("d", args.d.to_string()),
        ("k", args.k.to_string()),
        ("seed", args.seed.to_string()),
        ("rng", RNG_NAME.to_string()),
        ("A", pair.a.to_string()),
        ("B", pair.b.to_string()),
    ]);
    if let Some(n_out) = args.n_out {
        let (x, y) = adversarial_strings(&pair, n_out)?;
        let same = check_profile_equality(&x, &y, args.k, args.k)?;
        report.push_str(&metadata(&[
            ("x", x.to_string()),
            ("y", y.to_string()),
            ("pattern_profiles_equal", same.to_string()),
        ]));
    }
    out.write_all(report.as_bytes())?;
    save(&args.out, "adversarial.txt", &report, out)?;
    Ok(())
}

pub fn cmd_littlewood(cmd: &LittlewoodCommand, out: &mut dyn Write) -> CliResult {
    match cmd {
        LittlewoodCommand::OrderCheck { kmax, grid, out: dir, emit } => {
            if *kmax == 0 || *kmax > sepwords_core::littlewood::ORDER_FAMILY_MAX_K {
                return Err(CliError::Invalid(format!("--kmax must lie in 1..={}", sepwords_core::littlewood::ORDER_FAMILY_MAX_K)));
            }
            let rows = experiments::order_checks(*kmax, *grid)?;
            let text = experiments::order_csv(&rows);
            if *emit == Emit::Csv {
                out.write_all(text.as_bytes())?;
            } else {
                writeln!(out, "{:>3} {:>6} {:>24} {:>24} {:>5}", "k", "n", "lhs", "rhs", "ok")?;
                for c in &rows {
                    writeln!(out, "{:>3} {:>6} {:>24.16e} {:>24.16e} {:>5}", c.k, c.n, c.lhs, c.rhs, c.ok)?;
                }
            }
            save(dir, "order_check.csv", &text, out)?;
        }
        LittlewoodCommand::Eval { n, count, seed, grid, out: dir, emit } => {
            if *n < 2 || *grid < 2 {
                return Err(CliError::Invalid("need --n >= 2 and --grid >= 2".into()));
            }
            let rows = experiments::littlewood_rows(*n, *count, *seed, *grid)?;
            let text = experiments::littlewood_csv(&rows);
            if *emit == Emit::Csv {
                out.write_all(text.as_bytes())?;
            } else {
                writeln!(out, "{:>6} {:>5} {:>4} {:>6} {:>24}", "n", "sigma", "d", "tail", "max")?;
                for r in &rows {
                    writeln!(out, "{:>6} {:>5} {:>4} {:>6} {:>24.16e}", r.n, r.sigma, r.d, r.tail, r.max)?;
                }
            }
            save(dir, "littlewood.csv", &text, out)?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs, returning the exit code.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
