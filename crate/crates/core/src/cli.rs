//! The `hfi` command line.
//!
//! Reports go to standard output as single `key=value` lines; diagnostics go
//! to standard error. Exit codes: 0 success, 1 property violation, 2 usage
//! or parse error, 3 internal certificate failure, 4 search budget exhausted.

use std::fs;
use std::io::Write;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::construct::{build_a, f_matrix, low_rank_certificate, tensor_compose, FkSpec};
use crate::exact::{rank_exact, rank_mod, Matrix, PrimeModulus};
use crate::exec::Execution;
use crate::io::{self, EntryText, Format};
use crate::search::{self, Alphabet, SearchOptions, SearchSpace, Structure};
use crate::verify::{fooling_from_hfi, fooling_verify, is_hfi, strong_support, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;
pub const EXIT_TRUNCATED: i32 = 4;

/// Environment variable overriding the default search ceiling.
pub const ENV_CEILING: &str = "HFI_SEARCH_CEILING";
/// Environment variable overriding the default search budget, in seconds.
pub const ENV_BUDGET: &str = "HFI_SEARCH_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "hfi",
    version,
    about = "Exact Hadamard factorizations of the identity"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the block-Toeplitz matrix A_r
    Generate {
        #[arg(short, long)]
        r: usize,
        #[arg(short, long)]
        out: String,
        /// Defaults to the output file extension
        #[arg(long)]
        format: Option<Format>,
    },
    /// Write the leading rows x cols window of F_k
    GenerateFk {
        #[arg(short, long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(short, long)]
        out: String,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Check that A o A^T = I
    Verify {
        input: String,
        /// Also require exactly one of A(i,j), A(j,i) to be zero
        #[arg(long)]
        strong: bool,
    },
    /// Print the exact rank over the rationals, or over GF(p)
    Rank {
        input: String,
        #[arg(long = "mod", value_name = "P")]
        modulus: Option<u64>,
    },
    /// Write and check the rank-r factorization A_r = L U
    Factor {
        #[arg(short, long)]
        r: usize,
        /// Files are written to <PREFIX>_L.<ext> and <PREFIX>_U.<ext>
        #[arg(long)]
        out_prefix: String,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Write the Kronecker product of two square matrices
    Tensor {
        a: String,
        b: String,
        #[arg(short, long)]
        out: String,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Find a minimum-rank HFI in a small family
    Search(SearchArgs),
    /// Check or extract fooling sets
    Fooling {
        #[command(subcommand)]
        action: FoolingAction,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlphabetArg {
    Boolean,
    Signs,
    Bounded,
    Nonneg,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "bounded")]
    alphabet: AlphabetArg,
    /// Entry bound B for the bounded and nonneg alphabets
    #[arg(long, default_value_t = 1)]
    bound: u32,
    /// Restrict to circulant matrices
    #[arg(long)]
    circulant: bool,
    /// Largest accepted candidate count
    #[arg(long, env = ENV_CEILING, default_value_t = search::DEFAULT_CEILING)]
    ceiling: u64,
    /// Time budget in seconds
    #[arg(long, env = ENV_BUDGET, default_value_t = search::DEFAULT_BUDGET.as_secs_f64())]
    budget: f64,
    /// Run on a single thread
    #[arg(long)]
    sequential: bool,
    /// Where to write the witness matrix
    #[arg(short, long)]
    out: Option<String>,
}

#[derive(Debug, Subcommand)]
enum FoolingAction {
    /// Check a pairs file against a matrix
    Verify { matrix: String, pairs: String },
    /// Write the diagonal fooling set of an HFI
    Extract {
        matrix: String,
        #[arg(short, long)]
        out: String,
    },
}

/// An early exit carrying its exit code and a message for standard error.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
}

fn write(path: &str, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {path}: {e}")))
}

fn load<T: EntryText>(path: &str) -> Result<Matrix<T>, Failure> {
    io::parse_matrix(&read(path)?).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn save(path: &str, m: &Matrix, format: Option<Format>) -> Result<(), Failure> {
    let format = format.unwrap_or_else(|| Format::for_path(path));
    write(path, &io::write_matrix(m, format))
}

fn emit(out: &mut dyn Write, line: &str) {
    // A closed stdout is not worth a distinct exit status.
    let _ = writeln!(out, "{line}");
}

fn report_line(check: &str, report: &VerifyReport) -> String {
    match report.violation {
        None => format!("OK check={check} size={}", report.size),
        Some(v) => format!(
            "VIOLATION check={check} i={} j={} reason={}",
            v.i,
            v.j,
            v.kind.code()
        ),
    }
}

fn generate(r: usize, out_path: &str, format: Option<Format>, out: &mut dyn Write) -> CmdResult {
    let a = build_a(r).map_err(Failure::usage)?;
    save(out_path, &a, format)?;
    emit(out, &format!("size={} max_abs={}", a.rows(), a.max_abs()));
    Ok(EXIT_OK)
}

fn verify(path: &str, strong: bool, out: &mut dyn Write) -> CmdResult {
    let a: Matrix<BigRational> = load(path)?;
    let report = is_hfi(&a).map_err(Failure::usage)?;
    emit(out, &report_line("hfi", &report));
    if !report.ok() {
        return Ok(EXIT_VIOLATION);
    }
    if strong {
        let report = strong_support(&a).map_err(Failure::usage)?;
        emit(out, &report_line("strong", &report));
        if !report.ok() {
            return Ok(EXIT_VIOLATION);
        }
    }
    Ok(EXIT_OK)
}

fn rank(path: &str, modulus: Option<u64>, out: &mut dyn Write) -> CmdResult {
    let p = modulus
        .map(PrimeModulus::new)
        .transpose()
        .map_err(Failure::usage)?;
    let a: Matrix<BigInt> = load(path)?;
    let rank = match p {
        Some(p) => rank_mod(&a, p),
        None => rank_exact(&a),
    };
    emit(out, &rank.to_string());
    Ok(EXIT_OK)
}

fn factor(r: usize, prefix: &str, format: Format, out: &mut dyn Write) -> CmdResult {
    let cert = low_rank_certificate(r).map_err(Failure::usage)?;
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let left_path = format!("{prefix}_L.{ext}");
    let right_path = format!("{prefix}_U.{ext}");
    save(&left_path, &cert.left, Some(format))?;
    save(&right_path, &cert.right, Some(format))?;

    // Check what was written, not what is in memory.
    let left: Matrix = load(&left_path)?;
    let right: Matrix = load(&right_path)?;
    let a = build_a(r).map_err(Failure::usage)?;
    match left.mul(&right) {
        Ok(product) if product == a => {
            emit(out, &format!("certified rank ≤ {r} size={}", a.rows()));
            Ok(EXIT_OK)
        }
        _ => Err(Failure {
            code: EXIT_CERTIFICATE,
            message: format!("internal error: L U does not reproduce A_{r}"),
        }),
    }
}

fn tensor(
    a: &str,
    b: &str,
    out_path: &str,
    format: Option<Format>,
    out: &mut dyn Write,
) -> CmdResult {
    let a: Matrix = load(a)?;
    let b: Matrix = load(b)?;
    let c = tensor_compose(&a, &b).map_err(Failure::usage)?;
    save(out_path, &c, format)?;
    let hfi = is_hfi(&c).map_err(Failure::usage)?.ok();
    emit(
        out,
        &format!("HFI: {} size={}", if hfi { "yes" } else { "no" }, c.rows()),
    );
    Ok(EXIT_OK)
}

fn run_search(args: &SearchArgs, out: &mut dyn Write) -> CmdResult {
    let alphabet = match args.alphabet {
        AlphabetArg::Boolean => Alphabet::Boolean,
        AlphabetArg::Signs => Alphabet::Signs,
        AlphabetArg::Bounded => Alphabet::Bounded(args.bound),
        AlphabetArg::Nonneg => Alphabet::NonNegative(args.bound),
    };
    let structure = if args.circulant {
        Structure::Circulant
    } else {
        Structure::Dense
    };
    let budget = Duration::try_from_secs_f64(args.budget)
        .map_err(|_| Failure::usage(format!("invalid budget {}", args.budget)))?;
    let options = SearchOptions {
        ceiling: args.ceiling,
        budget,
        execution: if args.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    let space = SearchSpace::new(args.n, alphabet, structure).map_err(Failure::usage)?;
    let result = search::min_rank_hfi(space, &options).map_err(Failure::usage)?;
    if let Some(path) = &args.out {
        save(path, &result.witness, None)?;
    }
    emit(
        out,
        &format!(
            "min_rank={} candidates_examined={} exhausted={}",
            result.min_rank, result.candidates_examined, result.exhausted
        ),
    );
    Ok(if result.exhausted {
        EXIT_OK
    } else {
        EXIT_TRUNCATED
    })
}

fn fooling(action: &FoolingAction, out: &mut dyn Write) -> CmdResult {
    match action {
        FoolingAction::Verify { matrix, pairs } => {
            let m: Matrix<BigRational> = load(matrix)?;
            let fs = io::parse_pairs(&read(pairs)?)
                .map_err(|e| Failure::usage(format!("{pairs}: {e}")))?;
            let report = fooling_verify(&m, &fs).map_err(Failure::usage)?;
            emit(out, &report_line("fooling", &report));
            Ok(if report.ok() { EXIT_OK } else { EXIT_VIOLATION })
        }
        FoolingAction::Extract { matrix, out: path } => {
            let m: Matrix<BigRational> = load(matrix)?;
            // Surface a non-HFI as a violation rather than a usage error.
            let report = is_hfi(&m).map_err(Failure::usage)?;
            if !report.ok() {
                emit(out, &report_line("hfi", &report));
                return Ok(EXIT_VIOLATION);
            }
            let fs = fooling_from_hfi(&m).map_err(Failure::usage)?;
            write(path, &io::write_pairs(&fs))?;
            emit(out, &format!("pairs={}", fs.len()));
            Ok(EXIT_OK)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CmdResult {
    match cli.command {
        Command::Generate {
            r,
            out: path,
            format,
        } => generate(r, &path, format, out),
        Command::GenerateFk {
            k,
            rows,
            cols,
            out: path,
            format,
        } => {
            let f = f_matrix(FkSpec::new(k, rows, cols));
            save(&path, &f, format)?;
            emit(out, &format!("rows={rows} cols={cols}"));
            Ok(EXIT_OK)
        }
        Command::Verify { input, strong } => verify(&input, strong, out),
        Command::Rank { input, modulus } => rank(&input, modulus, out),
        Command::Factor {
            r,
            out_prefix,
            format,
        } => factor(r, &out_prefix, format, out),
        Command::Tensor {
            a,
            b,
            out: path,
            format,
        } => tensor(&a, &b, &path, format, out),
        Command::Search(args) => run_search(&args, out),
        Command::Fooling { action } => fooling(&action, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version also arrive here.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "hfi: {}", f.message);
            f.code
        }
    }
}
