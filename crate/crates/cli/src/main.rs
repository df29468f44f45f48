//! Command-line interface to the configuration-space cohomology engine.
//!
//! Expressions use the text format of the library (`w(1,2)*w(2,3) - 2`),
//! machine-facing subcommands emit single-line JSON on stdout, and every
//! failure prints a JSON error record to stderr with a categorized exit
//! code: 2 for input that does not parse, 3 for well-formed input outside
//! the domain, 4 for a missing pairing-table entry under `--strict`, and 5
//! for a verification that ran and failed.

use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand};

use confcoh::{
    basis, coproduct_element, enumerate_strata, eval_bracket, eval_connect_sum, face_poset_dot,
    parse_element, poincare_polynomial, quotient_cohomology_dims, sigma, verify_faces_axioms,
    ClassLabel, Coefficients, ColoredGrading, Error, EvalOptions, PairingTable, RingParams,
};

#[derive(Parser)]
#[command(
    name = "confcoh",
    version,
    about = "Exact cohomology of compactified configuration spaces: rewriting, \
             bases, boundary strata, coproducts, and pairing evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite an expression into the admissible normal form
    Reduce(ReduceArgs),
    /// List the admissible monomial basis, one monomial per line
    Basis(BasisArgs),
    /// Poincaré polynomial of the ring on q points
    Poincare(RingArgs),
    /// Ranks of the boundary quotient's cohomology, as JSON
    Qdims(RingArgs),
    /// Enumerate boundary strata (optionally as a DOT face poset)
    Strata(StrataArgs),
    /// Check the face axioms of the stratification for one ground set
    VerifyFaces(VerifyFacesArgs),
    /// Images of the block shuffle for a split, as JSON
    Sigma(SigmaArgs),
    /// Coproduct of an expression across all splits of a grading, as JSON
    Coproduct(CoproductArgs),
    /// Evaluate a connect-sum pairing from a value table, as JSON
    Eval(EvalArgs),
    /// Evaluate a bracket pairing with its parity certificate, as JSON
    Bracket(BracketArgs),
}

#[derive(Args)]
struct RingArgs {
    /// Number of points
    #[arg(long)]
    q: usize,
    /// Ambient dimension
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Work over the prime field Z/P instead of exact rationals
    #[arg(long = "mod-p", value_name = "P")]
    mod_p: Option<u64>,
}

impl RingArgs {
    fn params(&self) -> Result<RingParams, Error> {
        RingParams::new(self.n, self.q, coefficients(self.mod_p))
    }
}

#[derive(Args)]
struct GradingArgs {
    /// Strand points of the grading
    #[arg(long = "Q")]
    big_q: usize,
    /// Free points of the grading
    #[arg(long = "T", default_value_t = 0)]
    big_t: usize,
    /// Ambient dimension
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Work over the prime field Z/P instead of exact rationals
    #[arg(long = "mod-p", value_name = "P")]
    mod_p: Option<u64>,
}

impl GradingArgs {
    fn grading(&self) -> ColoredGrading {
        ColoredGrading::new(self.big_q, self.big_t)
    }

    fn params(&self) -> Result<RingParams, Error> {
        RingParams::new(self.n, self.big_q + self.big_t, coefficients(self.mod_p))
    }
}

#[derive(Args)]
struct ReduceArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Expression to rewrite, e.g. "w(1,3)*w(2,3) + 2*w(1,2)"
    expr: String,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Only the monomials of this cohomological degree
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Args)]
struct StrataArgs {
    /// Number of points
    #[arg(long)]
    q: usize,
    /// Only boundary strata of codimension 1..=K (default: every stratum)
    #[arg(long = "max-codim", value_name = "K")]
    max_codim: Option<usize>,
    /// Emit the face poset in DOT format instead of one label per line
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct VerifyFacesArgs {
    /// Number of points
    #[arg(long)]
    q: usize,
}

#[derive(Args)]
struct SigmaArgs {
    /// Strand points of the first factor
    q: usize,
    /// Free points of the first factor
    t: usize,
    /// Strand points of the second factor
    r: usize,
    /// Free points of the second factor
    s: usize,
}

#[derive(Args)]
struct CoproductArgs {
    #[command(flatten)]
    grading: GradingArgs,
    /// Expression on the (Q, T) quotient to split
    expr: String,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    grading: GradingArgs,
    /// The class on the (Q, T) quotient to pair
    #[arg(long)]
    beta: String,
    /// Path to the JSON pairing table
    #[arg(long)]
    table: PathBuf,
    /// Class tabulated for the first summand, e.g. "a1" or "a1@2"
    #[arg(long)]
    a1: String,
    /// Class tabulated for the second summand
    #[arg(long)]
    a2: String,
    /// Fail (exit 4) on a missing table entry instead of using 0
    #[arg(long)]
    strict: bool,
    /// Enforce deg(a1) + deg(a2) = deg(beta) - SHIFT
    #[arg(long = "degree-shift", value_name = "SHIFT", allow_hyphen_values = true)]
    degree_shift: Option<i64>,
}

#[derive(Args)]
struct BracketArgs {
    /// Strand points of the grading
    #[arg(long = "Q")]
    big_q: usize,
    /// Free points of the grading
    #[arg(long = "T", default_value_t = 0)]
    big_t: usize,
    /// Ambient dimension (must be odd)
    #[arg(long, default_value_t = 3)]
    n: usize,
}

fn coefficients(mod_p: Option<u64>) -> Coefficients {
    match mod_p {
        Some(p) => Coefficients::Mod(p),
        None => Coefficients::Integers,
    }
}

enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::AmbientDimension(_) => "ambient-dimension",
        Error::NotPrime(_) => "not-prime",
        Error::IndexOutOfRange { .. } => "index-out-of-range",
        Error::RepeatedIndex(_) => "repeated-index",
        Error::ParamMismatch { .. } => "param-mismatch",
        Error::Parse { .. } => "parse",
        Error::NotMonomial(_) => "not-monomial",
        Error::NotInvertible(_) => "not-invertible",
        Error::GroundSetTooLarge(_) => "ground-set-too-large",
        Error::InvalidLabel(_) => "invalid-label",
        Error::GradingMismatch { .. } => "grading-mismatch",
        Error::TableFormat(_) => "table-format",
        Error::TableEntry { .. } => "table-entry",
        Error::ConflictingEntry { .. } => "conflicting-entry",
        Error::MissingEntry { .. } => "missing-entry",
        Error::DegreeMismatch(_) => "degree-mismatch",
        Error::EvenDimension(_) => "even-dimension",
    }
}

fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::NotMonomial(_)
        | Error::InvalidLabel(_)
        | Error::TableFormat(_)
        | Error::TableEntry { .. }
        | Error::ConflictingEntry { .. } => 2,
        Error::MissingEntry { .. } => 4,
        _ => 3,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => exit(code),
        Err(Failure::Domain(e)) => {
            let record = serde_json::json!({
                "error": {"kind": error_kind(&e), "message": e.to_string()}
            });
            eprintln!("{record}");
            exit(error_exit_code(&e));
        }
        Err(Failure::Io(path, e)) => {
            let record = serde_json::json!({
                "error": {"kind": "io", "message": format!("{}: {e}", path.display())}
            });
            eprintln!("{record}");
            exit(3);
        }
    }
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Reduce(args) => {
            let params = args.ring.params()?;
            let element = parse_element(&args.expr, &params)?;
            println!("{element}");
        }
        Command::Basis(args) => {
            let params = args.ring.params()?;
            for m in basis(&params, args.degree) {
                println!("{m}");
            }
        }
        Command::Poincare(args) => {
            let params = args.params()?;
            println!("{}", poincare_polynomial(&params));
        }
        Command::Qdims(args) => {
            let params = args.params()?;
            let rows: Vec<serde_json::Value> = quotient_cohomology_dims(&params)
                .into_iter()
                .map(|(degree, rank)| {
                    serde_json::json!({"degree": degree, "rank": rank.to_string()})
                })
                .collect();
            println!("{}", serde_json::Value::Array(rows));
        }
        Command::Strata(args) => {
            let labels = enumerate_strata(args.q, args.max_codim)?;
            if args.dot {
                print!("{}", face_poset_dot(&labels));
            } else {
                for label in &labels {
                    println!("{label}");
                }
            }
        }
        Command::VerifyFaces(args) => {
            let report = verify_faces_axioms(args.q)?;
            print!("{report}");
            if !report.passed {
                return Ok(5);
            }
        }
        Command::Sigma(args) => {
            let shuffle = sigma(args.q, args.t, args.r, args.s);
            println!("{}", serde_json::json!(shuffle.images()));
        }
        Command::Coproduct(args) => {
            let params = args.grading.params()?;
            let element = parse_element(&args.expr, &params)?;
            let tensor = coproduct_element(&element, args.grading.grading())?;
            println!("{}", serde_json::to_string(&tensor.records()).expect("serializable"));
        }
        Command::Eval(args) => {
            let params = args.grading.params()?;
            let beta = parse_element(&args.beta, &params)?;
            let a1 = ClassLabel::parse(&args.a1)?;
            let a2 = ClassLabel::parse(&args.a2)?;
            let text = std::fs::read_to_string(&args.table)
                .map_err(|e| Failure::Io(args.table.clone(), e))?;
            let table = PairingTable::load_json(
                args.grading.n,
                coefficients(args.grading.mod_p),
                &text,
            )?;
            let options = EvalOptions {
                strict: args.strict,
                degree_shift: args.degree_shift,
            };
            let result =
                eval_connect_sum(&beta, args.grading.grading(), &a1, &a2, &table, &options)?;
            let record = serde_json::json!({
                "value": result.value.to_string(),
                "terms": result.records(),
                "warnings": result.warnings,
            });
            println!("{record}");
        }
        Command::Bracket(args) => {
            let result = eval_bracket(args.n, ColoredGrading::new(args.big_q, args.big_t))?;
            let record = serde_json::json!({
                "value": result.value.to_string(),
                "certificate": result.certificate,
            });
            println!("{record}");
        }
    }
    Ok(0)
}
