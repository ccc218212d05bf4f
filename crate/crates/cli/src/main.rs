//! `segre`: command-line front end for the syzygy engine.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use segre_core::characters::{character_table, kronecker_coefficient};
use segre_core::koszul::{koszul_homology, psi_new_dimension, HomologyReport, SegreInstance};
use segre_core::partition::lr_coefficient;
use segre_core::poly::{MultiPoly, Ring, UniPoly};
use segre_core::rationality::{multinomial_sum_rational, rational_reconstruct, RationalFunction};
use segre_core::schur::{parse_symfunc, prime_element, SymFunc};
use segre_core::series::{euler_chi, f_segre, lascoux_leading, DeltaSeries, TruncationPolicy};
use segre_core::verify::{f1_star_coefficients, run_all, Outcome};
use segre_core::{parse_rational, Error, Partition, Rational};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_CAPACITY: u8 = 4;
const EXIT_UNSUPPORTED: u8 = 5;
const EXIT_ARGUMENT: u8 = 6;
const EXIT_INTERNAL: u8 = 7;

#[derive(Parser)]
#[command(name = "segre", version, about = "Equivariant syzygies of Segre embeddings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Upper bound on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of the symmetric group S_p.
    CharTable { p: u32 },
    /// Kronecker coefficient of three partitions of one size.
    Kronecker { lambda: String, mu: String, nu: String },
    /// Littlewood-Richardson coefficient: multiplicity of s_ν in s_λ s_μ.
    Lr { lambda: String, mu: String, nu: String },
    /// Point-wise tensor product of two elements given as JSON objects, e.g. '{"2,1":"1/2"}'.
    Boxtimes { x: String, y: String },
    /// The power-sum element s′_λ in the Schur basis.
    Prime { lambda: String },
    /// Degree-k slice of the Euler characteristic series.
    EulerChi {
        k: u32,
        #[command(flatten)]
        truncation: Truncation,
    },
    /// The syzygy series f_p for p in 1..=3.
    FSegre {
        p: u32,
        #[command(flatten)]
        truncation: Truncation,
    },
    /// Order-two leading term of f_p in degree d.
    Lascoux { p: u32, d: u32 },
    /// Koszul homology K_{p,d} of a Segre product by direct linear algebra.
    Koszul {
        /// Factor dimensions, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u32>,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: u32,
        /// Restrict to syzygies not induced from coarser Segre products.
        #[arg(long)]
        cosocle: bool,
        /// Print the full weight table as CSV instead of the report.
        #[arg(long)]
        weight_table: bool,
    },
    /// Closed form of Σ_k p(k) C_{k+e} t^{|k|} over k in ℕ^d.
    Sumlem {
        /// Shift vector e, comma-separated; its length fixes d.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        shift: Vec<i64>,
        /// Polynomial term `EXPONENTS:COEFF`, e.g. `1,0:3/2` for (3/2)·k_1. Repeatable; defaults to 1.
        #[arg(long = "term", allow_hyphen_values = true)]
        terms: Vec<String>,
        /// Also print this many series coefficients.
        #[arg(long)]
        expand: Option<usize>,
    },
    /// Rational function of least denominator degree matching a coefficient list.
    Reconstruct {
        #[arg(long)]
        max_den: usize,
        /// Reconstruct the normalized first-syzygy series in ℚ[s, w] instead.
        #[arg(long, conflicts_with = "coeffs")]
        f1_star: bool,
        /// Series coefficients as rationals, lowest order first.
        #[arg(allow_hyphen_values = true)]
        coeffs: Vec<String>,
    },
    /// Run the acceptance checks.
    Verify {
        /// Smaller grids for a fast smoke run.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(clap::Args)]
struct Truncation {
    /// Highest order kept.
    #[arg(long, default_value_t = TruncationPolicy::default().max_order)]
    order: usize,
    /// Largest |λ| kept.
    #[arg(long, default_value_t = TruncationPolicy::default().max_part_size)]
    max_part: u32,
}

impl Truncation {
    fn policy(&self) -> TruncationPolicy {
        TruncationPolicy::new(self.order, self.max_part)
    }
}

struct Rendered {
    json: String,
    text: String,
    status: u8,
}

impl Rendered {
    fn ok(json: impl Serialize, text: String) -> Result<Self, Error> {
        let json = serde_json::to_string(&json).map_err(|e| Error::Consistency(e.to_string()))?;
        Ok(Rendered { json, text, status: 0 })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("segre: cannot configure thread pool: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    }
    match dispatch(&cli.command) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => out.json,
                Format::Text => out.text,
            };
            println!("{}", body.trim_end());
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("segre: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::Argument(_) => EXIT_ARGUMENT,
        Error::NotPolynomialCharacter(_) | Error::Consistency(_) => EXIT_INTERNAL,
    }
}

fn partition(s: &str) -> Result<Partition, Error> {
    s.parse()
}

fn dispatch(command: &Command) -> Result<Rendered, Error> {
    match command {
        Command::CharTable { p } => {
            let table = character_table(*p)?;
            Rendered::ok(&*table, char_table_text(&table.partitions, &table.values))
        }
        Command::Kronecker { lambda, mu, nu } => {
            let c = kronecker_coefficient(&partition(lambda)?, &partition(mu)?, &partition(nu)?)?;
            Rendered::ok(json!({ "coefficient": c }), c.to_string())
        }
        Command::Lr { lambda, mu, nu } => {
            let c = lr_coefficient(&partition(lambda)?, &partition(mu)?, &partition(nu)?);
            Rendered::ok(json!({ "coefficient": c }), c.to_string())
        }
        Command::Boxtimes { x, y } => {
            let z = parse_symfunc(x)?.boxtimes(&parse_symfunc(y)?);
            Rendered::ok(&z, symfunc_text(&z))
        }
        Command::Prime { lambda } => {
            let z = prime_element(&partition(lambda)?)?;
            Rendered::ok(&z, symfunc_text(&z))
        }
        Command::EulerChi { k, truncation } => series_output(&euler_chi(*k, truncation.policy())?),
        Command::FSegre { p, truncation } => series_output(&f_segre(*p, truncation.policy())?),
        Command::Lascoux { p, d } => series_output(&lascoux_leading(*p, *d)),
        Command::Koszul { dims, p, d, cosocle, weight_table } => {
            let inst = SegreInstance::new(dims.clone())?;
            let report = if *cosocle { psi_new_dimension(&inst, *p, *d)? } else { koszul_homology(&inst, *p, *d)? };
            if *weight_table {
                let csv = report.weight_table_csv();
                return Ok(Rendered { json: csv.clone(), text: csv, status: 0 });
            }
            koszul_output(&report)
        }
        Command::Sumlem { shift, terms, expand } => {
            let poly = if terms.is_empty() {
                MultiPoly::constant(Rational::from_integer(1.into()))
            } else {
                terms.iter().try_fold(MultiPoly::default(), |mut acc, t| {
                    let (exps, c) = parse_term(t)?;
                    acc.add_term(exps, c);
                    Ok::<_, Error>(acc)
                })?
            };
            let r = multinomial_sum_rational(&poly, shift, shift.len())?;
            let mut json = r.to_json();
            let mut text = r.to_string();
            if let Some(n) = expand {
                let coeffs = r.expand(*n);
                json["series"] = Value::Array(coeffs.iter().map(|c| Value::String(c.to_string())).collect());
                write!(text, "\n{}", coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")).ok();
            }
            Rendered::ok(json, text)
        }
        Command::Reconstruct { max_den, f1_star, coeffs } => {
            if *f1_star {
                let series = f1_star_coefficients(2 * max_den + 2)?;
                return reconstruct_output(rational_reconstruct(&series, *max_den)?, |f| {
                    poly_text(f, |c| format!("({})", c.display_with(&["s", "w"])))
                });
            }
            if coeffs.is_empty() {
                return Err(Error::Argument("no coefficients given".into()));
            }
            let values = coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
            reconstruct_output(rational_reconstruct(&values, *max_den)?, |f| poly_text(f, |c| c.to_string()))
        }
        Command::Verify { quick } => {
            let outcomes = run_all(*quick);
            let passed = outcomes.iter().all(|o| o.passed);
            let mut out = Rendered::ok(
                verify_json(&outcomes, passed),
                outcomes.iter().map(Outcome::line).collect::<Vec<_>>().join("\n"),
            )?;
            if !passed {
                let failed: Vec<String> =
                    outcomes.iter().filter(|o| !o.passed).map(|o| format!("{} {}", o.id, o.name)).collect();
                eprintln!("segre: failed criteria: {}", failed.join(", "));
                out.status = EXIT_VERIFY_FAILED;
            }
            Ok(out)
        }
    }
}

fn parse_term(t: &str) -> Result<(Vec<u32>, Rational), Error> {
    let (exps, coeff) = t.split_once(':').ok_or_else(|| Error::Parse(format!("term {t:?} is not EXPONENTS:COEFF")))?;
    let exps = exps
        .split(',')
        .map(|e| e.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad exponents in term {t:?}")))?;
    Ok((exps, parse_rational(coeff)?))
}

fn char_table_text(partitions: &[Partition], values: &[Vec<i64>]) -> String {
    let labels: Vec<String> = partitions.iter().map(Partition::to_key).collect();
    let first = labels.iter().map(String::len).max().unwrap_or(1).max(1);
    let widths: Vec<usize> = labels
        .iter()
        .enumerate()
        .map(|(j, l)| values.iter().map(|row| row[j].to_string().len()).chain([l.len()]).max().unwrap_or(1))
        .collect();
    let mut out = format!("{:first$}", "");
    for (l, w) in labels.iter().zip(&widths) {
        write!(out, "  {l:>w$}").ok();
    }
    for (l, row) in labels.iter().zip(values) {
        write!(out, "\n{l:first$}").ok();
        for (v, w) in row.iter().zip(&widths) {
            write!(out, "  {v:>w$}").ok();
        }
    }
    out
}

fn symfunc_text(x: &SymFunc) -> String {
    let rows: Vec<(String, String)> = x.terms().iter().rev().map(|(l, c)| (c.to_string(), format!("s{l}"))).collect();
    aligned(&rows, "0")
}

fn aligned(rows: &[(String, String)], empty: &str) -> String {
    if rows.is_empty() {
        return empty.to_string();
    }
    let w = rows.iter().map(|(c, _)| c.len()).max().unwrap_or(0);
    rows.iter().map(|(c, m)| format!("{c:>w$}  {m}")).collect::<Vec<_>>().join("\n")
}

fn series_output(series: &DeltaSeries) -> Result<Rendered, Error> {
    let rows: Vec<(String, String)> = series
        .terms()
        .iter()
        .map(|(m, c)| {
            let mono = if m.vars().is_empty() {
                "1".to_string()
            } else {
                m.vars().iter().map(|l| format!("X{l}")).collect::<Vec<_>>().join(" ")
            };
            (c.to_string(), mono)
        })
        .collect();
    Rendered::ok(series, aligned(&rows, "0"))
}

#[derive(Serialize)]
struct KoszulJson<'a> {
    dimension: u128,
    decomposition: Vec<KoszulTerm<'a>>,
}

#[derive(Serialize)]
struct KoszulTerm<'a> {
    lambdas: &'a [Partition],
    mult: u64,
}

fn koszul_output(report: &HomologyReport) -> Result<Rendered, Error> {
    let decomposition = report.decomposition.iter().map(|(l, &m)| KoszulTerm { lambdas: l, mult: m }).collect();
    let rows: Vec<(String, String)> = report
        .decomposition
        .iter()
        .map(|(l, m)| (m.to_string(), l.iter().map(|x| format!("S{x}")).collect::<Vec<_>>().join(" ⊗ ")))
        .collect();
    let text = format!("dimension {}\n{}", report.dimension, aligned(&rows, ""));
    Rendered::ok(KoszulJson { dimension: report.dimension, decomposition }, text)
}

fn poly_text<C: Ring>(f: &UniPoly<C>, show: impl Fn(&C) -> String) -> String {
    let terms: Vec<String> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => show(c),
            1 => format!("{} t", show(c)),
            _ => format!("{} t^{i}", show(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn reconstruct_output<C: Ring>(
    found: Option<RationalFunction<C>>,
    show: impl Fn(&UniPoly<C>) -> String,
) -> Result<Rendered, Error> {
    match found {
        Some(r) => {
            let text = format!("num: {}\nden: {}", show(r.numerator()), show(r.denominator()));
            Rendered::ok(r.to_json(), text)
        }
        None => Rendered::ok(Value::Null, "no rational function within the degree bound".into()),
    }
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    passed: bool,
    criteria: Vec<CriterionJson<'a>>,
}

#[derive(Serialize)]
struct CriterionJson<'a> {
    id: u32,
    name: &'a str,
    passed: bool,
    detail: &'a str,
    limit_seconds: u64,
}

fn verify_json(outcomes: &[Outcome], passed: bool) -> VerifyJson<'_> {
    VerifyJson {
        passed,
        criteria: outcomes
            .iter()
            .map(|o| CriterionJson {
                id: o.id,
                name: o.name,
                passed: o.passed,
                detail: &o.detail,
                limit_seconds: o.limit.as_secs(),
            })
            .collect(),
    }
}
