//! Command-line front end for the exact N=2 character toolkit.
//!
//! Every subcommand computes in exact rational arithmetic and renders to one
//! of three formats. Output is byte-for-byte deterministic for a fixed
//! command line. Exit codes: `0` on success, `1` when a mathematical
//! verification fails (central-charge mismatch, failed decomposition, or a
//! `verify` report that does not pass), `2` for usage and validation errors.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use n2char_core::embeddings::{
    central_charge, decompose, enumerate_diagonal_embeddings, product_character, verify_case,
    CaseVerification, EmbeddingCase, EmbeddingError, ExpectedTable,
};
use n2char_core::nsmodules::{character_c, vacuum_character, CharacterError, ModuleLabel};
use n2char_core::qseries::QSeries;
use n2char_core::rational::{self, parse_rational, rat, Rational};
use n2char_core::shapovalov::{gram_block, isometry_check, quotient_graded_dim, ShapovalovError};

/// Output rendering for all subcommands.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Human-readable aligned text
    Table,
    /// Comma-separated values with a header row
    Csv,
    /// Pretty-printed JSON with deterministic key order
    Json,
}

/// Named verification bundles.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseName {
    /// The M12 into M3 (x) M4 case
    E6,
    /// The M30 into M3 (x) M5 case
    E8,
    /// Both cases
    All,
}

fn rational_value(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "n2char",
    version,
    about = "Exact characters, Shapovalov forms, and embedding checks for N=2 minimal quotients"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Character of the module C_r over the quotient M_d, truncated below --order
    Chi {
        /// Quotient index d (central charge c = 3 - 6/d)
        #[arg(long)]
        d: i64,
        /// Module index r, 1 <= r <= d-1, odd in the NS sector
        #[arg(long)]
        r: i64,
        /// Truncation order as an exact rational, e.g. 8 or 15/2
        #[arg(long, value_parser = rational_value, allow_hyphen_values = true)]
        order: Rational,
    },
    /// Product of the vacuum characters of the listed quotients
    Product {
        /// Comma-separated quotient indices, e.g. 3,4
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        factors: Vec<i64>,
        /// Truncation order as an exact rational
        #[arg(long, value_parser = rational_value, allow_hyphen_values = true)]
        order: Rational,
    },
    /// Decompose a product of vacuum characters into modules of a target quotient
    Decompose {
        /// Target quotient index
        #[arg(long)]
        target: i64,
        /// Comma-separated factor quotient indices
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        factors: Vec<i64>,
        /// Truncation order for the exact comparison
        #[arg(long, value_parser = rational_value, allow_hyphen_values = true)]
        order: Rational,
    },
    /// List solutions of c_{d1} = c_{d2} + c_{d3} with all indices at most --max
    Embeddings {
        /// Upper bound on every quotient index
        #[arg(long)]
        max: i64,
    },
    /// Shapovalov Gram block of the vacuum tower of M_d at one level and charge
    Gram {
        /// Quotient index fixing the central charge
        #[arg(long)]
        d: i64,
        /// Level (a nonnegative integer or half-integer)
        #[arg(long, value_parser = rational_value, allow_hyphen_values = true)]
        level: Rational,
        /// Fermionic charge of the block
        #[arg(long, allow_negative_numbers = true)]
        charge: i64,
    },
    /// Graded dimensions of the vacuum module of M_d computed from Gram ranks
    Dims {
        /// Quotient index
        #[arg(long)]
        d: i64,
        /// Highest level to report, in half-integer steps from zero
        #[arg(long = "max-level", value_parser = rational_value, allow_hyphen_values = true)]
        max_level: Rational,
    },
    /// Re-derive the expected branching tables and cross-checks for a named case
    Verify {
        /// Which case to verify
        #[arg(long, value_enum)]
        case: CaseName,
        /// Truncation order; raised automatically to cover the full table
        #[arg(long, value_parser = rational_value, default_value = "0", allow_hyphen_values = true)]
        order: Rational,
        /// Also cross-check graded dimensions against Gram ranks and run the
        /// diagonal isometry sweep
        #[arg(long)]
        with_gram: bool,
    },
}

/// A command failure carrying its process exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<CharacterError> for Failure {
    fn from(e: CharacterError) -> Failure {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<ShapovalovError> for Failure {
    fn from(e: ShapovalovError) -> Failure {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<EmbeddingError> for Failure {
    fn from(e: EmbeddingError) -> Failure {
        let code = match &e {
            EmbeddingError::CentralChargeMismatch { .. }
            | EmbeddingError::DecompositionFailure(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` and runs the selected subcommand against the standard
/// expected tables, writing results to `out` and errors to `err`. Returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_expected(args, &ExpectedTable::standard(), out, err)
}

/// [`run`] against a caller-supplied expected table; `verify` compares the
/// recomputed characters to this table instead of the built-in one.
pub fn run_with_expected<I, T>(
    args: I,
    expected: &ExpectedTable,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, expected, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, expected: &ExpectedTable, out: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Chi { d, r, order } => {
            let label = ModuleLabel::new(*d, 0, *r).map_err(CharacterError::from)?;
            let chi = character_c(*d, *r, order)?;
            let title = format!(
                "character of {} below order {}",
                label,
                rational::format_compact(order)
            );
            render_series(&title, &chi, format, out).ok();
            Ok(0)
        }
        Command::Product { factors, order } => {
            let product = product_character(factors, order)?;
            let title = format!(
                "product character of {} below order {}",
                factor_names(factors),
                rational::format_compact(order)
            );
            render_series(&title, &product, format, out).ok();
            Ok(0)
        }
        Command::Decompose {
            target,
            factors,
            order,
        } => {
            let decomposition = decompose(*target, factors, order)?;
            render_decomposition(&decomposition, factors, format, out).ok();
            Ok(0)
        }
        Command::Embeddings { max } => {
            let cases = enumerate_diagonal_embeddings(*max);
            render_embeddings(*max, &cases, format, out).ok();
            Ok(0)
        }
        Command::Gram { d, level, charge } => {
            let c = central_charge(*d)?;
            let block = gram_block(level, *charge, &c)?;
            render_gram(*d, &block, format, out).ok();
            Ok(0)
        }
        Command::Dims { d, max_level } => {
            let mut dims = Vec::new();
            let mut twice = 0i64;
            while rat(twice, 2) <= *max_level {
                let level = rat(twice, 2);
                dims.push((level.clone(), quotient_graded_dim(*d, &level)?));
                twice += 1;
            }
            render_dims(*d, max_level, &dims, format, out).ok();
            Ok(0)
        }
        Command::Verify {
            case,
            order,
            with_gram,
        } => cmd_verify(*case, order, *with_gram, expected, format, out),
    }
}

fn factor_names(factors: &[i64]) -> String {
    factors
        .iter()
        .map(|d| format!("M{d}"))
        .collect::<Vec<_>>()
        .join(" (x) ")
}

fn json_line(v: &Value, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("serializable value")
    )
}

fn render_series(
    title: &str,
    s: &QSeries,
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Table => {
            writeln!(out, "{title}")?;
            writeln!(out, "{:<12} {}", "exponent", "coefficient")?;
            for (e, c) in s.iter() {
                writeln!(
                    out,
                    "{:<12} {}",
                    rational::format_compact(&e),
                    rational::format_compact(c)
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "exponent,coefficient")?;
            for (e, c) in s.iter() {
                writeln!(
                    out,
                    "{},{}",
                    rational::format_compact(&e),
                    rational::format_compact(c)
                )?;
            }
        }
        Format::Json => json_line(&s.to_json(), out)?,
    }
    Ok(())
}

fn render_decomposition(
    d: &n2char_core::embeddings::Decomposition,
    factors: &[i64],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Table => {
            writeln!(
                out,
                "decomposition of {} into M{} modules below order {}",
                factor_names(factors),
                d.target_d(),
                rational::format_compact(d.verified_order())
            )?;
            for (label, m) in d.multiplicities() {
                writeln!(out, "r={:<4} m={}", label.r(), m)?;
            }
            writeln!(out, "verified: zero remainder")?;
        }
        Format::Csv => {
            writeln!(out, "r,multiplicity")?;
            for (label, m) in d.multiplicities() {
                writeln!(out, "{},{}", label.r(), m)?;
            }
        }
        Format::Json => json_line(&d.to_json(), out)?,
    }
    Ok(())
}

fn render_embeddings(
    max: i64,
    cases: &[EmbeddingCase],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Table => {
            writeln!(out, "diagonal solutions with all indices <= {max}")?;
            for case in cases {
                writeln!(out, "{case}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "d1,d2,d3")?;
            for case in cases {
                writeln!(out, "{},{},{}", case.d1(), case.d2(), case.d3())?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = cases.iter().map(EmbeddingCase::to_json).collect();
            json_line(&Value::Array(v), out)?;
        }
    }
    Ok(())
}

fn render_gram(
    d: i64,
    block: &n2char_core::shapovalov::GramBlock,
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Table => {
            writeln!(
                out,
                "Gram block of the M{d} vacuum tower at level {}, charge {} (c = {})",
                rational::format_compact(block.level()),
                block.charge(),
                rational::format_compact(block.central_charge())
            )?;
            let basis: Vec<String> = block.basis().iter().map(|b| b.to_string()).collect();
            writeln!(out, "basis: {}", basis.join(", "))?;
            let cells: Vec<Vec<String>> = block
                .matrix()
                .iter()
                .map(|row| row.iter().map(rational::format_compact).collect())
                .collect();
            let width = cells
                .iter()
                .flatten()
                .map(String::len)
                .max()
                .unwrap_or(1);
            for row in &cells {
                let padded: Vec<String> =
                    row.iter().map(|c| format!("{c:>width$}")).collect();
                writeln!(out, "[ {} ]", padded.join("  "))?;
            }
            writeln!(
                out,
                "rank {}, radical dimension {}",
                block.rank(),
                block.radical_dimension()
            )?;
        }
        Format::Csv => {
            let basis: Vec<String> = block.basis().iter().map(|b| b.to_string()).collect();
            writeln!(out, "basis,{}", basis.join(","))?;
            for (name, row) in basis.iter().zip(block.matrix()) {
                let entries: Vec<String> = row.iter().map(rational::format_compact).collect();
                writeln!(out, "{},{}", name, entries.join(","))?;
            }
        }
        Format::Json => json_line(&block.to_json(), out)?,
    }
    Ok(())
}

fn render_dims(
    d: i64,
    max_level: &Rational,
    dims: &[(Rational, usize)],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Table => {
            writeln!(
                out,
                "graded dimensions of the M{d} vacuum module up to level {} (Gram ranks)",
                rational::format_compact(max_level)
            )?;
            writeln!(out, "{:<8} {}", "level", "dim")?;
            for (level, dim) in dims {
                writeln!(out, "{:<8} {}", rational::format_compact(level), dim)?;
            }
        }
        Format::Csv => {
            writeln!(out, "level,dim")?;
            for (level, dim) in dims {
                writeln!(out, "{},{}", rational::format_compact(level), dim)?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = dims
                .iter()
                .map(|(level, dim)| json!({"level": rational::format_slash(level), "dim": dim}))
                .collect();
            json_line(
                &json!({
                    "d": d,
                    "max_level": rational::format_slash(max_level),
                    "dims": rows,
                }),
                out,
            )?;
        }
    }
    Ok(())
}

/// One named pass/fail observation inside a `verify` run.
struct Check {
    name: String,
    pass: bool,
    /// Shown only for failures in table output.
    detail: String,
}

impl Check {
    fn new(name: String, pass: bool, detail: String) -> Check {
        Check { name, pass, detail }
    }
}

const ENUMERATION_BOUND: i64 = 10_000;
const ISOMETRY_LEVEL: (i64, i64) = (5, 2);
const DIM_CROSS_CHECK_TWICE_LEVEL: i64 = 6;

/// Renders one case's dimension table: a header row of conformal weights,
/// then the product row and one row per module with computed dimensions.
fn write_case_table(v: &CaseVerification, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{}: {}", v.name, v.case)?;
    let headers: Vec<String> = v.degrees.iter().map(ToString::to_string).collect();
    let rendered: Vec<Vec<String>> = v
        .rows
        .iter()
        .map(|row| row.computed.iter().map(rational::format_compact).collect())
        .collect();
    let label_width = v
        .rows
        .iter()
        .map(|row| row.label.len())
        .chain(["weight".len()])
        .max()
        .unwrap_or(0);
    let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
    for cells in &rendered {
        for (width, cell) in widths.iter_mut().zip(cells) {
            *width = (*width).max(cell.len());
        }
    }
    let mut header = format!("  {:<label_width$}", "weight");
    for (&width, text) in widths.iter().zip(&headers) {
        header.push_str(&format!("  {text:>width$}"));
    }
    writeln!(out, "{header}")?;
    for (row, cells) in v.rows.iter().zip(&rendered) {
        let mut line = format!("  {:<label_width$}", row.label);
        for (&width, cell) in widths.iter().zip(cells) {
            line.push_str(&format!("  {cell:>width$}"));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn cmd_verify(
    case: CaseName,
    order: &Rational,
    with_gram: bool,
    expected: &ExpectedTable,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let names: &[&str] = match case {
        CaseName::E6 => &["e6"],
        CaseName::E8 => &["e8"],
        CaseName::All => &["e6", "e8"],
    };

    let mut checks: Vec<Check> = Vec::new();
    let mut case_jsons: Vec<Value> = Vec::new();
    let mut verifications: Vec<CaseVerification> = Vec::new();

    for name in names {
        let expectation = expected.case(name).ok_or_else(|| Failure {
            code: 2,
            message: format!("no expected table for case {name}"),
        })?;
        let verification = verify_case(expectation, order)?;
        for row in &verification.rows {
            let computed: Vec<String> =
                row.computed.iter().map(rational::format_compact).collect();
            checks.push(Check::new(
                format!("{name}: row {}", row.label),
                row.pass,
                format!("expected {:?} computed [{}]", row.expected, computed.join(", ")),
            ));
        }
        checks.push(Check::new(
            format!("{name}: module rows sum to the product row"),
            verification.column_sums_match,
            String::new(),
        ));
        checks.push(Check::new(
            format!("{name}: decomposition multiplicities all equal one"),
            verification.multiplicities_all_one,
            format!(
                "multiplicities {:?}",
                verification
                    .decomposition
                    .multiplicities()
                    .iter()
                    .map(|(l, m)| (l.r(), *m))
                    .collect::<Vec<_>>()
            ),
        ));
        case_jsons.push(verification.to_json());
        verifications.push(verification);
    }

    let found = enumerate_diagonal_embeddings(ENUMERATION_BOUND);
    let reference: Vec<EmbeddingCase> = [(6, 3, 3), (12, 3, 4), (30, 3, 5)]
        .iter()
        .map(|&(a, b, c)| EmbeddingCase::new(a, b, c).expect("reference case"))
        .collect();
    let enumeration_pass = found == reference;
    checks.push(Check::new(
        format!("enumeration: exactly three solutions with indices <= {ENUMERATION_BOUND}"),
        enumeration_pass,
        format!("found {}", found.len()),
    ));

    let mut gram_jsons: Vec<Value> = Vec::new();
    if with_gram {
        for v in &verifications {
            let case = &v.case;
            let mut ds = vec![case.d1(), case.d2(), case.d3()];
            ds.dedup();
            let mut dim_entries = Vec::new();
            for d in ds {
                let chi = vacuum_character(d, &(rat(DIM_CROSS_CHECK_TWICE_LEVEL, 2) + rat(1, 2)))?;
                let mut all_match = true;
                for twice in 0..=DIM_CROSS_CHECK_TWICE_LEVEL {
                    let level = rat(twice, 2);
                    let from_character = chi.coeff(&level).map_err(CharacterError::from)?;
                    let from_gram = quotient_graded_dim(d, &level)?;
                    if from_character != rat(from_gram as i64, 1) {
                        all_match = false;
                    }
                }
                checks.push(Check::new(
                    format!(
                        "{case}: graded dims of M{d} match Gram ranks up to level {}",
                        rational::format_compact(&rat(DIM_CROSS_CHECK_TWICE_LEVEL, 2))
                    ),
                    all_match,
                    String::new(),
                ));
                dim_entries.push(json!({"d": d, "pass": all_match}));
            }
            let (ln, ld) = ISOMETRY_LEVEL;
            let report = isometry_check(case, &rat(ln, ld))?;
            checks.push(Check::new(
                format!(
                    "{case}: diagonal embedding is isometric up to level {}",
                    rational::format_compact(&rat(ln, ld))
                ),
                report.pass,
                format!("{:?}", report.counterexample),
            ));
            gram_jsons.push(json!({
                "case": case.to_json(),
                "dims": dim_entries,
                "isometry": report.to_json(),
            }));
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    match format {
        Format::Table => {
            let mut w = || -> io::Result<()> {
                for v in &verifications {
                    write_case_table(v, &mut *out)?;
                }
                for check in &checks {
                    if check.pass {
                        writeln!(out, "[ok]   {}", check.name)?;
                    } else if check.detail.is_empty() {
                        writeln!(out, "[FAIL] {}", check.name)?;
                    } else {
                        writeln!(out, "[FAIL] {} ({})", check.name, check.detail)?;
                    }
                }
                writeln!(out, "overall: {}", if pass { "VERIFIED" } else { "FAIL" })
            };
            w().ok();
        }
        Format::Csv => {
            let mut w = || -> io::Result<()> {
                writeln!(out, "check,pass")?;
                for check in &checks {
                    writeln!(out, "{},{}", check.name, check.pass)?;
                }
                writeln!(out, "overall,{pass}")
            };
            w().ok();
        }
        Format::Json => {
            let v = json!({
                "cases": case_jsons,
                "enumeration": {
                    "d_max": ENUMERATION_BOUND,
                    "found": found.iter().map(EmbeddingCase::to_json).collect::<Vec<_>>(),
                    "pass": enumeration_pass,
                },
                "gram": if with_gram { Value::Array(gram_jsons) } else { Value::Null },
                "pass": pass,
            });
            json_line(&v, out).ok();
        }
    }
    Ok(if pass { 0 } else { 1 })
}
