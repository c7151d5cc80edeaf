//! Command-line driver for quaternary defining-set codes.
//!
//! Three subcommands cover the pipeline end to end:
//!
//! * `wdist` builds one defining-set code from two complexes (or explicit
//!   coordinate sets) and reports its weight distribution, by exhaustive
//!   enumeration (`--mode oracle`), by closed form (`--mode formula`), or
//!   both with an exact cross-check (`--mode verify`, the default).
//! * `scan` sweeps the complement family over every face-size class for
//!   each requested ambient dimension and tabulates `[n, k, d]`.
//! * `subfield` prints a quaternary generator matrix, its binary
//!   decomposition and expansion, the expanded defining set, and both
//!   codes' parameters.
//!
//! Every command accepts `--format json`; the emitted JSON embeds the run
//! spec, and `--from-json FILE` replays such a file byte for byte.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 verification
//! mismatch, 3 work budget exceeded, 4 bad flags or preconditions.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use gf4codes::bounds::{classify, BestKnownTable, BoundReport};
use gf4codes::closed_forms::{self, TheoremPrediction};
use gf4codes::code_engine::{weight_distribution_bruteforce, WeightDistribution};
use gf4codes::defining_sets::{
    product_of_sets, product_set, shared_product, subfield_generator_matrix, DefiningSet,
    FieldTag,
};
use gf4codes::gf4_algebra::{BinaryMatrix, F4Matrix, MAX_M};
use gf4codes::simplicial::{face_to_string, parse_complex, SimplicialComplex, SubsetMask};
use gf4codes::Error as LibError;

// ---------------------------------------------------------------------------
// Flag surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "gf4codes",
    version,
    about = "Quaternary defining-set codes: build, measure, verify"
)]
struct Cli {
    /// Replay a previous run from its JSON output (or from a bare run
    /// spec); the replay reproduces the original bytes exactly.
    #[arg(long, value_name = "FILE")]
    from_json: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<CliCommand>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Weight distribution of one defining-set code.
    Wdist(WdistArgs),
    /// Tabulate the complement family over all face-size classes.
    Scan(ScanArgs),
    /// Binary expansion of a quaternary generator matrix.
    Subfield(SubfieldArgs),
}

#[derive(Args)]
struct WdistArgs {
    /// Ambient dimension: coordinates index vectors in F4^m.
    #[arg(long)]
    m: usize,

    /// First complex as maximal faces, e.g. "1,2;3" ("-" for the complex
    /// whose only face is empty); with --explicit, a ";"-separated list
    /// of decimal coordinate masks instead.
    #[arg(long = "A", value_name = "COMPLEX")]
    a: String,

    /// Second complex (same syntax as --A).
    #[arg(long = "B", value_name = "COMPLEX")]
    b: String,

    /// Which defining set to evaluate: the full product, the product with
    /// the zero vector removed, or its complement in F4^m minus zero.
    #[arg(long, value_enum)]
    variant: SetVariant,

    /// oracle = exhaustive enumeration, formula = closed form,
    /// verify = both plus an exact comparison.
    #[arg(long, value_enum, default_value_t = Mode::Verify)]
    mode: Mode,

    /// Build the shared product D(Delta) from one complex spanned by the
    /// maximal faces of --A and --B together, instead of the two-complex
    /// product.
    #[arg(long)]
    delta_shared: bool,

    /// Expand to the binary subfield code before measuring.
    #[arg(long)]
    subfield: bool,

    /// Treat --A/--B as explicit coordinate-mask lists, not complexes.
    #[arg(long)]
    explicit: bool,

    /// Evaluate the published closed-form tables verbatim (this
    /// reproduces known misprints) instead of the corrected expressions.
    #[arg(long)]
    strict_paper: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// CSV of best known distances, lines "q,n,k,best_d"; enables the
    /// optimality columns of the bounds report.
    #[arg(long, value_name = "CSV")]
    table: Option<PathBuf>,
}

/// Face classes are canonical under coordinate permutation and under
/// swapping the two faces: every reported quantity depends on (A, B)
/// only through (|A|, |B|, |A int B|).  One row is emitted per class,
/// with representatives B = {1..|B|} and A chosen to overlap B in
/// exactly |A int B| trailing vertices.
#[derive(Args)]
struct ScanArgs {
    /// Ambient dimension; repeat to sweep several (e.g. --m 2 --m 3).
    #[arg(long, required = true)]
    m: Vec<usize>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// CSV of best known distances, lines "q,n,k,best_d"; rows whose d
    /// meets the table are starred.
    #[arg(long, value_name = "CSV")]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct SubfieldArgs {
    /// Ambient dimension: coordinates index vectors in F4^m.
    #[arg(long)]
    m: usize,

    /// First complex (or, with --explicit, a mask list); see `wdist`.
    #[arg(long = "A", value_name = "COMPLEX")]
    a: String,

    /// Second complex (same syntax as --A).
    #[arg(long = "B", value_name = "COMPLEX")]
    b: String,

    /// Which defining set to expand (default: the full product).
    #[arg(long, value_enum, default_value_t = SetVariant::Product)]
    variant: SetVariant,

    /// Build the shared product from one complex; see `wdist`.
    #[arg(long)]
    delta_shared: bool,

    /// Treat --A/--B as explicit coordinate-mask lists, not complexes.
    #[arg(long)]
    explicit: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum SetVariant {
    Product,
    Punctured,
    Complement,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    Oracle,
    Formula,
    Verify,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum OutputFormat {
    Text,
    Json,
}

// ---------------------------------------------------------------------------
// Run spec: the replayable description of one invocation
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum CommandKind {
    Wdist,
    Scan,
    Subfield,
}

/// Everything a run depends on.  Serialized into every JSON output so
/// that `--from-json` can re-execute it; execution is a pure function of
/// this struct, which is what makes the replay byte-identical.
#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSpec {
    command: CommandKind,
    #[serde(default)]
    m: Option<usize>,
    /// Dimensions for `scan`, which sweeps several.
    #[serde(default)]
    m_values: Vec<usize>,
    #[serde(default)]
    complex_a: Option<String>,
    #[serde(default)]
    complex_b: Option<String>,
    #[serde(default = "default_variant")]
    variant: SetVariant,
    #[serde(default = "default_mode")]
    mode: Mode,
    #[serde(default)]
    delta_shared: bool,
    #[serde(default)]
    subfield: bool,
    #[serde(default)]
    explicit: bool,
    #[serde(default)]
    strict_paper: bool,
    #[serde(default = "default_format")]
    format: OutputFormat,
    #[serde(default)]
    table_path: Option<String>,
}

fn default_variant() -> SetVariant {
    SetVariant::Product
}

fn default_mode() -> Mode {
    Mode::Verify
}

fn default_format() -> OutputFormat {
    OutputFormat::Text
}

impl RunSpec {
    fn of_command(cmd: CliCommand) -> RunSpec {
        match cmd {
            CliCommand::Wdist(w) => RunSpec {
                command: CommandKind::Wdist,
                m: Some(w.m),
                m_values: Vec::new(),
                complex_a: Some(w.a),
                complex_b: Some(w.b),
                variant: w.variant,
                mode: w.mode,
                delta_shared: w.delta_shared,
                subfield: w.subfield,
                explicit: w.explicit,
                strict_paper: w.strict_paper,
                format: w.format,
                table_path: w.table.map(|p| p.display().to_string()),
            },
            CliCommand::Scan(s) => RunSpec {
                command: CommandKind::Scan,
                m: None,
                m_values: s.m,
                complex_a: None,
                complex_b: None,
                variant: default_variant(),
                mode: default_mode(),
                delta_shared: false,
                subfield: false,
                explicit: false,
                strict_paper: false,
                format: s.format,
                table_path: s.table.map(|p| p.display().to_string()),
            },
            CliCommand::Subfield(s) => RunSpec {
                command: CommandKind::Subfield,
                m: Some(s.m),
                m_values: Vec::new(),
                complex_a: Some(s.a),
                complex_b: Some(s.b),
                variant: s.variant,
                mode: default_mode(),
                delta_shared: s.delta_shared,
                subfield: false,
                explicit: s.explicit,
                strict_paper: false,
                format: s.format,
                table_path: None,
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Failure channel and exit codes
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum Failure {
    /// Unreadable file or an internal invariant break.  Exit 1.
    Io(String),
    /// Bad flags, unparsable input, or an unmet precondition.  Exit 4.
    Usage(String),
    /// The requested computation exceeds the fixed work budget.  Exit 3.
    Budget(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 4,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Usage(m) | Failure::Budget(m) => m,
        }
    }
}

fn lib_err(e: LibError) -> Failure {
    match e {
        LibError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
        LibError::Degenerate(_) | LibError::Precondition(_) | LibError::Parse(_) => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Io(other.to_string()),
    }
}

/// A finished run: the bytes to print, plus whether a verify comparison
/// failed (exit 2 instead of 0).
struct Output {
    text: String,
    mismatch: bool,
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let spec = match (cli.from_json, cli.command) {
        (Some(path), None) => match load_replay(&path) {
            Ok(spec) => spec,
            Err(f) => return report(f),
        },
        (None, Some(cmd)) => RunSpec::of_command(cmd),
        (Some(_), Some(_)) => {
            eprintln!("gf4codes: --from-json replaces the subcommand; pass one or the other");
            return ExitCode::from(4);
        }
        (None, None) => {
            eprintln!("gf4codes: pass a subcommand (wdist, scan, subfield) or --from-json; see --help");
            return ExitCode::from(4);
        }
    };
    match execute(&spec) {
        Ok(out) => {
            let mut stdout = std::io::stdout();
            if stdout.write_all(out.text.as_bytes()).is_err() || stdout.flush().is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.mismatch { 2 } else { 0 })
        }
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    eprintln!("gf4codes: {}", f.message());
    ExitCode::from(f.exit_code())
}

fn load_replay(path: &PathBuf) -> Result<RunSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: not JSON: {e}", path.display())))?;
    // Accept either a full previous output (take its "spec" field) or a
    // bare run spec.
    let spec_value = match value.get("spec") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(spec_value)
        .map_err(|e| Failure::Usage(format!("{}: no valid run spec: {e}", path.display())))
}

fn execute(spec: &RunSpec) -> Result<Output, Failure> {
    match spec.command {
        CommandKind::Wdist => run_wdist(spec),
        CommandKind::Scan => run_scan(spec),
        CommandKind::Subfield => run_subfield(spec),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn need_m(spec: &RunSpec) -> Result<usize, Failure> {
    let m = spec
        .m
        .ok_or_else(|| Failure::Usage("this command needs --m".into()))?;
    if m == 0 || m > MAX_M {
        return Err(Failure::Usage(format!("--m {m} outside 1..={MAX_M}")));
    }
    Ok(m)
}

fn need_text<'s>(text: &'s Option<String>, flag: &str) -> Result<&'s str, Failure> {
    text.as_deref()
        .ok_or_else(|| Failure::Usage(format!("this command needs {flag}")))
}

fn load_table(spec: &RunSpec) -> Result<Option<BestKnownTable>, Failure> {
    let Some(path) = &spec.table_path else {
        return Ok(None);
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
    let table = BestKnownTable::from_csv(&text).map_err(lib_err)?;
    Ok(Some(table))
}

/// Parses an `--explicit` operand: decimal coordinate masks below `2^m`,
/// separated by ";".
fn parse_mask_list(m: usize, text: &str) -> Result<Vec<u32>, Failure> {
    let mut masks = Vec::new();
    for item in text.split(';') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Failure::Usage(format!(
                "empty entry in explicit mask list {text:?}"
            )));
        }
        let mask: u32 = item.parse().map_err(|_| {
            Failure::Usage(format!("explicit mask {item:?} is not a decimal integer"))
        })?;
        if mask >= 1 << m {
            return Err(Failure::Usage(format!(
                "explicit mask {mask} does not fit in {m} coordinates"
            )));
        }
        masks.push(mask);
    }
    Ok(masks)
}

/// Builds the quaternary product set selected by the spec, before the
/// variant and subfield stages.
fn build_product(spec: &RunSpec, m: usize) -> Result<DefiningSet, Failure> {
    let a_text = need_text(&spec.complex_a, "--A")?;
    let b_text = need_text(&spec.complex_b, "--B")?;
    if spec.explicit {
        if spec.delta_shared {
            return Err(Failure::Usage(
                "--explicit and --delta-shared cannot combine: the shared product is built from one complex".into(),
            ));
        }
        let d1 = parse_mask_list(m, a_text)?;
        let d2 = parse_mask_list(m, b_text)?;
        return product_of_sets(m, &d1, &d2).map_err(lib_err);
    }
    let ca = parse_complex(m, a_text).map_err(lib_err)?;
    let cb = parse_complex(m, b_text).map_err(lib_err)?;
    if spec.delta_shared {
        let delta = joint_complex(m, &ca, &cb)?;
        shared_product(&delta).map_err(lib_err)
    } else {
        product_set(&ca, &cb).map_err(lib_err)
    }
}

/// The complex spanned by the maximal faces of both operands: the
/// `--delta-shared` interpretation of `--A`/`--B`.
fn joint_complex(
    m: usize,
    ca: &SimplicialComplex,
    cb: &SimplicialComplex,
) -> Result<SimplicialComplex, Failure> {
    let mut faces = ca.maximal_faces().to_vec();
    faces.extend_from_slice(cb.maximal_faces());
    SimplicialComplex::new(m, &faces).map_err(lib_err)
}

fn build_set(spec: &RunSpec, m: usize) -> Result<DefiningSet, Failure> {
    let product = build_product(spec, m)?;
    let varied = match spec.variant {
        SetVariant::Product => product,
        SetVariant::Punctured => product.puncture_zero(),
        SetVariant::Complement => product.complement().map_err(lib_err)?,
    };
    if spec.subfield {
        varied.subfield_defining_set().map_err(lib_err)
    } else {
        Ok(varied)
    }
}

/// One human-readable clause naming the set being evaluated.
fn pipeline_phrase(spec: &RunSpec) -> String {
    let base = if spec.explicit {
        "product of explicit sets"
    } else if spec.delta_shared {
        "shared product"
    } else {
        "product of complexes"
    };
    let varied = match spec.variant {
        SetVariant::Product => format!("full {base}"),
        SetVariant::Punctured => format!("punctured {base}"),
        SetVariant::Complement => format!("complement of {base}"),
    };
    if spec.subfield {
        format!("{varied}, binary image")
    } else {
        varied
    }
}

fn render_json<T: Serialize>(report: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Failure::Io(format!("JSON encoding failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn fmt_bounds(b: &BoundReport) -> String {
    let mut line = format!(
        "griesmer_min_n={}, griesmer_code={}, griesmer_met={}",
        b.griesmer_min_n, b.griesmer_code, b.griesmer_met
    );
    if let Some(ok) = b.sphere_packing_ok {
        let _ = write!(line, ", sphere_packing_ok={ok}");
    }
    if let Some(p) = b.perfect {
        let _ = write!(line, ", perfect={p}");
    }
    if let Some(best) = b.best_known_d {
        let _ = write!(line, ", best_known_d={best}");
    }
    if let Some(opt) = b.distance_optimal {
        let _ = write!(line, ", distance_optimal={opt}");
    }
    if let Some(almost) = b.almost_optimal {
        let _ = write!(line, ", almost_optimal={almost}");
    }
    line
}

// ---------------------------------------------------------------------------
// wdist
// ---------------------------------------------------------------------------

/// JSON envelope for `wdist`.
#[derive(Serialize)]
struct WdistReport<'a> {
    spec: &'a RunSpec,
    field: FieldTag,
    elements: usize,
    n: u64,
    k: u64,
    d: u64,
    enumerator: String,
    distribution: &'a WeightDistribution,
    prediction: Option<&'a TheoremPrediction>,
    oracle: Option<&'a WeightDistribution>,
    verify_match: Option<bool>,
    bounds: Option<&'a BoundReport>,
}

fn run_wdist(spec: &RunSpec) -> Result<Output, Failure> {
    let m = need_m(spec)?;
    let set = build_set(spec, m)?;
    if set.is_empty() {
        return Err(Failure::Usage(format!(
            "the {} is empty: the code has length zero",
            pipeline_phrase(spec)
        )));
    }
    let table = load_table(spec)?;

    let oracle = match spec.mode {
        Mode::Oracle | Mode::Verify => Some(weight_distribution_bruteforce(&set).map_err(lib_err)?),
        Mode::Formula => None,
    };
    let prediction = match spec.mode {
        Mode::Formula | Mode::Verify => Some(formula_prediction(spec, m)?),
        Mode::Oracle => None,
    };

    let reported: &WeightDistribution = match (&oracle, &prediction) {
        (Some(o), _) => o,
        (None, Some(p)) => &p.distribution,
        (None, None) => unreachable!("some mode always runs"),
    };
    let verify_match = match (&oracle, &prediction) {
        (Some(o), Some(p)) => Some(*o == p.distribution),
        _ => None,
    };
    let field = if spec.subfield { FieldTag::F2 } else { FieldTag::F4 };
    let (n, k, d) = reported.parameters();
    let bounds = if k > 0 && d > 0 {
        Some(classify(field.size(), n, k, d, table.as_ref()))
    } else {
        None
    };

    let text = match spec.format {
        OutputFormat::Json => render_json(&WdistReport {
            spec,
            field,
            elements: set.len(),
            n,
            k,
            d,
            enumerator: reported.weight_enumerator_string(),
            distribution: reported,
            prediction: prediction.as_ref(),
            oracle: oracle.as_ref(),
            verify_match,
            bounds: bounds.as_ref(),
        })?,
        OutputFormat::Text => {
            let mut text = String::new();
            let _ = writeln!(
                text,
                "set: {} ({} elements, m={m})",
                pipeline_phrase(spec),
                set.len()
            );
            let _ = writeln!(text, "code: [{n}, {k}, {d}] over {field}");
            let _ = writeln!(text, "enumerator: {}", reported.weight_enumerator_string());
            let _ = writeln!(text, "counts:");
            for (w, c) in &reported.counts {
                let _ = writeln!(text, "  {w}: {c}");
            }
            if let Some(p) = &prediction {
                let _ = writeln!(
                    text,
                    "formula: {} (griesmer_family={}, one_weight={})",
                    p.theorem_id, p.flags.griesmer_code, p.flags.one_weight
                );
            }
            match verify_match {
                Some(true) => {
                    let _ = writeln!(text, "verify: MATCH");
                }
                Some(false) => {
                    let o = oracle.as_ref().expect("verify ran the oracle");
                    let p = prediction.as_ref().expect("verify ran the formula");
                    let _ = writeln!(text, "verify: MISMATCH");
                    let (on, ok_, od) = o.parameters();
                    let (pn, pk, pd) = p.distribution.parameters();
                    let _ = writeln!(
                        text,
                        "  oracle : [{on}, {ok_}, {od}] {}",
                        o.weight_enumerator_string()
                    );
                    let _ = writeln!(
                        text,
                        "  formula: [{pn}, {pk}, {pd}] {}",
                        p.distribution.weight_enumerator_string()
                    );
                }
                None => {}
            }
            if let Some(b) = &bounds {
                let _ = writeln!(text, "bounds: {}", fmt_bounds(b));
            }
            text
        }
    };
    Ok(Output {
        text,
        mismatch: verify_match == Some(false),
    })
}

/// Picks the closed form matching the spec's pipeline and evaluates it.
///
/// The non-shared forms need each operand to be the power set of a single
/// face; the shared forms need the joint complex to have exactly two
/// (incomparable) maximal faces.  The full-product variant reuses the
/// punctured form: the retained zero vector contributes a coordinate that
/// is zero in every codeword, so only the length moves.
fn formula_prediction(spec: &RunSpec, m: usize) -> Result<TheoremPrediction, Failure> {
    if spec.explicit {
        return Err(Failure::Usage(
            "closed forms are indexed by faces; explicit sets have none, use --mode oracle".into(),
        ));
    }
    let a_text = need_text(&spec.complex_a, "--A")?;
    let b_text = need_text(&spec.complex_b, "--B")?;
    let ca = parse_complex(m, a_text).map_err(lib_err)?;
    let cb = parse_complex(m, b_text).map_err(lib_err)?;
    let (a, b) = if spec.delta_shared {
        let delta = joint_complex(m, &ca, &cb)?;
        if let Some((a, b)) = delta.face_pair() {
            (a, b)
        } else if let Some(f) = delta.single_face() {
            (f, f)
        } else {
            return Err(Failure::Usage(
                "shared-product closed forms need exactly two maximal faces; use --mode oracle"
                    .into(),
            ));
        }
    } else {
        let single = |c: &SimplicialComplex, flag: &str| {
            c.single_face().ok_or_else(|| {
                Failure::Usage(format!(
                    "product closed forms need {flag} to have one maximal face; use --mode oracle"
                ))
            })
        };
        (single(&ca, "--A")?, single(&cb, "--B")?)
    };
    let strict = spec.strict_paper;
    let base = match (spec.delta_shared, spec.subfield, spec.variant) {
        (false, false, SetVariant::Complement) => closed_forms::thm_4_4(m, a, b),
        (false, false, _) => closed_forms::prop_4_2(m, a, b),
        (false, true, SetVariant::Complement) => closed_forms::thm_5_2(m, a, b),
        (false, true, _) => closed_forms::prop_5_1(m, a, b),
        (true, false, SetVariant::Complement) => closed_forms::thm_4_10(m, a, b, strict),
        (true, false, _) => closed_forms::prop_4_7(m, a, b, strict),
        (true, true, SetVariant::Complement) => closed_forms::prop_5_6(m, a, b, strict),
        (true, true, _) => closed_forms::prop_5_3(m, a, b, strict),
    }
    .map_err(lib_err)?;
    Ok(match spec.variant {
        SetVariant::Product => with_zero_coordinate(base),
        _ => base,
    })
}

fn with_zero_coordinate(mut prediction: TheoremPrediction) -> TheoremPrediction {
    prediction.distribution.n += 1;
    prediction
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ScanRow {
    m: usize,
    a: String,
    b: String,
    size_a: usize,
    size_b: usize,
    overlap: usize,
    n: u64,
    k: u64,
    d: u64,
    best_known_d: Option<u64>,
    distance_optimal: Option<bool>,
}

#[derive(Serialize)]
struct ScanReport<'a> {
    spec: &'a RunSpec,
    rows: Vec<ScanRow>,
}

/// Mask for the vertex range `lo..=hi` (1-based, empty when `lo > hi`).
fn range_face(lo: usize, hi: usize) -> SubsetMask {
    let mut mask = 0u32;
    for v in lo..=hi {
        mask |= 1 << (v - 1);
    }
    mask
}

fn run_scan(spec: &RunSpec) -> Result<Output, Failure> {
    let ms = if spec.m_values.is_empty() {
        match spec.m {
            Some(m) => vec![m],
            None => return Err(Failure::Usage("scan needs --m".into())),
        }
    } else {
        spec.m_values.clone()
    };
    for &m in &ms {
        if m == 0 || m > MAX_M {
            return Err(Failure::Usage(format!("--m {m} outside 1..={MAX_M}")));
        }
    }
    let table = load_table(spec)?;

    let mut rows = Vec::new();
    for &m in &ms {
        for size_a in 0..=m {
            for size_b in size_a..=m {
                let lo = (size_a + size_b).saturating_sub(m);
                for overlap in lo..=size_a {
                    if size_a == m && size_b == m && overlap == m {
                        // The unique degenerate class: both faces the full
                        // vertex set, whose product complement is empty.
                        continue;
                    }
                    let b = range_face(1, size_b);
                    let a = range_face(size_b - overlap + 1, size_b - overlap + size_a);
                    let prediction = closed_forms::thm_4_4(m, a, b).map_err(lib_err)?;
                    let (n, k, d) = prediction.distribution.parameters();
                    let best_known_d = table.as_ref().and_then(|t| t.lookup(4, n, k));
                    rows.push(ScanRow {
                        m,
                        a: face_to_string(a),
                        b: face_to_string(b),
                        size_a,
                        size_b,
                        overlap,
                        n,
                        k,
                        d,
                        best_known_d,
                        distance_optimal: best_known_d.map(|best| best == d),
                    });
                }
            }
        }
    }

    let text = match spec.format {
        OutputFormat::Json => render_json(&ScanReport { spec, rows })?,
        OutputFormat::Text => {
            let a_width = rows.iter().map(|r| r.a.len()).max().unwrap_or(1).max(1) + 2;
            let b_width = rows.iter().map(|r| r.b.len()).max().unwrap_or(1).max(1) + 2;
            let mut text = String::new();
            let mut last_m = usize::MAX;
            for row in &rows {
                if row.m != last_m {
                    last_m = row.m;
                    let _ = writeln!(
                        text,
                        "scan m={}: complement family, one row per face class",
                        row.m
                    );
                    let _ = writeln!(
                        text,
                        "{:a_width$}{:b_width$}{}",
                        "A", "B", "[n, k, d]"
                    );
                }
                let star = match row.distance_optimal {
                    Some(true) => "  *",
                    _ => "",
                };
                let _ = writeln!(
                    text,
                    "{:a_width$}{:b_width$}[{}, {}, {}]{star}",
                    row.a, row.b, row.n, row.k, row.d
                );
            }
            text
        }
    };
    Ok(Output {
        text,
        mismatch: false,
    })
}

// ---------------------------------------------------------------------------
// subfield
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SubfieldReport<'a> {
    spec: &'a RunSpec,
    defining_set: &'a DefiningSet,
    g: Vec<Vec<String>>,
    g1: Vec<String>,
    g2: Vec<String>,
    g1_plus_g2: Vec<String>,
    g_expanded: Vec<String>,
    expanded_set: &'a DefiningSet,
    quaternary: &'a WeightDistribution,
    quaternary_enumerator: String,
    binary: &'a WeightDistribution,
    binary_enumerator: String,
    binary_one_weight: bool,
}

fn f4_matrix_cells(g: &F4Matrix) -> Vec<Vec<String>> {
    (0..g.rows)
        .map(|r| (0..g.cols).map(|c| g.get(r, c).to_string()).collect())
        .collect()
}

fn binary_matrix_rows(mat: &BinaryMatrix) -> Vec<String> {
    (0..mat.rows)
        .map(|r| {
            (0..mat.cols)
                .map(|c| if mat.get(r, c) { '1' } else { '0' })
                .collect()
        })
        .collect()
}

/// The three binary component matrices of a quaternary matrix, entrywise
/// `e = e1 + w e2`: returns `(E1, E2, E1 + E2)`.
fn binary_components(g: &F4Matrix) -> (BinaryMatrix, BinaryMatrix, BinaryMatrix) {
    let mut g1 = BinaryMatrix::zero(g.rows, g.cols);
    let mut g2 = BinaryMatrix::zero(g.rows, g.cols);
    let mut g3 = BinaryMatrix::zero(g.rows, g.cols);
    for r in 0..g.rows {
        for c in 0..g.cols {
            let e = g.get(r, c);
            g1.set(r, c, e.a);
            g2.set(r, c, e.b);
            g3.set(r, c, e.a ^ e.b);
        }
    }
    (g1, g2, g3)
}

fn indented(block: &str) -> String {
    block
        .lines()
        .map(|line| format!("  {line}\n"))
        .collect::<String>()
}

fn run_subfield(spec: &RunSpec) -> Result<Output, Failure> {
    let m = need_m(spec)?;
    let set = build_set(spec, m)?;
    if set.is_empty() {
        return Err(Failure::Usage(format!(
            "the {} is empty: there is no matrix to expand",
            pipeline_phrase(spec)
        )));
    }
    let g = set.generator_matrix().map_err(lib_err)?;
    let (g1, g2, g3) = binary_components(&g);
    let expanded = subfield_generator_matrix(&g);
    let image = set.subfield_defining_set().map_err(lib_err)?;
    debug_assert_eq!(
        image.binary_generator_matrix().map_err(lib_err)?,
        expanded,
        "stacked expansion must agree with the expanded set's matrix"
    );
    let quaternary = weight_distribution_bruteforce(&set).map_err(lib_err)?;
    let binary = weight_distribution_bruteforce(&image).map_err(lib_err)?;
    let binary_one_weight = binary.counts.len() == 1;

    let text = match spec.format {
        OutputFormat::Json => render_json(&SubfieldReport {
            spec,
            defining_set: &set,
            g: f4_matrix_cells(&g),
            g1: binary_matrix_rows(&g1),
            g2: binary_matrix_rows(&g2),
            g1_plus_g2: binary_matrix_rows(&g3),
            g_expanded: binary_matrix_rows(&expanded),
            expanded_set: &image,
            quaternary: &quaternary,
            quaternary_enumerator: quaternary.weight_enumerator_string(),
            binary: &binary,
            binary_enumerator: binary.weight_enumerator_string(),
            binary_one_weight,
        })?,
        OutputFormat::Text => {
            let mut text = String::new();
            let _ = writeln!(
                text,
                "set: {} ({} elements, m={m})",
                pipeline_phrase(spec),
                set.len()
            );
            let _ = writeln!(text, "D = {set}");
            let _ = writeln!(text, "G =");
            text.push_str(&indented(&g.to_string()));
            let _ = writeln!(text, "G1 =");
            text.push_str(&indented(&g1.to_string()));
            let _ = writeln!(text, "G2 =");
            text.push_str(&indented(&g2.to_string()));
            let _ = writeln!(text, "G1+G2 =");
            text.push_str(&indented(&g3.to_string()));
            let _ = writeln!(text, "G(2) = [G2 over G1+G2] =");
            text.push_str(&indented(&expanded.to_string()));
            let _ = writeln!(text, "D(2) = {image}");
            let (qn, qk, qd) = quaternary.parameters();
            let _ = writeln!(
                text,
                "quaternary code: [{qn}, {qk}, {qd}], enumerator {}",
                quaternary.weight_enumerator_string()
            );
            let (bn, bk, bd) = binary.parameters();
            let _ = writeln!(
                text,
                "binary code: [{bn}, {bk}, {bd}], enumerator {}",
                binary.weight_enumerator_string()
            );
            if binary_one_weight {
                let _ = writeln!(text, "binary code is one-weight");
            }
            text
        }
    };
    Ok(Output {
        text,
        mismatch: false,
    })
}

// ---------------------------------------------------------------------------
// Spec-construction helpers shared with the integration tests
// ---------------------------------------------------------------------------
