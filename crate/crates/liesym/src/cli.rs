//! Command-line front end: parse a triple description, run operations and
//! suites, and emit a single machine-readable JSON document on stdout.
//!
//! Exit codes: 0 on success, 1 on a domain failure (e.g. a branch-cut
//! decomposition), 2 on usage or configuration errors.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::involution::{self, catalog, Involution, SymmetricTriple};
use crate::liegroup::{GroupElement, GroupSpec, Verdict, Witness};
use crate::numkernel::{C64, DenseMatrix};
use crate::symmcore::{MembershipSet, SamplerConfig, Su2CosetClass, SymmError};
use crate::tolerance::{self, Tolerances};
use crate::verify::{self, SuiteConfig, SuiteKind};

#[derive(Parser)]
#[command(
    name = "liesym",
    version,
    about = "Symmetric-space realizations P = exp(p) inside classical matrix groups",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ElementArgs {
    /// Inline matrix: JSON nested arrays of reals or [re, im] pairs, or
    /// complex literals like [[0.6+0i,0.8i],[0.8i,0.6-0i]].
    #[arg(long, conflicts_with = "element_file")]
    element: Option<String>,
    /// Read the matrix from a file instead.
    #[arg(long, value_name = "PATH")]
    element_file: Option<PathBuf>,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Triple configuration file (see the triples/ directory).
    #[arg(long, value_name = "PATH.json")]
    triple: PathBuf,
    /// Override the membership/rank tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Also write the JSON document to this path.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor g = p·k with p in P and k fixed by sigma.
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
    /// Membership of an element in P, Q or R, with a certificate when In.
    Membership {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        element: ElementArgs,
        /// Which realization to test.
        #[arg(long, value_parser = ["P", "Q", "R"])]
        set: String,
    },
    /// dim ker(dsigma + Ad(g)), the dimension of the component of R at g.
    ComponentDim {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
    /// Sample the intersection of the coset gK with P (dim k <= 2).
    Intersect {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        element: ElementArgs,
        /// Grid candidates over K.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Closed-form classification of a coset pK in SU(2)/SO(2).
    ClassifySu2 {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        element: ElementArgs,
    },
    /// Run a randomized verification suite.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// chain | sandwich | equivariance | decompose | dims | su2_example |
        /// transversality_prevalence
        #[arg(long)]
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Sampling scale (standard deviation of algebra elements).
        #[arg(long)]
        scale: Option<f64>,
    },
    /// Reproduce a built-in worked case: su2, so5, or sl2-minus-identity.
    Example {
        #[arg(value_parser = ["su2", "so5", "sl2-minus-identity"])]
        name: String,
        /// Also write the JSON document to this path.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

enum CliError {
    /// Bad arguments, unreadable or invalid configuration: exit 2.
    Usage(String),
    /// The operation itself failed on valid input: exit 1.
    Domain(String),
}

impl From<SymmError> for CliError {
    fn from(err: SymmError) -> Self {
        CliError::Domain(err.to_string())
    }
}

/// Entry point used by the `liesym` binary; returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    let out_path = out_path(&cli.command);
    match execute(cli.command) {
        Ok(doc) => {
            emit(&doc, out_path.as_deref());
            0
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Domain(msg)) => {
            let doc = json!({
                "tool_version": env!("CARGO_PKG_VERSION"),
                "error": msg,
            });
            emit(&doc, out_path.as_deref());
            eprintln!("error: {msg}");
            1
        }
    }
}

fn out_path(command: &Command) -> Option<PathBuf> {
    match command {
        Command::Decompose { common, .. }
        | Command::Membership { common, .. }
        | Command::ComponentDim { common, .. }
        | Command::Intersect { common, .. }
        | Command::ClassifySu2 { common, .. }
        | Command::Verify { common, .. } => common.out.clone(),
        Command::Example { out, .. } => out.clone(),
    }
}

fn emit(doc: &Value, out: Option<&Path>) {
    let text = serde_json::to_string_pretty(doc).expect("reports serialize");
    println!("{text}");
    if let Some(path) = out {
        if let Err(err) = std::fs::write(path, text.as_bytes()) {
            eprintln!("warning: could not write {}: {err}", path.display());
        }
    }
}

fn execute(command: Command) -> Result<Value, CliError> {
    match command {
        Command::Decompose { common, element } => {
            let triple = load_triple(&common)?;
            let g = load_element(&triple, &element)?;
            let d = triple.decompose(&g)?;
            Ok(report(&triple, "decompose", 0, json!({
                "p": matrix_to_json(d.p.matrix()),
                "k": matrix_to_json(d.k.matrix()),
                "x": matrix_to_json(d.x.matrix()),
                "residual": d.residual,
            })))
        }
        Command::Membership { common, element, set } => {
            let triple = load_triple(&common)?;
            let g = load_element(&triple, &element)?;
            let set = match set.as_str() {
                "P" => MembershipSet::P,
                "Q" => MembershipSet::Q,
                "R" => MembershipSet::R,
                other => return Err(CliError::Usage(format!("unknown set {other}"))),
            };
            let verdict = triple.membership(set, &g);
            let mut payload = json!({
                "set": format!("{set:?}"),
                "verdict": verdict_str(verdict.verdict),
                "witness": witness_to_json(&verdict.witness),
            });
            // A P-certificate X converts to the Q-witness h = exp(X/2).
            if set == MembershipSet::Q {
                if let Some(x) = verdict.certificate() {
                    payload["q_witness_h"] = matrix_to_json(x.scale(0.5).exp().matrix());
                }
            }
            Ok(report(&triple, "membership", 0, payload))
        }
        Command::ComponentDim { common, element } => {
            let triple = load_triple(&common)?;
            let g = load_element(&triple, &element)?;
            let rep = triple.component_dim(&g)?;
            Ok(report(&triple, "component-dim", 0, json!({
                "in_R": rep.in_r,
                "dim": rep.dim,
            })))
        }
        Command::Intersect { common, element, trials, seed } => {
            let triple = load_triple(&common)?;
            let g = load_element(&triple, &element)?;
            let sampler = SamplerConfig {
                grid_points: trials.unwrap_or(SamplerConfig::default().grid_points),
                refine_tol: common.tol.map_or(SamplerConfig::default().refine_tol, |t| t.min(1e-9)),
                seed: seed.unwrap_or(0),
            };
            let rep = triple.intersect_coset(&g, &sampler)?;
            Ok(report(&triple, "intersect", sampler.seed, json!({
                "count": rep.points.len(),
                "points": rep.points.iter().map(|p| matrix_to_json(p.matrix())).collect::<Vec<_>>(),
                "transversal": rep.transversal,
                "exhaustive": rep.exhaustive,
                "bound_K_cap_P": rep.bound_k_cap_p,
            })))
        }
        Command::ClassifySu2 { common, element } => {
            let triple = load_triple(&common)?;
            let p = load_element(&triple, &element)?;
            let class = triple.su2_coset_classify(&p)?;
            let payload = match class {
                Su2CosetClass::Generic { points } => json!({
                    "class": "generic",
                    "exhaustive": true,
                    "points": points.iter().map(|q| matrix_to_json(q.matrix())).collect::<Vec<_>>(),
                }),
                Su2CosetClass::Antipodal => json!({
                    "class": "antipodal",
                    "exhaustive": true,
                    "points": "the whole coset pK lies inside P",
                }),
            };
            Ok(report(&triple, "classify-su2", 0, payload))
        }
        Command::Verify { common, suite, trials, seed, scale, .. } => {
            let triple = load_triple(&common)?;
            let kind = SuiteKind::parse(&suite)
                .ok_or_else(|| CliError::Usage(format!("unknown suite {suite}")))?;
            let config = SuiteConfig {
                trials: trials.unwrap_or(SuiteConfig::default().trials),
                seed: seed.unwrap_or(0),
                scale: scale.unwrap_or(1.0),
            };
            let suite_report = verify::run_suite(&triple, kind, &config)?;
            let payload = serde_json::to_value(&suite_report)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            Ok(report(&triple, "verify", config.seed, payload))
        }
        Command::Example { name, .. } => run_example(&name),
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::In => "in",
        Verdict::Out => "out",
        Verdict::Indeterminate => "indeterminate",
    }
}

fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::LogCertificate(x) => json!({
            "log_certificate": matrix_to_json(x.matrix()),
        }),
        Witness::Residual { relation, residual } => json!({
            "relation": relation,
            "residual": residual,
        }),
        Witness::Failure { reason } => json!({ "reason": reason }),
    }
}

fn report(triple: &SymmetricTriple, command: &str, seed: u64, payload: Value) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "triple_id": triple.id(),
        "command": command,
        "seed": seed,
        "tolerances": {
            "membership": triple.tolerances().membership,
            "rank": triple.tolerances().rank,
            "kernel": tolerance::KERNEL,
        },
        "result": payload,
    })
}

/// Configuration for one triple, as shipped under `triples/`.
#[derive(Debug, Deserialize)]
struct TripleConfig {
    family: String,
    n: usize,
    #[serde(default)]
    signature: Option<(usize, usize)>,
    involution: InvolutionConfig,
}

#[derive(Debug, Deserialize)]
struct InvolutionConfig {
    kind: String,
    #[serde(default)]
    s: Option<Value>,
}

fn load_triple(common: &CommonArgs) -> Result<SymmetricTriple, CliError> {
    let text = std::fs::read_to_string(&common.triple)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", common.triple.display())))?;
    let config: TripleConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid triple config: {e}")))?;
    let triple = build_triple(&config)?;
    Ok(match common.tol {
        Some(tol) if tol > 0.0 => triple.with_tolerances(Tolerances::uniform(tol)),
        Some(_) => return Err(CliError::Usage("--tol must be positive".into())),
        None => triple,
    })
}

fn build_triple(config: &TripleConfig) -> Result<SymmetricTriple, CliError> {
    let spec = match config.family.to_ascii_lowercase().as_str() {
        "sl_real" | "sl(n,r)" | "sl" => GroupSpec::sl_real(config.n),
        "su" => GroupSpec::su(config.n),
        "so" => GroupSpec::so(config.n),
        "so_indefinite" | "so(p,q)" => {
            let (p, q) = config.signature.ok_or_else(|| {
                CliError::Usage("SO_indefinite requires a signature [p, q]".into())
            })?;
            if p + q != config.n {
                return Err(CliError::Usage("signature must satisfy p + q = n".into()));
            }
            GroupSpec::so_indefinite(p, q)
        }
        other => return Err(CliError::Usage(format!("unknown family {other}"))),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let involution = match config.involution.kind.to_ascii_lowercase().replace('-', "_").as_str() {
        "transposeinverse" | "transpose_inverse" => Involution::transpose_inverse(),
        "conjugateinverse" | "conjugate_inverse" => Involution::conjugate_inverse(),
        "inner" => {
            let s_value = config
                .involution
                .s
                .as_ref()
                .ok_or_else(|| CliError::Usage("Inner involution requires s".into()))?;
            let s_matrix = json_to_matrix(s_value)
                .map_err(|e| CliError::Usage(format!("invalid s matrix: {e}")))?;
            let s = GroupElement::new(spec, s_matrix)
                .map_err(|e| CliError::Usage(format!("s is not in the group: {e}")))?;
            Involution::inner(s).map_err(|e| CliError::Usage(e.to_string()))?
        }
        other => return Err(CliError::Usage(format!("unknown involution kind {other}"))),
    };

    involution::split_algebra(spec, involution).map_err(|e| CliError::Usage(e.to_string()))
}

fn load_element(triple: &SymmetricTriple, args: &ElementArgs) -> Result<GroupElement, CliError> {
    let text = match (&args.element, &args.element_file) {
        (Some(inline), None) => inline.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
        _ => {
            return Err(CliError::Usage(
                "provide the element with exactly one of --element or --element-file".into(),
            ))
        }
    };
    let m = parse_matrix_text(&text).map_err(CliError::Usage)?;
    GroupElement::new(triple.spec(), m)
        .map_err(|e| CliError::Usage(format!("element rejected: {e}")))
}

/// Accepts strict JSON (numbers or [re, im] pairs) and the human complex
/// literal form [[0.6+0i,0.8i],[0.8i,0.6-0i]].
pub fn parse_matrix_text(text: &str) -> Result<DenseMatrix, String> {
    if let Ok(value) = serde_json::from_str::<Value>(text) {
        return json_to_matrix(&value);
    }
    parse_complex_literal_matrix(text)
}

fn json_to_matrix(value: &Value) -> Result<DenseMatrix, String> {
    let rows = value.as_array().ok_or("matrix must be an array of rows")?;
    if rows.is_empty() {
        return Err("matrix has no rows".into());
    }
    let mut entries: Vec<C64> = Vec::new();
    let mut cols = None;
    for row in rows {
        let row = row.as_array().ok_or("each row must be an array")?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => return Err("ragged rows".into()),
            _ => {}
        }
        for entry in row {
            entries.push(json_to_complex(entry)?);
        }
    }
    let cols = cols.unwrap();
    if cols == 0 {
        return Err("matrix has no columns".into());
    }
    DenseMatrix::from_complex(rows.len(), cols, &entries).map_err(|e| e.to_string())
}

fn json_to_complex(entry: &Value) -> Result<C64, String> {
    match entry {
        Value::Number(x) => Ok(C64::new(x.as_f64().ok_or("non-finite number")?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => {
            let re = pair[0].as_f64().ok_or("non-numeric real part")?;
            let im = pair[1].as_f64().ok_or("non-numeric imaginary part")?;
            Ok(C64::new(re, im))
        }
        Value::String(s) => parse_complex_scalar(s),
        _ => Err(format!("unsupported matrix entry {entry}")),
    }
}

fn parse_complex_literal_matrix(text: &str) -> Result<DenseMatrix, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or("expected [[...],[...]] matrix syntax")?;
    let mut entries: Vec<C64> = Vec::new();
    let mut cols = None;
    let rows: Vec<&str> = inner.split("],[").collect();
    for row in &rows {
        let cells: Vec<&str> = row.split(',').collect();
        match cols {
            None => cols = Some(cells.len()),
            Some(c) if c != cells.len() => return Err("ragged rows".into()),
            _ => {}
        }
        for cell in cells {
            entries.push(parse_complex_scalar(cell)?);
        }
    }
    let cols = cols.ok_or("matrix has no rows")?;
    DenseMatrix::from_complex(rows.len(), cols, &entries).map_err(|e| e.to_string())
}

/// Parses literals like `0.6`, `0.8i`, `-1.2e-3+4i`, `0.6-0i`, `i`, `-i`.
fn parse_complex_scalar(text: &str) -> Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty matrix entry".into());
    }
    if !s.ends_with('i') {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|e| format!("bad entry {s}: {e}"));
    }
    let body = &s[..s.len() - 1];
    // Split into real and imaginary at the last sign that is neither leading
    // nor part of an exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx] as char;
        if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
            split = Some(idx);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|e| format!("bad entry {s}: {e}"))?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|e| format!("bad entry {s}: {e}"))?,
    };
    Ok(C64::new(re, im))
}

/// Real-collapsed matrices serialize as plain reals; otherwise [re, im].
pub fn matrix_to_json(m: &DenseMatrix) -> Value {
    let collapse = m.is_real() || m.max_imag() <= tolerance::REAL_COLLAPSE;
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let z = m.get(i, j);
            if collapse {
                row.push(json!(z.re));
            } else {
                row.push(json!([z.re, z.im]));
            }
        }
        rows.push(Value::Array(row));
    }
    Value::Array(rows)
}

fn run_example(name: &str) -> Result<Value, CliError> {
    match name {
        "su2" => {
            let triple = catalog::su2();
            let e = GroupElement::identity(triple.spec());
            let k_cap_p = match triple.su2_coset_classify(&e)? {
                Su2CosetClass::Generic { points } => points
                    .iter()
                    .map(|q| matrix_to_json(q.matrix()))
                    .collect::<Vec<_>>(),
                Su2CosetClass::Antipodal => unreachable!("identity coset is generic"),
            };
            // A generic coset and the antipodal coset.
            let p = GroupElement::new(
                triple.spec(),
                DenseMatrix::from_complex(
                    2,
                    2,
                    &[C64::new(0.6, 0.0), C64::new(0.0, 0.8), C64::new(0.0, 0.8), C64::new(0.6, 0.0)],
                )
                .unwrap(),
            )
            .map_err(|e| CliError::Domain(e.to_string()))?;
            let generic = match triple.su2_coset_classify(&p)? {
                Su2CosetClass::Generic { points } => json!({
                    "p": matrix_to_json(p.matrix()),
                    "class": "generic",
                    "points": points.iter().map(|q| matrix_to_json(q.matrix())).collect::<Vec<_>>(),
                }),
                Su2CosetClass::Antipodal => json!({ "class": "unexpected" }),
            };
            let p0 = GroupElement::new(
                triple.spec(),
                DenseMatrix::from_complex(
                    2,
                    2,
                    &[C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
                )
                .unwrap(),
            )
            .map_err(|e| CliError::Domain(e.to_string()))?;
            let antipodal_class = matches!(triple.su2_coset_classify(&p0)?, Su2CosetClass::Antipodal);
            Ok(report(&triple, "example su2", 0, json!({
                "K_cap_P": k_cap_p,
                "generic_coset": generic,
                "antipodal_coset": {
                    "p": matrix_to_json(p0.matrix()),
                    "class": if antipodal_class { "antipodal" } else { "unexpected" },
                },
            })))
        }
        "so5" => {
            let triple = catalog::so5_inner();
            let e = GroupElement::identity(triple.spec());
            let g0 = GroupElement::new(
                triple.spec(),
                DenseMatrix::from_diagonal(&[-1.0, -1.0, -1.0, -1.0, 1.0]),
            )
            .map_err(|e| CliError::Domain(e.to_string()))?;
            let at_e = triple.component_dim(&e)?;
            let at_g0 = triple.component_dim(&g0)?;
            Ok(report(&triple, "example so5", 0, json!({
                "s": matrix_to_json(
                    triple.involution().inner_element().expect("inner involution").matrix()
                ),
                "dim_at_identity": at_e.dim,
                "g0": matrix_to_json(g0.matrix()),
                "dim_at_g0": at_g0.dim,
            })))
        }
        "sl2-minus-identity" => {
            let triple = catalog::sl2();
            let minus_i = GroupElement::new(
                triple.spec(),
                DenseMatrix::from_diagonal(&[-1.0, -1.0]),
            )
            .map_err(|e| CliError::Domain(e.to_string()))?;
            let in_r = triple.membership_r(&minus_i);
            let in_p = triple.membership_p(&minus_i);
            Ok(report(&triple, "example sl2-minus-identity", 0, json!({
                "element": matrix_to_json(minus_i.matrix()),
                "membership_R": verdict_str(in_r.verdict),
                "membership_P": verdict_str(in_p.verdict),
                "witness_P": witness_to_json(&in_p.witness),
            })))
        }
        other => Err(CliError::Usage(format!("unknown example {other}"))),
    }
}
