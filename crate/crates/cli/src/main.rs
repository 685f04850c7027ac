//! `sncomp`: capacity bounds, code construction and verification for secure
//! network function computation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sncomp::code::{CodeDocument, LinearSecureCode};
use sncomp::construct::{construct_secure_code, rate, ConstructError, ConstructOptions, Construction, Scheme, SelectOptions};
use sncomp::function::{combined_upper_bound, Alphabet, EntropyBound, FunctionError, TabularFunction};
use sncomp::gf::{parse_matrix, Field, GfMatrix, LinalgError};
use sncomp::graph::{EdgeSet, GraphError, Network};
use sncomp::lattice::{algorithm2_bound, bruteforce_linear_bound, BoundValue, LatticeError, Limits};
use sncomp::report::{rational_string, to_json};
use sncomp::verify::{full_report, ReportOptions, SecurityReport, VerifyError, WiretapFamily};

#[derive(Parser)]
#[command(name = "sncomp", version, about = "Secure network function computation: bounds, codes, checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Upper bounds on the secure computing capacity.
    Bound(ProblemArgs),
    /// Build a linear secure network code.
    Construct(ConstructArgs),
    /// Check a serialized code for computability and security.
    Verify(VerifyArgs),
    /// Exhaustive reference values for cross-checking the bounds.
    Oracle(ProblemArgs),
    /// Bound, construction and verification in one run.
    Report(ConstructArgs),
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Network file.
    #[arg(long)]
    network: PathBuf,
    /// Target matrix `T` (one row per source).
    #[arg(long, conflicts_with = "target_table")]
    target_matrix: Option<PathBuf>,
    /// Security matrix `Υ`; defaults to the identity.
    #[arg(long)]
    security_matrix: Option<PathBuf>,
    /// Target function as a table.
    #[arg(long, required_unless_present = "target_matrix")]
    target_table: Option<PathBuf>,
    /// Security function as a table, or `identity` (the default).
    #[arg(long)]
    security_table: Option<String>,
    /// Size of the edge alphabet `|B|` for tabular targets; defaults to the
    /// first input alphabet.
    #[arg(long)]
    edge_alphabet: Option<usize>,
    /// Reinterpret matrix entries over the field of this order.
    #[arg(long)]
    field: Option<u32>,
    /// Security level `r`.
    #[arg(long, default_value_t = 0)]
    level: usize,
    /// Most edges for exhaustive enumerations.
    #[arg(long)]
    limit_edges: Option<usize>,
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ConstructArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Symbols per source and block `R`; defaults to the minimum source cut.
    #[arg(long)]
    rate: Option<usize>,
    /// Seed for the base code and the random search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random transforms tried when the sequential scheme fails.
    #[arg(long, default_value_t = sncomp::construct::DEFAULT_SEARCH_BUDGET)]
    budget: usize,
    /// Use only the sequential scheme.
    #[arg(long)]
    no_search: bool,
    /// Let the random search draw a separate block per source.
    #[arg(long)]
    distinct_blocks: bool,
    /// Realization budget of the mutual-information oracle (report only).
    #[arg(long, default_value_t = sncomp::verify::EXHAUSTIVE_LIMIT)]
    mi_limit: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    All,
    Primary,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code document, or the output of `construct`.
    #[arg(long)]
    code: PathBuf,
    /// Security matrix `Υ`; defaults to the one stored with the code.
    #[arg(long)]
    security_matrix: Option<PathBuf>,
    /// Security level; defaults to the level the code was built for.
    #[arg(long)]
    level: Option<usize>,
    #[arg(long, value_enum, default_value_t = Family::All)]
    family: Family,
    #[arg(long, default_value_t = sncomp::verify::EXHAUSTIVE_LIMIT)]
    mi_limit: u64,
    /// Seed for the sampled computability check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    TooLarge(String),
    FieldTooSmall(String),
    SearchExhausted(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> (&'static str, u8) {
        match self {
            CliError::Parse(_) => ("parse", 2),
            CliError::TooLarge(_) => ("instance_too_large", 3),
            CliError::FieldTooSmall(_) => ("field_too_small", 4),
            CliError::SearchExhausted(_) => ("search_exhausted", 5),
            CliError::Other(_) => ("error", 1),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::TooLarge(m) | CliError::FieldTooSmall(m) | CliError::SearchExhausted(m) | CliError::Other(m) => m,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Parse { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<FunctionError> for CliError {
    fn from(e: FunctionError) -> Self {
        match e {
            FunctionError::Parse { .. } => CliError::Parse(e.to_string()),
            FunctionError::InstanceTooLarge { .. } => CliError::TooLarge(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::InstanceTooLarge { .. } => CliError::TooLarge(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::FieldTooSmall { .. } | ConstructError::CandidateLimit { .. } => CliError::FieldTooSmall(e.to_string()),
            ConstructError::SearchExhausted { .. } => CliError::SearchExhausted(e.to_string()),
            ConstructError::Lattice(l) => l.into(),
            ConstructError::Graph(g) => g.into(),
            ConstructError::Linalg(l) => l.into(),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::InstanceTooLarge { .. } => CliError::TooLarge(e.to_string()),
            VerifyError::Lattice(l) => l.into(),
            VerifyError::Function(f) => f.into(),
            _ => CliError::Other(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path, field: Option<&Field>) -> Result<GfMatrix, CliError> {
    let m = parse_matrix(&read(path)?)?;
    let Some(f) = field else { return Ok(m) };
    let rows: Vec<Vec<u32>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|v| if f.degree() == 1 { f.from_int(v as i64) } else { v }).collect())
        .collect();
    GfMatrix::from_rows(f, &rows).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn limits(edges: Option<usize>) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = edges {
        l.oracle_edges = n;
        l.bruteforce_edges = n;
        l.general_edges = n;
    }
    l
}

struct Problem {
    net: Network,
    target: Target,
    security: Option<GfMatrix>,
    limits: Limits,
}

enum Target {
    Matrix(GfMatrix),
    Table {
        f: TabularFunction,
        zeta: TabularFunction,
        b_size: usize,
    },
}

fn load_problem(a: &ProblemArgs) -> Result<Problem, CliError> {
    let net = Network::parse(&read(&a.network)?)?;
    let field = a.field.map(Field::with_order).transpose()?;
    let (target, security) = match (&a.target_matrix, &a.target_table) {
        (Some(t), _) => {
            let t = load_matrix(t, field.as_ref())?;
            let u = a.security_matrix.as_ref().map(|p| load_matrix(p, Some(t.field()))).transpose()?;
            (Target::Matrix(t), u)
        }
        (None, Some(path)) => {
            let f = TabularFunction::parse(&read(path)?)?;
            let zeta = match a.security_table.as_deref() {
                None | Some("identity") => TabularFunction::identity(f.inputs().iter().map(|x| Alphabet::new(x.size)).collect())?,
                Some(p) => TabularFunction::parse(&read(Path::new(p))?)?,
            };
            let b_size = a.edge_alphabet.unwrap_or(f.inputs()[0].size);
            (Target::Table { f, zeta, b_size }, None)
        }
        (None, None) => return Err(CliError::Other("a target matrix or table is required".into())),
    };
    Ok(Problem {
        net,
        target,
        security,
        limits: limits(a.limit_edges),
    })
}

fn edge_ids(net: &Network, s: &EdgeSet) -> Value {
    json!(net.edge_ids(s))
}

fn linear_witness(net: &Network, b: &BoundValue) -> Value {
    json!({ "wiretap": edge_ids(net, &b.wiretap), "cut": edge_ids(net, &b.cut) })
}

fn entropy_value(b: &EntropyBound) -> Value {
    if b.is_finite() {
        json!(b.value)
    } else {
        Value::Null
    }
}

fn entropy_witness(net: &Network, b: &EntropyBound) -> Value {
    match (&b.wiretap, &b.cut) {
        (Some(w), Some(c)) => json!({ "wiretap": edge_ids(net, w), "cut": edge_ids(net, c) }),
        _ => Value::Null,
    }
}

fn bound(a: &ProblemArgs) -> Result<Value, CliError> {
    let p = load_problem(a)?;
    let net = &p.net;
    Ok(match &p.target {
        Target::Matrix(t) => {
            let b = algorithm2_bound(net, t, a.level, &p.limits)?;
            json!({
                "command": "bound",
                "level": a.level,
                "linear_bound": rational_string(&b.value),
                "witnesses": { "linear": linear_witness(net, &b) },
            })
        }
        Target::Table { f, zeta, b_size } => {
            let c = combined_upper_bound(net, f, zeta, a.level, *b_size, &p.limits)?;
            json!({
                "command": "bound",
                "level": a.level,
                "general_bound": entropy_value(&c.general),
                "pinned_entropy_bound": c.pinned.as_ref().map(entropy_value),
                "combined_bound": if c.value.is_finite() { json!(c.value) } else { Value::Null },
                "witnesses": {
                    "general": entropy_witness(net, &c.general),
                    "pinned": c.pinned.as_ref().map(|b| entropy_witness(net, b)),
                },
            })
        }
    })
}

fn oracle(a: &ProblemArgs) -> Result<Value, CliError> {
    let p = load_problem(a)?;
    let net = &p.net;
    Ok(match &p.target {
        Target::Matrix(t) => {
            let brute = bruteforce_linear_bound(net, t, a.level, &p.limits)?;
            let alg = algorithm2_bound(net, t, a.level, &p.limits)?;
            json!({
                "command": "oracle",
                "level": a.level,
                "bruteforce_linear_bound": rational_string(&brute.value),
                "linear_bound": rational_string(&alg.value),
                "agree": brute.value == alg.value,
                "witnesses": { "bruteforce": linear_witness(net, &brute) },
            })
        }
        Target::Table { f, zeta, b_size } => {
            let c = combined_upper_bound(net, f, zeta, a.level, *b_size, &p.limits)?;
            json!({
                "command": "oracle",
                "level": a.level,
                "general_bound": entropy_value(&c.general),
                "witnesses": { "general": entropy_witness(net, &c.general) },
            })
        }
    })
}

fn run_construct(a: &ConstructArgs) -> Result<(Problem, Construction), CliError> {
    let p = load_problem(&a.problem)?;
    let Target::Matrix(t) = &p.target else {
        return Err(CliError::Other("construction needs a target matrix".into()));
    };
    let upsilon = p.security.clone().unwrap_or_else(|| GfMatrix::identity(t.field(), t.rows()));
    let opts = ConstructOptions {
        rate: a.rate,
        seed: a.seed,
        select: SelectOptions::default(),
        search_budget: a.budget,
        distinct_blocks: a.distinct_blocks,
        allow_search: !a.no_search,
        ..ConstructOptions::default()
    };
    let c = construct_secure_code(&p.net, t, &upsilon, a.problem.level, &opts)?;
    Ok((p, c))
}

fn construction_json(net: &Network, c: &Construction) -> Value {
    json!({
        "c_min": c.c_min,
        "capacity_lower_bound": rational_string(&c.capacity_lower_bound),
        "field_size_bound": c.field_size_bound,
        "scheme": match c.scheme { Scheme::Sequential => "sequential", Scheme::RandomSearch => "random_search" },
        "rate": rational_string(&rate(&c.code.params)),
        "kept_sources": c.kept_sources.iter().map(|&i| net.node_name(net.sources()[i])).collect::<Vec<_>>(),
        "transform": c.transform.blocks.iter().map(GfMatrix::to_rows).collect::<Vec<_>>(),
        "code": serde_json::to_value(c.code.to_document()).expect("serializable"),
    })
}

fn construct(a: &ConstructArgs) -> Result<Value, CliError> {
    let (p, c) = run_construct(a)?;
    let mut v = construction_json(&p.net, &c);
    v["command"] = json!("construct");
    Ok(v)
}

fn report_json(r: &SecurityReport) -> Value {
    serde_json::to_value(r).expect("serializable")
}

fn report(a: &ConstructArgs) -> Result<Value, CliError> {
    let (p, c) = run_construct(a)?;
    let b = algorithm2_bound(&c.code.network, &c.code.target, a.problem.level, &p.limits)?;
    let upsilon = c.code.security.clone().expect("constructed codes carry their security matrix");
    let opts = ReportOptions {
        mi_limit: a.mi_limit,
        ..ReportOptions::new(a.problem.level)
    };
    let r = full_report(&c.code, &upsilon, &opts)?;
    Ok(json!({
        "command": "report",
        "level": a.problem.level,
        "bounds": {
            "linear_bound": rational_string(&b.value),
            "capacity_lower_bound": rational_string(&c.capacity_lower_bound),
            "witnesses": { "linear": linear_witness(&c.code.network, &b) },
        },
        "construction": construction_json(&p.net, &c),
        "verification": report_json(&r),
    }))
}

fn verify(a: &VerifyArgs) -> Result<Value, CliError> {
    let text = read(&a.code)?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", a.code.display())))?;
    let doc = raw.get("code").cloned().unwrap_or(raw);
    let doc: CodeDocument = serde_json::from_value(doc).map_err(|e| CliError::Parse(format!("{}: {e}", a.code.display())))?;
    let code = LinearSecureCode::from_document(&doc).map_err(|e| CliError::Parse(e.to_string()))?;
    let upsilon = match &a.security_matrix {
        Some(p) => load_matrix(p, Some(&code.field))?,
        None => code
            .security
            .clone()
            .ok_or_else(|| CliError::Other("the code carries no security matrix; pass --security-matrix".into()))?,
    };
    let opts = ReportOptions {
        family: match a.family {
            Family::All => WiretapFamily::All,
            Family::Primary => WiretapFamily::Primary,
        },
        mi_limit: a.mi_limit,
        check: sncomp::verify::CheckOptions {
            seed: a.seed,
            ..Default::default()
        },
        ..ReportOptions::new(a.level.unwrap_or(code.params.r))
    };
    let mut v = report_json(&full_report(&code, &upsilon, &opts)?);
    v["command"] = json!("verify");
    Ok(v)
}

fn emit(doc: &Value, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = to_json(doc);
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Other(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bound(a) => bound(a).and_then(|v| emit(&v, a.out.as_ref())),
        Command::Oracle(a) => oracle(a).and_then(|v| emit(&v, a.out.as_ref())),
        Command::Construct(a) => construct(a).and_then(|v| emit(&v, a.problem.out.as_ref())),
        Command::Report(a) => report(a).and_then(|v| emit(&v, a.problem.out.as_ref())),
        Command::Verify(a) => verify(a).and_then(|v| emit(&v, a.out.as_ref())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, status) = e.code();
            eprint!("{}", to_json(&json!({ "error": { "code": code, "message": e.message() } })));
            ExitCode::from(status)
        }
    }
}
