use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use mdscoset::code::{Budget, CosetCensus};
use mdscoset::corpus::CorpusFilter;
use mdscoset::covering::{count_deep_hole_cosets, mcf_classify, saturating_set_report};
use mdscoset::formulas::{
    bonneau_original, bonneau_original_raw, bonneau_transformed, bonneau_transformed_raw, dist_weight1,
    dist_weight2, dist_weight2_identical, dist_weight_d1, dist_weight_d2, dist_weight_mid, prefix_census,
    weight2_identical_check, LowWeightPrefix,
};
use mdscoset::geometry::{bisecant_census, build_arc_with, geometry_code_bridge};
use mdscoset::gf::{prime_power, Field};
use mdscoset::mds::{Family, MdsSpec};
use mdscoset::parse::{parse_arc, parse_counts, parse_index_list, parse_poly};
use mdscoset::serial::{format_rational, CensusDoc, DistributionDoc, McfDoc, PointCensusDoc, VerifyDoc};
use mdscoset::verify::{self, Theorem, VerifyOptions};
use mdscoset::Error;

mod render;

#[derive(Parser)]
#[command(name = "mdscoset", version, about = "Exact coset weight distributions of MDS codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the result to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Coset weight distributions from closed forms or from a low-weight prefix.
    Dist(DistArgs),
    /// Coset census of a code, or bisecant census of a plane arc.
    #[command(subcommand)]
    Census(CensusCommand),
    /// Plane-arc computations (same as `census geometry`).
    #[command(subcommand)]
    Geometry(GeometryCommand),
    /// Multiple-covering classification.
    #[command(subcommand)]
    Covering(CoveringCommand),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClosedForm {
    /// Weight-1 cosets.
    W1,
    /// Weight-(d-1) cosets.
    Wd1,
    /// Weight-(d-2) cosets; needs --b.
    Wd2,
    /// Weight-2 cosets, d >= 5; needs --b.
    W2,
    /// The common weight-2 distribution when all weight-2 cosets agree.
    W2Identical,
    /// Weight 2 <= W <= d-3; needs --W and --knowns.
    Mid,
}

#[derive(Args)]
#[command(group(ArgGroup::new("method").required(true).args(["closed_form", "bonneau", "original"])))]
struct DistArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    q: u32,
    #[arg(long, value_enum)]
    closed_form: Option<ClosedForm>,
    /// General formula from B_0..B_{d-2}.
    #[arg(long, requires = "prefix")]
    bonneau: bool,
    /// The formula before its summation order is changed.
    #[arg(long, requires = "prefix")]
    original: bool,
    /// B_0..B_{d-2}, comma separated.
    #[arg(long, value_name = "LIST")]
    prefix: Option<String>,
    /// B_{d-2} for the wd2 and w2 forms.
    #[arg(long)]
    b: Option<String>,
    /// Coset weight W for the mid form.
    #[arg(long = "W", alias = "weight")]
    w: Option<usize>,
    /// B_{d-W}..B_{d-2} for the mid form.
    #[arg(long, value_name = "LIST")]
    knowns: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Enumerate the ambient space.
    Ambient,
    /// Count vectors of weight <= d-2 per syndrome, then apply the formula.
    Prefix,
    /// Ambient when within budget, prefix otherwise.
    Auto,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long, default_value = "gdrs")]
    family: String,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    d: usize,
    /// 0-based family-matrix columns to remove, comma separated.
    #[arg(long, value_name = "LIST")]
    remove: Option<String>,
    /// Field modulus over the prime field, e.g. `x^2+x+1`.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, value_enum, default_value_t = Route::Ambient)]
    route: Route,
    /// Maximum number of enumerated vectors.
    #[arg(long, default_value_t = Budget::DEFAULT.max_visits)]
    budget: u64,
}

#[derive(Subcommand)]
enum CensusCommand {
    /// Coset census of an explicit MDS code.
    Code {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Bisecant census of a plane arc.
    Geometry(GeometryArgs),
}

#[derive(Subcommand)]
enum GeometryCommand {
    /// Bisecant census of a plane arc.
    Census(GeometryArgs),
}

#[derive(Args)]
struct GeometryArgs {
    #[arg(long)]
    q: u64,
    /// conic, hyperoval or conic-minus:K.
    #[arg(long, default_value = "conic")]
    arc: String,
    /// 0-based conic points removed by conic-minus:K (default: the last K).
    #[arg(long, value_name = "LIST")]
    remove: Option<String>,
    #[arg(long)]
    poly: Option<String>,
    /// Also compare with the coset census of the arc's code.
    #[arg(long)]
    bridge: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum CoveringCommand {
    /// Covering radius, mu, APMCF/PMCF status, density and deep holes.
    Classify {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Corpus to verify; only `default` exists.
    #[arg(long, default_value = "default")]
    corpus: String,
    /// Restrict to these theorems (repeatable).
    #[arg(long)]
    theorem: Vec<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
    /// Random prefixes per parameter triple for the formula-forms check.
    #[arg(long, default_value_t = VerifyOptions::default().synthetic_per_triple)]
    synthetic: usize,
    #[command(flatten)]
    output: Output,
}

/// Why a run stopped; each maps to a distinct exit code.
enum Failure {
    /// A verification mismatch or an unrealizable result.
    Mismatch(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Mismatch(_) | Error::InconsistentPrefix { .. } => Failure::Mismatch(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit(output: &Output, text: &str) -> Outcome {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn field(q: u64, poly: Option<&str>) -> Result<Arc<Field>, Error> {
    let f = match poly {
        None => Field::from_order(q)?,
        Some(s) => {
            let (p, m) = prime_power(q)?;
            let modulus = parse_poly(s, p)?;
            if modulus.len() != m as usize + 1 {
                return Err(Error::InvalidModulus(format!("GF({q}) needs a modulus of degree {m}")));
            }
            Field::with_modulus(p, &modulus)?
        }
    };
    Ok(Arc::new(f))
}

fn one_count(s: &str) -> Result<BigInt, Error> {
    let mut v = parse_counts(s)?;
    if v.len() != 1 {
        return Err(Error::Parse(format!("expected one count, got {}", v.len())));
    }
    Ok(v.pop().expect("one entry"))
}

fn cmd_dist(a: &DistArgs) -> Outcome {
    let (n, d, q) = (a.n, a.d, a.q);
    let (method, dist) = if let Some(form) = a.closed_form {
        let need_b = || a.b.as_deref().map(one_count).unwrap_or_else(|| Err(Error::Parse("--b is required".into())));
        let dist = match form {
            ClosedForm::W1 => dist_weight1(n, d, q)?,
            ClosedForm::Wd1 => dist_weight_d1(n, d, q)?,
            ClosedForm::Wd2 => dist_weight_d2(n, d, q, &need_b()?)?,
            ClosedForm::W2 => dist_weight2(n, d, q, &need_b()?)?,
            ClosedForm::W2Identical => match dist_weight2_identical(n, d, q)? {
                Some(dist) => dist,
                None => {
                    let check = weight2_identical_check(n, d, q)?;
                    return Err(Failure::Mismatch(format!(
                        "C(n-2, d-2)/(q-1) = {} is not an integer, so the weight-2 cosets cannot all share one distribution",
                        format_rational(&check.value)
                    )));
                }
            },
            ClosedForm::Mid => {
                let w = a.w.ok_or_else(|| Failure::Usage("--W is required for the mid form".into()))?;
                let knowns = parse_counts(a.knowns.as_deref().ok_or_else(|| Failure::Usage("--knowns is required".into()))?)?;
                dist_weight_mid(n, d, q, w, &knowns)?
            }
        };
        let name = form.to_possible_value().expect("not skipped").get_name().to_string();
        (format!("closed-form:{name}"), dist)
    } else {
        let prefix = LowWeightPrefix::new(n, d, q, parse_counts(a.prefix.as_deref().expect("required by clap"))?)?;
        let (name, result) = if a.original {
            ("original", bonneau_original(&prefix))
        } else {
            ("transformed", bonneau_transformed(&prefix))
        };
        match result {
            Ok(dist) => (name.to_string(), dist),
            Err(e @ (Error::InconsistentPrefix { .. } | Error::Mismatch(_))) => {
                let raw = if a.original { bonneau_original_raw(&prefix) } else { bonneau_transformed_raw(&prefix) };
                let raw: Vec<String> = raw.iter().map(ToString::to_string).collect();
                return Err(Failure::Mismatch(format!(
                    "{e}; no coset has this prefix. Formula values B_0..B_{n}: {}",
                    raw.join(",")
                )));
            }
            Err(e) => return Err(e.into()),
        }
    };
    let text = match a.output.format {
        Format::Json => json(&DistributionDoc::new(n, d, q, method, dist)),
        Format::Csv => mdscoset::serial::distribution_csv(&dist),
        Format::Table => render::distribution_table(n, d, q, &method, &dist),
    };
    emit(&a.output, &text)
}

fn code_spec(c: &CodeArgs) -> Result<MdsSpec, Error> {
    let family: Family = c.family.parse()?;
    let spec = MdsSpec::new(family, field(c.q, c.poly.as_deref())?, c.d)?;
    match &c.remove {
        Some(list) => spec.with_removed(&parse_index_list(list)?),
        None => Ok(spec),
    }
}

fn code_census(c: &CodeArgs, spec: &MdsSpec) -> Result<CosetCensus, Error> {
    let code = spec.build()?;
    let budget = Budget::new(c.budget);
    match c.route {
        Route::Ambient => code.coset_census(budget),
        Route::Prefix => prefix_census(&code, budget),
        Route::Auto => match code.coset_census(budget) {
            Err(Error::BudgetExceeded { .. }) => prefix_census(&code, budget),
            other => other,
        },
    }
}

fn cmd_census_code(c: &CodeArgs, output: &Output) -> Outcome {
    let spec = code_spec(c)?;
    let census = code_census(c, &spec)?;
    let text = match output.format {
        Format::Json => json(&CensusDoc::new(spec.label(), &census)),
        Format::Csv => mdscoset::serial::census_csv(&census),
        Format::Table => render::census_table(&spec.label(), &census),
    };
    emit(output, &text)
}

fn cmd_geometry(g: &GeometryArgs) -> Outcome {
    let f = field(g.q, g.poly.as_deref())?;
    let choice = parse_arc(&g.arc)?;
    let removed = g.remove.as_deref().map(parse_index_list).transpose()?;
    let arc = build_arc_with(&f, &choice, removed.as_deref())?;
    let census = bisecant_census(&arc);
    let bridge = if g.bridge {
        let code = arc.code()?;
        let coset = prefix_census(&code, Budget::DEFAULT)?;
        Some(geometry_code_bridge(&arc, &code, &coset)?)
    } else {
        None
    };
    let label = match &removed {
        Some(r) => format!("{choice} remove={r:?}"),
        None => choice.to_string(),
    };
    let text = match g.output.format {
        Format::Json => json(&PointCensusDoc::new(label, &census, bridge.as_ref())),
        Format::Csv => render::point_census_csv(&census),
        Format::Table => render::point_census_table(&label, &census, bridge.as_ref()),
    };
    emit(&g.output, &text)?;
    match bridge {
        Some(b) if !b.matched => Err(Failure::Mismatch("geometry and coset census disagree".into())),
        _ => Ok(()),
    }
}

fn cmd_classify(c: &CodeArgs, output: &Output) -> Outcome {
    let spec = code_spec(c)?;
    let census = code_census(c, &spec)?;
    let report = mcf_classify(&census, spec.d)?;
    let sat = saturating_set_report(&report);
    let deep = if spec.delta() > 0 { Some(count_deep_hole_cosets(&spec, &census, Budget::new(c.budget))?) } else { None };
    let doc = McfDoc::new(spec.label(), &report, &sat, deep.as_ref());
    let text = match output.format {
        Format::Json => json(&doc),
        Format::Csv => render::mcf_csv(&doc),
        Format::Table => render::mcf_table(&doc),
    };
    emit(output, &text)
}

fn cmd_verify(v: &VerifyArgs) -> Outcome {
    if v.corpus != "default" {
        return Err(Failure::Usage(format!("unknown corpus {:?}; only `default` exists", v.corpus)));
    }
    let theorems: Vec<Theorem> = if v.theorem.is_empty() {
        Theorem::ALL.to_vec()
    } else {
        v.theorem.iter().map(|t| t.parse()).collect::<Result<_, _>>()?
    };
    let opts = VerifyOptions {
        filter: CorpusFilter { q: v.q, d: v.d },
        synthetic_per_triple: v.synthetic,
        ..VerifyOptions::default()
    };
    let doc = VerifyDoc::new(verify::run(&theorems, &opts)?);
    let text = match v.output.format {
        Format::Json => json(&doc),
        Format::Csv => render::verify_csv(&doc),
        Format::Table => render::verify_table(&doc),
    };
    emit(&v.output, &text)?;
    if doc.passed {
        Ok(())
    } else {
        let failed: Vec<String> = doc.criteria.iter().filter(|c| !c.passed()).map(|c| c.id.to_string()).collect();
        Err(Failure::Mismatch(format!("criteria {} failed", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dist(a) => cmd_dist(a),
        Command::Census(CensusCommand::Code { code, output }) => cmd_census_code(code, output),
        Command::Census(CensusCommand::Geometry(g)) | Command::Geometry(GeometryCommand::Census(g)) => cmd_geometry(g),
        Command::Covering(CoveringCommand::Classify { code, output }) => cmd_classify(code, output),
        Command::Verify(v) => cmd_verify(v),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mdscoset: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("mdscoset: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("mdscoset: {m}; raise --budget or use --route prefix");
            ExitCode::from(3)
        }
    }
}
