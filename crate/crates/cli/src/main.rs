//! Batch front end: identity suites, cohomology and spectral-sequence runs
//! on declarative spec files, truncated weight models, and the
//! genus-parametrized dimension tables.
//!
//! Exit codes: 0 when every check passes, 1 on a check failure, 2 on a
//! usage or parse error.

mod specfile;

use clap::{Args, Parser, Subcommand};
use leafhodge::complex::{build_complex, solve_hodge_family};
use leafhodge::identities::{self, VerificationResult};
use leafhodge::matrix::Matrix;
use leafhodge::oprewrite::{self, Letter, TraceStep};
use leafhodge::scalar::Scalar;
use leafhodge::spectral as ss;
use leafhodge::tables::{self, CoefficientTag, SpectrumTable};
use leafhodge::weights::{self, RepTag};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "leafhodge",
    version,
    about = "Exact operator-identity and cohomology engine for leafwise complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the symbolic identity suites.
    Verify(VerifyArgs),
    /// Cohomology of a Chevalley–Eilenberg complex from a spec file.
    Cohomology(CohomologyArgs),
    /// Spectral sequence of a subalgebra filtration from a spec file.
    Spectral(SpectralArgs),
    /// Truncated weight-model checks.
    Model(ModelArgs),
    /// Genus-parametrized dimension tables.
    Table(TableArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Sign selection for the rank-one calculus: plus, minus or both.
    #[arg(long, default_value = "both")]
    sign: String,
    /// Emit the rewrite transcript for the rank-one calculus.
    #[arg(long)]
    trace: bool,
    /// Structured JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CohomologyArgs {
    spec: PathBuf,
    /// Also print the differential matrices.
    #[arg(long)]
    matrices: bool,
    /// Also solve for the Hodge family (δ, p).
    #[arg(long)]
    hodge: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpectralArgs {
    spec: PathBuf,
    /// Render one extra sheet E_r.
    #[arg(long)]
    sheet: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ModelArgs {
    /// Representation tag: D<n>+, D<n>-, or Hmu.
    #[arg(long)]
    rep: String,
    /// Casimir parameter for Hmu, in scalar syntax (a rational).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Top weight for discrete-series truncations.
    #[arg(long)]
    top_weight: Option<i64>,
    /// Half-width of the symmetric window for Hmu.
    #[arg(long)]
    window: Option<i64>,
    /// Print the generator matrices.
    #[arg(long)]
    matrices: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    genus: u64,
    /// Coefficient: c:<λ> (scalar syntax), an, or sl2.
    #[arg(long)]
    coeff: Option<String>,
    /// Spectrum file: lines `ν m` with ν in scalar syntax.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    /// Largest discrete-series index listed in multiplicity tables.
    #[arg(long, default_value_t = 12)]
    max_n: u64,
    /// Print the L² multiplicity rows.
    #[arg(long)]
    multiplicities: bool,
    /// Run the block-sum cross-check of every closed form.
    #[arg(long)]
    crosscheck: bool,
    /// Print the degree-wise total-space vs leafwise comparison.
    #[arg(long)]
    restriction: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct Report {
    tool_version: String,
    command: String,
    pass: bool,
    checks: Vec<VerificationResult>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    data: serde_json::Value,
}

impl Report {
    fn new(command: String, mut checks: Vec<VerificationResult>, data: serde_json::Value) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let pass = checks.iter().all(|c| c.pass);
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            pass,
            checks,
            data,
        }
    }

    fn emit(&self, as_json: bool) -> ExitCode {
        if as_json {
            println!(
                "{}",
                serde_json::to_string_pretty(self).expect("serializable report")
            );
        } else {
            for check in &self.checks {
                println!(
                    "{:<45} {}  (residual terms: {}, {} ms)",
                    check.name,
                    if check.pass { "PASS" } else { "FAIL" },
                    check.residual_terms,
                    check.millis
                );
            }
            if !self.data.is_null() {
                print_data(&self.data);
            }
            println!("overall: {}", if self.pass { "PASS" } else { "FAIL" });
        }
        if self.pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn print_data(value: &serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                match v {
                    serde_json::Value::String(s) if s.contains('\n') => {
                        println!("{k}:\n{s}");
                    }
                    serde_json::Value::Array(items)
                        if items.iter().all(serde_json::Value::is_string) =>
                    {
                        println!("{k}:");
                        for item in items {
                            println!("  {}", item.as_str().unwrap_or_default());
                        }
                    }
                    other => println!("{k}: {other}"),
                }
            }
        }
        other => println!("{other}"),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => run_verify(&args),
        Command::Cohomology(args) => run_cohomology(&args),
        Command::Spectral(args) => run_spectral(&args),
        Command::Model(args) => run_model(&args),
        Command::Table(args) => run_table(&args),
    }
}

fn signs_of(arg: &str) -> Result<Vec<i8>, String> {
    match arg {
        "plus" => Ok(vec![1]),
        "minus" => Ok(vec![-1]),
        "both" => Ok(vec![1, -1]),
        other => Err(format!("unknown sign {other:?} (use plus, minus, both)")),
    }
}

fn format_word(word: &[Letter]) -> String {
    if word.is_empty() {
        "id".to_string()
    } else {
        word.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("·")
    }
}

fn format_trace(steps: &[TraceStep]) -> Vec<String> {
    steps
        .iter()
        .map(|s| {
            let terms = s
                .after
                .iter()
                .map(|(w, c)| format!("({c})·{}", format_word(w)))
                .collect::<Vec<_>>()
                .join(" + ");
            format!(
                "{} --[{} {} @ {}]--> {}",
                format_word(&s.before),
                s.rule.0,
                s.rule.1,
                s.position,
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms
                }
            )
        })
        .collect()
}

fn run_verify(args: &VerifyArgs) -> ExitCode {
    let signs = match signs_of(&args.sign) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let mut checks = Vec::new();
    let mut data = serde_json::Map::new();
    let suite = args.suite.as_str();
    let mut known = false;
    if suite == "all" || suite == "an-fake" {
        known = true;
        checks.extend(identities::verify_fake_hodge());
    }
    if suite == "all" || suite == "sl2-hodge" {
        known = true;
        checks.extend(identities::verify_sl2_hodge());
    }
    if suite == "all" || suite == "so2" {
        known = true;
        checks.extend(identities::verify_so2_invariance());
    }
    if suite == "all" || suite == "an-adjoint" {
        known = true;
        checks.extend(identities::verify_an_adjoint_hodge());
    }
    if suite == "all" || suite == "delta-mm" {
        known = true;
        checks.extend(identities::verify_delta_mm_restriction());
    }
    if suite == "all" || suite == "d1-rewrite" {
        known = true;
        for &sign in &signs {
            let mut trace = Vec::new();
            let trace_opt = if args.trace { Some(&mut trace) } else { None };
            checks.extend(oprewrite::verify_d1_hodge(sign, trace_opt));
            checks.extend(oprewrite::verify_d1_projection(sign));
            if args.trace {
                let label = if sign > 0 {
                    "trace-plus"
                } else {
                    "trace-minus"
                };
                data.insert(label.to_string(), json!(format_trace(&trace)));
            }
        }
    }
    if suite == "all" || suite == "twisted" {
        known = true;
        let mut scalars = Vec::new();
        for n in 1..=4u32 {
            for lambda in [
                Scalar::zero(),
                Scalar::inv_sqrt2(),
                Scalar::from_ratio(5, 7),
            ] {
                let (check, scalar) = oprewrite::hodge2_symbolic(&lambda, n);
                scalars.push(format!("n={n} λ={lambda}: dδ+δd = ({scalar})·id"));
                if lambda.is_zero() {
                    checks.push(check);
                }
            }
        }
        data.insert("twisted-scalars".to_string(), json!(scalars));
    }
    if suite == "all" || suite == "round-trip" {
        known = true;
        checks.extend(identities::verify_round_trips());
    }
    if !known {
        return usage_error(format!("unknown suite {suite:?}"));
    }
    let report = Report::new(
        format!("verify --suite {suite}"),
        checks,
        serde_json::Value::Object(data),
    );
    report.emit(args.json)
}

fn matrix_lines(m: &Matrix) -> Vec<String> {
    (0..m.rows())
        .map(|i| {
            let row = (0..m.cols())
                .map(|j| format!("{}", m[(i, j)]))
                .collect::<Vec<_>>()
                .join(", ");
            format!("[{row}]")
        })
        .collect()
}

fn run_cohomology(args: &CohomologyArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {e}", args.spec.display())),
    };
    let spec = match specfile::parse(&text) {
        Ok(s) => s,
        Err(e) => return usage_error(format!("{}: {e}", args.spec.display())),
    };
    let Some(module) = spec.module else {
        return usage_error("spec file declares no module");
    };
    let complex = build_complex(&spec.algebra, &module);
    let dims = complex.cohomology_dims();
    let mut data = serde_json::Map::new();
    data.insert("module".into(), json!(module.name));
    data.insert("space-dims".into(), json!(complex.dims));
    data.insert("cohomology-dims".into(), json!(dims));
    if args.matrices {
        let rendered: Vec<String> = complex
            .d
            .iter()
            .enumerate()
            .flat_map(|(i, m)| {
                let mut lines = vec![format!("d_{i}:")];
                lines.extend(matrix_lines(m).into_iter().map(|l| format!("  {l}")));
                lines
            })
            .collect();
        data.insert("differentials".into(), json!(rendered));
    }
    if args.hodge {
        match solve_hodge_family(&complex, 64) {
            Ok(family) => {
                data.insert("hodge-parameters".into(), json!(family.parameter_count()));
                let zero = vec![Scalar::zero(); family.parameter_count()];
                let (deltas, ps) = family.instantiate(&zero);
                let mut lines = Vec::new();
                for (i, d) in deltas.iter().enumerate() {
                    lines.push(format!("δ_{}:", i + 1));
                    lines.extend(matrix_lines(d).into_iter().map(|l| format!("  {l}")));
                }
                for (i, p) in ps.iter().enumerate() {
                    lines.push(format!("p_{i}:"));
                    lines.extend(matrix_lines(p).into_iter().map(|l| format!("  {l}")));
                }
                data.insert("hodge-base-point".into(), json!(lines));
            }
            Err(e) => {
                data.insert("hodge-error".into(), json!(e.to_string()));
            }
        }
    }
    let report = Report::new(
        format!("cohomology {}", args.spec.display()),
        Vec::new(),
        serde_json::Value::Object(data),
    );
    report.emit(args.json)
}

fn run_spectral(args: &SpectralArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {e}", args.spec.display())),
    };
    let spec = match specfile::parse(&text) {
        Ok(s) => s,
        Err(e) => return usage_error(format!("{}: {e}", args.spec.display())),
    };
    let Some(module) = spec.module else {
        return usage_error("spec file declares no module");
    };
    let Some(sub) = spec.subalgebra else {
        return usage_error("spec file declares no subalgebra");
    };
    let fc = match ss::build_filtration(&spec.algebra, &sub, &module) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let mut checks = Vec::new();
    match ss::check_e1_isomorphism(&spec.algebra, &sub, &module) {
        Ok(c) => checks.push(c),
        Err(e) => return usage_error(e),
    }
    match ss::check_convergence(&spec.algebra, &sub, &module) {
        Ok(c) => checks.push(c),
        Err(e) => return usage_error(e),
    }
    let mut data = serde_json::Map::new();
    data.insert("first-sheet".into(), json!(ss::sheet(&fc, 1).render()));
    data.insert("second-sheet".into(), json!(ss::sheet(&fc, 2).render()));
    data.insert(
        "stable-sheet".into(),
        json!(ss::infinity_sheet(&fc).render()),
    );
    if let Some(r) = args.sheet {
        data.insert(format!("sheet-{r}"), json!(ss::sheet(&fc, r).render()));
    }
    let report = Report::new(
        format!("spectral {}", args.spec.display()),
        checks,
        serde_json::Value::Object(data),
    );
    report.emit(args.json)
}

fn parse_rep(rep: &str, mu: Option<&str>) -> Result<(RepTag, Option<BigRational>), String> {
    if rep == "Hmu" {
        let mu_text = mu.ok_or("Hmu requires --mu")?;
        let scalar = Scalar::parse(mu_text).map_err(|e| e.to_string())?;
        let rational = scalar.as_rational().ok_or("μ must be rational")?.clone();
        return Ok((RepTag::Principal, Some(rational)));
    }
    let body = rep
        .strip_prefix('D')
        .ok_or_else(|| format!("unknown representation {rep:?}"))?;
    let (digits, sign) = body.split_at(body.len().saturating_sub(1));
    let n: i64 = digits
        .parse()
        .map_err(|_| format!("bad discrete-series index in {rep:?}"))?;
    match sign {
        "+" => Ok((RepTag::DiscretePlus(n), None)),
        "-" => Ok((RepTag::DiscreteMinus(n), None)),
        _ => Err(format!("expected sign suffix in {rep:?}")),
    }
}

fn run_model(args: &ModelArgs) -> ExitCode {
    let (tag, mu) = match parse_rep(&args.rep, args.mu.as_deref()) {
        Ok(x) => x,
        Err(e) => return usage_error(e),
    };
    let window = match (tag, args.top_weight, args.window) {
        (RepTag::Principal, _, Some(w)) => w,
        (RepTag::Principal, _, None) => return usage_error("Hmu requires --window"),
        (_, Some(n), _) => n,
        (_, None, _) => return usage_error("discrete series require --top-weight"),
    };
    let model = match weights::build_model(tag, mu.clone(), window) {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let mut checks = Vec::new();
    checks.push(weights::bracket_checks(&model));
    checks.push(weights::e_injectivity(&model));
    let (casimir, scalar) = weights::casimir_check(&model);
    checks.push(casimir);
    let mut data = serde_json::Map::new();
    if let Some(s) = scalar {
        data.insert("casimir-scalar".into(), json!(format!("{s}")));
    }
    match weights::invariant_functionals(&model) {
        Ok(functionals) => {
            let eigen: Vec<String> = functionals.iter().map(|(_, e)| format!("{e}")).collect();
            data.insert("functional-count".into(), json!(functionals.len()));
            data.insert("functional-eigenvalues".into(), json!(eigen));
        }
        Err(e) => {
            data.insert("functional-error".into(), json!(e.to_string()));
        }
    }
    if !matches!(tag, RepTag::Principal) {
        let (lw, sign) = weights::lowest_weight_checks(&model);
        checks.push(lw);
        if let Some(s) = sign {
            data.insert("ladder-sign".into(), json!(s));
        }
        checks.push(weights::rewrite_consistency(&model));
    }
    // Stability against a window extended by five weights.
    if let Ok(larger) = weights::build_model(tag, mu, window + 5) {
        checks.push(weights::window_stability(&model, &larger));
    }
    if args.matrices {
        for (name, m) in [("E", &model.e), ("H", &model.h), ("F", &model.f)] {
            data.insert(format!("matrix-{name}"), json!(matrix_lines(m)));
        }
    }
    let report = Report::new(
        format!("model --rep {}", args.rep),
        checks,
        serde_json::Value::Object(data),
    );
    report.emit(args.json)
}

fn load_spectrum(path: Option<&PathBuf>, genus: u64) -> Result<(SpectrumTable, bool), String> {
    let Some(path) = path else {
        return Ok((SpectrumTable::synthetic(genus), true));
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let nu_text = parts
            .next()
            .ok_or(format!("line {}: missing eigenvalue", idx + 1))?;
        let m_text = parts
            .next()
            .ok_or(format!("line {}: missing multiplicity", idx + 1))?;
        let nu = Scalar::parse(nu_text)
            .map_err(|e| format!("line {}: {e}", idx + 1))?
            .as_rational()
            .cloned()
            .ok_or(format!("line {}: eigenvalue must be rational", idx + 1))?;
        let m: u64 = m_text
            .parse()
            .map_err(|_| format!("line {}: bad multiplicity", idx + 1))?;
        entries.push((nu, m));
    }
    let table = SpectrumTable::new(genus, entries).map_err(|e| e.to_string())?;
    Ok((table, false))
}

fn run_table(args: &TableArgs) -> ExitCode {
    let (st, synthetic) = match load_spectrum(args.spectrum.as_ref(), args.genus) {
        Ok(x) => x,
        Err(e) => return usage_error(e),
    };
    let mut checks = Vec::new();
    let mut data = serde_json::Map::new();
    if synthetic && (args.coeff.is_none() || args.multiplicities || args.crosscheck) {
        data.insert(
            "spectrum".into(),
            json!("synthetic example (no --spectrum file given)"),
        );
    }
    if let Some(coeff) = &args.coeff {
        let (tag, lambda) = if coeff == "an" {
            (CoefficientTag::AnAdjoint, None)
        } else if coeff == "sl2" {
            (CoefficientTag::Sl2Adjoint, None)
        } else if let Some(text) = coeff.strip_prefix("c:") {
            match Scalar::parse(text) {
                Ok(l) => (CoefficientTag::Lambda(text.to_string()), Some(l)),
                Err(e) => return usage_error(e),
            }
        } else {
            return usage_error(format!(
                "unknown coefficient {coeff:?} (use c:<λ>, an, sl2)"
            ));
        };
        let report = tables::foliation_cohomology_dims(&tag, lambda.as_ref(), &st);
        data.insert("dims".into(), json!(report.dims));
        if report.no_decomposition {
            data.insert(
                "no-decomposition".into(),
                json!("dimensions only: this coefficient carries no codifferential construction"),
            );
        }
    }
    if args.multiplicities {
        let rows: Vec<String> = tables::l2_multiplicities(&st, args.max_n)
            .into_iter()
            .map(|(label, m)| format!("{label}: {m}"))
            .collect();
        data.insert("multiplicities".into(), json!(rows));
    }
    if args.crosscheck {
        checks.push(tables::assembly_crosscheck(&st, args.max_n));
    }
    if args.restriction {
        match tables::restriction_report(args.genus) {
            Ok(r) => {
                data.insert("restriction".into(), json!(r));
            }
            Err(e) => return usage_error(e),
        }
    }
    if args.coeff.is_none() && !args.multiplicities && !args.crosscheck && !args.restriction {
        return usage_error(
            "nothing to do: pass --coeff, --multiplicities, --crosscheck or --restriction",
        );
    }
    let report = Report::new(
        format!("table --genus {}", args.genus),
        checks,
        serde_json::Value::Object(data),
    );
    report.emit(args.json)
}
