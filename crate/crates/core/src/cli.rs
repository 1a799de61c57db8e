//! The `singulex` command line.
//!
//! Every subcommand prints one result in text or JSON form. Exit status is
//! 0 on success, 1 on a domain error or a failed check, and 2 on a usage
//! error. JSON is compact and keeps field order, so equal inputs give
//! byte-identical output.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{parse_polynomial, AlgebraError, Context, ContextSpec, ExponentVector, Rational};
use crate::blowup::{iterated_blowup, verify_ordinary_blowup_shape, BlowupChart, BlowupError};
use crate::exponents::{
    alpha_br, alpha_vtilde, bp_minimal_exponent, classify, decompose_residue, decrease_predicate, hm_applicable,
    min_product_rule, slice_exponent_ordinary_mple, vfilt_gap, BrieskornPham, ExponentError, ExponentValue,
};
use crate::families::{
    build_ordinary_family, chart_restrict, check_deformation_singular_locus, is_singular_point,
    ordinary_point_certificate, sample_points, DeformationFamily, FamilyError, OrdinaryFamilySpec,
};
use crate::milnor::{
    bp_spectrum, check_power_inclusion, check_vfiltration_inclusion, jacobian_membership, milnor_basis, milnor_number,
    reduced_bs_root_set, MilnorError,
};
use crate::reference::replay_reference_examples;
use crate::sweep::{run_sweep, SweepBounds, SweepKind, DEFAULT_SEED};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "singulex", version, about = "Exact invariants of hypersurface singularities")]
pub struct CommandRequest {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Replay the built-in worked examples and report each outcome.
    #[arg(long = "reference-examples", alias = "paper-examples")]
    pub reference_examples: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Minimal exponents: Brieskorn-Pham, ordinary-point slices, products.
    Minexp(MinexpArgs),
    /// k-du Bois / k-rational classification from a minimal exponent.
    Classify(ClassifyArgs),
    /// Which k the blow-up criterion decides for ordinary m-fold slices.
    Applicable(ApplicableArgs),
    /// Microlocal V-filtration and Brieskorn-lattice valuations of x^a.
    Vfilt(VfiltArgs),
    /// Spectrum, Milnor number, basis or reduced Bernstein-Sato roots.
    Spectrum(SpectrumArgs),
    /// Jacobian-ideal membership and inclusion checks.
    Ideal(IdealArgs),
    /// Principal-chart blow-ups.
    Blowup(BlowupArgs),
    /// The homogeneous family, chart restrictions and point tests.
    Family(FamilyArgs),
    /// Singular locus of f + s*g along s = 0 versus V(g) and Sing V(f).
    Deform(DeformArgs),
    /// Exhaustive or seeded sweeps of the identities.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct MinexpArgs {
    /// Exponents `m1,...,mn`, or a single multiplicity with --slice.
    #[arg(long)]
    pub m: Option<String>,
    /// Slice exponent `(n-1)/m` of an ordinary m-fold point.
    #[arg(long, requires_all = ["n", "m"])]
    pub slice: bool,
    #[arg(long)]
    pub n: Option<u32>,
    /// Minimum of two values, e.g. `1,1/2` or `inf,5/6`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub min: Option<Vec<ExponentValue>>,
    /// Whether one blow-up lowers the minimal exponent of the mixed-power model.
    #[arg(long, requires_all = ["n", "a", "b"])]
    pub decrease: bool,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    /// Minimal exponent, `p/q` or `inf`.
    #[arg(long)]
    pub alpha: ExponentValue,
    #[arg(long)]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct ApplicableArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct VfiltArgs {
    #[arg(long)]
    pub m: BrieskornPham,
    /// Monomial exponents `a1,...,an`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub a: Vec<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub m: BrieskornPham,
    /// Print the reduced Bernstein-Sato roots instead.
    #[arg(long, conflicts_with_all = ["milnor", "basis"])]
    pub roots: bool,
    /// Print the Milnor number instead.
    #[arg(long, conflicts_with = "basis")]
    pub milnor: bool,
    /// Print the monomial basis of the Milnor algebra instead.
    #[arg(long)]
    pub basis: bool,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    #[arg(long)]
    pub m: BrieskornPham,
    /// Polynomial to test for membership.
    #[arg(long, conflicts_with_all = ["threshold_degree", "power_a"])]
    pub g: Option<String>,
    /// Variables of --g; defaults to x1,...,xn.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Check every monomial up to this degree above the V-filtration threshold.
    #[arg(long, conflicts_with = "power_a")]
    pub threshold_degree: Option<u32>,
    /// Check f^k x^a at the least admissible k.
    #[arg(long, value_delimiter = ',')]
    pub power_a: Option<Vec<u32>>,
}

#[derive(Args, Debug, Clone)]
pub struct BlowupArgs {
    #[arg(long)]
    pub poly: String,
    /// Variables of --poly, in order; inferred when omitted.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Chart `x1,...,xn:y1,...,yn`; repeat for an iterated blow-up.
    #[arg(long = "chart")]
    pub charts: Vec<String>,
    /// Exceptional variable per chart; defaults to the last target name.
    #[arg(long)]
    pub exceptional: Vec<String>,
    /// Check the local-model shape for multiplicity M instead.
    #[arg(long, conflicts_with_all = ["charts", "exceptional"])]
    pub shape: Option<u32>,
    /// Deformation parameter for --shape.
    #[arg(long, default_value = "s")]
    pub param: String,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub a: Option<u32>,
    /// Restrict to the chart x_j = 1.
    #[arg(long)]
    pub chart: Option<usize>,
    /// An arbitrary polynomial instead of the family.
    #[arg(long, conflicts_with_all = ["n", "d", "a"])]
    pub poly: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Ordinary-point test at this center (needs --mult).
    #[arg(long, value_delimiter = ',', requires = "mult")]
    pub center: Option<Vec<Rational>>,
    #[arg(long)]
    pub mult: Option<u32>,
    /// Singular-point test at this point.
    #[arg(long, value_delimiter = ',', conflicts_with = "center")]
    pub point: Option<Vec<Rational>>,
}

#[derive(Args, Debug, Clone)]
pub struct DeformArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    #[arg(long, default_value = "s")]
    pub param: String,
    /// Coordinates of f and g, in order; inferred when omitted.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Points as a JSON array of arrays of rational strings.
    #[arg(long, conflicts_with = "random")]
    pub points: Option<String>,
    /// Number of seeded random points.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// vfilt, spectrum, blowup-mixed, blowup-ordinary, inclusion, locus, charts or all.
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long)]
    pub max_m: Option<u32>,
    #[arg(long)]
    pub max_a: Option<u32>,
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long)]
    pub samples: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain { code: &'static str, message: String },
}

impl CliError {
    fn usage(flag: &str, message: impl std::fmt::Display) -> Self {
        CliError::Usage(format!("invalid value for `{flag}`: {message}"))
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { code: e.code(), message: e.to_string() }
            }
        }
    )*};
}
domain_from!(AlgebraError, ExponentError, MilnorError, BlowupError, FamilyError);

/// A result, plus whether the check it reports succeeded.
struct Report {
    value: Value,
    passed: bool,
}

impl Report {
    fn ok(value: impl Serialize) -> Result<Self, CliError> {
        Ok(Report { value: to_value(value), passed: true })
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("results serialize")
}

/// Parses and dispatches `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CommandRequest::try_parse_from(args) {
        Ok(req) => dispatch(&req),
        Err(e) => {
            let text = e.render().to_string();
            let status = e.exit_code();
            if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: text }
            } else {
                Outcome { status, stdout: text, stderr: String::new() }
            }
        }
    }
}

pub fn dispatch(req: &CommandRequest) -> Outcome {
    let result = if req.reference_examples {
        reference_examples()
    } else {
        match &req.command {
            Some(cmd) => execute(cmd),
            None => Err(CliError::Usage("a subcommand or --reference-examples is required".into())),
        }
    };
    match result {
        Ok(report) => Outcome {
            status: if report.passed { 0 } else { 1 },
            stdout: render(&report.value, req.format),
            stderr: String::new(),
        },
        Err(CliError::Usage(message)) => Outcome { status: 2, stdout: String::new(), stderr: format!("error: {message}\n") },
        Err(CliError::Domain { code, message }) => match req.format {
            Format::Json => Outcome {
                status: 1,
                stdout: render(&json!({"error": {"code": code, "message": message}}), Format::Json),
                stderr: String::new(),
            },
            Format::Text => Outcome { status: 1, stdout: String::new(), stderr: format!("error[{code}]: {message}\n") },
        },
    }
}

fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Minexp(a) => minexp(a),
        Command::Classify(a) => Report::ok(classify(&a.alpha, a.k)),
        Command::Applicable(a) => {
            let r = hm_applicable(a.n, a.m, a.k)?;
            Report::ok(json!({"du_bois": r.du_bois_ok, "rational": r.rational_ok, "threshold": r.threshold}))
        }
        Command::Vfilt(a) => vfilt(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Ideal(a) => ideal(a),
        Command::Blowup(a) => blowup(a),
        Command::Family(a) => family(a),
        Command::Deform(a) => deform(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn minexp(a: &MinexpArgs) -> Result<Report, CliError> {
    let value = if a.slice {
        let m: u32 = a.m.as_deref().unwrap_or_default().trim().parse().map_err(|e| CliError::usage("--m", e))?;
        slice_exponent_ordinary_mple(a.n.expect("required"), m)?
    } else if a.decrease {
        let decreases = decrease_predicate(a.n.expect("required"), a.a.expect("required"), a.b.expect("required"))?;
        return Report::ok(json!({ "decreases": decreases }));
    } else if let Some(pair) = &a.min {
        min_product_rule(&pair[0], &pair[1])
    } else if let Some(m) = &a.m {
        let d: BrieskornPham = m.parse().map_err(|e| CliError::usage("--m", e))?;
        bp_minimal_exponent(&d)
    } else {
        return Err(CliError::Usage("minexp needs one of --m, --slice, --min or --decrease".into()));
    };
    Report::ok(json!({ "minimal_exponent": value }))
}

fn vfilt(a: &VfiltArgs) -> Result<Report, CliError> {
    let e = ExponentVector::new(a.a.clone());
    match alpha_br(&e, &a.m) {
        Ok(_) => Report::ok(vfilt_gap(&e, &a.m)?),
        Err(ExponentError::NonvanishingViolated { .. }) => {
            // Report the V-filtration side anyway in the error message.
            let vt = alpha_vtilde(&e, &a.m)?;
            let dec = decompose_residue(&e, &a.m)?;
            let err = alpha_br(&e, &a.m).unwrap_err();
            Err(CliError::Domain {
                code: err.code(),
                message: format!("{err} (alpha_vtilde = {vt}, (b, c) = {:?})", dec.pairs()),
            })
        }
        Err(e) => Err(e.into()),
    }
}

fn spectrum(a: &SpectrumArgs) -> Result<Report, CliError> {
    if a.milnor {
        let mu = milnor_number(&a.m);
        let value = u64::try_from(&mu).map(Value::from).unwrap_or_else(|_| Value::from(mu.to_string()));
        return Report::ok(json!({ "milnor_number": value }));
    }
    if a.roots {
        return Report::ok(reduced_bs_root_set(&a.m)?);
    }
    if a.basis {
        let basis: Vec<Vec<u32>> = milnor_basis(&a.m)?.iter().map(|e| e.as_slice().to_vec()).collect();
        return Report::ok(basis);
    }
    Report::ok(bp_spectrum(&a.m)?)
}

fn context_or_infer(vars: &Option<Vec<String>>) -> Result<ContextSpec, CliError> {
    match vars {
        Some(names) => Ok(ContextSpec::Explicit(Context::new(names.iter().map(|s| s.trim()))?)),
        None => Ok(ContextSpec::Infer),
    }
}

fn ideal(a: &IdealArgs) -> Result<Report, CliError> {
    if let Some(text) = &a.g {
        let ctx = match &a.vars {
            Some(names) => Context::new(names.iter().map(|s| s.trim()))?,
            None => a.m.default_context(),
        };
        let g = parse_polynomial(text, ctx)?;
        return Report::ok(json!({ "member": jacobian_membership(&g, &a.m)? }));
    }
    if let Some(degree) = a.threshold_degree {
        let r = check_vfiltration_inclusion(&a.m, degree)?;
        let passed = r.passed;
        return Ok(Report { value: to_value(r), passed });
    }
    if let Some(exps) = &a.power_a {
        let r = check_power_inclusion(&a.m, &ExponentVector::new(exps.clone()))?;
        let passed = r.member;
        return Ok(Report { value: to_value(r), passed });
    }
    Err(CliError::Usage("ideal needs one of --g, --threshold-degree or --power-a".into()))
}

fn blowup(a: &BlowupArgs) -> Result<Report, CliError> {
    let p = parse_polynomial(&a.poly, context_or_infer(&a.vars)?)?;
    if let Some(m) = a.shape {
        let r = verify_ordinary_blowup_shape(&p, m, &a.param)?;
        let passed = r.ok;
        return Ok(Report { value: to_value(r), passed });
    }
    if a.charts.is_empty() {
        return Err(CliError::Usage("blowup needs --chart or --shape".into()));
    }
    if !a.exceptional.is_empty() && a.exceptional.len() != a.charts.len() {
        return Err(CliError::usage("--exceptional", "give one per --chart or none"));
    }
    let mut steps = Vec::new();
    for (i, spec) in a.charts.iter().enumerate() {
        let chart = BlowupChart::parse(spec).map_err(|e| CliError::usage("--chart", e))?;
        let exceptional = a.exceptional.get(i).cloned().unwrap_or_else(|| chart.exceptional().to_string());
        steps.push((chart, exceptional));
    }
    Report::ok(iterated_blowup(&p, &steps)?)
}

fn family(a: &FamilyArgs) -> Result<Report, CliError> {
    let p = match &a.poly {
        Some(text) => parse_polynomial(text, context_or_infer(&a.vars)?)?,
        None => {
            let (Some(n), Some(m), Some(d), Some(k)) = (a.n, a.m, a.d, a.a) else {
                return Err(CliError::Usage("family needs --n, --m, --d and --a, or --poly".into()));
            };
            let spec = OrdinaryFamilySpec::new(n, m, d, k)?;
            let f = build_ordinary_family(&spec)?;
            if a.chart.is_none() && a.center.is_none() && a.point.is_none() {
                return Report::ok(json!({
                    "polynomial": f,
                    "terms": f.len(),
                    "conjectured_minimal_exponent": spec.conjectured_minimal_exponent(),
                }));
            }
            f
        }
    };
    if let Some(j) = a.chart {
        let c = chart_restrict(&p, j)?;
        let certificate = match (a.m.or(a.mult), c.on_hypersurface) {
            (Some(m), true) => {
                let origin = vec![Rational::zero(); c.restricted.context().len()];
                Some(ordinary_point_certificate(&c.restricted, &origin, m)?)
            }
            _ => None,
        };
        return Report::ok(json!({ "chart": c, "certificate": certificate }));
    }
    if let Some(center) = &a.center {
        return Report::ok(ordinary_point_certificate(&p, center, a.mult.expect("required"))?);
    }
    if let Some(point) = &a.point {
        return Report::ok(is_singular_point(&p, point)?);
    }
    Err(CliError::Usage("family --poly needs --chart, --center or --point".into()))
}

fn deform(a: &DeformArgs) -> Result<Report, CliError> {
    let spec = context_or_infer(&a.vars)?;
    let (f, g) = match spec {
        ContextSpec::Infer => {
            let f = parse_polynomial(&a.f, ContextSpec::Infer)?;
            let g = parse_polynomial(&a.g, ContextSpec::Infer)?;
            let ctx = sorted_merge(f.context(), g.context())?;
            (f.embed(&ctx)?, g.embed(&ctx)?)
        }
        ContextSpec::Explicit(ctx) => (parse_polynomial(&a.f, ctx.clone())?, parse_polynomial(&a.g, ctx)?),
    };
    let fam = DeformationFamily::new(&f, &g, &a.param)?;
    let dim = fam.coordinates().len();
    let seed = a.seed.unwrap_or(DEFAULT_SEED);
    let points: Vec<Vec<Rational>> = match (&a.points, a.random) {
        (Some(text), _) => serde_json::from_str(text).map_err(|e| CliError::usage("--points", e))?,
        (None, Some(count)) => sample_points(dim, count, seed),
        (None, None) => return Err(CliError::Usage("deform needs --points or --random".into())),
    };
    let r = check_deformation_singular_locus(&fam, &points)?;
    let passed = r.passed;
    let mut value = json!({ "coordinates": fam.coordinates().names() });
    if a.points.is_none() {
        value["seed"] = json!(seed);
    }
    value["report"] = to_value(r);
    Ok(Report { value, passed })
}

/// Union of two inferred contexts in the same natural order the parser uses.
fn sorted_merge(a: &Context, b: &Context) -> Result<Context, CliError> {
    let names: Vec<&str> = a.names().iter().chain(b.names()).map(String::as_str).collect();
    let joined = names.join(" + ");
    if joined.is_empty() {
        return Ok(Context::empty());
    }
    Ok(parse_polynomial(&joined, ContextSpec::Infer)?.context().clone())
}

fn sweep(a: &SweepArgs) -> Result<Report, CliError> {
    let bounds = SweepBounds {
        max_n: a.max_n,
        max_m: a.max_m,
        max_a: a.max_a,
        degree: a.degree,
        samples: a.samples,
        seed: a.seed,
    };
    let kinds: Vec<SweepKind> = if a.kind == "all" {
        SweepKind::ALL.to_vec()
    } else {
        vec![SweepKind::from_name(&a.kind).ok_or_else(|| CliError::usage("--kind", format!("unknown sweep `{}`", a.kind)))?]
    };
    let reports: Vec<_> = kinds.into_iter().map(|k| run_sweep(k, &bounds)).collect();
    let passed = reports.iter().all(|r| r.passed);
    let value = if reports.len() == 1 { to_value(&reports[0]) } else { to_value(&reports) };
    Ok(Report { value, passed })
}

fn reference_examples() -> Result<Report, CliError> {
    let outcomes = replay_reference_examples();
    let passed = outcomes.iter().all(|o| o.passed);
    Ok(Report { value: to_value(outcomes), passed })
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{value}\n"),
        Format::Text => {
            let mut out = String::new();
            match value {
                Value::Object(map) => {
                    for (k, v) in map {
                        out.push_str(&format!("{k}: {}\n", inline(v)));
                    }
                }
                Value::Array(items) => {
                    for v in items {
                        out.push_str(&inline(v));
                        out.push('\n');
                    }
                }
                other => {
                    out.push_str(&inline(other));
                    out.push('\n');
                }
            }
            out
        }
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}={}", inline(v))).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}
