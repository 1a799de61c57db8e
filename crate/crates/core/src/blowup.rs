//! Point blow-ups in the principal chart.
//!
//! The chart on coordinates `x_1, …, x_n` is `x_i ↦ y_i·y_n` for `i < n`
//! and `x_n ↦ y_n`; the exceptional divisor is `{y_n = 0}`. Variables of the
//! polynomial outside the chart (a deformation parameter, say) are carried
//! through unchanged.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Context, ExponentVector, Rational, SparsePolynomial, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("cannot blow up the zero polynomial")]
    ZeroPolynomial,
    #[error("chart variable `{0}` is not in the polynomial's context")]
    ContextMismatch(String),
    #[error("not a local model: {0}")]
    ShapeViolation(String),
    #[error("step {index}: {source}")]
    Step { index: usize, source: Box<BlowupError> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl BlowupError {
    pub fn code(&self) -> &'static str {
        match self {
            BlowupError::InvalidChart(_) => "INVALID_CHART",
            BlowupError::ZeroPolynomial => "ZERO_POLYNOMIAL",
            BlowupError::ContextMismatch(_) => "CONTEXT_MISMATCH",
            BlowupError::ShapeViolation(_) => "SHAPE_VIOLATION",
            BlowupError::Step { source, .. } => source.code(),
            BlowupError::Algebra(e) => e.code(),
        }
    }
}

/// The principal chart of the blow-up of the origin in `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupChart {
    source: Vec<String>,
    target: Vec<String>,
}

impl BlowupChart {
    pub fn new<S: Into<String>>(source: Vec<S>, target: Vec<S>) -> Result<Self, BlowupError> {
        let source: Vec<String> = source.into_iter().map(Into::into).collect();
        let target: Vec<String> = target.into_iter().map(Into::into).collect();
        if source.is_empty() || source.len() != target.len() {
            return Err(BlowupError::InvalidChart(format!(
                "source has {} variables, target has {}",
                source.len(),
                target.len()
            )));
        }
        Context::new(source.iter().cloned()).map_err(|e| BlowupError::InvalidChart(e.to_string()))?;
        Context::new(target.iter().cloned()).map_err(|e| BlowupError::InvalidChart(e.to_string()))?;
        Ok(BlowupChart { source, target })
    }

    /// Chart `SRC1,…,SRCn:TGT1,…,TGTn`.
    pub fn parse(spec: &str) -> Result<Self, BlowupError> {
        let (src, tgt) = spec
            .split_once(':')
            .ok_or_else(|| BlowupError::InvalidChart(format!("expected SRC:TGT, got `{spec}`")))?;
        let names = |s: &str| s.split(',').map(|v| v.trim().to_string()).collect::<Vec<_>>();
        BlowupChart::new(names(src), names(tgt))
    }

    pub fn source(&self) -> &[String] {
        &self.source
    }

    pub fn target(&self) -> &[String] {
        &self.target
    }

    /// `y_n`, the coordinate cutting out the exceptional divisor.
    pub fn exceptional(&self) -> &str {
        self.target.last().expect("charts are non-empty")
    }

    /// Context of the transform: each source variable replaced in place by
    /// its target name.
    pub fn target_context(&self, ctx: &Context) -> Result<Context, BlowupError> {
        for v in &self.source {
            if !ctx.contains(v) {
                return Err(BlowupError::ContextMismatch(v.clone()));
            }
        }
        let names = ctx.names().iter().map(|v| match self.source.iter().position(|s| s == v) {
            Some(i) => self.target[i].clone(),
            None => v.clone(),
        });
        Context::new(names).map_err(|e| BlowupError::InvalidChart(e.to_string()))
    }

    /// The pull-back as a substitution from `ctx`.
    pub fn pullback(&self, ctx: &Context) -> Result<Substitution, BlowupError> {
        let tctx = self.target_context(ctx)?;
        let yn = SparsePolynomial::var(&tctx, self.exceptional())?;
        let mut sub = Substitution::new(&tctx);
        let last = self.source.len() - 1;
        for (i, (x, y)) in self.source.iter().zip(&self.target).enumerate() {
            let image = if i == last { yn.clone() } else { SparsePolynomial::var(&tctx, y)?.try_mul(&yn)? };
            sub.assign(x, image)?;
        }
        Ok(sub)
    }
}

/// Total transform, its exceptional multiplicity, and the proper transform.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformResult {
    pub total: SparsePolynomial,
    #[serde(rename = "mult")]
    pub exceptional_multiplicity: u32,
    pub proper: SparsePolynomial,
}

/// Pulls `p` back along `chart` and factors out the largest power of
/// `exceptional`.
pub fn blowup_transform(
    p: &SparsePolynomial,
    chart: &BlowupChart,
    exceptional: &str,
) -> Result<TransformResult, BlowupError> {
    if p.is_zero() {
        return Err(BlowupError::ZeroPolynomial);
    }
    let sub = chart.pullback(p.context())?;
    if !sub.target().contains(exceptional) {
        return Err(BlowupError::ContextMismatch(exceptional.to_string()));
    }
    let total = sub.apply(p)?;
    let (mult, proper) = total.factor_out_power(exceptional)?;
    Ok(TransformResult { total, exceptional_multiplicity: mult, proper })
}

/// Applies the charts in order, each to the previous proper transform.
pub fn iterated_blowup(
    p: &SparsePolynomial,
    steps: &[(BlowupChart, String)],
) -> Result<Vec<TransformResult>, BlowupError> {
    let mut chain: Vec<TransformResult> = Vec::with_capacity(steps.len());
    for (index, (chart, exceptional)) in steps.iter().enumerate() {
        let current = chain.last().map(|t| &t.proper).unwrap_or(p);
        let step = blowup_transform(current, chart, exceptional)
            .map_err(|e| BlowupError::Step { index, source: Box::new(e) })?;
        chain.push(step);
    }
    Ok(chain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateKind {
    /// `Φ + s` with `Φ` free of `s`: the zero set is the graph of `-Φ`,
    /// hence smooth.
    GraphOverS,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessCertificate {
    pub kind: CertificateKind,
    pub witness: String,
}

/// Issues [`CertificateKind::GraphOverS`] iff `∂p/∂parameter` is the
/// constant 1.
pub fn certify_graph_over(p: &SparsePolynomial, parameter: &str) -> Result<SmoothnessCertificate, BlowupError> {
    let ds = p.partial_derivative(parameter)?;
    let kind = if ds.as_constant() == Some(Rational::one()) { CertificateKind::GraphOverS } else { CertificateKind::Unknown };
    Ok(SmoothnessCertificate { kind, witness: parameter.to_string() })
}

/// Outcome of blowing up a local model `Σ_j f_{j+m} + s·x_n^m` once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub ok: bool,
    pub certificate: SmoothnessCertificate,
    pub transform: TransformResult,
    /// Order at the chart origin of the proper transform with `s = 0`.
    pub tangent_order: Option<u64>,
    /// Lowest-degree form there.
    pub tangent_cone: Option<SparsePolynomial>,
}

/// Blows up the origin of a local model and checks that the exceptional
/// multiplicity is `m` and the proper transform is `Φ(y) + s`.
///
/// The chart variables are every context variable except `parameter`, in
/// context order; they are renamed `y1, …, yn`. The model must be affine in
/// `parameter` and have no term of degree below `m` in `x_1, …, x_{n-1}`.
pub fn verify_ordinary_blowup_shape(
    p: &SparsePolynomial,
    m: u32,
    parameter: &str,
) -> Result<ShapeReport, BlowupError> {
    let ctx = p.context();
    if !ctx.contains(parameter) {
        return Err(BlowupError::ShapeViolation(format!("parameter `{parameter}` is not a variable")));
    }
    let xs: Vec<&str> = ctx.names().iter().map(String::as_str).filter(|v| *v != parameter).collect();
    if xs.len() < 2 {
        return Err(BlowupError::ShapeViolation("need at least two coordinates besides the parameter".into()));
    }
    let by_s = p.coefficients_in(parameter)?;
    if by_s.len() > 2 {
        return Err(BlowupError::ShapeViolation(format!("`{parameter}` occurs with degree above 1")));
    }
    if by_s.len() < 2 {
        return Err(BlowupError::ShapeViolation(format!("`{parameter}` does not occur")));
    }
    by_s[0].graded_parts(&xs[..xs.len() - 1], m).map_err(|e| match e {
        AlgebraError::DegreeBelowBase { term, degree, .. } => BlowupError::ShapeViolation(format!(
            "term `{term}` has degree {degree} < {m} in {:?}",
            &xs[..xs.len() - 1]
        )),
        other => other.into(),
    })?;

    let target: Vec<String> = (1..=xs.len()).map(|i| format!("y{i}")).collect();
    if target.iter().any(|y| y == parameter) {
        return Err(BlowupError::ShapeViolation(format!("parameter `{parameter}` clashes with chart names")));
    }
    let chart = BlowupChart::new(xs.iter().map(|s| s.to_string()).collect(), target)?;
    let transform = blowup_transform(p, &chart, chart.exceptional())?;
    let certificate = certify_graph_over(&transform.proper, parameter)?;
    let ok = transform.exceptional_multiplicity == m && certificate.kind == CertificateKind::GraphOverS;

    let fibre = transform.proper.restrict(parameter, &Rational::zero())?;
    let (tangent_order, tangent_cone) = if fibre.is_zero() {
        (None, None)
    } else {
        let origin = vec![Rational::zero(); fibre.context().len()];
        let (order, form) = fibre.lowest_degree_part(&origin)?;
        (Some(order), Some(form))
    };
    Ok(ShapeReport { ok, certificate, transform, tangent_order, tangent_cone })
}

/// `Σ_{i<=n-2} x_i^a + x_{n-1}^b + s·x_n^b` over `x1, …, xn, s`.
pub fn mixed_power_model(n: u32, a: u32, b: u32) -> Result<SparsePolynomial, BlowupError> {
    if !(n >= 3 && a > b && b > 1) {
        return Err(BlowupError::ShapeViolation(format!("need n >= 3 and a > b > 1, got n={n}, a={a}, b={b}")));
    }
    let n = n as usize;
    let ctx = Context::numbered("x", n).with("s")?;
    let mut terms: Vec<(ExponentVector, Rational)> =
        (0..n - 2).map(|i| (ExponentVector::unit(n + 1, i, a), Rational::one())).collect();
    terms.push((ExponentVector::unit(n + 1, n - 2, b), Rational::one()));
    let mut sg = vec![0; n + 1];
    sg[n - 1] = b;
    sg[n] = 1;
    terms.push((ExponentVector::new(sg), Rational::one()));
    Ok(SparsePolynomial::from_terms(&ctx, terms)?)
}
