//! Minimal exponents and V-filtration valuations.
//!
//! Everything here is closed-form for Brieskorn-Pham polynomials
//! `f = Σ x_i^{m_i}` and monomials `g = Π x_i^{a_i}`:
//!
//! - minimal exponent `α̃_f = Σ 1/m_i`;
//! - microlocal V-filtration index `α^Ṽ_f(g) = Σ ((b_i+1)/m_i + c_i)`
//!   where `a_i = b_i + c_i (m_i - 1)` with `0 <= b_i <= m_i - 2`;
//! - Brieskorn-lattice index `α^Br_f(g) = Σ (a_i+1)/m_i`, defined when no
//!   `a_i + 1` is a multiple of `m_i`.
//!
//! The two indices differ by `Σ c_i/m_i`, and the maximal root of
//! `b_{f,g}(s)/(s+1)` (up to sign) is bounded above by `α^Br_f(g)`. That
//! root itself is not computed.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, Context, ExponentVector, Rational, SparsePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExponentError {
    #[error("invalid Brieskorn-Pham descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("exponent values must be positive, got {0}")]
    NonPositiveValue(Rational),
    #[error("invalid exponent value `{0}`")]
    InvalidValue(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("monomial has {found} exponents but the descriptor has {expected} variables")]
    ArityMismatch { expected: usize, found: usize },
    #[error("a_{index} + 1 = {} is a multiple of m_{index} = {m}; the class of g dx may vanish", a + 1)]
    NonvanishingViolated { index: usize, a: u32, m: u32 },
}

impl ExponentError {
    pub fn code(&self) -> &'static str {
        match self {
            ExponentError::InvalidDescriptor(_) => "INVALID_DESCRIPTOR",
            ExponentError::NonPositiveValue(_) | ExponentError::InvalidValue(_) => "INVALID_EXPONENT_VALUE",
            ExponentError::InvalidParameters(_) => "INVALID_PARAMETERS",
            ExponentError::ArityMismatch { .. } => "ARITY_MISMATCH",
            ExponentError::NonvanishingViolated { .. } => "NONVANISHING_VIOLATED",
        }
    }
}

/// Exponents `(m_1, …, m_n)` of `f = Σ x_i^{m_i}`; each `m_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrieskornPham {
    exponents: Vec<u32>,
}

impl BrieskornPham {
    pub fn new(exponents: Vec<u32>) -> Result<Self, ExponentError> {
        if exponents.is_empty() {
            return Err(ExponentError::InvalidDescriptor("no variables".into()));
        }
        if let Some(m) = exponents.iter().find(|&&m| m < 2) {
            return Err(ExponentError::InvalidDescriptor(format!("exponent {m} < 2")));
        }
        Ok(BrieskornPham { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    /// Descriptor of `f(x) + f'(x')` in disjoint variables.
    pub fn concat(&self, other: &BrieskornPham) -> BrieskornPham {
        BrieskornPham { exponents: self.exponents.iter().chain(&other.exponents).copied().collect() }
    }

    /// Default variable names `x1, …, xn`.
    pub fn default_context(&self) -> Context {
        Context::numbered("x", self.arity())
    }

    /// `Σ x_i^{m_i}` over `ctx`, whose arity must match.
    pub fn polynomial(&self, ctx: &Context) -> Result<SparsePolynomial, AlgebraError> {
        if ctx.len() != self.arity() {
            return Err(AlgebraError::ArityMismatch { expected: self.arity(), found: ctx.len() });
        }
        SparsePolynomial::from_terms(
            ctx,
            self.exponents
                .iter()
                .enumerate()
                .map(|(i, &m)| (ExponentVector::unit(self.arity(), i, m), Rational::one())),
        )
    }

    fn check_arity(&self, a: &ExponentVector) -> Result<(), ExponentError> {
        if a.len() != self.arity() {
            return Err(ExponentError::ArityMismatch { expected: self.arity(), found: a.len() });
        }
        Ok(())
    }
}

impl FromStr for BrieskornPham {
    type Err = ExponentError;

    /// Comma-separated exponents, e.g. `2,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let exps = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| ExponentError::InvalidDescriptor(format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        BrieskornPham::new(exps)
    }
}

impl fmt::Display for BrieskornPham {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// A positive rational exponent, or infinity for the smooth case.
///
/// Infinity is larger than every finite value, so it is the neutral element
/// of [`min_product_rule`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExponentValue {
    Finite(Rational),
    Infinity,
}

impl ExponentValue {
    pub fn finite(value: Rational) -> Result<Self, ExponentError> {
        if !value.is_positive() {
            return Err(ExponentError::NonPositiveValue(value));
        }
        Ok(ExponentValue::Finite(value))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ExponentValue::Finite(r) => Some(r),
            ExponentValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExponentValue::Infinity)
    }

    fn cmp_rational(&self, r: &Rational) -> Ordering {
        match self {
            ExponentValue::Finite(v) => v.cmp(r),
            ExponentValue::Infinity => Ordering::Greater,
        }
    }
}

impl Ord for ExponentValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExponentValue::Finite(a), ExponentValue::Finite(b)) => a.cmp(b),
            (ExponentValue::Finite(_), ExponentValue::Infinity) => Ordering::Less,
            (ExponentValue::Infinity, ExponentValue::Finite(_)) => Ordering::Greater,
            (ExponentValue::Infinity, ExponentValue::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExponentValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Finite(r) => write!(f, "{r}"),
            ExponentValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExponentValue {
    type Err = ExponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(ExponentValue::Infinity);
        }
        let r: Rational = s.parse().map_err(|_| ExponentError::InvalidValue(s.to_string()))?;
        ExponentValue::finite(r)
    }
}

impl Serialize for ExponentValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExponentValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `Σ_i numer(i) / m_i` over a common denominator, falling back to
/// term-by-term rational addition if the lcm overflows.
fn sum_over(m: &[u32], numer: impl Fn(usize) -> u64) -> Rational {
    let mut lcm: u64 = 1;
    for &mi in m {
        let g = num_integer::gcd(lcm, mi as u64);
        match lcm.checked_mul(mi as u64 / g) {
            Some(l) if l <= (1u64 << 60) => lcm = l,
            _ => return (0..m.len()).map(|i| Rational::new(numer(i) as i64, m[i] as i64)).sum(),
        }
    }
    let mut total: u128 = 0;
    for (i, &mi) in m.iter().enumerate() {
        total += numer(i) as u128 * (lcm / mi as u64) as u128;
    }
    Rational::from_i128_ratio(total as i128, lcm as i128)
}

/// `α̃_f = Σ 1/m_i`.
pub fn bp_minimal_exponent(d: &BrieskornPham) -> ExponentValue {
    ExponentValue::Finite(sum_over(d.exponents(), |_| 1))
}

/// Minimal exponent `(n-1)/m` of an ordinary `m`-fold point in `n`
/// variables, as seen on transversal slices.
pub fn slice_exponent_ordinary_mple(n: u32, m: u32) -> Result<ExponentValue, ExponentError> {
    if n < 2 || m < 2 {
        return Err(ExponentError::InvalidParameters(format!("need n >= 2 and m >= 2, got n={n}, m={m}")));
    }
    Ok(ExponentValue::Finite(Rational::new(n as i64 - 1, m as i64)))
}

/// `min(α1, α2)`.
///
/// This is the minimal exponent of a product `h1·h2` in disjoint variables
/// when one factor is weighted homogeneous. It is a combinator on values and
/// makes no claim outside that setting.
pub fn min_product_rule(alpha1: &ExponentValue, alpha2: &ExponentValue) -> ExponentValue {
    std::cmp::min(alpha1, alpha2).clone()
}

/// Whether one point blow-up of `Σ_{i<=n-2} x_i^a + x_{n-1}^b + s x_n^b`
/// lowers the minimal exponent, i.e. `(n-2)/a > 1/(a-b)`.
///
/// Also evaluates the equivalent `a/b > (n-2)/(n-3)` and panics if the two
/// disagree.
pub fn decrease_predicate(n: u32, a: u32, b: u32) -> Result<bool, ExponentError> {
    if !(a > b && b > 1 && n >= 4) {
        return Err(ExponentError::InvalidParameters(format!(
            "need a > b > 1 and n >= 4, got n={n}, a={a}, b={b}"
        )));
    }
    let (n, a, b) = (n as i64, a as i64, b as i64);
    let direct = Rational::new(n - 2, a) > Rational::new(1, a - b);
    let ratio = Rational::new(a, b) > Rational::new(n - 2, n - 3);
    assert_eq!(direct, ratio, "equivalent forms disagree at n={n}, a={a}, b={b}");
    Ok(direct)
}

/// Per-coordinate pairs `(b_i, c_i)` with `a_i = b_i + c_i (m_i - 1)` and
/// `0 <= b_i <= m_i - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueDecomposition {
    pairs: Vec<(u32, u32)>,
}

impl ResidueDecomposition {
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn b(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|p| p.0)
    }

    pub fn c(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|p| p.1)
    }
}

pub fn decompose_residue(a: &ExponentVector, d: &BrieskornPham) -> Result<ResidueDecomposition, ExponentError> {
    d.check_arity(a)?;
    let pairs = a
        .as_slice()
        .iter()
        .zip(d.exponents())
        .map(|(&ai, &mi)| (ai % (mi - 1), ai / (mi - 1)))
        .collect();
    Ok(ResidueDecomposition { pairs })
}

/// `α^Ṽ_f(x^a) = Σ ((b_i+1)/m_i + c_i)`.
pub fn alpha_vtilde(a: &ExponentVector, d: &BrieskornPham) -> Result<ExponentValue, ExponentError> {
    d.check_arity(a)?;
    let m = d.exponents();
    let a = a.as_slice();
    Ok(ExponentValue::Finite(sum_over(m, |i| {
        let step = (m[i] - 1) as u64;
        let (b, c) = (a[i] as u64 % step, a[i] as u64 / step);
        b + 1 + c * m[i] as u64
    })))
}

/// Index of the first coordinate with `m_i | a_i + 1`, if any.
pub fn nonvanishing_violation(a: &ExponentVector, d: &BrieskornPham) -> Option<usize> {
    a.as_slice().iter().zip(d.exponents()).position(|(&ai, &mi)| (ai as u64 + 1).is_multiple_of(mi as u64))
}

/// `α^Br_f(x^a) = Σ (a_i+1)/m_i`; requires `a_i + 1 ∉ m_i ℤ` for all `i`.
pub fn alpha_br(a: &ExponentVector, d: &BrieskornPham) -> Result<ExponentValue, ExponentError> {
    d.check_arity(a)?;
    if let Some(index) = nonvanishing_violation(a, d) {
        return Err(ExponentError::NonvanishingViolated { index, a: a.get(index), m: d.exponents()[index] });
    }
    let a = a.as_slice();
    Ok(ExponentValue::Finite(sum_over(d.exponents(), |i| a[i] as u64 + 1)))
}

/// Both valuations of a monomial and the gap between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VFiltReport {
    pub alpha_vtilde: Rational,
    pub alpha_br: Rational,
    /// `Σ c_i / m_i`.
    pub gap: Rational,
}

impl VFiltReport {
    /// Upper bound for the maximal root of `b_{f,g}(s)/(s+1)` up to sign.
    pub fn root_upper_bound(&self) -> &Rational {
        &self.alpha_br
    }
}

/// Computes `Σ c_i/m_i` and checks `α^Ṽ = α^Br + Σ c_i/m_i`.
pub fn vfilt_gap(a: &ExponentVector, d: &BrieskornPham) -> Result<VFiltReport, ExponentError> {
    let br = alpha_br(a, d)?;
    let vt = alpha_vtilde(a, d)?;
    let (m, e) = (d.exponents(), a.as_slice());
    let gap = sum_over(m, |i| (e[i] / (m[i] - 1)) as u64);
    let (Some(vt), Some(br)) = (vt.as_rational(), br.as_rational()) else {
        unreachable!("monomial valuations are finite")
    };
    assert_eq!(*vt, br + &gap, "valuation gap identity failed for {a:?} over {d}");
    Ok(VFiltReport { alpha_vtilde: vt.clone(), alpha_br: br.clone(), gap })
}

/// Outcome of the minimal-exponent criterion at level `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub k: u32,
    pub minimal_exponent: ExponentValue,
    pub is_k_du_bois: bool,
    pub is_k_rational: bool,
}

/// k-du Bois iff `α̃ >= k+1`; k-rational iff `α̃ > k+1`.
pub fn classify(alpha: &ExponentValue, k: u32) -> ClassificationReport {
    let threshold = Rational::from(k) + Rational::one();
    let ord = alpha.cmp_rational(&threshold);
    ClassificationReport {
        k,
        minimal_exponent: alpha.clone(),
        is_k_du_bois: ord != Ordering::Less,
        is_k_rational: ord == Ordering::Greater,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Applicability {
    pub du_bois_ok: bool,
    pub rational_ok: bool,
    /// `(n-1)/m - 1`.
    pub threshold: Rational,
}

/// Whether the Hirzebruch-Milnor class of the blown-up divisor decides
/// k-du Bois (`k <= (n-1)/m - 1`) and k-rational (`k < (n-1)/m - 1`)
/// singularities.
pub fn hm_applicable(n: u32, m: u32, k: u32) -> Result<Applicability, ExponentError> {
    if n < 2 || m < 2 {
        return Err(ExponentError::InvalidParameters(format!("need n >= 2 and m >= 2, got n={n}, m={m}")));
    }
    let threshold = Rational::new(n as i64 - 1, m as i64) - Rational::one();
    let k = Rational::from(k);
    Ok(Applicability { du_bois_ok: k <= threshold, rational_ok: k < threshold, threshold })
}
