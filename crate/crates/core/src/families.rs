//! Explicit families, singular-point tests and chart restrictions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Context, ExponentVector, Rational, SparsePolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("point has {found} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("parameter `{0}` already occurs in f or g")]
    ParameterClash(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl FamilyError {
    pub fn code(&self) -> &'static str {
        match self {
            FamilyError::InvalidParameters(_) => "INVALID_PARAMETERS",
            FamilyError::ArityMismatch { .. } => "ARITY_MISMATCH",
            FamilyError::ParameterClash(_) => "CONTEXT_MISMATCH",
            FamilyError::Algebra(e) => e.code(),
        }
    }
}

/// `f + s·g` with `f` and `g` over a shared coordinate context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationFamily {
    f: SparsePolynomial,
    g: SparsePolynomial,
    parameter: String,
    total: SparsePolynomial,
}

impl DeformationFamily {
    /// Merges the contexts of `f` and `g`; the parameter is appended last.
    pub fn new(f: &SparsePolynomial, g: &SparsePolynomial, parameter: &str) -> Result<Self, FamilyError> {
        let coords = f.context().merge(g.context());
        if coords.contains(parameter) {
            return Err(FamilyError::ParameterClash(parameter.to_string()));
        }
        let f = f.embed(&coords)?;
        let g = g.embed(&coords)?;
        let ctx = coords.with(parameter)?;
        let s = SparsePolynomial::var(&ctx, parameter)?;
        let total = f.embed(&ctx)?.try_add(&s.try_mul(&g.embed(&ctx)?)?)?;
        Ok(DeformationFamily { f, g, parameter: parameter.to_string(), total })
    }

    pub fn coordinates(&self) -> &Context {
        self.f.context()
    }

    pub fn f(&self) -> &SparsePolynomial {
        &self.f
    }

    pub fn g(&self) -> &SparsePolynomial {
        &self.g
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    /// `f + s·g`, over the coordinates followed by the parameter.
    pub fn family_polynomial(&self) -> &SparsePolynomial {
        &self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPointVerdict {
    pub point: Vec<Rational>,
    pub on_hypersurface: bool,
    pub singular: bool,
    pub vanishing_partials: Vec<String>,
}

/// Whether `point` (in context order) is a singular point of `{p = 0}`.
pub fn is_singular_point(p: &SparsePolynomial, point: &[Rational]) -> Result<SingularPointVerdict, FamilyError> {
    let n = p.context().len();
    if point.len() != n {
        return Err(FamilyError::ArityMismatch { expected: n, found: point.len() });
    }
    let on_hypersurface = p.evaluate_at(point)?.is_zero();
    let mut vanishing_partials = Vec::new();
    for v in p.context().names() {
        if p.partial_derivative(v)?.evaluate_at(point)?.is_zero() {
            vanishing_partials.push(v.clone());
        }
    }
    let singular = on_hypersurface && vanishing_partials.len() == n;
    Ok(SingularPointVerdict { point: point.to_vec(), on_hypersurface, singular, vanishing_partials })
}

/// Comparison of `Sing V(f + s·g) ∩ {s = 0}` with `V(g) ∩ Sing V(f)` on a
/// finite set of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusReport {
    pub points_checked: usize,
    /// Points singular on the total space at `s = 0`.
    pub in_total_locus: usize,
    /// Points in `V(g) ∩ Sing V(f)`.
    pub in_base_locus: usize,
    pub disagreement: Option<Vec<Rational>>,
    pub passed: bool,
}

/// Evaluates both sides independently at each point of the coordinate
/// space; the total-space side uses the full gradient including `∂/∂s = g`.
pub fn check_deformation_singular_locus(
    family: &DeformationFamily,
    points: &[Vec<Rational>],
) -> Result<LocusReport, FamilyError> {
    let total = family.family_polynomial();
    let mut report =
        LocusReport { points_checked: 0, in_total_locus: 0, in_base_locus: 0, disagreement: None, passed: true };
    for x in points {
        let mut lifted = x.clone();
        lifted.push(Rational::zero());
        let left = is_singular_point(total, &lifted)?.singular;
        let right = family.g().evaluate_at(x)?.is_zero() && is_singular_point(family.f(), x)?.singular;
        report.points_checked += 1;
        report.in_total_locus += left as usize;
        report.in_base_locus += right as usize;
        if left != right && report.disagreement.is_none() {
            report.disagreement = Some(x.clone());
            report.passed = false;
        }
    }
    Ok(report)
}

/// Seeded sample points; each coordinate is zero with probability 1/2 and
/// otherwise a rational with numerator in `[-100, 100]` and denominator in
/// `[1, 100]`. Zeros make singular points likely to be hit.
pub fn sample_points(dimension: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..dimension)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Rational::zero()
                    } else {
                        Rational::new(rng.gen_range(-100..=100), rng.gen_range(1..=100))
                    }
                })
                .collect()
        })
        .collect()
}

/// Parameters of the homogeneous family
/// `Σ_{k<=a} Σ_{i≠k} x_i^m x_k^{d-m} + Σ_{k>a} x_k^d` in `n` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrdinaryFamilySpec {
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub a: u32,
}

impl OrdinaryFamilySpec {
    pub fn new(n: u32, m: u32, d: u32, a: u32) -> Result<Self, FamilyError> {
        let bad = |msg: String| Err(FamilyError::InvalidParameters(msg));
        if n < 3 {
            return bad(format!("need n >= 3, got {n}"));
        }
        if m < 2 {
            return bad(format!("need m >= 2, got {m}"));
        }
        if !d.is_multiple_of(m) || d < 2 * m {
            return bad(format!("need d a multiple of m with d > m, got d={d}, m={m}"));
        }
        if a < 1 || a > n {
            return bad(format!("need 1 <= a <= n, got a={a}, n={n}"));
        }
        Ok(OrdinaryFamilySpec { n, m, d, a })
    }

    /// Number of distinct monomials of [`build_ordinary_family`]. When
    /// `d = 2m` the monomials `x_i^m x_k^m` with `i, k <= a` occur twice.
    pub fn term_count(&self) -> u64 {
        let (n, a) = (self.n as u64, self.a as u64);
        let merged = if self.d == 2 * self.m { a * a.saturating_sub(1) / 2 } else { 0 };
        a * (n - 1) - merged + (n - a)
    }

    /// The value `n/d`, expected but not proven to be the minimal exponent.
    pub fn conjectured_minimal_exponent(&self) -> ConjecturalValue {
        ConjecturalValue { value: Rational::new(self.n as i64, self.d as i64), status: "CONJECTURAL" }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjecturalValue {
    pub value: Rational,
    pub status: &'static str,
}

pub fn build_ordinary_family(spec: &OrdinaryFamilySpec) -> Result<SparsePolynomial, FamilyError> {
    let OrdinaryFamilySpec { n, m, d, a } = *spec;
    let n = n as usize;
    let ctx = Context::numbered("x", n);
    let mut terms = Vec::new();
    for k in 0..a as usize {
        for i in (0..n).filter(|&i| i != k) {
            let mut e = vec![0; n];
            e[i] = m;
            e[k] = d - m;
            terms.push((ExponentVector::new(e), Rational::one()));
        }
    }
    for k in a as usize..n {
        terms.push((ExponentVector::unit(n, k, d), Rational::one()));
    }
    Ok(SparsePolynomial::from_terms(&ctx, terms)?)
}

/// `p` on the affine chart `{x_j = 1}`, with its leading form at the
/// chart origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartRestriction {
    pub restricted: SparsePolynomial,
    /// Whether the chart origin lies on the hypersurface.
    pub on_hypersurface: bool,
    pub order: Option<u64>,
    pub lowest_part: Option<SparsePolynomial>,
    /// Lowest part is `Σ c_i y_i^e` with every `c_i` non-zero.
    pub diagonal: bool,
}

/// Restricts to `x_j = 1` (`j` is 1-based in context order).
pub fn chart_restrict(p: &SparsePolynomial, j: usize) -> Result<ChartRestriction, FamilyError> {
    let n = p.context().len();
    if j == 0 || j > n {
        return Err(FamilyError::InvalidParameters(format!("chart index {j} outside 1..={n}")));
    }
    let var = p.context().names()[j - 1].clone();
    let restricted = p.restrict(&var, &Rational::one())?;
    let on_hypersurface = restricted.coefficient(&ExponentVector::zeros(n - 1)).is_zero();
    let (order, lowest_part, diagonal) = if restricted.is_zero() {
        (None, None, false)
    } else {
        let (order, form) = restricted.lowest_degree_part(&vec![Rational::zero(); n - 1])?;
        let diagonal = is_diagonal(&form);
        (Some(order), Some(form), diagonal)
    };
    Ok(ChartRestriction { restricted, on_hypersurface, order, lowest_part, diagonal })
}

fn is_diagonal(form: &SparsePolynomial) -> bool {
    let n = form.context().len();
    if n == 0 || form.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for (e, _) in form.terms() {
        let support: Vec<usize> = (0..n).filter(|&i| e.get(i) > 0).collect();
        match support.as_slice() {
            [i] if !seen[*i] => seen[*i] = true,
            _ => return false,
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrdinaryVerdict {
    Ordinary,
    NotOrdinary,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdinaryCertificate {
    pub verdict: OrdinaryVerdict,
    pub order: u64,
    pub reason: String,
}

/// Decides whether `center` is an ordinary `m`-fold point of `{p = 0}`,
/// i.e. the tangent cone has degree `m` and defines a smooth projective
/// hypersurface.
///
/// For `m = 2` this is decided by the rank of the quadratic form. For
/// `m >= 3` a diagonal cone with non-zero coefficients is certified; other
/// cones of the right degree are left undecided.
pub fn ordinary_point_certificate(
    p: &SparsePolynomial,
    center: &[Rational],
    m: u32,
) -> Result<OrdinaryCertificate, FamilyError> {
    let n = p.context().len();
    if center.len() != n {
        return Err(FamilyError::ArityMismatch { expected: n, found: center.len() });
    }
    if m < 2 {
        return Err(FamilyError::InvalidParameters(format!("need m >= 2, got {m}")));
    }
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial("ordinary point test").into());
    }
    let (order, cone) = p.translate(center)?.lowest_degree_part(&vec![Rational::zero(); n])?;
    let cert = |verdict, reason: &str| Ok(OrdinaryCertificate { verdict, order, reason: reason.into() });
    if order != m as u64 {
        return cert(OrdinaryVerdict::NotOrdinary, "multiplicity differs from m");
    }
    if m == 2 {
        return if quadratic_rank(&cone) == n {
            cert(OrdinaryVerdict::Ordinary, "non-degenerate quadratic cone")
        } else {
            cert(OrdinaryVerdict::NotOrdinary, "degenerate quadratic cone")
        };
    }
    if is_diagonal(&cone) {
        cert(OrdinaryVerdict::Ordinary, "diagonal tangent cone")
    } else {
        cert(OrdinaryVerdict::Unknown, "tangent cone is not diagonal")
    }
}

fn quadratic_rank(form: &SparsePolynomial) -> usize {
    let n = form.context().len();
    let half = Rational::new(1, 2);
    let mut q = vec![vec![Rational::zero(); n]; n];
    for (e, c) in form.terms() {
        let support: Vec<usize> = (0..n).filter(|&i| e.get(i) > 0).collect();
        match support.as_slice() {
            [i] => q[*i][*i] = c.clone(),
            [i, j] => {
                q[*i][*j] = c * &half;
                q[*j][*i] = c * &half;
            }
            _ => unreachable!("quadratic form"),
        }
    }
    rank(q)
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, pivot);
        let inv = rows[r][col].recip();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] * &inv;
            let (top, bottom) = rows.split_at_mut(i);
            for (x, y) in bottom[0][col..cols].iter_mut().zip(&top[r][col..cols]) {
                *x -= &(&factor * y);
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ContextSpec};
    use std::collections::BTreeSet;

    fn poly(text: &str) -> SparsePolynomial {
        parse_polynomial(text, ContextSpec::Infer).unwrap()
    }

    fn on(text: &str, names: &[&str]) -> SparsePolynomial {
        parse_polynomial(text, Context::new(names.iter().copied()).unwrap()).unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x)).collect()
    }

    #[test]
    fn singular_point_examples() {
        let f = on("x1^2 + x2^2", &["x1", "x2", "x3"]);
        assert!(is_singular_point(&f, &pt(&[0, 0, 5])).unwrap().singular);
        let v = is_singular_point(&f, &pt(&[1, 0, 0])).unwrap();
        assert!(!v.on_hypersurface && !v.singular);
        assert_eq!(v.vanishing_partials, ["x2", "x3"]);

        let cusp = poly("x^2*y");
        let v = is_singular_point(&cusp, &pt(&[0, 3])).unwrap();
        assert!(v.on_hypersurface && v.singular);
        let cusp = poly("x^2 + y^3");
        assert!(is_singular_point(&cusp, &pt(&[0, 0])).unwrap().singular);
        let v = is_singular_point(&cusp, &pt(&[1, -1])).unwrap();
        assert!(v.on_hypersurface && !v.singular);
        assert_eq!(is_singular_point(&f, &pt(&[0, 0])), Err(FamilyError::ArityMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn family_construction() {
        let fam = DeformationFamily::new(&poly("x1^2 + x2^2"), &poly("x3^2"), "s").unwrap();
        assert_eq!(fam.coordinates().names(), &["x1", "x2", "x3"]);
        assert_eq!(fam.family_polynomial().to_string(), "x3^2*s + x1^2 + x2^2");
        assert_eq!(
            DeformationFamily::new(&poly("x1^2 + s"), &poly("x3^2"), "s"),
            Err(FamilyError::ParameterClash("s".into()))
        );
    }

    #[test]
    fn singular_locus_example() {
        let fam = DeformationFamily::new(&poly("x1^2 + x2^2"), &poly("x3^2"), "s").unwrap();
        let points = vec![pt(&[0, 0, 0]), pt(&[0, 0, 1]), pt(&[1, 0, 0])];
        let r = check_deformation_singular_locus(&fam, &points).unwrap();
        assert!(r.passed);
        assert_eq!((r.in_total_locus, r.in_base_locus), (1, 1));

        let sampled = sample_points(3, 500, 7);
        let r = check_deformation_singular_locus(&fam, &sampled).unwrap();
        assert!(r.passed);
        assert!(r.in_total_locus > 0);
    }

    #[test]
    fn locus_pointwise_cases() {
        let fam = DeformationFamily::new(&poly("x^2*y"), &poly("y"), "s").unwrap();
        let r = check_deformation_singular_locus(&fam, &[pt(&[0, 3])]).unwrap();
        assert_eq!((r.in_total_locus, r.in_base_locus, r.passed), (0, 0, true));
        let r = check_deformation_singular_locus(&fam, &[pt(&[0, 0])]).unwrap();
        assert_eq!((r.in_total_locus, r.in_base_locus, r.passed), (1, 1, true));

        let one = SparsePolynomial::one(&Context::new(["x", "y"]).unwrap());
        let fam = DeformationFamily::new(&poly("x^2*y"), &one, "s").unwrap();
        let r = check_deformation_singular_locus(&fam, &[pt(&[0, 5]), pt(&[0, 0])]).unwrap();
        assert_eq!((r.in_total_locus, r.in_base_locus, r.passed), (0, 0, true));
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_points(4, 20, 42), sample_points(4, 20, 42));
        assert_ne!(sample_points(4, 20, 42), sample_points(4, 20, 43));
        let zeros = sample_points(3, 1000, 1).iter().flatten().filter(|c| c.is_zero()).count();
        assert!((1200..1800).contains(&zeros), "{zeros}");
    }

    #[test]
    fn family_spec_validation() {
        assert!(OrdinaryFamilySpec::new(3, 2, 4, 1).is_ok());
        for (n, m, d, a) in [(2, 2, 4, 1), (3, 1, 4, 1), (3, 2, 5, 1), (3, 2, 2, 1), (3, 2, 4, 0), (3, 2, 4, 4)] {
            let e = OrdinaryFamilySpec::new(n, m, d, a).unwrap_err();
            assert_eq!(e.code(), "INVALID_PARAMETERS");
        }
    }

    #[test]
    fn family_example() {
        let spec = OrdinaryFamilySpec::new(3, 2, 4, 1).unwrap();
        let f = build_ordinary_family(&spec).unwrap();
        assert_eq!(f.to_string(), "x1^2*x2^2 + x1^2*x3^2 + x2^4 + x3^4");
        assert_eq!(spec.conjectured_minimal_exponent().value, Rational::new(3, 4));

        let c = chart_restrict(&f, 1).unwrap();
        assert!(c.on_hypersurface && c.diagonal);
        assert_eq!(c.order, Some(2));
        assert_eq!(c.lowest_part.unwrap().to_string(), "x2^2 + x3^2");

        let c = chart_restrict(&f, 2).unwrap();
        assert!(!c.on_hypersurface);
        assert_eq!(c.order, Some(0));
        assert!(chart_restrict(&f, 4).is_err());
    }

    // Brute-force term set: every monomial from the defining double sum.
    fn oracle_terms(n: u32, m: u32, d: u32, a: u32) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        for k in 0..n {
            for i in 0..n {
                let mut e = vec![0; n as usize];
                if k < a && i != k {
                    e[i as usize] += m;
                    e[k as usize] += d - m;
                } else if k >= a && i == k {
                    e[k as usize] = d;
                } else {
                    continue;
                }
                out.insert(e);
            }
        }
        out
    }

    #[test]
    fn family_terms_and_charts() {
        for n in 3..=5 {
            for m in 2..=4 {
                for d in [2 * m, 3 * m] {
                    for a in 1..=n {
                        let spec = OrdinaryFamilySpec::new(n, m, d, a).unwrap();
                        let f = build_ordinary_family(&spec).unwrap();
                        assert!(f.is_homogeneous());
                        assert_eq!(f.total_degree(), Some(d as u64));
                        assert_eq!(f.len() as u64, spec.term_count());
                        let terms: BTreeSet<Vec<u32>> = f.terms().map(|(e, _)| e.as_slice().to_vec()).collect();
                        assert_eq!(terms, oracle_terms(n, m, d, a));
                        for j in 1..=a as usize {
                            let c = chart_restrict(&f, j).unwrap();
                            assert!(c.on_hypersurface && c.diagonal, "n={n} m={m} d={d} a={a} j={j}");
                            assert_eq!(c.order, Some(m as u64));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ordinary_certificates() {
        let origin = pt(&[0, 0, 0]);
        let c = ordinary_point_certificate(&poly("x1^2 + x2^2 + x3^2 + x1^5"), &origin, 2).unwrap();
        assert_eq!(c.verdict, OrdinaryVerdict::Ordinary);
        let c = ordinary_point_certificate(&poly("x1*x2 + x3^2"), &origin, 2).unwrap();
        assert_eq!(c.verdict, OrdinaryVerdict::Ordinary);
        let c = ordinary_point_certificate(&poly("x1^2 + 2*x1*x2 + x2^2 + x3^2"), &origin, 2).unwrap();
        assert_eq!(c.verdict, OrdinaryVerdict::NotOrdinary);
        let c = ordinary_point_certificate(&poly("x1^3 + x2^3 - x3^3"), &origin, 3).unwrap();
        assert_eq!(c.verdict, OrdinaryVerdict::Ordinary);
        let c = ordinary_point_certificate(&poly("x1^3 + x1*x2^2 + x3^3"), &origin, 3).unwrap();
        assert_eq!(c.verdict, OrdinaryVerdict::Unknown);
        let c = ordinary_point_certificate(&poly("x1^2 + x2^3 + x3^3"), &origin, 3).unwrap();
        assert_eq!((c.verdict, c.order), (OrdinaryVerdict::NotOrdinary, 2));
        let c = ordinary_point_certificate(&poly("x^2 + y^3"), &pt(&[0, 0]), 2).unwrap();
        assert_eq!(c.verdict, OrdinaryVerdict::NotOrdinary);
        let zero = SparsePolynomial::zero(&Context::numbered("x", 2));
        assert_eq!(ordinary_point_certificate(&zero, &pt(&[0, 0]), 2).unwrap_err().code(), "ZERO_POLYNOMIAL");
        let c = ordinary_point_certificate(&poly("(x1 - 1)^2 + x2^2 + x3^2"), &pt(&[1, 0, 0]), 2).unwrap();
        assert_eq!(c.verdict, OrdinaryVerdict::Ordinary);
    }
}
