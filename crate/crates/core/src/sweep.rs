//! Exhaustive and seeded sweeps over the closed-form identities.
//!
//! Every sweep is deterministic: the same bounds and seed give the same
//! report, field for field.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{parse_polynomial, Context, ContextSpec, ExponentVector, Rational, SparsePolynomial};
use crate::blowup::{blowup_transform, mixed_power_model, verify_ordinary_blowup_shape, BlowupChart, CertificateKind};
use crate::exponents::{bp_minimal_exponent, decompose_residue, nonvanishing_violation, vfilt_gap, BrieskornPham};
use crate::families::{
    build_ordinary_family, chart_restrict, check_deformation_singular_locus, ordinary_point_certificate,
    sample_points, DeformationFamily, OrdinaryFamilySpec, OrdinaryVerdict,
};
use crate::milnor::{bp_spectrum, check_power_inclusion, check_vfiltration_inclusion, for_each_in_box, reduced_bs_root_set};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SweepKind {
    Vfilt,
    Spectrum,
    BlowupMixed,
    BlowupOrdinary,
    Inclusion,
    Locus,
    Charts,
}

impl SweepKind {
    pub const ALL: [SweepKind; 7] = [
        SweepKind::Vfilt,
        SweepKind::Spectrum,
        SweepKind::BlowupMixed,
        SweepKind::BlowupOrdinary,
        SweepKind::Inclusion,
        SweepKind::Locus,
        SweepKind::Charts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Vfilt => "vfilt",
            SweepKind::Spectrum => "spectrum",
            SweepKind::BlowupMixed => "blowup-mixed",
            SweepKind::BlowupOrdinary => "blowup-ordinary",
            SweepKind::Inclusion => "inclusion",
            SweepKind::Locus => "locus",
            SweepKind::Charts => "charts",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        SweepKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Bounds for a sweep; unset fields take the per-kind defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepBounds {
    pub max_n: Option<u32>,
    pub max_m: Option<u32>,
    pub max_a: Option<u32>,
    pub degree: Option<u32>,
    pub samples: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub kind: &'static str,
    pub parameters: BTreeMap<&'static str, u64>,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    pub passed: bool,
}

impl SweepReport {
    fn new(kind: SweepKind, parameters: &[(&'static str, u64)]) -> Self {
        SweepReport {
            kind: kind.name(),
            parameters: parameters.iter().copied().collect(),
            cases: 0,
            failures: 0,
            first_failure: None,
            passed: true,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

pub fn run_sweep(kind: SweepKind, bounds: &SweepBounds) -> SweepReport {
    match kind {
        SweepKind::Vfilt => {
            vfilt_identity_sweep(bounds.max_n.unwrap_or(4), bounds.max_m.unwrap_or(7), bounds.max_a.unwrap_or(12))
        }
        SweepKind::Spectrum => spectrum_sweep(bounds.max_n.unwrap_or(4), bounds.max_m.unwrap_or(6)),
        SweepKind::BlowupMixed => mixed_blowup_sweep(bounds.max_n.unwrap_or(6), bounds.max_a.unwrap_or(6)),
        SweepKind::BlowupOrdinary => ordinary_blowup_sweep(
            bounds.max_n.unwrap_or(6),
            bounds.max_m.unwrap_or(5),
            bounds.seed.unwrap_or(DEFAULT_SEED),
        ),
        SweepKind::Inclusion => inclusion_sweep(
            bounds.max_n.unwrap_or(3),
            bounds.max_m.unwrap_or(5),
            bounds.degree.unwrap_or(12),
            bounds.max_a.unwrap_or(6),
        ),
        SweepKind::Locus => {
            locus_sweep(bounds.samples.unwrap_or(1000) as usize, bounds.seed.unwrap_or(DEFAULT_SEED))
        }
        SweepKind::Charts => chart_sweep(bounds.max_n.unwrap_or(5)),
    }
}

fn descriptors(n: u32, max_m: u32, mut visit: impl FnMut(&BrieskornPham)) {
    let bounds = vec![max_m.saturating_sub(2); n as usize];
    for_each_in_box(&bounds, |offsets| {
        let d = BrieskornPham::new(offsets.iter().map(|o| o + 2).collect()).expect("exponents >= 2");
        visit(&d);
    });
}

/// `α^Ṽ − α^Br = Σ c_i/m_i` on every monomial with `a_i <= max_a` whose
/// class is non-zero, for descriptors with `m_i in [2, max_m]`.
pub fn vfilt_identity_sweep(max_n: u32, max_m: u32, max_a: u32) -> SweepReport {
    let mut report =
        SweepReport::new(SweepKind::Vfilt, &[("max_n", max_n as u64), ("max_m", max_m as u64), ("max_a", max_a as u64)]);
    for n in 1..=max_n {
        descriptors(n, max_m, |d| {
            for_each_in_box(&vec![max_a; n as usize], |a| {
                let e = ExponentVector::new(a.to_vec());
                if nonvanishing_violation(&e, d).is_some() {
                    return;
                }
                let v = vfilt_gap(&e, d).expect("precondition checked");
                // Σ c_i/m_i over the denominator Π m_i.
                let dec = decompose_residue(&e, d).expect("arity matches");
                let whole: i64 = d.exponents().iter().map(|&m| m as i64).product();
                let numer: i64 = dec.c().zip(d.exponents()).map(|(c, &m)| c as i64 * (whole / m as i64)).sum();
                let c_sum = Rational::new(numer, whole);
                let diff = &v.alpha_vtilde - &v.alpha_br;
                report.record(diff == c_sum && v.gap == c_sum, || format!("m={d} a={a:?}"));
            });
        });
    }
    report
}

/// Total multiplicity, symmetry, minimum and maximal root of every
/// spectrum with `m_i in [2, max_m]`.
pub fn spectrum_sweep(max_n: u32, max_m: u32) -> SweepReport {
    let mut report = SweepReport::new(SweepKind::Spectrum, &[("max_n", max_n as u64), ("max_m", max_m as u64)]);
    for n in 1..=max_n {
        descriptors(n, max_m, |d| {
            let sp = bp_spectrum(d).expect("small descriptor");
            let total: u64 = d.exponents().iter().map(|&m| (m - 1) as u64).product();
            let alpha = bp_minimal_exponent(d).as_rational().expect("finite").clone();
            let nn = Rational::from(n as i64);
            let symmetric = sp.entries().iter().all(|(v, &k)| sp.multiplicity(&(&nn - v)) == k);
            let roots = reduced_bs_root_set(d).expect("small descriptor");
            let ok = sp.total() == total
                && symmetric
                && sp.min() == Some(&alpha)
                && roots.last().map(|r| -r) == Some(alpha.clone());
            report.record(ok, || format!("m={d}"));
        });
    }
    report
}

/// Blow-up of `Σ_{i<=n-2} x_i^a + x_{n-1}^b + s·x_n^b` for `4 <= n <= max_n`,
/// `1 < b < a <= max_a`.
pub fn mixed_blowup_sweep(max_n: u32, max_a: u32) -> SweepReport {
    let mut report = SweepReport::new(SweepKind::BlowupMixed, &[("max_n", max_n as u64), ("max_a", max_a as u64)]);
    for n in 4..=max_n {
        for a in 3..=max_a {
            for b in 2..a {
                let p = mixed_power_model(n, a, b).expect("valid parameters");
                let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
                let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
                let chart = BlowupChart::new(xs, ys.clone()).expect("valid chart");
                let t = blowup_transform(&p, &chart, &ys[n as usize - 1]).expect("nonzero model");
                let head: Vec<String> = ys[..n as usize - 2].iter().map(|y| format!("{y}^{a}")).collect();
                let text = format!("({})*y{n}^{} + y{}^{b} + s", head.join(" + "), a - b, n - 1);
                let ctx = Context::new(ys.iter().map(String::as_str).chain(["s"])).expect("names");
                let expected = parse_polynomial(&text, ctx).expect("well-formed");
                let ok = t.exceptional_multiplicity == b && t.proper == expected;
                report.record(ok, || format!("n={n} a={a} b={b}: proper {}", t.proper));
            }
        }
    }
    report
}

fn random_form(rng: &mut ChaCha8Rng, ctx: &Context, degree: u32) -> SparsePolynomial {
    let n = ctx.len() - 1;
    let head = n - 1;
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let mut e = vec![0u32; n + 1];
        for _ in 0..degree {
            e[rng.gen_range(0..head)] += 1;
        }
        e[head] = rng.gen_range(0..=2);
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        terms.push((ExponentVector::new(e), Rational::from_integer(c)));
    }
    SparsePolynomial::from_terms(ctx, terms).expect("arity matches")
}

/// Local models `Σ_{i<n} x_i^m + f_{m+1} + f_{m+2} + s·x_n^m` with random
/// higher parts (coefficients polynomial in `x_n`), `2 <= n <= max_n`,
/// `2 <= m <= max_m`, each with zero, one and two higher parts.
pub fn ordinary_blowup_sweep(max_n: u32, max_m: u32, seed: u64) -> SweepReport {
    let mut report = SweepReport::new(
        SweepKind::BlowupOrdinary,
        &[("max_n", max_n as u64), ("max_m", max_m as u64), ("seed", seed)],
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=max_n as usize {
        let xctx = Context::numbered("x", n).with("s").expect("fresh name");
        let yctx = Context::numbered("y", n).with("s").expect("fresh name");
        for m in 2..=max_m {
            for parts in 0..=2u32 {
                let highers: Vec<SparsePolynomial> = (1..=parts).map(|j| random_form(&mut rng, &xctx, m + j)).collect();
                let mut p = SparsePolynomial::zero(&xctx);
                let mut expected = SparsePolynomial::var(&yctx, "s").expect("in context");
                for i in 0..n - 1 {
                    let e = ExponentVector::unit(n + 1, i, m);
                    p = &p + &SparsePolynomial::monomial(&xctx, e.clone(), Rational::one());
                    expected = &expected + &SparsePolynomial::monomial(&yctx, e, Rational::one());
                }
                let mut sg = vec![0; n + 1];
                sg[n - 1] = m;
                sg[n] = 1;
                p = &p + &SparsePolynomial::monomial(&xctx, ExponentVector::new(sg), Rational::one());
                for (j, h) in highers.iter().enumerate() {
                    p = &p + h;
                    let lifted = h.relabel(&yctx).expect("same arity");
                    expected = &expected + &lifted.shift(&ExponentVector::unit(n + 1, n - 1, j as u32 + 1));
                }
                let outcome = verify_ordinary_blowup_shape(&p, m, "s");
                let ok = match &outcome {
                    Ok(r) => {
                        let yn = ExponentVector::unit(n + 1, n - 1, r.transform.exceptional_multiplicity);
                        r.ok && r.certificate.kind == CertificateKind::GraphOverS
                            && r.transform.exceptional_multiplicity == m
                            && r.transform.proper == expected
                            && r.transform.proper.shift(&yn) == r.transform.total
                    }
                    Err(_) => false,
                };
                report.record(ok, || format!("n={n} m={m} p={p}: {outcome:?}"));
            }
        }
    }
    report
}

/// Both Jacobian-ideal inclusions: every monomial of degree `<= degree`
/// above the threshold, and `f^k x^a` for `a_i <= max_a`.
pub fn inclusion_sweep(max_n: u32, max_m: u32, degree: u32, max_a: u32) -> SweepReport {
    let mut report = SweepReport::new(
        SweepKind::Inclusion,
        &[("max_n", max_n as u64), ("max_m", max_m as u64), ("degree", degree as u64), ("max_a", max_a as u64)],
    );
    for n in 1..=max_n {
        descriptors(n, max_m, |d| {
            let r = check_vfiltration_inclusion(d, degree);
            report.record(matches!(&r, Ok(r) if r.passed), || format!("threshold m={d}: {r:?}"));
            for_each_in_box(&vec![max_a; n as usize], |a| {
                let r = check_power_inclusion(d, &ExponentVector::new(a.to_vec()));
                report.record(matches!(&r, Ok(r) if r.member), || format!("power m={d} a={a:?}: {r:?}"));
            });
        });
    }
    report
}

/// The three reference deformations used for the singular-locus check.
pub fn locus_families() -> Vec<DeformationFamily> {
    let family = build_ordinary_family(&OrdinaryFamilySpec::new(3, 2, 4, 1).expect("valid")).expect("valid");
    let g = parse_polynomial("x1^4", family.context().clone()).expect("well-formed");
    let infer = |t: &str| parse_polynomial(t, ContextSpec::Infer).expect("well-formed");
    vec![
        DeformationFamily::new(&infer("x^2*y"), &infer("y"), "s").expect("fresh parameter"),
        DeformationFamily::new(&infer("x^2 + y^3"), &infer("x"), "s").expect("fresh parameter"),
        DeformationFamily::new(&family, &g, "s").expect("fresh parameter"),
    ]
}

/// Pointwise comparison of the two descriptions of the singular locus of
/// `f + s·g` along `s = 0`.
pub fn locus_sweep(samples: usize, seed: u64) -> SweepReport {
    let mut report = SweepReport::new(SweepKind::Locus, &[("samples", samples as u64), ("seed", seed)]);
    for (i, fam) in locus_families().iter().enumerate() {
        let points = sample_points(fam.coordinates().len(), samples, seed.wrapping_add(i as u64));
        for x in points {
            let r = check_deformation_singular_locus(fam, std::slice::from_ref(&x));
            let ok = matches!(&r, Ok(r) if r.passed);
            report.record(ok, || format!("family {i} at {x:?}: {r:?}"));
        }
    }
    report
}

/// Ordinary `m`-fold points at the origins of the charts `x_j = 1`,
/// `j <= a`, of the homogeneous family with `d = 2m`, `m in {2, 3}`.
pub fn chart_sweep(max_n: u32) -> SweepReport {
    let mut report = SweepReport::new(SweepKind::Charts, &[("max_n", max_n as u64)]);
    for n in 3..=max_n {
        for m in [2, 3] {
            for a in 1..=n {
                let spec = OrdinaryFamilySpec::new(n, m, 2 * m, a).expect("valid");
                let f = build_ordinary_family(&spec).expect("valid");
                for j in 1..=a as usize {
                    let outcome = chart_restrict(&f, j).and_then(|c| {
                        let origin = vec![Rational::zero(); c.restricted.context().len()];
                        ordinary_point_certificate(&c.restricted, &origin, m)
                    });
                    let ok = matches!(&outcome, Ok(c) if c.verdict == OrdinaryVerdict::Ordinary && c.order == m as u64);
                    report.record(ok, || format!("n={n} m={m} a={a} j={j}: {outcome:?}"));
                }
            }
        }
    }
    report
}
