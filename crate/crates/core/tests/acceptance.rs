//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! case count and wall time; the run fails if any criterion fails or
//! exceeds its time budget. All comparisons are exact.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singulex::blowup::{blowup_transform, mixed_power_model, verify_ordinary_blowup_shape, BlowupChart, CertificateKind};
use singulex::exponents::{bp_minimal_exponent, decompose_residue, hm_applicable, vfilt_gap};
use singulex::families::{
    build_ordinary_family, chart_restrict, check_deformation_singular_locus, ordinary_point_certificate,
    sample_points, DeformationFamily, OrdinaryFamilySpec, OrdinaryVerdict,
};
use singulex::milnor::{bp_spectrum, check_power_inclusion, check_vfiltration_inclusion, jacobian_membership, reduced_bs_root_set};
use singulex::{parse_polynomial, BrieskornPham, Context, ContextSpec, ExponentVector, Rational, SparsePolynomial, Substitution};

type Outcome = Result<u64, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "valuation gap identity sweep", budget: secs(10), run: vfilt_identity },
        Criterion { id: 2, name: "mixed-power blow-up identity", budget: secs(5), run: mixed_blowup },
        Criterion { id: 3, name: "ordinary local-model blow-up identity", budget: secs(5), run: ordinary_blowup },
        Criterion { id: 4, name: "spectrum consistency", budget: secs(10), run: spectrum_consistency },
        Criterion { id: 5, name: "Jacobian-ideal inclusion sweeps", budget: secs(30), run: inclusions },
        Criterion { id: 6, name: "deformation singular-locus equivalence", budget: secs(5), run: singular_locus },
        Criterion { id: 7, name: "applicability thresholds n=7 m=2", budget: secs(1), run: applicability_gate },
        Criterion { id: 8, name: "homogeneous family chart certificates", budget: secs(5), run: family_charts },
        Criterion { id: 9, name: "oracle equivalences", budget: secs(10), run: oracle_equivalence },
        Criterion { id: 10, name: "algebra property suite", budget: secs(20), run: algebra_properties },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let line = match &outcome {
            Ok(_) if elapsed > c.budget => {
                format!("over time budget {:.0?}", c.budget)
            }
            Ok(cases) => format!("{cases} cases"),
            Err(e) => e.clone(),
        };
        let pass = outcome.is_ok() && elapsed <= c.budget;
        failed += !pass as u32;
        println!(
            "criterion {:>2} {} {:<40} {line} [{:.2}s]",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() as u32 - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn bp(m: &[u32]) -> BrieskornPham {
    BrieskornPham::new(m.to_vec()).unwrap()
}

/// Calls `visit` on every vector in `lo..=hi` per coordinate, `n` coordinates.
fn boxes(n: usize, lo: u32, hi: u32, visit: &mut dyn FnMut(&[u32])) {
    let mut v = vec![lo; n];
    loop {
        visit(&v);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if v[i] < hi {
                v[i] += 1;
                break;
            }
            v[i] = lo;
            i += 1;
        }
    }
}

fn q(text: &str) -> Rational {
    text.parse().unwrap()
}

// Criterion 1 ---------------------------------------------------------------

fn vfilt_identity() -> Outcome {
    let mut cases = 0u64;
    let mut failure = None;
    for n in 1..=4usize {
        boxes(n, 2, 7, &mut |m| {
            let d = bp(m);
            let whole: i64 = m.iter().map(|&x| x as i64).product();
            boxes(n, 0, 12, &mut |a| {
                if a.iter().zip(m).any(|(&ai, &mi)| (ai + 1) % mi == 0) {
                    return;
                }
                cases += 1;
                let gap_numer: i64 = a.iter().zip(m).map(|(&ai, &mi)| (ai / (mi - 1)) as i64 * (whole / mi as i64)).sum();
                let expected = Rational::new(gap_numer, whole);
                let r = vfilt_gap(&ExponentVector::new(a.to_vec()), &d).unwrap();
                if (&r.alpha_vtilde - &r.alpha_br != expected || r.gap != expected) && failure.is_none() {
                    failure = Some(format!("m={m:?} a={a:?}: {r:?}, expected gap {expected}"));
                }
            });
        });
    }
    if let Some(f) = failure {
        return Err(f);
    }
    // Admissible (m, a) pairs per coordinate: 60; total Σ_{n<=4} 60^n.
    check(cases == 60 + 3600 + 216_000 + 12_960_000, || format!("unexpected case count {cases}"))?;
    Ok(cases)
}

// Criterion 2 ---------------------------------------------------------------

fn mixed_blowup() -> Outcome {
    let mut cases = 0;
    for n in 4..=6usize {
        for a in 3..=6u32 {
            for b in 2..a {
                let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
                let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
                let xctx = Context::new(xs.iter().map(String::as_str).chain(["s"])).unwrap();
                let yctx = Context::new(ys.iter().map(String::as_str).chain(["s"])).unwrap();
                let head: Vec<String> = xs[..n - 2].iter().map(|x| format!("{x}^{a}")).collect();
                let text = format!("{} + x{}^{b} + s*x{n}^{b}", head.join(" + "), n - 1);
                let p = parse_polynomial(&text, xctx).unwrap();
                check(mixed_power_model(n as u32, a, b).unwrap() == p, || format!("model mismatch for {text}"))?;

                let chart = BlowupChart::new(xs.clone(), ys.clone()).unwrap();
                let t = blowup_transform(&p, &chart, &ys[n - 1]).unwrap();

                // (Σ y_i^a) y_n^{a-b} + y_{n-1}^b + s, built term by term.
                let width = n + 1;
                let mut terms = Vec::new();
                for i in 0..n - 2 {
                    let mut e = vec![0; width];
                    e[i] = a;
                    e[n - 1] = a - b;
                    terms.push((ExponentVector::new(e), Rational::one()));
                }
                terms.push((ExponentVector::unit(width, n - 2, b), Rational::one()));
                terms.push((ExponentVector::unit(width, n, 1), Rational::one()));
                let expected = SparsePolynomial::from_terms(&yctx, terms).unwrap();

                check(t.exceptional_multiplicity == b, || format!("{text}: multiplicity {}", t.exceptional_multiplicity))?;
                check(t.proper == expected, || format!("{text}: proper {} != {expected}", t.proper))?;
                let yb = ExponentVector::unit(width, n - 1, b);
                check(t.proper.shift(&yb) == t.total, || format!("{text}: factorization"))?;
                cases += 1;
            }
        }
    }
    check(cases == 3 * 10, || format!("unexpected case count {cases}"))?;
    Ok(cases)
}

// Criterion 3 ---------------------------------------------------------------

/// Random form of degree `deg` in the first `n-1` coordinates with
/// coefficients in `x_n` (index `n-1`), over `n` coordinates plus `s`.
fn random_part(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> Vec<(Vec<u32>, i64)> {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; n + 1];
        for _ in 0..deg {
            e[rng.gen_range(0..n - 1)] += 1;
        }
        e[n - 1] = rng.gen_range(0..=2);
        terms.push((e, rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    terms
}

fn ordinary_blowup() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1302);
    let mut cases = 0;
    for n in 2..=6usize {
        let xctx = Context::numbered("x", n).with("s").unwrap();
        let yctx = Context::numbered("y", n).with("s").unwrap();
        let chart = BlowupChart::new(
            (1..=n).map(|i| format!("x{i}")).collect(),
            (1..=n).map(|i| format!("y{i}")).collect(),
        )
        .unwrap();
        for m in 2..=5u32 {
            for parts in 0..=2u32 {
                for _trial in 0..4 {
                    // f = Σ_{i<n} x_i^m + f_{m+1} + f_{m+2}, g = x_n^m.
                    let mut terms: Vec<(Vec<u32>, i64)> = (0..n - 1)
                        .map(|i| {
                            let mut e = vec![0; n + 1];
                            e[i] = m;
                            (e, 1)
                        })
                        .collect();
                    for j in 1..=parts {
                        terms.extend(random_part(&mut rng, n, m + j));
                    }
                    let mut sg = vec![0; n + 1];
                    sg[n - 1] = m;
                    sg[n] = 1;
                    terms.push((sg, 1));

                    // Oracle: x^e ↦ y^e · y_n^{|e'| - m}, where |e'| is the
                    // degree in the first n-1 coordinates; s·x_n^m ↦ s.
                    let mut expected: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
                    for (e, c) in &terms {
                        let head: u32 = e[..n - 1].iter().sum();
                        let mut f = e.clone();
                        f[n - 1] = e[n - 1] + head - m;
                        *expected.entry(f).or_insert(0) += c;
                    }
                    let to_poly = |ctx: &Context, ts: Vec<(Vec<u32>, i64)>| {
                        SparsePolynomial::from_terms(
                            ctx,
                            ts.into_iter().map(|(e, c)| (ExponentVector::new(e), Rational::from_integer(c))),
                        )
                        .unwrap()
                    };
                    let p = to_poly(&xctx, terms);
                    let expected = to_poly(&yctx, expected.into_iter().collect());

                    let t = blowup_transform(&p, &chart, &format!("y{n}")).unwrap();
                    check(t.exceptional_multiplicity == m, || format!("{p}: multiplicity {}", t.exceptional_multiplicity))?;
                    check(t.proper == expected, || format!("{p}: proper {} != {expected}", t.proper))?;
                    let r = verify_ordinary_blowup_shape(&p, m, "s").map_err(|e| format!("{p}: {e}"))?;
                    check(r.ok && r.certificate.kind == CertificateKind::GraphOverS, || format!("{p}: shape not ok"))?;
                    check(r.transform.proper.partial_derivative("s").unwrap().as_constant() == Some(Rational::one()), || {
                        format!("{p}: certificate issued without unit s-derivative")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

// Criterion 4 ---------------------------------------------------------------

fn spectrum_consistency() -> Outcome {
    let mut cases = 0;
    let mut failure: Option<String> = None;
    for n in 1..=4usize {
        boxes(n, 2, 6, &mut |m| {
            if failure.is_some() {
                return;
            }
            let d = bp(m);
            let sp = bp_spectrum(&d).unwrap();
            let mu: u64 = m.iter().map(|&x| (x - 1) as u64).product();
            let whole: i64 = m.iter().map(|&x| x as i64).product();
            let alpha = Rational::new(m.iter().map(|&x| whole / x as i64).sum(), whole);
            let nn = Rational::from_integer(n as i64);
            let symmetric = sp.entries().iter().all(|(v, &k)| sp.multiplicity(&(&nn - v)) == k);
            let roots = reduced_bs_root_set(&d).unwrap();
            let max_root = roots.iter().max().cloned();
            let ok = sp.total() == mu
                && symmetric
                && sp.min() == Some(&alpha)
                && bp_minimal_exponent(&d).as_rational() == Some(&alpha)
                && max_root == Some(-&alpha);
            if !ok {
                failure = Some(format!("m={m:?}"));
            }
            cases += 1;
        });
    }
    failure.map_or(Ok(cases), Err)
}

// Criterion 5 ---------------------------------------------------------------

fn vtilde_numer(a: &[u32], m: &[u32], whole: i64) -> i64 {
    a.iter()
        .zip(m)
        .map(|(&ai, &mi)| {
            let (b, c) = (ai % (mi - 1), ai / (mi - 1));
            (b as i64 + 1 + c as i64 * mi as i64) * (whole / mi as i64)
        })
        .sum()
}

fn in_jacobian(e: &[u32], m: &[u32]) -> bool {
    e.iter().zip(m).any(|(&ei, &mi)| ei + 1 >= mi)
}

fn inclusions() -> Outcome {
    let mut cases = 0u64;
    let mut failure: Option<String> = None;
    for n in 1..=3usize {
        boxes(n, 2, 5, &mut |m| {
            if failure.is_some() {
                return;
            }
            let d = bp(m);
            let whole: i64 = m.iter().map(|&x| x as i64).product();
            let alpha_numer: i64 = m.iter().map(|&x| whole / x as i64).sum();
            let threshold_numer = n as i64 * whole - alpha_numer;

            let r = check_vfiltration_inclusion(&d, 12).unwrap();
            let mut claims = 0;
            let mut counter = 0;
            boxes(n, 0, 12, &mut |a| {
                if a.iter().sum::<u32>() > 12 {
                    return;
                }
                if vtilde_numer(a, m, whole) > threshold_numer {
                    claims += 1;
                    counter += !in_jacobian(a, m) as u32;
                }
            });
            if !r.passed || counter != 0 || r.claims_checked != claims {
                failure = Some(format!("threshold inclusion m={m:?}: {r:?}, oracle claims {claims}"));
                return;
            }
            cases += 1;

            let f = d.polynomial(&d.default_context()).unwrap();
            boxes(n, 0, 6, &mut |a| {
                if failure.is_some() {
                    return;
                }
                // Least k >= 0 with k > n - α̃ - α^Ṽ, over the denominator Π m_i.
                let bound = threshold_numer - vtilde_numer(a, m, whole);
                let k = if bound < 0 { 0 } else { bound.div_euclid(whole) + 1 } as u32;
                let r = check_power_inclusion(&d, &ExponentVector::new(a.to_vec())).unwrap();
                let product = f.pow(k).unwrap().shift(&ExponentVector::new(a.to_vec()));
                let member = product.terms().all(|(e, _)| in_jacobian(e.as_slice(), m));
                if r.k != k || !r.member || !member || r.product_terms != product.len() {
                    failure = Some(format!("power inclusion m={m:?} a={a:?}: {r:?}, oracle k={k}"));
                }
                cases += 1;
            });
        });
    }
    failure.map_or(Ok(cases), Err)
}

// Criterion 6 ---------------------------------------------------------------

fn singular_locus() -> Outcome {
    let infer = |t: &str| parse_polynomial(t, ContextSpec::Infer).unwrap();
    let family = build_ordinary_family(&OrdinaryFamilySpec::new(3, 2, 4, 1).unwrap()).unwrap();
    let g3 = parse_polynomial("x1^4", family.context().clone()).unwrap();
    // Hand-derived: in each family both sides reduce to "every coordinate is 0".
    //   x^2y + s y:        ∂s = y, ∂y = x^2 + s;  Sing x^2y = {x = 0}, g = y.
    //   x^2 + y^3 + s x:   ∂s = x, ∂y = 3y^2;     Sing = {0},          g = x.
    //   f + s x1^4:        ∂s = x1^4, f(0,x2,x3) = x2^4 + x3^4;  Sing f = {x2 = x3 = 0}, g = x1^4.
    let families = [
        DeformationFamily::new(&infer("x^2*y"), &infer("y"), "s").unwrap(),
        DeformationFamily::new(&infer("x^2 + y^3"), &infer("x"), "s").unwrap(),
        DeformationFamily::new(&family, &g3, "s").unwrap(),
    ];
    let mut cases = 0;
    let mut hits = 0;
    for (i, fam) in families.iter().enumerate() {
        let points = sample_points(fam.coordinates().len(), 1000, 2024 + i as u64);
        check(points.iter().flatten().all(|c| c.numer().magnitude() <= &100u32.into() && c.denom() <= 100.into()), || {
            "sample coordinates out of range".into()
        })?;
        for x in &points {
            let r = check_deformation_singular_locus(fam, std::slice::from_ref(x)).unwrap();
            let oracle = x.iter().all(Rational::is_zero) as usize;
            check(r.passed && r.in_total_locus == oracle && r.in_base_locus == oracle, || {
                format!("family {i} at {x:?}: {r:?}, oracle {oracle}")
            })?;
            hits += oracle;
            cases += 1;
        }
    }
    check(hits > 0, || "no singular point sampled".into())?;
    Ok(cases)
}

// Criterion 7 ---------------------------------------------------------------

fn applicability_gate() -> Outcome {
    let (n, m) = (7u32, 2u32);
    let mut du_bois = BTreeSet::new();
    let mut rational = BTreeSet::new();
    for k in 0..=20u32 {
        let r = hm_applicable(n, m, k).map_err(|e| e.to_string())?;
        // k <= (n-1)/m - 1  ⟺  m(k+1) < n.
        check(r.du_bois_ok == (m * (k + 1) < n), || format!("du Bois at k={k}"))?;
        check(r.rational_ok == (m * (k + 1) < n - 1), || format!("rational at k={k}"))?;
        check(r.threshold == Rational::from_integer(2), || format!("threshold {}", r.threshold))?;
        if r.du_bois_ok {
            du_bois.insert(k);
        }
        if r.rational_ok {
            rational.insert(k);
        }
    }
    check(du_bois == BTreeSet::from([0, 1, 2]), || format!("du Bois set {du_bois:?}"))?;
    check(rational == BTreeSet::from([0, 1]), || format!("rational set {rational:?}"))?;
    Ok(21)
}

// Criterion 8 ---------------------------------------------------------------

fn family_charts() -> Outcome {
    let mut cases = 0;
    for n in 3..=5u32 {
        for m in [2u32, 3] {
            for a in 1..=n {
                let spec = OrdinaryFamilySpec::new(n, m, 2 * m, a).unwrap();
                let f = build_ordinary_family(&spec).unwrap();
                for j in 1..=a as usize {
                    let c = chart_restrict(&f, j).unwrap();
                    let width = c.restricted.context().len();
                    // Oracle: the lowest-degree terms are exactly one pure
                    // m-th power per remaining coordinate.
                    let low = c.restricted.terms().map(|(e, _)| e.total_degree()).min().unwrap();
                    let lowest: Vec<_> = c.restricted.terms().filter(|(e, _)| e.total_degree() == low).collect();
                    let pure: BTreeSet<usize> = lowest
                        .iter()
                        .filter_map(|(e, c)| {
                            let support: Vec<usize> = (0..width).filter(|&i| e.get(i) > 0).collect();
                            (support.len() == 1 && e.get(support[0]) == m && !c.is_zero()).then(|| support[0])
                        })
                        .collect();
                    check(low == m as u64 && lowest.len() == width && pure.len() == width, || {
                        format!("n={n} m={m} a={a} j={j}: lowest terms {lowest:?}")
                    })?;

                    let origin = vec![Rational::zero(); width];
                    let cert = ordinary_point_certificate(&c.restricted, &origin, m).unwrap();
                    check(cert.verdict == OrdinaryVerdict::Ordinary && cert.order == m as u64, || {
                        format!("n={n} m={m} a={a} j={j}: {cert:?}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

// Criterion 9 ---------------------------------------------------------------

fn oracle_equivalence() -> Outcome {
    let mut cases = 0u64;

    // Residue decomposition against exhaustive (b, c) search, on pairs of
    // coordinates.
    let search = |a: u32, m: u32| -> Vec<(u32, u32)> {
        (0..=m - 2).flat_map(|b| (0..=a).map(move |c| (b, c))).filter(|&(b, c)| b + c * (m - 1) == a).collect()
    };
    let mut single = Vec::new();
    for m in 2..=10u32 {
        for a in 0..=30u32 {
            let found = search(a, m);
            check(found.len() == 1, || format!("a={a} m={m}: {} solutions", found.len()))?;
            single.push((a, m, found[0]));
        }
    }
    for &(a1, m1, p1) in &single {
        for &(a2, m2, p2) in single.iter().step_by(7) {
            let dec = decompose_residue(&ExponentVector::new(vec![a1, a2]), &bp(&[m1, m2])).unwrap();
            check(dec.pairs() == [p1, p2], || format!("a=({a1},{a2}) m=({m1},{m2}): {:?}", dec.pairs()))?;
            cases += 1;
        }
    }

    // Spectrum against direct lattice enumeration over Π m_i.
    for n in 1..=3usize {
        let mut failure = None;
        boxes(n, 2, 7, &mut |m| {
            let whole: i64 = m.iter().map(|&x| x as i64).product();
            let mut oracle: BTreeMap<Rational, u64> = BTreeMap::new();
            boxes(n, 0, 5, &mut |a| {
                if a.iter().zip(m).all(|(&ai, &mi)| ai + 2 <= mi) {
                    let num: i64 = a.iter().zip(m).map(|(&ai, &mi)| (ai as i64 + 1) * (whole / mi as i64)).sum();
                    *oracle.entry(Rational::new(num, whole)).or_insert(0) += 1;
                }
            });
            if bp_spectrum(&bp(m)).unwrap().entries() != &oracle && failure.is_none() {
                failure = Some(format!("spectrum m={m:?}"));
            }
            cases += 1;
        });
        if let Some(f) = failure {
            return Err(f);
        }
    }

    // Jacobian membership against term-by-generator divisibility.
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for _ in 0..3000 {
        let n = rng.gen_range(1..=3usize);
        let m: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=6)).collect();
        let ctx = Context::numbered("x", n);
        let terms: Vec<(ExponentVector, Rational)> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
                (ExponentVector::new(e), Rational::from_integer(rng.gen_range(1..=9)))
            })
            .collect();
        let g = SparsePolynomial::from_terms(&ctx, terms).unwrap();
        let oracle = g.terms().all(|(e, _)| (0..n).any(|i| e.get(i) >= m[i] - 1));
        let got = jacobian_membership(&g, &bp(&m)).unwrap();
        check(got == oracle, || format!("membership of {g} for m={m:?}: got {got}"))?;
        cases += 1;
    }
    Ok(cases)
}

// Criterion 10 --------------------------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng, ctx: &Context) -> SparsePolynomial {
    let n = ctx.len();
    let terms: Vec<(ExponentVector, Rational)> = (0..rng.gen_range(0..=6))
        .map(|_| {
            let degree = rng.gen_range(0..=6u32);
            let mut e = vec![0u32; n];
            for _ in 0..degree {
                e[rng.gen_range(0..n)] += 1;
            }
            let num = rng.gen_range(-20..=20);
            let den = rng.gen_range(1..=12);
            (ExponentVector::new(e), Rational::new(num, den))
        })
        .collect();
    SparsePolynomial::from_terms(ctx, terms).unwrap()
}

fn algebra_properties() -> Outcome {
    let ctx = Context::numbered("x", 4);
    let mut rng = ChaCha8Rng::seed_from_u64(10_000);
    let polys: Vec<SparsePolynomial> = (0..10_000).map(|_| random_poly(&mut rng, &ctx)).collect();
    let zero = SparsePolynomial::zero(&ctx);
    let one = SparsePolynomial::one(&ctx);
    let vars = ["x1", "x2", "x3", "x4"];

    for (i, p) in polys.iter().enumerate() {
        let qq = &polys[(i * 7 + 1) % polys.len()];
        let r = &polys[(i * 13 + 5) % polys.len()];
        let fail = |what: &str| format!("{what} fails for p={p}, q={qq}, r={r}");

        check(p + qq == qq + p && p * qq == qq * p, || fail("commutativity"))?;
        check(&(p + qq) + r == p + &(qq + r), || fail("additive associativity"))?;
        check(&(p * qq) * r == p * &(qq * r), || fail("multiplicative associativity"))?;
        check(p * &(qq + r) == &(p * qq) + &(p * r), || fail("distributivity"))?;
        check(p + &zero == *p && p * &one == *p && (p - &p.clone()).is_zero() && (p * &zero).is_zero(), || fail("identities"))?;

        // Evaluation is a ring homomorphism.
        let pt: Vec<Rational> = (0..4).map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        let (pv, qv) = (p.evaluate_at(&pt).unwrap(), qq.evaluate_at(&pt).unwrap());
        check((p * qq).evaluate_at(&pt).unwrap() == &pv * &qv, || fail("evaluation of products"))?;
        check((p + qq).evaluate_at(&pt).unwrap() == &pv + &qv, || fail("evaluation of sums"))?;

        // Substitution is a ring homomorphism and commutes with evaluation.
        if i % 10 == 0 {
            let mut sub = Substitution::new(&ctx);
            for v in vars {
                let image = random_poly(&mut rng, &ctx);
                sub.assign(v, SparsePolynomial::from_terms(&ctx, image.terms().take(2).map(|(e, c)| (e.clone(), c.clone()))).unwrap()).unwrap();
            }
            let (ps, qs) = (sub.apply(p).unwrap(), sub.apply(qq).unwrap());
            check(sub.apply(&(p * qq)).unwrap() == &ps * &qs, || fail("substitution of products"))?;
            check(sub.apply(&(p + qq)).unwrap() == &ps + &qs, || fail("substitution of sums"))?;
            let images: Vec<Rational> = sub.assignments().map(|(_, img)| img.evaluate_at(&pt).unwrap()).collect();
            check(ps.evaluate_at(&pt).unwrap() == p.evaluate_at(&images).unwrap(), || fail("substitution then evaluation"))?;
        }

        // Leibniz rule in every variable.
        for v in vars {
            let lhs = (p * qq).partial_derivative(v).unwrap();
            let rhs = &(&p.partial_derivative(v).unwrap() * qq) + &(p * &qq.partial_derivative(v).unwrap());
            check(lhs == rhs, || fail(&format!("Leibniz rule in {v}")))?;
        }

        // Printing and parsing round-trip, in the fixed and the inferred context.
        let text = p.to_string();
        check(parse_polynomial(&text, ctx.clone()).unwrap() == *p, || fail("print/parse round-trip"))?;
        let inferred = parse_polynomial(&text, ContextSpec::Infer).unwrap();
        check(inferred.embed(&ctx).unwrap() == *p, || fail("inferred-context round-trip"))?;
        let json = serde_json::to_string(p).unwrap();
        let back: String = serde_json::from_str(&json).unwrap();
        check(parse_polynomial(&back, ctx.clone()).unwrap() == *p, || fail("JSON round-trip"))?;
        for (_, c) in p.terms() {
            let cj: Rational = serde_json::from_str(&serde_json::to_string(c).unwrap()).unwrap();
            check(q(&c.to_string()) == *c && cj == *c, || fail("coefficient round-trip"))?;
        }
    }
    Ok(polys.len() as u64)
}
