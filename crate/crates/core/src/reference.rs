//! Replay of the worked examples the library is built around.
//!
//! Each example recomputes a value through the public API and compares its
//! canonical text with the known result.

use serde::Serialize;

use crate::algebra::{parse_polynomial, Context, Rational, SparsePolynomial, Substitution};
use crate::blowup::{blowup_transform, verify_ordinary_blowup_shape, BlowupChart};
use crate::exponents::{bp_minimal_exponent, classify, hm_applicable, min_product_rule, slice_exponent_ordinary_mple};
use crate::exponents::{BrieskornPham, ExponentValue};
use crate::families::{build_ordinary_family, chart_restrict, OrdinaryFamilySpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceOutcome {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

type Replay = fn() -> Result<String, String>;

fn poly(text: &str, names: &[&str]) -> Result<SparsePolynomial, String> {
    let ctx = Context::new(names.iter().copied()).map_err(|e| e.to_string())?;
    parse_polynomial(text, ctx).map_err(|e| e.to_string())
}

fn bp(m: &[u32]) -> Result<BrieskornPham, String> {
    BrieskornPham::new(m.to_vec()).map_err(|e| e.to_string())
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

const EXAMPLES: &[(&str, &str, Replay)] = &[
    ("principal chart pull-back of x1^2 + x2^2", "y1^2*y3^2 + y2^2*y3^2", || {
        let p = poly("x1^2 + x2^2", &["x1", "x2"])?;
        let ctx = Context::new(["y1", "y2", "y3"]).map_err(err)?;
        let sub = Substitution::new(&ctx)
            .with("x1", parse_polynomial("y1*y3", ctx.clone()).map_err(err)?)
            .and_then(|s| s.with("x2", parse_polynomial("y2*y3", ctx.clone())?))
            .map_err(err)?;
        Ok(sub.apply(&p).map_err(err)?.to_string())
    }),
    ("exceptional factor of the total transform", "2; y1^2 + y2^2 + s", || {
        let p = poly("y1^2*y3^2 + y2^2*y3^2 + s*y3^2", &["y1", "y2", "y3", "s"])?;
        let (k, q) = p.factor_out_power("y3").map_err(err)?;
        Ok(format!("{k}; {q}"))
    }),
    ("leading form of a chart restriction", "2; x2^2 + x3^2", || {
        let p = poly("x2^2 + x3^2 + x2^4 + x3^4", &["x2", "x3"])?;
        let (k, q) = p.lowest_degree_part(&[Rational::zero(), Rational::zero()]).map_err(err)?;
        Ok(format!("{k}; {q}"))
    }),
    ("minimal exponent of four fourth powers", "1", || Ok(bp_minimal_exponent(&bp(&[4, 4, 4, 4])?).to_string())),
    ("minimal exponent of a cube in one variable", "1/3", || Ok(bp_minimal_exponent(&bp(&[3])?).to_string())),
    ("slice exponent n=4 m=2", "3/2", || Ok(slice_exponent_ordinary_mple(4, 2).map_err(err)?.to_string())),
    ("slice exponent n=7 m=2", "3", || Ok(slice_exponent_ordinary_mple(7, 2).map_err(err)?.to_string())),
    ("slice exponent n=3 m=3", "2/3", || Ok(slice_exponent_ordinary_mple(3, 3).map_err(err)?.to_string())),
    ("minimum rule for a product", "1/2", || {
        let one = ExponentValue::finite(Rational::one()).map_err(err)?;
        let half = ExponentValue::finite(Rational::new(1, 2)).map_err(err)?;
        Ok(min_product_rule(&one, &half).to_string())
    }),
    ("classification of 3/2 at k=0", "du_bois=true rational=true", || {
        let r = classify(&ExponentValue::finite(Rational::new(3, 2)).map_err(err)?, 0);
        Ok(format!("du_bois={} rational={}", r.is_k_du_bois, r.is_k_rational))
    }),
    ("applicability n=7 m=2 k=2", "du_bois=true rational=false", || {
        let r = hm_applicable(7, 2, 2).map_err(err)?;
        Ok(format!("du_bois={} rational={}", r.du_bois_ok, r.rational_ok))
    }),
    ("applicability n=7 m=2 k=1", "du_bois=true rational=true", || {
        let r = hm_applicable(7, 2, 1).map_err(err)?;
        Ok(format!("du_bois={} rational={}", r.du_bois_ok, r.rational_ok))
    }),
    (
        "blow-up of x1^2 + x2^2 + s*x3^2",
        "total=y1^2*y3^2 + y2^2*y3^2 + y3^2*s; mult=2; proper=y1^2 + y2^2 + s",
        || {
            let p = poly("x1^2 + x2^2 + s*x3^2", &["x1", "x2", "x3", "s"])?;
            let chart = BlowupChart::parse("x1,x2,x3:y1,y2,y3").map_err(err)?;
            let t = blowup_transform(&p, &chart, "y3").map_err(err)?;
            Ok(format!("total={}; mult={}; proper={}", t.total, t.exceptional_multiplicity, t.proper))
        },
    ),
    ("blow-up of x1^3 + x2^3 + x3^2 + s*x4^2", "mult=2; proper=y1^3*y4 + y2^3*y4 + y3^2 + s", || {
        let p = poly("x1^3 + x2^3 + x3^2 + s*x4^2", &["x1", "x2", "x3", "x4", "s"])?;
        let chart = BlowupChart::parse("x1,x2,x3,x4:y1,y2,y3,y4").map_err(err)?;
        let t = blowup_transform(&p, &chart, "y4").map_err(err)?;
        Ok(format!("mult={}; proper={}", t.exceptional_multiplicity, t.proper))
    }),
    ("smooth proper transform of an ordinary double model", "ok=true; GraphOverS", || {
        let p = poly("x1^2 + x2^2 + s*x3^2", &["x1", "x2", "x3", "s"])?;
        let r = verify_ordinary_blowup_shape(&p, 2, "s").map_err(err)?;
        Ok(format!("ok={}; {:?}", r.ok, r.certificate.kind))
    }),
    ("smooth proper transform of a mixed-power model", "ok=true; GraphOverS", || {
        let p = poly("x1^3 + x2^3 + x3^2 + s*x4^2", &["x1", "x2", "x3", "x4", "s"])?;
        let r = verify_ordinary_blowup_shape(&p, 2, "s").map_err(err)?;
        Ok(format!("ok={}; {:?}", r.ok, r.certificate.kind))
    }),
    ("homogeneous family n=3 m=2 d=4 a=1", "x1^2*x2^2 + x1^2*x3^2 + x2^4 + x3^4", || {
        let spec = OrdinaryFamilySpec::new(3, 2, 4, 1).map_err(err)?;
        Ok(build_ordinary_family(&spec).map_err(err)?.to_string())
    }),
    (
        "chart x1=1 of the homogeneous family",
        "x2^4 + x3^4 + x2^2 + x3^2; lowest=x2^2 + x3^2; diagonal=true",
        || {
            let spec = OrdinaryFamilySpec::new(3, 2, 4, 1).map_err(err)?;
            let f = build_ordinary_family(&spec).map_err(err)?;
            let c = chart_restrict(&f, 1).map_err(err)?;
            let lowest = c.lowest_part.map(|p| p.to_string()).unwrap_or_default();
            Ok(format!("{}; lowest={lowest}; diagonal={}", c.restricted, c.diagonal))
        },
    ),
    ("command line: applicable --n 7 --m 2 --k 2", r#"{"du_bois":true,"rational":false,"threshold":"2"}"#, || {
        let out = crate::cli::run(["singulex", "applicable", "--n", "7", "--m", "2", "--k", "2", "--format", "json"]);
        if out.status != 0 {
            return Err(out.stderr);
        }
        Ok(out.stdout.trim_end().to_string())
    }),
];

/// Runs every reference example.
pub fn replay_reference_examples() -> Vec<ReferenceOutcome> {
    EXAMPLES
        .iter()
        .map(|(name, expected, replay)| {
            let actual = replay().unwrap_or_else(|e| format!("error: {e}"));
            ReferenceOutcome { name, expected: expected.to_string(), passed: actual == *expected, actual }
        })
        .collect()
}
