//! Principal-chart blow-ups of local models `f + s·x_n^m`.

use singulex::blowup::{blowup_transform, mixed_power_model, verify_ordinary_blowup_shape, BlowupChart, BlowupError};
use singulex::{parse_polynomial, ContextSpec};

fn main() -> Result<(), BlowupError> {
    let p = parse_polynomial("x1^2 + x2^2 + s*x3^2", ContextSpec::Infer)?;
    let chart = BlowupChart::parse("x1,x2,x3:y1,y2,y3")?;
    let t = blowup_transform(&p, &chart, "y3")?;
    println!("p      = {p}");
    println!("total  = {}", t.total);
    println!("proper = {}   (y3^{} factored out)", t.proper, t.exceptional_multiplicity);

    let p = mixed_power_model(5, 4, 2)?;
    let r = verify_ordinary_blowup_shape(&p, 2, "s")?;
    println!("\np      = {p}");
    println!("proper = {}", r.transform.proper);
    println!("ok: {}, certificate {:?}", r.ok, r.certificate.kind);

    let p = parse_polynomial("x1^2 + x1*x2^2 + x2^3*x3 + s*x3^2", ContextSpec::Infer)?;
    let r = verify_ordinary_blowup_shape(&p, 2, "s")?;
    println!("\np      = {p}");
    println!("proper = {}", r.transform.proper);
    if let Some(cone) = &r.tangent_cone {
        println!("tangent cone of the proper transform at s = 0: {cone}");
    }

    let p = parse_polynomial("x1^2 + s*x3^3", ContextSpec::Infer)?;
    let r = verify_ordinary_blowup_shape(&p, 2, "s")?;
    println!("\np      = {p}: ok {} (proper {})", r.ok, r.transform.proper);
    Ok(())
}
