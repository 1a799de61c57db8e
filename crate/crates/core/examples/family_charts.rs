//! The homogeneous family `Σ_{k<=a} Σ_{i≠k} x_i^m x_k^{d-m} + Σ_{k>a} x_k^d`
//! and the ordinary m-fold points at the origins of its charts.

use singulex::families::{build_ordinary_family, chart_restrict, ordinary_point_certificate, FamilyError, OrdinaryFamilySpec};
use singulex::Rational;

fn main() -> Result<(), FamilyError> {
    let spec = OrdinaryFamilySpec::new(4, 3, 6, 2)?;
    let f = build_ordinary_family(&spec)?;
    println!("f = {f}");
    let guess = spec.conjectured_minimal_exponent();
    println!("{} terms; minimal exponent expected to be {} ({})", f.len(), guess.value, guess.status);

    for j in 1..=spec.n as usize {
        let c = chart_restrict(&f, j)?;
        if !c.on_hypersurface {
            println!("chart x{j}=1: origin not on the hypersurface");
            continue;
        }
        let origin = vec![Rational::zero(); c.restricted.context().len()];
        let cert = ordinary_point_certificate(&c.restricted, &origin, spec.m)?;
        println!(
            "chart x{j}=1: leading form {} (diagonal {}), {:?} of multiplicity {}",
            c.lowest_part.as_ref().unwrap(),
            c.diagonal,
            cert.verdict,
            cert.order
        );
    }
    Ok(())
}
