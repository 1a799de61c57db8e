//! Singular points of `f + s·g` along `s = 0` compared with `V(g) ∩ Sing V(f)`.

use singulex::families::{check_deformation_singular_locus, is_singular_point, sample_points, DeformationFamily, FamilyError};
use singulex::{parse_polynomial, ContextSpec, Rational};

fn main() -> Result<(), FamilyError> {
    let f = parse_polynomial("x^2*y", ContextSpec::Infer)?;
    let g = parse_polynomial("y", ContextSpec::Infer)?;
    let fam = DeformationFamily::new(&f, &g, "s")?;
    println!("F = {}", fam.family_polynomial());

    for p in [[0, 3], [0, 0], [1, 0]] {
        let pt: Vec<Rational> = p.iter().map(|&c| Rational::from_integer(c)).collect();
        let v = is_singular_point(fam.f(), &pt)?;
        println!("  f at {p:?}: on V(f) {}, singular {}, vanishing partials {:?}", v.on_hypersurface, v.singular, v.vanishing_partials);
    }

    let points = sample_points(fam.coordinates().len(), 1000, 7);
    let r = check_deformation_singular_locus(&fam, &points)?;
    println!(
        "{} points: {} singular on F at s=0, {} in V(g) ∩ Sing V(f), agree: {}",
        r.points_checked, r.in_total_locus, r.in_base_locus, r.passed
    );
    Ok(())
}
