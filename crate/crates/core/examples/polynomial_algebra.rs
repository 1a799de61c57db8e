//! Parsing, arithmetic and the structural operations on sparse polynomials.

use std::collections::BTreeMap;

use singulex::algebra::AlgebraError;
use singulex::{parse_polynomial, Context, ContextSpec, Rational, SparsePolynomial, Substitution};

fn main() -> Result<(), AlgebraError> {
    let ctx = Context::new(["x", "y", "z"])?;
    let f = SparsePolynomial::parse("x^2*y + 3/2*y*z - z^3", &ctx)?;
    let g = SparsePolynomial::parse("(x + y)^2", &ctx)?;
    println!("f       = {f}");
    println!("g       = {g}");
    println!("f + g   = {}", f.try_add(&g)?);
    println!("f * g   = {}", f.try_mul(&g)?);
    println!("df/dy   = {}", f.partial_derivative("y")?);

    let mut point = BTreeMap::new();
    point.insert("x".to_string(), Rational::new(1, 2));
    point.insert("y".to_string(), Rational::from_integer(2));
    point.insert("z".to_string(), Rational::from_integer(-1));
    println!("f(1/2, 2, -1) = {}", f.evaluate(&point)?);

    // x ↦ u*w, y ↦ v*w, z ↦ w
    let target = Context::new(["u", "v", "w"])?;
    let sub = Substitution::new(&target)
        .with("x", SparsePolynomial::parse("u*w", &target)?)?
        .with("y", SparsePolynomial::parse("v*w", &target)?)?
        .with("z", SparsePolynomial::parse("w", &target)?)?;
    let pulled = sub.apply(&f)?;
    let (k, rest) = pulled.factor_out_power("w")?;
    println!("pull-back = w^{k} * ({rest})");

    let h = parse_polynomial("x1^2*x3 + x1*x2^3 + x2^2 + x2^4*x3", ContextSpec::Infer)?;
    println!("inferred variables: {:?}", h.context().names());
    for (j, part) in h.graded_parts(&["x1", "x2"], 2)?.iter().enumerate() {
        println!("  part of degree {}: {part}", j + 2);
    }
    let (order, cone) = h.lowest_degree_part(&vec![Rational::zero(); h.context().len()])?;
    println!("order {order} at the origin, leading form {cone}");
    Ok(())
}
