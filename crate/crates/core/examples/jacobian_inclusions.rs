//! Membership in the Jacobian ideal of a Brieskorn-Pham polynomial, and the
//! two inclusion statements it satisfies.

use singulex::milnor::{check_power_inclusion, check_vfiltration_inclusion, jacobian_ideal, jacobian_membership, MilnorError};
use singulex::{BrieskornPham, ExponentVector, SparsePolynomial};

fn main() -> Result<(), MilnorError> {
    let d = BrieskornPham::new(vec![3, 4, 5])?;
    let ctx = d.default_context();
    let gens: Vec<String> = jacobian_ideal(&d).generators().iter().map(|e| format!("{:?}", e.as_slice())).collect();
    println!("Jacobian ideal generators (exponents): {}", gens.join(", "));
    for g in ["x1^2*x3", "x1*x2^2*x3^3", "x1^2 + x2^3", "x2^2*x3^4 - x1^3"] {
        let g = SparsePolynomial::parse(g, &ctx)?;
        println!("  {g:<20} in (∂f): {}", jacobian_membership(&g, &d)?);
    }

    let r = check_vfiltration_inclusion(&d, 10)?;
    println!(
        "\nmonomials of degree <= 10 above {}: {} of {} checked, all in (∂f): {}",
        r.threshold, r.claims_checked, r.monomials_checked, r.passed
    );

    for a in [[0, 0, 0], [1, 0, 2], [0, 2, 3]] {
        let r = check_power_inclusion(&d, &ExponentVector::new(a.to_vec()))?;
        println!("f^{} x^{a:?} ({} terms) in (∂f): {}   [bound {}]", r.k, r.product_terms, r.member, r.bound);
    }
    Ok(())
}
