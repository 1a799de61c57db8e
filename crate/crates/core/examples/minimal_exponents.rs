//! Minimal exponents of Brieskorn-Pham polynomials and ordinary m-fold
//! slices, and when a blow-up lowers the minimal exponent.

use singulex::exponents::{
    bp_minimal_exponent, decrease_predicate, min_product_rule, slice_exponent_ordinary_mple, ExponentError,
};
use singulex::{BrieskornPham, ExponentValue};

fn main() -> Result<(), ExponentError> {
    for m in [vec![2, 3], vec![2, 2, 2], vec![3, 4, 5], vec![4, 4, 4, 4]] {
        let d = BrieskornPham::new(m)?;
        println!("f = {:<28} minimal exponent {}", d.polynomial(&d.default_context()).unwrap().to_string(), bp_minimal_exponent(&d));
    }

    println!();
    for (n, m) in [(4, 2), (7, 2), (3, 3), (10, 4)] {
        println!("ordinary {m}-fold slice in dimension {n}: {}", slice_exponent_ordinary_mple(n, m)?);
    }

    let h1: ExponentValue = "1".parse()?;
    let h2: ExponentValue = "1/2".parse()?;
    println!("\nmin rule: min({h1}, {h2}) = {}", min_product_rule(&h1, &h2));
    println!("smooth factor: min(inf, 5/6) = {}", min_product_rule(&ExponentValue::Infinity, &"5/6".parse()?));

    println!("\nblow-up lowers the minimal exponent of Σ x_i^a + x_(n-1)^b + s x_n^b?");
    for n in 4..=7 {
        let row: Vec<String> = (3..=8)
            .flat_map(|a| (2..a).map(move |b| (a, b)))
            .filter(|&(a, b)| decrease_predicate(n, a, b).unwrap())
            .map(|(a, b)| format!("{a}/{b}"))
            .collect();
        println!("  n={n}: a/b in {{{}}}", row.join(", "));
    }
    Ok(())
}
