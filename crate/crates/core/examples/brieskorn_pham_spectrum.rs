//! Spectrum, Milnor number and reduced Bernstein-Sato roots of `Σ x_i^{m_i}`.

use singulex::milnor::{bp_spectrum, milnor_basis, milnor_number, reduced_bs_root_set, MilnorError};
use singulex::BrieskornPham;

fn main() -> Result<(), MilnorError> {
    for m in [vec![2, 3], vec![3, 4], vec![2, 3, 5]] {
        let d = BrieskornPham::new(m)?;
        let sp = bp_spectrum(&d)?;
        println!("m = ({d}): Milnor number {}", milnor_number(&d));
        let spectrum: Vec<String> = sp.entries().iter().map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v} (x{k})") }).collect();
        println!("  spectrum {}", spectrum.join(", "));
        let roots: Vec<String> = reduced_bs_root_set(&d)?.iter().map(ToString::to_string).collect();
        println!("  reduced Bernstein-Sato roots {}", roots.join(", "));
    }

    let d = BrieskornPham::new(vec![3, 4])?;
    let basis: Vec<String> = milnor_basis(&d)?.iter().map(|e| format!("x^{}y^{}", e.get(0), e.get(1))).collect();
    println!("\nMilnor algebra basis of x^3 + y^4: {}", basis.join(" "));
    Ok(())
}
