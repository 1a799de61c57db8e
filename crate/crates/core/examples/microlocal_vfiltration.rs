//! Microlocal V-filtration and Brieskorn-lattice valuations of monomials
//! for `f = x^2 + y^3`.

use singulex::exponents::{alpha_br, alpha_vtilde, decompose_residue, vfilt_gap, ExponentError};
use singulex::{BrieskornPham, ExponentVector};

fn main() -> Result<(), ExponentError> {
    let d = BrieskornPham::new(vec![2, 3])?;
    println!("{:>8} {:>14} {:>10} {:>8} {:>8}", "a", "(b, c)", "V~", "Br", "gap");
    for a in [[0, 0], [0, 1], [0, 3], [2, 4], [4, 6], [1, 0], [0, 2]] {
        let e = ExponentVector::new(a.to_vec());
        let dec = decompose_residue(&e, &d)?;
        let vt = alpha_vtilde(&e, &d)?;
        match vfilt_gap(&e, &d) {
            Ok(r) => println!("{:>8} {:>14} {:>10} {:>8} {:>8}", format!("{a:?}"), format!("{:?}", dec.pairs()), vt, r.alpha_br, r.gap),
            Err(err) => println!("{:>8} {:>14} {:>10} {}", format!("{a:?}"), format!("{:?}", dec.pairs()), vt, err),
        }
    }
    let e = ExponentVector::new(vec![0, 3]);
    println!("\nroot bound for g = y^3: alpha <= {}", alpha_br(&e, &d)?);
    Ok(())
}
