//! k-du Bois and k-rational classification, and which k the blow-up
//! criterion decides for ordinary m-fold slices.

use singulex::exponents::{classify, hm_applicable, slice_exponent_ordinary_mple, ExponentError};

fn main() -> Result<(), ExponentError> {
    for alpha in ["5/6", "1", "3/2", "2", "7/3", "inf"] {
        let flags: Vec<String> = (0..3)
            .map(|k| {
                let r = classify(&alpha.parse().unwrap(), k);
                format!("k={k}: {}{}", if r.is_k_du_bois { "dB" } else { "--" }, if r.is_k_rational { "+R" } else { "  " })
            })
            .collect();
        println!("alpha = {alpha:<4}  {}", flags.join("  "));
    }

    println!();
    for (n, m) in [(7, 2), (10, 3), (9, 4)] {
        let alpha = slice_exponent_ordinary_mple(n, m)?;
        let decided: Vec<String> = (0..6)
            .filter_map(|k| {
                let r = hm_applicable(n, m, k).unwrap();
                match (r.du_bois_ok, r.rational_ok) {
                    (true, true) => Some(format!("{k}(dB,R)")),
                    (true, false) => Some(format!("{k}(dB)")),
                    _ => None,
                }
            })
            .collect();
        println!("n={n} m={m}: slice exponent {alpha}, decided k: {}", decided.join(" "));
    }
    Ok(())
}
