//! Repeated point blow-ups until the proper transform is a graph over `s`.

use singulex::blowup::{certify_graph_over, iterated_blowup, BlowupChart, BlowupError, CertificateKind};
use singulex::{parse_polynomial, ContextSpec};

fn main() -> Result<(), BlowupError> {
    let p = parse_polynomial("x1^2 + x2^2 + s*x3^6", ContextSpec::Infer)?;
    let names = ["x", "y", "z", "w"];
    let steps: Vec<(BlowupChart, String)> = names
        .windows(2)
        .map(|w| {
            let src: Vec<String> = (1..=3).map(|i| format!("{}{i}", w[0])).collect();
            let tgt: Vec<String> = (1..=3).map(|i| format!("{}{i}", w[1])).collect();
            let e = tgt[2].clone();
            (BlowupChart::new(src, tgt).unwrap(), e)
        })
        .collect();

    println!("p = {p}");
    for (i, step) in iterated_blowup(&p, &steps)?.iter().enumerate() {
        let cert = certify_graph_over(&step.proper, "s")?;
        let mark = if cert.kind == CertificateKind::GraphOverS { "  smooth" } else { "" };
        println!("step {}: mult {}  proper {}{mark}", i + 1, step.exceptional_multiplicity, step.proper);
    }
    Ok(())
}
