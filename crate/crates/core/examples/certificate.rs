//! Avoidability certificates: neither `(m, f)` nor its complement pair is a
//! clique plus a forest.

use avoidable::criterion::{avoidability_certificate, clique_forest_realizable, PairMF};

fn main() {
    for (m, f) in [(40, 390), (5, 5), (5, 4), (221, 12155), (12, 33)] {
        let pair = PairMF::new(m, f).unwrap();
        match avoidability_certificate(pair) {
            Ok(cert) => println!(
                "{pair}: certified  direct {:?}  complement {:?}",
                cert.direct, cert.complement
            ),
            Err(rej) => println!(
                "{pair}: rejected, {:?} pair {} decomposes as {:?}",
                rej.direction, rej.checked, rej.decomposition
            ),
        }
    }

    // every certified pair with m <= 12
    let mut certified = Vec::new();
    for m in 1..=12u64 {
        for f in 0..=m * (m - 1) / 2 {
            let pair = PairMF::new(m, f).unwrap();
            if avoidability_certificate(pair).is_ok() {
                certified.push(pair.to_string());
            }
        }
    }
    println!("certified pairs with m <= 12: {}", certified.join(" "));

    let pair = PairMF::new(8, 14).unwrap();
    println!("(8, 14) alone: {:?}", clique_forest_realizable(pair));
}
