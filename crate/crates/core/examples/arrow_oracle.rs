//! Brute-force arrowing: isomorphism classes, `(n, e) -> (m, f)`, `S_n(m, f)`
//! and the clique-plus-forest cross-check.

use avoidable::oracle::{arrows_pair, compute_s_n, enumerate_graphs, xcheck_cf, OracleConfig};
use avoidable::{Exec, PairMF};

fn main() {
    let cfg = OracleConfig::default();
    let exec = Exec::from_env();

    for n in 1..=8 {
        let total: usize = (0..=n * (n - 1) / 2)
            .map(|e| enumerate_graphs(n, e as u64, &cfg, &exec).unwrap().len())
            .sum();
        println!("graphs on {n} vertices: {total}");
    }

    let v = arrows_pair(6, 7, PairMF::new(4, 3).unwrap(), &cfg, &exec).unwrap();
    println!("(6, 7) -> (4, 3): {v:?}");

    for (m, f) in [(4, 3), (5, 5), (3, 1)] {
        let r = compute_s_n(7, PairMF::new(m, f).unwrap(), &cfg, &exec).unwrap();
        println!(
            "S_7({m}, {f}) = {:?}  fixed-n fraction {:.3}",
            r.s, r.fixed_n_fraction
        );
    }

    let x = xcheck_cf(12).unwrap();
    println!(
        "clique-plus-forest oracle vs criterion, m <= 12: {} pairs, {} disagreements",
        x.pairs_checked,
        x.disagreements.len()
    );
}
