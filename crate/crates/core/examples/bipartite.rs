//! Biclique plus forest decompositions of bipartite pairs.

use avoidable::bipartite::{bipartite_realize, verify_bipartite_decomp, BipartitePair};

fn main() {
    for (m, f) in [(3, 4), (3, 3), (2, 2), (7, 20), (10, 3), (9, 40)] {
        let pair = BipartitePair::new(m, f).unwrap();
        let d = bipartite_realize(pair).unwrap();
        println!(
            "({m}, {f}): case {} K_{{{},{}}} + forest {:?}  verified {}",
            d.case,
            d.biclique_left,
            d.biclique_right,
            d.forest,
            verify_bipartite_decomp(&d, pair).is_ok()
        );
    }

    let mut count = 0;
    for m in 1..=30u64 {
        for f in 0..=m * m / 2 {
            let pair = BipartitePair::new(m, f).unwrap();
            verify_bipartite_decomp(&bipartite_realize(pair).unwrap(), pair).unwrap();
            count += 1;
        }
    }
    println!("all {count} pairs with m <= 30 decompose");
}
