//! Witness graphs: `K_k` plus a high-girth part, verified without
//! enumeration and then checked by enumeration.

use avoidable::witness::{
    build_witness_or_complement, exhaustive_arrow_check, verify_witness, WitnessRecord,
};
use avoidable::PairMF;

fn main() {
    let pair = PairMF::new(5, 5).unwrap();
    for e in [0, 4, 10, 20, 33, 40, 55, 66] {
        match build_witness_or_complement(12, e, 12) {
            Ok(w) => {
                let verdict = verify_witness(&w, pair);
                let arrows = exhaustive_arrow_check(&w.graph, pair).unwrap();
                let rec = WitnessRecord::from(&w);
                println!(
                    "n = 12, e = {e:>2}: k = {:>2} complemented = {:<5} {} verdict = {:?} enumerated arrows = {arrows}",
                    rec.k, rec.complemented, rec.graph6, verdict.is_pass()
                );
            }
            Err(err) => println!("n = 12, e = {e:>2}: {err}"),
        }
    }

    // (40, 390) is certified; with p = 41 the girth part must stay a forest
    // at this scale, so dense budgets are infeasible
    let pair = PairMF::new(40, 390).unwrap();
    for e in [200, 1000] {
        match build_witness_or_complement(60, e, 41) {
            Ok(w) => println!(
                "n = 60, e = {e}, p = 41: verdict {:?}",
                verify_witness(&w, pair)
            ),
            Err(err) => println!("n = 60, e = {e}, p = 41: {err}"),
        }
    }
}
