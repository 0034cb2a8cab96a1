//! Empirical equidistribution of `{y_q(4m)}`, and its collapse to 1/2 on `M`.

use avoidable::diag::{diag_equidist, equidist_on_m};
use avoidable::Exec;

fn main() {
    let exec = Exec::from_env();
    for q in [0, 5, -12] {
        for n in [1_000, 10_000, 100_000] {
            let r = diag_equidist(q, 2, n, 100, 128, &exec).unwrap();
            println!("q = {q:>3}, N = {n:>6}: discrepancy {:.5}", r.discrepancy);
        }
    }
    let r = equidist_on_m(15, 100, 256).unwrap();
    println!(
        "first 15 elements of M: mass {:?} in bin {}",
        r.histogram[r.mode_bin()],
        r.mode_bin()
    );
}
