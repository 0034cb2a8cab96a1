//! `L_q(m)` and `R_q(m)` at a few points, with the fractional part of
//! `y_q(m)` and the threshold `d`.

use avoidable::criterion::{eval_criterion, lr_values};
use num_bigint::BigInt;

fn main() {
    println!(
        "{:>8} {:>6} {:>8} {:>8} {:>6} {:>22} {:>10}",
        "m", "q", "L", "R", "L>R", "{y}", "d"
    );
    let points = [
        (40, 0),
        (41, 0),
        (221, 0),
        (1000, 0),
        (1000, 6000),
        (1000, -6000),
        (100_000, 7),
    ];
    for (m, q) in points {
        let ev = eval_criterion(&BigInt::from(m), &BigInt::from(q)).unwrap();
        println!(
            "{:>8} {:>6} {:>8} {:>8} {:>6} {:>22.18} {:>10.6}",
            m,
            q,
            ev.l,
            ev.r,
            ev.holds(),
            ev.frac_y.to_f64(),
            ev.d_approx.to_f64()
        );
        let fast = lr_values(m, q).unwrap();
        assert_eq!(
            (BigInt::from(fast.l), BigInt::from(fast.r)),
            (ev.l.clone(), ev.r.clone())
        );
    }

    // far beyond machine words
    let m: BigInt = BigInt::from(10).pow(40) + 1;
    let ev = eval_criterion(&m, &BigInt::from(0)).unwrap();
    println!(
        "m = 10^40 + 1: L - R = {}, criterion holds: {}",
        &ev.l - &ev.r,
        ev.holds()
    );

    // outside the envelope
    println!(
        "(m, q) = (10, 100): {}",
        eval_criterion(&BigInt::from(10), &BigInt::from(100)).unwrap_err()
    );
}
