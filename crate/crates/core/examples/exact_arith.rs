//! Integer square roots, exact floors of `(c + sqrt(D)) / 2`, and
//! fixed-point fractional parts.

use avoidable::arith::{frac_sqrt_half, isqrt, surd_floor, SurdFloor};
use num_bigint::BigInt;

fn main() {
    let big: BigInt = BigInt::from(10).pow(60) + 12345;
    let r = isqrt(&big).unwrap();
    println!("isqrt(10^60 + 12345) = {r}");
    assert!(&r * &r <= big && (&r + 1) * (&r + 1) > big);

    // floor((5 + sqrt(2809)) / 2) = floor((5 + 53) / 2)
    let l = surd_floor(&BigInt::from(5), &BigInt::from(2809)).unwrap();
    println!("floor((5 + sqrt 2809) / 2) = {l}");

    let s = SurdFloor::new(BigInt::from(1), BigInt::from(3121)).unwrap();
    println!(
        "floor((1 + sqrt 3121) / 2) = {} (rational: {})",
        s.floor(),
        s.is_rational()
    );

    for d in [2809, 2810, 2] {
        let frac = frac_sqrt_half(&BigInt::from(d), 128).unwrap();
        println!(
            "{{sqrt({d}) / 2}} = {frac:.20} (exactly 1/2: {})",
            frac.is_half()
        );
    }
}
