//! The Pell states `x^2 - 2y^2 = 7` and the set `M` they generate.

use avoidable::pell::{generate_m, is_in_m, raw_stream, verify_pell_state};
use num_bigint::BigInt;

fn main() {
    for st in raw_stream().take(8) {
        let checks = verify_pell_state(&st);
        println!(
            "s = {:>2}  x = {:>8}  y = {:>8}  m = {:>7}  invariants {}",
            st.s,
            st.x,
            st.y,
            st.m(),
            if checks.all_pass() { "ok" } else { "FAIL" }
        );
    }
    let m = generate_m(10);
    println!("first 10 elements of M: {m:?}");
    println!("7425 in M: {}", is_in_m(&BigInt::from(7425)));
    println!("7426 in M: {}", is_in_m(&BigInt::from(7426)));

    let far = raw_stream().nth(200).unwrap();
    println!(
        "s = 200: m has {} digits, invariants {}",
        far.m().to_string().len(),
        verify_pell_state(&far).all_pass()
    );
}
