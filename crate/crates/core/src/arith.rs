//! Exact integer primitives.
//!
//! Everything the criteria need reduces to integer square roots: the floors
//! `L` and `R` are floors of `(c + sqrt(D)) / 2`, and the diagnostic
//! fractional parts are fixed-point roots of `D` scaled by a power of four.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default precision for fractional-part diagnostics.
pub const DEFAULT_FRACBITS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("square root of negative number {0}")]
    NegativeRadicand(BigInt),
    #[error("fixed-point precision must be at least 1 bit")]
    ZeroPrecision,
}

/// `floor(sqrt(n))` for an unsigned big integer.
///
/// Newton iteration from a power of two above the root, then a correction
/// loop so the postcondition `s^2 <= n < (s+1)^2` never depends on the
/// convergence argument.
pub fn isqrt_biguint(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    if n.bits() <= 120 {
        return BigUint::from(isqrt_u128(n.to_u128().expect("fits in u128")));
    }
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    while &x * &x > *n {
        x -= 1u32;
    }
    loop {
        let next = &x + 1u32;
        if &next * &next <= *n {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// `floor(sqrt(n))`; negative input is a domain error.
pub fn isqrt(n: &BigInt) -> Result<BigInt, ArithError> {
    match n.sign() {
        Sign::Minus => Err(ArithError::NegativeRadicand(n.clone())),
        _ => Ok(BigInt::from(isqrt_biguint(n.magnitude()))),
    }
}

/// Word-sized `floor(sqrt(n))`, used by the scanners' fast path.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // the f64 estimate can be off by ~2^11 near 2^128; one or two Newton
    // steps bring it within a unit
    for _ in 0..2 {
        if x == 0 {
            x = 1;
        }
        x = (x + n / x) / 2;
    }
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// `x (x - 1) / 2`. Panics if the result overflows `u64` (x > 2^32).
pub fn binom2(x: u64) -> u64 {
    let v = (x as u128) * (x.saturating_sub(1) as u128) / 2;
    u64::try_from(v).expect("binom2 overflow")
}

/// `x (x - 1) / 2` for big integers; `x` must be non-negative.
pub fn binom2_big(x: &BigInt) -> BigInt {
    if x.sign() == Sign::Minus || x.is_zero() {
        return BigInt::zero();
    }
    x * (x - 1) / 2
}

/// Exact floor of `(c + sqrt(D)) / 2`.
///
/// Let `s = isqrt(D)`, so `sqrt(D)` lies in `[s, s + 1)` and the value lies
/// in `[(c + s)/2, (c + s + 1)/2)`. If `c + s = 2k` this is `[k, k + 1/2)`;
/// if `c + s = 2k + 1` it is `[k + 1/2, k + 1)`. Either way the floor is
/// `floor((c + s) / 2)`, and perfect squares are the `sqrt(D) = s` endpoint
/// of the same interval.
pub fn surd_floor(c: &BigInt, d: &BigInt) -> Result<BigInt, ArithError> {
    let s = isqrt(d)?;
    Ok((c + s).div_floor(&BigInt::from(2)))
}

/// The real number `(c + sqrt(D)) / 2` with `D >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdFloor {
    c: BigInt,
    radicand: BigInt,
}

impl SurdFloor {
    pub fn new(c: BigInt, radicand: BigInt) -> Result<Self, ArithError> {
        if radicand.sign() == Sign::Minus {
            return Err(ArithError::NegativeRadicand(radicand));
        }
        Ok(Self { c, radicand })
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn floor(&self) -> BigInt {
        surd_floor(&self.c, &self.radicand).expect("radicand checked at construction")
    }

    /// True when `sqrt(D)` is rational, i.e. `D` is a perfect square.
    pub fn is_rational(&self) -> bool {
        let s = isqrt(&self.radicand).expect("radicand checked at construction");
        &s * &s == self.radicand
    }
}

/// `floor(sqrt(D) * 2^bits)`.
pub fn sqrt_scaled(d: &BigInt, bits: u32) -> Result<BigUint, ArithError> {
    if d.sign() == Sign::Minus {
        return Err(ArithError::NegativeRadicand(d.clone()));
    }
    Ok(isqrt_biguint(&(d.magnitude() << (2 * bits as u64))))
}

/// A fractional part in `[0, 1)` stored as `value / 2^fracbits`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointFrac {
    value: BigUint,
    fracbits: u32,
}

impl FixedPointFrac {
    pub fn new(value: BigUint, fracbits: u32) -> Result<Self, ArithError> {
        if fracbits == 0 {
            return Err(ArithError::ZeroPrecision);
        }
        let modulus = BigUint::one() << fracbits;
        Ok(Self {
            value: value % modulus,
            fracbits,
        })
    }

    pub fn zero(fracbits: u32) -> Self {
        Self {
            value: BigUint::zero(),
            fracbits: fracbits.max(1),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn fracbits(&self) -> u32 {
        self.fracbits
    }

    pub fn to_f64(&self) -> f64 {
        // keep the top 64 bits; exact enough for reporting
        let shift = self.fracbits.saturating_sub(64);
        let top = (&self.value >> shift).to_u64().unwrap_or(u64::MAX);
        top as f64 / 2f64.powi((self.fracbits - shift) as i32)
    }

    /// Exactly one half.
    pub fn is_half(&self) -> bool {
        self.value == BigUint::one() << (self.fracbits - 1)
    }

    /// Index of the bin `floor(frac * bins)` among `bins` equal bins.
    pub fn bin(&self, bins: usize) -> usize {
        ((&self.value * BigUint::from(bins)) >> self.fracbits)
            .to_usize()
            .expect("bin index below bins")
    }

    /// `|self - other| < 2^-tol_bits`.
    pub fn within(&self, other: &FixedPoint, tol_bits: u32) -> bool {
        let (a, b, bits) = align(
            &BigInt::from(self.value.clone()),
            self.fracbits,
            other.raw(),
            other.fracbits(),
        );
        let diff = (a - b).magnitude().clone();
        // |diff| / 2^bits < 2^-tol_bits
        (diff << tol_bits as u64) < (BigUint::one() << bits)
    }

    /// Compare against a signed fixed-point value.
    pub fn cmp_fixed(&self, other: &FixedPoint) -> Ordering {
        let (a, b, _) = align(
            &BigInt::from(self.value.clone()),
            self.fracbits,
            other.raw(),
            other.fracbits(),
        );
        a.cmp(&b)
    }

    pub fn as_fixed(&self) -> FixedPoint {
        FixedPoint {
            raw: BigInt::from(self.value.clone()),
            fracbits: self.fracbits,
        }
    }
}

impl fmt::Display for FixedPointFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// A signed real stored as `raw / 2^fracbits`. Used for `d = 3/2 - t`, which
/// is negative for small `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    raw: BigInt,
    fracbits: u32,
}

impl FixedPoint {
    pub fn new(raw: BigInt, fracbits: u32) -> Self {
        Self { raw, fracbits }
    }

    /// `num / den` rounded toward negative infinity.
    pub fn from_ratio(num: i64, den: i64, fracbits: u32) -> Self {
        let raw = (BigInt::from(num) << fracbits as u64).div_floor(&BigInt::from(den));
        Self { raw, fracbits }
    }

    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    pub fn fracbits(&self) -> u32 {
        self.fracbits
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.fracbits.saturating_sub(64);
        let top: BigInt = &self.raw >> shift;
        top.to_f64().unwrap_or(f64::NAN) / 2f64.powi((self.fracbits - shift) as i32)
    }
}

fn align(a: &BigInt, abits: u32, b: &BigInt, bbits: u32) -> (BigInt, BigInt, u32) {
    match abits.cmp(&bbits) {
        Ordering::Equal => (a.clone(), b.clone(), abits),
        Ordering::Less => (a << (bbits - abits) as u64, b.clone(), bbits),
        Ordering::Greater => (a.clone(), b << (abits - bbits) as u64, abits),
    }
}

/// Fractional part of `sqrt(D) / 2` to `fracbits` bits.
///
/// With `S = floor(sqrt(D) * 2^(fracbits-1))`, `S / 2^fracbits` is a lower
/// bound for `sqrt(D)/2` within `2^-fracbits`, so `S mod 2^fracbits` is the
/// fractional part within the same error. The one exception is a true value
/// less than `2^-fracbits` above an integer, where the lower bound wraps to
/// just below one. Perfect squares are exact.
pub fn frac_sqrt_half(d: &BigInt, fracbits: u32) -> Result<FixedPointFrac, ArithError> {
    if fracbits == 0 {
        return Err(ArithError::ZeroPrecision);
    }
    let s = sqrt_scaled(d, fracbits - 1)?;
    FixedPointFrac::new(s, fracbits)
}

/// Serde helpers that write big integers as bare JSON numbers.
pub mod serde_bigint {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&v.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}

/// Serialized form of a fixed-point fraction: exact numerator plus a
/// float approximation for readability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FracRecord {
    pub approx: f64,
    pub fracbits: u32,
    #[serde(with = "serde_bigint")]
    pub numerator: BigInt,
}

impl From<&FixedPointFrac> for FracRecord {
    fn from(v: &FixedPointFrac) -> Self {
        Self {
            approx: v.to_f64(),
            fracbits: v.fracbits,
            numerator: BigInt::from(v.value.clone()),
        }
    }
}

impl From<&FixedPoint> for FracRecord {
    fn from(v: &FixedPoint) -> Self {
        Self {
            approx: v.to_f64(),
            fracbits: v.fracbits,
            numerator: v.raw.clone(),
        }
    }
}
