//! Exact L/R floors, clique-plus-forest realizability and avoidability
//! certificates.
//!
//! For integers `m, q` with `m >= 5 + 2 sqrt|q|`:
//!
//! ```text
//! Dy = 2m^2 - 10m - 8q + 9     y = sqrt(Dy) / 2     L = floor(5/2 + y)
//! Dz = 2m^2 -  2m - 8q + 1     z = sqrt(Dz) / 2     R = floor(1/2 + z)
//! t  = z - y                   d = 3/2 - t
//! ```
//!
//! `L > R` rules out writing `(m, C(m,2)/2 - q)` as a clique plus a forest.
//! The realizability search below decides that question directly from the
//! definition, so the two can be checked against each other.

mod scan;

pub use scan::*;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    self, binom2, isqrt_u128, sqrt_scaled, surd_floor, ArithError, FixedPoint, FixedPointFrac,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriterionError {
    #[error("m = {m} is below the envelope 5 + 2*sqrt(|q|) for q = {q}: need (m-5)^2 >= 4|q| and m >= 5")]
    Envelope { m: BigInt, q: BigInt },
    #[error("invalid pair (m = {m}, f = {f}): {reason}")]
    Pair {
        m: u64,
        f: u64,
        reason: &'static str,
    },
    #[error("m = {m} is not congruent to 0 or 1 mod 4, so C(m,2)/2 is not an integer")]
    Parity { m: u64 },
    #[error("q = {q} puts f = C({m},2)/2 - q outside [0, C({m},2)]")]
    OffsetOutOfRange { m: u64, q: i64 },
    #[error("value out of range for the word-sized fast path: m = {m}, q = {q}")]
    Overflow { m: i64, q: i64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// An order-size pair `(m, f)` with `0 <= f <= C(m, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct PairMF {
    m: u64,
    f: u64,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    m: u64,
    f: u64,
}

impl TryFrom<RawPair> for PairMF {
    type Error = CriterionError;
    fn try_from(r: RawPair) -> Result<Self, Self::Error> {
        PairMF::new(r.m, r.f)
    }
}

impl From<PairMF> for RawPair {
    fn from(p: PairMF) -> Self {
        RawPair { m: p.m, f: p.f }
    }
}

impl PairMF {
    /// Keeps `C(m, 2)` and intermediate products well inside `u64`.
    pub const MAX_M: u64 = 1 << 31;

    pub fn new(m: u64, f: u64) -> Result<Self, CriterionError> {
        if m == 0 {
            return Err(CriterionError::Pair {
                m,
                f,
                reason: "m must be positive",
            });
        }
        if m > Self::MAX_M {
            return Err(CriterionError::Pair {
                m,
                f,
                reason: "m exceeds 2^31",
            });
        }
        if f > binom2(m) {
            return Err(CriterionError::Pair {
                m,
                f,
                reason: "f exceeds C(m, 2)",
            });
        }
        Ok(Self { m, f })
    }

    /// `(m, C(m,2)/2 - q)`; requires `m = 0, 1 (mod 4)`.
    pub fn centered(m: u64, q: i64) -> Result<Self, CriterionError> {
        if m % 4 > 1 {
            return Err(CriterionError::Parity { m });
        }
        let center = (binom2(m) / 2) as i128;
        let f = center - q as i128;
        if f < 0 || f > binom2(m) as i128 {
            return Err(CriterionError::OffsetOutOfRange { m, q });
        }
        Self::new(m, f as u64)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn max_edges(&self) -> u64 {
        binom2(self.m)
    }

    /// `(m, C(m,2) - f)`: the pair counted in the complement graph.
    pub fn complement(&self) -> PairMF {
        PairMF {
            m: self.m,
            f: binom2(self.m) - self.f,
        }
    }
}

impl std::fmt::Display for PairMF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.m, self.f)
    }
}

/// `m >= 5` and `(m - 5)^2 >= 4|q|`.
pub fn in_envelope(m: &BigInt, q: &BigInt) -> bool {
    if m < &BigInt::from(5) {
        return false;
    }
    let gap = m - 5;
    &gap * &gap >= 4 * q.abs()
}

/// `Dy = 2m^2 - 10m - 8q + 9`.
pub fn radicand_y(m: &BigInt, q: &BigInt) -> BigInt {
    2 * m * m - 10 * m - 8 * q + 9
}

/// `Dz = 2m^2 - 2m - 8q + 1`.
pub fn radicand_z(m: &BigInt, q: &BigInt) -> BigInt {
    2 * m * m - 2 * m - 8 * q + 1
}

/// Full evaluation of the criterion at `(m, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionEval {
    pub m: BigInt,
    pub q: BigInt,
    pub dy: BigInt,
    pub dz: BigInt,
    pub l: BigInt,
    pub r: BigInt,
    /// `{y}` to `fracbits` bits.
    pub frac_y: FixedPointFrac,
    /// `d = 3/2 - (z - y)` to `fracbits` bits.
    pub d_approx: FixedPoint,
}

impl CriterionEval {
    pub fn holds(&self) -> bool {
        self.l > self.r
    }

    /// Whether `{y}` lies in `[0, d) u [1/2, 1)` by the fixed-point values.
    pub fn frac_in_window(&self) -> bool {
        let half = FixedPoint::from_ratio(1, 2, self.frac_y.fracbits());
        !self.frac_y.cmp_fixed(&half).is_lt() || self.frac_y.cmp_fixed(&self.d_approx).is_lt()
    }
}

pub fn eval_criterion(m: &BigInt, q: &BigInt) -> Result<CriterionEval, CriterionError> {
    eval_criterion_with(m, q, arith::DEFAULT_FRACBITS)
}

pub fn eval_criterion_with(
    m: &BigInt,
    q: &BigInt,
    fracbits: u32,
) -> Result<CriterionEval, CriterionError> {
    if !in_envelope(m, q) {
        return Err(CriterionError::Envelope {
            m: m.clone(),
            q: q.clone(),
        });
    }
    let dy = radicand_y(m, q);
    let dz = radicand_z(m, q);
    let l = surd_floor(&BigInt::from(5), &dy)?;
    let r = surd_floor(&BigInt::from(1), &dz)?;
    let frac_y = arith::frac_sqrt_half(&dy, fracbits)?;
    let d_approx = d_fixed(&dy, &dz, fracbits)?;
    Ok(CriterionEval {
        m: m.clone(),
        q: q.clone(),
        dy,
        dz,
        l,
        r,
        frac_y,
        d_approx,
    })
}

/// `3/2 - (sqrt(Dz) - sqrt(Dy))/2` with absolute error below `2^-fracbits`.
fn d_fixed(dy: &BigInt, dz: &BigInt, fracbits: u32) -> Result<FixedPoint, ArithError> {
    let k = fracbits.max(1) - 1;
    let sy = BigInt::from(sqrt_scaled(dy, k)?);
    let sz = BigInt::from(sqrt_scaled(dz, k)?);
    let raw = (BigInt::from(3) << k as u64) - sz + sy;
    Ok(FixedPoint::new(raw, k + 1))
}

/// Word-sized L/R evaluation for range scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrValues {
    pub m: i64,
    pub q: i64,
    pub dy: i128,
    pub dz: i128,
    pub l: i128,
    pub r: i128,
    /// `L > R`
    pub holds: bool,
}

/// Largest `m` accepted by [`lr_values`]; keeps `2m^2` inside `i128`.
pub const LR_MAX_M: i64 = 1 << 50;

pub fn lr_values(m: i64, q: i64) -> Result<LrValues, CriterionError> {
    if m > LR_MAX_M {
        return Err(CriterionError::Overflow { m, q });
    }
    let (mw, qw) = (m as i128, q as i128);
    if mw < 5 || (mw - 5) * (mw - 5) < 4 * qw.abs() {
        return Err(CriterionError::Envelope {
            m: BigInt::from(m),
            q: BigInt::from(q),
        });
    }
    let dy = 2 * mw * mw - 10 * mw - 8 * qw + 9;
    let dz = 2 * mw * mw - 2 * mw - 8 * qw + 1;
    let l = Integer::div_floor(&(5 + isqrt_u128(dy as u128) as i128), &2);
    let r = Integer::div_floor(&(1 + isqrt_u128(dz as u128) as i128), &2);
    Ok(LrValues {
        m,
        q,
        dy,
        dz,
        l,
        r,
        holds: l > r,
    })
}

/// Outcome of the clique-plus-forest search for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CliqueForestCert {
    /// `K_x` plus a forest with `forest_edges` edges on the other vertices.
    Realizable {
        x: u64,
        forest_vertices: u64,
        forest_edges: u64,
    },
    /// No clique size works. `l` is the least `x >= 2` leaving few enough
    /// edges for a forest, `r` the largest `x` with `C(x,2) <= f`, and
    /// `l > r`. Under the envelope these are exactly `L_q(m)` and `R_q(m)`.
    Impossible { l: u64, r: u64 },
}

impl CliqueForestCert {
    pub fn is_impossible(&self) -> bool {
        matches!(self, CliqueForestCert::Impossible { .. })
    }
}

/// Largest number of edges a forest on `v` vertices can have.
pub fn forest_capacity(v: u64) -> u64 {
    v.saturating_sub(1)
}

/// `K_x` plus a forest on `m - x` vertices has exactly `f` edges for some
/// forest.
pub fn clique_size_fits(pair: PairMF, x: u64) -> bool {
    let clique = binom2(x);
    x <= pair.m && clique <= pair.f && pair.f - clique <= forest_capacity(pair.m - x)
}

/// Smallest clique size `x` that realizes the pair, or the bracket proving
/// none does.
///
/// For `x >= 2` the edge budget `C(x,2) + (m - x - 1)` is non-decreasing in
/// `x` and `C(x,2)` is increasing, so the feasible sizes form an interval
/// `[l, r]` found by two binary searches. `x = 0, 1` are tried directly.
pub fn clique_forest_realizable(pair: PairMF) -> CliqueForestCert {
    let (m, f) = (pair.m, pair.f);
    for x in 0..=1.min(m) {
        if clique_size_fits(pair, x) {
            return realizable(pair, x);
        }
    }
    // m >= 2 from here: m <= 1 forces f = 0, which x = 0 realizes
    let r = last_true(1, m, |x| binom2(x) <= f);
    let l = first_true(2, m, |x| f - binom2(x).min(f) <= forest_capacity(m - x));
    if l <= r {
        debug_assert!(clique_size_fits(pair, l));
        realizable(pair, l)
    } else {
        CliqueForestCert::Impossible { l, r }
    }
}

fn realizable(pair: PairMF, x: u64) -> CliqueForestCert {
    CliqueForestCert::Realizable {
        x,
        forest_vertices: pair.m - x,
        forest_edges: pair.f - binom2(x),
    }
}

/// Largest `x` in `[lo, hi]` with `pred(x)`, assuming `pred(lo)` and a
/// true-then-false shape.
fn last_true(lo: u64, hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Smallest `x` in `[lo, hi]` with `pred(x)`, assuming `pred(hi)` and a
/// false-then-true shape.
fn first_true(lo: u64, hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Direct,
    Complement,
}

/// Neither the pair nor its complement is a clique plus a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidabilityCert {
    pub pair: PairMF,
    pub direct: CliqueForestCert,
    pub complement: CliqueForestCert,
}

impl AvoidabilityCert {
    /// Re-derive both searches and confirm they are still `Impossible`.
    pub fn is_valid(&self) -> bool {
        self.direct.is_impossible()
            && self.complement.is_impossible()
            && clique_forest_realizable(self.pair) == self.direct
            && clique_forest_realizable(self.pair.complement()) == self.complement
    }
}

/// Why a pair could not be certified: one direction decomposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("{direction:?} pair {checked} is realizable: {decomposition:?}")]
pub struct Rejection {
    pub pair: PairMF,
    pub direction: Direction,
    pub checked: PairMF,
    pub decomposition: CliqueForestCert,
}

pub fn avoidability_certificate(pair: PairMF) -> Result<AvoidabilityCert, Rejection> {
    let direct = clique_forest_realizable(pair);
    if !direct.is_impossible() {
        return Err(Rejection {
            pair,
            direction: Direction::Direct,
            checked: pair,
            decomposition: direct,
        });
    }
    let comp_pair = pair.complement();
    let complement = clique_forest_realizable(comp_pair);
    if !complement.is_impossible() {
        return Err(Rejection {
            pair,
            direction: Direction::Complement,
            checked: comp_pair,
            decomposition: complement,
        });
    }
    Ok(AvoidabilityCert {
        pair,
        direct,
        complement,
    })
}

/// `binom2(m)/2 - f` when it is an integer.
pub fn offset_of(pair: PairMF) -> Option<i64> {
    let twice = binom2(pair.m) as i128 - 2 * pair.f as i128;
    (twice % 2 == 0).then(|| (twice / 2).to_i64()).flatten()
}
