//! The Pell family `x^2 - 2y^2 = 7` and the set `M` it generates.
//!
//! States follow `(x, y) -> (3x + 4y, 2x + 3y)` from `(3, 1)`, and each
//! state carries `m = (x + 5) / 2`. The set `M` is `{m_s : s >= 2}`;
//! `m_0 = 4` and `m_1 = 9` appear in the raw stream only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{isqrt, serde_bigint};

/// First step index whose `m` belongs to `M`.
pub const FIRST_M_STEP: u64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellState {
    pub s: u64,
    #[serde(with = "serde_bigint")]
    pub x: BigInt,
    #[serde(with = "serde_bigint")]
    pub y: BigInt,
}

impl PellState {
    /// `(x + 5) / 2`; exact whenever `x` is odd.
    pub fn m(&self) -> BigInt {
        (&self.x + 5) / 2
    }

    pub fn next(&self) -> PellState {
        pell_next(self)
    }
}

pub fn pell_initial() -> PellState {
    PellState {
        s: 0,
        x: BigInt::from(3),
        y: BigInt::one(),
    }
}

pub fn pell_next(state: &PellState) -> PellState {
    PellState {
        s: state.s + 1,
        x: 3 * &state.x + 4 * &state.y,
        y: 2 * &state.x + 3 * &state.y,
    }
}

/// Every state from `s = 0`.
pub fn raw_stream() -> impl Iterator<Item = PellState> {
    std::iter::successors(Some(pell_initial()), |st| Some(pell_next(st)))
}

/// The states whose `m` lies in `M` (`s >= 2`).
pub fn m_states() -> impl Iterator<Item = PellState> {
    raw_stream().skip(FIRST_M_STEP as usize)
}

/// The first `count` elements of `M`, increasing.
pub fn generate_m(count: usize) -> Vec<BigInt> {
    m_states().take(count).map(|st| st.m()).collect()
}

/// Membership in `M`, by generating until the stream passes `m`.
pub fn is_in_m(m: &BigInt) -> bool {
    m_states()
        .map(|st| st.m())
        .find(|v| v >= m)
        .is_some_and(|v| &v == m)
}

/// Per-invariant results for one state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellChecks {
    /// `x^2 - 2y^2 = 7`
    pub pell_identity: bool,
    pub x_odd: bool,
    pub y_odd: bool,
    /// `m = 0 (mod 4)` for even `s`, `1 (mod 4)` for odd `s`.
    pub m_mod4: bool,
    /// `2m^2 - 10m + 9 = y^2`
    pub radicand_is_y_squared: bool,
}

impl PellChecks {
    pub fn all_pass(&self) -> bool {
        self.pell_identity && self.x_odd && self.y_odd && self.m_mod4 && self.radicand_is_y_squared
    }
}

pub fn verify_pell_state(state: &PellState) -> PellChecks {
    let x = &state.x;
    let y = &state.y;
    let pell_identity = x * x - 2 * y * y == BigInt::from(7);
    let x_odd = x.is_odd();
    let y_odd = y.is_odd();
    let m = state.m();
    let expected = if state.s.is_multiple_of(2) { 0 } else { 1 };
    let m_mod4 = x_odd && m.mod_floor(&BigInt::from(4)) == BigInt::from(expected);
    let radicand: BigInt = 2 * &m * &m - 10 * &m + 9;
    let radicand_is_y_squared =
        !radicand.is_zero() && isqrt(&radicand).is_ok_and(|r| &r * &r == radicand && &r == y);
    PellChecks {
        pell_identity,
        x_odd,
        y_odd,
        m_mod4,
        radicand_is_y_squared,
    }
}

/// One line of `pell` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellRecord {
    pub s: u64,
    #[serde(with = "serde_bigint")]
    pub x: BigInt,
    #[serde(with = "serde_bigint")]
    pub y: BigInt,
    #[serde(with = "serde_bigint")]
    pub m: BigInt,
    pub checks: PellChecks,
}

impl From<&PellState> for PellRecord {
    fn from(st: &PellState) -> Self {
        Self {
            s: st.s,
            x: st.x.clone(),
            y: st.y.clone(),
            m: st.m(),
            checks: verify_pell_state(st),
        }
    }
}
