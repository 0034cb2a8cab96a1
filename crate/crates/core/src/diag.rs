//! Empirical equidistribution of `{y_q(4m)}` where
//! `y_q(m) = sqrt(2m^2 - 10m + 9 - 8q) / 2`.
//!
//! The discrepancy reported is the largest gap between the empirical and
//! uniform distribution functions at the bin boundaries. It is a lower
//! bound on the full sup-norm discrepancy.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{frac_sqrt_half, FixedPointFrac};
use crate::criterion::radicand_y;
use crate::exec::Exec;
use crate::pell::m_states;

/// Spacing of the sampled arguments.
pub const STRIDE: u64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum DiagError {
    #[error("need samples >= bins >= 2 (samples {n}, bins {bins})")]
    Sizes { n: u64, bins: usize },
    #[error("radicand negative at m = {m} for q = {q}")]
    NegativeRadicand { m: u64, q: i64 },
    #[error("fracbits must be positive")]
    ZeroPrecision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "sequence", rename_all = "snake_case")]
pub enum SequenceSpec {
    /// `y_q(4m)` for `m = start .. start + n - 1`.
    Stride { q: i64, stride: u64, start: u64 },
    /// `y_0(m)` for the first `n` elements of `M`.
    PellSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquidistReport {
    pub spec: SequenceSpec,
    pub n: u64,
    pub bins: usize,
    pub fracbits: u32,
    pub histogram: Vec<u64>,
    /// `max_k |P_k B - k N| / (N B)` with `P_k` the mass of the first `k`
    /// bins.
    pub discrepancy: f64,
    pub discrepancy_num: u128,
    pub discrepancy_den: u128,
}

impl EquidistReport {
    /// Index of the heaviest bin, lowest on ties.
    pub fn mode_bin(&self) -> usize {
        let max = self.histogram.iter().copied().max().unwrap_or(0);
        self.histogram.iter().position(|&h| h == max).unwrap_or(0)
    }
}

/// Histogram and boundary discrepancy of given fractional parts.
pub fn equidist_of(fracs: &[FixedPointFrac], bins: usize) -> (Vec<u64>, u128, u128) {
    let mut histogram = vec![0u64; bins];
    for f in fracs {
        histogram[f.bin(bins)] += 1;
    }
    let (num, den) = boundary_discrepancy(&histogram);
    (histogram, num, den)
}

fn boundary_discrepancy(histogram: &[u64]) -> (u128, u128) {
    let n: u128 = histogram.iter().map(|&h| h as u128).sum();
    let b = histogram.len() as u128;
    let mut prefix = 0u128;
    let mut worst = 0u128;
    for (k, &h) in histogram.iter().enumerate() {
        prefix += h as u128;
        worst = worst.max((prefix * b).abs_diff((k as u128 + 1) * n));
    }
    (worst, n * b)
}

fn report(
    spec: SequenceSpec,
    fracs: &[FixedPointFrac],
    bins: usize,
    fracbits: u32,
) -> EquidistReport {
    let (histogram, num, den) = equidist_of(fracs, bins);
    EquidistReport {
        spec,
        n: fracs.len() as u64,
        bins,
        fracbits,
        histogram,
        discrepancy: if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        },
        discrepancy_num: num,
        discrepancy_den: den,
    }
}

/// `{y_q(4m)}` for `m = start .. start + n - 1`.
pub fn diag_equidist(
    q: i64,
    start: u64,
    n: u64,
    bins: usize,
    fracbits: u32,
    exec: &Exec,
) -> Result<EquidistReport, DiagError> {
    if bins < 2 || n < bins as u64 {
        return Err(DiagError::Sizes { n, bins });
    }
    if fracbits == 0 {
        return Err(DiagError::ZeroPrecision);
    }
    let qb = BigInt::from(q);
    let fracs = exec.map_range(start, start + n - 1, |m| {
        let d = radicand_y(&BigInt::from(STRIDE * m), &qb);
        frac_sqrt_half(&d, fracbits).map_err(|_| DiagError::NegativeRadicand { m: STRIDE * m, q })
    });
    let fracs = fracs.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(report(
        SequenceSpec::Stride {
            q,
            stride: STRIDE,
            start,
        },
        &fracs,
        bins,
        fracbits,
    ))
}

/// `{y_0(m)}` over the first `count` elements of `M`.
pub fn equidist_on_m(
    count: usize,
    bins: usize,
    fracbits: u32,
) -> Result<EquidistReport, DiagError> {
    if bins < 2 || count == 0 {
        return Err(DiagError::Sizes {
            n: count as u64,
            bins,
        });
    }
    if fracbits == 0 {
        return Err(DiagError::ZeroPrecision);
    }
    let zero = BigInt::from(0);
    let fracs: Vec<_> = m_states()
        .take(count)
        .map(|st| frac_sqrt_half(&radicand_y(&st.m(), &zero), fracbits).expect("radicand is y^2"))
        .collect();
    Ok(report(SequenceSpec::PellSet, &fracs, bins, fracbits))
}
