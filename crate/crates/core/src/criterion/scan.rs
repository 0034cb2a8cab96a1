//! Range scans over `m`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{avoidability_certificate, lr_values, CriterionError, LrValues, PairMF};
use crate::arith::binom2;
use crate::exec::Exec;

/// Smallest `m` for which the center-or-offset disjunction is asserted.
pub const CENTER_OFFSET_MIN_M: u64 = 740;

/// Offset multiplier: the alternative pair is `(m, C(m,2)/2 - 6m)`.
pub const OFFSET_FACTOR: i64 = 6;

/// Half-width of the interval scan as a fraction of `m`: `0.175 = 7/40`.
pub const INTERVAL_WIDTH: (u64, u64) = (7, 40);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("assertion mode needs m >= {min}, got range starting at {lo}")]
    BelowAssertRange { lo: u64, min: u64 },
    #[error("disjunction fails for {} value(s) of m, first m = {}", .failures.len(), .failures[0])]
    AssertionFailed { failures: Vec<u64> },
    #[error("invalid q specification: {0}")]
    QSpec(String),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanMode {
    Assert,
    Explore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetBranch {
    /// `L_0 > R_0`
    Center,
    /// `L_6m > R_6m` and `L_-6m > R_-6m`
    Offset6m,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterOffsetRow {
    pub m: u64,
    pub center: LrValues,
    /// `None` when `m` is below the envelope for `q = 6m`.
    pub plus: Option<LrValues>,
    pub minus: Option<LrValues>,
    pub branch: OffsetBranch,
}

impl CenterOffsetRow {
    pub fn holds(&self) -> bool {
        self.branch != OffsetBranch::Neither
    }
}

fn center_offset_row(m: u64) -> Result<CenterOffsetRow, CriterionError> {
    let mi = m as i64;
    let center = lr_values(mi, 0)?;
    let plus = lr_values(mi, OFFSET_FACTOR * mi).ok();
    let minus = lr_values(mi, -OFFSET_FACTOR * mi).ok();
    let branch = if center.holds {
        OffsetBranch::Center
    } else if plus.is_some_and(|v| v.holds) && minus.is_some_and(|v| v.holds) {
        OffsetBranch::Offset6m
    } else {
        OffsetBranch::Neither
    };
    Ok(CenterOffsetRow {
        m,
        center,
        plus,
        minus,
        branch,
    })
}

/// Every `m = 0, 1 (mod 4)` in `[lo, hi]`: does `(m, C(m,2)/2)` or
/// `(m, C(m,2)/2 - 6m)` get certified by the L/R test?
///
/// In [`ScanMode::Assert`] the range must start at 740 or later and any
/// failing `m` is an error.
pub fn scan_center_offset(
    lo: u64,
    hi: u64,
    mode: ScanMode,
    exec: &Exec,
) -> Result<Vec<CenterOffsetRow>, ScanError> {
    if mode == ScanMode::Assert && lo < CENTER_OFFSET_MIN_M {
        return Err(ScanError::BelowAssertRange {
            lo,
            min: CENTER_OFFSET_MIN_M,
        });
    }
    let lo = lo.max(5);
    let rows: Vec<CenterOffsetRow> = exec
        .map_range(lo, hi, |m| (m % 4 <= 1).then(|| center_offset_row(m)))
        .into_iter()
        .flatten()
        .collect::<Result<_, _>>()?;
    if mode == ScanMode::Assert {
        let failures: Vec<u64> = rows.iter().filter(|r| !r.holds()).map(|r| r.m).collect();
        if !failures.is_empty() {
            return Err(ScanError::AssertionFailed { failures });
        }
    }
    Ok(rows)
}

/// Smallest `m0` among the scanned rows such that every row with `m >= m0`
/// holds. `None` if the last row fails.
pub fn persistence_threshold(rows: &[CenterOffsetRow]) -> Option<u64> {
    let mut threshold = None;
    for row in rows.iter().rev() {
        if !row.holds() {
            break;
        }
        threshold = Some(row.m);
    }
    threshold
}

/// How the offset `q` depends on `m` in a family scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSpec {
    /// `q(m) = floor(alpha m + beta)`
    Affine { alpha: Ratio<i64>, beta: Ratio<i64> },
    /// Explicit values; `m` without an entry is skipped.
    Table(BTreeMap<u64, i64>),
}

impl QSpec {
    pub fn constant(q: i64) -> QSpec {
        QSpec::Affine {
            alpha: Ratio::from_integer(0),
            beta: Ratio::from_integer(q),
        }
    }

    /// Parse `"P/Q"` or `"P"` coefficients.
    pub fn affine(alpha: &str, beta: &str) -> Result<QSpec, ScanError> {
        let parse = |s: &str| {
            Ratio::<i64>::from_str(s.trim())
                .map_err(|e| ScanError::QSpec(format!("cannot parse {s:?}: {e}")))
        };
        Ok(QSpec::Affine {
            alpha: parse(alpha)?,
            beta: parse(beta)?,
        })
    }

    pub fn q_at(&self, m: u64) -> Option<i64> {
        match self {
            QSpec::Affine { alpha, beta } => {
                let (an, ad) = (*alpha.numer() as i128, *alpha.denom() as i128);
                let (bn, bd) = (*beta.numer() as i128, *beta.denom() as i128);
                let num = an * m as i128 * bd + bn * ad;
                i64::try_from(Integer::div_floor(&num, &(ad * bd))).ok()
            }
            QSpec::Table(t) => t.get(&m).copied(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricRow {
    pub m: u64,
    pub q: i64,
    pub f: u64,
    pub plus: LrValues,
    pub minus: LrValues,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SymmetricReport {
    pub hits: Vec<SymmetricRow>,
    /// `m = 2, 3 (mod 4)`: `C(m,2)/2` is not an integer.
    pub skipped_parity: u64,
    /// `q(m)` outside the envelope `m >= 5 + 2 sqrt|q|`.
    pub skipped_envelope: Vec<u64>,
    /// No `q` value for this `m` (table specs only).
    pub skipped_missing: Vec<u64>,
}

enum SymmetricOutcome {
    Parity,
    Missing(u64),
    Envelope(u64),
    Miss,
    Hit(Box<SymmetricRow>),
}

/// Every `m = 0, 1 (mod 4)` in `[lo, hi]` with `L_q > R_q` and
/// `L_-q > R_-q` for `q = q(m)`.
pub fn scan_symmetric_offset(spec: &QSpec, lo: u64, hi: u64, exec: &Exec) -> SymmetricReport {
    let outcomes = exec.map_range(lo.max(1), hi, |m| {
        if m % 4 > 1 {
            return SymmetricOutcome::Parity;
        }
        let Some(q) = spec.q_at(m) else {
            return SymmetricOutcome::Missing(m);
        };
        let (Ok(plus), Ok(minus)) = (
            lr_values(m as i64, q),
            lr_values(m as i64, q.saturating_neg()),
        ) else {
            return SymmetricOutcome::Envelope(m);
        };
        if plus.holds && minus.holds {
            let f = PairMF::centered(m, q)
                .expect("envelope keeps f in range")
                .f();
            SymmetricOutcome::Hit(Box::new(SymmetricRow {
                m,
                q,
                f,
                plus,
                minus,
            }))
        } else {
            SymmetricOutcome::Miss
        }
    });
    let mut report = SymmetricReport::default();
    for o in outcomes {
        match o {
            SymmetricOutcome::Parity => report.skipped_parity += 1,
            SymmetricOutcome::Missing(m) => report.skipped_missing.push(m),
            SymmetricOutcome::Envelope(m) => report.skipped_envelope.push(m),
            SymmetricOutcome::Miss => {}
            SymmetricOutcome::Hit(row) => report.hits.push(*row),
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalEntry {
    pub f: u64,
    /// `C(m,2)/2 - f`
    pub q: i64,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IntervalVerdict {
    AllPass,
    Failing { fs: Vec<u64> },
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalReport {
    pub m: u64,
    pub center: u64,
    pub entries: Vec<IntervalEntry>,
    pub verdict: IntervalVerdict,
}

/// Certificates for every integer `f` with `|f - C(m,2)/2| < 0.175 m`.
pub fn scan_interval(m: u64) -> Result<IntervalReport, CriterionError> {
    // validates m > 0 and the size bound
    PairMF::new(m, 0)?;
    if m % 4 > 1 {
        return Err(CriterionError::Parity { m });
    }
    let center = binom2(m) / 2;
    let (num, den) = INTERVAL_WIDTH;
    // |q| * den < num * m
    let qmax = (num * m).saturating_sub(1) / den;
    let mut entries = Vec::new();
    for f in center.saturating_sub(qmax)..=(center + qmax).min(binom2(m)) {
        let pair = PairMF::new(m, f)?;
        entries.push(IntervalEntry {
            f,
            q: center as i64 - f as i64,
            certified: avoidability_certificate(pair).is_ok(),
        });
    }
    let failing: Vec<u64> = entries
        .iter()
        .filter(|e| !e.certified)
        .map(|e| e.f)
        .collect();
    let verdict = if entries.is_empty() {
        IntervalVerdict::Empty
    } else if failing.is_empty() {
        IntervalVerdict::AllPass
    } else {
        IntervalVerdict::Failing { fs: failing }
    };
    Ok(IntervalReport {
        m,
        center,
        entries,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mod23Row {
    pub m: u64,
    /// `floor(C(m,2)/2)`; its complement is `f_center + 1`.
    pub f_center: u64,
    pub center_certified: bool,
    /// `f_center - 6m`, when non-negative.
    pub f_offset: Option<u64>,
    pub offset_certified: Option<bool>,
    pub holds: bool,
}

/// Exploration scan for `m = 2, 3 (mod 4)` using direct certificates on
/// `floor(C(m,2)/2)` and `floor(C(m,2)/2) - 6m`. Nothing is asserted.
pub fn scan_mod23(lo: u64, hi: u64, exec: &Exec) -> Vec<Mod23Row> {
    exec.map_range(lo.max(2), hi, |m| {
        (m % 4 >= 2).then(|| {
            let f_center = binom2(m) / 2;
            let certify = |f: u64| {
                PairMF::new(m, f)
                    .map(|p| avoidability_certificate(p).is_ok())
                    .unwrap_or(false)
            };
            let center_certified = certify(f_center);
            let f_offset = f_center.checked_sub(OFFSET_FACTOR as u64 * m);
            let offset_certified = f_offset.map(certify);
            Mod23Row {
                m,
                f_center,
                center_certified,
                f_offset,
                offset_certified,
                holds: center_certified || offset_certified == Some(true),
            }
        })
    })
    .into_iter()
    .flatten()
    .collect()
}
