use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An enumeration was refused because it would exceed a configured size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("{what}: requested {requested} exceeds limit {limit}")]
pub struct GuardError {
    pub what: String,
    pub requested: u128,
    pub limit: u128,
}

impl GuardError {
    pub fn check(what: impl Into<String>, requested: u128, limit: u128) -> Result<(), GuardError> {
        if requested > limit {
            Err(GuardError {
                what: what.into(),
                requested,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_values() {
        assert_eq!(choose(5, 2), 10);
        assert_eq!(choose(12, 6), 924);
        assert_eq!(choose(3, 5), 0);
        assert_eq!(choose(60, 30), 118264581564861424);
    }
}
