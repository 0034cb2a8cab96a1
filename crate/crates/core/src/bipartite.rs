//! Every bipartite pair `(m, f)` with `f <= floor(m^2 / 2)` is a biclique
//! plus a forest, with `m` vertices on each side.
//!
//! Vertices are `left 0..m` and `right 0..m`. The biclique takes
//! `left 0..a` and `right 0..b`; forest edges join `left a..m` to
//! `right b..m`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum BipartiteError {
    #[error("m must be positive")]
    ZeroOrder,
    #[error("f = {f} exceeds m^2 = {max}")]
    TooManyEdges { m: u64, f: u64, max: u64 },
    #[error("f = {f} exceeds floor(m^2/2) = {half}; realize the complement instead")]
    UpperHalf { m: u64, f: u64, half: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitePair {
    pub m: u64,
    pub f: u64,
}

impl BipartitePair {
    pub fn new(m: u64, f: u64) -> Result<Self, BipartiteError> {
        if m == 0 {
            return Err(BipartiteError::ZeroOrder);
        }
        let max = m * m;
        if f > max {
            return Err(BipartiteError::TooManyEdges { m, f, max });
        }
        Ok(BipartitePair { m, f })
    }

    pub fn half(&self) -> u64 {
        self.m * self.m / 2
    }

    /// `(m, m^2 - f)`.
    pub fn complement(&self) -> BipartitePair {
        BipartitePair {
            m: self.m,
            f: self.m * self.m - self.f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueForestDecomp {
    pub m: u64,
    pub f: u64,
    /// 1: `y < m`; 2: `y = m`; 3: `y = m + 1`.
    pub case: u8,
    /// `floor(m/2)` and the largest `y` with `x y <= f`.
    pub x: u64,
    pub y: u64,
    pub biclique_left: u64,
    pub biclique_right: u64,
    /// `(left, right)` vertex indices.
    pub forest: Vec<(u64, u64)>,
}

impl BicliqueForestDecomp {
    pub fn edge_count(&self) -> u64 {
        self.biclique_left * self.biclique_right + self.forest.len() as u64
    }
}

/// `x = floor(m/2)` and the largest `y` with `x y <= f`. For `m = 1` there is
/// no such `y`; `f = 0` is then forced and `(0, 0)` is returned.
pub fn split_parameters(m: u64, f: u64) -> (u64, u64) {
    let x = m / 2;
    if x == 0 {
        (0, 0)
    } else {
        (x, f / x)
    }
}

/// First `e` edges of a spanning tree between `left lo_l..m` and
/// `right lo_r..m`: left `lo_l` to every right vertex, then every other left
/// vertex to right `lo_r`.
fn forest_fill(m: u64, lo_l: u64, lo_r: u64, e: u64) -> Vec<(u64, u64)> {
    (lo_r..m)
        .map(|r| (lo_l, r))
        .chain((lo_l + 1..m).map(|l| (l, lo_r)))
        .take(e as usize)
        .collect()
}

pub fn bipartite_realize(pair: BipartitePair) -> Result<BicliqueForestDecomp, BipartiteError> {
    let BipartitePair { m, f } = pair;
    if f > pair.half() {
        return Err(BipartiteError::UpperHalf {
            m,
            f,
            half: pair.half(),
        });
    }
    let (x, y) = split_parameters(m, f);
    let (case, a, b) = if y < m {
        if y == 0 {
            (1, 0, 0)
        } else {
            (1, x, y)
        }
    } else if y == m {
        if m % 2 == 0 {
            (2, m / 2, m)
        } else {
            let k = (m - 1) / 2;
            (2, k + 1, 2 * k - 1)
        }
    } else {
        let k = (m - 1) / 2;
        (3, 2 * k, k + 1)
    };
    let forest = forest_fill(m, a, b, f - a * b);
    Ok(BicliqueForestDecomp {
        m,
        f,
        case,
        x,
        y,
        biclique_left: a,
        biclique_right: b,
        forest,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum BipartiteFailure {
    #[error("decomposition is for ({got_m}, {got_f}), not the requested pair")]
    PairMismatch { got_m: u64, got_f: u64 },
    #[error("biclique {left}x{right} does not fit in parts of size {m}")]
    Capacity { left: u64, right: u64, m: u64 },
    #[error("forest edge ({left}, {right}) leaves the leftover vertices")]
    Range { left: u64, right: u64 },
    #[error("forest edge ({left}, {right}) listed twice")]
    Duplicate { left: u64, right: u64 },
    #[error("forest edge ({left}, {right}) closes a cycle")]
    Cycle { left: u64, right: u64 },
    #[error("{got} edges, expected {expected}")]
    Count { got: u64, expected: u64 },
}

pub fn verify_bipartite_decomp(
    d: &BicliqueForestDecomp,
    pair: BipartitePair,
) -> Result<(), BipartiteFailure> {
    let m = pair.m;
    if d.m != pair.m || d.f != pair.f {
        return Err(BipartiteFailure::PairMismatch {
            got_m: d.m,
            got_f: d.f,
        });
    }
    let (a, b) = (d.biclique_left, d.biclique_right);
    if a > m || b > m {
        return Err(BipartiteFailure::Capacity {
            left: a,
            right: b,
            m,
        });
    }
    // union-find over left 0..m then right m..2m
    let mut parent: Vec<usize> = (0..2 * m as usize).collect();
    let mut seen = std::collections::BTreeSet::new();
    for &(l, r) in &d.forest {
        if !(a..m).contains(&l) || !(b..m).contains(&r) {
            return Err(BipartiteFailure::Range { left: l, right: r });
        }
        if !seen.insert((l, r)) {
            return Err(BipartiteFailure::Duplicate { left: l, right: r });
        }
        let (u, v) = (
            find(&mut parent, l as usize),
            find(&mut parent, (m + r) as usize),
        );
        if u == v {
            return Err(BipartiteFailure::Cycle { left: l, right: r });
        }
        parent[u] = v;
    }
    let got = a * b + d.forest.len() as u64;
    if got != pair.f {
        return Err(BipartiteFailure::Count {
            got,
            expected: pair.f,
        });
    }
    Ok(())
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn realize(m: u64, f: u64) -> BicliqueForestDecomp {
        bipartite_realize(BipartitePair::new(m, f).unwrap()).unwrap()
    }

    #[test]
    fn case_examples() {
        let d = realize(3, 4);
        assert_eq!(
            (d.case, d.x, d.y, d.biclique_left, d.biclique_right),
            (3, 1, 4, 2, 2)
        );
        assert!(d.forest.is_empty());

        let d = realize(3, 3);
        assert_eq!(
            (d.case, d.biclique_left, d.biclique_right, d.forest.len()),
            (2, 2, 1, 1)
        );

        let d = realize(2, 2);
        assert_eq!((d.case, d.biclique_left, d.biclique_right), (2, 1, 2));
        assert!(d.forest.is_empty());

        let d = realize(10, 3);
        assert_eq!(
            (d.case, d.y, d.biclique_left, d.biclique_right),
            (1, 0, 0, 0)
        );
        assert_eq!(d.forest, vec![(0, 0), (0, 1), (0, 2)]);

        let d = realize(1, 0);
        assert_eq!(d.edge_count(), 0);
    }

    #[test]
    fn exhaustive_small() {
        for m in 1..=30 {
            for f in 0..=m * m / 2 {
                let pair = BipartitePair::new(m, f).unwrap();
                let d = bipartite_realize(pair).unwrap();
                assert_eq!(verify_bipartite_decomp(&d, pair), Ok(()), "({m},{f})");
                if d.case == 3 {
                    assert_eq!(m % 2, 1);
                }
                if d.x > 0 {
                    assert!(d.x * d.y <= f && f < d.x * (d.y + 1));
                }
            }
        }
    }

    #[test]
    fn verifier_rejects() {
        let pair = BipartitePair::new(6, 10).unwrap();
        let good = bipartite_realize(pair).unwrap();
        assert_eq!(good.case, 1);

        let mut cyc = good.clone();
        cyc.biclique_left = 0;
        cyc.biclique_right = 0;
        cyc.forest = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        assert!(matches!(
            verify_bipartite_decomp(&cyc, BipartitePair::new(6, 4).unwrap()),
            Err(BipartiteFailure::PairMismatch { .. })
        ));
        cyc.f = 4;
        assert!(matches!(
            verify_bipartite_decomp(&cyc, BipartitePair::new(6, 4).unwrap()),
            Err(BipartiteFailure::Cycle { left: 1, right: 1 })
        ));

        let mut short = good.clone();
        short.forest.pop();
        assert!(matches!(
            verify_bipartite_decomp(&short, pair),
            Err(BipartiteFailure::Count { .. })
        ));

        let mut dup = good.clone();
        dup.forest = vec![(3, 5), (3, 5), (4, 5), (5, 5)];
        assert!(matches!(
            verify_bipartite_decomp(&dup, pair),
            Err(BipartiteFailure::Duplicate { .. })
        ));

        let mut out = good;
        out.forest[0] = (0, 0);
        assert!(matches!(
            verify_bipartite_decomp(&out, pair),
            Err(BipartiteFailure::Range { .. })
        ));
    }

    #[test]
    fn upper_half_refused() {
        let pair = BipartitePair::new(4, 9).unwrap();
        assert!(matches!(
            bipartite_realize(pair),
            Err(BipartiteError::UpperHalf { .. })
        ));
        let d = bipartite_realize(pair.complement()).unwrap();
        assert_eq!(d.edge_count(), 7);
        assert!(BipartitePair::new(4, 17).is_err());
    }
}
