//! Witness graphs: a clique plus a high-girth graph, or the complement of
//! one.
//!
//! If `G` is `K_k` plus a graph of girth greater than `m`, every `m`-vertex
//! induced subgraph of `G` is a clique plus a forest. So when `(m, f)` is not
//! a clique plus a forest, `G` does not arrow `(m, f)`, and no subset
//! enumeration is needed to see it.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::binom2;
use crate::criterion::{clique_forest_realizable, CliqueForestCert, PairMF};
use crate::graph::Graph;
use crate::guard::{choose, GuardError};

/// Default ceiling on `C(n, m)` for [`exhaustive_arrow_check`].
pub const ARROW_CHECK_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum WitnessError {
    #[error("e = {e} outside [0, C({n},2) = {max}]")]
    EdgesOutOfRange { n: usize, e: u64, max: u64 },
    #[error("girth bound p = {p} must be at least 3")]
    GirthBoundTooSmall { p: usize },
    #[error(
        "greedy builder placed {placed} of {needed} extra edges on {free} vertices outside K_{k} \
         without closing a cycle of length <= {p}"
    )]
    Infeasible {
        n: usize,
        e: u64,
        p: usize,
        k: usize,
        free: usize,
        placed: u64,
        needed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessGraph {
    /// The graph itself, with `e` edges.
    pub graph: Graph,
    pub clique: Vec<usize>,
    pub girth_part: Vec<usize>,
    /// The girth part has girth greater than this.
    pub girth_bound: usize,
    /// The clique/girth structure lives in the complement of `graph`.
    pub complemented: bool,
}

impl WitnessGraph {
    /// The graph carrying the clique/girth structure.
    pub fn structured(&self) -> Graph {
        if self.complemented {
            self.graph.complement()
        } else {
            self.graph.clone()
        }
    }
}

/// The `k` with `C(k,2) <= e <= C(k+1,2) - 1`, capped at `n`. For `e = 0`
/// this gives `k = 0` rather than the equivalent single-vertex clique.
pub fn clique_size(n: usize, e: u64) -> usize {
    if e == 0 {
        return 0;
    }
    let mut k = ((1.0 + (1.0 + 8.0 * e as f64).sqrt()) / 2.0) as u64;
    while binom2(k) > e {
        k -= 1;
    }
    while binom2(k + 1) <= e {
        k += 1;
    }
    (k as usize).min(n)
}

/// `K_k` on vertices `0..k`, then the remaining `e - C(k,2)` edges placed
/// greedily on `k..n` in lexicographic order, skipping any edge whose
/// endpoints are already within distance `p - 1` (it would close a cycle of
/// length at most `p`).
pub fn build_witness(n: usize, e: u64, p: usize) -> Result<WitnessGraph, WitnessError> {
    let max = binom2(n as u64);
    if e > max {
        return Err(WitnessError::EdgesOutOfRange { n, e, max });
    }
    if p < 3 {
        return Err(WitnessError::GirthBoundTooSmall { p });
    }
    let k = clique_size(n, e);
    let mut g = Graph::new(n);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v);
        }
    }
    let needed = e - binom2(k as u64);
    let mut placed = 0;
    'fill: for u in k..n {
        for v in u + 1..n {
            if placed == needed {
                break 'fill;
            }
            if !within_distance(&g, u, v, p - 1) {
                g.add_edge(u, v);
                placed += 1;
            }
        }
    }
    if placed < needed {
        return Err(WitnessError::Infeasible {
            n,
            e,
            p,
            k,
            free: n - k,
            placed,
            needed,
        });
    }
    Ok(WitnessGraph {
        graph: g,
        clique: (0..k).collect(),
        girth_part: (k..n).collect(),
        girth_bound: p,
        complemented: false,
    })
}

/// `dist(u, v) <= limit`, by BFS cut off at depth `limit`.
fn within_distance(g: &Graph, u: usize, v: usize, limit: usize) -> bool {
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::from([u]);
    dist[u] = 0;
    while let Some(a) = queue.pop_front() {
        if dist[a] == limit {
            continue;
        }
        for b in g.neighbors(a) {
            if dist[b] == usize::MAX {
                if b == v {
                    return true;
                }
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    false
}

/// Build directly when `e <= ceil(C(n,2)/2)`, otherwise build for
/// `C(n,2) - e` and return the complement.
pub fn build_witness_or_complement(
    n: usize,
    e: u64,
    p: usize,
) -> Result<WitnessGraph, WitnessError> {
    let max = binom2(n as u64);
    if e > max {
        return Err(WitnessError::EdgesOutOfRange { n, e, max });
    }
    if e <= max.div_ceil(2) {
        return build_witness(n, e, p);
    }
    let mut w = build_witness(n, max - e, p).map_err(|err| match err {
        WitnessError::Infeasible {
            placed,
            needed,
            k,
            free,
            ..
        } => WitnessError::Infeasible {
            n,
            e,
            p,
            k,
            free,
            placed,
            needed,
        },
        other => other,
    })?;
    w.graph = w.graph.complement();
    w.complemented = true;
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum StructureViolation {
    #[error("clique and girth part do not partition the {n} vertices (vertex {vertex})")]
    NotPartition { n: usize, vertex: usize },
    #[error("clique vertices {u} and {v} are not adjacent")]
    CliqueIncomplete { u: usize, v: usize },
    #[error("edge {u}-{v} crosses between clique and girth part")]
    CrossEdge { u: usize, v: usize },
    #[error("girth part has girth {girth}, not above the declared bound {bound}")]
    GirthBound { girth: usize, bound: usize },
}

/// Clique completeness, partition, no cross edges, girth above the declared
/// bound. All checked on the structured graph.
pub fn verify_structure(w: &WitnessGraph) -> Result<(), StructureViolation> {
    let h = w.structured();
    let n = h.order();
    let mut owner = vec![0u8; n];
    for &v in w.clique.iter().chain(&w.girth_part) {
        if v >= n || owner[v] != 0 {
            return Err(StructureViolation::NotPartition { n, vertex: v });
        }
        owner[v] = 1;
    }
    if let Some(v) = owner.iter().position(|&o| o == 0) {
        return Err(StructureViolation::NotPartition { n, vertex: v });
    }
    for (i, &u) in w.clique.iter().enumerate() {
        for &v in &w.clique[i + 1..] {
            if !h.has_edge(u, v) {
                return Err(StructureViolation::CliqueIncomplete { u, v });
            }
        }
    }
    for &u in &w.clique {
        for &v in &w.girth_part {
            if h.has_edge(u, v) {
                return Err(StructureViolation::CrossEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
    }
    if let Some(girth) = h.induced(&w.girth_part).girth() {
        if girth <= w.girth_bound {
            return Err(StructureViolation::GirthBound {
                girth,
                bound: w.girth_bound,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WitnessVerdict {
    /// The witness does not arrow the pair.
    Pass,
    Structure(StructureViolation),
    /// Girth part girth (`None` = acyclic) does not exceed `m`.
    GirthBelowOrder {
        girth: Option<usize>,
        m: u64,
    },
    /// The relevant pair is a clique plus a forest, so nothing follows.
    Realizable {
        checked: PairMF,
        decomposition: CliqueForestCert,
    },
}

impl WitnessVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, WitnessVerdict::Pass)
    }
}

pub fn verify_witness(w: &WitnessGraph, pair: PairMF) -> WitnessVerdict {
    if let Err(v) = verify_structure(w) {
        return WitnessVerdict::Structure(v);
    }
    let girth = w.structured().induced(&w.girth_part).girth();
    if girth.is_some_and(|g| g as u64 <= pair.m()) {
        return WitnessVerdict::GirthBelowOrder { girth, m: pair.m() };
    }
    let checked = if w.complemented {
        pair.complement()
    } else {
        pair
    };
    match clique_forest_realizable(checked) {
        CliqueForestCert::Impossible { .. } => WitnessVerdict::Pass,
        decomposition => WitnessVerdict::Realizable {
            checked,
            decomposition,
        },
    }
}

/// Whether some `m`-subset of `g` induces exactly `f` edges, by enumeration.
pub fn exhaustive_arrow_check(g: &Graph, pair: PairMF) -> Result<bool, GuardError> {
    exhaustive_arrow_check_with(g, pair, ARROW_CHECK_LIMIT)
}

pub fn exhaustive_arrow_check_with(
    g: &Graph,
    pair: PairMF,
    limit: u128,
) -> Result<bool, GuardError> {
    let n = g.order();
    let m = pair.m() as usize;
    GuardError::check(
        format!("C({n}, {m}) induced subsets"),
        choose(n as u64, m as u64),
        limit,
    )?;
    if m > n {
        return Ok(false);
    }
    let mut chosen = Vec::with_capacity(m);
    Ok(search(g, m, pair.f() as usize, 0, 0, &mut chosen))
}

fn search(
    g: &Graph,
    m: usize,
    f: usize,
    start: usize,
    edges: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if edges > f {
        return false;
    }
    let left = m - chosen.len();
    if left == 0 {
        return edges == f;
    }
    // each new vertex adds at most one edge per chosen or later-chosen vertex
    if edges + left * chosen.len() + left * (left - 1) / 2 < f {
        return false;
    }
    for v in start..=g.order() - left {
        let added = chosen.iter().filter(|&&u| g.has_edge(u, v)).count();
        chosen.push(v);
        let hit = search(g, m, f, v + 1, edges + added, chosen);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

/// Serialized form of a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub n: usize,
    pub e: u64,
    pub p: usize,
    pub k: usize,
    pub complemented: bool,
    pub clique: Vec<usize>,
    pub girth_part: Vec<usize>,
    pub graph6: String,
}

impl From<&WitnessGraph> for WitnessRecord {
    fn from(w: &WitnessGraph) -> Self {
        WitnessRecord {
            n: w.graph.order(),
            e: w.graph.edge_count() as u64,
            p: w.girth_bound,
            k: w.clique.len(),
            complemented: w.complemented,
            clique: w.clique.clone(),
            girth_part: w.girth_part.clone(),
            graph6: w.graph.to_graph6(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(m: u64, f: u64) -> PairMF {
        PairMF::new(m, f).unwrap()
    }

    #[test]
    fn clique_sizes() {
        assert_eq!(clique_size(10, 3), 3);
        assert_eq!(clique_size(10, 5), 3);
        assert_eq!(clique_size(10, 6), 4);
        assert_eq!(clique_size(10, 45), 10);
        assert_eq!(clique_size(8, 21), 7);
        assert_eq!(clique_size(12, 0), 0);
        assert_eq!(clique_size(12, 1), 2);
        for e in 1..500u64 {
            let k = clique_size(1000, e) as u64;
            assert!(binom2(k) <= e && e < binom2(k + 1));
        }
    }

    #[test]
    fn build_examples() {
        let w = build_witness(10, 3, 10).unwrap();
        assert_eq!(w.clique, vec![0, 1, 2]);
        assert_eq!(w.graph.edge_count(), 3);
        let w = build_witness(10, 5, 10).unwrap();
        assert_eq!(w.clique, vec![0, 1, 2]);
        assert_eq!(w.graph.edges().filter(|&(u, _)| u >= 3).count(), 2);
        assert!(w.structured().induced(&w.girth_part).is_forest());

        let w = build_witness(10, 45, 5).unwrap();
        assert_eq!(w.clique.len(), 10);
        assert!(w.girth_part.is_empty());

        let w = build_witness(8, 21, 8).unwrap();
        assert_eq!(w.clique.len(), 7);
        assert_eq!(w.girth_part, vec![7]);
        assert!(verify_structure(&w).is_ok());
    }

    #[test]
    fn complement_rule() {
        let w = build_witness_or_complement(12, 60, 5).unwrap();
        assert!(w.complemented);
        assert_eq!(w.graph.edge_count(), 60);
        assert_eq!(w.structured().edge_count(), 6);
        assert!(verify_structure(&w).is_ok());

        let w = build_witness_or_complement(12, 0, 5).unwrap();
        assert!(!w.complemented);
        assert!(w.clique.is_empty());
        assert_eq!(w.graph.edge_count(), 0);

        let w = build_witness_or_complement(12, 66, 5).unwrap();
        assert!(w.complemented);
        assert_eq!(w.graph, Graph::complete(12));
    }

    #[test]
    fn builder_errors() {
        assert!(matches!(
            build_witness(5, 11, 5),
            Err(WitnessError::EdgesOutOfRange { .. })
        ));
        assert!(matches!(
            build_witness(5, 3, 2),
            Err(WitnessError::GirthBoundTooSmall { .. })
        ));
        // K_3 plus 2 extra edges on 2 free vertices cannot stay acyclic
        assert!(matches!(
            build_witness(5, 5, 5),
            Err(WitnessError::Infeasible { .. })
        ));
    }

    #[test]
    fn greedy_order_is_lexicographic() {
        // K_6 then a star from vertex 6
        let w = build_witness(20, 19, 3).unwrap();
        let extra: Vec<_> = w.graph.edges().filter(|&(u, _)| u >= 6).collect();
        assert_eq!(extra, vec![(6, 7), (6, 8), (6, 9), (6, 10)]);
    }

    #[test]
    fn verify_examples() {
        let w = build_witness_or_complement(60, 120, 41).unwrap();
        assert_eq!(verify_witness(&w, pair(40, 390)), WitnessVerdict::Pass);

        let mut bad = build_witness(10, 3, 10).unwrap();
        bad.graph.add_edge(0, 5);
        assert!(matches!(
            verify_witness(&bad, pair(5, 5)),
            WitnessVerdict::Structure(StructureViolation::CrossEdge { u: 0, v: 5 })
        ));

        let w = build_witness(10, 3, 10).unwrap();
        assert!(matches!(
            verify_witness(&w, pair(5, 4)),
            WitnessVerdict::Realizable { .. }
        ));
    }

    #[test]
    fn girth_must_exceed_order() {
        let w = WitnessGraph {
            graph: Graph::cycle(6),
            clique: vec![],
            girth_part: (0..6).collect(),
            girth_bound: 5,
            complemented: false,
        };
        assert!(verify_structure(&w).is_ok());
        assert!(matches!(
            verify_witness(&w, pair(6, 6)),
            WitnessVerdict::GirthBelowOrder { .. }
        ));
    }

    #[test]
    fn arrow_check_examples() {
        assert!(exhaustive_arrow_check(&Graph::complete(4), pair(3, 3)).unwrap());
        assert!(exhaustive_arrow_check(&Graph::cycle(5), pair(3, 1)).unwrap());
        assert!(!exhaustive_arrow_check(&Graph::new(6), pair(3, 1)).unwrap());
        assert!(exhaustive_arrow_check(&Graph::new(100), pair(50, 0)).is_err());
    }
}
