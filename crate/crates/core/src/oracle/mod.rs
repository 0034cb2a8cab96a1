//! Brute-force ground truth on small graphs: isomorphism-class enumeration,
//! the arrow relation `(n, e) -> (m, f)`, the sets `S_n(m, f)`, and an
//! explicit clique-plus-forest constructor.

mod canon;
mod small;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::binom2;
use crate::criterion::{clique_forest_realizable, PairMF};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::guard::GuardError;

pub use canon::{canonical_code, canonical_form, is_isomorphic};
pub use small::{SmallGraph, SMALL_MAX_N};

/// Largest `m` accepted by [`clique_forest_oracle`].
pub const CF_ORACLE_MAX_M: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Largest `n` for a full sweep over every `e`.
    pub sweep_max_n: usize,
    /// Largest `n` for a single `(n, e)` query.
    pub query_max_n: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            sweep_max_n: 9,
            query_max_n: 10,
        }
    }
}

/// Canonical codes of every isomorphism class with `n` vertices and `e`
/// edges, ascending, for each `e` in `0..=max_e`. Each level is built by
/// adding one edge to every class of the level below.
pub fn enumerate_levels(n: usize, max_e: u64, exec: &Exec) -> Vec<Vec<u128>> {
    let mut levels = vec![vec![canonical_code(&SmallGraph::new(n))]];
    for _ in 0..max_e.min(binom2(n as u64)) {
        let prev = levels.last().expect("level 0 exists");
        let children = exec.map(prev, |&code| {
            let g = SmallGraph::from_code(n, code);
            let mut out = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let mut h = g;
                        h.add_edge(u, v);
                        out.push(canonical_code(&h));
                    }
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        });
        let mut level: Vec<u128> = children.into_iter().flatten().collect();
        level.sort_unstable();
        level.dedup();
        levels.push(level);
    }
    levels
}

/// Codes for `e` edges, using complements of the `C(n,2) - e` level when `e`
/// is past the midpoint. `levels` must reach `min(e, C(n,2) - e)`.
fn level_codes(n: usize, e: u64, levels: &[Vec<u128>], exec: &Exec) -> Vec<u128> {
    let total = binom2(n as u64);
    if e <= total - e {
        return levels[e as usize].clone();
    }
    let mut codes = exec.map(&levels[(total - e) as usize], |&c| {
        canonical_code(&SmallGraph::from_code(n, c).complement())
    });
    codes.sort_unstable();
    codes
}

fn half_edges(n: usize) -> u64 {
    binom2(n as u64) / 2
}

/// One representative per isomorphism class on `n` vertices with `e` edges,
/// in canonical form, ordered by canonical code.
pub fn enumerate_graphs(
    n: usize,
    e: u64,
    cfg: &OracleConfig,
    exec: &Exec,
) -> Result<Vec<SmallGraph>, GuardError> {
    GuardError::check(
        "graph order for enumeration",
        n as u128,
        cfg.query_max_n as u128,
    )?;
    let total = binom2(n as u64);
    if e > total {
        return Ok(Vec::new());
    }
    let levels = enumerate_levels(n, e.min(total - e), exec);
    Ok(level_codes(n, e, &levels, exec)
        .into_iter()
        .map(|c| SmallGraph::from_code(n, c))
        .collect())
}

/// Whether some `m`-subset of `g` induces exactly `f` edges.
pub fn arrows(g: &SmallGraph, pair: PairMF) -> bool {
    let m = pair.m() as usize;
    if m > g.order() {
        return false;
    }
    subset_search(g.rows(), m, pair.f() as usize, 0, 0, 0, 0)
}

fn subset_search(
    rows: &[u16],
    m: usize,
    f: usize,
    start: usize,
    chosen: u16,
    k: usize,
    edges: usize,
) -> bool {
    if edges > f {
        return false;
    }
    let left = m - k;
    if left == 0 {
        return edges == f;
    }
    if edges + left * k + left * (left - 1) / 2 < f {
        return false;
    }
    (start..=rows.len() - left).any(|v| {
        let added = (rows[v] & chosen).count_ones() as usize;
        subset_search(rows, m, f, v + 1, chosen | 1 << v, k + 1, edges + added)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ArrowVerdict {
    Arrows {
        classes: usize,
    },
    /// The non-arrowing class with the least canonical code.
    Counterexample {
        classes: usize,
        graph6: String,
    },
}

impl ArrowVerdict {
    pub fn arrows(&self) -> bool {
        matches!(self, ArrowVerdict::Arrows { .. })
    }
}

fn decide(n: usize, codes: &[u128], pair: PairMF, exec: &Exec) -> ArrowVerdict {
    let hits = exec.map(codes, |&c| arrows(&SmallGraph::from_code(n, c), pair));
    match hits.iter().position(|&h| !h) {
        None => ArrowVerdict::Arrows {
            classes: codes.len(),
        },
        Some(i) => ArrowVerdict::Counterexample {
            classes: codes.len(),
            graph6: SmallGraph::from_code(n, codes[i]).to_graph6(),
        },
    }
}

/// `(n, e) -> (m, f)`: every graph with `n` vertices and `e` edges has an
/// induced `(m, f)` subgraph.
pub fn arrows_pair(
    n: usize,
    e: u64,
    pair: PairMF,
    cfg: &OracleConfig,
    exec: &Exec,
) -> Result<ArrowVerdict, GuardError> {
    GuardError::check(
        "graph order for enumeration",
        n as u128,
        cfg.query_max_n as u128,
    )?;
    let total = binom2(n as u64);
    if e > total {
        return Ok(ArrowVerdict::Arrows { classes: 0 });
    }
    let levels = enumerate_levels(n, e.min(total - e), exec);
    Ok(decide(n, &level_codes(n, e, &levels, exec), pair, exec))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrowReport {
    pub n: usize,
    pub m: u64,
    pub f: u64,
    /// Every `e` with `(n, e) -> (m, f)`, ascending.
    pub s: Vec<u64>,
    /// One non-arrowing graph (graph6) for every `e` outside `s`.
    pub counterexamples: BTreeMap<u64, String>,
    /// Isomorphism classes examined at each `e`.
    pub classes: Vec<usize>,
    /// `|s| / (C(n,2) + 1)` at this single `n`.
    pub fixed_n_fraction: f64,
}

pub fn compute_s_n(
    n: usize,
    pair: PairMF,
    cfg: &OracleConfig,
    exec: &Exec,
) -> Result<ArrowReport, GuardError> {
    GuardError::check(
        "graph order for a full sweep",
        n as u128,
        cfg.sweep_max_n as u128,
    )?;
    let total = binom2(n as u64);
    let levels = enumerate_levels(n, half_edges(n) + total % 2, exec);
    let mut s = Vec::new();
    let mut counterexamples = BTreeMap::new();
    let mut classes = Vec::new();
    for e in 0..=total {
        let codes = level_codes(n, e, &levels, exec);
        classes.push(codes.len());
        match decide(n, &codes, pair, exec) {
            ArrowVerdict::Arrows { .. } => s.push(e),
            ArrowVerdict::Counterexample { graph6, .. } => {
                counterexamples.insert(e, graph6);
            }
        }
    }
    let fixed_n_fraction = s.len() as f64 / (total + 1) as f64;
    Ok(ArrowReport {
        n,
        m: pair.m(),
        f: pair.f(),
        s,
        counterexamples,
        classes,
        fixed_n_fraction,
    })
}

/// An explicit graph on `m` vertices and `f` edges that is a clique plus a
/// forest, if one exists. Tries every clique size and grows a spanning
/// forest on the rest one edge at a time; the result is checked
/// structurally before it is returned.
pub fn clique_forest_example(pair: PairMF) -> Result<Option<Graph>, GuardError> {
    GuardError::check(
        "clique-forest oracle m",
        pair.m() as u128,
        CF_ORACLE_MAX_M as u128,
    )?;
    let (m, f) = (pair.m() as usize, pair.f() as usize);
    for x in 0..=m {
        let mut g = Graph::new(m);
        for u in 0..x {
            for v in u + 1..x {
                g.add_edge(u, v);
            }
        }
        if g.edge_count() > f {
            break;
        }
        let mut comp: Vec<usize> = (0..m).collect();
        'grow: for u in x..m {
            for v in u + 1..m {
                if g.edge_count() == f {
                    break 'grow;
                }
                let (cu, cv) = (root(&mut comp, u), root(&mut comp, v));
                if cu != cv {
                    comp[cu] = cv;
                    g.add_edge(u, v);
                }
            }
        }
        if g.edge_count() == f && g.is_clique_plus_forest() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn root(comp: &mut [usize], mut v: usize) -> usize {
    while comp[v] != v {
        comp[v] = comp[comp[v]];
        v = comp[v];
    }
    v
}

pub fn clique_forest_oracle(pair: PairMF) -> Result<bool, GuardError> {
    Ok(clique_forest_example(pair)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XcheckReport {
    pub max_m: u64,
    pub pairs_checked: u64,
    pub realizable: u64,
    pub impossible: u64,
    pub disagreements: Vec<PairMF>,
}

impl XcheckReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compare [`clique_forest_oracle`] with the criterion's decision for every
/// `m <= max_m` and every `f`.
pub fn xcheck_cf(max_m: u64) -> Result<XcheckReport, GuardError> {
    GuardError::check(
        "clique-forest oracle m",
        max_m as u128,
        CF_ORACLE_MAX_M as u128,
    )?;
    let mut report = XcheckReport {
        max_m,
        pairs_checked: 0,
        realizable: 0,
        impossible: 0,
        disagreements: Vec::new(),
    };
    for m in 1..=max_m {
        for f in 0..=binom2(m) {
            let pair = PairMF::new(m, f).expect("f within range");
            let oracle = clique_forest_oracle(pair)?;
            let criterion = !clique_forest_realizable(pair).is_impossible();
            report.pairs_checked += 1;
            if oracle {
                report.realizable += 1;
            } else {
                report.impossible += 1;
            }
            if oracle != criterion {
                report.disagreements.push(pair);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(m: u64, f: u64) -> PairMF {
        PairMF::new(m, f).unwrap()
    }

    fn small(g: &Graph) -> SmallGraph {
        SmallGraph::from_graph(g).unwrap()
    }

    #[test]
    fn class_counts() {
        let cfg = OracleConfig::default();
        let ex = Exec::Serial;
        assert_eq!(enumerate_graphs(3, 1, &cfg, &ex).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(4, 3, &cfg, &ex).unwrap().len(), 3);
        for (n, want) in [
            (1, 1),
            (2, 2),
            (3, 4),
            (4, 11),
            (5, 34),
            (6, 156),
            (7, 1044),
        ] {
            let total: usize = (0..=binom2(n as u64))
                .map(|e| enumerate_graphs(n, e, &cfg, &ex).unwrap().len())
                .sum();
            assert_eq!(total, want, "n = {n}");
        }
        assert!(enumerate_graphs(11, 3, &cfg, &ex).is_err());
    }

    #[test]
    fn arrows_examples() {
        assert!(arrows(&small(&Graph::complete(5)), pair(3, 3)));
        assert!(arrows(&small(&Graph::cycle(5)), pair(4, 3)));
        assert!(!arrows(&small(&Graph::complete(5)), pair(3, 0)));
    }

    #[test]
    fn arrows_pair_examples() {
        let cfg = OracleConfig::default();
        let ex = Exec::Serial;
        assert!(arrows_pair(3, 3, pair(2, 1), &cfg, &ex).unwrap().arrows());
        assert_eq!(
            arrows_pair(3, 3, pair(2, 0), &cfg, &ex).unwrap(),
            ArrowVerdict::Counterexample {
                classes: 1,
                graph6: "Bw".into()
            }
        );
        assert!(arrows_pair(4, 2, pair(2, 1), &cfg, &ex).unwrap().arrows());
    }

    #[test]
    fn s_n_examples() {
        let cfg = OracleConfig::default();
        for n in 3..=6 {
            let total = binom2(n as u64);
            let r = compute_s_n(n, pair(2, 0), &cfg, &Exec::Serial).unwrap();
            assert_eq!(r.s, (0..total).collect::<Vec<_>>());
            assert_eq!(r.counterexamples.len(), 1);
            let r = compute_s_n(n, pair(2, 1), &cfg, &Exec::Serial).unwrap();
            assert_eq!(r.s, (1..=total).collect::<Vec<_>>());
        }
        assert!(compute_s_n(10, pair(2, 1), &cfg, &Exec::Serial).is_err());
    }

    #[test]
    fn cf_oracle_examples() {
        assert!(!clique_forest_oracle(pair(5, 7)).unwrap());
        assert!(clique_forest_oracle(pair(4, 3)).unwrap());
        assert!(clique_forest_oracle(pair(40, 390)).is_err());
        let g = clique_forest_example(pair(6, 7)).unwrap().unwrap();
        assert_eq!((g.order(), g.edge_count()), (6, 7));
        assert!(clique_forest_example(pair(6, 8)).unwrap().is_none());
    }

    #[test]
    fn xcheck_agrees() {
        let r = xcheck_cf(12).unwrap();
        assert!(r.agrees(), "{:?}", r.disagreements);
        assert_eq!(
            r.pairs_checked,
            (1..=12).map(|m| binom2(m) + 1).sum::<u64>()
        );
    }
}
