//! Order-size pairs `(m, f)` that large graphs can avoid as induced subgraphs.
//!
//! A graph `G` arrows `(m, f)` when some `m` of its vertices induce exactly
//! `f` edges. A pair is absolutely avoidable when, for all large `n`, every
//! edge count `e` admits an `n`-vertex graph with `e` edges that does not
//! arrow it. The main certificate used here: if neither `(m, f)` nor
//! `(m, C(m,2) - f)` is a clique plus a forest, a clique plus a high-girth
//! graph (or its complement) avoids `(m, f)`.
//!
//! | module | contents |
//! |---|---|
//! | [`arith`] | integer square roots, exact surd floors, fixed-point fractions |
//! | [`pell`] | the Pell family generating `M = {40, 221, 1276, ...}` |
//! | [`criterion`] | the L/R test, clique-plus-forest search, certificates, scans |
//! | [`witness`] | clique plus high-girth witness graphs and their verifier |
//! | [`oracle`] | isomorphism-class enumeration and brute-force arrowing |
//! | [`bipartite`] | biclique plus forest decompositions |
//! | [`diag`] | equidistribution of `{y_q(4m)}` |
//! | [`cli`] | the `avoid` command line |
//!
//! ## Examples
//!
//! The `examples/` directory is the quickest way in. Run one with
//! `cargo run --release --example <name>`.
//!
//! - **`exact_arith`**: integer square roots, surd floors, fixed-point fractions
//! - **`pell_family`**: Pell states and the set `M`
//! - **`criterion_eval`**: `L_q(m)`, `R_q(m)`, `{y_q(m)}` and `d` at sample points
//! - **`certificate`**: which small pairs are certified and why others are not
//! - **`center_offset_scan`**: the center-or-`±6m` scan from 740 upward, and below
//! - **`family_scans`**: affine offset families, `f`-intervals, `m = 2, 3 (mod 4)`
//! - **`witness_build`**: building and checking clique plus high-girth witnesses
//! - **`arrow_oracle`**: class enumeration, `S_n(m, f)`, the clique-forest cross-check
//! - **`bipartite`**: biclique plus forest decompositions
//! - **`equidistribution`**: histogram and discrepancy of `{y_q(4m)}`

pub mod arith;
pub mod bipartite;
pub mod cli;
pub mod criterion;
pub mod diag;
pub mod exec;
pub mod graph;
pub mod guard;
pub mod oracle;
pub mod pell;
pub mod witness;

pub use criterion::PairMF;
pub use exec::Exec;
pub use graph::Graph;
pub use guard::GuardError;
