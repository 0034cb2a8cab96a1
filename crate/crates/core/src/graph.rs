//! Simple undirected graphs on `0..n` with bitset adjacency rows, graph6
//! interchange and girth.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n).complement()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Adds `{u, v}`; returns false if it was already present.
    /// Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_ne!(u, v, "self-loop");
        let fresh = !self.has_edge(u, v);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        fresh
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + b
                })
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Number of edges with both ends in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut total = 0;
        for (i, &u) in vertices.iter().enumerate() {
            total += vertices[i + 1..]
                .iter()
                .filter(|&&v| self.has_edge(u, v))
                .count();
        }
        total
    }

    /// Length of a shortest cycle; `None` for forests.
    ///
    /// BFS from every vertex; a non-tree edge `(u, w)` met during the search
    /// from `root` closes a closed walk of length `d(u) + d(w) + 1` through
    /// `root`, and the minimum over all roots is attained by a shortest cycle.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                        if 2 * dist[u] + 1 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    pub fn is_forest(&self) -> bool {
        self.girth().is_none()
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The graph is a complete graph plus a forest with no edges between
    /// them. A non-empty clique part is connected, so it is a whole
    /// component; otherwise the graph is a forest.
    pub fn is_clique_plus_forest(&self) -> bool {
        if self.is_forest() {
            return true;
        }
        let comps = self.components();
        comps.iter().any(|c| {
            let k = c.len();
            self.induced_edge_count(c) == k * (k - 1) / 2 && {
                let rest: Vec<usize> = (0..self.n)
                    .filter(|v| c.binary_search(v).is_err())
                    .collect();
                self.induced(&rest).is_forest()
            }
        })
    }

    /// graph6 encoding (no `>>graph6<<` header).
    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        let n = self.n;
        if n <= 62 {
            out.push(n as u8 + 63);
        } else if n <= 258_047 {
            out.push(126);
            for shift in [12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        } else {
            out.extend([126, 126]);
            for shift in [30, 24, 18, 12, 6, 0] {
                out.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 is printable ASCII")
    }

    pub fn from_graph6(s: &str) -> Result<Graph, Graph6Error> {
        let s = s.trim_end_matches(['\n', '\r']);
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(Graph6Error::BadByte(b));
        }
        let (n, body) = match bytes {
            [] => return Err(Graph6Error::Truncated),
            [126, 126, rest @ ..] => (read_size(rest, 6)?, &rest[6..]),
            [126, rest @ ..] => (read_size(rest, 3)?, &rest[3..]),
            [b, rest @ ..] => ((*b - 63) as usize, rest),
        };
        let bits = n * n.saturating_sub(1) / 2;
        let need = bits.div_ceil(6);
        if body.len() != need {
            return Err(Graph6Error::Length {
                n,
                expected: need,
                got: body.len(),
            });
        }
        let mut g = Graph::new(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6] - 63;
                if byte >> (5 - k % 6) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        if bits % 6 != 0 && (body[need - 1] - 63) & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(Graph6Error::Padding);
        }
        Ok(g)
    }

    pub fn to_adjacency(&self) -> AdjacencyList {
        AdjacencyList {
            n: self.n,
            adj: (0..self.n).map(|v| self.neighbors(v).collect()).collect(),
        }
    }
}

fn read_size(bytes: &[u8], len: usize) -> Result<usize, Graph6Error> {
    if bytes.len() < len {
        return Err(Graph6Error::Truncated);
    }
    Ok(bytes[..len]
        .iter()
        .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("graph6 string is truncated")]
    Truncated,
    #[error("byte {0} outside the graph6 range 63..=126")]
    BadByte(u8),
    #[error("graph6 body for n = {n} needs {expected} bytes, got {got}")]
    Length {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("nonzero padding bits in graph6 body")]
    Padding,
}

/// Adjacency-list JSON form used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyList {
    pub n: usize,
    pub adj: Vec<Vec<usize>>,
}

impl From<&AdjacencyList> for Graph {
    fn from(a: &AdjacencyList) -> Graph {
        let mut g = Graph::new(a.n);
        for (u, nbrs) in a.adj.iter().enumerate() {
            for &v in nbrs {
                g.add_edge(u, v);
            }
        }
        g
    }
}
