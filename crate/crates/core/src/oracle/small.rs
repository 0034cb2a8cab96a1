//! Graphs on at most 16 vertices stored as one `u16` row per vertex.

use crate::graph::Graph;

pub const SMALL_MAX_N: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: u8,
    rows: [u16; SMALL_MAX_N],
}

impl std::fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmallGraph({})", self.to_graph6())
    }
}

impl SmallGraph {
    pub fn new(n: usize) -> SmallGraph {
        assert!(
            n <= SMALL_MAX_N,
            "SmallGraph holds at most {SMALL_MAX_N} vertices"
        );
        SmallGraph {
            n: n as u8,
            rows: [0; SMALL_MAX_N],
        }
    }

    pub fn from_graph(g: &Graph) -> Option<SmallGraph> {
        if g.order() > SMALL_MAX_N {
            return None;
        }
        let mut s = SmallGraph::new(g.order());
        for (u, v) in g.edges() {
            s.add_edge(u, v);
        }
        Some(s)
    }

    pub fn to_graph(&self) -> Graph {
        let edges: Vec<_> = self.edges().collect();
        Graph::from_edges(self.order(), &edges)
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.order()]
    }

    pub fn row(&self, v: usize) -> u16 {
        self.rows[v]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.order() && v < self.order());
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> SmallGraph {
        let n = self.order();
        let full: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
        let mut c = *self;
        for v in 0..n {
            c.rows[v] = !self.rows[v] & full & !(1 << v);
        }
        c
    }

    /// Upper-triangle bits in graph6 order (column by column), first bit
    /// most significant, under the labeling `order[new] = old`.
    pub fn code_under(&self, order: &[u8]) -> u128 {
        let mut code = 0u128;
        for j in 1..order.len() {
            let row = self.rows[order[j] as usize];
            for &oi in &order[..j] {
                code = code << 1 | (row >> oi & 1) as u128;
            }
        }
        code
    }

    /// The identity-labeled code.
    pub fn code(&self) -> u128 {
        let order: Vec<u8> = (0..self.n).collect();
        self.code_under(&order)
    }

    pub fn from_code(n: usize, code: u128) -> SmallGraph {
        let mut g = SmallGraph::new(n);
        let mut bit = n * n.saturating_sub(1) / 2;
        for j in 1..n {
            for i in 0..j {
                bit -= 1;
                if code >> bit & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        self.to_graph().to_graph6()
    }
}
