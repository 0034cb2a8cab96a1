//! Canonical labeling for small graphs by equitable refinement and
//! individualization. The canonical code is the largest [`SmallGraph::code_under`]
//! value over all leaves of the search tree.

use super::small::SmallGraph;

/// Ordered partition of the vertex set; cells are listed in an
/// isomorphism-invariant order.
type Partition = Vec<Vec<u8>>;

pub fn canonical_code(g: &SmallGraph) -> u128 {
    let n = g.order();
    if n <= 1 {
        return 0;
    }
    let mut best = None;
    search(g, vec![(0..n as u8).collect()], &mut best);
    best.expect("search visits at least one leaf")
}

pub fn canonical_form(g: &SmallGraph) -> SmallGraph {
    SmallGraph::from_code(g.order(), canonical_code(g))
}

pub fn is_isomorphic(a: &SmallGraph, b: &SmallGraph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_code(a) == canonical_code(b)
}

fn search(g: &SmallGraph, mut cells: Partition, best: &mut Option<u128>) {
    refine(g, &mut cells);
    let Some(t) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<u8> = cells.iter().map(|c| c[0]).collect();
        let code = g.code_under(&order);
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    };
    let target = cells[t].clone();
    let mut reps: Vec<u8> = Vec::new();
    for &v in &target {
        // swapping twins is an automorphism fixing everything individualized so far
        if reps.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        reps.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..t]);
        next.push(vec![v]);
        next.push(target.iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[t + 1..]);
        search(g, next, best);
    }
}

fn twins(g: &SmallGraph, u: u8, v: u8) -> bool {
    let (bu, bv) = (1u16 << u, 1u16 << v);
    g.row(u as usize) & !bv == g.row(v as usize) & !bu
}

/// Split cells by neighbor counts into every cell until stable.
fn refine(g: &SmallGraph, cells: &mut Partition) {
    loop {
        let masks: Vec<u16> = cells
            .iter()
            .map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v))
            .collect();
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<([u8; 16], u8)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = [0u8; 16];
                    let row = g.row(v as usize);
                    for (s, m) in sig.iter_mut().zip(&masks) {
                        *s = (row & m).count_ones() as u8;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}
