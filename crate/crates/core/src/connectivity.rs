//! Vertex connectivity by counting vertex-disjoint paths (Menger).

use std::collections::VecDeque;

use crate::graph::{bits, Graph};

/// Maximum number of internally vertex-disjoint `s`-`t` paths for
/// non-adjacent `s != t`, via unit-capacity max flow on the split graph.
pub fn disjoint_paths(g: &Graph, s: usize, t: usize) -> usize {
    assert!(s != t && !g.has_edge(s, t));
    let n = g.order();
    // node v_in = 2v, v_out = 2v+1; capacity 1 on v_in -> v_out
    let size = 2 * n;
    let mut cap = vec![vec![0i8; size]; size];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = 1;
        for w in bits(g.neighbors(v)) {
            cap[2 * v + 1][2 * w] = 1;
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    let mut prev = vec![usize::MAX; size];
    loop {
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..size {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
}

/// κ(G): `order - 1` for complete graphs, otherwise the minimum number of
/// vertex-disjoint paths over non-adjacent pairs.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    let mut best = n;
    for s in 0..n {
        // a minimum separator avoids at least one of the first best+1
        // vertices, so sources beyond that add nothing new
        if s > best {
            break;
        }
        for t in 0..n {
            if t != s && !g.has_edge(s, t) {
                best = best.min(disjoint_paths(g, s, t));
                if best == 0 {
                    return 0;
                }
            }
        }
    }
    best
}
