#![allow(dead_code)]

use std::collections::HashSet;

use nestint::{random_interval_graph, Graph, Interval, IntervalRepresentation};

/// Every labeled interval graph on `n` vertices, with vertices numbered by
/// left endpoint: vertex `i` is adjacent to the next `reach[i]` vertices.
fn labeled_interval_graphs(n: usize, mut f: impl FnMut(&Graph)) {
    fn go(n: usize, i: usize, reach: &mut Vec<usize>, f: &mut dyn FnMut(&Graph)) {
        if i == n {
            let edges = (0..n).flat_map(|u| (u + 1..=u + reach[u]).map(move |v| (u, v)));
            f(&Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap());
            return;
        }
        for r in 0..n - i {
            reach.push(r);
            go(n, i + 1, reach, f);
            reach.pop();
        }
    }
    go(n, 0, &mut Vec::new(), &mut f);
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Canonical adjacency string: colour refinement, then the lexicographically
/// least upper triangle over orders that respect the colour classes.
pub fn canonical_form(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut color: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| color[u]).collect();
                nb.sort();
                (color[v], nb)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let before: HashSet<usize> = color.iter().copied().collect();
        let stable = distinct.len() == before.len();
        color = next;
        if stable {
            break;
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| color[v]);
    for v in order {
        match classes.last_mut() {
            Some(c) if color[c[0]] == color[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut pos = Vec::with_capacity(n);
    fn expand(g: &Graph, classes: &mut [Vec<usize>], k: usize, pos: &mut Vec<usize>, best: &mut Option<Vec<bool>>) {
        if k == classes.len() {
            let n = pos.len();
            let code: Vec<bool> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.has_edge(pos[i], pos[j])).collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        permute(g, classes, k, 0, pos, best);
    }
    fn permute(
        g: &Graph,
        classes: &mut [Vec<usize>],
        k: usize,
        i: usize,
        pos: &mut Vec<usize>,
        best: &mut Option<Vec<bool>>,
    ) {
        if i == classes[k].len() {
            expand(g, classes, k + 1, pos, best);
            return;
        }
        for j in i..classes[k].len() {
            classes[k].swap(i, j);
            pos.push(classes[k][i]);
            permute(g, classes, k, i + 1, pos, best);
            pos.pop();
            classes[k].swap(i, j);
        }
    }
    expand(g, &mut classes, 0, &mut pos, &mut best);
    best.unwrap_or_default()
}

/// Connected interval graphs on `n` vertices, one per isomorphism class.
pub fn connected_interval_graphs(n: usize) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    labeled_interval_graphs(n, |g| {
        if is_connected(g) && seen.insert(canonical_form(g)) {
            out.push(g.clone());
        }
    });
    out
}

pub fn exhaustive_corpus(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_interval_graphs).collect()
}

/// Seeded random interval graphs with `1 ≤ n ≤ max_n`.
pub fn random_corpus(count: u64, max_n: usize) -> Vec<Graph> {
    (0..count)
        .map(|seed| {
            let n = 1 + seed as usize % max_n;
            let spread = [1.0, 2.0, 3.0][seed as usize % 3];
            random_interval_graph(n, seed, spread).0
        })
        .collect()
}

fn from_intervals(ivs: &[(i64, i64)]) -> Graph {
    IntervalRepresentation::new(ivs.iter().map(|&(l, r)| Interval::from_ints(l, r)).collect()).intersection_graph()
}

/// A universal vertex over three disjoint claws: a P-node whose three
/// children are claws.
pub fn p_node_example() -> Graph {
    let mut ivs = vec![(0, 100)];
    for c in 0..3 {
        let b = 10 + 30 * c;
        ivs.extend([(b, b + 10), (b, b + 1), (b + 4, b + 5), (b + 9, b + 10)]);
    }
    from_intervals(&ivs)
}

/// Spans of `s(Q)` in the Q-node example, 0-based child positions.
/// `x_2 .. x_5` are the vertices listed with their `ν` values; `x_1`, `x_6`
/// and `x_7` pin the child order.
pub const Q_SPANS: [(&str, (usize, usize)); 7] =
    [("x1", (0, 1)), ("x2", (1, 7)), ("x3", (2, 4)), ("x4", (3, 6)), ("x5", (4, 5)), ("x6", (6, 7)), ("x7", (1, 2))];

/// Child position holding `K_{1,3} ⊎ K_1`; every other child is a single vertex.
pub const Q_SPECIAL_CHILD: usize = 4;

/// The Q-node example as a graph. Vertices `0..7` are `Q_SPANS` in order.
pub fn q_node_example() -> Graph {
    let mut ivs: Vec<(i64, i64)> = Q_SPANS.iter().map(|&(_, (a, b))| (10 * a as i64 + 1, 10 * b as i64 + 8)).collect();
    for p in 0..8i64 {
        if p as usize == Q_SPECIAL_CHILD {
            ivs.extend([(42, 46), (42, 42), (44, 44), (46, 46), (47, 47)]);
        } else {
            ivs.push((10 * p + 4, 10 * p + 5));
        }
    }
    from_intervals(&ivs)
}

/// Section spans for a Q-node with `q` children built from raw pairs: each
/// span covers at least two children, and every boundary between neighbouring
/// children is crossed by some span.
pub fn q_spans(q: usize, raw: impl IntoIterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut spans: Vec<(usize, usize)> = raw
        .into_iter()
        .map(|(a, b)| {
            let a = a % (q - 1);
            (a, a + 1 + b % (q - 1 - a))
        })
        .collect();
    for i in 0..q - 1 {
        if !spans.iter().any(|&(a, b)| a <= i && i < b) {
            spans.push((i, i + 1));
        }
    }
    spans
}
