//! Maximal cliques of chordal graphs via maximum cardinality search.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Maximal cliques of a chordal graph plus the vertex -> clique index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueList {
    /// Each clique as a sorted vertex list.
    pub cliques: Vec<Vec<usize>>,
    /// For each vertex, the sorted ids of cliques containing it.
    pub index: Vec<Vec<usize>>,
}

impl CliqueList {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Checks that `order` (a permutation of clique ids) is consecutive and
    /// returns, per vertex, the first and last position of its cliques.
    pub fn spans(&self, order: &[usize]) -> Result<Vec<(usize, usize)>> {
        let k = self.len();
        if order.len() != k {
            return Err(Error::Precondition(format!("ordering has {} entries, expected {k}", order.len())));
        }
        let mut pos = vec![usize::MAX; k];
        for (p, &c) in order.iter().enumerate() {
            if c >= k || pos[c] != usize::MAX {
                return Err(Error::Precondition("ordering is not a permutation of the cliques".into()));
            }
            pos[c] = p;
        }
        let mut out = Vec::with_capacity(self.index.len());
        for (v, ids) in self.index.iter().enumerate() {
            let (mut lo, mut hi) = (usize::MAX, 0);
            for &c in ids {
                lo = lo.min(pos[c]);
                hi = hi.max(pos[c]);
            }
            if ids.is_empty() || hi - lo + 1 != ids.len() {
                return Err(Error::OrderingNotConsecutive { vertex: v });
            }
            out.push((lo, hi));
        }
        Ok(out)
    }
}

/// Maximum cardinality search. Returns the visit order and, for every
/// vertex, its neighbours visited before it.
fn mcs(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    buckets[0] = (0..n).rev().collect();
    let mut top = 0usize;
    let mut order = Vec::with_capacity(n);
    let mut madj: Vec<Vec<usize>> = vec![Vec::new(); n];

    while order.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !visited[v] && weight[v] == top => break v,
                Some(_) => {}
                None => top -= 1,
            }
        };
        visited[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if visited[u] {
                madj[v].push(u);
            } else {
                weight[u] += 1;
                buckets[weight[u]].push(u);
                top = top.max(weight[u]);
            }
        }
    }
    (order, madj)
}

/// All maximal cliques of `g`, or `NotChordal`.
pub fn maximal_cliques(g: &Graph) -> Result<CliqueList> {
    let n = g.n();
    let (order, madj) = mcs(g);
    let mut number = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        number[v] = i;
    }

    // Reverse visit order is a perfect elimination ordering iff, for each v,
    // the earlier neighbours other than the latest one are adjacent to it.
    for earlier in &madj {
        if let Some(&p) = earlier.iter().max_by_key(|&&u| number[u]) {
            if earlier.iter().any(|&u| u != p && !g.has_edge(p, u)) {
                return Err(Error::NotChordal);
            }
        }
    }

    let mut cliques = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let closes = match order.get(i + 1) {
            None => true,
            Some(&next) => madj[next].len() <= madj[v].len(),
        };
        if closes {
            let mut c = madj[v].clone();
            c.push(v);
            c.sort_unstable();
            cliques.push(c);
        }
    }

    let mut index = vec![Vec::new(); n];
    for (id, c) in cliques.iter().enumerate() {
        for &v in c {
            index[v].push(id);
        }
    }
    Ok(CliqueList { cliques, index })
}
