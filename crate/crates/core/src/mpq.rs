//! MPQ-trees: PQ-trees over the maximal cliques with vertex sections.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::cliques::{maximal_cliques, CliqueList};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pqtree::{self, Kind, PqNode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MpqNode {
    Leaf { clique: usize, section: Vec<usize> },
    P { children: Vec<usize>, section: Vec<usize> },
    Q { children: Vec<usize>, sections: Vec<Vec<usize>> },
}

impl MpqNode {
    pub fn children(&self) -> &[usize] {
        match self {
            MpqNode::Leaf { .. } => &[],
            MpqNode::P { children, .. } | MpqNode::Q { children, .. } => children,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MpqNode::Leaf { .. } => "leaf",
            MpqNode::P { .. } => "P",
            MpqNode::Q { .. } => "Q",
        }
    }
}

/// Where a vertex lives: its node and the (0-based, inclusive) range of
/// sections. Leaves and P-nodes have a single section, index 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexHome {
    pub node: usize,
    pub first: usize,
    pub last: usize,
}

/// Forced nestings among the vertices of `s(Q)`: `(x, y)` means `⟦x⟧ ⊊ ⟦y⟧`
/// in every representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedNestingDag {
    pub scope: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct MpqTree {
    /// Nodes in preorder; the root is node 0 and every child has a larger id
    /// than its parent.
    pub nodes: Vec<MpqNode>,
    pub cliques: CliqueList,
    pub home: Vec<VertexHome>,
    parent: Vec<usize>,
    /// Frontier positions covered by each node, inclusive.
    range: Vec<(usize, usize)>,
}

pub const ROOT: usize = 0;

/// Builds the MPQ-tree of an interval graph with at least one vertex.
pub fn build_mpq_tree(g: &Graph) -> Result<MpqTree> {
    if g.n() == 0 {
        return Err(Error::Precondition("the empty graph has no MPQ-tree".into()));
    }
    let cliques = maximal_cliques(g)?;
    let k = cliques.len();
    let pq = pqtree::build_pq_tree(k, cliques.index.iter().map(|s| s.as_slice()))?;
    MpqTree::from_pq(g, cliques, &pq)
}

impl MpqTree {
    fn from_pq(g: &Graph, cliques: CliqueList, pq: &[PqNode]) -> Result<Self> {
        let m = pq.len();
        let mut parent = vec![usize::MAX; m];
        for (x, nd) in pq.iter().enumerate() {
            for &c in &nd.children {
                parent[c] = x;
            }
        }

        // Frontier positions and node ranges, bottom-up (ids are preorder).
        let frontier = pqtree::frontier(pq);
        let mut pos_of_clique = vec![0; frontier.len()];
        for (p, &c) in frontier.iter().enumerate() {
            pos_of_clique[c] = p;
        }
        let mut range = vec![(usize::MAX, 0); m];
        let mut leaf_at = vec![0; frontier.len()];
        for x in (0..m).rev() {
            if pq[x].kind == Kind::Leaf {
                let p = pos_of_clique[pq[x].leaf];
                range[x] = (p, p);
                leaf_at[p] = x;
            } else {
                let first = pq[x].children[0];
                let last = *pq[x].children.last().unwrap();
                range[x] = (range[first].0, range[last].1);
            }
        }

        // Binary lifting for the lowest node covering a position range.
        let mut up = vec![parent.clone()];
        up[0][ROOT] = ROOT;
        let mut span = 1;
        while span < m {
            let prev = up.last().unwrap();
            let next: Vec<usize> = (0..m).map(|x| prev[prev[x]]).collect();
            up.push(next);
            span *= 2;
        }

        let mut nodes: Vec<MpqNode> = pq
            .iter()
            .map(|nd| match nd.kind {
                Kind::Leaf => MpqNode::Leaf { clique: nd.leaf, section: Vec::new() },
                Kind::P => MpqNode::P { children: nd.children.clone(), section: Vec::new() },
                Kind::Q => MpqNode::Q { children: nd.children.clone(), sections: vec![Vec::new(); nd.children.len()] },
            })
            .collect();

        let mut home = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let ids = &cliques.index[v];
            let lo = ids.iter().map(|&c| pos_of_clique[c]).min().unwrap();
            let hi = ids.iter().map(|&c| pos_of_clique[c]).max().unwrap();
            if hi - lo + 1 != ids.len() {
                return Err(Error::NotInterval);
            }
            let mut x = leaf_at[lo];
            if range[x].1 < hi {
                for lvl in (0..up.len()).rev() {
                    let a = up[lvl][x];
                    if range[a].1 < hi {
                        x = a;
                    }
                }
                x = parent[x];
            }
            let h = match &mut nodes[x] {
                MpqNode::Leaf { section, .. } | MpqNode::P { section, .. } => {
                    if range[x] != (lo, hi) {
                        return Err(Error::NotInterval);
                    }
                    section.push(v);
                    VertexHome { node: x, first: 0, last: 0 }
                }
                MpqNode::Q { children, sections } => {
                    let i = children.partition_point(|&c| range[c].1 < lo);
                    let j = children.partition_point(|&c| range[c].1 < hi);
                    if range[children[i]].0 != lo || range[children[j]].1 != hi {
                        return Err(Error::NotInterval);
                    }
                    for s in &mut sections[i..=j] {
                        s.push(v);
                    }
                    VertexHome { node: x, first: i, last: j }
                }
            };
            home.push(h);
        }
        Ok(MpqTree { nodes, cliques, home, parent, range })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        (x != ROOT).then(|| self.parent[x])
    }

    /// Inclusive range of frontier positions under `x`.
    pub fn clique_range(&self, x: usize) -> (usize, usize) {
        self.range[x]
    }

    /// Left-to-right clique ids.
    pub fn frontier(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cliques.len());
        let mut stack = vec![ROOT];
        while let Some(x) = stack.pop() {
            match &self.nodes[x] {
                MpqNode::Leaf { clique, .. } => out.push(*clique),
                nd => stack.extend(nd.children().iter().rev()),
            }
        }
        out
    }

    fn contains(&self, outer: usize, inner: usize) -> bool {
        let (a, b) = self.range[outer];
        let (c, d) = self.range[inner];
        a <= c && d <= b
    }

    /// Vertices of `G[T_x]`: those placed in sections of `x` or below.
    pub fn subtree_vertices(&self, x: usize) -> Vec<usize> {
        (0..self.home.len()).filter(|&v| self.contains(x, self.home[v].node)).collect()
    }

    /// All section vertices of node `x` (for a Q-node, `s(Q)`), ascending.
    pub fn node_vertices(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = match &self.nodes[x] {
            MpqNode::Leaf { section, .. } | MpqNode::P { section, .. } => section.clone(),
            MpqNode::Q { sections, .. } => {
                let mut seen = HashSet::new();
                sections.iter().flatten().copied().filter(|v| seen.insert(*v)).collect()
            }
        };
        out.sort_unstable();
        out
    }

    /// Leftmost and rightmost section of Q-node `q` relevant to `u`
    /// (0-based): the whole span if `u` lies outside `T[q]`, the sections
    /// holding `u` if `u ∈ s(q)`, and `(i, i)` if `u` lies inside `T_i`.
    pub fn section_bounds(&self, q: usize, u: usize) -> Result<(usize, usize)> {
        let MpqNode::Q { children, .. } = &self.nodes[q] else {
            return Err(Error::Precondition(format!("node {q} is not a Q-node")));
        };
        let h = self.home[u];
        if h.node == q {
            Ok((h.first, h.last))
        } else if self.contains(q, h.node) {
            let lo = self.range[h.node].0;
            let i = children.partition_point(|&c| self.range[c].1 < lo);
            Ok((i, i))
        } else {
            Ok((0, children.len() - 1))
        }
    }

    /// The DAG of forced nestings over `s(q)`.
    pub fn forced_nesting_dag(&self, g: &Graph, q: usize) -> Result<ForcedNestingDag> {
        if !matches!(self.nodes[q], MpqNode::Q { .. }) {
            return Err(Error::Precondition(format!("node {q} is not a Q-node")));
        }
        let vertices = self.node_vertices(q);
        let mut edges = Vec::new();
        for &x in &vertices {
            let hx = self.home[x];
            for &y in g.neighbors(x) {
                let hy = self.home[y];
                if hy.node == q && hy.first < hx.first && hx.last < hy.last {
                    edges.push((x, y));
                }
            }
        }
        Ok(ForcedNestingDag { scope: q, vertices, edges })
    }

    /// Number of equivalent trees (saturating).
    pub fn ordering_count(&self) -> u64 {
        self.nodes.iter().fold(1u64, |acc, nd| match nd {
            MpqNode::Leaf { .. } => acc,
            MpqNode::P { children, .. } => (1..=children.len() as u64).fold(acc, |a, f| a.saturating_mul(f)),
            MpqNode::Q { .. } => acc.saturating_mul(2),
        })
    }

    /// Frontiers of all equivalent trees, in a deterministic order.
    pub fn enumerate_orderings(&self, cap: u64) -> Result<Vec<Vec<usize>>> {
        if self.ordering_count() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let inner: Vec<usize> = (0..self.len()).filter(|&x| !matches!(self.nodes[x], MpqNode::Leaf { .. })).collect();
        // Per inner node: the current child arrangement.
        let mut state: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &x in &inner {
            state[x] = self.nodes[x].children().to_vec();
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        loop {
            let f = self.frontier_with(&state);
            if seen.insert(f.clone()) {
                out.push(f);
            }
            // Odometer step.
            let mut carried = true;
            for &x in &inner {
                let wrapped = match &self.nodes[x] {
                    MpqNode::P { .. } => !next_permutation(&mut state[x]),
                    _ => {
                        state[x].reverse();
                        state[x][0] == self.nodes[x].children()[0]
                    }
                };
                if !wrapped {
                    carried = false;
                    break;
                }
            }
            if carried {
                break;
            }
        }
        Ok(out)
    }

    fn frontier_with(&self, state: &[Vec<usize>]) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cliques.len());
        let mut stack = vec![ROOT];
        while let Some(x) = stack.pop() {
            match &self.nodes[x] {
                MpqNode::Leaf { clique, .. } => out.push(*clique),
                _ => stack.extend(state[x].iter().rev()),
            }
        }
        out
    }

    /// Indented text dump, one node per line.
    pub fn dump(&self) -> String {
        fn set(vs: &[usize]) -> String {
            vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        }
        let mut out = String::new();
        let mut stack = vec![(ROOT, 0usize)];
        while let Some((x, depth)) = stack.pop() {
            let pad = "  ".repeat(depth);
            let _ = match &self.nodes[x] {
                MpqNode::Leaf { clique, section } => writeln!(out, "{pad}L #{clique} {{{}}}", set(section)),
                MpqNode::P { section, .. } => writeln!(out, "{pad}P {{{}}}", set(section)),
                MpqNode::Q { sections, .. } => {
                    let parts: Vec<String> = sections.iter().map(|s| set(s)).collect();
                    writeln!(out, "{pad}Q [{}]", parts.join(" | "))
                }
            };
            for &c in self.nodes[x].children().iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }
}

/// Lexicographic next permutation; returns false (and resets to ascending)
/// after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn claw() -> Graph {
        parse_graph("4 3\n0 1\n0 2\n0 3").unwrap()
    }

    fn p4() -> Graph {
        parse_graph("4 3\n0 1\n1 2\n2 3").unwrap()
    }

    #[test]
    fn claw_tree() {
        let t = build_mpq_tree(&claw()).unwrap();
        let MpqNode::P { children, section } = &t.nodes[ROOT] else { panic!("{}", t.dump()) };
        assert_eq!(section, &vec![0]);
        assert_eq!(children.len(), 3);
        let mut leaf_sections: Vec<Vec<usize>> = children
            .iter()
            .map(|&c| match &t.nodes[c] {
                MpqNode::Leaf { section, .. } => section.clone(),
                _ => panic!(),
            })
            .collect();
        leaf_sections.sort();
        assert_eq!(leaf_sections, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(t.enumerate_orderings(100).unwrap().len(), 6);
    }

    #[test]
    fn path_tree() {
        let t = build_mpq_tree(&p4()).unwrap();
        let MpqNode::Q { children, sections } = &t.nodes[ROOT] else { panic!("{}", t.dump()) };
        assert_eq!(children.len(), 3);
        let mut secs = sections.clone();
        if secs[0] != vec![1] {
            secs.reverse();
        }
        assert_eq!(secs, vec![vec![1], vec![1, 2], vec![2]]);
        assert_eq!(t.enumerate_orderings(100).unwrap().len(), 2);
        let a_first = t.home[0].first == 0;
        let b = t.section_bounds(ROOT, 1).unwrap();
        let c = t.section_bounds(ROOT, 2).unwrap();
        if a_first {
            assert_eq!((b, c), ((0, 1), (1, 2)));
        } else {
            assert_eq!((b, c), ((1, 2), (0, 1)));
        }
        assert!(t.forced_nesting_dag(&p4(), ROOT).unwrap().edges.is_empty());
    }

    #[test]
    fn single_vertex_tree() {
        let t = build_mpq_tree(&Graph::new(1)).unwrap();
        assert_eq!(t.nodes, vec![MpqNode::Leaf { clique: 0, section: vec![0] }]);
        assert_eq!(t.frontier(), vec![0]);
        assert_eq!(t.enumerate_orderings(1).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(build_mpq_tree(&claw()).unwrap().enumerate_orderings(5), Err(Error::CapExceeded { cap: 5 }));
    }

    #[test]
    fn nested_span_gives_dag_edge() {
        // y = 0 spans four sections, x = 2 the middle two; 4..7 are private.
        let g = parse_graph("8 15\n0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n0 7\n1 2\n1 4\n1 5\n2 5\n2 3\n2 6\n3 6\n3 7").unwrap();
        let t = build_mpq_tree(&g).unwrap();
        let MpqNode::Q { children, .. } = &t.nodes[ROOT] else { panic!("{}", t.dump()) };
        assert_eq!(children.len(), 4);
        let dag = t.forced_nesting_dag(&g, ROOT).unwrap();
        assert_eq!(dag.vertices, vec![0, 1, 2, 3]);
        assert_eq!(dag.edges, vec![(2, 0)]);
        assert_eq!(t.section_bounds(ROOT, 0).unwrap(), (0, 3));
        let inside = t.section_bounds(ROOT, 4).unwrap();
        assert_eq!(inside.0, inside.1);
    }

    #[test]
    fn non_interval_chordal_graph_is_rejected() {
        // The "net": triangle 0-1-2 with pendants 3,4,5.
        let g = parse_graph("6 6\n0 1\n1 2\n0 2\n0 3\n1 4\n2 5").unwrap();
        assert!(matches!(build_mpq_tree(&g), Err(Error::NotInterval)));
    }

    #[test]
    fn permutations_cycle() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, vec![0, 1, 2]);
    }
}
