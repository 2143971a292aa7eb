//! Undirected simple graphs, the edge-list text format, twin pruning and
//! induced subgraphs.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::repr::{Coord, Interval, IntervalRepresentation};

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge iterator. Duplicate edges are collapsed;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Sorts and deduplicates raw (symmetric, loop-free) adjacency lists.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut deg_sum = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            deg_sum += list.len();
        }
        Graph { adj, m: deg_sum / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Sorted closed neighborhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let list = &self.adj[v];
        let pos = list.partition_point(|&x| x < v);
        let mut out = Vec::with_capacity(list.len() + 1);
        out.extend_from_slice(&list[..pos]);
        out.push(v);
        out.extend_from_slice(&list[pos..]);
        out
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + off).collect()));
        Graph { adj, m: self.m + other.m }
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm[u]] = list.iter().map(|&v| perm[v]).collect();
        }
        Graph::from_raw_adjacency(adj)
    }

    /// Subgraph induced by `vertices` (deduplicated, relabeled densely in
    /// increasing order). Returns the graph together with the map from new to
    /// old vertex ids.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.n();
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&u| (new_id[u] != usize::MAX).then_some(new_id[u])).collect())
            .collect();
        Ok((Graph::from_raw_adjacency(adj), keep))
    }

    /// Serializes to the edge-list format accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::Parse { line, msg: format!("self-loop at vertex {u}") });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares {m} edges but {} were listed", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse { line, msg: "expected two integers".into() })?;
        tok.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("bad integer {tok:?}: {e}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse { line, msg: "trailing tokens".into() });
    }
    Ok((a, b))
}

/// Quotient of a graph by the twin relation `N[x] = N[y]`.
#[derive(Clone, Debug)]
pub struct TwinReduction {
    pub pruned: Graph,
    /// Original vertex -> vertex of `pruned`.
    pub class_of: Vec<usize>,
    /// Vertex of `pruned` -> original members, ascending; the first member is
    /// the representative.
    pub members: Vec<Vec<usize>>,
}

impl TwinReduction {
    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }
}

/// Collapses every class of twins to a single vertex. Classes are numbered in
/// order of their smallest member.
pub fn prune_twins(g: &Graph) -> TwinReduction {
    let n = g.n();
    let mut by_hood: HashMap<Vec<usize>, usize> = HashMap::with_capacity(n);
    let mut class_of = vec![0; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (v, slot) in class_of.iter_mut().enumerate() {
        let hood = g.closed_neighborhood(v);
        let next = members.len();
        let c = *by_hood.entry(hood).or_insert(next);
        if c == next {
            members.push(Vec::new());
        }
        members[c].push(v);
        *slot = c;
    }
    let adj = members
        .iter()
        .enumerate()
        .map(|(c, mem)| g.neighbors(mem[0]).iter().map(|&u| class_of[u]).filter(|&d| d != c).collect())
        .collect();
    TwinReduction { pruned: Graph::from_raw_adjacency(adj), class_of, members }
}

/// `G[S]` with vertices relabeled densely in increasing order of `S`.
pub fn induced_subgraph(g: &Graph, s: &[usize]) -> Result<Graph> {
    g.induced(s).map(|(h, _)| h)
}

/// Samples `n` intervals on a quarter-unit grid: left endpoints uniform in
/// `[0, n)`, lengths uniform in `[0, spread]`. Returns the intersection graph
/// and the sampled representation. Output depends only on the arguments.
pub fn random_interval_graph(n: usize, seed: u64, spread: f64) -> (Graph, IntervalRepresentation) {
    assert!(spread > 0.0 && spread.is_finite(), "length spread must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_len = (spread * 4.0).round().max(0.0) as i64;
    let intervals: Vec<Interval> = (0..n)
        .map(|_| {
            let l = rng.gen_range(0..(4 * n as i64).max(1));
            let len = rng.gen_range(0..=max_len);
            Interval::new(Coord::new(l, 4), Coord::new(l + len, 4))
        })
        .collect();
    let repr = IntervalRepresentation::new(intervals);
    (repr.intersection_graph(), repr)
}
