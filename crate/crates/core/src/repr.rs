//! Interval representations with exact rational endpoints.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::cliques::CliqueList;
use crate::error::{Error, Result};
use crate::graph::{Graph, TwinReduction};

pub type Coord = Ratio<i64>;

/// Closed interval `[l, r]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub l: Coord,
    pub r: Coord,
}

impl Interval {
    pub fn new(l: Coord, r: Coord) -> Self {
        assert!(l <= r, "interval with l > r");
        Interval { l, r }
    }

    pub fn from_ints(l: i64, r: i64) -> Self {
        Self::new(Coord::from_integer(l), Coord::from_integer(r))
    }

    pub fn len(&self) -> Coord {
        self.r - self.l
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.l <= o.r && o.l <= self.r
    }

    /// `self ⊊ o`.
    pub fn strictly_inside(&self, o: &Interval) -> bool {
        o.l <= self.l && self.r <= o.r && self != o
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalRepresentation {
    intervals: Vec<Interval>,
    /// Clique ordering the representation was built from, if any.
    pub ordering: Option<Vec<usize>>,
}

/// Nesting statistics: `ν(u)` per vertex, `ν(R)`, `ν^→(R)` and `ν^←(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingStats {
    pub per_vertex: Vec<usize>,
    pub total: usize,
    pub right: usize,
    pub left: usize,
}

/// Partition into proper layers: `label[u] = ν(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerLabeling {
    pub label: Vec<usize>,
}

impl LayerLabeling {
    pub fn layer_count(&self) -> usize {
        self.label.iter().copied().max().unwrap_or(0)
    }
}

impl IntervalRepresentation {
    pub fn new(intervals: Vec<Interval>) -> Self {
        IntervalRepresentation { intervals, ordering: None }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn get(&self, v: usize) -> Interval {
        self.intervals[v]
    }

    pub fn set(&mut self, v: usize, iv: Interval) {
        self.intervals[v] = iv;
    }

    /// The intersection graph, by a left-to-right sweep.
    pub fn intersection_graph(&self) -> Graph {
        let n = self.len();
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by(|&a, &b| self.intervals[a].l.cmp(&self.intervals[b].l));
        let mut active: BTreeSet<(Coord, usize)> = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for &u in &by_left {
            let lu = self.intervals[u].l;
            while active.first().is_some_and(|&(r, _)| r < lu) {
                active.pop_first();
            }
            for &(_, v) in &active {
                adj[u].push(v);
                adj[v].push(u);
            }
            active.insert((self.intervals[u].r, u));
        }
        Graph::from_raw_adjacency(adj)
    }

    /// True iff the intersection graph equals `g` exactly.
    pub fn verify(&self, g: &Graph) -> bool {
        self.len() == g.n() && self.intersection_graph() == *g
    }

    /// `ν(u)` for every vertex by a sweep over left endpoints (descending)
    /// with a prefix-maximum tree over right endpoints.
    pub fn nesting_stats(&self) -> NestingStats {
        let n = self.len();
        let mut rights: Vec<Coord> = self.intervals.iter().map(|iv| iv.r).collect();
        rights.sort();
        rights.dedup();
        let rank = |c: Coord| rights.binary_search(&c).unwrap();

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (self.intervals[a], self.intervals[b]);
            y.l.cmp(&x.l).then(x.r.cmp(&y.r))
        });
        let mut fen = vec![0usize; rights.len() + 1];
        let mut nu = vec![0usize; n];
        let mut i = 0;
        while i < n {
            // Identical intervals are not nested in each other.
            let mut j = i;
            while j < n && self.intervals[order[j]] == self.intervals[order[i]] {
                j += 1;
            }
            let iv = self.intervals[order[i]];
            let mut best = 0;
            let mut k = rank(iv.r) + 1;
            while k > 0 {
                best = best.max(fen[k]);
                k &= k - 1;
            }
            for &u in &order[i..j] {
                nu[u] = best + 1;
            }
            let mut k = rank(iv.r) + 1;
            while k < fen.len() {
                fen[k] = fen[k].max(best + 1);
                k += k & k.wrapping_neg();
            }
            i = j;
        }

        let total = nu.iter().copied().max().unwrap_or(0);
        let (mut right, mut left) = (0, 0);
        if n > 0 {
            let min_r = self.intervals.iter().map(|iv| iv.r).min().unwrap();
            let max_l = self.intervals.iter().map(|iv| iv.l).max().unwrap();
            for (u, iv) in self.intervals.iter().enumerate() {
                if iv.l > min_r {
                    right = right.max(nu[u]);
                }
                if iv.r < max_l {
                    left = left.max(nu[u]);
                }
            }
        }
        NestingStats { per_vertex: nu, total, right, left }
    }

    /// Mirror image, translated so the coordinate range is unchanged.
    pub fn flip(&self) -> IntervalRepresentation {
        if self.is_empty() {
            return self.clone();
        }
        let lo = self.intervals.iter().map(|iv| iv.l).min().unwrap();
        let hi = self.intervals.iter().map(|iv| iv.r).max().unwrap();
        let s = lo + hi;
        IntervalRepresentation {
            intervals: self.intervals.iter().map(|iv| Interval::new(s - iv.r, s - iv.l)).collect(),
            ordering: self.ordering.as_ref().map(|o| o.iter().rev().copied().collect()),
        }
    }

    pub fn proper_layers(&self) -> LayerLabeling {
        LayerLabeling { label: self.nesting_stats().per_vertex }
    }

    /// Copies each representative's interval to all of its twins.
    pub fn lift(&self, red: &TwinReduction) -> IntervalRepresentation {
        IntervalRepresentation {
            intervals: red.class_of.iter().map(|&c| self.intervals[c]).collect(),
            ordering: self.ordering.clone(),
        }
    }

    /// Distinct interval lengths, ascending.
    pub fn lengths(&self) -> Vec<Coord> {
        let mut ls: Vec<Coord> = self.intervals.iter().map(|iv| iv.len()).collect();
        ls.sort();
        ls.dedup();
        ls
    }

    /// One line per vertex: `v l r`, rationals as `p/q`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, iv) in self.intervals.iter().enumerate() {
            let _ = writeln!(out, "{v} {} {}", fmt_coord(iv.l), fmt_coord(iv.r));
        }
        out
    }
}

pub fn fmt_coord(c: Coord) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_coord(tok: &str) -> Option<Coord> {
    match tok.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.parse().ok()?;
            let p: i64 = p.parse().ok()?;
            (q != 0).then(|| Coord::new(p, q))
        }
        None => tok.parse().ok().map(Coord::from_integer),
    }
}

/// Parses the `v l r` dump. Vertices must be exactly `0..n` in any order.
pub fn parse_representation(text: &str) -> Result<IntervalRepresentation> {
    let mut found: HashMap<usize, Interval> = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(err("expected `v l r`"));
        }
        let v: usize = toks[0].parse().map_err(|_| err("bad vertex id"))?;
        let l = parse_coord(toks[1]).ok_or_else(|| err("bad left endpoint"))?;
        let r = parse_coord(toks[2]).ok_or_else(|| err("bad right endpoint"))?;
        if l > r {
            return Err(err("left endpoint exceeds right endpoint"));
        }
        if found.insert(v, Interval { l, r }).is_some() {
            return Err(err("duplicate vertex"));
        }
    }
    let n = found.len();
    if let Some(&vertex) = found.keys().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex, n });
    }
    let intervals = (0..n).map(|v| found[&v]).collect();
    Ok(IntervalRepresentation::new(intervals))
}

/// The cleaned representation of `g` for a consecutive clique `ordering`:
/// clique `i` sits at coordinate `i`, and endpoint ties are broken so that
/// only forced nestings appear.
pub fn cleaned_representation(g: &Graph, cliques: &CliqueList, ordering: &[usize]) -> Result<IntervalRepresentation> {
    if cliques.index.len() != g.n() {
        return Err(Error::Precondition("clique list does not match the graph".into()));
    }
    let spans = cliques.spans(ordering)?;
    let n = g.n();
    let den = 2 * (n as i64 + 1);

    // For every start position, the distinct end positions; and vice versa.
    let k = ordering.len();
    let mut ends_from: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut starts_to: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(a, b) in &spans {
        ends_from[a].push(b);
        starts_to[b].push(a);
    }
    for list in ends_from.iter_mut().chain(starts_to.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }

    let intervals = spans
        .iter()
        .map(|&(a, b)| {
            let ends = &ends_from[a];
            let ki = ends.binary_search(&b).unwrap() as i64;
            let l = Coord::from_integer(a as i64) - Coord::new(ends.len() as i64 - ki, den);
            let starts = &starts_to[b];
            let kj = starts.binary_search(&a).unwrap() as i64;
            let r = Coord::from_integer(b as i64) + Coord::new(kj + 1, den);
            Interval::new(l, r)
        })
        .collect();
    Ok(IntervalRepresentation { intervals, ordering: Some(ordering.to_vec()) })
}
