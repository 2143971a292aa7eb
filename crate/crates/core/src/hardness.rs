//! 3-Partition to partial representation extension with two interval lengths.
//!
//! Vertices are numbered `v_0..v_s`, then `w`, then the paths item by item,
//! then the optional guards `w_0`, `w_s`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::repr::{fmt_coord, Coord, Interval, IntervalRepresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    pub s: usize,
    pub m: u32,
    pub a: Vec<u32>,
}

impl ThreePartitionInstance {
    /// Checks `|A| = 3s` and `ΣA = Ms`; the size window is checked separately.
    pub fn new(s: usize, m: u32, a: Vec<u32>) -> Result<Self> {
        if s == 0 || a.len() != 3 * s {
            return Err(Error::InvalidInstance(format!("expected 3s = {} items, got {}", 3 * s, a.len())));
        }
        if a.contains(&0) {
            return Err(Error::InvalidInstance("items must be positive".into()));
        }
        let sum: u64 = a.iter().map(|&x| x as u64).sum();
        if sum != m as u64 * s as u64 {
            return Err(Error::InvalidInstance(format!("sum {sum} differs from M·s = {}", m as u64 * s as u64)));
        }
        Ok(ThreePartitionInstance { s, m, a })
    }

    /// `M/4 < A_i < M/2` for every item.
    pub fn in_window(&self) -> bool {
        self.a.iter().all(|&x| self.m < 4 * x && 2 * x < self.m)
    }

    /// Reads `"s M"` followed by the `3s` items.
    pub fn parse(text: &str) -> Result<Self> {
        let nums: Vec<u64> = text
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|e| Error::Parse { line: 1, msg: format!("{t:?}: {e}") }))
            .collect::<Result<_>>()?;
        if nums.len() < 2 {
            return Err(Error::Parse { line: 1, msg: "expected \"s M\" header".into() });
        }
        let small = |x: u64| u32::try_from(x).map_err(|_| Error::Parse { line: 1, msg: format!("{x} too large") });
        let a = nums[2..].iter().map(|&x| small(x)).collect::<Result<_>>()?;
        Self::new(nums[0] as usize, small(nums[1])?, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    V(usize),
    W,
    /// Guard left of `v_0`.
    W0,
    /// Guard right of `v_s`.
    Ws,
    Path {
        item: usize,
        pos: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRepresentation {
    pub predrawn: Vec<(usize, Interval)>,
}

impl PartialRepresentation {
    /// The subgraph induced by the pre-drawn vertices, as realized by their intervals.
    pub fn hosts(&self) -> Graph {
        IntervalRepresentation::new(self.predrawn.iter().map(|&(_, iv)| iv).collect()).intersection_graph()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessInstance {
    pub source: ThreePartitionInstance,
    pub graph: Graph,
    pub partial: PartialRepresentation,
    pub lengths: (Coord, Coord),
    pub role_of: Vec<Role>,
    pub guards: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Add `w_0` and `w_s`, which pin the length of `⟦w⟧` without prescribing it.
    pub guards: bool,
    /// Accept items outside `M/4 < A_i < M/2`.
    pub allow_outside_window: bool,
}

fn stride(m: u32) -> i64 {
    m as i64 + 2
}

pub fn reduce_3partition(inst: &ThreePartitionInstance) -> Result<HardnessInstance> {
    reduce_3partition_with(inst, ReduceOptions::default())
}

pub fn reduce_3partition_with(inst: &ThreePartitionInstance, opts: ReduceOptions) -> Result<HardnessInstance> {
    if !opts.allow_outside_window && !inst.in_window() {
        return Err(Error::InvalidInstance(format!("items must satisfy M/4 < A_i < M/2 with M = {}", inst.m)));
    }
    let s = inst.s;
    let w = s + 1;
    let mut role_of: Vec<Role> = (0..=s).map(Role::V).collect();
    role_of.push(Role::W);
    let mut edges = Vec::new();
    for (item, &a) in inst.a.iter().enumerate() {
        let first = role_of.len();
        for pos in 0..2 * a as usize {
            role_of.push(Role::Path { item, pos });
            if pos > 0 {
                edges.push((first + pos - 1, first + pos));
            }
        }
    }
    let core = role_of.len();
    edges.extend((0..core).filter(|&x| x != w).map(|x| (x, w)));
    if opts.guards {
        role_of.push(Role::W0);
        role_of.push(Role::Ws);
        edges.push((core, 0));
        edges.push((core + 1, s));
    }
    let graph = Graph::from_edges(role_of.len(), edges)?;
    let predrawn = (0..=s)
        .map(|i| {
            let l = i as i64 * stride(inst.m);
            (i, Interval::from_ints(l, l + 1))
        })
        .collect();
    let b = Coord::from_integer(s as i64 * stride(inst.m) - 1);
    Ok(HardnessInstance {
        source: inst.clone(),
        graph,
        partial: PartialRepresentation { predrawn },
        lengths: (Coord::from_integer(1), b),
        role_of,
        guards: opts.guards,
    })
}

/// A grouping of the items into triples summing to `M`, if one exists.
pub fn find_triples(inst: &ThreePartitionInstance) -> Option<Vec<[usize; 3]>> {
    fn go(a: &[u32], m: u32, used: &mut [bool], out: &mut Vec<[usize; 3]>) -> bool {
        let Some(i) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[i] = true;
        for j in i + 1..a.len() {
            if used[j] || a[i] + a[j] >= m {
                continue;
            }
            used[j] = true;
            for k in j + 1..a.len() {
                if !used[k] && a[i] + a[j] + a[k] == m {
                    used[k] = true;
                    out.push([i, j, k]);
                    if go(a, m, used, out) {
                        return true;
                    }
                    out.pop();
                    used[k] = false;
                }
            }
            used[j] = false;
        }
        used[i] = false;
        false
    }
    let mut out = Vec::new();
    go(&inst.a, inst.m, &mut vec![false; inst.a.len()], &mut out).then_some(out)
}

/// Builds an extending two-length representation when the instance is a
/// yes-instance, or `None`.
///
/// In gap `g` the paths of one triple are laid out left to right, separated
/// by `1/8`. A path `P_{2A}` is a staircase of unit intervals: pairs offset by
/// `e = 1/(4M)`, each pair starting where the previous pair's second interval
/// ends, for a span of `A(1 + e)`.
pub fn solve_small(inst: &HardnessInstance) -> Result<Option<IntervalRepresentation>> {
    let src = &inst.source;
    if src.s > 4 || src.m > 12 {
        return Err(Error::OutsideWindow(format!("solver handles s ≤ 4 and M ≤ 12, got s = {}, M = {}", src.s, src.m)));
    }
    let Some(triples) = find_triples(src) else {
        return Ok(None);
    };
    let one = Coord::from_integer(1);
    let e = Coord::new(1, 4 * src.m as i64);
    let sep = Coord::new(1, 8);
    let stride = stride(src.m);

    let mut first_of = Vec::with_capacity(src.a.len());
    let mut next = src.s + 2;
    for &a in &src.a {
        first_of.push(next);
        next += 2 * a as usize;
    }

    let mut iv = vec![Interval::from_ints(0, 0); inst.graph.n()];
    for &(v, p) in &inst.partial.predrawn {
        iv[v] = p;
    }
    iv[src.s + 1] = Interval::from_ints(1, src.s as i64 * stride);
    for (g, triple) in triples.iter().enumerate() {
        let mut x = Coord::from_integer(g as i64 * stride + 1) + sep;
        for &item in triple {
            let a = src.a[item] as usize;
            for k in 0..a {
                let l = x + Coord::from_integer(k as i64) * (one + e);
                iv[first_of[item] + 2 * k] = Interval::new(l, l + one);
                iv[first_of[item] + 2 * k + 1] = Interval::new(l + e, l + e + one);
            }
            x += Coord::from_integer(a as i64) * (one + e) + sep;
        }
    }
    if inst.guards {
        let end = src.s as i64 * stride;
        iv[next] = Interval::from_ints(-1, 0);
        iv[next + 1] = Interval::from_ints(end + 1, end + 2);
    }
    Ok(Some(IntervalRepresentation::new(iv)))
}

/// `r` represents the graph, keeps every pre-drawn interval and uses at most
/// two lengths.
pub fn verify_extension(inst: &HardnessInstance, r: &IntervalRepresentation) -> bool {
    r.len() == inst.graph.n()
        && r.verify(&inst.graph)
        && inst.partial.predrawn.iter().all(|&(v, p)| r.get(v) == p)
        && r.lengths().len() <= 2
}

/// The `"v l r len"` sidecar listing the pre-drawn intervals.
pub fn predrawn_dump(inst: &HardnessInstance) -> String {
    let mut out = String::new();
    for &(v, iv) in &inst.partial.predrawn {
        let _ = writeln!(out, "{v} {} {} {}", fmt_coord(iv.l), fmt_coord(iv.r), fmt_coord(iv.len()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure() -> ThreePartitionInstance {
        ThreePartitionInstance::new(2, 7, vec![2, 2, 2, 2, 3, 3]).unwrap()
    }

    #[test]
    fn figure_construction() {
        let h = reduce_3partition(&figure()).unwrap();
        assert_eq!(h.graph.n(), 3 + 1 + 4 * 4 + 2 * 6);
        let pre: Vec<Interval> = h.partial.predrawn.iter().map(|p| p.1).collect();
        assert_eq!(pre, vec![Interval::from_ints(0, 1), Interval::from_ints(9, 10), Interval::from_ints(18, 19)]);
        assert_eq!(h.lengths.1, Coord::from_integer(17));
        assert_eq!(h.graph.degree(3), h.graph.n() - 1);
        assert_eq!(h.partial.hosts().m(), 0);
    }

    #[test]
    fn figure_is_solvable() {
        let h = reduce_3partition(&figure()).unwrap();
        let r = solve_small(&h).unwrap().expect("solvable");
        assert!(verify_extension(&h, &r));
        assert_eq!(r.lengths(), vec![Coord::from_integer(1), Coord::from_integer(17)]);
        assert_eq!(r.get(3), Interval::from_ints(1, 18));
    }

    #[test]
    fn tampered_outputs_fail() {
        let h = reduce_3partition(&figure()).unwrap();
        let r = solve_small(&h).unwrap().unwrap();
        let mut stretched = r.clone();
        let p = stretched.get(4);
        stretched.set(4, Interval::new(p.l, p.l + Coord::new(3, 2)));
        assert!(!verify_extension(&h, &stretched));
        let mut shifted = r.clone();
        let v0 = shifted.get(0);
        shifted.set(0, Interval::new(v0.l + Coord::new(1, 10), v0.r + Coord::new(1, 10)));
        assert!(!verify_extension(&h, &shifted));
    }

    #[test]
    fn unsolvable_and_trivial() {
        let bad = ThreePartitionInstance::new(2, 7, vec![2, 2, 2, 2, 2, 4]).unwrap();
        assert!(reduce_3partition(&bad).is_err());
        let opts = ReduceOptions { allow_outside_window: true, ..Default::default() };
        let h = reduce_3partition_with(&bad, opts).unwrap();
        assert_eq!(solve_small(&h).unwrap(), None);

        let tiny = ThreePartitionInstance::new(1, 3, vec![1, 1, 1]).unwrap();
        let h = reduce_3partition(&tiny).unwrap();
        assert_eq!(h.lengths.1, Coord::from_integer(4));
        assert!(verify_extension(&h, &solve_small(&h).unwrap().unwrap()));
    }

    #[test]
    fn guarded_variant() {
        let opts = ReduceOptions { guards: true, ..Default::default() };
        let h = reduce_3partition_with(&figure(), opts).unwrap();
        let n = h.graph.n();
        assert_eq!(h.role_of[n - 2..], [Role::W0, Role::Ws]);
        assert!(!h.graph.has_edge(n - 2, 3));
        let r = solve_small(&h).unwrap().unwrap();
        assert!(verify_extension(&h, &r));
    }

    #[test]
    fn rejects_malformed() {
        assert!(ThreePartitionInstance::new(2, 7, vec![2, 2, 2]).is_err());
        assert!(ThreePartitionInstance::new(1, 4, vec![1, 1, 1]).is_err());
        assert_eq!(ThreePartitionInstance::parse("2 7\n2 2 2 2 3 3").unwrap(), figure());
        let big = ThreePartitionInstance::new(5, 12, vec![4; 15]).unwrap();
        assert!(matches!(solve_small(&reduce_3partition(&big).unwrap()), Err(Error::OutsideWindow(_))));
    }
}
