//! Brute-force ground truth: minimum nesting over all consecutive clique
//! orderings, and triples through the gadget graphs.
//!
//! Orderings are found by a backtracking search over the maximal cliques,
//! independent of the PQ-tree code. Twins are not pruned here.

use rayon::prelude::*;

use crate::cliques::{maximal_cliques, CliqueList};
use crate::dp::Triple;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::repr::cleaned_representation;

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of orderings to enumerate.
    pub cap: u64,
    /// Worker threads; 1 evaluates sequentially.
    pub jobs: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP, jobs: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Alpha,
    Beta,
    Gamma,
}

/// All consecutive orderings of `cl`, or `CapExceeded` past `cap`.
pub fn consecutive_orderings(cl: &CliqueList, cap: u64) -> Result<Vec<Vec<usize>>> {
    struct Search<'a> {
        cl: &'a CliqueList,
        placed: Vec<usize>,
        used: Vec<bool>,
        prefix: Vec<usize>,
        out: Vec<Vec<usize>>,
        cap: u64,
    }
    impl Search<'_> {
        fn go(&mut self) -> Result<()> {
            let k = self.cl.len();
            if self.prefix.len() == k {
                if self.out.len() as u64 >= self.cap {
                    return Err(Error::CapExceeded { cap: self.cap });
                }
                self.out.push(self.prefix.clone());
                return Ok(());
            }
            // Vertices started but unfinished must continue into the next clique.
            let pending: Vec<usize> = match self.prefix.last() {
                None => Vec::new(),
                Some(&c) => {
                    self.cl.cliques[c].iter().copied().filter(|&v| self.placed[v] < self.cl.index[v].len()).collect()
                }
            };
            for c in 0..k {
                if self.used[c] {
                    continue;
                }
                let clique = &self.cl.cliques[c];
                if !pending.iter().all(|v| clique.binary_search(v).is_ok()) {
                    continue;
                }
                if clique.iter().any(|&v| self.placed[v] > 0 && !pending.contains(&v)) {
                    continue;
                }
                self.used[c] = true;
                self.prefix.push(c);
                for &v in clique {
                    self.placed[v] += 1;
                }
                let res = self.go();
                for &v in clique {
                    self.placed[v] -= 1;
                }
                self.prefix.pop();
                self.used[c] = false;
                res?;
            }
            Ok(())
        }
    }
    let mut s = Search {
        cl,
        placed: vec![0; cl.index.len()],
        used: vec![false; cl.len()],
        prefix: Vec::new(),
        out: Vec::new(),
        cap,
    };
    s.go()?;
    Ok(s.out)
}

/// All clique permutations that pass the consecutivity test (factorial;
/// only for a handful of cliques).
pub fn consecutive_permutations(cl: &CliqueList) -> Vec<Vec<usize>> {
    fn perms(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            perms(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut all = Vec::new();
    perms(&mut (0..cl.len()).collect(), &mut Vec::new(), &mut all);
    all.into_iter().filter(|o| cl.spans(o).is_ok()).collect()
}

/// Minimum of `ν` over the cleaned representations of the given orderings.
pub fn min_over_orderings(g: &Graph, cl: &CliqueList, orders: &[Vec<usize>], jobs: usize) -> Result<usize> {
    let eval = |o: &Vec<usize>| cleaned_representation(g, cl, o).map(|r| r.nesting_stats().total);
    if jobs <= 1 {
        let mut best = usize::MAX;
        for o in orders {
            best = best.min(eval(o)?);
        }
        return Ok(best);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    pool.install(|| orders.par_iter().map(eval).try_reduce(|| usize::MAX, |a, b| Ok(a.min(b))))
}

/// `ν(G)` by exhaustive search over consecutive orderings.
pub fn brute_nesting_with(g: &Graph, cfg: OracleConfig) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    let cl = maximal_cliques(g)?;
    let orders = consecutive_orderings(&cl, cfg.cap)?;
    if orders.is_empty() {
        return Err(Error::NotInterval);
    }
    min_over_orderings(g, &cl, &orders, cfg.jobs)
}

pub fn brute_nesting(g: &Graph) -> Result<usize> {
    brute_nesting_with(g, OracleConfig::default())
}

/// Appends the gadget of `kind` after the vertices of `g`.
///
/// Alpha: `u` adjacent to all of `g`, with two pendant paths `p1 − p2 − u`
/// and `q1 − q2 − u` covering both ends of `⟦u⟧`. Beta: one such path.
/// Gamma: adjacent `u` and `v`, both adjacent to all of `g`, with a path on
/// `u` and a path on `v`. Two-vertex paths are the shortest that force the
/// covered end of `⟦u⟧` to lie outside every interval of `g`.
pub fn attach_gadget(g: &Graph, kind: GadgetKind) -> Graph {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let hub = |edges: &mut Vec<(usize, usize)>, u: usize| edges.extend((0..n).map(|x| (x, u)));
    let path = |edges: &mut Vec<(usize, usize)>, u: usize, p1: usize, p2: usize| {
        edges.push((p2, u));
        edges.push((p1, p2));
    };
    let total = match kind {
        GadgetKind::Alpha => {
            hub(&mut edges, n);
            path(&mut edges, n, n + 1, n + 2);
            path(&mut edges, n, n + 3, n + 4);
            n + 5
        }
        GadgetKind::Beta => {
            hub(&mut edges, n);
            path(&mut edges, n, n + 1, n + 2);
            n + 3
        }
        GadgetKind::Gamma => {
            hub(&mut edges, n);
            hub(&mut edges, n + 1);
            edges.push((n, n + 1));
            path(&mut edges, n, n + 2, n + 3);
            path(&mut edges, n + 1, n + 4, n + 5);
            n + 6
        }
    };
    Graph::from_edges(total, edges).expect("gadget edges are in range")
}

/// `(ν(G_α) − 1, ν(G_β) − 1, ν(G_γ) − 1)`.
pub fn brute_triple_with(g: &Graph, cfg: OracleConfig) -> Result<Triple> {
    let v = |k| brute_nesting_with(&attach_gadget(g, k), cfg).map(|x| x - 1);
    Ok(Triple::new(v(GadgetKind::Alpha)?, v(GadgetKind::Beta)?, v(GadgetKind::Gamma)?))
}

pub fn brute_triple(g: &Graph) -> Result<Triple> {
    brute_triple_with(g, OracleConfig::default())
}
