//! Bottom-up computation of nesting triples over the MPQ-tree.
//!
//! Orientation convention: the stored ("keep") orientation of every subtree
//! representation is minimal, i.e. it has `ν = α`, `ν^→ = β` and `ν^← = γ`.
//! A child placed at the start of a covering interval exposes its `ν^→`, a
//! child placed at the end exposes its `ν^←`.

use std::collections::hash_map::DefaultHasher;
use std::collections::BinaryHeap;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::graph::{prune_twins, Graph, TwinReduction};
use crate::mpq::{build_mpq_tree, MpqNode, MpqTree, ROOT};
use crate::repr::{cleaned_representation, IntervalRepresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Triple {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl Triple {
    pub const fn new(alpha: usize, beta: usize, gamma: usize) -> Self {
        Triple { alpha, beta, gamma }
    }

    /// `α − 1 ≤ β ≤ γ ≤ α`.
    pub fn within_bounds(&self) -> bool {
        self.alpha <= self.beta + 1 && self.beta <= self.gamma && self.gamma <= self.alpha
    }

    fn savable(&self) -> bool {
        self.beta + 1 == self.alpha
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.alpha, self.beta, self.gamma)
    }
}

/// Per-node decisions needed to rebuild a minimal representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Choice {
    Leaf,
    /// Child `s` goes first, child `t` goes last and reversed.
    P {
        s: usize,
        t: usize,
    },
    /// Child `i` keeps its orientation iff `keep[i]`; `flip` reverses the
    /// whole node.
    Q {
        keep: Vec<bool>,
        flip: bool,
    },
}

#[derive(Clone, Debug)]
pub struct DpAnnotation {
    pub reduction: TwinReduction,
    /// MPQ-tree of the twin-pruned graph; `None` for the empty graph.
    pub tree: Option<MpqTree>,
    pub triples: Vec<Triple>,
    pub choices: Vec<Choice>,
    fingerprint: u64,
}

impl DpAnnotation {
    pub fn root_triple(&self) -> Triple {
        self.triples.first().copied().unwrap_or_default()
    }

    /// Tab-separated `node kind alpha beta gamma` table.
    pub fn triples_tsv(&self) -> String {
        let mut out = String::from("node\tkind\talpha\tbeta\tgamma\n");
        if let Some(t) = &self.tree {
            for (x, tr) in self.triples.iter().enumerate() {
                out.push_str(&format!("{x}\t{}\t{}\t{}\t{}\n", t.nodes[x].kind_name(), tr.alpha, tr.beta, tr.gamma));
            }
        }
        out
    }
}

fn fingerprint(g: &Graph) -> u64 {
    let mut h = DefaultHasher::new();
    g.hash(&mut h);
    h.finish()
}

pub fn leaf_triple(section_len: usize) -> Result<Triple> {
    match section_len {
        0 => Ok(Triple::new(0, 0, 0)),
        1 => Ok(Triple::new(1, 0, 0)),
        k => Err(Error::Precondition(format!("leaf section holds {k} vertices; prune twins first"))),
    }
}

/// Triple of a P-node from its children's triples, with the chosen first
/// (`s`) and last (`t`) child.
pub fn p_node_triple(has_section: bool, children: &[Triple]) -> Result<(Triple, (usize, usize))> {
    let p = children.len();
    if p < 2 {
        return Err(Error::Precondition(format!("P-node with {p} children")));
    }
    let top = children.iter().map(|c| c.alpha).max().unwrap();
    let maxers: Vec<usize> = (0..p).filter(|&i| children[i].alpha == top).collect();
    let all_savable = maxers.iter().all(|&i| children[i].savable());
    let c = maxers.len();

    let alpha = if !has_section || (all_savable && c <= 2) { top } else { top + 1 };
    let beta = if all_savable && c == 1 { top - 1 } else { top };

    let (s, t) = if all_savable && c <= 2 {
        let s = maxers[0];
        let t = if c == 2 {
            maxers[1]
        } else if s == 0 {
            1
        } else {
            0
        };
        (s, t)
    } else {
        (0, 1)
    };
    Ok((Triple::new(alpha, beta, top), (s, t)))
}

/// The same triple by direct minimisation over all pairs.
pub fn p_node_triple_naive(has_section: bool, children: &[Triple]) -> Triple {
    let p = children.len();
    let gamma = children.iter().map(|c| c.alpha).max().unwrap_or(0);
    let alpha = if !has_section {
        gamma
    } else {
        let mut best = usize::MAX;
        for s in 0..p {
            for t in 0..p {
                if s == t {
                    continue;
                }
                let mut v = children[s].beta.max(children[t].beta) + 1;
                for (i, c) in children.iter().enumerate() {
                    if i != s && i != t {
                        v = v.max(c.alpha + 1);
                    }
                }
                best = best.min(v);
            }
        }
        best
    };
    let beta = (0..p)
        .map(|s| (0..p).filter(|&i| i != s).map(|i| children[i].alpha).fold(children[s].beta, usize::max))
        .min()
        .unwrap_or(0);
    Triple::new(alpha, beta, gamma)
}

const NEG: i64 = i64::MIN / 4;

/// Objectives of a Q-node: `ν`, `ν^→` and `ν^←` of the unflipped node, and
/// the doubly covered variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QValues {
    pub alpha: usize,
    /// `ν^→` with the children in stored order (leftmost clique excluded).
    pub beta_start: usize,
    /// `ν^←` with the children in stored order (rightmost clique excluded).
    pub beta_end: usize,
    pub gamma: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QNodeResult {
    pub triple: Triple,
    pub optimum: QValues,
    pub keep: Vec<bool>,
    pub flip: bool,
}

/// Exposure of child `i` at the start and end side for orientation `keep`.
fn sides(t: &Triple, keep: bool) -> (i64, i64) {
    if keep {
        (t.beta as i64, t.gamma as i64)
    } else {
        (t.gamma as i64, t.beta as i64)
    }
}

fn check_q_input(children: &[Triple], spans: &[(usize, usize)], edges: &[(usize, usize)]) -> Result<()> {
    let q = children.len();
    if q < 3 {
        return Err(Error::Precondition(format!("Q-node with {q} children")));
    }
    if let Some(&(a, b)) = spans.iter().find(|&&(a, b)| a > b || b >= q) {
        return Err(Error::Precondition(format!("section span ({a},{b}) outside a Q-node with {q} children")));
    }
    for &(x, y) in edges {
        let ((a, b), (c, d)) = (spans[x], spans[y]);
        if !(c < a && b < d) {
            return Err(Error::Precondition(format!("DAG edge ({x},{y}) is not a forced nesting")));
        }
    }
    Ok(())
}

/// Evaluates the four objectives for one explicit choice vector, computing
/// `ν(x)` for every `x ∈ s(Q)` in topological order.
pub fn q_node_evaluate(
    children: &[Triple],
    spans: &[(usize, usize)],
    edges: &[(usize, usize)],
    keep: &[bool],
) -> (Vec<usize>, QValues) {
    let q = children.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); spans.len()];
    for &(x, y) in edges {
        preds[y].push(x);
    }
    let mut order: Vec<usize> = (0..spans.len()).collect();
    order.sort_by_key(|&x| spans[x].1 - spans[x].0);
    let mut nu = vec![0usize; spans.len()];
    for &x in &order {
        let (a, b) = spans[x];
        let (st, _) = sides(&children[a], keep[a]);
        let (_, en) = sides(&children[b], keep[b]);
        let mut v = st.max(en) as usize + 1;
        for c in &children[a + 1..b.max(a + 1)] {
            v = v.max(c.alpha + 1);
        }
        for &y in &preds[x] {
            v = v.max(nu[y] + 1);
        }
        nu[x] = v;
    }
    let max_alpha = |r: std::ops::Range<usize>| children[r].iter().map(|c| c.alpha).max().unwrap_or(0);
    let mut alpha = max_alpha(0..q);
    let mut beta_start = (sides(&children[0], keep[0]).0 as usize).max(max_alpha(1..q));
    let mut beta_end = (sides(&children[q - 1], keep[q - 1]).1 as usize).max(max_alpha(0..q - 1));
    let mut gamma = alpha;
    for (x, &(a, b)) in spans.iter().enumerate() {
        alpha = alpha.max(nu[x]);
        if a > 0 {
            beta_start = beta_start.max(nu[x]);
        }
        if b < q - 1 {
            beta_end = beta_end.max(nu[x]);
        }
        if a > 0 || b < q - 1 {
            gamma = gamma.max(nu[x]);
        }
    }
    (nu, QValues { alpha, beta_start, beta_end, gamma })
}

/// Minimum of each objective over all `2^q` choice vectors.
pub fn q_node_exhaustive(children: &[Triple], spans: &[(usize, usize)], edges: &[(usize, usize)]) -> QValues {
    let q = children.len();
    assert!(q < 24, "exhaustive search over 2^{q} vectors");
    let mut best = QValues { alpha: usize::MAX, beta_start: usize::MAX, beta_end: usize::MAX, gamma: usize::MAX };
    for mask in 0u32..(1 << q) {
        let keep: Vec<bool> = (0..q).map(|i| mask >> i & 1 == 0).collect();
        let (_, v) = q_node_evaluate(children, spans, edges, &keep);
        best.alpha = best.alpha.min(v.alpha);
        best.beta_start = best.beta_start.min(v.beta_start);
        best.beta_end = best.beta_end.min(v.beta_end);
        best.gamma = best.gamma.min(v.gamma);
    }
    best
}

#[derive(Clone, Copy)]
enum Objective {
    Alpha,
    BetaStart,
    BetaEnd,
    Gamma,
}

const OBJECTIVES: [Objective; 4] = [Objective::Alpha, Objective::BetaStart, Objective::BetaEnd, Objective::Gamma];

/// Per child and orientation, the longest chain the child can start under
/// one objective. Entry `[i][0]` is for keep, `[i][1]` for flip.
fn contributions(
    obj: Objective,
    children: &[Triple],
    spans: &[(usize, usize)],
    succ: &[Vec<usize>],
    outer_first: &[usize],
) -> Vec<[i64; 2]> {
    let q = children.len();
    let relevant = |(a, b): (usize, usize)| match obj {
        Objective::Alpha => true,
        Objective::BetaStart => a > 0,
        Objective::BetaEnd => b < q - 1,
        Objective::Gamma => a > 0 || b < q - 1,
    };
    // Longest chain (in vertices) from x up to a relevant vertex.
    let mut h = vec![NEG; spans.len()];
    for &x in outer_first {
        let mut v = if relevant(spans[x]) { 1 } else { NEG };
        for &y in &succ[x] {
            v = v.max(h[y] + 1);
        }
        h[x] = v.max(NEG);
    }
    let mut hs = vec![NEG; q];
    let mut he = vec![NEG; q];
    for (x, &(a, b)) in spans.iter().enumerate() {
        hs[a] = hs[a].max(h[x]);
        he[b] = he[b].max(h[x]);
    }
    // Strictly interior: first < i < last.
    let mut hi = vec![NEG; q];
    let mut by_first: Vec<usize> = (0..spans.len()).collect();
    by_first.sort_by_key(|&x| spans[x].0);
    let mut heap: BinaryHeap<(i64, usize)> = BinaryHeap::new();
    let mut k = 0;
    for (i, slot) in hi.iter_mut().enumerate() {
        while k < by_first.len() && spans[by_first[k]].0 < i {
            let x = by_first[k];
            heap.push((h[x], spans[x].1));
            k += 1;
        }
        while heap.peek().is_some_and(|&(_, last)| last <= i) {
            heap.pop();
        }
        if let Some(&(v, _)) = heap.peek() {
            *slot = v;
        }
    }

    (0..q)
        .map(|i| {
            let t = &children[i];
            let mut out = [0i64; 2];
            for (c, slot) in out.iter_mut().enumerate() {
                let (st, en) = sides(t, c == 0);
                let own = match obj {
                    Objective::BetaStart if i == 0 => st,
                    Objective::BetaEnd if i == q - 1 => en,
                    _ => t.alpha as i64,
                };
                *slot = own.max(st + hs[i]).max(en + he[i]).max(t.alpha as i64 + hi[i]);
            }
            out
        })
        .collect()
}

/// Triple of a Q-node from its children's triples (in stored order), the
/// section spans of `s(Q)` (0-based, inclusive) and the forced-nesting DAG
/// over local vertex ids. Each child orientation is chosen independently.
pub fn q_node_triple(children: &[Triple], spans: &[(usize, usize)], edges: &[(usize, usize)]) -> Result<QNodeResult> {
    check_q_input(children, spans, edges)?;
    let q = children.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); spans.len()];
    for &(x, y) in edges {
        succ[x].push(y);
    }
    let mut outer_first: Vec<usize> = (0..spans.len()).collect();
    outer_first.sort_by_key(|&x| std::cmp::Reverse(spans[x].1 - spans[x].0));

    let contrib: Vec<Vec<[i64; 2]>> =
        OBJECTIVES.iter().map(|&o| contributions(o, children, spans, &succ, &outer_first)).collect();
    let star: Vec<i64> = contrib.iter().map(|per| per.iter().map(|c| c[0].min(c[1])).max().unwrap_or(0)).collect();
    let optimum = QValues {
        alpha: star[0] as usize,
        beta_start: star[1] as usize,
        beta_end: star[2] as usize,
        gamma: star[3] as usize,
    };
    let beta = optimum.beta_start.min(optimum.beta_end);
    let triple = Triple::new(optimum.alpha, beta, optimum.gamma);

    // One vector meeting all targets at once: ν = α, ν^→ = β, ν^← ≤ γ.
    let attempt = |flip: bool| -> Option<Vec<bool>> {
        let (lim_start, lim_end) = if flip { (star[3], beta as i64) } else { (beta as i64, star[3]) };
        (0..q)
            .map(|i| {
                [0, 1]
                    .into_iter()
                    .find(|&c| {
                        contrib[0][i][c] <= star[0] && contrib[1][i][c] <= lim_start && contrib[2][i][c] <= lim_end
                    })
                    .map(|c| c == 0)
            })
            .collect()
    };
    let prefer_flip = optimum.beta_end < optimum.beta_start;
    let (keep, flip) = match attempt(prefer_flip) {
        Some(k) => (k, prefer_flip),
        None => match attempt(!prefer_flip) {
            Some(k) => (k, !prefer_flip),
            None => return Err(Error::Precondition("no orientation vector attains the Q-node triple".into())),
        },
    };
    Ok(QNodeResult { triple, optimum, keep, flip })
}

/// Vertices of `s(Q)` (ascending), their section spans, and the DAG edges in
/// local ids.
pub type QNodeInput = (Vec<usize>, Vec<(usize, usize)>, Vec<(usize, usize)>);

pub fn q_node_input(tree: &MpqTree, g: &Graph, q: usize) -> Result<QNodeInput> {
    let dag = tree.forced_nesting_dag(g, q)?;
    let local = |v: usize| dag.vertices.binary_search(&v).unwrap();
    let spans = dag.vertices.iter().map(|&v| (tree.home[v].first, tree.home[v].last)).collect();
    let edges = dag.edges.iter().map(|&(x, y)| (local(x), local(y))).collect();
    Ok((dag.vertices.clone(), spans, edges))
}

/// `ν(G)` together with the data needed to build a minimal representation.
pub fn min_nesting(g: &Graph) -> Result<(usize, DpAnnotation)> {
    let reduction = prune_twins(g);
    let fp = fingerprint(g);
    if g.n() == 0 {
        let ann = DpAnnotation { reduction, tree: None, triples: Vec::new(), choices: Vec::new(), fingerprint: fp };
        return Ok((0, ann));
    }
    let h = &reduction.pruned;
    let tree = build_mpq_tree(h)?;
    let len = tree.len();
    let mut triples = vec![Triple::default(); len];
    let mut choices = vec![Choice::Leaf; len];
    for x in (0..len).rev() {
        match &tree.nodes[x] {
            MpqNode::Leaf { section, .. } => {
                triples[x] = leaf_triple(section.len())?;
            }
            MpqNode::P { children, section } => {
                if section.len() > 1 {
                    return Err(Error::Precondition("P-node section holds twins".into()));
                }
                let kids: Vec<Triple> = children.iter().map(|&c| triples[c]).collect();
                let (t, (s, tt)) = p_node_triple(!section.is_empty(), &kids)?;
                triples[x] = t;
                choices[x] = Choice::P { s, t: tt };
            }
            MpqNode::Q { children, .. } => {
                let kids: Vec<Triple> = children.iter().map(|&c| triples[c]).collect();
                let (_, spans, edges) = q_node_input(&tree, h, x)?;
                let res = q_node_triple(&kids, &spans, &edges)?;
                triples[x] = res.triple;
                choices[x] = Choice::Q { keep: res.keep, flip: res.flip };
            }
        }
    }
    let nu = triples[ROOT].alpha;
    Ok((nu, DpAnnotation { reduction, tree: Some(tree), triples, choices, fingerprint: fp }))
}

/// Clique ordering obtained by replaying the recorded choices.
pub fn minimal_ordering(ann: &DpAnnotation) -> Vec<usize> {
    let Some(tree) = &ann.tree else { return Vec::new() };
    let mut out = Vec::with_capacity(tree.cliques.len());
    let mut stack = vec![(ROOT, false)];
    while let Some((x, rev)) = stack.pop() {
        let mut seq: Vec<(usize, bool)> = match (&tree.nodes[x], &ann.choices[x]) {
            (MpqNode::Leaf { clique, .. }, _) => {
                out.push(*clique);
                continue;
            }
            (MpqNode::P { children, .. }, Choice::P { s, t }) => {
                let mut seq = vec![(children[*s], rev)];
                for (i, &c) in children.iter().enumerate() {
                    if i != *s && i != *t {
                        seq.push((c, rev));
                    }
                }
                seq.push((children[*t], !rev));
                if rev {
                    seq.reverse();
                }
                seq
            }
            (MpqNode::Q { children, .. }, Choice::Q { keep, flip }) => {
                let base = rev ^ flip;
                let mut seq: Vec<(usize, bool)> = children.iter().zip(keep).map(|(&c, &k)| (c, base ^ !k)).collect();
                if base {
                    seq.reverse();
                }
                seq
            }
            _ => unreachable!("choice kind matches node kind"),
        };
        seq.reverse();
        stack.extend(seq);
    }
    out
}

/// A representation of `g` achieving `ν(G)`, `ν^→ = β` and `ν^← = γ` of the
/// root triple.
pub fn build_minimal_representation(g: &Graph, ann: &DpAnnotation) -> Result<IntervalRepresentation> {
    if fingerprint(g) != ann.fingerprint || ann.reduction.class_of.len() != g.n() {
        return Err(Error::StaleAnnotation);
    }
    let Some(tree) = &ann.tree else { return Ok(IntervalRepresentation::default()) };
    let order = minimal_ordering(ann);
    let r = cleaned_representation(&ann.reduction.pruned, &tree.cliques, &order)?;
    Ok(r.lift(&ann.reduction))
}

/// True iff `g` is an interval graph with `ν(G) ≤ k`.
pub fn recognize_k_nested(g: &Graph, k: usize) -> bool {
    matches!(min_nesting(g), Ok((nu, _)) if nu <= k)
}
