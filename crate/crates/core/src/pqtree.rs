//! PQ-tree with Booth–Lueker template reductions.
//!
//! Children are kept in doubly linked lists whose links are unordered pairs,
//! so reversing a Q-node costs nothing. Every node stores a parent *handle*;
//! merging a Q-node into its parent unions the two handles, so children deep
//! inside a Q-node still find their parent in near-constant time.

use crate::error::{Error, Result};

const NIL: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Leaf,
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Empty,
    Full,
    Partial,
}

#[derive(Clone, Debug)]
struct Node {
    kind: Kind,
    leaf: usize,
    handle: usize,
    parent: usize,
    sib: [usize; 2],
    ends: [usize; 2],
    nchild: usize,
    alive: bool,
    // per-reduction scratch, valid only when `stamp` is current
    stamp: u32,
    visited: bool,
    pcount: usize,
    done: usize,
    first_child: usize,
    status: Status,
    full_end: usize,
    pert: Vec<usize>,
}

/// Exported node: kind, leaf id (for leaves) and ordered children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PqNode {
    pub kind: Kind,
    pub leaf: usize,
    pub children: Vec<usize>,
}

struct PqTree {
    nodes: Vec<Node>,
    uf: Vec<usize>,
    uf_size: Vec<u32>,
    node_of: Vec<usize>,
    root: usize,
    stamp: u32,
}

impl PqTree {
    fn new(leaves: usize) -> Self {
        let mut t = PqTree {
            nodes: Vec::with_capacity(2 * leaves + 1),
            uf: Vec::new(),
            uf_size: Vec::new(),
            node_of: Vec::new(),
            root: NIL,
            stamp: 0,
        };
        for i in 0..leaves {
            let x = t.new_node(Kind::Leaf);
            t.nodes[x].leaf = i;
        }
        if leaves == 1 {
            t.root = 0;
        } else {
            let r = t.new_node(Kind::P);
            for i in 0..leaves {
                t.append_child(r, i, 1);
            }
            t.root = r;
        }
        t
    }

    fn new_node(&mut self, kind: Kind) -> usize {
        let id = self.nodes.len();
        let handle = if kind == Kind::Leaf {
            NIL
        } else {
            let h = self.uf.len();
            self.uf.push(h);
            self.uf_size.push(1);
            self.node_of.push(id);
            h
        };
        self.nodes.push(Node {
            kind,
            leaf: NIL,
            handle,
            parent: NIL,
            sib: [NIL; 2],
            ends: [NIL; 2],
            nchild: 0,
            alive: true,
            stamp: self.stamp,
            visited: false,
            pcount: 0,
            done: 0,
            first_child: NIL,
            status: Status::Empty,
            full_end: 0,
            pert: Vec::new(),
        });
        id
    }

    fn find(&mut self, mut h: usize) -> usize {
        while self.uf[h] != h {
            let gp = self.uf[self.uf[h]];
            self.uf[h] = gp;
            h = gp;
        }
        h
    }

    fn union_into(&mut self, keep: usize, gone: usize) {
        let a = self.find(self.nodes[keep].handle);
        let b = self.find(self.nodes[gone].handle);
        let (big, small) = if self.uf_size[a] >= self.uf_size[b] { (a, b) } else { (b, a) };
        self.uf[small] = big;
        self.uf_size[big] += self.uf_size[small];
        self.node_of[big] = keep;
        self.nodes[gone].alive = false;
    }

    fn parent_node(&mut self, x: usize) -> usize {
        let h = self.nodes[x].parent;
        if h == NIL {
            NIL
        } else {
            let r = self.find(h);
            self.node_of[r]
        }
    }

    fn touch(&mut self, x: usize) {
        let st = self.stamp;
        let nd = &mut self.nodes[x];
        if nd.stamp != st {
            nd.stamp = st;
            nd.visited = false;
            nd.pcount = 0;
            nd.done = 0;
            nd.first_child = NIL;
            nd.status = Status::Empty;
            nd.full_end = 0;
            nd.pert.clear();
        }
    }

    fn status(&self, x: usize) -> Status {
        let nd = &self.nodes[x];
        if nd.stamp == self.stamp {
            nd.status
        } else {
            Status::Empty
        }
    }

    fn set_status(&mut self, x: usize, s: Status) {
        self.touch(x);
        self.nodes[x].status = s;
    }

    fn other(&self, x: usize, prev: usize) -> usize {
        let s = self.nodes[x].sib;
        if s[0] == prev {
            s[1]
        } else {
            s[0]
        }
    }

    fn replace_sib(&mut self, x: usize, old: usize, new: usize) {
        let s = &mut self.nodes[x].sib;
        if s[0] == old {
            s[0] = new;
        } else {
            debug_assert_eq!(s[1], old);
            s[1] = new;
        }
    }

    fn append_child(&mut self, p: usize, c: usize, end: usize) {
        let e = self.nodes[p].ends[end];
        if e == NIL {
            self.nodes[p].ends = [c, c];
        } else {
            self.replace_sib(e, NIL, c);
            self.nodes[p].ends[end] = c;
        }
        self.nodes[c].sib = [e, NIL];
        self.nodes[c].parent = self.nodes[p].handle;
        self.nodes[p].nchild += 1;
    }

    fn remove_child(&mut self, p: usize, c: usize) {
        let [a, b] = self.nodes[c].sib;
        if a != NIL {
            self.replace_sib(a, c, b);
        }
        if b != NIL {
            self.replace_sib(b, c, a);
        }
        for i in 0..2 {
            if self.nodes[p].ends[i] == c {
                self.nodes[p].ends[i] = if a != NIL { a } else { b };
            }
        }
        self.nodes[c].sib = [NIL; 2];
        self.nodes[c].parent = NIL;
        self.nodes[p].nchild -= 1;
    }

    /// `new` takes the place of `old` in the tree; `old` is detached.
    fn replace_in_parent(&mut self, old: usize, new: usize) {
        let p = self.parent_node(old);
        let sib = self.nodes[old].sib;
        self.nodes[new].parent = self.nodes[old].parent;
        self.nodes[new].sib = sib;
        for s in sib {
            if s != NIL {
                self.replace_sib(s, old, new);
            }
        }
        if p == NIL {
            self.root = new;
        } else {
            for i in 0..2 {
                if self.nodes[p].ends[i] == old {
                    self.nodes[p].ends[i] = new;
                }
            }
        }
        self.nodes[old].sib = [NIL; 2];
        self.nodes[old].parent = NIL;
    }

    /// Groups detached nodes under a fresh full P-node (or returns the single
    /// node). `None` for an empty group.
    fn group(&mut self, members: &[usize]) -> Option<usize> {
        match members {
            [] => None,
            [one] => Some(*one),
            _ => {
                let g = self.new_node(Kind::P);
                for &c in members {
                    self.append_child(g, c, 1);
                }
                self.set_status(g, Status::Full);
                Some(g)
            }
        }
    }

    /// Leftover of a P-node after pertinent children were removed: the node
    /// itself when it still has two or more children, its only child, or
    /// nothing. `x` must already be detached from its parent.
    fn empty_remainder(&mut self, x: usize) -> Option<usize> {
        match self.nodes[x].nchild {
            0 => {
                self.nodes[x].alive = false;
                None
            }
            1 => {
                let e = self.nodes[x].ends[0];
                self.remove_child(x, e);
                self.nodes[x].alive = false;
                Some(e)
            }
            _ => {
                self.set_status(x, Status::Empty);
                Some(x)
            }
        }
    }

    /// Splices the children of `y` onto end `y1_end` of `x`, with `y`'s end
    /// `y_end` adjacent to the current end child of `x`.
    fn concat(&mut self, x: usize, x_end: usize, y: usize, y_end: usize) {
        let a = self.nodes[x].ends[x_end];
        let b = self.nodes[y].ends[y_end];
        let c = self.nodes[y].ends[1 - y_end];
        self.replace_sib(a, NIL, b);
        self.replace_sib(b, NIL, a);
        self.nodes[x].ends[x_end] = c;
        self.nodes[x].nchild += self.nodes[y].nchild;
        self.union_into(x, y);
    }

    /// Replaces child `c` of Q-node `x` by the children of `c`, with
    /// `c.ends[fe]` placed next to `toward` (a sibling of `c`, or NIL).
    fn merge_child(&mut self, x: usize, c: usize, toward: usize, fe: usize) {
        let away = self.other(c, toward);
        let cf = self.nodes[c].ends[fe];
        let ce = self.nodes[c].ends[1 - fe];
        for (nb, inner) in [(toward, cf), (away, ce)] {
            if nb != NIL {
                self.replace_sib(nb, c, inner);
            } else {
                for i in 0..2 {
                    if self.nodes[x].ends[i] == c {
                        self.nodes[x].ends[i] = inner;
                    }
                }
            }
            self.replace_sib(inner, NIL, nb);
        }
        self.nodes[x].nchild += self.nodes[c].nchild - 1;
        self.union_into(x, c);
    }

    fn is_pert(&self, x: usize) -> bool {
        self.status(x) != Status::Empty
    }

    /// Walks from `start` through `first` while children are pertinent.
    /// Returns the last pertinent node and the number of steps taken.
    fn walk(&self, start: usize, first: usize) -> (usize, usize) {
        let (mut prev, mut cur, mut last, mut len) = (start, first, start, 0);
        while cur != NIL && self.is_pert(cur) {
            len += 1;
            last = cur;
            let nxt = self.other(cur, prev);
            prev = cur;
            cur = nxt;
        }
        (last, len)
    }

    fn pert_neighbour(&self, x: usize) -> usize {
        let [a, b] = self.nodes[x].sib;
        if a != NIL && self.is_pert(a) {
            a
        } else {
            debug_assert!(b != NIL && self.is_pert(b));
            b
        }
    }

    fn reduce(&mut self, set: &[usize]) -> Result<()> {
        if set.len() < 2 {
            return Ok(());
        }
        self.stamp = self.stamp.wrapping_add(1);

        // Climb from all leaves in lockstep until the walkers merge.
        let mut alive: Vec<usize> = Vec::with_capacity(set.len());
        for &l in set {
            self.touch(l);
            self.nodes[l].visited = true;
            alive.push(l);
        }
        let mut next = Vec::with_capacity(set.len());
        while alive.len() > 1 {
            next.clear();
            for &w in &alive {
                let p = self.parent_node(w);
                if p == NIL {
                    next.push(w);
                    continue;
                }
                self.touch(p);
                let nd = &mut self.nodes[p];
                nd.pcount += 1;
                if nd.first_child == NIL {
                    nd.first_child = w;
                }
                if !nd.visited {
                    nd.visited = true;
                    next.push(p);
                }
            }
            std::mem::swap(&mut alive, &mut next);
        }
        let mut pert_root = alive[0];
        while self.nodes[pert_root].pcount == 1 {
            pert_root = self.nodes[pert_root].first_child;
        }

        let mut queue: Vec<usize> = set.to_vec();
        while let Some(x) = queue.pop() {
            let is_root = x == pert_root;
            let y = match self.nodes[x].kind {
                Kind::Leaf => {
                    self.set_status(x, Status::Full);
                    x
                }
                Kind::P => self.process_p(x, is_root)?,
                Kind::Q => self.process_q(x, is_root)?,
            };
            if is_root {
                return Ok(());
            }
            let p = self.parent_node(y);
            let nd = &mut self.nodes[p];
            nd.done += 1;
            nd.pert.push(y);
            if nd.done == nd.pcount {
                queue.push(p);
            }
        }
        unreachable!("pertinent root is always processed")
    }

    fn split_pert(&mut self, x: usize) -> (Vec<usize>, Vec<usize>) {
        let pert = std::mem::take(&mut self.nodes[x].pert);
        let (full, partial): (Vec<usize>, Vec<usize>) = pert.into_iter().partition(|&c| self.status(c) == Status::Full);
        (full, partial)
    }

    fn process_p(&mut self, x: usize, is_root: bool) -> Result<usize> {
        let (full, partial) = self.split_pert(x);
        if partial.is_empty() && full.len() == self.nodes[x].nchild {
            self.set_status(x, Status::Full);
            return Ok(x);
        }
        for &c in &full {
            self.remove_child(x, c);
        }
        if is_root {
            match partial.as_slice() {
                [] => {
                    if let Some(g) = self.group(&full) {
                        self.append_child(x, g, 1);
                    }
                }
                &[y] => {
                    if let Some(g) = self.group(&full) {
                        let fe = self.nodes[y].full_end;
                        self.append_child(y, g, fe);
                    }
                    if self.nodes[x].nchild == 1 {
                        self.remove_child(x, y);
                        self.replace_in_parent(x, y);
                        self.nodes[x].alive = false;
                    }
                }
                &[y1, y2] => {
                    let fe1 = self.nodes[y1].full_end;
                    if let Some(g) = self.group(&full) {
                        self.append_child(y1, g, fe1);
                    }
                    self.remove_child(x, y2);
                    let fe2 = self.nodes[y2].full_end;
                    self.concat(y1, fe1, y2, fe2);
                    if self.nodes[x].nchild == 1 {
                        self.remove_child(x, y1);
                        self.replace_in_parent(x, y1);
                        self.nodes[x].alive = false;
                    }
                }
                _ => return Err(Error::NotInterval),
            }
            return Ok(x);
        }
        match partial.as_slice() {
            [] => {
                let g = self.group(&full).expect("some full child");
                let q = self.new_node(Kind::Q);
                self.replace_in_parent(x, q);
                let e = self.empty_remainder(x).expect("some empty child");
                self.append_child(q, e, 0);
                self.append_child(q, g, 1);
                self.set_status(q, Status::Partial);
                self.nodes[q].full_end = 1;
                Ok(q)
            }
            &[y] => {
                self.remove_child(x, y);
                self.replace_in_parent(x, y);
                let fe = self.nodes[y].full_end;
                if let Some(g) = self.group(&full) {
                    self.append_child(y, g, fe);
                }
                if let Some(e) = self.empty_remainder(x) {
                    self.append_child(y, e, 1 - fe);
                }
                Ok(y)
            }
            _ => Err(Error::NotInterval),
        }
    }

    fn process_q(&mut self, x: usize, is_root: bool) -> Result<usize> {
        let (full, partial) = self.split_pert(x);
        let total = full.len() + partial.len();
        if partial.is_empty() && total == self.nodes[x].nchild {
            self.set_status(x, Status::Full);
            return Ok(x);
        }
        let start = full.first().or(partial.first()).copied().expect("pertinent child");
        let [s0, s1] = self.nodes[start].sib;
        let (a, la) = self.walk(start, s0);
        let (b, lb) = self.walk(start, s1);
        if 1 + la + lb != total {
            return Err(Error::NotInterval);
        }
        if partial.iter().any(|&p| p != a && p != b) {
            return Err(Error::NotInterval);
        }

        if is_root {
            for &p in &partial {
                let toward = self.pert_neighbour(p);
                let fe = self.nodes[p].full_end;
                self.merge_child(x, p, toward, fe);
            }
            return Ok(x);
        }

        let ends = self.nodes[x].ends;
        let ok_outer = |c: usize| ends.contains(&c) && (total == 1 || !partial.contains(&c));
        let outer = if ok_outer(a) {
            a
        } else if ok_outer(b) {
            b
        } else {
            return Err(Error::NotInterval);
        };
        let inner = if outer == a { b } else { a };
        if partial.len() > 1 || (total > 1 && partial.iter().any(|&p| p != inner)) {
            return Err(Error::NotInterval);
        }
        let e = if ends[0] == outer { 0 } else { 1 };
        if let Some(&p) = partial.first() {
            let toward = if total > 1 { self.pert_neighbour(p) } else { NIL };
            let fe = self.nodes[p].full_end;
            self.merge_child(x, p, toward, fe);
        }
        self.set_status(x, Status::Partial);
        self.nodes[x].full_end = e;
        Ok(x)
    }

    fn children(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes[x].nchild);
        let (mut prev, mut cur) = (NIL, self.nodes[x].ends[0]);
        while cur != NIL {
            out.push(cur);
            let nxt = self.other(cur, prev);
            prev = cur;
            cur = nxt;
        }
        out
    }

    /// Exports the tree in preorder with the root at index 0.
    fn export(&self) -> Vec<PqNode> {
        let mut out: Vec<PqNode> = Vec::new();
        let mut stack = vec![(self.root, NIL)];
        while let Some((x, parent_slot)) = stack.pop() {
            let id = out.len();
            if parent_slot != NIL {
                out[parent_slot].children.push(id);
            }
            let nd = &self.nodes[x];
            let kids = if nd.kind == Kind::Leaf { Vec::new() } else { self.children(x) };
            let kind = if nd.kind == Kind::Q && kids.len() == 2 { Kind::P } else { nd.kind };
            out.push(PqNode { kind, leaf: nd.leaf, children: Vec::with_capacity(kids.len()) });
            for &c in kids.iter().rev() {
                stack.push((c, id));
            }
        }
        out
    }
}

/// Builds the PQ-tree over leaves `0..leaves` admitting every set in `sets`
/// as a consecutive block. Fails with `NotInterval` when no such order exists.
pub(crate) fn build_pq_tree<'a, I>(leaves: usize, sets: I) -> Result<Vec<PqNode>>
where
    I: IntoIterator<Item = &'a [usize]>,
{
    assert!(leaves > 0, "PQ-tree needs at least one leaf");
    let mut t = PqTree::new(leaves);
    for s in sets {
        t.reduce(s)?;
    }
    Ok(t.export())
}

/// Frontier of an exported tree.
pub(crate) fn frontier(nodes: &[PqNode]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        if nodes[x].kind == Kind::Leaf {
            out.push(nodes[x].leaf);
        } else {
            stack.extend(nodes[x].children.iter().rev());
        }
    }
    out
}
