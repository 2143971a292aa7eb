//! Compact encoding of a representation as a sequence of labelled endpoints.
//!
//! Each endpoint costs `1 + ⌈log2 k⌉` bits: the endpoint kind (0 = left,
//! 1 = right) followed by the label minus one, big-endian, where the label of
//! a vertex is its layer in the proper-layer partition.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::repr::{Coord, Interval, IntervalRepresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitCode {
    pub n: u32,
    pub k: u32,
    /// Payload bits, MSB-first, zero-padded to a whole byte.
    pub payload: Vec<u8>,
    pub bit_len: usize,
}

/// Label width `⌈log2 k⌉`.
pub fn label_bits(k: u32) -> u32 {
    if k <= 1 {
        0
    } else {
        32 - (k - 1).leading_zeros()
    }
}

impl BitCode {
    pub fn bit(&self, i: usize) -> bool {
        self.payload[i / 8] >> (7 - i % 8) & 1 == 1
    }

    /// Payload bits as `0`/`1` characters separated by spaces.
    pub fn bit_string(&self) -> String {
        (0..self.bit_len).map(|i| if self.bit(i) { "1" } else { "0" }).collect::<Vec<_>>().join(" ")
    }

    /// 8-byte header (`n`, `k` as big-endian u32) followed by the payload.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.payload.len());
        out.extend_from_slice(&self.n.to_be_bytes());
        out.extend_from_slice(&self.k.to_be_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<BitCode> {
        if bytes.len() < 8 {
            return Err(Error::MalformedCode("missing 8-byte header".into()));
        }
        let n = u32::from_be_bytes(bytes[0..4].try_into().unwrap());
        let k = u32::from_be_bytes(bytes[4..8].try_into().unwrap());
        let bit_len = 2 * n as usize * (1 + label_bits(k) as usize);
        let payload = bytes[8..].to_vec();
        if payload.len() != bit_len.div_ceil(8) {
            return Err(Error::MalformedCode(format!(
                "payload has {} bytes, expected {}",
                payload.len(),
                bit_len.div_ceil(8)
            )));
        }
        Ok(BitCode { n, k, payload, bit_len })
    }

    /// Builds a code from explicit bits; the bit count must match `n` and `k`.
    pub fn from_bits(n: u32, k: u32, bits: &[bool]) -> Result<BitCode> {
        let expected = 2 * n as usize * (1 + label_bits(k) as usize);
        if bits.len() != expected {
            return Err(Error::MalformedCode(format!("{} bits given, expected {expected}", bits.len())));
        }
        let mut w = BitWriter::default();
        for &b in bits {
            w.push(b);
        }
        Ok(BitCode { n, k, payload: w.bytes, bit_len: w.len })
    }
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    fn push(&mut self, b: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if b {
            *self.bytes.last_mut().unwrap() |= 1 << (7 - self.len % 8);
        }
        self.len += 1;
    }
}

struct Endpoint {
    at: Coord,
    right: bool,
    partner: Coord,
    vertex: usize,
}

/// Sweep order of endpoints: by coordinate, lefts before rights, then by
/// descending partner coordinate, then by vertex id.
fn endpoint_order(a: &Endpoint, b: &Endpoint) -> Ordering {
    a.at.cmp(&b.at).then(a.right.cmp(&b.right)).then(b.partner.cmp(&a.partner)).then(a.vertex.cmp(&b.vertex))
}

pub fn encode(r: &IntervalRepresentation) -> BitCode {
    let labels = r.proper_layers().label;
    let n = r.len();
    let k = labels.iter().copied().max().unwrap_or(0) as u32;
    let width = label_bits(k);

    let mut ends: Vec<Endpoint> = Vec::with_capacity(2 * n);
    for (v, iv) in r.intervals().iter().enumerate() {
        ends.push(Endpoint { at: iv.l, right: false, partner: iv.r, vertex: v });
        ends.push(Endpoint { at: iv.r, right: true, partner: iv.l, vertex: v });
    }
    ends.sort_by(endpoint_order);

    let mut w = BitWriter::default();
    for e in &ends {
        w.push(e.right);
        let lab = (labels[e.vertex] - 1) as u32;
        for b in (0..width).rev() {
            w.push(lab >> b & 1 == 1);
        }
    }
    BitCode { n: n as u32, k, payload: w.bytes, bit_len: w.len }
}

/// Rebuilds a representation on integer coordinates `0..2n`, pairing the
/// endpoints of each label first-in first-out. Vertex `i` is the interval
/// with the `i`-th left endpoint.
pub fn decode(code: &BitCode) -> Result<(Graph, IntervalRepresentation)> {
    let n = code.n as usize;
    let width = label_bits(code.k) as usize;
    let expected = 2 * n * (1 + width);
    if code.bit_len != expected || code.payload.len() != expected.div_ceil(8) {
        return Err(Error::MalformedCode(format!("expected {expected} payload bits, found {}", code.bit_len)));
    }
    let mut open: Vec<VecDeque<usize>> = vec![VecDeque::new(); code.k.max(1) as usize];
    let mut left: Vec<i64> = Vec::with_capacity(n);
    let mut right: Vec<i64> = Vec::with_capacity(n);
    let mut i = 0;
    for pos in 0..2 * n {
        let is_right = code.bit(i);
        let mut lab = 0usize;
        for j in 0..width {
            lab = lab << 1 | code.bit(i + 1 + j) as usize;
        }
        i += 1 + width;
        if lab >= open.len() {
            return Err(Error::MalformedCode(format!("label {} exceeds k = {}", lab + 1, code.k)));
        }
        if is_right {
            let v = open[lab].pop_front().ok_or_else(|| {
                Error::MalformedCode(format!(
                    "right endpoint at position {pos} has no open interval of label {}",
                    lab + 1
                ))
            })?;
            right[v] = pos as i64;
        } else {
            if left.len() == n {
                return Err(Error::MalformedCode("more than n left endpoints".into()));
            }
            open[lab].push_back(left.len());
            left.push(pos as i64);
            right.push(-1);
        }
    }
    if open.iter().any(|q| !q.is_empty()) || left.len() != n {
        return Err(Error::MalformedCode("unmatched left endpoints".into()));
    }
    if !code.bit_len.is_multiple_of(8) {
        let last = *code.payload.last().unwrap();
        if last & (0xffu8 >> (code.bit_len % 8)) != 0 {
            return Err(Error::MalformedCode("nonzero padding".into()));
        }
    }
    let r = IntervalRepresentation::new(left.iter().zip(&right).map(|(&l, &r)| Interval::from_ints(l, r)).collect());
    Ok((r.intersection_graph(), r))
}

/// The left-endpoint order used by the encoder: vertex `perm[i]` of the
/// source becomes vertex `i` of the decoded graph.
pub fn decode_order(r: &IntervalRepresentation) -> Vec<usize> {
    let mut lefts: Vec<Endpoint> = r
        .intervals()
        .iter()
        .enumerate()
        .map(|(v, iv)| Endpoint { at: iv.l, right: false, partner: iv.r, vertex: v })
        .collect();
    lefts.sort_by(endpoint_order);
    lefts.into_iter().map(|e| e.vertex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::maximal_cliques;
    use crate::graph::{parse_graph, random_interval_graph};
    use crate::repr::cleaned_representation;

    fn cleaned(g: &Graph) -> IntervalRepresentation {
        let cl = maximal_cliques(g).unwrap();
        let tree = crate::mpq::build_mpq_tree(g).unwrap();
        cleaned_representation(g, &cl, &tree.frontier()).unwrap()
    }

    #[test]
    fn label_widths() {
        assert_eq!((label_bits(1), label_bits(2), label_bits(3), label_bits(4), label_bits(5)), (0, 1, 2, 2, 3));
    }

    #[test]
    fn path_p3() {
        let g = parse_graph("3 2\n0 1\n1 2").unwrap();
        let code = encode(&cleaned(&g));
        assert_eq!(code.k, 1);
        let s = code.bit_string();
        assert!(s == "0 0 1 0 1 1", "{s}");
    }

    #[test]
    fn single_vertex() {
        let code = encode(&cleaned(&Graph::new(1)));
        assert_eq!(code.bit_string(), "0 1");
        let raw = BitCode::from_bits(1, 1, &[false, true]).unwrap();
        let (g, _) = decode(&raw).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn claw_round_trip() {
        let g = parse_graph("4 3\n0 1\n0 2\n0 3").unwrap();
        let code = encode(&cleaned(&g));
        assert_eq!((code.k, code.bit_len), (2, 16));
        let (h, _) = decode(&code).unwrap();
        let mut degs: Vec<usize> = (0..4).map(|v| h.degree(v)).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 1, 3]);
    }

    #[test]
    fn random_round_trips_preserve_labels_and_graph() {
        for seed in 0..200 {
            let (g, r) = random_interval_graph(1 + seed as usize % 40, seed, 3.0);
            let code = encode(&r);
            let (h, _) = decode(&code).unwrap();
            let perm = decode_order(&r);
            let mut inv = vec![0; perm.len()];
            for (i, &v) in perm.iter().enumerate() {
                inv[v] = i;
            }
            assert_eq!(g.permuted(&inv), h, "seed {seed}");
            let bytes = code.to_bytes();
            assert_eq!(BitCode::from_bytes(&bytes).unwrap(), code);
        }
    }

    #[test]
    fn malformed_codes() {
        let bad = BitCode::from_bits(1, 1, &[true, false]).unwrap();
        assert!(matches!(decode(&bad), Err(Error::MalformedCode(_))));
        let unmatched = BitCode::from_bits(1, 1, &[false, false]).unwrap();
        assert!(matches!(decode(&unmatched), Err(Error::MalformedCode(_))));
        assert!(BitCode::from_bytes(&[0, 0, 0, 1, 0, 0, 0, 1]).is_err());
    }
}
