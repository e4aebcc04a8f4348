//! 4-regular multigraphs at half-edge resolution and their Euler systems.
//!
//! Edge `e` consists of half-edges `2e` and `2e + 1`. A [`Traversal`] crosses
//! one edge in one direction; a circuit is a cyclic list of traversals, and
//! the passage at position `i` of a circuit is the pair (head of traversal
//! `i - 1`, tail of traversal `i`).

mod fundamental;
mod partition;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::LoopedGraph;

pub use fundamental::{FundamentalCircuit, OrientedFundamentalCircuits};
pub use partition::{
    circuit_partition, cycle_space_basis, m_matrix, shadow_vector, CircuitPartition, Direction, TouchGraph, Transition,
    TransitionKind,
};

pub type HalfEdge = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Traversal {
    pub edge: usize,
    pub forward: bool,
}

impl Traversal {
    pub fn tail(self) -> HalfEdge {
        2 * self.edge + (!self.forward) as usize
    }

    pub fn head(self) -> HalfEdge {
        2 * self.edge + self.forward as usize
    }

    pub fn reversed(self) -> Self {
        Traversal { edge: self.edge, forward: !self.forward }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourRegular {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    vertex_of: Vec<usize>,
    at: Vec<[HalfEdge; 4]>,
}

impl FourRegular {
    /// Builds a graph from edge endpoints; edge `e` runs from `ends[e].0`
    /// (half-edge `2e`) to `ends[e].1` (half-edge `2e + 1`).
    pub fn new<S: ToString>(labels: &[S], ends: &[(usize, usize)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut vertex_of = Vec::with_capacity(2 * ends.len());
        let mut at: Vec<Vec<HalfEdge>> = vec![Vec::new(); n];
        for &(a, b) in ends {
            if a >= n || b >= n {
                return Err(Error::Structure("edge endpoint out of range".into()));
            }
            at[a].push(vertex_of.len());
            vertex_of.push(a);
            at[b].push(vertex_of.len());
            vertex_of.push(b);
        }
        let at = at
            .into_iter()
            .enumerate()
            .map(|(v, hs)| {
                <[HalfEdge; 4]>::try_from(hs.as_slice()).map_err(|_| {
                    Error::Structure(format!("vertex `{}` has {} half-edges, expected 4", labels[v], hs.len()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FourRegular { labels, index, vertex_of, at })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_of.len() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.vertex_of[h]
    }

    pub fn half_edges_at(&self, v: usize) -> [HalfEdge; 4] {
        self.at[v]
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    /// Component index of every vertex, numbered by least vertex.
    pub fn component_of(&self) -> Vec<usize> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in 0..self.edge_count() {
            let (a, b) = self.ends(e);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        (0..n)
            .map(|v| {
                let r = find(&mut parent, v);
                let k = ids.len();
                *ids.entry(r).or_insert(k)
            })
            .collect()
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        self.component_of().iter().max().map_or(0, |m| m + 1)
    }
}

/// One oriented Euler circuit per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSystem {
    graph: Arc<FourRegular>,
    circuits: Vec<Vec<Traversal>>,
    /// `(circuit, [first position, second position])` per vertex.
    occ: Vec<(usize, [usize; 2])>,
}

impl EulerSystem {
    pub fn new(graph: Arc<FourRegular>, circuits: Vec<Vec<Traversal>>) -> Result<Self> {
        let m = graph.edge_count();
        let mut used = vec![false; m];
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); graph.n()];
        for (ci, c) in circuits.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::BadWalk("empty circuit".into()));
            }
            for (i, t) in c.iter().enumerate() {
                if t.edge >= m || std::mem::replace(&mut used[t.edge], true) {
                    return Err(Error::BadWalk(format!("edge {} missing or repeated", t.edge)));
                }
                let prev = c[(i + c.len() - 1) % c.len()];
                let v = graph.vertex_of(t.tail());
                if graph.vertex_of(prev.head()) != v {
                    return Err(Error::BadWalk(format!("traversals {} and {} do not meet", i, i + 1)));
                }
                occ[v].push((ci, i));
            }
        }
        if used.iter().any(|u| !u) {
            return Err(Error::BadWalk("not every edge is traversed".into()));
        }
        if circuits.len() != graph.components() {
            return Err(Error::BadWalk("need exactly one circuit per component".into()));
        }
        let occ = occ
            .into_iter()
            .map(|o| {
                debug_assert!(o.len() == 2 && o[0].0 == o[1].0);
                (o[0].0, [o[0].1, o[1].1])
            })
            .collect();
        Ok(EulerSystem { graph, circuits, occ })
    }

    pub fn graph(&self) -> &FourRegular {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<FourRegular> {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn circuits(&self) -> &[Vec<Traversal>] {
        &self.circuits
    }

    /// Vertex at position `i` of circuit `c`.
    pub fn vertex_at(&self, c: usize, i: usize) -> usize {
        self.graph.vertex_of(self.circuits[c][i].tail())
    }

    /// Passage `(in, out)` at position `i` of circuit `c`.
    pub fn passage(&self, c: usize, i: usize) -> (HalfEdge, HalfEdge) {
        let circ = &self.circuits[c];
        let prev = circ[(i + circ.len() - 1) % circ.len()];
        (prev.head(), circ[i].tail())
    }

    /// Circuit and the two positions of `v`, in increasing order.
    pub fn occurrences(&self, v: usize) -> (usize, [usize; 2]) {
        self.occ[v]
    }

    pub fn words(&self) -> Vec<Vec<String>> {
        (0..self.circuits.len())
            .map(|c| (0..self.circuits[c].len()).map(|i| self.graph.label(self.vertex_at(c, i)).to_string()).collect())
            .collect()
    }

    /// Words with single-character labels concatenated, others space-separated.
    pub fn word_strings(&self) -> Vec<String> {
        self.words()
            .into_iter()
            .map(|w| if w.iter().all(|l| l.chars().count() == 1) { w.concat() } else { w.join(" ") })
            .collect()
    }

    pub fn interlaced(&self, v: usize, w: usize) -> bool {
        let (cv, [p1, p2]) = self.occ[v];
        let (cw, [q1, q2]) = self.occ[w];
        v != w && cv == cw && ((p1 < q1 && q1 < p2) != (p1 < q2 && q2 < p2))
    }

    pub fn interlacement(&self) -> LoopedGraph {
        let n = self.n();
        let mut adj = vec![0u64; n];
        for v in 0..n {
            for w in 0..n {
                if self.interlaced(v, w) {
                    adj[v] |= 1 << w;
                }
            }
        }
        LoopedGraph::from_parts(self.graph.labels.clone(), adj, 0).expect("interlacement is symmetric")
    }

    /// Traversal positions (cyclic) covered by the segment of length `len`
    /// starting at `start` in circuit `c`.
    pub(crate) fn segment(&self, c: usize, start: usize, len: usize) -> Vec<Traversal> {
        let circ = &self.circuits[c];
        (0..len).map(|k| circ[(start + k) % circ.len()]).collect()
    }

    /// `C * v`: reverses the fundamental segment of `v` in place.
    pub fn kappa_transform(&self, v: usize, gamma: &OrientedFundamentalCircuits) -> Result<EulerSystem> {
        if v >= self.n() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let fc = gamma.get(v);
        let (c, _) = self.occ[v];
        let mut circuits = self.circuits.clone();
        let len = circuits[c].len();
        let seg = self.segment(c, fc.start, fc.len);
        for (k, t) in seg.iter().rev().enumerate() {
            circuits[c][(fc.start + k) % len] = t.reversed();
        }
        EulerSystem::new(self.graph.clone(), circuits)
    }

    /// Edges joining `a` and `b`, in order of traversal along the circuits.
    pub fn edges_between(&self, a: usize, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.circuits {
            for t in c {
                let (x, y) = self.graph.ends(t.edge);
                if (x, y) == (a, b) || (x, y) == (b, a) {
                    out.push(t.edge);
                }
            }
        }
        out
    }

    /// Resolves a base-edge name such as `ad`, `a-d` or `v1,v2` to the last
    /// matching edge in traversal order.
    pub fn edge_by_name(&self, name: &str) -> Result<usize> {
        let parts: Vec<&str> = name.split(|c: char| c == '-' || c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let (a, b) = match parts.as_slice() {
            [a, b] => (self.graph.index_of(a)?, self.graph.index_of(b)?),
            [ab] if ab.chars().count() == 2 => {
                let mut ch = ab.chars();
                let (x, y) = (ch.next().expect("two"), ch.next().expect("two"));
                (self.graph.index_of(&x.to_string())?, self.graph.index_of(&y.to_string())?)
            }
            _ => return Err(Error::BadBase(format!("cannot read an edge from `{name}`"))),
        };
        self.edges_between(a, b)
            .last()
            .copied()
            .ok_or_else(|| Error::BadBase(format!("no edge joins `{}` and `{}`", self.graph.label(a), self.graph.label(b))))
    }

    /// Closing edge of each circuit (from its last position back to its first).
    pub fn wrap_edges(&self) -> Vec<usize> {
        self.circuits.iter().map(|c| c.last().expect("nonempty").edge).collect()
    }
}

fn tokens(word: &str) -> Vec<String> {
    if word.split_whitespace().count() > 1 {
        word.split_whitespace().map(str::to_string).collect()
    } else {
        word.trim().chars().map(|c| c.to_string()).collect()
    }
}

/// One component per word; consecutive letters (cyclically) are joined by
/// an edge traversed forward.
pub fn parse_dow<S: AsRef<str>>(words: &[S]) -> Result<EulerSystem> {
    let words: Vec<Vec<String>> = words.iter().map(|w| tokens(w.as_ref())).collect();
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, (usize, usize, usize)> = HashMap::new();
    for (wi, w) in words.iter().enumerate() {
        if w.is_empty() {
            return Err(Error::BadWord(format!("word {} is empty", wi + 1)));
        }
        for t in w {
            let k = labels.len();
            let e = index.entry(t.clone()).or_insert((k, wi, 0));
            if e.0 == k {
                labels.push(t.clone());
            }
            if e.1 != wi {
                return Err(Error::BadWord(format!("`{t}` occurs in more than one word")));
            }
            e.2 += 1;
        }
    }
    if let Some(t) = labels.iter().find(|t| index[*t].2 != 2) {
        return Err(Error::BadWord(format!("`{t}` occurs {} times", index[t].2)));
    }
    let mut ends = Vec::new();
    let mut circuits = Vec::new();
    for w in &words {
        let mut c = Vec::with_capacity(w.len());
        for i in 0..w.len() {
            c.push(Traversal { edge: ends.len(), forward: true });
            ends.push((index[&w[i]].0, index[&w[(i + 1) % w.len()]].0));
        }
        circuits.push(c);
    }
    let f = FourRegular::new(&labels, &ends)?;
    EulerSystem::new(Arc::new(f), circuits)
}

/// DOW file: one word per line, `#` comments, blank lines ignored.
pub fn parse_dow_file(text: &str) -> Result<EulerSystem> {
    let words: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if words.is_empty() {
        return Err(Error::Parse { line: 1, msg: "no words".into() });
    }
    parse_dow(&words)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::{is_isomorphic, LcMode};

    pub(crate) fn all_dows(n: usize) -> Vec<String> {
        // restricted-growth pairings of 2n positions, letters in order of first use
        fn rec(pos: usize, word: &mut Vec<u8>, next: u8, n: usize, out: &mut Vec<String>) {
            if pos == word.len() {
                out.push(String::from_utf8(word.clone()).unwrap());
                return;
            }
            if word[pos] != 0 {
                return rec(pos + 1, word, next, n, out);
            }
            if next as usize >= n {
                return;
            }
            word[pos] = b'a' + next;
            for j in pos + 1..word.len() {
                if word[j] == 0 {
                    word[j] = b'a' + next;
                    rec(pos + 1, word, next + 1, n, out);
                    word[j] = 0;
                }
            }
            word[pos] = 0;
        }
        let mut out = Vec::new();
        rec(0, &mut vec![0; 2 * n], 0, n, &mut out);
        out
    }

    #[test]
    fn example_word_shape() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        assert_eq!((c.n(), c.graph().edge_count()), (4, 8));
        assert_eq!(c.word_strings(), vec!["abcdbacd"]);
        let g = c.interlacement();
        let adj = |a: &str, b: &str| g.adjacent(g.index_of(a).unwrap(), g.index_of(b).unwrap());
        assert!(adj("a", "c") && adj("a", "d") && adj("b", "c") && adj("b", "d") && adj("c", "d"));
        assert!(!adj("a", "b"));
    }

    #[test]
    fn tiny_words() {
        let c = parse_dow(&["aa"]).unwrap();
        assert_eq!((c.n(), c.graph().edge_count()), (1, 2));
        assert_eq!(c.graph().ends(0), (0, 0));
        let c = parse_dow(&["abab"]).unwrap();
        assert_eq!(c.interlacement().edge_count(), 1);
        assert_eq!(parse_dow(&["aabb"]).unwrap().interlacement().edge_count(), 0);
    }

    #[test]
    fn malformed_words() {
        assert!(matches!(parse_dow(&["abca"]), Err(Error::BadWord(_))));
        assert!(matches!(parse_dow(&["abab", "acca"]), Err(Error::BadWord(_))));
        assert!(parse_dow(&["aaa"]).is_err());
        let c = parse_dow(&["v1 v2 v1 v2", "x x"]).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.graph().components(), 2);
        assert_eq!(c.word_strings(), vec!["v1 v2 v1 v2", "xx"]);
    }

    #[test]
    fn dow_file_format() {
        let c = parse_dow_file("# two components\nabab\n\nc d c d  # tail\n").unwrap();
        assert_eq!(c.circuits().len(), 2);
        assert!(parse_dow_file("# nothing\n").is_err());
    }

    #[test]
    fn kappa_on_example_word() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let base = vec![c.edge_by_name("ad").unwrap()];
        let gamma = OrientedFundamentalCircuits::based(&c, &base).unwrap();
        let d = c.graph().index_of("d").unwrap();
        let ct = c.kappa_transform(d, &gamma).unwrap();
        assert_eq!(ct.word_strings(), vec!["abcdcabd"]);
        let gt = OrientedFundamentalCircuits::based(&ct, &base).unwrap();
        assert_eq!(ct.kappa_transform(d, &gt).unwrap(), c);
    }

    #[test]
    fn kappa_is_local_complementation() {
        for n in 1..=5 {
            for w in all_dows(n) {
                let c = parse_dow(&[&w]).unwrap();
                let g = c.interlacement();
                let gamma = OrientedFundamentalCircuits::based(&c, &c.wrap_edges()).unwrap();
                for v in 0..n {
                    let ct = c.kappa_transform(v, &gamma).unwrap();
                    let expect = g.local_complement_at(v, LcMode::Simple);
                    assert_eq!(ct.interlacement(), expect, "{w} at {v}");
                }
            }
        }
        let c = parse_dow(&["abab"]).unwrap();
        let gamma = OrientedFundamentalCircuits::based(&c, &c.wrap_edges()).unwrap();
        let ct = c.kappa_transform(0, &gamma).unwrap();
        assert!(is_isomorphic(&ct.interlacement(), &c.interlacement()).unwrap().is_some());
    }

    #[test]
    fn base_edge_names() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        assert_eq!(c.edge_by_name("ad").unwrap(), 7);
        assert_eq!(c.edge_by_name("cd").unwrap(), 6);
        assert_eq!(c.edge_by_name("d-c").unwrap(), 6);
        assert!(c.edge_by_name("aa").is_err());
        assert!(c.edge_by_name("abc").is_err());
    }
}
