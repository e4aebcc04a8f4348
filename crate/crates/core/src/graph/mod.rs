//! Looped simple graphs on at most 64 vertices.

mod canon;
mod orbit;
mod text;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{
    canonical_form, canonical_labeling, is_isomorphic, simple_graphs_up_to_iso, CanonicalForm, ENUMERATION_BOUND, ISO_BOUND,
};
pub use orbit::{
    has_vertex_minor, local_equivalence_orbit, simple_local_orbit, Move, Orbit, VertexMinorResult, VertexMinorWitness,
    DEFAULT_BUDGET, ORBIT_BOUND,
};

pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LcMode {
    Simple,
    Nonsimple,
}

/// Graph with at most one edge per pair and optional loops. Adjacency is
/// a bitmask per vertex; bit `i` of `adj[i]` is never set (loops live in
/// `loops`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<u64>,
    loops: u64,
}

impl LoopedGraph {
    pub fn new<S: ToString>(labels: &[S]) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooLarge { got: labels.len(), bound: MAX_VERTICES });
        }
        let labels: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(LoopedGraph { adj: vec![0; labels.len()], labels, index, loops: 0 })
    }

    pub fn with_edges<S: ToString>(labels: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = LoopedGraph::new(labels)?;
        for (a, b) in edges {
            g.add_edge(&a.to_string(), &b.to_string())?;
        }
        Ok(g)
    }

    /// Graph on `0..n` labelled by decimal index, from adjacency masks.
    pub fn from_masks(adj: &[u64], loops: u64) -> Self {
        let labels: Vec<String> = (0..adj.len()).map(|i| i.to_string()).collect();
        let mut g = LoopedGraph::new(&labels).expect("bounded");
        g.adj = adj.to_vec();
        g.loops = loops;
        g
    }

    pub fn from_parts(labels: Vec<String>, adj: Vec<u64>, loops: u64) -> Result<Self> {
        let mut g = LoopedGraph::new(&labels)?;
        let n = labels.len();
        for i in 0..n {
            if adj[i] >> i & 1 == 1 {
                return Err(Error::Structure(format!("adjacency of `{}` contains itself", labels[i])));
            }
            for j in 0..n {
                if (adj[i] >> j & 1) != (adj[j] >> i & 1) {
                    return Err(Error::Structure("adjacency is not symmetric".into()));
                }
            }
        }
        g.adj = adj;
        g.loops = loops;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        if i == j {
            self.loops |= 1 << i;
        } else {
            self.adj[i] |= 1 << j;
            self.adj[j] |= 1 << i;
        }
        Ok(())
    }

    pub fn add_loop(&mut self, a: &str) -> Result<()> {
        let i = self.index_of(a)?;
        self.loops |= 1 << i;
        Ok(())
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    #[inline]
    pub fn has_loop(&self, i: usize) -> bool {
        self.loops >> i & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> u64 {
        self.adj[i]
    }

    pub fn masks(&self) -> &[u64] {
        &self.adj
    }

    pub fn loop_mask(&self) -> u64 {
        self.loops
    }

    pub fn is_simple(&self) -> bool {
        self.loops == 0
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Non-loop edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Same graph with loops removed.
    pub fn simple_part(&self) -> Self {
        let mut g = self.clone();
        g.loops = 0;
        g
    }

    pub fn loop_complement(&self, v: &str) -> Result<Self> {
        Ok(self.loop_complement_at(self.index_of(v)?))
    }

    pub fn loop_complement_at(&self, i: usize) -> Self {
        let mut g = self.clone();
        g.loops ^= 1 << i;
        g
    }

    pub fn local_complement(&self, v: &str, mode: LcMode) -> Result<Self> {
        Ok(self.local_complement_at(self.index_of(v)?, mode))
    }

    pub fn local_complement_at(&self, v: usize, mode: LcMode) -> Self {
        let mut g = self.clone();
        let nv = self.adj[v];
        let mut rest = nv;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            g.adj[w] ^= nv & !(1 << w);
        }
        if mode == LcMode::Nonsimple {
            g.loops ^= nv;
        }
        g
    }

    pub fn apply(&self, m: &Move) -> Result<Self> {
        match m {
            Move::Loop(v) => self.loop_complement(v),
            Move::Local(v, mode) => self.local_complement(v, *mode),
        }
    }

    pub fn delete_vertices<S: AsRef<str>>(&self, x: &[S]) -> Result<Self> {
        let mut mask = 0u64;
        for v in x {
            mask |= 1 << self.index_of(v.as_ref())?;
        }
        Ok(self.induced(self.all() & !mask))
    }

    pub fn all(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    /// Induced subgraph on the vertices in `keep`, preserving label order.
    pub fn induced(&self, keep: u64) -> Self {
        let idx: Vec<usize> = (0..self.n()).filter(|&i| keep >> i & 1 == 1).collect();
        let labels: Vec<String> = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let mut adj = vec![0u64; idx.len()];
        let mut loops = 0u64;
        for (a, &i) in idx.iter().enumerate() {
            if self.has_loop(i) {
                loops |= 1 << a;
            }
            for (b, &j) in idx.iter().enumerate() {
                if self.adjacent(i, j) {
                    adj[a] |= 1 << b;
                }
            }
        }
        LoopedGraph::from_parts(labels, adj, loops).expect("induced subgraph is well formed")
    }

    /// Renames vertex `i` to `names[i]`.
    pub fn relabeled(&self, names: Vec<String>) -> Result<Self> {
        LoopedGraph::from_parts(names, self.adj.clone(), self.loops)
    }

    /// Connected components as vertex masks, ordered by least member.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if self.adjacent(v, w) {
                        if color[w] == u8::MAX {
                            color[w] = 1 - color[v];
                            stack.push(w);
                        } else if color[w] == color[v] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_text(&self) -> String {
        text::emit(self)
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

impl fmt::Display for LoopedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn cycle(n: usize) -> LoopedGraph {
    let mut g = LoopedGraph::new(&numbered(n)).expect("bounded");
    for i in 0..n {
        let j = (i + 1) % n;
        if i != j {
            g.adj[i] |= 1 << j;
            g.adj[j] |= 1 << i;
        }
    }
    g
}

/// Wheel with hub `1` and rim `2..=k+1` in cyclic order.
fn wheel(k: usize) -> LoopedGraph {
    let mut g = LoopedGraph::new(&numbered(k + 1)).expect("bounded");
    for i in 1..=k {
        g.adj[0] |= 1 << i;
        g.adj[i] |= 1;
        let j = if i == k { 1 } else { i + 1 };
        g.adj[i] |= 1 << j;
        g.adj[j] |= 1 << i;
    }
    g
}

/// Named graphs: `W5`, `W7`, `BW3`, `C_n`, `K_n`, `path_n` (the underscore
/// is optional, and `P_n` is accepted for paths).
pub fn named_graph(name: &str) -> Result<LoopedGraph> {
    let unknown = || Error::UnknownGraph(name.to_string());
    let size = |rest: &str| -> Result<usize> {
        let n: usize = rest.trim_start_matches('_').parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { got: n, bound: MAX_VERTICES });
        }
        Ok(n)
    };
    match name {
        "W5" => Ok(wheel(5)),
        "W7" => Ok(wheel(7)),
        "BW3" => {
            // wheel on three spokes with every rim edge subdivided
            let v = ["h", "b1", "b2", "b3", "c12", "c23", "c13"];
            let e = [
                ("h", "b1"),
                ("h", "b2"),
                ("h", "b3"),
                ("b1", "c12"),
                ("c12", "b2"),
                ("b2", "c23"),
                ("c23", "b3"),
                ("b1", "c13"),
                ("c13", "b3"),
            ];
            LoopedGraph::with_edges(&v, &e)
        }
        _ => {
            if let Some(rest) = name.strip_prefix("path") {
                let n = size(rest)?;
                let mut g = LoopedGraph::new(&numbered(n))?;
                for i in 1..n {
                    g.adj[i - 1] |= 1 << i;
                    g.adj[i] |= 1 << (i - 1);
                }
                Ok(g)
            } else if let Some(rest) = name.strip_prefix('P') {
                named_graph(&format!("path{rest}"))
            } else if let Some(rest) = name.strip_prefix('C') {
                Ok(cycle(size(rest)?))
            } else if let Some(rest) = name.strip_prefix('K') {
                let n = size(rest)?;
                let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                let adj = (0..n).map(|i| all & !(1 << i)).collect();
                LoopedGraph::from_parts(numbered(n), adj, 0)
            } else {
                Err(unknown())
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = LoopedGraph> {
        (1..=max_n).prop_flat_map(|n| {
            (proptest::collection::vec(any::<bool>(), n * (n - 1) / 2), proptest::collection::vec(any::<bool>(), n))
                .prop_map(move |(es, ls)| {
                    let mut adj = vec![0u64; n];
                    let mut k = 0;
                    for i in 0..n {
                        for j in i + 1..n {
                            if es[k] {
                                adj[i] |= 1 << j;
                                adj[j] |= 1 << i;
                            }
                            k += 1;
                        }
                    }
                    let loops = ls.iter().enumerate().fold(0u64, |m, (i, &b)| m | ((b as u64) << i));
                    LoopedGraph::from_masks(&adj, loops)
                })
        })
    }

    #[test]
    fn path_complements_to_triangle() {
        let p = named_graph("path_3").unwrap();
        let t = p.local_complement("2", LcMode::Simple).unwrap();
        assert_eq!(t.edge_count(), 3);
    }

    #[test]
    fn five_cycle_complements_to_house() {
        let c = named_graph("C_5").unwrap();
        let h = c.local_complement("1", LcMode::Simple).unwrap();
        assert_eq!(h.edge_count(), 6);
        // the two neighbours of 1 become adjacent
        assert!(h.adjacent(1, 4));
        assert!(is_isomorphic(&h, &house()).unwrap().is_some());
    }

    fn house() -> LoopedGraph {
        let v = ["a", "b", "c", "d", "e"];
        let e = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("c", "e"), ("d", "e")];
        LoopedGraph::with_edges(&v, &e).unwrap()
    }

    #[test]
    fn isolated_vertex_is_fixed() {
        let g = LoopedGraph::new(&["a"]).unwrap();
        assert_eq!(g.local_complement("a", LcMode::Nonsimple).unwrap(), g);
        let l = g.loop_complement("a").unwrap();
        assert!(l.has_loop(0));
        assert_eq!(l.loop_complement("a").unwrap(), g);
    }

    #[test]
    fn bw3_loop_complement_adds_one_loop() {
        let g = named_graph("BW3").unwrap();
        assert!(g.is_simple());
        for v in g.labels().to_vec() {
            assert_eq!(g.loop_complement(&v).unwrap().loop_mask().count_ones(), 1);
        }
    }

    #[test]
    fn named_graph_shapes() {
        let w5 = named_graph("W5").unwrap();
        assert_eq!((w5.n(), w5.edge_count()), (6, 10));
        assert_eq!(w5.neighbors(0), 0b111110);
        for (a, b) in [("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("6", "2")] {
            assert!(w5.adjacent(w5.index_of(a).unwrap(), w5.index_of(b).unwrap()));
        }
        let bw3 = named_graph("BW3").unwrap();
        assert_eq!((bw3.n(), bw3.edge_count()), (7, 9));
        let w7 = named_graph("W7").unwrap();
        assert_eq!((w7.n(), w7.edge_count()), (8, 14));
        assert!(is_isomorphic(&named_graph("C_3").unwrap(), &named_graph("K3").unwrap()).unwrap().is_some());
        assert!(matches!(named_graph("Q3"), Err(Error::UnknownGraph(_))));
    }

    #[test]
    fn w5_minus_hub_is_c5() {
        let w5 = named_graph("W5").unwrap();
        let c = w5.delete_vertices(&["1"]).unwrap();
        assert_eq!(c.labels(), &["2", "3", "4", "5", "6"]);
        assert!(is_isomorphic(&c, &named_graph("C5").unwrap()).unwrap().is_some());
        assert_eq!(w5.delete_vertices::<&str>(&[]).unwrap(), w5);
        assert_eq!(w5.delete_vertices(w5.labels()).unwrap().n(), 0);
        assert!(w5.delete_vertices(&["9"]).is_err());
    }

    proptest! {
        #[test]
        fn involutions(g in arb_graph(8), v in 0usize..8) {
            let v = v % g.n();
            prop_assert_eq!(g.loop_complement_at(v).loop_complement_at(v), g.clone());
            let s = g.local_complement_at(v, LcMode::Simple);
            prop_assert_eq!(s.local_complement_at(v, LcMode::Simple), g.clone());
        }

        #[test]
        fn local_complement_is_local(g in arb_graph(8), v in 0usize..8) {
            let v = v % g.n();
            let closed = g.neighbors(v) | 1 << v;
            for mode in [LcMode::Simple, LcMode::Nonsimple] {
                let h = g.local_complement_at(v, mode);
                prop_assert_eq!(h.n(), g.n());
                for a in 0..g.n() {
                    for b in 0..g.n() {
                        let inside = g.neighbors(v) >> a & 1 == 1 && g.neighbors(v) >> b & 1 == 1;
                        if a != b && !inside {
                            prop_assert_eq!(h.adjacent(a, b), g.adjacent(a, b));
                        }
                    }
                    if mode == LcMode::Simple || closed >> a & 1 == 0 || a == v {
                        prop_assert_eq!(h.has_loop(a), g.has_loop(a));
                    }
                }
            }
        }

        #[test]
        fn deletion_never_adds_edges(g in arb_graph(8), keep in any::<u64>()) {
            let h = g.induced(keep & g.all());
            prop_assert!(h.edge_count() <= g.edge_count());
        }

        #[test]
        fn text_round_trip(g in arb_graph(9)) {
            let t = g.to_text();
            let back = LoopedGraph::parse_text(&t).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_text(), t);
        }
    }
}
