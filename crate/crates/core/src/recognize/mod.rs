//! Circle-graph recognition: Naji's GF(2) system, solutions read off signed
//! interlacement matrices, vertex-minor obstructions, a brute-force chord
//! diagram realizer, and planarity of binary matroids.
//!
//! The GF(2) reduction of a signed matrix does not determine a Naji solution:
//! `A_vw = ±1` both reduce to `1` and `B_vw ∈ {0, 2}` both reduce to `0`, and
//! those are exactly the distinctions the solution is read from.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::bits::{self, BitRow, Gf2Solution};
use crate::fourreg::{parse_dow, EulerSystem};
use crate::graph::{canonical_form, has_vertex_minor, is_isomorphic, named_graph, CanonicalForm, LoopedGraph, VertexMinorWitness};
use crate::multimatroid::{fundamental_graph, BinaryMatroidRep};
use crate::signedias::SignedIAS;

/// Largest component size handled by `realize`.
pub const REALIZE_BOUND: usize = 6;

/// Obstructions in search order.
pub const OBSTRUCTIONS: [&str; 3] = ["W5", "BW3", "W7"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NajiFamily {
    /// `b(v,w) + b(w,v) = 1` for an edge `vw`.
    Edge,
    /// `b(x,v) + b(x,w) = 0` for an edge `vw` and `x` adjacent to neither.
    Apart,
    /// `b(v,w) + b(v,x) + b(w,x) + b(x,w) = 1` for edges `vw, vx` and non-edge `wx`.
    Cherry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NajiEquation {
    pub family: NajiFamily,
    pub terms: Vec<(usize, usize)>,
    pub rhs: bool,
}

#[derive(Clone, Debug)]
pub struct NajiSystem {
    labels: Vec<String>,
    equations: Vec<NajiEquation>,
}

fn var_index(n: usize, v: usize, w: usize) -> usize {
    debug_assert!(v != w && v < n && w < n);
    v * (n - 1) + w - (w > v) as usize
}

/// The full Naji system of a simple graph.
pub fn naji_system(g: &LoopedGraph) -> Result<NajiSystem> {
    if !g.is_simple() {
        return Err(Error::HasLoops);
    }
    let n = g.n();
    let mut equations = Vec::new();
    let edges = g.edges();
    for &(v, w) in &edges {
        equations.push(NajiEquation { family: NajiFamily::Edge, terms: vec![(v, w), (w, v)], rhs: true });
    }
    for &(v, w) in &edges {
        let apart = g.all() & !(g.neighbors(v) | g.neighbors(w)) & !(1 << v | 1 << w);
        for x in crate::multimatroid::bits(apart) {
            equations.push(NajiEquation { family: NajiFamily::Apart, terms: vec![(x, v), (x, w)], rhs: false });
        }
    }
    for v in 0..n {
        let nb: Vec<usize> = crate::multimatroid::bits(g.neighbors(v)).collect();
        for (i, &w) in nb.iter().enumerate() {
            for &x in &nb[i + 1..] {
                if !g.adjacent(w, x) {
                    equations.push(NajiEquation {
                        family: NajiFamily::Cherry,
                        terms: vec![(v, w), (v, x), (w, x), (x, w)],
                        rhs: true,
                    });
                }
            }
        }
    }
    Ok(NajiSystem { labels: g.labels().to_vec(), equations })
}

impl NajiSystem {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn variable_count(&self) -> usize {
        self.n() * self.n().saturating_sub(1)
    }

    pub fn equations(&self) -> &[NajiEquation] {
        &self.equations
    }

    pub fn count(&self, family: NajiFamily) -> usize {
        self.equations.iter().filter(|e| e.family == family).count()
    }

    pub fn describe(&self, i: usize) -> String {
        let e = &self.equations[i];
        let lhs: Vec<String> =
            e.terms.iter().map(|&(v, w)| format!("b({},{})", self.labels[v], self.labels[w])).collect();
        format!("{} = {}", lhs.join(" + "), e.rhs as u8)
    }

    fn rows(&self) -> (Vec<BitRow>, Vec<bool>) {
        let n = self.n();
        let rows = self
            .equations
            .iter()
            .map(|e| {
                let mut r = BitRow::zeros(self.variable_count());
                for &(v, w) in &e.terms {
                    let i = var_index(n, v, w);
                    r.set(i, !r.get(i));
                }
                r
            })
            .collect();
        (rows, self.equations.iter().map(|e| e.rhs).collect())
    }

    pub fn satisfied_by(&self, s: &NajiSolution) -> bool {
        s.labels == self.labels
            && self.equations.iter().all(|e| e.terms.iter().fold(false, |acc, &(v, w)| acc ^ s.get(v, w)) == e.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NajiSolution {
    labels: Vec<String>,
    beta: Vec<bool>,
}

impl NajiSolution {
    pub fn get(&self, v: usize, w: usize) -> bool {
        self.beta[var_index(self.labels.len(), v, w)]
    }

    /// `(v, w, b(v,w))` over ordered pairs in row-major order.
    pub fn entries(&self) -> Vec<(String, String, u8)> {
        let n = self.labels.len();
        let mut out = Vec::with_capacity(self.beta.len());
        for v in 0..n {
            for w in (0..n).filter(|&w| w != v) {
                out.push((self.labels[v].clone(), self.labels[w].clone(), self.get(v, w) as u8));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NajiCertificate {
    /// Equation at which elimination hit `0 = 1`.
    pub first: usize,
    /// Equations summing to `0 = 1`.
    pub combination: Vec<usize>,
    pub equations: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum CircleVerdict {
    Circle(NajiSolution),
    NotCircle(NajiCertificate),
}

impl CircleVerdict {
    pub fn is_circle(&self) -> bool {
        matches!(self, CircleVerdict::Circle(_))
    }
}

pub fn is_circle(g: &LoopedGraph) -> Result<CircleVerdict> {
    let sys = naji_system(g)?;
    let (rows, rhs) = sys.rows();
    Ok(match bits::solve(&rows, &rhs, sys.variable_count()) {
        Gf2Solution::Solved(beta) => CircleVerdict::Circle(NajiSolution { labels: sys.labels.clone(), beta }),
        Gf2Solution::Inconsistent { first, combination } => {
            let equations = combination.iter().map(|&i| sys.describe(i)).collect();
            CircleVerdict::NotCircle(NajiCertificate { first, combination, equations })
        }
    })
}

/// Naji solution of the interlacement graph read off the signs of `s`:
/// on an edge `b(v,w) = 1` iff `A_vw = −1`; off an edge `b(v,w) = 1` iff `B_vw = 2`.
pub fn naji_from_signed(s: &SignedIAS) -> Result<NajiSolution> {
    let g = s.euler().interlacement();
    let n = s.n();
    let [_, a, b] = s.blocks();
    let mut beta = vec![false; n * n.saturating_sub(1)];
    for v in 0..n {
        for w in (0..n).filter(|&w| w != v) {
            let x = match (g.adjacent(v, w), a[v][w], b[v][w]) {
                (true, 1, _) => false,
                (true, -1, _) => true,
                (false, _, 0) => false,
                (false, _, 2) => true,
                (adj, av, bv) => {
                    return Err(Error::Internal(format!(
                        "entry ({}, {}) outside the table: adjacent={adj}, A={av}, B={bv}",
                        g.label(v),
                        g.label(w)
                    )))
                }
            };
            beta[var_index(n, v, w)] = x;
        }
    }
    let sol = NajiSolution { labels: g.labels().to_vec(), beta };
    if !naji_system(&g)?.satisfied_by(&sol) {
        return Err(Error::Internal("signed matrix does not yield a Naji solution".into()));
    }
    Ok(sol)
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    /// Every obstruction found, in search order.
    pub found: Vec<(String, VertexMinorWitness)>,
    /// Every search that came back empty explored its whole orbit.
    pub complete: bool,
}

impl ObstructionReport {
    pub fn first(&self) -> Option<&str> {
        self.found.first().map(|(n, _)| n.as_str())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.found.iter().any(|(n, _)| n == name)
    }
}

/// Searches `g` for each of `W5`, `BW3`, `W7` as a vertex-minor.
pub fn find_obstruction(g: &LoopedGraph, budget: usize) -> Result<ObstructionReport> {
    if !g.is_simple() {
        return Err(Error::HasLoops);
    }
    let mut found = Vec::new();
    let mut complete = true;
    for name in OBSTRUCTIONS {
        let r = has_vertex_minor(g, &named_graph(name)?, budget)?;
        match r.witness {
            Some(w) => found.push((name.to_string(), w)),
            None => complete &= r.complete,
        }
    }
    Ok(ObstructionReport { found, complete })
}

static TABLES: [OnceLock<HashMap<CanonicalForm, Vec<u8>>>; REALIZE_BOUND + 1] =
    [const { OnceLock::new() }; REALIZE_BOUND + 1];

/// Double occurrence words on `k` letters in restricted-growth form (letters
/// first appear in order `0, 1, 2, …`), visited in lexicographic order.
fn rg_words(k: usize, f: &mut impl FnMut(&[u8])) {
    fn rec(k: usize, word: &mut Vec<u8>, count: &mut [u8], opened: usize, f: &mut impl FnMut(&[u8])) {
        if word.len() == 2 * k {
            f(word);
            return;
        }
        for l in 0..opened {
            if count[l] == 1 {
                count[l] = 2;
                word.push(l as u8);
                rec(k, word, count, opened, f);
                word.pop();
                count[l] = 1;
            }
        }
        if opened < k {
            count[opened] = 1;
            word.push(opened as u8);
            rec(k, word, count, opened + 1, f);
            word.pop();
            count[opened] = 0;
        }
    }
    rec(k, &mut Vec::with_capacity(2 * k), &mut vec![0; k], 0, f);
}

fn word_interlacement(word: &[u8], k: usize) -> LoopedGraph {
    let mut pos = vec![[usize::MAX; 2]; k];
    for (i, &l) in word.iter().enumerate() {
        let p = &mut pos[l as usize];
        p[(p[0] != usize::MAX) as usize] = i;
    }
    let mut adj = vec![0u64; k];
    for v in 0..k {
        for w in v + 1..k {
            let inside = pos[w].iter().filter(|&&q| pos[v][0] < q && q < pos[v][1]).count();
            if inside == 1 {
                adj[v] |= 1 << w;
                adj[w] |= 1 << v;
            }
        }
    }
    LoopedGraph::from_masks(&adj, 0)
}

/// Least restricted-growth word for each interlacement class on `k` letters.
fn table(k: usize) -> &'static HashMap<CanonicalForm, Vec<u8>> {
    TABLES[k].get_or_init(|| {
        let mut t = HashMap::new();
        rg_words(k, &mut |w| {
            t.entry(canonical_form(&word_interlacement(w, k))).or_insert_with(|| w.to_vec());
        });
        t
    })
}

fn join(tokens: &[&str]) -> String {
    if tokens.iter().all(|t| t.chars().count() == 1) {
        tokens.concat()
    } else {
        tokens.join(" ")
    }
}

/// One double occurrence word per connected component of `g`, in the
/// labels of `g`, or `None` when `g` is not a circle graph. Each word is the
/// lexicographically least restricted-growth word realizing its component,
/// renamed along an isomorphism.
pub fn realize(g: &LoopedGraph) -> Result<Option<Vec<String>>> {
    if !g.is_simple() {
        return Err(Error::HasLoops);
    }
    let mut words = Vec::new();
    for comp in g.components() {
        let h = g.induced(comp);
        let k = h.n();
        if k > REALIZE_BOUND {
            return Err(Error::TooLarge { got: k, bound: REALIZE_BOUND });
        }
        let Some(word) = table(k).get(&canonical_form(&h)) else {
            return Ok(None);
        };
        let map = is_isomorphic(&word_interlacement(word, k), &h)?.expect("same canonical form");
        let tokens: Vec<&str> = word.iter().map(|&l| h.label(map[l as usize])).collect();
        words.push(join(&tokens));
    }
    Ok(Some(words))
}

/// The Euler system of `realize(g)`, with `NotCircle` when there is none.
pub fn realization(g: &LoopedGraph) -> Result<EulerSystem> {
    match realize(g)? {
        Some(words) => parse_dow(&words),
        None => Err(Error::NotCircle),
    }
}

/// A binary matroid is planar iff its fundamental graph is a circle graph.
pub fn matroid_is_planar(m: &BinaryMatroidRep) -> Result<bool> {
    Ok(is_circle(&fundamental_graph(m))?.is_circle())
}
