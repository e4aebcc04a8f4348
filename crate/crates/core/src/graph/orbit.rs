//! Local-equivalence orbits and vertex-minor search.
//!
//! Local complementation only reads adjacency, and loop complementation only
//! writes loops, so the adjacency of any graph reachable from `g` is reachable
//! by simple local complementations alone, with arbitrary loops on top. Vertex
//! minors are therefore searched over the simple orbit of the simple part and
//! loops are patched afterwards with loop complementations.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::canon::{canonical_form, is_isomorphic, CanonicalForm};
use super::{LcMode, LoopedGraph};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 200_000;
pub const ORBIT_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", content = "vertex", rename_all = "lowercase")]
pub enum Move {
    Loop(String),
    Local(String, LcMode),
}

/// Orbit members up to isomorphism, each with a concrete representative
/// reachable from the start graph by the recorded moves.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub forms: Vec<CanonicalForm>,
    pub members: Vec<LoopedGraph>,
    parent: Vec<Option<(usize, Move)>>,
    index: HashMap<CanonicalForm, usize>,
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn contains(&self, f: &CanonicalForm) -> bool {
        self.index.contains_key(f)
    }

    /// Moves taking the start graph to `members[i]`.
    pub fn moves_to(&self, mut i: usize) -> Vec<Move> {
        let mut out = Vec::new();
        while let Some((p, m)) = &self.parent[i] {
            out.push(m.clone());
            i = *p;
        }
        out.reverse();
        out
    }
}

fn all_moves(g: &LoopedGraph) -> Vec<(Move, LoopedGraph)> {
    let mut out = Vec::with_capacity(3 * g.n());
    for v in 0..g.n() {
        let l = g.label(v).to_string();
        out.push((Move::Loop(l.clone()), g.loop_complement_at(v)));
        out.push((Move::Local(l.clone(), LcMode::Simple), g.local_complement_at(v, LcMode::Simple)));
        out.push((Move::Local(l, LcMode::Nonsimple), g.local_complement_at(v, LcMode::Nonsimple)));
    }
    out
}

fn simple_moves(g: &LoopedGraph) -> Vec<(Move, LoopedGraph)> {
    (0..g.n())
        .map(|v| (Move::Local(g.label(v).to_string(), LcMode::Simple), g.local_complement_at(v, LcMode::Simple)))
        .collect()
}

/// Breadth-first closure; `visit` may stop the search early by returning
/// `Some`.
fn bfs<T>(
    g: &LoopedGraph,
    budget: usize,
    gens: fn(&LoopedGraph) -> Vec<(Move, LoopedGraph)>,
    mut visit: impl FnMut(&Orbit, usize) -> Option<T>,
) -> Result<(Orbit, Option<T>)> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if g.n() > ORBIT_BOUND {
        return Err(Error::TooLarge { got: g.n(), bound: ORBIT_BOUND });
    }
    let f0 = canonical_form(g);
    let mut orbit = Orbit {
        forms: vec![f0.clone()],
        members: vec![g.clone()],
        parent: vec![None],
        index: HashMap::from([(f0, 0)]),
        truncated: false,
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if let Some(t) = visit(&orbit, i) {
            return Ok((orbit, Some(t)));
        }
        for (m, h) in gens(&orbit.members[i]) {
            let f = canonical_form(&h);
            if orbit.index.contains_key(&f) {
                continue;
            }
            if orbit.len() >= budget {
                orbit.truncated = true;
                continue;
            }
            let k = orbit.len();
            orbit.index.insert(f.clone(), k);
            orbit.forms.push(f);
            orbit.members.push(h);
            orbit.parent.push(Some((i, m)));
            queue.push_back(k);
        }
    }
    Ok((orbit, None))
}

/// Closure of `g` under loop complementation and both local complementations.
pub fn local_equivalence_orbit(g: &LoopedGraph, budget: usize) -> Result<Orbit> {
    Ok(bfs(g, budget, all_moves, |_, _| None::<()>)?.0)
}

/// Closure of the simple part of `g` under simple local complementation.
pub fn simple_local_orbit(g: &LoopedGraph, budget: usize) -> Result<Orbit> {
    Ok(bfs(&g.simple_part(), budget, simple_moves, |_, _| None::<()>)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMinorWitness {
    pub moves: Vec<Move>,
    pub deleted: Vec<String>,
    /// Pairs `(vertex of the reduced graph, vertex of h)`.
    pub iso: Vec<(String, String)>,
}

impl VertexMinorWitness {
    /// Replays the witness on `g` and confirms the result matches `h`.
    pub fn verify(&self, g: &LoopedGraph, h: &LoopedGraph) -> Result<bool> {
        let mut cur = g.clone();
        for m in &self.moves {
            cur = cur.apply(m)?;
        }
        let red = cur.delete_vertices(&self.deleted)?;
        if red.n() != h.n() || self.iso.len() != h.n() {
            return Ok(false);
        }
        let mut map = vec![usize::MAX; red.n()];
        for (a, b) in &self.iso {
            map[red.index_of(a)?] = h.index_of(b)?;
        }
        Ok((0..red.n()).all(|i| {
            map[i] != usize::MAX
                && red.has_loop(i) == h.has_loop(map[i])
                && (0..red.n()).all(|j| red.adjacent(i, j) == h.adjacent(map[i], map[j]))
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMinorResult {
    pub witness: Option<VertexMinorWitness>,
    /// False when the orbit was truncated and no witness was found.
    pub complete: bool,
    pub orbit_size: usize,
}

fn k_subsets(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, acc: u64, f: &mut dyn FnMut(u64) -> bool) -> bool {
        if k == 0 {
            return f(acc);
        }
        for i in start..=n - k {
            if rec(i + 1, n, k - 1, acc | 1 << i, f) {
                return true;
            }
        }
        false
    }
    rec(0, n, k, 0, &mut f)
}

pub fn has_vertex_minor(g: &LoopedGraph, h: &LoopedGraph, budget: usize) -> Result<VertexMinorResult> {
    if h.n() > g.n() {
        return Ok(VertexMinorResult { witness: None, complete: true, orbit_size: 0 });
    }
    let target = canonical_form(&h.simple_part());
    let k = h.n();
    let hs = h.simple_part();
    let (orbit, found) = bfs(&g.simple_part(), budget, simple_moves, |orbit, i| {
        let m = &orbit.members[i];
        let mut hit = None;
        // keep k vertices, i.e. delete n - k, in lexicographic subset order
        k_subsets(m.n(), k, |keep| {
            let red = m.induced(keep);
            if canonical_form(&red) == target {
                hit = Some(keep);
                true
            } else {
                false
            }
        });
        hit.map(|keep| (i, keep))
    })?;
    let Some((i, keep)) = found else {
        return Ok(VertexMinorResult { witness: None, complete: !orbit.truncated, orbit_size: orbit.len() });
    };
    let member = &orbit.members[i];
    let red = member.induced(keep);
    let map = is_isomorphic(&red, &hs)?.ok_or_else(|| Error::Internal("canonical forms disagree".into()))?;
    let mut moves = orbit.moves_to(i);
    // the orbit was run on the simple part; restore the loops of g, then match h's
    let mut cur = g.clone();
    for mv in &moves {
        cur = cur.apply(mv)?;
    }
    for (a, &hb) in map.iter().enumerate() {
        let label = red.label(a);
        let v = cur.index_of(label)?;
        if cur.has_loop(v) != h.has_loop(hb) {
            moves.push(Move::Loop(label.to_string()));
        }
    }
    let deleted: Vec<String> =
        (0..member.n()).filter(|&v| keep >> v & 1 == 0).map(|v| member.label(v).to_string()).collect();
    let iso = map.iter().enumerate().map(|(a, &b)| (red.label(a).to_string(), h.label(b).to_string())).collect();
    let w = VertexMinorWitness { moves, deleted, iso };
    if !w.verify(g, h)? {
        return Err(Error::Internal("vertex-minor witness does not replay".into()));
    }
    Ok(VertexMinorResult { witness: Some(w), complete: true, orbit_size: orbit.len() })
}

#[cfg(test)]
mod tests {
    use super::super::named_graph;
    use super::*;

    #[test]
    fn single_vertex_orbit_has_two_members() {
        let g = LoopedGraph::new(&["a"]).unwrap();
        let o = local_equivalence_orbit(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(o.len(), 2);
        assert!(!o.truncated);
    }

    #[test]
    fn edge_orbit_is_closed() {
        let g = named_graph("K2").unwrap();
        let o = local_equivalence_orbit(&g, DEFAULT_BUDGET).unwrap();
        for m in &o.members {
            for (_, h) in all_moves(m) {
                assert!(o.contains(&canonical_form(&h)));
            }
        }
        // every replayed path lands in the recorded member
        for i in 0..o.len() {
            let mut cur = g.clone();
            for mv in o.moves_to(i) {
                cur = cur.apply(&mv).unwrap();
            }
            assert_eq!(canonical_form(&cur), o.forms[i]);
        }
    }

    #[test]
    fn orbit_preserves_vertex_count() {
        let g = named_graph("W5").unwrap();
        let o = simple_local_orbit(&g, DEFAULT_BUDGET).unwrap();
        assert!(o.members.iter().all(|m| m.n() == 6));
    }

    #[test]
    fn budget_truncation_is_flagged() {
        let g = named_graph("C_6").unwrap();
        let o = local_equivalence_orbit(&g, 3).unwrap();
        assert!(o.truncated);
        assert_eq!(o.len(), 3);
        assert!(matches!(local_equivalence_orbit(&g, 0), Err(Error::ZeroBudget)));
        let r = has_vertex_minor(&g, &named_graph("W5").unwrap(), 1).unwrap();
        assert!(r.witness.is_none());
    }

    #[test]
    fn graph_is_its_own_vertex_minor() {
        let g = named_graph("BW3").unwrap().loop_complement("h").unwrap();
        let r = has_vertex_minor(&g, &g, DEFAULT_BUDGET).unwrap();
        let w = r.witness.unwrap();
        assert!(w.moves.is_empty() && w.deleted.is_empty());
        assert!(w.verify(&g, &g).unwrap());
    }

    #[test]
    fn looped_target_is_reached_with_loop_moves() {
        let g = named_graph("C_5").unwrap();
        let mut h = named_graph("path_3").unwrap();
        h.add_loop("2").unwrap();
        let w = has_vertex_minor(&g, &h, DEFAULT_BUDGET).unwrap().witness.unwrap();
        assert!(w.verify(&g, &h).unwrap());
        assert!(w.moves.iter().any(|m| matches!(m, Move::Loop(_))));
    }

    #[test]
    fn wheel_has_no_small_cycle_obstruction() {
        // C5 is a circle graph, so it cannot contain W5
        let r = has_vertex_minor(&named_graph("C5").unwrap(), &named_graph("W5").unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(r.witness.is_none() && r.complete);
    }
}
