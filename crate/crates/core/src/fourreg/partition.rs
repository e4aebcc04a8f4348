//! Transitions, circuit partitions, touch-graphs and shadows.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{EulerSystem, FourRegular, HalfEdge, OrientedFundamentalCircuits, Traversal};
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitionKind {
    Phi,
    Chi,
    Psi,
}

impl TransitionKind {
    pub const ALL: [TransitionKind; 3] = [TransitionKind::Phi, TransitionKind::Chi, TransitionKind::Psi];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            TransitionKind::Phi => "phi",
            TransitionKind::Chi => "chi",
            TransitionKind::Psi => "psi",
        }
    }
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A pairing of the four half-edges at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub vertex: usize,
    pub pairs: [[HalfEdge; 2]; 2],
}

impl Transition {
    pub fn new(vertex: usize, a: [HalfEdge; 2], b: [HalfEdge; 2]) -> Self {
        let s = |p: [HalfEdge; 2]| if p[0] <= p[1] { p } else { [p[1], p[0]] };
        let (a, b) = (s(a), s(b));
        let pairs = if a <= b { [a, b] } else { [b, a] };
        Transition { vertex, pairs }
    }

    /// The transition of the given kind relative to `c`: with passages
    /// `(i1, o1)` and `(i2, o2)` at `v`, φ pairs each passage, χ crosses
    /// them, and ψ pairs the two entering half-edges.
    pub fn of_kind(c: &EulerSystem, v: usize, kind: TransitionKind) -> Self {
        let (ci, [p1, p2]) = c.occurrences(v);
        let (i1, o1) = c.passage(ci, p1);
        let (i2, o2) = c.passage(ci, p2);
        match kind {
            TransitionKind::Phi => Transition::new(v, [i1, o1], [i2, o2]),
            TransitionKind::Chi => Transition::new(v, [i1, o2], [i2, o1]),
            TransitionKind::Psi => Transition::new(v, [i1, i2], [o1, o2]),
        }
    }

    pub fn kind(&self, c: &EulerSystem) -> TransitionKind {
        TransitionKind::ALL
            .into_iter()
            .find(|&k| Transition::of_kind(c, self.vertex, k) == *self)
            .expect("the three pairings are exhausted")
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        for p in self.pairs {
            if p[0] == h {
                return p[1];
            }
            if p[1] == h {
                return p[0];
            }
        }
        panic!("half-edge {h} is not at vertex {}", self.vertex)
    }
}

/// Edge-disjoint closed trails determined by one transition per vertex.
#[derive(Clone, Debug)]
pub struct CircuitPartition {
    graph: Arc<FourRegular>,
    transitions: Vec<Transition>,
    partner: Vec<HalfEdge>,
    circuits: Vec<Vec<Traversal>>,
    circuit_of: Vec<usize>,
}

pub fn circuit_partition(f: &Arc<FourRegular>, chosen: Vec<Transition>) -> Result<CircuitPartition> {
    if chosen.len() != f.n() {
        return Err(Error::Structure(format!("{} transitions for {} vertices", chosen.len(), f.n())));
    }
    let mut partner = vec![usize::MAX; 2 * f.edge_count()];
    for (v, t) in chosen.iter().enumerate() {
        let mut hs: Vec<HalfEdge> = t.pairs.iter().flatten().copied().collect();
        hs.sort();
        let mut at = f.half_edges_at(v).to_vec();
        at.sort();
        if t.vertex != v || hs != at {
            return Err(Error::Structure(format!("transition {} does not pair the half-edges at `{}`", v, f.label(v))));
        }
        for p in t.pairs {
            partner[p[0]] = p[1];
            partner[p[1]] = p[0];
        }
    }
    let mut circuit_of = vec![usize::MAX; partner.len()];
    let mut circuits = Vec::new();
    for h0 in 0..partner.len() {
        if circuit_of[h0] != usize::MAX {
            continue;
        }
        let id = circuits.len();
        let mut circ = Vec::new();
        let mut h = h0;
        loop {
            let t = Traversal { edge: h / 2, forward: h % 2 == 0 };
            circuit_of[t.tail()] = id;
            circuit_of[t.head()] = id;
            circ.push(t);
            h = partner[t.head()];
            if h == h0 {
                break;
            }
        }
        circuits.push(circ);
    }
    Ok(CircuitPartition { graph: f.clone(), transitions: chosen, partner, circuits, circuit_of })
}

impl CircuitPartition {
    pub fn from_kinds(c: &EulerSystem, kinds: &[TransitionKind]) -> Result<Self> {
        if kinds.len() != c.n() {
            return Err(Error::Structure(format!("{} kinds for {} vertices", kinds.len(), c.n())));
        }
        let ts = kinds.iter().enumerate().map(|(v, &k)| Transition::of_kind(c, v, k)).collect();
        circuit_partition(c.graph_arc(), ts)
    }

    /// The partition `C` itself.
    pub fn of_euler_system(c: &EulerSystem) -> Self {
        CircuitPartition::from_kinds(c, &vec![TransitionKind::Phi; c.n()]).expect("well formed")
    }

    pub fn graph(&self) -> &Arc<FourRegular> {
        &self.graph
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, v: usize) -> Transition {
        self.transitions[v]
    }

    pub fn circuits(&self) -> &[Vec<Traversal>] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        self.partner[h]
    }

    pub fn circuit_of(&self, h: HalfEdge) -> usize {
        self.circuit_of[h]
    }

    pub fn touch_graph(&self, d: &Direction) -> TouchGraph {
        let ends = (0..self.graph.n())
            .map(|v| {
                let init = d.initial[v];
                let other = self.transitions[v].pairs.iter().flatten().copied().find(|&h| h != init && self.partner[init] != h);
                (self.circuit_of[init], self.circuit_of[other.expect("four half-edges")])
            })
            .collect();
        TouchGraph { vertices: self.circuits.len(), ends }
    }
}

/// A directed version of a touch-graph: for each vertex `v` of `F`, some
/// half-edge of the pair of `P(v)` that is initial on `e_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub initial: Vec<HalfEdge>,
}

impl Direction {
    /// Initial pair is the one holding the lowest half-edge id at each vertex.
    pub fn default_for(f: &FourRegular) -> Self {
        Direction { initial: (0..f.n()).map(|v| *f.half_edges_at(v).iter().min().expect("four")).collect() }
    }

    /// `D_Γ`: the initial pair at `v` holds the half-edge by which `C_Γ(v)`
    /// enters `v`.
    pub fn from_gamma(c: &EulerSystem, gamma: &OrientedFundamentalCircuits) -> Self {
        Direction { initial: (0..c.n()).map(|v| gamma.entering_half_edge(c, v)).collect() }
    }

    /// Same direction with `e_v` reversed in `p`.
    pub fn reversed_at(&self, p: &CircuitPartition, v: usize) -> Self {
        let t = p.transition(v);
        let init = self.initial[v];
        let other = t.pairs.iter().flatten().copied().find(|&h| h != init && t.partner(init) != h).expect("four");
        let mut out = self.clone();
        out.initial[v] = other;
        out
    }

    fn is_initial(&self, p: &CircuitPartition, v: usize, h: HalfEdge) -> bool {
        let i = self.initial[v];
        i == h || p.partner(i) == h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TouchGraph {
    pub vertices: usize,
    /// `(tail, head)` circuit indices of `e_v`, indexed by `v`.
    pub ends: Vec<(usize, usize)>,
}

impl TouchGraph {
    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn loops(&self) -> usize {
        self.ends.iter().filter(|(a, b)| a == b).count()
    }

    pub fn components(&self) -> usize {
        let mut p: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut comps = self.vertices;
        for &(a, b) in &self.ends {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            if ra != rb {
                p[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }
}

/// Integer basis of the cycle space of `tg`, one fundamental cycle per
/// edge outside a breadth-first spanning forest.
pub fn cycle_space_basis(tg: &TouchGraph) -> Vec<Vec<i64>> {
    let m = tg.ends.len();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); tg.vertices];
    for (e, &(a, b)) in tg.ends.iter().enumerate() {
        incident[a].push((e, b));
        if a != b {
            incident[b].push((e, a));
        }
    }
    // parent edge of each vertex in the forest
    let mut parent: Vec<Option<usize>> = vec![None; tg.vertices];
    let mut depth = vec![usize::MAX; tg.vertices];
    let mut tree = vec![false; m];
    for s in 0..tg.vertices {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(e, y) in &incident[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some(e);
                    tree[e] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let other = |e: usize, x: usize| if tg.ends[e].0 == x { tg.ends[e].1 } else { tg.ends[e].0 };
    let mut basis = Vec::new();
    for e in (0..m).filter(|&e| !tree[e]) {
        let mut z = vec![0i64; m];
        z[e] += 1;
        // walk from head back to tail through the forest
        let (tail, head) = tg.ends[e];
        let (mut x, mut y) = (head, tail);
        let mut up_x = Vec::new();
        let mut up_y = Vec::new();
        while x != y {
            if depth[x] >= depth[y] {
                let pe = parent[x].expect("not a root");
                up_x.push((pe, x));
                x = other(pe, x);
            } else {
                let pe = parent[y].expect("not a root");
                up_y.push((pe, y));
                y = other(pe, y);
            }
        }
        // head -> lca: leave each vertex along its parent edge
        for (pe, from) in up_x {
            z[pe] += if tg.ends[pe].0 == from { 1 } else { -1 };
        }
        // lca -> tail: the reverse of climbing from the tail
        for (pe, from) in up_y {
            z[pe] += if tg.ends[pe].0 == from { -1 } else { 1 };
        }
        basis.push(z);
    }
    basis
}

/// The tally `z_D(π_P(w))`, indexed by the vertices of `F`.
pub fn shadow_vector(walk: &[Traversal], p: &CircuitPartition, d: &Direction) -> Result<Vec<i64>> {
    let f = &p.graph;
    if walk.is_empty() {
        return Err(Error::BadWalk("empty walk".into()));
    }
    let mut seen = vec![false; f.edge_count()];
    for t in walk {
        if t.edge >= seen.len() || std::mem::replace(&mut seen[t.edge], true) {
            return Err(Error::BadWalk(format!("edge {} repeated or unknown", t.edge)));
        }
    }
    let mut z = vec![0i64; f.n()];
    for i in 0..walk.len() {
        let h_in = walk[(i + walk.len() - 1) % walk.len()].head();
        let h_out = walk[i].tail();
        let v = f.vertex_of(h_in);
        if f.vertex_of(h_out) != v {
            return Err(Error::BadWalk(format!("walk breaks before traversal {i}")));
        }
        if p.partner(h_in) == h_out {
            continue;
        }
        z[v] += if d.is_initial(p, v, h_in) { 1 } else { -1 };
    }
    Ok(z)
}

/// `M_{R,Γ}(C,P,D)`: row `v` is the shadow of `C_Γ(v)`.
pub fn m_matrix(
    c: &EulerSystem,
    gamma: &OrientedFundamentalCircuits,
    p: &CircuitPartition,
    d: &Direction,
) -> Result<ExactMatrix> {
    if **c.graph_arc() != **p.graph() {
        return Err(Error::Structure("Euler system and circuit partition live on different graphs".into()));
    }
    let rows = (0..c.n()).map(|v| shadow_vector(&gamma.walk(c, v), p, d)).collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_ints(c.graph().labels(), c.graph().labels(), &rows, FieldSpec::Rational)
}

#[cfg(test)]
mod tests {
    use super::super::tests::all_dows;
    use super::super::{parse_dow, FourRegular};
    use super::*;
    use crate::exactalg::field::rat;

    /// The triangle with doubled edges, `C = a e1 b e2 c e3 a e4 b e5 c e6`.
    fn triangle() -> EulerSystem {
        parse_dow(&["abcabc"]).unwrap()
    }

    fn he(edge_1based: usize, at_head: bool) -> HalfEdge {
        2 * (edge_1based - 1) + at_head as usize
    }

    #[test]
    fn det_three_counterexample() {
        let c = triangle();
        use TransitionKind::*;
        let p = CircuitPartition::from_kinds(&c, &[Chi, Chi, Psi]).unwrap();
        assert_eq!(p.len(), 1);
        // Γ = {e1e2e3, e5e6e1, e3e4e5}
        let gamma = OrientedFundamentalCircuits::from_edge_sequences(&c, &[vec![0, 1, 2], vec![4, 5, 0], vec![2, 3, 4]])
            .unwrap();
        assert!(gamma.is_consistent() && gamma.base().is_none());
        // initial pairs {e1,e3} at a, {e1,e5} at b, {e2,e5} at c
        let d = Direction { initial: vec![he(1, false), he(1, true), he(2, true)] };
        let t = p.transitions();
        assert_eq!(t[0].partner(he(1, false)), he(3, true));
        assert_eq!(t[1].partner(he(1, true)), he(5, false));
        assert_eq!(t[2].partner(he(2, true)), he(5, true));
        let m = m_matrix(&c, &gamma, &p, &d).unwrap();
        let expect = ExactMatrix::from_ints(&["a", "b", "c"], &["a", "b", "c"], &[vec![0, 1, 1], vec![-1, 0, 1], vec![1, -1, 1]], FieldSpec::Rational).unwrap();
        assert_eq!(m, expect);
        assert_eq!(m.determinant().unwrap(), rat(3));
    }

    #[test]
    fn euler_system_partition_gives_identity_and_loops() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let gamma = OrientedFundamentalCircuits::based(&c, &c.wrap_edges()).unwrap();
        let p = CircuitPartition::of_euler_system(&c);
        assert_eq!(p.len(), 1);
        let d = Direction::from_gamma(&c, &gamma);
        let tg = p.touch_graph(&d);
        assert_eq!(tg.loops(), 4);
        let m = m_matrix(&c, &gamma, &p, &d).unwrap();
        assert_eq!(m, ExactMatrix::identity(c.graph().labels(), FieldSpec::Rational));
        // the shadow of a circuit of P stands still
        assert!(shadow_vector(&c.circuits()[0], &p, &d).unwrap().iter().all(|&x| x == 0));
    }

    #[test]
    fn fundamental_shadow_in_tch_c_is_unit() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let gamma = OrientedFundamentalCircuits::based(&c, &c.wrap_edges()).unwrap();
        let p = CircuitPartition::of_euler_system(&c);
        let d = Direction::default_for(c.graph());
        for v in 0..4 {
            let z = shadow_vector(&gamma.walk(&c, v), &p, &d).unwrap();
            for (w, &x) in z.iter().enumerate() {
                assert_eq!(x.abs(), (v == w) as i64);
            }
        }
    }

    #[test]
    fn shadow_rejects_bad_walks() {
        let c = parse_dow(&["abab"]).unwrap();
        let p = CircuitPartition::of_euler_system(&c);
        let d = Direction::default_for(c.graph());
        let t = c.circuits()[0].clone();
        assert!(shadow_vector(&[t[0], t[0]], &p, &d).is_err());
        assert!(shadow_vector(&[t[0], t[2]], &p, &d).is_err());
        assert!(shadow_vector(&[], &p, &d).is_err());
    }

    #[test]
    fn sign_flips_under_reversal() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let gamma = OrientedFundamentalCircuits::based(&c, &[c.edge_by_name("ad").unwrap()]).unwrap();
        use TransitionKind::*;
        let p = CircuitPartition::from_kinds(&c, &[Chi, Psi, Phi, Chi]).unwrap();
        let d = Direction::from_gamma(&c, &gamma);
        let m = m_matrix(&c, &gamma, &p, &d).unwrap().to_i64().unwrap();
        for v in 0..4 {
            let r = m_matrix(&c, &gamma.with_reversed(v), &p, &d).unwrap().to_i64().unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(r[i][j], if i == v { -m[i][j] } else { m[i][j] });
                }
            }
            let dc = m_matrix(&c, &gamma, &p, &d.reversed_at(&p, v)).unwrap().to_i64().unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(dc[i][j], if j == v { -m[i][j] } else { m[i][j] });
                }
            }
        }
    }

    fn all_kind_vectors(n: usize) -> Vec<Vec<TransitionKind>> {
        (0..3usize.pow(n as u32))
            .map(|mut x| {
                (0..n)
                    .map(|_| {
                        let k = TransitionKind::ALL[x % 3];
                        x /= 3;
                        k
                    })
                    .collect()
            })
            .collect()
    }

    fn in_span(basis: &[Vec<i64>], z: &[i64], field: FieldSpec) -> bool {
        let mut rows = basis.to_vec();
        let r0 = if rows.is_empty() { 0 } else { ExactMatrix::from_grid(&rows, field).unwrap().rank(None).unwrap() };
        rows.push(z.to_vec());
        ExactMatrix::from_grid(&rows, field).unwrap().rank(None).unwrap() == r0
    }

    #[test]
    fn example_graph_partition_sizes() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let mut sizes = std::collections::BTreeSet::new();
        for ks in all_kind_vectors(4) {
            sizes.insert(CircuitPartition::from_kinds(&c, &ks).unwrap().len());
        }
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn rows_span_the_touch_graph_cycle_space() {
        // the rows of M lie in, and span, the cycle space of the directed touch-graph,
        // and other closed walks shadow into it as well
        for n in 1..=4 {
            for w in all_dows(n) {
                let c = parse_dow(&[&w]).unwrap();
                let gamma = OrientedFundamentalCircuits::based(&c, &c.wrap_edges()).unwrap();
                for ks in all_kind_vectors(n) {
                    let p = CircuitPartition::from_kinds(&c, &ks).unwrap();
                    let d = Direction::default_for(c.graph());
                    let tg = p.touch_graph(&d);
                    assert_eq!(tg.vertices, p.len());
                    assert_eq!(tg.edge_count(), n);
                    assert_eq!(tg.components(), c.graph().components());
                    let basis = cycle_space_basis(&tg);
                    assert_eq!(basis.len(), n + 1 - p.len());
                    let m = m_matrix(&c, &gamma, &p, &d).unwrap();
                    let rows = m.to_i64().unwrap();
                    for field in [FieldSpec::Gf2, FieldSpec::Gfp(3), FieldSpec::Gfp(5), FieldSpec::Rational] {
                        for r in &rows {
                            assert!(in_span(&basis, r, field));
                        }
                        assert_eq!(m.reduce_to(field).unwrap().rank(None).unwrap(), basis.len());
                    }
                    // the Euler circuit and the circuits of P are closed walks too
                    for walk in c.circuits().iter().chain(p.circuits()) {
                        let z = shadow_vector(walk, &p, &d).unwrap();
                        for field in [FieldSpec::Gf2, FieldSpec::Gfp(3), FieldSpec::Gfp(5)] {
                            assert!(in_span(&basis, &z, field));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_vertex_contraction_of_touch_graphs() {
        // P and P' differing at v with |P'| = |P| - 1: Tch(P') is Tch(P) with e_v contracted to a loop
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let d0 = Direction::default_for(c.graph());
        let mut checked = 0;
        for ks in all_kind_vectors(4) {
            let p = CircuitPartition::from_kinds(&c, &ks).unwrap();
            for v in 0..4 {
                for k in TransitionKind::ALL {
                    let mut ks2 = ks.clone();
                    ks2[v] = k;
                    let q = CircuitPartition::from_kinds(&c, &ks2).unwrap();
                    if q.len() + 1 != p.len() {
                        continue;
                    }
                    let tp = p.touch_graph(&d0);
                    let d1 = Direction::default_for(c.graph());
                    let tq = q.touch_graph(&d1);
                    let map: Vec<usize> = p.circuits().iter().map(|circ| q.circuit_of(circ[0].tail())).collect();
                    let (a, b) = tp.ends[v];
                    assert_ne!(a, b);
                    assert_eq!(tq.ends[v].0, tq.ends[v].1);
                    assert_eq!(map[a], map[b]);
                    for w in (0..4).filter(|&w| w != v) {
                        let (x, y) = tp.ends[w];
                        let mut e1 = [map[x], map[y]];
                        let mut e2 = [tq.ends[w].0, tq.ends[w].1];
                        e1.sort();
                        e2.sort();
                        assert_eq!(e1, e2);
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn transition_labels_survive_reversal() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let rev: Vec<Traversal> = c.circuits()[0].iter().rev().map(|t| t.reversed()).collect();
        let r = EulerSystem::new(c.graph_arc().clone(), vec![rev]).unwrap();
        for v in 0..4 {
            for k in TransitionKind::ALL {
                assert_eq!(Transition::of_kind(&c, v, k).kind(&r), k);
            }
        }
    }

    #[test]
    fn four_regular_rejects_wrong_degrees() {
        assert!(FourRegular::new(&["a", "b"], &[(0, 1), (0, 1)]).is_err());
    }
}
