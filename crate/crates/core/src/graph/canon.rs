//! Canonical forms by colour refinement and individualization.
//!
//! The search explores every leaf of the individualization tree except
//! subtrees known to be images of explored ones under an automorphism that
//! fixes the current prefix (found automorphisms, plus transpositions of
//! twins). The least leaf encoding is therefore a complete invariant.

use serde::{Deserialize, Serialize};

use super::LoopedGraph;
use crate::error::{Error, Result};

pub const ISO_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u8>);

type Cells = Vec<Vec<usize>>;

fn refine(g: &LoopedGraph, mut cells: Cells) -> Cells {
    loop {
        let mut where_ = vec![0usize; g.n()];
        for (ci, c) in cells.iter().enumerate() {
            for &v in c {
                where_[v] = ci;
            }
        }
        let k = cells.len();
        let mut next: Cells = Vec::with_capacity(k);
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    let mut nb = g.neighbors(v);
                    while nb != 0 {
                        let w = nb.trailing_zeros() as usize;
                        nb &= nb - 1;
                        sig[where_[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn initial_cells(g: &LoopedGraph) -> Cells {
    let mut keyed: Vec<((bool, usize), usize)> = (0..g.n()).map(|v| ((g.has_loop(v), g.degree(v)), v)).collect();
    keyed.sort();
    let mut cells: Cells = Vec::new();
    for (i, (key, v)) in keyed.iter().enumerate() {
        if i > 0 && keyed[i - 1].0 == *key {
            cells.last_mut().expect("started").push(*v);
        } else {
            cells.push(vec![*v]);
        }
    }
    cells
}

fn encode(g: &LoopedGraph, perm: &[usize]) -> Vec<u8> {
    let n = perm.len();
    let mut out = Vec::with_capacity(2 + (n * (n + 1) / 2).div_ceil(8));
    out.push((n >> 8) as u8);
    out.push(n as u8);
    let mut acc = 0u8;
    let mut nbits = 0;
    let mut put = |b: bool, out: &mut Vec<u8>| {
        acc = acc << 1 | b as u8;
        nbits += 1;
        if nbits == 8 {
            out.push(acc);
            acc = 0;
            nbits = 0;
        }
    };
    for &v in perm {
        put(g.has_loop(v), &mut out);
    }
    for a in 0..n {
        for b in a + 1..n {
            put(g.adjacent(perm[a], perm[b]), &mut out);
        }
    }
    if nbits > 0 {
        out.push(acc << (8 - nbits));
    }
    out
}

fn twins(g: &LoopedGraph, u: usize, v: usize) -> bool {
    let mask = !(1u64 << u | 1u64 << v);
    g.has_loop(u) == g.has_loop(v) && g.neighbors(u) & mask == g.neighbors(v) & mask
}

struct Search<'a> {
    g: &'a LoopedGraph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let nx = p[y];
        p[y] = r;
        y = nx;
    }
    r
}

impl Search<'_> {
    fn run(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        let Some(ti) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i)
        else {
            let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let enc = encode(self.g, &perm);
            match &self.best {
                Some((b, bp)) if *b == enc => {
                    let mut a = vec![0; perm.len()];
                    for k in 0..perm.len() {
                        a[bp[k]] = perm[k];
                    }
                    self.autos.push(a);
                }
                Some((b, _)) if *b < enc => {}
                _ => self.best = Some((enc, perm)),
            }
            return;
        };
        let target = cells[ti].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            // orbits of the stabiliser of the prefix, as far as it is known
            let n = self.g.n();
            let mut uf: Vec<usize> = (0..n).collect();
            for a in &self.autos {
                if prefix.iter().all(|&p| a[p] == p) {
                    for x in 0..n {
                        let (rx, ry) = (find(&mut uf, x), find(&mut uf, a[x]));
                        uf[rx] = ry;
                    }
                }
            }
            for &u in &target {
                if u != v && twins(self.g, u, v) {
                    let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
                    uf[ru] = rv;
                }
            }
            let rv = find(&mut uf, v);
            if explored.iter().any(|&e| find(&mut uf, e) == rv) {
                continue;
            }
            explored.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = target.iter().copied().filter(|&x| x != v).collect();
            next.splice(ti..=ti, [vec![v], rest]);
            let next = refine(self.g, next);
            prefix.push(v);
            self.run(next, prefix);
            prefix.pop();
        }
    }
}

/// Canonical form and a canonical ordering: position `k` of the ordering
/// holds the vertex placed `k`-th.
pub fn canonical_labeling(g: &LoopedGraph) -> (CanonicalForm, Vec<usize>) {
    if g.n() == 0 {
        return (CanonicalForm(vec![0, 0]), Vec::new());
    }
    let mut s = Search { g, best: None, autos: Vec::new() };
    let cells = refine(g, initial_cells(g));
    s.run(cells, &mut Vec::new());
    let (enc, perm) = s.best.expect("at least one leaf");
    (CanonicalForm(enc), perm)
}

pub fn canonical_form(g: &LoopedGraph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// A bijection `map` with `map[i]` the vertex of `h` matched to vertex `i`
/// of `g`, preserving adjacency and loops.
pub fn is_isomorphic(g: &LoopedGraph, h: &LoopedGraph) -> Result<Option<Vec<usize>>> {
    for x in [g, h] {
        if x.n() > ISO_BOUND {
            return Err(Error::TooLarge { got: x.n(), bound: ISO_BOUND });
        }
    }
    if g.n() != h.n() || g.edge_count() != h.edge_count() || g.loop_mask().count_ones() != h.loop_mask().count_ones() {
        return Ok(None);
    }
    let (cg, pg) = canonical_labeling(g);
    let (ch, ph) = canonical_labeling(h);
    if cg != ch {
        return Ok(None);
    }
    let mut map = vec![0; g.n()];
    for k in 0..g.n() {
        map[pg[k]] = ph[k];
    }
    Ok(Some(map))
}

/// Largest `n` for `simple_graphs_up_to_iso`.
pub const ENUMERATION_BOUND: usize = 6;

/// One simple graph on vertices `0..n` per isomorphism class, in order of
/// first appearance over edge masks.
pub fn simple_graphs_up_to_iso(n: usize) -> Result<Vec<LoopedGraph>> {
    if n > ENUMERATION_BOUND {
        return Err(Error::TooLarge { got: n, bound: ENUMERATION_BOUND });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for m in 0u64..1 << pairs.len() {
        let mut adj = vec![0u64; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if m >> i & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        let g = LoopedGraph::from_masks(&adj, 0);
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::arb_graph;
    use super::*;
    use proptest::prelude::*;

    fn exhaustive_iso(g: &LoopedGraph, h: &LoopedGraph) -> bool {
        if g.n() != h.n() {
            return false;
        }
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(k: usize, perm: &mut Vec<usize>, g: &LoopedGraph, h: &LoopedGraph) -> bool {
            if k == perm.len() {
                return (0..perm.len()).all(|i| {
                    g.has_loop(i) == h.has_loop(perm[i])
                        && (0..perm.len()).all(|j| g.adjacent(i, j) == h.adjacent(perm[i], perm[j]))
                });
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                if rec(k + 1, perm, g, h) {
                    return true;
                }
                perm.swap(k, i);
            }
            false
        }
        rec(0, &mut perm, g, h)
    }

    fn check_map(g: &LoopedGraph, h: &LoopedGraph, map: &[usize]) -> bool {
        (0..g.n()).all(|i| {
            g.has_loop(i) == h.has_loop(map[i]) && (0..g.n()).all(|j| g.adjacent(i, j) == h.adjacent(map[i], map[j]))
        })
    }

    #[test]
    fn symmetric_graphs_are_fast_and_correct() {
        for name in ["K_12", "C_12", "W7", "BW3"] {
            let g = super::super::named_graph(name).unwrap();
            let m = is_isomorphic(&g, &g).unwrap().unwrap();
            assert!(check_map(&g, &g, &m));
        }
        let empty = LoopedGraph::from_masks(&[0; 12], 0);
        assert!(is_isomorphic(&empty, &empty).unwrap().is_some());
    }

    #[test]
    fn cycle_is_not_a_path() {
        let c = super::super::named_graph("C_5").unwrap();
        let p = super::super::named_graph("path_5").unwrap();
        assert_eq!(is_isomorphic(&c, &p).unwrap(), None);
    }

    #[test]
    fn bound_is_enforced() {
        let g = LoopedGraph::from_masks(&[0; 13], 0);
        assert!(matches!(is_isomorphic(&g, &g), Err(Error::TooLarge { .. })));
    }

    fn shuffled(g: &LoopedGraph, seed: u64) -> LoopedGraph {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut adj = vec![0u64; n];
        let mut loops = 0;
        for i in 0..n {
            if g.has_loop(i) {
                loops |= 1 << perm[i];
            }
            for j in 0..n {
                if g.adjacent(i, j) {
                    adj[perm[i]] |= 1 << perm[j];
                }
            }
        }
        LoopedGraph::from_masks(&adj, loops)
    }

    proptest! {
        #[test]
        fn canonical_form_is_invariant(g in arb_graph(9), seed in any::<u64>()) {
            let h = shuffled(&g, seed);
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
            let m = is_isomorphic(&g, &h).unwrap().unwrap();
            prop_assert!(check_map(&g, &h, &m));
        }

        #[test]
        fn canonical_form_separates(g in arb_graph(6), h in arb_graph(6)) {
            let same = canonical_form(&g) == canonical_form(&h);
            prop_assert_eq!(same, exhaustive_iso(&g, &h));
        }
    }
}
