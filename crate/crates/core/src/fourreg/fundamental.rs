//! Oriented fundamental circuits `C_Γ(v)`.

use super::{EulerSystem, HalfEdge, Traversal};
use crate::error::{Error, Result};

/// The segment of `v`'s circuit leaving `v` at position `start` and running
/// `len` traversals forward to `v`'s other position. `reversed` walks it
/// against the orientation of `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FundamentalCircuit {
    pub vertex: usize,
    pub circuit: usize,
    pub start: usize,
    pub len: usize,
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedFundamentalCircuits {
    circuits: Vec<FundamentalCircuit>,
    base: Option<Vec<usize>>,
}

impl OrientedFundamentalCircuits {
    /// Circuits avoiding the base edges, oriented along `C`. `base` must
    /// hold exactly one edge of each component.
    pub fn based(c: &EulerSystem, base: &[usize]) -> Result<Self> {
        let comps = c.circuits().len();
        let mut pos_of_base = vec![None; comps];
        for &e in base {
            let found = c
                .circuits()
                .iter()
                .enumerate()
                .find_map(|(ci, circ)| circ.iter().position(|t| t.edge == e).map(|p| (ci, p)));
            let Some((ci, p)) = found else {
                return Err(Error::BadBase(format!("edge {e} does not exist")));
            };
            if pos_of_base[ci].replace(p).is_some() {
                return Err(Error::BadBase(format!("two base edges in component {}", ci + 1)));
            }
        }
        if let Some(ci) = pos_of_base.iter().position(Option::is_none) {
            return Err(Error::BadBase(format!("component {} has no base edge", ci + 1)));
        }
        let circuits = (0..c.n())
            .map(|v| {
                let (ci, [p1, p2]) = c.occurrences(v);
                let b = pos_of_base[ci].expect("checked");
                let len = c.circuits()[ci].len();
                // traversals p1..p2 avoid the base unless it lies between them
                if p1 <= b && b < p2 {
                    FundamentalCircuit { vertex: v, circuit: ci, start: p2, len: len - (p2 - p1), reversed: false }
                } else {
                    FundamentalCircuit { vertex: v, circuit: ci, start: p1, len: p2 - p1, reversed: false }
                }
            })
            .collect();
        Ok(OrientedFundamentalCircuits { circuits, base: Some(base.to_vec()) })
    }

    /// Explicit choice per vertex: `(position the circuit leaves v from,
    /// reversed)`. The position must be one of `v`'s two positions.
    pub fn explicit(c: &EulerSystem, choices: &[(usize, bool)]) -> Result<Self> {
        if choices.len() != c.n() {
            return Err(Error::Structure(format!("{} choices for {} vertices", choices.len(), c.n())));
        }
        let circuits = choices
            .iter()
            .enumerate()
            .map(|(v, &(start, reversed))| {
                let (ci, [p1, p2]) = c.occurrences(v);
                let len = c.circuits()[ci].len();
                let seg = if start == p1 {
                    p2 - p1
                } else if start == p2 {
                    len - (p2 - p1)
                } else {
                    return Err(Error::Structure(format!(
                        "position {start} is not an occurrence of `{}`",
                        c.graph().label(v)
                    )));
                };
                Ok(FundamentalCircuit { vertex: v, circuit: ci, start, len: seg, reversed })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrientedFundamentalCircuits { circuits, base: None })
    }

    /// Explicit circuits given as edge sequences starting at each vertex,
    /// e.g. `[[0, 1, 2], ...]`; orientation follows `C` or its reverse.
    pub fn from_edge_sequences(c: &EulerSystem, seqs: &[Vec<usize>]) -> Result<Self> {
        let mut choices = Vec::with_capacity(c.n());
        for (v, seq) in seqs.iter().enumerate() {
            let (ci, ps) = c.occurrences(v);
            let circ = &c.circuits()[ci];
            let mut hit = None;
            for &p in &ps {
                for reversed in [false, true] {
                    let len = if p == ps[0] { ps[1] - ps[0] } else { circ.len() - (ps[1] - ps[0]) };
                    let mut edges: Vec<usize> = c.segment(ci, p, len).iter().map(|t| t.edge).collect();
                    if reversed {
                        edges.reverse();
                    }
                    if edges == *seq {
                        hit = Some((p, reversed));
                    }
                }
            }
            choices.push(hit.ok_or_else(|| {
                Error::Structure(format!("edges {seq:?} are not a fundamental circuit at `{}`", c.graph().label(v)))
            })?);
        }
        OrientedFundamentalCircuits::explicit(c, &choices)
    }

    pub fn get(&self, v: usize) -> FundamentalCircuit {
        self.circuits[v]
    }

    pub fn base(&self) -> Option<&[usize]> {
        self.base.as_deref()
    }

    pub fn is_consistent(&self) -> bool {
        self.circuits.iter().all(|f| !f.reversed)
    }

    /// Flips the orientation of `C_Γ(v)`.
    pub fn with_reversed(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.circuits[v].reversed ^= true;
        out.base = None;
        out
    }

    /// The closed walk `C_Γ(v)` in its orientation.
    pub fn walk(&self, c: &EulerSystem, v: usize) -> Vec<Traversal> {
        let f = self.circuits[v];
        let mut seg = c.segment(f.circuit, f.start, f.len);
        if f.reversed {
            seg = seg.into_iter().rev().map(Traversal::reversed).collect();
        }
        seg
    }

    /// Position of the passage `v⁻` (where the segment leaves `v` along `C`).
    pub fn minus_position(&self, v: usize) -> usize {
        self.circuits[v].start
    }

    /// Position of `v⁺`.
    pub fn plus_position(&self, c: &EulerSystem, v: usize) -> usize {
        let f = self.circuits[v];
        (f.start + f.len) % c.circuits()[f.circuit].len()
    }

    /// Positions strictly inside the segment of `v`.
    pub fn interior_positions(&self, c: &EulerSystem, v: usize) -> Vec<usize> {
        let f = self.circuits[v];
        let len = c.circuits()[f.circuit].len();
        (1..f.len).map(|k| (f.start + k) % len).collect()
    }

    /// The half-edge by which the walk `C_Γ(v)` enters `v` at its end.
    pub fn entering_half_edge(&self, c: &EulerSystem, v: usize) -> HalfEdge {
        self.walk(c, v).last().expect("nonempty").head()
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_dow;
    use super::*;

    #[test]
    fn based_circuit_of_a_on_example_word() {
        let c = parse_dow(&["abcdbacd"]).unwrap();
        let g = OrientedFundamentalCircuits::based(&c, &[c.edge_by_name("ad").unwrap()]).unwrap();
        let a = c.graph().index_of("a").unwrap();
        let inner: Vec<&str> = g.interior_positions(&c, a).iter().map(|&p| c.graph().label(c.vertex_at(0, p))).collect();
        assert_eq!(inner, vec!["b", "c", "d", "b"]);
    }

    #[test]
    fn adjacent_occurrences_give_a_loop_segment() {
        let c = parse_dow(&["abba"]).unwrap();
        let g = OrientedFundamentalCircuits::based(&c, &c.wrap_edges()).unwrap();
        let b = c.graph().index_of("b").unwrap();
        assert_eq!(g.get(b).len, 1);
        assert!(g.interior_positions(&c, b).is_empty());
    }

    #[test]
    fn two_segments_partition_the_component() {
        let c = parse_dow(&["abcdbacd", "xyxy"]).unwrap();
        for v in 0..c.n() {
            let (_, [p1, p2]) = c.occurrences(v);
            let a = OrientedFundamentalCircuits::explicit(
                &c,
                &(0..c.n()).map(|u| (c.occurrences(u).1[0], false)).collect::<Vec<_>>(),
            )
            .unwrap();
            let mut choices: Vec<(usize, bool)> = (0..c.n()).map(|u| (c.occurrences(u).1[0], false)).collect();
            choices[v].0 = p2;
            let b = OrientedFundamentalCircuits::explicit(&c, &choices).unwrap();
            let mut edges: Vec<usize> = a.walk(&c, v).iter().chain(b.walk(&c, v).iter()).map(|t| t.edge).collect();
            edges.sort();
            let (ci, _) = c.occurrences(v);
            let mut comp: Vec<usize> = c.circuits()[ci].iter().map(|t| t.edge).collect();
            comp.sort();
            assert_eq!(edges, comp);
            assert_ne!(p1, p2);
        }
    }

    #[test]
    fn base_must_be_one_per_component() {
        let c = parse_dow(&["abab", "cc"]).unwrap();
        assert!(OrientedFundamentalCircuits::based(&c, &[0]).is_err());
        assert!(OrientedFundamentalCircuits::based(&c, &[0, 1]).is_err());
        assert!(OrientedFundamentalCircuits::based(&c, &[0, 4]).is_ok());
    }
}
