//! Isotropic matroids `M[IAS(G)]`, the multimatroids `Z₃(G)` and `Z₂(G)`,
//! and sheltering checks for candidate representations.

mod standard;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{ColumnBasis, ExactMatrix, FieldSpec};
use crate::fourreg::TransitionKind;
use crate::graph::LoopedGraph;
use crate::multimatroid::SemiMultimatroid;

pub use standard::{contract_vertex, normalize_three, standardize_two, Normalized, Standardized};

/// Largest graph `shelters` will sweep.
pub const SHELTER_BOUND: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundElement {
    pub vertex: usize,
    pub kind: TransitionKind,
}

impl GroundElement {
    pub fn label(&self, g: &LoopedGraph) -> String {
        element_label(self.kind, g.label(self.vertex))
    }
}

/// Column label such as `chi(b)`.
pub fn element_label(kind: TransitionKind, vertex: &str) -> String {
    format!("{kind}({vertex})")
}

/// At most one element per vertex, stored as an optional kind per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subtransversal {
    choice: Vec<Option<TransitionKind>>,
}

impl Subtransversal {
    pub fn empty(n: usize) -> Self {
        Subtransversal { choice: vec![None; n] }
    }

    pub fn transversal(kinds: &[TransitionKind]) -> Self {
        Subtransversal { choice: kinds.iter().map(|&k| Some(k)).collect() }
    }

    pub fn from_choices(choice: Vec<Option<TransitionKind>>) -> Self {
        Subtransversal { choice }
    }

    pub fn from_elements(n: usize, elems: &[GroundElement]) -> Result<Self> {
        let mut s = Subtransversal::empty(n);
        for e in elems {
            if e.vertex >= n {
                return Err(Error::UnknownVertex(e.vertex.to_string()));
            }
            if s.choice[e.vertex].replace(e.kind).is_some() {
                return Err(Error::NotSubtransversal(format!("two elements at vertex {}", e.vertex)));
            }
        }
        Ok(s)
    }

    /// Parses labels like `phi(a)` against the vertices of `g`.
    pub fn from_labels<S: AsRef<str>>(g: &LoopedGraph, labels: &[S]) -> Result<Self> {
        let mut elems = Vec::new();
        for l in labels {
            let l = l.as_ref();
            let (k, rest) = l
                .split_once('(')
                .and_then(|(k, r)| r.strip_suffix(')').map(|r| (k, r)))
                .ok_or_else(|| Error::UnknownColumn(l.to_string()))?;
            let kind = match k {
                "phi" => TransitionKind::Phi,
                "chi" => TransitionKind::Chi,
                "psi" => TransitionKind::Psi,
                _ => return Err(Error::UnknownColumn(l.to_string())),
            };
            elems.push(GroundElement { vertex: g.index_of(rest)?, kind });
        }
        Subtransversal::from_elements(g.n(), &elems)
    }

    pub fn n(&self) -> usize {
        self.choice.len()
    }

    pub fn get(&self, v: usize) -> Option<TransitionKind> {
        self.choice[v]
    }

    pub fn len(&self) -> usize {
        self.choice.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_transversal(&self) -> bool {
        self.choice.iter().all(Option::is_some)
    }

    pub fn elements(&self) -> Vec<GroundElement> {
        self.choice.iter().enumerate().filter_map(|(vertex, k)| k.map(|kind| GroundElement { vertex, kind })).collect()
    }

    /// Column positions in `ias_matrix`.
    pub fn columns(&self) -> Vec<usize> {
        let n = self.n();
        self.elements().iter().map(|e| e.kind.index() * n + e.vertex).collect()
    }

    pub fn labels(&self, g: &LoopedGraph) -> Vec<String> {
        self.elements().iter().map(|e| e.label(g)).collect()
    }
}

impl fmt::Display for Subtransversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| format!("{}({})", e.kind, e.vertex)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Column labels of `W(G)` in block order: all φ, then χ, then ψ.
pub fn ground_labels(g: &LoopedGraph, arity: usize) -> Vec<String> {
    TransitionKind::ALL[..arity]
        .iter()
        .flat_map(|&k| g.labels().iter().map(move |l| element_label(k, l)))
        .collect()
}

/// `(I | A(G) | I + A(G))` over GF(2).
pub fn ias_matrix(g: &LoopedGraph) -> ExactMatrix {
    let n = g.n();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|v| {
            let a: Vec<i64> = (0..n).map(|w| (if v == w { g.has_loop(v) } else { g.adjacent(v, w) }) as i64).collect();
            let mut r: Vec<i64> = (0..n).map(|w| (v == w) as i64).collect();
            r.extend(&a);
            r.extend(a.iter().enumerate().map(|(w, &x)| x ^ (v == w) as i64));
            r
        })
        .collect();
    ExactMatrix::from_ints(g.labels(), &ground_labels(g, 3), &rows, FieldSpec::Gf2).expect("well formed")
}

/// `(I | A(G))`.
pub fn ia_matrix(g: &LoopedGraph) -> ExactMatrix {
    ias_matrix(g).select_columns(&ground_labels(g, 2)).expect("columns exist")
}

/// Rank of `s` in `Z₃(G)`.
pub fn rank_sub(g: &LoopedGraph, s: &Subtransversal) -> Result<usize> {
    if s.n() != g.n() {
        return Err(Error::NotSubtransversal(format!("{} vertices, graph has {}", s.n(), g.n())));
    }
    Ok(ias_matrix(g).rank_of_columns(&s.columns()))
}

/// Rank oracle on element masks, where bit `i` of a mask selects column
/// `columns[i]` of `m`.
pub(crate) fn column_oracle(m: ExactMatrix, columns: Vec<usize>) -> Arc<dyn Fn(u64) -> usize + Send + Sync> {
    Arc::new(move |mask: u64| {
        let cols: Vec<usize> = (0..columns.len()).filter(|&i| mask >> i & 1 == 1).map(|i| columns[i]).collect();
        m.rank_of_columns(&cols)
    })
}

/// `Z₃(G)` (arity 3) or `Z₂(G)` (arity 2). Element `arity·v + k` is the
/// `k`-th kind at vertex `v`.
pub fn multimatroid_view(g: &LoopedGraph, arity: usize) -> Result<SemiMultimatroid> {
    if !(2..=3).contains(&arity) {
        return Err(Error::Structure(format!("arity {arity} is not 2 or 3")));
    }
    let n = g.n();
    let mut labels = Vec::new();
    let mut columns = Vec::new();
    let mut classes = Vec::new();
    for v in 0..n {
        let mut class = Vec::new();
        for &k in &TransitionKind::ALL[..arity] {
            class.push(labels.len());
            labels.push(element_label(k, g.label(v)));
            columns.push(k.index() * n + v);
        }
        classes.push(class);
    }
    SemiMultimatroid::from_oracle(labels, classes, column_oracle(ias_matrix(g), columns))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRanks {
    pub candidate: usize,
    pub reference: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShelterReport {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violating_subtransversal: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<ViolationRanks>,
    pub candidate_rank: usize,
    pub strict: bool,
    pub subtransversals_checked: usize,
}

/// Compares column ranks of `candidate` with `Z₃(G)` (or `Z₂(G)`) on every
/// subtransversal. Candidate columns are found by label.
pub fn shelters(candidate: &ExactMatrix, g: &LoopedGraph, arity: usize, strict: bool) -> Result<ShelterReport> {
    if !(2..=3).contains(&arity) {
        return Err(Error::Structure(format!("arity {arity} is not 2 or 3")));
    }
    if g.n() > SHELTER_BOUND {
        return Err(Error::TooLarge { got: g.n(), bound: SHELTER_BOUND });
    }
    let n = g.n();
    let reference = ias_matrix(g);
    let labels = ground_labels(g, arity);
    let cand_cols = candidate.cols_by_label(&labels)?;
    let all: Vec<usize> = cand_cols.clone();
    let candidate_rank = candidate.rank_of_columns(&all);

    struct Sweep<'a> {
        n: usize,
        arity: usize,
        cand: ColumnBasis,
        refb: ColumnBasis,
        cand_cols: &'a [usize],
        choice: Vec<Option<TransitionKind>>,
        checked: usize,
        violation: Option<(Vec<Option<TransitionKind>>, usize, usize)>,
    }
    impl Sweep<'_> {
        fn run(&mut self, v: usize) -> bool {
            self.checked += 1;
            if self.cand.len() != self.refb.len() {
                self.violation = Some((self.choice.clone(), self.cand.len(), self.refb.len()));
                return true;
            }
            for w in v..self.n {
                for k in 0..self.arity {
                    let (bc, br) = (self.cand.len(), self.refb.len());
                    self.cand.push(self.cand_cols[k * self.n + w]);
                    self.refb.push(k * self.n + w);
                    self.choice[w] = Some(TransitionKind::ALL[k]);
                    let stop = self.run(w + 1);
                    self.choice[w] = None;
                    self.cand.truncate(bc);
                    self.refb.truncate(br);
                    if stop {
                        return true;
                    }
                }
            }
            false
        }
    }
    let mut s = Sweep {
        n,
        arity,
        cand: candidate.column_basis(),
        refb: reference.column_basis(),
        cand_cols: &cand_cols,
        choice: vec![None; n],
        checked: 0,
        violation: None,
    };
    s.run(0);
    let (first, ranks) = match s.violation {
        Some((choice, c, r)) => {
            let st = Subtransversal::from_choices(choice);
            (Some(st.labels(g)), Some(ViolationRanks { candidate: c, reference: r }))
        }
        None => (None, None),
    };
    let rank_ok = !strict || candidate_rank == n;
    Ok(ShelterReport {
        verdict: first.is_none() && rank_ok,
        first_violating_subtransversal: first,
        ranks,
        candidate_rank,
        strict,
        subtransversals_checked: s.checked,
    })
}
