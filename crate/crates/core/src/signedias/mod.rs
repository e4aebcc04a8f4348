//! The signed interlacement matrix `IAS_Γ°(C) = (I | A | B)` of an oriented
//! Euler system, and the identities connecting it to the `M_{R,Γ}(C,P,D)`
//! matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::bareiss::det_i64;
use crate::exactalg::{ExactMatrix, FieldSpec};
use crate::fourreg::{
    m_matrix, CircuitPartition, Direction, EulerSystem, OrientedFundamentalCircuits, Transition, TransitionKind,
};
use crate::graph::LoopedGraph;
use crate::isotropic::{element_label, ground_labels, shelters, SHELTER_BOUND};

/// Largest `n` for the `3^n` determinant sweep.
pub const DET_SWEEP_BOUND: usize = 12;
/// Largest `n` for `three_circuits`.
pub const THREE_CIRCUIT_BOUND: usize = 8;

#[derive(Clone, Debug)]
pub struct SignedIAS {
    matrix: ExactMatrix,
    euler: EulerSystem,
    gamma: OrientedFundamentalCircuits,
}

/// Builds `(I | A | B)` from the segments of `gamma`: `A_vw = ±1` when the
/// interior of `C_Γ(v)` holds `w⁺` only (`+1`) or `w⁻` only (`−1`), and
/// `B_vw` counts how many of `w⁻, w⁺` it holds, with `B_vv = 1`.
pub fn signed_ias(c: &EulerSystem, gamma: &OrientedFundamentalCircuits) -> Result<SignedIAS> {
    let n = c.n();
    if let Some(v) = (0..n).find(|&v| gamma.get(v).reversed) {
        return Err(Error::Inconsistent(c.graph().label(v).to_string()));
    }
    let mut rows = vec![vec![0i64; 3 * n]; n];
    for (v, row) in rows.iter_mut().enumerate() {
        let fv = gamma.get(v);
        let inside = gamma.interior_positions(c, v);
        row[v] = 1;
        for w in 0..n {
            if w == v {
                row[2 * n + w] = 1;
                continue;
            }
            let fw = gamma.get(w);
            let same = fw.circuit == fv.circuit;
            let minus = same && inside.contains(&gamma.minus_position(w));
            let plus = same && inside.contains(&gamma.plus_position(c, w));
            row[n + w] = plus as i64 - minus as i64;
            row[2 * n + w] = plus as i64 + minus as i64;
        }
    }
    let labels: Vec<String> = TransitionKind::ALL
        .iter()
        .flat_map(|&k| c.graph().labels().iter().map(move |l| element_label(k, l)))
        .collect();
    let matrix = ExactMatrix::from_ints(c.graph().labels(), &labels, &rows, FieldSpec::Rational)?;
    Ok(SignedIAS { matrix, euler: c.clone(), gamma: gamma.clone() })
}

/// `signed_ias` for fundamental circuits based at `base`.
pub fn signed_ias_based(c: &EulerSystem, base: &[usize]) -> Result<SignedIAS> {
    signed_ias(c, &OrientedFundamentalCircuits::based(c, base)?)
}

impl SignedIAS {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn euler(&self) -> &EulerSystem {
        &self.euler
    }

    pub fn gamma(&self) -> &OrientedFundamentalCircuits {
        &self.gamma
    }

    pub fn n(&self) -> usize {
        self.euler.n()
    }

    pub fn column(&self, v: usize, kind: TransitionKind) -> usize {
        kind.index() * self.n() + v
    }

    pub fn column_labels(&self) -> &[String] {
        self.matrix.col_labels()
    }

    pub fn entries(&self) -> Vec<Vec<i64>> {
        self.matrix.to_i64().expect("integer entries")
    }

    /// `[I, A, B]` as integer blocks.
    pub fn blocks(&self) -> [Vec<Vec<i64>>; 3] {
        let n = self.n();
        let e = self.entries();
        [0, 1, 2].map(|b| e.iter().map(|r| r[b * n..(b + 1) * n].to_vec()).collect())
    }

    /// Rows as `label | I | A | B`, entries right-aligned.
    pub fn to_block_text(&self) -> String {
        let n = self.n();
        let labels = self.euler.graph().labels();
        let lw = labels.iter().map(|l| l.len()).max().unwrap_or(1);
        let mut out = String::new();
        for (i, r) in self.entries().iter().enumerate() {
            let block = |b: usize| r[b * n..(b + 1) * n].iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" ");
            out.push_str(&format!("{:<lw$} | {} | {} | {}\n", labels[i], block(0), block(1), block(2)));
        }
        out
    }

    /// Columns of the transitions in `p`, labelled by vertex.
    pub fn partition_columns(&self, p: &CircuitPartition) -> Result<ExactMatrix> {
        self.same_graph(p)?;
        let labels = self.euler.graph().labels();
        let cols: Vec<String> =
            (0..self.n()).map(|w| element_label(p.transition(w).kind(&self.euler), &labels[w])).collect();
        self.matrix.select_columns(&cols)?.relabel_columns(labels.to_vec())
    }

    fn same_graph(&self, p: &CircuitPartition) -> Result<()> {
        if **self.euler.graph_arc() != **p.graph() {
            return Err(Error::Structure("circuit partition lives on a different graph".into()));
        }
        Ok(())
    }

    /// Columns of `self` renamed by the transition labels of `other`, an
    /// Euler system of the same graph, and put in `other`'s column order.
    pub fn relabeled_for(&self, other: &EulerSystem) -> Result<ExactMatrix> {
        if **self.euler.graph_arc() != **other.graph_arc() {
            return Err(Error::Structure("Euler systems live on different graphs".into()));
        }
        let n = self.n();
        let labels = self.euler.graph().labels();
        let mut renamed = vec![String::new(); 3 * n];
        for &k in &TransitionKind::ALL {
            for w in 0..n {
                let t = Transition::of_kind(&self.euler, w, k);
                renamed[self.column(w, k)] = element_label(t.kind(other), &labels[w]);
            }
        }
        let order: Vec<String> = TransitionKind::ALL
            .iter()
            .flat_map(|&k| labels.iter().map(move |l| element_label(k, l)))
            .collect();
        self.matrix.relabel_columns(renamed)?.select_columns(&order)
    }
}

/// Whether the `P`-columns of `s` equal `M_{R,Γ}(C,P,D_Γ)`.
pub fn verify_submatrix_identity(s: &SignedIAS, p: &CircuitPartition) -> Result<bool> {
    let sub = s.partition_columns(p)?;
    let d = Direction::from_gamma(&s.euler, &s.gamma);
    Ok(sub == m_matrix(&s.euler, &s.gamma, p, &d)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantSweep {
    /// Indexed by `Σ kind(v)·3^v`.
    pub values: Vec<BigInt>,
    pub unimodular: bool,
    /// Value of largest magnitude, the positive one on ties.
    pub worst: BigInt,
}

impl DeterminantSweep {
    pub fn kinds_of(n: usize, mut index: usize) -> Vec<TransitionKind> {
        (0..n)
            .map(|_| {
                let k = TransitionKind::ALL[index % 3];
                index /= 3;
                k
            })
            .collect()
    }

    pub fn get(&self, kinds: &[TransitionKind]) -> &BigInt {
        let i = kinds.iter().rev().fold(0, |acc, k| 3 * acc + k.index());
        &self.values[i]
    }
}

/// Determinant of every transversal submatrix.
pub fn transversal_determinants(s: &SignedIAS) -> Result<DeterminantSweep> {
    let n = s.n();
    if n > DET_SWEEP_BOUND {
        return Err(Error::TooLarge { got: n, bound: DET_SWEEP_BOUND });
    }
    let e = s.entries();
    let total = 3usize.pow(n as u32);
    let mut values = Vec::with_capacity(total);
    let mut sub = vec![vec![0i64; n]; n];
    for idx in 0..total {
        let mut x = idx;
        for w in 0..n {
            let j = (x % 3) * n + w;
            x /= 3;
            for (r, row) in sub.iter_mut().enumerate() {
                row[w] = e[r][j];
            }
        }
        values.push(det_i64(&sub));
    }
    let one = BigInt::one();
    let unimodular = values.iter().all(|d| d.abs() <= one);
    let worst = values.iter().fold(BigInt::zero(), |w, d| {
        if d.abs() > w.abs() || (d.abs() == w.abs() && *d > w) {
            d.clone()
        } else {
            w
        }
    });
    Ok(DeterminantSweep { values, unimodular, worst })
}

fn check_common_base(
    c: &EulerSystem,
    c2: &EulerSystem,
    gamma: &OrientedFundamentalCircuits,
    gamma2: &OrientedFundamentalCircuits,
) -> Result<()> {
    if **c.graph_arc() != **c2.graph_arc() {
        return Err(Error::Structure("Euler systems live on different graphs".into()));
    }
    let sorted = |g: &OrientedFundamentalCircuits| {
        g.base().map(|b| {
            let mut b = b.to_vec();
            b.sort_unstable();
            b
        })
    };
    match (sorted(gamma), sorted(gamma2)) {
        (Some(a), Some(b)) if a == b => Ok(()),
        (Some(_), Some(_)) => Err(Error::BadBase("the two sets are based at different edges".into())),
        _ => Err(Error::BadBase("both sets of fundamental circuits must be based".into())),
    }
}

/// `M(C̃,C,D_Γ)`, the matrix carrying every `M(C,P,D)` to `M(C̃,P,D)`.
pub fn transfer_matrix(
    c: &EulerSystem,
    c2: &EulerSystem,
    gamma: &OrientedFundamentalCircuits,
    gamma2: &OrientedFundamentalCircuits,
) -> Result<ExactMatrix> {
    check_common_base(c, c2, gamma, gamma2)?;
    m_matrix(c2, gamma2, &CircuitPartition::of_euler_system(c), &Direction::from_gamma(c, gamma))
}

/// `M(C̃,P,D) = M(C̃,C,D_Γ)·M(C,P,D)` and `M(C̃,C,D_Γ)·M(C,C̃,D_Γ̃) = I`.
pub fn naturality_check(
    c: &EulerSystem,
    c2: &EulerSystem,
    gamma: &OrientedFundamentalCircuits,
    gamma2: &OrientedFundamentalCircuits,
    p: &CircuitPartition,
    d: &Direction,
) -> Result<bool> {
    let t = transfer_matrix(c, c2, gamma, gamma2)?;
    let product = t.mul(&m_matrix(c, gamma, p, d)?)?;
    let back = m_matrix(c, gamma, &CircuitPartition::of_euler_system(c2), &Direction::from_gamma(c2, gamma2))?;
    let id = ExactMatrix::identity(c.graph().labels(), FieldSpec::Rational);
    Ok(product == m_matrix(c2, gamma2, p, d)? && t.mul(&back)? == id)
}

/// Columns that must be negated after `IAS(C)` is multiplied by the
/// transfer matrix to reach `IAS(C̃)` in `C`'s labels. `None` if some
/// column differs by more than a sign.
pub fn column_sign_pattern(s: &SignedIAS, s2: &SignedIAS) -> Result<Option<Vec<String>>> {
    let t = transfer_matrix(&s.euler, &s2.euler, &s.gamma, &s2.gamma)?;
    let lhs = t.mul(&s.matrix)?;
    let rhs = s2.relabeled_for(&s.euler)?;
    let mut flipped = Vec::new();
    for j in 0..lhs.ncols() {
        let col = |m: &ExactMatrix| (0..m.nrows()).map(|i| m.entry(i, j).clone()).collect::<Vec<_>>();
        let (a, b) = (col(&lhs), col(&rhs));
        if a == b {
            continue;
        }
        if a.iter().zip(&b).all(|(x, y)| *x == -y.clone()) {
            flipped.push(lhs.col_labels()[j].clone());
        } else {
            return Ok(None);
        }
    }
    Ok(Some(flipped))
}

/// Rewrites `IAS(C̃)` for `C̃ = C*v` in `C`'s labels, subtracts row `v`
/// from every other row, negates row `v`, then negates each column that
/// still differs from `IAS(C)`. Returns the result and the negated columns.
pub fn replay_row_operations(s: &SignedIAS, s2: &SignedIAS, v: &str) -> Result<(ExactMatrix, Vec<String>)> {
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    let mut m = s2.relabeled_for(&s.euler)?;
    let d = m.row_pos(v)?;
    for r in (0..m.nrows()).filter(|&r| r != d) {
        m = m.add_row_multiple(r, d, &minus_one)?;
    }
    m = m.scale_row(d, &minus_one)?;
    let mut flipped = Vec::new();
    for j in 0..m.ncols() {
        if (0..m.nrows()).any(|i| m.entry(i, j) != s.matrix.entry(i, j)) {
            m = m.scale_column(j, &minus_one)?;
            flipped.push(m.col_labels()[j].clone());
        }
    }
    Ok((m, flipped))
}

/// `IAS_Γ°(C)` over `field` for a circle graph, with `C` either supplied
/// with its base edges or found by the small realizer. The result is
/// checked to strictly shelter `Z₃(G)` when `G` is small enough.
pub fn represent_over(g: &LoopedGraph, field: FieldSpec, realization: Option<(&EulerSystem, &[usize])>) -> Result<ExactMatrix> {
    let found;
    let (c, base): (&EulerSystem, Vec<usize>) = match realization {
        Some((c, base)) => (c, base.to_vec()),
        None => {
            found = crate::recognize::realization(g)?;
            let base = found.wrap_edges();
            (&found, base)
        }
    };
    if !g.is_simple() || !realizes(c, g) {
        return Err(Error::Structure("the Euler system does not realize this graph".into()));
    }
    let s = signed_ias_based(c, &base)?;
    // rows and columns in the vertex order of `g`
    let cols = ground_labels(g, 3);
    let m = s.matrix.select_columns(&cols)?.transpose().select_columns(g.labels())?.transpose().reduce_to(field)?;
    if g.n() <= SHELTER_BOUND && !shelters(&m, g, 3, true)?.verdict {
        return Err(Error::Internal("signed interlacement matrix does not shelter Z3".into()));
    }
    Ok(m)
}

fn realizes(c: &EulerSystem, g: &LoopedGraph) -> bool {
    let h = c.interlacement();
    if h.n() != g.n() {
        return false;
    }
    let Ok(pos) = g.labels().iter().map(|l| h.index_of(l)).collect::<Result<Vec<usize>>>() else {
        return false;
    };
    (0..g.n()).all(|i| (0..g.n()).all(|j| g.adjacent(i, j) == h.adjacent(pos[i], pos[j])))
}

/// All 3-element circuits among the columns of `s` over `field`, as labels
/// in column order.
pub fn three_circuits(s: &SignedIAS, field: FieldSpec) -> Result<Vec<[String; 3]>> {
    if s.n() > THREE_CIRCUIT_BOUND {
        return Err(Error::TooLarge { got: s.n(), bound: THREE_CIRCUIT_BOUND });
    }
    let m = s.matrix.reduce_to(field)?;
    let k = m.ncols();
    let labels = m.col_labels();
    let mut out = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if m.rank_of_columns(&[a, b]) < 2 {
                continue;
            }
            for c in b + 1..k {
                if m.rank_of_columns(&[a, b, c]) == 2
                    && m.rank_of_columns(&[a, c]) == 2
                    && m.rank_of_columns(&[b, c]) == 2
                {
                    out.push([labels[a].clone(), labels[b].clone(), labels[c].clone()]);
                }
            }
        }
    }
    Ok(out)
}

/// Number of listed circuits through each label of `labels`.
pub fn incidence_profile(circuits: &[[String; 3]], labels: &[String]) -> Vec<usize> {
    labels.iter().map(|l| circuits.iter().filter(|c| c.contains(l)).count()).collect()
}
