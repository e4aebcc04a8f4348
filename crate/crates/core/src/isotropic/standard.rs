//! Matrix manipulations on sheltering candidates: contraction at a vertex
//! and the standard forms `(I | A)` and `(I | A | B)`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{element_label, ground_labels};
use crate::error::{Error, Result};
use crate::exactalg::ExactMatrix;
use crate::fourreg::TransitionKind;
use crate::graph::LoopedGraph;

/// `(M / φ(v)) − χ(v) − ψ(v)`, with `M` given by a matrix whose columns
/// are labelled by `W(G)`. The result is labelled by `W(G − v)`.
pub fn contract_vertex(m: &ExactMatrix, g: &LoopedGraph, v: &str) -> Result<ExactMatrix> {
    g.index_of(v)?;
    let j = m.col_pos(&element_label(TransitionKind::Phi, v))?;
    let mut out = m.clone();
    if let Some(i) = (0..m.nrows()).find(|&i| !m.entry(i, j).is_zero()) {
        out = out.pivot(i, j)?.remove_rows(&[i])?;
    }
    let drop = TransitionKind::ALL.iter().map(|&k| out.col_pos(&element_label(k, v))).collect::<Result<Vec<_>>>()?;
    out.remove_columns(&drop)
}

/// Pivots on the φ columns in vertex order. Returns the reduced matrix and,
/// per vertex, the row holding its pivot.
fn pivot_phi(m: &ExactMatrix, g: &LoopedGraph) -> Result<(ExactMatrix, Vec<usize>)> {
    let mut cur = m.clone();
    let mut used = vec![false; m.nrows()];
    let mut pivots = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let j = cur.col_pos(&element_label(TransitionKind::Phi, g.label(v)))?;
        let i = (0..cur.nrows())
            .find(|&i| !used[i] && !cur.entry(i, j).is_zero())
            .ok_or_else(|| Error::Structure(format!("phi columns are dependent at `{}`", g.label(v))))?;
        used[i] = true;
        cur = cur.pivot(i, j)?;
        pivots.push(i);
    }
    Ok((cur, pivots))
}

fn residual_is_zero(m: &ExactMatrix, pivots: &[usize], cols: &[usize]) -> bool {
    (0..m.nrows()).filter(|i| !pivots.contains(i)).all(|i| cols.iter().all(|&j| m.entry(i, j).is_zero()))
}

/// Rows `pivots` of `m` restricted to `labels`, relabelled by vertex.
fn square_up(m: &ExactMatrix, g: &LoopedGraph, pivots: &[usize], labels: &[String]) -> Result<ExactMatrix> {
    let cols = m.cols_by_label(labels)?;
    let e = pivots.iter().map(|&i| cols.iter().map(|&j| m.entry(i, j).clone()).collect()).collect();
    ExactMatrix::new(g.labels().to_vec(), labels.to_vec(), e, m.field())
}

#[derive(Clone, Debug)]
pub struct Standardized {
    /// `(I | A)` with rows indexed by vertex.
    pub matrix: ExactMatrix,
    /// The rows below the identity vanish on the χ columns.
    pub residual_zero: bool,
    /// `A` is nonzero exactly where `A(G)` is.
    pub support_matches: bool,
}

/// Row-reduces a `Z₂(G)` candidate to `(I | A)`.
pub fn standardize_two(m: &ExactMatrix, g: &LoopedGraph) -> Result<Standardized> {
    let (cur, pivots) = pivot_phi(m, g)?;
    let labels = ground_labels(g, 2);
    let chi = cur.cols_by_label(&labels[g.n()..])?;
    let residual_zero = residual_is_zero(&cur, &pivots, &chi);
    let matrix = square_up(&cur, g, &pivots, &labels)?;
    let n = g.n();
    let support_matches = (0..n).all(|v| (0..n).all(|w| !matrix.entry(v, n + w).is_zero() == g.adjacent(v, w)));
    Ok(Standardized { matrix, residual_zero, support_matches })
}

#[derive(Clone, Debug)]
pub struct Normalized {
    /// `(I | A | B)` with rows indexed by vertex and ψ columns scaled.
    pub matrix: ExactMatrix,
    pub c_zero: bool,
    pub support_matches: bool,
    pub unit_diagonal: bool,
    pub edge_products_one: bool,
}

/// Row-reduces a strict `Z₃(G)` candidate to `(I | A | B)`, then scales
/// each ψ column by `1/B_vv` in vertex order.
pub fn normalize_three(m: &ExactMatrix, g: &LoopedGraph) -> Result<Normalized> {
    let (cur, pivots) = pivot_phi(m, g)?;
    let n = g.n();
    let labels = ground_labels(g, 3);
    let rest = cur.cols_by_label(&labels[n..])?;
    let c_zero = residual_is_zero(&cur, &pivots, &rest);
    let mut matrix = square_up(&cur, g, &pivots, &labels)?;
    let f = matrix.field();
    for v in 0..n {
        let bvv = matrix.entry(v, 2 * n + v).clone();
        if bvv.is_zero() {
            return Err(Error::Structure(format!("B has a zero diagonal entry at `{}`", g.label(v))));
        }
        matrix = matrix.scale_column(2 * n + v, &f.reduce(&bvv.recip())?)?;
    }
    let support_matches = (0..n).all(|v| (0..n).all(|w| !matrix.entry(v, n + w).is_zero() == g.adjacent(v, w)));
    let one = BigRational::one();
    let unit_diagonal = (0..n).all(|v| *matrix.entry(v, 2 * n + v) == one);
    let edge_products_one = g.edges().iter().all(|&(v, w)| {
        let p = matrix.entry(v, 2 * n + w) * matrix.entry(w, 2 * n + v);
        f.reduce(&p).map(|x| x == one).unwrap_or(false)
    });
    Ok(Normalized { matrix, c_zero, support_matches, unit_diagonal, edge_products_one })
}

#[cfg(test)]
mod tests {
    use super::super::{ias_matrix, shelters};
    use super::*;
    use crate::exactalg::FieldSpec;
    use crate::graph::tests::arb_graph;
    use proptest::prelude::*;

    fn simple_graphs(n: usize) -> impl Iterator<Item = LoopedGraph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        (0u64..1 << pairs.len()).map(move |m| {
            let mut adj = vec![0u64; n];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if m >> i & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            LoopedGraph::from_masks(&adj, 0)
        })
    }

    /// A disguised copy of `IAS(G)`: an extra zero row and rows mixed up.
    fn scrambled(g: &LoopedGraph, field: FieldSpec) -> ExactMatrix {
        let m = ias_matrix(g).reduce_to(field).unwrap();
        let mut rows: Vec<Vec<BigRational>> = m.rows_vec().to_vec();
        rows.push(vec![BigRational::zero(); m.ncols()]);
        let k = rows.len();
        for i in 1..k - 1 {
            let prev = rows[i - 1].clone();
            for (x, y) in rows[i].iter_mut().zip(&prev) {
                *x = &*x + y;
            }
        }
        let labels: Vec<String> = (0..k).map(|i| format!("r{i}")).collect();
        ExactMatrix::new(labels, m.col_labels().to_vec(), rows, field).unwrap()
    }

    #[test]
    fn contraction_shelters_the_deletion() {
        for n in 1..=4 {
            for g in simple_graphs(n) {
                for field in [FieldSpec::Gf2, FieldSpec::Gfp(3)] {
                    let m = scrambled(&g, field);
                    let whole = shelters(&m, &g, 3, false).unwrap().verdict;
                    assert!(whole || field != FieldSpec::Gf2);
                    for v in g.labels().to_vec() {
                        let h = g.delete_vertices(&[v.as_str()]).unwrap();
                        let c = contract_vertex(&m, &g, &v).unwrap();
                        let r = shelters(&c, &h, 3, false).unwrap();
                        assert!(r.verdict || !whole, "{g:?} at {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn standard_forms_of_scrambled_ias() {
        for n in 1..=4 {
            for g in simple_graphs(n) {
                for field in [FieldSpec::Gf2, FieldSpec::Gfp(5)] {
                    let m = scrambled(&g, field);
                    let s = standardize_two(&m, &g).unwrap();
                    assert!(s.residual_zero && s.support_matches);
                    let t = normalize_three(&m, &g).unwrap();
                    assert!(t.c_zero && t.support_matches && t.unit_diagonal && t.edge_products_one);
                    let before = shelters(&m, &g, 3, false).unwrap().verdict;
                    assert_eq!(shelters(&t.matrix, &g, 3, true).unwrap().verdict, before);
                }
            }
        }
    }

    #[test]
    fn dependent_phi_columns_are_rejected() {
        let g = crate::graph::named_graph("K2").unwrap();
        let z = ExactMatrix::zeros(&["x", "y"], &ground_labels(&g, 3), FieldSpec::Gf2).unwrap();
        assert!(standardize_two(&z, &g).is_err());
    }

    proptest! {
        #[test]
        fn standardization_of_ias_recovers_it(g in arb_graph(6)) {
            let g = g.simple_part();
            let s = standardize_two(&ias_matrix(&g), &g).unwrap();
            prop_assert!(s.residual_zero && s.support_matches);
            prop_assert_eq!(s.matrix, super::super::ia_matrix(&g));
        }
    }
}
