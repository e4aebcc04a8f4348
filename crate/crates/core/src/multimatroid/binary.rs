//! Binary matroids, their fundamental graphs, and the multimatroids
//! `Z₂(M)` and `Z₃(M)`.
//!
//! Text format: a `rank r` line, then one column per line, either
//! `<label> <bits>` or just `<bits>`, with `r` bits per column; `#` starts
//! a comment.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{RankOracle, SemiMultimatroid};
use crate::error::{Error, Result};
use crate::exactalg::bits::MaskBasis;
use crate::graph::LoopedGraph;
use crate::exactalg::{ExactMatrix, FieldSpec};
use crate::fourreg::TransitionKind;
use crate::isotropic::{element_label, ias_matrix};

/// Columns over GF(2); bit `i` of a column is its row-`i` entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryMatroidRep {
    labels: Vec<String>,
    rows: usize,
    columns: Vec<u64>,
}

/// `(I | A)` after pivoting: `a[i][j]` is the entry of cobasis element
/// `cobasis[j]` in the row of basis element `basis[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub basis: Vec<usize>,
    pub cobasis: Vec<usize>,
    pub a: Vec<Vec<bool>>,
}

impl BinaryMatroidRep {
    pub fn new(labels: Vec<String>, rows: usize, columns: Vec<u64>) -> Result<Self> {
        if labels.len() != columns.len() {
            return Err(Error::Dimension(format!("{} labels for {} columns", labels.len(), columns.len())));
        }
        if rows > 64 || labels.len() > 64 {
            return Err(Error::TooLarge { got: rows.max(labels.len()), bound: 64 });
        }
        if columns.iter().any(|&c| rows < 64 && c >> rows != 0) {
            return Err(Error::Dimension(format!("a column has more than {rows} entries")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
        Ok(BinaryMatroidRep { labels, rows, columns })
    }

    /// `(I | A)` with `a[i][j]` the entry in row `basis[i]`, column `cobasis[j]`.
    pub fn from_standard<S: ToString>(basis: &[S], cobasis: &[S], a: &[Vec<bool>]) -> Result<Self> {
        let r = basis.len();
        let mut labels: Vec<String> = basis.iter().map(|s| s.to_string()).collect();
        labels.extend(cobasis.iter().map(|s| s.to_string()));
        let mut columns: Vec<u64> = (0..r).map(|i| 1u64 << i).collect();
        for j in 0..cobasis.len() {
            columns.push((0..r).filter(|&i| a[i][j]).fold(0, |acc, i| acc | 1 << i));
        }
        BinaryMatroidRep::new(labels, r, columns)
    }

    /// Cycle matroid of a graph on vertices `0..nv`, edges labelled `<a><b>`
    /// with 1-based vertex numbers.
    pub fn graphic(nv: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let labels = edges.iter().map(|&(a, b)| format!("{}{}", a + 1, b + 1)).collect();
        let columns = edges.iter().map(|&(a, b)| (1u64 << a) ^ (1u64 << b)).collect();
        BinaryMatroidRep::new(labels, nv, columns)
    }

    pub fn complete(k: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        BinaryMatroidRep::graphic(k, &edges).expect("well formed")
    }

    /// `M(K₃,₃)` with sides `1,2,3` and `4,5,6`.
    pub fn k33() -> Self {
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        BinaryMatroidRep::graphic(6, &edges).expect("well formed")
    }

    /// The Fano plane as `(I | A)` with `A` = 1101 / 1011 / 0111.
    pub fn fano() -> Self {
        let a: Vec<Vec<bool>> = [[1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| x == 1).collect())
            .collect();
        BinaryMatroidRep::from_standard(&["1", "2", "3"], &["4", "5", "6", "7"], &a).expect("well formed")
    }

    /// A standard matroid by name: `K4`, `K5`, `K33`, `Fano`.
    pub fn named(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().replace(['_', '(', ')', ','], "").as_str() {
            "k4" | "mk4" => Ok(BinaryMatroidRep::complete(4)),
            "k5" | "mk5" => Ok(BinaryMatroidRep::complete(5)),
            "k33" | "mk33" => Ok(BinaryMatroidRep::k33()),
            "fano" | "f7" => Ok(BinaryMatroidRep::fano()),
            _ => Err(Error::UnknownGraph(name.to_string())),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = None;
        let mut labels = Vec::new();
        let mut columns = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: ln + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let Some(r) = rows else {
                match toks.as_slice() {
                    ["rank", n] => rows = Some(n.parse::<usize>().map_err(|e| err(e.to_string()))?),
                    _ => return Err(err("expected `rank <r>`".into())),
                }
                continue;
            };
            let (label, bits) = match toks.as_slice() {
                [b] => (format!("e{}", columns.len() + 1), *b),
                [l, b] => (l.to_string(), *b),
                _ => return Err(err("expected `[label] <bits>`".into())),
            };
            if bits.len() != r || !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(err(format!("column `{bits}` is not {r} bits")));
            }
            columns.push(bits.chars().enumerate().fold(0u64, |acc, (i, c)| acc | ((c == '1') as u64) << i));
            labels.push(label);
        }
        let rows = rows.ok_or(Error::Parse { line: 0, msg: "missing `rank` line".into() })?;
        BinaryMatroidRep::new(labels, rows, columns)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("rank {}\n", self.rows);
        for (l, &c) in self.labels.iter().zip(&self.columns) {
            let bits: String = (0..self.rows).map(|i| if c >> i & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(s, "{l} {bits}").expect("string");
        }
        s
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank_of(&self, mask: u64) -> usize {
        let mut b = MaskBasis::default();
        (0..self.columns.len()).filter(|&j| mask >> j & 1 == 1).filter(|&j| b.insert(self.columns[j])).count()
    }

    pub fn rank(&self) -> usize {
        self.rank_of(u64::MAX)
    }

    /// Pivots greedily on columns in order.
    pub fn standard_form(&self) -> StandardForm {
        let n = self.columns.len();
        let mut rows: Vec<u64> = (0..self.rows)
            .map(|i| (0..n).filter(|&j| self.columns[j] >> i & 1 == 1).fold(0, |acc, j| acc | 1 << j))
            .collect();
        let mut basis = Vec::new();
        let mut done = 0;
        for j in 0..n {
            let Some(p) = (done..rows.len()).find(|&i| rows[i] >> j & 1 == 1) else {
                continue;
            };
            rows.swap(done, p);
            let pr = rows[done];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != done && *r >> j & 1 == 1 {
                    *r ^= pr;
                }
            }
            basis.push(j);
            done += 1;
        }
        let cobasis: Vec<usize> = (0..n).filter(|j| !basis.contains(j)).collect();
        let a = rows[..done].iter().map(|&r| cobasis.iter().map(|&j| r >> j & 1 == 1).collect()).collect();
        StandardForm { basis, cobasis, a }
    }
}

/// Bipartite graph with adjacency `[[0, A], [Aᵀ, 0]]`, vertices named by
/// the element labels.
pub fn fundamental_graph(m: &BinaryMatroidRep) -> LoopedGraph {
    let sf = m.standard_form();
    let mut g = LoopedGraph::new(m.labels()).expect("distinct labels");
    for (i, &b) in sf.basis.iter().enumerate() {
        for (j, &c) in sf.cobasis.iter().enumerate() {
            if sf.a[i][j] {
                g.add_edge(&m.labels()[b], &m.labels()[c]).expect("known vertices");
            }
        }
    }
    g
}

fn pair_labels(m: &BinaryMatroidRep, arity: usize) -> (Vec<String>, Vec<Vec<usize>>) {
    let mut labels = Vec::new();
    let mut classes = Vec::new();
    for l in m.labels() {
        classes.push((labels.len()..labels.len() + arity).collect());
        for k in 1..=arity {
            labels.push(format!("{l}:{k}"));
        }
    }
    (labels, classes)
}

/// `Z₂(M)`, sheltered by `φ₁(M*) ⊕ φ₂(M)`. Element `(e, k)` is labelled
/// `e:k` and sits at index `2e + k − 1`.
pub fn z2_of_matroid(m: &BinaryMatroidRep) -> SemiMultimatroid {
    let sf = m.standard_form();
    let (nb, nc) = (sf.basis.len(), sf.cobasis.len());
    // rows 0..nc carry (Aᵀ | I); rows nc..nc+nb carry (I | A)
    let mut col = vec![[0u64; 2]; m.len()];
    for (i, &b) in sf.basis.iter().enumerate() {
        col[b][1] = 1 << (nc + i);
        col[b][0] = (0..nc).filter(|&j| sf.a[i][j]).fold(0, |acc, j| acc | 1 << j);
    }
    for (j, &c) in sf.cobasis.iter().enumerate() {
        col[c][0] = 1 << j;
        col[c][1] = (0..nb).filter(|&i| sf.a[i][j]).fold(0, |acc, i| acc | 1 << (nc + i));
    }
    let flat: Vec<u64> = col.iter().flat_map(|c| c.iter().copied()).collect();
    let oracle: RankOracle = Arc::new(move |mask: u64| {
        let mut b = MaskBasis::default();
        (0..flat.len()).filter(|&i| mask >> i & 1 == 1).filter(|&i| b.insert(flat[i])).count()
    });
    let (labels, classes) = pair_labels(m, 2);
    SemiMultimatroid::from_oracle(labels, classes, oracle).expect("partition")
}

/// `Z₃(M)`: `Z₃` of the fundamental graph with `φ`, `χ` renamed to
/// `(e,1)`, `(e,2)` as in `z2_of_matroid` and `ψ(e)` to `(e,3)`. For at
/// most seven elements the lift is checked against `Z₂(M)`.
pub fn z3_of_matroid(m: &BinaryMatroidRep) -> Result<SemiMultimatroid> {
    let sf = m.standard_form();
    let g = fundamental_graph(m);
    let n = m.len();
    let ias = ias_matrix(&g);
    // IAS column for (e, k): φ is k = 2 on the basis and k = 1 on the cobasis
    let mut columns = Vec::with_capacity(3 * n);
    for e in 0..n {
        let (one, two) = if sf.basis.contains(&e) { (n + e, e) } else { (e, n + e) };
        columns.extend([one, two, 2 * n + e]);
    }
    let (labels, classes) = pair_labels(m, 3);
    let z3 = SemiMultimatroid::from_oracle(labels, classes, crate::isotropic::column_oracle(ias, columns))?;
    if n <= 7 {
        let pairs = (0..n).fold(0u64, |acc, e| acc | 0b011 << (3 * e));
        let lower = z3.restriction(pairs)?;
        let z2 = z2_of_matroid(m);
        let mut ok = true;
        z2.for_each_subtransversal(|s| {
            // index 2e + k in z2 is 2e + k in the restriction as well
            ok &= lower.rank(s).ok() == z2.rank(s).ok();
        })?;
        if !ok {
            return Err(Error::Internal("Z3(M) minus the third transversal is not Z2(M)".into()));
        }
    }
    Ok(z3)
}

/// `(I | S)` for the cycle matroid of the directed graph with arcs
/// `a → b`, over `field`: rows and the `φ`, `χ` columns are indexed by the
/// vertices of `fundamental_graph`, and `S = [[0, A], [−Aᵀ, 0]]` with `A`
/// the signed (totally unimodular) fundamental matrix for the same basis.
pub fn signed_graphic_z2_matrix(nv: usize, edges: &[(usize, usize)], field: FieldSpec) -> Result<ExactMatrix> {
    let m = BinaryMatroidRep::graphic(nv, edges)?;
    let sf = m.standard_form();
    let mut d: Vec<Vec<i64>> = (0..nv).map(|_| vec![0; edges.len()]).collect();
    for (e, &(a, b)) in edges.iter().enumerate() {
        d[a][e] += 1;
        d[b][e] -= 1;
    }
    let mut done = 0;
    for &j in &sf.basis {
        let p = (done..nv).find(|&i| d[i][j] != 0).expect("basis column has a pivot");
        d.swap(done, p);
        let piv = d[done][j];
        if piv == -1 {
            d[done].iter_mut().for_each(|x| *x = -*x);
        }
        for i in (0..nv).filter(|&i| i != done) {
            let f = d[i][j];
            if f != 0 {
                for k in 0..edges.len() {
                    d[i][k] -= f * d[done][k];
                }
            }
        }
        done += 1;
    }
    let n = m.len();
    let mut rows = vec![vec![0i64; 2 * n]; n];
    for (v, row) in rows.iter_mut().enumerate() {
        row[v] = 1;
    }
    for (i, &b) in sf.basis.iter().enumerate() {
        for &c in &sf.cobasis {
            let x = d[i][c];
            if x.abs() > 1 {
                return Err(Error::Internal(format!("entry {x} in a network matrix")));
            }
            rows[b][n + c] = x;
            rows[c][n + b] = -x;
        }
    }
    let labels: Vec<String> = [TransitionKind::Phi, TransitionKind::Chi]
        .iter()
        .flat_map(|&k| m.labels().iter().map(move |l| element_label(k, l)))
        .collect();
    ExactMatrix::from_ints(m.labels(), &labels, &rows, FieldSpec::Rational)?.reduce_to(field)
}

#[cfg(test)]
mod tests {
    use super::super::{bits, mm_isomorphic, Classification};
    use super::*;
    use crate::graph::named_graph;

    #[test]
    fn text_round_trip_and_errors() {
        let m = BinaryMatroidRep::fano();
        assert_eq!(BinaryMatroidRep::parse(&m.to_text()).unwrap(), m);
        let anon = BinaryMatroidRep::parse("# x\nrank 2\n10\n01\n11\n").unwrap();
        assert_eq!(anon.labels(), &["e1", "e2", "e3"]);
        assert_eq!(anon.rank(), 2);
        assert!(matches!(BinaryMatroidRep::parse("rank 2\n101\n"), Err(Error::Parse { line: 2, .. })));
        assert!(BinaryMatroidRep::parse("10\n").is_err());
    }

    #[test]
    fn standard_matroid_shapes() {
        for (name, n, r) in [("K4", 6, 3), ("K5", 10, 4), ("K33", 9, 5), ("Fano", 7, 3)] {
            let m = BinaryMatroidRep::named(name).unwrap();
            assert_eq!((m.len(), m.rank()), (n, r), "{name}");
            let sf = m.standard_form();
            assert_eq!(sf.basis.len(), r);
            let labels: Vec<&str> = m.labels().iter().map(|s| s.as_str()).collect();
            let b: Vec<&str> = sf.basis.iter().map(|&i| labels[i]).collect();
            let c: Vec<&str> = sf.cobasis.iter().map(|&i| labels[i]).collect();
            let std = BinaryMatroidRep::from_standard(&b, &c, &sf.a).unwrap();
            let pos: Vec<usize> = labels.iter().map(|l| std.labels().iter().position(|x| x == l).unwrap()).collect();
            for s in 0u64..1 << n {
                let t = bits(s).fold(0u64, |acc, e| acc | 1 << pos[e]);
                assert_eq!(m.rank_of(s), std.rank_of(t), "{name}");
            }
            let g = fundamental_graph(&m);
            assert!(g.is_bipartite() && g.is_simple());
        }
    }

    #[test]
    fn free_matroid_gives_edgeless_graph() {
        let m = BinaryMatroidRep::from_standard(&["a", "b"], &[], &[vec![], vec![]]).unwrap();
        assert_eq!(fundamental_graph(&m).edge_count(), 0);
        let z3 = z3_of_matroid(&m).unwrap();
        let e = crate::isotropic::multimatroid_view(&LoopedGraph::new(&["a", "b"]).unwrap(), 3).unwrap();
        assert!(mm_isomorphic(&z3, &e).unwrap().is_some());
    }

    #[test]
    fn coloop_z2() {
        let m = BinaryMatroidRep::parse("rank 1\nx 1\n").unwrap();
        let z = z2_of_matroid(&m);
        assert_eq!(z.order(), 1);
        // (x,1) is a loop of M* and (x,2) a coloop of M
        assert_eq!(z.circuit_labels(), vec![vec!["x:1".to_string()]]);
    }

    #[test]
    fn z2_of_k4_is_tight_and_matches_its_fundamental_graph() {
        let m = BinaryMatroidRep::complete(4);
        let z = z2_of_matroid(&m);
        assert_eq!(z.order(), 6);
        assert_eq!(z.classify().unwrap(), Classification::TightMultimatroid);
        let zg = crate::isotropic::multimatroid_view(&fundamental_graph(&m), 2).unwrap();
        assert!(mm_isomorphic(&z, &zg).unwrap().is_some());
        let z3 = z3_of_matroid(&m).unwrap();
        assert_eq!(z3.classify().unwrap(), Classification::TightMultimatroid);
    }

    #[test]
    fn z2_circuits_stay_on_one_side() {
        for name in ["K4", "Fano", "K33"] {
            let m = BinaryMatroidRep::named(name).unwrap();
            let z = z2_of_matroid(&m);
            let ones = (0..m.len()).fold(0u64, |a, e| a | 1 << (2 * e));
            for c in z.circuits().unwrap() {
                assert!(c & ones == c || c & !ones == c, "{name}");
            }
        }
    }

    #[test]
    fn fano_and_bw3_share_z2() {
        let z = z2_of_matroid(&BinaryMatroidRep::fano());
        let b = crate::isotropic::multimatroid_view(&named_graph("BW3").unwrap(), 2).unwrap();
        assert!(mm_isomorphic(&z, &b).unwrap().is_some());
    }

    #[test]
    fn signed_graphic_matrices_shelter_z2_over_gf3() {
        let k4: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let m = signed_graphic_z2_matrix(4, &k4, FieldSpec::Gfp(3)).unwrap();
        let g = fundamental_graph(&BinaryMatroidRep::complete(4));
        assert!(crate::isotropic::shelters(&m, &g, 2, true).unwrap().verdict);
        // the signing matters: the 0/1 support of the same matrix fails over GF(3)
        let rows: Vec<Vec<i64>> = m.to_i64().unwrap().iter().map(|r| r.iter().map(|x| x.rem_euclid(3).min(1)).collect()).collect();
        let plain = ExactMatrix::from_ints(m.row_labels(), m.col_labels(), &rows, FieldSpec::Gfp(3)).unwrap();
        assert!(!crate::isotropic::shelters(&plain, &g, 2, true).unwrap().verdict);
    }
}
