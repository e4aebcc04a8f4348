//! Exact linear algebra over GF(2), GF(p) and the rationals.

pub mod bareiss;
pub mod bits;
pub mod echelon;
pub mod field;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use bareiss::IntBasis;
use bits::{BitRow, Gf2Solution, MaskBasis};
use echelon::FieldBasis;
pub use field::{FieldArith, FieldSpec, PrimeField, Rationals};

/// Matrix with labelled rows and columns over a fixed field.
///
/// Labels are kept in construction order, which fixes the elimination order.
/// Equality compares entries by label, so two matrices listing the same
/// labels in different orders are equal.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    rows: Vec<String>,
    cols: Vec<String>,
    row_index: HashMap<String, usize>,
    col_index: HashMap<String, usize>,
    entries: Vec<Vec<BigRational>>,
    field: FieldSpec,
}

fn index_of(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(map)
}

impl ExactMatrix {
    pub fn new(
        rows: Vec<String>,
        cols: Vec<String>,
        entries: Vec<Vec<BigRational>>,
        field: FieldSpec,
    ) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::Dimension(format!(
                "{} row labels and {} column labels do not match the entry grid",
                rows.len(),
                cols.len()
            )));
        }
        let entries = entries
            .iter()
            .map(|r| r.iter().map(|x| field.reduce(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            row_index: index_of(&rows)?,
            col_index: index_of(&cols)?,
            rows,
            cols,
            entries,
            field,
        })
    }

    pub fn from_ints<R: ToString, C: ToString>(
        rows: &[R],
        cols: &[C],
        entries: &[Vec<i64>],
        field: FieldSpec,
    ) -> Result<Self> {
        let e = entries.iter().map(|r| r.iter().map(|&x| field::rat(x)).collect()).collect();
        ExactMatrix::new(
            rows.iter().map(|r| r.to_string()).collect(),
            cols.iter().map(|c| c.to_string()).collect(),
            e,
            field,
        )
    }

    /// Matrix with labels `r0, r1, ...` and `c0, c1, ...`.
    pub fn from_grid(entries: &[Vec<i64>], field: FieldSpec) -> Result<Self> {
        let nr = entries.len();
        let nc = entries.first().map_or(0, |r| r.len());
        let rows: Vec<String> = (0..nr).map(|i| format!("r{i}")).collect();
        let cols: Vec<String> = (0..nc).map(|j| format!("c{j}")).collect();
        ExactMatrix::from_ints(&rows, &cols, entries, field)
    }

    pub fn identity<L: ToString>(labels: &[L], field: FieldSpec) -> Self {
        let n = labels.len();
        let grid: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        ExactMatrix::from_ints(labels, labels, &grid, field).expect("identity is well formed")
    }

    pub fn zeros<R: ToString, C: ToString>(rows: &[R], cols: &[C], field: FieldSpec) -> Result<Self> {
        ExactMatrix::from_ints(rows, cols, &vec![vec![0; cols.len()]; rows.len()], field)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_pos(&self, label: &str) -> Result<usize> {
        self.row_index.get(label).copied().ok_or_else(|| Error::UnknownRow(label.to_string()))
    }

    pub fn col_pos(&self, label: &str) -> Result<usize> {
        self.col_index.get(label).copied().ok_or_else(|| Error::UnknownColumn(label.to_string()))
    }

    pub fn get(&self, row: &str, col: &str) -> Result<&BigRational> {
        Ok(&self.entries[self.row_pos(row)?][self.col_pos(col)?])
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn rows_vec(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    /// Entries as machine integers, if all are integral and fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.entries.iter().map(|r| r.iter().map(field::rat_to_i64).collect()).collect()
    }

    pub fn entries_display(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(field::fmt_rat).collect()).collect()
    }

    pub fn cols_by_label<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.col_pos(l.as_ref())).collect()
    }

    pub fn rank(&self, restrict_cols: Option<&[&str]>) -> Result<usize> {
        let cols = match restrict_cols {
            Some(ls) => self.cols_by_label(ls)?,
            None => (0..self.ncols()).collect(),
        };
        Ok(self.rank_of_columns(&cols))
    }

    pub fn rank_of_columns(&self, cols: &[usize]) -> usize {
        if cols.is_empty() || self.nrows() == 0 {
            return 0;
        }
        match self.field {
            FieldSpec::Gf2 => {
                let rows: Vec<BitRow> = self
                    .entries
                    .iter()
                    .map(|r| BitRow::from_bools(&cols.iter().map(|&c| !r[c].is_zero()).collect::<Vec<_>>()))
                    .collect();
                bits::rank(&rows, cols.len())
            }
            FieldSpec::Gfp(p) => {
                let k = PrimeField { p: p as u64 };
                let rows: Vec<Vec<u64>> = self
                    .entries
                    .iter()
                    .map(|r| cols.iter().map(|&c| r[c].numer().to_u64().expect("residue")).collect())
                    .collect();
                echelon::rank(&k, &rows)
            }
            FieldSpec::Rational => {
                let rows = integral_rows(&self.entries, cols);
                match small_rows(&rows) {
                    Some(s) => bareiss::rank_i64(&s),
                    None => bareiss::rank_checked(rows).expect("bigint never overflows"),
                }
            }
        }
    }

    /// Determinant in the matrix's field, as a canonical representative.
    pub fn determinant(&self) -> Result<BigRational> {
        if self.nrows() != self.ncols() {
            return Err(Error::NotSquare { rows: self.nrows(), cols: self.ncols() });
        }
        let all: Vec<usize> = (0..self.ncols()).collect();
        // clear denominators row by row, then undo the scaling
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(self.nrows());
        for r in &self.entries {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            rows.push(all.iter().map(|&c| (&r[c] * BigRational::from_integer(l.clone())).to_integer()).collect());
        }
        let d = match small_rows(&rows) {
            Some(s) => bareiss::det_i64(&s),
            None => bareiss::det_checked(rows).expect("bigint never overflows"),
        };
        self.field.reduce(&BigRational::new(d, scale))
    }

    pub fn nullity(&self) -> usize {
        self.ncols() - self.rank_of_columns(&(0..self.ncols()).collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> Self {
        let t = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        ExactMatrix::new(self.cols.clone(), self.rows.clone(), t, self.field).expect("transpose keeps shape")
    }

    /// Product, matching `self`'s column labels against `other`'s row labels.
    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Dimension(format!("fields {} and {} differ", self.field, other.field)));
        }
        if self.ncols() != other.nrows() {
            return Err(Error::Dimension(format!(
                "{} columns against {} rows",
                self.ncols(),
                other.nrows()
            )));
        }
        let map: Vec<usize> = self.cols.iter().map(|l| other.row_pos(l)).collect::<Result<_>>()?;
        let mut out = vec![vec![BigRational::zero(); other.ncols()]; self.nrows()];
        for (i, row) in out.iter_mut().enumerate() {
            for (k, &ok) in map.iter().enumerate() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell += a * &other.entries[ok][j];
                }
            }
        }
        ExactMatrix::new(self.rows.clone(), other.cols.clone(), out, self.field)
    }

    pub fn reduce_to(&self, field: FieldSpec) -> Result<Self> {
        ExactMatrix::new(self.rows.clone(), self.cols.clone(), self.entries.clone(), field)
    }

    pub fn select_columns<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let pos = self.cols_by_label(labels)?;
        let e = self.entries.iter().map(|r| pos.iter().map(|&c| r[c].clone()).collect()).collect();
        ExactMatrix::new(
            self.rows.clone(),
            labels.iter().map(|l| l.as_ref().to_string()).collect(),
            e,
            self.field,
        )
    }

    pub fn relabel_columns(&self, cols: Vec<String>) -> Result<Self> {
        ExactMatrix::new(self.rows.clone(), cols, self.entries.clone(), self.field)
    }

    pub fn column_basis(&self) -> ColumnBasis {
        ColumnBasis::new(self)
    }

    /// Gauss-Jordan pivot on a nonzero entry: row `i` is scaled so the entry
    /// becomes 1 and column `j` is cleared elsewhere.
    pub fn pivot(&self, i: usize, j: usize) -> Result<Self> {
        let p = self.entries[i][j].clone();
        if p.is_zero() {
            return Err(Error::Dimension(format!("zero pivot at ({}, {})", self.rows[i], self.cols[j])));
        }
        let f = self.field;
        let inv = f.reduce(&p.recip())?;
        let mut e = self.entries.clone();
        e[i] = e[i].iter().map(|x| f.reduce(&(x * &inv))).collect::<Result<_>>()?;
        let pr = e[i].clone();
        for (r, row) in e.iter_mut().enumerate() {
            if r == i || row[j].is_zero() {
                continue;
            }
            let c = row[j].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                *x = f.reduce(&(&*x - &c * y))?;
            }
        }
        ExactMatrix::new(self.rows.clone(), self.cols.clone(), e, f)
    }

    pub fn scale_column(&self, j: usize, c: &BigRational) -> Result<Self> {
        let mut e = self.entries.clone();
        for row in &mut e {
            row[j] = &row[j] * c;
        }
        ExactMatrix::new(self.rows.clone(), self.cols.clone(), e, self.field)
    }

    pub fn scale_row(&self, i: usize, c: &BigRational) -> Result<Self> {
        let mut e = self.entries.clone();
        e[i] = e[i].iter().map(|x| x * c).collect();
        ExactMatrix::new(self.rows.clone(), self.cols.clone(), e, self.field)
    }

    /// Row `dst` += `c` · row `src`.
    pub fn add_row_multiple(&self, dst: usize, src: usize, c: &BigRational) -> Result<Self> {
        let mut e = self.entries.clone();
        let s = e[src].clone();
        for (x, y) in e[dst].iter_mut().zip(&s) {
            *x = &*x + c * y;
        }
        ExactMatrix::new(self.rows.clone(), self.cols.clone(), e, self.field)
    }

    pub fn remove_rows(&self, drop: &[usize]) -> Result<Self> {
        let keep: Vec<usize> = (0..self.nrows()).filter(|i| !drop.contains(i)).collect();
        ExactMatrix::new(
            keep.iter().map(|&i| self.rows[i].clone()).collect(),
            self.cols.clone(),
            keep.iter().map(|&i| self.entries[i].clone()).collect(),
            self.field,
        )
    }

    pub fn remove_columns(&self, drop: &[usize]) -> Result<Self> {
        let keep: Vec<usize> = (0..self.ncols()).filter(|j| !drop.contains(j)).collect();
        ExactMatrix::new(
            self.rows.clone(),
            keep.iter().map(|&j| self.cols[j].clone()).collect(),
            self.entries.iter().map(|r| keep.iter().map(|&j| r[j].clone()).collect()).collect(),
            self.field,
        )
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return false;
        }
        let cmap: Option<Vec<usize>> = self.cols.iter().map(|l| other.col_index.get(l).copied()).collect();
        let rmap: Option<Vec<usize>> = self.rows.iter().map(|l| other.row_index.get(l).copied()).collect();
        let (Some(cmap), Some(rmap)) = (cmap, rmap) else {
            return false;
        };
        rmap.iter()
            .enumerate()
            .all(|(i, &oi)| cmap.iter().enumerate().all(|(j, &oj)| self.entries[i][j] == other.entries[oi][oj]))
    }
}

impl Eq for ExactMatrix {}

fn integral_rows(entries: &[Vec<BigRational>], cols: &[usize]) -> Vec<Vec<BigInt>> {
    entries
        .iter()
        .map(|r| {
            let l = cols.iter().fold(BigInt::one(), |acc, &c| acc.lcm(r[c].denom()));
            cols.iter()
                .map(|&c| (&r[c] * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

fn small_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
}

/// Solves `a x = b` over GF(2); free variables are zero in column order.
pub fn solve_gf2(a: &ExactMatrix, b: &[bool]) -> Result<Option<Vec<bool>>> {
    Ok(match solve_gf2_certified(a, b)? {
        Gf2Solution::Solved(x) => Some(x),
        Gf2Solution::Inconsistent { .. } => None,
    })
}

pub fn solve_gf2_certified(a: &ExactMatrix, b: &[bool]) -> Result<Gf2Solution> {
    if a.field != FieldSpec::Gf2 {
        return Err(Error::Dimension(format!("matrix is over {}, expected gf2", a.field)));
    }
    if b.len() != a.nrows() {
        return Err(Error::Dimension(format!("right-hand side has {} entries for {} rows", b.len(), a.nrows())));
    }
    let rows: Vec<BitRow> = a
        .entries
        .iter()
        .map(|r| BitRow::from_bools(&r.iter().map(|x| !x.is_zero()).collect::<Vec<_>>()))
        .collect();
    Ok(bits::solve(&rows, b, a.ncols()))
}

enum Kernel {
    Mask(Vec<u64>, MaskBasis),
    Prime(Vec<Vec<u64>>, FieldBasis<PrimeField>),
    Int {
        small: Vec<Vec<i128>>,
        big: Vec<Vec<BigInt>>,
        fast: Option<IntBasis<i128>>,
        slow: IntBasis<BigInt>,
        stack: Vec<usize>,
    },
}

/// Incremental rank of column sets with stack-like undo, for exhaustive
/// sweeps over many column subsets of one matrix.
pub struct ColumnBasis {
    kernel: Kernel,
}

impl ColumnBasis {
    pub fn new(m: &ExactMatrix) -> Self {
        let col = |j: usize| m.entries.iter().map(|r| r[j].clone()).collect::<Vec<_>>();
        let kernel = match m.field {
            FieldSpec::Gf2 if m.nrows() <= 64 => {
                let cols = (0..m.ncols())
                    .map(|j| {
                        col(j).iter().enumerate().fold(0u64, |acc, (i, x)| acc | ((!x.is_zero() as u64) << i))
                    })
                    .collect();
                Kernel::Mask(cols, MaskBasis::default())
            }
            FieldSpec::Gf2 | FieldSpec::Gfp(_) => {
                let p = m.field.characteristic();
                let cols = (0..m.ncols())
                    .map(|j| col(j).iter().map(|x| x.numer().to_u64().expect("residue")).collect())
                    .collect();
                Kernel::Prime(cols, FieldBasis::new(PrimeField { p }))
            }
            FieldSpec::Rational => {
                // scaling a column by a nonzero constant preserves every column rank
                let big: Vec<Vec<BigInt>> = (0..m.ncols())
                    .map(|j| {
                        let c = col(j);
                        let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                        c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
                    })
                    .collect();
                let small: Option<Vec<Vec<i128>>> =
                    big.iter().map(|c| c.iter().map(|x| x.to_i128()).collect()).collect();
                let fast = small.as_ref().map(|_| IntBasis::default());
                Kernel::Int { small: small.unwrap_or_default(), big, fast, slow: IntBasis::default(), stack: Vec::new() }
            }
        };
        ColumnBasis { kernel }
    }

    pub fn len(&self) -> usize {
        match &self.kernel {
            Kernel::Mask(_, b) => b.len(),
            Kernel::Prime(_, b) => b.len(),
            Kernel::Int { stack, .. } => stack.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Adds column `j`; returns whether it raised the rank.
    pub fn push(&mut self, j: usize) -> bool {
        match &mut self.kernel {
            Kernel::Mask(cols, b) => b.insert(cols[j]),
            Kernel::Prime(cols, b) => b.insert(&cols[j]),
            Kernel::Int { small, big, fast, slow, stack } => {
                if let Some(f) = fast {
                    match f.insert(small[j].clone()) {
                        Some(ind) => {
                            if ind {
                                stack.push(j);
                            }
                            return ind;
                        }
                        None => {
                            // overflow: replay the current basis in arbitrary precision
                            *fast = None;
                            *slow = IntBasis::default();
                            for &c in stack.iter() {
                                slow.insert(big[c].clone());
                            }
                        }
                    }
                }
                let ind = slow.insert(big[j].clone()).expect("bigint never overflows");
                if ind {
                    stack.push(j);
                }
                ind
            }
        }
    }

    pub fn truncate(&mut self, n: usize) {
        match &mut self.kernel {
            Kernel::Mask(_, b) => b.truncate(n),
            Kernel::Prime(_, b) => b.truncate(n),
            Kernel::Int { fast, slow, stack, .. } => {
                stack.truncate(n);
                match fast {
                    Some(f) => f.truncate(n),
                    None => slow.truncate(n),
                }
            }
        }
    }

    /// Rank of an arbitrary column set, leaving the basis as it was.
    pub fn rank_of(&mut self, cols: &[usize]) -> usize {
        let base = self.len();
        for &c in cols {
            self.push(c);
        }
        let r = self.len() - base;
        self.truncate(base);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(m: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_grid(m, FieldSpec::Rational).unwrap()
    }

    /// Rank as the size of the largest nonvanishing minor.
    fn minor_rank(m: &[Vec<i64>]) -> usize {
        let nr = m.len();
        let nc = m[0].len();
        for k in (1..=nr.min(nc)).rev() {
            for rs in subsets(nr, k) {
                for cs in subsets(nc, k) {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    if !bareiss::det_i64(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn w5_submatrix_has_rank_three() {
        // rows 1..6, columns phi(4), phi(5), chi(3), chi(6) of IAS(W5)
        let m = vec![
            vec![0, 0, 1, 1],
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 0],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![0, 0, 0, 0],
        ];
        let a = ExactMatrix::from_grid(&m, FieldSpec::Gf2).unwrap();
        assert_eq!(a.rank(None).unwrap(), 3);
    }

    #[test]
    fn det_three_example() {
        let m = q(&[vec![0, 1, 1], vec![-1, 0, 1], vec![1, -1, 1]]);
        assert_eq!(m.determinant().unwrap(), field::rat(3));
        assert_eq!(m.nullity(), 0);
        assert_eq!(m.reduce_to(FieldSpec::Gfp(3)).unwrap().nullity(), 1);
        assert_eq!(m.reduce_to(FieldSpec::Gfp(3)).unwrap().determinant().unwrap(), field::rat(0));
    }

    #[test]
    fn symbolic_determinant_at_ones() {
        let m = q(&[
            vec![1, 1, 1, 1, 1, 1],
            vec![0, 0, 1, 0, 0, 1],
            vec![0, 1, 0, 1, 0, 0],
            vec![0, 0, 1, 0, 1, 0],
            vec![0, 0, 0, 1, 0, 1],
            vec![0, 1, 0, 0, 1, 0],
        ]);
        assert_eq!(m.determinant().unwrap(), field::rat(2));
        assert_eq!(m.reduce_to(FieldSpec::Gf2).unwrap().determinant().unwrap(), field::rat(0));
    }

    #[test]
    fn non_square_determinant_errors() {
        let m = q(&[vec![1, 2]]);
        assert!(matches!(m.determinant(), Err(Error::NotSquare { .. })));
        assert_eq!(q(&[vec![0, 0], vec![0, 0]]).determinant().unwrap(), field::rat(0));
    }

    #[test]
    fn unknown_column_is_an_error() {
        let m = q(&[vec![1, 2]]);
        assert!(matches!(m.rank(Some(&["zz"])), Err(Error::UnknownColumn(_))));
    }

    #[test]
    fn solve_rejects_mismatched_rhs() {
        let a = ExactMatrix::from_grid(&[vec![1]], FieldSpec::Gf2).unwrap();
        assert!(solve_gf2(&a, &[true, false]).is_err());
        assert_eq!(solve_gf2(&a, &[true]).unwrap(), Some(vec![true]));
    }

    #[test]
    fn equality_is_by_label() {
        let a = ExactMatrix::from_ints(&["x", "y"], &["p", "q"], &[vec![1, 2], vec![3, 4]], FieldSpec::Rational)
            .unwrap();
        let b = ExactMatrix::from_ints(&["y", "x"], &["q", "p"], &[vec![4, 3], vec![2, 1]], FieldSpec::Rational)
            .unwrap();
        assert_eq!(a, b);
    }

    fn small_matrix(n: usize, m: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, m), n)
    }

    proptest! {
        #[test]
        fn rational_rank_matches_minor_oracle(m in small_matrix(5, 5)) {
            prop_assert_eq!(q(&m).rank(None).unwrap(), minor_rank(&m));
        }

        #[test]
        fn rank_is_transpose_invariant(m in small_matrix(4, 6), p in prop::sample::select(vec![2u64, 3, 5, 0])) {
            let f = if p == 0 { FieldSpec::Rational } else { FieldSpec::gfp(p).unwrap() };
            let a = ExactMatrix::from_grid(&m, f).unwrap();
            prop_assert_eq!(a.rank(None).unwrap(), a.transpose().rank(None).unwrap());
        }

        #[test]
        fn rational_rank_dominates_modular(m in small_matrix(4, 5), p in prop::sample::select(vec![2u64, 3, 5])) {
            let a = q(&m);
            let r = a.reduce_to(FieldSpec::gfp(p).unwrap()).unwrap();
            prop_assert!(a.rank(None).unwrap() >= r.rank(None).unwrap());
        }

        #[test]
        fn determinant_is_multiplicative(a in small_matrix(4, 4), b in small_matrix(4, 4)) {
            let (x, y) = (q(&a), q(&b));
            let y = ExactMatrix::new(x.col_labels().to_vec(), y.col_labels().to_vec(), y.rows_vec().to_vec(), FieldSpec::Rational).unwrap();
            let prod = x.mul(&y).unwrap();
            prop_assert_eq!(prod.determinant().unwrap(), x.determinant().unwrap() * y.determinant().unwrap());
        }

        #[test]
        fn gf2_solutions_are_exact(m in proptest::collection::vec(proptest::collection::vec(0i64..=1, 6), 5),
                                   b in proptest::collection::vec(any::<bool>(), 5)) {
            let a = ExactMatrix::from_grid(&m, FieldSpec::Gf2).unwrap();
            match solve_gf2(&a, &b).unwrap() {
                Some(x) => {
                    for (row, &rhs) in m.iter().zip(&b) {
                        let s = row.iter().zip(&x).filter(|(&e, &xi)| e == 1 && xi).count() % 2 == 1;
                        prop_assert_eq!(s, rhs);
                    }
                }
                None => {
                    let aug: Vec<Vec<i64>> = m.iter().zip(&b).map(|(r, &bi)| {
                        let mut r = r.clone();
                        r.push(bi as i64);
                        r
                    }).collect();
                    let aug = ExactMatrix::from_grid(&aug, FieldSpec::Gf2).unwrap();
                    prop_assert_eq!(aug.rank(None).unwrap(), a.rank(None).unwrap() + 1);
                }
            }
        }

        #[test]
        fn column_basis_agrees_with_batch_rank(m in small_matrix(4, 7), p in prop::sample::select(vec![2u64, 3, 0]),
                                               pick in proptest::collection::vec(0usize..7, 0..7)) {
            let f = if p == 0 { FieldSpec::Rational } else { FieldSpec::gfp(p).unwrap() };
            let a = ExactMatrix::from_grid(&m, f).unwrap();
            let mut cb = a.column_basis();
            prop_assert_eq!(cb.rank_of(&pick), a.rank_of_columns(&pick));
            prop_assert!(cb.is_empty());
        }
    }
}
