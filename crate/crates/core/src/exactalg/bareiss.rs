//! Fraction-free integer elimination, generic over the integer carrier.
//!
//! Every kernel is written once against [`IntScalar`] and run first on `i64`
//! with checked arithmetic; an overflow makes the wrapper rerun it on
//! `BigInt`, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

pub trait IntScalar: Clone + Integer + Signed + CheckedMul + CheckedSub + std::fmt::Debug {
    fn from_i64(x: i64) -> Self;
}

impl IntScalar for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
}

impl IntScalar for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
}

impl IntScalar for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
}

/// `a*d - b*c`, or `None` on overflow.
fn cross<T: IntScalar>(a: &T, d: &T, b: &T, c: &T) -> Option<T> {
    a.checked_mul(d)?.checked_sub(&b.checked_mul(c)?)
}

/// Fraction-free row echelon form in place. Returns the rank, or `None` if
/// the carrier overflowed. `sign` tracks row swaps.
fn echelon<T: IntScalar>(m: &mut [Vec<T>], sign: &mut bool) -> Option<usize> {
    let rows = m.len();
    if rows == 0 {
        return Some(0);
    }
    let cols = m[0].len();
    let mut prev = T::one();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        if p != k {
            m.swap(p, k);
            *sign = !*sign;
        }
        for i in k + 1..rows {
            for j in c + 1..cols {
                let v = cross(&m[k][c], &m[i][j], &m[i][c], &m[k][j])?;
                m[i][j] = v / prev.clone();
            }
            m[i][c] = T::zero();
        }
        prev = m[k][c].clone();
        k += 1;
    }
    Some(k)
}

pub fn rank_checked<T: IntScalar>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let mut sign = false;
    echelon(&mut m, &mut sign)
}

/// Bareiss determinant of a square matrix; `None` on overflow.
pub fn det_checked<T: IntScalar>(mut m: Vec<Vec<T>>) -> Option<T> {
    let n = m.len();
    if n == 0 {
        return Some(T::one());
    }
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Some(T::zero());
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = cross(&m[k][k], &m[i][j], &m[i][k], &m[k][j])?;
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Some(if sign { -d } else { d })
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    rank_checked(m.to_vec()).unwrap_or_else(|| rank_checked(to_big(m)).expect("bigint never overflows"))
}

pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    match det_checked(m.to_vec()) {
        Some(d) => BigInt::from(d),
        None => det_checked(to_big(m)).expect("bigint never overflows"),
    }
}

/// Rank of the columns `cols` of a column-major integer matrix.
pub fn column_rank_i64(columns: &[Vec<i64>], cols: &[usize]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    // rank(M) = rank(M^T): eliminate with the selected columns as rows
    let rows: Vec<Vec<i64>> = cols.iter().map(|&c| columns[c].clone()).collect();
    rank_i64(&rows)
}

/// Incremental fraction-free basis for integer vectors. Inserted vectors are
/// reduced against stored pivots; stored rows are kept primitive (content 1).
#[derive(Clone, Debug)]
pub struct IntBasis<T: IntScalar> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: IntScalar> Default for IntBasis<T> {
    fn default() -> Self {
        IntBasis { rows: Vec::new() }
    }
}

impl<T: IntScalar> IntBasis<T> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn truncate(&mut self, n: usize) {
        self.rows.truncate(n);
    }

    pub fn insert_i64(&mut self, v: &[i64]) -> Option<bool> {
        let x: Vec<T> = v.iter().map(|&e| T::from_i64(e)).collect();
        self.insert(x)
    }

    /// Inserts `x`; returns whether it was independent of the stored rows,
    /// or `None` on overflow (the basis is then unchanged).
    pub fn insert(&mut self, mut x: Vec<T>) -> Option<bool> {
        for (piv, row) in &self.rows {
            if x[*piv].is_zero() {
                continue;
            }
            let a = row[*piv].clone();
            let b = x[*piv].clone();
            for j in 0..x.len() {
                x[j] = cross(&a, &x[j], &b, &row[j])?;
            }
            primitive(&mut x);
        }
        match x.iter().position(|e| !e.is_zero()) {
            None => Some(false),
            Some(p) => {
                self.rows.push((p, x));
                Some(true)
            }
        }
    }
}

fn primitive<T: IntScalar>(x: &mut [T]) {
    let mut g = T::zero();
    for e in x.iter() {
        if !e.is_zero() {
            g = g.gcd(e);
        }
    }
    if !g.is_zero() && !g.is_one() {
        for e in x.iter_mut() {
            *e = e.clone() / g.clone();
        }
    }
}
