//! Gauss-Jordan elimination over a [`FieldArith`] descriptor.

use super::field::FieldArith;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: FieldArith>(k: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]);
        for j in c..cols {
            m[r][j] = k.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i == r || k.is_zero(&m[i][c]) {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = k.mul(&f, &m[r][j]);
                m[i][j] = k.sub(&m[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldArith>(k: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut w = m.to_vec();
    rref(k, &mut w).len()
}

/// Basis of the right nullspace, one vector per free column in index order.
pub fn nullspace<F: FieldArith>(k: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut w = m.to_vec();
    let pivots = rref(k, &mut w);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![k.zero(); cols];
        v[free] = k.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = k.neg(&w[r][free]);
        }
        out.push(v);
    }
    out
}

/// Incremental basis over a field with undo by truncation.
#[derive(Clone, Debug)]
pub struct FieldBasis<F: FieldArith> {
    k: F,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: FieldArith> FieldBasis<F> {
    pub fn new(k: F) -> Self {
        FieldBasis { k, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn truncate(&mut self, n: usize) {
        self.rows.truncate(n);
    }

    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let k = &self.k;
        let mut x = v.to_vec();
        for (piv, row) in &self.rows {
            if k.is_zero(&x[*piv]) {
                continue;
            }
            // stored rows have a unit pivot
            let f = x[*piv].clone();
            for j in 0..x.len() {
                let t = k.mul(&f, &row[j]);
                x[j] = k.sub(&x[j], &t);
            }
        }
        match x.iter().position(|e| !k.is_zero(e)) {
            None => false,
            Some(p) => {
                let inv = k.inv(&x[p]);
                for e in x.iter_mut() {
                    *e = k.mul(e, &inv);
                }
                self.rows.push((p, x));
                true
            }
        }
    }
}
