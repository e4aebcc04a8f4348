//! Packed GF(2) elimination.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut r = BitRow::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                r.set(i, true);
            }
        }
        r
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        let m = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

pub fn rank(rows: &[BitRow], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i].get(c)) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        for row in rest.iter_mut() {
            if row.get(c) {
                row.xor(&top[r]);
            }
        }
        r += 1;
    }
    r
}

/// Outcome of solving `A x = b` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gf2Solution {
    Solved(Vec<bool>),
    /// Indices of equations whose sum reads `0 = 1`; `first` is the row at
    /// which elimination first found the contradiction.
    Inconsistent { first: usize, combination: Vec<usize> },
}

/// Solves `A x = b` with free variables set to zero. Columns are eliminated
/// in index order, rows in index order.
pub fn solve(a: &[BitRow], b: &[bool], ncols: usize) -> Gf2Solution {
    let n = a.len();
    // augmented row: [A | b], plus a tag recording which original rows were summed
    let mut rows: Vec<(BitRow, bool, BitRow)> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (r, &rhs))| {
            let mut tag = BitRow::zeros(n);
            tag.set(i, true);
            (r.clone(), rhs, tag)
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..n).find(|&i| rows[i].0.get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            if row.0.get(c) {
                row.0.xor(&piv.0);
                row.1 ^= piv.1;
                row.2.xor(&piv.2);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // remaining rows are zero on the left; a set right-hand side is a contradiction
    let bad = rows[r..]
        .iter()
        .filter(|row| row.1)
        .min_by_key(|row| row.2.ones().max());
    if let Some(row) = bad {
        let combination: Vec<usize> = row.2.ones().collect();
        let first = *combination.iter().max().expect("nonempty tag");
        return Gf2Solution::Inconsistent { first, combination };
    }
    let mut x = vec![false; ncols];
    for &(pr, pc) in pivots.iter().rev() {
        let row = &rows[pr];
        let mut v = row.1;
        for j in row.0.ones() {
            if j != pc && x[j] {
                v = !v;
            }
        }
        x[pc] = v;
    }
    Gf2Solution::Solved(x)
}

/// Incremental GF(2) basis of vectors of length ≤ 64, with undo by truncation.
#[derive(Clone, Debug, Default)]
pub struct MaskBasis {
    rows: Vec<u64>,
}

impl MaskBasis {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn truncate(&mut self, n: usize) {
        self.rows.truncate(n);
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            let lead = 63 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        self.rows.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: &str) -> BitRow {
        BitRow::from_bools(&s.bytes().map(|c| c == b'1').collect::<Vec<_>>())
    }

    #[test]
    fn trivial_systems() {
        assert_eq!(solve(&[row("1")], &[true], 1), Gf2Solution::Solved(vec![true]));
        assert_eq!(solve(&[row("11")], &[false], 2), Gf2Solution::Solved(vec![false, false]));
    }

    #[test]
    fn inconsistency_certificate_sums_to_contradiction() {
        let a = [row("110"), row("011"), row("101")];
        let b = [true, false, false];
        match solve(&a, &b, 3) {
            Gf2Solution::Inconsistent { combination, .. } => {
                let mut acc = BitRow::zeros(3);
                let mut rhs = false;
                for &i in &combination {
                    acc.xor(&a[i]);
                    rhs ^= b[i];
                }
                assert!(acc.is_zero() && rhs);
            }
            s => panic!("expected inconsistency, got {s:?}"),
        }
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut r = BitRow::zeros(130);
        r.set(0, true);
        r.set(64, true);
        r.set(129, true);
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(rank(&[r.clone(), r], 130), 1);
    }

    #[test]
    fn mask_basis_undo() {
        let mut b = MaskBasis::default();
        assert!(b.insert(0b011));
        assert!(b.insert(0b110));
        assert!(!b.insert(0b101));
        b.truncate(1);
        assert!(b.insert(0b101));
    }
}
