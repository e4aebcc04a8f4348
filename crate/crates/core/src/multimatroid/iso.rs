//! Isomorphism of explicit semi-multimatroids by class-wise backtracking.

use std::collections::HashSet;

use super::{bits, SemiMultimatroid};
use crate::error::{Error, Result};

pub const MM_ISO_BOUND: usize = 10;

struct Side {
    circuits: Vec<u64>,
    set: HashSet<u64>,
    /// classes touched by each circuit
    touch: Vec<u64>,
    /// per element: circuit counts by size
    sig: Vec<Vec<usize>>,
    class_sig: Vec<Vec<Vec<usize>>>,
}

fn side(z: &SemiMultimatroid) -> Result<Side> {
    let circuits = z.circuits()?;
    let n = z.ground_size();
    let maxk = circuits.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    let mut sig = vec![vec![0usize; maxk + 1]; n];
    let mut touch = Vec::with_capacity(circuits.len());
    for &c in &circuits {
        let mut t = 0u64;
        for e in bits(c) {
            sig[e][c.count_ones() as usize] += 1;
            t |= 1 << z.class_of(e);
        }
        touch.push(t);
    }
    let class_sig = z
        .classes()
        .iter()
        .map(|&c| {
            let mut s: Vec<Vec<usize>> = bits(c).map(|e| sig[e].clone()).collect();
            s.sort();
            s
        })
        .collect();
    Ok(Side { set: circuits.iter().copied().collect(), circuits, touch, sig, class_sig })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

struct Search<'a> {
    z1: &'a SemiMultimatroid,
    z2: &'a SemiMultimatroid,
    a: Side,
    b: Side,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, done1: u64, done2: u64, new1: usize) -> bool {
        let mut count1 = 0;
        for (i, &c) in self.a.circuits.iter().enumerate() {
            let t = self.a.touch[i];
            if t & !done1 == 0 {
                count1 += 1;
                if t >> new1 & 1 == 1 {
                    let img = bits(c).fold(0u64, |acc, e| acc | 1 << self.map[e]);
                    if !self.b.set.contains(&img) {
                        return false;
                    }
                }
            }
        }
        let count2 = self.b.touch.iter().filter(|&&t| t & !done2 == 0).count();
        count1 == count2
    }

    fn run(&mut self, order: &[usize], done1: u64, done2: u64) -> bool {
        let Some((&c1, rest)) = order.split_first() else {
            return true;
        };
        let e1: Vec<usize> = bits(self.z1.classes()[c1]).collect();
        for c2 in 0..self.z2.order() {
            if self.used[c2] || self.a.class_sig[c1] != self.b.class_sig[c2] {
                continue;
            }
            let e2: Vec<usize> = bits(self.z2.classes()[c2]).collect();
            self.used[c2] = true;
            for p in permutations(&e2) {
                if e1.iter().zip(&p).any(|(&x, &y)| self.a.sig[x] != self.b.sig[y]) {
                    continue;
                }
                for (&x, &y) in e1.iter().zip(&p) {
                    self.map[x] = y;
                }
                let (d1, d2) = (done1 | 1 << c1, done2 | 1 << c2);
                if self.consistent(d1, d2, c1) && self.run(rest, d1, d2) {
                    return true;
                }
            }
            self.used[c2] = false;
        }
        false
    }
}

/// Element map `z1 → z2` respecting classes and circuits.
pub fn mm_isomorphic(z1: &SemiMultimatroid, z2: &SemiMultimatroid) -> Result<Option<Vec<usize>>> {
    for z in [z1, z2] {
        if z.order() > MM_ISO_BOUND {
            return Err(Error::TooLarge { got: z.order(), bound: MM_ISO_BOUND });
        }
    }
    if z1.order() != z2.order() || z1.ground_size() != z2.ground_size() {
        return Ok(None);
    }
    let (a, b) = (side(z1)?, side(z2)?);
    let profile = |s: &Side| {
        let mut v: Vec<_> = s.class_sig.clone();
        v.sort();
        (s.circuits.len(), v)
    };
    if profile(&a) != profile(&b) {
        return Ok(None);
    }
    // most constrained classes first
    let mut order: Vec<usize> = (0..z1.order()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(a.touch.iter().filter(|&&t| t >> c & 1 == 1).count()));
    let mut s = Search { z1, z2, a, b, map: vec![usize::MAX; z1.ground_size()], used: vec![false; z2.order()] };
    Ok(if s.run(&order, 0, 0) { Some(s.map) } else { None })
}
