//! Semi-multimatroids given by circuits or by a rank oracle.
//!
//! Element sets are `u64` masks over the ground set, so the ground set has
//! at most 64 elements. Minors follow the multimatroid convention: the
//! minor `Z|X` by a subtransversal `X` drops every class meeting `X` and
//! contracts `X`. (This `Z|X` is not matroid restriction; restriction is
//! `Z[X]`.)

mod binary;
mod iso;
mod special;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use binary::{fundamental_graph, signed_graphic_z2_matrix, z2_of_matroid, z3_of_matroid, BinaryMatroidRep, StandardForm};
pub use iso::{mm_isomorphic, MM_ISO_BOUND};
pub use special::{binary_refutation, h33, s1, REFUTATION_BOUND};

pub type RankOracle = Arc<dyn Fn(u64) -> usize + Send + Sync>;

/// Largest number of subtransversals any exhaustive sweep will visit.
pub const SWEEP_BOUND: u64 = 1 << 22;

#[derive(Clone)]
enum Backing {
    Circuits(Vec<u64>),
    Oracle(RankOracle),
}

#[derive(Clone)]
pub struct SemiMultimatroid {
    labels: Vec<String>,
    classes: Vec<u64>,
    class_of: Vec<usize>,
    backing: Backing,
}

impl fmt::Debug for SemiMultimatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemiMultimatroid")
            .field("labels", &self.labels)
            .field("classes", &self.classes)
            .field("explicit", &matches!(self.backing, Backing::Circuits(_)))
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    NotMultimatroid,
    Multimatroid,
    TightMultimatroid,
}

/// Serialized form: classes and circuits by element label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitList {
    pub classes: Vec<Vec<String>>,
    pub circuits: Vec<Vec<String>>,
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn check_partition(n: usize, classes: &[Vec<usize>]) -> Result<(Vec<u64>, Vec<usize>)> {
    if n > 64 {
        return Err(Error::TooLarge { got: n, bound: 64 });
    }
    let mut class_of = vec![usize::MAX; n];
    let mut masks = Vec::with_capacity(classes.len());
    for (ci, c) in classes.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::Structure(format!("class {ci} is empty")));
        }
        let mut m = 0u64;
        for &e in c {
            if e >= n || class_of[e] != usize::MAX {
                return Err(Error::Structure(format!("element {e} is unknown or in two classes")));
            }
            class_of[e] = ci;
            m |= 1 << e;
        }
        masks.push(m);
    }
    if let Some(e) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::Structure(format!("element {e} is in no class")));
    }
    Ok((masks, class_of))
}

impl SemiMultimatroid {
    pub fn from_oracle(labels: Vec<String>, classes: Vec<Vec<usize>>, rank: RankOracle) -> Result<Self> {
        let (classes, class_of) = check_partition(labels.len(), &classes)?;
        Ok(SemiMultimatroid { labels, classes, class_of, backing: Backing::Oracle(rank) })
    }

    /// Validates that the circuits are nonempty, incomparable subtransversals
    /// and satisfy circuit elimination inside every transversal.
    pub fn from_circuits(labels: Vec<String>, classes: Vec<Vec<usize>>, circuits: Vec<u64>) -> Result<Self> {
        let (classes, class_of) = check_partition(labels.len(), &classes)?;
        let z = SemiMultimatroid { labels, classes, class_of, backing: Backing::Circuits(Vec::new()) };
        let mut cs = circuits;
        cs.sort();
        cs.dedup();
        for &c in &cs {
            if c == 0 || !z.is_subtransversal(c) {
                return Err(Error::Structure(format!("circuit {} is not a nonempty subtransversal", z.show(c))));
            }
        }
        for (i, &a) in cs.iter().enumerate() {
            for &b in &cs[i + 1..] {
                if a & b == a || a & b == b {
                    return Err(Error::Structure(format!("circuits {} and {} are nested", z.show(a), z.show(b))));
                }
                if a & b == 0 || !z.is_subtransversal(a | b) {
                    continue;
                }
                for e in bits(a & b) {
                    let rest = (a | b) & !(1 << e);
                    if !cs.iter().any(|&c| (c & rest) == c) {
                        return Err(Error::Structure(format!(
                            "elimination fails for {} and {} at {}",
                            z.show(a),
                            z.show(b),
                            z.labels[e]
                        )));
                    }
                }
            }
        }
        Ok(SemiMultimatroid { backing: Backing::Circuits(cs), ..z })
    }

    pub fn from_circuit_list(list: &CircuitList) -> Result<Self> {
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut classes = Vec::new();
        for c in &list.classes {
            let mut class = Vec::new();
            for l in c {
                if index.insert(l.clone(), labels.len()).is_some() {
                    return Err(Error::DuplicateLabel(l.clone()));
                }
                class.push(labels.len());
                labels.push(l.clone());
            }
            classes.push(class);
        }
        let circuits = list
            .circuits
            .iter()
            .map(|c| {
                c.iter().try_fold(0u64, |acc, l| {
                    index.get(l).map(|&i| acc | 1 << i).ok_or_else(|| Error::UnknownColumn(l.clone()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SemiMultimatroid::from_circuits(labels, classes, circuits)
    }

    pub fn to_circuit_list(&self) -> Result<CircuitList> {
        Ok(CircuitList {
            classes: self.classes.iter().map(|&c| self.names(c)).collect(),
            circuits: self.circuits()?.iter().map(|&c| self.names(c)).collect(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownColumn(label.to_string()))
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        labels.iter().try_fold(0u64, |acc, l| Ok(acc | 1 << self.index_of(l.as_ref())?))
    }

    pub fn names(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }

    fn show(&self, mask: u64) -> String {
        format!("{{{}}}", self.names(mask).join(","))
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn ground(&self) -> u64 {
        if self.labels.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.labels.len()) - 1
        }
    }

    /// Number of classes.
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[u64] {
        &self.classes
    }

    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e]
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.backing, Backing::Circuits(_))
    }

    pub fn is_subtransversal(&self, mask: u64) -> bool {
        mask & !self.ground() == 0 && self.classes.iter().all(|&c| (mask & c).count_ones() <= 1)
    }

    pub fn is_transversal(&self, mask: u64) -> bool {
        mask & !self.ground() == 0 && self.classes.iter().all(|&c| (mask & c).count_ones() == 1)
    }

    fn sweep_size(&self) -> u64 {
        self.classes.iter().fold(1u64, |acc, &c| acc.saturating_mul(c.count_ones() as u64 + 1))
    }

    fn unchecked_rank(&self, mask: u64) -> usize {
        match &self.backing {
            Backing::Oracle(r) => r(mask),
            Backing::Circuits(cs) => {
                let mut ind = 0u64;
                for e in bits(mask) {
                    let t = ind | 1 << e;
                    if !cs.iter().any(|&c| (c & t) == c) {
                        ind = t;
                    }
                }
                ind.count_ones() as usize
            }
        }
    }

    pub fn rank(&self, mask: u64) -> Result<usize> {
        if !self.is_subtransversal(mask) {
            return Err(Error::NotSubtransversal(self.show(mask)));
        }
        Ok(self.unchecked_rank(mask))
    }

    pub fn is_independent(&self, mask: u64) -> Result<bool> {
        Ok(self.rank(mask)? == mask.count_ones() as usize)
    }

    /// Calls `f` on every subtransversal, extending classes in order.
    pub fn for_each_subtransversal(&self, mut f: impl FnMut(u64)) -> Result<()> {
        if self.sweep_size() > SWEEP_BOUND {
            return Err(Error::TooLarge { got: self.sweep_size() as usize, bound: SWEEP_BOUND as usize });
        }
        fn rec(classes: &[u64], acc: u64, f: &mut dyn FnMut(u64)) {
            let Some((&c, rest)) = classes.split_first() else {
                f(acc);
                return;
            };
            rec(rest, acc, f);
            for e in bits(c) {
                rec(rest, acc | 1 << e, f);
            }
        }
        rec(&self.classes, 0, &mut f);
        Ok(())
    }

    /// The circuit family, materialized from the oracle when needed.
    pub fn circuits(&self) -> Result<Vec<u64>> {
        if let Backing::Circuits(cs) = &self.backing {
            return Ok(cs.clone());
        }
        let mut out = Vec::new();
        self.for_each_subtransversal(|s| {
            let k = s.count_ones() as usize;
            if k == 0 || self.unchecked_rank(s) + 1 != k {
                return;
            }
            if bits(s).all(|e| self.unchecked_rank(s & !(1 << e)) + 1 == k) {
                out.push(s);
            }
        })?;
        out.sort();
        Ok(out)
    }

    pub fn circuit_labels(&self) -> Vec<Vec<String>> {
        self.circuits().expect("within sweep bound").iter().map(|&c| self.names(c)).collect()
    }

    /// Circuit-backed copy.
    pub fn materialize(&self) -> Result<Self> {
        Ok(SemiMultimatroid { backing: Backing::Circuits(self.circuits()?), ..self.clone() })
    }

    /// Maximal independent subtransversals.
    pub fn bases(&self) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        self.for_each_subtransversal(|s| {
            if self.unchecked_rank(s) != s.count_ones() as usize {
                return;
            }
            let free = self.classes.iter().filter(|&&c| c & s == 0).fold(0u64, |a, &c| a | c);
            if bits(free).all(|e| self.unchecked_rank(s | 1 << e) == s.count_ones() as usize) {
                out.push(s);
            }
        })?;
        Ok(out)
    }

    /// `Z[X]`: classes and circuits intersected with `x`; empty classes vanish.
    pub fn restriction(&self, x: u64) -> Result<Self> {
        let x = x & self.ground();
        let old: Vec<usize> = bits(x).collect();
        let mut new_of = vec![usize::MAX; self.labels.len()];
        for (i, &o) in old.iter().enumerate() {
            new_of[o] = i;
        }
        let remap = |m: u64| bits(m).fold(0u64, |a, e| a | 1 << new_of[e]);
        let labels = old.iter().map(|&o| self.labels[o].clone()).collect();
        let classes: Vec<Vec<usize>> = self
            .classes
            .iter()
            .filter(|&&c| c & x != 0)
            .map(|&c| bits(c & x).map(|e| new_of[e]).collect())
            .collect();
        match &self.backing {
            Backing::Circuits(cs) => {
                let circuits = cs.iter().filter(|&&c| c & x == c).map(|&c| remap(c)).collect();
                SemiMultimatroid::from_circuits(labels, classes, circuits)
            }
            Backing::Oracle(r) => {
                let r = r.clone();
                let oracle: RankOracle =
                    Arc::new(move |m: u64| r(bits(m).fold(0u64, |a, i| a | 1 << old[i])));
                SemiMultimatroid::from_oracle(labels, classes, oracle)
            }
        }
    }

    /// `Z − X = Z[U ∖ X]`.
    pub fn delete(&self, x: u64) -> Result<Self> {
        self.restriction(self.ground() & !x)
    }

    /// `Z|X`: classes meeting `x` are removed and `x` is contracted.
    pub fn minor(&self, x: u64) -> Result<Self> {
        if !self.is_subtransversal(x) {
            return Err(Error::NotSubtransversal(self.show(x)));
        }
        let touched = self.classes.iter().filter(|&&c| c & x != 0).fold(0u64, |a, &c| a | c);
        let keep = self.ground() & !touched;
        let shifted = match &self.backing {
            Backing::Circuits(cs) => {
                // circuits of the contraction: minimal nonempty C ∖ X
                let mut cand: Vec<u64> =
                    cs.iter().filter(|&&c| c & touched & !x == 0).map(|&c| c & !x).filter(|&c| c != 0).collect();
                cand.sort_by_key(|c| c.count_ones());
                let mut min: Vec<u64> = Vec::new();
                for c in cand {
                    if !min.iter().any(|&m| (m & c) == m) {
                        min.push(c);
                    }
                }
                SemiMultimatroid { backing: Backing::Circuits(min), ..self.clone() }
            }
            Backing::Oracle(r) => {
                let r = r.clone();
                let rx = r(x);
                let oracle: RankOracle = Arc::new(move |m: u64| r(m | x) - rx);
                SemiMultimatroid { backing: Backing::Oracle(oracle), ..self.clone() }
            }
        };
        shifted.restriction(keep)
    }

    /// Exhaustive check of the order-1 minors.
    pub fn classify(&self) -> Result<Classification> {
        if self.order() == 0 {
            return Ok(Classification::TightMultimatroid);
        }
        let mut worst = Classification::TightMultimatroid;
        for (ci, &c) in self.classes.iter().enumerate() {
            let others: Vec<u64> = self.classes.iter().enumerate().filter(|&(i, _)| i != ci).map(|(_, &m)| m).collect();
            let sweep = others.iter().fold(1u64, |a, &m| a.saturating_mul(m.count_ones() as u64));
            if sweep > SWEEP_BOUND {
                return Err(Error::TooLarge { got: sweep as usize, bound: SWEEP_BOUND as usize });
            }
            let mut x = vec![0u64];
            for m in &others {
                x = x.iter().flat_map(|&p| bits(*m).map(move |e| p | 1 << e)).collect();
            }
            for &xm in &x {
                let rx = self.unchecked_rank(xm);
                let loops = bits(c).filter(|&e| self.unchecked_rank(xm | 1 << e) == rx).count();
                match loops {
                    0 => worst = Classification::Multimatroid,
                    1 => {}
                    _ => return Ok(Classification::NotMultimatroid),
                }
            }
        }
        Ok(worst)
    }
}
