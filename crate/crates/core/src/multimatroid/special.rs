//! `H₃,₃`, `S₁`, and the GF(2) refutation certificate.

use super::{bits, SemiMultimatroid};
use crate::error::{Error, Result};
use crate::exactalg::bits::MaskBasis;
use crate::exactalg::{ExactMatrix, FieldSpec};
use crate::isotropic::column_oracle;

/// Largest order accepted by `binary_refutation`.
pub const REFUTATION_BOUND: usize = 8;

/// The 3-matroid sheltered by AG(2,3), with the points `(1, x, y)` over
/// GF(3) and the horizontal lines `y = 0, 1, 2` as skew classes. Point
/// `(x, y)` is labelled `p<x><y>`.
pub fn h33() -> SemiMultimatroid {
    let mut labels = Vec::new();
    let mut cols = Vec::new();
    let mut classes = Vec::new();
    for y in 0..3 {
        let mut class = Vec::new();
        for x in 0..3 {
            class.push(labels.len());
            labels.push(format!("p{x}{y}"));
            cols.push(vec![1, x, y]);
        }
        classes.push(class);
    }
    let rows: Vec<Vec<i64>> = (0..3).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let m = ExactMatrix::from_grid(&rows, FieldSpec::Gfp(3)).expect("well formed");
    let z = SemiMultimatroid::from_oracle(labels, classes, column_oracle(m, (0..9).collect())).expect("partition");
    z.materialize().expect("small")
}

/// Circuits `{1a,2b,3b}`, `{1b,2a,3b}`, `{1b,2b,3a}` on classes `{ia, ib}`.
pub fn s1() -> SemiMultimatroid {
    let labels: Vec<String> = ["1a", "1b", "2a", "2b", "3a", "3b"].iter().map(|s| s.to_string()).collect();
    let circuits = vec![1 | 1 << 3 | 1 << 5, 1 << 1 | 1 << 2 | 1 << 5, 1 << 1 | 1 << 3 | 1 << 4];
    SemiMultimatroid::from_circuits(labels, vec![vec![0, 1], vec![2, 3], vec![4, 5]], circuits).expect("valid")
}

/// A nonempty subtransversal in the GF(2) span of the circuits that holds
/// no circuit. Its existence rules out every binary sheltering matroid:
/// such a set would be a disjoint union of circuits of the shelter, and
/// those circuits would be circuits of `z`. `None` only means that this
/// argument finds nothing.
pub fn binary_refutation(z: &SemiMultimatroid) -> Result<Option<Vec<String>>> {
    if z.order() > REFUTATION_BOUND {
        return Err(Error::TooLarge { got: z.order(), bound: REFUTATION_BOUND });
    }
    let circuits = z.circuits()?;
    let mut span = MaskBasis::default();
    for &c in &circuits {
        span.insert(c);
    }
    let mut found = None;
    z.for_each_subtransversal(|s| {
        if found.is_some() || s == 0 || span.reduce(s) != 0 {
            return;
        }
        if !circuits.iter().any(|&c| (c & s) == c) {
            found = Some(s);
        }
    })?;
    Ok(found.map(|s| bits(s).map(|i| z.labels()[i].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::super::{mm_isomorphic, Classification};
    use super::*;
    use crate::graph::named_graph;
    use crate::isotropic::multimatroid_view;

    #[test]
    fn h33_shape_and_circuits() {
        let h = h33();
        assert_eq!(h.order(), 3);
        assert!(h.classes().iter().all(|c| c.count_ones() == 3));
        // the nine non-horizontal lines of AG(2,3)
        let cs = h.circuits().unwrap();
        assert_eq!(cs.len(), 9);
        assert!(cs.iter().all(|c| c.count_ones() == 3 && h.is_transversal(*c)));
        assert_eq!(h.classify().unwrap(), Classification::TightMultimatroid);
    }

    #[test]
    fn s1_is_refuted_and_not_tight() {
        let s = s1();
        // no circuit holds both 1a and 2a, so S1|{1a,2a} has none
        assert_eq!(s.classify().unwrap(), Classification::Multimatroid);
        let m = s.minor(s.mask_of(&["1a", "2a"]).unwrap()).unwrap();
        assert_eq!(m.order(), 1);
        assert!(m.circuits().unwrap().is_empty());
        assert_eq!(binary_refutation(&s).unwrap(), Some(vec!["1a".into(), "2a".into(), "3a".into()]));
    }

    #[test]
    fn some_transversal_of_h33_leaves_s1() {
        let h = h33();
        let s = s1();
        let mut hits = 0;
        h.for_each_subtransversal(|t| {
            if h.is_transversal(t) {
                let rest = h.delete(t).unwrap();
                let collinear = h.circuits().unwrap().contains(&t);
                let iso = mm_isomorphic(&rest, &s).unwrap().is_some();
                // removing a line leaves two circuits, any other transversal three
                assert_eq!(iso, !collinear);
                hits += iso as usize;
            }
        })
        .unwrap();
        assert_eq!(hits, 27 - 9);
    }

    #[test]
    fn binary_instances_are_not_refuted() {
        for name in ["K_1", "K_2", "path_3", "K_3"] {
            let z = multimatroid_view(&named_graph(name).unwrap(), 3).unwrap();
            assert_eq!(binary_refutation(&z).unwrap(), None);
        }
        let labels = vec!["x".to_string()];
        let single = SemiMultimatroid::from_circuits(labels, vec![vec![0]], vec![1]).unwrap();
        assert_eq!(binary_refutation(&single).unwrap(), None);
        assert!(mm_isomorphic(&s1(), &single).unwrap().is_none());
    }
}
