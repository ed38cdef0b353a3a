//! Canonical labeling of loops.
//!
//! A labeling is produced by choosing generators one at a time and closing
//! under multiplication in a fixed order; new elements receive the next free
//! label as they appear. Each generator is drawn from the unlabeled elements
//! with the smallest isomorphism invariant. The canonical form is the
//! lexicographically smallest relabeled table over all such choices, so
//! isomorphic loops share it.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::{Loop, Side};
use crate::perm::Permutation;

/// Per-element data preserved by every isomorphism.
fn invariants(l: &Loop) -> Vec<[usize; 6]> {
    let nuc = [l.nucleus(Side::Left), l.nucleus(Side::Middle), l.nucleus(Side::Right)];
    let comm = l.commutant();
    let mut roots = vec![0usize; l.order()];
    for x in l.elements() {
        roots[l.mul(x, x)] += 1;
    }
    l.elements()
        .map(|a| {
            let cyclic = l.subloop_generated(&BTreeSet::from([a])).len();
            [
                cyclic,
                roots[a],
                nuc[0].contains(&a) as usize,
                nuc[1].contains(&a) as usize,
                nuc[2].contains(&a) as usize,
                comm.contains(&a) as usize,
            ]
        })
        .collect()
}

struct Search<'a> {
    l: &'a Loop,
    keys: Vec<[usize; 6]>,
    best: Option<(Vec<u32>, Vec<u32>)>,
}

#[derive(Clone)]
struct Partial {
    /// label → element
    order: Vec<usize>,
    /// element → label
    label: Vec<u32>,
    cursor: usize,
}

impl Partial {
    fn push(&mut self, x: usize) {
        if self.label[x] == u32::MAX {
            self.label[x] = self.order.len() as u32;
            self.order.push(x);
        }
    }

    fn close(&mut self, l: &Loop) {
        while self.cursor < self.order.len() {
            let i = self.cursor;
            let a = self.order[i];
            for j in 0..=i {
                let b = self.order[j];
                self.push(l.mul(a, b));
                self.push(l.mul(b, a));
            }
            self.cursor += 1;
        }
    }
}

impl Search<'_> {
    fn run(&mut self, mut p: Partial) {
        p.close(self.l);
        let n = self.l.order();
        if p.order.len() == n {
            self.leaf(&p);
            return;
        }
        let min_key = (0..n)
            .filter(|&x| p.label[x] == u32::MAX)
            .map(|x| self.keys[x])
            .min()
            .expect("some element is unlabeled");
        for x in 0..n {
            if p.label[x] == u32::MAX && self.keys[x] == min_key {
                let mut next = p.clone();
                next.push(x);
                self.run(next);
            }
        }
    }

    fn leaf(&mut self, p: &Partial) {
        let n = self.l.order();
        let mut table = Vec::with_capacity(n * n);
        let mut state = Ordering::Equal;
        for i in 0..n {
            for j in 0..n {
                let v = p.label[self.l.mul(p.order[i], p.order[j])];
                if state == Ordering::Equal {
                    if let Some((best, _)) = &self.best {
                        state = v.cmp(&best[table.len()]);
                        if state == Ordering::Greater {
                            return;
                        }
                    }
                }
                table.push(v);
            }
        }
        if self.best.is_none() || state == Ordering::Less {
            self.best = Some((table, p.label.clone()));
        }
    }
}

/// Canonical form together with the relabeling (old index → new index)
/// that produces it. The unit of the canonical form is 0.
pub fn canonical_labeling(l: &Loop) -> (Loop, Permutation) {
    let n = l.order();
    let mut search = Search {
        l,
        keys: invariants(l),
        best: None,
    };
    let mut start = Partial {
        order: Vec::with_capacity(n),
        label: vec![u32::MAX; n],
        cursor: 0,
    };
    start.push(l.unit());
    search.run(start);
    let (table, label) = search.best.expect("at least one labeling exists");
    let relabel = Permutation::from_images_unchecked(label);
    let mut canon = Loop::from_flat(n, table, Some(0)).expect("relabeled table is a loop");
    canon.name = l.name.clone();
    (canon, relabel)
}

pub fn canonical_form(l: &Loop) -> Loop {
    canonical_labeling(l).0
}

/// A unit-preserving isomorphism `f` with `f(xy) = f(x)f(y)`, if one exists.
pub fn are_isomorphic(a: &Loop, b: &Loop) -> Option<Permutation> {
    if a.order() != b.order() {
        return None;
    }
    let (ca, fa) = canonical_labeling(a);
    let (cb, fb) = canonical_labeling(b);
    if ca.flat_table() != cb.flat_table() {
        return None;
    }
    let f = fa.then(&fb.inverse());
    let ok = a.elements().all(|x| {
        a.elements()
            .all(|y| f.apply(a.mul(x, y)) == b.mul(f.apply(x), f.apply(y)))
    });
    assert!(ok, "canonical labelings produced a non-isomorphism");
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_isomorphism() {
        let q8 = fixtures::quaternion();
        let f = are_isomorphic(&q8, &q8).unwrap();
        assert_eq!(f.apply(q8.unit()), q8.unit());
    }

    #[test]
    fn c4_and_klein_group_differ() {
        assert!(are_isomorphic(&fixtures::cyclic(4), &fixtures::elementary_abelian(2)).is_none());
    }

    #[test]
    fn d4_and_q8_differ() {
        assert!(are_isomorphic(&fixtures::dihedral(4), &fixtures::quaternion()).is_none());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for l in [fixtures::symmetric3(), fixtures::dihedral(4), fixtures::cyclic(6)] {
            let c = canonical_form(&l);
            assert_eq!(c.unit(), 0);
            assert_eq!(canonical_form(&c), c);
        }
    }
}
