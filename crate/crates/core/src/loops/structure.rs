use std::collections::BTreeSet;

use super::{Identity, Loop};
use crate::error::{Error, Result};
use crate::perm::{lcm, PermGroup, Permutation};

/// Which slot a nuclear element associates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Middle,
    Right,
}

/// A triple `(α, β, γ)` claimed to satisfy `γ(xy) = α(x)β(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Autotopism {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl Loop {
    /// Order of `a` in the cyclic group it generates.
    pub fn element_order(&self, a: usize) -> Result<usize> {
        let sub = self.subloop_generated(&BTreeSet::from([a]));
        let assoc = sub.iter().all(|&x| {
            sub.iter().all(|&y| {
                sub.iter()
                    .all(|&z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))
            })
        });
        if !assoc {
            return Err(Error::NotPowerAssociative { element: a });
        }
        Ok(sub.len())
    }

    pub fn is_power_associative(&self) -> bool {
        self.elements().all(|a| self.element_order(a).is_ok())
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> Result<usize> {
        self.elements()
            .try_fold(1, |acc, a| Ok(lcm(acc, self.element_order(a)?)))
    }

    pub fn nucleus(&self, side: Side) -> BTreeSet<usize> {
        let n = self.order();
        let m = |a, b| self.mul(a, b);
        self.elements()
            .filter(|&c| {
                (0..n).all(|x| {
                    (0..n).all(|y| match side {
                        Side::Left => m(m(c, x), y) == m(c, m(x, y)),
                        Side::Middle => m(m(x, c), y) == m(x, m(c, y)),
                        Side::Right => m(m(x, y), c) == m(x, m(y, c)),
                    })
                })
            })
            .collect()
    }

    /// Elements of the left, middle and right nucleus simultaneously.
    pub fn full_nucleus(&self) -> BTreeSet<usize> {
        let left = self.nucleus(Side::Left);
        let middle = self.nucleus(Side::Middle);
        let right = self.nucleus(Side::Right);
        left.into_iter()
            .filter(|c| middle.contains(c) && right.contains(c))
            .collect()
    }

    pub fn commutant(&self) -> BTreeSet<usize> {
        self.elements()
            .filter(|&c| self.elements().all(|x| self.mul(c, x) == self.mul(x, c)))
            .collect()
    }

    /// Commutant intersected with all three nuclei.
    pub fn center(&self) -> BTreeSet<usize> {
        let nuc = self.full_nucleus();
        self.commutant().into_iter().filter(|c| nuc.contains(c)).collect()
    }

    /// True iff `x² ∈ Z(L)` for every `x`.
    pub fn has_central_squares(&self) -> bool {
        let center = self.center();
        self.elements().all(|x| center.contains(&self.mul(x, x)))
    }

    /// Smallest subset containing `gens` and the unit that is closed under
    /// multiplication and both divisions.
    pub fn subloop_generated(&self, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut members = vec![false; self.order()];
        let mut list = vec![self.unit()];
        members[self.unit()] = true;
        for &g in gens {
            if !std::mem::replace(&mut members[g], true) {
                list.push(g);
            }
        }
        let mut done = 0;
        while done < list.len() {
            let a = list[done];
            done += 1;
            for i in 0..done {
                let b = list[i];
                for c in [
                    self.mul(a, b),
                    self.mul(b, a),
                    self.ldiv(a, b),
                    self.ldiv(b, a),
                    self.rdiv(a, b),
                    self.rdiv(b, a),
                ] {
                    if !std::mem::replace(&mut members[c], true) {
                        list.push(c);
                    }
                }
            }
        }
        list.into_iter().collect()
    }

    /// True iff `set` is a subloop invariant under every inner mapping.
    ///
    /// Invariance is checked on the standard generators `R_a R_b R_{ab}⁻¹`,
    /// `L_a L_b L_{ba}⁻¹` and `R_a L_a⁻¹` of the inner mapping group.
    pub fn is_normal_subloop(&self, set: &BTreeSet<usize>) -> bool {
        if set.is_empty() || self.subloop_generated(set) != *set {
            return false;
        }
        let n = self.order();
        for a in 0..n {
            // R_a L_a⁻¹: x ↦ a\(xa)
            if set.iter().any(|&x| !set.contains(&self.ldiv(a, self.mul(x, a)))) {
                return false;
            }
            for b in 0..n {
                let ab = self.mul(a, b);
                let ba = self.mul(b, a);
                let bad = set.iter().any(|&x| {
                    let r = self.rdiv(self.mul(self.mul(x, a), b), ab);
                    let l = self.ldiv(ba, self.mul(b, self.mul(a, x)));
                    !set.contains(&r) || !set.contains(&l)
                });
                if bad {
                    return false;
                }
            }
        }
        true
    }

    /// The group generated by all right translations, acting on the elements.
    pub fn right_multiplication_group(&self) -> PermGroup {
        let gens = self.elements().map(|a| self.right_translation(a)).collect();
        PermGroup::new(self.order(), gens).expect("translations share the loop's degree")
    }

    pub fn left_multiplication_group(&self) -> PermGroup {
        let gens = self.elements().map(|a| self.left_translation(a)).collect();
        PermGroup::new(self.order(), gens).expect("translations share the loop's degree")
    }

    pub fn is_autotopism(&self, t: &Autotopism) -> bool {
        let n = self.order();
        if [&t.alpha, &t.beta, &t.gamma].iter().any(|p| p.degree() != n) {
            return false;
        }
        (0..n).all(|x| (0..n).all(|y| t.gamma.apply(self.mul(x, y)) == self.mul(t.alpha.apply(x), t.beta.apply(y))))
    }

    /// `(R_d⁻¹, L_d R_d, R_d)`, i.e. `(x ↦ x d⁻¹, y ↦ dy·d, z ↦ zd)`.
    pub fn bol_autotopism(&self, d: usize) -> Result<Autotopism> {
        let d_inv = self.inverse(d)?;
        let n = self.order();
        let build = |f: &dyn Fn(usize) -> usize| Permutation::from_fn(n, f).map_err(|_| Error::NotRightBol);
        Ok(Autotopism {
            alpha: build(&|x| self.mul(x, d_inv))?,
            beta: build(&|y| self.mul(self.mul(d, y), d))?,
            gamma: build(&|z| self.mul(z, d))?,
        })
    }

    pub fn is_group(&self) -> bool {
        self.satisfies(Identity::Associative)
    }

    pub fn is_abelian_group(&self) -> bool {
        self.is_group() && self.satisfies(Identity::Commutative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn orders_and_exponents() {
        let c4 = fixtures::cyclic(4);
        assert_eq!(c4.element_order(c4.unit()).unwrap(), 1);
        assert_eq!(c4.element_order(1).unwrap(), 4);
        assert_eq!(fixtures::elementary_abelian(2).exponent().unwrap(), 2);
        assert_eq!(fixtures::quaternion().exponent().unwrap(), 4);
    }

    #[test]
    fn groups_have_full_nuclei() {
        for g in [fixtures::symmetric3(), fixtures::dihedral(4), fixtures::quaternion()] {
            let all: BTreeSet<usize> = g.elements().collect();
            for side in [Side::Left, Side::Middle, Side::Right] {
                assert_eq!(g.nucleus(side), all);
            }
        }
    }

    #[test]
    fn center_of_q8_has_two_elements() {
        let q8 = fixtures::quaternion();
        // brute force: elements commuting with everything (Q8 is a group)
        let brute: Vec<usize> = (0..8)
            .filter(|&c| (0..8).all(|x| q8.mul(c, x) == q8.mul(x, c)))
            .collect();
        assert_eq!(brute.len(), 2);
        assert_eq!(q8.center().into_iter().collect::<Vec<_>>(), brute);
    }

    #[test]
    fn central_squares() {
        assert!(fixtures::elementary_abelian(3).has_central_squares());
        assert!(fixtures::quaternion().has_central_squares());
        assert!(!fixtures::symmetric3().has_central_squares());
    }

    #[test]
    fn subloops_and_normality() {
        let s3 = fixtures::symmetric3();
        let e = s3.unit();
        assert_eq!(s3.subloop_generated(&BTreeSet::from([e])), BTreeSet::from([e]));
        let all: BTreeSet<usize> = s3.elements().collect();
        assert!(s3.is_normal_subloop(&all));
        assert!(s3.is_normal_subloop(&s3.center()));
        // a subgroup of order 2 in S3 is not normal, the rotations are
        let involution = s3.elements().find(|&a| s3.element_order(a).unwrap() == 2).unwrap();
        let sub = s3.subloop_generated(&BTreeSet::from([involution]));
        assert_eq!(sub.len(), 2);
        assert!(!s3.is_normal_subloop(&sub));
        let rotation = s3.elements().find(|&a| s3.element_order(a).unwrap() == 3).unwrap();
        assert!(s3.is_normal_subloop(&s3.subloop_generated(&BTreeSet::from([rotation]))));
    }

    #[test]
    fn right_multiplication_groups_of_groups_are_regular() {
        assert_eq!(fixtures::cyclic(3).right_multiplication_group().order().unwrap(), 3);
        assert_eq!(fixtures::symmetric3().right_multiplication_group().order().unwrap(), 6);
    }

    #[test]
    fn trivial_autotopism() {
        let l = fixtures::quaternion();
        let id = Permutation::identity(8);
        assert!(l.is_autotopism(&Autotopism {
            alpha: id.clone(),
            beta: id.clone(),
            gamma: id
        }));
    }
}
