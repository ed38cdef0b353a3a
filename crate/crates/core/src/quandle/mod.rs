//! Cores of loops as involutory quandles, and their restricted structure groups.

mod presentation;
mod todd_coxeter;

pub use presentation::{abelianized_rank, rstr_presentation, GroupPresentation, Letter, Word};
pub use todd_coxeter::{rstr_order, todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};

use crate::error::{Error, Result};
use crate::extension::ExtendedLoop;
use crate::loops::Loop;
use crate::perm::{PermGroup, Permutation};

/// A binary operation `a ◁ b` on `0..n`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Quandle {
    order: usize,
    table: Vec<u32>,
}

impl std::fmt::Debug for Quandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quandle")
            .field("order", &self.order)
            .field("rows", &self.rows())
            .finish()
    }
}

impl Quandle {
    /// Wraps a square table; quandle axioms are checked separately.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedTable(format!("entry {v} out of range in row {i}")));
                }
                table.push(v as u32);
            }
        }
        Ok(Quandle { order: n, table })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| f(a, b)).collect()).collect();
        Self::from_table(&rows)
    }

    /// `a ◁ b = a` on `n` points.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |a, _| a).expect("trivial table is square")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `a ◁ b`.
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// `R_b: x ↦ x ◁ b`, if it is a bijection.
    pub fn right_translation(&self, b: usize) -> Option<Permutation> {
        Permutation::from_fn(self.order, |x| self.op(x, b)).ok()
    }

    /// Idempotence, bijective right translations and right self-distributivity.
    pub fn is_quandle(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| self.op(a, a) == a)
            && (0..n).all(|b| self.right_translation(b).is_some())
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| self.op(self.op(a, b), c) == self.op(self.op(a, c), self.op(b, c))))
            })
    }

    /// `(a ◁ b) ◁ b = a` for all `a, b`.
    pub fn is_involutory(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(self.op(a, b), b) == a))
    }

    /// A quandle whose left translations `x ↦ a ◁ x` are also bijections.
    pub fn is_quasigroup_quandle(&self) -> bool {
        self.is_quandle() && (0..self.order).all(|a| Permutation::from_fn(self.order, |x| self.op(a, x)).is_ok())
    }

    /// The group generated by the right translations.
    pub fn rmlt_group(&self) -> Result<PermGroup> {
        let gens = (0..self.order)
            .map(|b| {
                self.right_translation(b)
                    .ok_or_else(|| Error::MalformedTable(format!("right translation by {b} is not a bijection")))
            })
            .collect::<Result<_>>()?;
        PermGroup::new(self.order, gens)
    }

    /// Number of orbits of the right multiplication group.
    pub fn orbit_count(&self) -> usize {
        // Orbits only need the generators, never the group closure.
        let mut parent: Vec<usize> = (0..self.order).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for a in 0..self.order {
            for b in 0..self.order {
                let (x, y) = (find(&mut parent, a), find(&mut parent, self.op(a, b)));
                parent[x.max(y)] = x.min(y);
            }
        }
        (0..self.order).filter(|&x| find(&mut parent, x) == x).count()
    }

    pub fn is_connected(&self) -> bool {
        self.orbit_count() == 1
    }
}

/// `a ◁ b = (b·a⁻¹)·b`.
pub fn core(l: &Loop) -> Result<Quandle> {
    let inv = l.inverses()?;
    Quandle::from_fn(l.order(), |a, b| l.mul(l.mul(b, inv[a]), b))
}

/// Outcome of comparing `core(L̃)` with two copies of `core(L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub t_closed: bool,
    pub v_closed: bool,
    /// `t_a ◁ t_b = t_{a ◁ b}`.
    pub t_iso_core: bool,
    /// `v_a ◁ v_b = v_{a ◁ b}`.
    pub v_iso_core: bool,
    /// `t_a ◁ v_b = t_{ba·b⁻¹}` and `v_a ◁ t_b = v_{ba·b⁻¹}`.
    pub mixed_laws: bool,
}

impl CoreDecomposition {
    pub fn all(&self) -> bool {
        self.t_closed && self.v_closed && self.t_iso_core && self.v_iso_core && self.mixed_laws
    }
}

pub fn core_decomposition_check(ext: &ExtendedLoop) -> Result<CoreDecomposition> {
    let big = core(ext.carrier())?;
    let base = base_loop(ext)?;
    let small = core(&base)?;
    let inv = base.inverses()?;
    let n = ext.base_order();
    let (t, v) = (|a| ext.t(a), |a| ext.v(a));
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let twist = |a: usize, b: usize| base.mul(base.mul(b, a), inv[b]);
    Ok(CoreDecomposition {
        t_closed: pairs().all(|(a, b)| big.op(t(a), t(b)) < n),
        v_closed: pairs().all(|(a, b)| big.op(v(a), v(b)) >= n),
        t_iso_core: pairs().all(|(a, b)| big.op(t(a), t(b)) == t(small.op(a, b))),
        v_iso_core: pairs().all(|(a, b)| big.op(v(a), v(b)) == v(small.op(a, b))),
        mixed_laws: pairs().all(|(a, b)| big.op(t(a), v(b)) == t(twist(a, b)) && big.op(v(a), t(b)) == v(twist(a, b))),
    })
}

/// The base loop, read off the `𝒯` half of the carrier.
fn base_loop(ext: &ExtendedLoop) -> Result<Loop> {
    let l = ext.carrier();
    Loop::from_fn(ext.base_order(), |a, b| l.mul(ext.t(a), ext.t(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::extend;
    use crate::fixtures;

    #[test]
    fn core_of_elementary_abelian_is_trivial() {
        assert_eq!(core(&fixtures::elementary_abelian(3)).unwrap(), Quandle::trivial(8));
    }

    #[test]
    fn core_of_c3_is_dihedral() {
        let q = core(&fixtures::cyclic(3)).unwrap();
        assert_eq!(q, Quandle::from_fn(3, |a, b| (2 * b + 3 - a) % 3).unwrap());
        assert!(q.is_quasigroup_quandle());
        assert!(q.is_connected());
    }

    #[test]
    fn trivial_quandle_is_not_quasigroup() {
        let q = Quandle::trivial(3);
        assert!(q.is_quandle() && q.is_involutory());
        assert!(!q.is_quasigroup_quandle());
        assert_eq!(q.orbit_count(), 3);
    }

    #[test]
    fn cores_of_bol_loops_are_involutory_quandles() {
        for l in fixtures::right_bol_order8()
            .iter()
            .chain(fixtures::groups_up_to_8().iter())
        {
            let q = core(l).unwrap();
            assert!(q.is_quandle() && q.is_involutory(), "{:?}", l.name());
            for a in 0..l.order() {
                assert_eq!(q.op(a, a), a);
            }
        }
    }

    #[test]
    fn core_needs_inverses() {
        assert!(matches!(
            core(&fixtures::order5_without_two_sided_inverses()),
            Err(Error::TwoSidedInverseMissing { .. })
        ));
    }

    #[test]
    fn orbit_count_matches_group_orbits() {
        for l in fixtures::right_bol_order8() {
            let q = core(&l).unwrap();
            assert_eq!(q.orbit_count(), q.rmlt_group().unwrap().orbits().len());
        }
    }

    #[test]
    fn extension_core_decomposes() {
        let mut bases = fixtures::right_bol_order8();
        bases.push(fixtures::quaternion());
        bases.push(fixtures::elementary_abelian(2));
        for l in bases {
            let check = core_decomposition_check(&extend(&l).unwrap()).unwrap();
            assert!(check.all(), "{:?}: {check:?}", l.name());
        }
    }

    #[test]
    fn extension_core_is_not_a_quasigroup() {
        let q = core(extend(&fixtures::cyclic(3)).unwrap().carrier()).unwrap();
        assert!(q.is_quandle() && q.is_involutory());
        assert!(!q.is_quasigroup_quandle());
    }
}
