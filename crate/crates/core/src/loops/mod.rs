//! Finite loops given by Cayley tables.
//!
//! Elements are the indices `0..order`. The unit is detected when a table is
//! loaded and recorded as-is; it is never moved to index 0 behind the
//! caller's back.

mod identities;
mod iso;
mod structure;

use std::fmt;

pub use identities::{Identity, Violation};
pub use iso::{are_isomorphic, canonical_form, canonical_labeling};
pub use structure::{Autotopism, Side};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite loop: a Latin square with a two-sided unit.
#[derive(Clone)]
pub struct Loop {
    order: usize,
    table: Vec<u32>,
    ldiv: Vec<u32>,
    rdiv: Vec<u32>,
    unit: usize,
    name: Option<String>,
}

impl Loop {
    /// Validates a square table and detects (or checks) the unit.
    pub fn from_table(rows: &[Vec<usize>], unit_hint: Option<usize>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedTable(format!("entry {v} in row {i} out of range")));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table, unit_hint)
    }

    /// Builds the table `a·b = f(a, b)` on `0..order`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| f(a, b)).collect()).collect();
        Self::from_table(&rows, None)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u32>, unit_hint: Option<usize>) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        let mut ldiv = vec![u32::MAX; n * n];
        let mut rdiv = vec![u32::MAX; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = table[a * n + b] as usize;
                // ldiv[a][c] = b, rdiv[c][b] = a
                if std::mem::replace(&mut ldiv[a * n + c], b as u32) != u32::MAX {
                    return Err(Error::NotLatin {
                        line: format!("row {a}"),
                        value: c,
                    });
                }
                if std::mem::replace(&mut rdiv[c * n + b], a as u32) != u32::MAX {
                    return Err(Error::NotLatin {
                        line: format!("column {b}"),
                        value: c,
                    });
                }
            }
        }
        let is_unit = |e: usize| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x);
        let unit = match unit_hint {
            Some(e) if e >= n || !is_unit(e) => return Err(Error::UnitMismatch(e)),
            Some(e) => e,
            None => (0..n).find(|&e| is_unit(e)).ok_or(Error::NoUnit)?,
        };
        Ok(Loop {
            order: n,
            table,
            ldiv,
            rdiv,
            unit,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// The unique `x` with `a·x = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.order + b] as usize
    }

    /// The unique `y` with `y·a = b`.
    #[inline]
    pub fn rdiv(&self, b: usize, a: usize) -> usize {
        self.rdiv[b * self.order + a] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub(crate) fn flat_table(&self) -> &[u32] {
        &self.table
    }

    /// Two-sided inverse of `a`.
    pub fn inverse(&self, a: usize) -> Result<usize> {
        let right = self.ldiv(a, self.unit);
        let left = self.rdiv(self.unit, a);
        if right == left {
            Ok(right)
        } else {
            Err(Error::TwoSidedInverseMissing { element: a })
        }
    }

    /// Two-sided inverses of all elements, or the first element lacking one.
    pub fn inverses(&self) -> Result<Vec<usize>> {
        self.elements().map(|a| self.inverse(a)).collect()
    }

    pub fn right_translation(&self, a: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.order).map(|x| self.mul(x, a) as u32).collect())
    }

    pub fn left_translation(&self, a: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.order).map(|x| self.mul(a, x) as u32).collect())
    }

    /// The loop transported along `relabel` (old index → new index).
    pub fn relabeled(&self, relabel: &Permutation) -> Loop {
        let n = self.order;
        let inv = relabel.inverse();
        let table = (0..n * n)
            .map(|k| {
                let (a, b) = (inv.apply(k / n), inv.apply(k % n));
                relabel.apply(self.mul(a, b)) as u32
            })
            .collect();
        let mut out =
            Loop::from_flat(n, table, Some(relabel.apply(self.unit))).expect("relabeling preserves loop axioms");
        out.name = self.name.clone();
        out
    }

    /// Direct product with elements `(a, b) ↦ a·|other| + b`.
    pub fn direct_product(&self, other: &Loop) -> Loop {
        let m = other.order;
        Loop::from_fn(self.order * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
        .expect("direct product of loops is a loop")
    }
}

impl PartialEq for Loop {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.unit == other.unit && self.table == other.table
    }
}

impl Eq for Loop {}

impl fmt::Debug for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Loop {} (order {}, unit {})",
            self.name.as_deref().unwrap_or("<unnamed>"),
            self.order,
            self.unit
        )?;
        for row in self.table.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Loop {
        Loop::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn trivial_loop() {
        let l = Loop::from_table(&[vec![0]], None).unwrap();
        assert_eq!(l.order(), 1);
        assert_eq!(l.unit(), 0);
    }

    #[test]
    fn cyclic_three() {
        let l = cyclic(3);
        assert_eq!(l.unit(), 0);
        assert_eq!(l.ldiv(1, 0), 2);
        assert_eq!(l.rdiv(0, 1), 2);
        for b in 0..3 {
            assert_eq!(l.ldiv(l.unit(), b), b);
        }
    }

    #[test]
    fn repeated_entry_is_not_latin() {
        let err = Loop::from_table(&[vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert!(matches!(err, Error::NotLatin { .. }));
    }

    #[test]
    fn unit_detection_and_hints() {
        // unit is element 1
        let rows = vec![vec![1, 0], vec![0, 1]];
        let l = Loop::from_table(&rows, None).unwrap();
        assert_eq!(l.unit(), 1);
        assert_eq!(Loop::from_table(&rows, Some(0)).unwrap_err(), Error::UnitMismatch(0));
        // x·y = -x-y mod 3 is an idempotent quasigroup without unit
        let q = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        assert_eq!(Loop::from_table(&q, None).unwrap_err(), Error::NoUnit);
    }

    #[test]
    fn malformed_shapes() {
        assert!(matches!(
            Loop::from_table(&[vec![0, 1], vec![1]], None),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            Loop::from_table(&[vec![0, 2], vec![2, 0]], None),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn inverses_in_c4() {
        let l = cyclic(4);
        assert_eq!(l.inverse(0).unwrap(), 0);
        assert_eq!(l.inverse(1).unwrap(), 3);
    }

    #[test]
    fn relabeling_round_trip() {
        let l = cyclic(5);
        let f = Permutation::from_images(vec![3, 0, 4, 1, 2]).unwrap();
        let m = l.relabeled(&f);
        assert_eq!(m.unit(), 3);
        assert_eq!(m.relabeled(&f.inverse()), l);
    }
}
