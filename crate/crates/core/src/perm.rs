//! Permutations and small permutation groups.
//!
//! Products compose left to right: `a.then(&b)` (also written `&a * &b`)
//! applies `a` first, then `b`. This matches the exponent notation
//! `x^(ab) = (x^a)^b` used for Bol reflections and loop envelopes.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default cap on the number of group elements materialized by closure.
pub const DEFAULT_CLOSURE_BUDGET: usize = 10_000_000;

/// A bijection of `0..degree`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {p} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("image {p} repeated")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|p| p as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&p| p as usize).collect()).is_ok());
        Permutation { images }
    }

    /// Builds `p ↦ f(p)` on `0..degree`, checking bijectivity.
    pub fn from_fn(degree: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_images((0..degree).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&p| p as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Least `k ≥ 1` with `self^k` the identity.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Debug)]
struct Closure {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

/// A group generated by permutations of a common degree.
///
/// The element list is materialized on first use by breadth-first product
/// closure and cached; afterwards every query is read-only.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    budget: usize,
    closure: OnceLock<Result<Closure>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            budget: self.budget,
            closure: OnceLock::new(),
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_budget(degree, generators, DEFAULT_CLOSURE_BUDGET)
    }

    pub fn with_budget(degree: usize, generators: Vec<Permutation>, budget: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            budget,
            closure: OnceLock::new(),
        })
    }

    /// Group whose full element list is already known (closed under products).
    pub(crate) fn from_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let closure = OnceLock::new();
        let _ = closure.set(Ok(Closure {
            elements: elements.clone(),
            index,
        }));
        PermGroup {
            degree,
            generators: elements,
            budget: DEFAULT_CLOSURE_BUDGET,
            closure,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn closure(&self) -> Result<&Closure> {
        self.closure
            .get_or_init(|| self.compute_closure())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_closure(&self) -> Result<Closure> {
        let id = Permutation::identity(self.degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut next = 0;
        while next < elements.len() {
            let g = elements[next].clone();
            next += 1;
            for s in &self.generators {
                let h = g.then(s);
                if !index.contains_key(&h) {
                    if elements.len() >= self.budget {
                        return Err(Error::ClosureBudgetExceeded { budget: self.budget });
                    }
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(Closure { elements, index })
    }

    /// All group elements, identity first, in breadth-first discovery order.
    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(&self.closure()?.elements)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.closure()?.elements.len())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.closure()?.index.contains_key(g))
    }

    /// Orbit of `point`, sorted increasingly.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if !std::mem::replace(&mut seen[q], true) {
                    queue.push_back(q);
                }
            }
        }
        (0..self.degree).filter(|&p| seen[p]).collect()
    }

    /// All orbits, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orbit = self.orbit(p);
                for &q in &orbit {
                    seen[q] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        let elements = self
            .elements()?
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect();
        Ok(PermGroup::from_elements(self.degree, elements))
    }
}

/// True iff for all `x, y` in `points` exactly one member of `set` maps `x` to `y`.
pub fn is_sharply_transitive(set: &[Permutation], points: &[usize]) -> bool {
    if points.is_empty() {
        return false;
    }
    let degree = match set.first() {
        Some(s) => s.degree(),
        None => return false,
    };
    if set.iter().any(|s| s.degree() != degree) || points.iter().any(|&p| p >= degree) {
        return false;
    }
    let mut slot = vec![usize::MAX; degree];
    for (i, &p) in points.iter().enumerate() {
        slot[p] = i;
    }
    let m = points.len();
    let mut count = vec![0u32; m * m];
    for s in set {
        for (i, &x) in points.iter().enumerate() {
            let j = slot[s.apply(x)];
            if j != usize::MAX {
                count[i * m + j] += 1;
            }
        }
    }
    count.iter().all(|&c| c == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = perm(&[1, 0, 2]);
        let b = perm(&[0, 2, 1]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!(b.then(&a).apply(0), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermGroup::new(4, vec![]).unwrap();
        assert_eq!(g.order().unwrap(), 1);
        assert!(g.elements().unwrap()[0].is_identity());
    }

    #[test]
    fn three_cycle_has_order_three() {
        let c = perm(&[1, 2, 0]);
        let g = PermGroup::new(3, vec![c.clone()]).unwrap();
        assert_eq!(g.order().unwrap(), 3);
        assert_eq!(g.orbit(0), vec![0, 1, 2]);
        assert_eq!(g.stabilizer(0).unwrap().order().unwrap(), 1);
        assert!(g.contains(&c.then(&c)).unwrap());
    }

    #[test]
    fn orbit_stabilizer_on_s4() {
        let g = PermGroup::new(4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(g.order().unwrap(), 24);
        for p in 0..4 {
            let stab = g.stabilizer(p).unwrap();
            assert_eq!(g.orbit(p).len() * stab.order().unwrap(), 24);
        }
    }

    #[test]
    fn closure_budget_is_enforced() {
        let g = PermGroup::with_budget(4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])], 10).unwrap();
        assert_eq!(g.order().unwrap_err(), Error::ClosureBudgetExceeded { budget: 10 });
    }

    #[test]
    fn sharply_transitive_sets() {
        assert!(is_sharply_transitive(&[Permutation::identity(1)], &[0]));
        let c = perm(&[1, 2, 0]);
        let set = vec![Permutation::identity(3), c.clone(), c.then(&c)];
        assert!(is_sharply_transitive(&set, &[0, 1, 2]));
        assert!(!is_sharply_transitive(&set[..2], &[0, 1, 2]));
    }

    #[test]
    fn cycle_display() {
        assert_eq!(perm(&[1, 0, 3, 2]).to_string(), "(0,1)(2,3)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(perm(&[1, 2, 0, 4, 3]).order(), 6);
    }
}
