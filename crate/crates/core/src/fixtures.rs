//! Built-in loops used by tests, the self-test and examples.

use std::collections::HashMap;

use crate::catalog::read_loops_from_str;
use crate::loops::{Identity, Loop};
use crate::perm::{PermGroup, Permutation};

const RIGHT_BOL_8: &str = include_str!("../data/right_bol_8.loops");

pub fn trivial() -> Loop {
    cyclic(1)
}

pub fn cyclic(n: usize) -> Loop {
    Loop::from_fn(n, |a, b| (a + b) % n).unwrap().with_name(format!("C{n}"))
}

/// `C₂^k` with elements as bit vectors under xor.
pub fn elementary_abelian(k: u32) -> Loop {
    Loop::from_fn(1 << k, |a, b| a ^ b)
        .unwrap()
        .with_name(format!("C2^{k}"))
}

/// Multiplication table of the group generated by `gens`; the identity is element 0.
pub fn group_from_permutations(degree: usize, gens: Vec<Permutation>) -> Loop {
    let g = PermGroup::new(degree, gens).expect("generators share degree");
    let elements = g.elements().expect("small group");
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    Loop::from_fn(elements.len(), |a, b| index[&elements[a].then(&elements[b])]).unwrap()
}

pub fn symmetric3() -> Loop {
    let gens = vec![
        Permutation::from_images(vec![1, 0, 2]).unwrap(),
        Permutation::from_images(vec![1, 2, 0]).unwrap(),
    ];
    group_from_permutations(3, gens).with_name("S3")
}

/// Dihedral group of order `2m`: `r^i s^a ↦ i + m·a`.
pub fn dihedral(m: usize) -> Loop {
    Loop::from_fn(2 * m, |x, y| {
        let (i, a) = (x % m, x / m);
        let (k, b) = (y % m, y / m);
        let rot = if a == 0 { (i + k) % m } else { (i + m - k) % m };
        rot + m * ((a + b) % 2)
    })
    .unwrap()
    .with_name(format!("D{m}"))
}

/// Quaternion group: `±u ↦ 4·sign + u` with `u ∈ {1, i, j, k}`.
pub fn quaternion() -> Loop {
    // unit products: (sign, unit)
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    Loop::from_fn(8, |x, y| {
        let (s, u) = UNITS[x % 4][y % 4];
        4 * ((s + x / 4 + y / 4) % 2) + u
    })
    .unwrap()
    .with_name("Q8")
}

/// All groups of order at most 8, one per isomorphism class.
pub fn groups_up_to_8() -> Vec<Loop> {
    vec![
        trivial(),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        elementary_abelian(2),
        cyclic(5),
        cyclic(6),
        symmetric3(),
        cyclic(7),
        cyclic(8),
        cyclic(4).direct_product(&cyclic(2)).with_name("C4xC2"),
        elementary_abelian(3),
        dihedral(4),
        quaternion(),
    ]
}

/// The six nonassociative right Bol loops of order 8, in canonical form.
pub fn right_bol_order8() -> Vec<Loop> {
    read_loops_from_str(RIGHT_BOL_8).expect("bundled order-8 catalog parses")
}

/// Loops used for exhaustive law checks: all groups of order at most 8,
/// the nonassociative right Bol loops of order 8, `C₂⁴`, and one loop with
/// inverses that is not right Bol.
pub fn corpus() -> Vec<Loop> {
    let mut out = groups_up_to_8();
    out.extend(right_bol_order8());
    out.push(elementary_abelian(4));
    out.push(order5_non_bol_with_inverses());
    out
}

/// Every loop of order `n` with unit 0, by plain backtracking over
/// reduced Latin squares. Intended for `n ≤ 6`.
pub fn all_loops_with_unit_zero(n: usize) -> Vec<Loop> {
    fn fill(n: usize, cell: usize, t: &mut Vec<usize>, out: &mut Vec<Loop>) {
        if cell == n * n {
            let rows: Vec<Vec<usize>> = t.chunks(n).map(|r| r.to_vec()).collect();
            out.push(Loop::from_table(&rows, Some(0)).unwrap());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            t[cell] = if r == 0 { c } else { r };
            return fill(n, cell + 1, t, out);
        }
        for v in 0..n {
            let clash = (0..c).any(|j| t[r * n + j] == v) || (0..r).any(|i| t[i * n + c] == v);
            if !clash {
                t[cell] = v;
                fill(n, cell + 1, t, out);
            }
        }
    }
    let mut out = Vec::new();
    fill(n, 0, &mut vec![0; n * n], &mut out);
    out
}

/// First order-5 loop (in search order) with an element whose left and
/// right inverses differ.
pub fn order5_without_two_sided_inverses() -> Loop {
    all_loops_with_unit_zero(5)
        .into_iter()
        .find(|l| l.inverses().is_err())
        .expect("order 5 has loops without two-sided inverses")
        .with_name("order5-no-inverses")
}

/// First order-5 loop (in search order) with two-sided inverses that is
/// not right Bol.
pub fn order5_non_bol_with_inverses() -> Loop {
    all_loops_with_unit_zero(5)
        .into_iter()
        .find(|l| l.inverses().is_ok() && !l.satisfies(Identity::RightBol))
        .expect("order 5 has non-Bol loops with inverses")
        .with_name("order5-non-bol")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::are_isomorphic;

    #[test]
    fn standard_groups_are_groups() {
        for g in groups_up_to_8() {
            assert!(g.is_group(), "{:?}", g.name());
        }
    }

    #[test]
    fn group_list_is_pairwise_non_isomorphic() {
        let gs = groups_up_to_8();
        for i in 0..gs.len() {
            for j in i + 1..gs.len() {
                assert!(are_isomorphic(&gs[i], &gs[j]).is_none());
            }
        }
    }

    #[test]
    fn reduced_latin_square_counts() {
        // 1, 1, 1, 4, 56 reduced Latin squares of orders 1..=5
        let counts: Vec<usize> = (1..=5).map(|n| all_loops_with_unit_zero(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 4, 56]);
    }

    #[test]
    fn bundled_order8_loops() {
        let ls = right_bol_order8();
        assert_eq!(ls.len(), 6);
        for l in &ls {
            assert_eq!(l.order(), 8);
            assert!(l.satisfies(Identity::RightBol));
            assert!(!l.satisfies(Identity::Associative));
        }
        for i in 0..6 {
            for j in i + 1..6 {
                assert!(are_isomorphic(&ls[i], &ls[j]).is_none());
            }
        }
    }

    #[test]
    fn derived_order5_examples() {
        let a = order5_without_two_sided_inverses();
        assert!(a.inverses().is_err());
        let b = order5_non_bol_with_inverses();
        assert!(b.inverses().is_ok());
        assert!(!b.satisfies(Identity::RightBol));
    }
}
