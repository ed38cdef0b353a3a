//! The 3-net of a loop, Bol reflections, and loop folders.
//!
//! Points `(x, y)` are numbered `x·n + y`. A point lies on the horizontal
//! line `h_y`, the vertical line `v_x` and the transversal line `t_{xy}`.
//! Line permutations act on `𝒯 ∪ 𝒱` with `t_c ↦ c` and `v_b ↦ n + b`,
//! which is the element order used by [`crate::extension::extend`].

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::loops::Loop;
use crate::perm::{is_sharply_transitive, PermGroup, Permutation};

/// Cap on `|G|` for the exhaustive folder check.
pub const DEFAULT_FOLDER_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetPoint {
    pub x: usize,
    pub y: usize,
}

impl NetPoint {
    pub fn index(self, n: usize) -> usize {
        self.x * n + self.y
    }

    pub fn from_index(i: usize, n: usize) -> Self {
        NetPoint { x: i / n, y: i % n }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pencil {
    H,
    V,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineIndex {
    pub pencil: Pencil,
    pub label: usize,
}

fn line_of(l: &Loop, p: NetPoint, pencil: Pencil) -> usize {
    match pencil {
        Pencil::H => p.y,
        Pencil::V => p.x,
        Pencil::T => l.mul(p.x, p.y),
    }
}

fn line_points(l: &Loop, line: LineIndex) -> Vec<NetPoint> {
    let n = l.order();
    let c = line.label;
    (0..n)
        .map(|i| match line.pencil {
            Pencil::H => NetPoint { x: i, y: c },
            Pencil::V => NetPoint { x: c, y: i },
            Pencil::T => NetPoint { x: l.rdiv(c, i), y: i },
        })
        .collect()
}

/// The reflection of `p` in the horizontal line `h_d`, defined in any loop:
/// `(a, b) ↦ ((ab)/d, u)` where `(ab)/d · u = ad`.
pub fn reflection_image(l: &Loop, d: usize, p: NetPoint) -> NetPoint {
    let x = l.rdiv(l.mul(p.x, p.y), d);
    NetPoint {
        x,
        y: l.ldiv(x, l.mul(p.x, d)),
    }
}

/// [`reflection_image`] as a permutation of the `n²` points.
pub fn reflection_map(l: &Loop, d: usize) -> Permutation {
    let n = l.order();
    Permutation::from_fn(n * n, |i| reflection_image(l, d, NetPoint::from_index(i, n)).index(n))
        .expect("the reflection is a bijection of the points")
}

/// The point map `(x, y, xy) ↦ (xy·d⁻¹, dy⁻¹·d, xd)`.
pub fn bol_reflection(l: &Loop, d: usize) -> Result<Permutation> {
    let inv = l.inverses()?;
    let n = l.order();
    Permutation::from_fn(n * n, |i| {
        let p = NetPoint::from_index(i, n);
        NetPoint {
            x: l.mul(l.mul(p.x, p.y), inv[d]),
            y: l.mul(l.mul(d, inv[p.y]), d),
        }
        .index(n)
    })
}

/// True iff `f` maps every line (as a point set) onto a line.
pub fn is_collineation(l: &Loop, f: &Permutation) -> bool {
    let n = l.order();
    if f.degree() != n * n {
        return false;
    }
    [Pencil::H, Pencil::V, Pencil::T]
        .into_iter()
        .all(|pencil| (0..n).all(|label| image_line(l, f, LineIndex { pencil, label }).is_some()))
}

fn image_line(l: &Loop, f: &Permutation, line: LineIndex) -> Option<Vec<LineIndex>> {
    let n = l.order();
    let image: Vec<NetPoint> = line_points(l, line)
        .into_iter()
        .map(|p| NetPoint::from_index(f.apply(p.index(n)), n))
        .collect();
    let hits: Vec<LineIndex> = [Pencil::H, Pencil::V, Pencil::T]
        .into_iter()
        .filter_map(|pencil| {
            let label = line_of(l, image[0], pencil);
            image
                .iter()
                .all(|&q| line_of(l, q, pencil) == label)
                .then_some(LineIndex { pencil, label })
        })
        .collect();
    (!hits.is_empty()).then_some(hits)
}

/// Permutation induced by a collineation on the `2n` lines of `𝒯 ∪ 𝒱`.
///
/// For `n = 1` a single point lies on every line, so the line image is not
/// determined by the point map and `NotALineMap` is returned.
pub fn line_action(l: &Loop, f: &Permutation) -> Result<Permutation> {
    let n = l.order();
    if n == 1 {
        return Err(Error::NotALineMap("line images are ambiguous in order 1".into()));
    }
    let mut images = Vec::with_capacity(2 * n);
    for pencil in [Pencil::T, Pencil::V] {
        for label in 0..n {
            let src = LineIndex { pencil, label };
            let hits = image_line(l, f, src)
                .ok_or_else(|| Error::NotALineMap(format!("{pencil:?}{label} is not mapped to a line")))?;
            let target = hits[0];
            images.push(match target.pencil {
                Pencil::T => target.label,
                Pencil::V => n + target.label,
                Pencil::H => {
                    return Err(Error::NotALineMap(format!(
                        "{pencil:?}{label} is mapped to a horizontal line"
                    )))
                }
            });
        }
    }
    Permutation::from_images(images).map_err(|e| Error::NotALineMap(e.to_string()))
}

/// Line permutation of `σ_d` on `𝒯 ∪ 𝒱` read off its coordinates:
/// `v_a ↦ t_{ad}` and `t_c ↦ v_{cd⁻¹}`.
pub fn reflection_line_action(l: &Loop, d: usize) -> Result<Permutation> {
    let d_inv = l.inverse(d)?;
    let n = l.order();
    Permutation::from_fn(2 * n, |i| if i < n { n + l.mul(i, d_inv) } else { l.mul(i - n, d) })
        .map_err(|e| Error::NotALineMap(e.to_string()))
}

/// `Σ = [σ_d for d] ++ [σ_1 σ_d for d]` as line permutations.
pub fn sigma_set(l: &Loop) -> Result<Vec<Permutation>> {
    let reflections: Vec<Permutation> = l
        .elements()
        .map(|d| reflection_line_action(l, d))
        .collect::<Result<_>>()?;
    let s1 = &reflections[l.unit()];
    let products: Vec<Permutation> = reflections.iter().map(|s| s1.then(s)).collect();
    Ok(reflections.into_iter().chain(products).collect())
}

/// `Γ = ⟨σ_d⟩` acting on the `2n` lines of `𝒯 ∪ 𝒱`.
pub fn gamma_group(l: &Loop) -> Result<PermGroup> {
    let gens = l
        .elements()
        .map(|d| reflection_line_action(l, d))
        .collect::<Result<_>>()?;
    PermGroup::new(2 * l.order(), gens)
}

/// `λ(G, S, e)`: the loop on the orbit of `e` with `x * y = x^s`, where `s ∈ S`
/// is the unique member with `e^s = y`. Orbit points are relabeled in
/// increasing order.
pub fn lambda(group: &PermGroup, set: &[Permutation], e: usize) -> Result<Loop> {
    let orbit = group.orbit(e);
    if !is_sharply_transitive(set, &orbit) {
        return Err(Error::NotSharplyTransitive);
    }
    if !set.iter().any(Permutation::is_identity) {
        return Err(Error::NotAFolder("the section must contain the identity".into()));
    }
    let mut slot = vec![usize::MAX; group.degree()];
    for (i, &p) in orbit.iter().enumerate() {
        slot[p] = i;
    }
    let mut by_target = vec![usize::MAX; orbit.len()];
    for (k, s) in set.iter().enumerate() {
        if let Some(&j) = slot.get(s.apply(e)) {
            if j != usize::MAX {
                by_target[j] = k;
            }
        }
    }
    let rows: Vec<Vec<usize>> = orbit
        .iter()
        .map(|&x| (0..orbit.len()).map(|j| slot[set[by_target[j]].apply(x)]).collect())
        .collect();
    Loop::from_table(&rows, Some(slot[e]))
}

/// A loop folder `(G, H, K)`.
#[derive(Debug, Clone)]
pub struct LoopFolder {
    pub group: PermGroup,
    pub subgroup: PermGroup,
    pub section: Vec<Permutation>,
}

/// Outcome of the folder transversal check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolderCheck {
    /// Every conjugate `H^g` was checked.
    Complete,
    /// `|G|` exceeded the budget; only `H` itself was checked.
    Partial,
}

impl LoopFolder {
    /// Checks that `K ∋ 1` is a transversal of the right cosets of `H^g` for all `g`.
    pub fn verify(&self, budget: usize) -> Result<FolderCheck> {
        let g_elems = self.group.elements()?;
        let degree = self.group.degree();
        if !self.section.iter().any(Permutation::is_identity) {
            return Err(Error::NotAFolder("section lacks the identity".into()));
        }
        for k in &self.section {
            if !self.group.contains(k)? {
                return Err(Error::NotAFolder(format!("{k} is not in G")));
            }
        }
        let index = g_elems.len() / self.subgroup.order()?;
        if self.section.len() != index {
            return Err(Error::NotAFolder(format!(
                "section has {} elements but [G:H] = {index}",
                self.section.len()
            )));
        }
        let identity = Permutation::identity(degree);
        let (conjugators, check) = if g_elems.len() <= budget {
            (g_elems, FolderCheck::Complete)
        } else {
            (std::slice::from_ref(&identity), FolderCheck::Partial)
        };
        let inverses: Vec<Permutation> = self.section.iter().map(Permutation::inverse).collect();
        for g in conjugators {
            let g_inv = g.inverse();
            for i in 0..self.section.len() {
                for j in 0..i {
                    // k_i ∈ H^g k_j  ⇔  g k_i k_j⁻¹ g⁻¹ ∈ H
                    let w = g.then(&self.section[i]).then(&inverses[j]).then(&g_inv);
                    if self.subgroup.contains(&w)? {
                        return Err(Error::NotAFolder(format!(
                            "section elements {j} and {i} share a coset of H^g for g = {g}"
                        )));
                    }
                }
            }
        }
        Ok(check)
    }
}

/// `ε(L) = (RMlt(L), RMlt(L)_1, {R_a})`, with `K` listed in element order.
pub fn envelope(l: &Loop) -> Result<LoopFolder> {
    let group = l.right_multiplication_group();
    let subgroup = group.stabilizer(l.unit())?;
    let section = l.elements().map(|a| l.right_translation(a)).collect();
    Ok(LoopFolder {
        group,
        subgroup,
        section,
    })
}

/// `ℓ(ξ)` on the indices of `K`: `a * b` is the `k ∈ K` with `Hk = H(ab)`.
pub fn loop_of_folder(folder: &LoopFolder) -> Result<Loop> {
    folder.verify(DEFAULT_FOLDER_BUDGET)?;
    let k = &folder.section;
    let inverses: Vec<Permutation> = k.iter().map(Permutation::inverse).collect();
    let mut rows = Vec::with_capacity(k.len());
    for a in k {
        let mut row = Vec::with_capacity(k.len());
        for b in k {
            let ab = a.then(b);
            let mut found = None;
            for (c, c_inv) in inverses.iter().enumerate() {
                if folder.subgroup.contains(&ab.then(c_inv))? {
                    found = Some(c);
                    break;
                }
            }
            row.push(found.ok_or_else(|| Error::NotAFolder("product has no coset representative".into()))?);
        }
        rows.push(row);
    }
    let unit = k.iter().position(Permutation::is_identity);
    Loop::from_table(&rows, unit)
}

/// `K` is closed under inverses and the twisted product `aba`.
pub fn is_bol_folder(folder: &LoopFolder) -> bool {
    let k: HashSet<&Permutation> = folder.section.iter().collect();
    folder
        .section
        .iter()
        .all(|a| k.contains(&a.inverse()) && folder.section.iter().all(|b| k.contains(&a.then(b).then(a))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::loops::Identity;

    #[test]
    fn reflection_in_groups_at_unit() {
        let s3 = fixtures::symmetric3();
        let n = s3.order();
        let e = s3.unit();
        for x in 0..n {
            for y in 0..n {
                let img = reflection_image(&s3, e, NetPoint { x, y });
                assert_eq!(
                    img,
                    NetPoint {
                        x: s3.mul(x, y),
                        y: s3.inverse(y).unwrap()
                    }
                );
            }
        }
    }

    #[test]
    fn point_on_mirror_line() {
        let l = fixtures::right_bol_order8()[0].clone();
        for a in 0..8 {
            for d in 0..8 {
                let img = reflection_image(&l, d, NetPoint { x: a, y: d });
                assert_eq!(img, NetPoint { x: a, y: d });
            }
        }
    }

    #[test]
    fn general_reflection_matches_bol_formula() {
        for l in fixtures::right_bol_order8() {
            for d in l.elements() {
                assert_eq!(reflection_map(&l, d), bol_reflection(&l, d).unwrap());
            }
        }
    }

    #[test]
    fn bol_reflections_are_involutory_collineations() {
        for l in fixtures::right_bol_order8() {
            for d in l.elements() {
                let s = bol_reflection(&l, d).unwrap();
                assert!(s.then(&s).is_identity());
                assert!(is_collineation(&l, &s));
                assert_eq!(line_action(&l, &s).unwrap(), reflection_line_action(&l, d).unwrap());
            }
        }
    }

    #[test]
    fn reflections_fail_on_non_bol_loop() {
        let l = fixtures::order5_non_bol_with_inverses();
        assert!(l
            .elements()
            .any(|d| !is_collineation(&l, &bol_reflection(&l, d).unwrap())));
    }

    #[test]
    fn identity_is_a_collineation_with_trivial_line_action() {
        let l = fixtures::quaternion();
        let id = Permutation::identity(64);
        assert!(is_collineation(&l, &id));
        assert!(line_action(&l, &id).unwrap().is_identity());
    }

    #[test]
    fn sigma_is_sharply_transitive_and_lambda_rebuilds_extension() {
        let q8 = fixtures::quaternion();
        let sigma = sigma_set(&q8).unwrap();
        let lines: Vec<usize> = (0..16).collect();
        assert!(is_sharply_transitive(&sigma, &lines));
        let gamma = gamma_group(&q8).unwrap();
        let lam = lambda(&gamma, &sigma, q8.unit()).unwrap();
        assert_eq!(lam, *crate::extension::extend(&q8).unwrap().carrier());
    }

    #[test]
    fn envelope_round_trip() {
        for l in [
            fixtures::cyclic(3),
            fixtures::symmetric3(),
            fixtures::right_bol_order8()[2].clone(),
        ] {
            let env = envelope(&l).unwrap();
            assert_eq!(env.verify(DEFAULT_FOLDER_BUDGET).unwrap(), FolderCheck::Complete);
            assert_eq!(loop_of_folder(&env).unwrap(), l);
            assert!(is_bol_folder(&env));
        }
        let c3 = envelope(&fixtures::cyclic(3)).unwrap();
        assert_eq!(c3.group.order().unwrap(), 3);
        assert_eq!(c3.subgroup.order().unwrap(), 1);
    }

    #[test]
    fn non_bol_envelope_is_not_a_bol_folder() {
        let l = fixtures::order5_non_bol_with_inverses();
        assert!(!l.satisfies(Identity::RightBol));
        let env = envelope(&l).unwrap();
        assert!(env.verify(DEFAULT_FOLDER_BUDGET).is_ok());
        assert!(!is_bol_folder(&env));
    }

    #[test]
    fn dropping_an_element_breaks_the_folder() {
        let mut env = envelope(&fixtures::quaternion()).unwrap();
        env.section.pop();
        assert!(matches!(env.verify(DEFAULT_FOLDER_BUDGET), Err(Error::NotAFolder(_))));
    }
}
