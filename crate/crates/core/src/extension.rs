//! The index-2 extension `L̃ = 𝒯 ∪ 𝒱` of a loop and Chein's Moufang
//! extension of a group.
//!
//! Products in the extension:
//!
//! ```text
//! t_a·t_b = t_{ab}    t_a·v_b = v_{ab}    v_a·t_b = v_{ab⁻¹}    v_a·v_b = t_{ab⁻¹}
//! ```
//!
//! The carrier lists all `t` elements first (in the base loop's order),
//! then all `v` elements, so `t_a ↦ a` and `v_a ↦ n + a`.

use std::fmt;

use crate::error::{Error, Result};
use crate::loops::{Identity, Loop};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    T,
    V,
}

/// An element `t_a` or `v_a` of the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedElement {
    pub kind: Kind,
    pub base: usize,
}

impl TaggedElement {
    pub fn t(base: usize) -> Self {
        TaggedElement { kind: Kind::T, base }
    }

    pub fn v(base: usize) -> Self {
        TaggedElement { kind: Kind::V, base }
    }
}

impl fmt::Display for TaggedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::T => write!(f, "t{}", self.base),
            Kind::V => write!(f, "v{}", self.base),
        }
    }
}

/// The extension loop together with its `t`/`v` labeling.
#[derive(Debug, Clone)]
pub struct ExtendedLoop {
    carrier: Loop,
    base_order: usize,
    labels: Vec<TaggedElement>,
}

impl ExtendedLoop {
    pub fn carrier(&self) -> &Loop {
        &self.carrier
    }

    pub fn into_carrier(self) -> Loop {
        self.carrier
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn label(&self, index: usize) -> TaggedElement {
        self.labels[index]
    }

    pub fn index(&self, tag: TaggedElement) -> usize {
        match tag.kind {
            Kind::T => tag.base,
            Kind::V => self.base_order + tag.base,
        }
    }

    pub fn t(&self, a: usize) -> usize {
        a
    }

    pub fn v(&self, a: usize) -> usize {
        self.base_order + a
    }
}

/// Builds `L̃`. Requires every element of `base` to have a two-sided inverse.
pub fn extend(base: &Loop) -> Result<ExtendedLoop> {
    let inv = base.inverses()?;
    let n = base.order();
    let carrier = Loop::from_fn(2 * n, |x, y| {
        let (a, b) = (x % n, y % n);
        match (x < n, y < n) {
            (true, true) => base.mul(a, b),
            (true, false) => n + base.mul(a, b),
            (false, true) => n + base.mul(a, inv[b]),
            (false, false) => base.mul(a, inv[b]),
        }
    })
    .expect("extension of a loop with inverses is a loop");
    let carrier = match base.name() {
        Some(name) => carrier.with_name(format!("ext({name})")),
        None => carrier,
    };
    debug_assert_eq!(carrier.unit(), base.unit());
    let labels = (0..n)
        .map(TaggedElement::t)
        .chain((0..n).map(TaggedElement::v))
        .collect();
    Ok(ExtendedLoop {
        carrier,
        base_order: n,
        labels,
    })
}

/// Prediction that `extend(base)` is right Bol: `base` is right Bol with central squares.
pub fn extension_is_right_bol_predicted(base: &Loop) -> bool {
    base.satisfies(Identity::RightBol) && base.has_central_squares()
}

/// `ab·a⁻¹ = a⁻¹b·a` for all `a, b`. False when some inverse is missing.
pub fn satisfies_inverse_conjugation(l: &Loop) -> bool {
    let Ok(inv) = l.inverses() else {
        return false;
    };
    l.elements().all(|a| {
        l.elements()
            .all(|b| l.mul(l.mul(a, b), inv[a]) == l.mul(l.mul(inv[a], b), a))
    })
}

/// `ab² = b²a` for all `a, b`.
pub fn squares_commute(l: &Loop) -> bool {
    l.elements().all(|b| {
        let s = l.mul(b, b);
        l.elements().all(|a| l.mul(a, s) == l.mul(s, a))
    })
}

/// Second route to the same prediction: `base` is right Bol, right
/// conjugacy closed and satisfies `ab·a⁻¹ = a⁻¹b·a`.
pub fn extension_is_right_bol_by_conjugacy(base: &Loop) -> bool {
    base.satisfies(Identity::RightBol) && base.satisfies(Identity::Rcc) && satisfies_inverse_conjugation(base)
}

fn require_group(g: &Loop) -> Result<Vec<usize>> {
    if !g.is_group() {
        return Err(Error::NotAGroup);
    }
    g.inverses()
}

/// Chein's Moufang loop `M₂ₙ(G, 2)` on `g x^δ ↦ g + n·δ`, with product
/// `(g₁x^δ)(g₂x^ε) = (g₁^ν g₂^μ)^ν x^{δ+ε}`, `ν = (-1)^ε`, `μ = (-1)^{δ+ε}`.
pub fn chein(group: &Loop) -> Result<Loop> {
    let inv = require_group(group)?;
    let n = group.order();
    let pow = |g: usize, sign: bool| if sign { g } else { inv[g] };
    let lp = Loop::from_fn(2 * n, |x, y| {
        let (g1, delta) = (x % n, x / n);
        let (g2, eps) = (y % n, y / n);
        let nu = eps == 0;
        let mu = (delta + eps) % 2 == 0;
        let base = pow(group.mul(pow(g1, nu), pow(g2, mu)), nu);
        base + n * ((delta + eps) % 2)
    })
    .expect("Chein extension is a loop");
    Ok(match group.name() {
        Some(name) => lp.with_name(format!("M({name},2)")),
        None => lp,
    })
}

/// Chein's loop written with `g ↦ t_g`, `gx ↦ v_g`:
/// `t_g t_h = t_{gh}`, `t_g v_h = v_{hg}`, `v_g t_h = v_{gh⁻¹}`, `v_g v_h = t_{h⁻¹g}`.
pub fn chein_tv_form(group: &Loop) -> Result<Loop> {
    let inv = require_group(group)?;
    let n = group.order();
    let m = |a, b| group.mul(a, b);
    Ok(Loop::from_fn(2 * n, |x, y| {
        let (g, h) = (x % n, y % n);
        match (x < n, y < n) {
            (true, true) => m(g, h),
            (true, false) => n + m(h, g),
            (false, true) => n + m(g, inv[h]),
            (false, false) => m(inv[h], g),
        }
    })
    .expect("Chein extension is a loop"))
}

/// The extension written as `(a x^δ)(b x^ε) = (a b^μ) x^{δ+ε}`, `μ = (-1)^δ`,
/// with `t_a ↦ a` and `v_1 ↦ x`.
pub fn extension_cocycle_form(base: &Loop) -> Result<Loop> {
    let inv = base.inverses()?;
    let n = base.order();
    Ok(Loop::from_fn(2 * n, |x, y| {
        let (a, delta) = (x % n, x / n);
        let (b, eps) = (y % n, y / n);
        let b_mu = if delta == 0 { b } else { inv[b] };
        base.mul(a, b_mu) + n * ((delta + eps) % 2)
    })
    .expect("extension of a loop with inverses is a loop"))
}

/// `[base, L̃, L̃̃, …]` with `depth` extension steps. Before step `k` the
/// current loop must have central squares, else `CentralSquaresLost(k)`.
pub fn iterate_extension(base: &Loop, depth: usize) -> Result<Vec<Loop>> {
    if !base.satisfies(Identity::RightBol) {
        return Err(Error::NotRightBol);
    }
    let mut out = vec![base.clone()];
    for step in 1..=depth {
        let current = out.last().expect("nonempty");
        if !current.has_central_squares() {
            return Err(Error::CentralSquaresLost { depth: step });
        }
        let next = extend(current)?.into_carrier();
        out.push(next);
    }
    Ok(out)
}

/// Three quantities that coincide for right Bol bases with central squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoufangReport {
    pub tilde_moufang: bool,
    pub tilde_associative: bool,
    pub base_abelian_group: bool,
}

impl MoufangReport {
    pub fn consistent(&self) -> bool {
        self.tilde_moufang == self.tilde_associative && self.tilde_associative == self.base_abelian_group
    }
}

pub fn moufang_equivalences_report(base: &Loop) -> Result<MoufangReport> {
    let ext = extend(base)?;
    Ok(MoufangReport {
        tilde_moufang: ext.carrier().satisfies(Identity::Moufang),
        tilde_associative: ext.carrier().satisfies(Identity::Associative),
        base_abelian_group: base.is_abelian_group(),
    })
}
