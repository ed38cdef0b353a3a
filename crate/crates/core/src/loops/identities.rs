//! Exhaustive identity checks. Every check quantifies over all element
//! tuples, so a `true` answer is a proof for the given table.

use std::fmt;
use std::str::FromStr;

use super::Loop;
use crate::error::Error;

/// Identities that can be checked on a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `((xy)z)y = x((yz)y)`
    RightBol,
    /// right Bol together with `x(y(xz)) = (x(yx))z`
    Moufang,
    Associative,
    Commutative,
    /// `(xy)⁻¹ = x⁻¹y⁻¹`
    Aip,
    /// `R_x R_y R_x⁻¹ = R_{xy/x}`
    Rcc,
    /// `(xy)y⁻¹ = x`
    LeftInverseCancel,
    /// `(ab·a)⁻¹ = a⁻¹b⁻¹·a⁻¹`
    BolInverseAntihom,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::RightBol,
        Identity::Moufang,
        Identity::Associative,
        Identity::Commutative,
        Identity::Aip,
        Identity::Rcc,
        Identity::LeftInverseCancel,
        Identity::BolInverseAntihom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::RightBol => "right_bol",
            Identity::Moufang => "moufang",
            Identity::Associative => "associative",
            Identity::Commutative => "commutative",
            Identity::Aip => "aip",
            Identity::Rcc => "rcc",
            Identity::LeftInverseCancel => "left_inverse_cancel",
            Identity::BolInverseAntihom => "bol_inverse_antihom",
        }
    }

    fn needs_inverses(self) -> bool {
        matches!(
            self,
            Identity::Aip | Identity::LeftInverseCancel | Identity::BolInverseAntihom
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s.replace('-', "_"))
            .ok_or_else(|| {
                let known: Vec<&str> = Identity::ALL.iter().map(|id| id.name()).collect();
                Error::Unsupported(format!("unknown identity {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

/// Why an identity check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The identity fails at this tuple of elements.
    Tuple(Vec<usize>),
    /// The identity mentions inverses but this element has none.
    MissingInverse(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Tuple(t) => write!(f, "fails at {t:?}"),
            Violation::MissingInverse(a) => write!(f, "element {a} has no two-sided inverse"),
        }
    }
}

impl Loop {
    /// True iff `id` holds for every tuple of elements.
    pub fn satisfies(&self, id: Identity) -> bool {
        self.find_violation(id).is_none()
    }

    /// The first violating tuple (in lexicographic order), if any.
    pub fn find_violation(&self, id: Identity) -> Option<Violation> {
        let inv = if id.needs_inverses() {
            match self.inverses() {
                Ok(inv) => inv,
                Err(Error::TwoSidedInverseMissing { element }) => return Some(Violation::MissingInverse(element)),
                Err(_) => unreachable!(),
            }
        } else {
            Vec::new()
        };
        let n = self.order();
        let m = |a, b| self.mul(a, b);
        match id {
            Identity::RightBol => self.right_bol_violation(),
            Identity::Moufang => self.right_bol_violation().or_else(|| {
                triples(n)
                    .find(|&(x, y, z)| m(x, m(y, m(x, z))) != m(m(x, m(y, x)), z))
                    .map(|(x, y, z)| Violation::Tuple(vec![x, y, z]))
            }),
            Identity::Associative => triples(n)
                .find(|&(x, y, z)| m(m(x, y), z) != m(x, m(y, z)))
                .map(|(x, y, z)| Violation::Tuple(vec![x, y, z])),
            Identity::Commutative => pairs(n)
                .find(|&(x, y)| m(x, y) != m(y, x))
                .map(|(x, y)| Violation::Tuple(vec![x, y])),
            Identity::Aip => pairs(n)
                .find(|&(x, y)| inv[m(x, y)] != m(inv[x], inv[y]))
                .map(|(x, y)| Violation::Tuple(vec![x, y])),
            Identity::Rcc => {
                // z ↦ ((zx)y)/x must equal z ↦ z·(xy/x)
                pairs(n).find_map(|(x, y)| {
                    let c = self.rdiv(m(x, y), x);
                    (0..n)
                        .find(|&z| self.rdiv(m(m(z, x), y), x) != m(z, c))
                        .map(|z| Violation::Tuple(vec![x, y, z]))
                })
            }
            Identity::LeftInverseCancel => pairs(n)
                .find(|&(x, y)| m(m(x, y), inv[y]) != x)
                .map(|(x, y)| Violation::Tuple(vec![x, y])),
            Identity::BolInverseAntihom => pairs(n)
                .find(|&(a, b)| inv[m(m(a, b), a)] != m(m(inv[a], inv[b]), inv[a]))
                .map(|(a, b)| Violation::Tuple(vec![a, b])),
        }
    }

    fn right_bol_violation(&self) -> Option<Violation> {
        let n = self.order();
        for y in 0..n {
            for z in 0..n {
                let w = self.mul(self.mul(y, z), y);
                for x in 0..n {
                    if self.mul(self.mul(self.mul(x, y), z), y) != self.mul(x, w) {
                        return Some(Violation::Tuple(vec![x, y, z]));
                    }
                }
            }
        }
        None
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("left_bol".parse::<Identity>().is_err());
    }

    #[test]
    fn groups_are_right_bol() {
        let s3 = fixtures::symmetric3();
        assert!(s3.satisfies(Identity::RightBol));
        assert!(s3.satisfies(Identity::Moufang));
        assert!(s3.satisfies(Identity::Associative));
        assert!(!s3.satisfies(Identity::Commutative));
    }

    #[test]
    fn s3_is_not_aip() {
        let s3 = fixtures::symmetric3();
        let Some(Violation::Tuple(t)) = s3.find_violation(Identity::Aip) else {
            panic!("S3 should violate AIP");
        };
        // independent recheck of the reported witness
        let (x, y) = (t[0], t[1]);
        let inv = |a| s3.inverse(a).unwrap();
        assert_ne!(inv(s3.mul(x, y)), s3.mul(inv(x), inv(y)));
    }

    #[test]
    fn inverse_identities_report_missing_inverses() {
        // order-5 loop whose element 1 has distinct one-sided inverses
        let l = fixtures::order5_without_two_sided_inverses();
        assert!(matches!(
            l.find_violation(Identity::Aip),
            Some(Violation::MissingInverse(_))
        ));
        assert!(!l.satisfies(Identity::LeftInverseCancel));
    }
}
