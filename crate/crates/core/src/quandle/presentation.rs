use std::fmt;
use std::str::FromStr;

use super::Quandle;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    /// Column of the letter in a coset table: `2g` for `g`, `2g + 1` for `g⁻¹`.
    pub fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.generator, if self.inverse { "'" } else { "" })
    }
}

pub type Word = Vec<Letter>;

/// A finite group presentation with involution-friendly text form:
///
/// ```text
/// # generators 2
/// g0 g0
/// g1 g0 g1 g0'
/// ```
///
/// One relator per line; `'` marks an inverse. The header fixes the number
/// of generators; without it the largest index used determines it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if w.is_empty() {
                return Err(Error::Parse {
                    line: 0,
                    reason: "empty relator".into(),
                });
            }
            if let Some(l) = w.iter().find(|l| l.generator >= generators) {
                return Err(Error::Parse {
                    line: 0,
                    reason: format!("{l} exceeds the {generators} generators"),
                });
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// True iff every relator evaluates to the identity when generator `i`
    /// is sent to `images[i]`.
    pub fn is_satisfied_by(&self, images: &[Permutation]) -> bool {
        if images.len() != self.generators {
            return false;
        }
        let inverses: Vec<Permutation> = images.iter().map(Permutation::inverse).collect();
        self.relators.iter().all(|w| {
            let (first, rest) = w.split_first().expect("relators are nonempty");
            let pick = |l: &Letter| {
                if l.inverse {
                    &inverses[l.generator]
                } else {
                    &images[l.generator]
                }
            };
            rest.iter()
                .fold(pick(first).clone(), |acc, l| acc.then(pick(l)))
                .is_identity()
        })
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# generators {}", self.generators)?;
        for w in &self.relators {
            let line: Vec<String> = w.iter().map(Letter::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for GroupPresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut declared = None;
        let mut relators = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                let mut parts = comment.split_whitespace();
                if parts.next() == Some("generators") {
                    let count = parts.next().and_then(|c| c.parse().ok()).ok_or(Error::Parse {
                        line: line_no,
                        reason: "expected `# generators <count>`".into(),
                    })?;
                    declared = Some(count);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let word = line
                .split_whitespace()
                .map(|tok| {
                    parse_letter(tok).ok_or_else(|| Error::Parse {
                        line: line_no,
                        reason: format!("bad letter `{tok}`"),
                    })
                })
                .collect::<Result<Word>>()?;
            relators.push(word);
        }
        let used = relators.iter().flatten().map(|l| l.generator + 1).max().unwrap_or(0);
        let generators = declared.unwrap_or(used);
        if used > generators {
            return Err(Error::Parse {
                line: 0,
                reason: format!("relators use {used} generators but {generators} are declared"),
            });
        }
        GroupPresentation::new(generators, relators)
    }
}

fn parse_letter(tok: &str) -> Option<Letter> {
    let (body, inverse) = match tok.strip_suffix('\'') {
        Some(b) => (b, true),
        None => (tok, false),
    };
    let digits = body.strip_prefix('g')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(Letter {
        generator: digits.parse().ok()?,
        inverse,
    })
}

/// `⟨ĝ_a | ĝ_a², ĝ_b ĝ_a ĝ_b ĝ_{a◁b}⁻¹ (a ≠ b)⟩`.
pub fn rstr_presentation(q: &Quandle) -> Result<GroupPresentation> {
    if !q.is_involutory() {
        return Err(Error::NotInvolutory);
    }
    let n = q.order();
    let mut relators: Vec<Word> = (0..n).map(|a| vec![Letter::gen(a), Letter::gen(a)]).collect();
    for b in 0..n {
        for a in 0..n {
            if a != b {
                relators.push(vec![
                    Letter::gen(b),
                    Letter::gen(a),
                    Letter::gen(b),
                    Letter::inv(q.op(a, b)),
                ]);
            }
        }
    }
    GroupPresentation::new(n, relators)
}

/// Rank of `G/G'` as an `F₂`-vector space, from relator exponent sums mod 2.
///
/// Only meaningful when every generator has order dividing 2 in `G`, which
/// holds for restricted structure group presentations.
pub fn abelianized_rank(p: &GroupPresentation) -> usize {
    let g = p.generator_count();
    let words = g.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = p
        .relators()
        .iter()
        .map(|w| {
            let mut v = vec![0u64; words];
            for l in w {
                v[l.generator / 64] ^= 1 << (l.generator % 64);
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..g {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    g - rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quandle::core;

    #[test]
    fn single_involution() {
        let p = rstr_presentation(&Quandle::trivial(1)).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators(), &[vec![Letter::gen(0), Letter::gen(0)]]);
        assert_eq!(abelianized_rank(&p), 1);
    }

    #[test]
    fn trivial_quandle_rank() {
        for n in 1..6 {
            assert_eq!(abelianized_rank(&rstr_presentation(&Quandle::trivial(n)).unwrap()), n);
        }
    }

    #[test]
    fn dihedral_core_relators() {
        let p = rstr_presentation(&core(&fixtures::cyclic(3)).unwrap()).unwrap();
        assert_eq!(p.relators().len(), 3 + 6);
        assert!(p.relators()[3..].iter().all(|w| {
            let (b, a, c) = (w[0].generator, w[1].generator, w[3].generator);
            c == (2 * b + 3 - a) % 3 && w[3].inverse
        }));
        assert_eq!(abelianized_rank(&p), 1);
    }

    #[test]
    fn text_round_trip() {
        let p = rstr_presentation(&core(&fixtures::symmetric3()).unwrap()).unwrap();
        let text = p.to_string();
        assert_eq!(text.parse::<GroupPresentation>().unwrap(), p);
    }

    #[test]
    fn parse_without_header_and_errors() {
        let p: GroupPresentation = "g0 g0\n\ng1 g1'\n".parse().unwrap();
        assert_eq!(p.generator_count(), 2);
        assert!(matches!(
            "g0 x1".parse::<GroupPresentation>(),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!("# generators 1\ng3 g3".parse::<GroupPresentation>().is_err());
    }

    #[test]
    fn non_involutory_rejected() {
        let skew = Quandle::from_fn(3, |a, _| (a + 1) % 3).unwrap();
        assert!(matches!(rstr_presentation(&skew), Err(Error::NotInvolutory)));
    }

    #[test]
    fn reflections_satisfy_presentation() {
        let s = [
            Permutation::from_images(vec![0, 2, 1]).unwrap(),
            Permutation::from_images(vec![2, 1, 0]).unwrap(),
            Permutation::from_images(vec![1, 0, 2]).unwrap(),
        ];
        let p = rstr_presentation(&core(&fixtures::cyclic(3)).unwrap()).unwrap();
        assert!(p.is_satisfied_by(&s));
        assert!(!p.is_satisfied_by(&[s[0].clone(), s[1].clone(), s[0].clone()]));
    }
}
