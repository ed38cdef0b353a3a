//! HLT coset enumeration with immediate coincidence processing.
//!
//! Columns are indexed by [`Letter::column`], so the inverse of column `c` is
//! `c ^ 1`. Cosets are defined in first-free order. When the table is full,
//! dead rows are compacted away (preserving order) before giving up.

use super::presentation::{rstr_presentation, GroupPresentation, Letter, Word};
use super::Quandle;
use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

/// A closed coset table with live cosets numbered `0..index`; coset 0 is
/// the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<u32>,
}

impl CosetTable {
    /// Number of cosets, i.e. the subgroup index.
    pub fn index(&self) -> usize {
        self.rows.len() / self.columns
    }

    /// Image of coset `c` under `letter`.
    pub fn act(&self, c: usize, letter: Letter) -> usize {
        self.rows[c * self.columns + letter.column()] as usize
    }

    /// The permutation of cosets induced by generator `g`.
    pub fn generator_action(&self, g: usize) -> Permutation {
        Permutation::from_fn(self.index(), |c| self.act(c, Letter::gen(g)))
            .expect("a closed coset table acts by permutations")
    }
}

struct Enumerator {
    cols: usize,
    max: usize,
    table: Vec<u32>,
    /// Union-find forest: `parent[c] == c` iff coset `c` is live.
    parent: Vec<u32>,
    queue: Vec<u32>,
    live: usize,
}

struct Full;

impl Enumerator {
    fn new(cols: usize, max: usize) -> Self {
        let mut e = Enumerator {
            cols,
            max,
            table: Vec::new(),
            parent: Vec::new(),
            queue: Vec::new(),
            live: 0,
        };
        e.push_row();
        e
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn push_row(&mut self) -> usize {
        let c = self.allocated();
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(c as u32);
        self.live += 1;
        c
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.cols + x] = d;
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, Full> {
        if self.allocated() >= self.max {
            return Err(Full);
        }
        let d = self.push_row();
        self.set(c, x, d as u32);
        self.set(d, x ^ 1, c as u32);
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (p, q) = (self.rep(a), self.rep(b));
        if p != q {
            let (keep, kill) = (p.min(q), p.max(q));
            self.parent[kill] = keep as u32;
            self.live -= 1;
            self.queue.push(kill as u32);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                if self.get(d, x ^ 1) == g as u32 {
                    self.set(d, x ^ 1, NONE);
                }
                let (mu, nu) = (self.rep(g), self.rep(d));
                if self.get(mu, x) != NONE {
                    let t = self.get(mu, x) as usize;
                    self.merge(nu, t);
                } else if self.get(nu, x ^ 1) != NONE {
                    let t = self.get(nu, x ^ 1) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu as u32);
                    self.set(nu, x ^ 1, mu as u32);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: usize, w: &[usize]) -> Result<(), Full> {
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b as u32);
                self.set(b, w[i] ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumbers live cosets in increasing order. Returns the new number of
    /// the first live coset at or after `c`.
    fn compact(&mut self, c: usize) -> usize {
        let mut new_index = vec![NONE; self.allocated()];
        let mut next = 0u32;
        for old in 0..self.allocated() {
            if self.is_live(old) {
                new_index[old] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for old in 0..self.allocated() {
            if self.is_live(old) {
                for x in 0..self.cols {
                    let d = self.get(old, x);
                    table.push(if d == NONE { NONE } else { new_index[d as usize] });
                }
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        new_index[..c.min(new_index.len())]
            .iter()
            .filter(|&&i| i != NONE)
            .count()
    }
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn todd_coxeter(p: &GroupPresentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let cols = 2 * p.generator_count();
    let to_cols = |w: &Word| w.iter().map(|l| l.column()).collect::<Vec<usize>>();
    let relators: Vec<Vec<usize>> = p.relators().iter().map(to_cols).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect();
    let mut e = Enumerator::new(cols, max_cosets.max(1));
    let exceeded = |e: &Enumerator| Error::CosetBudgetExceeded {
        budget: max_cosets,
        defined: e.live,
    };

    // Retries after compaction are harmless: scanning a filled word is a no-op.
    loop {
        let ok = subgroup.iter().try_for_each(|w| e.scan_and_fill(0, w)).is_ok();
        if ok {
            break;
        }
        if e.live == e.allocated() {
            return Err(exceeded(&e));
        }
        e.compact(0);
    }

    let mut a = 0;
    while a < e.allocated() {
        if !e.is_live(a) {
            a += 1;
            continue;
        }
        let step = (|| {
            for w in &relators {
                e.scan_and_fill(a, w)?;
                if !e.is_live(a) {
                    return Ok(());
                }
            }
            for x in 0..cols {
                if e.is_live(a) && e.get(a, x) == NONE {
                    e.define(a, x)?;
                }
            }
            Ok(())
        })();
        match step {
            Ok(()) => a += 1,
            Err(Full) => {
                if e.live == e.allocated() {
                    return Err(exceeded(&e));
                }
                a = e.compact(a);
            }
        }
    }
    e.compact(0);
    Ok(CosetTable {
        columns: cols,
        rows: e.table,
    })
}

/// Order of the restricted structure group of an involutory quandle.
pub fn rstr_order(q: &Quandle, max_cosets: usize) -> Result<usize> {
    let p = rstr_presentation(q)?;
    Ok(todd_coxeter(&p, &[], max_cosets)?.index())
}
