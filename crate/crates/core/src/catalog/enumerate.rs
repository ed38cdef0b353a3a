//! Right Bol loops of a given order up to isomorphism, by constraint
//! propagation over partial Cayley tables.
//!
//! The unit is 0. Each branch assigns one cell, chosen among the empty cells
//! with the fewest Latin candidates. Every assignment is propagated through
//! three rules:
//!
//! * every Bol triple `((xy)z)y = x((yz)y)` touching the cell is evaluated as
//!   far as the table allows, forcing the last product when only it is
//!   missing, or the one before it when the missing factor can be read off
//!   by division;
//! * right inverses: `xy = p` forces `p·y⁻¹ = x` once `y⁻¹` is known, and
//!   `xy = 1` forces `yx = 1`;
//! * with central squares requested, `x² = s` forces `s` to commute with
//!   every element.
//!
//! Isomorphic copies are cut down by fixing the row of element 1: it is the
//! standard permutation of a cycle type, and no other row may have a larger
//! cycle type (unit cycle length first, then the remaining lengths in
//! decreasing order). Each cycle type is an independent subtree; they run in
//! parallel and the merged results are reduced by canonical form.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::{canonical_form, Identity, Loop};

/// Largest supported order; cells hold one byte and masks 16 bits.
pub const MAX_ORDER: usize = 16;

/// Default branch-node budget for a whole enumeration.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrder {
    Ascending,
    Descending,
}

#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    pub order: usize,
    pub nonassociative_only: bool,
    pub central_squares_only: bool,
    pub node_budget: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub value_order: ValueOrder,
    /// Required for order 16.
    pub allow_long_running: bool,
}

impl EnumerationOptions {
    pub fn new(order: usize) -> Self {
        EnumerationOptions {
            order,
            nonassociative_only: false,
            central_squares_only: false,
            node_budget: DEFAULT_NODE_BUDGET,
            jobs: None,
            value_order: ValueOrder::Ascending,
            allow_long_running: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Canonical forms, sorted by table, named `RightBol<n>.<i>`.
    pub loops: Vec<Loop>,
    /// False when the node budget ran out; `loops` is then a lower bound.
    pub complete: bool,
    pub nodes: u64,
}

/// Runs the search; an exhausted budget yields `complete == false`.
pub fn enumerate(opts: &EnumerationOptions) -> Result<Enumeration> {
    let n = opts.order;
    if n == 0 || n > MAX_ORDER {
        return Err(Error::Unsupported(format!("order {n} is outside 1..={MAX_ORDER}")));
    }
    if n == MAX_ORDER && !opts.allow_long_running {
        return Err(Error::Unsupported(format!(
            "order {MAX_ORDER} needs the long-running flag"
        )));
    }
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let types = cycle_types(n);
    let run = || -> Vec<Vec<Loop>> {
        types
            .par_iter()
            .map(|t| Search::new(opts, t, &nodes, &stop).run())
            .collect()
    };
    let found = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut classes: BTreeMap<Vec<u32>, Loop> = BTreeMap::new();
    for l in found.into_iter().flatten() {
        let c = canonical_form(&l);
        classes.entry(c.flat_table().to_vec()).or_insert(c);
    }
    let loops = classes
        .into_values()
        .filter(|l| !opts.nonassociative_only || !l.satisfies(Identity::Associative))
        .enumerate()
        .map(|(i, l)| l.with_name(format!("RightBol{n}.{}", i + 1)))
        .collect();
    Ok(Enumeration {
        loops,
        complete: !stop.load(Ordering::Relaxed),
        nodes: nodes.load(Ordering::Relaxed),
    })
}

/// Right Bol loops of order `n` up to isomorphism with the default budget.
pub fn enumerate_right_bol(n: usize, nonassociative_only: bool) -> Result<Vec<Loop>> {
    let mut opts = EnumerationOptions::new(n);
    opts.nonassociative_only = nonassociative_only;
    let e = enumerate(&opts)?;
    if !e.complete {
        return Err(Error::SearchBudgetExceeded {
            budget: opts.node_budget,
        });
    }
    Ok(e.loops)
}

/// Cycle type of a left translation: unit cycle length, then the other
/// cycle lengths in decreasing order.
type CycleType = Vec<usize>;

/// All fixed-point-free cycle types on `n` points, for `n ≥ 2`.
fn cycle_types(n: usize) -> Vec<CycleType> {
    fn partitions(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (2..=max.min(rest)).rev() {
            prefix.push(part);
            partitions(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    for k in (2..=n).rev() {
        let mut tails = Vec::new();
        partitions(n - k, n - k, &mut Vec::new(), &mut tails);
        out.extend(tails.into_iter().map(|t| {
            let mut ty = vec![k];
            ty.extend(t);
            ty
        }));
    }
    out
}

/// The standard permutation of a cycle type: consecutive labels per cycle,
/// starting with `0 → 1 → … → k−1 → 0`.
fn standard_permutation(ty: &CycleType) -> Vec<usize> {
    let mut images = vec![0; ty.iter().sum()];
    let mut start = 0;
    for &len in ty {
        for i in 0..len {
            images[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    images
}

const EMPTY: u8 = u8::MAX;

#[derive(Clone, Copy)]
enum Undo {
    Cell(usize),
    Central(usize),
}

struct Conflict;

struct Search<'a> {
    n: usize,
    table: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    /// `row_pos[x*n + v] = y` when `xy = v` is known.
    row_pos: Vec<u8>,
    /// `col_pos[y*n + v] = x` when `xy = v` is known.
    col_pos: Vec<u8>,
    /// Number of known squares equal to each element.
    central: Vec<u32>,
    trail: Vec<Undo>,
    pending: Vec<usize>,
    ty: &'a CycleType,
    opts: &'a EnumerationOptions,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    found: Vec<Loop>,
}

impl<'a> Search<'a> {
    fn new(opts: &'a EnumerationOptions, ty: &'a CycleType, nodes: &'a AtomicU64, stop: &'a AtomicBool) -> Self {
        let n = opts.order;
        Search {
            n,
            table: vec![EMPTY; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            row_pos: vec![EMPTY; n * n],
            col_pos: vec![EMPTY; n * n],
            central: vec![0; n],
            trail: Vec::new(),
            pending: Vec::new(),
            ty,
            opts,
            nodes,
            stop,
            found: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Loop> {
        let n = self.n;
        let mut ok = (0..n).all(|i| self.assign(i, i).is_ok() && self.assign(i * n, i).is_ok());
        if n > 1 {
            let row1 = standard_permutation(self.ty);
            ok = ok && (0..n).all(|j| self.assign(n + j, row1[j]).is_ok());
        }
        if ok && self.propagate().is_ok() {
            self.branch();
        }
        self.found
    }

    fn get(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.table[a * self.n + b];
        (v != EMPTY).then_some(v as usize)
    }

    fn assign(&mut self, cell: usize, v: usize) -> Result<(), Conflict> {
        let n = self.n;
        let (a, b) = (cell / n, cell % n);
        match self.table[cell] {
            EMPTY => {}
            old if old as usize == v => return Ok(()),
            _ => return Err(Conflict),
        }
        let bit = 1u32 << v;
        if self.row_used[a] & bit != 0 || self.col_used[b] & bit != 0 {
            return Err(Conflict);
        }
        self.table[cell] = v as u8;
        self.row_used[a] |= bit;
        self.col_used[b] |= bit;
        self.row_pos[a * n + v] = b as u8;
        self.col_pos[b * n + v] = a as u8;
        self.trail.push(Undo::Cell(cell));
        if a == b && self.opts.central_squares_only {
            self.central[v] += 1;
            self.trail.push(Undo::Central(v));
        }
        self.pending.push(cell);
        Ok(())
    }

    fn undo_to(&mut self, mark: usize) {
        let n = self.n;
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail is longer than mark") {
                Undo::Cell(cell) => {
                    let (a, b) = (cell / n, cell % n);
                    let v = self.table[cell] as usize;
                    self.table[cell] = EMPTY;
                    self.row_used[a] &= !(1 << v);
                    self.col_used[b] &= !(1 << v);
                    self.row_pos[a * n + v] = EMPTY;
                    self.col_pos[b * n + v] = EMPTY;
                }
                Undo::Central(s) => self.central[s] -= 1,
            }
        }
        self.pending.clear();
    }

    fn inverse(&self, y: usize) -> Option<usize> {
        let x = self.row_pos[y * self.n];
        (x != EMPTY).then_some(x as usize)
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        while let Some(cell) = self.pending.pop() {
            let n = self.n;
            let (a, b) = (cell / n, cell % n);
            let c = self.table[cell] as usize;
            self.inverse_rules(a, b, c)?;
            if self.opts.central_squares_only {
                self.central_rules(a, b, c)?;
            }
            self.bol_rules(a, b)?;
            self.unit_cycle_rule(a)?;
        }
        Ok(())
    }

    fn inverse_rules(&mut self, a: usize, b: usize, c: usize) -> Result<(), Conflict> {
        let n = self.n;
        if let Some(b_inv) = self.inverse(b) {
            self.assign(c * n + b_inv, a)?;
        }
        if c == 0 {
            self.assign(b * n + a, 0)?;
            // b = a⁻¹: every known x·a = p gives p·b = x, and symmetrically.
            for (y, y_inv) in [(a, b), (b, a)] {
                for x in 0..n {
                    if let Some(p) = self.get(x, y) {
                        self.assign(p * n + y_inv, x)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn central_rules(&mut self, a: usize, b: usize, c: usize) -> Result<(), Conflict> {
        let n = self.n;
        if a == b {
            for y in 0..n {
                if let Some(v) = self.get(c, y) {
                    self.assign(y * n + c, v)?;
                }
                if let Some(v) = self.get(y, c) {
                    self.assign(c * n + y, v)?;
                }
            }
        }
        if self.central[a] > 0 {
            self.assign(b * n + a, c)?;
        }
        if self.central[b] > 0 {
            self.assign(b * n + a, c)?;
        }
        Ok(())
    }

    /// Rejects a row whose unit cycle is longer than the one fixed in row 1.
    fn unit_cycle_rule(&self, row: usize) -> Result<(), Conflict> {
        if row < 2 {
            return Ok(());
        }
        let k = self.ty[0];
        let mut x = row;
        let mut len = 1;
        while x != 0 {
            len += 1;
            if len > k {
                return Err(Conflict);
            }
            match self.get(row, x) {
                Some(next) => x = next,
                None => break,
            }
        }
        Ok(())
    }

    fn bol_rules(&mut self, a: usize, b: usize) -> Result<(), Conflict> {
        let n = self.n;
        for t in 0..n {
            // (a,b) as x·y
            self.triple(a, b, t)?;
            // (a,b) as y·z
            self.triple(t, a, b)?;
            // (a,b) as (xy)·z with xy = a, y = t
            if let Some(x) = self.col_pos_of(t, a) {
                self.triple(x, t, b)?;
            }
            // (a,b) as ((xy)z)·y with x = t, y = b
            if let Some(p1) = self.get(t, b) {
                if let Some(z) = self.row_pos_of(p1, a) {
                    self.triple(t, b, z)?;
                }
            }
            // (a,b) as (yz)·y with y = b, yz = a, x = t
            if let Some(z) = self.row_pos_of(b, a) {
                self.triple(t, b, z)?;
            }
            // (a,b) as x·((yz)y) with x = a, y = t
            if let Some(q1) = self.col_pos_of(t, b) {
                if let Some(z) = self.row_pos_of(t, q1) {
                    self.triple(a, t, z)?;
                }
            }
        }
        Ok(())
    }

    fn row_pos_of(&self, x: usize, v: usize) -> Option<usize> {
        let y = self.row_pos[x * self.n + v];
        (y != EMPTY).then_some(y as usize)
    }

    fn col_pos_of(&self, y: usize, v: usize) -> Option<usize> {
        let x = self.col_pos[y * self.n + v];
        (x != EMPTY).then_some(x as usize)
    }

    /// Evaluates `((xy)z)y = x((yz)y)` as far as the table allows.
    fn triple(&mut self, x: usize, y: usize, z: usize) -> Result<(), Conflict> {
        if x == 0 || y == 0 {
            return Ok(());
        }
        let n = self.n;
        let p1 = self.get(x, y);
        let q1 = self.get(y, z);
        let p2 = p1.and_then(|p| self.get(p, z));
        let q2 = q1.and_then(|q| self.get(q, y));
        let lhs = p2.and_then(|p| self.get(p, y));
        let rhs = q2.and_then(|q| self.get(x, q));
        match (lhs, rhs) {
            (Some(l), Some(r)) if l != r => Err(Conflict),
            (Some(l), None) => match (q1, q2) {
                (_, Some(q)) => self.assign(x * n + q, l),
                (Some(q), None) => match self.row_pos_of(x, l) {
                    Some(target) => self.assign(q * n + y, target),
                    None => Ok(()),
                },
                _ => Ok(()),
            },
            (None, Some(r)) => match (p1, p2) {
                (_, Some(p)) => self.assign(p * n + y, r),
                (Some(p), None) => match self.col_pos_of(y, r) {
                    Some(target) => self.assign(p * n + z, target),
                    None => Ok(()),
                },
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }

    fn branch(&mut self) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.opts.node_budget {
            self.stop.store(true, Ordering::Relaxed);
            return;
        }
        let n = self.n;
        let full = (1u32 << n) - 1;
        let mut best: Option<(usize, u32)> = None;
        for cell in 0..n * n {
            if self.table[cell] != EMPTY {
                continue;
            }
            let cand = full & !(self.row_used[cell / n] | self.col_used[cell % n]);
            if cand == 0 {
                return;
            }
            if best.is_none_or(|(_, c)| cand.count_ones() < c.count_ones()) {
                best = Some((cell, cand));
            }
        }
        let Some((cell, cand)) = best else {
            self.leaf();
            return;
        };
        let mut values: Vec<usize> = (0..n).filter(|v| cand & (1 << v) != 0).collect();
        if self.opts.value_order == ValueOrder::Descending {
            values.reverse();
        }
        for v in values {
            let mark = self.trail.len();
            if self.assign(cell, v).is_ok() && self.propagate().is_ok() {
                self.branch();
            }
            self.undo_to(mark);
        }
    }

    fn leaf(&mut self) {
        let n = self.n;
        let table: Vec<u32> = self.table.iter().map(|&v| v as u32).collect();
        let l = Loop::from_flat(n, table, Some(0)).expect("a filled search table is a loop");
        if n > 1 {
            let top = left_cycle_type(&l, 1);
            if (2..n).any(|x| left_cycle_type(&l, x) > top) {
                return;
            }
        }
        debug_assert!(l.satisfies(Identity::RightBol));
        if self.opts.central_squares_only && !l.has_central_squares() {
            return;
        }
        self.found.push(l);
    }
}

fn left_cycle_type(l: &Loop, a: usize) -> CycleType {
    let cycles = l.left_translation(a).cycles();
    let mut unit_len = 1;
    let mut rest = Vec::new();
    for c in cycles {
        if c.contains(&l.unit()) {
            unit_len = c.len();
        } else {
            rest.push(c.len());
        }
    }
    rest.sort_unstable_by(|a, b| b.cmp(a));
    let mut ty = vec![unit_len];
    ty.extend(rest);
    ty
}
