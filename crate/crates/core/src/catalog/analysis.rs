//! Per-loop reports and the census of vertical left-nuclear elements.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::extension::extend;
use crate::loops::{Identity, Loop, Side};
use crate::quandle::core;

/// Recomputable summary of one loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRecord {
    pub table: Loop,
    pub right_bol: bool,
    pub moufang: bool,
    pub associative: bool,
    pub commutative: bool,
    pub aip: bool,
    pub rcc: bool,
    pub central_squares: bool,
    /// Absent when the loop is not power associative.
    pub exponent: Option<usize>,
    pub n_left: usize,
    pub n_middle: usize,
    pub n_right: usize,
    pub commutant: usize,
    pub center: usize,
    /// Orbits of the core; absent without two-sided inverses.
    pub core_orbits: Option<usize>,
    /// `ν(L)`; absent outside the census population.
    pub nu: Option<usize>,
}

pub const TSV_HEADER: &str = "name\torder\tright_bol\tmoufang\tassociative\tcommutative\taip\trcc\tcentral_squares\texponent\tn_left\tn_middle\tn_right\tcommutant\tcenter\tcore_orbits\tnu";

pub fn analyze(l: &Loop) -> CatalogRecord {
    let core_orbits = core(l).ok().map(|q| q.orbit_count());
    CatalogRecord {
        table: l.clone(),
        right_bol: l.satisfies(Identity::RightBol),
        moufang: l.satisfies(Identity::Moufang),
        associative: l.satisfies(Identity::Associative),
        commutative: l.satisfies(Identity::Commutative),
        aip: l.satisfies(Identity::Aip),
        rcc: l.satisfies(Identity::Rcc),
        central_squares: l.has_central_squares(),
        exponent: l.exponent().ok(),
        n_left: l.nucleus(Side::Left).len(),
        n_middle: l.nucleus(Side::Middle).len(),
        n_right: l.nucleus(Side::Right).len(),
        commutant: l.commutant().len(),
        center: l.center().len(),
        core_orbits,
        nu: nu_value(l).ok(),
    }
}

impl CatalogRecord {
    /// One TSV row matching [`TSV_HEADER`]; absent values are `-`.
    pub fn tsv_row(&self, fallback_name: &str) -> String {
        let flag = |b: bool| if b { "1" } else { "0" };
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_owned(), |x| x.to_string());
        [
            self.table.name().unwrap_or(fallback_name).to_owned(),
            self.table.order().to_string(),
            flag(self.right_bol).into(),
            flag(self.moufang).into(),
            flag(self.associative).into(),
            flag(self.commutative).into(),
            flag(self.aip).into(),
            flag(self.rcc).into(),
            flag(self.central_squares).into(),
            opt(self.exponent),
            self.n_left.to_string(),
            self.n_middle.to_string(),
            self.n_right.to_string(),
            self.commutant.to_string(),
            self.center.to_string(),
            opt(self.core_orbits),
            opt(self.nu),
        ]
        .join("\t")
    }
}

pub fn records_to_tsv(records: &[CatalogRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{TSV_HEADER}");
    for (i, r) in records.iter().enumerate() {
        let _ = writeln!(out, "{}", r.tsv_row(&format!("L{}", i + 1)));
    }
    out
}

/// Right Bol with central squares, neither associative nor AIP.
pub fn check_population(l: &Loop) -> Result<()> {
    let reason = if !l.satisfies(Identity::RightBol) {
        Some("not right Bol")
    } else if !l.has_central_squares() {
        Some("squares are not central")
    } else if l.satisfies(Identity::Associative) {
        Some("associative")
    } else if l.satisfies(Identity::Aip) {
        Some("has the automorphic inverse property")
    } else {
        None
    };
    match reason {
        Some(r) => Err(Error::PopulationFilterViolated {
            name: l.name().unwrap_or("unnamed").to_owned(),
            reason: r.to_owned(),
        }),
        None => Ok(()),
    }
}

/// The `n ∈ L` with `v_n ∈ N_λ(L̃)`, by a nucleus computation in `L̃`.
pub fn nu_set(l: &Loop) -> Result<Vec<usize>> {
    let ext = extend(l)?;
    let n = l.order();
    Ok(ext
        .carrier()
        .nucleus(Side::Left)
        .into_iter()
        .filter(|&x| x >= n)
        .map(|x| x - n)
        .collect())
}

/// `ν(L) = |N_λ(L̃) ∩ 𝒱|` for loops in the census population.
pub fn nu_value(l: &Loop) -> Result<usize> {
    check_population(l)?;
    Ok(nu_set(l)?.len())
}

/// `k ↦ μ_k` for `k = 0..=max order`, over a population that must pass the filter.
pub fn nu_histogram(loops: &[Loop]) -> Result<BTreeMap<usize, usize>> {
    let max = loops.iter().map(Loop::order).max().unwrap_or(0);
    let mut hist: BTreeMap<usize, usize> = (0..=max).map(|k| (k, 0)).collect();
    for l in loops {
        *hist.entry(nu_value(l)?).or_default() += 1;
    }
    Ok(hist)
}

/// Counts along the census pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub total: usize,
    pub central_squares: usize,
    /// Central squares, neither associative nor AIP.
    pub population: usize,
    pub histogram: BTreeMap<usize, usize>,
}

/// Filters a catalog down to the census population and tabulates `ν`.
pub fn census(loops: &[Loop]) -> Result<Census> {
    let with_squares: Vec<&Loop> = loops.iter().filter(|l| l.has_central_squares()).collect();
    let population: Vec<Loop> = with_squares
        .iter()
        .filter(|l| check_population(l).is_ok())
        .map(|&l| l.clone())
        .collect();
    Ok(Census {
        total: loops.len(),
        central_squares: with_squares.len(),
        population: population.len(),
        histogram: nu_histogram(&population)?,
    })
}
