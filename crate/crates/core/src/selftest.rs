//! End-to-end checks of the library's headline results on built-in fixtures.
//!
//! Each check recomputes its quantities independently (brute-force identity,
//! nucleus and center computations) and compares them with the closed forms
//! implemented elsewhere in the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use crate::catalog::{self, EnumerationOptions};
use crate::error::Error;
use crate::extension::{
    chein, chein_tv_form, extend, extension_cocycle_form, extension_is_right_bol_by_conjugacy,
    extension_is_right_bol_predicted, moufang_equivalences_report,
};
use crate::fixtures;
use crate::loops::{Identity, Loop, Side};
use crate::nets::{gamma_group, lambda, sigma_set};
use crate::perm::is_sharply_transitive;
use crate::quandle::{
    abelianized_rank, core, core_decomposition_check, rstr_order, rstr_presentation, DEFAULT_MAX_COSETS,
};

/// Environment variable naming an order-16 right Bol catalog file.
pub const ORDER16_CATALOG_ENV: &str = "BOLKIT_ORDER16_CATALOG";

/// Node budget for the order-12 and order-15 searches.
pub const STRETCH_NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check needs input that was not supplied.
    Skipped,
    /// A budget ran out before the check could decide.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:>2} {}: {}", self.status, self.id, self.title, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct SelftestOptions {
    pub max_cosets: usize,
    pub order16_catalog: Option<PathBuf>,
    pub stretch_node_budget: u64,
    pub run_stretch: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            max_cosets: DEFAULT_MAX_COSETS,
            order16_catalog: std::env::var_os(ORDER16_CATALOG_ENV).map(PathBuf::from),
            stretch_node_budget: STRETCH_NODE_BUDGET,
            run_stretch: true,
        }
    }
}

pub const TITLES: [&str; 12] = [
    "order-8 census",
    "Bol criterion for the extension",
    "Moufang, associative and abelian coincide",
    "nuclei and center of the extension",
    "central squares of the extension",
    "reflections are sharply transitive on lines",
    "core of the extension decomposes",
    "abelianized rank equals core orbit count",
    "restricted structure group orders",
    "Chein loops and alternative product forms",
    "order-16 census",
    "no proper central-squares Bol loops of order 12 or 15",
];

type Check = std::result::Result<String, String>;

pub fn run(id: usize, opts: &SelftestOptions) -> Outcome {
    let title = TITLES[id - 1];
    let (status, detail) = match id {
        11 => order16_census(opts),
        12 if !opts.run_stretch => (Status::Skipped, "not requested".into()),
        12 => orders_12_and_15(opts),
        _ => {
            let result = match id {
                1 => order8_census(),
                2 => bol_criterion(),
                3 => moufang_equivalences(),
                4 => nuclei_and_center(),
                5 => central_squares_of_extension(),
                6 => sharply_transitive_reflections(),
                7 => core_decomposition(),
                8 => abelianized_rank_matches(),
                9 => rstr_orders(opts.max_cosets),
                10 => chein_and_forms(),
                _ => Err(format!("no check numbered {id}")),
            };
            match result {
                Ok(d) => (Status::Pass, d),
                Err(d) => (Status::Fail, d),
            }
        }
    };
    Outcome {
        id,
        title,
        status,
        detail,
    }
}

pub fn run_all(opts: &SelftestOptions) -> Vec<Outcome> {
    (1..=TITLES.len()).map(|id| run(id, opts)).collect()
}

fn name(l: &Loop) -> &str {
    l.name().unwrap_or("unnamed")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn with_inverses(loops: Vec<Loop>) -> Vec<Loop> {
    loops.into_iter().filter(|l| l.inverses().is_ok()).collect()
}

/// Corpus loops satisfying the hypotheses of the extension theorems.
fn bol_with_central_squares() -> Vec<Loop> {
    fixtures::corpus()
        .into_iter()
        .filter(|l| l.satisfies(Identity::RightBol) && l.has_central_squares())
        .collect()
}

fn order8_census() -> Check {
    let found = catalog::enumerate_right_bol(8, true).map_err(|e| e.to_string())?;
    ensure(found.len() == 6, || format!("found {} loops, expected 6", found.len()))?;
    ensure(found.iter().all(Loop::has_central_squares), || {
        "a loop lacks central squares".into()
    })?;
    let bundled = fixtures::right_bol_order8();
    ensure(found == bundled, || {
        "enumeration differs from the bundled catalog".into()
    })?;
    Ok("6 loops, all with central squares".into())
}

fn bol_criterion() -> Check {
    let corpus = with_inverses(fixtures::corpus());
    let mut positive = 0;
    for l in &corpus {
        let brute = extend(l)
            .map_err(|e| e.to_string())?
            .carrier()
            .satisfies(Identity::RightBol);
        let predicted = extension_is_right_bol_predicted(l);
        let by_conjugacy = extension_is_right_bol_by_conjugacy(l);
        ensure(brute == predicted && brute == by_conjugacy, || {
            format!(
                "{}: brute {brute}, predicted {predicted}, by conjugacy {by_conjugacy}",
                name(l)
            )
        })?;
        positive += brute as usize;
    }
    Ok(format!("{} loops, {positive} with right Bol extension", corpus.len()))
}

fn moufang_equivalences() -> Check {
    let loops = bol_with_central_squares();
    for l in &loops {
        let r = moufang_equivalences_report(l).map_err(|e| e.to_string())?;
        ensure(r.consistent(), || format!("{}: {r:?}", name(l)))?;
    }
    Ok(format!("{} loops", loops.len()))
}

fn nuclei_and_center() -> Check {
    let loops = bol_with_central_squares();
    for l in &loops {
        let ext = extend(l).map_err(|e| e.to_string())?;
        let lt = ext.carrier();
        let n = l.order();
        let z = l.center();
        let nl = l.nucleus(Side::Left);
        let t_and_v =
            |s: &BTreeSet<usize>| -> BTreeSet<usize> { s.iter().flat_map(|&a| [ext.t(a), ext.v(a)]).collect() };
        let who = name(l);

        let right = lt.nucleus(Side::Right);
        ensure(right == t_and_v(&z), || format!("{who}: right nucleus"))?;

        let left = lt.nucleus(Side::Left);
        let left_t: BTreeSet<usize> = left.iter().copied().filter(|&x| x < n).collect();
        let expected_t: BTreeSet<usize> = nl.iter().map(|&a| ext.t(a)).collect();
        ensure(left_t == expected_t, || format!("{who}: left nucleus on T"))?;
        if l.is_group() && !l.satisfies(Identity::Commutative) {
            ensure(left == (0..n).collect(), || {
                format!("{who}: left nucleus of a non-abelian group")
            })?;
        }
        if l.satisfies(Identity::Aip) {
            ensure(left == t_and_v(&nl), || format!("{who}: left nucleus of an AIP loop"))?;
        } else {
            let allowed: BTreeSet<usize> = l.elements().filter(|a| !nl.contains(a)).map(|a| ext.v(a)).collect();
            ensure(left.iter().filter(|&&x| x >= n).all(|x| allowed.contains(x)), || {
                format!("{who}: vertical left nuclear element inside the left nucleus of L")
            })?;
        }

        let center = lt.center();
        let exponent = l.exponent().map_err(|e| e.to_string())?;
        let expected_center: BTreeSet<usize> = if exponent <= 2 {
            t_and_v(&z)
        } else {
            z.iter()
                .filter(|&&c| l.mul(c, c) == l.unit())
                .map(|&c| ext.t(c))
                .collect()
        };
        ensure(center == expected_center, || format!("{who}: center"))?;
    }
    Ok(format!("{} loops", loops.len()))
}

fn central_squares_of_extension() -> Check {
    let mut loops = vec![
        fixtures::cyclic(2),
        fixtures::cyclic(4),
        fixtures::cyclic(8),
        fixtures::quaternion(),
        fixtures::elementary_abelian(2),
        fixtures::elementary_abelian(3),
    ];
    loops.extend(fixtures::right_bol_order8());
    for l in &loops {
        let brute = extend(l).map_err(|e| e.to_string())?.carrier().has_central_squares();
        let exponent = l.exponent().map_err(|e| e.to_string())?;
        ensure(brute == (4 % exponent == 0), || {
            format!("{}: exponent {exponent}, central squares {brute}", name(l))
        })?;
    }
    Ok(format!("{} loops", loops.len()))
}

fn sharply_transitive_reflections() -> Check {
    let loops = bol_with_central_squares();
    for l in &loops {
        let sigma = sigma_set(l).map_err(|e| e.to_string())?;
        let lines: Vec<usize> = (0..2 * l.order()).collect();
        ensure(is_sharply_transitive(&sigma, &lines), || {
            format!("{}: not sharply transitive", name(l))
        })?;
        let gamma = gamma_group(l).map_err(|e| e.to_string())?;
        let lam = lambda(&gamma, &sigma, l.unit()).map_err(|e| e.to_string())?;
        let ext = extend(l).map_err(|e| e.to_string())?;
        ensure(lam == *ext.carrier(), || {
            format!("{}: line loop differs from the extension", name(l))
        })?;
    }
    Ok(format!("{} loops", loops.len()))
}

fn core_decomposition() -> Check {
    let loops = bol_with_central_squares();
    for l in &loops {
        let check = core_decomposition_check(&extend(l).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(check.all(), || format!("{}: {check:?}", name(l)))?;
    }
    Ok(format!("{} loops", loops.len()))
}

fn abelianized_rank_matches() -> Check {
    let loops: Vec<Loop> = fixtures::corpus()
        .into_iter()
        .filter(|l| l.satisfies(Identity::RightBol))
        .collect();
    for l in &loops {
        let q = core(l).map_err(|e| e.to_string())?;
        let rank = abelianized_rank(&rstr_presentation(&q).map_err(|e| e.to_string())?);
        ensure(rank == q.orbit_count(), || {
            format!("{}: rank {rank}, orbits {}", name(l), q.orbit_count())
        })?;
    }
    Ok(format!("{} loops", loops.len()))
}

fn rstr_orders(max_cosets: usize) -> Check {
    let order = |l: &Loop| -> std::result::Result<usize, String> {
        let q = core(l).map_err(|e| e.to_string())?;
        rstr_order(&q, max_cosets).map_err(|e| format!("{}: {e}", name(l)))
    };
    let mut exp2 = vec![
        fixtures::cyclic(2),
        fixtures::elementary_abelian(2),
        fixtures::elementary_abelian(3),
    ];
    exp2.extend(
        fixtures::right_bol_order8()
            .into_iter()
            .filter(|l| l.exponent() == Ok(2)),
    );
    let mut lines = Vec::new();
    for l in &exp2 {
        let r = core(l).map_err(|e| e.to_string())?.orbit_count();
        let base = order(l)?;
        let doubled = order(&l.direct_product(&fixtures::cyclic(2)))?;
        ensure(doubled == base << r, || {
            format!("{}: {doubled} != {base}·2^{r}", name(l))
        })?;
        lines.push(format!("{}:{base}->{doubled}", name(l)));
    }
    for l in [
        fixtures::cyclic(2),
        fixtures::cyclic(3),
        fixtures::cyclic(4),
        fixtures::elementary_abelian(2),
    ] {
        let base = order(&l)?;
        let ext = order(extend(&l).map_err(|e| e.to_string())?.carrier())?;
        ensure(ext == base * base, || format!("{}: {ext} != {base}²", name(&l)))?;
        lines.push(format!("{}:{base}->{ext}", name(&l)));
    }
    Ok(lines.join(" "))
}

fn chein_and_forms() -> Check {
    let m = chein(&fixtures::symmetric3()).map_err(|e| e.to_string())?;
    ensure(m.order() == 12, || "chein(S3) does not have order 12".into())?;
    ensure(m.satisfies(Identity::Moufang), || "chein(S3) is not Moufang".into())?;
    ensure(!m.satisfies(Identity::Associative), || {
        "chein(S3) is associative".into()
    })?;
    let corpus = with_inverses(fixtures::corpus());
    let mut groups = 0;
    for l in &corpus {
        let ext = extend(l).map_err(|e| e.to_string())?;
        let cocycle = extension_cocycle_form(l).map_err(|e| e.to_string())?;
        ensure(cocycle == *ext.carrier(), || {
            format!("{}: cocycle form differs", name(l))
        })?;
        if l.is_group() {
            groups += 1;
            let a = chein(l).map_err(|e| e.to_string())?;
            let b = chein_tv_form(l).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{}: t/v form of Chein's loop differs", name(l)))?;
            ensure(a.satisfies(Identity::Moufang), || {
                format!("{}: Chein loop not Moufang", name(l))
            })?;
        }
    }
    Ok(format!("{} extensions, {groups} Chein loops", corpus.len()))
}

/// Expected `μ_k` for the order-16 census population.
pub const ORDER16_HISTOGRAM: [(usize, usize); 4] = [(0, 1145), (2, 454), (4, 160), (8, 14)];

fn order16_census(opts: &SelftestOptions) -> (Status, String) {
    let Some(path) = &opts.order16_catalog else {
        return (
            Status::Skipped,
            format!("set {ORDER16_CATALOG_ENV} to a converted order-16 catalog"),
        );
    };
    match order16_census_from(path) {
        Ok(d) => (Status::Pass, d),
        Err(d) => (Status::Fail, d),
    }
}

fn order16_census_from(path: &std::path::Path) -> Check {
    let loops = catalog::read_loops(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let census = catalog::census(&loops).map_err(|e| e.to_string())?;
    ensure(census.total == 2038, || {
        format!("{} loops, expected 2038", census.total)
    })?;
    ensure(census.central_squares == 1940, || {
        format!("{} with central squares, expected 1940", census.central_squares)
    })?;
    ensure(census.population == 1773, || {
        format!("population {}, expected 1773", census.population)
    })?;
    for (k, &count) in &census.histogram {
        let expected = ORDER16_HISTOGRAM.iter().find(|(j, _)| j == k).map_or(0, |&(_, c)| c);
        ensure(count == expected, || format!("mu_{k} = {count}, expected {expected}"))?;
    }
    let l181 = loops.get(180).ok_or("catalog has fewer than 181 loops")?;
    let nu = catalog::nu_set(l181).map_err(|e| e.to_string())?;
    let nl = l181.nucleus(Side::Left);
    let complement: Vec<usize> = l181.elements().filter(|a| !nl.contains(a)).collect();
    ensure(nu.len() == 8 && nu == complement, || {
        format!("loop 181 has nu-set {nu:?}")
    })?;
    Ok("2038 / 1940 / 1773, histogram and loop 181 match".into())
}

fn orders_12_and_15(opts: &SelftestOptions) -> (Status, String) {
    let mut details = Vec::new();
    let mut inconclusive = false;
    for n in [12, 15] {
        let mut e = EnumerationOptions::new(n);
        e.nonassociative_only = true;
        e.central_squares_only = true;
        e.node_budget = opts.stretch_node_budget;
        match catalog::enumerate(&e) {
            Ok(r) if !r.loops.is_empty() => return (Status::Fail, format!("order {n}: found {} loops", r.loops.len())),
            Ok(r) if r.complete => details.push(format!("order {n}: none ({} nodes)", r.nodes)),
            Ok(r) => {
                inconclusive = true;
                details.push(format!("order {n}: budget of {} nodes exhausted", r.nodes));
            }
            Err(Error::SearchBudgetExceeded { budget }) => {
                inconclusive = true;
                details.push(format!("order {n}: budget of {budget} nodes exhausted"));
            }
            Err(e) => return (Status::Fail, format!("order {n}: {e}")),
        }
    }
    let status = if inconclusive {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    (status, details.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_catalog_is_skipped() {
        let opts = SelftestOptions {
            order16_catalog: None,
            ..SelftestOptions::default()
        };
        assert_eq!(run(11, &opts).status, Status::Skipped);
    }

    #[test]
    fn unreadable_catalog_fails() {
        let opts = SelftestOptions {
            order16_catalog: Some(PathBuf::from("/nonexistent/catalog.loops")),
            ..SelftestOptions::default()
        };
        assert_eq!(run(11, &opts).status, Status::Fail);
    }
}
