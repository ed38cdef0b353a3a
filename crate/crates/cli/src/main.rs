//! `bolkit`: command-line access to the loop library.
//!
//! Exit codes: 0 success, 1 budget exhausted (partial output is marked),
//! 2 input or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bolkit::catalog::{self, EnumerationOptions};
use bolkit::extension::{chein, extend, iterate_extension};
use bolkit::loops::Violation;
use bolkit::nets::{gamma_group, reflection_line_action, sigma_set};
use bolkit::quandle::{abelianized_rank, core, rstr_presentation, todd_coxeter, GroupPresentation};
use bolkit::selftest::{self, SelftestOptions, Status};
use bolkit::{Error, Identity, Loop, PermGroup};
use clap::{ArgGroup, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bolkit",
    version,
    about = "Finite right Bol loops, their extensions, nets and cores"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity on every loop in a file.
    Check {
        file: PathBuf,
        /// Identity name, e.g. right_bol, moufang, associative, aip, rcc.
        #[arg(long)]
        identity: Identity,
    },
    /// Summarize loops; optionally write one TSV row per loop.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
    /// Build the index-2 extension of each loop.
    Extend {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Apply the extension this many times (requires right Bol input).
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
    /// Build Chein's Moufang loop of each group.
    Chein {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Core quandle `a ◁ b = (b·a⁻¹)·b` of each loop.
    Core {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Order of the restricted structure group of each loop's core.
    Rstr {
        file: PathBuf,
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Treat the input as a group presentation instead of a loop file.
        #[arg(long)]
        presentation: bool,
    },
    /// Bol reflections of the 3-net and the group they generate.
    #[command(group(ArgGroup::new("what").required(true).multiple(true).args(["reflections", "sigma", "gamma_order"])))]
    Net {
        file: PathBuf,
        #[arg(long)]
        reflections: bool,
        #[arg(long)]
        sigma: bool,
        #[arg(long)]
        gamma_order: bool,
    },
    /// Right Bol loops of a given order up to isomorphism.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        nonassoc: bool,
        #[arg(long)]
        central_squares: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Allow order 16.
        #[arg(long)]
        long_running: bool,
    },
    /// Census of a catalog: central squares, population and the ν histogram.
    Histogram {
        file: PathBuf,
        /// Also print the ν-set of the loop at this 1-based position.
        #[arg(long)]
        show: Option<usize>,
    },
    /// Run the built-in acceptance checks.
    Selftest {
        /// Order-16 catalog for the census check.
        #[arg(long)]
        order16: Option<PathBuf>,
        /// Skip the order-12/15 searches.
        #[arg(long)]
        quick: bool,
    },
}

/// Budgets from `BOLKIT_BUDGET=max_cosets=N,nodes=N,closure=N`.
struct Budgets {
    max_cosets: usize,
    nodes: u64,
    closure: usize,
}

impl Budgets {
    fn from_env() -> Result<Self, Failure> {
        let mut b = Budgets {
            max_cosets: bolkit::quandle::DEFAULT_MAX_COSETS,
            nodes: catalog::DEFAULT_NODE_BUDGET,
            closure: bolkit::perm::DEFAULT_CLOSURE_BUDGET,
        };
        let Ok(raw) = std::env::var("BOLKIT_BUDGET") else {
            return Ok(b);
        };
        for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Failure::usage(format!("BOLKIT_BUDGET: expected key=value, found `{item}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Failure::usage(format!("BOLKIT_BUDGET: `{item}` needs a positive integer")))?;
            match key.trim() {
                "max_cosets" => b.max_cosets = value as usize,
                "nodes" => b.nodes = value,
                "closure" => b.closure = value as usize,
                other => return Err(Failure::usage(format!("BOLKIT_BUDGET: unknown key `{other}`"))),
            }
        }
        Ok(b)
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }

    fn budget(message: String) -> Self {
        Failure { code: 1, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CosetBudgetExceeded { .. }
            | Error::SearchBudgetExceeded { .. }
            | Error::ClosureBudgetExceeded { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    // Exit quietly when stdout is closed early, as in `bolkit ... | head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = Budgets::from_env().and_then(|b| run(cli.command, &b));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bolkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(path: &Path) -> Result<Vec<Loop>, Failure> {
    catalog::read_loops(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn label(l: &Loop, i: usize) -> String {
    l.name().map_or_else(|| format!("L{}", i + 1), str::to_owned)
}

fn emit(loops: &[Loop], out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => Ok(catalog::write_loops(p, loops)?),
        None => {
            print!("{}", catalog::write_loops_to_string(loops));
            Ok(())
        }
    }
}

fn run(command: Command, budgets: &Budgets) -> Outcome {
    match command {
        Command::Check { file, identity } => {
            for (i, l) in load(&file)?.iter().enumerate() {
                let verdict = match l.find_violation(identity) {
                    None => "holds".to_owned(),
                    Some(Violation::Tuple(t)) => {
                        let t: Vec<String> = t.iter().map(|x| (x + 1).to_string()).collect();
                        format!("fails at ({})", t.join(", "))
                    }
                    Some(Violation::MissingInverse(x)) => format!("fails: element {} has no two-sided inverse", x + 1),
                };
                println!("{}: {} {verdict}", label(l, i), identity.name());
            }
            Ok(())
        }
        Command::Analyze { file, tsv } => {
            let loops = load(&file)?;
            let records: Vec<_> = loops.iter().map(catalog::analyze).collect();
            for (i, r) in records.iter().enumerate() {
                let flags: Vec<&str> = [
                    ("right_bol", r.right_bol),
                    ("moufang", r.moufang),
                    ("associative", r.associative),
                    ("commutative", r.commutative),
                    ("aip", r.aip),
                    ("rcc", r.rcc),
                    ("central_squares", r.central_squares),
                ]
                .iter()
                .filter(|(_, on)| *on)
                .map(|(name, _)| *name)
                .collect();
                let opt = |v: Option<usize>| v.map_or_else(|| "-".to_owned(), |x| x.to_string());
                println!(
                    "{}: order {}, exponent {}, nuclei {}/{}/{}, commutant {}, center {}, core orbits {}, nu {}; {}",
                    label(&r.table, i),
                    r.table.order(),
                    opt(r.exponent),
                    r.n_left,
                    r.n_middle,
                    r.n_right,
                    r.commutant,
                    r.center,
                    opt(r.core_orbits),
                    opt(r.nu),
                    if flags.is_empty() {
                        "no listed identities".to_owned()
                    } else {
                        flags.join(" ")
                    },
                );
            }
            if let Some(path) = tsv {
                std::fs::write(&path, catalog::records_to_tsv(&records)).map_err(Error::from)?;
            }
            Ok(())
        }
        Command::Extend { file, out, iterate } => {
            let mut results = Vec::new();
            for (i, l) in load(&file)?.iter().enumerate() {
                let name = label(l, i);
                let ext = if iterate == 1 {
                    extend(l)?.into_carrier()
                } else {
                    iterate_extension(l, iterate)?.pop().expect("at least the base loop")
                };
                let ext = match iterate {
                    1 => ext.with_name(format!("ext({name})")),
                    k => ext.with_name(format!("ext^{k}({name})")),
                };
                eprintln!(
                    "{}: order {}, associative {}, right Bol {}",
                    ext.name().unwrap_or_default(),
                    ext.order(),
                    ext.satisfies(Identity::Associative),
                    ext.satisfies(Identity::RightBol)
                );
                results.push(ext);
            }
            emit(&results, out.as_deref())
        }
        Command::Chein { file, out } => {
            let loops = load(&file)?;
            let results = loops
                .iter()
                .enumerate()
                .map(|(i, g)| chein(g).map(|m| m.with_name(format!("M({},2)", label(g, i)))))
                .collect::<Result<Vec<_>, _>>()?;
            for m in &results {
                println!(
                    "{}: order {}, Moufang {}, associative {}",
                    m.name().unwrap_or_default(),
                    m.order(),
                    m.satisfies(Identity::Moufang),
                    m.satisfies(Identity::Associative)
                );
            }
            emit(&results, Some(&out))
        }
        Command::Core { file, out } => {
            let mut tables = String::new();
            for (i, l) in load(&file)?.iter().enumerate() {
                let q = core(l)?;
                println!(
                    "{}: quandle {}, involutory {}, quasigroup {}, orbits {}",
                    label(l, i),
                    q.is_quandle(),
                    q.is_involutory(),
                    q.is_quasigroup_quandle(),
                    q.orbit_count()
                );
                tables.push_str(&format!("core {}\norder {}\n", label(l, i), q.order()));
                for row in q.rows() {
                    let cells: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
                    tables.push_str(&cells.join(" "));
                    tables.push('\n');
                }
            }
            match out {
                Some(p) => std::fs::write(p, tables).map_err(Error::from)?,
                None => print!("{tables}"),
            }
            Ok(())
        }
        Command::Rstr {
            file,
            max_cosets,
            presentation,
        } => {
            let budget = max_cosets.unwrap_or(budgets.max_cosets);
            if budget == 0 {
                return Err(Failure::usage("--max-cosets must be positive".into()));
            }
            let inputs: Vec<(String, GroupPresentation)> = if presentation {
                let text =
                    std::fs::read_to_string(&file).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
                let p: GroupPresentation = text
                    .parse()
                    .map_err(|e: Error| Failure::usage(format!("{}: {e}", file.display())))?;
                vec![(file.display().to_string(), p)]
            } else {
                load(&file)?
                    .iter()
                    .enumerate()
                    .map(|(i, l)| Ok((label(l, i), rstr_presentation(&core(l)?)?)))
                    .collect::<Result<_, Error>>()?
            };
            let mut exhausted = None;
            for (name, p) in &inputs {
                let rank = abelianized_rank(p);
                match todd_coxeter(p, &[], budget) {
                    Ok(t) => println!("{name}: order {}, abelianized rank {rank}", t.index()),
                    Err(e @ Error::CosetBudgetExceeded { .. }) => {
                        println!("{name}: PARTIAL {e}, abelianized rank {rank}");
                        exhausted = Some(e);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            match exhausted {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
        Command::Net {
            file,
            reflections,
            sigma,
            gamma_order,
        } => {
            for (i, l) in load(&file)?.iter().enumerate() {
                let name = label(l, i);
                if reflections {
                    for d in l.elements() {
                        println!("{name}: sigma_{} = {}", d + 1, reflection_line_action(l, d)?);
                    }
                }
                if sigma {
                    for (k, s) in sigma_set(l)?.iter().enumerate() {
                        println!("{name}: Sigma[{}] = {s}", k + 1);
                    }
                }
                if gamma_order {
                    let gens = gamma_group(l)?.generators().to_vec();
                    let g = PermGroup::with_budget(2 * l.order(), gens, budgets.closure)?;
                    println!("{name}: |Gamma| = {}", g.order()?);
                }
            }
            Ok(())
        }
        Command::Enumerate {
            order,
            nonassoc,
            central_squares,
            out,
            jobs,
            long_running,
        } => {
            if jobs == Some(0) {
                return Err(Failure::usage("--jobs must be positive".into()));
            }
            let mut opts = EnumerationOptions::new(order);
            opts.nonassociative_only = nonassoc;
            opts.central_squares_only = central_squares;
            opts.node_budget = budgets.nodes;
            opts.jobs = jobs;
            opts.allow_long_running = long_running;
            let result = catalog::enumerate(&opts).map_err(|e| match e {
                Error::Unsupported(m) => Failure::usage(m),
                other => other.into(),
            })?;
            if !result.complete {
                println!(
                    "# PARTIAL: node budget of {} exhausted; list may be incomplete",
                    budgets.nodes
                );
            }
            println!("# {} loops of order {order}", result.loops.len());
            emit(&result.loops, out.as_deref())?;
            if result.complete {
                Ok(())
            } else {
                Err(Failure::budget(format!("search stopped after {} nodes", result.nodes)))
            }
        }
        Command::Histogram { file, show } => {
            let loops = load(&file)?;
            let census = catalog::census(&loops)?;
            println!("loops: {}", census.total);
            println!("central squares: {}", census.central_squares);
            println!("neither associative nor AIP: {}", census.population);
            println!("k\tmu_k");
            for (k, count) in &census.histogram {
                println!("{k}\t{count}");
            }
            if let Some(pos) = show {
                let l = loops
                    .get(pos.wrapping_sub(1))
                    .ok_or_else(|| Failure::usage(format!("no loop at position {pos}")))?;
                let set: Vec<String> = catalog::nu_set(l)?.iter().map(|n| format!("v{}", n + 1)).collect();
                println!("{}: nu-set {{{}}}", label(l, pos - 1), set.join(", "));
            }
            Ok(())
        }
        Command::Selftest { order16, quick } => {
            let mut opts = SelftestOptions {
                max_cosets: budgets.max_cosets,
                run_stretch: !quick,
                ..SelftestOptions::default()
            };
            if order16.is_some() {
                opts.order16_catalog = order16;
            }
            let mut failed = 0;
            for id in 1..=selftest::TITLES.len() {
                let outcome = selftest::run(id, &opts);
                println!("{outcome}");
                failed += (outcome.status == Status::Fail) as usize;
            }
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure {
                    code: 1,
                    message: format!("{failed} check(s) failed"),
                })
            }
        }
    }
}
