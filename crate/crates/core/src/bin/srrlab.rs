use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use srrlab::checks::SearchMode;
use srrlab::codes::{self, gm, LinearCode};
use srrlab::designs::{check_t_design, reduce_design, BlockCollection};
use srrlab::error::{Error, Result};
use srrlab::limits::Limits;
use srrlab::mld::{build_votes, tally_sampled, verify_capability, VoteSet};
use srrlab::rational::Rational;
use srrlab::recovery::format_set;
use srrlab::report::{analyze, Format};
use srrlab::srr::{feasible, verify_allocation, verify_infeasibility, Feasibility};

#[derive(Parser)]
#[command(
    name = "srrlab",
    version,
    about = "Service rates and majority-logic decoding of binary linear codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Solve the axis-intercept LP exactly (`--exact-lp=false` skips it).
    #[arg(long, global = true, action = ArgAction::Set, num_args = 0..=1,
          default_value_t = true, default_missing_value = "true")]
    exact_lp: bool,
    /// Cap on the number of vectors enumerated from any span.
    #[arg(long, global = true)]
    cap_dual: Option<u64>,
    /// Node budget for the exact orthogonal-check search.
    #[arg(long, global = true)]
    cap_clique_nodes: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for random codes and sampled decoding.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Hamming,
    Simplex,
    Repetition,
    Spc,
    ReedMuller,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Evaluation,
    Systematic,
}

#[derive(Clone, Copy, ValueEnum)]
enum MldMode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generator matrix of a standard family in .gm format.
    Family {
        #[arg(long)]
        name: FamilyName,
        /// r for hamming/simplex, n for repetition/spc, `r,m` for
        /// reed-muller, `n,k` for random.
        #[arg(long)]
        param: String,
        /// `evaluation` (simplex only) or `systematic` ([I | P]).
        #[arg(long)]
        form: Option<Form>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-object bounds, exact service rates and design status.
    Analyze {
        path: PathBuf,
        /// Analyze a single object (1-based).
        #[arg(long)]
        object: Option<usize>,
    },
    /// Test whether a demand vector lies in the service rate region.
    Feasible {
        path: PathBuf,
        /// k comma-separated rationals, e.g. `3,0,1/2`.
        demand: String,
    },
    /// Verify one-step majority-logic decoding of an object up to t errors.
    Mld {
        path: PathBuf,
        #[arg(long)]
        object: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = MldMode::Exhaustive)]
        mode: MldMode,
        /// Explicit votes `direct;set;set;...`, each set comma-separated
        /// 1-based positions. Default: a maximum orthogonal family.
        #[arg(long)]
        votes: Option<String>,
        /// Patterns per weight in sampled mode.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Check whether codeword supports of one weight form a t-design.
    Design {
        path: PathBuf,
        /// `min` or a weight.
        #[arg(long, default_value = "min")]
        weight: String,
        #[arg(long)]
        t: usize,
        /// Keep blocks through this coordinate (1-based) and remove it; the
        /// result is checked at level t − 1.
        #[arg(long)]
        puncture: Option<usize>,
        /// Use the dual code's codewords.
        #[arg(long)]
        dual: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        e if e.is_cap_refusal() => 3,
        Error::Internal(_) => 4,
        _ => 1,
    }
}

fn limits(cli: &Cli) -> Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(spec) = std::env::var("SRRLAB_CAPS") {
        limits.apply_overrides(&spec)?;
    }
    if let Some(c) = cli.cap_dual {
        limits.span_cap = c;
    }
    if let Some(c) = cli.cap_clique_nodes {
        limits.clique_nodes = c;
    }
    Ok(limits)
}

fn run(cli: Cli) -> Result<()> {
    let limits = limits(&cli)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Error::InvalidParameters("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Error::Internal(e.to_string()))?;
    let mut out = String::new();
    pool.install(|| dispatch(&cli, &limits, &mut out))?;
    std::io::stdout().write_all(out.as_bytes())?;
    Ok(())
}

fn dispatch(cli: &Cli, limits: &Limits, out: &mut String) -> Result<()> {
    match &cli.command {
        Command::Family {
            name,
            param,
            form,
            out: path,
        } => {
            let code = family(*name, param, *form, cli.seed)?;
            let text = gm::render(code.generator());
            match path {
                Some(p) => gm::write(p, code.generator())?,
                None => out.push_str(&text),
            }
        }
        Command::Analyze { path, object } => {
            let code = load(path)?;
            let objects = object.map(|o| one_based(o, code.k())).transpose()?;
            let report = analyze(
                &code,
                objects.as_ref().map(std::slice::from_ref),
                cli.exact_lp,
                limits,
            )?;
            let format = match cli.format {
                FormatArg::Table => Format::Table,
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            };
            out.push_str(&report.render(format)?);
        }
        Command::Feasible { path, demand } => {
            let code = load(path)?;
            let demand = parse_demand(demand)?;
            cmd_feasible(&code, &demand, limits, out)?;
        }
        Command::Mld {
            path,
            object,
            t,
            mode,
            votes,
            samples,
        } => {
            let code = load(path)?;
            let object = one_based(*object, code.k())?;
            let votes = match votes {
                Some(spec) => parse_votes(&code, object, spec)?,
                None => build_votes(&code, object, SearchMode::Exact, limits)?,
            };
            cmd_mld(&code, &votes, *t, *mode, *samples, cli.seed, limits, out)?;
        }
        Command::Design {
            path,
            weight,
            t,
            puncture,
            dual,
        } => {
            let code = load(path)?;
            let code = if *dual { code.dual()? } else { code };
            let weight = match weight.as_str() {
                "min" => code.min_distance(limits.span_cap)?,
                w => w
                    .parse()
                    .map_err(|_| Error::InvalidParameters(format!("bad weight `{w}`")))?,
            };
            let supports = code.min_weight_codewords(weight, None, limits.span_cap)?;
            let mut blocks = BlockCollection::new(code.n(), supports)?;
            let mut level = *t;
            if let Some(p) = puncture {
                let p = one_based(*p, code.n())?;
                if level < 2 {
                    return Err(Error::InvalidParameters(
                        "--puncture needs --t of at least 2".into(),
                    ));
                }
                blocks = reduce_design(&blocks, &[p])?;
                level -= 1;
            }
            let report = check_t_design(&blocks, level, limits.design_cap)?;
            out.push_str(&format!("{report}\n"));
            out.push_str(&format!("blocks: {} of weight {weight}\n", blocks.len()));
            if let Some(r) = report.replication {
                out.push_str(&format!("replication: {r}\n"));
            }
        }
    }
    Ok(())
}

fn one_based(index: usize, bound: usize) -> Result<usize> {
    if index == 0 || index > bound {
        return Err(Error::IndexOutOfRange { index, bound });
    }
    Ok(index - 1)
}

fn load(path: &Path) -> Result<LinearCode> {
    LinearCode::from_generator(gm::read(path)?)
}

fn numbers(param: &str) -> Result<Vec<usize>> {
    param
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::InvalidParameters(format!("bad family parameter `{param}`")))
        })
        .collect()
}

fn family(name: FamilyName, param: &str, form: Option<Form>, seed: u64) -> Result<LinearCode> {
    let p = numbers(param)?;
    let want = |count: usize| -> Result<()> {
        if p.len() == count {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "this family takes {count} parameter(s), got `{param}`"
            )))
        }
    };
    let code = match name {
        FamilyName::Simplex => {
            want(1)?;
            let forms = codes::simplex(p[0])?;
            return Ok(match form {
                Some(Form::Evaluation) => forms.evaluation,
                _ => forms.systematic,
            });
        }
        FamilyName::Hamming => {
            want(1)?;
            codes::hamming(p[0])?
        }
        FamilyName::Repetition => {
            want(1)?;
            codes::repetition(p[0])?
        }
        FamilyName::Spc => {
            want(1)?;
            codes::spc(p[0])?
        }
        FamilyName::ReedMuller => {
            want(2)?;
            codes::reed_muller(p[0], p[1])?
        }
        FamilyName::Random => {
            want(2)?;
            codes::random_code(p[0], p[1], seed)?
        }
    };
    match form {
        None => Ok(code),
        Some(Form::Systematic) => Ok(code.systematic_form()?.0),
        Some(Form::Evaluation) => Err(Error::InvalidParameters(
            "--form evaluation applies to simplex only".into(),
        )),
    }
}

fn parse_demand(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|s| {
            s.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("malformed rational `{}` in demand vector", s.trim()),
            })
        })
        .collect()
}

fn parse_votes(code: &LinearCode, object: usize, spec: &str) -> Result<VoteSet> {
    let mut sets = Vec::new();
    for part in spec.split(';') {
        let mut set = Vec::new();
        for p in part.split(',') {
            let i: usize = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameters(format!("bad vote position `{p}`")))?;
            set.push(one_based(i, code.n())?);
        }
        sets.push(set);
    }
    let direct = sets.remove(0);
    VoteSet::from_checks(code, object, direct, sets)
}

fn cmd_feasible(code: &LinearCode, demand: &[Rational], limits: &Limits, out: &mut String) -> Result<()> {
    match feasible(code, demand, limits)? {
        Feasibility::Feasible(allocation) => {
            if !verify_allocation(code, demand, &allocation)? {
                return Err(Error::Internal("allocation failed verification".into()));
            }
            out.push_str("feasible\n");
            for (set, rate) in &allocation {
                out.push_str(&format!("object {} {} {rate}\n", set.object + 1, set.label()));
            }
        }
        Feasibility::Infeasible(cert) => {
            if !verify_infeasibility(code, demand, &cert, limits)? {
                return Err(Error::Internal(
                    "infeasibility certificate failed verification".into(),
                ));
            }
            out.push_str("infeasible\n");
            let join = |v: &[Rational]| v.iter().map(Rational::to_string).collect::<Vec<_>>().join(",");
            out.push_str(&format!(
                "object multipliers: {}\n",
                join(&cert.object_multipliers)
            ));
            out.push_str(&format!(
                "server multipliers: {}\n",
                join(&cert.server_multipliers)
            ));
            out.push_str("certificate verified\n");
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_mld(
    code: &LinearCode,
    votes: &VoteSet,
    t: usize,
    mode: MldMode,
    samples: u64,
    seed: u64,
    limits: &Limits,
    out: &mut String,
) -> Result<()> {
    out.push_str(&format!("object {}: {} votes\n", votes.object + 1, votes.votes()));
    out.push_str(&format!("  direct {}\n", format_set(&votes.direct_positions)));
    for s in &votes.check_sums {
        out.push_str(&format!("  check  {}\n", format_set(s)));
    }
    match mode {
        MldMode::Exhaustive => {
            let verdict = verify_capability(code, votes, t, limits)?;
            match verdict.counterexample {
                None => out.push_str(&format!(
                    "PASS: all {} error patterns of weight <= {t} decode correctly\n",
                    verdict.patterns_checked
                )),
                Some(p) => out.push_str(&format!(
                    "FAIL: error pattern {} (weight {}) decodes incorrectly\n",
                    format_set(&p),
                    p.len()
                )),
            }
        }
        MldMode::Sampled => {
            let mut failure = None;
            for w in 1..=t {
                let tally = tally_sampled(code, votes, w, samples, seed.wrapping_add(w as u64))?;
                out.push_str(&format!(
                    "weight {w}: {}/{} decoded\n",
                    tally.decoded, tally.total
                ));
                if failure.is_none() {
                    failure = tally.first_failure;
                }
            }
            match failure {
                None => out.push_str(&format!("PASS: no sampled pattern of weight <= {t} failed\n")),
                Some(p) => out.push_str(&format!(
                    "FAIL: error pattern {} (weight {}) decodes incorrectly\n",
                    format_set(&p),
                    p.len()
                )),
            }
        }
    }
    Ok(())
}
