//! The `aeroplane` command line: argument parsing, command dispatch, report
//! assembly and output. [`run`] does everything except touching the process
//! exit code, so tests can drive it directly.

pub mod report;
pub mod svg;

use std::fmt::Write as _;
use std::path::PathBuf;

use aeroplane_core::coding::{self, itinerary, lower_arc, upper_arc, word_less_by_arcs, Word};
use aeroplane_core::exchange::{self, trace_scenario, verify_predicates, ScenarioConfig, ScenarioKind, Trace};
use aeroplane_core::families::{
    self, capture_family, length_report, length_table, list_exchangeable_pairs, mating_family,
    search_decompositions, verify_captures, verify_matings, verify_occurrences, verify_order_chain,
    verify_suffix_sets,
};
use aeroplane_core::lamination::{minor_leaf_of, pullback_lamination, verify_lamination, MAX_DEPTH};
use aeroplane_core::{
    Angle, AngleError, CodingError, ExchangeError, Families, FamilyError, LaminationError, Report,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

pub use report::{RunReport, Summary};

/// Largest family level any command will build.
pub const MAX_LEVEL: usize = 12;
/// Exchange traces in `verify all` stop at this level.
pub const VERIFY_ALL_EXCHANGE_CAP: usize = 3;
/// Decomposition search in `verify all` stops at this level.
pub const VERIFY_ALL_EAU_CAP: usize = 4;
/// Exchangeable pairs are listed up to this `j`.
pub const EAU_MAX_J: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "aeroplane", version, about = "Exact symbolic dynamics of the aeroplane lamination")]
pub struct Cli {
    /// Print the full JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Treat flagged claims as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Write the JSON report (or the SVG, for `render`) to this file.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Region letters along the doubling orbit of an angle.
    Itinerary {
        angle: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Split C into UC and BC.
        #[arg(long)]
        refine: bool,
    },
    /// Exact upper and lower arcs of the region coded by a word.
    Arc { word: String },
    /// Compare two restricted words in the circle order.
    Order { left: String, right: String },
    /// The words v, w, u, t of one level.
    Family {
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
    /// Literal word lengths against the closed forms.
    Lengths {
        #[arg(long, default_value_t = 8)]
        max_level: usize,
    },
    /// Run a verifier and report its claims.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long, default_value_t = 3)]
        max_level: usize,
        /// Pullback depth for the lamination checks.
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Capture words v_n u_n and w_{k,n} u_{k,n}.
    Captures {
        #[arg(long, conflicts_with = "max_level")]
        level: Option<usize>,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Mating words and their periodic angles q.
    Matings {
        #[arg(long, conflicts_with = "max_level")]
        level: Option<usize>,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Trace the disc exchanges of one scenario.
    Exchange {
        /// basic, level, multi or mating (or 2.1, 2.5, 2.7, 2.8).
        #[arg(long, default_value = "basic")]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Defaults to k.
        #[arg(long)]
        n: Option<usize>,
        /// Print the events as JSON lines.
        #[arg(long)]
        jsonl: bool,
    },
    /// Decompositions e a u of a word passing all eight exchange conditions.
    SearchEau {
        /// Word to search; defaults to v_n u_n at --level.
        word: Option<String>,
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, default_value_t = EAU_MAX_J)]
        max_j: usize,
    },
    /// Draw a scene as SVG.
    Render {
        #[command(subcommand)]
        scene: Scene,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Order,
    Occurrences,
    Suffixes,
    Eau,
    Captures,
    Matings,
    Lengths,
    Lamination,
    Exchange,
    Regions,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Scene {
    /// Pulled-back leaves, one class per depth.
    Lamination {
        #[arg(long, default_value = "3/7")]
        angle: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Components meeting O(y) along an exchange trace.
    Scenario {
        #[arg(long, default_value = "basic")]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// The seven upper regions and their boundary chords.
    Regions,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Lamination(#[from] LaminationError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced before output formatting.
struct Produced {
    claims: Report,
    data: Value,
    text: String,
    /// SVG or JSON lines, sent to `-o` or stdout in place of the text.
    raw: Option<String>,
}

impl Produced {
    fn new(claims: Report, data: Value, text: String) -> Self {
        Produced { claims, data, text, raw: None }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    let command: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, command.join(" ")) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cli: &Cli, command: String) -> Result<Outcome, CliError> {
    let p = dispatch(&cli.command)?;
    let report = RunReport::new(command, p.claims, p.data);
    let code = report.exit_code(cli.strict);
    let mut stdout = String::new();
    let mut stderr = String::new();

    match (&cli.output, &p.raw) {
        (Some(path), Some(raw)) => write_file(path, raw)?,
        (Some(path), None) => write_file(path, &report.to_json())?,
        (None, _) => {}
    }
    match (&p.raw, &cli.output) {
        (Some(raw), None) => stdout.push_str(raw),
        _ if cli.json => stdout.push_str(&report.to_json()),
        _ => {
            stdout.push_str(&p.text);
            stdout.push_str(&report.to_text());
        }
    }
    if report.summary.flagged > 0 {
        let _ = writeln!(
            stderr,
            "warning: {} flagged claim(s){}",
            report.summary.flagged,
            if cli.strict { ", failing under --strict" } else { "" }
        );
    }
    Ok(Outcome { code, stdout, stderr })
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn families(level: usize) -> Result<Families, CliError> {
    if level > MAX_LEVEL {
        return Err(CliError::Usage(format!("level {level} exceeds the maximum {MAX_LEVEL}")));
    }
    Ok(Families::up_to(level))
}

fn parse_word(s: &str) -> Result<Word, CliError> {
    let w: Word = s.parse()?;
    w.check_admissible()?;
    Ok(w)
}

fn parse_scenario(s: &str, k: usize, n: Option<usize>) -> Result<ScenarioConfig, CliError> {
    let kind: ScenarioKind = s.parse().map_err(|e: ExchangeError| CliError::Usage(e.to_string()))?;
    let n = n.unwrap_or(k);
    let fam = families(k.max(n))?;
    Ok(ScenarioConfig::build(kind, &fam, k, n)?)
}

fn dispatch(cmd: &Command) -> Result<Produced, CliError> {
    match cmd {
        Command::Itinerary { angle, depth, refine } => {
            let theta: Angle = angle.parse()?;
            let w = itinerary(&theta, *depth, *refine)?;
            let data = json!({ "angle": theta, "depth": depth, "refine": refine, "itinerary": w });
            Ok(Produced::new(Report::new(), data, format!("{w}\n")))
        }
        Command::Arc { word } => {
            let w = parse_word(word)?;
            let (up, lo) = (upper_arc(&w)?, lower_arc(&w)?);
            let text = format!("upper {up}\nlower {lo}\n");
            Ok(Produced::new(Report::new(), json!({ "word": w, "upper": up, "lower": lo }), text))
        }
        Command::Order { left, right } => order(&parse_word(left)?, &parse_word(right)?),
        Command::Family { level } => {
            let fam = families(*level)?;
            let l = fam.level(*level);
            let mut text = String::new();
            for (name, w) in [("v", &l.v), ("w", &l.w), ("u", &l.u), ("t", &l.t)] {
                let _ = writeln!(text, "{name}_{level} ({:>5}) {}", w.len(), w.compact());
            }
            Ok(Produced::new(Report::new(), json!({ "level": l, "base": fam.base() }), text))
        }
        Command::Lengths { max_level } => {
            let fam = families(*max_level)?;
            let rows = length_table(&fam, *max_level);
            let mut text = String::from("  n      v      t      u    v+u    v+t\n");
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{:>3} {:>6} {:>6} {:>6} {:>6} {:>6}",
                    r.n, r.v, r.t, r.u, r.v_plus_u, r.v_plus_t
                );
            }
            Ok(Produced::new(length_report(&fam, *max_level), json!({ "rows": rows }), text))
        }
        Command::Verify { target, max_level, depth } => {
            let fam = families(*max_level)?;
            let claims = verify(*target, &fam, *max_level, *depth)?;
            Ok(Produced::new(claims, Value::Null, String::new()))
        }
        Command::Captures { level, max_level } => captures(*level, *max_level),
        Command::Matings { level, max_level } => matings(*level, *max_level),
        Command::Exchange { scenario, k, n, jsonl } => {
            let cfg = parse_scenario(scenario, *k, *n)?;
            let trace = trace_scenario(&cfg)?;
            let mut p = exchange_output(&cfg, &trace);
            if *jsonl {
                p.raw = Some(trace.to_jsonl());
            }
            Ok(p)
        }
        Command::SearchEau { word, level, max_j } => {
            let (target, label) = match word {
                Some(s) => (parse_word(s)?, s.clone()),
                None => {
                    let fam = families(*level)?;
                    let l = fam.level(*level);
                    (l.v.cat(&l.u), format!("v_{level} u_{level}"))
                }
            };
            let pairs = list_exchangeable_pairs(*max_j);
            let found = search_decompositions(&target, &pairs);
            let mut text = format!("{label}: {} decomposition(s)\n", found.len());
            for d in &found {
                let _ = writeln!(
                    text,
                    "  a at {:>4}, family {} j = {} (|a| = {})",
                    d.position, d.family, d.j, d.a_len
                );
            }
            let data = json!({ "word": target, "length": target.len(), "decompositions": found });
            Ok(Produced::new(Report::new(), data, text))
        }
        Command::Render { scene } => render(scene),
    }
}

fn order(v: &Word, w: &Word) -> Result<Produced, CliError> {
    let sym = coding::compare_regions(v, w);
    let rel = match sym {
        Some(std::cmp::Ordering::Less) => "<",
        Some(std::cmp::Ordering::Greater) => ">",
        Some(std::cmp::Ordering::Equal) => "=",
        None => "prefix-related",
    };
    let mut r = Report::new();
    if let (Some(o), false) = (sym, v == w) {
        let by_arcs = word_less_by_arcs(v, w)?;
        r.push(aeroplane_core::Claim::new(
            "order.arcs",
            "the symbolic comparison agrees with the exact arcs",
            by_arcs == (o == std::cmp::Ordering::Less),
            json!({ "symbolic": rel, "arcs_less": by_arcs }),
        ));
    }
    let data = json!({ "left": v, "right": w, "relation": rel });
    Ok(Produced::new(r, data, format!("{v} {rel} {w}\n")))
}

fn level_range(level: Option<usize>, max_level: Option<usize>, default_max: usize) -> (usize, usize) {
    match (level, max_level) {
        (Some(l), _) => (l, l),
        (None, Some(m)) => (0, m),
        (None, None) => (0, default_max),
    }
}

fn captures(level: Option<usize>, max_level: Option<usize>) -> Result<Produced, CliError> {
    let (lo, hi) = level_range(level, max_level, 2);
    let fam = families(hi)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut claims = Report::new();
    for n in lo..=hi {
        let specs = capture_family(&fam, n)?;
        for s in &specs {
            let _ = writeln!(
                text,
                "n={n} {:<14} preperiod {:>5} (closed form {:>5}) arc {}",
                s.label, s.preperiod, s.closed_form_preperiod, s.arc
            );
        }
        rows.push(json!({ "n": n, "words": specs }));
    }
    claims.extend(only_levels(verify_captures(&fam, hi), lo));
    Ok(Produced::new(claims, json!({ "levels": rows }), text))
}

fn matings(level: Option<usize>, max_level: Option<usize>) -> Result<Produced, CliError> {
    let (lo, hi) = level_range(level, max_level, 2);
    let fam = families(hi)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for n in lo..=hi {
        let specs = mating_family(&fam, n)?;
        for s in &specs {
            let _ = writeln!(
                text,
                "n={n} {:<14} period {:>5} q = {}",
                s.label, s.orbit.period, s.q
            );
        }
        rows.push(json!({ "n": n, "angles": specs }));
    }
    let claims = only_levels(verify_matings(&fam, hi), lo);
    Ok(Produced::new(claims, json!({ "levels": rows }), text))
}

/// Drop per-level claims below `lo`; claim ids carry the level as `.n{n}`.
fn only_levels(r: Report, lo: usize) -> Report {
    r.claims
        .into_iter()
        .filter(|c| {
            c.id.split('.')
                .find_map(|part| part.strip_prefix('n').and_then(|d| d.parse::<usize>().ok()))
                .is_none_or(|n| n >= lo)
        })
        .collect()
}

fn exchange_output(cfg: &ScenarioConfig, trace: &Trace) -> Produced {
    let claims = verify_predicates(cfg, trace);
    let mut text = format!(
        "scenario {}: y = {}\n             x = {}\n             z = {}\n",
        cfg.name(),
        cfg.y.compact(),
        cfg.x.compact(),
        trace.z.compact()
    );
    let rows: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            for c in &s.active {
                let _ = writeln!(text, "{:>4}  {c}", s.step);
            }
            json!({ "step": s.step, "depth": s.depth, "components": s.components, "active": s.active.iter().map(|c| c.to_string()).collect::<Vec<_>>() })
        })
        .collect();
    let _ = writeln!(text, "main path events at {:?}", trace.main_path_steps());
    if cfg.zeta.is_some() {
        let _ = writeln!(text, "second path events at {:?}", trace.zeta_path_steps());
    }
    let _ = writeln!(text, "final endpoint {}", trace.final_endpoint.compact());
    let data = json!({
        "scenario": cfg.name(),
        "y": cfg.y,
        "x": cfg.x,
        "z": trace.z,
        "first_step": trace.first_step,
        "preperiod": trace.preperiod,
        "rows": rows,
        "main_path_steps": trace.main_path_steps(),
        "zeta_path_steps": trace.zeta_path_steps(),
        "final_endpoint": trace.final_endpoint,
        "final_zeta": trace.final_zeta,
        "hook_count": trace.hook_count,
    });
    Produced::new(claims, data, text)
}

fn render(scene: &Scene) -> Result<Produced, CliError> {
    let (svg, data) = match scene {
        Scene::Lamination { angle, depth } => {
            if *depth > MAX_DEPTH {
                return Err(CliError::Usage(format!("depth {depth} exceeds the maximum {MAX_DEPTH}")));
            }
            let minor = minor_leaf_of(&angle.parse()?)?;
            let lam = pullback_lamination(&minor, *depth)?;
            (svg::lamination(&lam), json!({ "scene": "lamination", "layers": lam.layer_sizes() }))
        }
        Scene::Scenario { scenario, k, n } => {
            let cfg = parse_scenario(scenario, *k, *n)?;
            let trace = trace_scenario(&cfg)?;
            (svg::scenario(&trace), json!({ "scene": "scenario", "scenario": cfg.name(), "steps": trace.steps.len() }))
        }
        Scene::Regions => (svg::regions(), json!({ "scene": "regions" })),
    };
    let text = format!("{}\n", data["scene"].as_str().unwrap_or_default());
    Ok(Produced {
        claims: Report::new(),
        data,
        text,
        raw: Some(svg),
    })
}

/// Claims for one target. `all` runs its parts on scoped threads and
/// concatenates them in a fixed order.
pub fn verify(target: VerifyTarget, fam: &Families, max_level: usize, depth: usize) -> Result<Report, CliError> {
    use VerifyTarget::*;
    let one = |t: VerifyTarget| -> Result<Report, CliError> {
        Ok(match t {
            Order => verify_order_chain(fam, max_level),
            Occurrences => verify_occurrences(fam, max_level),
            Suffixes => verify_suffix_sets(fam, max_level)?,
            Eau => families::verify_eau(fam, max_level, EAU_MAX_J),
            Captures => verify_captures(fam, max_level),
            Matings => verify_matings(fam, max_level),
            Lengths => length_report(fam, max_level),
            Lamination => {
                if depth > MAX_DEPTH {
                    return Err(CliError::Usage(format!("depth {depth} exceeds the maximum {MAX_DEPTH}")));
                }
                let minor = minor_leaf_of(&Angle::frac(3, 7))?;
                verify_lamination(&pullback_lamination(&minor, depth)?)
            }
            Exchange => exchange::verify_exchange(fam, max_level, max_level)?,
            Regions => coding::verify_regions(),
            All => unreachable!("expanded by the caller"),
        })
    };
    if target != All {
        return one(target);
    }
    let parts = [Regions, Order, Occurrences, Suffixes, Eau, Captures, Matings, Lengths, Lamination, Exchange];
    let results: Vec<Result<Report, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = parts
            .iter()
            .map(|&t| {
                let one = &one;
                s.spawn(move || match t {
                    Eau => Ok(families::verify_eau(fam, max_level.min(VERIFY_ALL_EAU_CAP), EAU_MAX_J)),
                    Exchange => {
                        let cap = max_level.min(VERIFY_ALL_EXCHANGE_CAP);
                        Ok(exchange::verify_exchange(fam, cap, cap)?)
                    }
                    _ => one(t),
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
    });
    let mut r = Report::new();
    for part in results {
        r.extend(part?);
    }
    Ok(r)
}
