//! Command-line front end. [`run`] parses arguments and returns the exit code
//! and both output streams, so tests can drive it without a process.
//!
//! Exit codes: 0 pass, 1 semantic negative (violations, false verdicts,
//! inconclusive searches, no cover), 2 usage, parse and I/O errors.

use std::fmt::Write as _;
use std::num::{NonZeroU64, NonZeroUsize};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complex::{build_named, ComplexFile, PrecubicalSet};
use crate::components::pair_components;
use crate::error::{Error, Result};
use crate::maps::{
    check_admissible, check_dhe, check_inessential, check_psp, check_rather_inessential, search_dhe, AdmissibleMap,
    Alpha, ChainFile, DheCertificate, DheFile, InessentialSet, MapFile, RatherCertificate, RatherFile, Verdict,
    WitnessChain,
};
use crate::paths::Space;
use crate::tc::{directed_tc, CoverFile, SectionCover};

#[derive(Parser, Debug)]
#[command(name = "dirtop", version, about = "Directed homotopy invariants of finite pre-cubical sets")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    workers: Option<NonZeroUsize>,
    /// Bound on path length; required for complexes with directed loops.
    #[arg(long, global = true)]
    max_len: Option<NonZeroUsize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a complex file against the pre-cubical relations.
    Validate { file: PathBuf },
    /// Write a named complex, e.g. `gen boundary-cube 2`.
    Gen {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Dihomotopy classes between two vertices, or for every reachable pair.
    Pi0 {
        complex: String,
        #[arg(long, requires = "to", conflicts_with = "all_pairs")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        #[arg(long)]
        all_pairs: bool,
    },
    /// Properties of maps and searches for equivalences.
    Analyze {
        #[command(subcommand)]
        command: Analyze,
    },
    /// Pair component category: object count and signatures.
    Components {
        complex: String,
        /// Also write the category as a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Discrete directed topological complexity with a witness cover.
    Dtc {
        complex: String,
        #[arg(long, default_value = "4")]
        max_k: NonZeroUsize,
        /// Write the cover as JSON.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Cartesian product of two complexes.
    Product {
        left: String,
        right: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SearchFlags {
    #[arg(long, default_value = "0", value_parser = parse_alpha)]
    alpha: Alpha,
    /// Bound on search nodes per enumeration.
    #[arg(long)]
    budget: Option<NonZeroU64>,
    /// Write the certificate here when the verdict is true.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Analyze {
    /// Is the map path space preserving?
    Psp {
        source: String,
        /// Defaults to the source.
        target: Option<String>,
        #[arg(long)]
        map: PathBuf,
    },
    /// Is an endomap inessential? Without --map, lists every inessential endomap.
    Inessential {
        complex: String,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value = "8")]
        depth: NonZeroUsize,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Is an endomap rather inessential?
    Rather {
        complex: String,
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Is the map a directed homotopy equivalence? Without --map, searches all maps.
    Dhe {
        source: String,
        target: String,
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Re-check a certificate or cover file written by another command.
    Verify {
        source: String,
        /// Defaults to the source.
        target: Option<String>,
        #[arg(long)]
        cert: PathBuf,
    },
}

fn parse_alpha(s: &str) -> std::result::Result<Alpha, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    text: Vec<String>,
    structured: Value,
}

impl Report {
    fn new(code: i32, text: Vec<String>, structured: Value) -> Self {
        Report { code, text, structured }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoCover { .. } | Error::Certificate(_) | Error::Precondition(_) => 1,
        _ => 2,
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let exec = || dispatch(&cli);
    let result = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.get()).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(Error::Parameter(e.to_string())),
        },
        None => exec(),
    };
    match result {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Text => report.text.iter().fold(String::new(), |mut s, l| {
                    let _ = writeln!(s, "{l}");
                    s
                }),
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&report.structured).expect("reports serialize");
                    s.push('\n');
                    s
                }
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load_complex(arg: &str) -> Result<PrecubicalSet> {
    let path = Path::new(arg);
    if path.is_file() {
        PrecubicalSet::from_json(&std::fs::read_to_string(path)?)
    } else {
        build_named(arg)
    }
}

fn load_space(arg: &str, max_len: Option<NonZeroUsize>) -> Result<Space> {
    Space::with_bound(load_complex(arg)?, max_len.map(NonZeroUsize::get))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

fn load_map(path: &Path, x: &Space, y: &Space) -> Result<AdmissibleMap> {
    AdmissibleMap::from_file(&x.complex, &y.complex, &read_json::<MapFile>(path)?)
}

fn verdict_code<C>(v: &Verdict<C>) -> i32 {
    if v.holds() == Some(true) {
        0
    } else {
        1
    }
}

fn verdict_value<C>(v: &Verdict<C>) -> Value {
    match v {
        Verdict::Proved(_) => json!("true"),
        Verdict::Refuted => json!("false"),
        Verdict::Undecided(_) => json!("inconclusive"),
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let max_len = cli.max_len;
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Gen { name, params, out } => {
            let spec = std::iter::once(name.as_str()).chain(params.iter().map(String::as_str)).collect::<Vec<_>>();
            let complex = build_named(&spec.join(" "))?;
            emit_complex(&complex, out.as_deref())
        }
        Command::Product { left, right, out } => {
            let complex = load_complex(left)?.product(&load_complex(right)?);
            emit_complex(&complex, out.as_deref())
        }
        Command::Pi0 { complex, from, to, .. } => {
            let space = load_space(complex, max_len)?;
            match (from, to) {
                (Some(a), Some(b)) => pi0_pair(&space, a, b),
                _ => Ok(pi0_all(&space)),
            }
        }
        Command::Analyze { command } => analyze(command, max_len),
        Command::Components { complex, dot } => components(&load_space(complex, max_len)?, dot.as_deref()),
        Command::Dtc { complex, max_k, out } => dtc(&load_space(complex, max_len)?, max_k.get(), out.as_deref()),
    }
}

fn validate(path: &Path) -> Result<Report> {
    let file = ComplexFile::from_json(&std::fs::read_to_string(path)?)?;
    let report = file.validate();
    if !report.passed() {
        let mut text = vec![format!("fail: {} violations", report.violations.len())];
        text.extend(report.violations.iter().map(ToString::to_string));
        let structured = json!({
            "valid": false,
            "violations": report.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        });
        return Ok(Report::new(1, text, structured));
    }
    let x = PrecubicalSet::from_file(&file)?;
    let (nsl, lf) = (x.is_non_self_linked(), x.is_loop_free());
    Ok(Report::new(
        0,
        vec![
            "pass".into(),
            format!("cells: {}", x.total_cells()),
            format!("non-self-linked: {nsl}"),
            format!("loop-free: {lf}"),
        ],
        json!({"valid": true, "cells": x.total_cells(), "non_self_linked": nsl, "loop_free": lf}),
    ))
}

fn emit_complex(x: &PrecubicalSet, out: Option<&Path>) -> Result<Report> {
    let text = x.to_json();
    let structured: Value = serde_json::from_str(&text)?;
    match out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(Report::new(
                0,
                vec![format!("wrote {}: {} cells", path.display(), x.total_cells())],
                json!({"path": path.display().to_string(), "cells": x.total_cells()}),
            ))
        }
        None => Ok(Report::new(0, text.lines().map(String::from).collect(), structured)),
    }
}

fn bound_note(space: &Space) -> Option<String> {
    match space.table.mode() {
        crate::paths::Mode::Bounded(l) => Some(format!("relative to max-len {l}")),
        crate::paths::Mode::Exhaustive => None,
    }
}

fn pi0_pair(space: &Space, a: &str, b: &str) -> Result<Report> {
    let (x, t) = (&space.complex, &space.table);
    let (va, vb) = (space.vertex(a)?, space.vertex(b)?);
    let reps: Vec<String> = t.pair(va, vb).map(|c| t.representative(c).display(x).to_string()).collect();
    let mut text = vec![reps.len().to_string()];
    text.extend(reps.iter().enumerate().map(|(k, r)| format!("{k}: {r}")));
    text.extend(bound_note(space));
    let structured = json!({
        "from": x.vertex_id(va),
        "to": x.vertex_id(vb),
        "count": reps.len(),
        "representatives": reps,
        "bound": bound_note(space),
    });
    Ok(Report::new(0, text, structured))
}

fn pi0_all(space: &Space) -> Report {
    let (x, t) = (&space.complex, &space.table);
    let mut text = space.report();
    text.extend(bound_note(space));
    let pairs: Vec<Value> = space
        .pairs()
        .map(|(a, b)| {
            json!({
                "from": x.vertex_id(a),
                "to": x.vertex_id(b),
                "count": t.count(a, b),
                "representatives": t.pair(a, b).map(|c| t.representative(c).display(x).to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Report::new(0, text, json!({"pairs": pairs, "bound": bound_note(space)}))
}

#[derive(Serialize, Deserialize)]
struct InessentialFile {
    kind: String,
    alpha: String,
    map: MapFile,
    chain: ChainFile,
}

#[derive(Serialize, Deserialize)]
struct RatherCertFile {
    kind: String,
    alpha: String,
    #[serde(flatten)]
    certificate: RatherFile,
}

fn chain_lines(chain: &WitnessChain, x: &Space) -> Vec<String> {
    let mut lines = Vec::new();
    for (k, m) in chain.maps.iter().enumerate() {
        if k > 0 {
            let step = &chain.steps[k - 1];
            let dir = match step.direction {
                crate::maps::Direction::Future => "future",
                crate::maps::Direction::Past => "past",
            };
            lines.push(format!("  {dir}"));
        }
        lines.push(format!("  {} psp={}", m.display(&x.complex, &x.complex), chain.psp[k]));
    }
    lines
}

fn analyze(cmd: &Analyze, max_len: Option<NonZeroUsize>) -> Result<Report> {
    match cmd {
        Analyze::Psp { source, target, map } => {
            let x = load_space(source, max_len)?;
            let y = match target {
                Some(t) => load_space(t, max_len)?,
                None => load_space(source, max_len)?,
            };
            let f = load_map(map, &x, &y)?;
            let adm = check_admissible(&x, &y, &f);
            if !adm.admissible() {
                let mut text = vec!["admissible: false".to_string()];
                text.extend(adm.violations.iter().map(ToString::to_string));
                let v: Vec<String> = adm.violations.iter().map(ToString::to_string).collect();
                return Ok(Report::new(1, text, json!({"admissible": false, "violations": v})));
            }
            let r = check_psp(&x, &y, &f)?;
            let mut text = vec![format!("psp: {}", r.psp)];
            if let Some((a, b)) = &r.failure {
                text.push(format!("fails at ({a}, {b})"));
            }
            if r.relative_to_bound {
                text.push("relative to bound".into());
            }
            let structured = json!({
                "admissible": true,
                "psp": r.psp,
                "failure": r.failure.as_ref().map(|(a, b)| vec![a, b]),
                "relative_to_bound": r.relative_to_bound,
            });
            Ok(Report::new(if r.psp { 0 } else { 1 }, text, structured))
        }
        Analyze::Inessential { complex, map: Some(map), depth, search } => {
            let x = load_space(complex, max_len)?;
            let f = load_map(map, &x, &x)?;
            let alpha = search.alpha;
            let v = check_inessential(&x, &f, alpha, depth.get())?;
            let mut text = vec![format!("inessential({alpha}): {}", v.label())];
            let mut structured =
                json!({"alpha": alpha.to_string(), "inessential": verdict_value(&v), "label": v.label()});
            if let Some(chain) = v.certificate() {
                text.extend(chain_lines(chain, &x));
                structured["chain"] = serde_json::to_value(chain.to_file(&x, &x))?;
                if let Some(path) = &search.cert {
                    let file = InessentialFile {
                        kind: "inessential".into(),
                        alpha: alpha.to_string(),
                        map: f.to_file(&x.complex, &x.complex),
                        chain: chain.to_file(&x, &x),
                    };
                    write_json(path, &file)?;
                }
            }
            Ok(Report::new(verdict_code(&v), text, structured))
        }
        Analyze::Inessential { complex, map: None, search, .. } => {
            let x = load_space(complex, max_len)?;
            let alpha = search.alpha;
            let set = InessentialSet::compute(&x, alpha, search.budget.map(NonZeroU64::get));
            let maps: Vec<String> =
                set.members().iter().map(|m| m.display(&x.complex, &x.complex).to_string()).collect();
            let mut text = vec![format!("inessential({alpha}): {} maps", maps.len())];
            text.extend(maps.iter().cloned());
            if let Some(why) = set.incomplete_reason() {
                text.push(format!("inconclusive ({why})"));
            }
            let structured = json!({
                "alpha": alpha.to_string(),
                "maps": maps,
                "complete": set.is_complete(),
                "incomplete_reason": set.incomplete_reason(),
            });
            Ok(Report::new(if set.is_complete() { 0 } else { 1 }, text, structured))
        }
        Analyze::Rather { complex, map, search } => {
            let x = load_space(complex, max_len)?;
            let h = load_map(map, &x, &x)?;
            let alpha = search.alpha;
            let set = InessentialSet::compute(&x, alpha, search.budget.map(NonZeroU64::get));
            let v = check_rather_inessential(&set, &h, None)?;
            let mut text = vec![format!("rather({alpha}): {}", v.label())];
            let mut structured = json!({"alpha": alpha.to_string(), "rather": verdict_value(&v), "label": v.label()});
            if let Some(c) = v.certificate() {
                text.push(format!("k = {}", c.k.display(&x.complex, &x.complex)));
                structured["k"] = serde_json::to_value(c.k.to_file(&x.complex, &x.complex))?;
                if let Some(path) = &search.cert {
                    let file =
                        RatherCertFile { kind: "rather".into(), alpha: alpha.to_string(), certificate: c.to_file(&x) };
                    write_json(path, &file)?;
                }
            }
            Ok(Report::new(verdict_code(&v), text, structured))
        }
        Analyze::Dhe { source, target, map, search } => {
            let x = load_space(source, max_len)?;
            let y = load_space(target, max_len)?;
            let alpha = search.alpha;
            let budget = search.budget.map(NonZeroU64::get);
            let v = match map {
                Some(m) => check_dhe(&x, &y, &load_map(m, &x, &y)?, alpha, budget)?,
                None => search_dhe(&x, &y, alpha, budget)?,
            };
            let mut text = vec![format!("dhe({alpha}): {}", v.label())];
            let mut structured = json!({"alpha": alpha.to_string(), "dhe": verdict_value(&v), "label": v.label()});
            if let Some(c) = v.certificate() {
                text.push(format!("f = {}", c.f.display(&x.complex, &y.complex)));
                text.push(format!("g = {}", c.g.display(&y.complex, &x.complex)));
                let file = c.to_file(&x, &y);
                structured["certificate"] = serde_json::to_value(&file)?;
                if let Some(path) = &search.cert {
                    write_json(path, &file)?;
                }
            }
            Ok(Report::new(verdict_code(&v), text, structured))
        }
        Analyze::Verify { source, target, cert } => {
            let x = load_space(source, max_len)?;
            let y = match target {
                Some(t) => load_space(t, max_len)?,
                None => load_space(source, max_len)?,
            };
            let raw: Value = read_json(cert)?;
            let kind = raw.get("kind").and_then(Value::as_str).unwrap_or("").to_string();
            let (valid, what) = match kind.as_str() {
                "dhe" => {
                    let file: DheFile = serde_json::from_value(raw)?;
                    (DheCertificate::from_file(&x, &y, &file)?.verify(&x, &y)?, "dhe")
                }
                "inessential" => {
                    let file: InessentialFile = serde_json::from_value(raw)?;
                    let alpha: Alpha = file.alpha.parse()?;
                    let f = AdmissibleMap::from_file(&x.complex, &x.complex, &file.map)?;
                    let chain = WitnessChain::from_file(&x, &x, &file.chain)?;
                    let id = AdmissibleMap::identity(x.complex.num_vertices());
                    let ok = chain.start() == &id
                        && chain.end() == &f
                        && chain.has_flavour(alpha)
                        && chain.all_psp()
                        && chain.verify(&x, &x)?;
                    (ok, "inessential")
                }
                "rather" => {
                    let file: RatherCertFile = serde_json::from_value(raw)?;
                    let alpha: Alpha = file.alpha.parse()?;
                    (RatherCertificate::from_file(&x, &file.certificate)?.verify(&x, alpha)?, "rather")
                }
                "cover" => {
                    let file: CoverFile = serde_json::from_value(raw)?;
                    let cover = SectionCover::from_file(&x, &file)?;
                    (cover.validate(&x)? && cover.k() == file.dtc, "cover")
                }
                other => return Err(Error::Parameter(format!("unknown certificate kind `{other}`"))),
            };
            Ok(Report::new(
                if valid { 0 } else { 1 },
                vec![format!("{what} certificate: {}", if valid { "valid" } else { "invalid" })],
                json!({"kind": what, "valid": valid}),
            ))
        }
    }
}

fn components(space: &Space, dot: Option<&Path>) -> Result<Report> {
    let cat = pair_components(space, &[])?;
    let x = &space.complex;
    if let Some(path) = dot {
        std::fs::write(path, cat.to_dot(space))?;
    }
    let comps: Vec<Value> = cat
        .components
        .iter()
        .map(|c| {
            json!({
                "label": c.label(),
                "signature": c.signature.0,
                "pairs": c.members.iter().map(|&k| {
                    let (a, b) = cat.pairs[k];
                    [x.vertex_id(a), x.vertex_id(b)]
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let essential: Vec<&str> = cat.verdicts.iter().filter(|v| !v.inessential()).map(|v| x.edge_id(v.edge)).collect();
    let mut text = cat.report(space);
    text.insert(1, format!("essential edges: {}", essential.join(" ")));
    Ok(Report::new(0, text, json!({"objects": cat.num_objects(), "essential_edges": essential, "components": comps})))
}

fn dtc(space: &Space, max_k: usize, out: Option<&Path>) -> Result<Report> {
    let cover = match directed_tc(space, max_k) {
        Ok(c) => c,
        Err(Error::NoCover { max_k }) => {
            return Ok(Report::new(
                1,
                vec![format!("no cover with at most {max_k} patches")],
                json!({"dtc": null, "max_k": max_k}),
            ))
        }
        Err(e) => return Err(e),
    };
    let file = cover.to_file(space);
    if let Some(path) = out {
        write_json(path, &file)?;
    }
    Ok(Report::new(0, cover.report(space), serde_json::to_value(&file)?))
}
