//! `linbicat`: load quantales, relations, quantaloids and enriched
//! categories from JSON files, run the law checks and report.
//!
//! Exit status: 0 when every check passed, 1 when a law failed (the report
//! is still printed), 2 for usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linbicat::json::{
    load_qbimodule, load_qcategory, parse_text, quantale_from_value, quantaloid_from_value,
    read_value, relation_from_value, relation_to_value, JsonError, LoadedQuantale,
};
use linbicat::qmod::{second_enrichment_bimodule, second_enrichment_category, validate_qbimodule, validate_qcategory};
use linbicat::qrel::{check_girard_qrel, compose_par, compose_tensor, rel_dual_with, verify_qrel_laws};
use linbicat::quantale::{find_dualizers, Carrier, Quantale};
use linbicat::quantaloid::{find_girard_families, FiniteQuantaloid};
use linbicat::verify::{
    canonical_entry_name, catalog, catalog_entry, classify, linear_laws, run_suite, run_theorem_on, tensor_laws,
    verify_monq, verify_qmod, CatalogEntry, LawReport, QuantaleView, Sampler, Structure, TheoremConfig, TheoremError,
};

/// Objects kept in a Q-Mod or Mon Q fragment.
const MAX_OBJECTS: usize = 4;

#[derive(Parser)]
#[command(name = "linbicat", version, about = "Law checks for quantales, Q-relations, quantaloids and Q-modules")]
struct Cli {
    /// `exhaustive` or `random:N`.
    #[arg(long, global = true, default_value = "exhaustive")]
    sampler: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest set size used in Q-Rel checks.
    #[arg(long = "max-set", global = true, default_value_t = 2)]
    max_set: usize,
    /// Z∞ checks range over [-W, W] plus both infinities.
    #[arg(long, global = true, default_value_t = 10)]
    window: i64,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the produced structure to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Tensor,
    Par,
}

/// Inputs are file paths or `catalog:NAME`.
#[derive(Subcommand)]
enum Command {
    /// Quantale (or quantaloid) laws of the tensor.
    CheckQuantale { input: String },
    /// Tensor laws, par laws and both linear distributions.
    CheckLd { input: String },
    /// Every cyclic dualizing element (or Girard family for a quantaloid).
    FindDualizer { input: String },
    /// Composes two relation files over a quantale.
    Compose {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        quantale: String,
        left: PathBuf,
        right: PathBuf,
    },
    /// The dual relation `r^⊥(y, x) = r(x, y) ⊸ d`.
    Dual {
        #[arg(long)]
        quantale: String,
        #[arg(long)]
        dualizer: Option<String>,
        relation: PathBuf,
    },
    /// Cyclicity and involutivity of the family `d_X` in Q-Rel.
    CheckGirardQrel {
        input: String,
        #[arg(long)]
        dualizer: Option<String>,
    },
    /// The linear-quantaloid suite in Q-Rel.
    VerifyQrel { input: String },
    /// Linear Q-Mod laws and, with a dualizer, the Girard checks of δ. A
    /// Q-category or bimodule file is validated instead.
    VerifyQmod {
        input: String,
        #[arg(long)]
        dualizer: Option<String>,
    },
    /// Linear Mon Q laws and, with a dualizer, the Girard checks on Mon Q.
    VerifyMonq {
        input: String,
        #[arg(long)]
        dualizer: Option<String>,
    },
    /// Runs a theorem driver on a catalog entry or quantale file.
    RunTheorem {
        id: String,
        input: String,
        #[arg(long)]
        dualizer: Option<String>,
    },
    /// Lists the catalog, or prints one entry as a quantale file.
    Catalog { name: Option<String> },
}

/// What a command produces.
enum Outcome {
    Report(LawReport),
    /// A theorem report passes when its top-level implications hold, even
    /// if laws on one side fail.
    Theorem(LawReport),
    /// Free-form result: text form, JSON form and whether it counts as a pass.
    Plain { text: String, json: Value, ok: bool },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome @ (Outcome::Report(_) | Outcome::Theorem(_))) => {
            let (r, ok) = match outcome {
                Outcome::Theorem(r) => {
                    let ok = r.entries.iter().filter(|e| e.law.starts_with("implies-")).all(|e| e.passed());
                    (r, ok)
                }
                Outcome::Report(r) => {
                    let ok = r.passed();
                    (r, ok)
                }
                Outcome::Plain { .. } => unreachable!(),
            };
            if cli.json {
                emit(&format!("{}\n", r.to_json_string()));
            } else {
                emit(&r.to_string());
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Outcome::Plain { text, json, ok }) => {
            if cli.json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable")));
            } else {
                emit(&format!("{text}\n"));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn sampler(cli: &Cli) -> Result<Sampler> {
    let base = match cli.sampler.as_str() {
        "exhaustive" => Sampler::exhaustive(),
        s => match s.strip_prefix("random:").map(str::parse::<usize>) {
            Some(Ok(n)) if n > 0 => Sampler::random(cli.seed, n),
            _ => bail!("--sampler must be `exhaustive` or `random:N` with N > 0, got `{s}`"),
        },
    };
    Ok(base.with_seed(cli.seed).with_window(cli.window))
}

/// A loaded structure: a single quantale or a quantaloid.
enum Input {
    Quantale(LoadedQuantale),
    Quantaloid(FiniteQuantaloid),
}

fn entry_or_err(name: &str) -> Result<&'static CatalogEntry> {
    catalog_entry(name).ok_or_else(|| anyhow!("unknown catalog entry `{name}`"))
}

fn read_json(path: &Path) -> Result<Value> {
    read_value(path).map_err(|e| anyhow!(e)).with_context(|| format!("reading {}", path.display()))
}

fn with_file<T>(path: &Path, f: impl FnOnce(&Value) -> Result<T, JsonError>) -> Result<T> {
    let v = read_json(path)?;
    f(&v).map_err(|e| anyhow!(e)).with_context(|| format!("in {}", path.display()))
}

fn load_input(spec: &str) -> Result<Input> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(Input::Quantale(LoadedQuantale::from_entry(entry_or_err(name)?)));
    }
    let path = Path::new(spec);
    let v = read_json(path)?;
    let parsed = if v.get("kind").is_some() {
        quantale_from_value(&v).map(Input::Quantale)
    } else if v.get("objects").is_some() {
        quantaloid_from_value(&v).map(Input::Quantaloid)
    } else {
        bail!("{}: expected a quantale (`kind`) or a quantaloid (`objects`)", path.display())
    };
    parsed.map_err(|e| anyhow!(e)).with_context(|| format!("in {}", path.display()))
}

fn load_quantale(spec: &str) -> Result<LoadedQuantale> {
    match load_input(spec)? {
        Input::Quantale(q) => Ok(q),
        Input::Quantaloid(_) => bail!("`{spec}` is a quantaloid; this command needs a quantale"),
    }
}

/// Reads a `--dualizer` value as JSON when it parses, else as a name.
fn decode_elem<C: Carrier>(q: &C, raw: &str) -> Result<C::Elem> {
    let v = parse_text(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    q.decode(&v).map_err(|e| anyhow!("--dualizer: {e}"))
}

/// Runs `$body` with `$q` bound to the linear quantale and `$d` to the
/// dualizer (the flag, else the file's), for either backend.
macro_rules! with_linear {
    ($loaded:expr, $flag:expr, |$q:ident, $d:ident| $body:expr) => {
        match $loaded {
            LoadedQuantale::Table { ld: Some(ld), dualizer, .. } => {
                let $q = ld;
                let $d = match $flag {
                    Some(raw) => Some(decode_elem($q, raw)?),
                    None => *dualizer,
                };
                $body
            }
            LoadedQuantale::ZInf { ld, dualizer } => {
                let $q = ld;
                let $d = match $flag {
                    Some(raw) => Some(decode_elem($q, raw)?),
                    None => *dualizer,
                };
                $body
            }
            LoadedQuantale::Table { ld: None, .. } => bail!("the quantale has no par layer"),
        }
    };
}

fn run(cli: &Cli) -> Result<Outcome> {
    let s = sampler(cli)?;
    match &cli.command {
        Command::CheckQuantale { input } => Ok(Outcome::Report(match load_input(input)? {
            Input::Quantale(LoadedQuantale::Table { tensor, .. }) => {
                run_suite("quantale", &QuantaleView::new(&tensor, s.window), &tensor_laws(), &s)
            }
            Input::Quantale(LoadedQuantale::ZInf { ld, .. }) => {
                run_suite("quantale", &QuantaleView::new(ld.tensor_part(), s.window), &tensor_laws(), &s)
            }
            Input::Quantaloid(q) => run_suite("quantaloid", &q, &tensor_laws(), &s),
        })),
        Command::CheckLd { input } => Ok(Outcome::Report(match load_input(input)? {
            Input::Quantale(loaded) => {
                with_linear!(&loaded, None::<&String>, |q, _d| run_suite(
                    "ld-quantale",
                    &QuantaleView::new(q, s.window),
                    &linear_laws(),
                    &s
                ))
            }
            Input::Quantaloid(q) => {
                if !q.has_par() {
                    bail!("the quantaloid has no par layer");
                }
                run_suite("linear-quantaloid", &q, &linear_laws(), &s)
            }
        })),
        Command::FindDualizer { input } => find_dualizer(input, &s),
        Command::Compose { op, quantale, left, right } => compose(cli, *op, quantale, left, right),
        Command::Dual { quantale, dualizer, relation } => dual(cli, quantale, dualizer.as_deref(), relation),
        Command::CheckGirardQrel { input, dualizer } => {
            let loaded = load_quantale(input)?;
            with_linear!(&loaded, dualizer.as_ref(), |q, d| {
                let d = d.ok_or_else(|| anyhow!("no dualizer: pass --dualizer or add one to the file"))?;
                Ok(Outcome::Report(check_girard_qrel(q, d, cli.max_set, &s)))
            })
        }
        Command::VerifyQrel { input } => {
            let loaded = load_quantale(input)?;
            with_linear!(&loaded, None::<&String>, |q, _d| Ok(Outcome::Report(verify_qrel_laws(q, cli.max_set, &s))))
        }
        Command::VerifyQmod { input, dualizer } => verify_qmod_cmd(input, dualizer.as_ref(), &s),
        Command::VerifyMonq { input, dualizer } => match load_input(input)? {
            Input::Quantale(loaded) => with_linear!(&loaded, dualizer.as_ref(), |q, d| {
                let lv = QuantaleView::new(q, s.window);
                Ok(Outcome::Report(match d {
                    Some(d) => verify_monq(&lv, Some(move |_: &()| d), MAX_OBJECTS, &s),
                    None => verify_monq(&lv, None::<fn(&()) -> _>, MAX_OBJECTS, &s),
                }))
            }),
            Input::Quantaloid(q) => {
                if !q.has_par() {
                    bail!("the quantaloid has no par layer");
                }
                let family = quantaloid_family(&q, dualizer.as_ref())?;
                Ok(Outcome::Report(verify_monq(&q, family.map(|f| move |a: &usize| f[*a]), MAX_OBJECTS, &s)))
            }
        },
        Command::RunTheorem { id, input, dualizer } => run_theorem_cmd(cli, id, input, dualizer.clone(), s),
        Command::Catalog { name } => catalog_cmd(cli, name.as_deref()),
    }
}

fn quantaloid_family(q: &FiniteQuantaloid, flag: Option<&String>) -> Result<Option<Vec<linbicat::quantaloid::Morphism>>> {
    if flag.is_some() {
        bail!("--dualizer applies to quantales; put a `family` in the quantaloid file instead");
    }
    Ok(q.family())
}

fn find_dualizer(input: &str, s: &Sampler) -> Result<Outcome> {
    let names: Vec<String> = match load_input(input)? {
        Input::Quantale(LoadedQuantale::Table { tensor, .. }) => {
            find_dualizers(&tensor, s.window).into_iter().map(|d| tensor.render(d)).collect()
        }
        Input::Quantale(LoadedQuantale::ZInf { ld, .. }) => {
            let t = ld.tensor_part();
            find_dualizers(t, s.window).into_iter().map(|d| t.render(d)).collect()
        }
        Input::Quantaloid(q) => {
            let families = find_girard_families(&q, 1 << 20).map_err(|e| anyhow!(e))?;
            let objects = q.objects();
            families
                .iter()
                .map(|f| {
                    let parts: Vec<String> = f.iter().map(|&m| format!("{}: {}", objects[m.src], q.name(m))).collect();
                    format!("{{{}}}", parts.join(", "))
                })
                .collect()
        }
    };
    let text = if names.is_empty() {
        "no cyclic dualizing element".to_string()
    } else {
        format!("cyclic dualizing elements: {}", names.join(", "))
    };
    Ok(Outcome::Plain {
        text,
        json: json!({ "dualizers": names }),
        ok: true,
    })
}

fn emit_relation(cli: &Cli, value: Value) -> Result<Outcome> {
    let pretty = serde_json::to_string_pretty(&value).expect("serializable");
    if let Some(path) = &cli.out {
        fs::write(path, format!("{pretty}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Outcome::Plain {
        text: pretty,
        json: value,
        ok: true,
    })
}

fn compose(cli: &Cli, op: Op, quantale: &str, left: &Path, right: &Path) -> Result<Outcome> {
    let loaded = load_quantale(quantale)?;
    match op {
        Op::Tensor => match &loaded {
            LoadedQuantale::Table { tensor, .. } => compose_with(cli, tensor, left, right, compose_tensor),
            LoadedQuantale::ZInf { ld, .. } => compose_with(cli, ld.tensor_part(), left, right, compose_tensor),
        },
        Op::Par => with_linear!(&loaded, None::<&String>, |q, _d| compose_with(cli, q, left, right, compose_par)),
    }
}

fn compose_with<Q, F, E>(cli: &Cli, q: &Q, left: &Path, right: &Path, op: F) -> Result<Outcome>
where
    Q: Carrier,
    F: Fn(&Q, &linbicat::qrel::QRelation<Q::Elem>, &linbicat::qrel::QRelation<Q::Elem>) -> Result<linbicat::qrel::QRelation<Q::Elem>, E>,
    E: std::error::Error + Send + Sync + 'static,
{
    let f = with_file(left, |v| relation_from_value(q, v))?;
    let g = with_file(right, |v| relation_from_value(q, v))?;
    let h = op(q, &f, &g)?;
    emit_relation(cli, relation_to_value(q, &h))
}

fn dual(cli: &Cli, quantale: &str, flag: Option<&str>, relation: &Path) -> Result<Outcome> {
    fn go<Q: Quantale>(cli: &Cli, q: &Q, d: Option<Q::Elem>, flag: Option<&str>, relation: &Path) -> Result<Outcome> {
        let d = match flag {
            Some(raw) => decode_elem(q, raw)?,
            None => d.ok_or_else(|| anyhow!("no dualizer: pass --dualizer or add one to the file"))?,
        };
        let r = with_file(relation, |v| relation_from_value(q, v))?;
        emit_relation(cli, relation_to_value(q, &rel_dual_with(q, &r, d)))
    }
    match &load_quantale(quantale)? {
        LoadedQuantale::Table { tensor, dualizer, .. } => go(cli, tensor, *dualizer, flag, relation),
        LoadedQuantale::ZInf { ld, dualizer } => go(cli, ld.tensor_part(), *dualizer, flag, relation),
    }
}

fn verify_qmod_cmd(input: &str, flag: Option<&String>, s: &Sampler) -> Result<Outcome> {
    if !input.starts_with("catalog:") {
        let path = Path::new(input);
        let v = read_json(path)?;
        if v.get("carrier").is_some() {
            return category_report(path);
        }
        if v.get("base").is_some() {
            return bimodule_report(path);
        }
    }
    match load_input(input)? {
        Input::Quantale(loaded) => with_linear!(&loaded, flag, |q, d| {
            let lv = QuantaleView::new(q, s.window);
            let report = match d {
                Some(d) => verify_qmod(&lv, Some(move |_: &()| d), MAX_OBJECTS, s),
                None => verify_qmod(&lv, None::<fn(&()) -> _>, MAX_OBJECTS, s),
            };
            Ok(Outcome::Report(report.map_err(|e| anyhow!(e))?))
        }),
        Input::Quantaloid(q) => {
            if !q.has_par() {
                bail!("the quantaloid has no par layer");
            }
            let family = quantaloid_family(&q, flag)?;
            let report = verify_qmod(&q, family.map(|f| move |a: &usize| f[*a]), MAX_OBJECTS, s);
            Ok(Outcome::Report(report.map_err(|e| anyhow!(e))?))
        }
    }
}

/// Enrichment conditions of a Q-category file and, over a base with a
/// family, the second-enrichment inequalities of its tensor part.
fn category_report(path: &Path) -> Result<Outcome> {
    let (q, m) = load_qcategory(path).map_err(|e| anyhow!(e))?;
    let mut report = LawReport::new("qcategory-file");
    report.absorb("conditions", validate_qcategory(&q, &m).map_err(|e| anyhow!(e))?);
    if let Some(family) = q.family() {
        if q.has_par() {
            let second = second_enrichment_category(&q, &family, &m.plain()).map_err(|e| anyhow!(e))?;
            report.absorb("second-enrichment", second);
        }
    }
    Ok(Outcome::Report(report))
}

fn bimodule_report(path: &Path) -> Result<Outcome> {
    let (q, b) = load_qbimodule(path).map_err(|e| anyhow!(e))?;
    let mut report = LawReport::new("qbimodule-file");
    report.absorb("conditions", validate_qbimodule(&q, &b).map_err(|e| anyhow!(e))?);
    if let (Some(family), true, false) = (q.family(), q.has_par(), b.is_linear()) {
        let second = second_enrichment_bimodule(&q, &family, &b).map_err(|e| anyhow!(e))?;
        report.absorb("second-enrichment", second);
    }
    Ok(Outcome::Report(report))
}

fn run_theorem_cmd(cli: &Cli, id: &str, input: &str, dualizer: Option<String>, s: Sampler) -> Result<Outcome> {
    let config = TheoremConfig {
        sampler: s,
        max_set: cli.max_set,
        max_objects: MAX_OBJECTS,
        dualizer,
    };
    let name = input.strip_prefix("catalog:").unwrap_or(input);
    let file_entry;
    let entry = match catalog_entry(name) {
        Some(e) => e,
        None if Path::new(input).is_file() => {
            file_entry = entry_from_file(input, &config.sampler)?;
            &file_entry
        }
        None => return Err(anyhow!(TheoremError::UnknownEntry(canonical_entry_name(name)))),
    };
    Ok(Outcome::Theorem(run_theorem_on(id, entry, &config)?))
}

/// A quantale file as an ad hoc catalog entry, classified on the spot.
fn entry_from_file(input: &str, s: &Sampler) -> Result<CatalogEntry> {
    let structure = match load_quantale(input)? {
        LoadedQuantale::Table { ld: Some(ld), .. } => Structure::Table(ld),
        LoadedQuantale::Table { ld: None, .. } => bail!("theorem drivers need a par layer"),
        LoadedQuantale::ZInf { ld, .. } => Structure::ZInf(ld),
    };
    let name = Path::new(input).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(CatalogEntry {
        description: format!("loaded from {input}"),
        broken_of: None,
        classification: classify(&structure, s),
        name,
        structure,
    })
}

fn catalog_cmd(cli: &Cli, name: Option<&str>) -> Result<Outcome> {
    if let Some(name) = name {
        let value = LoadedQuantale::from_entry(entry_or_err(name.strip_prefix("catalog:").unwrap_or(name))?).to_value();
        return emit_relation(cli, value);
    }
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for e in catalog() {
        let c = &e.classification;
        lines.push(format!(
            "{:<24} quantale={:<5} ld={:<5} girard={:<5} {}",
            e.name, c.quantale, c.ld, c.girard, e.description
        ));
        entries.push(json!({
            "name": e.name,
            "description": e.description,
            "broken_of": e.broken_of,
            "classification": c,
            "quantale": LoadedQuantale::from_entry(e).to_value(),
        }));
    }
    Ok(Outcome::Plain {
        text: lines.join("\n"),
        json: Value::Array(entries),
        ok: true,
    })
}
