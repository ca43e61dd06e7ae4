//! `qgl3`: command-line front end for the engine.
//!
//! Exit codes are a stable contract: 0 on success, 1 when a verification
//! sweep finds a failure, 2 on usage or domain errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qgl3::charring::{simple_char_p0, weyl_char, SimpleCharTable};
use qgl3::decomp::{chi_decomposition, zhat_char, zhat_factors, zhat_simple_char};
use qgl3::export::to_dot;
use qgl3::ext::{ext1_g, ext1_g1, ext1_g1b, ext1_g1b_general};
use qgl3::homs::hom_exists_mirror;
use qgl3::lattice::{decompose, facet_classify, pairing};
use qgl3::structure::{nabla_l_filtration, zhat_structure, ModuleGraph};
use qgl3::verify::{run_suite, Failure, Suite};
use qgl3::{FormalChar, PositiveRoot, Weight};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qgl3",
    version,
    about = "Characters, filtrations and Ext groups for quantum GL3 at a root of unity"
)]
struct Cli {
    /// Order of the root of unity; a comma-separated list for `verify`.
    #[arg(long = "l", global = true, value_delimiter = ',')]
    l: Vec<i64>,
    /// Characteristic of the ground field, 0 or a prime.
    #[arg(long, global = true, default_value_t = 0)]
    p: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Read weights as GL3 triples a,b,c.
    #[arg(long, global = true)]
    gl3: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Facet, restricted decomposition and root pairings of a weight.
    Classify {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Characters of the induced and simple modules.
    Char {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Good l-filtration factors of the induced module.
    Decomp {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Composition factors, character or structure of the baby Verma module.
    Zhat(ZhatArgs),
    /// Layered good l-filtration of the induced module.
    Lfilt {
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Ext¹ between simple modules.
    Ext(ExtArgs),
    /// Mirror-image witness for a homomorphism between induced modules.
    Hom {
        #[arg(allow_hyphen_values = true)]
        lam: String,
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// Run verification sweeps.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ZhatArgs {
    #[arg(allow_hyphen_values = true)]
    weight: String,
    #[arg(long, conflicts_with_all = ["factors", "character"])]
    structure: bool,
    #[arg(long, conflicts_with = "character")]
    factors: bool,
    #[arg(long = "char")]
    character: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    G1,
    G1b,
    G,
}

#[derive(Args)]
struct ExtArgs {
    #[arg(long, value_enum)]
    level: Level,
    #[arg(allow_hyphen_values = true)]
    alpha: String,
    #[arg(allow_hyphen_values = true)]
    beta: String,
    /// Highest weight of the baby Verma module whose factors α and β are.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_delimiter = ',')]
    suites: Vec<String>,
    #[arg(long = "box", default_value_t = 4)]
    box_: i64,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

/// Parameters shared by every subcommand.
struct EngineConfig {
    l: i64,
    p: i64,
    format: Format,
    gl3: bool,
}

impl EngineConfig {
    fn weight(&self, s: &str) -> anyhow::Result<Weight> {
        if !self.gl3 {
            return s.parse().map_err(|e: String| anyhow!(e));
        }
        let parts: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .with_context(|| format!("expected a GL3 weight a,b,c but got {s:?}"))?;
        match parts[..] {
            [a, b, c] => Ok(Weight::new(a - b, b - c)),
            _ => bail!("expected a GL3 weight a,b,c but got {s:?}"),
        }
    }
}

enum Outcome {
    Ok,
    VerifyFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = std::env::var_os("QGL3_CACHE_DIR").map(|d| PathBuf::from(d).join("simple.json"));
    if let Some(path) = &cache {
        if path.exists() {
            if let Err(e) = SimpleCharTable::global().load(path) {
                eprintln!("warning: ignoring cache {}: {e}", path.display());
            }
        }
    }
    let code = match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerifyFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    };
    if let Some(path) = &cache {
        let saved = path
            .parent()
            .map_or(Ok(()), std::fs::create_dir_all)
            .and_then(|_| SimpleCharTable::global().save(path));
        if let Err(e) = saved {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    code
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Command::Verify(args) = &cli.cmd {
        if cli.format == Format::Dot {
            bail!("--format dot is only available for graph outputs");
        }
        return verify(args, &cli.l, cli.format);
    }
    let l = match cli.l[..] {
        [] => bail!("--l is required"),
        [l] => l,
        _ => bail!("--l takes a single value here"),
    };
    if l < 2 {
        bail!("l must be at least 2, got {l}");
    }
    let cfg = EngineConfig {
        l,
        p: cli.p,
        format: cli.format,
        gl3: cli.gl3,
    };
    let graph_output = matches!(&cli.cmd, Command::Lfilt { .. })
        || matches!(&cli.cmd, Command::Zhat(z) if z.structure);
    if cfg.format == Format::Dot && !graph_output {
        bail!("--format dot is only available for graph outputs (zhat --structure, lfilt)");
    }
    let out = match &cli.cmd {
        Command::Classify { weight } => classify(&cfg, cfg.weight(weight)?)?,
        Command::Char { weight } => character(&cfg, cfg.weight(weight)?)?,
        Command::Decomp { weight } => decomp(&cfg, cfg.weight(weight)?)?,
        Command::Zhat(z) => zhat(&cfg, z)?,
        Command::Lfilt { weight } => graph(&cfg, &nabla_l_filtration(cfg.weight(weight)?, cfg.l)?)?,
        Command::Ext(e) => ext(&cfg, e)?,
        Command::Hom { lam, mu } => hom(&cfg, cfg.weight(lam)?, cfg.weight(mu)?)?,
        Command::Verify(_) => unreachable!(),
    };
    emit(out.trim_end());
    Ok(Outcome::Ok)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn render_char(x: &FormalChar) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(Weight, i64)> = x.iter().collect();
    terms.reverse();
    let terms: Vec<String> = terms
        .into_iter()
        .map(|(y, c)| match c {
            1 => format!("e{y}"),
            -1 => format!("-e{y}"),
            _ => format!("{c}e{y}"),
        })
        .collect();
    terms.join(" + ").replace("+ -", "- ")
}

fn classify(cfg: &EngineConfig, x: Weight) -> anyhow::Result<String> {
    let facet = facet_classify(x, cfg.l)?;
    let d = decompose(x, cfg.l);
    let pairings: Vec<(String, serde_json::Value)> = PositiveRoot::ALL
        .iter()
        .map(|&b| (format!("{b:?}").to_lowercase(), pairing(x, b).into()))
        .collect();
    Ok(match cfg.format {
        Format::Json => json!({
            "lambda": x,
            "l": cfg.l,
            "facet": facet.to_string(),
            "case": facet.case_id(),
            "classical": d.classical,
            "restricted": d.restricted,
            "pairings": pairings.iter().cloned().collect::<serde_json::Map<_, _>>(),
        })
        .to_string(),
        _ => {
            let ps: Vec<String> = pairings.iter().map(|(n, v)| format!("{n}={v}")).collect();
            format!(
                "facet: {facet} (case {})\nlambda'': {}\nlambda': {}\npairings: {}",
                facet.case_id(),
                d.classical,
                d.restricted,
                ps.join(" ")
            )
        }
    })
}

fn character(cfg: &EngineConfig, x: Weight) -> anyhow::Result<String> {
    let induced = weyl_char(x)?;
    let simple = simple_char_p0(x, cfg.l, cfg.p)?;
    Ok(match cfg.format {
        Format::Json => json!({
            "lambda": x,
            "l": cfg.l,
            "induced": induced,
            "simple": simple,
        })
        .to_string(),
        _ => format!(
            "dim nabla{x} = {}\ndim L{x} = {}\nch L{x} = {}",
            induced.dim(),
            simple.dim(),
            render_char(&simple)
        ),
    })
}

fn decomp(cfg: &EngineConfig, x: Weight) -> anyhow::Result<String> {
    let d = chi_decomposition(x, cfg.l)?;
    if cfg.format == Format::Json {
        return Ok(serde_json::to_string(&d)?);
    }
    let mut out = format!("lambda {x}, l = {}, case {}\n", cfg.l, d.case_id());
    for (i, (&f, &keep)) in d.factors.iter().zip(&d.nonzero).enumerate() {
        let dim = qgl3::charring::chi_l(f, cfg.l)?.dim();
        let mark = if keep { "" } else { "  (cancels)" };
        out.push_str(&format!("  mu{} = {f}  dim chi_l = {dim}{mark}\n", i + 1));
    }
    Ok(out)
}

fn zhat(cfg: &EngineConfig, z: &ZhatArgs) -> anyhow::Result<String> {
    let x = cfg.weight(&z.weight)?;
    if z.structure {
        return graph(cfg, &zhat_structure(x, cfg.l)?);
    }
    if z.character {
        let ch = zhat_char(x, cfg.l)?;
        return Ok(match cfg.format {
            Format::Json => serde_json::to_string(&ch)?,
            _ => format!("dim = {}\n{}", ch.dim(), render_char(&ch)),
        });
    }
    let factors = zhat_factors(x, cfg.l)?;
    Ok(match cfg.format {
        Format::Json => json!({ "lambda": x, "l": cfg.l, "factors": factors }).to_string(),
        _ => {
            let mut out = String::new();
            for (i, f) in factors.iter().enumerate() {
                let dim = zhat_simple_char(*f, cfg.l)?.dim();
                out.push_str(&format!("  mu{} = {f}  dim = {dim}\n", i + 1));
            }
            out
        }
    })
}

fn graph(cfg: &EngineConfig, g: &ModuleGraph) -> anyhow::Result<String> {
    Ok(match cfg.format {
        Format::Dot => to_dot(g),
        Format::Json => serde_json::to_string(g)?,
        Format::Text => {
            let mut out = format!("lambda {}, l = {}, case {}\n", g.lam, g.l, g.case);
            let top = g.nodes.iter().map(|n| n.layer).max().unwrap_or(0);
            for layer in 0..=top {
                let row: Vec<String> = g
                    .nodes
                    .iter()
                    .filter(|n| n.layer == layer)
                    .map(|n| format!("{}:{}", n.id, n.weight))
                    .collect();
                out.push_str(&format!("  layer {layer}: {}\n", row.join("  ")));
            }
            let edges: Vec<String> = g.edges.iter().map(|(u, v)| format!("{u}->{v}")).collect();
            out.push_str(&format!("  edges: {}\n", edges.join(" ")));
            out
        }
    })
}

fn ext(cfg: &EngineConfig, e: &ExtArgs) -> anyhow::Result<String> {
    let (a, b) = (cfg.weight(&e.alpha)?, cfg.weight(&e.beta)?);
    let mu = e.mu.as_deref().map(|m| cfg.weight(m)).transpose()?;
    if mu.is_some() && e.level != Level::G1b {
        bail!("--mu only applies to --level g1b");
    }
    if e.level == Level::G1 {
        let v = ext1_g1(a, b, cfg.l)?;
        return Ok(match cfg.format {
            Format::Json => serde_json::to_string(&v)?,
            _ => v.to_string(),
        });
    }
    let dim = match (e.level, mu) {
        (Level::G1b, Some(m)) => ext1_g1b(m, a, b, cfg.l)?,
        (Level::G1b, None) => ext1_g1b_general(a, b, cfg.l, cfg.p)?,
        _ => ext1_g(a, b, cfg.l, cfg.p)?,
    };
    Ok(match cfg.format {
        Format::Json => json!({ "alpha": a, "beta": b, "l": cfg.l, "dim": dim }).to_string(),
        _ => dim.to_string(),
    })
}

fn hom(cfg: &EngineConfig, lam: Weight, mu: Weight) -> anyhow::Result<String> {
    let wit = hom_exists_mirror(lam, mu, cfg.l, cfg.p)?;
    Ok(match cfg.format {
        Format::Json => json!({ "lambda": lam, "mu": mu, "witness": wit }).to_string(),
        _ => match wit {
            Some(h) => format!(
                "witness: beta={:?} m={} e={} (wall at {})",
                h.beta,
                h.m,
                h.e,
                h.m * h.step(cfg.l, cfg.p)
            ),
            None => "none".into(),
        },
    })
}

fn verify(args: &VerifyArgs, ls: &[i64], format: Format) -> anyhow::Result<Outcome> {
    if ls.is_empty() {
        bail!("--l is required");
    }
    let suites: Vec<Suite> = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suites
            .iter()
            .map(|s| s.parse::<Suite>())
            .collect::<Result<_, _>>()?
    };
    let stderr = Mutex::new(());
    let stream = |f: &Failure| {
        let _guard = stderr.lock().unwrap();
        eprintln!(
            "FAIL {}: expected {}, observed {}",
            f.input, f.expected, f.observed
        );
    };
    let mut reports = Vec::new();
    for suite in suites {
        let report = run_suite(suite, ls, args.box_, args.jobs, &stream)?;
        if format == Format::Text {
            emit(&format!(
                "{}: {} cases, {} failures",
                report.suite,
                report.cases_run,
                report.failures.len()
            ));
        }
        reports.push(report);
    }
    if format == Format::Json {
        emit(&serde_json::to_string(&reports)?);
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        Outcome::Ok
    } else {
        Outcome::VerifyFailed
    })
}
