//! `saddle-config`: validate, analyze and render saddle-tower gluing
//! configurations stored as JSON.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use saddle_core::embed::{classify_with, deformed_graph, EmbeddednessVerdict, DEFAULT_PROBES};
use saddle_core::horizontal::{self, CERTIFICATE_SEED};
use saddle_core::model::orientation;
use saddle_core::report::{analyze, summarize, AnalysisReport};
use saddle_core::vertical::{default_k, solve_phases, PhaseSolutions, PHASE_SEED};
use saddle_core::{gallery, io, svg, Configuration, DeformationVector, Error};

const SEED_ENV: &str = "SADDLE_CONFIG_SEED";

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Validate,
    Analyze,
    Phases,
    Embed,
    Render,
    Example,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum XiChoice {
    /// The configuration's own `xi`.
    Config,
    Zero,
}

#[derive(Debug, Parser)]
#[command(name = "saddle-config", version, about = "Analyze saddle-tower gluing configurations")]
struct Cli {
    command: Command,
    /// Configuration file, or the example name for `example`.
    path: Option<String>,
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
    /// `embed`: largest continuation probe; `render`: deformation parameter.
    #[arg(long)]
    eps: Option<f64>,
    /// Also issue the constructive rigidity certificate.
    #[arg(long)]
    certify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of lines for the `polygram` example.
    #[arg(long)]
    k: Option<usize>,
    /// Random seed; the SADDLE_CONFIG_SEED environment variable takes precedence.
    #[arg(long)]
    seed: Option<u64>,
    /// Prescribed deformation used by `embed`.
    #[arg(long, value_enum, default_value = "config")]
    xi: XiChoice,
    /// List example names.
    #[arg(long)]
    list: bool,
}

/// Failure with its exit code: 1 for I/O and usage, 2 for mathematics.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: if e.is_mathematical() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

impl Cli {
    fn seed(&self, default: u64) -> Result<u64, Failure> {
        match std::env::var(SEED_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| usage(format!("{SEED_ENV}={s} is not an integer"))),
            Err(_) => Ok(self.seed.unwrap_or(default)),
        }
    }

    fn config(&self) -> Result<Configuration, Failure> {
        let path = self.path.as_deref().ok_or_else(|| usage("missing configuration path"))?;
        Ok(io::load_config(path)?)
    }

    /// Writes to `--out` when given, otherwise to stdout.
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn validate(cli: &Cli) -> Result<(), Failure> {
    let path = cli.path.as_deref().ok_or_else(|| usage("missing configuration path"))?;
    let (report, code) = match io::load_config(path) {
        Ok(c) => {
            let mut errors = Vec::new();
            if orientation(&c.graph).is_none() {
                let odd: Vec<usize> = (0..c.graph.n_vertices()).filter(|&v| c.prs().degree(v) % 2 == 1).collect();
                errors.push(format!("not orientable (odd-degree vertices: {odd:?})"));
            }
            let code = if errors.is_empty() { 0 } else { 2 };
            (json!({ "valid": errors.is_empty(), "errors": errors, "summary": summarize(&c) }), code)
        }
        Err(e) => {
            let f = Failure::from(e);
            (json!({ "valid": false, "errors": [f.message] }), f.code)
        }
    };
    if cli.json {
        print!("{}", to_json(&report));
    } else if code == 0 {
        println!("{path}: valid");
    } else {
        for e in report["errors"].as_array().unwrap() {
            println!("{path}: {}", e.as_str().unwrap());
        }
    }
    if code == 0 {
        Ok(())
    } else {
        Err(Failure { code, message: String::new() })
    }
}

fn verdict_text(out: &mut String, v: &EmbeddednessVerdict) {
    let _ = writeln!(out, "embeddedness: {:?} ({:?}{})", v.outcome, v.tier, if v.heuristic { ", heuristic" } else { "" });
    if !v.pairs.is_empty() {
        let _ = writeln!(out, "  {:>8}  {:>12}  {:<12}  {:>10}  {:<8}", "labels", "rays", "tier", "separation", "result");
    }
    for p in &v.pairs {
        let _ = writeln!(
            out,
            "  {:>8}  {:>12}  {:<12}  {:>10.3e}  {:<8}",
            format!("{},{}", p.labels.0, p.labels.1),
            format!("{},{}", p.rays.0, p.rays.1),
            format!("{:?}", p.tier),
            p.separation,
            format!("{:?}", p.resolution)
        );
    }
    for d in &v.diagnostics {
        let _ = writeln!(out, "  note: {d}");
    }
}

fn report_text(r: &AnalysisReport) -> String {
    let g = &r.graph;
    let h = &r.horizontal;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: |V|={} |E|={} |R|={} |F|={} euler={} orientable={} tree={} line_arrangement={}",
        g.vertices, g.closed_edges, g.rays, g.faces, g.euler, g.orientable, g.tree, g.line_arrangement
    );
    let _ = writeln!(out, "  parallel edges: {:?}  parallel rays: {:?}", g.parallel_edges, g.parallel_rays);
    let _ = writeln!(
        out,
        "horizontal: balance residual {:.3e} (balanced={}), rank {}/{}, dim D = {}, rigid={} [{}]",
        h.balance_residual,
        h.balanced,
        h.rank,
        h.expected_rank,
        h.dim_d,
        h.rigid,
        h.rigidity_source.join(", ")
    );
    if let Some(e) = &h.certificate_error {
        let _ = writeln!(out, "  certificate: {e}");
    }
    match &r.vertical {
        Ok(v) => {
            let _ = writeln!(
                out,
                "vertical: residual {:.3e}, rank {}/{}, kernel dim {}, rigid={}",
                v.phase_residual, v.rank, v.columns, v.kernel_dim, v.rigid
            );
            for d in &v.diagnostics {
                let _ = writeln!(out, "  note: {d}");
            }
        }
        Err(e) => {
            let _ = writeln!(out, "vertical: {e}");
        }
    }
    match &r.embeddedness {
        Ok(v) => verdict_text(&mut out, v),
        Err(e) => {
            let _ = writeln!(out, "embeddedness: {e}");
        }
    }
    out
}

fn cmd_analyze(cli: &Cli) -> Result<(), Failure> {
    let c = cli.config()?;
    let r = analyze(&c, cli.certify, cli.seed(CERTIFICATE_SEED)?);
    cli.emit(&if cli.json { to_json(&r) } else { report_text(&r) })
}

fn phases_json(c: &Configuration, s: &PhaseSolutions) -> Value {
    let prs = c.prs();
    json!({
        "tree": s.tree,
        "edges": prs.edge_reps(),
        "solutions": s.solutions.iter().map(|p| json!({
            "phase": p.phase.edge_values(),
            "trivial": p.trivial,
            "residual": p.residual,
            "vertically_rigid": p.vertically_rigid,
            "kernel_dim": p.kernel_dim,
        })).collect::<Vec<_>>(),
        "diagnostics": s.diagnostics,
    })
}

fn cmd_phases(cli: &Cli) -> Result<(), Failure> {
    let c = cli.config()?;
    let res = horizontal::balance_residual(&c.graph);
    if res > horizontal::BALANCE_TOL {
        return Err(Error::NotBalanced(res).into());
    }
    let (k, note) = default_k(&c);
    let mut s = solve_phases(&c, &k, cli.seed(PHASE_SEED)?)?;
    s.diagnostics.extend(note);
    let text = if cli.json {
        to_json(&phases_json(&c, &s))
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "{} balanced phase function(s){}", s.solutions.len(), if s.tree { " (tree)" } else { "" });
        let _ = writeln!(out, "  edges (representative half-edges): {:?}", c.prs().edge_reps());
        for p in &s.solutions {
            let vals: Vec<String> = p.phase.edge_values().iter().map(|v| format!("{v:.6}")).collect();
            let _ = writeln!(
                out,
                "  [{}]  {}  residual {:.1e}  vertically {}",
                vals.join(", "),
                if p.trivial { "trivial" } else { "nontrivial" },
                p.residual,
                if p.vertically_rigid { "rigid".to_string() } else { format!("sliding (kernel dim {})", p.kernel_dim) }
            );
        }
        for d in &s.diagnostics {
            let _ = writeln!(out, "  note: {d}");
        }
        out
    };
    cli.emit(&text)
}

fn cmd_embed(cli: &Cli) -> Result<(), Failure> {
    let c = cli.config()?;
    let xi = match cli.xi {
        XiChoice::Config => c.xi.clone(),
        XiChoice::Zero => DeformationVector::zeros(&c.graph),
    };
    let probes = match cli.eps {
        Some(e) if e > 0.0 && e.is_finite() => vec![e, e / 2.0, e / 4.0],
        Some(e) => return Err(usage(format!("--eps must be positive, got {e}"))),
        None => DEFAULT_PROBES.to_vec(),
    };
    let v = classify_with(&c, &xi, &probes)?;
    let text = if cli.json {
        to_json(&v)
    } else {
        let mut out = String::new();
        verdict_text(&mut out, &v);
        out
    };
    cli.emit(&text)
}

fn cmd_render(cli: &Cli) -> Result<(), Failure> {
    let c = cli.config()?;
    let eps = cli.eps.unwrap_or(0.0);
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(usage(format!("--eps must be non-negative, got {eps}")));
    }
    let svg = if !horizontal::is_rigid(&c.graph) {
        svg::render(&c.graph, None, Some("not rigid"))
    } else {
        match deformed_graph(&c, eps) {
            Ok(d) => {
                let note = d.diagnostics.first().map(|_| "flat term underflows");
                svg::render(&c.graph, Some(&d), note)
            }
            Err(e) => svg::render(&c.graph, None, Some(&e.to_string())),
        }
    };
    cli.emit(&svg)
}

fn cmd_example(cli: &Cli) -> Result<(), Failure> {
    if cli.list {
        let text = if cli.json {
            to_json(&gallery::ENTRIES.iter().map(|e| json!({"name": e.name, "description": e.description})).collect::<Vec<_>>())
        } else {
            gallery::ENTRIES.iter().map(|e| format!("{:<18} {}\n", e.name, e.description)).collect()
        };
        return cli.emit(&text);
    }
    let name = cli.path.as_deref().ok_or_else(|| usage("missing example name (or --list)"))?;
    let c = gallery::build(name, cli.k)?;
    let mut s = io::to_json_string(&c);
    s.push('\n');
    cli.emit(&s)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate => validate(cli),
        Command::Analyze => cmd_analyze(cli),
        Command::Phases => cmd_phases(cli),
        Command::Embed => cmd_embed(cli),
        Command::Render => cmd_render(cli),
        Command::Example => cmd_example(cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
