use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use k2local::chart::{self, Format};
use k2local::cohomology::Subgroup;
use k2local::graded::Window;
use k2local::picard::{self, ExoticClass, PicardWord};
use k2local::resolution::{self, TowerKind};
use k2local::specseq::{self, instantiate, parse_rules, Target};
use k2local::verify;

mod config;

use config::{Config, SignConvention};

#[derive(Parser)]
#[command(name = "k2local", version, about = "Homotopy of the K(2)-local sphere at p = 3: cohomology, spectral sequences, Picard elements")]
struct Cli {
    /// TOML file with window bounds, sign convention and output directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(flatten)]
    window: WindowArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WindowArgs {
    /// Lower bound of the window (internal degree t for `cohomology`, stem otherwise).
    #[arg(long, global = true, allow_hyphen_values = true)]
    stem_min: Option<i32>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    stem_max: Option<i32>,
    #[arg(long, global = true)]
    s_max: Option<i32>,
    #[arg(long, global = true, value_enum)]
    sign: Option<SignConvention>,
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a finite subgroup and their identification.
    Cohomology { subgroup: String },
    /// Run a spectral sequence: a rule file (or g24, g20, g20-uncorrected) on an E2 term.
    Specseq {
        #[command(subcommand)]
        verb: SpecseqVerb,
    },
    /// Centralizer resolution towers.
    Resolution { tower: String },
    Picard {
        #[command(subcommand)]
        verb: PicardVerb,
    },
    /// Render a homotopy chart.
    Chart {
        target: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ChartFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Verify {
        #[command(subcommand)]
        verb: VerifyVerb,
    },
}

#[derive(Subcommand)]
enum SpecseqVerb {
    Run {
        rules: String,
        e2: String,
        /// List the differentials with sources in the window.
        #[arg(long)]
        differentials: bool,
    },
}

#[derive(Subcommand)]
enum PicardVerb {
    /// Smash two elements, each written m,d,a,b for S^m ^ S<det>^d ^ P^a ^ Q^b.
    Smash {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Identify the Brown-Comenetz dual I_2 from its V(1)-shift.
    Solve,
    /// Invariance of u^e under the determinant-twisted action.
    CheckDet {
        #[arg(long, default_value_t = -36, allow_hyphen_values = true)]
        lo: i32,
        #[arg(long, default_value_t = 36)]
        hi: i32,
    },
}

#[derive(Subcommand)]
enum VerifyVerb {
    /// Run every acceptance check.
    All {
        /// Only these criteria (1-11).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ChartFormat {
    Text,
    Svg,
}

/// Errors caused by bad input rather than failed computation.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    Usage(e.to_string()).into()
}

/// Outcome of a verb: whether every check it ran passed.
type Outcome = anyhow::Result<bool>;

struct Ctx {
    json: bool,
    config: Config,
}

impl Ctx {
    fn window(&self, lo: i32, hi: i32, s_max: i32) -> (i32, i32, i32) {
        let c = &self.config;
        (c.stem_min.unwrap_or(lo), c.stem_max.unwrap_or(hi), c.s_max.unwrap_or(s_max))
    }

    fn sign(&self) -> SignConvention {
        self.config.sign.unwrap_or_default()
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<()> {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value)?);
        } else {
            print!("{}", text());
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let file = match &cli.config {
        Some(p) => Config::load(p).map_err(|e| usage(format!("{e:#}")))?,
        None => Config::default(),
    };
    let w = cli.window;
    let flags = Config { stem_min: w.stem_min, stem_max: w.stem_max, s_max: w.s_max, sign: w.sign, output_dir: w.output_dir };
    let ctx = Ctx { json: cli.json, config: file.merge(flags) };
    match cli.command {
        Command::Cohomology { subgroup } => cohomology(&ctx, &subgroup),
        Command::Specseq { verb: SpecseqVerb::Run { rules, e2, differentials } } => specseq_run(&ctx, &rules, &e2, differentials),
        Command::Resolution { tower } => resolution(&ctx, &tower),
        Command::Picard { verb } => picard(&ctx, verb),
        Command::Chart { target, format, output } => chart(&ctx, &target, format, output),
        Command::Verify { verb: VerifyVerb::All { only } } => verify_all(&ctx, &only),
    }
}

fn dims_line(dims: &std::collections::BTreeMap<i32, usize>) -> String {
    dims.iter().filter(|(_, &d)| d > 0).map(|(n, d)| format!("{n}:{d}")).collect::<Vec<_>>().join(" ")
}

fn cohomology(ctx: &Ctx, name: &str) -> Outcome {
    let g = Subgroup::from_name(name).map_err(usage)?;
    let (lo, hi, s_max) = ctx.window(-48, 48, 8);
    let window = Window::internal(lo, hi, s_max);
    let c = g.compute(&window)?;

    #[derive(Serialize)]
    struct Out<'a> {
        subgroup: &'a str,
        window: Window,
        identified: bool,
        report: &'a k2local::cohomology::IdentifyReport,
        module: k2local::graded::ModuleJson,
    }
    ctx.emit(
        &Out { subgroup: g.name(), window, identified: c.report.ok(), report: &c.report, module: c.module.to_json() },
        || {
            let mut s = format!(
                "H*({}) on t in {lo}..{hi}, s <= {s_max}: {} buckets, F3-dimension {}\n",
                g.name(),
                c.report.buckets_checked,
                c.report.total_dim_f3
            );
            for ((bs, bt), ms) in c.module.buckets() {
                let labels: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                s += &format!("  ({bs},{bt}) {}\n", labels.join(", "));
            }
            s += &format!("identification: {}\n", if c.report.ok() { "ok" } else { "FAILED" });
            for f in &c.report.failures {
                s += &format!("  ({},{}) computed {} expected {}\n", f.s, f.t, f.computed_dim, f.expected_dim);
            }
            s
        },
    )?;
    Ok(c.report.ok())
}

fn load_rules(spec: &str) -> anyhow::Result<String> {
    Ok(match spec {
        "g24" => specseq::G24_RULES.to_string(),
        "g20" => specseq::G20_RULES.to_string(),
        "g20-uncorrected" => specseq::G20_UNCORRECTED_RULES.to_string(),
        path => std::fs::read_to_string(path).map_err(|e| usage(format!("rules `{path}`: {e}")))?,
    })
}

fn specseq_run(ctx: &Ctx, rules: &str, e2: &str, list: bool) -> Outcome {
    let target = Target::from_name(e2).map_err(usage)?;
    let rules = parse_rules(&load_rules(rules)?).map_err(usage)?;
    let (lo, hi, s_max) = ctx.window(0, target.period() * 2 - 1, 40);
    let window = Window::stems(lo, hi, s_max);
    let run = specseq::run_rules(target, &rules, &window)?;
    let instances: Vec<_> = if list {
        instantiate(&rules, &window)?
            .into_iter()
            .filter(|i| window.contains(i.source.s(), i.source.t()))
            .collect()
    } else {
        Vec::new()
    };
    let dims = run.table.dims_by_stem();
    let sign = ctx.sign();

    #[derive(Serialize)]
    struct Out<'a> {
        run: &'a specseq::HfpssRun,
        dims: &'a std::collections::BTreeMap<i32, usize>,
        differentials: &'a [k2local::specseq::Instance],
    }
    ctx.emit(&Out { run: &run, dims: &dims, differentials: &instances }, || {
        let mut s = format!("E_inf of the {} spectral sequence, stems {lo}..{hi}\n", target.name());
        s += &format!("dim by stem: {}\n", dims_line(&dims));
        for c in &run.table.classes {
            s += &format!("  {:>4} s={:<3} {}{}\n", c.stem, c.s, c.label, c.note.as_ref().map_or(String::new(), |n| format!("  [{n}]")));
        }
        for i in &instances {
            s += &format!("  d{}({}) = {} {}\n", i.page, i.source, sign.coeff(i.coeff), i.target);
        }
        for i in &run.issues {
            s += &format!("issue: d{} {} -> {}: {:?}\n", i.page, i.source, i.target, i.kind);
        }
        s
    })?;
    Ok(run.issues.is_empty())
}

fn resolution(ctx: &Ctx, name: &str) -> Outcome {
    let kind = TowerKind::from_name(name).map_err(usage)?;
    let (lo, hi, s_max) = ctx.window(-10, 140, 12);
    let window = Window::stems(lo, hi, s_max);
    match kind {
        TowerKind::AlgebraicG21 | TowerKind::AlgebraicG2 => {
            let r = resolution::run_algebraic(&window, kind == TowerKind::AlgebraicG2)?;
            ctx.emit(&r, || {
                let mut s = format!("{} on stems {lo}..{hi}\n", kind.name());
                for (p, d) in &r.column_dims {
                    s += &format!("  E1 column p={p}: dim {d}\n");
                }
                for (page, rank) in &r.ranks {
                    s += &format!("  d{page}: rank {rank}\n");
                }
                s += &format!(
                    "E3 in p > 1: {}; mismatches against cohomology: {}\n",
                    r.nonzero_high.len(),
                    r.mismatches.len()
                );
                s
            })?;
            Ok(r.ok())
        }
        TowerKind::TopologicalSphere => {
            let r = resolution::run_tower(&window, true)?;
            tower_out(ctx, &r, &r, lo, hi)?;
            Ok(r.ok())
        }
        TowerKind::TopologicalN => {
            let r = resolution::build_n_tower(&Window::stems(lo, hi, s_max.min(3)))?;
            tower_out(ctx, &r, &r.report, lo, hi)?;
            Ok(r.ok())
        }
    }
}

fn tower_out<T: Serialize>(ctx: &Ctx, value: &T, r: &resolution::TowerReport, lo: i32, hi: i32) -> anyhow::Result<()> {
    ctx.emit(value, || {
        let mut s = format!("{} on stems {lo}..{hi}\n", r.name);
        for (p, d) in &r.column_dims {
            s += &format!("  E1 column p={p}: dim {d}\n");
        }
        for (page, rank) in &r.ranks {
            s += &format!("  d{page}: rank {rank}\n");
        }
        s += &format!("E_inf by stem: {}\n", dims_line(&r.table.dims_by_stem()));
        s += &format!("mismatches against the expected table: {}\n", r.mismatches.len());
        s
    })
}

fn parse_word(text: &str) -> anyhow::Result<PicardWord> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() == 1 {
        let e: ExoticClass = parts[0].parse().map_err(usage)?;
        return Ok(PicardWord { m: 0, d: 0, exotic: e });
    }
    let nums: Vec<i64> = parts
        .iter()
        .map(|p| p.parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("expected m,d,a,b or an exotic class, got `{text}`")))?;
    match nums[..] {
        [m, d, a, b] => Ok(PicardWord::new(m as i32, d as i32, a, b)),
        _ => Err(usage(format!("expected four integers m,d,a,b, got `{text}`"))),
    }
}

fn picard(ctx: &Ctx, verb: PicardVerb) -> Outcome {
    match verb {
        PicardVerb::Smash { x, y } => {
            let (x, y) = (parse_word(&x)?, parse_word(&y)?);
            let z = x.smash(y);

            #[derive(Serialize)]
            struct Out {
                x: PicardWord,
                y: PicardWord,
                product: PicardWord,
                rendered: String,
                v1_shift: Option<i32>,
            }
            let shift = z.v1_shift().ok();
            ctx.emit(&Out { x, y, product: z, rendered: z.to_string(), v1_shift: shift }, || {
                let mut s = format!("({x}) ^ ({y}) = {z}\n");
                match z.v1_shift() {
                    Ok(k) => s += &format!("- ^ V(1) = S^{k} ^ V(1) (mod {})\n", picard::V1_PERIOD),
                    Err(e) => s += &format!("- ^ V(1): {e}\n"),
                }
                s
            })?;
            Ok(true)
        }
        PicardVerb::Solve => {
            let sol = picard::solve_brown_comenetz();

            #[derive(Serialize)]
            struct Out<'a> {
                solution: &'a picard::Solution,
                rendered: String,
                equation: String,
            }
            ctx.emit(&Out { solution: &sol, rendered: format!("I_2 = {}", sol.word), equation: sol.equation() }, || {
                let mut s = format!("I_2 = {}\n{}\n", sol.word, sol.equation());
                for c in &sol.candidates {
                    let shift = c.shift.map_or("not Λ(ζ)-free".to_string(), |k| k.to_string());
                    s += &format!("  {:<9} shift {shift}{}\n", c.exotic.to_string(), if c.accepted { "  <-" } else { "" });
                }
                s
            })?;
            Ok(true)
        }
        PicardVerb::CheckDet { lo, hi } => {
            if lo > hi {
                return Err(usage(format!("empty exponent range {lo}..{hi}")));
            }
            let r = picard::det_twist_invariance_check(&k2local::F9::units(), &picard::det_exponents(lo, hi));
            ctx.emit(&r, || {
                format!(
                    "u^e with e = 4 mod 8 in {lo}..{hi}: {} exponents x {} units, {} failures\n",
                    r.exponents.len(),
                    r.units,
                    r.failures.len()
                )
            })?;
            Ok(r.ok())
        }
    }
}

fn chart(ctx: &Ctx, target: &str, format: ChartFormat, output: Option<PathBuf>) -> Outcome {
    let mut spec = match chart::named(target) {
        Err(chart::ChartError::Unknown(n)) => {
            return Err(usage(format!("unknown chart `{n}` (known: {})", chart::CHARTS.join(", "))))
        }
        r => r?,
    };
    if let Some(lo) = ctx.config.stem_min {
        spec.lo = lo;
    }
    if let Some(hi) = ctx.config.stem_max {
        spec.hi = hi;
    }
    let format = match format {
        ChartFormat::Text => Format::Text,
        ChartFormat::Svg => Format::Svg,
    };
    let doc = chart::render(&spec, format).map_err(usage)?;
    let dots: usize = (spec.lo..=spec.hi).map(|n| spec.table.dim(n)).sum();
    match output {
        Some(path) => {
            let path = ctx.config.resolve_output(&path);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&path, &doc).with_context(|| format!("writing {}", path.display()))?;

            #[derive(Serialize)]
            struct Out {
                chart: String,
                path: PathBuf,
                stems: (i32, i32),
                dots: usize,
            }
            let out = Out { chart: spec.title.clone(), path: path.clone(), stems: (spec.lo, spec.hi), dots };
            ctx.emit(&out, || format!("wrote {} ({dots} dots, stems {}..{})\n", path.display(), spec.lo, spec.hi))?;
        }
        None if ctx.json => {
            #[derive(Serialize)]
            struct Out<'a> {
                chart: &'a str,
                stems: (i32, i32),
                dots: usize,
                document: &'a str,
            }
            ctx.emit(&Out { chart: &spec.title, stems: (spec.lo, spec.hi), dots, document: &doc }, String::new)?;
        }
        None => print!("{doc}"),
    }
    Ok(true)
}

fn verify_all(ctx: &Ctx, only: &[u8]) -> Outcome {
    let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only.to_vec() };
    let mut results = Vec::new();
    for id in ids {
        results.push(verify::criterion(id).ok_or_else(|| usage(format!("no criterion {id}")))?);
    }
    let passed = results.iter().all(|r| r.passed);
    ctx.emit(&results, || {
        let mut s = String::from(" id  result  check\n");
        for r in &results {
            s += &format!("{:>3}  {:<6}  {}: {}\n", r.id, if r.passed { "pass" } else { "FAIL" }, r.name, r.detail);
        }
        let n = results.iter().filter(|r| r.passed).count();
        s += &format!("{n}/{} passed\n", results.len());
        s
    })?;
    if !passed {
        eprintln!("{}", anyhow!("{} check(s) failed", results.iter().filter(|r| !r.passed).count()));
    }
    Ok(passed)
}
