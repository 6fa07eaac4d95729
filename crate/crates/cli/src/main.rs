//! `stabforge`: find, verify, scan and report on set-stabilizers of
//! permutation groups.

mod demo;
mod doc;
mod render;
mod scan;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use stabforge_core::bounds::{stabilized_pair_count, BoundsReport};
use stabforge_core::census::{
    g0_hits_by_size, CensusMode, CensusTable, BITMAP_MAX_DEGREE, EXHAUSTIVE_MAX_DEGREE,
};
use stabforge_core::constructor::{small_stabilizer_set, ConstructorOptions};
use stabforge_core::speclang::{build_group_spec, ParseError};
use stabforge_core::{Error, Limits, PermGroup, PointSet, MAX_DEGREE};

use doc::{
    one_based, verdict_text, BoundsDoc, CensusRowDoc, CertificateDocument, StabilizerDoc,
    VerifyDocument,
};
use render::{fields, point_list, Table};

#[derive(Parser, Debug)]
#[command(
    name = "stabforge",
    version,
    about = "Set-stabilizers with small O² in finite permutation groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    elem_cap: u64,
    /// Largest admissible degree (at most 64).
    #[arg(long, global = true, default_value_t = MAX_DEGREE)]
    degree_cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a subset whose stabilizer has the required structure.
    Find(FindArgs),
    /// Report on the stabilizer of a given subset.
    Verify(VerifyArgs),
    /// Survey stabilizers over the power set.
    Scan(ScanArgs),
    /// Counting bounds or a built-in demonstration.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Args, Debug)]
struct FindArgs {
    spec: String,
    /// Also emit the second set of the pair.
    #[arg(long)]
    pair: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree up to which transitive groups are scanned directly.
    #[arg(long, default_value_t = 12)]
    scan_cap: usize,
    /// Recurse through block systems even when a direct scan would do.
    #[arg(long)]
    force_recursion: bool,
    /// Attach the counting bounds to the certificate.
    #[arg(long)]
    bounds: bool,
    /// Attach an exhaustive census (degree at most 16).
    #[arg(long)]
    census: bool,
    /// Write the certificate as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    spec: String,
    /// Comma-separated 1-based points; empty for the empty set.
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    /// Write the stabilizer block as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    spec: String,
    /// Every subset (degree at most 16).
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Number of seeded random subsets (degree at most 24).
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Count subsets stabilized by some element of odd prime order.
    #[arg(long)]
    bitmap: bool,
    /// Subset sizes for hit counts above degree 24.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Worker threads; defaults to STABFORGE_THREADS, then the core count.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ReportCommand {
    /// Cycle, order and counting bounds for a group.
    Bounds {
        spec: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a built-in bundle of claims.
    Demo {
        #[arg(value_enum)]
        name: demo::Demo,
        #[arg(long)]
        threads: Option<usize>,
    },
}

/// Writes to stdout, ignoring a closed pipe so the exit code still stands.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

macro_rules! out {
    ($($arg:tt)*) => { emit(&format!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}

/// Invalid command-line input that is not a group-spec parse error.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<ParseError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse(_) | Error::PointOutOfRange { .. }) => 2,
        Some(Error::NotSolvable) => 3,
        Some(Error::VerificationFailed(_)) => 4,
        Some(Error::CapExceeded { .. } | Error::DegreeCapExceeded { .. }) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let limits = Limits {
        elem_cap: cli.global.elem_cap,
        degree_cap: cli.global.degree_cap,
    };
    match cli.command {
        Command::Find(a) => find(a, &limits),
        Command::Verify(a) => verify(a, &limits),
        Command::Scan(a) => scan_cmd(a, &limits),
        Command::Report(ReportCommand::Bounds { spec, json }) => {
            bounds(&spec, json.as_deref(), &limits)
        }
        Command::Report(ReportCommand::Demo { name, threads }) => run_demo(name, threads, &limits),
    }
}

fn thread_count(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(t) = flag {
        return Ok(t.max(1));
    }
    if let Ok(v) = std::env::var("STABFORGE_THREADS") {
        let t: usize = v
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("STABFORGE_THREADS={v} is not a number")))?;
        return Ok(t.max(1));
    }
    Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn build(spec: &str, limits: &Limits) -> anyhow::Result<PermGroup> {
    Ok(build_group_spec(spec.trim(), limits)?)
}

fn parse_set(text: &str, degree: usize) -> anyhow::Result<PointSet> {
    let mut set = PointSet::EMPTY;
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let p: usize = token
            .parse()
            .map_err(|_| UsageError(format!("bad point {token:?} in --set")))?;
        if p == 0 || p > degree {
            return Err(Error::PointOutOfRange { point: p, degree }.into());
        }
        set.insert(p - 1);
    }
    Ok(set)
}

fn stabilizer_fields(block: &StabilizerDoc) -> Vec<(&'static str, String)> {
    let v = &block.verdict;
    let gens = if block.generators.is_empty() {
        "none".to_string()
    } else {
        block.generators.join(", ")
    };
    vec![
        ("stabilizer order", block.order.clone()),
        ("generators", gens),
        ("O² order", block.o2_order.clone()),
        ("O² exponent", block.o2_exponent.to_string()),
        ("required structure", v.required_structure.to_string()),
        ("2-group", v.is_2_group.to_string()),
        ("nilpotent", v.is_nilpotent.to_string()),
        (
            "O² elementary abelian 3",
            v.o2_is_elementary_abelian_3.to_string(),
        ),
    ]
}

fn find(a: FindArgs, limits: &Limits) -> anyhow::Result<u8> {
    let spec = a.spec.trim();
    let g = build(spec, limits)?;
    let opts = ConstructorOptions {
        limits: *limits,
        scan_cap: a.scan_cap,
        force_recursion: a.force_recursion,
        seed: a.seed,
        ..Default::default()
    };
    let cert = small_stabilizer_set(&g, &opts)?;
    let mut document = CertificateDocument::new(spec, &g, &cert, a.pair, a.seed);
    let mut bounds_report = None;
    if a.bounds {
        let r = stabilized_pair_count(&g, limits)?;
        document.bounds = Some(BoundsDoc::from(&r));
        bounds_report = Some(r);
    }
    if a.census {
        if g.degree() > EXHAUSTIVE_MAX_DEGREE {
            return Err(Error::DegreeCapExceeded {
                degree: g.degree(),
                cap: EXHAUSTIVE_MAX_DEGREE,
            }
            .into());
        }
        let t = scan::census(&g, CensusMode::Exhaustive, None, thread_count(None)?)?;
        document.census = Some(t.rows.iter().map(CensusRowDoc::from).collect());
    }

    let mut summary = vec![
        ("spec", spec.to_string()),
        ("degree", g.degree().to_string()),
        ("group order", g.order().to_string()),
        ("delta", point_list(&document.delta)),
    ];
    summary.extend(stabilizer_fields(&document.stabilizer));
    if let Some(p) = &document.nice_pair {
        summary.extend([
            ("delta1", point_list(&p.delta1)),
            ("delta2", point_list(&p.delta2)),
            ("delta2 stabilizer order", p.stabilizer2.order.clone()),
            ("delta2 O² order", p.stabilizer2.o2_order.clone()),
        ]);
    }
    out!("{}", fields(&summary));
    if !document.trace.is_empty() {
        let mut t = Table::new(["depth", "case", "degree", "order", "parts", "sizes"]).left(1);
        for s in &document.trace {
            let parts: Vec<String> = s.part_sizes.iter().map(ToString::to_string).collect();
            t.row([
                s.depth.to_string(),
                s.case.clone(),
                s.degree.to_string(),
                s.group_order.clone(),
                parts.join("+"),
                format!("{},{}", s.sizes[0], s.sizes[1]),
            ]);
        }
        out!("\n{}", t.render());
    }
    if let Some(r) = &bounds_report {
        out!("\n{}", bounds_text(r));
    }
    if let Some(rows) = &document.census {
        out!("\n{}", census_rows_text(rows));
    }
    if let Some(path) = &a.json {
        write_json(path, &document)?;
    }
    if !document.stabilizer.verdict.required_structure {
        return Err(Error::VerificationFailed(
            "certificate stabilizer lacks the required structure".into(),
        )
        .into());
    }
    Ok(0)
}

fn verify(a: VerifyArgs, limits: &Limits) -> anyhow::Result<u8> {
    let spec = a.spec.trim();
    let g = build(spec, limits)?;
    let set = parse_set(&a.set, g.degree())?;
    let block = StabilizerDoc::compute(&g, set, limits)?;
    let mut summary = vec![
        ("spec", spec.to_string()),
        ("degree", g.degree().to_string()),
        ("group order", g.order().to_string()),
        ("set", point_list(&one_based(set))),
    ];
    summary.extend(stabilizer_fields(&block));
    out!("{}", fields(&summary));
    let ok = block.verdict.required_structure;
    if let Some(path) = &a.json {
        let document = VerifyDocument {
            format_version: doc::FORMAT_VERSION,
            spec: spec.to_string(),
            delta: one_based(set),
            stabilizer: block,
        };
        write_json(path, &document)?;
    }
    Ok(if ok { 0 } else { 1 })
}

#[derive(Serialize)]
struct ScanDocument {
    format_version: u32,
    spec: String,
    degree: usize,
    mode: String,
    rng_seed: u64,
    g0_hits_total: Option<u64>,
    rows: Vec<CensusRowDoc>,
    hits_by_size: Option<Vec<SizeHits>>,
}

#[derive(Serialize)]
struct SizeHits {
    size: usize,
    total: String,
    hit_by_g0: u64,
}

fn census_rows_text(rows: &[CensusRowDoc]) -> String {
    let mut t = Table::new([
        "size",
        "total",
        "examined",
        "G0-hit",
        "2-group",
        "required",
        "nilpotent",
        "min |S|",
        "max |S|",
    ]);
    let opt = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
    for r in rows {
        t.row([
            r.size.to_string(),
            r.total.to_string(),
            r.examined.to_string(),
            r.hit_by_g0.map_or("-".into(), |h| h.to_string()),
            r.two_group.to_string(),
            r.required.to_string(),
            r.nilpotent.to_string(),
            opt(&r.min_stab_order),
            opt(&r.max_stab_order),
        ]);
    }
    t.render()
}

fn binomial(n: usize, k: usize) -> num_bigint::BigUint {
    (0..k).fold(num_bigint::BigUint::from(1u32), |acc, i| {
        acc * (n - i) / (i + 1)
    })
}

fn scan_cmd(a: ScanArgs, limits: &Limits) -> anyhow::Result<u8> {
    let spec = a.spec.trim();
    let g = build(spec, limits)?;
    let n = g.degree();
    let threads = thread_count(a.threads)?;
    let mut document = ScanDocument {
        format_version: doc::FORMAT_VERSION,
        spec: spec.to_string(),
        degree: n,
        mode: String::new(),
        rng_seed: a.seed,
        g0_hits_total: None,
        rows: Vec::new(),
        hits_by_size: None,
    };
    outln!("{spec}: degree {n}, order {}", g.order());

    if n > BITMAP_MAX_DEGREE && a.sample.is_none() && !a.exhaustive {
        if !a.bitmap {
            bail!(UsageError(format!("degree {n} is above {BITMAP_MAX_DEGREE}; only --bitmap hit counts by size are available")));
        }
        let sizes = a.sizes.clone().unwrap_or_else(|| (0..=4.min(n)).collect());
        if let Some(&k) = sizes.iter().find(|&&k| k > n) {
            bail!(UsageError(format!("size {k} exceeds the degree {n}")));
        }
        let hits = g0_hits_by_size(&g, &sizes, limits)?;
        let mut t = Table::new(["size", "total", "G0-hit"]);
        let mut rows = Vec::new();
        for (k, c) in hits {
            let total = binomial(n, k).to_string();
            t.row([k.to_string(), total.clone(), c.to_string()]);
            rows.push(SizeHits {
                size: k,
                total,
                hit_by_g0: c,
            });
        }
        out!("{}", t.render());
        document.mode = "hits-by-size".into();
        document.hits_by_size = Some(rows);
    } else {
        let mode = match a.sample {
            Some(count) => CensusMode::Sample {
                count,
                seed: a.seed,
            },
            None if a.exhaustive || n <= EXHAUSTIVE_MAX_DEGREE => CensusMode::Exhaustive,
            None => CensusMode::Sample {
                count: 1000,
                seed: a.seed,
            },
        };
        let bitmap = if a.bitmap {
            Some(scan::hit_bitmap(&g, limits, threads)?)
        } else {
            None
        };
        let table: CensusTable = scan::census(&g, mode, bitmap.as_ref(), threads)?;
        document.mode = match mode {
            CensusMode::Exhaustive => "exhaustive".into(),
            CensusMode::Sample { count, .. } => format!("sample {count}"),
        };
        outln!("mode: {}", document.mode);
        if let Some(b) = &bitmap {
            let hit = b.count();
            outln!("G0-hit subsets: {hit}/{}", 1u64 << n);
            document.g0_hits_total = Some(hit);
        }
        document.rows = table.rows.iter().map(CensusRowDoc::from).collect();
        out!("{}", census_rows_text(&document.rows));
    }
    if let Some(path) = &a.json {
        write_json(path, &document)?;
    }
    Ok(0)
}

fn bounds_text(r: &BoundsReport) -> String {
    let mut out = fields(&[
        ("degree", r.degree.to_string()),
        ("group order", r.group_order.to_string()),
        (
            "order bound",
            format!("{:.6} ({})", r.wolf.bound, verdict_text(r.wolf.holds)),
        ),
        ("elements of odd prime order", r.g0_count.to_string()),
        ("max cycle count", r.max_cycle_count.to_string()),
        (
            "cycle bound",
            format!("{}/{}", r.cycle_bound.0, r.cycle_bound.1),
        ),
        (
            "cycles <= 5n/9",
            verdict_text(r.cycles.five_ninths).to_string(),
        ),
        ("cycles <= n/2", verdict_text(r.cycles.half).to_string()),
        ("s = sum 2^c(g)", r.s_count.to_string()),
        ("s bound", verdict_text(r.s_count_bound).to_string()),
        ("2^n", r.threshold_2n.to_string()),
        ("2^(n-1)", r.threshold_half.to_string()),
        (
            "2-group stabilizer exists",
            r.verdict_two_group_exists.to_string(),
        ),
        ("nice by counting", r.verdict_nice_by_counting.to_string()),
    ]);
    if !r.cycles.histogram.is_empty() {
        let mut t = Table::new(["order", "cycles", "elements"]);
        for (&(o, c), &k) in &r.cycles.histogram {
            t.row([o.to_string(), c.to_string(), k.to_string()]);
        }
        out.push('\n');
        out.push_str(&t.render());
    }
    out
}

fn bounds(spec: &str, json: Option<&Path>, limits: &Limits) -> anyhow::Result<u8> {
    let g = build(spec, limits)?;
    let r = stabilized_pair_count(&g, limits)?;
    out!("{}", bounds_text(&r));
    if let Some(path) = json {
        write_json(path, &BoundsDoc::from(&r))?;
    }
    Ok(0)
}

fn run_demo(name: demo::Demo, threads: Option<usize>, limits: &Limits) -> anyhow::Result<u8> {
    let claims = demo::run(name, limits, thread_count(threads)?)?;
    let mut t = Table::new(["claim", "result", "detail"]).left(2);
    for c in &claims {
        t.row([
            c.name.clone(),
            if c.passed { "PASS" } else { "FAIL" }.into(),
            c.detail.clone(),
        ]);
    }
    out!("{}", t.render());
    let failed = claims.iter().filter(|c| !c.passed).count();
    outln!(
        "{} of {} claims passed",
        claims.len() - failed,
        claims.len()
    );
    Ok(if failed == 0 { 0 } else { 1 })
}
