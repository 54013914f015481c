//! `gmverify`: batch GM verification and report generation.
//!
//! Exit status: 0 all checks pass, 1 usage error, 2 a COUNTEREXAMPLE report
//! was emitted, 3 malformed input.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gm_core::decomposition::{
    census, decompose_search, tree_certificate, verify_certificate, CensusReport, Certificate, DecomposeMode,
    HypothesisReport, PUBLISHED_SIX_VERTEX_DECOMPOSABLE,
};
use gm_core::dirichlet::{pair_gm_check, reduction_chain_check, VertexPair};
use gm_core::enumeration::{sweep_persistent, sweep_with_tolerance, Check};
use gm_core::gm::{gm_check, shortcut_label};
use gm_core::graph::{parse_edge_list, random_graph, standard_family, threshold_graph, Family, Graph};
use gm_core::graph6::{parse_graph6, write_graph6};
use gm_core::partition::DEFAULT_TOLERANCE;
use gm_core::spectra::{laplacian_spectrum, round_sig12};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "gmverify", version, about = "Grone-Merris majorization checks for graph Laplacians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Laplacian spectrum of each input graph.
    Spectrum(Common),
    /// GM check `λ ⊴ d^T` for each input graph.
    Gm(Common),
    /// Search for an `(A+B) ∪ C` cut meeting the decomposition conditions.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "theorem")]
        mode: ModeArg,
    },
    /// Recursive certificate for a tree.
    TreeCert(Common),
    /// Reduction chain for an (edge, vertex) pair.
    Dirichlet {
        #[command(flatten)]
        common: Common,
        /// Deleted vertices, 0-based: `0b0101`, `0x5`, a decimal mask, or a
        /// comma list such as `0,2` (a single vertex is written `2,`).
        #[arg(long)]
        deleted: String,
    },
    /// Every isomorphism class on `n` vertices through the decomposition search.
    Census {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        mode: ModeArg,
        #[arg(long, env = "GM_WORKERS", default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// GM (and optionally decomposition) over every class on `n` vertices.
    Sweep {
        #[arg(long)]
        n: usize,
        /// Comma-separated subset of `gm,decompose`.
        #[arg(long, default_value = "gm")]
        checks: String,
        #[arg(long, env = "GM_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Directory for `sweep.csv` and `summary.json`; a matching earlier run is reused.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Threshold creation sequences: with `--n`, all `2^(n-1)` of them;
    /// with an input graph, its sequence if it has one.
    Threshold {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct InputArgs {
    /// A graph6 string.
    #[arg(long)]
    graph6: Option<String>,
    /// File with one graph6 string per line.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Edge-list file: header `n m`, then one `i j` pair per line.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Generator: `path:n`, `cycle:n`, `complete:n`, `star:n`, `empty:n` or `random:n:p`.
    #[arg(long = "gen")]
    generator: Option<String>,
    /// Seed for `random:` generators.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Theorem,
    Dt,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<DecomposeMode> {
        match self {
            ModeArg::Theorem => vec![DecomposeMode::Theorem],
            ModeArg::Dt => vec![DecomposeMode::Dt],
            ModeArg::Both => vec![DecomposeMode::Theorem, DecomposeMode::Dt],
        }
    }
}

enum Failure {
    Usage(String),
    Malformed(String),
}

impl From<gm_core::Error> for Failure {
    fn from(e: gm_core::Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

/// Report text plus whether a counterexample appeared in it.
struct Output {
    text: String,
    counterexample: bool,
}

fn load(input: &InputArgs) -> Result<Vec<Graph>, Failure> {
    let given = [
        input.graph6.is_some(),
        input.file.is_some(),
        input.edges.is_some(),
        input.generator.is_some(),
    ];
    match given.iter().filter(|&&b| b).count() {
        1 => {}
        0 => return Err(Failure::Usage("one of --graph6, --file, --edges, --gen is required".into())),
        _ => return Err(Failure::Usage("give exactly one of --graph6, --file, --edges, --gen".into())),
    }
    let read = |p: &PathBuf| fs::read_to_string(p).map_err(|e| Failure::Malformed(format!("{}: {e}", p.display())));
    if let Some(s) = &input.graph6 {
        return Ok(vec![parse_graph6(s)?]);
    }
    if let Some(p) = &input.file {
        let text = read(p)?;
        let graphs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_graph6)
            .collect::<gm_core::Result<Vec<_>>>()?;
        return Ok(graphs);
    }
    if let Some(p) = &input.edges {
        return Ok(vec![parse_edge_list(&read(p)?)?]);
    }
    let spec = input.generator.as_deref().unwrap_or_default();
    generate(spec, input.seed).map(|g| vec![g])
}

fn generate(spec: &str, seed: u64) -> Result<Graph, Failure> {
    let bad = || Failure::Usage(format!("bad generator {spec:?}; expected family:n or random:n:p"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["random", n, p] => {
            let n = n.parse().map_err(|_| bad())?;
            let p = p.parse().map_err(|_| bad())?;
            random_graph(n, p, seed).map_err(|e| Failure::Usage(e.to_string()))
        }
        [family, n] => {
            let kind: Family = family.parse().map_err(|_| bad())?;
            let n = n.parse().map_err(|_| bad())?;
            standard_family(kind, n).map_err(|e| Failure::Usage(e.to_string()))
        }
        _ => Err(bad()),
    }
}

fn parse_deleted(text: &str, n: usize) -> Result<u64, Failure> {
    let bad = || Failure::Usage(format!("bad --deleted {text:?}"));
    let t = text.trim();
    let mask = if t.contains(',') {
        let mut mask = 0u64;
        for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let v: usize = part.parse().map_err(|_| bad())?;
            if v >= n || v >= 64 {
                return Err(Failure::Usage(format!("deleted vertex {v} out of range for n = {n}")));
            }
            mask |= 1 << v;
        }
        mask
    } else if let Some(b) = t.strip_prefix("0b") {
        u64::from_str_radix(b, 2).map_err(|_| bad())?
    } else if let Some(h) = t.strip_prefix("0x") {
        u64::from_str_radix(h, 16).map_err(|_| bad())?
    } else {
        t.parse().map_err(|_| bad())?
    };
    Ok(mask)
}

fn json_lines<T: Serialize>(items: &[T]) -> String {
    items.iter().map(|i| serde_json::to_string(i).expect("serializable") + "\n").collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn spectrum(c: &Common) -> Result<Output, Failure> {
    #[derive(Serialize)]
    struct Row {
        graph6: String,
        lambda: Vec<f64>,
        residual: f64,
    }
    let rows: Vec<Row> = load(&c.input)?
        .iter()
        .map(|g| {
            let s = laplacian_spectrum(g);
            Row {
                graph6: write_graph6(g),
                lambda: s.values.iter().map(|&x| round_sig12(x)).collect(),
                residual: s.residual,
            }
        })
        .collect();
    let text = match c.out.format {
        Format::Json => json_lines(&rows),
        Format::Csv => {
            let mut s = String::from("graph6,lambda\n");
            for r in &rows {
                let _ = writeln!(s, "{},{}", r.graph6, join(&r.lambda));
            }
            s
        }
        Format::Text => rows.iter().map(|r| format!("{}  {}\n", r.graph6, join(&r.lambda))).collect(),
    };
    Ok(Output { text, counterexample: false })
}

fn gm(c: &Common) -> Result<Output, Failure> {
    let reports: Vec<_> = load(&c.input)?.iter().map(|g| gm_check(g, c.out.tol)).collect();
    let text = match c.out.format {
        Format::Json => reports.iter().map(|r| r.to_json() + "\n").collect(),
        Format::Csv => {
            let mut s = String::from("graph6,holds,equality,shortcut,tight\n");
            for r in &reports {
                let _ = writeln!(s, "{},{},{},{},{}", r.graph6, r.holds, r.equality, shortcut_label(r.shortcut), join(&r.tight));
            }
            s
        }
        Format::Text => reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n"),
    };
    Ok(Output {
        text,
        counterexample: reports.iter().any(|r| !r.holds),
    })
}

#[derive(Serialize)]
struct CutOut {
    #[serde(rename = "VA")]
    va: u64,
    a: Vec<usize>,
    b: Vec<usize>,
    c_edges: usize,
}

#[derive(Serialize)]
struct DecomposeOut {
    graph6: String,
    mode: DecomposeMode,
    decomposable: bool,
    cut: Option<CutOut>,
    hypotheses: Option<HypothesisReport>,
}

fn decompose(c: &Common, mode: ModeArg) -> Result<Output, Failure> {
    let mut rows = Vec::new();
    for g in load(&c.input)? {
        for m in mode.modes() {
            let found = decompose_search(&g, m, c.out.tol);
            rows.push(DecomposeOut {
                graph6: write_graph6(&g),
                mode: m,
                decomposable: found.is_some(),
                cut: found.as_ref().map(|(cut, _)| CutOut {
                    va: cut.mask(),
                    a: cut.side_a().iter().map(|v| v + 1).collect(),
                    b: cut.side_b().iter().map(|v| v + 1).collect(),
                    c_edges: cut.c().edge_count(),
                }),
                hypotheses: found.map(|(_, r)| r),
            });
        }
    }
    let text = match c.out.format {
        Format::Json => json_lines(&rows),
        Format::Csv => {
            let mut s = String::from("graph6,mode,decomposable,cut_mask\n");
            for r in &rows {
                let mask = r.cut.as_ref().map(|c| c.va.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{}", r.graph6, r.mode.as_str(), r.decomposable, mask);
            }
            s
        }
        Format::Text => rows
            .iter()
            .map(|r| match &r.cut {
                Some(cut) => format!(
                    "{} [{}] A={{{}}} B={{{}}} |C|={}\n",
                    r.graph6,
                    r.mode.as_str(),
                    join(&cut.a),
                    join(&cut.b),
                    cut.c_edges
                ),
                None => format!("{} [{}] no qualifying cut\n", r.graph6, r.mode.as_str()),
            })
            .collect(),
    };
    Ok(Output { text, counterexample: false })
}

fn render_cert(cert: &Certificate, depth: usize, out: &mut String) {
    let kind = serde_json::to_value(cert.kind).expect("serializable");
    let cut = cert.cut.map(|c| format!(" VA={:#b}", c.va)).unwrap_or_default();
    let _ = writeln!(out, "{}{} {}{}", "  ".repeat(depth), kind.as_str().unwrap_or(""), cert.graph6, cut);
    for child in &cert.children {
        render_cert(child, depth + 1, out);
    }
}

fn tree_cert(c: &Common) -> Result<Output, Failure> {
    #[derive(Serialize)]
    struct Row {
        verified: bool,
        certificate: Certificate,
    }
    let mut rows = Vec::new();
    for g in load(&c.input)? {
        let cert = tree_certificate(&g)?;
        rows.push(Row {
            verified: verify_certificate(&cert, c.out.tol)?,
            certificate: cert,
        });
    }
    let text = match c.out.format {
        Format::Json => json_lines(&rows),
        Format::Csv => {
            let mut s = String::from("graph6,verified,depth,leaves\n");
            for r in &rows {
                let cert = &r.certificate;
                let _ = writeln!(s, "{},{},{},{}", cert.graph6, r.verified, cert.depth(), cert.leaves().len());
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(s, "verified {}", r.verified);
                render_cert(&r.certificate, 0, &mut s);
            }
            s
        }
    };
    Ok(Output {
        text,
        counterexample: rows.iter().any(|r| !r.verified),
    })
}

fn dirichlet(c: &Common, deleted: &str) -> Result<Output, Failure> {
    #[derive(Serialize)]
    struct Row {
        chain: gm_core::dirichlet::ReductionChainReport,
        pair: gm_core::gm::GmReport,
    }
    let mut rows = Vec::new();
    for g in load(&c.input)? {
        let mask = parse_deleted(deleted, g.n())?;
        let p = VertexPair::new(g, mask).map_err(|e| Failure::Usage(e.to_string()))?;
        let chain = reduction_chain_check(&p, c.out.tol).map_err(|e| Failure::Usage(e.to_string()))?;
        let pair = pair_gm_check(&p, c.out.tol).map_err(|e| Failure::Usage(e.to_string()))?;
        rows.push(Row { chain, pair });
    }
    let text = match c.out.format {
        Format::Json => json_lines(&rows),
        Format::Csv => {
            let mut s = String::from("graph6,deleted,link1,link2,link3,final,identity_check,deleted_edges_irrelevant\n");
            for Row { chain: r, .. } in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    r.graph6, r.deleted, r.link1, r.link2, r.link3, r.final_, r.identity_check, r.deleted_edges_irrelevant
                );
            }
            s
        }
        Format::Text => rows
            .iter()
            .map(|Row { chain: r, pair }| {
                format!(
                    "deleted {:#b}\nlink1 {}  link2 {}  link3 {}  final {}\nidentity {}  deleted edges irrelevant {}\n{}",
                    r.deleted, r.link1, r.link2, r.link3, r.final_, r.identity_check, r.deleted_edges_irrelevant, pair.to_text()
                )
            })
            .collect(),
    };
    Ok(Output {
        text,
        counterexample: rows.iter().any(|r| !r.chain.all_hold() || !r.pair.holds),
    })
}

fn census_cmd(n: usize, mode: ModeArg, workers: usize, out: &OutputArgs) -> Result<Output, Failure> {
    #[derive(Serialize)]
    struct Summary<'a> {
        n: usize,
        total_classes: usize,
        reports: &'a [CensusReport],
        #[serde(skip_serializing_if = "Option::is_none")]
        discrepancy: Option<String>,
    }
    let reports: Vec<CensusReport> = mode
        .modes()
        .into_iter()
        .map(|m| census(n, m, out.tol, workers))
        .collect::<gm_core::Result<_>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let discrepancy = (n == 6 && mode == ModeArg::Both)
        .then(|| {
            let hits = reports
                .iter()
                .filter(|r| r.decomposable_count == PUBLISHED_SIX_VERTEX_DECOMPOSABLE)
                .count();
            (hits != 1).then(|| {
                let counts: Vec<String> = reports
                    .iter()
                    .map(|r| format!("{}={} residual={:?}", r.mode.as_str(), r.decomposable_count, r.residual))
                    .collect();
                format!(
                    "{} modes give the published count {}: {}",
                    hits,
                    PUBLISHED_SIX_VERTEX_DECOMPOSABLE,
                    counts.join("; ")
                )
            })
        })
        .flatten();
    if let Some(d) = &discrepancy {
        eprintln!("discrepancy: {d}");
    }
    let text = match out.format {
        Format::Json => {
            let s = Summary {
                n,
                total_classes: reports[0].total_classes,
                reports: &reports,
                discrepancy,
            };
            serde_json::to_string_pretty(&s).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv();
                s.push_str(if i == 0 { &csv } else { csv.split_once('\n').map_or("", |x| x.1) });
            }
            s
        }
        Format::Text => {
            let mut s = format!("n {n}  classes {}\n", reports[0].total_classes);
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{:<8} decomposable {} (direct {}, complement {}, shortcut {})  residual {}  residual GM {}",
                    r.mode.as_str(),
                    r.decomposable_count,
                    r.direct_count,
                    r.complement_count,
                    r.shortcut_count,
                    r.residual.len(),
                    if r.residual_gm_holds { "holds" } else { "COUNTEREXAMPLE" }
                );
                for g in &r.residual {
                    let _ = writeln!(s, "  {g}");
                }
            }
            if let Some(d) = &discrepancy {
                let _ = writeln!(s, "discrepancy: {d}");
            }
            s
        }
    };
    Ok(Output {
        text,
        counterexample: reports.iter().any(|r| !r.all_gm_hold),
    })
}

fn sweep_cmd(n: usize, checks: &str, workers: usize, dir: Option<&PathBuf>, format: Format, tol: f64) -> Result<Output, Failure> {
    let checks: BTreeSet<Check> = checks
        .split(',')
        .map(|c| c.trim().parse().map_err(|e: gm_core::Error| Failure::Usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    let report = match dir {
        Some(d) => sweep_persistent(n, &checks, workers, tol, d).map(|(r, _)| r),
        None => sweep_with_tolerance(n, &checks, workers, tol),
    }
    .map_err(|e| match e {
        gm_core::Error::Io(_) => Failure::Malformed(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    })?;
    let text = match format {
        Format::Json => report.summary_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => format!(
            "n {}  classes {}  GM holds {}  equality {}  counterexamples {}\n",
            report.n,
            report.total_classes,
            report.gm_holds_count,
            report.gm_equality_count,
            report.counterexamples.len()
        ),
    };
    Ok(Output {
        text,
        counterexample: !report.counterexamples.is_empty(),
    })
}

fn threshold(n: Option<usize>, c: &Common) -> Result<Output, Failure> {
    #[derive(Serialize)]
    struct Row {
        graph6: String,
        creation: Option<String>,
        equality: bool,
        max_deviation: f64,
    }
    let row = |g: &Graph| {
        let r = gm_check(g, c.out.tol);
        let dev = r
            .spectrum
            .iter()
            .enumerate()
            .map(|(i, x)| (x - r.conjugate_degrees.get(i) as f64).abs())
            .fold(0.0, f64::max);
        Row {
            graph6: r.graph6.clone(),
            creation: g.threshold_creation_sequence().map(|s| s.iter().map(|b| b.to_string()).collect()),
            equality: r.equality,
            max_deviation: round_sig12(dev),
        }
    };
    let rows: Vec<Row> = match n {
        Some(n) => {
            if !(1..=20).contains(&n) {
                return Err(Failure::Usage("--n must be in 1..=20".into()));
            }
            (0u32..1 << (n - 1))
                .map(|bits| {
                    let seq: Vec<u8> = std::iter::once(0).chain((0..n - 1).map(|i| (bits >> i & 1) as u8)).collect();
                    row(&threshold_graph(&seq).expect("valid creation sequence"))
                })
                .collect()
        }
        None => load(&c.input)?.iter().map(row).collect(),
    };
    let text = match c.out.format {
        Format::Json => json_lines(&rows),
        Format::Csv => {
            let mut s = String::from("graph6,creation,equality,max_deviation\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.graph6, r.creation.as_deref().unwrap_or(""), r.equality, r.max_deviation);
            }
            s
        }
        Format::Text => rows
            .iter()
            .map(|r| format!("{}  creation {}  equality {}\n", r.graph6, r.creation.as_deref().unwrap_or("-"), r.equality))
            .collect(),
    };
    // With --n every graph is threshold, so inequality here is a counterexample
    // to the equality case rather than to GM itself.
    Ok(Output {
        text,
        counterexample: n.is_some() && rows.iter().any(|r| !r.equality),
    })
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>), Failure> {
    Ok(match &cli.command {
        Command::Spectrum(c) => (spectrum(c)?, c.out.out.clone()),
        Command::Gm(c) => (gm(c)?, c.out.out.clone()),
        Command::Decompose { common, mode } => (decompose(common, *mode)?, common.out.out.clone()),
        Command::TreeCert(c) => (tree_cert(c)?, c.out.out.clone()),
        Command::Dirichlet { common, deleted } => (dirichlet(common, deleted)?, common.out.out.clone()),
        Command::Census { n, mode, workers, out } => (census_cmd(*n, *mode, *workers, out)?, out.out.clone()),
        Command::Sweep {
            n,
            checks,
            workers,
            out,
            format,
            tol,
        } => (sweep_cmd(*n, checks, *workers, out.as_ref(), *format, *tol)?, None),
        Command::Threshold { n, common } => (threshold(*n, common)?, common.out.out.clone()),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((output, path)) => {
            if let Some(p) = path {
                if let Err(e) = fs::write(&p, &output.text) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{}", output.text);
            }
            if output.counterexample {
                eprintln!("COUNTEREXAMPLE reported");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Malformed(m)) => {
            eprintln!("malformed input: {m}");
            ExitCode::from(3)
        }
    }
}
