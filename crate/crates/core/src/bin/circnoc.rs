use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use circnoc::analysis::{
    chip_capacity, cycle_report, efficiency_k, memory_report, resource_usage, route_cycle_count, ChipProfile,
    Resource, ResourceModel,
};
use circnoc::harness::{fuzz_termination, run_experiment, ExperimentConfig, Figure, FuzzConfig, HopLimit, OutputFormat};
use circnoc::routing::{
    build_routing_table, default_hop_limit, AdaptiveMode, Algorithm, LeftSeed, Router, RouterConfig,
};
use circnoc::topology::{
    build_circulant, build_mesh, build_torus, compare_topologies, metrics, to_dot, write_edge_csv, CirculantSpec,
    Graph, SelectionRule,
};
use circnoc::{Error, Result};

#[derive(Parser)]
#[command(name = "circnoc", version, about = "Ring circulant network-on-chip toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a topology and print its metrics or export it.
    Topo(TopoArgs),
    /// Print or save the routing table of a ring circulant.
    Table(TableArgs),
    /// Trace one packet.
    Route(RouteArgs),
    /// Compare circulant, mesh and torus for square grid sides.
    Compare(CompareArgs),
    /// Efficiency criterion K of one or all algorithms.
    Efficiency(EfficiencyArgs),
    /// Wrap counts of shortest routes in a ring circulant.
    Cycles(CyclesArgs),
    /// Memory cost of each routing algorithm.
    Memory(MemoryArgs),
    /// ALM and register estimates for a router count.
    Resources(ResourcesArgs),
    /// Largest router count that fits the chip budget.
    Capacity(CapacityArgs),
    /// Produce a figure dataset.
    Figure(FigureArgs),
    /// Seeded termination fuzzing of all three routers.
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Printed,
    Corrected,
}

#[derive(Args)]
struct ModeArgs {
    /// Left seed used by adaptive routing.
    #[arg(long, value_enum, default_value = "corrected")]
    mode: ModeArg,
    /// Ring wraps adaptive routing considers.
    #[arg(long, default_value_t = AdaptiveMode::MIN_CYCLES)]
    max_cycles: usize,
}

impl ModeArgs {
    fn resolve(&self) -> Result<AdaptiveMode> {
        let seed = match self.mode {
            ModeArg::Printed => LeftSeed::AsPrinted,
            ModeArg::Corrected => LeftSeed::Corrected,
        };
        AdaptiveMode::new(seed, self.max_cycles)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TopologyChoice {
    /// Circulant as N,s1[,s2,...].
    #[arg(long)]
    circulant: Option<String>,
    /// Mesh as RxC.
    #[arg(long)]
    mesh: Option<String>,
    /// Torus as RxC.
    #[arg(long)]
    torus: Option<String>,
}

#[derive(Args)]
struct TopoArgs {
    #[command(flatten)]
    topology: TopologyChoice,
    /// Print diameter and average distance.
    #[arg(long)]
    metrics: bool,
    /// Export format for `--out`: csv (edge list) or dot.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Ring circulant as N,1,s2.
    #[arg(long)]
    circulant: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RouteArgs {
    #[arg(long)]
    circulant: String,
    #[arg(long, default_value = "adaptive")]
    algorithm: String,
    #[arg(long)]
    src: usize,
    #[arg(long)]
    dst: usize,
    #[command(flatten)]
    mode: ModeArgs,
    /// Defaults to 2n.
    #[arg(long)]
    hop_limit: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Grid sides, as a list (3,5,7) or range (3-23).
    #[arg(long, default_value = "3-23")]
    sides: String,
    #[arg(long, default_value = "best_ring")]
    selection: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EfficiencyArgs {
    #[arg(long)]
    circulant: String,
    /// One algorithm; all three when omitted.
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long, default_value_t = 0)]
    source: usize,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args)]
struct CyclesArgs {
    #[arg(long)]
    circulant: String,
    /// Also print the wrap count of every destination.
    #[arg(long)]
    per_destination: bool,
}

#[derive(Args)]
struct MemoryArgs {
    /// Node counts, as a list or range.
    #[arg(long)]
    n: String,
}

#[derive(Args)]
struct ResourcesArgs {
    #[arg(long)]
    routers: usize,
    #[arg(long)]
    algorithm: Option<String>,
}

#[derive(Args)]
struct CapacityArgs {
    #[arg(long)]
    algorithm: Option<String>,
    /// Fraction of the chip available to routers.
    #[arg(long, default_value_t = ChipProfile::CYCLONE_V_5CGXFC9.budget_fraction)]
    budget: f64,
    #[arg(long, default_value_t = ChipProfile::CYCLONE_V_5CGXFC9.alm_total)]
    alms: u64,
    #[arg(long, default_value_t = ChipProfile::CYCLONE_V_5CGXFC9.reg_total)]
    registers: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct FigureArgs {
    /// One of topology_metrics, cycles, efficiency, memory, resources, capacity.
    name: String,
    /// Sweep values, as a list or range; the figure's default when omitted.
    #[arg(long)]
    range: Option<String>,
    #[arg(long, default_value = "best_ring")]
    selection: String,
    #[command(flatten)]
    mode: ModeArgs,
    #[arg(long, default_value_t = ChipProfile::CYCLONE_V_5CGXFC9.budget_fraction)]
    budget: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 5)]
    n_min: usize,
    #[arg(long, default_value_t = 300)]
    n_max: usize,
    /// Hop budget per route as a multiple of n.
    #[arg(long, default_value_t = 2)]
    hop_factor: usize,
    #[command(flatten)]
    mode: ModeArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| invalid(format!("expected a non-negative integer, got {s:?}")))
}

fn parse_circulant(text: &str) -> Result<CirculantSpec> {
    let parts = text.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?;
    match parts.split_first() {
        Some((&n, gens)) if !gens.is_empty() => CirculantSpec::new(n, gens.to_vec()),
        _ => Err(invalid(format!("--circulant expects N,s1[,s2,...], got {text:?}"))),
    }
}

fn parse_ring(text: &str) -> Result<RouterConfig> {
    RouterConfig::try_from(&parse_circulant(text)?)
}

fn parse_dims(text: &str) -> Result<(usize, usize)> {
    match text.split_once(['x', 'X']) {
        Some((r, c)) => Ok((parse_usize(r)?, parse_usize(c)?)),
        None => Err(invalid(format!("expected RxC, got {text:?}"))),
    }
}

/// `a-b` (inclusive) or a comma-separated list.
fn parse_values(text: &str) -> Result<Vec<usize>> {
    if let Some((lo, hi)) = text.split_once('-') {
        let (lo, hi) = (parse_usize(lo)?, parse_usize(hi)?);
        if lo > hi {
            return Err(invalid(format!("empty range {text:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(parse_usize).collect()
}

fn parse_algorithms(text: Option<&str>) -> Result<Vec<Algorithm>> {
    match text {
        Some(a) => Ok(vec![a.parse()?]),
        None => Ok(Algorithm::ALL.to_vec()),
    }
}

fn data_format(format: Option<Format>, default: OutputFormat) -> Result<OutputFormat> {
    match format {
        None => Ok(default),
        Some(Format::Csv) => Ok(OutputFormat::Csv),
        Some(Format::Json) => Ok(OutputFormat::Json),
        Some(Format::Dot) => Err(invalid("dot output only applies to topo")),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Writes to `path` when given, otherwise to stdout.
fn emit(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            write(&mut w)?;
            w.flush().map_err(|source| Error::Io { path: p.to_path_buf(), source })
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)
        }
    }
}

fn io_err(source: io::Error) -> Error {
    Error::Io { path: PathBuf::from("<stdout>"), source }
}

fn build_graph(choice: &TopologyChoice) -> Result<Graph> {
    if let Some(c) = &choice.circulant {
        return Ok(build_circulant(&parse_circulant(c)?));
    }
    if let Some(m) = &choice.mesh {
        let (r, c) = parse_dims(m)?;
        return build_mesh(r, c);
    }
    let (r, c) = parse_dims(choice.torus.as_deref().unwrap_or_default())?;
    build_torus(r, c)
}

fn cmd_topo(args: &TopoArgs) -> Result<()> {
    let graph = build_graph(&args.topology)?;
    println!(
        "{}: {} nodes, {} edges, max degree {}",
        graph.kind().name(),
        graph.n(),
        graph.edge_count(),
        graph.max_degree()
    );
    if args.metrics {
        let m = metrics(&graph)?;
        println!("D = {}", m.diameter);
        println!("L_av = {:.4}", m.avg_distance);
    }
    if let Some(path) = &args.out {
        emit(Some(path), |w| match args.format {
            Format::Dot => w.write_all(to_dot(&graph).as_bytes()).map_err(io_err),
            Format::Csv => write_edge_csv(&graph, w),
            Format::Json => Err(invalid("topo exports csv or dot")),
        })?;
    }
    Ok(())
}

fn cmd_table(args: &TableArgs) -> Result<()> {
    let table = build_routing_table(&parse_ring(&args.circulant)?);
    emit(args.out.as_deref(), |w| table.write_csv(w))?;
    if let Some(path) = &args.out {
        println!("wrote {} entries to {}", table.records().count(), path.display());
    }
    Ok(())
}

fn cmd_route(args: &RouteArgs) -> Result<()> {
    let cfg = parse_ring(&args.circulant)?;
    let algorithm: Algorithm = args.algorithm.parse()?;
    let limit = args.hop_limit.unwrap_or_else(|| default_hop_limit(&cfg));
    let trace = Router::new(algorithm, cfg, args.mode.resolve()?).trace(args.src, args.dst, limit)?;
    match data_format(args.format, OutputFormat::Csv)? {
        OutputFormat::Json => emit(args.out.as_deref(), |w| writeln!(w, "{}", trace.to_json()?).map_err(io_err)),
        OutputFormat::Csv => {
            let path: Vec<String> = trace.nodes.iter().map(ToString::to_string).collect();
            println!("{} {} -> {} in {}: {}", algorithm, args.src, args.dst, cfg, path.join(" -> "));
            println!("hops = {}, cycles = {}", trace.hops, route_cycle_count(&trace, cfg.n()));
            Ok(())
        }
    }
}

fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let rule: SelectionRule = args.selection.parse()?;
    let sides = parse_values(&args.sides)?;
    let rows = compare_topologies(&sides, rule)?;
    if let Some(path) = &args.out {
        let mut cfg = ExperimentConfig::new(Figure::TopologyMetrics);
        cfg.values = sides;
        cfg.selection = rule;
        cfg.format = data_format(Some(args.format), OutputFormat::Csv)?;
        cfg.output = Some(path.clone());
        run_experiment(&cfg)?;
    }
    println!("side  n     circulant          D  L_av     mesh D  L_av     torus D  L_av     redD%  redLav%");
    for r in &rows {
        println!(
            "{:<5} {:<5} {:<18} {:<2} {:<8.4} {:<7} {:<8.4} {:<8} {:<8.4} {:<6.1} {:.1}",
            r.side,
            r.n,
            r.circulant.to_string(),
            r.circulant_metrics.diameter,
            r.circulant_metrics.avg_distance,
            r.mesh.diameter,
            r.mesh.avg_distance,
            r.torus.diameter,
            r.torus.avg_distance,
            r.red_d_vs_mesh,
            r.red_lav_vs_mesh
        );
    }
    Ok(())
}

fn cmd_efficiency(args: &EfficiencyArgs) -> Result<()> {
    let cfg = parse_ring(&args.circulant)?;
    let mode = args.mode.resolve()?;
    for alg in parse_algorithms(args.algorithm.as_deref())? {
        let r = efficiency_k(&cfg, alg, &mode, args.source)?;
        println!("{alg}: K = {:.6} ({} / {} hops)", r.k, r.hops_algorithm, r.hops_oracle);
    }
    Ok(())
}

fn cmd_cycles(args: &CyclesArgs) -> Result<()> {
    let report = cycle_report(&parse_ring(&args.circulant)?);
    println!("max cycles = {}", report.max_cycles);
    if args.per_destination {
        for (dst, m) in report.per_destination.iter().enumerate().skip(1) {
            println!("{dst} {m}");
        }
    }
    Ok(())
}

fn cmd_memory(args: &MemoryArgs) -> Result<()> {
    println!("n payload_bits table_bits clockwise_bits adaptive_bits");
    for n in parse_values(&args.n)? {
        let m = memory_report(n)?;
        println!("{} {} {} {} {}", m.n, m.payload_bits, m.table_bits, m.clockwise_bits, m.adaptive_bits);
    }
    Ok(())
}

fn cmd_resources(args: &ResourcesArgs) -> Result<()> {
    let model = ResourceModel::CYCLONE_V;
    for alg in parse_algorithms(args.algorithm.as_deref())? {
        let alm = resource_usage(&model, alg, Resource::Alm, args.routers)?;
        let reg = resource_usage(&model, alg, Resource::Register, args.routers)?;
        println!("{alg}: {alm:.1} ALMs, {reg:.1} registers for {} routers", args.routers);
    }
    Ok(())
}

fn cmd_capacity(args: &CapacityArgs) -> Result<()> {
    let profile = ChipProfile::new(args.alms, args.registers, args.budget)?;
    let json = data_format(args.format, OutputFormat::Csv)? == OutputFormat::Json;
    for alg in parse_algorithms(args.algorithm.as_deref())? {
        let r = chip_capacity(&ResourceModel::CYCLONE_V, alg, &profile)?;
        if json {
            println!("{}", r.to_json()?);
            continue;
        }
        println!("{alg}: {} routers ({} binds)", r.max_routers, r.binding_resource.as_str());
        if let Some(d) = &r.diagnostic {
            println!("  {d}");
        }
    }
    Ok(())
}

fn cmd_figure(args: &FigureArgs) -> Result<()> {
    let figure: Figure = args.name.parse()?;
    let mut cfg = ExperimentConfig::new(figure);
    if let Some(r) = &args.range {
        cfg.values = parse_values(r)?;
    }
    cfg.selection = args.selection.parse()?;
    cfg.mode = args.mode.resolve()?;
    cfg.profile = cfg.profile.with_budget(args.budget)?;
    cfg.format = data_format(args.format, cfg.format)?;
    cfg.output = args.out.clone();
    let out = run_experiment(&cfg)?;
    if args.out.is_none() {
        let stdout = io::stdout();
        out.dataset.write(cfg.format, stdout.lock())?;
    } else {
        println!("{}: {} rows", figure, out.dataset.len());
    }
    for note in &out.notes {
        eprintln!("note: {note}");
    }
    Ok(())
}

fn cmd_fuzz(args: &FuzzArgs) -> Result<()> {
    let config = FuzzConfig {
        seed: args.seed,
        trials: args.trials,
        n_min: args.n_min,
        n_max: args.n_max,
        hop_limit: HopLimit::PerNode(args.hop_factor),
        mode: args.mode.resolve()?,
    };
    let report = fuzz_termination(&config)?;
    if let Some(path) = &args.out {
        emit(Some(path), |w| w.write_all(report.to_json()?.as_bytes()).map_err(io_err))?;
    }
    println!(
        "{} trials, {} failures, max hops {}",
        config.trials,
        report.failures.len(),
        report.max_hops
    );
    for f in &report.failures {
        println!("  {}", f.error);
    }
    if report.passed() {
        Ok(())
    } else {
        Err(invalid(format!("{} routes exceeded the hop limit", report.failures.len())))
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Topo(a) => cmd_topo(a),
        Command::Table(a) => cmd_table(a),
        Command::Route(a) => cmd_route(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Efficiency(a) => cmd_efficiency(a),
        Command::Cycles(a) => cmd_cycles(a),
        Command::Memory(a) => cmd_memory(a),
        Command::Resources(a) => cmd_resources(a),
        Command::Capacity(a) => cmd_capacity(a),
        Command::Figure(a) => cmd_figure(a),
        Command::Fuzz(a) => cmd_fuzz(a),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("CIRCNOC_THREADS") else {
        return Ok(());
    };
    let threads = parse_usize(&value).ok().filter(|&t| t > 0);
    let threads = threads.ok_or_else(|| invalid(format!("CIRCNOC_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| invalid(format!("thread pool: {e}")))
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
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
