//! Command-line interface: exact width computations, linked layouts, full
//! sets, linking certificates, pivots, obstruction search, and the formula
//! constants, with reproducible manifest-bearing output.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use widthlab::connfn::{self, Layout};
use widthlab::error::Error;
use widthlab::ffla::{Matrix, Subspace};
use widthlab::fullset::{full_set_from, full_set_to_json, SubspaceArrangement};
use widthlab::graph::{
    linking_pivot_minor, min_cut_rank_between, strong_linking_graph_check, Graph,
};
use widthlab::linking;
use widthlab::matroid::Configuration;
use widthlab::obstruct::{self, bounds, reenact};

#[derive(Parser)]
#[command(
    name = "widthlab",
    version,
    about = "Exact width parameters, linked layouts, and obstruction certificates for small represented matroids and graphs"
)]
struct Cli {
    /// Exhaustive-search budget on ground-set size.
    #[arg(long, default_value_t = connfn::DEFAULT_LAYOUT_BUDGET, global = true)]
    budget_n: usize,
    /// Worker threads for searches.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    /// Seed recorded in the manifest and used by any randomized option.
    #[arg(long, default_value_t = 673_901, global = true)]
    seed: u64,
    /// Field GF(p^m) as two integers `p m`; used by `bounds` and validated
    /// by the matroid obstruction search.
    #[arg(long, num_args = 2, value_names = ["P", "M"], global = true)]
    field: Option<Vec<u64>>,
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Path-width of a configuration file, with a witness layout.
    Pathwidth(ConfigInput),
    /// Linear rank-width of a graph, with a witness layout.
    Lrw(GraphInput),
    /// Verify a layout is linked, or find a linked optimal layout.
    Linked(LinkedArgs),
    /// Full set of a configuration or graph arrangement as JSON.
    Fullset(FullsetArgs),
    /// Linking certificate between two disjoint label or vertex sets.
    Link(LinkArgs),
    /// Apply a pivot sequence to a graph.
    Pivot(PivotArgs),
    /// Search for excluded minors or excluded pivot-minors.
    Obstruct(ObstructArgs),
    /// Exact formula constants for a width and field order.
    Bounds(BoundsArgs),
    /// Reenact the shrinking pipeline on a configuration.
    Reenact(ReenactArgs),
}

#[derive(Args)]
struct ConfigInput {
    /// Configuration file: matrix text format plus a `labels` line.
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct GraphInput {
    /// graph6 string.
    #[arg(long, conflicts_with = "file")]
    graph6: Option<String>,
    /// File containing either one graph6 line or the adjacency text format.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct LinkedArgs {
    #[command(flatten)]
    config: MixedInput,
    /// Comma-separated layout to verify; omitted to search for one.
    #[arg(long)]
    layout: Option<String>,
}

#[derive(Args)]
struct MixedInput {
    #[arg(long, conflicts_with_all = ["graph6", "graph_file"])]
    config: Option<PathBuf>,
    #[arg(long)]
    graph6: Option<String>,
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

#[derive(Args)]
struct FullsetArgs {
    #[command(flatten)]
    input: MixedInput,
    #[arg(long)]
    k: u32,
    /// Matrix file whose rows span the base space; default is the zero space.
    #[arg(long)]
    base: Option<PathBuf>,
}

#[derive(Args)]
struct LinkArgs {
    #[command(flatten)]
    input: MixedInput,
    /// Comma-separated labels (or 1-based vertices) of the first side.
    #[arg(long)]
    side_s: String,
    /// Comma-separated labels (or 1-based vertices) of the second side.
    #[arg(long)]
    side_t: String,
}

#[derive(Args)]
struct PivotArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Pivot sequence as comma-separated `u-v` pairs of 1-based vertices.
    #[arg(long)]
    pairs: String,
}

#[derive(Args)]
struct ObstructArgs {
    /// `graph` or `matroid`.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    k: u32,
    /// Largest object size to enumerate.
    #[arg(long)]
    max_n: usize,
    /// Ambient dimension for the matroid enumeration.
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Directory for the certificate database; omitted to print a summary.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Shuffle the candidate order (output is identical; used to revalidate).
    #[arg(long)]
    shuffle_seed: Option<u64>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Repeat count for an extra threshold line.
    #[arg(long)]
    ell: Option<u64>,
    /// Height for the extra threshold line.
    #[arg(long, default_value_t = 0)]
    height: u32,
}

#[derive(Args)]
struct ReenactArgs {
    #[command(flatten)]
    config: ConfigInput,
    #[arg(long)]
    k: u32,
    /// Repeat count handed to the cut finder.
    #[arg(long, default_value_t = 4)]
    count: usize,
}

#[derive(Serialize, Clone)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize, Clone)]
struct Manifest {
    tool: String,
    version: String,
    subcommand: String,
    inputs: Vec<InputDigest>,
    budget_n: usize,
    seed: u64,
}

impl Manifest {
    fn new(cli: &Cli, subcommand: &str) -> Manifest {
        Manifest {
            tool: "widthlab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            inputs: Vec::new(),
            budget_n: cli.budget_n,
            seed: cli.seed,
        }
    }

    fn record(&mut self, path: &Path, contents: &str) {
        let mut h = Sha256::new();
        h.update(contents.as_bytes());
        let digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: digest,
        });
    }
}

fn read_input(path: &Path, manifest: &mut Manifest) -> Result<String, Error> {
    let contents = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    manifest.record(path, &contents);
    Ok(contents)
}

fn load_config(path: &Path, manifest: &mut Manifest) -> Result<Configuration, Error> {
    Configuration::parse_text(&read_input(path, manifest)?)
}

fn load_graph(input: &GraphInput, manifest: &mut Manifest) -> Result<Graph, Error> {
    match (&input.graph6, &input.file) {
        (Some(s), _) => Graph::from_graph6(s),
        (None, Some(path)) => {
            let text = read_input(path, manifest)?;
            let first = text.lines().next().unwrap_or("").trim();
            if first.chars().all(|c| c.is_ascii_digit()) {
                Graph::parse_adjacency(&text)
            } else {
                Graph::from_graph6(first)
            }
        }
        (None, None) => Err(Error::Precondition(
            "no graph given; use --graph6 or --file".into(),
        )),
    }
}

fn load_mixed(input: &MixedInput, manifest: &mut Manifest) -> Result<ObjectUnderStudy, Error> {
    if let Some(path) = &input.config {
        return Ok(ObjectUnderStudy::Matroid(load_config(path, manifest)?));
    }
    if input.graph6.is_none() && input.graph_file.is_none() {
        return Err(Error::Precondition(
            "no input given; use --config, --graph6, or --graph-file".into(),
        ));
    }
    let gi = GraphInput {
        graph6: input.graph6.clone(),
        file: input.graph_file.clone(),
    };
    Ok(ObjectUnderStudy::Graph(load_graph(&gi, manifest)?))
}

enum ObjectUnderStudy {
    Matroid(Configuration),
    Graph(Graph),
}

fn parse_list(raw: &str) -> Vec<String> {
    raw.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn vertex_mask(g: &Graph, raw: &str) -> Result<u64, Error> {
    let mut mask = 0u64;
    for item in parse_list(raw) {
        let v: usize = item
            .parse()
            .map_err(|_| Error::Precondition(format!("bad vertex `{item}`")))?;
        if v == 0 || v > g.n() {
            return Err(Error::Precondition(format!(
                "vertex {v} out of range 1..={}",
                g.n()
            )));
        }
        mask |= 1 << (v - 1);
    }
    Ok(mask)
}

fn emit(cli: &Cli, manifest: &Manifest, human: String, result: serde_json::Value) {
    if cli.json {
        let doc = json!({ "manifest": manifest, "result": result });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    } else {
        println!("{human}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Pathwidth(args) => {
            let mut manifest = Manifest::new(cli, "pathwidth");
            let a = load_config(&args.config, &mut manifest)?;
            let f = a.lambda_fn()?;
            let (w, layout) = connfn::path_width_budget(&f, cli.budget_n)?;
            let names: Vec<String> = layout.0.iter().map(|&i| a.labels()[i].clone()).collect();
            emit(
                cli,
                &manifest,
                format!("path-width: {w}\nlayout: {}", names.join(",")),
                json!({ "width": w, "layout": names }),
            );
            Ok(())
        }
        Command::Lrw(args) => {
            let mut manifest = Manifest::new(cli, "lrw");
            let g = load_graph(args, &mut manifest)?;
            let (w, layout) = g.linear_rank_width_budget(cli.budget_n)?;
            let names: Vec<String> = layout.0.iter().map(|&i| (i + 1).to_string()).collect();
            emit(
                cli,
                &manifest,
                format!("linear rank-width: {w}\nlayout: {}", names.join(",")),
                json!({ "width": w, "layout": names }),
            );
            Ok(())
        }
        Command::Linked(args) => run_linked(cli, args),
        Command::Fullset(args) => run_fullset(cli, args),
        Command::Link(args) => run_link(cli, args),
        Command::Pivot(args) => run_pivot(cli, args),
        Command::Obstruct(args) => run_obstruct(cli, args),
        Command::Bounds(args) => run_bounds(cli, args),
        Command::Reenact(args) => run_reenact(cli, args),
    }
}

fn conn_fn_of(object: &ObjectUnderStudy) -> Result<(connfn::ConnFn, Vec<String>), Error> {
    match object {
        ObjectUnderStudy::Matroid(a) => Ok((a.lambda_fn()?, a.labels().to_vec())),
        ObjectUnderStudy::Graph(g) => {
            let labels = (1..=g.n()).map(|i| i.to_string()).collect();
            Ok((g.cut_rank_fn()?, labels))
        }
    }
}

fn run_linked(cli: &Cli, args: &LinkedArgs) -> Result<(), Error> {
    let mut manifest = Manifest::new(cli, "linked");
    let object = load_mixed(&args.config, &mut manifest)?;
    let (f, labels) = conn_fn_of(&object)?;
    match &args.layout {
        Some(raw) => {
            let wanted = parse_list(raw);
            let order: Vec<usize> = wanted
                .iter()
                .map(|name| {
                    labels
                        .iter()
                        .position(|l| l == name)
                        .ok_or_else(|| Error::UnknownLabel(name.clone()))
                })
                .collect::<Result<_, _>>()?;
            let layout = Layout::new(order);
            let linked = connfn::is_linked(&f, &layout)?;
            let w = connfn::width(&f, &layout)?;
            emit(
                cli,
                &manifest,
                format!("linked: {linked}\nwidth: {w}"),
                json!({ "linked": linked, "width": w }),
            );
        }
        None => {
            let layout = connfn::find_linked_optimal_budget(&f, cli.budget_n)?;
            let w = connfn::width(&f, &layout)?;
            let names: Vec<String> = layout.0.iter().map(|&i| labels[i].clone()).collect();
            emit(
                cli,
                &manifest,
                format!("width: {w}\nlinked layout: {}", names.join(",")),
                json!({ "width": w, "layout": names, "linked": true }),
            );
        }
    }
    Ok(())
}

fn run_fullset(cli: &Cli, args: &FullsetArgs) -> Result<(), Error> {
    let mut manifest = Manifest::new(cli, "fullset");
    let object = load_mixed(&args.input, &mut manifest)?;
    let arrangement = match &object {
        ObjectUnderStudy::Matroid(a) => SubspaceArrangement::from_configuration(a),
        ObjectUnderStudy::Graph(g) => g.arrangement_of(),
    };
    let base = match &args.base {
        Some(path) => {
            let m = Matrix::parse_text(&read_input(path, &mut manifest)?)?;
            if *m.field() != *arrangement.field() || m.cols() != arrangement.ambient() {
                return Err(Error::DimensionMismatch(
                    "base space does not match the ambient space".into(),
                ));
            }
            Subspace::from_matrix_rows(&m)
        }
        None => Subspace::zero(arrangement.field().clone(), arrangement.ambient()),
    };
    let realizable = arrangement.realizable(&base, cli.budget_n)?;
    let fs = full_set_from(&realizable, args.k)?;
    let listing = serde_json::to_string(&full_set_to_json(&fs)).expect("serializable");
    emit(
        cli,
        &manifest,
        format!("full set size: {}\n{listing}", fs.len()),
        json!({
            "k": args.k,
            "base_dim": base.dim(),
            "size": fs.len(),
            "trajectories": full_set_to_json(&fs),
        }),
    );
    Ok(())
}

fn run_link(cli: &Cli, args: &LinkArgs) -> Result<(), Error> {
    let mut manifest = Manifest::new(cli, "link");
    match load_mixed(&args.input, &mut manifest)? {
        ObjectUnderStudy::Matroid(a) => {
            let s: BTreeSet<String> = parse_list(&args.side_s).into_iter().collect();
            let t: BTreeSet<String> = parse_list(&args.side_t).into_iter().collect();
            let min = linking::min_connectivity(&a, &s, &t)?;
            let witness = linking::linking_minor(&a, &s, &t)?;
            let report = linking::strong_linking_check(
                &a,
                &s,
                &t,
                &witness.spec.contract,
                &witness.spec.delete,
                &min.argmin,
                &min.argmin,
            )?;
            emit(
                cli,
                &manifest,
                format!(
                    "k: {}\nargmin: {:?}\ncontract: {:?}\ndelete: {:?}\nchecks: applicable={} i={} ii={} iii={} iv={}",
                    min.value,
                    min.argmin,
                    witness.spec.contract,
                    witness.spec.delete,
                    report.applicable,
                    report.cond_i,
                    report.cond_ii,
                    report.cond_iii,
                    report.cond_iv
                ),
                json!({
                    "k": min.value,
                    "argmin": min.argmin,
                    "contract": witness.spec.contract,
                    "delete": witness.spec.delete,
                    "achieved": witness.achieved,
                    "checks": {
                        "applicable": report.applicable,
                        "i": report.cond_i,
                        "ii": report.cond_ii,
                        "iii": report.cond_iii,
                        "iv": report.cond_iv,
                    },
                }),
            );
        }
        ObjectUnderStudy::Graph(g) => {
            let s = vertex_mask(&g, &args.side_s)?;
            let t = vertex_mask(&g, &args.side_t)?;
            let (value, argmin) = min_cut_rank_between(&g, s, t)?;
            let witness = linking_pivot_minor(&g, s, t)?;
            let member = &g.pivot_orbit()?[witness.orbit_index];
            let report = strong_linking_graph_check(member, s, t, argmin, argmin)?;
            let argmin_list: Vec<usize> = (0..g.n())
                .filter(|&v| argmin >> v & 1 == 1)
                .map(|v| v + 1)
                .collect();
            emit(
                cli,
                &manifest,
                format!(
                    "k: {value}\nargmin: {argmin_list:?}\nminor: {}\norbit index: {}\nchecks: applicable={} i={} ii={} iii={} iv={}",
                    witness.minor.to_graph6(),
                    witness.orbit_index,
                    report.applicable,
                    report.cond_i,
                    report.cond_ii,
                    report.cond_iii,
                    report.cond_iv
                ),
                json!({
                    "k": value,
                    "argmin": argmin_list,
                    "minor_graph6": witness.minor.to_graph6(),
                    "minor_vertices": witness.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "orbit_index": witness.orbit_index,
                    "checks": {
                        "applicable": report.applicable,
                        "i": report.cond_i,
                        "ii": report.cond_ii,
                        "iii": report.cond_iii,
                        "iv": report.cond_iv,
                    },
                }),
            );
        }
    }
    Ok(())
}

fn run_pivot(cli: &Cli, args: &PivotArgs) -> Result<(), Error> {
    let mut manifest = Manifest::new(cli, "pivot");
    let mut g = load_graph(&args.input, &mut manifest)?;
    for pair in parse_list(&args.pairs) {
        let Some((u, v)) = pair.split_once('-') else {
            return Err(Error::Precondition(format!(
                "bad pivot pair `{pair}`; use u-v"
            )));
        };
        let pu: usize = u
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad vertex `{u}`")))?;
        let pv: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("bad vertex `{v}`")))?;
        if pu == 0 || pv == 0 || pu > g.n() || pv > g.n() {
            return Err(Error::Precondition(format!(
                "pivot pair {pu}-{pv} out of range"
            )));
        }
        g = g.pivot(pu - 1, pv - 1)?;
    }
    emit(
        cli,
        &manifest,
        g.to_graph6(),
        json!({ "graph6": g.to_graph6(), "edges": g.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect::<Vec<_>>() }),
    );
    Ok(())
}

/// The field order selected by `--field p m`, when present.
fn field_order(cli: &Cli) -> Result<Option<u64>, Error> {
    match &cli.field {
        None => Ok(None),
        Some(pm) if pm.len() == 2 => {
            let q = pm[0]
                .checked_pow(pm[1] as u32)
                .ok_or_else(|| Error::Precondition("field order overflows".into()))?;
            Ok(Some(q))
        }
        Some(_) => Err(Error::Precondition(
            "--field takes exactly two integers".into(),
        )),
    }
}

fn run_obstruct(cli: &Cli, args: &ObstructArgs) -> Result<(), Error> {
    let manifest = Manifest::new(cli, "obstruct");
    let options = obstruct::SearchOptions {
        workers: cli.workers,
        shuffle_seed: args.shuffle_seed,
    };
    if let Some(q) = field_order(cli)? {
        if args.kind == "matroid" && q != 2 {
            return Err(Error::budget("matroid search field order", q as usize, 2));
        }
    }
    let certs = match args.kind.as_str() {
        "graph" => obstruct::search_graph_obstructions(args.k, args.max_n, &options)?,
        "matroid" => obstruct::search_matroid_obstructions(args.k, args.max_n, args.dim, &options)?,
        other => {
            return Err(Error::Precondition(format!(
                "unknown kind `{other}`; use graph or matroid"
            )))
        }
    };
    let manifest_json = serde_json::to_string(&manifest).expect("serializable");
    let mut summary = String::new();
    summary.push_str(&format!("# manifest: {manifest_json}\n"));
    summary.push_str("object\tk\tsize\twidth\tsha256\n");
    for cert in &certs {
        let object = match &cert.kind {
            obstruct::ObjectKind::Graph { graph6 } => graph6.clone(),
            obstruct::ObjectKind::Matroid { text } => text.replace('\n', ";"),
        };
        summary.push_str(&format!(
            "{object}\t{}\t{}\t{}\t{}\n",
            cert.k,
            cert.object_size(),
            cert.width,
            cert.transcript_sha256
        ));
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Precondition(format!("cannot create {}: {e}", dir.display())))?;
        for cert in &certs {
            let doc = json!({ "manifest": &manifest, "certificate": cert.to_json() });
            let path = dir.join(format!("{}.json", cert.transcript_sha256));
            fs::write(
                &path,
                serde_json::to_string_pretty(&doc).expect("serializable"),
            )
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
        }
        let path = dir.join("summary.tsv");
        fs::write(&path, &summary)
            .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    if cli.json {
        let doc = json!({
            "manifest": &manifest,
            "result": { "count": certs.len(), "certificates": certs.iter().map(|c| c.to_json()).collect::<Vec<_>>() },
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    } else {
        print!("{summary}");
        println!("{} certificate(s)", certs.len());
    }
    Ok(())
}

fn run_bounds(cli: &Cli, args: &BoundsArgs) -> Result<(), Error> {
    let manifest = Manifest::new(cli, "bounds");
    let q = field_order(cli)?.unwrap_or(args.q);
    let constants = bounds::bound_constants(args.k, q)?;
    let trajectory_bound = bounds::compact_trajectory_bound(args.k + 1, args.k, q);
    let mut lines = vec![
        format!(
            "compact trajectory bound (theta={}): {trajectory_bound}",
            args.k + 1
        ),
        format!("matroid pigeonhole count: {}", constants.matroid_count),
        format!("graph pigeonhole count: {}", constants.graph_count),
    ];
    let mut thresholds = Vec::new();
    for ell in [4u64, 5] {
        for h in [0, args.k + 1] {
            let t = bounds::repeat_length_threshold(&ell.into(), h)?;
            lines.push(format!("repeat threshold (count={ell}, height={h}): {t}"));
            thresholds.push(json!({ "count": ell, "height": h, "threshold": t.to_string() }));
        }
    }
    if let Some(ell) = args.ell {
        let t = bounds::repeat_length_threshold(&ell.into(), args.height)?;
        lines.push(format!(
            "repeat threshold (count={ell}, height={}): {t}",
            args.height
        ));
        thresholds.push(json!({ "count": ell, "height": args.height, "threshold": t.to_string() }));
    }
    emit(
        cli,
        &manifest,
        lines.join("\n"),
        json!({
            "k": args.k,
            "q": q,
            "compact_trajectory_bound": trajectory_bound.to_string(),
            "matroid_pigeonhole_count": constants.matroid_count.to_string(),
            "graph_pigeonhole_count": constants.graph_count.to_string(),
            "thresholds": thresholds,
        }),
    );
    Ok(())
}

fn run_reenact(cli: &Cli, args: &ReenactArgs) -> Result<(), Error> {
    let mut manifest = Manifest::new(cli, "reenact");
    let a = load_config(&args.config.config, &mut manifest)?;
    let report = reenact::reenact_main_pipeline(&a, args.k, args.count)?;
    let mut lines = Vec::new();
    for step in &report.steps {
        lines.push(format!(
            "[{}] {} — {}",
            if !step.fired {
                "skip"
            } else if step.ok {
                "ok"
            } else {
                "FAIL"
            },
            step.name,
            step.detail
        ));
    }
    lines.push(format!(
        "vacuous: {}, all checks passed: {}",
        report.vacuous, report.all_checks_passed
    ));
    emit(cli, &manifest, lines.join("\n"), report.to_json());
    Ok(())
}
