mod spec;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use modlex::io::{emit_dot, emit_edge_list, partition_dot, product_dot, quotient_dot, sha256_hex, Dataset, DotOptions};
use modlex::{
    cartesian_dp_construct, cartesian_product, construct_product_dp_certificate, generalized_lex_product, is_dp,
    is_isometric, isometry_transfer_check, maximal_modular_partition, minimal_quotient, ndp_set,
    probe_cartesian_dp_conjecture, quotient, sdp_order, thm2_check_with, Budget, DpCertificate, Error, Graph,
    GraphFamily, SdpOrder, SearchOptions, VertexSubset,
};
use serde::Serialize;
use serde_json::{json, Value};

use spec::{dataset, graph_spec, id_list, read_edge_list, CliError, Loaded};

#[derive(Parser)]
#[command(name = "modlex", version, about = "Modular decomposition and distance-preserving graphs")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Wall-clock budget for the exponential searches; exceeding it exits with 4.
    #[arg(long, global = true, env = "MODLEX_BUDGET_MS")]
    time_budget_ms: Option<u64>,
    /// Largest order the exhaustive subset fallback may enumerate.
    #[arg(long, global = true)]
    max_subset_size: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Edge-list file, `-` for stdin.
    #[arg(long, short, conflicts_with = "dataset")]
    input: Option<String>,
    /// Bundled dataset: fig1, fig2, fig3, fig3-quotient.
    #[arg(long, short)]
    dataset: Option<String>,
}

#[derive(Args, Clone)]
struct Family {
    #[command(flatten)]
    base: Input,
    /// Component graph for each base vertex, in order (K3, C5, P4, E2, a dataset or a file).
    #[arg(long = "component", conflicts_with = "uniform")]
    components: Vec<String>,
    /// One component graph for every base vertex.
    #[arg(long)]
    uniform: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the graph is distance preserving; exit 1 if not.
    CheckDp(Input),
    /// Decide whether the graph is sequentially distance preserving; exit 1 if not.
    CheckSdp(Input),
    /// Orders with no isometric subgraph, with a witness for every other order.
    Ndp(Input),
    /// Maximal modular partition.
    Modules(Input),
    /// Quotient by a given modular partition.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// One part as comma-separated ids; repeat for every part.
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
    },
    /// Minimal quotient graph.
    Minquotient(Input),
    /// Generalised lexicographic product, with the dp verdict from the base.
    Lexprod {
        #[command(flatten)]
        family: Family,
        /// Print the product as an edge list instead of JSON.
        #[arg(long)]
        raw: bool,
        /// Print the product as DOT with `(u,x)` labels.
        #[arg(long, conflicts_with = "raw")]
        dot: bool,
    },
    /// Cartesian product with a second graph.
    Cartprod {
        #[command(flatten)]
        input: Input,
        /// Right factor (K3, C5, P4, E2, a dataset or a file).
        #[arg(long)]
        with: String,
        #[arg(long)]
        raw: bool,
        #[arg(long, conflicts_with = "raw")]
        dot: bool,
    },
    /// Isometry of a product subset, decided through its projection and directly.
    TransferCheck {
        #[command(flatten)]
        family: Family,
        /// Product vertex ids, comma-separated.
        #[arg(long)]
        subset: String,
    },
    /// Re-verify a certificate, or probe the dp conjecture for Cartesian products.
    Verify {
        #[command(flatten)]
        input: Input,
        /// JSON file holding a certificate (or a full output of this tool).
        #[arg(long, required_unless_present = "conjecture_cartesian_dp")]
        certificate: Option<String>,
        /// Look for dp graphs G, H with G x H not dp. Experimental; reports only.
        #[arg(long)]
        conjecture_cartesian_dp: bool,
        /// Largest factor order for the probe.
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Graphviz rendering.
    ExportDot {
        #[command(flatten)]
        input: Input,
        /// Cluster the vertices by the maximal modular partition.
        #[arg(long)]
        partition: bool,
        /// Render the minimal quotient instead of the graph.
        #[arg(long, conflicts_with = "partition")]
        quotient: bool,
        /// Print DOT instead of JSON.
        #[arg(long)]
        raw: bool,
    },
    /// Show a bundled dataset.
    Dataset {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Print the shipped edge list.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Serialize)]
struct Output {
    command: &'static str,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    ndp: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    indeterminate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
    timing: Timing,
}

#[derive(Serialize)]
struct Timing {
    elapsed_ms: f64,
}

impl Output {
    fn new(command: &'static str, result: Value) -> Self {
        Output {
            command,
            result,
            ndp: None,
            certificate: None,
            indeterminate: None,
            error: None,
            warnings: Vec::new(),
            timing: Timing { elapsed_ms: 0.0 },
        }
    }
}

/// What a subcommand produced: JSON plus the exit code, or raw text.
enum Report {
    Json(Output, u8),
    Raw(String),
}

struct Ctx {
    opts: SearchOptions,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budget = Budget::unlimited();
    if let Some(ms) = cli.time_budget_ms {
        budget = budget.with_time_limit(Duration::from_millis(ms));
    }
    let opts = SearchOptions { budget, max_subset_size: cli.max_subset_size, ..SearchOptions::default() };
    let ctx = Ctx { opts };
    let name = command_name(&cli.command);
    let start = Instant::now();
    let (mut out, code) = match run(&ctx, cli.command) {
        Ok(Report::Raw(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Ok(Report::Json(out, code)) => (out, code),
        Err(e) => {
            eprintln!("modlex {name}: {e}");
            let mut out = Output::new(name, Value::Null);
            out.error = Some(e.to_string());
            if matches!(e, CliError::Lib(Error::BudgetExceeded)) {
                out.indeterminate = Some(true);
            }
            (out, e.exit_code() as u8)
        }
    };
    out.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let text = if cli.pretty { serde_json::to_string_pretty(&out) } else { serde_json::to_string(&out) };
    println!("{}", text.expect("output serialises"));
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckDp(_) => "check-dp",
        Command::CheckSdp(_) => "check-sdp",
        Command::Ndp(_) => "ndp",
        Command::Modules(_) => "modules",
        Command::Quotient { .. } => "quotient",
        Command::Minquotient(_) => "minquotient",
        Command::Lexprod { .. } => "lexprod",
        Command::Cartprod { .. } => "cartprod",
        Command::TransferCheck { .. } => "transfer-check",
        Command::Verify { .. } => "verify",
        Command::ExportDot { .. } => "export-dot",
        Command::Dataset { .. } => "dataset",
    }
}

fn load(input: &Input) -> Result<Loaded, CliError> {
    match (&input.input, &input.dataset) {
        (Some(path), None) => read_edge_list(path),
        (None, Some(name)) => Ok(Loaded { graph: dataset(name)?, warnings: Vec::new() }),
        _ => Err(CliError::Usage("give exactly one of --input or --dataset".into())),
    }
}

fn load_family(f: &Family) -> Result<(GraphFamily, Vec<String>), CliError> {
    let base = load(&f.base)?;
    let mut warnings = base.warnings;
    let n = base.graph.vertex_count();
    let comps = match (&f.uniform, f.components.is_empty()) {
        (Some(spec), _) => {
            let h = graph_spec(spec)?;
            warnings.extend(h.warnings);
            vec![h.graph; n]
        }
        (None, false) => {
            let mut comps = Vec::with_capacity(f.components.len());
            for spec in &f.components {
                let h = graph_spec(spec)?;
                warnings.extend(h.warnings);
                comps.push(h.graph);
            }
            comps
        }
        (None, true) => return Err(CliError::Usage("give --uniform or one --component per base vertex".into())),
    };
    Ok((GraphFamily::new(base.graph, comps)?, warnings))
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.vertex_count(), "edges": g.edges() })
}

fn dp_certificate_json(cert: &DpCertificate) -> Value {
    json!({ "kind": "dp", "witnesses": cert.witnesses() })
}

fn sdp_certificate_json(order: &SdpOrder) -> Value {
    json!({ "kind": "sdp", "order": order.order() })
}

fn run(ctx: &Ctx, command: Command) -> Result<Report, CliError> {
    let name = command_name(&command);
    match command {
        Command::CheckDp(input) => {
            let loaded = load(&input)?;
            let verdict = is_dp(&loaded.graph, &ctx.opts)?;
            let mut out = Output::new(name, json!(verdict.is_dp()));
            out.ndp = Some(verdict.report.ndp().to_vec());
            out.certificate = verdict.certificate.as_ref().map(dp_certificate_json);
            out.warnings = loaded.warnings;
            let code = if verdict.is_dp() { 0 } else { 1 };
            Ok(Report::Json(out, code))
        }
        Command::CheckSdp(input) => {
            let loaded = load(&input)?;
            let order = sdp_order(&loaded.graph, &ctx.opts)?;
            let mut out = Output::new(name, json!(order.is_some()));
            out.certificate = order.as_ref().map(sdp_certificate_json);
            out.warnings = loaded.warnings;
            let code = if order.is_some() { 0 } else { 1 };
            Ok(Report::Json(out, code))
        }
        Command::Ndp(input) => {
            let loaded = load(&input)?;
            let report = ndp_set(&loaded.graph, &ctx.opts)?;
            let witnesses: Vec<Option<&VertexSubset>> =
                (1..=loaded.graph.vertex_count()).map(|k| report.witness(k)).collect();
            let mut out = Output::new(name, json!({ "ndp": report.ndp(), "is_dp": report.is_dp() }));
            out.ndp = Some(report.ndp().to_vec());
            out.certificate = Some(json!({ "kind": "witnesses", "witnesses": witnesses }));
            out.warnings = loaded.warnings;
            Ok(Report::Json(out, 0))
        }
        Command::Modules(input) => {
            let loaded = load(&input)?;
            let part = maximal_modular_partition(&loaded.graph)?;
            let mut out = Output::new(name, json!({ "parts": part.parts(), "k2_case": part.k2_case() }));
            out.warnings = loaded.warnings;
            Ok(Report::Json(out, 0))
        }
        Command::Quotient { input, parts } => {
            let loaded = load(&input)?;
            let g = &loaded.graph;
            let subsets = parts
                .iter()
                .map(|p| Ok(VertexSubset::new(g, id_list(p)?)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            let q = quotient(g, &subsets)?;
            let mut out = Output::new(
                name,
                json!({ "graph": graph_json(&q.graph), "parts": q.parts, "part_of": q.part_of }),
            );
            out.warnings = loaded.warnings;
            Ok(Report::Json(out, 0))
        }
        Command::Minquotient(input) => {
            let loaded = load(&input)?;
            let part = maximal_modular_partition(&loaded.graph)?;
            let q = part.quotient();
            let mut out = Output::new(
                name,
                json!({
                    "graph": graph_json(&q.graph),
                    "parts": q.parts,
                    "part_of": q.part_of,
                    "k2_case": part.k2_case(),
                }),
            );
            out.warnings = loaded.warnings;
            Ok(Report::Json(out, 0))
        }
        Command::Lexprod { family, raw, dot } => {
            let (fam, warnings) = load_family(&family)?;
            let p = generalized_lex_product(&fam)?;
            if raw {
                return Ok(Report::Raw(emit_edge_list(p.graph())));
            }
            if dot {
                return Ok(Report::Raw(product_dot(&p)));
            }
            let mut result = json!({ "graph": graph_json(p.graph()), "pairs": p.pairs() });
            let mut out = Output::new(name, Value::Null);
            if fam.base().vertex_count() >= 2 {
                let report = ndp_set(fam.base(), &ctx.opts)?;
                let dp = thm2_check_with(&report, &fam.sizes(), &ctx.opts.budget)?;
                result["dp"] = json!(dp);
                if dp {
                    let cert = construct_product_dp_certificate(&fam, &ctx.opts)?;
                    out.certificate = Some(dp_certificate_json(&cert));
                }
            }
            out.result = result;
            out.warnings = warnings;
            Ok(Report::Json(out, 0))
        }
        Command::Cartprod { input, with, raw, dot } => {
            let g = load(&input)?;
            let h = graph_spec(&with)?;
            let p = cartesian_product(&g.graph, &h.graph);
            if raw {
                return Ok(Report::Raw(emit_edge_list(p.graph())));
            }
            if dot {
                return Ok(Report::Raw(product_dot(&p)));
            }
            let mut out = Output::new(name, json!({ "graph": graph_json(p.graph()), "pairs": p.pairs() }));
            if g.graph.is_connected() && h.graph.is_connected() {
                let order = sdp_order(&g.graph, &ctx.opts)?;
                let h_cert = is_dp(&h.graph, &ctx.opts)?.certificate;
                if let (Some(order), Some(h_cert)) = (order, h_cert) {
                    let cert = cartesian_dp_construct(&order, &h_cert)?;
                    out.certificate = Some(dp_certificate_json(&cert));
                }
            }
            out.warnings = g.warnings.into_iter().chain(h.warnings).collect();
            Ok(Report::Json(out, 0))
        }
        Command::TransferCheck { family, subset } => {
            let (fam, warnings) = load_family(&family)?;
            let p = generalized_lex_product(&fam)?;
            let m = VertexSubset::new(p.graph(), id_list(&subset)?)?;
            let transfer = isometry_transfer_check(&p, &m)?;
            let direct = is_isometric(p.graph(), &m)?;
            if transfer != direct {
                return Err(CliError::Lib(Error::InvalidCertificate(
                    "projection and direct isometry checks disagree".into(),
                )));
            }
            let mut out = Output::new(name, json!(transfer));
            out.warnings = warnings;
            Ok(Report::Json(out, 0))
        }
        Command::Verify { input, certificate, conjecture_cartesian_dp, max_order } => {
            if conjecture_cartesian_dp {
                let probe = probe_cartesian_dp_conjecture(max_order, &ctx.opts)?;
                let counterexample = probe
                    .counterexample
                    .as_ref()
                    .map(|(g, h)| json!({ "g": graph_json(g), "h": graph_json(h) }));
                let mut out = Output::new(
                    name,
                    json!({
                        "max_order": probe.max_order,
                        "pairs_checked": probe.pairs_checked,
                        "counterexample": counterexample,
                    }),
                );
                if probe.indeterminate > 0 {
                    out.indeterminate = Some(true);
                }
                return Ok(Report::Json(out, 0));
            }
            let loaded = load(&input)?;
            let path = certificate.expect("required by clap");
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
            let cert = value.get("certificate").cloned().unwrap_or(value);
            let verdict = verify_certificate(&loaded.graph, &cert)?;
            let mut out = Output::new(name, json!(verdict.is_ok()));
            let code = if verdict.is_ok() { 0 } else { 1 };
            out.error = verdict.err();
            Ok(Report::Json(out, code))
        }
        Command::ExportDot { input, partition, quotient: as_quotient, raw } => {
            let loaded = load(&input)?;
            let g = &loaded.graph;
            let dot = if partition {
                partition_dot(&maximal_modular_partition(g)?)
            } else if as_quotient {
                quotient_dot(&minimal_quotient(g)?)
            } else {
                emit_dot(g, &DotOptions::default())
            };
            if raw {
                return Ok(Report::Raw(dot));
            }
            let mut out = Output::new(name, json!(dot));
            out.warnings = loaded.warnings;
            Ok(Report::Json(out, 0))
        }
        Command::Dataset { name: None, list: true, .. } => {
            let all: Vec<&str> = Dataset::ALL.iter().map(|d| d.name()).collect();
            Ok(Report::Json(Output::new(name, json!(all)), 0))
        }
        Command::Dataset { name: Some(which), raw, .. } => {
            let d = Dataset::from_name(&which)
                .ok_or_else(|| CliError::Usage(format!("unknown dataset `{which}`")))?;
            let g = d.graph()?;
            if raw {
                return Ok(Report::Raw(d.text().to_string()));
            }
            let result = json!({ "name": d.name(), "graph": graph_json(&g), "sha256": sha256_hex(d.text()) });
            Ok(Report::Json(Output::new(name, result), 0))
        }
        Command::Dataset { .. } => Err(CliError::Usage("give a dataset name or --list".into())),
    }
}

/// Checks a `dp` or `sdp` certificate against `g`; the error says what failed.
fn verify_certificate(g: &Graph, cert: &Value) -> Result<Result<(), String>, CliError> {
    let kind = cert.get("kind").and_then(Value::as_str);
    let malformed = || CliError::Parse("certificate is not a dp or sdp certificate".into());
    match kind {
        Some("dp") => {
            let witnesses: Vec<Vec<usize>> = serde_json::from_value(cert["witnesses"].clone()).map_err(|_| malformed())?;
            let subsets = witnesses
                .into_iter()
                .map(|w| VertexSubset::new(g, w))
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(DpCertificate::new(g.clone(), subsets).map(|_| ()).map_err(|e| e.to_string()))
        }
        Some("sdp") => {
            let order: Vec<usize> = serde_json::from_value(cert["order"].clone()).map_err(|_| malformed())?;
            Ok(SdpOrder::new(g.clone(), order).map(|_| ()).map_err(|e| e.to_string()))
        }
        _ => Err(malformed()),
    }
}

