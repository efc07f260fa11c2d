mod verify;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gfrob_core::braided::{br_basis, braidize};
use gfrob_core::frobenius::{assemble_z2, check_gfa, check_pre_gfm, wdvv_check, Z2Manifold};
use gfrob_core::groupoid::components;
use gfrob_core::json::{
    matrix_from_json, matrix_to_json, AssembleJson, GfaJson, GroupJson, ManifoldJson, MetricJson,
    ModuleJson, PolyJson, PreGfmJson, TensorJson,
};
use gfrob_core::singularity::{
    flat_coordinates, frobenius_manifold_a, frobenius_manifold_d, metric_d, potential_b, t_name,
    z2_frobenius_manifold,
};
use gfrob_core::{cyclic_group, symmetric_group, Error, FiniteGroup, MultiPoly, Report};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "gfrob",
    version,
    about = "Exact computations with G-braided spaces and G-Frobenius structures"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    A,
    B,
    D,
}

#[derive(Subcommand)]
enum Command {
    /// Print a cyclic or symmetric group, or validate a group table.
    Group {
        #[arg(long, conflicts_with_all = ["symmetric", "input"])]
        cyclic: Option<usize>,
        #[arg(long, conflicts_with = "input")]
        symmetric: Option<usize>,
        /// Group table JSON (`-` for stdin).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Components of the action groupoid on G^n, one JSON line each.
    Groupoid {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Project a tensor onto braid-invariant tensors.
    Braidize {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        tensor: PathBuf,
        /// Work on the dual module.
        #[arg(long)]
        dual: bool,
    },
    /// Basis of the braided tensors of degree n, by component.
    BrBasis {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dual: bool,
    },
    /// Check the G-Frobenius algebra axioms.
    CheckGfa {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Check the WDVV equations for a potential and a constant metric.
    Wdvv {
        #[arg(long, requires = "metric", conflicts_with = "manifold")]
        potential: Option<PathBuf>,
        #[arg(long)]
        metric: Option<PathBuf>,
        /// Manifold JSON with coords, metric and potential.
        #[arg(long)]
        manifold: Option<PathBuf>,
    },
    /// Check a pre-G-Frobenius manifold.
    CheckPreGfm {
        #[arg(long)]
        input: PathBuf,
    },
    /// Glue an untwisted and an invariant manifold into a Z/2Z manifold.
    AssembleZ2 {
        #[arg(long)]
        input: PathBuf,
    },
    /// Potential of the A_n, B_n or D_n Frobenius manifold.
    Potential {
        #[arg(value_enum, ignore_case = true)]
        family: Family,
        n: usize,
    },
    /// Flat coordinates of the A_n unfolding.
    FlatCoords { n: usize },
    /// The Z/2Z Frobenius manifold built from A_{2n-3} and D_n.
    ConstructZ2 { n: usize },
    /// Run the built-in regression fixtures.
    VerifyPaper,
}

/// Final output of a command.
enum Output {
    Checks {
        command: &'static str,
        report: Report,
        data: Option<Value>,
    },
    Data {
        json: Value,
        text: String,
    },
    Lines {
        json: Vec<Value>,
        text: Vec<String>,
    },
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    checks: Vec<CheckJson<'a>>,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<&'a Value>,
}

enum Failure {
    Usage(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load<T: DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let s = read_input(path)?;
    serde_json::from_str(&s).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

/// Converts a decoded value, reporting any error as a parse failure.
fn decode<T>(r: gfrob_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Parse(e.to_string()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({
        "order": g.order(),
        "table": g.table(),
        "abelian": g.is_abelian(),
        "conjugacy_classes": g.conjugacy_classes(),
    })
}

fn poly_text(p: &MultiPoly) -> String {
    p.to_text()
}

fn manifold_output(
    kind: &str,
    n: usize,
    coords: &[String],
    metric: &gfrob_core::Matrix,
    p: &MultiPoly,
) -> Output {
    let json = json!({
        "family": kind,
        "n": n,
        "coords": coords,
        "metric": matrix_to_json(metric),
        "potential": to_value(&PolyJson::from_poly(p)),
    });
    Output::Data {
        json,
        text: poly_text(p),
    }
}

fn z2_output(z2: &Z2Manifold) -> Value {
    let (k, dv, dg) = z2.sizes;
    json!({
        "module": to_value(&ModuleJson::from_module(&z2.module)),
        "manifold": to_value(&ManifoldJson::from_manifold(&z2.manifold)),
        "sizes": {"invariant": k, "variant": dv, "twisted": dg},
        "y_i": to_value(&PolyJson::from_poly(&z2.y_i)),
        "y_v": to_value(&PolyJson::from_poly(&z2.y_v)),
        "y_g": to_value(&PolyJson::from_poly(&z2.y_g)),
    })
}

fn run(command: Command) -> Result<Output, Failure> {
    Ok(match command {
        Command::Group {
            cyclic,
            symmetric,
            input,
        } => {
            let g = match (cyclic, symmetric, input) {
                (Some(n), _, _) => cyclic_group(n)?,
                (_, Some(n), _) => symmetric_group(n)?,
                (_, _, Some(path)) => decode(load::<GroupJson>(&path)?.to_group())?,
                _ => {
                    return Err(Failure::Usage(
                        "give --cyclic, --symmetric or --input".into(),
                    ))
                }
            };
            let text = g
                .table()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::Data {
                json: group_json(&g),
                text,
            }
        }
        Command::Groupoid { group, n } => {
            let g = decode(load::<GroupJson>(&group)?.to_group())?;
            let comps = components(&g, n)?;
            let json: Vec<Value> = comps
                .iter()
                .map(|c| {
                    json!({
                        "basepoint": c.basepoint().entries(),
                        "size": c.size(),
                        "m_c": c.m_c,
                        "n_c": c.n_c,
                        "g_degree": c.g_degree,
                    })
                })
                .collect();
            let text = comps
                .iter()
                .map(|c| {
                    format!(
                        "{:?} |C|={} m_C={} n_C={} g={}",
                        c.basepoint().entries(),
                        c.size(),
                        c.m_c,
                        c.n_c,
                        c.g_degree
                    )
                })
                .collect();
            Output::Lines { json, text }
        }
        Command::Braidize {
            module,
            tensor,
            dual,
        } => {
            let mut h = decode(load::<ModuleJson>(&module)?.to_module())?;
            if dual {
                h = h.dual();
            }
            let v = decode(load::<TensorJson>(&tensor)?.to_tensor())?;
            let b = braidize(&h, &v)?;
            let text = b
                .terms()
                .iter()
                .map(|(i, c)| format!("{c} {i:?}"))
                .collect::<Vec<_>>()
                .join("\n");
            Output::Data {
                json: to_value(&TensorJson::from_tensor(&b)),
                text,
            }
        }
        Command::BrBasis { module, n, dual } => {
            let mut h = decode(load::<ModuleJson>(&module)?.to_module())?;
            if dual {
                h = h.dual();
            }
            let basis = br_basis(&h, n)?;
            let json = basis
                .iter()
                .map(|f| {
                    json!({
                        "component": f.component.entries(),
                        "g_degree": f.g_degree,
                        "tensor": to_value(&TensorJson::from_tensor(&f.tensor)),
                    })
                })
                .collect();
            let text = basis
                .iter()
                .map(|f| {
                    format!(
                        "{:?} g={} terms={}",
                        f.component.entries(),
                        f.g_degree,
                        f.tensor.num_terms()
                    )
                })
                .collect();
            Output::Lines { json, text }
        }
        Command::CheckGfa { algebra } => {
            let alg = decode(load::<GfaJson>(&algebra)?.to_algebra())?;
            Output::Checks {
                command: "check-gfa",
                report: check_gfa(&alg),
                data: None,
            }
        }
        Command::Wdvv {
            potential,
            metric,
            manifold,
        } => {
            let (coords, eta, p) = match (potential, metric, manifold) {
                (_, _, Some(path)) => {
                    let m = decode(load::<ManifoldJson>(&path)?.to_manifold())?;
                    (m.coords, m.metric, m.potential)
                }
                (Some(p), Some(m), None) => {
                    let metric: MetricJson = load(&m)?;
                    let eta = decode(matrix_from_json(&metric.matrix))?;
                    if eta.rows() != metric.coords.len() || eta.cols() != metric.coords.len() {
                        return Err(Failure::Parse(format!(
                            "metric does not match {} coordinates",
                            metric.coords.len()
                        )));
                    }
                    (metric.coords, eta, decode(load::<PolyJson>(&p)?.to_poly())?)
                }
                _ => {
                    return Err(Failure::Usage(
                        "give --potential and --metric, or --manifold".into(),
                    ))
                }
            };
            let report = match wdvv_check(&p, &coords, &eta) {
                Ok(w) => w.to_report(),
                Err(Error::UnknownVariable(v)) => {
                    return Err(Failure::Parse(format!(
                        "potential uses `{v}`, not a metric coordinate"
                    )))
                }
                Err(e) => {
                    let mut r = Report::new();
                    r.fail("wdvv", e.to_string());
                    r
                }
            };
            Output::Checks {
                command: "wdvv",
                report,
                data: None,
            }
        }
        Command::CheckPreGfm { input } => {
            let j: PreGfmJson = load(&input)?;
            let h = decode(j.module.to_module())?;
            let eta = decode(matrix_from_json(&j.metric))?;
            let p = decode(j.potential.to_poly())?;
            if j.coords.len() != h.dim() {
                return Err(Failure::Parse(format!(
                    "{} coordinates for dimension {}",
                    j.coords.len(),
                    h.dim()
                )));
            }
            Output::Checks {
                command: "check-pre-gfm",
                report: check_pre_gfm(&h, &eta, &j.coords, &p),
                data: None,
            }
        }
        Command::AssembleZ2 { input } => {
            let j: AssembleJson = load(&input)?;
            let fe = decode(j.untwisted.to_manifold())?;
            let fg = decode(j.invariant.to_manifold())?;
            let iota_e = decode(matrix_from_json(&j.iota_e))?;
            let iota_g = decode(matrix_from_json(&j.iota_g))?;
            let mut report = Report::new();
            match assemble_z2(&fe, &fg, &iota_e, &iota_g) {
                Ok(z2) => {
                    report.pass("assemble");
                    report.extend_prefixed("pre_gfm", z2.check());
                    Output::Checks {
                        command: "assemble-z2",
                        report,
                        data: Some(z2_output(&z2)),
                    }
                }
                Err(e) => {
                    report.fail("assemble", e.to_string());
                    Output::Checks {
                        command: "assemble-z2",
                        report,
                        data: None,
                    }
                }
            }
        }
        Command::Potential { family, n } => match family {
            Family::A => {
                let m = frobenius_manifold_a(n)?;
                manifold_output("A", n, &m.coords, &m.metric, &m.potential)
            }
            Family::B => {
                let p = potential_b(n)?;
                let coords: Vec<String> = (0..n).map(|i| t_name(2 * i)).collect();
                let metric = metric_d(n + 1)
                    .select(&(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
                manifold_output("B", n, &coords, &metric, &p)
            }
            Family::D => {
                let m = frobenius_manifold_d(n)?;
                manifold_output("D", n, &m.coords, &m.metric, &m.potential)
            }
        },
        Command::FlatCoords { n } => {
            let c = flat_coordinates(n)?;
            let named = |ps: &[MultiPoly], prefix: &str| -> Value {
                ps.iter()
                    .enumerate()
                    .map(|(i, p)| (format!("{prefix}_{i}"), to_value(&PolyJson::from_poly(p))))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            };
            let json =
                json!({"n": n, "a_of_t": named(&c.a_of_t, "a"), "t_of_a": named(&c.t_of_a, "t")});
            let mut lines: Vec<String> = c
                .a_of_t
                .iter()
                .enumerate()
                .map(|(i, p)| format!("a_{i} = {}", poly_text(p)))
                .collect();
            lines.extend(
                c.t_of_a
                    .iter()
                    .enumerate()
                    .map(|(i, p)| format!("t_{i} = {}", poly_text(p))),
            );
            Output::Data {
                json,
                text: lines.join("\n"),
            }
        }
        Command::ConstructZ2 { n } => {
            let z2 = z2_frobenius_manifold(n)?;
            Output::Checks {
                command: "construct-z2",
                report: z2.check(),
                data: Some(z2_output(&z2)),
            }
        }
        Command::VerifyPaper => Output::Checks {
            command: "verify-paper",
            report: verify::run(),
            data: None,
        },
    })
}

fn emit(out: &Output, format: Format) -> u8 {
    match out {
        Output::Checks {
            command,
            report,
            data,
        } => {
            let code = if report.passed() { 0 } else { 1 };
            match format {
                Format::Json => {
                    let checks = report
                        .checks
                        .iter()
                        .map(|c| CheckJson {
                            name: &c.name,
                            status: if c.passed { "pass" } else { "fail" },
                            witness: c.witness.as_deref(),
                        })
                        .collect();
                    let r = RunReport {
                        command,
                        checks,
                        exit_code: code,
                        output: data.as_ref(),
                    };
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&to_value(&r)).expect("serializable")
                    );
                }
                Format::Text => {
                    for c in &report.checks {
                        match &c.witness {
                            Some(w) if !c.passed => println!("FAIL {}: {w}", c.name),
                            _ => println!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name),
                        }
                    }
                }
            }
            code
        }
        Output::Data { json, text } => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(json).expect("serializable")
                ),
                Format::Text => println!("{text}"),
            }
            0
        }
        Output::Lines { json, text } => {
            match format {
                Format::Json => json.iter().for_each(|v| println!("{v}")),
                Format::Text => text.iter().for_each(|l| println!("{l}")),
            }
            0
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => ExitCode::from(emit(&out, cli.format)),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
