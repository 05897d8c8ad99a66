//! The `facelab` command line. [`run`] parses an argument vector and returns
//! a [`CommandResult`]; the binary prints its JSON form (or a text rendering
//! with `--pretty`) and exits with [`CommandResult::exit_code`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use facelab::exact::format_rational;
use facelab::generators::{generate, prism, pyramid, Family, GeneratorSpec};
use facelab::hypergraph::{certify_strong_connectivity, FaceHypergraph};
use facelab::io::{parse_polytope, write_polytope, LatticeExport};
use facelab::polytope::polar_dual;
use facelab::ridge::{find_ridge_path, verify_ridge_path, BlockedSet};
use facelab::section::section;
use facelab::{FaceLattice, Hyperplane, Polytope, VPolytope};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "facelab",
    version,
    about = "Exact face lattices, face hypergraph connectivity and ridge paths of polytopes"
)]
pub struct Cli {
    /// Print a human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a polytope in the text file format.
    Gen(GenArgs),
    /// Face lattice with covering pairs.
    Lattice(FileArgs),
    /// Nodes (k-faces) and hyperedges ((k+1)-faces) of the face hypergraph.
    Hypergraph(HypergraphArgs),
    /// Strong vertex connectivity of the face hypergraph by exhaustive removal.
    Connectivity(ConnectivityArgs),
    /// Ridge path between two k-faces avoiding blocked k-faces.
    RidgePath(RidgePathArgs),
    /// Polar dual polytope.
    Dual(DualArgs),
    /// Hyperplane section and its face correspondence.
    Section(SectionArgs),
    /// Check that H_k is strongly (d-k)-vertex connected.
    VerifyTheorem(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GenArgs {
    /// simplex, cube, cross, cyclic, random, pyramid or prism.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub dim: usize,
    /// Vertex count (cyclic, random).
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed (random).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Coordinate bound M, points drawn from [-M, M]^d (random).
    #[arg(long)]
    pub bound: Option<i64>,
    /// Base polytope file (pyramid, prism); defaults to a simplex.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Write the polytope file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct FileArgs {
    pub file: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct HypergraphArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub k: isize,
}

#[derive(Args, Debug, Serialize)]
pub struct ConnectivityArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub k: isize,
    /// Largest removal size tried; defaults to d - k + 1.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Include a disconnecting set and two separated components.
    #[arg(long)]
    pub witness: bool,
}

/// For k = 0 no ridge has a vertex to block, so the answer is the direct
/// step `[from, to]` through the empty face.
#[derive(Args, Debug, Serialize)]
pub struct RidgePathArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub k: isize,
    /// Comma-separated face ids such as "0-1-2-3,4-5-6-7".
    #[arg(long, default_value = "")]
    pub blocked: String,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fail unless the path passes the independent verifier.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct DualArgs {
    pub file: PathBuf,
    /// Write the dual polytope file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SectionArgs {
    pub file: PathBuf,
    /// "a1,...,ad;c" for the hyperplane a·x = c.
    #[arg(long)]
    pub hyperplane: String,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, conflicts_with = "all_k")]
    pub k: Option<isize>,
    /// Every k in 0..d (the default).
    #[arg(long)]
    pub all_k: bool,
    /// Removal sizes tried, instead of d - k.
    #[arg(long)]
    pub cap_override: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    pub output: Option<Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// False when the command ran but reported a failed check.
    #[serde(skip)]
    pub passed: bool,
}

impl CommandResult {
    fn error(command: String, inputs: Value, message: String) -> Self {
        Self {
            command,
            inputs,
            output: None,
            status: Status::Error,
            message: Some(message),
            passed: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Ok && self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize") + "\n"
    }
}

type Outcome = std::result::Result<(Value, bool), String>;

pub fn parse<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// `argv[0]` is the program name, as in `std::env::args`.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    match parse(argv.clone()) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let words: Vec<String> = argv
                .iter()
                .skip(1)
                .map(|a| a.to_string_lossy().into_owned())
                .collect();
            let command = words.first().cloned().unwrap_or_default();
            let first = e.to_string().lines().next().unwrap_or_default().to_string();
            let message = first.strip_prefix("error: ").unwrap_or(&first).to_string();
            CommandResult::error(command, json!({ "argv": words }), message)
        }
    }
}

pub fn execute(cli: &Cli) -> CommandResult {
    let (name, inputs, outcome) = match &cli.command {
        Command::Gen(a) => ("gen", to_value(a), gen(a)),
        Command::Lattice(a) => ("lattice", to_value(a), lattice(a)),
        Command::Hypergraph(a) => ("hypergraph", to_value(a), hypergraph(a)),
        Command::Connectivity(a) => ("connectivity", to_value(a), connectivity(a)),
        Command::RidgePath(a) => ("ridge-path", to_value(a), ridge_path(a)),
        Command::Dual(a) => ("dual", to_value(a), dual(a)),
        Command::Section(a) => ("section", to_value(a), slice(a)),
        Command::VerifyTheorem(a) => ("verify-theorem", to_value(a), verify_theorem(a)),
    };
    match outcome {
        Ok((output, passed)) => CommandResult {
            command: name.into(),
            inputs,
            output: Some(output),
            status: Status::Ok,
            message: None,
            passed,
        },
        Err(message) => CommandResult::error(name.into(), inputs, message),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("arguments serialize")
}

fn read_vertices(path: &Path) -> Result<VPolytope, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_polytope(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Polytope, String> {
    Polytope::new(read_vertices(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, p: &VPolytope) -> Result<(), String> {
    fs::write(path, write_polytope(p)).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn vertex_rows(p: &VPolytope) -> Value {
    to_value(&p.vertices())
}

fn plane_json(h: &Hyperplane) -> Value {
    json!({ "normal": h.normal(), "offset": format_rational(h.offset()) })
}

fn face_id(l: &FaceLattice, label: &str) -> Result<usize, String> {
    l.find_label(label)
        .map_err(|e| format!("face {label:?}: {e}"))
}

fn gen(a: &GenArgs) -> Outcome {
    let family: Family = a
        .family
        .parse()
        .map_err(|e: facelab::Error| e.to_string())?;
    let p = match (&a.base, family) {
        (Some(base), Family::Pyramid | Family::Prism) => {
            let base = read_vertices(base)?;
            if base.ambient_dim() + 1 != a.dim {
                return Err(format!(
                    "base dimension {} must be dim - 1 = {}",
                    base.ambient_dim(),
                    a.dim as isize - 1
                ));
            }
            let lifted = if family == Family::Pyramid {
                pyramid(&base)
            } else {
                prism(&base)
            };
            lifted.map_err(|e| e.to_string())?
        }
        (Some(_), _) => {
            return Err(format!(
                "--base applies only to pyramid and prism, not {}",
                a.family
            ))
        }
        (None, _) => {
            let mut spec = GeneratorSpec::new(family, a.dim);
            if let Some(n) = a.n {
                spec.n = n;
            }
            if let Some(seed) = a.seed {
                spec.seed = seed;
            }
            if let Some(bound) = a.bound {
                spec.coordinate_bound = bound;
            }
            generate(&spec).map_err(|e| e.to_string())?
        }
    };
    if let Some(out) = &a.out {
        write_file(out, &p)?;
    }
    Ok((
        json!({
            "family": family.name(),
            "dim": p.ambient_dim(),
            "vertex_count": p.len(),
            "vertices": vertex_rows(&p),
            "file": a.out.as_ref().map(|o| o.display().to_string()),
        }),
        true,
    ))
}

fn lattice(a: &FileArgs) -> Outcome {
    let q = load(&a.file)?;
    Ok((to_value(&LatticeExport::new(&q.lattice)), true))
}

fn hypergraph(a: &HypergraphArgs) -> Outcome {
    let q = load(&a.file)?;
    let l = &q.lattice;
    let hg = FaceHypergraph::from_lattice(l, a.k).map_err(|e| e.to_string())?;
    let node = |n: usize| l.label(hg.node_face(n));
    let hyperedges: Vec<Value> = (0..hg.hyperedge_count())
        .map(|e| {
            json!({
                "face": l.label(hg.hyperedge_face(e)),
                "members": hg.members(e).iter().map(|&n| node(n)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok((
        json!({
            "k": a.k,
            "nodes": (0..hg.node_count()).map(node).collect::<Vec<_>>(),
            "hyperedges": hyperedges,
        }),
        true,
    ))
}

fn connectivity(a: &ConnectivityArgs) -> Outcome {
    let q = load(&a.file)?;
    let l = &q.lattice;
    let hg = FaceHypergraph::from_lattice(l, a.k).map_err(|e| e.to_string())?;
    let cap = a.cap.unwrap_or((q.dim() - a.k) as usize + 1);
    let report = hg.strong_connectivity(cap);
    let labels = |ns: &[usize]| {
        ns.iter()
            .map(|&n| l.label(hg.node_face(n)))
            .collect::<Vec<_>>()
    };
    let witness = match (&report.witness, a.witness) {
        (Some(w), true) => json!({
            "removed": labels(&w.removed),
            "component_a": labels(&w.component_a),
            "component_b": labels(&w.component_b),
        }),
        _ => Value::Null,
    };
    Ok((
        json!({
            "k": report.k,
            "cap": cap,
            "alpha": report.alpha,
            "capped": report.capped,
            "witness": witness,
        }),
        true,
    ))
}

fn ridge_path(a: &RidgePathArgs) -> Outcome {
    let q = load(&a.file)?;
    let l = &q.lattice;
    let blocked = a
        .blocked
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| face_id(l, s))
        .collect::<Result<Vec<_>, _>>()?;
    let b = BlockedSet::new(l, a.k, blocked).map_err(|e| e.to_string())?;
    let (f, g) = (face_id(l, &a.from)?, face_id(l, &a.to)?);
    let sol = find_ridge_path(&q, a.k, &b, f, g, a.seed).map_err(|e| e.to_string())?;
    let verified = verify_ridge_path(l, a.k, &b, &sol.path, f, g);
    if a.verify && !verified {
        return Err("ridge path failed independent verification".into());
    }
    let labels = |ids: &[usize]| ids.iter().map(|&i| l.label(i)).collect::<Vec<_>>();
    Ok((
        json!({
            "k": a.k,
            "from": l.label(f),
            "to": l.label(g),
            "blocked": b.faces().iter().map(|&i| l.label(i)).collect::<Vec<_>>(),
            "path": labels(&sol.path.faces),
            "ridges": labels(&sol.path.ridges),
            "verified": verified,
            "depth": sol.depth,
            "hyperplanes": sol.hyperplanes.iter().map(plane_json).collect::<Vec<_>>(),
        }),
        true,
    ))
}

fn dual(a: &DualArgs) -> Outcome {
    let q = load(&a.file)?;
    let d = polar_dual(&q.geometry).map_err(|e| e.to_string())?;
    let dq = Polytope::new(d).map_err(|e| e.to_string())?;
    if let Some(out) = &a.out {
        write_file(out, &dq.geometry)?;
    }
    let l = &q.lattice;
    Ok((
        json!({
            "dim": dq.dim(),
            "vertex_count": dq.geometry.len(),
            "vertices": vertex_rows(&dq.geometry),
            "f_vector": dq.lattice.f_vector(),
            "vertex_facets": l.facets().map(|f| l.label(f)).collect::<Vec<_>>(),
            "file": a.out.as_ref().map(|o| o.display().to_string()),
        }),
        true,
    ))
}

fn slice(a: &SectionArgs) -> Outcome {
    let q = load(&a.file)?;
    let h = Hyperplane::parse(&a.hyperplane)
        .map_err(|e| format!("hyperplane {:?}: {e}", a.hyperplane))?;
    let s = section(&q, &h).map_err(|e| e.to_string())?;
    let (base, sliced) = (&q.lattice, &s.sliced().lattice);
    let correspondence: Vec<Value> = s
        .domain()
        .map(|f| {
            let x = s.phi(f).expect("domain faces map into the slice");
            json!({ "base": base.label(f), "slice": sliced.label(x) })
        })
        .collect();
    Ok((
        json!({
            "plane": plane_json(&h),
            "dim": s.sliced().dim(),
            "vertex_count": s.sliced().geometry.len(),
            "vertices": vertex_rows(&s.sliced().geometry),
            "f_vector": sliced.f_vector(),
            "crossed_edges": s.crossed_edges().iter().map(|&e| base.label(e)).collect::<Vec<_>>(),
            "correspondence": correspondence,
        }),
        true,
    ))
}

fn verify_theorem(a: &VerifyArgs) -> Outcome {
    let q = load(&a.file)?;
    let ks: Vec<isize> = match a.k {
        Some(k) => vec![k],
        None => (0..q.dim()).collect(),
    };
    let mut checks = Vec::new();
    let mut all = true;
    for k in ks {
        let c = certify_strong_connectivity(&q.lattice, k, a.cap_override)
            .map_err(|e| e.to_string())?;
        all &= c.pass;
        checks.push(json!({
            "k": c.k,
            "required": c.required,
            "cap": a.cap_override.unwrap_or(c.required),
            "nodes": c.nodes,
            "hyperedges": c.hyperedges,
            "alpha": c.report.alpha,
            "capped": c.report.capped,
            "pass": c.pass,
        }));
    }
    Ok((
        json!({ "dim": q.dim(), "checks": checks, "pass": all }),
        all,
    ))
}

/// Text rendering: scalars as `key: value`, arrays of flat objects as
/// aligned tables, nested arrays one item per line.
pub fn render_pretty(r: &CommandResult) -> String {
    let mut out = String::new();
    match (&r.status, &r.message) {
        (Status::Error, Some(m)) => {
            let _ = writeln!(out, "{}: error: {m}", r.command);
            return out;
        }
        _ => {
            let _ = writeln!(out, "{}: ok", r.command);
        }
    }
    if let Some(Value::Object(map)) = &r.output {
        for (key, value) in map {
            render_field(&mut out, key, value, 0);
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!(
            "({})",
            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn render_field(out: &mut String, key: &str, value: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match value {
        Value::Array(items)
            if items.iter().all(|i| matches!(i, Value::Object(_))) && !items.is_empty() =>
        {
            let _ = writeln!(out, "{pad}{key}:");
            render_table(out, items, indent + 2);
        }
        Value::Array(items) if items.iter().any(Value::is_array) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                let _ = writeln!(out, "{pad}  {i}: {}", scalar(item));
            }
        }
        Value::Array(items) => {
            let _ = writeln!(
                out,
                "{pad}{key}: {}",
                items.iter().map(scalar).collect::<Vec<_>>().join(", ")
            );
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                render_field(out, k, v, indent + 2);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(other));
        }
    }
}

fn render_table(out: &mut String, rows: &[Value], indent: usize) {
    let pad = " ".repeat(indent);
    let columns: Vec<&String> = match &rows[0] {
        Value::Object(m) => m.keys().collect(),
        _ => return,
    };
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| row.get(c.as_str()).map_or_else(String::new, scalar))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            cells
                .iter()
                .map(|r| r[j].len())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |vals: Vec<&str>| {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(
        out,
        "{pad}{}",
        line(columns.iter().map(|c| c.as_str()).collect())
    );
    for row in &cells {
        let _ = writeln!(
            out,
            "{pad}{}",
            line(row.iter().map(String::as_str).collect())
        );
    }
}
