//! Command line front end over the text formats: plain relations
//! (`rel`), doubled voltage-current relations (`sympl`), and netlists
//! (`netlist`). Each verb reads files or standard input, dispatches to
//! the library, and prints the canonical form of the result, as text or
//! as JSON mirroring the text fields. Exit codes: 0 success, 1
//! validation failure, 2 parse failure.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kirchhoff::{
    canonical_admittance, classify, symplectic_dual, synth_affine, Classification, Error, Matrix,
    Netlist, NetlistBuilder, Relation, SymplecticRelation,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "kirchhoff",
    version,
    about = "Exact relations and electrical netlists over odd prime fields"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Override the modulus declared in every input header.
    #[arg(long, global = true)]
    modulus: Option<u64>,
    /// Write the result to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Verb {
    /// Report conservation, determinism, losslessness, and graph-state
    /// status of a sympl relation or an evaluated netlist.
    Classify { input: String },
    /// Compose two relations of the same kind (rel or sympl) in series.
    Compose { first: String, second: String },
    /// Put two relations of the same kind side by side.
    Tensor { first: String, second: String },
    /// Print the standard form: (a, sigma) for a rel input, (y, a,
    /// sigma) for a sympl one.
    StandardForm { input: String },
    /// Print the canonical admittance matrix of a graph state.
    CanonicalGraph { input: String },
    /// Print the symplectic dual of a sympl relation's solution space.
    Dual { input: String },
    /// Print the orthogonal complement of a rel relation.
    Ortho { input: String },
    /// Evaluate a netlist to the sympl relation on its boundary.
    Eval { input: String },
    /// Synthesize a netlist realizing a conservative sympl relation.
    Synth { input: String },
    /// Print the power drawn by one member of a sympl relation; the
    /// member file holds positions then momenta, inputs before outputs.
    Power { relation: String, member: String },
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_parse() => 2,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match &cli.output {
            None => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Some(path) => match std::fs::write(path, out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(1)
                }
            },
        },
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

enum Input {
    Rel(Relation),
    State(SymplecticRelation),
    Net(Netlist),
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Io(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("cannot read {path}: {e}")))
    }
}

fn parse_input(path: &str, modulus: Option<u64>) -> Result<Input, Failure> {
    let text = read_source(path)?;
    let tag = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    match tag {
        "rel" => Ok(Input::Rel(Relation::parse(&text, modulus)?)),
        "sympl" => Ok(Input::State(SymplecticRelation::parse(&text, modulus)?)),
        "netlist" => Ok(Input::Net(Netlist::parse(&text, modulus)?)),
        other => Err(Failure::Lib(Error::Parse(format!(
            "unrecognized input header {other:?}; expected rel, sympl, or netlist"
        )))),
    }
}

/// Inputs that carry doubled coordinates: sympl text directly, netlists
/// by evaluation.
fn state_like(path: &str, modulus: Option<u64>, verb: &str) -> Result<SymplecticRelation, Failure> {
    match parse_input(path, modulus)? {
        Input::State(s) => Ok(s),
        Input::Net(n) => Ok(n.eval()?),
        Input::Rel(_) => Err(Failure::Usage(format!(
            "{verb} needs a sympl relation or a netlist, got a rel input"
        ))),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let m = cli.modulus;
    match &cli.verb {
        Verb::Classify { input } => {
            let s = state_like(input, m, "classify")?;
            let c = classify(&s);
            Ok(match cli.format {
                Format::Text => c.to_string(),
                Format::Json => json_line(classification_json(&c)),
            })
        }
        Verb::Compose { first, second } => binary_op(cli, first, second, "compose"),
        Verb::Tensor { first, second } => binary_op(cli, first, second, "tensor"),
        Verb::StandardForm { input } => match parse_input(input, m)? {
            Input::Rel(r) => {
                let sf = r.standard_form()?;
                Ok(match cli.format {
                    Format::Text => format!("a\n{}sigma{}\n", sf.a, images_text(sf.sigma.images())),
                    Format::Json => json_line(json!({
                        "a": matrix_json(&sf.a),
                        "sigma": sf.sigma.images(),
                    })),
                })
            }
            Input::State(s) => {
                let form = s.lagrangian_form()?;
                Ok(match cli.format {
                    Format::Text => format!(
                        "y\n{}a\n{}sigma{}\n",
                        form.y,
                        form.a,
                        images_text(form.sigma.images())
                    ),
                    Format::Json => json_line(json!({
                        "y": matrix_json(&form.y),
                        "a": matrix_json(&form.a),
                        "sigma": form.sigma.images(),
                    })),
                })
            }
            Input::Net(_) => Err(Failure::Usage(
                "standard-form needs a rel or sympl relation; eval the netlist first".into(),
            )),
        },
        Verb::CanonicalGraph { input } => {
            let s = state_like(input, m, "canonical-graph")?;
            let y = canonical_admittance(&s)?;
            Ok(match cli.format {
                Format::Text => y.to_string(),
                Format::Json => json_line(matrix_json(&y)),
            })
        }
        Verb::Dual { input } => match parse_input(input, m)? {
            Input::State(s) => {
                let dual = SymplecticRelation::from_stored(
                    s.dom(),
                    s.cod(),
                    symplectic_dual(s.state())?,
                )?;
                Ok(render_state(cli, &dual))
            }
            _ => Err(Failure::Usage(
                "dual needs a sympl relation; ortho handles rel inputs".into(),
            )),
        },
        Verb::Ortho { input } => match parse_input(input, m)? {
            Input::Rel(r) => {
                let c = r.orthogonal_complement()?;
                Ok(render_rel(cli, &c))
            }
            _ => Err(Failure::Usage(
                "ortho needs a rel relation; dual handles sympl inputs".into(),
            )),
        },
        Verb::Eval { input } => match parse_input(input, m)? {
            Input::Net(n) => Ok(render_state(cli, &n.eval()?)),
            _ => Err(Failure::Usage("eval needs a netlist input".into())),
        },
        Verb::Synth { input } => match parse_input(input, m)? {
            Input::State(s) => {
                let net = synth_relation(&s)?;
                Ok(match cli.format {
                    Format::Text => net.to_string(),
                    Format::Json => json_line(netlist_json(&net)),
                })
            }
            _ => Err(Failure::Usage("synth needs a sympl relation input".into())),
        },
        Verb::Power { relation, member } => {
            let s = match parse_input(relation, m)? {
                Input::State(s) => s,
                _ => return Err(Failure::Usage("power needs a sympl relation input".into())),
            };
            let text = read_source(member)?;
            let member = parse_member(&text, &s)?;
            let value = s.power_input(&member)?.value();
            Ok(match cli.format {
                Format::Text => format!("{value}\n"),
                Format::Json => json_line(json!({ "power": value })),
            })
        }
    }
}

fn binary_op(cli: &Cli, first: &str, second: &str, verb: &str) -> Result<String, Failure> {
    let lhs = parse_input(first, cli.modulus)?;
    let rhs = parse_input(second, cli.modulus)?;
    match (lhs, rhs) {
        (Input::Rel(a), Input::Rel(b)) => {
            let r = if verb == "compose" {
                a.compose(&b)?
            } else {
                a.tensor(&b)?
            };
            Ok(render_rel(cli, &r))
        }
        (Input::State(a), Input::State(b)) => {
            let r = if verb == "compose" {
                a.compose(&b)?
            } else {
                a.tensor(&b)?
            };
            Ok(render_state(cli, &r))
        }
        _ => Err(Failure::Usage(format!(
            "{verb} needs two rel inputs or two sympl inputs"
        ))),
    }
}

/// Netlist for a conservative relation with inputs: synthesize its bent
/// state, then mark the first dom boundary wires as inputs again. The
/// boundary sign rule makes the retyped netlist evaluate to the original
/// relation exactly.
fn synth_relation(r: &SymplecticRelation) -> Result<Netlist, Error> {
    let net = synth_affine(&r.to_state())?;
    let mut b = NetlistBuilder::new(net.prime());
    for kind in net.generators() {
        b.add(*kind);
    }
    for &(x, y) in net.wires() {
        b.wire(x, y);
    }
    for (w, &port) in net.outputs().iter().enumerate() {
        if w < r.dom() {
            b.input(port);
        } else {
            b.output(port);
        }
    }
    b.finish()
}

fn parse_member(text: &str, s: &SymplecticRelation) -> Result<Vec<u64>, Failure> {
    let pr = s.prime();
    let values: Result<Vec<u64>, Error> = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map(|v| pr.reduce_i64(v))
                .map_err(|_| Error::Parse(format!("bad member entry {tok:?}")))
        })
        .collect();
    let values = values?;
    if values.len() != 2 * s.wires() {
        return Err(Failure::Usage(format!(
            "member needs {} entries (positions then momenta, inputs before outputs), got {}",
            2 * s.wires(),
            values.len()
        )));
    }
    Ok(values)
}

fn render_rel(cli: &Cli, r: &Relation) -> String {
    match cli.format {
        Format::Text => r.to_string(),
        Format::Json => json_line(rel_json(r)),
    }
}

fn render_state(cli: &Cli, s: &SymplecticRelation) -> String {
    match cli.format {
        Format::Text => s.to_string(),
        Format::Json => json_line(sympl_json(s)),
    }
}

fn images_text(images: &[usize]) -> String {
    images.iter().map(|i| format!(" {i}")).collect()
}

fn json_line(v: Value) -> String {
    format!("{v}\n")
}

fn matrix_json(m: &Matrix) -> Value {
    let entries: Vec<Vec<u64>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    json!({
        "modulus": m.prime().value(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

fn span_json(kind: &str, dom: usize, cod: usize, space: &kirchhoff::AffineSubspace) -> Value {
    let basis: Vec<Vec<u64>> = (0..space.basis().rows())
        .map(|r| space.basis().row(r).to_vec())
        .collect();
    let offset = space.offset().to_vec();
    json!({
        "kind": kind,
        "modulus": space.prime().value(),
        "dom": dom,
        "cod": cod,
        "empty": space.is_empty(),
        "offset": if offset.iter().all(|&v| v == 0) { Value::Null } else { json!(offset) },
        "rows": basis,
    })
}

fn rel_json(r: &Relation) -> Value {
    span_json("rel", r.dom(), r.cod(), r.space())
}

fn sympl_json(s: &SymplecticRelation) -> Value {
    span_json("sympl", s.dom(), s.cod(), s.state())
}

fn netlist_json(n: &Netlist) -> Value {
    let gens: Vec<Value> = n
        .generators()
        .iter()
        .map(|g| json!({ "kind": g.name(), "param": g.param() }))
        .collect();
    let wires: Vec<Value> = n
        .wires()
        .iter()
        .map(|(a, b)| json!([a.to_string(), b.to_string()]))
        .collect();
    let ports = |list: &[kirchhoff::PortRef]| -> Vec<String> {
        list.iter().map(|p| p.to_string()).collect()
    };
    json!({
        "kind": "netlist",
        "modulus": n.prime().value(),
        "generators": gens,
        "wires": wires,
        "inputs": ports(n.inputs()),
        "outputs": ports(n.outputs()),
    })
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "kirchhoff": c.kirchhoff,
        "deterministic": c.deterministic,
        "lossless": c.lossless,
        "graph_state": c.graph_state,
        "partition": c.partition,
        "admittance": c.admittance.as_ref().map(matrix_json),
    })
}
