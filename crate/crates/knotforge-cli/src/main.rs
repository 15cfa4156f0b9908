use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use knotforge::construct::{
    realize_knot, realize_link2, realize_link_n, ConstructError, RealizedLink,
};
use knotforge::diagram::{
    alexander_det, default_limit, twist_classes, volume_bound, SkeinEvaluator,
};
use knotforge::surgery::{
    apply_tangle_surgery, enumerate_family, large_volume_triples, surgery_triples, v2_pretzel,
    SurgeryError,
};
use knotforge::tangle::{
    montesinos_canonical, parse_conway_report, tangle_to_diagram, MontesinosForm, TangleError,
};
use knotforge::{ConwayPoly, Diagram, DiagramError, IntLaurent, PolyError};

const EXIT_INPUT: u8 = 2;
const EXIT_IMPOSSIBLE: u8 = 3;
const EXIT_LIMIT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "knotforge",
    version,
    about = "Realize Conway and Alexander polynomials by link diagrams"
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    /// Crossing limit of the skein evaluator (overrides KNOTFORGE_LIMIT)
    #[arg(long, global = true)]
    limit: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// Conway polynomial, e.g. "1 - 2z^2 + 2z^4"
    #[arg(long, allow_hyphen_values = true)]
    nabla: Option<String>,
    /// Alexander polynomial in t, e.g. "t - 1 + t^-1"
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
}

impl PolyInput {
    fn nabla(&self) -> Result<ConwayPoly> {
        match (&self.nabla, &self.delta) {
            (Some(s), _) => Ok(s.parse::<ConwayPoly>()?),
            (_, Some(s)) => Ok(ConwayPoly::from_alexander(&s.parse::<IntLaurent>()?)?),
            _ => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiagramInput {
    /// PD file, or a JSON certificate from `realize --json`; `-` reads stdin
    #[arg(long)]
    pd: Option<String>,
    /// Conway notation of a tangle or link
    #[arg(long, allow_hyphen_values = true)]
    conway: Option<String>,
}

impl DiagramInput {
    fn diagram(&self) -> Result<Diagram> {
        match (&self.pd, &self.conway) {
            (Some(path), _) => read_diagram(path),
            (_, Some(s)) => Ok(tangle_to_diagram(&parse_conway_report(s)?.expr)?.diagram),
            _ => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a certified diagram for a polynomial
    Realize {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, default_value_t = 1)]
        components: usize,
        /// Require a monic polynomial and a fiber-compatible canonical surface
        #[arg(long)]
        monic: bool,
    },
    /// Conway and Alexander polynomials of a diagram
    Eval {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Parse a polynomial, Conway notation or PD code and report its structure
    Parse {
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["delta", "conway", "pd"])]
        nabla: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["conway", "pd"])]
        delta: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "pd")]
        conway: Option<String>,
        #[arg(long)]
        pd: Option<String>,
    },
    /// Canonical form of a Montesinos link, e.g. "M(-1/3,1/2,1/5;0)"
    Normalize {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Tangle surgery arithmetic and rewrites
    Surgery {
        #[command(subcommand)]
        command: SurgeryCommand,
    },
    /// Twist number and volume upper bound of a diagram
    Bound {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Polynomial-preserving family over a realized link
    Family {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, default_value_t = 1)]
        components: usize,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum SurgeryCommand {
    /// The triple (p, q, r) for clasp parameter k and family parameter n
    Triples {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Large-volume triples with q up to q_max
    Volume {
        #[arg(long)]
        q_max: i64,
    },
    /// v2 of the (a, b, c) pretzel knot
    V2 {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
        #[arg(allow_hyphen_values = true)]
        c: i64,
    },
    /// Replace the clasp at two crossings by the surgery tangle
    Apply {
        #[arg(long)]
        pd: String,
        /// Crossing indices of the clasp, e.g. "0,1"
        #[arg(long, value_delimiter = ',', required = true)]
        site: Vec<usize>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Use the mirrored tangle, for a negative clasp
        #[arg(long)]
        mirrored: bool,
    },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read `{path}`"))
    }
}

fn read_diagram(path: &str) -> Result<Diagram> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        let r: RealizedLink =
            serde_json::from_str(&text).context("not a realization certificate")?;
        return Ok(r.diagram);
    }
    Ok(text.parse()?)
}

fn realize(nabla: &ConwayPoly, n: usize, monic: bool) -> Result<RealizedLink> {
    Ok(match n {
        0 => return Err(ConstructError::Components(0).into()),
        1 => realize_knot(nabla)?,
        2 => realize_link2(nabla, false)?,
        _ => realize_link_n(nabla, n, monic)?,
    })
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn print_realized(r: &RealizedLink) {
    println!("nabla: {}", r.nabla);
    println!("delta: {}", r.nabla.to_alexander());
    println!("components: {}", r.n);
    println!("d: {}", r.d);
    println!("crossings: {}", r.diagram.crossing_count());
    println!("canonical genus: {}", r.genus);
    println!("t_strong: {}", r.t_strong);
    println!("t_strong_reverse: {}", r.t_strong_reverse);
    println!("volume bound: {}", opt(r.volume_bound));
    println!("fibered (necessary conditions): {}", r.fibered_necessary);
    println!("unknotting site: {}", opt(r.unknotting_site));
    if let Some(m) = &r.matrix {
        println!("seifert matrix:");
        for row in m.entries() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            println!("  {}", cells.join(" "));
        }
    }
    if let Some(g) = &r.linking_graph {
        let edges: Vec<String> = g
            .edges
            .iter()
            .map(|(i, j, l)| format!("{i}-{j}:{l}"))
            .collect();
        println!("linking graph: {}", edges.join(" "));
    }
    print!("pd:\n{}", r.diagram);
}

fn cmd_eval(d: &Diagram, json: bool) -> Result<()> {
    let nabla = SkeinEvaluator::new(default_limit()).eval(d)?;
    let delta = nabla.to_alexander();
    let det = alexander_det(d).ok().map(|a| a.associate_eq(&delta));
    if json {
        let v = json!({
            "nabla": nabla.to_string(),
            "delta": delta.to_string(),
            "components": d.component_count(),
            "crossings": d.crossing_count(),
            "determinant_check": det,
        });
        println!("{v}");
    } else {
        println!("nabla: {nabla}");
        println!("delta: {delta}");
        let check = match det {
            Some(true) => "agree",
            Some(false) => "DISAGREE",
            None => "unavailable",
        };
        println!("determinant check: {check}");
    }
    if det == Some(false) {
        bail!("determinant method disagrees with the skein evaluator");
    }
    Ok(())
}

fn describe_poly(nabla: &ConwayPoly) -> Value {
    let n = nabla.terms().next().map(|(e, _)| e as usize + 1);
    json!({
        "nabla": nabla.to_string(),
        "delta": nabla.to_alexander().to_string(),
        "maxdeg": nabla.maxdeg(),
        "monic": nabla.is_monic().unwrap_or(false),
        "components": n.filter(|&n| nabla.is_admissible(n)),
    })
}

fn describe_diagram(d: &Diagram) -> Value {
    let sd = d.seifert_data();
    let tw = twist_classes(d);
    json!({
        "crossings": d.crossing_count(),
        "components": d.component_count(),
        "writhe": d.writhe(),
        "seifert_circles": sd.s,
        "canonical_genus": sd.genus,
        "t_strong": tw.t_strong,
        "t_strong_reverse": tw.t_strong_reverse,
    })
}

fn print_fields(v: &Value, json: bool) {
    if json {
        println!("{v}");
        return;
    }
    if let Value::Object(m) = v {
        for (k, x) in m {
            match x {
                Value::String(s) => println!("{k}: {s}"),
                Value::Null => println!("{k}: none"),
                other => println!("{k}: {other}"),
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Realize {
            input,
            components,
            monic,
        } => {
            let r = realize(&input.nabla()?, components, monic)?;
            if json {
                println!("{}", r.to_json());
            } else {
                print_realized(&r);
            }
        }
        Command::Eval { input } => cmd_eval(&input.diagram()?, json)?,
        Command::Parse {
            nabla,
            delta,
            conway,
            pd,
        } => {
            let v = if let Some(s) = nabla {
                describe_poly(&s.parse()?)
            } else if let Some(s) = delta {
                describe_poly(&ConwayPoly::from_alexander(&s.parse()?)?)
            } else if let Some(s) = conway {
                let p = parse_conway_report(&s)?;
                let td = tangle_to_diagram(&p.expr)?;
                json!({
                    "expression": p.expr.to_string(),
                    "crossings": p.expr.crossing_count(),
                    "digit_runs": p.digit_runs,
                    "fraction": p.expr.fraction().map(|f| f.to_string()),
                    "implicit_closure": td.implicit_closure,
                    "pd": td.diagram.to_string(),
                })
            } else if let Some(path) = pd {
                describe_diagram(&read_diagram(&path)?)
            } else {
                bail!(InputError(
                    "one of --nabla, --delta, --conway, --pd is required".into()
                ));
            };
            print_fields(&v, json);
        }
        Command::Normalize { form } => {
            let m: MontesinosForm = form.parse()?;
            let c = montesinos_canonical(&m);
            if json {
                println!(
                    "{}",
                    json!({ "canonical": c.to_string(), "entry_sum": c.entry_sum().to_string() })
                );
            } else {
                println!("{c}");
            }
        }
        Command::Surgery { command } => surgery(command, json)?,
        Command::Bound { input } => {
            let d = input.diagram()?;
            let tw = twist_classes(&d);
            let v = json!({
                "t_strong": tw.t_strong,
                "t_strong_reverse": tw.t_strong_reverse,
                "volume_bound": volume_bound(&d)?,
            });
            print_fields(&v, json);
        }
        Command::Family {
            input,
            components,
            count,
        } => {
            let r = realize(&input.nabla()?, components, false)?;
            let f = enumerate_family(&r, count)?;
            if json {
                print!("{}", f.to_json_lines());
            } else {
                for m in &f.members {
                    let p = serde_json::to_string(&m.parameter)?;
                    println!(
                        "{p}\tcrossings {}\tverified {}\tlinking {:?}",
                        m.crossings, m.verified, m.linking_numbers
                    );
                }
                for a in &f.annotations {
                    println!("# {a}");
                }
            }
        }
    }
    Ok(())
}

fn surgery(command: SurgeryCommand, json: bool) -> Result<()> {
    match command {
        SurgeryCommand::Triples { k, n } => {
            let t = surgery_triples(k, n)?;
            if json {
                println!("{}", serde_json::to_string(&t)?);
            } else {
                println!("{} {} {}", t.p, t.q, t.r);
            }
        }
        SurgeryCommand::Volume { q_max } => {
            for (p, q, r) in large_volume_triples(q_max)? {
                if json {
                    println!("{}", json!({ "p": p, "q": q, "r": r }));
                } else {
                    println!("{p} {q} {r}");
                }
            }
        }
        SurgeryCommand::V2 { a, b, c } => {
            let v = v2_pretzel(a, b, c)?;
            if json {
                println!("{}", json!({ "v2": v }));
            } else {
                println!("{v}");
            }
        }
        SurgeryCommand::Apply {
            pd,
            site,
            k,
            n,
            mirrored,
        } => {
            if site.len() != 2 {
                bail!(InputError(format!(
                    "a clasp site has two crossings, got {}",
                    site.len()
                )));
            }
            let d = read_diagram(&pd)?;
            let t = surgery_triples(k, n)?;
            let out = apply_tangle_surgery(&d, &site, &t, mirrored)?;
            if json {
                let v = json!({ "triple": t, "pd": out.to_string(), "crossings": out.crossing_count() });
                println!("{v}");
            } else {
                print!("{out}");
            }
        }
    }
    Ok(())
}

#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn diagram_code(e: &DiagramError) -> u8 {
    match e {
        DiagramError::Limit { .. } => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

fn tangle_code(e: &TangleError) -> u8 {
    match e {
        TangleError::Diagram(d) => diagram_code(d),
        _ => EXIT_INPUT,
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<ConstructError>() {
        return match e {
            ConstructError::ImpossibleRealization { .. } => EXIT_IMPOSSIBLE,
            ConstructError::Diagram(d) => diagram_code(d),
            ConstructError::Tangle(t) => tangle_code(t),
            ConstructError::Mismatch(_)
            | ConstructError::Certificate(_)
            | ConstructError::Unsupported(_) => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
    }
    if let Some(e) = err.downcast_ref::<SurgeryError>() {
        return match e {
            SurgeryError::Diagram(d) => diagram_code(d),
            SurgeryError::Tangle(t) => tangle_code(t),
            SurgeryError::NotPreserved { .. } | SurgeryError::Internal(..) => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
    }
    if let Some(e) = err.downcast_ref::<DiagramError>() {
        return diagram_code(e);
    }
    if let Some(e) = err.downcast_ref::<TangleError>() {
        return tangle_code(e);
    }
    if err.downcast_ref::<PolyError>().is_some()
        || err.downcast_ref::<InputError>().is_some()
        || err.downcast_ref::<io::Error>().is_some()
        || err.downcast_ref::<serde_json::Error>().is_some()
    {
        return EXIT_INPUT;
    }
    EXIT_LIMIT
}

fn main() -> ExitCode {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(l) = cli.limit {
        std::env::set_var("KNOTFORGE_LIMIT", l.to_string());
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
