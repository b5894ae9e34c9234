use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sq3::algebraic::FieldElement;
use sq3::error::GroupError;
use sq3::goursat::{validate_spec, GroupSpec};
use sq3::orbit_cell::{cell_json, cell_statistics, NumberJson};
use sq3::quaternion::Quaternion;
use sq3::report::{
    self, analyze, build_table, compute, hypercube_check, Analysis, BackendChoice, Computation,
    Table, TableKind,
};
use sq3::scalar::{set_float_tolerance, Scalar};

/// Finite isometry groups of S³: orbits of 1, pre-fundamental domains and
/// quotient diameter bounds.
#[derive(Parser, Debug)]
#[command(name = "sq3", version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Arithmetic backend: exact, float or auto (exact when supported).
    #[arg(long, global = true, env = "SQ3_BACKEND", default_value = "auto")]
    backend: BackendChoice,
    /// Tolerance of the float backend.
    #[arg(long, global = true, env = "SQ3_EPS", default_value_t = 1e-9)]
    eps: f64,
    #[arg(long, global = true, conflicts_with_all = ["csv", "md"])]
    json: bool,
    #[arg(long, global = true, conflicts_with = "md")]
    csv: bool,
    #[arg(long, global = true)]
    md: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diameter lower bound from the cell of 1.
    Diameter { spec: String },
    /// Orbit of 1, grouped by distance.
    Orbit { spec: String },
    /// Vertices, faces and bound of the cell of 1.
    Cell { spec: String },
    /// Recompute a summary table and compare with the expected values.
    Table { which: TableKind },
    /// Cell of the cubical tessellation of Sⁿ.
    Hypercube { n: usize },
    /// Check the Goursat datum and closure of a group.
    Validate { spec: String },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::InvalidParameters { .. } | GroupError::UnknownFamily(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn parse_spec(s: &str) -> Result<GroupSpec, Failure> {
    s.parse::<GroupSpec>()
        .map_err(|e| Failure::Usage(format!("{s}: {e}")))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Runtime(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn pi_ratio(r: f64) -> String {
    if r > 0.0 {
        format!("π/{:.3}", std::f64::consts::PI / r)
    } else {
        "0".into()
    }
}

fn warn_fallback(c: &Computation) {
    if c.fell_back {
        eprintln!(
            "warning: {} has no exact representation here; using the float backend",
            c.spec
        );
    }
}

fn cmd_diameter(spec: &GroupSpec, opts: &GlobalOpts) -> Result<bool, Failure> {
    let c = compute(spec, opts.backend)?;
    warn_fallback(&c);
    if opts.json {
        print_json(&c)?;
        return Ok(true);
    }
    println!("group       {}", c.spec);
    println!("backend     {}", c.backend);
    println!("order       {}", c.order);
    println!(
        "orbit       {} points, stabilizer {}",
        c.orbit_size, c.stabilizer
    );
    for (i, (r, count)) in c.layers.iter().enumerate().skip(1) {
        println!("  layer {i}   {count} at {r:.12} ({})", pi_ratio(*r));
    }
    println!("cell        {:?}, {} vertices", c.kind, c.vertices);
    if !c.faces.census.is_empty() {
        let census: Vec<String> = c
            .faces
            .census
            .iter()
            .map(|(k, v)| format!("{v}×{k}-gon"))
            .collect();
        println!(
            "faces       {} ({}), {} edges",
            c.faces.faces.len(),
            census.join(", "),
            c.faces.edges
        );
    }
    if let Some(e) = &c.exact {
        println!("cos²        {}", e.cos2);
    }
    if let Some(expr) = &c.expression {
        println!("bound       {expr}");
    }
    println!(
        "radians     {:.15} ({})",
        c.bound.radians,
        pi_ratio(c.bound.radians)
    );
    Ok(true)
}

fn with_backend<R>(
    spec: &GroupSpec,
    backend: BackendChoice,
    exact: impl FnOnce(Analysis<FieldElement>) -> Result<R, Failure>,
    float: impl FnOnce(Analysis<f64>) -> Result<R, Failure>,
) -> Result<R, Failure> {
    if backend != BackendChoice::Float {
        match analyze::<FieldElement>(spec) {
            Ok(a) => return exact(a),
            Err(GroupError::UnsupportedExact(_)) if backend == BackendChoice::Exact => {
                eprintln!(
                    "warning: {spec} has no exact representation here; using the float backend"
                );
            }
            Err(GroupError::UnsupportedExact(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    float(analyze::<f64>(spec)?)
}

#[derive(Serialize)]
struct LayerJson {
    radians: f64,
    cos: NumberJson,
    points: Vec<[NumberJson; 4]>,
}

#[derive(Serialize)]
struct OrbitJson {
    spec: String,
    backend: &'static str,
    order: usize,
    stabilizer: usize,
    layers: Vec<LayerJson>,
}

fn show_orbit<S: Scalar + Display>(a: Analysis<S>, json: bool) -> Result<bool, Failure>
where
    Quaternion<S>: Display,
{
    if json {
        let layers = a
            .orbit
            .layers
            .iter()
            .map(|l| LayerJson {
                radians: l.radians,
                cos: NumberJson::of(&l.cos),
                points: l
                    .members
                    .iter()
                    .map(|&i| a.orbit.points[i].to_array().map(|c| NumberJson::of(&c)))
                    .collect(),
            })
            .collect();
        print_json(&OrbitJson {
            spec: a.group.spec().to_string(),
            backend: S::NAME,
            order: a.group.order(),
            stabilizer: a.orbit.stabilizer,
            layers,
        })?;
        return Ok(true);
    }
    println!(
        "{}: order {}, orbit {} points, stabilizer {}",
        a.group.spec(),
        a.group.order(),
        a.orbit.len(),
        a.orbit.stabilizer
    );
    for l in &a.orbit.layers {
        println!(
            "distance {:.12} (cos {}), {} points",
            l.radians,
            l.cos,
            l.members.len()
        );
        for &i in &l.members {
            println!("  {}", a.orbit.points[i]);
        }
    }
    Ok(true)
}

fn show_cell<S: Scalar + Display>(a: Analysis<S>, json: bool) -> Result<bool, Failure> {
    if json {
        print_json(&cell_json(&a.orbit, &a.cell))?;
        return Ok(true);
    }
    let stats = cell_statistics(&a.cell);
    println!(
        "{}: {:?} cell, {} bisectors",
        a.group.spec(),
        a.cell.kind,
        a.cell.halfspaces.len()
    );
    println!(
        "{} vertices, {} edges, {} faces, Euler characteristic {}",
        stats.vertices,
        stats.edges,
        stats.faces.len(),
        stats.euler_characteristic
    );
    for v in &a.cell.vertices {
        let d = &v.direction;
        println!("  1 : {} : {} : {}   cos² {}", d[1], d[2], d[3], v.cos2());
    }
    println!(
        "bound {:.15} rad, cos² {}",
        a.cell.bound.radians, a.cell.bound.cos2
    );
    Ok(true)
}

fn print_table(t: &Table, opts: &GlobalOpts) -> Result<(), Failure> {
    if opts.json {
        print_json(t)
    } else if opts.csv {
        let text = report::render_csv(t).map_err(|e| Failure::Runtime(e.to_string()))?;
        print!("{text}");
        Ok(())
    } else if opts.md {
        print!("{}", report::render_markdown(t));
        Ok(())
    } else {
        print!("{}", report::render_text(t));
        Ok(())
    }
}

fn cmd_validate(spec: &GroupSpec, opts: &GlobalOpts) -> Result<bool, Failure> {
    let rep = match opts.backend {
        BackendChoice::Float => validate_spec::<f64>(spec)?,
        _ => match validate_spec::<FieldElement>(spec) {
            Err(GroupError::UnsupportedExact(_)) => validate_spec::<f64>(spec)?,
            r => r?,
        },
    };
    if opts.json {
        print_json(&rep)?;
    } else {
        for c in &rep.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            println!("{mark} {:<32} {}", c.name, c.detail);
        }
    }
    Ok(rep.is_valid())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let opts = &cli.opts;
    if !(opts.eps > 0.0 && opts.eps < 1e-3) {
        return Err(Failure::Usage(format!(
            "--eps must lie in (0, 1e-3), got {}",
            opts.eps
        )));
    }
    set_float_tolerance(opts.eps);
    match &cli.command {
        Command::Diameter { spec } => cmd_diameter(&parse_spec(spec)?, opts),
        Command::Orbit { spec } => with_backend(
            &parse_spec(spec)?,
            opts.backend,
            |a| show_orbit(a, opts.json),
            |a| show_orbit(a, opts.json),
        ),
        Command::Cell { spec } => with_backend(
            &parse_spec(spec)?,
            opts.backend,
            |a| show_cell(a, opts.json),
            |a| show_cell(a, opts.json),
        ),
        Command::Table { which } => {
            let t = build_table(*which, opts.backend);
            print_table(&t, opts)?;
            Ok(t.mismatches() == 0)
        }
        Command::Hypercube { n } => {
            if *n < 1 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            let row = hypercube_check(*n, opts.backend);
            let t = Table {
                kind: TableKind::O3,
                rows: vec![row],
            };
            if opts.json {
                print_json(&t.rows[0])?;
            } else if opts.csv || opts.md {
                print_table(&t, opts)?;
            } else {
                let r = &t.rows[0];
                println!(
                    "{}: {:.15} rad, expected {} = {:.15} [{}]",
                    r.row,
                    r.radians.unwrap_or(f64::NAN),
                    r.expected,
                    r.expected_radians.unwrap_or(f64::NAN),
                    r.status.label()
                );
                if let Some(d) = &r.detail {
                    println!("  {d}");
                }
                if let (Some(s), Some(g)) = (&r.spec, r.float_radians) {
                    println!(
                        "  {s} gives {:.15}, the generic cell {g:.15}",
                        r.radians.unwrap_or(f64::NAN)
                    );
                }
            }
            Ok(t.mismatches() == 0)
        }
        Command::Validate { spec } => cmd_validate(&parse_spec(spec)?, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
