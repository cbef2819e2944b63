//! `focal`: analyze wave fronts and their focal surfaces from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use focal_core::fixtures::{fixture, FIXTURES};
use focal_core::format::parse_pair;
use focal_core::poly::ratio_to_f64;
use focal_core::{
    export_mesh, parse_surface_spec, run_report, trace_singular_curve, AnalysisRequest, Error, FrontModel, Output, Region,
    SurfaceFile, TraceOptions, Which,
};

#[derive(Parser)]
#[command(name = "focal", version, about = "Singularities and focal surfaces of wave fronts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    F,
    Focal,
}

impl From<Target> for Which {
    fn from(t: Target) -> Which {
        match t {
            Target::F => Which::F,
            Target::Focal => Which::Focal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the point and print the JSON report.
    Analyze {
        /// Spec file, or `fixture:NAME`.
        spec: String,
        /// Point `U,V`; defaults to the point marked in the file.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also check the normal-congruence factorization at sampled points.
        #[arg(long)]
        congruence: bool,
    },
    /// Export an OBJ mesh of f or of the focal surface.
    Mesh {
        spec: String,
        #[arg(long, value_enum)]
        which: Target,
        /// `u0,u1,v0,v1`.
        #[arg(long, allow_hyphen_values = true)]
        region: String,
        /// `NxM` samples.
        #[arg(long, default_value = "41x41")]
        res: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Trace the singular curve of f or of the focal surface to CSV.
    Trace {
        spec: String,
        #[arg(long, value_enum)]
        which: Target,
        /// `U,V` near the curve.
        #[arg(long, allow_hyphen_values = true)]
        seed: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Built-in surfaces.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    Show { name: String },
}

fn load(spec: &str) -> Result<SurfaceFile, Error> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        return fixture(name)
            .map(|f| f.surface())
            .ok_or_else(|| Error::InvalidRequest(format!("unknown fixture '{name}'")));
    }
    let text = fs::read_to_string(Path::new(spec)).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    parse_surface_spec(&text)
}

fn pair_f64(s: &str) -> Result<(f64, f64), Error> {
    let (a, b) = parse_pair(s)?;
    Ok((ratio_to_f64(a), ratio_to_f64(b)))
}

fn numbers(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidRequest(format!("malformed {what} '{s}'")))?;
    if parts.len() != n {
        return Err(Error::InvalidRequest(format!("{what} needs {n} comma-separated numbers")));
    }
    Ok(parts)
}

fn resolution(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::InvalidRequest(format!("malformed resolution '{s}', expected NxM"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn anchor(file: &SurfaceFile, point: Option<&str>, fallback: Option<(f64, f64)>) -> Result<(f64, f64), Error> {
    match (point, file.point, fallback) {
        (Some(p), _, _) => pair_f64(p),
        (None, Some((a, b)), _) => Ok((ratio_to_f64(a), ratio_to_f64(b))),
        (None, None, Some(p)) => Ok(p),
        _ => Err(Error::InvalidRequest("no point given and none marked in the file".into())),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Analyze { spec, point, order, json, congruence } => {
            let file = load(&spec)?;
            let point = point.as_deref().map(parse_pair).transpose()?;
            let mut req = AnalysisRequest::from_file(&file, point)?;
            req.jet_order = order;
            if congruence {
                req.outputs.push(Output::CongruenceCheck);
            }
            let doc = run_report(&req)?;
            let text = doc.to_json();
            match json {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(doc.exit_code() as u8)
        }
        Command::Mesh { spec, which, region, res, out, point } => {
            let file = load(&spec)?;
            let r = numbers(&region, 4, "region")?;
            let region = Region { u0: r[0], u1: r[1], v0: r[2], v1: r[3] };
            let which = Which::from(which);
            let model = match which {
                Which::F => None,
                Which::Focal => {
                    let p = anchor(&file, point.as_deref(), None)?;
                    Some(FrontModel::new(&file.spec, p, Default::default())?)
                }
            };
            let mesh = export_mesh(&file.spec, model.as_ref(), region, resolution(&res)?, which)?;
            write(&out, &mesh.to_obj())?;
            eprintln!("wrote {} vertices, {} faces to {}", mesh.vertices.len(), mesh.faces.len(), out.display());
            Ok(0)
        }
        Command::Trace { spec, which, seed, steps, step, out, point } => {
            let file = load(&spec)?;
            let seed = pair_f64(&seed)?;
            let p = anchor(&file, point.as_deref(), Some(seed))?;
            let model = FrontModel::new(&file.spec, p, Default::default())?;
            let opts = TraceOptions { steps, step, ..TraceOptions::default() };
            let trace = trace_singular_curve(&model, which.into(), seed, &opts)?;
            write(&out, &trace.to_csv())?;
            eprintln!("wrote {} points to {}", trace.points.len(), out.display());
            Ok(0)
        }
        Command::Fixtures { action: FixtureAction::List } => {
            for f in FIXTURES {
                println!("{:<20} {}", f.name, f.description);
            }
            Ok(0)
        }
        Command::Fixtures { action: FixtureAction::Show { name } } => {
            let f = fixture(&name).ok_or_else(|| Error::InvalidRequest(format!("unknown fixture '{name}'")))?;
            print!("# {}\n{}", f.description, focal_core::print_surface_spec(&f.surface()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
