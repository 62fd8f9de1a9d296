mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use spiralis::exactlin::Field;
use spiralis::fixtures;
use spiralis::invariants::{config_c, config_cm, Configuration, Space, Values};
use spiralis::io::{self, Input};
use spiralis::measures::{bottleneck_cm, matching_distance_c};
use spiralis::pipeline::{Analysis, MapKind};
use spiralis::quiver::{decompose_g2m, Decomposition};
use spiralis::verify::{self, Report};
use spiralis::Error;

#[derive(Parser)]
#[command(name = "spiralis", version, about = "Bar codes, Jordan blocks and configurations of circle-valued maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a representation or the representations of a map.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        /// A prime or Q; overrides the field named in the input.
        #[arg(long)]
        field: Option<String>,
        /// Comma-separated degrees; all degrees by default.
        #[arg(long)]
        degrees: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check the identities relating bars, Jordan blocks, homology and the
    /// jump functions.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random perturbations for the stability check.
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Dimension of X when it is a closed orientable manifold; enables
        /// the duality check.
        #[arg(long)]
        manifold_dim: Option<usize>,
        /// Representation JSON replacing the computed one in its degree.
        #[arg(long)]
        rep: Vec<PathBuf>,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance between two configuration CSV files.
    Distance {
        /// Exactly two files.
        #[arg(long, num_args = 2, required = true)]
        input: Vec<PathBuf>,
        #[arg(long)]
        degree: Option<usize>,
        /// Bottleneck distance with the diagonal as a sink instead of the
        /// matching distance.
        #[arg(long)]
        bottleneck: bool,
    },
    /// Render a configuration CSV as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Print a built-in example as complex JSON.
    Fixture { name: String },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
    Finding,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_field(s: &Option<String>) -> Result<Option<Field>, Failure> {
    Ok(s.as_deref().map(Field::parse).transpose()?)
}

fn parse_degrees(s: &Option<String>, top: usize) -> Result<Vec<usize>, Failure> {
    let Some(s) = s else {
        return Ok((0..=top).collect());
    };
    let mut out = Vec::new();
    for t in s.split(',') {
        let r: usize = t.trim().parse().map_err(|_| Error::Input(format!("degrees: cannot parse {t:?}")))?;
        if r > top {
            return Err(Error::Input(format!("degrees: {r} exceeds the top degree {top}")).into());
        }
        out.push(r);
    }
    Ok(out)
}

/// Everything written for one degree.
struct DegreeOutput {
    degree: usize,
    decomp: Decomposition,
    c: Configuration,
    cm: Configuration,
    rep: Option<Value>,
}

/// Writes one degree into `out/degree_r`, via a temporary directory that is
/// renamed into place.
fn write_degree(out: &Path, d: &DegreeOutput, format: Format) -> Result<(), Failure> {
    let dir = out.join(format!("degree_{}", d.degree));
    let tmp = out.join(format!(".degree_{}.tmp", d.degree));
    let io_err = |e: std::io::Error| Failure::Io(format!("{}: {e}", dir.display()));
    if tmp.exists() {
        fs::remove_dir_all(&tmp).map_err(io_err)?;
    }
    fs::create_dir_all(&tmp).map_err(io_err)?;
    write(&tmp.join("bars.csv"), &io::bars_csv(&[&d.decomp]))?;
    write(&tmp.join("jordans.csv"), &io::jordans_csv(&[&d.decomp]))?;
    write(&tmp.join("configurations.csv"), &io::configurations_csv(&[&d.c]))?;
    write(&tmp.join("configurations_m.csv"), &io::configurations_csv(&[&d.cm]))?;
    if d.c.space == Space::Torus {
        write(&tmp.join("polynomial.json"), &format!("{}\n", io::polynomial_json(&d.c)))?;
    }
    if let Some(rep) = &d.rep {
        write(&tmp.join("representation.json"), &format!("{}\n", serde_json::to_string_pretty(rep).unwrap()))?;
    }
    if format == Format::Svg {
        write(&tmp.join("configurations.svg"), &svg::render(&[d.c.clone()]))?;
    }
    if format == Format::Json {
        let doc = json!({
            "degree": d.degree,
            "bars": d.decomp.bars,
            "jordans": d.decomp.jordans.iter().map(|j| json!({
                "poly": j.block.poly.pretty(), "power": j.block.power, "mult": j.multiplicity
            })).collect::<Vec<_>>(),
            "configuration": d.c,
            "configuration_m": d.cm,
        });
        write(&tmp.join("decomposition.json"), &format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
    }
    if dir.exists() {
        fs::remove_dir_all(&dir).map_err(io_err)?;
    }
    fs::rename(&tmp, &dir).map_err(io_err)
}

fn decompose(input: &Path, field: &Option<String>, degrees: &Option<String>, out: &Path, format: Format) -> Result<(), Failure> {
    let parsed = io::parse_input(&read(input)?, parse_field(field)?)?;
    fs::create_dir_all(out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    let outputs: Vec<DegreeOutput> = match parsed {
        Input::Rep(rho) => {
            let wanted = if degrees.is_some() { parse_degrees(degrees, usize::MAX)? } else { vec![rho.degree] };
            if wanted.iter().any(|&r| r != rho.degree) {
                return Err(Error::Input(format!("degrees: the representation is in degree {}", rho.degree)).into());
            }
            let d = decompose_g2m(&rho)?;
            let values = Values::Angles(rho.angles.clone());
            vec![DegreeOutput {
                degree: rho.degree,
                c: config_c(&d, None, &values),
                cm: config_cm(&d, &values)?,
                decomp: d,
                rep: None,
            }]
        }
        Input::Complex { complex, map, field } => {
            let an = Analysis::new(complex, map, field)?;
            parse_degrees(degrees, an.top_degree())?
                .into_iter()
                .map(|r| {
                    Ok(DegreeOutput {
                        degree: r,
                        decomp: an.decomps[r].clone(),
                        c: an.config_c(r),
                        cm: an.config_cm(r)?,
                        rep: an.circle_rep(r).map(io::rep_json),
                    })
                })
                .collect::<Result<_, Failure>>()?
        }
    };
    outputs.par_iter().map(|d| write_degree(out, d, format)).collect::<Result<Vec<()>, Failure>>()?;
    Ok(())
}

fn verify_cmd(
    input: &Path,
    field: &Option<String>,
    seed: u64,
    trials: usize,
    manifold_dim: Option<usize>,
    reps: &[PathBuf],
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let flag = parse_field(field)?;
    let reports: Vec<Report> = match io::parse_input(&read(input)?, flag)? {
        Input::Rep(rho) => vec![verify::rep_report(&rho)?],
        Input::Complex { complex, map, field } => {
            let mut an = Analysis::new(complex, map, field)?;
            for path in reps {
                match io::parse_input(&read(path)?, Some(field))? {
                    Input::Rep(rho) => an = an.with_rep(rho)?,
                    Input::Complex { .. } => return Err(Error::Input(format!("rep: {} is not a representation", path.display())).into()),
                }
            }
            let circle = matches!(an.map, MapKind::Circle(_));
            let suites: Vec<&str> = ["betti", "monodromy", "jump", "stability", "duality"]
                .into_iter()
                .filter(|s| match *s {
                    "stability" => circle && trials > 0,
                    "duality" => manifold_dim.is_some(),
                    _ => true,
                })
                .collect();
            suites
                .par_iter()
                .map(|s| match *s {
                    "betti" => verify::betti_report(&an),
                    "monodromy" => verify::monodromy_report(&an),
                    "jump" => verify::jump_report(&an),
                    "stability" => verify::stability_report(&an, trials, seed),
                    _ => {
                        let rev = Analysis::new(an.complex.clone(), an.map.reversed(), an.field)?;
                        verify::duality_report(&an, &rev, manifold_dim.unwrap())
                    }
                })
                .collect::<Result<_, Error>>()?
        }
    };
    let ok = reports.iter().all(Report::is_ok);
    let doc = json!({ "status": if ok { "ok" } else { "mismatch" }, "reports": reports });
    let text = format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
    print!("{text}");
    if let Some(path) = out {
        write(path, &text)?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Finding)
    }
}

fn pick(configs: Vec<Configuration>, degree: Option<usize>) -> Vec<Configuration> {
    match degree {
        None => configs,
        Some(r) => configs.into_iter().filter(|c| c.degree == r).collect(),
    }
}

/// All points of the file as one configuration.
fn merged(configs: Vec<Configuration>, space: Space) -> Result<Configuration, Failure> {
    let degree = configs.first().map_or(0, |c| c.degree);
    let mut out = Configuration::empty(degree, space);
    for c in configs {
        if c.space != space {
            return Err(Error::Input("space: both files must use the same space".into()).into());
        }
        out.points.extend(c.points);
    }
    Ok(out)
}

fn distance(inputs: &[PathBuf], degree: Option<usize>, bottleneck: bool) -> Result<(), Failure> {
    let mut sides = Vec::new();
    for p in inputs {
        sides.push(pick(io::parse_configurations(&read(p)?)?, degree));
    }
    let space = sides.iter().flatten().map(|c| c.space).next().unwrap_or(Space::Torus);
    let b = merged(sides.pop().unwrap(), space)?;
    let a = merged(sides.pop().unwrap(), space)?;
    let d = if bottleneck { bottleneck_cm(&a, &b)? } else { matching_distance_c(&a, &b)? };
    println!("{d:.12}");
    Ok(())
}

fn plot(input: &Path, out: &Path, degree: Option<usize>) -> Result<(), Failure> {
    let configs = pick(io::parse_configurations(&read(input)?)?, degree);
    let target = if out.is_dir() { out.join("configurations.svg") } else { out.to_path_buf() };
    write(&target, &svg::render(&configs))
}

fn fixture(name: &str) -> Result<(), Failure> {
    let fx = match name {
        "identity-circle" => fixtures::identity_circle(),
        "torus" => fixtures::torus_projection(),
        "klein" => fixtures::klein_mapping_torus(),
        "unipotent" => fixtures::unipotent_mapping_torus(),
        "halving" => fixtures::halving_mapping_torus(),
        "sphere-arc" => fixtures::sphere_into_arc(),
        "height-circle" => fixtures::height_circle(),
        "height-real" => fixtures::height_circle_real(),
        "y-shape" => fixtures::y_shape(),
        _ => {
            return Err(Error::Input(format!(
                "fixture: unknown name {name:?}; expected identity-circle, torus, klein, unipotent, halving, \
                 sphere-arc, height-circle, height-real or y-shape"
            ))
            .into())
        }
    };
    let doc: Value = io::complex_json(&fx.complex, &fx.map, Field::Prime(5));
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("SPIRALIS_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        // a second initialisation only happens in tests and is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match &cli.command {
        Command::Decompose { input, field, degrees, out, format } => decompose(input, field, degrees, out, *format),
        Command::Verify { input, field, seed, trials, manifold_dim, rep, out } => {
            verify_cmd(input, field, *seed, *trials, *manifold_dim, rep, out)
        }
        Command::Distance { input, degree, bottleneck } => distance(input, *degree, *bottleneck),
        Command::Plot { input, out, degree } => plot(input, out, *degree),
        Command::Fixture { name } => fixture(name),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Finding) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
