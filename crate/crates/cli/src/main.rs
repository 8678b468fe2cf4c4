//! `transtan`: classify line/sphere configurations, compute normal forms of
//! envelope curves, verify fiber conics and emit plot data.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use transtan_core::configurations::{classify_configuration, component_lines, Verdict};
use transtan_core::input::{parse_mode, Document};
use transtan_core::plot::plot_data;
use transtan_core::report::{classification_json, envelope_json, fiber_json, num, to_text};
use transtan_core::{parse_rational, Error, Scalar};

#[derive(Parser)]
#[command(name = "transtan", version, about = "Lines transversal to two skew lines and tangent to quadrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format [default: csv for plot-data, json otherwise].
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Significant digits for numeric approximations.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
}

impl Cli {
    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::PlotData { .. } => Format::Csv,
            _ => Format::Json,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two spheres have finitely many common tangents
    /// transversal to two lines.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the frame mode of the document.
        #[arg(long)]
        mode: Option<String>,
        /// Family members listed for an infinite configuration.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Class, ramification and normal form of the envelope of one quadric.
    NormalForm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the second fiber component over the model curve at `(s, t)`.
    FiberVerify {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write sampled curves, tangent lines, ramification lines and
    /// tangency points to a directory.
    PlotData {
        #[arg(long)]
        input: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Parameters sampled on the first line.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::Core(Error::InvalidInput(_)) => 2,
            Failure::Core(Error::Internal(_)) => 4,
            Failure::Core(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(m) => f.write_str(m),
        }
    }
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| match e {
        Error::InvalidInput(m) => Error::InvalidInput(format!("{}: {m}", path.display())),
        other => other,
    })
    .map_err(Failure::from)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn rational(name: &str, v: &str) -> Result<Scalar, Failure> {
    parse_rational(v)
        .map(Scalar::from_rational)
        .map_err(|e| Error::InvalidInput(format!("--{name}: {e}")).into())
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<[String; 2]>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, rows);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::String(s) => rows.push([prefix.to_string(), s.clone()]),
        Value::Null => rows.push([prefix.to_string(), String::new()]),
        other => rows.push([prefix.to_string(), other.to_string()]),
    }
}

/// `path,value` rows of a report.
fn to_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "value"]).expect("in-memory write");
    for r in &rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json") + "\n",
        Format::Text => to_text(v),
        Format::Csv => to_csv(v),
    }
}

fn emit(v: &Value, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let s = render(v, format);
    print!("{s}");
    if let Some(p) = out {
        write_file(p, &s)?;
    }
    Ok(())
}

fn classify(cli: &Cli, input: &Path, out: Option<&Path>, mode: Option<&str>, samples: usize) -> Result<(), Failure> {
    let mut doc = read_document(input)?;
    if let Some(m) = mode {
        doc.mode = Some(parse_mode(m).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::InvalidInput(format!("--{msg}")),
            other => other,
        })?);
    }
    let cfg = doc.configuration()?;
    let rep = classify_configuration(&cfg)?;
    let mut v = classification_json(&cfg, &rep, cli.precision);
    if rep.verdict == Verdict::Infinite {
        let members: Vec<Value> = rep
            .components
            .iter()
            .filter(|c| c.case.is_some() && c.real)
            .flat_map(|c| component_lines(&cfg.pair, &c.form, samples))
            .map(|l| json!(l.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            .collect();
        v["family_samples"] = Value::Array(members);
    }
    if let Some(name) = &doc.name {
        v["name"] = json!(name);
    }
    emit(&v, cli.format(), out)
}

fn normal_form(cli: &Cli, input: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let doc = read_document(input)?;
    let pair = doc.line_pair()?;
    let q = doc.single_quadric()?;
    let mut v = envelope_json(&pair, &q, cli.precision)?;
    if let Some(name) = &doc.name {
        v["name"] = json!(name);
    }
    emit(&v, cli.format(), out)
}

fn plot(cli: &Cli, input: &Path, out: &Path, samples: usize) -> Result<(), Failure> {
    let doc = read_document(input)?;
    let pair = doc.line_pair()?;
    let mut quadrics: Vec<_> = doc.spheres.iter().map(transtan_core::quadrics::sphere_to_quadric).collect();
    quadrics.extend(doc.quadric.clone());
    if quadrics.is_empty() {
        return Err(Error::InvalidInput(format!("{}: no spheres or quadric to plot", input.display())).into());
    }
    let data = plot_data(&pair, &quadrics, samples)?;
    fs::create_dir_all(out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    let d = cli.precision;
    let files = data.csv(d);
    if cli.format() == Format::Json {
        let row = |q: usize, x: f64, z: f64| json!({ "quadric": q, "x": num(x, d), "z": num(z, d) });
        let v3 = |p: &[f64; 3]| json!(p.iter().map(|x| num(*x, d)).collect::<Vec<_>>());
        let lines = |rows: &[transtan_core::plot::LineRow]| {
            rows.iter()
                .map(|r| {
                    let mut o = row(r.quadric, r.x, r.z);
                    o["point"] = v3(&r.point);
                    o["direction"] = v3(&r.direction);
                    o
                })
                .collect::<Vec<_>>()
        };
        let v = json!({
            "curves": data.curves.iter().map(|r| row(r.quadric, r.x, r.z)).collect::<Vec<_>>(),
            "tangents": lines(&data.tangents),
            "ramification": lines(&data.ramification),
            "locus": data.locus.iter().map(|r| { let mut o = row(r.quadric, r.x, r.z); o["point"] = v3(&r.point); o }).collect::<Vec<_>>(),
        });
        let path = out.join("plot.json");
        write_file(&path, &(serde_json::to_string_pretty(&v).expect("json") + "\n"))?;
        println!("{}", path.display());
        return Ok(());
    }
    for (name, contents) in &files {
        let path = out.join(name);
        write_file(&path, contents)?;
        println!("{}: {} rows", path.display(), contents.lines().count() - 1);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Classify { input, out, mode, samples } => classify(cli, input, out.as_deref(), mode.as_deref(), *samples),
        Command::NormalForm { input, out } => normal_form(cli, input, out.as_deref()),
        Command::FiberVerify { s, t, samples, out } => {
            let v = fiber_json(&rational("s", s)?, &rational("t", t)?, *samples)?;
            emit(&v, cli.format(), out.as_deref())
        }
        Command::PlotData { input, out, samples } => plot(cli, input, out, *samples),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
