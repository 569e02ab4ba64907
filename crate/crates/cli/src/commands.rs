use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quiver_uinv::field::format_rational;
use quiver_uinv::invariants::eval_generator;
use quiver_uinv::quiver::{act, validate, Model};
use quiver_uinv::reduction::reduce_to_section;
use quiver_uinv::verify::{run_all, VerifyOptions};
use quiver_uinv::{
    build_system, Error, GeneratorDescriptor, GeneratorSystem, LoopMode, PrimeField, Quiver, SectionSpec,
};

use crate::format::{format_point, parse_point, parse_quiver, write_matrix_block};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_OMEGA: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "quinv",
    version,
    about = "Generators of U-invariants of equidimensional quiver representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a quiver file; diagnostics go to standard error.
    Validate { quiver: PathBuf },
    /// Section shape and dimension per arrow.
    Section(Listing),
    /// The generator system, one line per generator.
    Generators(Listing),
    /// Generator count, total and per arrow.
    Count(Listing),
    /// Evaluate every generator at a point.
    Eval {
        quiver: PathBuf,
        #[arg(long)]
        point: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Extended)]
        mode: Mode,
    },
    /// Move a point of Omega into the section.
    Reduce {
        quiver: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Run the randomized verification suite.
    Verify {
        quiver: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = quiver_uinv::DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Mode::Extended)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(clap::Args, Debug)]
pub struct Listing {
    pub quiver: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Extended)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Paper,
    Extended,
}

impl From<Mode> for LoopMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Paper => LoopMode::Paper,
            Mode::Extended => LoopMode::Extended,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// What a command printed and how it exits.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            stderr,
            code,
            ..Self::default()
        }
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_PARSE, format!("cannot read {}: {e}\n", path.display())))
}

pub fn load_model(path: &Path) -> Result<Model, Outcome> {
    model_from_text(&read(path)?)
}

pub fn model_from_text(text: &str) -> Result<Model, Outcome> {
    let decl = parse_quiver(text).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{e}\n")))?;
    validate(&decl).map_err(|diagnostics| {
        let mut stderr = String::new();
        for d in diagnostics {
            let _ = writeln!(stderr, "{d}");
        }
        Outcome::fail(EXIT_FAIL, stderr)
    })
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Validate { quiver } => load_model(&quiver).map(|_| Outcome::default()),
        Command::Section(l) => load_model(&l.quiver).map(|m| Outcome::ok(section(&m, l.format))),
        Command::Generators(l) => load_model(&l.quiver).map(|m| Outcome::ok(generators(&m, l.mode.into(), l.format))),
        Command::Count(l) => load_model(&l.quiver).map(|m| Outcome::ok(count(&m, l.mode.into(), l.format))),
        Command::Eval { quiver, point, mode } => {
            load_model(&quiver).and_then(|m| eval(&m, &read(&point)?, mode.into()))
        }
        Command::Reduce { quiver, point } => load_model(&quiver).and_then(|m| reduce(&m, &read(&point)?)),
        Command::Verify {
            quiver,
            trials,
            seed,
            prime,
            mode,
            format,
        } => load_model(&quiver).and_then(|m| {
            let prime = PrimeField::new(prime)
                .ok_or_else(|| Outcome::fail(EXIT_PARSE, format!("--prime {prime} is not a prime\n")))?;
            let options = VerifyOptions {
                trials,
                seed,
                prime,
                mode: mode.into(),
            };
            Ok(verify(&m, &options, format))
        }),
    };
    result.unwrap_or_else(|failure| failure)
}

#[derive(Serialize)]
struct SectionRow<'a> {
    arrow: &'a str,
    shape: &'static str,
    dim: usize,
}

pub fn section(model: &Model, format: Format) -> String {
    let spec = SectionSpec::new(model);
    let quiver = &model.quiver;
    let mut out = String::new();
    if format == Format::Text {
        let _ = writeln!(out, "arrow shape dim");
    }
    for a in quiver.arrow_ids() {
        let row = SectionRow {
            arrow: quiver.arrow_name(a),
            shape: spec.shape(a).symbol(),
            dim: spec.dim(a),
        };
        match format {
            Format::Text => {
                let _ = writeln!(out, "{} {} {}", row.arrow, row.shape, row.dim);
            }
            Format::Json => {
                let _ = writeln!(out, "{}", serde_json::to_string(&row).expect("serializable"));
            }
        }
    }
    if format == Format::Text {
        let _ = writeln!(out, "total {}", spec.total_dim());
    }
    out
}

#[derive(Serialize)]
struct LeadingJson<'a> {
    arrow: &'a str,
    row: usize,
    col: usize,
}

#[derive(Serialize)]
struct DescriptorJson<'a> {
    id: usize,
    kind: &'static str,
    arrows: Vec<&'a str>,
    i: Option<usize>,
    k: usize,
    leading: LeadingJson<'a>,
    side: &'static str,
}

fn descriptor_json<'a>(id: usize, d: &GeneratorDescriptor, quiver: &'a Quiver) -> DescriptorJson<'a> {
    DescriptorJson {
        id,
        kind: d.kind.as_str(),
        arrows: d.arrows.iter().map(|&a| quiver.arrow_name(a)).collect(),
        i: d.i,
        k: d.k,
        leading: LeadingJson {
            arrow: quiver.arrow_name(d.leading.arrow),
            row: d.leading.pos.row,
            col: d.leading.pos.col,
        },
        side: d.side.as_str(),
    }
}

pub fn generators(model: &Model, mode: LoopMode, format: Format) -> String {
    let system = build_system(model, mode);
    let quiver = &model.quiver;
    let mut out = String::new();
    for (id, d) in system.descriptors.iter().enumerate() {
        match format {
            Format::Text => {
                let _ = writeln!(
                    out,
                    "{id} {} {}{} {}",
                    d.label(quiver),
                    quiver.arrow_name(d.leading.arrow),
                    d.leading.pos,
                    d.side.as_str()
                );
            }
            Format::Json => {
                let json = serde_json::to_string(&descriptor_json(id, d, quiver)).expect("serializable");
                let _ = writeln!(out, "{json}");
            }
        }
    }
    out
}

#[derive(Serialize)]
struct ArrowCount<'a> {
    arrow: &'a str,
    count: usize,
}

#[derive(Serialize)]
struct CountJson<'a> {
    total: usize,
    section_dim: usize,
    per_arrow: Vec<ArrowCount<'a>>,
}

pub fn count(model: &Model, mode: LoopMode, format: Format) -> String {
    let system: GeneratorSystem = build_system(model, mode);
    let quiver = &model.quiver;
    let report = CountJson {
        total: system.len(),
        section_dim: SectionSpec::new(model).total_dim(),
        per_arrow: quiver
            .arrow_ids()
            .map(|a| ArrowCount {
                arrow: quiver.arrow_name(a),
                count: system.count_for(a),
            })
            .collect(),
    };
    match format {
        Format::Json => serde_json::to_string(&report).expect("serializable") + "\n",
        Format::Text => {
            let mut out = format!("total {}\nsection_dim {}\n", report.total, report.section_dim);
            for c in &report.per_arrow {
                let _ = writeln!(out, "{} {}", c.arrow, c.count);
            }
            out
        }
    }
}

pub fn eval(model: &Model, point_text: &str, mode: LoopMode) -> Result<Outcome, Outcome> {
    let h = parse_point(point_text, model).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{e}\n")))?;
    let system = build_system(model, mode);
    let mut out = String::new();
    for (id, d) in system.descriptors.iter().enumerate() {
        let value = eval_generator(d, &h).map_err(|e| Outcome::fail(EXIT_FAIL, format!("{e}\n")))?;
        let _ = writeln!(out, "{id} {}", format_rational(&value));
    }
    Ok(Outcome::ok(out))
}

pub fn reduce(model: &Model, point_text: &str) -> Result<Outcome, Outcome> {
    let h = parse_point(point_text, model).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{e}\n")))?;
    let quiver = &model.quiver;
    let g = reduce_to_section(&h, model).map_err(|e| match e {
        Error::NotInOmega { .. } => Outcome::fail(EXIT_OMEGA, format!("{e}\n")),
        other => Outcome::fail(EXIT_FAIL, format!("{other}\n")),
    })?;
    let moved = act(quiver, &g, &h).map_err(|e| Outcome::fail(EXIT_FAIL, format!("{e}\n")))?;
    let spec = SectionSpec::new(model);
    let mut out = String::from("# g\n");
    for v in quiver.vertices() {
        write_matrix_block(&mut out, quiver.vertex_name(v), g.matrix(v));
    }
    out.push_str("# reduced point\n");
    out.push_str(&format_point(quiver, &moved));
    out.push_str("# shape\n");
    let mut all_ok = true;
    for a in quiver.arrow_ids() {
        let shape = spec.shape(a);
        let ok = moved.matrix(a).is_member(shape);
        all_ok &= ok;
        let _ = writeln!(
            out,
            "{} {} {}",
            quiver.arrow_name(a),
            shape.symbol(),
            if ok { "ok" } else { "fail" }
        );
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code: if all_ok { EXIT_PASS } else { EXIT_FAIL },
    })
}

pub fn verify(model: &Model, options: &VerifyOptions, format: Format) -> Outcome {
    let report = run_all(model, options);
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                let _ = write!(
                    out,
                    "{} {}/{} {}",
                    c.name,
                    c.passes,
                    c.trials,
                    if c.passed() { "pass" } else { "FAIL" }
                );
                if let Some(seed) = c.counterexample_seed {
                    let _ = write!(out, " seed={seed}");
                }
                if let Some(detail) = &c.detail {
                    let _ = write!(out, " ({detail})");
                }
                out.push('\n');
            }
            let _ = writeln!(out, "verdict {}", if report.passed() { "pass" } else { "fail" });
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.passed() { EXIT_PASS } else { EXIT_FAIL },
    }
}
