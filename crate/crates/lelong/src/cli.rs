//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so tests can drive it with in-memory streams.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use lelong_core::chainbound::{path_bound, PathBound};
use lelong_core::coneopt::{
    enumerate_rays_with_limit, sample_cone_with_limit, sharp_constant, DEFAULT_RAY_LIMIT,
};
use lelong_core::invariants::{ord_sequence, quotient_bound, report};
use lelong_core::{ade_graph, AdeFamily, Divisor, Error, Rat, ResolutionGraph, ValidGraph};

use crate::instance::{parse_instance, serialize_instance};
use crate::render::{self, Format};
use crate::report::{
    to_line, ChainDoc, OrdDoc, QuotientComparison, QuotientDoc, RaysDoc, ReportDoc, SampleDoc,
    SampleSummary, SharpDoc, ValidationDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

/// Overrides the ray-enumeration vertex limit.
pub const CAPACITY_VAR: &str = "LELONG_CAPACITY";

#[derive(Debug, Parser)]
#[command(
    name = "lelong",
    version,
    about = "Exact Lelong-number invariants of resolution graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance; exit 0 iff it is valid.
    Validate { file: String },
    /// Slope, Lelong number and cone membership of a divisor.
    Invariants {
        file: String,
        /// Comma-separated coefficients in vertex order, e.g. 1,2,3/2.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Sharp constant by linear programming, with extreme rays.
    Sharp {
        file: String,
        /// Also compare with the quotient bound |G|^(n-1) for a group of this order.
        #[arg(long)]
        group_order: Option<u64>,
    },
    /// Emit the instance of an ADE singularity.
    Ade {
        family: AdeFamily,
        k: usize,
        /// Output file; `-` or absent means standard output.
        #[arg(short = 'o', long)]
        output: Option<String>,
    },
    /// Chain bound for one ordered pair, or the global constant.
    ChainBound {
        file: String,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
    },
    /// Extreme rays of the psef cone.
    Rays { file: String },
    /// Random cone divisors with their reports.
    Sample {
        file: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The quotient bound |G|^(n-1).
    Quotient {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        dim: u32,
    },
    /// Vanishing orders ord_k = min_i floor(k a_i / m_i).
    Ord {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long)]
        kmax: u64,
    },
}

/// A failure with its exit code; the message goes to the diagnostic stream.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Invalid(_) => EXIT_INVALID,
            Error::Parameter(_) | Error::UnknownVertex(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::data(format!("I/O error: {e}"))
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read_input(&mut self, path: &str) -> Result<Vec<u8>, Failure> {
        if path == "-" {
            let mut buf = Vec::new();
            self.stdin.read_to_end(&mut buf)?;
            Ok(buf)
        } else {
            fs::read(path).map_err(|e| Failure::data(format!("{path}: {e}")))
        }
    }

    fn load(&mut self, path: &str) -> Result<ResolutionGraph, Failure> {
        let bytes = self.read_input(path)?;
        parse_instance(&bytes).map_err(|e| Failure::data(format!("{path}: {e}")))
    }

    fn load_valid(&mut self, path: &str) -> Result<ValidGraph, Failure> {
        Ok(self.load(path)?.into_valid()?)
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout.write_all(text.as_bytes())?;
        Ok(())
    }
}

fn parse_divisor(g: &ValidGraph, text: &str) -> Result<Divisor, Failure> {
    let coeffs = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Rat>()
                .map_err(|_| Failure::usage(format!("--divisor: `{s}` is not a rational")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.len() != g.len() {
        return Err(Failure::usage(format!(
            "--divisor has {} coefficients but the graph has {} vertices",
            coeffs.len(),
            g.len()
        )));
    }
    Ok(Divisor::new(coeffs)?)
}

fn capacity_from_env() -> Result<usize, Failure> {
    match std::env::var(CAPACITY_VAR) {
        Err(_) => Ok(DEFAULT_RAY_LIMIT),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{CAPACITY_VAR}: `{v}` is not a vertex count"))),
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code. Reads the capacity from the environment.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match capacity_from_env() {
        Ok(cap) => run_with_capacity(args, cap, stdin, stdout, stderr),
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// [`run`] with an explicit ray-enumeration capacity.
pub fn run_with_capacity<I, T>(
    args: I,
    capacity: usize,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(&cli, capacity, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, capacity: usize, io: &mut Io<'_>) -> Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Validate { file } => {
            let report = io.load(file)?.validate();
            let text = match format {
                Format::Json => format!("{}\n", to_line(&ValidationDoc::from(&report))),
                Format::Text => format!("{report}\n"),
            };
            io.emit(&text)?;
            Ok(if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_INVALID
            })
        }
        Command::Invariants { file, divisor } => {
            let g = io.load_valid(file)?;
            let a = parse_divisor(&g, divisor)?;
            io.emit(&render::render_report(&report(&g, &a)?, format))?;
            Ok(EXIT_OK)
        }
        Command::Sharp { file, group_order } => {
            let g = io.load_valid(file)?;
            let res = sharp_constant(&g)?;
            let rays = match enumerate_rays_with_limit(&g, capacity) {
                Ok(family) => Some(family.rays),
                Err(Error::Capacity { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let quotient = group_order
                .map(|order| quotient_comparison(&g, &res.c_sharp, order))
                .transpose()?;
            let text = match format {
                Format::Json => {
                    let mut doc = SharpDoc::new(&g, &res, rays.as_deref());
                    doc.quotient = quotient;
                    format!("{}\n", to_line(&doc))
                }
                Format::Text => {
                    let mut text = render::render_sharp_text(&g, &res, rays.as_deref());
                    if let Some(q) = quotient {
                        text.push_str(&format!(
                            "quotient bound |G|^(n-1) = {} {} c_sharp·mult = {} (|G| = {})\n",
                            q.bound, q.relation, q.sharp_times_mult, q.order
                        ));
                    }
                    text
                }
            };
            io.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Ade { family, k, output } => {
            let text = serialize_instance(&ade_graph(*family, *k)?);
            match output.as_deref() {
                None | Some("-") => io.emit(&text)?,
                Some(path) => {
                    fs::write(path, text).map_err(|e| Failure::data(format!("{path}: {e}")))?
                }
            }
            Ok(EXIT_OK)
        }
        Command::ChainBound { file, from, to } => {
            let g = io.load_valid(file)?;
            let (bound, global) = match (from, to) {
                (Some(from), Some(to)) => (path_bound(&g, from, to)?, false),
                _ => (worst_pair(&g)?, true),
            };
            let text = match format {
                Format::Json => format!("{}\n", to_line(&ChainDoc::from(&bound))),
                Format::Text => render::render_path_text(&bound, global),
            };
            io.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Rays { file } => {
            let g = io.load_valid(file)?;
            let rays = enumerate_rays_with_limit(&g, capacity)?.rays;
            let text = match format {
                Format::Json => {
                    let doc = RaysDoc {
                        rays: rays
                            .iter()
                            .map(|r| r.coefficients().iter().map(Rat::to_string).collect())
                            .collect(),
                    };
                    format!("{}\n", to_line(&doc))
                }
                Format::Text => render::render_rays_text(&rays),
            };
            io.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Sample { file, count, seed } => {
            let g = io.load_valid(file)?;
            let samples = sample_cone_with_limit(&g, *count, *seed, capacity)
                .into_iter()
                .map(|a| {
                    let r = report(&g, &a)?;
                    Ok((a, r))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let text = match format {
                Format::Json => {
                    let mut out = String::new();
                    for (index, (a, r)) in samples.iter().enumerate() {
                        let doc = SampleDoc {
                            index,
                            divisor: a.coefficients().iter().map(Rat::to_string).collect(),
                            report: ReportDoc::from(r),
                        };
                        out.push_str(&to_line(&doc));
                        out.push('\n');
                    }
                    let summary = SampleSummary {
                        count: samples.len(),
                        seed: *seed,
                        max_ratio: render::max_ratio(&samples).map(|x| x.to_string()),
                    };
                    out.push_str(&to_line(&summary));
                    out.push('\n');
                    out
                }
                Format::Text => render::render_samples_text(&samples),
            };
            io.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Quotient { order, dim } => {
            let bound = quotient_bound(*order, *dim)?;
            let text = match format {
                Format::Json => format!(
                    "{}\n",
                    to_line(&QuotientDoc {
                        order: *order,
                        dim: *dim,
                        bound: bound.to_string(),
                    })
                ),
                Format::Text => format!("{bound}\n"),
            };
            io.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Ord {
            file,
            divisor,
            kmax,
        } => {
            let g = io.load_valid(file)?;
            let a = parse_divisor(&g, divisor)?;
            let steps = ord_sequence(&g, &a, *kmax)?;
            let text = match format {
                Format::Json => steps
                    .iter()
                    .map(|s| format!("{}\n", to_line(&OrdDoc::from(s))))
                    .collect(),
                Format::Text => render::render_ord_text(&steps),
            };
            io.emit(&text)?;
            Ok(EXIT_OK)
        }
    }
}

fn quotient_comparison(
    g: &ValidGraph,
    c_sharp: &Rat,
    order: u64,
) -> Result<QuotientComparison, Failure> {
    let bound = quotient_bound(order, g.dimension())?;
    let sharp = c_sharp * g.multiplicity();
    let bound_rat = Rat::from(num_bigint::BigInt::from(bound.clone()));
    let relation = match bound_rat.cmp(&sharp) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    };
    Ok(QuotientComparison {
        order,
        bound: bound.to_string(),
        sharp_times_mult: sharp.to_string(),
        relation: relation.into(),
    })
}

/// The ordered pair with the largest best-path product; its product is the
/// global chain constant. A single vertex yields the empty path.
fn worst_pair(g: &ValidGraph) -> Result<PathBound, Failure> {
    let ids: Vec<&str> = g.vertices().iter().map(|v| v.id.as_str()).collect();
    let mut worst: Option<PathBound> = None;
    for u in &ids {
        for v in &ids {
            if u == v {
                continue;
            }
            let p = path_bound(g, u, v)?;
            if worst.as_ref().is_none_or(|w| p.product > w.product) {
                worst = Some(p);
            }
        }
    }
    Ok(worst.unwrap_or_else(|| PathBound {
        path: vec![ids[0].to_owned()],
        factors: Vec::new(),
        product: Rat::one(),
    }))
}
