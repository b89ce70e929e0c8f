//! Command-line interface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bits::PointSet;
use crate::embed::{self, natural_embedding};
use crate::forms::{Form, FormKind};
use crate::polar::{check_partial_frame, extend_frame, find_partial_frame, frame_span, PartialFrame, PolarSpace};
use crate::verify::{self, plan::MAX_EXHAUSTIVE_POINTS, CheckReport, SamplePlan};

use super::catalog;
use super::records::{report_records, set_field, Format, Record};
use super::spec::parse_spec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Records,
}

#[derive(Debug, Parser)]
#[command(name = "polaris", version, about = "Finite classical polar spaces and checks of the subspace-arising theorem")]
struct Cli {
    /// Space specification file.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Built-in space (see `presets`).
    #[arg(long, global = true)]
    preset: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of samples; 0 requests exhaustive enumeration where supported.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Comma-separated point indices.
    #[arg(long, global = true)]
    points: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the space and print its summary.
    Build {
        /// Also print the field's Conway polynomial.
        #[arg(long)]
        verbose: bool,
    },
    /// List points with their representative vectors.
    Points,
    /// List lines as point-index tuples.
    Lines,
    /// Closure of --points, with radical and ranks.
    Closure,
    /// Perp of --points.
    Perp,
    #[command(subcommand)]
    Frame(FrameCommand),
    #[command(subcommand)]
    Check(CheckCommand),
    #[command(subcommand)]
    Search(SearchCommand),
    #[command(subcommand)]
    Explore(ExploreCommand),
    /// Quotient of a quadric embedding over rad(f_Q).
    Quotient,
    /// Parabolic quadric hull of a characteristic-2 symplectic space.
    Hull,
    /// Minimal subset of --points with the same closure.
    Mingen,
    /// List built-in presets.
    Presets,
}

#[derive(Debug, Subcommand)]
enum FrameCommand {
    /// Validate a partial frame.
    Check {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Complete a partial frame to full rank.
    Extend {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Find a frame of rank --k inside the closure of --points (default: all points).
    Find {
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    Theorem1,
    Corollary2,
    Corollary3,
    Prop5,
    /// Frame lemmas and the frame-span identity on sampled frames.
    Frames,
}

#[derive(Debug, Subcommand)]
enum SearchCommand {
    Rank1Nonarising,
}

#[derive(Debug, Subcommand)]
enum ExploreCommand {
    Problem5,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        usage(e.to_string())
    }
}

struct Loaded {
    name: String,
    space: PolarSpace,
}

fn load(cli: &Cli) -> Result<Loaded, Failure> {
    let (name, text) = match (&cli.spec, &cli.preset) {
        (Some(_), Some(_)) => return Err(usage("give either --spec or --preset, not both")),
        (None, None) => return Err(usage("a space is required: --spec <file> or --preset <name>")),
        (None, Some(p)) => {
            let preset = catalog::preset(p).ok_or_else(|| usage(format!("unknown preset `{p}`; known: {}", catalog::preset_names().join(", "))))?;
            (preset.name.to_string(), preset.text.to_string())
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "spec".into());
            (stem, text)
        }
    };
    let spec = parse_spec(&text).map_err(|e| usage(format!("{name}: {e}")))?;
    let space = PolarSpace::build(spec.form()?)?;
    Ok(Loaded { name, space })
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("invalid point index `{t}`"))))
        .collect()
}

fn point_arg(cli: &Cli, space: &PolarSpace, default_all: bool) -> Result<PointSet, Failure> {
    match &cli.points {
        Some(s) => Ok(space.set_of(&parse_indices(s)?)?),
        None if default_all => Ok(space.all_points()),
        None => Err(usage("--points is required")),
    }
}

fn vector_field(v: &[u8]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn frame_record(space: &PolarSpace, op: &str, f: &PartialFrame) -> Result<Record, Failure> {
    let span = frame_span(space, f)?;
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    Ok(Record::new("frame")
        .field("op", op)
        .field("a", join(f.a()))
        .field("b", join(f.b()))
        .field("rank", f.rank())
        .field("complete", f.rank() == space.polar_rank())
        .field("span_size", span.len())
        .field("span", set_field(&span)))
}

fn space_record(name: &str, space: &PolarSpace) -> Record {
    let f = space.field();
    let kind = match space.form() {
        Form::Quadratic(_) => "quadratic",
        Form::Sesquilinear(s) => match s.kind() {
            FormKind::Alternating => "alternating",
            FormKind::Symmetric => "symmetric",
            FormKind::Hermitian => "hermitian",
            FormKind::Twisted => "twisted",
        },
    };
    Record::new("space")
        .field("name", name)
        .field("field", format!("GF({})", f.order()))
        .field("kind", kind)
        .field("dim", space.ambient_dim())
        .field("points", space.num_points())
        .field("lines", space.lines().len())
        .field("rank", space.polar_rank())
        .field("embedding", natural_embedding(space).tag())
}

fn report_out(report: CheckReport, plan: &SamplePlan) -> (Vec<Record>, i32) {
    let code = if report.ok() { EXIT_OK } else { EXIT_CHECK_FAILED };
    (report_records(&report, plan), code)
}

fn plan_for(cli: &Cli, space: &PolarSpace, default_samples: usize) -> Result<SamplePlan, Failure> {
    let samples = cli.samples.unwrap_or(default_samples);
    let n = space.num_points();
    if samples == 0 && n > MAX_EXHAUSTIVE_POINTS {
        return Err(usage(format!("--samples 0 requests exhaustive mode, limited to {MAX_EXHAUSTIVE_POINTS} points (space has {n})")));
    }
    Ok(SamplePlan::auto(n, space.polar_rank(), cli.seed, samples))
}

fn random_plan(cli: &Cli, space: &PolarSpace, default_samples: usize) -> SamplePlan {
    let samples = cli.samples.filter(|&s| s > 0).unwrap_or(default_samples);
    SamplePlan::random(cli.seed, samples, space.polar_rank())
}

fn execute(cli: &Cli) -> Result<(Vec<Record>, i32), Failure> {
    if let Command::Presets = cli.command {
        let recs = catalog::PRESETS
            .iter()
            .map(|p| {
                let alias = if p.aliases.is_empty() { "-".to_string() } else { p.aliases.join(",") };
                Record::new("preset").field("name", p.name).field("aliases", alias).field("title", p.title).field("points", p.points)
            })
            .collect();
        return Ok((recs, EXIT_OK));
    }
    let Loaded { name, space } = load(cli)?;
    let emb = natural_embedding(&space);
    let out = match &cli.command {
        Command::Presets => unreachable!(),
        Command::Build { verbose } => {
            let mut r = space_record(&name, &space);
            if *verbose {
                let f = space.field();
                r = r.field("conway", vector_field(f.conway_polynomial())).field("primitive", f.primitive_element());
            }
            (vec![r], EXIT_OK)
        }
        Command::Points => {
            let recs = space.points().iter().enumerate().map(|(i, v)| Record::new("point").field("index", i).field("vector", vector_field(v))).collect();
            (recs, EXIT_OK)
        }
        Command::Lines => {
            let recs = space
                .lines()
                .iter()
                .enumerate()
                .map(|(i, l)| Record::new("line").field("index", i).field("points", l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            (recs, EXIT_OK)
        }
        Command::Closure => {
            let x = point_arg(cli, &space, false)?;
            let c = space.closure(&x);
            let p = space.profile(&c)?;
            let r = Record::new("pointset")
                .field("op", "closure")
                .field("input", set_field(&x))
                .field("size", c.len())
                .field("members", set_field(&c))
                .field("singular", p.is_singular)
                .field("radical", set_field(&p.radical))
                .field("rank", p.rank)
                .field("rank_nd", p.rank_nd);
            (vec![r], EXIT_OK)
        }
        Command::Perp => {
            let x = point_arg(cli, &space, false)?;
            let c = space.perp(&x);
            let r = Record::new("pointset")
                .field("op", "perp")
                .field("input", set_field(&x))
                .field("size", c.len())
                .field("members", set_field(&c))
                .field("subspace", space.is_subspace(&c));
            (vec![r], EXIT_OK)
        }
        Command::Frame(fc) => {
            let rec = match fc {
                FrameCommand::Check { a, b } => frame_record(&space, "check", &check_partial_frame(&space, &parse_indices(a)?, &parse_indices(b)?)?)?,
                FrameCommand::Extend { a, b } => {
                    let f = check_partial_frame(&space, &parse_indices(a)?, &parse_indices(b)?)?;
                    frame_record(&space, "extend", &extend_frame(&space, &f)?)?
                }
                FrameCommand::Find { k } => {
                    let s = space.closure(&point_arg(cli, &space, true)?);
                    frame_record(&space, "find", &find_partial_frame(&space, &s, *k)?)?
                }
            };
            (vec![rec], EXIT_OK)
        }
        Command::Check(which) => match which {
            CheckCommand::Theorem1 => {
                let plan = plan_for(cli, &space, 500)?;
                report_out(verify::check_theorem1(&space, &name, &emb, &plan)?, &plan)
            }
            CheckCommand::Corollary2 => {
                let plan = plan_for(cli, &space, 200)?;
                report_out(verify::check_corollary2(&space, &name, &plan)?, &plan)
            }
            CheckCommand::Corollary3 => {
                let plan = random_plan(cli, &space, 200);
                report_out(verify::check_corollary3(&space, &name, &emb, &plan)?, &plan)
            }
            CheckCommand::Prop5 => {
                let plan = plan_for(cli, &space, 1000)?;
                report_out(verify::check_prop5(&space, &name, &emb, &plan)?, &plan)
            }
            CheckCommand::Frames => {
                let plan = random_plan(cli, &space, 100);
                report_out(verify::check_frames(&space, &name, &plan)?, &plan)
            }
        },
        Command::Search(SearchCommand::Rank1Nonarising) => {
            let plan = plan_for(cli, &space, 500)?;
            report_out(verify::search_nonarising_rank1(&space, &name, &emb, &plan)?, &plan)
        }
        Command::Explore(ExploreCommand::Problem5) => {
            let plan = plan_for(cli, &space, 200)?;
            report_out(verify::explore_problem5(&space, &name, &plan)?, &plan)
        }
        Command::Quotient => {
            let Form::Quadratic(q) = space.form() else {
                return Err(usage("quotient needs a quadratic form"));
            };
            let x = q.polarize().radical();
            let quo = embed::quotient_embedding(&space, &emb, &x)?;
            let gram: Vec<String> = quo.form.gram().iter().map(|r| vector_field(r)).collect();
            let mut recs = vec![Record::new("quotient")
                .field("space", &name)
                .field("kernel", x.basis().iter().map(|v| vector_field(v)).collect::<Vec<_>>().join(" / "))
                .field("ambient_dim", quo.embedding.ambient_dim())
                .field("r_values", vector_field(&quo.r_values))
                .field("induced_gram", gram.join(" / "))];
            for (i, v) in quo.embedding.vectors().iter().enumerate() {
                recs.push(Record::new("image").field("index", i).field("vector", vector_field(v)));
            }
            (recs, EXIT_OK)
        }
        Command::Hull => {
            let h = embed::hull_of_symplectic_char2(&space)?;
            let mut recs = vec![Record::new("hull")
                .field("space", &name)
                .field("quadric_dim", h.quadric.ambient_dim())
                .field("quadric_points", h.quadric.num_points())
                .field("quadric_lines", h.quadric.lines().len())
                .field("isomorphism", "verified")];
            for (j, &i) in h.to_symplectic.iter().enumerate() {
                recs.push(Record::new("correspondence").field("quadric", j).field("quadric_vector", vector_field(h.quadric.point(j))).field("symplectic", i));
            }
            (recs, EXIT_OK)
        }
        Command::Mingen => {
            let x = point_arg(cli, &space, true)?;
            let y = embed::minimal_generating_subset(&space, &emb, &x)?;
            let r = Record::new("pointset")
                .field("op", "mingen")
                .field("input", set_field(&x))
                .field("size", y.len())
                .field("members", set_field(&y))
                .field("closure_size", space.closure(&y).len());
            (vec![r], EXIT_OK)
        }
    };
    Ok(out)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Records => Format::Records,
    };
    match execute(&cli) {
        Ok((records, code)) => {
            for r in &records {
                if r.write(out, format).is_err() {
                    return EXIT_USAGE;
                }
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
