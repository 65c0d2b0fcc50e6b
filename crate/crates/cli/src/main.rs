//! `gch`: command-line driver for the affine-gch engine.
//!
//! Exit codes: 0 success, 1 verification failure or internal error, 2 usage
//! error, 3 mathematical precondition violation.

mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use affine_gch::afweight::orbit_equiv;
use affine_gch::demazure::{integrable_gch, projective_gch, thin_gch, weyl_gch};
use affine_gch::serial::CharacterDoc;
use affine_gch::verify::{Config, Suite};
use affine_gch::{AffineWeight, Engine, Error, Family, GradedCharacter, RootSystem, Weight};
use clap::builder::{PossibleValue, PossibleValuesParser};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache::{Cache, Lookup};
use crate::render::Format;

#[derive(Parser)]
#[command(name = "gch", version, about = "Graded characters of twisted affine Lie algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Directory for cached characters.
    #[arg(long, env = "AFFINE_GCH_CACHE", global = true)]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache even when a directory is configured.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Algebra {
    /// Cartan type letter (A–G).
    #[arg(long = "type")]
    kind: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CharFamily {
    Thin,
    Weyl,
    Thick,
    Irrep,
    Projective,
    Integrable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Irrep,
    Thin,
    Weyl,
    Thick,
}

impl BasisArg {
    fn family(self) -> Family {
        match self {
            BasisArg::Irrep => Family::Irreducible,
            BasisArg::Thin => Family::Thin,
            BasisArg::Weyl => Family::Weyl,
            BasisArg::Thick => Family::ThickWeyl,
        }
    }
}

#[derive(Args, Clone)]
struct CharJob {
    #[arg(long, value_enum)]
    family: CharFamily,
    #[command(flatten)]
    algebra: Algebra,
    /// Level k (K-eigenvalue).
    #[arg(long, default_value_t = 1)]
    level: i64,
    /// Fundamental-weight coordinates, e.g. `1,0,2`.
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
    /// Truncation degree for the infinite families.
    #[arg(long)]
    qmax: Option<i64>,
}

/// Inline character description for `expand`; all of it is optional so
/// that `--input` can stand in for it.
#[derive(Args, Clone)]
struct Source {
    #[arg(long, value_enum)]
    family: Option<CharFamily>,
    #[arg(long = "type")]
    kind: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value_t = 1)]
    level: i64,
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    #[arg(long)]
    qmax: Option<i64>,
}

impl Source {
    fn job(self) -> Option<CharJob> {
        Some(CharJob {
            family: self.family?,
            algebra: Algebra { kind: self.kind?, rank: self.rank? },
            level: self.level,
            weight: self.weight?,
            qmax: self.qmax,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a graded character.
    Char(CharJob),
    /// Expand a character in a basis family.
    Expand {
        #[command(flatten)]
        source: Source,
        /// Read the character from a JSON file instead.
        #[arg(long, conflicts_with_all = ["family", "kind", "rank", "weight"])]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[arg(long)]
        basis_level: i64,
        /// Expansion degree; required for truncated input and thick bases.
        #[arg(long = "expand-qmax")]
        expand_qmax: Option<i64>,
    },
    /// Branching polynomials `(W^(k)_μ : W^(k+1)_λ)_q` of one Weyl module.
    Branch {
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        level: i64,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Level-restricted Kostka polynomials of a product of Weyl modules.
    Kostka {
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        level: i64,
        /// Factor `l:w`, e.g. `1:2` or `2:1,0`; repeatable.
        #[arg(long = "factor", required = true, allow_hyphen_values = true)]
        factors: Vec<String>,
        #[arg(long)]
        qmax: Option<i64>,
    },
    /// The shift m with μ + kΛ0 − mδ in the affine orbit of λ + kΛ0.
    Orbit {
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long)]
        level: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Run acceptance suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = suite_names())]
        suite: String,
        #[arg(long, default_value_t = Config::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = Config::default().samples)]
        samples: usize,
    },
}

/// Suite names for `--suite`; the sl(2) tables also answer to `sl2-paper`.
fn suite_names() -> PossibleValuesParser {
    PossibleValuesParser::new(Suite::NAMES.map(|n| {
        let v = PossibleValue::new(n);
        if n == "sl2-tables" {
            v.alias("sl2-paper")
        } else {
            v
        }
    }))
}

/// Failure classes, mapped onto exit codes.
enum Failure {
    Verification(String),
    Usage(String),
    Precondition(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidType { .. } => Failure::Usage(e.to_string()),
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn parse_coords(s: &str) -> Outcome<Vec<i32>> {
    s.split(',')
        .map(|t| t.trim().parse::<i32>().map_err(|_| Failure::Usage(format!("bad weight coordinate {t:?} in {s:?}"))))
        .collect()
}

fn parse_weight(rs: &RootSystem, s: &str) -> Outcome<Weight> {
    let c = parse_coords(s)?;
    rs.weight(&c).map_err(|_| Failure::Usage(format!("weight {s:?} needs {} coordinates", rs.rank)))
}

fn root_system(a: &Algebra) -> Outcome<RootSystem> {
    RootSystem::parse(&a.kind, a.rank).map_err(|e| Failure::Usage(e.to_string()))
}

struct Ctx {
    format: Format,
    cache: Option<Cache>,
    quiet: bool,
}

impl Ctx {
    fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn engine<'a>(&self, rs: &'a RootSystem) -> Engine<'a> {
        let quiet = self.quiet;
        Engine::new(rs).with_progress(move |m| {
            if !quiet {
                eprintln!("{m}");
            }
        })
    }
}

fn cache_key(rs: &RootSystem, job: &CharJob, w: &Weight) -> String {
    format!(
        "v{}|{}|{}|{:?}|{}|{}|{:?}",
        affine_gch::serial::SCHEMA_VERSION,
        rs.label(),
        rs.rank,
        job.family,
        w,
        job.level,
        job.qmax
    )
}

fn need_qmax(job: &CharJob) -> Outcome<i64> {
    match job.qmax {
        Some(n) if n >= 0 => Ok(n),
        Some(_) => Err(Failure::Usage("--qmax must be ≥ 0".into())),
        None => Err(Failure::Usage(format!("--qmax is required for the {:?} family", job.family))),
    }
}

fn compute_char(ctx: &Ctx, rs: &RootSystem, job: &CharJob, w: &Weight) -> Outcome<GradedCharacter> {
    if job.level < 0 || (job.level < 1 && !matches!(job.family, CharFamily::Irrep | CharFamily::Projective)) {
        return Err(Failure::Usage("--level must be ≥ 1".into()));
    }
    Ok(match job.family {
        CharFamily::Thin => thin_gch(rs, w, job.level)?,
        CharFamily::Weyl => weyl_gch(rs, w, job.level)?,
        CharFamily::Thick => ctx.engine(rs).thick_weyl_gch(w, job.level, need_qmax(job)?)?,
        CharFamily::Irrep => rs.finite_irrep_char(w)?.normalize_at(0)?,
        CharFamily::Projective => projective_gch(rs, w, 0, need_qmax(job)?)?,
        CharFamily::Integrable => integrable_gch(rs, &AffineWeight::new(*w, job.level, 0), need_qmax(job)?)?,
    })
}

fn character(ctx: &Ctx, rs: &RootSystem, job: &CharJob) -> Outcome<GradedCharacter> {
    let w = parse_weight(rs, &job.weight)?;
    let key = cache_key(rs, job, &w);
    if let Some(c) = &ctx.cache {
        match c.get(&key) {
            Lookup::Hit(f) => return Ok(f),
            Lookup::Miss => {}
            Lookup::Invalid(why) => eprintln!("warning: ignoring cache entry, {why}"),
        }
    }
    let f = compute_char(ctx, rs, job, &w)?;
    if let Some(c) = &ctx.cache {
        if let Err(e) = c.put(&key, &CharacterDoc::new(rs, &f)) {
            eprintln!("warning: could not write cache entry: {e}");
        }
    }
    Ok(f)
}

fn run(cli: Cli) -> Outcome<String> {
    let cache = match (&cli.cache_dir, cli.no_cache) {
        (Some(d), false) => Some(Cache::open(d).map_err(|e| Failure::Usage(format!("cache directory: {e}")))?),
        _ => None,
    };
    let ctx = Ctx { format: cli.format, cache, quiet: cli.quiet };
    match cli.command {
        Command::Char(job) => {
            let rs = root_system(&job.algebra)?;
            let f = character(&ctx, &rs, &job)?;
            Ok(render::character(&rs, &f, ctx.format))
        }
        Command::Expand { source, input, basis, basis_level, expand_qmax } => {
            let (rs, f) = match (source.job(), input) {
                (_, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let doc: CharacterDoc =
                        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let rs = RootSystem::new(doc.header.kind, doc.header.rank).map_err(Failure::from)?;
                    (rs, doc.to_character()?)
                }
                (Some(job), None) => {
                    let rs = root_system(&job.algebra)?;
                    let f = character(&ctx, &rs, &job)?;
                    (rs, f)
                }
                (None, None) => {
                    return Err(Failure::Usage("give --family, --type, --rank and --weight, or --input".into()))
                }
            };
            let n = expand_qmax.or(f.truncation().bound());
            let eng = ctx.engine(&rs);
            let e = match basis.family() {
                Family::Thin => {
                    let n = n.or(f.max_exponent()).unwrap_or(0);
                    eng.expand_thin(&f, basis_level, n)?
                }
                fam => eng.expand_symmetric(&f, fam, basis_level, n)?,
            };
            Ok(render::expansion(&rs, &e, ctx.format))
        }
        Command::Branch { algebra, level, weight } => {
            let rs = root_system(&algebra)?;
            let mu = parse_weight(&rs, &weight)?;
            let e = ctx.engine(&rs).branching_weyl(&mu, level)?;
            Ok(render::expansion(&rs, &e, ctx.format))
        }
        Command::Kostka { algebra, level, factors, qmax } => {
            let rs = root_system(&algebra)?;
            let mut fs = Vec::new();
            for f in &factors {
                let (l, w) = f.split_once(':').ok_or_else(|| Failure::Usage(format!("factor {f:?} is not l:w")))?;
                let l = l.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad factor level in {f:?}")))?;
                fs.push((l, parse_weight(&rs, w)?));
            }
            if rs.lacing != 1 {
                ctx.progress(&format!(
                    "note: {} is not simply laced; these polynomials lie outside the usual restricted Kostka setting",
                    rs.label()
                ));
            }
            let m = ctx.engine(&rs).kostka(&fs, level, qmax)?;
            Ok(render::kostka(&rs, level, &m, ctx.format))
        }
        Command::Orbit { algebra, level, lambda, mu } => {
            let rs = root_system(&algebra)?;
            let l = parse_weight(&rs, &lambda)?;
            let m = parse_weight(&rs, &mu)?;
            Ok(render::orbit(orbit_equiv(&rs, &l, &m, level)?, ctx.format))
        }
        Command::Verify { suite, seed, samples } => {
            let suite = Suite::parse(&suite).ok_or_else(|| Failure::Usage(format!("unknown suite {suite}")))?;
            let reports = suite.run(&Config { seed, samples });
            for r in &reports {
                ctx.progress(&r.to_string());
            }
            let out = render::reports(&reports, ctx.format);
            if reports.iter().all(|r| r.passed()) {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Verification(dump) => {
                    println!("{dump}");
                    eprintln!("verification failed");
                }
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Precondition(m) | Failure::Internal(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(code)
        }
    }
}
