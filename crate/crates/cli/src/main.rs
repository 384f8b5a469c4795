use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use derange::algebra::{fundamental_group_report, is_simply_connected, Algebra, Presentation};
use derange::categories::{is_cleaving_cond1, repetitive_slice, slice_projective_dimvec};
use derange::classifier::{algebra_at, classify_with, dichotomy_report, enumerate_cm, DichotomyParams};
use derange::complexes::{
    check_dim_bound, cohomology, hr_dim_sandwich, is_indecomposable, is_isomorphic, minimize, validate, IsoMode,
    SearchConfig,
};
use derange::gentle::{find_bands, witness_family};
use derange::io;
use derange::{Config, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "derange", version, about = "Minimal projective complexes and derived representation type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Randomized,
    Exhaustive,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-form basis and corner dimensions.
    Basis { algebra: PathBuf },
    /// Derived-discrete / strongly-derived-unbounded verdict with certificate.
    Classify { algebra: PathBuf },
    /// Isomorphism classes of minimal complexes in a window.
    Census {
        algebra: PathBuf,
        #[arg(short, long)]
        m: usize,
        /// Summands allowed per degree, comma separated.
        #[arg(long, value_delimiter = ',')]
        caps: Vec<usize>,
        /// Field for the census; defaults to the file's prime.
        #[arg(short, long)]
        p: Option<u32>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Cohomology and the dimension inequalities of a complex.
    Cohomology { algebra: PathBuf, complex: PathBuf },
    /// Removes contractible summands.
    Minimize { algebra: PathBuf, complex: PathBuf },
    /// Decides whether two minimal complexes are isomorphic.
    Iso {
        algebra: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
    },
    /// Decides indecomposability of a minimal complex.
    Indec { algebra: PathBuf, complex: PathBuf },
    /// Homotopy bands of a gentle algebra.
    Bands {
        algebra: PathBuf,
        #[arg(long)]
        max_letters: Option<usize>,
    },
    /// Builds and checks a band complex family.
    Witness {
        algebra: PathBuf,
        #[arg(long)]
        band: String,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        lambdas: Vec<u32>,
    },
    /// Fundamental group of the presentation.
    Pi1 { algebra: PathBuf },
    /// Checks a functor and its natural retraction condition.
    Cleaving { functor: PathBuf },
    /// Hom dimensions of a window of the repetitive category.
    Repetitive {
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        window: Vec<i64>,
    },
    /// Instantiates the discrete / unbounded dichotomy.
    Dichotomy {
        algebra: PathBuf,
        #[arg(short, long)]
        m: usize,
        #[arg(long, value_delimiter = ',')]
        caps: Vec<usize>,
        #[arg(short, long, default_value_t = 2)]
        p: u32,
    },
}

struct Output {
    report: Value,
    summary: String,
}

fn out(report: Value, summary: impl Into<String>) -> Output {
    Output {
        report,
        summary: summary.into(),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn load(path: &Path) -> Result<(Presentation, Algebra), Error> {
    let pres = io::read_algebra(path)?;
    let alg = Algebra::build(pres.clone())?;
    Ok((pres, alg))
}

fn run(cmd: Command, config: &Config) -> Result<Output, Error> {
    let search = SearchConfig::from(config);
    match cmd {
        Command::Basis { algebra } => {
            let (_, alg) = load(&algebra)?;
            let n = alg.vertex_count();
            let cat = alg.as_bounded_category()?;
            let basis: Vec<String> = (0..alg.dim()).map(|i| alg.label(i)).collect();
            Ok(out(
                json!({
                    "dim": alg.dim(),
                    "basis": basis,
                    "corner_dims": (0..n).map(|a| (0..n).map(|b| alg.corner_dim(a, b)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "category": cat.verify()?,
                }),
                format!("dim {}", alg.dim()),
            ))
        }
        Command::Classify { algebra } => {
            let (pres, _) = load(&algebra)?;
            let r = classify_with(&pres, config)?;
            let summary = format!("verdict {} ({})", r.verdict.as_str(), r.certificate.kind());
            Ok(out(to_value(&r), summary))
        }
        Command::Census {
            algebra,
            m,
            caps,
            p,
            jobs,
        } => {
            let (pres, alg) = load(&algebra)?;
            let alg = match p {
                Some(p) => algebra_at(&pres, p)?,
                None => alg,
            };
            let caps = if caps.is_empty() { vec![1; m + 1] } else { caps };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::InvalidInput(format!("--jobs: {e}")))?;
            let t = pool.install(|| enumerate_cm(&alg, m, &caps, config))?;
            let classes: Vec<Value> = t
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "complex": to_value(&io::complex_to_file(&alg, &c.representative)),
                        "cohomology": c.cohomology,
                        "dim": c.dim,
                        "hr": c.hr,
                        "indecomposable": c.indecomposable,
                        "members": c.members,
                    })
                })
                .collect();
            let summary = format!(
                "{} classes, {} indecomposable ({} enumerated)",
                t.classes.len(),
                t.indecomposable_count(),
                t.enumerated
            );
            Ok(out(
                json!({
                    "params": t.params,
                    "enumerated": t.enumerated,
                    "indecomposable_count": t.indecomposable_count(),
                    "dim_bound_violations": t.dim_bound_violations,
                    "sandwich_violations": t.sandwich_violations,
                    "classes": classes,
                }),
                summary,
            ))
        }
        Command::Cohomology { algebra, complex } => {
            let (_, alg) = load(&algebra)?;
            let x = io::read_complex(&alg, &complex)?;
            validate(&alg, &x)?;
            let c = cohomology(&alg, &x);
            let bound = check_dim_bound(&alg, &x)?;
            let sandwich = match hr_dim_sandwich(&alg, &x) {
                Ok(s) => to_value(&s),
                Err(Error::ZeroRange) => Value::Null,
                Err(e) => return Err(e),
            };
            let summary = format!("H = {:?}, hr {}", c.h, c.hr);
            Ok(out(json!({ "cohomology": c, "dim_bound": bound, "sandwich": sandwich }), summary))
        }
        Command::Minimize { algebra, complex } => {
            let (_, alg) = load(&algebra)?;
            let x = io::read_complex(&alg, &complex)?;
            let y = minimize(&alg, &x)?;
            let summary = format!("{} -> {} summands", x.summand_count(), y.summand_count());
            Ok(out(to_value(&io::complex_to_file(&alg, &y)), summary))
        }
        Command::Iso { algebra, x, y, mode } => {
            let (_, alg) = load(&algebra)?;
            let a = io::read_complex(&alg, &x)?;
            let b = io::read_complex(&alg, &y)?;
            validate(&alg, &a)?;
            validate(&alg, &b)?;
            let mode = match mode {
                Mode::Auto => IsoMode::Auto,
                Mode::Randomized => IsoMode::Randomized,
                Mode::Exhaustive => IsoMode::Exhaustive,
            };
            let r = is_isomorphic(&alg, &a, &b, mode, &search)?;
            Ok(out(to_value(&r), format!("isomorphic: {}", r.isomorphic)))
        }
        Command::Indec { algebra, complex } => {
            let (_, alg) = load(&algebra)?;
            let x = io::read_complex(&alg, &complex)?;
            validate(&alg, &x)?;
            let r = is_indecomposable(&alg, &x, &search)?;
            Ok(out(to_value(&r), format!("indecomposable: {} ({})", r.indecomposable, r.method)))
        }
        Command::Bands { algebra, max_letters } => {
            let (_, alg) = load(&algebra)?;
            let max = max_letters.unwrap_or(4 * alg.quiver().arrows().len().max(1));
            let s = find_bands(&alg, max)?;
            let summary = if s.bands.is_empty() {
                if s.provably_none {
                    "no bands".to_string()
                } else {
                    format!("no bands (bounded search, {max} letters)")
                }
            } else {
                format!("{} bands", s.bands.len())
            };
            Ok(out(
                json!({ "bands": s.labels, "max_letters": s.max_letters, "provably_none": s.provably_none }),
                summary,
            ))
        }
        Command::Witness {
            algebra,
            band,
            degrees,
            lambdas,
        } => {
            let (_, alg) = load(&algebra)?;
            let b = io::parse_band(&alg, &band)?;
            let degrees = if degrees.is_empty() { vec![1] } else { degrees };
            let lambdas = if lambdas.is_empty() { vec![1] } else { lambdas };
            let w = witness_family(&alg, &b, &degrees, &lambdas, &search)?;
            let summary = format!("{} complexes checked", w.members.len());
            Ok(out(to_value(&w), summary))
        }
        Command::Pi1 { algebra } => {
            let (_, alg) = load(&algebra)?;
            let r = fundamental_group_report(&alg);
            let simply = match is_simply_connected(&alg) {
                Ok(c) => to_value(&c),
                Err(Error::NotTriangular) => json!("not-triangular"),
                Err(e) => return Err(e),
            };
            let summary = format!("{:?}", r.verdict);
            Ok(out(json!({ "group": r, "simply_connected": simply }), summary))
        }
        Command::Cleaving { functor } => {
            let input = io::read_functor(&functor)?;
            let r = is_cleaving_cond1(&input.functor)?;
            Ok(out(to_value(&r), format!("condition (1): {}", r.holds)))
        }
        Command::Repetitive { algebra, window } => {
            let (_, alg) = load(&algebra)?;
            let (lo, hi) = match window.as_slice() {
                [lo, hi] => (*lo, *hi),
                _ => return Err(Error::InvalidInput("--window expects lo,hi".into())),
            };
            let s = repetitive_slice(&alg, lo, hi)?;
            let cat = &s.category;
            let n = cat.object_count();
            let projectives: Vec<Value> = (lo..=hi)
                .flat_map(|i| (0..alg.vertex_count()).map(move |a| (a, i)))
                .map(|(a, i)| slice_projective_dimvec(&s, a, i).map(|v| json!({ "object": cat.objects()[s.object(a, i).expect("in window")], "dimvec": v })))
                .collect::<Result<_, _>>()?;
            Ok(out(
                json!({
                    "objects": cat.objects(),
                    "hom_dims": (0..n).map(|x| (0..n).map(|y| cat.hom_dim(x, y)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "projectives": projectives,
                    "verified": true,
                }),
                format!("{n} objects, dim {}", cat.dim()),
            ))
        }
        Command::Dichotomy { algebra, m, caps, p } => {
            let (pres, _) = load(&algebra)?;
            let mut params = DichotomyParams::new(m);
            if !caps.is_empty() {
                params.caps = caps;
            }
            params.census_prime = p;
            let r = dichotomy_report(&pres, &params, config)?;
            Ok(out(to_value(&r), format!("verdict {}", r.verdict.as_str())))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 3,
        Error::InvariantViolation(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match Config::from_env().and_then(|c| c.validate().map(|_| c)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, &config) {
        Ok(o) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error for a report writer
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&o.report).expect("json"));
            eprintln!("{}", o.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
