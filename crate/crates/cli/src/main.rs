use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use vogel_core::eval;
use vogel_core::lambda::{self, LambdaElement};
use vogel_core::lie::{self, MetricLie};
use vogel_core::prop;
use vogel_core::quotient;
use vogel_core::rational;
use vogel_core::report::Report;
use vogel_core::rw::{self, RwTable};
use vogel_core::suites;
use vogel_core::symfunc;
use vogel_core::{Diagram, DiagramSum, Error};

#[derive(Parser)]
#[command(name = "vogel", version, about = "Jacobi diagrams, Vogel's ring and Lie algebra weight systems")]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest vertex count and algebra dimension to work with [default: 8,
    /// except for `verify`, whose fixed workloads run uncapped].
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form of a diagram or sum; `--reduce` also applies IHX.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        reduce: bool,
    },
    /// `f ∘ g`: outputs of g glued to inputs of f.
    Compose { f: PathBuf, g: PathBuf },
    /// Disjoint union `f ⊗ g`.
    Tensor { f: PathBuf, g: PathBuf },
    /// The strand diagram of a permutation given by its images, e.g. `2 3 1`.
    Perm {
        #[arg(required = true)]
        images: Vec<usize>,
    },
    /// Dimension of the AS/IHX quotient in one vertex degree.
    Dim {
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        outputs: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        max_components: usize,
    },
    /// Evaluates a diagram or sum on a metric Lie algebra.
    Eval {
        /// Catalog name or path to an algebra JSON file.
        #[arg(long)]
        algebra: String,
        file: PathBuf,
    },
    /// The character of a named element of Vogel's ring.
    Character {
        #[arg(long)]
        algebra: String,
        /// `one`, `t` or `x:n`.
        #[arg(long)]
        element: String,
    },
    /// Casimir spectra on the adjoint and its symmetric square.
    Casimir {
        #[arg(long)]
        algebra: String,
    },
    /// Validates an algebra and prints its data.
    Algebra { algebra: String },
    /// Vogel's ring.
    Lambda {
        #[command(subcommand)]
        op: LambdaOp,
    },
    /// Kneissler's symmetric function `χ_n`.
    Chi { n: usize },
    /// The K3 character on the closed diagram in a file.
    Rw { file: PathBuf },
    /// Runs a verification suite.
    Verify {
        #[arg(value_parser = ["prop", "lie", "metric", "lambda", "weights", "westbury", "all"])]
        suite: String,
    },
}

#[derive(Subcommand)]
enum LambdaOp {
    /// Product of two elements (names or files).
    Mul { a: String, b: String },
    /// A named element: `one`, `t` or `x:n`.
    Element { name: String },
    /// Same as the top-level `chi`.
    Chi { n: usize },
}

const DEFAULT_CAP: usize = 8;

/// Failures that are not usage errors.
enum Failure {
    Validation(anyhow::Error),
    Cap(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let cap = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::CapExceeded(_))));
        if cap {
            Failure::Cap(e)
        } else {
            Failure::Validation(e)
        }
    }
}

/// Die quietly on a closed pipe (`vogel chi 9 | head`) instead of panicking.
#[cfg(unix)]
fn restore_sigpipe() {
    // SAFETY: runs before any other thread exists.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_sigpipe() {}

fn main() -> ExitCode {
    restore_sigpipe();
    let cli = Cli::parse();
    let cap = match (&cli.command, cli.cap) {
        (_, Some(c)) => c,
        (Command::Verify { .. }, None) => usize::MAX,
        (_, None) => DEFAULT_CAP,
    };
    quotient::set_degree_cap(cap);
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (code, e) = match f {
                Failure::Validation(e) => (1, e),
                Failure::Cap(e) => (3, e),
            };
            if cli.json {
                println!("{}", json!({ "error": format!("{e:#}") }));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(code)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Accepts either a diagram or a sum.
fn load_sum(path: &Path) -> Result<DiagramSum> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("{} is not JSON", path.display()))?;
    let s = if v.get("terms").is_some() {
        text.parse::<DiagramSum>()?
    } else {
        DiagramSum::from_diagram(&text.parse::<Diagram>()?)
    };
    Ok(s)
}

fn load_algebra(spec: &str, cap: usize) -> Result<MetricLie> {
    let l = match lie::by_name(spec) {
        Ok(l) => l,
        Err(_) if Path::new(spec).exists() => {
            let l: MetricLie = read(Path::new(spec))?.parse()?;
            l.validate()?;
            l
        }
        Err(e) => return Err(e.into()),
    };
    if l.dim() > cap {
        return Err(Error::CapExceeded(format!("algebra dimension {} is above the cap of {cap}", l.dim())).into());
    }
    Ok(l)
}

fn load_element(spec: &str) -> Result<LambdaElement> {
    if Path::new(spec).exists() {
        return Ok(LambdaElement::new(&load_sum(Path::new(spec))?)?);
    }
    Ok(lambda::named(spec)?)
}

fn emit_sum(s: &DiagramSum, json: bool) {
    if json {
        println!("{}", s.to_json());
    } else {
        println!("{s}");
    }
}

fn emit_report(r: &Report, json: bool) {
    if json {
        println!("{}", r.to_json());
    } else {
        print!("{r}");
    }
}

fn chi_output(n: usize, json: bool) -> Result<()> {
    let f = symfunc::chi(n);
    let dec = f.lambda_tilde_decomposition().context("chi lies outside the subring")?;
    if json {
        let v = json!({
            "n": n,
            "chi": f.to_serial(),
            "p": dec.p.to_serial(),
            "q": dec.q.to_serial(),
        });
        println!("{v}");
    } else {
        println!("chi({n}) = {f}");
        println!("        = {} + omega * ({})", dec.p, dec.q);
    }
    Ok(())
}

fn run(cli: &Cli) -> std::result::Result<bool, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Normalize { file, reduce } => {
            let mut s = load_sum(file)?;
            if *reduce {
                s = quotient::reduce(&s).map_err(anyhow::Error::from)?;
            }
            emit_sum(&s, json);
        }
        Command::Compose { f, g } => {
            let s = prop::compose(&load_sum(f)?, &load_sum(g)?).map_err(anyhow::Error::from)?;
            emit_sum(&s, json);
        }
        Command::Tensor { f, g } => emit_sum(&prop::tensor(&load_sum(f)?, &load_sum(g)?), json),
        Command::Perm { images } => emit_sum(&prop::perm(images).map_err(anyhow::Error::from)?, json),
        Command::Dim { inputs, outputs, degree, max_components } => {
            let b = quotient::quotient_basis(*inputs, *outputs, *degree, *max_components).map_err(anyhow::Error::from)?;
            if json {
                let basis: Vec<Value> =
                    b.basis().iter().map(|d| serde_json::to_value(d.to_raw()).expect("diagram serialises")).collect();
                println!("{}", json!({ "dim": b.dim(), "basis": basis }));
            } else {
                println!("{}", b.dim());
            }
        }
        Command::Eval { algebra, file } => {
            let l = load_algebra(algebra, cli.cap.unwrap_or(DEFAULT_CAP))?;
            let s = load_sum(file)?;
            let t = eval::evaluate(&s, &l);
            match (json, t.as_scalar()) {
                (true, _) => println!("{}", t.to_json()),
                (false, Some(x)) => println!("{}", rational::format(x)),
                (false, None) => {
                    let (m, n) = t.arity();
                    println!("tensor {m} -> {n} over dimension {}", t.dim());
                    for (i, x) in t.data().iter().enumerate() {
                        if *x != rational::zero() {
                            println!("{i}: {}", rational::format(x));
                        }
                    }
                }
            }
        }
        Command::Character { algebra, element } => {
            let l = load_algebra(algebra, cli.cap.unwrap_or(DEFAULT_CAP))?;
            let x = load_element(element)?;
            let c = eval::vogel_character(&x, &l).map_err(anyhow::Error::from)?;
            if json {
                println!("{}", json!({ "algebra": l.name(), "element": element, "value": rational::format(&c) }));
            } else {
                println!("{}", rational::format(&c));
            }
        }
        Command::Casimir { algebra } => {
            let l = load_algebra(algebra, cli.cap.unwrap_or(DEFAULT_CAP))?;
            let adj = eval::casimir_adjoint_spectrum(&l).map_err(anyhow::Error::from)?;
            let s2 = eval::casimir_s2_spectrum(&l).map_err(anyhow::Error::from)?;
            let show = |s: &eval::Spectrum| -> Value {
                json!({
                    "eigenvalues": s.eigenvalues.iter().map(|(x, k)| json!([rational::format(x), k])).collect::<Vec<_>>(),
                    "remainder": s.remainder.iter().map(rational::format).collect::<Vec<_>>(),
                })
            };
            if json {
                println!("{}", json!({ "algebra": l.name(), "adjoint": show(&adj), "s2": show(&s2) }));
            } else {
                let fmt = |s: &eval::Spectrum| {
                    s.eigenvalues.iter().map(|(x, k)| format!("{} (x{k})", rational::format(x))).collect::<Vec<_>>().join(", ")
                };
                println!("adjoint: {}", fmt(&adj));
                println!("S^2:     {}", fmt(&s2));
                if s2.remainder.len() > 1 {
                    println!("S^2 irrational factor of degree {}", s2.remainder.len() - 1);
                }
            }
        }
        Command::Algebra { algebra } => {
            let l = load_algebra(algebra, cli.cap.unwrap_or(DEFAULT_CAP))?;
            if let Err(e) = l.validate() {
                return Err(anyhow::Error::from(e).into());
            }
            if json {
                println!("{}", l.to_json());
            } else {
                println!("{}: dimension {}, superdimension {}, valid", l.name(), l.dim(), l.superdimension());
            }
        }
        Command::Lambda { op } => match op {
            LambdaOp::Mul { a, b } => {
                let p = lambda::lambda_mul(&load_element(a)?, &load_element(b)?).map_err(anyhow::Error::from)?;
                emit_sum(p.sum(), json);
            }
            LambdaOp::Element { name } => emit_sum(load_element(name)?.sum(), json),
            LambdaOp::Chi { n } => chi_output(*n, json)?,
        },
        Command::Chi { n } => chi_output(*n, json)?,
        Command::Rw { file } => {
            let v = rw::rw_sum(&load_sum(file)?, &RwTable::k3()).map_err(anyhow::Error::from)?;
            if json {
                println!("{}", json!({ "value": v.to_string() }));
            } else {
                println!("{v}");
            }
        }
        Command::Verify { suite } => {
            if suite == "westbury" && json {
                let w = rw::verify_westbury(&RwTable::k3());
                println!("{}", w.to_json());
                return Ok(w.passed());
            }
            let reports = suites::run(suite).map_err(anyhow::Error::from)?;
            let ok = reports.iter().all(Report::passed);
            if json && reports.len() == 1 {
                emit_report(&reports[0], true);
            } else if json {
                println!("{}", serde_json::to_string(&reports).expect("reports serialise"));
            } else {
                for r in &reports {
                    emit_report(r, false);
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}
