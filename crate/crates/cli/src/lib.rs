//! Command-line front end: argument parsing, command dispatch, text and
//! JSON rendering, and the on-disk basis cache.

pub mod cache;
pub mod doc;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use e8jacobi_core::constructor::{certify, Certification, ConstructError, Engine};
use e8jacobi_core::graded_ring::{parse_poly, sub_upper_to_ab, Poly, RingError, AB, LOWER_AB};
use e8jacobi_oracle::{check_axioms, EvalContext, OracleError};

use crate::cache::DiskCache;
use crate::doc::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "e8jacobi", version, about = "W(E8)-invariant weak Jacobi forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Directory of the content-addressed basis cache.
    #[arg(long, global = true, env = "E8JACOBI_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Working decimal digits for numeric checks.
    #[arg(long, global = true, env = "E8JACOBI_PRECISION", default_value_t = 50)]
    pub precision: u32,

    /// Relative tolerance for numeric checks.
    #[arg(long, global = true, default_value_t = 1e-25)]
    pub tol: f64,

    /// Include wall-clock time in the output.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of J_{K,M}.
    #[command(allow_negative_numbers = true)]
    Dim { k: i32, m: i32 },
    /// Basis of J_{K,M} over the ab generators, with certificates.
    #[command(allow_negative_numbers = true)]
    Basis { k: i32, m: i32 },
    /// Generator-count polynomial of the free module of index M.
    Profile {
        m: i32,
        /// Weight range LO:HI to scan (default: derived from M)
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i32, i32)>,
    },
    /// Free-module generators of index M.
    ModuleGens {
        m: i32,
        /// Weight range LO:HI to scan (default: derived from M)
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(i32, i32)>,
    },
    /// Lowest-weight subalgebra generators up to index MAXM.
    Lb { max_index: i32 },
    /// Membership certificate for the polynomial in FILE.
    Certify {
        /// Polynomial as text (ab or AB letters) or a JSON polynomial document
        file: PathBuf,
    },
    /// Numeric axiom checks for every basis form of J_{K,M}.
    #[command(allow_negative_numbers = true)]
    Verify {
        k: i32,
        m: i32,
        /// Random sample points per form
        #[arg(long, default_value_t = 3)]
        samples: usize,
        /// Seed for the sample points
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generator-count polynomials for indices 1..=M.
    Tables {
        #[arg(long)]
        max_index: i32,
    },
}

pub fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo: i32 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i32 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Exit code and the text for each stream.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Inconsistent(String),
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Inconsistent { invariant, detail } => {
                Failure::Inconsistent(format!("inconsistency: invariant `{invariant}` failed: {detail}"))
            }
            ConstructError::Ring(r) => Failure::Inconsistent(format!("inconsistency: {r}")),
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        Failure::Inconsistent(format!("inconsistency: {e}"))
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Inconsistent(format!("numeric check failed: {e}"))
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome::usage(text),
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(format!("cannot start worker pool: {e}\n")),
    };
    let started = Instant::now();
    let result = pool.install(|| execute(&cli, echo));
    match result {
        Ok((mut doc, text, code)) => {
            if cli.timing {
                doc.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            let stdout = match cli.format {
                Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
                Format::Text => {
                    let mut t = text;
                    if let Some(ms) = doc.timing_ms {
                        writeln!(t, "time: {ms} ms").unwrap();
                    }
                    t
                }
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(Failure::Usage(m)) => Outcome::usage(m + "\n"),
        Err(Failure::Inconsistent(m)) => Outcome { code: EXIT_INCONSISTENT, stdout: String::new(), stderr: m + "\n" },
    }
}

fn engine(cli: &Cli) -> Result<Engine, Failure> {
    Ok(match &cli.cache_dir {
        Some(dir) => {
            let cache = DiskCache::open(dir)
                .map_err(|e| Failure::Usage(format!("cannot use cache directory {}: {e}", dir.display())))?;
            Engine::with_store(Arc::new(cache))
        }
        None => Engine::new(),
    })
}

fn read_form(path: &PathBuf) -> Result<Poly, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = text.trim();
    let poly = if text.starts_with('{') {
        let doc: PolyDoc = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad polynomial document: {e}")))?;
        doc.to_poly().map_err(|e| Failure::Usage(e.to_string()))?
    } else {
        match parse_poly(&LOWER_AB, text) {
            Ok(p) => p,
            Err(first) => parse_poly(&AB, text).map_err(|_| Failure::Usage(format!("cannot parse {}: {first}", path.display())))?,
        }
    };
    if poly.alphabet().same(&AB) {
        Ok(sub_upper_to_ab(&poly)?)
    } else {
        Ok(poly)
    }
}

type Executed = (ResultDocument, String, i32);

fn execute(cli: &Cli, echo: Vec<String>) -> Result<Executed, Failure> {
    let eng = engine(cli)?;
    let mut text = String::new();
    let mut code = EXIT_OK;
    let doc = match &cli.command {
        Command::Dim { k, m } => {
            let mut doc = ResultDocument::new(echo, Target::Bidegree { weight: *k, index: *m });
            let d = eng.dim(*k, *m)?;
            doc.dim = Some(d);
            writeln!(text, "{d}").unwrap();
            doc
        }
        Command::Basis { k, m } => {
            let mut doc = ResultDocument::new(echo, Target::Bidegree { weight: *k, index: *m });
            let b = eng.basis(*k, *m)?;
            let (forms, certs) = basis_forms(&b);
            doc.dim = Some(b.dim());
            doc.forms = forms;
            doc.certificates = certs;
            writeln!(text, "dim J_{{{k},{m}}} = {}", b.dim()).unwrap();
            for (i, (f, c)) in b.forms.iter().zip(&b.certificates).enumerate() {
                writeln!(text, "phi_{} = {f}", i + 1).unwrap();
                let ls: Vec<String> = c.s_parts.iter().map(|(l, _)| l.to_string()).collect();
                writeln!(text, "  certificate: Delta^{}, S_l nonzero at l = [{}]", c.n, ls.join(", ")).unwrap();
            }
            doc
        }
        Command::Profile { m, window } => {
            let mut doc = ResultDocument::new(echo, Target::Index { index: *m, window: *window });
            let p = match window {
                Some(w) => eng.index_profile_in(*m, *w)?,
                None => eng.index_profile(*m)?,
            };
            writeln!(text, "{}", p.laurent()).unwrap();
            if !p.complete {
                writeln!(text, "(window {}:{} does not cover every generator weight)", p.window.0, p.window.1).unwrap();
            }
            doc.profiles.push(ProfileDoc::from_profile(&p));
            doc
        }
        Command::ModuleGens { m, window } => {
            let mut doc = ResultDocument::new(echo, Target::Index { index: *m, window: *window });
            let g = match window {
                Some(w) => eng.module_generators_in(*m, *w)?,
                None => eng.module_generators(*m)?,
            };
            for (k, fs) in &g.by_weight {
                writeln!(text, "weight {k}: {} generator(s)", fs.len()).unwrap();
                for f in fs {
                    writeln!(text, "  {f}").unwrap();
                }
            }
            doc.module_generators = module_generator_docs(&g);
            doc
        }
        Command::Lb { max_index } => {
            let mut doc = ResultDocument::new(echo, Target::MaxIndex { max_index: *max_index });
            let r = eng.lb_analysis(*max_index)?;
            writeln!(text, "{:>5} {:>5} {:>5} {:>9} {:>6} {:>10}", "m", "dim", "d_lb", "products", "rank", "relations").unwrap();
            for e in &r.entries {
                writeln!(
                    text,
                    "{:>5} {:>5} {:>5} {:>9} {:>6} {:>10}",
                    e.index,
                    e.dim,
                    e.generators.len(),
                    e.product_count,
                    e.product_rank,
                    e.relation_count
                )
                .unwrap();
            }
            doc.lb = lb_rows(&r);
            doc
        }
        Command::Certify { file } => {
            let mut doc = ResultDocument::new(echo, Target::File { path: file.display().to_string() });
            let form = read_form(file)?;
            doc.forms.push(PolyDoc::from_poly(&form));
            match certify(&form)? {
                Certification::Certified(c) => {
                    writeln!(text, "certified: Delta^{} clears the denominator", c.n).unwrap();
                    doc.verdict = Some(Verdict::Certified { delta_power: c.n });
                    doc.certificates.push(CertificateDoc::from_certificate(&c));
                }
                Certification::Rejected(r) => {
                    writeln!(text, "rejected: Q_{} is not a multiple of P^{}", r.failing_l, r.failing_l).unwrap();
                    doc.verdict = Some(Verdict::Rejected { delta_power: r.n, failing_l: r.failing_l });
                }
            }
            doc
        }
        Command::Verify { k, m, samples, seed } => {
            let mut doc = ResultDocument::new(echo, Target::Bidegree { weight: *k, index: *m });
            let b = eng.basis(*k, *m)?;
            doc.dim = Some(b.dim());
            let ctx = EvalContext { digits: cli.precision, ..EvalContext::default() };
            writeln!(text, "dim J_{{{k},{m}}} = {}", b.dim()).unwrap();
            for (i, f) in b.forms.iter().enumerate() {
                let r = check_axioms(f, *k, *m, *samples, seed.wrapping_add(i as u64), &ctx)?;
                let d = OracleDoc::from_report(i + 1, &r, cli.tol);
                writeln!(
                    text,
                    "phi_{}: {} weyl {:.1e} quasi {:.1e} S {:.1e} T {:.1e} q-reg {:.1e} E4-zero {:.1e}",
                    i + 1,
                    if d.passed { "PASS" } else { "FAIL" },
                    d.weyl,
                    d.quasi_periodicity,
                    d.modular_s,
                    d.modular_t,
                    d.q_regularity,
                    d.e4_zero_regularity
                )
                .unwrap();
                if !d.passed {
                    code = EXIT_INCONSISTENT;
                }
                doc.oracle.push(d);
            }
            doc.forms = b.forms.iter().map(PolyDoc::from_poly).collect();
            doc
        }
        Command::Tables { max_index } => {
            if *max_index < 1 {
                return Err(Failure::Usage("--max-index must be at least 1".into()));
            }
            let mut doc = ResultDocument::new(echo, Target::MaxIndex { max_index: *max_index });
            for m in 1..=*max_index {
                let p = eng.index_profile(m)?;
                writeln!(text, "P^w_{m} = {}", p.laurent()).unwrap();
                doc.profiles.push(ProfileDoc::from_profile(&p));
            }
            doc
        }
    };
    Ok((doc, text, code))
}
