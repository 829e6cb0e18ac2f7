//! Command-line front end: generate, verify, inspect rings, compose,
//! factor, and run the no-go search. Exit codes: 0 success/verified,
//! 1 verification or property failure, 2 usage or format error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mubkit::files::{self, AnyFamilyFile, FamilyFile, FloatFamilyFile};
use mubkit::mub::{self, MubFamily};
use mubkit::ring::{from_catalog, factorize, CatalogRing, TransversalSet};
use mubkit::verify::{
    self, factor::factor_family, nogo, Mode, VerificationReport, DEFAULT_FLOAT_TOLERANCE,
};
use mubkit::{Error, Result};

#[derive(Parser)]
#[command(name = "mubkit", version, about = "mutually unbiased bases: construction, exact verification, ring tooling")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a MUB family and write it as an exact family file
    Gen {
        #[command(subcommand)]
        method: GenMethod,
    },
    /// Verify orthonormality and pairwise unbiasedness of a family file
    Verify {
        file: PathBuf,
        /// exact (default for exponent files) or float; float files only
        /// support float mode
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// float-mode tolerance
        #[arg(long, default_value_t = DEFAULT_FLOAT_TOLERANCE)]
        tol: f64,
        /// write the machine-readable report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print 1 + min p^e for N and whether a complete formula family exists
    Bound { n: u64 },
    /// Inspect a catalog ring: zN, gf:p,n, gr4:n, zp_dual:p, prod:A,B
    Ring {
        spec: String,
        #[command(subcommand)]
        action: RingAction,
    },
    /// Tensor two families into dimension N1*N2
    Tensor {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Factor a family in dimension N1*N2 into component families
    Factor {
        file: PathBuf,
        /// component dimensions, e.g. 2,3
        #[arg(long)]
        dims: String,
        #[arg(long)]
        out_a: Option<PathBuf>,
        #[arg(long)]
        out_b: Option<PathBuf>,
    },
    /// Sample formula recipes over a ring and report the largest
    /// mutually unbiased set found
    Search {
        spec: String,
        /// transversal S as element indices (default: the catalog's)
        #[arg(long)]
        s: Option<String>,
        /// nilpotent ideal N as element indices (default: the catalog's)
        #[arg(long)]
        nil: Option<String>,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// write the witness family as an exact family file
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenMethod {
    /// Odd-prime-power family in dimension p^n
    Wf {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        float_out: Option<PathBuf>,
    },
    /// Cubic variant for p >= 5
    Cubic {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        float_out: Option<PathBuf>,
    },
    /// Galois-ring family in dimension 2^n
    Kr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        float_out: Option<PathBuf>,
    },
    /// Character-of-polynomial engine over a catalog ring, using the
    /// ring kind's known formula recipes
    Generalized {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        nil: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        float_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RingAction {
    Sylow,
    Nilradical,
    Units,
    /// Validate a transversal pair (S, N)
    Transversal {
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        nil: Option<String>,
    },
    /// Split a transversal along a two-component decomposition
    Split {
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        nil: Option<String>,
        /// primes grouped into the left component (default: smallest)
        #[arg(long)]
        left: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Format(_) | Error::ResourceLimit(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Gen { method } => cmd_gen(method),
        Cmd::Verify { file, mode, tol, report } => cmd_verify(&file, mode, tol, report.as_deref()),
        Cmd::Bound { n } => cmd_bound(n),
        Cmd::Ring { spec, action } => cmd_ring(&spec, action),
        Cmd::Tensor { file_a, file_b, out } => cmd_tensor(&file_a, &file_b, &out),
        Cmd::Factor { file, dims, out_a, out_b } => {
            cmd_factor(&file, &dims, out_a.as_deref(), out_b.as_deref())
        }
        Cmd::Search { spec, s, nil, budget, seed, out } => {
            cmd_search(&spec, s.as_deref(), nil.as_deref(), budget, seed, out.as_deref())
        }
    }
}

fn cmd_gen(method: GenMethod) -> Result<ExitCode> {
    let (family, out, float_out) = match method {
        GenMethod::Wf { p, n, out, float_out } => (mub::wf_odd(p, n)?, out, float_out),
        GenMethod::Cubic { p, n, out, float_out } => (mub::cubic(p, n)?, out, float_out),
        GenMethod::Kr { n, out, float_out } => (mub::kr_even(n)?, out, float_out),
        GenMethod::Generalized { ring, s, nil, out, float_out } => {
            let (cat, t) = catalog_transversal(&ring, s.as_deref(), nil.as_deref())?;
            let specs = nogo::forced_specs(&cat.ring, &cat.kind, &t)?;
            if specs.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "no known formula recipes for ring '{ring}' with this transversal"
                )));
            }
            (mub::generalized(&cat.ring, &t, &specs)?, out, float_out)
        }
    };
    let file = FamilyFile::from_family(&family);
    write_text(&out, &files::to_json(&file))?;
    if let Some(path) = float_out {
        let ff = FloatFamilyFile::from_family(&family);
        write_text(&path, &files::to_json(&ff))?;
    }
    println!(
        "dimension {}, {} bases, root order {}",
        file.dimension,
        file.bases.len(),
        file.root_order
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    file: &Path,
    mode: Option<ModeArg>,
    tol: f64,
    report_path: Option<&Path>,
) -> Result<ExitCode> {
    let report = match files::load_any(&read_text(file)?)? {
        AnyFamilyFile::Exact(f) => {
            let family = f.to_family()?;
            let mode = match mode {
                Some(ModeArg::Float) => Mode::Float { tolerance: tol },
                _ => Mode::Exact,
            };
            verify::verify_family(&family, mode)?
        }
        AnyFamilyFile::Float(f) => {
            if let Some(ModeArg::Exact) = mode {
                return Err(Error::InvalidArgument(
                    "float family files only support float-mode verification".into(),
                ));
            }
            verify::verify_float_family(&f.to_vectors()?, tol)
        }
    };
    print_report(&report);
    if let Some(path) = report_path {
        write_text(path, &files::to_json(&report))?;
    }
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_report(report: &VerificationReport) {
    let b = report.orthonormal.len();
    println!(
        "dimension {}, {} bases, mode {:?}",
        report.dim, b, report.mode
    );
    for (i, v) in report.orthonormal.iter().enumerate() {
        match &v.witness {
            None => println!("basis {i}: orthonormal PASS"),
            Some(w) => println!("basis {i}: orthonormal FAIL ({w})"),
        }
    }
    // pairwise matrix: '+' unbiased, 'x' not, '.' diagonal
    let mut grid = vec![vec!['.'; b]; b];
    for (i, j, v) in &report.unbiased {
        let c = if v.pass { '+' } else { 'x' };
        grid[*i][*j] = c;
        grid[*j][*i] = c;
    }
    println!("unbiasedness matrix:");
    for row in &grid {
        println!("  {}", row.iter().collect::<String>());
    }
    for (i, j, v) in &report.unbiased {
        if let Some(w) = &v.witness {
            println!("pair ({i},{j}): FAIL ({w})");
        }
    }
    println!("result: {}", if report.all_pass { "PASS" } else { "FAIL" });
}

fn cmd_bound(n: u64) -> Result<ExitCode> {
    let b = verify::mub_bound(n)?;
    let factors = factorize(n)
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ");
    let verdict = if factorize(n).len() == 1 {
        "prime power: complete set constructible"
    } else {
        "complete set impossible for formula families"
    };
    println!("mub_bound({n}) = {b}  [{n} = {factors}; {verdict}]");
    Ok(ExitCode::SUCCESS)
}

fn cmd_ring(spec: &str, action: RingAction) -> Result<ExitCode> {
    let cat = from_catalog(spec)?;
    let ring = &cat.ring;
    match action {
        RingAction::Sylow => {
            let d = ring.sylow()?;
            for (comp, unity) in d.components.iter().zip(&d.unities) {
                println!("component {comp:?}  unity {unity}");
            }
        }
        RingAction::Nilradical => {
            println!("nilradical {:?}", ring.nilradical());
        }
        RingAction::Units => {
            let u = ring.units()?;
            println!("units {:?}", u.units);
        }
        RingAction::Transversal { s, nil } => {
            let t = resolve_transversal(&cat, s.as_deref(), nil.as_deref())?;
            println!("valid transversal: S = {:?}, N = {:?}", t.s, t.n);
        }
        RingAction::Split { s, nil, left } => {
            let t = resolve_transversal(&cat, s.as_deref(), nil.as_deref())?;
            let left_primes: Vec<u64> = match left {
                Some(list) => list
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse()
                            .map_err(|_| Error::InvalidArgument(format!("bad prime '{x}'")))
                    })
                    .collect::<Result<_>>()?,
                None => vec![factorize(ring.order() as u64)[0].0],
            };
            let d = ring.two_split(&left_primes)?;
            let (s1, s2) = ring.transversal_split(&t, &d)?;
            println!("S1 = {s1:?}");
            println!("S2 = {s2:?}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tensor(file_a: &Path, file_b: &Path, out: &Path) -> Result<ExitCode> {
    let fa = load_exact(file_a)?;
    let fb = load_exact(file_b)?;
    let t = mub::tensor(&fa, &fb)?;
    let file = FamilyFile::from_family(&t);
    write_text(out, &files::to_json(&file))?;
    println!(
        "dimension {}, {} bases, root order {}",
        file.dimension,
        file.bases.len(),
        file.root_order
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_factor(
    file: &Path,
    dims: &str,
    out_a: Option<&Path>,
    out_b: Option<&Path>,
) -> Result<ExitCode> {
    let (n1, n2) = parse_dims(dims)?;
    let family = load_exact(file)?;
    let fact = factor_family(&family, n1, n2)?;
    for (t, (la, lb)) in fact.l_a.iter().zip(&fact.l_b).enumerate() {
        println!("basis {t}: L_a = {la}, L_b = {lb}");
    }
    for (t1, t2, k) in &fact.k_a_sq {
        println!("pair ({t1},{t2}): K_A^2 = {k}");
    }
    for (t1, t2, k) in &fact.k_b_sq {
        println!("pair ({t1},{t2}): K_B^2 = {k}");
    }
    if let Some(path) = out_a {
        write_text(path, &files::to_json(&FamilyFile::from_family(&fact.a)))?;
    }
    if let Some(path) = out_b {
        write_text(path, &files::to_json(&FamilyFile::from_family(&fact.b)))?;
    }
    println!(
        "factored dimension {} into {} x {}",
        family.dim, fact.a.dim, fact.b.dim
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(
    spec: &str,
    s: Option<&str>,
    nil: Option<&str>,
    budget: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let (cat, t) = catalog_transversal(spec, s, nil)?;
    let outcome = nogo::nogo_search(&cat.ring, &cat.kind, &t, budget, seed)?;
    let dim = t.s.len();
    if outcome.max_size == dim + 1 {
        println!("{} (complete)", outcome.max_size);
    } else {
        println!(
            "max mutually unbiased subset: {} <= bound {}",
            outcome.max_size, outcome.bound
        );
    }
    println!(
        "sampled {} recipes, {} distinct orthonormal candidates",
        outcome.sampled, outcome.pool_size
    );
    if let Some(path) = out {
        write_text(path, &files::to_json(&FamilyFile::from_family(&outcome.family)))?;
    }
    Ok(ExitCode::SUCCESS)
}

// ---- helpers ---------------------------------------------------------------

fn catalog_transversal(
    spec: &str,
    s: Option<&str>,
    nil: Option<&str>,
) -> Result<(CatalogRing, TransversalSet)> {
    let cat = from_catalog(spec)?;
    let t = resolve_transversal(&cat, s, nil)?;
    Ok((cat, t))
}

fn resolve_transversal(
    cat: &CatalogRing,
    s: Option<&str>,
    nil: Option<&str>,
) -> Result<TransversalSet> {
    let s = match s {
        Some(list) => parse_elements(list)?,
        None => cat.default_s.clone(),
    };
    let nil = match nil {
        Some(list) => parse_elements(list)?,
        None => cat.default_n.clone(),
    };
    cat.ring.transversal_check(&s, &nil)
}

fn parse_elements(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad element index '{x}'")))
        })
        .collect()
}

fn parse_dims(dims: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = dims.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "expected --dims N1,N2, got '{dims}'"
        )));
    }
    let n1 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad dimension '{}'", parts[0])))?;
    let n2 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad dimension '{}'", parts[1])))?;
    Ok((n1, n2))
}

fn load_exact(path: &Path) -> Result<MubFamily> {
    match files::load_any(&read_text(path)?)? {
        AnyFamilyFile::Exact(f) => f.to_family(),
        AnyFamilyFile::Float(_) => Err(Error::Format(format!(
            "{} is a float family file; this command needs exact exponents",
            path.display()
        ))),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))
}
