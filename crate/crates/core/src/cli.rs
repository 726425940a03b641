//! Command-line front end.
//!
//! Exit codes: 0 success, 1 an inequality was violated (a falsified
//! theorem instance), 2 validation failure, 3 parse, usage or I/O error,
//! 4 the hypothesis fails for the explicitly supplied `M`, `N`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use rayon::prelude::*;

use crate::banach::{
    check_nonarch_uncertainty, check_nonarch_uncertainty_swapped, nonarch_coherence,
};
use crate::error::Error;
use crate::generator::{
    random_onb_pair, random_system_pair, random_unit_vector, random_vector, rng_for,
};
use crate::instance::{
    parse_vector, BanachInstance, HilbertInstance, Instance, InstanceError, InstanceFile,
    InstanceKind, LabelledViolation,
};
use crate::linalg::PVector;
use crate::onb::OrthonormalBasis;
use crate::rational::{
    format_rational, padic_abs, ultranorm_to_rational, Prime, Rational, UltraNorm,
};
use crate::uncertainty::{check_uncertainty, coherence, padic_shannon_entropy, IndexSubset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

/// Largest dimension for exhaustive subset enumeration.
pub const MAX_ENUMERATION_DIM: usize = 12;

/// Offset mixed into the seed for the test vectors of generated instances.
const VECTOR_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Debug, Parser)]
#[command(
    name = "padic-gj",
    version,
    about = "Exact p-adic and non-Archimedean uncertainty checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Hilbert,
    Banach,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an instance file and validate every basis in it.
    Validate { path: PathBuf },
    /// Evaluate the uncertainty inequality on an instance.
    Check {
        path: PathBuf,
        /// 1-based index into the file's vectors, or a file holding a JSON
        /// array of fraction strings.
        #[arg(long)]
        vector: Option<String>,
        /// Check every (M, N) with coherence below 1 instead of the file's.
        #[arg(long)]
        all_subsets: bool,
    },
    /// Print a seeded random instance.
    Generate {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "hilbert")]
        kind: KindArg,
    },
    /// Tabulate every admissible (M, N) over a grid of generated instances.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// `a..b`, `a..=b` or a single seed.
        #[arg(long)]
        seeds: String,
        /// Random unit vectors drawn per instance.
        #[arg(long, default_value_t = 2)]
        vectors: usize,
        /// Output CSV path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate { path } => cmd_validate(&path, out),
        Command::Check {
            path,
            vector,
            all_subsets,
        } => cmd_check(&path, vector.as_deref(), all_subsets, out),
        Command::Generate {
            prime,
            dim,
            seed,
            kind,
        } => cmd_generate(prime, dim, seed, kind, out),
        Command::Sweep {
            primes,
            dims,
            seeds,
            vectors,
            out: path,
        } => cmd_sweep(&primes, &dims, &seeds, vectors, path.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

/// A failure that ends the command with a specific exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e)
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Parse(InstanceError),
    Invalid(Vec<LabelledViolation>),
}

pub fn load_instance(path: &Path) -> Result<Instance, LoadError> {
    let text = fs::read_to_string(path).map_err(LoadError::Io)?;
    let file = InstanceFile::from_json(&text).map_err(LoadError::Parse)?;
    let parsed = file.parse().map_err(LoadError::Parse)?;
    parsed.validate().map_err(LoadError::Invalid)
}

fn load_or_fail(path: &Path, out: &mut dyn Write) -> Result<Result<Instance, i32>, Failure> {
    match load_instance(path) {
        Ok(instance) => Ok(Ok(instance)),
        Err(LoadError::Io(e)) => Err(Failure::usage(format!("{}: {e}", path.display()))),
        Err(LoadError::Parse(e)) => Err(Failure::usage(format!("{}: {e}", path.display()))),
        Err(LoadError::Invalid(violations)) => {
            writeln!(out, "INVALID {}", path.display())?;
            for v in &violations {
                writeln!(out, "  {v}")?;
            }
            Ok(Err(EXIT_INVALID))
        }
    }
}

fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let instance = match load_or_fail(path, out)? {
        Ok(i) => i,
        Err(code) => return Ok(code),
    };
    let kind = match instance {
        Instance::Hilbert(_) => "hilbert",
        Instance::Banach(_) => "banach",
    };
    let (m, n) = instance.subsets();
    writeln!(
        out,
        "OK {}: kind={kind} prime={} dimension={} M={m} N={n} vectors={}",
        path.display(),
        instance.prime(),
        instance.dimension(),
        instance.vectors().len()
    )?;
    Ok(EXIT_OK)
}

fn select_vectors(instance: &Instance, selector: Option<&str>) -> Result<Vec<PVector>, Failure> {
    let prime = instance.prime();
    let d = instance.dimension();
    match selector {
        None if instance.vectors().is_empty() => {
            Ok((0..d).map(|j| PVector::unit(prime.clone(), d, j)).collect())
        }
        None => Ok(instance.vectors().to_vec()),
        Some(s) => {
            if let Ok(idx) = s.parse::<usize>() {
                let count = instance.vectors().len();
                if idx == 0 || idx > count {
                    return Err(Failure::usage(format!(
                        "--vector {idx}: the file has {count} vectors"
                    )));
                }
                return Ok(vec![instance.vectors()[idx - 1].clone()]);
            }
            let text = fs::read_to_string(s).map_err(|e| Failure::usage(format!("{s}: {e}")))?;
            let row: Vec<String> =
                serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{s}: {e}")))?;
            let v = parse_vector(prime, d, "vector", &row)
                .map_err(|e| Failure::usage(format!("{s}: {e}")))?;
            Ok(vec![v])
        }
    }
}

fn render_vector(v: &PVector) -> String {
    let parts: Vec<String> = v.entries().iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn cmd_check(
    path: &Path,
    selector: Option<&str>,
    all_subsets: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let instance = match load_or_fail(path, out)? {
        Ok(i) => i,
        Err(code) => return Ok(code),
    };
    let vectors = select_vectors(&instance, selector)?;
    if all_subsets {
        return check_all_subsets(&instance, &vectors, out);
    }
    let (m, n) = instance.subsets();
    let mut code = EXIT_OK;
    for (i, x) in vectors.iter().enumerate() {
        let label = format!("vector {} {}", i + 1, render_vector(x));
        let result = match &instance {
            Instance::Hilbert(h) => check_uncertainty(&h.tau, &h.omega, m, n, x),
            Instance::Banach(b) => check_nonarch_uncertainty(&b.s1, &b.s2, m, n, x),
        };
        match result {
            Ok(report) => {
                writeln!(out, "{label}: {report}")?;
                if !report.holds {
                    code = EXIT_FALSIFIED;
                }
            }
            Err(Error::HypothesisViolated { coherence }) => {
                writeln!(
                    out,
                    "{label}: hypothesis violated: coherence={} is not below 1",
                    coherence.render(instance.prime())
                )?;
                if code == EXIT_OK {
                    code = EXIT_HYPOTHESIS;
                }
            }
            Err(e) => return Err(Failure::usage(e)),
        }
        if let Instance::Banach(b) = &instance {
            match check_nonarch_uncertainty_swapped(&b.s1, &b.s2, m, n, x) {
                Ok(report) => {
                    writeln!(out, "{label} [interchanged]: {report}")?;
                    if !report.holds {
                        code = EXIT_FALSIFIED;
                    }
                }
                Err(Error::HypothesisViolated { .. }) => {
                    writeln!(out, "{label} [interchanged]: not applicable")?;
                }
                Err(e) => return Err(Failure::usage(e)),
            }
        }
    }
    Ok(code)
}

/// Absolute values `|⟨τ_j, ω_k⟩|` (or `|g_k(τ_j)|`) indexed `[j][k]`, and the
/// per-vector coefficient norms in each basis.
struct SubsetTables {
    cross: Vec<Vec<UltraNorm>>,
    first: Vec<Vec<UltraNorm>>,
    second: Vec<Vec<UltraNorm>>,
}

fn coefficient_norms(coeffs: Vec<Rational>, prime: &Prime) -> Vec<UltraNorm> {
    coeffs.iter().map(|c| padic_abs(c, prime)).collect()
}

fn subset_tables(instance: &Instance, vectors: &[PVector]) -> Result<SubsetTables, Error> {
    let prime = instance.prime();
    let d = instance.dimension();
    match instance {
        Instance::Hilbert(h) => {
            let cross = (0..d)
                .map(|j| {
                    (0..d)
                        .map(|k| {
                            Ok(padic_abs(
                                &h.tau.vector(j).inner_product(h.omega.vector(k))?,
                                prime,
                            ))
                        })
                        .collect::<Result<Vec<_>, Error>>()
                })
                .collect::<Result<_, _>>()?;
            let first = vectors
                .iter()
                .map(|x| Ok(coefficient_norms(h.tau.fourier_coefficients(x)?, prime)))
                .collect::<Result<_, Error>>()?;
            let second = vectors
                .iter()
                .map(|x| Ok(coefficient_norms(h.omega.fourier_coefficients(x)?, prime)))
                .collect::<Result<_, Error>>()?;
            Ok(SubsetTables {
                cross,
                first,
                second,
            })
        }
        Instance::Banach(b) => {
            let cross = (0..d)
                .map(|j| {
                    let t = b.s1.tau(j);
                    (0..d)
                        .map(|k| Ok(padic_abs(&b.s2.evaluate(k, &t)?, prime)))
                        .collect::<Result<Vec<_>, Error>>()
                })
                .collect::<Result<_, _>>()?;
            let first = vectors
                .iter()
                .map(|x| Ok(coefficient_norms(b.s1.coefficients(x)?, prime)))
                .collect::<Result<_, Error>>()?;
            let second = vectors
                .iter()
                .map(|x| Ok(coefficient_norms(b.s2.coefficients(x)?, prime)))
                .collect::<Result<_, Error>>()?;
            Ok(SubsetTables {
                cross,
                first,
                second,
            })
        }
    }
}

fn masked_max(values: &[UltraNorm], mask: u64, select_in_mask: bool) -> UltraNorm {
    values
        .iter()
        .enumerate()
        .filter(|(i, _)| (mask >> i & 1 == 1) == select_in_mask)
        .map(|(_, v)| *v)
        .max()
        .unwrap_or(UltraNorm::Zero)
}

/// Exhaustive check over all `(M, N)`: the inequality only depends on the
/// absolute values tabulated once per instance.
fn check_all_subsets(
    instance: &Instance,
    vectors: &[PVector],
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let d = instance.dimension();
    if d > MAX_ENUMERATION_DIM {
        return Err(Failure::usage(format!(
            "--all-subsets supports dimension at most {MAX_ENUMERATION_DIM}, got {d}"
        )));
    }
    let prime = instance.prime();
    let tables = subset_tables(instance, vectors).map_err(Failure::usage)?;
    let masks = 1u64 << d;
    let coherence_of = |m: u64, n: u64| {
        let mut best = UltraNorm::Zero;
        for j in (0..d).filter(|j| m >> j & 1 == 1) {
            for k in (0..d).filter(|k| n >> k & 1 == 1) {
                best = best.max(tables.cross[j][k]);
            }
        }
        best
    };
    let admissible: Vec<(u64, u64, UltraNorm)> = (0..masks)
        .into_par_iter()
        .flat_map_iter(|m| {
            (0..masks).filter_map(move |n| {
                let c = coherence_of(m, n);
                (c < UltraNorm::ONE).then_some((m, n, c))
            })
        })
        .collect();
    writeln!(
        out,
        "admissible (M, N) pairs: {} of {}",
        admissible.len(),
        masks * masks
    )?;
    let mut code = EXIT_OK;
    for (i, x) in vectors.iter().enumerate() {
        let lhs = ultranorm_to_rational(x.sup_norm(), prime);
        let first = &tables.first[i];
        let second = &tables.second[i];
        let failures: Vec<(u64, u64)> = admissible
            .par_iter()
            .filter(|(m, n, c)| {
                let restricted = masked_max(first, *m, false).max(masked_max(second, *n, false));
                let constant = (Rational::one() - ultranorm_to_rational(*c, prime)).recip();
                lhs > constant * ultranorm_to_rational(restricted, prime)
            })
            .map(|(m, n, _)| (*m, *n))
            .collect();
        writeln!(
            out,
            "vector {} {}: checked={} violations={}",
            i + 1,
            render_vector(x),
            admissible.len(),
            failures.len()
        )?;
        for (m, n) in failures.iter().take(10) {
            writeln!(
                out,
                "  VIOLATED M={} N={}",
                IndexSubset::from_mask(d, *m),
                IndexSubset::from_mask(d, *n)
            )?;
        }
        if !failures.is_empty() {
            code = EXIT_FALSIFIED;
        }
    }
    Ok(code)
}

/// Greedily grows `M × N` inside the pairs with `small[j][k]`.
#[allow(clippy::needless_range_loop)]
fn greedy_subsets(small: &[Vec<bool>]) -> (Vec<usize>, Vec<usize>) {
    let d = small.len();
    let Some((j0, k0)) = (0..d)
        .flat_map(|j| (0..d).map(move |k| (j, k)))
        .find(|&(j, k)| small[j][k])
    else {
        return (vec![], vec![]);
    };
    let mut m = vec![j0];
    let mut n = vec![k0];
    for (j, row) in small.iter().enumerate() {
        if !m.contains(&j) && n.iter().all(|&k| row[k]) {
            m.push(j);
        }
    }
    for k in 0..d {
        if !n.contains(&k) && m.iter().all(|&j| small[j][k]) {
            n.push(k);
        }
    }
    m.sort_unstable();
    n.sort_unstable();
    (m, n)
}

/// The instance written by `generate`, as a domain object.
pub fn generate_instance(
    prime: &Prime,
    dim: usize,
    seed: u64,
    kind: InstanceKind,
) -> Result<Instance, Error> {
    let mut rng = rng_for(seed ^ VECTOR_SEED_SALT);
    let vectors: Vec<PVector> = (0..3)
        .map(|_| random_vector(prime, dim, &mut rng))
        .collect();
    let singleton = |i: usize| IndexSubset::from_zero_based(dim, &[i]);
    match kind {
        InstanceKind::Hilbert => {
            let (tau, omega) = random_onb_pair(prime, dim, seed)?;
            let mut small = vec![vec![false; dim]; dim];
            for (j, row) in small.iter_mut().enumerate() {
                for (k, cell) in row.iter_mut().enumerate() {
                    *cell =
                        coherence(&tau, &omega, &singleton(j)?, &singleton(k)?)? < UltraNorm::ONE;
                }
            }
            let (m, n) = greedy_subsets(&small);
            Ok(Instance::Hilbert(HilbertInstance {
                tau,
                omega,
                m: IndexSubset::from_zero_based(dim, &m)?,
                n: IndexSubset::from_zero_based(dim, &n)?,
                vectors,
            }))
        }
        InstanceKind::Banach => {
            let (s1, s2) = random_system_pair(prime, dim, seed)?;
            let mut small = vec![vec![false; dim]; dim];
            for (j, row) in small.iter_mut().enumerate() {
                for (k, cell) in row.iter_mut().enumerate() {
                    *cell = nonarch_coherence(&s1, &s2, &singleton(j)?, &singleton(k)?)?
                        < UltraNorm::ONE;
                }
            }
            let (m, n) = greedy_subsets(&small);
            Ok(Instance::Banach(BanachInstance {
                s1,
                s2,
                m: IndexSubset::from_zero_based(dim, &m)?,
                n: IndexSubset::from_zero_based(dim, &n)?,
                vectors,
            }))
        }
    }
}

fn cmd_generate(
    prime: u64,
    dim: usize,
    seed: u64,
    kind: KindArg,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let prime = Prime::new(prime).map_err(Failure::usage)?;
    if dim == 0 || dim > crate::instance::MAX_DIMENSION {
        return Err(Failure::usage(format!(
            "--dim must be between 1 and {}",
            crate::instance::MAX_DIMENSION
        )));
    }
    let kind = match kind {
        KindArg::Hilbert => InstanceKind::Hilbert,
        KindArg::Banach => InstanceKind::Banach,
    };
    let instance = generate_instance(&prime, dim, seed, kind).map_err(Failure::usage)?;
    let file = match &instance {
        Instance::Hilbert(h) => InstanceFile::from_hilbert(h),
        Instance::Banach(b) => InstanceFile::from_banach(b),
    };
    out.write_all(file.to_json().as_bytes())?;
    Ok(EXIT_OK)
}

/// Parses `a..b`, `a..=b` or `a`.
pub fn parse_seed_range(s: &str) -> Result<Vec<u64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("invalid seed range {s:?}"))
    };
    if let Some((a, b)) = s.split_once("..=") {
        let (a, b) = (num(a)?, num(b)?);
        return Ok((a..=b).collect());
    }
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        return Ok((a..b).collect());
    }
    Ok(vec![num(s)?])
}

pub const SWEEP_HEADER: [&str; 17] = [
    "prime",
    "dim",
    "seed",
    "M",
    "N",
    "coherence_exp",
    "constant_num",
    "constant_den",
    "lhs_exp",
    "rhs_num",
    "rhs_den",
    "ratio",
    "holds",
    "entropy_tau",
    "entropy_omega",
    "pnvpm_exp",
    "draw",
];

fn exponent_field(n: UltraNorm) -> String {
    match n {
        UltraNorm::Zero => "-inf".to_string(),
        UltraNorm::Power(e) => e.to_string(),
    }
}

fn subset_field(s: &IndexSubset) -> String {
    s.one_based()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn entropy_field(basis: &OrthonormalBasis, x: &PVector) -> String {
    padic_shannon_entropy(basis, x)
        .map(|e| e.to_string())
        .unwrap_or_default()
}

/// Rows for one `(prime, dim, seed)`, in enumeration order, plus whether
/// every row held.
fn sweep_instance(
    prime: &Prime,
    dim: usize,
    seed: u64,
    draws: usize,
) -> Result<(Vec<Vec<String>>, bool), Error> {
    let (tau, omega) = random_onb_pair(prime, dim, seed)?;
    let mut rng = rng_for(seed ^ VECTOR_SEED_SALT);
    let vectors: Vec<PVector> = (0..draws)
        .map(|_| random_unit_vector(prime, dim, &mut rng))
        .collect();
    let entropies: Vec<(String, String)> = vectors
        .iter()
        .map(|x| (entropy_field(&tau, x), entropy_field(&omega, x)))
        .collect();
    let mut rows = Vec::new();
    let mut all_hold = true;
    for m_mask in 0..1u64 << dim {
        let m = IndexSubset::from_mask(dim, m_mask);
        for n_mask in 0..1u64 << dim {
            let n = IndexSubset::from_mask(dim, n_mask);
            if coherence(&tau, &omega, &m, &n)? >= UltraNorm::ONE {
                continue;
            }
            for (draw, (x, (e_tau, e_omega))) in vectors.iter().zip(&entropies).enumerate() {
                let report = check_uncertainty(&tau, &omega, &m, &n, x)?;
                all_hold &= report.holds;
                rows.push(vec![
                    prime.to_string(),
                    dim.to_string(),
                    seed.to_string(),
                    subset_field(&m),
                    subset_field(&n),
                    exponent_field(report.coherence),
                    report.bound_constant.numer().to_string(),
                    report.bound_constant.denom().to_string(),
                    exponent_field(report.lhs_norm),
                    report.rhs_value.numer().to_string(),
                    report.rhs_value.denom().to_string(),
                    report
                        .ratio()
                        .map(|r| format_rational(&r))
                        .unwrap_or_default(),
                    report.holds.to_string(),
                    e_tau.clone(),
                    e_omega.clone(),
                    exponent_field(report.pnvpm_norm),
                    (draw + 1).to_string(),
                ]);
            }
        }
    }
    Ok((rows, all_hold))
}

fn cmd_sweep(
    primes: &[u64],
    dims: &[usize],
    seeds: &str,
    draws: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let primes = primes
        .iter()
        .map(|&p| Prime::new(p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    if let Some(&bad) = dims.iter().find(|&&d| d == 0 || d > MAX_ENUMERATION_DIM) {
        return Err(Failure::usage(format!(
            "--dims entries must be between 1 and {MAX_ENUMERATION_DIM}, got {bad}"
        )));
    }
    let seeds = &parse_seed_range(seeds).map_err(Failure::usage)?;
    let jobs: Vec<(Prime, usize, u64)> = primes
        .iter()
        .flat_map(|p| {
            dims.iter()
                .flat_map(move |&d| seeds.iter().map(move |&s| (p.clone(), d, s)))
        })
        .collect();
    // Results are collected in job order, so the CSV does not depend on
    // scheduling.
    let results = jobs
        .par_iter()
        .map(|(p, d, s)| sweep_instance(p, *d, *s, draws))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;

    let mut buffer = Vec::new();
    {
        let mut writer = csv::Writer::from_writer(&mut buffer);
        writer.write_record(SWEEP_HEADER).map_err(Failure::usage)?;
        for (rows, _) in &results {
            for row in rows {
                writer.write_record(row).map_err(Failure::usage)?;
            }
        }
        writer.flush()?;
    }
    match path {
        Some(p) => {
            fs::write(p, &buffer).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?
        }
        None => out.write_all(&buffer)?,
    }
    if results.iter().all(|(_, ok)| *ok) {
        Ok(EXIT_OK)
    } else {
        Err(Failure {
            code: EXIT_FALSIFIED,
            message: "an uncertainty inequality failed during the sweep".into(),
        })
    }
}
