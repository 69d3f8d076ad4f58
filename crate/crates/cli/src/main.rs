//! `tsyz`: generate, solve and benchmark Toeplitz systems.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse or usage error,
//! 3 singular matrix.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use toeplitz_syzygy::{
    inverse_columns, n_basis, solve, Error, Family, Field, FieldKind, InstanceFile, Rational,
    Real, Residual, Scalar, SyzygyVector, ToeplitzMatrix,
};

/// Largest accepted relative residual for float output.
const FLOAT_VERIFY_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "tsyz", version, about = "Toeplitz solver via syzygy reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve T·u = rhs for an instance file.
    Solve(IoArgs),
    /// Print the n-basis of the syzygy module.
    Basis(IoArgs),
    /// Print the first column of T⁻¹ and the solution of T·u = Z·T·eₙ.
    InverseColumns(IoArgs),
    /// Time the pipeline stages; CSV on standard output.
    Bench(BenchArgs),
    /// Write a random instance file.
    Gen(GenArgs),
}

#[derive(Args)]
struct IoArgs {
    #[arg(long)]
    input: PathBuf,
    /// Reinterpret the entries in this field instead of the file's.
    #[arg(long)]
    field: Option<FieldKind>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated powers of two.
    #[arg(long, value_delimiter = ',', default_values_t = [256usize, 512, 1024])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "diagonally-dominant")]
    family: Family,
    #[arg(long, default_value = "float")]
    field: FieldKind,
    /// Skip the dense oracle above this size.
    #[arg(long, default_value_t = 1024)]
    oracle_cutoff: usize,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "uniform")]
    family: Family,
    #[arg(long, default_value = "rational")]
    field: FieldKind,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Singular(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Singular(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Singular(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_singular() => Failure::Singular(e.to_string()),
            Error::Instance(_) | Error::Literal { .. } => Failure::Parse(e.to_string()),
            e => Failure::Other(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => with_instance(&a, |inst, field| match field {
            FieldKind::Rational => cmd_solve::<Rational>(inst),
            FieldKind::Float => cmd_solve::<Real>(inst),
        }),
        Command::Basis(a) => with_instance(&a, |inst, field| match field {
            FieldKind::Rational => cmd_basis::<Rational>(inst),
            FieldKind::Float => cmd_basis::<Real>(inst),
        }),
        Command::InverseColumns(a) => with_instance(&a, |inst, field| match field {
            FieldKind::Rational => cmd_inverse_columns::<Rational>(inst),
            FieldKind::Float => cmd_inverse_columns::<Real>(inst),
        }),
        Command::Bench(a) => cmd_bench(&a),
        Command::Gen(a) => cmd_gen(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_instance(path: &Path) -> CliResult<InstanceFile> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Other(format!("cannot read {}: {e}", path.display())))?;
    Ok(InstanceFile::from_json(&text)?)
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Other(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_instance(
    args: &IoArgs,
    run: impl FnOnce(&InstanceFile, FieldKind) -> CliResult<Value>,
) -> CliResult<()> {
    let inst = read_instance(&args.input)?;
    let field = args.field.unwrap_or(inst.field);
    let doc = run(&inst, field)?;
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    write_output(args.out.as_deref(), &text)
}

fn scalars<F: Field>(v: &[F]) -> Vec<Scalar> {
    v.iter().map(Scalar::from_field).collect()
}

fn coeffs<F: Field>(p: &toeplitz_syzygy::Poly<F>) -> Vec<Scalar> {
    if p.is_zero() {
        return scalars(&[F::zero()]);
    }
    scalars(p.coeffs())
}

fn syzygy_json<F: Field>(s: &SyzygyVector<F>) -> Value {
    json!({ "u": coeffs(&s.u), "v": coeffs(&s.v), "w": coeffs(&s.w) })
}

fn matrix_of<F: Field>(inst: &InstanceFile) -> CliResult<ToeplitzMatrix<F>> {
    inst.matrix().map_err(|e| Failure::Parse(e.to_string()))
}

fn cmd_solve<F: Field>(inst: &InstanceFile) -> CliResult<Value> {
    let t = matrix_of::<F>(inst)?;
    let g = inst
        .rhs_vector::<F>()
        .map_err(|e| Failure::Parse(e.to_string()))?
        .ok_or_else(|| Failure::Parse("invalid instance: solve needs an rhs".into()))?;
    let report = solve(&t, &g)?;
    // solve has already checked T·u = g; floats must also meet the tolerance
    let (exact, residual) = match report.residual {
        Residual::Exact => (true, None),
        Residual::Relative(r) if r <= FLOAT_VERIFY_TOL => (false, Some(r)),
        Residual::Relative(r) => {
            return Err(Failure::Other(format!(
                "verification failed: relative residual {r:e} exceeds {FLOAT_VERIFY_TOL:e}"
            )))
        }
    };
    let secs = |d: Duration| d.as_secs_f64();
    let mut doc = json!({
        "n": t.n(),
        "field": FieldKind::of::<F>(),
        "solution": scalars(&report.solution),
        "exact": exact,
        "basis_method": report.basis_method.name(),
        "timings": {
            "basis_seconds": secs(report.timings.basis),
            "division_seconds": secs(report.timings.division),
            "verify_seconds": secs(report.timings.verify),
            "total_seconds": secs(report.timings.total()),
        },
    });
    if let Some(r) = residual {
        doc["residual_norm"] = json!(r);
    }
    Ok(doc)
}

fn cmd_basis<F: Field>(inst: &InstanceFile) -> CliResult<Value> {
    let t = matrix_of::<F>(inst)?;
    let (basis, method) = n_basis(&t)?;
    basis
        .validate(&t)
        .map_err(|e| Failure::Other(format!("verification failed: {e}")))?;
    Ok(json!({
        "n": t.n(),
        "field": FieldKind::of::<F>(),
        "method": method.name(),
        "rho1": syzygy_json(&basis.rho1),
        "rho2": syzygy_json(&basis.rho2),
        "verified": true,
    }))
}

fn check_columns<F: Field>(t: &ToeplitzMatrix<F>, got: &[F], want: &[F]) -> CliResult<()> {
    let tu = t.matvec(got)?;
    let ok = if F::EXACT {
        tu == want
    } else {
        let err = tu
            .iter()
            .zip(want)
            .map(|(a, b)| (a.clone() - b).magnitude())
            .fold(0.0, f64::max);
        let unorm = got.iter().map(Field::magnitude).fold(1.0, f64::max);
        err <= FLOAT_VERIFY_TOL * t.coefficient_norm() * unorm
    };
    if !ok {
        return Err(Failure::Other("verification failed: column residual too large".into()));
    }
    Ok(())
}

fn cmd_inverse_columns<F: Field>(inst: &InstanceFile) -> CliResult<Value> {
    let t = matrix_of::<F>(inst)?;
    let n = t.n();
    let (uprime, u) = inverse_columns(&t)?;
    let mut e1 = vec![F::zero(); n];
    e1[0] = F::one();
    let ztn: Vec<F> = (0..n).map(|i| t.t(i as isize - n as isize)).collect();
    check_columns(&t, &uprime, &e1)?;
    check_columns(&t, &u, &ztn)?;
    Ok(json!({
        "n": n,
        "field": FieldKind::of::<F>(),
        "first_column": scalars(&uprime),
        "shift_column": scalars(&u),
        "verified": true,
    }))
}

fn random_rhs<F: Field>(n: usize, seed: u64) -> Vec<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_5eed);
    (0..n).map(|_| F::sample_unit(&mut rng)).collect()
}

fn generate<F: Field>(n: usize, seed: u64, family: Family) -> InstanceFile {
    let t = ToeplitzMatrix::<F>::random(n, seed, family);
    InstanceFile::from_matrix(&t, Some(&random_rhs::<F>(n, seed)))
}

fn cmd_gen(a: &GenArgs) -> CliResult<()> {
    let n = a.n as usize;
    let inst = match a.field {
        FieldKind::Rational => generate::<Rational>(n, a.seed, a.family),
        FieldKind::Float => generate::<Real>(n, a.seed, a.family),
    };
    write_output(a.out.as_deref(), &inst.to_json())
}

fn median(mut v: Vec<Duration>) -> f64 {
    v.sort();
    v[v.len() / 2].as_secs_f64()
}

/// Medians per stage: basis, division, total, and the dense oracle when
/// `n` is within the cutoff.
fn bench_size<F: Field>(a: &BenchArgs, n: usize) -> CliResult<Vec<(&'static str, f64)>> {
    let seed = a.seed.wrapping_add(n as u64);
    let t = ToeplitzMatrix::<F>::random(n, seed, a.family);
    let g = random_rhs::<F>(n, seed);
    let (mut basis, mut division, mut total, mut oracle) = (vec![], vec![], vec![], vec![]);
    for _ in 0..a.reps {
        let r = solve(&t, &g)?;
        basis.push(r.timings.basis);
        division.push(r.timings.division);
        total.push(r.timings.total());
        if n <= a.oracle_cutoff {
            let start = Instant::now();
            t.dense_solve(&g)?;
            oracle.push(start.elapsed());
        }
    }
    let mut rows = vec![
        ("basis", median(basis)),
        ("division", median(division)),
        ("total", median(total)),
    ];
    if !oracle.is_empty() {
        rows.push(("dense-oracle", median(oracle)));
    }
    Ok(rows)
}

fn cmd_bench(a: &BenchArgs) -> CliResult<()> {
    if let Some(bad) = a.sizes.iter().find(|n| !n.is_power_of_two()) {
        return Err(Failure::Parse(format!("size {bad} is not a power of two")));
    }
    let mut sizes = a.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();

    println!("n,stage,median_seconds,reps");
    let mut division = Vec::new();
    for &n in &sizes {
        let rows = match a.field {
            FieldKind::Rational => bench_size::<Rational>(a, n)?,
            FieldKind::Float => bench_size::<Real>(a, n)?,
        };
        for (stage, secs) in &rows {
            println!("{n},{stage},{secs:.9},{}", a.reps);
        }
        division.push((n, rows[1].1));
    }
    for w in division.windows(2) {
        let ((n0, t0), (n1, t1)) = (w[0], w[1]);
        eprintln!("division median ratio n={n1}/n={n0}: {:.3}", t1 / t0);
    }
    eprintln!("note: basis stage is O(n²); the division stage is O(n log² n)");
    Ok(())
}
