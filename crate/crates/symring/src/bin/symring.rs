//! Command-line front end: dimension tables, permutation-basis and
//! star-map precomputation with on-disk caching, idempotent
//! decomposition, Hilbert-space actions, the S_5 worked example and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use symring::coeff::Coefficient;
use symring::dft::{dft, specht_module};
use symring::error::{Error, Result};
use symring::group_ring::GroupRingElement;
use symring::heisenberg::{apply_operator, hamiltonian_matrix, CouplingSign};
use symring::idempotent::{
    decompose_self_adjoint, decompose_self_adjoint_spectral, weyl_idempotent, young_symmetrizer,
    SpectralContext,
};
use symring::matrix::CMatrix;
use symring::partition::Partition;
use symring::star_transfer::{
    build_star_map_basis, build_star_map_direct, compute_plam, StarTransferMap,
};
use symring::tableau::Tableau;
use symring::verify::{run_suite, DEFAULT_SEED};
use symring::{io, Permutation};

#[derive(Parser)]
#[command(name = "symring", version, about = "Exact symmetry operators in C[S_N]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Basis,
    Direct,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Spectral,
    Ring,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CouplingKind {
    Ferro,
    Antiferro,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dimension table d, d², d⁴ for all partitions of N.
    Dims {
        #[arg(long)]
        n: usize,
    },
    /// Compute a permutation basis of the two-sided block of a partition.
    Plam(PlamArgs),
    /// Build the star-transfer map of a partition.
    Starmap(StarmapArgs),
    /// Decompose a self-adjoint idempotent into primitive parts.
    Decompose(DecomposeArgs),
    /// Apply a group-ring operator to a Hilbert vector.
    Apply(ApplyArgs),
    /// Write the Heisenberg ring Hamiltonian over the ket basis.
    Hamiltonian(HamiltonianArgs),
    /// Reproduce and verify the worked S_5 example.
    ExampleS5(ExampleArgs),
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PlamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct StarmapArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda: String,
    /// Optional precomputed permutation basis (only used by the basis method).
    #[arg(long)]
    plam: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "basis")]
    method: Method,
    #[arg(long)]
    out: PathBuf,
    /// Reuse maps cached on disk, keyed by (N, partition, representation).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "spectral")]
    mode: Mode,
    /// Spin-alphabet size; enforces the annihilator precondition.
    #[arg(long)]
    letters: Option<usize>,
    /// Output directory for the parts and the audit report.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long)]
    op: PathBuf,
    #[arg(long)]
    vec: PathBuf,
    /// Output ket file; printed to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HamiltonianArgs {
    #[arg(long)]
    n: usize,
    /// Coupling constant J, an exact rational such as `1` or `3/2`.
    #[arg(long, default_value = "1")]
    j: String,
    #[arg(long = "type", value_enum)]
    kind: CouplingKind,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExampleArgs {
    #[arg(long, value_enum, default_value = "ring")]
    mode: Mode,
    /// Corrupt one entry of F before checking (negative control).
    #[arg(long, hide = true)]
    tamper: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "2")]
    letters: u8,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Dims { n } => cmd_dims(n),
        Command::Plam(args) => cmd_plam(args),
        Command::Starmap(args) => cmd_starmap(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Apply(args) => cmd_apply(args),
        Command::Hamiltonian(args) => cmd_hamiltonian(args),
        Command::ExampleS5(args) => cmd_example_s5(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn parse_lambda(n: usize, lambda: &str) -> Result<Partition> {
    let shape: Partition = lambda.parse()?;
    if shape.n() != n {
        return Err(Error::InvalidPartition(format!(
            "{shape} is a partition of {}, not {n}",
            shape.n()
        )));
    }
    Ok(shape)
}

fn cmd_dims(n: usize) -> Result<ExitCode> {
    if n == 0 || n > 10 {
        return Err(Error::InvalidInput("dims supports 1 <= N <= 10".into()));
    }
    let mut sum: u128 = 0;
    println!("{:<16} {:>8} {:>12} {:>20}", "lambda", "d", "d^2", "d^4");
    for shape in Partition::all(n) {
        let d = shape.dimension() as u128;
        sum += d * d;
        println!("{:<16} {:>8} {:>12} {:>20}", shape.to_string(), d, d * d, d * d * d * d);
    }
    let fact: u128 = (1..=n as u128).product();
    println!("sum d^2 = {sum} = {n}! = {fact}");
    if sum != fact {
        return Err(Error::Internal("dimension sum mismatch".into()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_plam(args: PlamArgs) -> Result<ExitCode> {
    let shape = parse_lambda(args.n, &args.lambda)?;
    let basis = compute_plam(&shape)?;
    io::write_plam(&args.out, &basis)?;
    println!(
        "wrote {} permutations for {} to {}",
        basis.perms().len(),
        shape,
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cache_path(dir: &Path, n: usize, shape: &Partition) -> PathBuf {
    let parts: Vec<String> = shape.parts().iter().map(|p| p.to_string()).collect();
    dir.join(format!("smap-n{n}-{}-natural.smap", parts.join("_")))
}

fn cmd_starmap(args: StarmapArgs) -> Result<ExitCode> {
    let shape = parse_lambda(args.n, &args.lambda)?;
    let cached = args
        .cache_dir
        .as_deref()
        .map(|dir| cache_path(dir, args.n, &shape));
    if let Some(path) = &cached {
        if path.exists() {
            let map = io::read_smap(path)?;
            if map.shape() != &shape {
                return Err(Error::InvalidInput(format!(
                    "cache file {} holds a map for {}",
                    path.display(),
                    map.shape()
                )));
            }
            io::write_smap(&args.out, &map)?;
            println!("reused cached map {}", path.display());
            return Ok(ExitCode::SUCCESS);
        }
    }
    let map: StarTransferMap = match args.method {
        Method::Basis => {
            let basis = match &args.plam {
                Some(path) => {
                    let b = io::read_plam(path)?;
                    if b.shape() != &shape {
                        return Err(Error::InvalidInput(format!(
                            "{} holds a basis for {}, not {shape}",
                            path.display(),
                            b.shape()
                        )));
                    }
                    b
                }
                None => compute_plam(&shape)?,
            };
            build_star_map_basis(&basis)?
        }
        Method::Direct => build_star_map_direct(&shape)?,
    };
    if let Some(path) = &cached {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        io::write_smap(path, &map)?;
    }
    io::write_smap(&args.out, &map)?;
    println!("wrote star map for {shape} to {}", args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_decompose(args: DecomposeArgs) -> Result<ExitCode> {
    let e = io::read_gre(&args.input)?;
    std::fs::create_dir_all(&args.out)?;
    let mut audit_text = String::new();
    match args.mode {
        Mode::Ring => {
            let result = decompose_self_adjoint(&e, args.letters)?;
            for (i, (part, audit)) in result.parts.iter().zip(&result.audit).enumerate() {
                let path = args.out.join(format!("part-{:02}.gre", i + 1));
                io::write_gre(&path, part)?;
                audit_text.push_str(&format!(
                    "part {:02}: seed_index={} kappa={} alpha={}\n",
                    i + 1,
                    audit.seed_index,
                    audit.kappa,
                    audit.alpha
                ));
            }
            println!("decomposed into {} parts (ring mode)", result.parts.len());
        }
        Mode::Spectral => {
            let ctx = SpectralContext::new(e.degree());
            let result = decompose_self_adjoint_spectral(&dft(&e), &ctx, args.letters)?;
            for (i, (part, audit)) in result.parts.iter().zip(&result.audit).enumerate() {
                let path = args.out.join(format!("part-{:02}.spec", i + 1));
                io::write_spec(&path, part)?;
                audit_text.push_str(&format!(
                    "part {:02}: seed_index={} kappa={} alpha={}\n",
                    i + 1,
                    audit.seed_index,
                    audit.kappa,
                    audit.alpha
                ));
            }
            println!(
                "decomposed into {} parts (spectral mode)",
                result.parts.len()
            );
        }
    }
    std::fs::write(args.out.join("audit.txt"), audit_text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_apply(args: ApplyArgs) -> Result<ExitCode> {
    let a = io::read_gre(&args.op)?;
    let u = io::read_ket(&args.vec)?;
    let v = apply_operator(&a, &u)?;
    match args.out {
        Some(path) => io::write_ket(&path, &v)?,
        None => print!("{}", io::ket_to_string(&v)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hamiltonian(args: HamiltonianArgs) -> Result<ExitCode> {
    let j: Coefficient = args.j.parse()?;
    let sign = match args.kind {
        CouplingKind::Ferro => CouplingSign::Ferro,
        CouplingKind::Antiferro => CouplingSign::Antiferro,
    };
    let h = hamiltonian_matrix(args.n, &j, sign)?;
    io::write_matrix(&args.out, &h)?;
    println!(
        "wrote {}x{} Hamiltonian to {}",
        h.nrows(),
        h.ncols(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn print_block(name: &str, m: &CMatrix) {
    println!("{name} =");
    print!("{m:?}");
}

fn cmd_example_s5(args: ExampleArgs) -> Result<ExitCode> {
    let t = Tableau::new(vec![vec![5, 4, 2, 1], vec![3]])?;
    let shape = Partition::new(vec![4, 1])?;
    let y = young_symmetrizer(&t);
    let e = y.scale(&Coefficient::from_ratio(1, 30));
    let f = weyl_idempotent(&e)?;

    let ys = dft(&y).block_or_zero(&shape);
    let ys_star = dft(&y.star()).block_or_zero(&shape);
    let mut fm = dft(&f).block_or_zero(&shape);
    if args.tamper {
        fm[(0, 0)] = Coefficient::one();
    }

    print_block("YS", &ys);
    print_block("YS*", &ys_star);
    print_block("F", &fm);

    let thirty = Coefficient::from_integer(30);
    let mut failures: Vec<&str> = Vec::new();

    match args.mode {
        Mode::Spectral => {
            let map = build_star_map_basis(&compute_plam(&shape)?)?;
            let star_of_f = symring::star_transfer::apply_star_map(&map, &fm)?;
            run_checks(
                &mut failures,
                &ys,
                &ys_star,
                &fm,
                &star_of_f,
                &thirty,
            );
        }
        Mode::Ring => {
            // verify in the group ring, then compare the printed blocks
            let module = specht_module(&shape);
            let y2 = y.multiply(&y)?;
            if !y2.equals(&y.scale(&thirty)) {
                failures.push("YS*YS = 30 YS");
            }
            let ys_ring = y.star();
            if !ys_ring
                .multiply(&ys_ring)?
                .equals(&ys_ring.scale(&thirty))
            {
                failures.push("YS**YS* = 30 YS*");
            }
            let f_ring = if args.tamper {
                f.add(&GroupRingElement::basis(Permutation::identity(5)))?
            } else {
                f.clone()
            };
            if !f_ring.multiply(&f_ring)?.equals(&f_ring) {
                failures.push("F*F = F");
            }
            if !f_ring.multiply(&y)?.equals(&y) {
                failures.push("F*YS = YS");
            }
            if !y
                .multiply(&f_ring)?
                .scale(&thirty.recip())
                .equals(&f_ring)
            {
                failures.push("(1/30) YS*F = F");
            }
            if !f_ring.star().equals(&f_ring) {
                failures.push("F(star) = F");
            }
            // printed blocks must be images of the verified elements
            if !ys.equals(&dft(&y).block_or_zero(&shape))
                || !module.rep(&Permutation::identity(5)).equals(&CMatrix::identity(4))
            {
                failures.push("block consistency");
            }
        }
    }

    if y.support_len() != 48 {
        failures.push("support of y_t = 48");
    }
    if f.support_len() != 120 {
        failures.push("support of f = 120");
    }

    if failures.is_empty() {
        println!("PASS example-s5");
        Ok(ExitCode::SUCCESS)
    } else {
        for name in &failures {
            println!("FAIL {name}");
        }
        Ok(ExitCode::from(1))
    }
}

fn run_checks(
    failures: &mut Vec<&'static str>,
    ys: &CMatrix,
    ys_star: &CMatrix,
    fm: &CMatrix,
    star_of_f: &CMatrix,
    thirty: &Coefficient,
) {
    let ok = |m: &CMatrix, n: &CMatrix| m.equals(n);
    if !ok(&ys.mul(ys).unwrap(), &ys.scale(thirty)) {
        failures.push("YS*YS = 30 YS");
    }
    if !ok(&ys_star.mul(ys_star).unwrap(), &ys_star.scale(thirty)) {
        failures.push("YS**YS* = 30 YS*");
    }
    if !ok(&fm.mul(fm).unwrap(), fm) {
        failures.push("F*F = F");
    }
    if !ok(&fm.mul(ys).unwrap(), ys) {
        failures.push("F*YS = YS");
    }
    if !ok(&ys.mul(fm).unwrap().scale(&thirty.recip()), fm) {
        failures.push("(1/30) YS*F = F");
    }
    if !ok(star_of_f, fm) {
        failures.push("F(star) = F");
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let report = run_suite(&args.suite, args.n, args.letters, args.seed)?;
    print!("{}", report.render());
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
