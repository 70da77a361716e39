use std::fs::{self, File};
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use simplex_bench::{
    fairness_violations, generate_vector, read_csv, read_libsvm, render_table, run_benchmark, speedup_report,
    write_csv, write_report_csv, Baseline, BenchConfig, DistSpec,
};
use simplex_proj::extensions::{
    distributed_weighted_project, lasso_pgd_minibatch, project_l1_ball, project_parity_polytope,
    project_weighted_l1_ball, verify_weighted_kkt, weighted_sort_scan_parallel, BallInstance, LassoConfig, LassoInit,
    WeightedInstance, WeightedVariant,
};
use simplex_proj::parallel::MAX_THREADS_ENV;
use simplex_proj::{verify_kkt, Algorithm, Backend, ProjectionInstance};

#[derive(Parser)]
#[command(name = "simplex-bench", version, about = "Simplex projection solvers and benchmarks")]
#[command(after_help = format!("Set {MAX_THREADS_ENV} to cap the number of worker threads."))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project one generated vector and print the result summary.
    Project {
        #[arg(long, default_value = "condat")]
        alg: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "uniform(0,1)")]
        dist: String,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Whitespace-separated positive weights, one per entry.
        #[arg(long, value_name = "WFILE")]
        weighted: Option<PathBuf>,
        /// Project onto the l1 ball of radius b instead of the simplex.
        #[arg(long)]
        l1: bool,
        /// Project onto the centered parity polytope.
        #[arg(long, conflicts_with_all = ["l1", "weighted"])]
        parity: bool,
    },
    /// Run a benchmark described by a TOML file and write CSV.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `out` from the config; stdout when neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mini-batch projected gradient descent on a LIBSVM file.
    Lasso {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 128)]
        batch: usize,
        #[arg(long, default_value_t = 10)]
        iters: usize,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "condat")]
        alg: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Column count, when larger than the largest index in the file.
        #[arg(long)]
        cols: Option<usize>,
    },
    /// Speedup table from a benchmark CSV.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "fastest-serial")]
        baseline: String,
        /// Also write the table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Project { alg, n, dist, b, k, seed, weighted, l1, parity } => {
            project(&alg, n, &dist, b, k, seed, weighted, l1, parity)
        }
        Command::Bench { config, out } => bench(config, out),
        Command::Lasso { data, alpha, batch, iters, b, k, alg, seed, cols } => {
            let algorithm = Algorithm::from_id(&alg)?;
            let data = read_libsvm(&data, cols).with_context(|| format!("reading {}", data.display()))?;
            let cfg = LassoConfig { step: alpha, batch, iters, radius: b, seed, init: LassoInit::SparseUniform { rate: 0.5 } };
            let trace = lasso_pgd_minibatch(&data.matrix, &data.labels, &cfg, &Backend::parallel(algorithm, k))?;
            println!("iter,projection_ns,l1_norm,support");
            for (i, s) in trace.steps.iter().enumerate() {
                println!("{},{},{},{}", i + 1, s.projection_ns, s.l1_norm, s.support);
            }
            eprintln!("total projection time: {:.3} ms", trace.total_projection_ns() as f64 / 1e6);
            Ok(())
        }
        Command::Report { input, baseline, out } => {
            let records = read_csv(File::open(&input).with_context(|| format!("opening {}", input.display()))?)?;
            let rows = speedup_report(&records, baseline.parse::<Baseline>()?)?;
            print!("{}", render_table(&rows));
            for r in fairness_violations(&rows) {
                eprintln!("note: {} on one worker beats its serial counterpart", r.algorithm);
            }
            if let Some(path) = out {
                write_report_csv(&rows, BufWriter::new(File::create(&path)?))?;
            }
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn project(
    alg: &str,
    n: usize,
    dist: &str,
    b: f64,
    k: usize,
    seed: u64,
    weighted: Option<PathBuf>,
    l1: bool,
    parity: bool,
) -> Result<()> {
    let algorithm = Algorithm::from_id(alg)?;
    let spec: DistSpec = dist.parse()?;
    let d = generate_vector(spec, n, seed);
    let backend = Backend::parallel(algorithm, k);

    if parity {
        let start = Instant::now();
        let v = project_parity_polytope(&d, &backend)?;
        let elapsed = start.elapsed();
        let moved = v.iter().zip(&d).filter(|(x, y)| x != y).count();
        println!("parity: n={n} changed={moved} time_ms={:.3}", elapsed.as_secs_f64() * 1e3);
        return Ok(());
    }

    if let Some(path) = weighted {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let w: Vec<f64> = text.split_whitespace().map(str::parse).collect::<Result<_, _>>().context("parsing weights")?;
        let inst = WeightedInstance::new(d, w, b)?;
        let variant = match algorithm.serial_equivalent() {
            Algorithm::Condat | Algorithm::Bucket(_) => WeightedVariant::Condat,
            _ => WeightedVariant::Pivot,
        };
        let start = Instant::now();
        if l1 {
            let p = project_weighted_l1_ball(&inst, variant, k)?;
            let elapsed = start.elapsed();
            println!(
                "weighted-l1: n={n} interior={} tau={} support={} time_ms={:.3}",
                p.interior,
                p.proj.tau,
                p.proj.support_size(),
                elapsed.as_secs_f64() * 1e3
            );
        } else {
            let (p, _) = match algorithm.serial_equivalent() {
                Algorithm::SortScan => weighted_sort_scan_parallel(&inst, k)?,
                _ => distributed_weighted_project(&inst, k, variant)?,
            };
            let elapsed = start.elapsed();
            if !verify_weighted_kkt(&inst, &p, 1e-9) {
                bail!("weighted result failed the optimality check");
            }
            println!(
                "weighted: n={n} tau={} support={} time_ms={:.3}",
                p.tau,
                p.support_size(),
                elapsed.as_secs_f64() * 1e3
            );
        }
        return Ok(());
    }

    if l1 {
        let inst = BallInstance::new(d, b)?;
        let start = Instant::now();
        let p = project_l1_ball(&inst, &backend)?;
        let elapsed = start.elapsed();
        println!(
            "l1: n={n} interior={} tau={} support={} time_ms={:.3}",
            p.interior,
            p.proj.tau,
            p.proj.support_size(),
            elapsed.as_secs_f64() * 1e3
        );
        return Ok(());
    }

    let inst = ProjectionInstance::new(d, b)?;
    let start = Instant::now();
    let (p, stats) = backend.project(&inst)?;
    let elapsed = start.elapsed();
    if !verify_kkt(&inst, &p, 1e-9) {
        bail!("result failed the optimality check");
    }
    println!(
        "{}: n={n} k={k} tau={} support={} reduced={} scanned={} time_ms={:.3}",
        algorithm,
        p.tau,
        p.support_size(),
        stats.reduced_size,
        stats.elements_scanned,
        elapsed.as_secs_f64() * 1e3
    );
    Ok(())
}

fn bench(config: PathBuf, out: Option<PathBuf>) -> Result<()> {
    let text = fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
    let cfg = BenchConfig::from_toml(&text)?;
    let records = run_benchmark(&cfg)?;
    match out.or(cfg.out) {
        Some(path) => {
            write_csv(&records, BufWriter::new(File::create(&path)?))?;
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        None => write_csv(&records, io::stdout().lock())?,
    }
    Ok(())
}
