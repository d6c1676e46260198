mod report;

use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use qmoduli::decompose::{decompose, Query};
use qmoduli::geo_maps::{verify_map, EmbeddingMap, Tolerances, VerificationReport, VerifyOptions};
use qmoduli::moduli::{
    family_point, make_t, moduli_report, rigidity_herm, rigidity_real, sample_points, ModuliPoint, ModuliSpace,
    Status,
};
use qmoduli::rep::format_labels;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use report::{Format, Report};
use serde_json::json;

const DEFAULT_SEED: u64 = 1;
const USAGE_EXIT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "qmoduli", version, about = "Moduli of holomorphic isometric embeddings of CP^1 into quadrics")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Random seed; QMODULI_SEED overrides it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form decompositions checked against Casimir eigenspaces.
    Decompose {
        #[command(subcommand)]
        query: DecomposeQuery,
    },
    /// Dimension and isotypic content of the moduli tangent space.
    Moduli {
        #[arg(long)]
        k: u32,
    },
    /// Rigidity spans for the Hermitian and real standard settings.
    Rigidity {
        #[arg(long)]
        k: u32,
    },
    /// Geometric verification battery for one map.
    Verify(VerifyArgs),
    /// Status of C = t sigma + s J sigma on a circle grid at several radii.
    Family {
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,1.5")]
        radii: Vec<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum DecomposeQuery {
    CgReal { k: u32, l: u32 },
    CgComplex { k: u32, l: u32 },
    SymSquare { n: u32 },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, conflicts_with_all = ["real_standard", "family", "coords"])]
    standard: bool,
    #[arg(long, conflicts_with_all = ["family", "coords"])]
    real_standard: bool,
    #[arg(long, num_args = 2, value_names = ["T", "S"], allow_negative_numbers = true, conflicts_with = "coords")]
    family: Option<Vec<f64>>,
    /// Coordinates of C in the tangent basis, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    coords: Option<Vec<f64>>,
    #[command(flatten)]
    tol: ToleranceArgs,
}

#[derive(Args, Debug)]
struct ToleranceArgs {
    #[arg(long)]
    tol_isometry: Option<f64>,
    #[arg(long)]
    tol_cr: Option<f64>,
    #[arg(long)]
    tol_quadric: Option<f64>,
    #[arg(long)]
    tol_degree: Option<f64>,
    #[arg(long)]
    tol_energy: Option<f64>,
    #[arg(long)]
    tol_chart: Option<f64>,
    #[arg(long)]
    tol_kernel: Option<f64>,
    #[arg(long)]
    tol_equivariance: Option<f64>,
}

impl ToleranceArgs {
    fn apply(&self) -> Tolerances {
        let mut t = Tolerances::default();
        let pairs = [
            (&mut t.isometry, self.tol_isometry),
            (&mut t.cr, self.tol_cr),
            (&mut t.quadric, self.tol_quadric),
            (&mut t.degree, self.tol_degree),
            (&mut t.energy, self.tol_energy),
            (&mut t.chart, self.tol_chart),
            (&mut t.kernel, self.tol_kernel),
            (&mut t.equivariance, self.tol_equivariance),
        ];
        for (slot, v) in pairs {
            if let Some(v) = v {
                *slot = v;
            }
        }
        t
    }
}

struct Config {
    seed: u64,
    samples: Option<u64>,
}

fn usage(msg: impl std::fmt::Display) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.to_string()))
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn require_k(k: u32) -> anyhow::Result<()> {
    if k == 0 {
        return Err(usage("k must be at least 1"));
    }
    Ok(())
}

fn cmd_decompose(q: &DecomposeQuery) -> anyhow::Result<Report> {
    let (query, k) = match *q {
        DecomposeQuery::CgReal { k, l } => (Query::CgReal(k, l), k),
        DecomposeQuery::CgComplex { k, l } => (Query::CgComplex(k, l), k),
        DecomposeQuery::SymSquare { n } => (Query::SymSquare(n), n),
    };
    let d = decompose(query)?;
    let mut r = Report::new("decompose", k);
    r.text.push(d.line());
    r.check("dimension", d.dim as f64, d.expected_dim as f64, d.dim == d.expected_dim);
    r.flag("oracle_agreement", d.agree);
    r.json = json!({
        "query": format!("{query:?}"),
        "labels": d.formula,
        "oracle": d.oracle,
        "dim": d.dim,
        "expected_dim": d.expected_dim,
        "oracle_agreement": d.agree,
        "printed": d.printed,
        "eq_corrected": d.corrected,
    });
    Ok(r)
}

fn cmd_moduli(k: u32, cfg: &Config) -> anyhow::Result<Report> {
    require_k(k)?;
    let ms = ModuliSpace::new(k)?;
    let desc = ms.descriptor();
    let rigid = rigidity_real(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples = sample_points(&ms, &mut rng, cfg.samples.unwrap_or(3) as usize)?;
    let mut json = moduli_report(&ms, rigid.rigid, &samples)?;
    json["formula_match"] = json!(desc.formula_match());
    json["seed"] = json!(cfg.seed);
    let mut r = Report::new("moduli", k);
    r.text.push(format!(
        "k={k} dim {} (k(k-1) = {}) labels {} formula_match: {}",
        desc.dim,
        k * (k - 1),
        format_labels(&desc.labels),
        desc.formula_match()
    ));
    r.check("dimension", desc.dim as f64, (k * (k - 1)) as f64, desc.formula_match());
    r.json = json;
    Ok(r)
}

fn cmd_rigidity(k: u32) -> anyhow::Result<Report> {
    require_k(k)?;
    let real = rigidity_real(k)?;
    let herm = rigidity_herm(k)?;
    let mut r = Report::new("rigidity", k);
    r.text.push(format!("real standard (degree {}): rank {} of {} rigid: {}", 2 * k, real.rank, real.expected, real.rigid));
    r.text.push(format!("hermitian: rank {} of {} rigid: {}", herm.rank, herm.expected, herm.rigid));
    r.check("rigid_real", real.rank as f64, real.expected as f64, real.rigid);
    r.check("rigid_herm", herm.rank as f64, herm.expected as f64, herm.rigid);
    r.json = json!({ "k": k, "real": real, "herm": herm });
    Ok(r)
}

fn positivity(p: &ModuliPoint) -> serde_json::Value {
    json!({
        "status": p.status().as_str(),
        "kernel_dim": p.kernel_dim(),
        "min_eigenvalue": p.min_eigenvalue(),
        "eigenvalues": p.eigenvalues(),
        "trace_T2": p.trace_t_squared(),
    })
}

fn push_verification(r: &mut Report, v: &VerificationReport) -> anyhow::Result<()> {
    for c in &v.checks {
        r.check(c.name.clone(), c.value, c.threshold, c.pass);
    }
    r.text.push(format!(
        "map {} degree {:.6} isometry mean {:.6} (max dev {:.2e}) cr {:.2e} quadric {:.2e}",
        v.map["label"].as_str().unwrap_or("?"),
        v.degree,
        v.isometry.mean,
        v.isometry.max_dev,
        v.cr_max,
        v.quadric_max
    ));
    if let Some(e) = v.equivariance {
        r.text.push(format!("equivariance {e:.2e}"));
    }
    if let Some(kv) = &v.kernel {
        r.text.push(format!(
            "boundary: kernel dim {} contained (residual {:.2e}), reduced target Gr_{}(R^{})",
            kv.kernel_dim, kv.residual, kv.reduced_target.0, kv.reduced_target.1
        ));
    }
    r.json = serde_json::to_value(v)?;
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, cfg: &Config) -> anyhow::Result<Report> {
    require_k(a.k)?;
    let k = a.k;
    let mut opts = VerifyOptions {
        seed: cfg.seed,
        samples: cfg.samples.unwrap_or(25) as usize,
        group_samples: None,
        tolerances: a.tol.apply(),
    };
    let mut r = Report::new("verify", k);
    if a.real_standard {
        opts.group_samples = Some(5);
        let m = EmbeddingMap::real_standard(k)?;
        let v = verify_map(&m, None, &opts)?;
        push_verification(&mut r, &v)?;
        let rigid = rigidity_real(k)?;
        r.text.push(format!(
            "rigidity: GS(V0,V0) rank {} of dim S(W^R) = {} rigid: {}",
            rigid.rank, rigid.expected, rigid.rigid
        ));
        r.check("rigid_real", rigid.rank as f64, rigid.expected as f64, rigid.rigid);
        r.json["rigidity"] = serde_json::to_value(&rigid)?;
        return Ok(r);
    }
    let ms = ModuliSpace::new(k)?;
    let point = if let Some(ts) = &a.family {
        opts.group_samples = Some(5);
        family_point(&ms, ts[0], ts[1]).map_err(|e| usage(format!("family point: {e}")))?
    } else if let Some(c) = &a.coords {
        let op = ms.operator_from_f64(c).map_err(|e| usage(e.to_string()))?;
        make_t(&ms, &op)?
    } else {
        opts.group_samples = Some(5);
        ms.zero_point()?
    };
    if point.status() == Status::Infeasible {
        r.text.push(format!("infeasible: Id + C has minimum eigenvalue {:.6e}", point.min_eigenvalue()));
        r.check("positivity", point.min_eigenvalue(), 0.0, false);
        r.json = json!({ "k": k, "positivity": positivity(&point) });
        return Ok(r);
    }
    let m = if point.c().is_zero() { EmbeddingMap::standard(k)? } else { EmbeddingMap::deformed(&point)? };
    let v = verify_map(&m, Some(&point), &opts)?;
    push_verification(&mut r, &v)?;
    r.json["positivity"] = positivity(&point);
    Ok(r)
}

fn cmd_family(k: u32, radii: &[f64], cfg: &Config) -> anyhow::Result<Report> {
    require_k(k)?;
    if k % 2 == 1 {
        return Err(usage(format!("family points need even k, got {k}")));
    }
    let ms = ModuliSpace::new(k)?;
    let steps = cfg.samples.unwrap_or(16) as usize;
    let mut r = Report::new("family", k);
    let mut rows = Vec::new();
    for &rad in radii {
        for j in 0..steps {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / steps as f64;
            let (t, s) = (rad * phi.cos(), rad * phi.sin());
            let p = family_point(&ms, t, s)?;
            let rr = t * t + s * s;
            let expected = if (rr - 1.0).abs() < 1e-9 {
                Status::Boundary
            } else if rr < 1.0 {
                Status::Interior
            } else {
                Status::Infeasible
            };
            let ok = p.status() == expected;
            r.flag(format!("status(t={t:.4},s={s:.4})"), ok);
            r.text.push(format!("t={t:+.4} s={s:+.4} {} kernel {}", p.status().as_str(), p.kernel_dim()));
            rows.push(json!({ "t": t, "s": s, "status": p.status().as_str(), "kernel_dim": p.kernel_dim(), "min_eigenvalue": p.min_eigenvalue() }));
        }
    }
    r.json = json!({ "k": k, "points": rows });
    Ok(r)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let seed = match std::env::var("QMODULI_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("QMODULI_SEED is not an integer: {s:?}")).map_err(|e| usage(format!("{e:#}")))?,
        Err(_) => cli.seed.unwrap_or(DEFAULT_SEED),
    };
    let cfg = Config { seed, samples: cli.samples };
    match &cli.command {
        Command::Decompose { query } => cmd_decompose(query),
        Command::Moduli { k } => cmd_moduli(*k, &cfg),
        Command::Rigidity { k } => cmd_rigidity(*k),
        Command::Verify(a) => cmd_verify(a, &cfg),
        Command::Family { k, radii } => {
            if radii.iter().any(|r| !r.is_finite() || *r < 0.0) {
                bail!(usage("radii must be finite and nonnegative"));
            }
            cmd_family(*k, radii, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|r| Ok((r.render(cli.format)?, r.passed()))) {
        Ok((out, passed)) => {
            println!("{out}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(USAGE_EXIT)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
