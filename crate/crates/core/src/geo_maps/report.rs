use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use super::checks::{
    chart_overlap_distance, cr_residual, degree_integral, energy_density, equivariance_residual, isometry_ratio,
    kernel_containment, random_su2, sample_domain, KernelVerdict,
};
use super::{eval_plane, plane_to_quadric, DomainPoint, EmbeddingMap};
use crate::error::Result;
use crate::moduli::{ModuliPoint, Status};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub isometry: f64,
    pub cr: f64,
    pub quadric: f64,
    pub degree: f64,
    pub energy: f64,
    pub chart: f64,
    pub kernel: f64,
    pub equivariance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            isometry: 1e-4,
            cr: 1e-6,
            quadric: 1e-10,
            degree: 1e-3,
            energy: 1e-3,
            chart: 1e-9,
            kernel: 1e-9,
            equivariance: 1e-8,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Domain samples per chart.
    pub samples: usize,
    /// Group elements for the equivariance check; `None` skips it.
    pub group_samples: Option<usize>,
    pub tolerances: Tolerances,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 0, samples: 25, group_samples: None, tolerances: Tolerances::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, pass: value <= threshold }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MeanDev {
    pub mean: f64,
    pub max_dev: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub map: Value,
    pub degree: f64,
    pub isometry: MeanDev,
    pub energy: MeanDev,
    pub cr_max: f64,
    pub quadric_max: f64,
    pub chart_max: f64,
    pub equivariance: Option<f64>,
    pub kernel: Option<KernelVerdict>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn mean_dev(values: &[f64], target: f64) -> MeanDev {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max_dev = values.iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
    MeanDev { mean, max_dev }
}

/// Degree, isometry, holomorphy, isotropy, energy and chart checks; kernel
/// containment for boundary points; equivariance when requested.
pub fn verify_map(m: &EmbeddingMap, point: Option<&ModuliPoint>, opts: &VerifyOptions) -> Result<VerificationReport> {
    let tol = opts.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let xs = sample_domain(&mut rng, opts.samples.max(1));
    let k = m.degree() as f64;

    let mut ratios = Vec::with_capacity(xs.len());
    let mut energies = Vec::with_capacity(xs.len());
    let mut cr_max = 0.0f64;
    let mut quadric_max = 0.0f64;
    for x in &xs {
        ratios.push(isometry_ratio(m, x)?);
        energies.push(energy_density(m, x)?);
        cr_max = cr_max.max(cr_residual(m, x)?);
        quadric_max = quadric_max.max(plane_to_quadric(&eval_plane(m, x)?).isotropy());
    }
    let mut chart_max = 0.0f64;
    for i in 0..8 {
        let angle = 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / 8.0;
        let x = DomainPoint::new(0, num::complex::Complex64::from_polar(0.9 + 0.04 * i as f64, angle))?;
        chart_max = chart_max.max(chart_overlap_distance(m, &x)?);
    }
    let degree = degree_integral(m)?;
    let isometry = mean_dev(&ratios, k);
    let energy = mean_dev(&energies, 2.0 * k);

    let mut checks = vec![
        Check::at_most("degree", (degree - k).abs(), tol.degree),
        Check::at_most("isometry", isometry.max_dev, tol.isometry),
        Check::at_most("cr", cr_max, tol.cr),
        Check::at_most("quadric", quadric_max, tol.quadric),
        Check::at_most("energy", energy.max_dev, tol.energy),
        Check::at_most("chart", chart_max, tol.chart),
    ];

    let kernel = match point {
        Some(p) if p.status() == Status::Boundary => {
            let v = kernel_containment(p, &xs, tol.kernel)?;
            checks.push(Check::at_most("kernel_containment", v.residual, tol.kernel));
            Some(v)
        }
        _ => None,
    };

    let equivariance = match opts.group_samples {
        Some(n) => {
            let gs: Vec<_> = (0..n.max(1)).map(|_| random_su2(&mut rng)).collect();
            let pts: Vec<_> = xs.iter().take(10).copied().collect();
            let r = equivariance_residual(m, &gs, &pts)?;
            checks.push(Check::at_most("equivariance", r, tol.equivariance));
            Some(r)
        }
        None => None,
    };

    let (n_prime, ambient) = m.reduced_target();
    let map = serde_json::json!({
        "label": m.label(),
        "degree": m.degree(),
        "n_plus_2": m.n_plus_2(),
        "target": format!("Gr_{}(R^{})", m.n_plus_2() - 2, m.n_plus_2()),
        "reduced_target": format!("Gr_{n_prime}(R^{ambient})"),
    });
    Ok(VerificationReport {
        map,
        degree,
        isometry,
        energy,
        cr_max,
        quadric_max,
        chart_max,
        equivariance,
        kernel,
        seed: opts.seed,
        tolerances: tol,
        checks,
    })
}
