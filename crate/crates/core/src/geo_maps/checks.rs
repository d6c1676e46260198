use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, SymmetricEigen};
use num::complex::Complex64;
use rand::{Rng, RngExt};
use serde::Serialize;

use super::{eval_plane, herm, norm_sqr, plane_to_quadric, DomainPoint, EmbeddingMap, OrientedPlane};
use crate::error::{Error, Result};
use crate::moduli::{ModuliPoint, Status};

/// Finite-difference step.
pub const STEP: f64 = 1e-4;

type CVec = Vec<Complex64>;

/// Lift normalized against the value at the base point; holomorphic in `z`
/// whenever the projective map is.
fn lift(m: &EmbeddingMap, chart: u8, z: Complex64, w: &[Complex64]) -> Result<CVec> {
    let zeta = m.zeta_at(chart, z)?;
    let s = herm(w, &zeta);
    Ok(zeta.iter().map(|c| c / s).collect())
}

fn combine(a: &[Complex64], b: &[Complex64], ca: f64, cb: f64) -> CVec {
    a.iter().zip(b).map(|(x, y)| x * ca + y * cb).collect()
}

/// Central first derivatives along `x` and `y` with one Richardson step.
fn derivatives(m: &EmbeddingMap, chart: u8, z: Complex64) -> Result<(CVec, CVec)> {
    let w = m.zeta_at(chart, z)?;
    let central = |dir: Complex64, h: f64| -> Result<CVec> {
        let p = lift(m, chart, z + dir * h, &w)?;
        let q = lift(m, chart, z - dir * h, &w)?;
        Ok(combine(&p, &q, 0.5 / h, -0.5 / h))
    };
    let mut out = Vec::with_capacity(2);
    for dir in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
        let fine = central(dir, STEP)?;
        let coarse = central(dir, 2.0 * STEP)?;
        out.push(combine(&fine, &coarse, 4.0 / 3.0, -1.0 / 3.0));
    }
    let dy = out.pop().expect("two directions");
    let dx = out.pop().expect("two directions");
    Ok((dx, dy))
}

/// Five-point Laplacian of `f` at `z` with one Richardson step.
fn laplacian(z: Complex64, f: impl Fn(Complex64) -> Result<f64>) -> Result<f64> {
    let f0 = f(z)?;
    let stencil = |h: f64| -> Result<f64> {
        let mut s = -4.0 * f0;
        for d in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
            s += f(z + d)?;
        }
        Ok(s / (h * h))
    };
    Ok((4.0 * stencil(STEP)? - stencil(2.0 * STEP)?) / 3.0)
}

/// Ratio of the Laplacians of `log |zeta|^2` and `log (1 + |z|^2)`.
pub fn isometry_ratio(m: &EmbeddingMap, x: &DomainPoint) -> Result<f64> {
    let (chart, z) = (x.chart(), x.z());
    let w = m.zeta_at(chart, z)?;
    let lf = laplacian(z, |p| lift(m, chart, p, &w).map(|v| norm_sqr(&v).ln()))?;
    let l0 = laplacian(z, |p| Ok((1.0 + p.norm_sqr()).ln()))?;
    Ok(lf / l0)
}

/// `|d zeta / d zbar| / |d zeta / dz|` up to the factor of the derivative
/// normalization: `|(d_x + i d_y) zeta| / |d_x zeta|`.
pub fn cr_residual(m: &EmbeddingMap, x: &DomainPoint) -> Result<f64> {
    let (dx, dy) = derivatives(m, x.chart(), x.z())?;
    let i = Complex64::new(0.0, 1.0);
    let dbar: CVec = dx.iter().zip(&dy).map(|(a, b)| a + i * b).collect();
    Ok(norm_sqr(&dbar).sqrt() / norm_sqr(&dx).sqrt())
}

/// Fubini-Study length squared of `v` at `zeta`.
fn fs_norm_sqr(zeta: &[Complex64], v: &[Complex64]) -> f64 {
    let n = norm_sqr(zeta);
    (norm_sqr(v) * n - herm(zeta, v).norm_sqr()) / (n * n)
}

fn perp(zeta: &[Complex64], v: &[Complex64]) -> CVec {
    let c = herm(zeta, v) / norm_sqr(zeta);
    v.iter().zip(zeta).map(|(a, b)| a - c * b).collect()
}

/// Trace of the pulled-back metric with respect to the round metric.
pub fn energy_density(m: &EmbeddingMap, x: &DomainPoint) -> Result<f64> {
    let w = m.zeta_at(x.chart(), x.z())?;
    let zeta = lift(m, x.chart(), x.z(), &w)?;
    let (dx, dy) = derivatives(m, x.chart(), x.z())?;
    let conformal = (1.0 + x.z().norm_sqr()).powi(2);
    Ok((fs_norm_sqr(&zeta, &dx) + fs_norm_sqr(&zeta, &dy)) * conformal)
}

/// Density of the pulled-back Kaehler form against `dx dy`, normalized so that
/// the round sphere has area one.
fn form_density(m: &EmbeddingMap, chart: u8, z: Complex64) -> Result<f64> {
    let w = m.zeta_at(chart, z)?;
    let zeta = lift(m, chart, z, &w)?;
    let (dx, dy) = derivatives(m, chart, z)?;
    let (px, py) = (perp(&zeta, &dx), perp(&zeta, &dy));
    Ok(herm(&px, &py).im / norm_sqr(&zeta) / PI)
}

fn disc_integral(m: &EmbeddingMap, chart: u8, radial: usize) -> Result<f64> {
    let rule = GaussLegendre::new(NonZeroUsize::new(radial).expect("positive node count"));
    let angular = 2 * radial;
    let mut err = None;
    let total = rule.integrate(0.0, 1.0, |r| {
        let mut s = 0.0;
        for j in 0..angular {
            let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / angular as f64);
            match form_density(m, chart, z) {
                Ok(v) => s += v,
                Err(e) => {
                    err.get_or_insert(e);
                }
            }
        }
        r * s * 2.0 * PI / angular as f64
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// Quadrature nodes in the radial direction for the coarse and fine passes.
pub const DEGREE_NODES: (usize, usize) = (24, 48);
/// Coarse and fine passes must agree this closely.
pub const DEGREE_CONVERGENCE: f64 = 1e-6;

/// `int f^* omega` over both unit discs; the two passes differ in node count.
pub fn degree_integral(m: &EmbeddingMap) -> Result<f64> {
    let (n1, n2) = DEGREE_NODES;
    let coarse = disc_integral(m, 0, n1)? + disc_integral(m, 1, n1)?;
    let fine = disc_integral(m, 0, n2)? + disc_integral(m, 1, n2)?;
    if (coarse - fine).abs() > DEGREE_CONVERGENCE {
        return Err(Error::Quadrature { coarse, fine, coarse_nodes: n1, fine_nodes: n2 });
    }
    Ok(fine)
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelVerdict {
    pub kernel_dim: usize,
    pub residual: f64,
    pub contained: bool,
    /// `(n', n'+2)` of the reduced target.
    pub reduced_target: (usize, usize),
}

/// `Ker T` lies in every sampled plane.
pub fn kernel_containment(p: &ModuliPoint, xs: &[DomainPoint], tol: f64) -> Result<KernelVerdict> {
    if p.status() != Status::Boundary {
        return Err(Error::NotBoundary);
    }
    let m = EmbeddingMap::deformed(p)?;
    let mut residual = 0.0f64;
    for x in xs {
        let plane = eval_plane(&m, x)?;
        for v in p.kernel() {
            residual = residual.max(plane.normal_component(v));
        }
    }
    Ok(KernelVerdict { kernel_dim: p.kernel_dim(), residual, contained: residual <= tol, reduced_target: m.reduced_target() })
}

/// Uniform point of `SU(2)` as `[[alpha, -conj beta], [beta, conj alpha]]`.
pub fn random_su2<R: Rng>(rng: &mut R) -> [[Complex64; 2]; 2] {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(1e-3..=1.0).contains(&n) {
            continue;
        }
        let alpha = Complex64::new(v[0], v[1]) / n;
        let beta = Complex64::new(v[2], v[3]) / n;
        return [[alpha, -beta.conj()], [beta, alpha.conj()]];
    }
}

fn poly_mul(p: &[Complex64], q: &[Complex64]) -> CVec {
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `rho(g)` on the section space: `p(x, y) -> p(g11 x + g21 y, g12 x + g22 y)`,
/// as a real matrix in the orthonormal section basis.
pub fn rho_matrix(m: &EmbeddingMap, g: &[[Complex64; 2]; 2]) -> DMatrix<f64> {
    let d = m.degree() as usize;
    // coefficient vectors indexed by the power of x
    let lin_x = [g[1][0], g[0][0]];
    let lin_y = [g[1][1], g[0][1]];
    let one = vec![Complex64::new(1.0, 0.0)];
    let images: Vec<CVec> = (0..=d)
        .map(|a| {
            let mut p = one.clone();
            for _ in 0..a {
                p = poly_mul(&p, &lin_x);
            }
            for _ in a..d {
                p = poly_mul(&p, &lin_y);
            }
            p
        })
        .collect();
    let weights = m.monomial_weights();
    let secs = m.sections();
    let moved: Vec<CVec> = secs
        .iter()
        .map(|s| {
            let mut out = vec![Complex64::new(0.0, 0.0); d + 1];
            for (a, c) in s.iter().enumerate() {
                for (b, v) in images[a].iter().enumerate() {
                    out[b] += c * v;
                }
            }
            out
        })
        .collect();
    let n = secs.len();
    DMatrix::from_fn(n, n, |i, j| {
        secs[i].iter().zip(&moved[j]).zip(&weights).map(|((p, q), w)| (p.conj() * q).re * w).sum()
    })
}

/// Largest distance between `plane(conj(g) x)` and `rho(g) plane(x)`.
pub fn equivariance_residual(m: &EmbeddingMap, gs: &[[[Complex64; 2]; 2]], xs: &[DomainPoint]) -> Result<f64> {
    let mut worst = 0.0f64;
    for g in gs {
        let r = rho_matrix(m, g);
        for x in xs {
            let [u, v] = x.homogeneous();
            let moved = [g[0][0].conj() * u + g[0][1].conj() * v, g[1][0].conj() * u + g[1][1].conj() * v];
            let y = DomainPoint::from_homogeneous(moved)?;
            let lhs = eval_plane(m, &y)?;
            let rhs = eval_plane(m, x)?.transform(&r)?;
            worst = worst.max(lhs.distance(&rhs));
        }
    }
    Ok(worst)
}

/// Same point evaluated in both charts: plane distance and projective distance
/// of the quadric points (the latter also detects orientation flips).
pub fn chart_overlap_distance(m: &EmbeddingMap, x: &DomainPoint) -> Result<f64> {
    let y = x.other_chart().ok_or_else(|| Error::InvalidInput("point is outside the chart overlap".into()))?;
    let (p, q) = (eval_plane(m, x)?, eval_plane(m, &y)?);
    Ok(p.distance(&q).max(plane_to_quadric(&p).projective_distance(&plane_to_quadric(&q))))
}

/// `per_chart` points uniformly in the unit disc of each chart.
pub fn sample_domain<R: Rng>(rng: &mut R, per_chart: usize) -> Vec<DomainPoint> {
    let mut out = Vec::with_capacity(2 * per_chart);
    for chart in 0..2u8 {
        for _ in 0..per_chart {
            let r = rng.random_range(0.0f64..1.0).sqrt();
            let t = rng.random_range(0.0..2.0 * PI);
            out.push(DomainPoint::new(chart, Complex64::from_polar(r, t)).expect("inside the unit disc"));
        }
    }
    out
}

/// Orthogonal `O` with `O P_i = P'_i` for the given plane pairs: least-squares
/// solution of the linear commutation system, then its polar factor.
pub fn fit_alignment(from: &[OrientedPlane], to: &[OrientedPlane]) -> Result<DMatrix<f64>> {
    if from.is_empty() || from.len() != to.len() {
        return Err(Error::InvalidInput("alignment needs equally many planes on both sides".into()));
    }
    let n = from[0].n_plus_2();
    let nn = n * n;
    let mut normal = DMatrix::<f64>::zeros(nn, nn);
    let id = DMatrix::<f64>::identity(n, n);
    for (p, q) in from.iter().zip(to) {
        let (pp, qq) = (p.normal_projector(), q.normal_projector());
        // vec(O P) - vec(Q O) with column-major vec
        let sys = pp.transpose().kronecker(&id) - id.kronecker(&qq);
        normal += sys.transpose() * &sys;
    }
    let eig = SymmetricEigen::new(normal);
    let idx = eig.eigenvalues.imin();
    let v = eig.eigenvectors.column(idx);
    let o = DMatrix::from_column_slice(n, n, v.as_slice());
    let svd = o.svd(true, true);
    match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => Ok(u * vt),
        _ => Err(Error::InvalidInput("alignment SVD failed".into())),
    }
}

pub fn alignment_residual(o: &DMatrix<f64>, from: &[OrientedPlane], to: &[OrientedPlane]) -> Result<f64> {
    let mut worst = 0.0f64;
    for (p, q) in from.iter().zip(to) {
        worst = worst.max(p.transform(o)?.distance(q));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(chart: u8, re: f64, im: f64) -> DomainPoint {
        DomainPoint::new(chart, Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn standard_isometry_values() {
        let m1 = EmbeddingMap::standard(1).unwrap();
        assert!((isometry_ratio(&m1, &pt(0, 0.0, 0.0)).unwrap() - 1.0).abs() < 1e-4);
        let m3 = EmbeddingMap::standard(3).unwrap();
        assert!((isometry_ratio(&m3, &pt(0, 0.7, 0.2)).unwrap() - 3.0).abs() < 1e-4);
        assert!((energy_density(&m3, &pt(1, -0.2, 0.5)).unwrap() - 6.0).abs() < 1e-6);
    }

    #[test]
    fn cr_control() {
        let m = EmbeddingMap::standard(2).unwrap();
        let x = pt(0, 0.3, -0.4);
        assert!(cr_residual(&m, &x).unwrap() < 1e-6);
        let c = cr_residual(&m.conjugated(), &x).unwrap();
        assert!((c - 2.0).abs() < 1e-6, "{c}");
    }

    #[test]
    fn degree_of_small_maps() {
        let d = degree_integral(&EmbeddingMap::standard(1).unwrap()).unwrap();
        assert!((d - 1.0).abs() < 1e-6, "{d}");
        let c = degree_integral(&EmbeddingMap::standard(1).unwrap().conjugated()).unwrap();
        assert!((c + 1.0).abs() < 1e-6, "{c}");
    }

    #[test]
    fn rho_is_orthogonal_and_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = EmbeddingMap::standard(3).unwrap();
        let g = random_su2(&mut rng);
        let r = rho_matrix(&m, &g);
        assert!((r.transpose() * &r - DMatrix::<f64>::identity(8, 8)).abs().max() < 1e-12);
        let xs = sample_domain(&mut rng, 3);
        assert!(equivariance_residual(&m, &[g], &xs).unwrap() < 1e-10);
    }

    #[test]
    fn overlap_agreement() {
        let m = EmbeddingMap::standard(2).unwrap();
        assert!(chart_overlap_distance(&m, &pt(0, 0.6, 0.8)).unwrap() < 1e-12);
        assert!(chart_overlap_distance(&m, &pt(0, 0.1, 0.0)).is_err());
    }

    #[test]
    fn alignment_recovers_rotation() {
        let m = EmbeddingMap::standard(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_su2(&mut rng);
        let r = rho_matrix(&m, &g);
        let xs = sample_domain(&mut rng, 6);
        let from: Vec<_> = xs.iter().map(|x| eval_plane(&m, x).unwrap()).collect();
        let to: Vec<_> = from.iter().map(|p| p.transform(&r).unwrap()).collect();
        let o = fit_alignment(&from[..8], &to[..8]).unwrap();
        assert!(alignment_residual(&o, &from[8..], &to[8..]).unwrap() < 1e-8);
    }
}
