//! Numeric evaluation of the embeddings `CP^1 -> Gr_n(R^{n+2})` and their
//! differential-geometric checks.
//!
//! Sections of `O(k)` are degree-`k` polynomials in `(x, y)`. Chart 0 is the
//! point `(1, z)`, chart 1 is `(w, 1)`, glued by `w = 1/z`. All vectors live in
//! an orthonormal basis of the section space; `T` acts in that basis.

mod checks;
mod report;

pub use checks::{
    alignment_residual, chart_overlap_distance, cr_residual, degree_integral, energy_density, equivariance_residual,
    fit_alignment, isometry_ratio, kernel_containment, random_su2, rho_matrix, sample_domain, KernelVerdict,
};
pub use report::{verify_map, Check, Tolerances, VerificationReport, VerifyOptions};

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{q_to_f64, GaussQ};
use crate::moduli::ModuliPoint;
use crate::op_spaces::Carrier;
use crate::rep::binomial;

/// Largest affine coordinate accepted in either chart.
pub const CHART_RADIUS: f64 = 1.2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainPoint {
    chart: u8,
    z: Complex64,
}

impl DomainPoint {
    pub fn new(chart: u8, z: Complex64) -> Result<Self> {
        if chart > 1 {
            return Err(Error::InvalidInput(format!("chart must be 0 or 1, got {chart}")));
        }
        if !(z.norm() <= CHART_RADIUS) {
            return Err(Error::InvalidInput(format!("|z| = {} exceeds chart radius {CHART_RADIUS}", z.norm())));
        }
        Ok(Self { chart, z })
    }

    pub fn chart(&self) -> u8 {
        self.chart
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Homogeneous coordinates `(x, y)`.
    pub fn homogeneous(&self) -> [Complex64; 2] {
        let one = Complex64::new(1.0, 0.0);
        if self.chart == 0 {
            [one, self.z]
        } else {
            [self.z, one]
        }
    }

    /// Picks the chart in which the affine coordinate has modulus at most one.
    pub fn from_homogeneous(v: [Complex64; 2]) -> Result<Self> {
        if v[0].norm() >= v[1].norm() {
            if v[0].norm() == 0.0 {
                return Err(Error::InvalidInput("zero homogeneous vector".into()));
            }
            Self::new(0, v[1] / v[0])
        } else {
            Self::new(1, v[0] / v[1])
        }
    }

    /// The same point in the other chart, if it lies in it.
    pub fn other_chart(&self) -> Option<Self> {
        if self.z.norm() < 1.0 / CHART_RADIUS {
            return None;
        }
        Self::new(1 - self.chart, self.z.inv()).ok()
    }
}

/// An oriented `n`-plane in `R^{n+2}`, stored by an orthonormal frame `(a, b)`
/// of its oriented normal 2-plane.
#[derive(Clone, Debug)]
pub struct OrientedPlane {
    a: DVector<f64>,
    b: DVector<f64>,
}

impl OrientedPlane {
    pub fn new(a: DVector<f64>, b: DVector<f64>) -> Result<Self> {
        if a.len() != b.len() || a.len() < 2 {
            return Err(Error::InvalidInput("normal frame vectors must share a dimension >= 2".into()));
        }
        if (a.norm() - 1.0).abs() > 1e-12 || (b.norm() - 1.0).abs() > 1e-12 || a.dot(&b).abs() > 1e-12 {
            return Err(Error::InvalidInput("normal frame is not orthonormal".into()));
        }
        Ok(Self { a, b })
    }

    /// Orthonormalizes `(u, v)` in order.
    pub fn from_spanning(u: &DVector<f64>, v: &DVector<f64>) -> Option<Self> {
        let scale = u.norm().max(v.norm());
        let nu = u.norm();
        if nu <= 1e-12 * scale.max(1e-300) || nu == 0.0 {
            return None;
        }
        let a = u / nu;
        let w = v - a.dot(v) * &a;
        let nw = w.norm();
        if nw <= 1e-10 * scale {
            return None;
        }
        Some(Self { a, b: w / nw })
    }

    pub fn n_plus_2(&self) -> usize {
        self.a.len()
    }

    pub fn dim(&self) -> usize {
        self.a.len() - 2
    }

    pub fn normal_frame(&self) -> (&DVector<f64>, &DVector<f64>) {
        (&self.a, &self.b)
    }

    pub fn normal_projector(&self) -> DMatrix<f64> {
        &self.a * self.a.transpose() + &self.b * self.b.transpose()
    }

    /// Length of the normal component of `v`; zero iff `v` lies in the plane.
    pub fn normal_component(&self, v: &DVector<f64>) -> f64 {
        self.a.dot(v).hypot(self.b.dot(v))
    }

    /// Sine of the largest principal angle.
    pub fn distance(&self, other: &OrientedPlane) -> f64 {
        let d = self.normal_projector() - other.normal_projector();
        d.symmetric_eigenvalues().iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Image under an orthogonal map.
    pub fn transform(&self, r: &DMatrix<f64>) -> Result<Self> {
        Self::from_spanning(&(r * &self.a), &(r * &self.b))
            .ok_or_else(|| Error::InvalidInput("transform collapsed the normal frame".into()))
    }

    pub fn reversed(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b }
    }
}

#[derive(Clone, Debug)]
pub struct QuadricPoint {
    zeta: Vec<Complex64>,
}

impl QuadricPoint {
    pub fn zeta(&self) -> &[Complex64] {
        &self.zeta
    }

    /// `|sum zeta_j^2| / |zeta|^2`
    pub fn isotropy(&self) -> f64 {
        let s: Complex64 = self.zeta.iter().map(|z| z * z).sum();
        s.norm() / norm_sqr(&self.zeta)
    }

    /// `1 - |<p, q>| / (|p| |q|)`, zero iff the projective points agree.
    pub fn projective_distance(&self, other: &QuadricPoint) -> f64 {
        let ip = herm(&self.zeta, &other.zeta).norm();
        (1.0 - ip / (norm_sqr(&self.zeta) * norm_sqr(&other.zeta)).sqrt()).max(0.0)
    }
}

pub fn plane_to_quadric(p: &OrientedPlane) -> QuadricPoint {
    QuadricPoint { zeta: p.a.iter().zip(p.b.iter()).map(|(&x, &y)| Complex64::new(x, y)).collect() }
}

pub(crate) fn herm(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub(crate) fn norm_sqr(u: &[Complex64]) -> f64 {
    u.iter().map(|z| z.norm_sqr()).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Standard,
    RealStandard,
    Deformed,
}

#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    kind: MapKind,
    /// Polynomial degree of the sections, equal to the expected map degree.
    degree: u32,
    /// Orthonormal section basis as coefficient vectors over `x^a y^{deg-a}`.
    sections: Vec<Vec<Complex64>>,
    t: DMatrix<f64>,
    kernel: Vec<DVector<f64>>,
    conjugate: bool,
    label: String,
}

fn to_c64(c: &GaussQ) -> Complex64 {
    Complex64::new(q_to_f64(&c.re), q_to_f64(&c.im))
}

fn orthonormal_sections(carrier: &Carrier) -> Vec<Vec<Complex64>> {
    carrier
        .basis()
        .iter()
        .zip(carrier.gram())
        .map(|(b, g)| {
            let s = q_to_f64(g).sqrt();
            b.coeffs().iter().map(|c| to_c64(c) / s).collect()
        })
        .collect()
}

impl EmbeddingMap {
    fn build(kind: MapKind, carrier: &Carrier, t: DMatrix<f64>, kernel: Vec<DVector<f64>>, label: String) -> Result<Self> {
        let map = Self {
            kind,
            degree: carrier.level(),
            sections: orthonormal_sections(carrier),
            t,
            kernel,
            conjugate: false,
            label,
        };
        map.check_generation()?;
        Ok(map)
    }

    /// The standard map of degree `k` into `Gr_{2k}(R^{2k+2})`.
    pub fn standard(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("maps need degree k >= 1".into()));
        }
        let carrier = Carrier::complex(k);
        let n = carrier.dim();
        Self::build(MapKind::Standard, &carrier, DMatrix::identity(n, n), Vec::new(), format!("standard(k={k})"))
    }

    /// The standard map by the real form of `S^{2k} C^2`, degree `2k`, into `Gr_{2k-1}(R^{2k+1})`.
    pub fn real_standard(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("maps need k >= 1".into()));
        }
        let carrier = Carrier::real_form(2 * k)?;
        let n = carrier.dim();
        Self::build(MapKind::RealStandard, &carrier, DMatrix::identity(n, n), Vec::new(), format!("real_standard(k={k})"))
    }

    /// The map induced by the `T`-twisted section space of a moduli point.
    pub fn deformed(p: &ModuliPoint) -> Result<Self> {
        let t = p.t().ok_or(Error::Infeasible { min_eigenvalue: p.min_eigenvalue() })?.clone();
        let k = p.k();
        let carrier = Carrier::complex(k);
        Self::build(MapKind::Deformed, &carrier, t, p.kernel().to_vec(), format!("deformed(k={k}, {})", p.status().as_str()))
    }

    /// Antiholomorphic control: same planes with reversed orientation.
    pub fn conjugated(&self) -> Self {
        let mut m = self.clone();
        m.conjugate = !m.conjugate;
        m.label = format!("conjugate({})", self.label);
        m
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_plus_2(&self) -> usize {
        self.sections.len()
    }

    pub fn t(&self) -> &DMatrix<f64> {
        &self.t
    }

    pub fn kernel(&self) -> &[DVector<f64>] {
        &self.kernel
    }

    pub fn is_conjugate(&self) -> bool {
        self.conjugate
    }

    /// `(n', n'+2)` of the reduced target `Gr_{n'}(Ker T^perp)`.
    pub fn reduced_target(&self) -> (usize, usize) {
        let m = self.n_plus_2() - self.kernel.len();
        (m - 2, m)
    }

    /// Inner product weights `1 / binom(deg, a)` on monomial coefficients.
    pub(crate) fn monomial_weights(&self) -> Vec<f64> {
        (0..=self.degree).map(|a| 1.0 / binomial(self.degree, a).to_f64().unwrap_or(f64::INFINITY)).collect()
    }

    pub(crate) fn sections(&self) -> &[Vec<Complex64>] {
        &self.sections
    }

    /// Values of the basis sections at an affine point, no radius check.
    pub(crate) fn evaluation(&self, chart: u8, z: Complex64) -> Vec<Complex64> {
        let d = self.degree as usize;
        // chart 0: x^a y^{d-a} at (1, z) is z^{d-a}; chart 1: at (w, 1) it is w^a
        let mut powers = Vec::with_capacity(d + 1);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..=d {
            powers.push(p);
            p *= z;
        }
        self.sections
            .iter()
            .map(|s| {
                s.iter()
                    .enumerate()
                    .map(|(a, c)| c * if chart == 0 { powers[d - a] } else { powers[a] })
                    .sum()
            })
            .collect()
    }

    pub(crate) fn frame_at(&self, chart: u8, z: Complex64) -> Result<OrientedPlane> {
        let e = self.evaluation(chart, z);
        let re = DVector::from_iterator(e.len(), e.iter().map(|c| c.re));
        let im = DVector::from_iterator(e.len(), e.iter().map(|c| c.im));
        let p = OrientedPlane::from_spanning(&(&self.t * re), &(&self.t * im))
            .ok_or(Error::Degenerate { chart, re: z.re, im: z.im })?;
        Ok(if self.conjugate { p.reversed() } else { p })
    }

    pub(crate) fn zeta_at(&self, chart: u8, z: Complex64) -> Result<Vec<Complex64>> {
        Ok(plane_to_quadric(&self.frame_at(chart, z)?).zeta)
    }

    fn check_generation(&self) -> Result<()> {
        for i in 0..10 {
            let angle = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / 10.0;
            let z = Complex64::from_polar(0.3 + 0.07 * i as f64, angle);
            self.frame_at((i % 2) as u8, z)?;
        }
        Ok(())
    }
}

/// `{v : (T v)(x) = 0}` with normal frame from the evaluation adjoint.
pub fn eval_plane(m: &EmbeddingMap, x: &DomainPoint) -> Result<OrientedPlane> {
    m.frame_at(x.chart, x.z)
}
