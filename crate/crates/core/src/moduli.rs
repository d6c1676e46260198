//! Moduli of degree-`k` holomorphic isometric embeddings up to gauge.
//!
//! A point is recorded by `C = T^2 - Id`, which ranges over an exact linear
//! space: the trace-form complement of `GS(mV_0, V_0) + R Id` in `S(W_R)`.
//! `T` itself is only ever computed numerically.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num::{One, Zero};
use rand::{Rng, RngExt};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{q_from_f64, q_to_f64, Echelon, Q};
use crate::op_spaces::{
    g_span, gs_mv0_v0, gs_v0_v0, herm_pairs_span, mv0_subspace, ortho_complement, sym_pairs_span, v0_subspace,
    Ambient, OperatorSpace, Subspace, SymOperator,
};
use crate::rep::{total_dim, IsotypicLabel};

/// Eigenvalues of `Id + C` within this fraction of the largest one count as zero.
pub const POSITIVITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct ModuliDescriptor {
    pub k: u32,
    pub tangent: Subspace,
    pub dim: usize,
    pub labels: Vec<IsotypicLabel>,
}

impl ModuliDescriptor {
    /// `2 (S^{k-2}_0 + S^{k-4}_0 + ...)`
    pub fn expected_labels(k: u32) -> Vec<IsotypicLabel> {
        (1..=k / 2).map(|r| IsotypicLabel::new(k - 2 * r, 2)).collect()
    }

    pub fn formula_match(&self) -> bool {
        self.dim == (self.k * self.k.saturating_sub(1)) as usize
            && self.labels == Self::expected_labels(self.k)
            && total_dim(&self.labels) == self.dim
    }
}

/// Exact moduli data at one level, with the spans used by condition checks.
#[derive(Debug)]
pub struct ModuliSpace {
    k: u32,
    space: OperatorSpace,
    gs_mv0: Subspace,
    gs_v0: Subspace,
    descriptor: ModuliDescriptor,
}

impl ModuliSpace {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("moduli need level k >= 1".into()));
        }
        let space = OperatorSpace::complex(k);
        let gs_mv0 = gs_mv0_v0(k, &space);
        let gs_v0 = gs_v0_v0(k, &space);
        let excluded = gs_mv0.with_vector(space.identity());
        let full = Subspace::full(Ambient::Operators(space.kind()), space.dim());
        let tangent = ortho_complement(&excluded, &full, &space)?.labelled(&space)?;
        let expected = (k * (k - 1)) as usize;
        if tangent.rank() != expected {
            return Err(Error::DimensionMismatch { k, expected, found: tangent.rank() });
        }
        let labels = tangent.labels().unwrap_or_default().to_vec();
        let descriptor = ModuliDescriptor { k, dim: tangent.rank(), tangent, labels };
        Ok(Self { k, space, gs_mv0, gs_v0, descriptor })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn space(&self) -> &OperatorSpace {
        &self.space
    }

    pub fn descriptor(&self) -> &ModuliDescriptor {
        &self.descriptor
    }

    pub fn tangent(&self) -> &Subspace {
        &self.descriptor.tangent
    }

    pub fn gs_mv0(&self) -> &Subspace {
        &self.gs_mv0
    }

    pub fn gs_v0(&self) -> &Subspace {
        &self.gs_v0
    }

    pub fn dim(&self) -> usize {
        self.descriptor.dim
    }

    pub fn contains(&self, c: &SymOperator) -> bool {
        c.kind() == self.space.kind() && self.tangent().contains(c.coords())
    }

    /// `sum_i x_i t_i` over the tangent basis.
    pub fn operator_from_coords(&self, x: &[Q]) -> Result<SymOperator> {
        if x.len() != self.dim() {
            return Err(Error::InvalidInput(format!("expected {} tangent coordinates, got {}", self.dim(), x.len())));
        }
        let mut v = vec![Q::zero(); self.space.dim()];
        for (c, row) in x.iter().zip(self.tangent().basis()) {
            crate::exact::axpy(&mut v, c, row);
        }
        self.space.operator(v)
    }

    pub fn operator_from_f64(&self, x: &[f64]) -> Result<SymOperator> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("tangent coordinates must be finite".into()));
        }
        self.operator_from_coords(&x.iter().map(|&v| q_from_f64(v)).collect::<Vec<_>>())
    }

    pub fn tangent_coords(&self, c: &SymOperator) -> Result<Vec<Q>> {
        self.tangent().echelon().coords(c.coords()).ok_or(Error::NotInTangent)
    }

    /// Tangent vector drawn uniformly from the coordinate cube, rescaled so that
    /// the spectral radius of `C` equals `radius`.
    pub fn random_direction<R: Rng>(&self, rng: &mut R, radius: f64) -> Result<SymOperator> {
        if self.dim() == 0 {
            return self.space.operator(vec![Q::zero(); self.space.dim()]);
        }
        let raw: Vec<f64> = (0..self.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let c = self.operator_from_f64(&raw)?;
        let m = self.space.to_orthonormal(c.coords());
        let rho = m.symmetric_eigenvalues().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let scaled: Vec<f64> = raw.iter().map(|v| v * radius / rho).collect();
        self.operator_from_f64(&scaled)
    }

    /// An interior point with spectral radius of `C` drawn from `[0.1, 0.8]`.
    pub fn random_interior<R: Rng>(&self, rng: &mut R) -> Result<ModuliPoint> {
        let r = rng.random_range(0.1..0.8);
        make_t(self, &self.random_direction(rng, r)?)
    }

    pub fn zero_point(&self) -> Result<ModuliPoint> {
        make_t(self, &self.space.operator(vec![Q::zero(); self.space.dim()])?)
    }
}

pub fn moduli_tangent(k: u32) -> Result<ModuliDescriptor> {
    ModuliSpace::new(k).map(|m| m.descriptor)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Interior,
    Boundary,
    Infeasible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Interior => "interior",
            Status::Boundary => "boundary",
            Status::Infeasible => "infeasible",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModuliPoint {
    k: u32,
    c: SymOperator,
    c_matrix: DMatrix<f64>,
    t: Option<DMatrix<f64>>,
    kernel: Vec<DVector<f64>>,
    eigenvalues: Vec<f64>,
    status: Status,
}

impl ModuliPoint {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> &SymOperator {
        &self.c
    }

    /// `C` in the orthonormal basis of `W_R`.
    pub fn c_matrix(&self) -> &DMatrix<f64> {
        &self.c_matrix
    }

    pub fn t(&self) -> Option<&DMatrix<f64>> {
        self.t.as_ref()
    }

    pub fn status(&self) -> Status {
        self.status
    }

    /// Orthonormal basis of `Ker T`, in orthonormal coordinates.
    pub fn kernel(&self) -> &[DVector<f64>] {
        &self.kernel
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    /// Eigenvalues of `Id + C`, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(1.0)
    }

    /// Relative spectral norm of `T^2 - (Id + C)`.
    pub fn sqrt_residual(&self) -> Option<f64> {
        let t = self.t.as_ref()?;
        let n = t.nrows();
        let target = DMatrix::<f64>::identity(n, n) + &self.c_matrix;
        let diff = t * t - &target;
        let scale = spectral_norm(&target).max(1.0);
        Some(spectral_norm(&diff) / scale)
    }

    /// `trace(T^2)`, reported as a diagnostic.
    pub fn trace_t_squared(&self) -> Option<f64> {
        self.t.as_ref().map(|t| (t * t).trace())
    }

    fn t_or_err(&self) -> Result<&DMatrix<f64>> {
        self.t.as_ref().ok_or(Error::Infeasible { min_eigenvalue: self.min_eigenvalue() })
    }
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigenvalues().iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// Principal square root of `Id + C` with positivity classification.
pub fn make_t(ms: &ModuliSpace, c: &SymOperator) -> Result<ModuliPoint> {
    if !ms.contains(c) {
        return Err(Error::NotInTangent);
    }
    Ok(classify(ms.k, c.clone(), ms.space.to_orthonormal(c.coords())))
}

fn classify(k: u32, c: SymOperator, c_matrix: DMatrix<f64>) -> ModuliPoint {
    let n = c_matrix.nrows();
    let m = DMatrix::<f64>::identity(n, n) + &c_matrix;
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let largest = eigenvalues.last().copied().unwrap_or(1.0).abs().max(f64::MIN_POSITIVE);
    let tol = POSITIVITY_TOL * largest;
    let min = eigenvalues.first().copied().unwrap_or(1.0);
    let status = if min > tol {
        Status::Interior
    } else if min >= -tol {
        Status::Boundary
    } else {
        Status::Infeasible
    };
    if status == Status::Infeasible {
        return ModuliPoint { k, c, c_matrix, t: None, kernel: Vec::new(), eigenvalues, status };
    }
    let mut t = DMatrix::<f64>::zeros(n, n);
    let mut kernel = Vec::new();
    for &i in &order {
        let lambda = eig.eigenvalues[i];
        let v = eig.eigenvectors.column(i).into_owned();
        if lambda.abs() <= tol {
            kernel.push(v);
            continue;
        }
        t += lambda.sqrt() * &v * v.transpose();
    }
    ModuliPoint { k, c, c_matrix, t: Some(t), kernel, eigenvalues, status }
}

fn unit_matrices(space: &OperatorSpace, sub: &Subspace) -> Vec<DMatrix<f64>> {
    sub.basis()
        .iter()
        .map(|b| {
            let m = space.to_orthonormal(b);
            let n = m.norm();
            m / n
        })
        .collect()
}

fn max_pairing(x: &DMatrix<f64>, basis: &[DMatrix<f64>]) -> f64 {
    basis.iter().map(|b| x.component_mul(b).sum().abs()).fold(0.0, f64::max)
}

/// Largest trace pairing of `T^2 - Id` against unit bases of `GS(V_0, V_0)`
/// and of `GS(mV_0, V_0)`.
pub fn condition_residuals(ms: &ModuliSpace, p: &ModuliPoint) -> Result<(f64, f64)> {
    let t = p.t_or_err()?;
    let n = t.nrows();
    let shifted = t * t - DMatrix::<f64>::identity(n, n);
    let first = max_pairing(&shifted, &unit_matrices(&ms.space, &ms.gs_v0));
    let second = max_pairing(&shifted, &unit_matrices(&ms.space, &ms.gs_mv0));
    Ok((first, second))
}

/// Hermitian variant: `T^2 - Id` against `GH(V_0, V_0)` and `T^2` against `GH(mV_0, V_0)`.
pub fn hermitian_condition_residuals(ms: &ModuliSpace, p: &ModuliPoint) -> Result<(f64, f64)> {
    let t = p.t_or_err()?;
    let n = t.nrows();
    let k = ms.k;
    let space = &ms.space;
    let v0 = v0_subspace(k);
    let gh_v0 = g_span(&herm_pairs_span(&v0, &v0, space)?, space);
    let gh_mv0 = g_span(&herm_pairs_span(&mv0_subspace(k).0, &v0, space)?, space);
    let t2 = t * t;
    let first = max_pairing(&(&t2 - DMatrix::<f64>::identity(n, n)), &unit_matrices(space, &gh_v0));
    let second = max_pairing(&t2, &unit_matrices(space, &gh_mv0));
    Ok((first, second))
}

/// Snaps values within `1e-12` of `-1, 0, 1` so that quarter turns stay exact.
fn exact_trig(x: f64) -> Q {
    for target in [-1.0f64, 0.0, 1.0] {
        if (x - target).abs() < 1e-12 {
            return q_from_f64(target);
        }
    }
    q_from_f64(x)
}

/// `C -> cos(k theta) C - sin(k theta) J C`.
pub fn s1_rotate(ms: &ModuliSpace, p: &ModuliPoint, theta: f64) -> Result<ModuliPoint> {
    if !theta.is_finite() {
        return Err(Error::InvalidInput("rotation angle must be finite".into()));
    }
    let angle = ms.k as f64 * theta;
    let (cos, sin) = (exact_trig(angle.cos()), exact_trig(angle.sin()));
    let jc = ms.space.left_complex_structure(p.c.coords())?;
    let rotated: Vec<Q> = p.c.coords().iter().zip(&jc).map(|(a, b)| a * &cos - b * &sin).collect();
    let c = ms.space.operator(rotated)?;
    make_t(ms, &c)
}

/// `sigma` and `J sigma` as operators on `W_R`, level even.
pub fn sigma_operators(space: &OperatorSpace) -> Result<(SymOperator, SymOperator)> {
    let level = space.kind().level();
    if level % 2 == 1 {
        return Err(Error::OddLevel(level));
    }
    let carrier = space.carrier();
    let sigma = carrier.sigma().ok_or(Error::OddLevel(level))?.to_dense();
    let sigma = space.from_operator_matrix(&sigma)?;
    // G commutes with J, so J (G sigma) = G (J sigma)
    let jsigma = space.left_complex_structure(&sigma)?;
    Ok((space.operator(sigma)?, space.operator(jsigma)?))
}

/// `C = t sigma + s J sigma`.
pub fn family_operator(ms: &ModuliSpace, t: f64, s: f64) -> Result<SymOperator> {
    if !t.is_finite() || !s.is_finite() {
        return Err(Error::InvalidInput("family parameters must be finite".into()));
    }
    let (sigma, jsigma) = sigma_operators(&ms.space)?;
    let c = sigma.scale(&q_from_f64(t)).add(&jsigma.scale(&q_from_f64(s)))?;
    if !ms.contains(&c) {
        return Err(Error::NotInTangent);
    }
    Ok(c)
}

pub fn family_point(ms: &ModuliSpace, t: f64, s: f64) -> Result<ModuliPoint> {
    if ms.k % 2 == 1 {
        return Err(Error::OddLevel(ms.k));
    }
    make_t(ms, &family_operator(ms, t, s)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub k: u32,
    pub rank: usize,
    pub expected: usize,
    pub rigid: bool,
}

/// `GS(V_0, V_0)` inside `S(W^R)` for the real form of `S^{2k} C^2`,
/// with `V_0` the real span of the weight `-2k` and `2k` lines.
pub fn rigidity_real(k: u32) -> Result<RigidityVerdict> {
    if k == 0 {
        return Err(Error::InvalidInput("real rigidity needs k >= 1".into()));
    }
    let space = OperatorSpace::real_form(2 * k)?;
    let carrier = space.carrier();
    let d = carrier.dim();
    // the first two real form vectors come from the extreme weights
    let v0: Vec<Vec<Q>> = (0..2)
        .map(|i| {
            let mut e = vec![Q::zero(); d];
            e[i] = Q::one();
            e
        })
        .collect();
    for v in &v0 {
        let el = carrier.element(v);
        let extreme = el.coeffs().iter().enumerate().all(|(a, c)| c.is_zero() || a == 0 || a == 2 * k as usize);
        debug_assert!(extreme);
    }
    let v0 = Subspace::span(Ambient::Carrier(carrier.kind()), d, &v0);
    let span = g_span(&sym_pairs_span(&v0, &v0, &space), &space);
    let expected = space.dim();
    Ok(RigidityVerdict { k, rank: span.rank(), expected, rigid: span.rank() == expected })
}

/// `GH(V_0, V_0)` inside `H(W)`.
pub fn rigidity_herm(k: u32) -> Result<RigidityVerdict> {
    let space = OperatorSpace::complex(k);
    let v0 = v0_subspace(k);
    let span = g_span(&herm_pairs_span(&v0, &v0, &space)?, &space);
    let expected = ((k + 1) * (k + 1)) as usize;
    Ok(RigidityVerdict { k, rank: span.rank(), expected, rigid: span.rank() == expected })
}

/// `iota* T iota` in the orthonormal basis of `Ker T^perp` obtained by
/// Gram-Schmidt on the projected coordinate vectors, in index order.
pub fn gauge_class_key(p: &ModuliPoint) -> Result<DMatrix<f64>> {
    let t = p.t_or_err()?;
    let n = t.nrows();
    let mut proj = DMatrix::<f64>::identity(n, n);
    for v in &p.kernel {
        proj -= v * v.transpose();
    }
    let target = n - p.kernel.len();
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(target);
    for i in 0..n {
        if basis.len() == target {
            break;
        }
        let mut v = proj.column(i).into_owned();
        for b in &basis {
            let c = b.dot(&v);
            v -= c * b;
        }
        let norm = v.norm();
        if norm > 1e-6 {
            basis.push(v / norm);
        }
    }
    let q = DMatrix::from_columns(&basis);
    Ok(q.transpose() * t * q)
}

pub fn key_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    (a - b).abs().max()
}

/// Samples for reports: `count` random interior points (the origin when the
/// tangent space is zero).
pub fn sample_points<R: Rng>(ms: &ModuliSpace, rng: &mut R, count: usize) -> Result<Vec<ModuliPoint>> {
    (0..count).map(|_| if ms.dim() == 0 { ms.zero_point() } else { ms.random_interior(rng) }).collect()
}

/// `{"k", "dim", "labels", "rigid_real", "samples": [{"C_coords", "status", "kernel_dim"}]}`
pub fn moduli_report(ms: &ModuliSpace, rigid_real: bool, samples: &[ModuliPoint]) -> Result<Value> {
    let labels: Vec<Value> = ms.descriptor.labels.iter().map(|l| json!([l.m, l.multiplicity])).collect();
    let samples = samples
        .iter()
        .map(|p| {
            let coords: Vec<f64> = ms.tangent_coords(&p.c)?.iter().map(q_to_f64).collect();
            Ok(json!({ "C_coords": coords, "status": p.status.as_str(), "kernel_dim": p.kernel_dim() }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "k": ms.k,
        "dim": ms.dim(),
        "labels": labels,
        "rigid_real": rigid_real,
        "samples": samples,
    }))
}

/// Nearest rotation angle in `(2 pi / k) Z`, used to decide whether two
/// rotated points should share a gauge key.
pub fn is_full_period(k: u32, theta: f64) -> bool {
    let period = 2.0 * PI / k as f64;
    let r = (theta / period).round();
    (theta - r * period).abs() < 1e-12
}

/// Echelon membership helper used by property tests.
pub fn tangent_echelon(ms: &ModuliSpace) -> &Echelon {
    ms.tangent().echelon()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tangent_dimensions() {
        assert_eq!(moduli_tangent(1).unwrap().dim, 0);
        let d2 = moduli_tangent(2).unwrap();
        assert_eq!(d2.dim, 2);
        assert_eq!(d2.labels, vec![IsotypicLabel::new(0, 2)]);
        let d4 = moduli_tangent(4).unwrap();
        assert_eq!(d4.dim, 12);
        assert_eq!(d4.labels, vec![IsotypicLabel::new(2, 2), IsotypicLabel::new(0, 2)]);
        assert!(d4.formula_match());
        assert!(moduli_tangent(0).is_err());
    }

    #[test]
    fn make_t_examples() {
        let ms = ModuliSpace::new(2).unwrap();
        let p0 = ms.zero_point().unwrap();
        assert_eq!(p0.status(), Status::Interior);
        assert_eq!(p0.kernel_dim(), 0);
        let t = p0.t().unwrap();
        assert!((t - DMatrix::<f64>::identity(6, 6)).abs().max() < 1e-15);

        let b = family_point(&ms, 1.0, 0.0).unwrap();
        assert_eq!(b.status(), Status::Boundary);
        assert_eq!(b.kernel_dim(), 3);
        let inf = family_point(&ms, 1.5, 0.0).unwrap();
        assert_eq!(inf.status(), Status::Infeasible);
        assert!(inf.t().is_none());
        assert!(gauge_class_key(&inf).is_err());
    }

    #[test]
    fn family_eigenvalues_k4() {
        let ms = ModuliSpace::new(4).unwrap();
        let p = family_point(&ms, 0.5, 0.0).unwrap();
        assert_eq!(p.status(), Status::Interior);
        let ev = p.eigenvalues();
        assert!(ev[..5].iter().all(|v| (v - 0.5).abs() < 1e-12));
        assert!(ev[5..].iter().all(|v| (v - 1.5).abs() < 1e-12));
        assert!(p.sqrt_residual().unwrap() < 1e-10);
        assert!(matches!(family_point(&ModuliSpace::new(3).unwrap(), 0.1, 0.0), Err(Error::OddLevel(3))));
    }

    #[test]
    fn residuals_and_controls() {
        let ms = ModuliSpace::new(3).unwrap();
        let (a, b) = condition_residuals(&ms, &ms.zero_point().unwrap()).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = ms.random_interior(&mut rng).unwrap();
        let (a, b) = condition_residuals(&ms, &p).unwrap();
        assert!(a < 1e-12 && b < 1e-12, "{a} {b}");
        // a traceless Hermitian direction lies outside the tangent space
        let space = ms.space();
        let u0 = crate::rep::RepElement::monomial(3, 0);
        let u3 = crate::rep::RepElement::monomial(3, 3);
        let h = space.herm_pair(&u0, &u0).unwrap().sub(&space.herm_pair(&u3, &u3).unwrap()).unwrap();
        assert!(matches!(make_t(&ms, &h), Err(Error::NotInTangent)));
        let forced = classify(3, h.scale(&Q::new(1.into(), 4.into())), space.to_orthonormal(h.scale(&Q::new(1.into(), 4.into())).coords()));
        let (_, b) = condition_residuals(&ms, &forced).unwrap();
        assert!(b > 1e-3);
    }

    #[test]
    fn rotation_examples() {
        let ms = ModuliSpace::new(2).unwrap();
        let p = family_point(&ms, 1.0, 0.0).unwrap();
        let r = s1_rotate(&ms, &p, PI / 4.0).unwrap();
        let expected = family_operator(&ms, 0.0, -1.0).unwrap();
        assert_eq!(r.c(), &expected);
        let full = s1_rotate(&ms, &p, PI).unwrap();
        assert_eq!(full.c(), p.c());
    }

    #[test]
    fn rigidity_examples() {
        assert_eq!(rigidity_real(1).unwrap(), RigidityVerdict { k: 1, rank: 6, expected: 6, rigid: true });
        assert_eq!(rigidity_real(2).unwrap().rank, 15);
        assert_eq!(rigidity_real(3).unwrap().rank, 28);
        assert_eq!(rigidity_herm(1).unwrap().rank, 4);
        assert_eq!(rigidity_herm(3).unwrap().rank, 16);
        assert_eq!(rigidity_herm(0).unwrap().rank, 1);
    }

    #[test]
    fn gauge_keys() {
        let ms = ModuliSpace::new(2).unwrap();
        let k0 = gauge_class_key(&ms.zero_point().unwrap()).unwrap();
        assert!((k0 - DMatrix::<f64>::identity(6, 6)).abs().max() < 1e-15);
        let kb = gauge_class_key(&family_point(&ms, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(kb.shape(), (3, 3));
    }
}
