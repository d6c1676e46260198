//! Symmetric endomorphisms of a carrier, stored through `B = G A`.
//!
//! `A` is symmetric for the invariant inner product exactly when `B` is a
//! symmetric matrix, so an operator is recorded by the upper triangle of `B`
//! (`d(d+1)/2` rational coordinates). The trace form becomes
//! `tr(A1 A2) = sum_ij B1_ij B2_ij / (g_i g_j)`.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num::{One, Signed, Zero};

use super::carrier::{Carrier, CarrierKind};
use crate::error::{Error, Result};
use crate::exact::{q, q_to_f64, weighted_dot, SparseMatrix, Q};
use crate::rep::{LieModule, RepElement};

/// A symmetric endomorphism of a carrier in `B = G A` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SymOperator {
    kind: CarrierKind,
    coords: Vec<Q>,
}

impl SymOperator {
    pub fn new(kind: CarrierKind, coords: Vec<Q>) -> Result<Self> {
        let d = kind.dim();
        if coords.len() != d * (d + 1) / 2 {
            return Err(Error::InvalidInput(format!(
                "operator on a {d}-dimensional carrier needs {} coordinates, got {}",
                d * (d + 1) / 2,
                coords.len()
            )));
        }
        Ok(Self { kind, coords })
    }

    pub fn kind(&self) -> CarrierKind {
        self.kind
    }

    pub fn level(&self) -> u32 {
        self.kind.level()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { kind: self.kind, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { kind: self.kind, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { kind: self.kind, coords: self.coords.iter().map(|x| x * c).collect() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::LevelMismatch { left: self.level(), right: other.level() });
        }
        Ok(())
    }
}

/// `S(V)` for a carrier `V`, with the induced su(2) action `A -> [X, A]`.
#[derive(Debug)]
pub struct OperatorSpace {
    carrier: Carrier,
    pairs: Vec<(usize, usize)>,
    form_weights: Vec<Q>,
    ad: OnceLock<[SparseMatrix; 3]>,
}

impl OperatorSpace {
    pub fn new(carrier: Carrier) -> Self {
        let d = carrier.dim();
        let mut pairs = Vec::with_capacity(d * (d + 1) / 2);
        let mut form_weights = Vec::with_capacity(d * (d + 1) / 2);
        let g = carrier.gram();
        for i in 0..d {
            for j in i..d {
                pairs.push((i, j));
                let mult = if i == j { Q::one() } else { q(2) };
                form_weights.push(mult / (&g[i] * &g[j]));
            }
        }
        Self { carrier, pairs, form_weights, ad: OnceLock::new() }
    }

    pub fn complex(level: u32) -> Self {
        Self::new(Carrier::complex(level))
    }

    pub fn real_form(level: u32) -> Result<Self> {
        Carrier::real_form(level).map(Self::new)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn kind(&self) -> CarrierKind {
        self.carrier.kind()
    }

    /// Number of coordinates, `d(d+1)/2`.
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn label(&self) -> String {
        format!("S({})", self.kind().label())
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let d = self.carrier.dim();
        i * d - i * (i + 1) / 2 + j
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }

    pub fn operator(&self, coords: Vec<Q>) -> Result<SymOperator> {
        SymOperator::new(self.kind(), coords)
    }

    /// Full symmetric `B` matrix.
    pub fn b_matrix(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let d = self.carrier.dim();
        let mut b = vec![vec![Q::zero(); d]; d];
        for (&(i, j), v) in self.pairs.iter().zip(x) {
            b[i][j] = v.clone();
            b[j][i] = v.clone();
        }
        b
    }

    /// Coordinates of a symmetric `B`; rejects asymmetric input.
    pub fn from_b_matrix(&self, b: &[Vec<Q>]) -> Result<Vec<Q>> {
        for (i, row) in b.iter().enumerate() {
            for j in i + 1..row.len() {
                if row[j] != b[j][i] {
                    return Err(Error::InvalidInput(format!("operator is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(self.pairs.iter().map(|&(i, j)| b[i][j].clone()).collect())
    }

    /// The matrix of the operator itself, `A = G^{-1} B`.
    pub fn operator_matrix(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let g = self.carrier.gram();
        self.b_matrix(x).into_iter().zip(g).map(|(row, gi)| row.into_iter().map(|v| v / gi).collect()).collect()
    }

    /// Coordinates of the operator with matrix `A`; rejects operators that are not self-adjoint.
    pub fn from_operator_matrix(&self, a: &[Vec<Q>]) -> Result<Vec<Q>> {
        let g = self.carrier.gram();
        let b: Vec<Vec<Q>> = a.iter().zip(g).map(|(row, gi)| row.iter().map(|v| v * gi).collect()).collect();
        self.from_b_matrix(&b)
    }

    /// Matrix of the operator in the orthonormal basis `e_i / sqrt(g_i)`.
    pub fn to_orthonormal(&self, x: &[Q]) -> DMatrix<f64> {
        let d = self.carrier.dim();
        let g: Vec<f64> = self.carrier.gram().iter().map(q_to_f64).collect();
        let mut m = DMatrix::zeros(d, d);
        for (&(i, j), v) in self.pairs.iter().zip(x) {
            let val = q_to_f64(v) / (g[i] * g[j]).sqrt();
            m[(i, j)] = val;
            m[(j, i)] = val;
        }
        m
    }

    pub fn trace_form(&self, x: &[Q], y: &[Q]) -> Q {
        weighted_dot(x, y, &self.form_weights)
    }

    pub fn form_weights(&self) -> &[Q] {
        &self.form_weights
    }

    pub fn trace(&self, x: &[Q]) -> Q {
        self.trace_form(x, &self.identity())
    }

    pub fn identity(&self) -> Vec<Q> {
        let b: Vec<Vec<Q>> = (0..self.carrier.dim())
            .map(|i| {
                let mut r = vec![Q::zero(); self.carrier.dim()];
                r[i] = self.carrier.gram()[i].clone();
                r
            })
            .collect();
        self.from_b_matrix(&b).expect("diagonal")
    }

    /// `S(u, v) = (u <., v> + v <., u>) / 2` on carrier coordinates.
    pub fn sym_pair_coords(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let g = self.carrier.gram();
        let gu: Vec<Q> = u.iter().zip(g).map(|(a, b)| a * b).collect();
        let gv: Vec<Q> = v.iter().zip(g).map(|(a, b)| a * b).collect();
        let half = Q::new(1.into(), 2.into());
        self.pairs.iter().map(|&(i, j)| (&gu[i] * &gv[j] + &gv[i] * &gu[j]) * &half).collect()
    }

    pub fn sym_pair(&self, u: &RepElement, v: &RepElement) -> Result<SymOperator> {
        let (cu, cv) = (self.carrier.coords(u)?, self.carrier.coords(v)?);
        self.operator(self.sym_pair_coords(&cu, &cv))
    }

    /// Realification of `H(u, v)`, which is `S(u, v) + S(Ju, Jv)`.
    pub fn herm_pair(&self, u: &RepElement, v: &RepElement) -> Result<SymOperator> {
        if !matches!(self.kind(), CarrierKind::Complex { .. }) {
            return Err(Error::InvalidInput("Hermitian pairs need the complex carrier".into()));
        }
        let a = self.sym_pair(u, v)?;
        let b = self.sym_pair(&u.mul_i(), &v.mul_i())?;
        a.add(&b)
    }

    fn ad_matrices(&self) -> &[SparseMatrix; 3] {
        self.ad.get_or_init(|| {
            let d = self.carrier.dim();
            std::array::from_fn(|g| {
                let m = self.carrier.generator(g).to_dense();
                SparseMatrix::from_fn(self.dim(), self.dim(), |c| {
                    let mut unit = vec![Q::zero(); self.dim()];
                    unit[c] = Q::one();
                    let b = self.b_matrix(&unit);
                    // B -> -(M^T B + B M)
                    let mut out = vec![vec![Q::zero(); d]; d];
                    for (r, row) in b.iter().enumerate() {
                        for (s, x) in row.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for t in 0..d {
                                if !m[r][t].is_zero() {
                                    out[t][s] -= &m[r][t] * x;
                                }
                                if !m[s][t].is_zero() {
                                    out[r][t] -= x * &m[s][t];
                                }
                            }
                        }
                    }
                    self.pairs.iter().map(|&(p, q)| out[p][q].clone()).collect()
                })
            })
        })
    }

    pub fn ad(&self, g: usize, x: &[Q]) -> Vec<Q> {
        self.ad_matrices()[g].apply(x)
    }

    pub fn module(&self) -> LieModule {
        LieModule::new(self.label(), self.ad_matrices().clone())
    }

    /// Coordinates of `L B R`, for carrier matrices `L` and `R`.
    pub fn sandwich(&self, left: &SparseMatrix, right: &SparseMatrix, x: &[Q]) -> Vec<Q> {
        let l = left.to_dense();
        let r = right.to_dense();
        let b = self.b_matrix(x);
        let lb = mat_mul(&l, &b);
        let lbr = mat_mul(&lb, &r);
        self.pairs.iter().map(|&(p, q)| lbr[p][q].clone()).collect()
    }

    /// `B -> JB` in coordinates; defined only where `JB` is symmetric.
    pub fn left_complex_structure(&self, x: &[Q]) -> Result<Vec<Q>> {
        let j = self.carrier.complex_structure().ok_or_else(no_j)?.to_dense();
        let b = self.b_matrix(x);
        self.from_b_matrix(&mat_mul(&j, &b))
    }

    /// Linear map `x -> (JB - eps BJ, sigma B sigma - eta B)`, flattened.
    pub(crate) fn commutation_constraints(&self, eps: i64, eta: Option<i64>) -> Result<Vec<Vec<Q>>> {
        let d = self.carrier.dim();
        let j = self.carrier.complex_structure().ok_or_else(no_j)?.to_dense();
        let sigma = self.carrier.sigma().map(SparseMatrix::to_dense);
        let cols: Vec<Vec<Q>> = (0..self.dim())
            .map(|c| {
                let mut unit = vec![Q::zero(); self.dim()];
                unit[c] = Q::one();
                let b = self.b_matrix(&unit);
                let jb = mat_mul(&j, &b);
                let bj = mat_mul(&b, &j);
                let mut out = Vec::with_capacity(2 * d * d);
                for r in 0..d {
                    for s in 0..d {
                        out.push(&jb[r][s] - &bj[r][s] * q(eps));
                    }
                }
                if let (Some(eta), Some(sig)) = (eta, &sigma) {
                    let sbs = mat_mul(&mat_mul(sig, &b), sig);
                    for r in 0..d {
                        for s in 0..d {
                            out.push(&sbs[r][s] - &b[r][s] * q(eta));
                        }
                    }
                }
                out
            })
            .collect();
        let rows = cols[0].len();
        Ok((0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
    }

    pub fn commutes_with_j(&self, x: &[Q]) -> Result<bool> {
        self.j_relation(x, 1)
    }

    pub fn anticommutes_with_j(&self, x: &[Q]) -> Result<bool> {
        self.j_relation(x, -1)
    }

    fn j_relation(&self, x: &[Q], eps: i64) -> Result<bool> {
        let j = self.carrier.complex_structure().ok_or_else(no_j)?.to_dense();
        let b = self.b_matrix(x);
        let jb = mat_mul(&j, &b);
        let bj = mat_mul(&b, &j);
        Ok(jb.iter().zip(&bj).all(|(r1, r2)| r1.iter().zip(r2).all(|(a, c)| (a - c * q(eps)).is_zero())))
    }

    /// Coordinates of `sigma B sigma`.
    pub fn sigma_conjugate(&self, x: &[Q]) -> Result<Vec<Q>> {
        let s = self.carrier.sigma().ok_or_else(|| Error::InvalidInput("carrier has no structure map".into()))?;
        Ok(self.sandwich(s, s, x))
    }

    /// Largest absolute entry, for diagnostics.
    pub fn max_abs(x: &[Q]) -> Q {
        x.iter().map(|v| v.abs()).max().unwrap_or_else(Q::zero)
    }
}

fn no_j() -> Error {
    Error::InvalidInput("carrier has no complex structure".into())
}

pub(crate) fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Q::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gq_int, q_frac};

    #[test]
    fn index_layout() {
        let s = OperatorSpace::complex(2);
        assert_eq!(s.dim(), 21);
        for idx in 0..s.dim() {
            let (i, j) = s.pair(idx);
            assert_eq!(s.index(i, j), idx);
            assert_eq!(s.index(j, i), idx);
        }
    }

    #[test]
    fn herm_pair_examples() {
        let s = OperatorSpace::complex(2);
        let x2 = RepElement::monomial(2, 2);
        let xy = RepElement::monomial(2, 1);
        let h = s.herm_pair(&x2, &x2).unwrap();
        assert!(s.commutes_with_j(h.coords()).unwrap());
        // real rank 2: acts as <x^2,x^2> on the complex line of x^2
        let a = s.operator_matrix(h.coords());
        let nonzero_cols = (0..6).filter(|&c| a.iter().any(|r| !r[c].is_zero())).count();
        assert_eq!(nonzero_cols, 2);
        assert_eq!(a[4][4], q(1));
        assert_eq!(a[5][5], q(1));
        let u = x2.add(&xy.scale(&gq_int(2, -1))).unwrap();
        let v = RepElement::monomial(2, 0).scale(&gq_int(0, 3));
        assert_eq!(s.herm_pair(&u, &v).unwrap(), s.herm_pair(&v, &u).unwrap());
        let huu = s.herm_pair(&u, &u).unwrap();
        let n = crate::rep::inner(&u, &u).unwrap().re;
        assert_eq!(s.trace(huu.coords()), n * q(2));
        assert!(s.herm_pair(&x2, &RepElement::monomial(3, 0)).is_err());
    }

    #[test]
    fn sym_pair_examples() {
        let k = 3;
        let s = OperatorSpace::complex(k);
        let u = RepElement::monomial(k, 1).add(&RepElement::monomial(k, 2).mul_i()).unwrap();
        let p = s.sym_pair(&u, &u).unwrap();
        let a = s.operator_matrix(p.coords());
        let cu = s.carrier().coords(&u).unwrap();
        let au: Vec<Q> = a.iter().map(|r| crate::exact::dot(r, &cu)).collect();
        let n = crate::rep::inner_real(&u, &u).unwrap();
        assert_eq!(au, cu.iter().map(|x| x * &n).collect::<Vec<_>>());

        let u1 = RepElement::monomial(k, 1);
        let u0 = RepElement::monomial(k, 0);
        let x = s.sym_pair(&u1, &u0).unwrap().sub(&s.sym_pair(&u1.mul_i(), &u0.mul_i()).unwrap()).unwrap();
        assert!(s.anticommutes_with_j(x.coords()).unwrap());
        assert!(!x.is_zero());

        let w = RepElement::monomial(k, 3);
        let lhs = s.sym_pair(&u.add(&w.scale(&gq_int(3, 0))).unwrap(), &u0).unwrap();
        let rhs = s.sym_pair(&u, &u0).unwrap().add(&s.sym_pair(&w, &u0).unwrap().scale(&q(3))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_and_trace_form() {
        let s = OperatorSpace::complex(3);
        let id = s.identity();
        assert_eq!(s.trace(&id), q(8));
        let a = s.operator_matrix(&id);
        for (i, r) in a.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                assert_eq!(*v, if i == j { q(1) } else { q(0) });
            }
        }
        let h = s.herm_pair(&RepElement::monomial(3, 1), &RepElement::monomial(3, 1)).unwrap();
        assert_eq!(s.trace(h.coords()), q_frac(2, 3));
    }

    #[test]
    fn ad_kills_identity_and_is_skew() {
        for k in 1..4 {
            let s = OperatorSpace::complex(k);
            let id = s.identity();
            for g in 0..3 {
                assert!(s.ad(g, &id).iter().all(Zero::is_zero));
            }
            let h = s.herm_pair(&RepElement::monomial(k, 0), &RepElement::monomial(k, 1)).unwrap();
            let p = s.sym_pair(&RepElement::monomial(k, 1), &RepElement::monomial(k, 0).mul_i()).unwrap();
            for g in 0..3 {
                let lhs = s.trace_form(&s.ad(g, h.coords()), p.coords());
                let rhs = s.trace_form(h.coords(), &s.ad(g, p.coords()));
                assert_eq!(lhs, -rhs);
            }
        }
    }
}
