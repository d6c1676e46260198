//! Spaces of Hermitian and symmetric operators on `S^k C^2` and its real form.

mod carrier;
mod opspace;

pub use carrier::{complex_coords, Carrier, CarrierKind};
pub use opspace::{OperatorSpace, SymOperator};

use std::collections::VecDeque;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{null_space, Echelon, Q};
use crate::rep::{act_lie, casimir_isotypic, IsotypicLabel, LieGenerator, RepElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// A carrier space.
    Carrier(CarrierKind),
    /// Symmetric operators on a carrier.
    Operators(CarrierKind),
    Named(String),
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Carrier(k) => write!(f, "{}", k.label()),
            Ambient::Operators(k) => write!(f, "S({})", k.label()),
            Ambient::Named(s) => write!(f, "{s}"),
        }
    }
}

/// An exactly certified linear subspace, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Ambient,
    basis: Echelon,
    labels: Option<Vec<IsotypicLabel>>,
}

impl Subspace {
    pub fn from_echelon(ambient: Ambient, basis: Echelon) -> Self {
        Self { ambient, basis, labels: None }
    }

    pub fn span<'a>(ambient: Ambient, dim: usize, vectors: impl IntoIterator<Item = &'a Vec<Q>>) -> Self {
        Self::from_echelon(ambient, Echelon::from_vectors(dim, vectors))
    }

    pub fn zero(ambient: Ambient, dim: usize) -> Self {
        Self::from_echelon(ambient, Echelon::new(dim))
    }

    pub fn full(ambient: Ambient, dim: usize) -> Self {
        Self::from_echelon(ambient, Echelon::full(dim))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.basis
    }

    /// Basis vectors, ordered by pivot column.
    pub fn basis(&self) -> &[Vec<Q>] {
        self.basis.rows()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.basis.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.basis.contains_all(&other.basis)
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.basis == other.basis
    }

    /// `self + other`.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut e = self.basis.clone();
        for r in other.basis.rows() {
            e.insert(r.clone());
        }
        Subspace::from_echelon(self.ambient.clone(), e)
    }

    pub fn with_vector(&self, v: Vec<Q>) -> Subspace {
        let mut e = self.basis.clone();
        e.insert(v);
        Subspace::from_echelon(self.ambient.clone(), e)
    }

    pub fn labels(&self) -> Option<&[IsotypicLabel]> {
        self.labels.as_deref()
    }

    /// Attaches the Casimir-isotypic labels computed under the operator action.
    pub fn labelled(mut self, space: &OperatorSpace) -> Result<Self> {
        self.labels = Some(casimir_isotypic(&self, &space.module())?);
        Ok(self)
    }

    /// `{"ambient": .., "rank": .., "labels": [[m, mult], ..]}`
    pub fn to_json(&self) -> Value {
        let labels: Vec<Value> =
            self.labels.iter().flatten().map(|l| json!([l.m, l.multiplicity])).collect();
        json!({ "ambient": self.ambient.to_string(), "rank": self.rank(), "labels": labels })
    }
}

/// Realified `H(u, v)` on `S^k C^2`.
pub fn herm_pair(u: &RepElement, v: &RepElement) -> Result<SymOperator> {
    if u.level() != v.level() {
        return Err(Error::LevelMismatch { left: u.level(), right: v.level() });
    }
    OperatorSpace::complex(u.level()).herm_pair(u, v)
}

/// `S(u, v)` with `u, v` regarded as vectors of the underlying real space.
pub fn sym_pair(u: &RepElement, v: &RepElement) -> Result<SymOperator> {
    if u.level() != v.level() {
        return Err(Error::LevelMismatch { left: u.level(), right: v.level() });
    }
    OperatorSpace::complex(u.level()).sym_pair(u, v)
}

/// The four blocks `H+`, `H-`, `sigma H+`, `J sigma H+` of `S(W_R)`.
#[derive(Clone, Debug)]
pub struct FourBlocks {
    pub herm_plus: Subspace,
    pub herm_minus: Subspace,
    pub sigma_herm: Subspace,
    pub j_sigma_herm: Subspace,
}

impl FourBlocks {
    pub fn blocks(&self) -> [&Subspace; 4] {
        [&self.herm_plus, &self.herm_minus, &self.sigma_herm, &self.j_sigma_herm]
    }

    pub fn ranks(&self) -> [usize; 4] {
        self.blocks().map(Subspace::rank)
    }
}

/// Splits `S(W_R)` by the relations `JB = +-BJ` and `sigma B sigma = +-B`.
#[allow(non_snake_case)]
pub fn split_S(k: u32) -> Result<FourBlocks> {
    let space = OperatorSpace::complex(k);
    split_operator_space(&space)
}

pub fn split_operator_space(space: &OperatorSpace) -> Result<FourBlocks> {
    let block = |eps: i64, eta: i64| -> Result<Subspace> {
        let rows = space.commutation_constraints(eps, Some(eta))?;
        let ns = null_space(&rows, space.dim());
        Ok(Subspace::span(Ambient::Operators(space.kind()), space.dim(), &ns))
    };
    Ok(FourBlocks {
        herm_plus: block(1, 1)?,
        herm_minus: block(1, -1)?,
        sigma_herm: block(-1, 1)?,
        j_sigma_herm: block(-1, -1)?,
    })
}

/// `H(W)`: operators commuting with `J`.
pub fn hermitian_subspace(space: &OperatorSpace) -> Result<Subspace> {
    let rows = space.commutation_constraints(1, None)?;
    let ns = null_space(&rows, space.dim());
    Ok(Subspace::span(Ambient::Operators(space.kind()), space.dim(), &ns))
}

/// Smallest subspace containing `seed` and stable under `A -> [U_j, A]`.
pub fn g_span(seed: &Subspace, space: &OperatorSpace) -> Subspace {
    let mut ech = Echelon::new(space.dim());
    let mut queue: VecDeque<Vec<Q>> = VecDeque::new();
    for v in seed.basis() {
        if ech.insert(v.clone()) {
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for g in 0..3 {
            let w = space.ad(g, &v);
            if ech.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    debug_assert!(ech.rows().iter().all(|r| (0..3).all(|g| ech.contains(&space.ad(g, r)))));
    Subspace::from_echelon(seed.ambient().clone(), ech)
}

/// Exact invariance under all three generators.
pub fn is_invariant(sub: &Subspace, space: &OperatorSpace) -> bool {
    sub.basis().iter().all(|r| (0..3).all(|g| sub.contains(&space.ad(g, r))))
}

/// Trace-form orthogonal complement of `sub` inside `ambient`.
pub fn ortho_complement(sub: &Subspace, ambient: &Subspace, space: &OperatorSpace) -> Result<Subspace> {
    if !ambient.contains_subspace(sub) {
        return Err(Error::NotContained);
    }
    // coefficients c with sum_i c_i (a_i, s_j) = 0 for every s_j
    let rows: Vec<Vec<Q>> =
        sub.basis().iter().map(|s| ambient.basis().iter().map(|a| space.trace_form(a, s)).collect()).collect();
    let coeffs = null_space(&rows, ambient.rank());
    let vectors: Vec<Vec<Q>> = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![Q::from_integer(0.into()); space.dim()];
            for (ci, a) in c.iter().zip(ambient.basis()) {
                crate::exact::axpy(&mut v, ci, a);
            }
            v
        })
        .collect();
    Ok(Subspace::span(ambient.ambient().clone(), space.dim(), &vectors))
}

/// `V_0 = C_{-k}`, the complex line of `y^k`, in `W_R` coordinates.
pub fn v0_subspace(k: u32) -> Subspace {
    let c = Carrier::complex(k);
    let m = RepElement::monomial(k, 0);
    let vs = [c.coords(&m).expect("level"), c.coords(&m.mul_i()).expect("level")];
    Subspace::span(Ambient::Carrier(c.kind()), c.dim(), &vs)
}

/// The image of `V_0` under `U2` and `U3`, with its weight.
pub fn mv0_subspace(k: u32) -> (Subspace, Option<i64>) {
    let c = Carrier::complex(k);
    let ambient = Ambient::Carrier(c.kind());
    if k == 0 {
        return (Subspace::zero(ambient, c.dim()), None);
    }
    let m = RepElement::monomial(k, 0);
    let mut images = Vec::new();
    let mut weight = None;
    for v in [m.clone(), m.mul_i()] {
        for g in [LieGenerator::U2, LieGenerator::U3] {
            let w = act_lie(g, &v);
            if !w.is_zero() {
                weight = w.weight();
            }
            images.push(c.coords(&w).expect("level"));
        }
    }
    (Subspace::span(ambient, c.dim(), &images), weight)
}

/// `S(U, V)` spanned by `S(u, v)` over bases of two carrier subspaces.
pub fn sym_pairs_span(u: &Subspace, v: &Subspace, space: &OperatorSpace) -> Subspace {
    let mut vecs = Vec::new();
    for a in u.basis() {
        for b in v.basis() {
            vecs.push(space.sym_pair_coords(a, b));
        }
    }
    Subspace::span(Ambient::Operators(space.kind()), space.dim(), &vecs)
}

/// `H(U, V)` for complex subspaces given by real spanning sets.
pub fn herm_pairs_span(u: &Subspace, v: &Subspace, space: &OperatorSpace) -> Result<Subspace> {
    let j = space.carrier().complex_structure().ok_or_else(|| Error::InvalidInput("no complex structure".into()))?;
    let mut vecs = Vec::new();
    for a in u.basis() {
        for b in v.basis() {
            let s1 = space.sym_pair_coords(a, b);
            let s2 = space.sym_pair_coords(&j.apply(a), &j.apply(b));
            vecs.push(s1.iter().zip(&s2).map(|(x, y)| x + y).collect());
        }
    }
    Ok(Subspace::span(Ambient::Operators(space.kind()), space.dim(), &vecs))
}

/// `GS(mV_0, V_0)` at level `k`.
pub fn gs_mv0_v0(k: u32, space: &OperatorSpace) -> Subspace {
    let (mv0, _) = mv0_subspace(k);
    g_span(&sym_pairs_span(&mv0, &v0_subspace(k), space), space)
}

/// `GS(V_0, V_0)` at level `k`.
pub fn gs_v0_v0(k: u32, space: &OperatorSpace) -> Subspace {
    let v0 = v0_subspace(k);
    g_span(&sym_pairs_span(&v0, &v0, space), space)
}

/// `GH(V_0, V_0)` at level `k`.
pub fn gh_v0_v0(k: u32, space: &OperatorSpace) -> Result<Subspace> {
    let v0 = v0_subspace(k);
    Ok(g_span(&herm_pairs_span(&v0, &v0, space)?, space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{total_dim, IsotypicLabel};

    #[test]
    fn four_block_ranks() {
        let b2 = split_S(2).unwrap();
        assert_eq!(b2.ranks(), [6, 3, 6, 6]);
        let b1 = split_S(1).unwrap();
        assert_eq!(b1.ranks(), [3, 1, 3, 3]);
        let space = OperatorSpace::complex(2);
        assert!(b2.herm_plus.contains(&space.identity()));
    }

    #[test]
    fn g_span_examples() {
        let space = OperatorSpace::complex(2);
        let id = Subspace::span(Ambient::Operators(space.kind()), space.dim(), &[space.identity()]);
        assert!(g_span(&id, &space).same_as(&id));
        assert_eq!(gh_v0_v0(2, &space).unwrap().rank(), 9);
        let full = Subspace::full(Ambient::Operators(space.kind()), space.dim());
        assert_eq!(ortho_complement(&full, &full, &space).unwrap().rank(), 0);
        let zero = Subspace::zero(Ambient::Operators(space.kind()), space.dim());
        assert_eq!(ortho_complement(&zero, &full, &space).unwrap().rank(), space.dim());
        assert!(matches!(ortho_complement(&full, &id, &space), Err(Error::NotContained)));
    }

    #[test]
    fn mv0_weight() {
        let (s2, w2) = mv0_subspace(2);
        assert_eq!((s2.rank(), w2), (2, Some(0)));
        let c = Carrier::complex(2);
        assert!(s2.contains(&c.coords(&RepElement::monomial(2, 1)).unwrap()));
        let (s3, w3) = mv0_subspace(3);
        assert_eq!((s3.rank(), w3), (2, Some(-1)));
        assert_eq!(mv0_subspace(0).0.rank(), 0);
        for k in 1..6 {
            let (m, _) = mv0_subspace(k);
            let v0 = v0_subspace(k);
            let c = Carrier::complex(k);
            for a in m.basis() {
                for b in v0.basis() {
                    assert!(num::Zero::is_zero(&c.inner(a, b)));
                }
            }
        }
    }

    #[test]
    fn moduli_complement_rank_k2() {
        let space = OperatorSpace::complex(2);
        let gs = gs_mv0_v0(2, &space).with_vector(space.identity());
        let full = Subspace::full(Ambient::Operators(space.kind()), space.dim());
        let c = ortho_complement(&gs, &full, &space).unwrap();
        assert_eq!(c.rank(), 2);
        let labelled = c.labelled(&space).unwrap();
        assert_eq!(labelled.labels().unwrap(), &[IsotypicLabel::new(0, 2)]);
        assert_eq!(total_dim(labelled.labels().unwrap()), 2);
        let j = labelled.to_json();
        assert_eq!(j["rank"], 2);
        assert_eq!(j["labels"], json!([[0, 2]]));
    }
}
