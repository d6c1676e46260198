use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{gq, weighted_dot, SparseMatrix, Q};
use crate::rep::{act_lie, inner_real, real_form_basis, structure_map, LieGenerator, RepElement, StructureMap};

/// Which real vector space the operators act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CarrierKind {
    /// `S^k C^2` as a real space of dimension `2k+2`, basis `m_0, J m_0, m_1, J m_1, ...`.
    Complex { level: u32 },
    /// The sigma-fixed real form of `S^level C^2`, level even, dimension `level+1`.
    RealForm { level: u32 },
}

impl CarrierKind {
    pub fn level(&self) -> u32 {
        match *self {
            CarrierKind::Complex { level } | CarrierKind::RealForm { level } => level,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            CarrierKind::Complex { level } => 2 * level as usize + 2,
            CarrierKind::RealForm { level } => level as usize + 1,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            CarrierKind::Complex { level } => format!("W_R(k={level})"),
            CarrierKind::RealForm { level } => format!("W^R(k={level})"),
        }
    }
}

/// A real SU(2)-module with a rational basis, diagonal invariant Gram matrix
/// and rational generator matrices.
#[derive(Clone, Debug)]
pub struct Carrier {
    kind: CarrierKind,
    basis: Vec<RepElement>,
    gram: Vec<Q>,
    gens: [SparseMatrix; 3],
    complex_structure: Option<SparseMatrix>,
    sigma: Option<SparseMatrix>,
}

impl Carrier {
    pub fn complex(level: u32) -> Self {
        let n = level as usize + 1;
        let i = gq(Q::zero(), Q::one());
        let mut basis = Vec::with_capacity(2 * n);
        for a in 0..n {
            let m = RepElement::monomial(level, a as u32);
            basis.push(m.clone());
            basis.push(m.scale(&i));
        }
        let gram = basis.iter().map(|b| inner_real(b, b).expect("same level")).collect();
        let d = 2 * n;
        let gens = std::array::from_fn(|g| {
            SparseMatrix::from_fn(d, d, |c| complex_coords(&act_lie(LieGenerator::REAL[g], &basis[c])))
        });
        let j = SparseMatrix::from_fn(d, d, |c| complex_coords(&basis[c].mul_i()));
        let s = StructureMap::new(level);
        let sigma = SparseMatrix::from_fn(d, d, |c| {
            complex_coords(&structure_map(s, &basis[c]).expect("same level"))
        });
        Self {
            kind: CarrierKind::Complex { level },
            basis,
            gram,
            gens,
            complex_structure: Some(j),
            sigma: Some(sigma),
        }
    }

    pub fn real_form(level: u32) -> Result<Self> {
        let basis = real_form_basis(level)?;
        let d = basis.len();
        let mut gram = Vec::with_capacity(d);
        for (i, b) in basis.iter().enumerate() {
            for c in &basis[i + 1..] {
                if !inner_real(b, c)?.is_zero() {
                    return Err(Error::InvalidInput("real form basis is not orthogonal".into()));
                }
            }
            gram.push(inner_real(b, b)?);
        }
        let mut gens_dense: Vec<Vec<Vec<Q>>> = Vec::with_capacity(3);
        for g in LieGenerator::REAL {
            let cols = basis
                .iter()
                .map(|b| orthogonal_coords(&basis, &gram, &act_lie(g, b)))
                .collect::<Result<Vec<_>>>()?;
            gens_dense.push(cols);
        }
        let gens = std::array::from_fn(|g| SparseMatrix::from_fn(d, d, |c| gens_dense[g][c].clone()));
        Ok(Self { kind: CarrierKind::RealForm { level }, basis, gram, gens, complex_structure: None, sigma: None })
    }

    pub fn kind(&self) -> CarrierKind {
        self.kind
    }

    pub fn level(&self) -> u32 {
        self.kind.level()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The element of `S^k C^2` represented by each coordinate.
    pub fn basis(&self) -> &[RepElement] {
        &self.basis
    }

    pub fn gram(&self) -> &[Q] {
        &self.gram
    }

    pub fn generator(&self, j: usize) -> &SparseMatrix {
        &self.gens[j]
    }

    pub fn complex_structure(&self) -> Option<&SparseMatrix> {
        self.complex_structure.as_ref()
    }

    pub fn sigma(&self) -> Option<&SparseMatrix> {
        self.sigma.as_ref()
    }

    pub fn inner(&self, u: &[Q], v: &[Q]) -> Q {
        weighted_dot(u, v, &self.gram)
    }

    /// Coordinates of an element of the carrier.
    pub fn coords(&self, v: &RepElement) -> Result<Vec<Q>> {
        if v.level() != self.level() {
            return Err(Error::LevelMismatch { left: self.level(), right: v.level() });
        }
        match self.kind {
            CarrierKind::Complex { .. } => Ok(complex_coords(v)),
            CarrierKind::RealForm { .. } => orthogonal_coords(&self.basis, &self.gram, v),
        }
    }

    pub fn element(&self, coords: &[Q]) -> RepElement {
        let mut out = RepElement::zero(self.level());
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            out = out.add(&b.scale(&gq(c.clone(), Q::zero()))).expect("same level");
        }
        out
    }
}

/// `(Re c_0, Im c_0, Re c_1, Im c_1, ...)`
pub fn complex_coords(v: &RepElement) -> Vec<Q> {
    v.coeffs().iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect()
}

fn orthogonal_coords(basis: &[RepElement], gram: &[Q], v: &RepElement) -> Result<Vec<Q>> {
    let coords: Vec<Q> = basis.iter().zip(gram).map(|(b, g)| inner_real(v, b).map(|x| x / g)).collect::<Result<_>>()?;
    let mut rebuilt = RepElement::zero(v.level());
    for (c, b) in coords.iter().zip(basis) {
        rebuilt = rebuilt.add(&b.scale(&gq(c.clone(), Q::zero())))?;
    }
    if &rebuilt != v {
        return Err(Error::NotContained);
    }
    Ok(coords)
}
