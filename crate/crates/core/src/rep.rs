//! Exact model of the irreducible SU(2) modules `S^k C^2`.
//!
//! Elements are written in the monomial basis `x^a y^(k-a)`, `a = 0..=k`, with
//! Gaussian-rational coefficients. The monomial of index `a` has weight
//! `2a - k`.
//!
//! The real Lie basis is fixed as
//! `U1 = diag(i, -i)`, `U2 = [[0, 1], [-1, 0]]`, `U3 = [[0, i], [i, 0]]`;
//! the Casimir `U1^2 + U2^2 + U3^2` acts on `S^n C^2` by `-n(n+2)`.

use std::fmt;

use num::{BigInt, Integer, One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{gq, gq_int, gq_zero, GaussQ, Echelon, SparseMatrix, Q};
use crate::op_spaces::Subspace;

/// Element of `S^k C^2`; `coeffs[a]` multiplies `x^a y^(k-a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepElement {
    level: u32,
    coeffs: Vec<GaussQ>,
}

impl RepElement {
    pub fn new(level: u32, coeffs: Vec<GaussQ>) -> Result<Self> {
        if coeffs.len() != level as usize + 1 {
            return Err(Error::InvalidInput(format!(
                "level {level} needs {} coefficients, got {}",
                level + 1,
                coeffs.len()
            )));
        }
        Ok(Self { level, coeffs })
    }

    pub fn zero(level: u32) -> Self {
        Self { level, coeffs: vec![gq_zero(); level as usize + 1] }
    }

    /// The monomial `x^a y^(k-a)`.
    pub fn monomial(level: u32, a: u32) -> Self {
        assert!(a <= level, "monomial index {a} exceeds level {level}");
        let mut v = Self::zero(level);
        v.coeffs[a as usize] = gq_int(1, 0);
        v
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[GaussQ] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The weight shared by all nonzero coefficients, if there is one.
    pub fn weight(&self) -> Option<i64> {
        let mut w = None;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let wa = 2 * a as i64 - self.level as i64;
            match w {
                None => w = Some(wa),
                Some(prev) if prev != wa => return None,
                _ => {}
            }
        }
        w
    }

    pub fn scale(&self, c: &GaussQ) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `i`, the complex structure `J` of the underlying real space.
    pub fn mul_i(&self) -> Self {
        self.scale(&gq_int(0, 1))
    }

    pub fn conj(&self) -> Self {
        Self { level: self.level, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_level(self.level, other.level)?;
        Ok(Self {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_level(self.level, other.level)?;
        Ok(Self {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// `{"k": k, "coeffs": [[re_num, re_den, im_num, im_den], ...]}`
    pub fn to_json(&self) -> Result<Value> {
        let part = |x: &Q| -> Result<[i64; 2]> {
            let n = i64::try_from(x.numer()).map_err(|_| overflow())?;
            let d = i64::try_from(x.denom()).map_err(|_| overflow())?;
            Ok([n, d])
        };
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let [rn, rd] = part(&c.re)?;
                let [in_, id] = part(&c.im)?;
                Ok(json!([rn, rd, in_, id]))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({ "k": self.level, "coeffs": coeffs }))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::InvalidInput("malformed RepElement JSON".into());
        let k = v.get("k").and_then(Value::as_u64).ok_or_else(bad)? as u32;
        let arr = v.get("coeffs").and_then(Value::as_array).ok_or_else(bad)?;
        let coeffs = arr
            .iter()
            .map(|c| {
                let xs: Vec<i64> =
                    c.as_array().ok_or_else(bad)?.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_>>()?;
                if xs.len() != 4 || xs[1] == 0 || xs[3] == 0 {
                    return Err(bad());
                }
                Ok(gq(
                    Q::new(BigInt::from(xs[0]), BigInt::from(xs[1])),
                    Q::new(BigInt::from(xs[2]), BigInt::from(xs[3])),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, coeffs)
    }
}

fn overflow() -> Error {
    Error::InvalidInput("coefficient does not fit in i64".into())
}

fn check_level(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LevelMismatch { left: a, right: b })
    }
}

impl fmt::Display for RepElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.level as usize;
        let mut terms = Vec::new();
        for (a, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match (a, k - a) {
                (0, 0) => String::new(),
                (a, b) => {
                    let p = |v: &str, e: usize| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        e => format!("{v}^{e}"),
                    };
                    format!("{}{}", p("x", a), p("y", b))
                }
            };
            terms.push(format!("({} + {}i){}", c.re, c.im, mono));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Weights of the monomial basis of `S^k C^2`, in index order.
pub fn weights(k: u32) -> Vec<i64> {
    (0..=k as i64).map(|a| 2 * a - k as i64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieGenerator {
    U1,
    U2,
    U3,
    E,
    F,
    H,
}

impl LieGenerator {
    pub const REAL: [LieGenerator; 3] = [LieGenerator::U1, LieGenerator::U2, LieGenerator::U3];

    pub fn name(self) -> &'static str {
        match self {
            LieGenerator::U1 => "U1",
            LieGenerator::U2 => "U2",
            LieGenerator::U3 => "U3",
            LieGenerator::E => "E",
            LieGenerator::F => "F",
            LieGenerator::H => "H",
        }
    }
}

/// Differentiated action of a Lie algebra element on `S^k C^2`.
pub fn act_lie(g: LieGenerator, v: &RepElement) -> RepElement {
    let k = v.level as usize;
    let mut out = RepElement::zero(v.level);
    let raise = |out: &mut RepElement, c: &GaussQ, factor: &GaussQ| {
        // E m_a = (k - a) m_{a+1}
        for a in 0..k {
            let src = &v.coeffs[a];
            if !src.is_zero() {
                out.coeffs[a + 1] = &out.coeffs[a + 1] + src * c * factor * gq_int((k - a) as i64, 0);
            }
        }
    };
    let lower = |out: &mut RepElement, c: &GaussQ, factor: &GaussQ| {
        // F m_a = a m_{a-1}
        for a in 1..=k {
            let src = &v.coeffs[a];
            if !src.is_zero() {
                out.coeffs[a - 1] = &out.coeffs[a - 1] + src * c * factor * gq_int(a as i64, 0);
            }
        }
    };
    let one = gq_int(1, 0);
    let i = gq_int(0, 1);
    match g {
        LieGenerator::E => raise(&mut out, &one, &one),
        LieGenerator::F => lower(&mut out, &one, &one),
        LieGenerator::H | LieGenerator::U1 => {
            let factor = if g == LieGenerator::U1 { i } else { one };
            for (a, c) in v.coeffs.iter().enumerate() {
                let w = 2 * a as i64 - k as i64;
                out.coeffs[a] = c * &factor * gq_int(w, 0);
            }
        }
        LieGenerator::U2 => {
            raise(&mut out, &one, &one);
            lower(&mut out, &one, &gq_int(-1, 0));
        }
        LieGenerator::U3 => {
            raise(&mut out, &i, &one);
            lower(&mut out, &i, &one);
        }
    }
    out
}

/// `a!(k-a)!/k!`, the squared norm of the monomial of index `a`.
pub fn monomial_norm(k: u32, a: u32) -> Q {
    Q::new(BigInt::one(), binomial(k, a))
}

pub fn binomial(n: u32, r: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..r {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// The invariant Hermitian product, conjugate-linear in the second slot.
pub fn inner(u: &RepElement, v: &RepElement) -> Result<GaussQ> {
    check_level(u.level, v.level)?;
    let mut acc = gq_zero();
    for (a, (x, y)) in u.coeffs.iter().zip(&v.coeffs).enumerate() {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let n = monomial_norm(u.level, a as u32);
        acc = acc + x * y.conj() * gq(n, Q::zero());
    }
    Ok(acc)
}

/// Real part of [`inner`]: the induced inner product on the underlying real space.
pub fn inner_real(u: &RepElement, v: &RepElement) -> Result<Q> {
    inner(u, v).map(|c| c.re)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `sigma^2 = +Id`, even level
    Real,
    /// `sigma^2 = -Id`, odd level
    Quaternionic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureMap {
    level: u32,
    parity: Parity,
}

impl StructureMap {
    pub fn new(level: u32) -> Self {
        let parity = if level % 2 == 0 { Parity::Real } else { Parity::Quaternionic };
        Self { level, parity }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }
}

/// The antilinear structure map `sigma(x^a y^b) = (-1)^b x^b y^a`, induced
/// from `j(e1) = e2`, `j(e2) = -e1`.
pub fn structure_map(s: StructureMap, v: &RepElement) -> Result<RepElement> {
    check_level(s.level, v.level)?;
    let k = v.level as usize;
    let mut out = RepElement::zero(v.level);
    for (a, c) in v.coeffs.iter().enumerate() {
        let b = k - a;
        let sign = if b % 2 == 0 { 1 } else { -1 };
        out.coeffs[b] = c.conj() * gq_int(sign, 0);
    }
    Ok(out)
}

/// Basis of the sigma-fixed real form `(S^k C^2)^sigma`, `k` even.
///
/// Monomials are paired with their sigma-images starting from the highest
/// weight; the weight-zero monomial contributes one vector.
pub fn real_form_basis(k: u32) -> Result<Vec<RepElement>> {
    if k % 2 == 1 {
        return Err(Error::OddLevel(k));
    }
    let s = StructureMap::new(k);
    let mut out = Vec::new();
    let i = gq_int(0, 1);
    for a in (k / 2..=k).rev() {
        let m = RepElement::monomial(k, a);
        let sm = structure_map(s, &m)?;
        let sum = m.add(&sm)?;
        let diff = m.sub(&sm)?.scale(&i);
        for c in [sum, diff].into_iter().filter(|c| !c.is_zero()) {
            out.push(primitive_element(&c));
        }
    }
    Ok(out)
}

fn primitive_element(v: &RepElement) -> RepElement {
    let flat: Vec<Q> = v.coeffs.iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect();
    let p = crate::exact::primitive(&flat);
    let coeffs = p.chunks(2).map(|c| gq(c[0].clone(), c[1].clone())).collect();
    RepElement { level: v.level, coeffs }
}

/// A real irreducible `S^m_0 R^3` (dimension `2m+1`) with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsotypicLabel {
    pub m: u32,
    pub multiplicity: u32,
}

impl IsotypicLabel {
    pub fn new(m: u32, multiplicity: u32) -> Self {
        Self { m, multiplicity }
    }

    pub fn dim(&self) -> usize {
        (self.multiplicity * (2 * self.m + 1)) as usize
    }
}

/// A complex irreducible `S^n C^2` (complex dimension `n+1`) with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComplexLabel {
    pub n: u32,
    pub multiplicity: u32,
}

impl ComplexLabel {
    pub fn dim(&self) -> usize {
        (self.multiplicity * (self.n + 1)) as usize
    }
}

pub fn total_dim(labels: &[IsotypicLabel]) -> usize {
    labels.iter().map(IsotypicLabel::dim).sum()
}

/// Sorts by decreasing `m` and merges repeated irreducibles.
pub fn normalize_labels(labels: &[IsotypicLabel]) -> Vec<IsotypicLabel> {
    let mut by_m = std::collections::BTreeMap::new();
    for l in labels {
        *by_m.entry(l.m).or_insert(0) += l.multiplicity;
    }
    by_m.into_iter().rev().filter(|(_, n)| *n > 0).map(|(m, n)| IsotypicLabel::new(m, n)).collect()
}

/// `S3_0 + S2_0 + 3·S1_0`
pub fn format_labels(labels: &[IsotypicLabel]) -> String {
    if labels.is_empty() {
        return "0".into();
    }
    labels
        .iter()
        .map(|l| match l.multiplicity {
            1 => format!("S{}_0", l.m),
            n => format!("{n}·S{}_0", l.m),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn format_complex_labels(labels: &[ComplexLabel]) -> String {
    labels
        .iter()
        .map(|l| match l.multiplicity {
            1 => format!("S{}", l.n),
            n => format!("{n}·S{}", l.n),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `S^k C^2 (x) S^l C^2 = sum_{r=0}^{min(k,l)} S^{k+l-2r} C^2`.
pub fn cg_complex(k: u32, l: u32) -> Vec<ComplexLabel> {
    (0..=k.min(l)).map(|r| ComplexLabel { n: k + l - 2 * r, multiplicity: 1 }).collect()
}

/// `S^k_0 (x) S^l_0 = sum_{r=0}^{2l} S^{k+l-r}_0` for `k >= l`.
pub fn cg_real(k: u32, l: u32) -> Vec<IsotypicLabel> {
    let (k, l) = if k >= l { (k, l) } else { (l, k) };
    (0..=2 * l).map(|r| IsotypicLabel::new(k + l - r, 1)).collect()
}

/// Decomposition of `S^2 R^{2n+2}`, the symmetric square of `S^n C^2` viewed
/// as a real module: every `S^j_0` with `j <= n` appears, three times when
/// `j = n (mod 2)` and once otherwise.
pub fn sym_square_real_labels(n: u32) -> Vec<IsotypicLabel> {
    (0..=n).rev().map(|j| IsotypicLabel::new(j, if (n - j) % 2 == 0 { 3 } else { 1 })).collect()
}

/// The closed form as usually printed for odd `n = 2k+1`, whose second sum
/// stops at `r = k-1` and therefore omits one trivial summand. Even `n`
/// agrees with [`sym_square_real_labels`].
pub fn sym_square_printed_labels(n: u32) -> Vec<IsotypicLabel> {
    let mut labels = sym_square_real_labels(n);
    if n % 2 == 1 {
        labels.retain(|l| l.m != 0);
    }
    labels
}

/// A real representation of su(2) given by the matrices of `U1, U2, U3`.
#[derive(Clone, Debug)]
pub struct LieModule {
    name: String,
    dim: usize,
    gens: [SparseMatrix; 3],
}

impl LieModule {
    pub fn new(name: impl Into<String>, gens: [SparseMatrix; 3]) -> Self {
        let dim = gens[0].dim_in();
        Self { name: name.into(), dim, gens }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, j: usize) -> &SparseMatrix {
        &self.gens[j]
    }

    pub fn act(&self, j: usize, v: &[Q]) -> Vec<Q> {
        self.gens[j].apply(v)
    }

    pub fn casimir(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for g in &self.gens {
            let w = g.apply(&g.apply(v));
            for (o, x) in out.iter_mut().zip(w) {
                *o += x;
            }
        }
        out
    }

    /// Real tensor product, coordinates `(i, j) -> i * dim_b + j`.
    pub fn tensor(a: &LieModule, b: &LieModule) -> LieModule {
        let (da, db) = (a.dim, b.dim);
        let ga: Vec<Vec<Vec<Q>>> = a.gens.iter().map(SparseMatrix::to_dense).collect();
        let gb: Vec<Vec<Vec<Q>>> = b.gens.iter().map(SparseMatrix::to_dense).collect();
        let gens = std::array::from_fn(|g| {
            SparseMatrix::from_fn(da * db, da * db, |c| {
                let (i, j) = (c / db, c % db);
                let mut out = vec![Q::zero(); da * db];
                for r in 0..da {
                    let x = &ga[g][r][i];
                    if !x.is_zero() {
                        out[r * db + j] += x;
                    }
                }
                for s in 0..db {
                    let x = &gb[g][s][j];
                    if !x.is_zero() {
                        out[i * db + s] += x;
                    }
                }
                out
            })
        });
        LieModule::new(format!("{} ⊗ {}", a.name, b.name), gens)
    }

    /// Real module underlying a complex one, coordinates `(Re z_a, Im z_a)` interleaved.
    pub fn realify(c: &ComplexModule) -> LieModule {
        let n = c.dim;
        let gens = std::array::from_fn(|g| {
            SparseMatrix::from_fn(2 * n, 2 * n, |col| {
                let (a, imag) = (col / 2, col % 2 == 1);
                let mut out = vec![Q::zero(); 2 * n];
                for r in 0..n {
                    let x = &c.gens[g][r][a];
                    if x.is_zero() {
                        continue;
                    }
                    // x * e_a or x * i e_a
                    let y = if imag { x * gq_int(0, 1) } else { x.clone() };
                    out[2 * r] += &y.re;
                    out[2 * r + 1] += &y.im;
                }
                out
            })
        });
        LieModule::new(format!("({})_R", c.name), gens)
    }
}

/// A complex representation given by Gaussian-rational generator matrices.
#[derive(Clone, Debug)]
pub struct ComplexModule {
    name: String,
    dim: usize,
    gens: [Vec<Vec<GaussQ>>; 3],
}

impl ComplexModule {
    /// `S^k C^2` in the monomial basis.
    pub fn sym_power(k: u32) -> Self {
        let n = k as usize + 1;
        let gens = std::array::from_fn(|g| {
            let mut m = vec![vec![gq_zero(); n]; n];
            for a in 0..n {
                let img = act_lie(LieGenerator::REAL[g], &RepElement::monomial(k, a as u32));
                for (r, c) in img.coeffs.into_iter().enumerate() {
                    m[r][a] = c;
                }
            }
            m
        });
        Self { name: format!("S^{k}C^2"), dim: n, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Complex tensor product, coordinates `(i, j) -> i * dim_b + j`.
    pub fn tensor(a: &ComplexModule, b: &ComplexModule) -> ComplexModule {
        let (da, db) = (a.dim, b.dim);
        let n = da * db;
        let gens = std::array::from_fn(|g| {
            let mut m = vec![vec![gq_zero(); n]; n];
            for i in 0..da {
                for j in 0..db {
                    let col = i * db + j;
                    for r in 0..da {
                        let x = &a.gens[g][r][i];
                        if !x.is_zero() {
                            m[r * db + j][col] = &m[r * db + j][col] + x;
                        }
                    }
                    for s in 0..db {
                        let x = &b.gens[g][s][j];
                        if !x.is_zero() {
                            m[i * db + s][col] = &m[i * db + s][col] + x;
                        }
                    }
                }
            }
            m
        });
        ComplexModule { name: format!("{} ⊗ {}", a.name, b.name), dim: n, gens }
    }
}

/// One Casimir eigenspace: eigenvalue `-n(n+2)`, with a basis in ambient coordinates.
#[derive(Clone, Debug)]
pub struct CasimirBlock {
    pub n: u32,
    pub basis: Vec<Vec<Q>>,
}

impl CasimirBlock {
    pub fn real_dim(&self) -> usize {
        self.basis.len()
    }
}

fn generator_name(j: usize) -> &'static str {
    LieGenerator::REAL[j].name()
}

/// Decomposes an invariant subspace into exact Casimir eigenspaces.
pub fn casimir_spectrum(space: &Subspace, module: &LieModule) -> Result<Vec<CasimirBlock>> {
    let basis = space.echelon();
    if basis.dim() != module.dim() {
        return Err(Error::InvalidInput(format!(
            "subspace of dimension-{} ambient used with {}-dimensional module",
            basis.dim(),
            module.dim()
        )));
    }
    for j in 0..3 {
        for row in basis.rows() {
            if !basis.contains(&module.act(j, row)) {
                return Err(Error::NotInvariant { generator: generator_name(j) });
            }
        }
    }
    let r = basis.rank();
    if r == 0 {
        return Ok(Vec::new());
    }
    // column i holds the coordinates of Cas(row_i)
    let mut cas = vec![vec![Q::zero(); r]; r];
    let mut trace = Q::zero();
    for (i, row) in basis.rows().iter().enumerate() {
        let c = basis.coords(&module.casimir(row)).expect("invariant subspace");
        for (j, x) in c.into_iter().enumerate() {
            cas[j][i] = x;
        }
        trace += &cas[i][i];
    }
    let bound = {
        let t = (-trace).to_integer();
        let t: u64 = t.try_into().unwrap_or(u64::MAX);
        (t as f64).sqrt() as u32 + 1
    };
    let mut blocks = Vec::new();
    let mut found = 0usize;
    for n in 0..=bound {
        if found == r {
            break;
        }
        let lambda = Q::from_integer(BigInt::from(-(n as i64) * (n as i64 + 2)));
        let shifted: Vec<Vec<Q>> = cas
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut row = row.clone();
                row[i] -= &lambda;
                row
            })
            .collect();
        let kernel = crate::exact::null_space(&shifted, r);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        let ambient: Vec<Vec<Q>> = kernel
            .iter()
            .map(|x| {
                let mut v = vec![Q::zero(); basis.dim()];
                for (c, row) in x.iter().zip(basis.rows()) {
                    crate::exact::axpy(&mut v, c, row);
                }
                v
            })
            .collect();
        blocks.push(CasimirBlock { n, basis: ambient });
    }
    if found != r {
        return Err(Error::UnexpectedSpectrum { expected: r, found });
    }
    Ok(blocks)
}

/// Isotypic content of a real invariant subspace, labels `S^m_0` by decreasing `m`.
pub fn casimir_isotypic(space: &Subspace, module: &LieModule) -> Result<Vec<IsotypicLabel>> {
    let blocks = casimir_spectrum(space, module)?;
    blocks_to_labels(&blocks)
}

pub fn blocks_to_labels(blocks: &[CasimirBlock]) -> Result<Vec<IsotypicLabel>> {
    let mut labels = Vec::new();
    for b in blocks {
        if b.n % 2 == 1 {
            return Err(Error::NotRealType(b.n));
        }
        let m = b.n / 2;
        let block = (2 * m + 1) as usize;
        let (mult, rem) = b.real_dim().div_rem(&block);
        if rem != 0 {
            return Err(Error::NonIntegralMultiplicity { n: b.n, dim: b.real_dim(), block });
        }
        labels.push(IsotypicLabel::new(m, mult as u32));
    }
    Ok(normalize_labels(&labels))
}

/// Complex isotypic content of the realification of a complex module.
pub fn casimir_complex(space: &Subspace, module: &LieModule) -> Result<Vec<ComplexLabel>> {
    let blocks = casimir_spectrum(space, module)?;
    let mut labels = Vec::new();
    for b in blocks.iter().rev() {
        let block = 2 * (b.n as usize + 1);
        let (mult, rem) = b.real_dim().div_rem(&block);
        if rem != 0 {
            return Err(Error::NonIntegralMultiplicity { n: b.n, dim: b.real_dim(), block });
        }
        labels.push(ComplexLabel { n: b.n, multiplicity: mult as u32 });
    }
    Ok(labels)
}

/// Whole-module subspace helper for oracle computations.
pub fn whole(module: &LieModule) -> Subspace {
    Subspace::from_echelon(crate::op_spaces::Ambient::Named(module.name().to_string()), Echelon::full(module.dim()))
}
