use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("level {0} is odd: S^k C^2 carries no invariant real structure")]
    OddLevel(u32),

    #[error("subspace is not invariant under generator {generator}")]
    NotInvariant { generator: &'static str },

    #[error("Casimir eigenspace for S^{n} has real dimension {dim}, not a multiple of {block}")]
    NonIntegralMultiplicity { n: u32, dim: usize, block: usize },

    #[error("Casimir spectrum accounts for {found} of {expected} dimensions")]
    UnexpectedSpectrum { expected: usize, found: usize },

    #[error("Casimir eigenspace S^{0} C^2 (n odd) has no real form label")]
    NotRealType(u32),

    #[error("subspace is not contained in the ambient space")]
    NotContained,

    #[error("operator does not lie in the moduli tangent space")]
    NotInTangent,

    #[error("moduli dimension {found} at level {k} disagrees with k(k-1) = {expected}")]
    DimensionMismatch { k: u32, expected: usize, found: usize },

    #[error("Id + C is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    Infeasible { min_eigenvalue: f64 },

    #[error("evaluation is not surjective at chart {chart}, z = {re}+{im}i")]
    Degenerate { chart: u8, re: f64, im: f64 },

    #[error("moduli point is interior; kernel containment is vacuous")]
    NotBoundary,

    #[error("quadrature did not converge: {coarse} ({coarse_nodes} nodes) vs {fine} ({fine_nodes} nodes)")]
    Quadrature { coarse: f64, fine: f64, coarse_nodes: usize, fine_nodes: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
