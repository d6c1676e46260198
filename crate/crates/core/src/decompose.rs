//! Closed-form decompositions checked against Casimir eigenspaces of explicit modules.

use crate::error::Result;
use crate::op_spaces::{Carrier, OperatorSpace};
use crate::rep::{
    casimir_complex, casimir_isotypic, cg_complex, cg_real, format_complex_labels, format_labels,
    sym_square_printed_labels, sym_square_real_labels, total_dim, whole, ComplexLabel, ComplexModule, IsotypicLabel,
    LieModule,
};

/// `S^m_0 R^3` as the real form of `S^{2m} C^2`.
pub fn real_irrep(m: u32) -> Result<LieModule> {
    let c = Carrier::real_form(2 * m)?;
    Ok(LieModule::new(format!("S^{m}_0"), std::array::from_fn(|g| c.generator(g).clone())))
}

pub fn cg_real_oracle(k: u32, l: u32) -> Result<Vec<IsotypicLabel>> {
    let t = LieModule::tensor(&real_irrep(k)?, &real_irrep(l)?);
    casimir_isotypic(&whole(&t), &t)
}

pub fn cg_complex_oracle(k: u32, l: u32) -> Result<Vec<ComplexLabel>> {
    let t = LieModule::realify(&ComplexModule::tensor(&ComplexModule::sym_power(k), &ComplexModule::sym_power(l)));
    casimir_complex(&whole(&t), &t)
}

/// Symmetric operators on `(S^n C^2)_R`.
pub fn sym_square_oracle(n: u32) -> Result<Vec<IsotypicLabel>> {
    let m = OperatorSpace::complex(n).module();
    casimir_isotypic(&whole(&m), &m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    CgReal(u32, u32),
    CgComplex(u32, u32),
    SymSquare(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub query: Query,
    pub formula: String,
    pub oracle: String,
    pub dim: usize,
    pub expected_dim: usize,
    pub agree: bool,
    /// For the symmetric square: the printed closed form and whether it had to be corrected.
    pub printed: Option<String>,
    pub corrected: Option<bool>,
}

impl Decomposition {
    pub fn ok(&self) -> bool {
        self.agree && self.dim == self.expected_dim
    }

    /// `"S3_0 + S2_0 + S1_0 | dim 15 ok"`
    pub fn line(&self) -> String {
        let mut s = format!("{} | dim {} {}", self.formula, self.dim, if self.ok() { "ok" } else { "MISMATCH" });
        if let Some(c) = self.corrected {
            s.push_str(&format!(" | eq-corrected: {c}"));
        }
        s
    }
}

pub fn decompose(query: Query) -> Result<Decomposition> {
    Ok(match query {
        Query::CgReal(k, l) => {
            let f = cg_real(k, l);
            let o = cg_real_oracle(k, l)?;
            Decomposition {
                query,
                formula: format_labels(&f),
                oracle: format_labels(&o),
                dim: total_dim(&f),
                expected_dim: ((2 * k + 1) * (2 * l + 1)) as usize,
                agree: f == o,
                printed: None,
                corrected: None,
            }
        }
        Query::CgComplex(k, l) => {
            let f = cg_complex(k, l);
            let o = cg_complex_oracle(k, l)?;
            Decomposition {
                query,
                formula: format_complex_labels(&f),
                oracle: format_complex_labels(&o),
                dim: f.iter().map(ComplexLabel::dim).sum(),
                expected_dim: ((k + 1) * (l + 1)) as usize,
                agree: f == o,
                printed: None,
                corrected: None,
            }
        }
        Query::SymSquare(n) => {
            let f = sym_square_real_labels(n);
            let p = sym_square_printed_labels(n);
            let o = sym_square_oracle(n)?;
            let d = 2 * n as usize + 2;
            Decomposition {
                query,
                formula: format_labels(&f),
                oracle: format_labels(&o),
                dim: total_dim(&f),
                expected_dim: d * (d + 1) / 2,
                agree: f == o,
                corrected: Some(p != f),
                printed: Some(format_labels(&p)),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines() {
        assert_eq!(decompose(Query::CgReal(2, 1)).unwrap().line(), "S3_0 + S2_0 + S1_0 | dim 15 ok");
        assert_eq!(decompose(Query::SymSquare(1)).unwrap().line(), "3·S1_0 + S0_0 | dim 10 ok | eq-corrected: true");
        assert_eq!(decompose(Query::CgComplex(0, 0)).unwrap().line(), "S0 | dim 1 ok");
        let even = decompose(Query::SymSquare(2)).unwrap();
        assert_eq!(even.corrected, Some(false));
    }
}
