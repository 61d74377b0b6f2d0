//! Certified solutions of the equations defining σ(a), σ(1), E, A and the
//! Dirichlet L-function bounds.

mod bisect;
mod dirichlet;
mod dual;
mod equations;

use crate::error::{Error, Result};
use crate::numerics::BigFloat;

pub use bisect::{verified_bisect, CertifiedFn, CertifiedRoot, ExactFn, RealEval};
pub use dirichlet::{character_table, l_function, solve_l_bound, DirichletCharacter, LBoundEquation};
pub use dual::Dual;
pub use equations::{
    arcsin_coefficients, solve_a, solve_e, solve_sigma_a, solve_sigma_one, solve_sigma_one_form, RealPartEquation,
    SigmaOfAEquation, SigmaOneEquation, SigmaOneForm, TurningEquation,
};

#[derive(Debug, Clone, PartialEq)]
pub enum ConstantKind {
    SigmaOfA(BigFloat),
    SigmaOne,
    TurningBoundE,
    RealPartBoundA,
    LBound { modulus: u64, a: BigFloat },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantSpec {
    pub kind: ConstantKind,
    pub digits: u32,
}

impl ConstantSpec {
    pub fn new(kind: ConstantKind, digits: u32) -> Self {
        Self { kind, digits }
    }

    pub fn solve(&self) -> Result<CertifiedRoot> {
        if self.digits < crate::numerics::MIN_DIGITS {
            return Err(Error::InvalidPrecision(format!("digits = {}, need at least 10", self.digits)));
        }
        match &self.kind {
            ConstantKind::SigmaOfA(a) => solve_sigma_a(a, self.digits),
            ConstantKind::SigmaOne => solve_sigma_one(self.digits),
            ConstantKind::TurningBoundE => solve_e(self.digits),
            ConstantKind::RealPartBoundA => solve_a(self.digits),
            ConstantKind::LBound { modulus, a } => solve_l_bound(*modulus, a, self.digits),
        }
    }
}

#[cfg(test)]
mod tests;
