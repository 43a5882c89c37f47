//! Exact scalars, cyclotomic fields, sparse polynomials and the one-relation normal form.

pub mod cyclotomic;
pub mod normal_form;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod scalar;
pub mod univar;

pub use cyclotomic::CycElem;
pub use normal_form::Relation;
pub use parse::parse_poly;
pub use poly::{poly_arith, ArithOp, Coeff, Exps, MultiPoly, Var, Vars};
pub use rat::Rat;
pub use scalar::{all_nth_roots, cyc_root_of_unity, RootScalar};
pub use univar::{perfect_power_root, univar_gcd};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("no image given for variable {0}")]
    MissingImage(String),
    #[error("expected a polynomial in z alone")]
    NotUnivariate,
    #[error("{l} does not divide the degree {d}")]
    IndivisibleDegree { l: u32, d: u32 },
    #[error("polynomial is not monic in z")]
    NotMonic,
    #[error("parse error: {0}")]
    Parse(String),
}
