//! Automorphism groups: the canonical group 𝔾, structure reports, verdicts, and verification.

mod canonical;
mod finite;
mod structure;

pub use canonical::{branch_constraints, canonical_group, one_param_sample, Branch, BranchStatus, CanonicalGroup, GroupElement};
pub use finite::FiniteGroupTable;
pub use structure::{
    aut_structure, degenerate_report, enumerate_finite_part, radical_warning, AutGenerator, AutReport, FinitePart, GeneratorAction, Leaf, ReportGroups, Structure,
};

use crate::algebra::Coeff;
use crate::derivations::{DerivationError, GeneratorMap};
use crate::lattice::LatticeError;
use crate::varieties::{Regime, VarietyError, VarietySpec};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutError {
    #[error("not available for this regime: {0}")]
    WrongRegime(String),
    #[error("the presentation must be normalized (zero coefficient of z^(d-1))")]
    NotNormalized,
    #[error("not an element of the canonical group: {0}")]
    NotAnElement(String),
    #[error("enumeration failed: {0}")]
    Enumeration(String),
    #[error("the finite part is infinite or larger than the bound {0}")]
    TooLarge(u64),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Solvable {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Solvable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solvable::Yes => "yes",
            Solvable::No => "no",
            Solvable::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdicts {
    pub commutative: bool,
    pub torus: bool,
    pub solvable: Solvable,
}

/// y1^2 = z^2 + c: the only line suspension whose group has the a² − b² = 1 family.
pub fn is_hyperbolic_case(spec: &VarietySpec) -> bool {
    spec.regime == Regime::LineSuspensionAllGe2 && spec.m() == 1 && spec.weights[0] == 2 && spec.d == 2
}

fn five_equal_weights(spec: &VarietySpec) -> bool {
    crate::varieties::symmetric_group(spec).max_block() >= 5
}

/// Commutativity, torus, and solvability verdicts per regime.
pub fn verdicts(spec: &VarietySpec, report: &AutReport) -> Verdicts {
    let no_five = !five_equal_weights(spec);
    match spec.regime {
        Regime::LineSuspensionAllGe2 => {
            let distinct = crate::varieties::symmetric_group(spec).is_trivial();
            let special = is_hyperbolic_case(spec);
            let commutative = distinct && !special;
            let g = spec.weights.iter().fold(0u32, |a, &k| num_integer::gcd(a, k));
            let torus = commutative
                && match crate::varieties::zero_root_data(spec) {
                    Some((_, None)) => num_integer::gcd(g, spec.d) == 1,
                    Some((_, Some(v))) => v == 1 && g == 1,
                    None => false,
                };
            Verdicts { commutative, torus, solvable: if no_five { Solvable::Yes } else { Solvable::No } }
        }
        Regime::LineSuspensionOneUnit => Verdicts { commutative: false, torus: false, solvable: if no_five { Solvable::Yes } else { Solvable::No } },
        Regime::Danielewski => {
            let commutative = report.canonical.as_ref().is_some_and(|g| g.is_trivial);
            let solvable = if commutative || no_five { Solvable::Yes } else { Solvable::Unknown };
            Verdicts { commutative, torus: false, solvable }
        }
        Regime::Degenerate => Verdicts { commutative: false, torus: false, solvable: Solvable::Yes },
        Regime::Unsupported => Verdicts { commutative: false, torus: false, solvable: Solvable::Unknown },
    }
}

/// φ maps the defining polynomial into the ideal and has a two-sided inverse that does too.
pub fn verify_automorphism<C: Coeff>(spec: &VarietySpec, phi: &GeneratorMap<C>) -> bool {
    if phi.relation() != &spec.relation() || !phi.preserves_ideal() {
        return false;
    }
    match phi.inverse_map() {
        Some(inv) => inv.preserves_ideal() && phi.inverse_is_two_sided(),
        None => false,
    }
}

#[cfg(test)]
mod tests;
