//! Exact computation of invariants and automorphism groups of Danielewski
//! varieties `x·y1^k1…ym^km = P(y, z)` and line suspensions `y1^k1…ym^km = P(z)`.

pub mod algebra;
pub mod autgroup;
pub mod derivations;
pub mod lattice;
pub mod varieties;
