//! One-relation rewriting for the coordinate ring of the variety.

use super::poly::{Coeff, Exps, MultiPoly, Var, Vars};
use super::rat::Rat;
use num_traits::One;

/// The single rewriting rule of a presentation.
#[derive(Clone, Debug, PartialEq)]
pub enum Relation {
    /// `lead · cofactor → rhs`, where `rhs` does not involve `lead`.
    Lead { lead: Var, cofactor: Exps, rhs: MultiPoly },
    /// `z^d → rhs` with `rhs` of z-degree below `d`.
    ZPower { d: u32, rhs: MultiPoly },
}

impl Relation {
    pub fn vars(&self) -> Vars {
        match self {
            Relation::Lead { rhs, .. } | Relation::ZPower { rhs, .. } => rhs.vars(),
        }
    }

    /// The defining polynomial `lhs − rhs`, which generates the ideal.
    pub fn defining_poly(&self) -> MultiPoly {
        let vars = self.vars();
        match self {
            Relation::Lead { lead, cofactor, rhs } => {
                let mut e = cofactor.clone();
                e[vars.index(*lead)] += 1;
                MultiPoly::monomial(vars, e, Rat::one()).sub(rhs)
            }
            Relation::ZPower { d, rhs } => {
                let mut e = vec![0; vars.len()];
                e[vars.index(Var::Z)] = *d;
                MultiPoly::monomial(vars, e, Rat::one()).sub(rhs)
            }
        }
    }

    /// Quotient monomial if `e` is divisible by the rule's left-hand side.
    fn divide(&self, e: &[u32]) -> Option<Exps> {
        let vars = self.vars();
        match self {
            Relation::Lead { lead, cofactor, .. } => {
                let li = vars.index(*lead);
                if e[li] == 0 || e.iter().zip(cofactor).any(|(a, b)| a < b) {
                    return None;
                }
                let mut q: Exps = e.iter().zip(cofactor).map(|(a, b)| a - b).collect();
                q[li] -= 1;
                Some(q)
            }
            Relation::ZPower { d, .. } => {
                let zi = vars.index(Var::Z);
                if e[zi] < *d {
                    return None;
                }
                let mut q = e.to_vec();
                q[zi] -= d;
                Some(q)
            }
        }
    }

    pub fn is_reduced<C: Coeff>(&self, f: &MultiPoly<C>) -> bool {
        f.terms().keys().all(|e| self.divide(e).is_none())
    }

    /// Unique representative with no monomial divisible by the rule's left-hand side.
    pub fn normal_form<C: Coeff>(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(f.vars(), self.vars(), "polynomial and relation contexts differ");
        let rhs: MultiPoly<C> = match self {
            Relation::Lead { rhs, .. } | Relation::ZPower { rhs, .. } => rhs.lift(),
        };
        let mut work = f.clone();
        loop {
            // Largest reducible monomial first keeps the loop short.
            let hit = work.terms().iter().rev().find_map(|(e, c)| self.divide(e).map(|q| (e.clone(), c.clone(), q)));
            let Some((e, c, q)) = hit else { return work };
            work.add_term(e, c.negate());
            work = work.add(&rhs.shift(&q).scale(&c));
        }
    }

    /// The relation of the associated graded ring, `lead · cofactor → z^d`.
    pub fn graded(&self) -> Option<Relation> {
        match self {
            Relation::Lead { lead, cofactor, rhs } => {
                let vars = rhs.vars();
                let d = rhs.degree_in(Var::Z);
                let mut e = vec![0; vars.len()];
                e[vars.index(Var::Z)] = d;
                Some(Relation::Lead { lead: *lead, cofactor: cofactor.clone(), rhs: MultiPoly::monomial(vars, e, Rat::one()) })
            }
            Relation::ZPower { .. } => None,
        }
    }
}
