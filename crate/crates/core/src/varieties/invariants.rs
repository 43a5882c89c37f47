//! Irreducibility, rigidity, and genus.

use super::{Regime, VarietyError, VarietySpec};
use crate::algebra::univar::z_coeffs;
use crate::algebra::{perfect_power_root, univar_gcd, CycElem, MultiPoly, Var, Vars};
use num_integer::Integer;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility {
    Irreducible,
    /// P = Q^l with l dividing every weight; Q is a polynomial in z.
    Reducible { l: u32, q: MultiPoly },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Largest l > 1 dividing all weights with P = Q^l, or `Irreducible`.
pub fn irreducibility(spec: &VarietySpec) -> Result<Irreducibility, VarietyError> {
    if spec.lead.is_some() || spec.regime == Regime::Danielewski {
        return Ok(Irreducibility::Irreducible);
    }
    let g = spec.weights.iter().fold(0u32, |a, &k| a.gcd(&k));
    let Some(pz) = spec.p_in_z() else {
        return Ok(Irreducibility::Irreducible);
    };
    for l in (2..=g).rev() {
        if g % l != 0 || !spec.d.is_multiple_of(l) {
            continue;
        }
        if let Some(q) = perfect_power_root(&pz, l)? {
            return Ok(Irreducibility::Reducible { l, q: q.embed(spec.vars()) });
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// The l components W − εQ, ε ranging over the l-th roots of unity, W = Π y_i^{k_i/l}.
pub fn reducible_components(spec: &VarietySpec, l: u32, q: &MultiPoly) -> Vec<MultiPoly<CycElem>> {
    let vars = spec.vars();
    let mut w = vec![0; vars.len()];
    for (i, &k) in spec.weights.iter().enumerate() {
        w[vars.index(Var::Y(i))] = k / l;
    }
    let wpoly = MultiPoly::monomial(vars, w, CycElem::one());
    let qc = q.to_cyc();
    (0..l).map(|j| wpoly.sub(&qc.scale(&CycElem::zeta(l, j as i64)))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rigidity {
    pub rigid: bool,
    pub reason: String,
}

pub fn rigidity(spec: &VarietySpec) -> Result<Rigidity, VarietyError> {
    if spec.regime != Regime::LineSuspensionAllGe2 {
        return Err(VarietyError::WrongRegime("a unit-weight coordinate admits the canonical LND, so the variety is not rigid".into()));
    }
    if spec.m() >= 2 {
        return Ok(Rigidity { rigid: true, reason: "all weights ≥ 2".into() });
    }
    let k = spec.weights[0];
    let pz = spec.p_in_z().expect("constant coefficients in this regime");
    let reason = if let Irreducibility::Reducible { l, .. } = irreducibility(spec)? {
        format!("reducible curve (P is an {}-th power)", l)
    } else {
        match genus(k, &pz) {
            Ok(0) => "≅ 𝕂∖{0}".to_string(),
            Ok(g) => format!("positive genus {}", g),
            Err(_) => "all weights ≥ 2".to_string(),
        }
    };
    Ok(Rigidity { rigid: true, reason })
}

/// Genus of the smooth model of V(y^k − P(z)) for squarefree P.
pub fn genus(k: u32, p: &MultiPoly) -> Result<u64, VarietyError> {
    let cs = z_coeffs(p)?;
    let d = (cs.len() - 1) as u32;
    if k < 2 || d < 2 || cs.iter().all(|c| c.is_zero()) {
        return Err(VarietyError::Invalid(format!("genus needs k ≥ 2 and deg P ≥ 2 (got k = {}, d = {})", k, d)));
    }
    let lead = cs[d as usize].clone();
    let zv = Vars::new(0, false);
    let monic = MultiPoly::from_terms(zv, cs.iter().enumerate().map(|(e, c)| (vec![e as u32], c / &lead)));
    let g = univar_gcd(&monic, &monic.derivative(Var::Z))?;
    if g.total_degree() > 0 {
        return Err(VarietyError::NotSquarefree);
    }
    for l in 2..=k.gcd(&d) {
        if k.is_multiple_of(l) && d.is_multiple_of(l) && perfect_power_root(&monic, l)?.is_some() {
            return Err(VarietyError::Reducible);
        }
    }
    let (k, d) = (k as u64, d as u64);
    Ok(((d - 1) * (k - 1) + 1 - k.gcd(&d)) / 2)
}

/// Π of the components, for checking a reducibility witness.
pub fn component_product(parts: &[MultiPoly<CycElem>]) -> Option<MultiPoly<CycElem>> {
    let first = parts.first()?;
    Some(parts[1..].iter().fold(first.clone(), |acc, f| acc.mul(f)))
}
