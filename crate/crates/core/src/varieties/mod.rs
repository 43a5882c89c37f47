//! Variety presentations: classification, normalization, and invariants.

mod invariants;
mod quasitori;

pub use invariants::{component_product, genus, irreducibility, reducible_components, rigidity, Irreducibility, Rigidity};
pub use quasitori::{torus_coords, zero_root_data, diagonal_symmetries_of_p, element_order, 
    additional_quasitorus, ml_invariant, proper_quasitorus, symmetric_group, AdditionalQuasitorus, QuasitorusData, QuasitorusKind, SymGroupData,
    TorusGen,
};

use crate::algebra::{AlgebraError, Coeff, MultiPoly, Rat, Relation, Var, Vars};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarietyError {
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("P is not monic in z")]
    NonMonic,
    #[error("P is not squarefree")]
    NotSquarefree,
    #[error("the curve is reducible")]
    Reducible,
    #[error("operation not available for this regime: {0}")]
    WrongRegime(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// y1^k1…ym^km = P(z), every ki ≥ 2.
    LineSuspensionAllGe2,
    /// Exactly one coordinate of weight 1 and P = P(z).
    LineSuspensionOneUnit,
    /// x·y1^k1…ym^km = P(y, z) with some coefficient depending on y.
    Danielewski,
    /// No y-variables besides the unit-weight one: the variety is a line.
    Degenerate,
    Unsupported,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::LineSuspensionAllGe2 => "LineSuspensionAllGe2",
            Regime::LineSuspensionOneUnit => "LineSuspensionOneUnit",
            Regime::Danielewski => "Danielewski",
            Regime::Degenerate => "Degenerate",
            Regime::Unsupported => "Unsupported",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The input before classification: `[x·]y1^k1…ym^km = P(y, z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawPresentation {
    pub weights: Vec<u32>,
    pub x_present: bool,
    pub p: MultiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarietySpec {
    pub weights: Vec<u32>,
    pub x_present: bool,
    pub d: u32,
    /// Right-hand side P(y, z), monic of degree d in z.
    pub p: MultiPoly,
    pub regime: Regime,
    /// The unit-weight coordinate (x, or the y of weight 1), if any.
    pub lead: Option<Var>,
    /// c(y) with z_normalized = z_original + c(y); `None` when no shift was applied.
    pub z_shift: Option<MultiPoly>,
}

impl VarietySpec {
    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn vars(&self) -> Vars {
        self.p.vars()
    }

    /// Coefficient s_i of z^i, a polynomial in y.
    pub fn s(&self, i: u32) -> MultiPoly {
        self.p.coeff_of(Var::Z, i)
    }

    pub fn coefficients_constant(&self) -> bool {
        (0..=self.d).all(|i| self.s(i).as_constant().is_some())
    }

    /// y-indices other than the unit-weight one.
    pub fn weighted_ys(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.lead != Some(Var::Y(i))).collect()
    }

    /// Exponent vector of Π y_i^{k_i} over the weighted y's.
    pub fn cofactor(&self) -> Vec<u32> {
        let vars = self.vars();
        let mut e = vec![0; vars.len()];
        for i in self.weighted_ys() {
            e[vars.index(Var::Y(i))] = self.weights[i];
        }
        e
    }

    pub fn cofactor_poly(&self) -> MultiPoly {
        MultiPoly::monomial(self.vars(), self.cofactor(), Rat::one())
    }

    pub fn relation(&self) -> Relation {
        match self.lead {
            Some(lead) => Relation::Lead { lead, cofactor: self.cofactor(), rhs: self.p.clone() },
            None => {
                let vars = self.vars();
                let mut zd = vec![0; vars.len()];
                zd[vars.index(Var::Z)] = self.d;
                let tail = self.p.sub(&MultiPoly::monomial(vars, zd, Rat::one()));
                Relation::ZPower { d: self.d, rhs: self.cofactor_poly().sub(&tail) }
            }
        }
    }

    pub fn defining_poly(&self) -> MultiPoly {
        self.relation().defining_poly()
    }

    pub fn is_normalized(&self) -> bool {
        self.s(self.d - 1).is_zero()
    }

    /// Human-readable defining equation.
    pub fn equation(&self) -> String {
        let lhs = match self.lead {
            Some(l) => {
                let mut e = self.cofactor();
                e[self.vars().index(l)] += 1;
                MultiPoly::monomial(self.vars(), e, Rat::one())
            }
            None => self.cofactor_poly(),
        };
        format!("{} = {}", lhs, self.p)
    }

    /// z-only copy of P when the coefficients are constant.
    pub fn p_in_z(&self) -> Option<MultiPoly> {
        let zv = Vars::new(0, false);
        let mut out = MultiPoly::zero(zv);
        for k in 0..=self.d {
            let c = self.s(k).as_constant()?;
            if !c.is_zero() {
                out.add_term(vec![k], c);
            }
        }
        Some(out)
    }

    /// Moves f from original to normalized coordinates (z_orig = z − c).
    pub fn to_normalized<C: Coeff>(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        self.shift_z(f, true)
    }

    /// Moves f from normalized to original coordinates (z = z_orig + c).
    pub fn to_original<C: Coeff>(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        self.shift_z(f, false)
    }

    fn shift_z<C: Coeff>(&self, f: &MultiPoly<C>, forward: bool) -> MultiPoly<C> {
        let Some(c) = &self.z_shift else { return f.clone() };
        let vars = self.vars();
        let c: MultiPoly<C> = c.lift();
        let z = MultiPoly::var(vars, Var::Z);
        let zimg = if forward { z.sub(&c) } else { z.add(&c) };
        let images: Vec<MultiPoly<C>> = vars.all().into_iter().map(|v| if v == Var::Z { zimg.clone() } else { MultiPoly::var(vars, v) }).collect();
        f.compose(&images)
    }
}

/// Assigns a regime; unsupported presentations are rejected with the reason.
pub fn classify(raw: &RawPresentation) -> Result<VarietySpec, VarietyError> {
    match classify_regime(raw)? {
        (RegimeOutcome::Unsupported(reason), _) => Err(VarietyError::Unsupported(reason)),
        (RegimeOutcome::Supported(_), spec) => Ok(spec.expect("supported regimes carry a spec")),
    }
}

fn classify_regime(raw: &RawPresentation) -> Result<(RegimeOutcome, Option<VarietySpec>), VarietyError> {
    let m = raw.weights.len();
    let vars = Vars::new(m, raw.x_present);
    if raw.p.vars() != vars {
        return Err(VarietyError::Invalid(format!("P must be written in {} y-variables{}", m, if raw.x_present { " and x" } else { "" })));
    }
    if raw.weights.contains(&0) {
        return Err(VarietyError::Invalid("weights must be positive".into()));
    }
    if raw.x_present && raw.p.contains(Var::X) {
        return Err(VarietyError::Invalid("P must not involve x".into()));
    }
    let d = raw.p.degree_in(Var::Z);
    let units = raw.weights.iter().filter(|&&k| k == 1).count() + raw.x_present as usize;
    if units >= 2 {
        return Ok((RegimeOutcome::Unsupported("two unit weights: outside the supported structure theorems".into()), None));
    }
    if d <= 1 {
        return Ok((RegimeOutcome::Unsupported(format!("z-degree d = {} ≤ 1: outside the supported structure theorems", d)), None));
    }
    let lead_coeff = raw.p.coeff_of(Var::Z, d);
    if lead_coeff.as_constant() != Some(Rat::one()) {
        return Err(VarietyError::NonMonic);
    }
    let lead = if raw.x_present {
        Some(Var::X)
    } else {
        raw.weights.iter().position(|&k| k == 1).map(Var::Y)
    };
    if let Some(Var::Y(u)) = lead {
        if raw.p.contains(Var::Y(u)) {
            return Ok((RegimeOutcome::Unsupported(format!("P involves the unit-weight variable y{}", u + 1)), None));
        }
    }
    let s_const = (0..=d).all(|i| raw.p.coeff_of(Var::Z, i).as_constant().is_some());
    if m == 0 && lead.is_none() {
        return Ok((RegimeOutcome::Unsupported("no y-variables and no x: the equation 1 = P(z) defines finitely many points".into()), None));
    }
    let others = m - matches!(lead, Some(Var::Y(_))) as usize;
    let regime = if others == 0 {
        Regime::Degenerate
    } else if lead.is_none() {
        if !s_const {
            return Ok((RegimeOutcome::Unsupported("all weights ≥ 2 with y-dependent coefficients: outside the supported structure theorems".into()), None));
        }
        Regime::LineSuspensionAllGe2
    } else if s_const {
        Regime::LineSuspensionOneUnit
    } else {
        Regime::Danielewski
    };
    let spec = VarietySpec { weights: raw.weights.clone(), x_present: raw.x_present, d, p: raw.p.clone(), regime, lead, z_shift: None };
    Ok((RegimeOutcome::Supported(regime), Some(spec)))
}

enum RegimeOutcome {
    Supported(Regime),
    Unsupported(String),
}

/// The regime of a presentation, with the reason when it is unsupported.
pub fn regime_of(raw: &RawPresentation) -> Result<(Regime, Option<String>), VarietyError> {
    Ok(match classify_regime(raw)?.0 {
        RegimeOutcome::Supported(r) => (r, None),
        RegimeOutcome::Unsupported(why) => (Regime::Unsupported, Some(why)),
    })
}

/// Shifts z ↦ z − s_{d−1}/d so that the z^{d−1} coefficient vanishes.
pub fn normalize(spec: &VarietySpec) -> Result<VarietySpec, VarietyError> {
    if spec.p.coeff_of(Var::Z, spec.d).as_constant() != Some(Rat::one()) {
        return Err(VarietyError::NonMonic);
    }
    if spec.is_normalized() {
        return Ok(spec.clone());
    }
    let c = spec.s(spec.d - 1).scale_rat(&Rat::new(1.into(), spec.d.into()));
    let vars = spec.vars();
    let images: Vec<MultiPoly> = vars
        .all()
        .into_iter()
        .map(|v| if v == Var::Z { MultiPoly::var(vars, Var::Z).sub(&c) } else { MultiPoly::var(vars, v) })
        .collect();
    let p = spec.p.compose(&images);
    let total = match &spec.z_shift {
        Some(prev) => prev.add(&c),
        None => c,
    };
    Ok(VarietySpec { p, z_shift: Some(total), ..spec.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    pub(crate) fn raw(weights: &[u32], x: bool, p: &str) -> RawPresentation {
        let vars = Vars::new(weights.len(), x);
        RawPresentation { weights: weights.to_vec(), x_present: x, p: parse_poly(p, vars).unwrap() }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&raw(&[2, 3], false, "z^4+z^2+z")).unwrap().regime, Regime::LineSuspensionAllGe2);
        assert_eq!(classify(&raw(&[2, 2], true, "z^3+z+y1-y2")).unwrap().regime, Regime::Danielewski);
        assert!(matches!(classify(&raw(&[1, 2], true, "z^2")), Err(VarietyError::Unsupported(m)) if m.contains("two unit weights")));
        assert!(matches!(classify(&raw(&[1, 1], false, "z^2")), Err(VarietyError::Unsupported(_))));
        assert_eq!(classify(&raw(&[1, 3], false, "z^2+1")).unwrap().regime, Regime::LineSuspensionOneUnit);
        assert_eq!(classify(&raw(&[2], true, "z^2")).unwrap().regime, Regime::LineSuspensionOneUnit);
        assert_eq!(classify(&raw(&[1], false, "z^3")).unwrap().regime, Regime::Degenerate);
        assert_eq!(classify(&raw(&[], true, "z^3")).unwrap().regime, Regime::Degenerate);
        assert!(matches!(classify(&raw(&[2], false, "z")), Err(VarietyError::Unsupported(_))));
        assert_eq!(classify(&raw(&[2], false, "2*z^2")), Err(VarietyError::NonMonic));
    }

    #[test]
    fn normalization_examples() {
        let s = classify(&raw(&[2, 3], false, "z^2+2*z+1")).unwrap();
        let n = normalize(&s).unwrap();
        assert_eq!(n.p, parse_poly("z^2", s.vars()).unwrap());
        assert_eq!(normalize(&n).unwrap(), n);
        let e2 = classify(&raw(&[2], true, "z^3+(y+1)*z+1")).unwrap();
        assert_eq!(normalize(&e2).unwrap(), e2);
    }

    #[test]
    fn normalization_with_y_dependent_shift() {
        let s = classify(&raw(&[2], true, "z^2+2*y*z+1")).unwrap();
        let n = normalize(&s).unwrap();
        assert!(n.is_normalized());
        assert_eq!(n.to_normalized(&s.defining_poly()), n.defining_poly());
        assert_eq!(n.to_original(&n.defining_poly()), s.defining_poly());
    }
}
