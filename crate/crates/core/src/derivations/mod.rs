//! Derivations and endomorphisms of the coordinate ring, given by generator images.

use crate::algebra::rat::factorial;
use crate::algebra::{Coeff, MultiPoly, Rat, Relation, Var, Vars};
use crate::varieties::{VarietyError, VarietySpec};
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error("the derivation does not annihilate the defining relation")]
    NotWellDefined,
    #[error("the map does not preserve the defining ideal")]
    NotIdealPreserving,
    #[error("the listed inverse is not a two-sided inverse")]
    BadInverse,
    #[error("no canonical LND: {0}")]
    NoCanonicalLnd(String),
    #[error("the degree of the zero element is undefined (-∞)")]
    ZeroPolynomial,
    #[error("∂ⁿ(f) ≠ 0 for all n ≤ {0}")]
    BoundExceeded(u32),
    #[error("h must lie in the kernel of the canonical LND (it involves {0})")]
    NotInKernel(String),
    #[error("the weights do not make the defining polynomial homogeneous")]
    NotGrading,
    #[error("internal: Taylor sum did not terminate within {0} terms")]
    TaylorCap(u32),
    #[error("polynomial lives in the wrong variable context")]
    ContextMismatch,
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// A derivation of K[V], stored by the images of the generators in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    relation: Relation,
    images: Vec<MultiPoly>,
}

impl Derivation {
    /// Checks that the images send the defining polynomial into the ideal.
    pub fn new(relation: Relation, images: Vec<MultiPoly>) -> Result<Self, DerivationError> {
        let vars = relation.vars();
        if images.len() != vars.len() || images.iter().any(|p| p.vars() != vars) {
            return Err(DerivationError::ContextMismatch);
        }
        let images = images.iter().map(|p| relation.normal_form(p)).collect();
        let der = Derivation { relation, images };
        if !der.apply(&der.relation.defining_poly()).is_zero() {
            return Err(DerivationError::NotWellDefined);
        }
        Ok(der)
    }

    pub fn zero(relation: Relation) -> Self {
        let vars = relation.vars();
        Derivation { images: vec![MultiPoly::zero(vars); vars.len()], relation }
    }

    pub fn vars(&self) -> Vars {
        self.relation.vars()
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn image(&self, v: Var) -> &MultiPoly {
        &self.images[self.vars().index(v)]
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|p| p.is_zero())
    }

    /// ∂(f) by the chain rule, reduced to normal form.
    pub fn apply<C: Coeff>(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        let vars = self.vars();
        let mut out = MultiPoly::zero(vars);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let v = vars.var(i);
            let df = f.derivative(v);
            if !df.is_zero() {
                out = out.add(&df.mul(&img.lift::<C>()));
            }
        }
        self.relation.normal_form(&out)
    }

    /// The replica h·∂.
    pub fn replica(&self, h: &MultiPoly) -> Self {
        let images = self.images.iter().map(|p| self.relation.normal_form(&p.mul(h))).collect();
        Derivation { relation: self.relation.clone(), images }
    }
}

/// ∂(kernel y's) = 0, ∂(z) = M(y), ∂(lead) = ∂P/∂z.
pub fn canonical_lnd(spec: &VarietySpec) -> Result<Derivation, DerivationError> {
    let Some(lead) = spec.lead else {
        return Err(DerivationError::NoCanonicalLnd("no unit-weight coordinate; the variety is rigid".into()));
    };
    let vars = spec.vars();
    let mut images = vec![MultiPoly::zero(vars); vars.len()];
    images[vars.index(Var::Z)] = spec.cofactor_poly();
    images[vars.index(lead)] = spec.p.derivative(Var::Z);
    Derivation::new(spec.relation(), images)
}

/// Least n with ∂ⁿ(f) = 0.
pub fn nilpotency_index(der: &Derivation, f: &MultiPoly, bound: u32) -> Result<u32, DerivationError> {
    let mut cur = der.relation.normal_form(f);
    for n in 0..=bound {
        if cur.is_zero() {
            return Ok(n);
        }
        cur = der.apply(&cur);
    }
    Err(DerivationError::BoundExceeded(bound))
}

/// A ring endomorphism given by generator images, optionally with a claimed inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMap<C: Coeff = Rat> {
    relation: Relation,
    images: Vec<MultiPoly<C>>,
    inverse: Option<Vec<MultiPoly<C>>>,
}

impl<C: Coeff> GeneratorMap<C> {
    /// Builds the map without checks; see [`GeneratorMap::verify`].
    pub fn new(relation: Relation, images: Vec<MultiPoly<C>>, inverse: Option<Vec<MultiPoly<C>>>) -> Result<Self, DerivationError> {
        let vars = relation.vars();
        let shaped = |v: &Vec<MultiPoly<C>>| v.len() == vars.len() && v.iter().all(|p| p.vars() == vars);
        if !shaped(&images) || inverse.as_ref().is_some_and(|inv| !shaped(inv)) {
            return Err(DerivationError::ContextMismatch);
        }
        Ok(GeneratorMap { relation, images, inverse })
    }

    pub fn identity(relation: Relation) -> Self {
        let vars = relation.vars();
        let ids: Vec<MultiPoly<C>> = vars.all().into_iter().map(|v| MultiPoly::var(vars, v)).collect();
        GeneratorMap { relation, inverse: Some(ids.clone()), images: ids }
    }

    pub fn vars(&self) -> Vars {
        self.relation.vars()
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn image(&self, v: Var) -> &MultiPoly<C> {
        &self.images[self.vars().index(v)]
    }

    pub fn images(&self) -> &[MultiPoly<C>] {
        &self.images
    }

    pub fn inverse_images(&self) -> Option<&[MultiPoly<C>]> {
        self.inverse.as_deref()
    }

    pub fn inverse_map(&self) -> Option<Self> {
        let inv = self.inverse.clone()?;
        Some(GeneratorMap { relation: self.relation.clone(), images: inv, inverse: Some(self.images.clone()) })
    }

    /// φ(f) in normal form.
    pub fn apply(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        self.relation.normal_form(&f.compose(&self.images))
    }

    /// self ∘ other, i.e. f ↦ self(other(f)).
    pub fn compose(&self, other: &Self) -> Self {
        let images = other.images.iter().map(|g| self.apply(g)).collect();
        let inverse = match (&self.inverse, &other.inverse) {
            (Some(a), Some(b)) => Some(a.iter().map(|g| self.relation.normal_form(&g.compose(b))).collect()),
            _ => None,
        };
        GeneratorMap { relation: self.relation.clone(), images, inverse }
    }

    pub fn preserves_ideal(&self) -> bool {
        self.apply(&self.relation.defining_poly().lift::<C>()).is_zero()
    }

    /// Both composites fix every generator modulo the ideal.
    pub fn inverse_is_two_sided(&self) -> bool {
        let Some(inv) = &self.inverse else { return false };
        let vars = self.vars();
        vars.all().into_iter().enumerate().all(|(i, v)| {
            let gen = self.relation.normal_form(&MultiPoly::<C>::var(vars, v));
            let there = self.relation.normal_form(&inv[i].compose(&self.images));
            let back = self.relation.normal_form(&self.images[i].compose(inv));
            there == gen && back == gen
        })
    }

    /// Ideal preservation, plus a two-sided inverse when one is listed.
    pub fn verify(&self) -> Result<(), DerivationError> {
        if !self.preserves_ideal() {
            return Err(DerivationError::NotIdealPreserving);
        }
        if self.inverse.is_some() && !self.inverse_is_two_sided() {
            return Err(DerivationError::BadInverse);
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        let vars = self.vars();
        vars.all().into_iter().enumerate().all(|(i, v)| self.images[i] == self.relation.normal_form(&MultiPoly::var(vars, v)))
    }
}

/// Σ_k h^k ∂^k(g) / k!, stopping at the first zero term.
fn taylor(der: &Derivation, h: &MultiPoly, g: &MultiPoly, cap: u32) -> Result<MultiPoly, DerivationError> {
    let rel = &der.relation;
    let mut out = rel.normal_form(g);
    let mut term = out.clone();
    let mut hk = MultiPoly::one(g.vars());
    for k in 1..=cap {
        term = der.apply(&term);
        if term.is_zero() {
            return Ok(out);
        }
        hk = hk.mul(h);
        let piece = term.mul(&hk).scale(&(Rat::one() / factorial(k)));
        out = rel.normal_form(&out.add(&piece));
    }
    Err(DerivationError::TaylorCap(cap))
}

/// exp(h·∂) for h in the kernel of the canonical LND, with inverse exp(−h·∂).
pub fn exp_replica(spec: &VarietySpec, h: &MultiPoly) -> Result<GeneratorMap, DerivationError> {
    let der = canonical_lnd(spec)?;
    let vars = spec.vars();
    if h.vars() != vars {
        return Err(DerivationError::ContextMismatch);
    }
    let lead = spec.lead.expect("canonical LND exists");
    for v in [lead, Var::Z] {
        if h.contains(v) {
            return Err(DerivationError::NotInKernel(vars.name(v)));
        }
    }
    let cap = spec.d + spec.weights.iter().sum::<u32>() + 8;
    let gens: Vec<MultiPoly> = vars.all().into_iter().map(|v| MultiPoly::var(vars, v)).collect();
    let fwd = gens.iter().map(|g| taylor(&der, h, g, cap)).collect::<Result<Vec<_>, _>>()?;
    let neg = h.neg();
    let back = gens.iter().map(|g| taylor(&der, &neg, g, cap)).collect::<Result<Vec<_>, _>>()?;
    GeneratorMap::new(spec.relation(), fwd, Some(back))
}

/// Weighted degree of a monomial.
fn weight_of(e: &[u32], w: &[i64]) -> i64 {
    e.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum()
}

/// Graded components ∂ = Σ ∂_i for a grading given by one weight per generator.
pub fn homogeneous_decompose(der: &Derivation, weights: &[i64]) -> Result<Vec<(i64, Derivation)>, DerivationError> {
    let vars = der.vars();
    if weights.len() != vars.len() {
        return Err(DerivationError::ContextMismatch);
    }
    let f = der.relation.defining_poly();
    let mut ws = f.terms().keys().map(|e| weight_of(e, weights));
    if let Some(first) = ws.next() {
        if ws.any(|w| w != first) {
            return Err(DerivationError::NotGrading);
        }
    }
    let mut parts: BTreeMap<i64, Vec<MultiPoly>> = BTreeMap::new();
    for (i, img) in der.images.iter().enumerate() {
        for (e, c) in img.terms() {
            let deg = weight_of(e, weights) - weights[i];
            let slot = parts.entry(deg).or_insert_with(|| vec![MultiPoly::zero(vars); vars.len()]);
            slot[i].add_term(e.clone(), c.clone());
        }
    }
    parts.into_iter().map(|(deg, images)| Ok((deg, Derivation::new(der.relation.clone(), images)?))).collect()
}

/// Filtration weight d·deg_lead + deg_z of a normal-form monomial.
fn filtration_weight(spec: &VarietySpec, e: &[u32]) -> u32 {
    let vars = spec.vars();
    let lead = spec.lead.expect("filtration needs a unit-weight coordinate");
    spec.d * e[vars.index(lead)] + e[vars.index(Var::Z)]
}

/// p with ∂̃^p(f) ≠ 0 = ∂̃^{p+1}(f).
pub fn tilde_degree(spec: &VarietySpec, f: &MultiPoly) -> Result<u32, DerivationError> {
    let der = canonical_lnd(spec)?;
    let nf = der.relation.normal_form(f);
    if nf.is_zero() {
        return Err(DerivationError::ZeroPolynomial);
    }
    let bound = spec.d * nf.total_degree() + 2;
    Ok(nilpotency_index(&der, &nf, bound)? - 1)
}

/// Image of f in the associated graded algebra K[x, y, z]/(x·M(y) − z^d): the top-filtration part.
pub fn gr_leading_form(spec: &VarietySpec, f: &MultiPoly) -> Result<MultiPoly, DerivationError> {
    if spec.lead.is_none() {
        return Err(DerivationError::NoCanonicalLnd("no unit-weight coordinate; the variety is rigid".into()));
    }
    let nf = spec.relation().normal_form(f);
    let top = nf.terms().keys().map(|e| filtration_weight(spec, e)).max().ok_or(DerivationError::ZeroPolynomial)?;
    Ok(MultiPoly::from_terms(nf.vars(), nf.terms().iter().filter(|(e, _)| filtration_weight(spec, e) == top).map(|(e, c)| (e.clone(), c.clone()))))
}

/// The relation of the associated graded algebra.
pub fn graded_relation(spec: &VarietySpec) -> Option<Relation> {
    spec.relation().graded()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::varieties::{classify, normalize, RawPresentation};

    fn spec(w: &[u32], x: bool, p: &str) -> VarietySpec {
        let vars = Vars::new(w.len(), x);
        normalize(&classify(&RawPresentation { weights: w.to_vec(), x_present: x, p: parse_poly(p, vars).unwrap() }).unwrap()).unwrap()
    }

    fn e4() -> VarietySpec {
        spec(&[2, 2], true, "z^3+z+y1-y2")
    }

    fn pp(s: &VarietySpec, t: &str) -> MultiPoly {
        parse_poly(t, s.vars()).unwrap()
    }

    #[test]
    fn canonical_lnd_examples() {
        let s = e4();
        let d = canonical_lnd(&s).unwrap();
        assert_eq!(d.apply(&pp(&s, "z")), pp(&s, "y1^2*y2^2"));
        assert!(d.apply(&pp(&s, "y1")).is_zero());
        assert_eq!(d.apply(&pp(&s, "x")), pp(&s, "3*z^2+1"));
        let e2 = spec(&[2], true, "z^3+(y+1)*z+1");
        let d = canonical_lnd(&e2).unwrap();
        assert_eq!(d.image(Var::Z), &pp(&e2, "y^2"));
        assert_eq!(d.image(Var::X), &pp(&e2, "3*z^2+y+1"));
        let s = spec(&[2], true, "z^2");
        assert_eq!(canonical_lnd(&s).unwrap().image(Var::X), &pp(&s, "2*z"));
        let s = spec(&[2, 2, 3], true, "z^2+y1^2*y2^3*y3^4+y3^3+1");
        let d = canonical_lnd(&s).unwrap();
        assert_eq!(d.image(Var::Z), &pp(&s, "y1^2*y2^2*y3^3"));
        assert_eq!(d.image(Var::X), &pp(&s, "2*z"));
        assert!(canonical_lnd(&spec(&[2, 3], false, "z^4+z")).is_err());
    }

    #[test]
    fn nilpotency_examples() {
        let s = e4();
        let d = canonical_lnd(&s).unwrap();
        assert_eq!(nilpotency_index(&d, &pp(&s, "y1"), 10).unwrap(), 1);
        assert_eq!(nilpotency_index(&d, &pp(&s, "z"), 10).unwrap(), 2);
        assert_eq!(nilpotency_index(&d, &pp(&s, "x"), 10).unwrap(), 4);
        assert_eq!(nilpotency_index(&d, &pp(&s, "x"), 2), Err(DerivationError::BoundExceeded(2)));
    }

    #[test]
    fn exp_replica_examples() {
        let s = e4();
        let h = pp(&s, "y1");
        let phi = exp_replica(&s, &h).unwrap();
        let m = "(y1^2*y2^2)";
        let hx = format!("x+(3*z^2+1)*({h})+3*z*{m}*({h})^2+{m}^2*({h})^3", h = "y1", m = m);
        assert_eq!(phi.image(Var::X), &s.relation().normal_form(&pp(&s, &hx)));
        assert_eq!(phi.image(Var::Z), &pp(&s, "z+y1^3*y2^2"));
        phi.verify().unwrap();
        assert!(exp_replica(&s, &MultiPoly::zero(s.vars())).unwrap().is_identity());
        assert!(matches!(exp_replica(&s, &pp(&s, "z")), Err(DerivationError::NotInKernel(_))));

        let e2 = spec(&[2], true, "z^3+(y+1)*z+1");
        let phi = exp_replica(&e2, &pp(&e2, "y")).unwrap();
        assert_eq!(phi.image(Var::Z), &pp(&e2, "z+y^3"));
        let hx = e2.relation().normal_form(&pp(&e2, "x+(3*z^2+y+1)*y+3*z*y^2*y^2+y^4*y^3"));
        assert_eq!(phi.image(Var::X), &hx);
        phi.verify().unwrap();
    }

    #[test]
    fn homogeneous_decompose_examples() {
        let s = spec(&[2], true, "z^3");
        let d = canonical_lnd(&s).unwrap();
        let vars = s.vars();
        let mut w = vec![0; vars.len()];
        w[vars.index(Var::X)] = 7;
        w[vars.index(Var::Z)] = 3;
        w[vars.index(Var::Y(0))] = 1;
        let parts = homogeneous_decompose(&d, &w).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, -1);
        assert!(homogeneous_decompose(&Derivation::zero(s.relation()), &w).unwrap().is_empty());
        w[vars.index(Var::X)] = 1;
        assert_eq!(homogeneous_decompose(&d, &w), Err(DerivationError::NotGrading));
    }

    #[test]
    fn two_components_split_by_degree() {
        // On the y1-line-times-plane with no relation involving z, ∂(z) = y1 + y1² is a derivation.
        let s = spec(&[2, 2], true, "z^2");
        let vars = s.vars();
        let mut images = vec![MultiPoly::zero(vars); vars.len()];
        images[vars.index(Var::Z)] = pp(&s, "y1^2*y2^2+y1^3*y2^2");
        images[vars.index(Var::X)] = pp(&s, "2*z+2*z*y1");
        let d = Derivation::new(s.relation(), images).unwrap();
        let mut w = vec![0; vars.len()];
        w[vars.index(Var::Y(0))] = 1;
        w[vars.index(Var::X)] = -2;
        let parts = homogeneous_decompose(&d, &w).unwrap();
        assert_eq!(parts.iter().map(|p| p.0).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn tilde_degree_and_gr_examples() {
        let s = e4();
        assert_eq!(tilde_degree(&s, &pp(&s, "y1*y2")).unwrap(), 0);
        assert_eq!(tilde_degree(&s, &pp(&s, "z")).unwrap(), 1);
        assert_eq!(tilde_degree(&s, &pp(&s, "x")).unwrap(), 3);
        assert_eq!(tilde_degree(&s, &MultiPoly::zero(s.vars())), Err(DerivationError::ZeroPolynomial));
        assert_eq!(gr_leading_form(&s, &pp(&s, "z+y1")).unwrap(), pp(&s, "z"));
        assert_eq!(gr_leading_form(&s, &pp(&s, "y1")).unwrap(), pp(&s, "y1"));
        assert_eq!(gr_leading_form(&s, &pp(&s, "z*(z+y1)")).unwrap(), pp(&s, "z^2"));
    }
}
