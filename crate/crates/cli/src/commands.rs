//! Subcommand implementations. Each returns a serializable result; `lib.rs` renders it.

use crate::report::{build_report, derivation_images, element_record, finite_part_record, ImageRecord, InvariantsRecord, PowerRecord, ReportContext, ReportFile};
use crate::spec_file::{SpecError, SpecFile};
use autvar::algebra::{parse_poly, AlgebraError, Coeff, CycElem, MultiPoly, Rat, RootScalar, Var};
use autvar::autgroup::{aut_structure, canonical_group, enumerate_finite_part, radical_warning, verify_automorphism, AutError, GroupElement};
use autvar::derivations::{canonical_lnd, exp_replica, gr_leading_form, graded_relation, tilde_degree, DerivationError, GeneratorMap};
use autvar::varieties::{
    classify, genus, irreducibility, ml_invariant, normalize, reducible_components, regime_of, rigidity, component_product, Irreducibility, Regime, VarietyError,
    VarietySpec,
};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl CliError {
    /// 2 for presentations outside the supported regimes, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Unsupported(_) | CliError::Variety(VarietyError::Unsupported(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub max_enum_order: Option<u64>,
    pub no_normalize: bool,
}

/// A loaded spec: the presentation as given and its normalized form.
#[derive(Clone, Debug)]
pub struct Session {
    pub file: SpecFile,
    pub original: VarietySpec,
    pub spec: VarietySpec,
    pub bound: u64,
}

pub fn read_spec(path: &Path) -> Result<SpecFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    Ok(SpecFile::from_json(&text)?)
}

impl Session {
    pub fn load(path: &Path, flags: &Flags) -> Result<Self, CliError> {
        Self::from_file(read_spec(path)?, flags)
    }

    pub fn from_file(file: SpecFile, flags: &Flags) -> Result<Self, CliError> {
        let raw = file.to_raw()?;
        if let (Regime::Unsupported, Some(why)) = regime_of(&raw)? {
            return Err(CliError::Unsupported(why));
        }
        let original = classify(&raw)?;
        let spec = if original.is_normalized() {
            original.clone()
        } else if flags.no_normalize || !file.options.normalize {
            return Err(CliError::Invalid(format!(
                "invalid spec: the z^{} coefficient of P must vanish when normalization is disabled",
                original.d - 1
            )));
        } else {
            normalize(&original)?
        };
        let bound = flags.max_enum_order.unwrap_or(file.options.enum_order_bound);
        Ok(Session { file, original, spec, bound })
    }

    fn shifted(&self) -> bool {
        self.spec.z_shift.is_some()
    }

    /// Parses a polynomial in the original coordinates.
    pub fn parse(&self, text: &str) -> Result<MultiPoly, CliError> {
        Ok(parse_poly(text, self.spec.vars())?)
    }

    fn to_normalized<C: Coeff>(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        self.spec.to_normalized(f)
    }

    fn to_original<C: Coeff>(&self, f: &MultiPoly<C>) -> MultiPoly<C> {
        self.original.relation().normal_form(&self.spec.to_original(f))
    }

    /// Conjugates a map on the normalized presentation to the original coordinates.
    pub fn pull_back<C: Coeff>(&self, phi: &GeneratorMap<C>) -> Result<GeneratorMap<C>, CliError> {
        if !self.shifted() {
            return Ok(phi.clone());
        }
        let vars = self.spec.vars();
        let conj = |m: &GeneratorMap<C>| -> Vec<MultiPoly<C>> {
            vars.all().into_iter().map(|v| self.to_original(&m.apply(&self.to_normalized(&MultiPoly::var(vars, v))))).collect()
        };
        let fwd = conj(phi);
        let back = phi.inverse_map().map(|inv| conj(&inv));
        Ok(GeneratorMap::new(self.original.relation(), fwd, back)?)
    }

    pub fn invariants(&self) -> Result<InvariantsRecord, CliError> {
        let spec = &self.spec;
        let reducible_power = match irreducibility(spec)? {
            Irreducibility::Irreducible => None,
            Irreducibility::Reducible { l, q } => Some(PowerRecord { l, q: q.to_string() }),
        };
        let (rigid, rigidity_reason) = match rigidity(spec) {
            Ok(r) => (r.rigid, r.reason),
            Err(_) if spec.regime == Regime::Degenerate => (false, "isomorphic to the affine line".into()),
            Err(_) => (false, "the canonical LND is nonzero".into()),
        };
        let genus = match (spec.regime, spec.m(), spec.p_in_z()) {
            (Regime::LineSuspensionAllGe2, 1, Some(pz)) => genus(spec.weights[0], &pz).ok(),
            _ => None,
        };
        let vars = spec.vars();
        Ok(InvariantsRecord {
            irreducible: reducible_power.is_none(),
            reducible_power,
            rigid,
            rigidity_reason,
            genus,
            ml_generators: ml_invariant(spec).into_iter().map(|v| vars.name(v)).collect(),
        })
    }
}

// ---------------------------------------------------------------------------
// analyze

pub fn analyze(s: &Session) -> Result<ReportFile, CliError> {
    let report = aut_structure(&s.spec, s.bound)?;
    let lnd = canonical_lnd(&s.spec).ok();
    let finite_part = enumerate_finite_part(&report, s.bound).ok().map(|f| finite_part_record(&f));
    let mut extra = Vec::new();
    if s.shifted() {
        extra.push("P was normalized by shifting z; groups, generators and derivations are given in the normalized coordinates".into());
    }
    let ctx = ReportContext {
        vars: s.spec.vars(),
        equation: s.original.equation(),
        z_shift: s.spec.z_shift.as_ref().map(|c| c.to_string()),
        invariants: s.invariants()?,
        lnd: lnd.as_ref(),
        finite_part,
        extra_warnings: extra,
    };
    Ok(build_report(&report, ctx))
}

// ---------------------------------------------------------------------------
// exp / apply

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapListing {
    pub map: String,
    pub images: Vec<ImageRecord>,
    pub inverse: Vec<ImageRecord>,
    pub verified: bool,
    pub warnings: Vec<String>,
}

fn image_records<C: Coeff>(imgs: &[MultiPoly<C>]) -> Vec<ImageRecord> {
    imgs.iter()
        .enumerate()
        .map(|(i, p)| {
            let vars = p.vars();
            ImageRecord { var: vars.name(vars.var(i)), image: p.to_string() }
        })
        .collect()
}

pub fn listing<C: Coeff>(s: &Session, name: String, phi: &GeneratorMap<C>, warnings: Vec<String>) -> MapListing {
    MapListing {
        map: name,
        images: image_records(phi.images()),
        inverse: phi.inverse_images().map(image_records).unwrap_or_default(),
        verified: verify_automorphism(&s.original, phi),
        warnings,
    }
}

/// exp(h·∂) on the normalized presentation.
fn exp_normalized(s: &Session, h: &MultiPoly) -> Result<GeneratorMap, CliError> {
    let vars = s.spec.vars();
    if let Some(v) = s.spec.lead.into_iter().chain([Var::Z]).find(|&v| h.contains(v)) {
        return Err(CliError::Invalid(format!("h must lie in the kernel of the canonical LND; it involves {}", vars.name(v))));
    }
    Ok(exp_replica(&s.spec, h)?)
}

pub fn exp(s: &Session, h_text: &str) -> Result<MapListing, CliError> {
    let h = s.parse(h_text)?;
    let phi = s.pull_back(&exp_normalized(s, &h)?)?;
    let warnings = radical_warning(&s.spec).into_iter().collect();
    Ok(listing(s, format!("exp(({})·∂)", h), &phi, warnings))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplyResult {
    pub map: String,
    pub f: String,
    pub result: String,
    pub verified: bool,
}

fn lift_map(phi: &GeneratorMap) -> Result<GeneratorMap<CycElem>, CliError> {
    let fwd = phi.images().iter().map(|p| p.lift()).collect();
    let back = phi.inverse_images().map(|v| v.iter().map(|p| p.lift()).collect());
    Ok(GeneratorMap::new(phi.relation().clone(), fwd, back)?)
}

fn unknown(target: &str) -> CliError {
    CliError::Invalid(format!("unknown element identifier {:?}", target))
}

/// Resolves `target` to a map in original coordinates, plus a display name.
///
/// Accepted forms: `identity`, `exp:<h>`, `G[i]` (1-based, from the enumerated 𝔾),
/// an element tuple such as `((12), -1, -1, 1)`, a generator id from the report,
/// or an inline map `y1 -> -y2, y2 -> -y1 [| inverse assignments]`.
pub fn resolve_target(s: &Session, target: &str) -> Result<(String, GeneratorMap<CycElem>), CliError> {
    let t = target.trim();
    if t == "id" || t == "identity" {
        return Ok(("identity".into(), GeneratorMap::identity(s.original.relation())));
    }
    if let Some(h) = t.strip_prefix("exp:") {
        let h = s.parse(h)?;
        return Ok((format!("exp(({})·∂)", h), s.pull_back(&lift_map(&exp_normalized(s, &h)?)?)?));
    }
    if t.contains("->") || t.contains('=') {
        return Ok((t.to_string(), s.pull_back(&inline_map(s, t)?)?));
    }
    if t.starts_with('(') {
        let g = parse_element(s, t)?;
        let names = y_names(&s.spec);
        let phi = g.to_map(&s.spec)?;
        return Ok((g.label(&names), s.pull_back(&phi)?));
    }
    if let Some(idx) = t.strip_prefix("G[").and_then(|r| r.strip_suffix(']')) {
        let i: usize = idx.parse().map_err(|_| unknown(t))?;
        let g = canonical_group(&s.spec, s.bound)?;
        let elems = g.elements.ok_or_else(|| CliError::Invalid(format!("𝔾 is not enumerated (infinite or larger than {})", s.bound)))?;
        let e = i.checked_sub(1).and_then(|i| elems.get(i)).ok_or_else(|| unknown(t))?;
        return Ok((e.label(&g.y_names), s.pull_back(&e.to_map(&s.spec)?)?));
    }
    let report = aut_structure(&s.spec, s.bound)?;
    let gen = report.generators.iter().find(|g| g.id == t).ok_or_else(|| unknown(t))?;
    let phi = gen.to_maps(&s.spec)?.into_iter().next().ok_or_else(|| unknown(t))?;
    Ok((format!("{} ({})", gen.id, gen.description), s.pull_back(&phi)?))
}

pub fn apply(s: &Session, target: &str, f_text: &str) -> Result<ApplyResult, CliError> {
    let (name, phi) = resolve_target(s, target)?;
    if !verify_automorphism(&s.original, &phi) {
        return Err(CliError::Invalid(format!("{} fails verify_automorphism", name)));
    }
    let f = s.parse(f_text)?;
    let result = phi.apply(&f.lift());
    Ok(ApplyResult { map: name, f: f.to_string(), result: result.to_string(), verified: true })
}

fn y_names(spec: &VarietySpec) -> Vec<usize> {
    spec.weighted_ys().into_iter().map(|i| i + 1).collect()
}

fn parse_scalar(text: &str) -> Option<RootScalar> {
    let t = text.trim();
    if let Some(r) = autvar::algebra::rat::parse_rat(t) {
        return RootScalar::from_rat(&r);
    }
    let (mult, root) = match t.split_once('·').or_else(|| t.split_once('*')) {
        Some((m, r)) => (autvar::algebra::rat::parse_rat(m)?, r.trim()),
        None => (Rat::from_integer(1.into()), t),
    };
    let (n, a) = root.strip_prefix('ζ').or_else(|| root.strip_prefix("zeta"))?.split_once('^')?;
    let base = RootScalar::from_rat(&mult)?;
    Some(base.mul(&RootScalar::zeta(n.trim().parse().ok()?, a.trim().parse().ok()?)))
}

/// Parses "(σ, t1, …, tz)" with σ as "id" or cycles like "(12)", "(1,2)" or "(1 2)".
fn parse_element(s: &Session, text: &str) -> Result<GroupElement, CliError> {
    let bad = || CliError::Invalid(format!("cannot parse element {:?}; expected (σ, t1, …, tz)", text));
    let inner = text.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?.trim();
    let names = y_names(&s.spec);
    let n = names.len();
    let mut sigma: Vec<usize> = (0..n).collect();
    let rest = if let Some(r) = inner.strip_prefix("id") {
        r
    } else {
        let mut r = inner;
        while let Some(body) = r.strip_prefix('(') {
            let close = body.find(')').ok_or_else(bad)?;
            let cycle = &body[..close];
            let labels: Vec<usize> = if cycle.contains(',') || cycle.contains(' ') {
                cycle.split([',', ' ']).filter(|p| !p.is_empty()).map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
            } else {
                cycle.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
            };
            let pos: Vec<usize> = labels
                .iter()
                .map(|l| names.iter().position(|x| x == l).ok_or_else(|| CliError::Invalid(format!("y{} is not a permuted coordinate", l))))
                .collect::<Result<_, _>>()?;
            for w in 0..pos.len() {
                sigma[pos[w]] = pos[(w + 1) % pos.len()];
            }
            r = body[close + 1..].trim_start();
        }
        r
    };
    let scalars: Vec<RootScalar> = rest.trim_start().strip_prefix(',').ok_or_else(bad)?.split(',').map(|p| parse_scalar(p).ok_or_else(bad)).collect::<Result<_, _>>()?;
    if scalars.len() != n + 1 {
        return Err(CliError::Invalid(format!("element needs {} scalars (permuted y's, then z), got {}", n + 1, scalars.len())));
    }
    let mut seen = sigma.clone();
    seen.sort_unstable();
    if seen != (0..n).collect::<Vec<_>>() {
        return Err(bad());
    }
    Ok(GroupElement { sigma, t: scalars })
}

fn parse_assignments(s: &Session, text: &str) -> Result<Vec<MultiPoly<CycElem>>, CliError> {
    let vars = s.spec.vars();
    let mut images: Vec<MultiPoly<CycElem>> = vars.all().into_iter().map(|v| s.to_normalized(&MultiPoly::var(vars, v))).collect();
    for part in text.split([',', ';']).map(str::trim).filter(|p| !p.is_empty()) {
        let (lhs, rhs) = part.split_once("->").or_else(|| part.split_once('=')).ok_or_else(|| CliError::Invalid(format!("expected v -> image, got {:?}", part)))?;
        let v = parse_poly(lhs.trim(), vars)?;
        let var = vars.all().into_iter().find(|&w| v == MultiPoly::var(vars, w)).ok_or_else(|| CliError::Invalid(format!("{:?} is not a coordinate", lhs.trim())))?;
        images[vars.index(var)] = s.to_normalized(&parse_poly(rhs.trim(), vars)?).lift();
    }
    Ok(images)
}

/// An inline map on the original coordinates, returned in normalized coordinates.
/// Without an explicit inverse, the inverse is found as φ^{n−1} for the least n ≤ bound with φ^n = id.
fn inline_map(s: &Session, text: &str) -> Result<GeneratorMap<CycElem>, CliError> {
    let (fwd_text, inv_text) = match text.split_once('|') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    let vars = s.spec.vars();
    let to_norm = |imgs: Vec<MultiPoly<CycElem>>| -> Vec<MultiPoly<CycElem>> {
        let m = GeneratorMap::new(s.spec.relation(), imgs, None).expect("one image per generator");
        let orig_z = s.spec.to_original(&MultiPoly::<CycElem>::var(vars, Var::Z));
        vars.all()
            .into_iter()
            .map(|v| {
                let pre = if v == Var::Z { orig_z.clone() } else { MultiPoly::var(vars, v) };
                m.apply(&pre)
            })
            .collect()
    };
    let fwd = to_norm(parse_assignments(s, fwd_text)?);
    let phi = GeneratorMap::new(s.spec.relation(), fwd, None)?;
    let inverse = match inv_text {
        Some(t) => to_norm(parse_assignments(s, t)?),
        None => finite_order_inverse(&phi, s.bound).ok_or_else(|| CliError::Invalid(format!("map fails verify_automorphism: no inverse given and no finite order up to {}", s.bound)))?,
    };
    Ok(GeneratorMap::new(s.spec.relation(), phi.images().to_vec(), Some(inverse))?)
}

fn finite_order_inverse(phi: &GeneratorMap<CycElem>, bound: u64) -> Option<Vec<MultiPoly<CycElem>>> {
    let mut prev = GeneratorMap::identity(phi.relation().clone());
    let mut cur = phi.clone();
    for _ in 0..bound.min(720) {
        if cur.is_identity() {
            return Some(prev.images().to_vec());
        }
        if cur.images().iter().any(|p| p.total_degree() > 64) {
            return None;
        }
        prev = cur.clone();
        cur = phi.compose(&cur);
    }
    None
}

// ---------------------------------------------------------------------------
// degree / gr

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub f: String,
    pub degree: u32,
}

pub fn degree(s: &Session, f_text: &str) -> Result<DegreeResult, CliError> {
    let f = s.parse(f_text)?;
    let degree = tilde_degree(&s.spec, &s.to_normalized(&f)).map_err(nonzero)?;
    Ok(DegreeResult { f: f.to_string(), degree })
}

fn nonzero(e: DerivationError) -> CliError {
    match e {
        DerivationError::ZeroPolynomial => CliError::Invalid("f is zero in the coordinate ring".into()),
        e => e.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrResult {
    pub f: String,
    pub leading_form: String,
    pub graded_relation: Option<String>,
    /// Whether `leading_form` is written in normalized coordinates.
    pub normalized_coordinates: bool,
}

pub fn gr(s: &Session, f_text: &str) -> Result<GrResult, CliError> {
    let f = s.parse(f_text)?;
    let lf = gr_leading_form(&s.spec, &s.to_normalized(&f)).map_err(nonzero)?;
    Ok(GrResult {
        f: f.to_string(),
        leading_form: lf.to_string(),
        graded_relation: graded_relation(&s.spec).map(|r| format!("{} = 0", r.defining_poly())),
        normalized_coordinates: s.shifted(),
    })
}

// ---------------------------------------------------------------------------
// irreducible / genus

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleResult {
    pub irreducible: bool,
    pub l: Option<u32>,
    pub q: Option<String>,
    /// W − ζ_l^j·Q for j = 0…l−1, W = Π y_i^{k_i/l}.
    pub components: Vec<String>,
    /// The product of the components equals ± the defining polynomial.
    pub product_verified: Option<bool>,
}

pub fn irreducible(s: &Session) -> Result<IrreducibleResult, CliError> {
    Ok(match irreducibility(&s.spec)? {
        Irreducibility::Irreducible => IrreducibleResult { irreducible: true, l: None, q: None, components: Vec::new(), product_verified: None },
        Irreducibility::Reducible { l, q } => {
            let parts = reducible_components(&s.spec, l, &q);
            let f: MultiPoly<CycElem> = s.spec.defining_poly().lift();
            let prod = component_product(&parts);
            let ok = prod.as_ref().is_some_and(|p| *p == f || *p == f.neg());
            IrreducibleResult { irreducible: false, l: Some(l), q: Some(q.to_string()), components: parts.iter().map(|p| p.to_string()).collect(), product_verified: Some(ok) }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusResult {
    pub k: u32,
    pub p: String,
    pub genus: u64,
}

pub fn genus_of(s: &Session) -> Result<GenusResult, CliError> {
    let spec = &s.spec;
    let pz = match (spec.regime, spec.m()) {
        (Regime::LineSuspensionAllGe2, 1) => spec.p_in_z().expect("constant coefficients"),
        _ => return Err(CliError::Invalid("genus is defined for curves y^k = P(z) with k ≥ 2".into())),
    };
    let k = spec.weights[0];
    let g = genus(k, &pz)?;
    Ok(GenusResult { k, p: pz.to_string(), genus: g })
}

/// Images as display strings, for tests and listings.
pub fn images_of(phi: &GeneratorMap<CycElem>) -> Vec<ImageRecord> {
    image_records(phi.images())
}

pub fn element_listing(s: &Session) -> Result<Vec<crate::report::ElementRecord>, CliError> {
    let g = canonical_group(&s.spec, s.bound)?;
    Ok(g.elements.unwrap_or_default().iter().enumerate().map(|(i, e)| element_record(format!("G[{}]", i + 1), e, &g.y_names)).collect())
}

pub fn derivation_listing(s: &Session) -> Result<Vec<ImageRecord>, CliError> {
    Ok(derivation_images(&canonical_lnd(&s.spec)?))
}
