//! Assembling the automorphism-group report from quasitori, symmetric groups, 𝔾, and 𝕌(∂).

use super::canonical::{canonical_group, cycles, one_param_sample, CanonicalGroup, GroupElement};
use super::finite::FiniteGroupTable;
use super::{is_hyperbolic_case, verdicts, AutError, Verdicts};
use crate::algebra::rat::lcm_u64;
use crate::algebra::{CycElem, MultiPoly, Rat, RootScalar, Var};
use crate::derivations::{exp_replica, GeneratorMap};
use crate::lattice::{solve_torus_system, DiagGroupType, DiagSubgroup};
use crate::varieties::{
    additional_quasitorus, irreducibility, proper_quasitorus, symmetric_group, torus_coords, AdditionalQuasitorus, QuasitorusData, Regime, SymGroupData, TorusGen,
    VarietySpec,
};
use num_traits::One;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Leaf {
    Diag(DiagGroupType),
    Sym(SymGroupData),
    Unipotent(String),
    Canonical { description: String, trivial: bool },
    Family(String),
}

impl Leaf {
    fn is_trivial(&self) -> bool {
        match self {
            Leaf::Diag(t) => t.is_trivial(),
            Leaf::Sym(s) => s.is_trivial(),
            Leaf::Canonical { trivial, .. } => *trivial,
            Leaf::Unipotent(_) | Leaf::Family(_) => false,
        }
    }

    fn value(&self) -> String {
        match self {
            Leaf::Diag(t) => t.to_string(),
            Leaf::Sym(s) => s.to_string(),
            Leaf::Unipotent(s) | Leaf::Family(s) => s.clone(),
            Leaf::Canonical { description, .. } => description.clone(),
        }
    }
}

/// Expression tree over semidirect (left factor acting on the right one), direct, and quotient nodes.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Leaf { label: String, leaf: Leaf },
    Semidirect(Box<Structure>, Box<Structure>),
    Direct(Vec<Structure>),
    Quotient { num: Box<Structure>, den: Box<Structure>, value: DiagGroupType },
}

impl Structure {
    pub fn leaf(label: &str, leaf: Leaf) -> Self {
        Structure::Leaf { label: label.into(), leaf }
    }

    /// a ⋉ b, dropping a trivial factor.
    pub fn semidirect(a: Structure, b: Structure) -> Self {
        if a.is_trivial() {
            b
        } else if b.is_trivial() {
            a
        } else {
            Structure::Semidirect(Box::new(a), Box::new(b))
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Structure::Leaf { leaf, .. } => leaf.is_trivial(),
            Structure::Semidirect(a, b) => a.is_trivial() && b.is_trivial(),
            Structure::Direct(v) => v.iter().all(|s| s.is_trivial()),
            Structure::Quotient { value, .. } => value.is_trivial(),
        }
    }

    /// The isomorphism type when the whole group is diagonalizable.
    pub fn diag_value(&self) -> Option<DiagGroupType> {
        match self {
            Structure::Leaf { leaf: Leaf::Diag(t), .. } => Some(t.clone()),
            Structure::Quotient { value, .. } => Some(value.clone()),
            Structure::Direct(v) => v.iter().try_fold(DiagGroupType::trivial(), |acc, s| Some(acc.product(&s.diag_value()?))),
            _ => None,
        }
    }

    fn compound(&self) -> bool {
        !matches!(self, Structure::Leaf { .. }) && self.diag_value().is_none()
    }

    /// Rendering with group names (ℍ, 𝔻̄, S(Y), …).
    pub fn formal(&self) -> String {
        match self {
            Structure::Leaf { label, .. } => label.clone(),
            Structure::Semidirect(a, b) => format!("{} ⋉ {}", paren_formal(a), paren_formal(b)),
            Structure::Direct(v) => v.iter().map(|s| s.formal()).collect::<Vec<_>>().join(" × "),
            Structure::Quotient { num, den, .. } => format!("({})/({})", num.formal(), den.formal()),
        }
    }

    /// Rendering with concrete isomorphism types.
    pub fn evaluated(&self) -> String {
        if let Some(t) = self.diag_value() {
            return t.to_string();
        }
        match self {
            Structure::Leaf { leaf, .. } => leaf.value(),
            Structure::Semidirect(a, b) => format!("{} ⋉ {}", paren_eval(a), paren_eval(b)),
            Structure::Direct(v) => v.iter().map(paren_eval).collect::<Vec<_>>().join(" × "),
            Structure::Quotient { value, .. } => value.to_string(),
        }
    }
}

fn paren_formal(s: &Structure) -> String {
    match s {
        Structure::Leaf { .. } => s.formal(),
        _ => format!("({})", s.formal()),
    }
}

fn paren_eval(s: &Structure) -> String {
    let e = s.evaluated();
    let needs = s.compound() || (s.diag_value().is_some() && e.contains(" × ")) || matches!(s, Structure::Leaf { leaf: Leaf::Canonical { .. }, .. } if e.contains(' '));
    if needs {
        format!("({})", e)
    } else {
        e
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.evaluated())
    }
}

/// How a listed generator acts; `to_maps` turns it into concrete automorphisms.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorAction {
    /// Finite-order diagonal element on `coords`; a unit-weight coordinate is rescaled to compensate.
    Diagonal { coords: Vec<Var>, scalars: Vec<RootScalar> },
    /// τ ↦ diag(τ^w) on `coords`.
    OneParameter { coords: Vec<Var>, weights: Vec<i64> },
    /// y_i ↦ y_{σ(i)} over all y's.
    Permutation { sigma: Vec<usize> },
    /// An element (σ, t) of the canonical group.
    Canonical(GroupElement),
    /// exp(h·∂) for h in the Makar-Limanov invariant.
    Unipotent,
    /// y ↦ a·y + b·z, z ↦ b·y + a·z with a² − b² = 1.
    HyperbolicFamily,
    /// z ↦ a·z + b on a variety isomorphic to the line with coordinate z.
    Affine,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AutGenerator {
    pub id: String,
    pub group: String,
    pub description: String,
    pub action: GeneratorAction,
}

fn rat_scalar(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn cyc_vars(spec: &VarietySpec) -> Vec<MultiPoly<CycElem>> {
    let vars = spec.vars();
    vars.all().into_iter().map(|v| MultiPoly::var(vars, v)).collect()
}

fn diagonal_map(spec: &VarietySpec, coords: &[Var], scalars: &[RootScalar]) -> Result<GeneratorMap<CycElem>, AutError> {
    if spec.lead.is_some() {
        let n = coords.len() - 1;
        return GroupElement { sigma: (0..n).collect(), t: scalars.to_vec() }.to_map(spec);
    }
    let vars = spec.vars();
    let mut fwd = cyc_vars(spec);
    let mut back = cyc_vars(spec);
    for (v, s) in coords.iter().zip(scalars) {
        fwd[vars.index(*v)] = MultiPoly::var(vars, *v).scale(&s.to_cyc());
        back[vars.index(*v)] = MultiPoly::var(vars, *v).scale(&s.inv().to_cyc());
    }
    Ok(GeneratorMap::new(spec.relation(), fwd, Some(back))?)
}

fn lift_map(phi: &GeneratorMap) -> Result<GeneratorMap<CycElem>, AutError> {
    let fwd = phi.images().iter().map(|p| p.lift()).collect();
    let back = phi.inverse_images().map(|v| v.iter().map(|p| p.lift()).collect());
    Ok(GeneratorMap::new(phi.relation().clone(), fwd, back)?)
}

impl AutGenerator {
    /// Concrete automorphisms representing this generator (parameters sampled for families).
    pub fn to_maps(&self, spec: &VarietySpec) -> Result<Vec<GeneratorMap<CycElem>>, AutError> {
        let vars = spec.vars();
        match &self.action {
            GeneratorAction::Diagonal { coords, scalars } => Ok(vec![diagonal_map(spec, coords, scalars)?]),
            GeneratorAction::OneParameter { coords, weights } => [2, 3].iter().map(|&tau| diagonal_map(spec, coords, &one_param_sample(weights, tau))).collect(),
            GeneratorAction::Permutation { sigma } => {
                let mut fwd = cyc_vars(spec);
                let mut back = cyc_vars(spec);
                for (i, &j) in sigma.iter().enumerate() {
                    fwd[vars.index(Var::Y(i))] = MultiPoly::var(vars, Var::Y(j));
                    back[vars.index(Var::Y(j))] = MultiPoly::var(vars, Var::Y(i));
                }
                Ok(vec![GeneratorMap::new(spec.relation(), fwd, Some(back))?])
            }
            GeneratorAction::Canonical(g) => Ok(vec![g.to_map(spec)?]),
            GeneratorAction::Unipotent => {
                let y = spec.weighted_ys().first().map(|&i| MultiPoly::var(vars, Var::Y(i))).unwrap_or_else(|| MultiPoly::one(vars));
                let samples = [MultiPoly::one(vars), y.clone(), y.mul(&y).sub(&MultiPoly::constant(vars, rat_scalar(2, 1)))];
                samples.iter().map(|h| lift_map(&exp_replica(spec, h)?)).collect()
            }
            GeneratorAction::HyperbolicFamily => {
                let (a, b) = (rat_scalar(5, 3), rat_scalar(4, 3));
                let y = MultiPoly::<CycElem>::var(vars, Var::Y(0));
                let z = MultiPoly::<CycElem>::var(vars, Var::Z);
                let mk = |a: &Rat, b: &Rat| {
                    let (ac, bc) = (CycElem::from_rat(a.clone()), CycElem::from_rat(b.clone()));
                    let mut img = cyc_vars(spec);
                    img[vars.index(Var::Y(0))] = y.scale(&ac).add(&z.scale(&bc));
                    img[vars.index(Var::Z)] = y.scale(&bc).add(&z.scale(&ac));
                    img
                };
                Ok(vec![GeneratorMap::new(spec.relation(), mk(&a, &b), Some(mk(&a, &-b.clone())))?])
            }
            GeneratorAction::Affine => {
                let lead = spec.lead.ok_or_else(|| AutError::WrongRegime("affine generators need a unit-weight coordinate".into()))?;
                let z = MultiPoly::<CycElem>::var(vars, Var::Z);
                let mk = |a: Rat, b: Rat| {
                    let zi = z.scale(&CycElem::from_rat(a)).add(&MultiPoly::constant(vars, CycElem::from_rat(b)));
                    let mut img = cyc_vars(spec);
                    img[vars.index(Var::Z)] = zi.clone();
                    let mut sub = cyc_vars(spec);
                    sub[vars.index(Var::Z)] = zi;
                    img[vars.index(lead)] = spec.p.lift::<CycElem>().compose(&sub);
                    img
                };
                let fwd = mk(rat_scalar(2, 1), rat_scalar(1, 1));
                let back = mk(rat_scalar(1, 2), rat_scalar(-1, 2));
                Ok(vec![GeneratorMap::new(spec.relation(), fwd, Some(back))?])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportGroups {
    /// ℍ (all weights ≥ 2) or 𝕋 (a unit weight is present).
    pub proper: QuasitorusData,
    pub additional: Option<AdditionalQuasitorus>,
    pub h_cap_dbar: Option<DiagGroupType>,
    /// (ℍ × 𝔻̄)/(ℍ ∩ 𝔻̄), or 𝕋 × 𝔻.
    pub combined: Option<DiagGroupType>,
    pub symmetric: SymGroupData,
}

#[derive(Clone, Debug)]
pub struct AutReport {
    pub regime: Regime,
    pub equation: String,
    pub groups: ReportGroups,
    pub canonical: Option<CanonicalGroup>,
    pub structure: Structure,
    pub generators: Vec<AutGenerator>,
    pub verdicts: Verdicts,
    pub citations: Vec<String>,
    pub warnings: Vec<String>,
}

fn quasitorus_generators(q: &QuasitorusData, group: &str, out: &mut Vec<AutGenerator>) {
    for (i, g) in q.generators.iter().enumerate() {
        let id = format!("{}.{}", group, i + 1);
        let (description, action) = match g {
            TorusGen::Finite { order, scalars } => (
                format!("diagonal element of order {}", order),
                GeneratorAction::Diagonal { coords: q.coords.clone(), scalars: scalars.clone() },
            ),
            TorusGen::OneParam { weights } => (format!("one-parameter subgroup with weights {:?}", weights), GeneratorAction::OneParameter { coords: q.coords.clone(), weights: weights.clone() }),
        };
        out.push(AutGenerator { id, group: group.into(), description, action });
    }
}

fn transposition_generators(spec: &VarietySpec, sym: &SymGroupData, out: &mut Vec<AutGenerator>) {
    let mut k = 0;
    for block in &sym.blocks {
        for w in block.windows(2) {
            k += 1;
            let mut sigma: Vec<usize> = (0..spec.m()).collect();
            sigma.swap(w[0], w[1]);
            out.push(AutGenerator {
                id: format!("S.{}", k),
                group: "S".into(),
                description: format!("swap y{} and y{}", w[0] + 1, w[1] + 1),
                action: GeneratorAction::Permutation { sigma },
            });
        }
    }
}

fn unipotent_generator(symbol: &str) -> AutGenerator {
    AutGenerator {
        id: "U".into(),
        group: "U".into(),
        description: format!("exp(h·{}) for h in the Makar-Limanov invariant", symbol),
        action: GeneratorAction::Unipotent,
    }
}

/// Warning for presentations where the radical monomial would be mistaken for M(y) in ∂(z).
pub fn radical_warning(spec: &VarietySpec) -> Option<String> {
    let ws = spec.weighted_ys();
    if ws.iter().all(|&i| spec.weights[i] == 1) {
        return None;
    }
    let rad: Vec<String> = ws.iter().map(|&i| format!("y{}", i + 1)).collect();
    Some(format!(
        "the canonical LND has ∂(z) = {}; the variant with ∂(z) = {} does not annihilate the defining relation, so exponential maps built from it are not automorphisms",
        spec.cofactor_poly(),
        rad.join("*")
    ))
}

/// Report for the regimes covered by the structure theorems.
pub fn aut_structure(spec: &VarietySpec, enum_order_bound: u64) -> Result<AutReport, AutError> {
    if !spec.is_normalized() {
        return Err(AutError::NotNormalized);
    }
    let sym = symmetric_group(spec);
    let proper = proper_quasitorus(spec);
    let mut generators = Vec::new();
    let mut warnings = Vec::new();
    let mut citations: Vec<String> = Vec::new();
    let (structure, additional, h_cap_dbar, combined, canonical) = match spec.regime {
        Regime::LineSuspensionAllGe2 => {
            let add = additional_quasitorus(spec)?;
            let h = proper.subgroup.clone().expect("ℍ is a subgroup");
            let dbar: DiagSubgroup = add.dbar.subgroup.clone().expect("𝔻̄ is a subgroup");
            let cap = h.intersect(&dbar)?.group_type();
            let comb = h.join(&dbar)?.group_type();
            quasitorus_generators(&proper, "H", &mut generators);
            quasitorus_generators(&add.dbar, "Dbar", &mut generators);
            transposition_generators(spec, &sym, &mut generators);
            citations.extend(
                ["structure-theorem:line-suspension-weights-ge-2", "corollary:semidirect-proper-and-additional-quasitori", "lemma:proper-quasitorus", "lemma:additional-quasitorus"]
                    .map(String::from),
            );
            if let (Some(v), Some(o)) = (add.v, add.dbar.group.order()) {
                let lcm = lcm_u64(spec.weights[0] as u64, v as u64);
                if o != lcm {
                    warnings.push(format!("𝔻̄ computed from the action image is {}, not ℤ_lcm(k1, v) = ℤ{}", add.dbar.group, crate::lattice::subscript(lcm)));
                }
            }
            warnings.push("𝔻̄ is computed for the reference index y1".into());
            if !irreducibility(spec)?.is_irreducible() {
                warnings.push("the variety is reducible".into());
            }
            let quotient = Structure::Quotient {
                num: Box::new(Structure::Direct(vec![Structure::leaf("ℍ", Leaf::Diag(proper.group.clone())), Structure::leaf("𝔻̄", Leaf::Diag(add.dbar.group.clone()))])),
                den: Box::new(Structure::leaf("ℍ∩𝔻̄", Leaf::Diag(cap.clone()))),
                value: comb.clone(),
            };
            let st = if is_hyperbolic_case(spec) {
                generators.push(AutGenerator {
                    id: "family".into(),
                    group: "family".into(),
                    description: "y1 ↦ a·y1 + b·z, z ↦ b·y1 + a·z with a² − b² = 1".into(),
                    action: GeneratorAction::HyperbolicFamily,
                });
                citations.push("structure-theorem:line-suspension-weights-ge-2:hyperbolic-family".into());
                warnings.push("y1^2 = z^2 + c: Aut contains the family a² − b² = 1 and is not commutative (for c ≠ 0 the curve is 𝕂^× and Aut ≅ 𝕂^× ⋊ ℤ₂)".into());
                if spec.s(0).is_zero() {
                    warnings.push("V(y1^2 − z^2) is a pair of lines and lies outside the structure theorems".into());
                }
                Structure::leaf("⟨(ℍ×𝔻̄)/(ℍ∩𝔻̄), {a²−b²=1}⟩", Leaf::Family("𝕂^× ⋊ ℤ₂".into()))
            } else {
                Structure::semidirect(Structure::leaf("S(Y)", Leaf::Sym(sym.clone())), quotient)
            };
            (st, Some(add), Some(cap), Some(comb), None)
        }
        Regime::LineSuspensionOneUnit => {
            let add = additional_quasitorus(spec)?;
            let t = proper.subgroup.clone().expect("𝕋 is a subgroup");
            let dsub = add.d.subgroup.clone().expect("𝔻 acts faithfully");
            let cap = t.intersect(&dsub)?.group_type();
            let comb = t.join(&dsub)?.group_type();
            if !cap.is_trivial() {
                warnings.push(format!("𝕋 ∩ 𝔻 = {} is not trivial", cap));
            }
            quasitorus_generators(&proper, "T", &mut generators);
            quasitorus_generators(&add.d, "D", &mut generators);
            transposition_generators(spec, &sym, &mut generators);
            generators.push(unipotent_generator("∂̂"));
            citations.extend(["structure-theorem:line-suspension-one-unit-weight", "definition:canonical-lnd", "lemma:lnd-classification-one-unit-weight"].map(String::from));
            warnings.extend(radical_warning(spec));
            let tori = Structure::Direct(vec![Structure::leaf("𝕋", Leaf::Diag(proper.group.clone())), Structure::leaf("𝔻", Leaf::Diag(add.d.group.clone()))]);
            let inner = Structure::Semidirect(Box::new(tori), Box::new(Structure::leaf("𝕌(∂̂)", Leaf::Unipotent("𝕌(∂̂)".into()))));
            let st = Structure::semidirect(Structure::leaf("S(Y)", Leaf::Sym(sym.clone())), inner);
            (st, Some(add), Some(cap), Some(comb), None)
        }
        Regime::Danielewski => {
            let g = canonical_group(spec, enum_order_bound)?;
            for (i, rep) in g.coset_representatives.iter().filter(|r| !r.sigma.iter().enumerate().all(|(i, &s)| i == s)).enumerate() {
                generators.push(AutGenerator {
                    id: format!("G.perm.{}", i + 1),
                    group: "G".into(),
                    description: format!("element over σ = {}", cycles(&rep.sigma, &g.y_names)),
                    action: GeneratorAction::Canonical(rep.clone()),
                });
            }
            let n = g.y_names.len();
            for (i, t) in g.torus_finite_generators.iter().enumerate() {
                generators.push(AutGenerator {
                    id: format!("G.{}", i + 1),
                    group: "G".into(),
                    description: "diagonal element of 𝔾".into(),
                    action: GeneratorAction::Canonical(GroupElement { sigma: (0..n).collect(), t: t.clone() }),
                });
            }
            let coords = torus_coords(spec);
            for (i, w) in g.torus_directions.iter().enumerate() {
                generators.push(AutGenerator {
                    id: format!("G.torus.{}", i + 1),
                    group: "G".into(),
                    description: format!("one-parameter subgroup of 𝔾 with weights {:?}", w),
                    action: GeneratorAction::OneParameter { coords: coords.clone(), weights: w.clone() },
                });
            }
            generators.push(unipotent_generator("∂̃"));
            citations.extend(["structure-theorem:danielewski-canonical-group", "definition:canonical-lnd-danielewski", "proposition:ml-invariant-danielewski"].map(String::from));
            warnings.extend(radical_warning(spec));
            warnings.push("torus constraints are solved with rational targets; consistency is decided over ℚ".into());
            if g.feasible_permutations > 1 {
                warnings.push(g.splits_note.clone());
            }
            let st = Structure::semidirect(
                Structure::leaf("𝔾", Leaf::Canonical { description: g.description(), trivial: g.is_trivial }),
                Structure::leaf("𝕌(∂̃)", Leaf::Unipotent("𝕌(∂̃)".into())),
            );
            (st, None, None, None, Some(g))
        }
        Regime::Degenerate => return Ok(degenerate_report(spec)),
        Regime::Unsupported => return Err(AutError::WrongRegime("unsupported presentation".into())),
    };
    let groups = ReportGroups { proper, additional, h_cap_dbar, combined, symmetric: sym };
    let mut report = AutReport {
        regime: spec.regime,
        equation: spec.equation(),
        groups,
        canonical,
        structure,
        generators,
        verdicts: Verdicts { commutative: false, torus: false, solvable: super::Solvable::Unknown },
        citations,
        warnings,
    };
    report.verdicts = verdicts(spec, &report);
    report.citations.extend(verdict_citations(spec.regime));
    Ok(report)
}

fn verdict_citations(regime: Regime) -> Vec<String> {
    let v: &[&str] = match regime {
        Regime::LineSuspensionAllGe2 => &["corollary:commutativity-distinct-weights", "corollary:torus-criterion", "corollary:solvability-five-equal-weights"],
        Regime::LineSuspensionOneUnit => &["corollary:one-unit-weight-not-commutative", "corollary:solvability-five-equal-weights"],
        Regime::Danielewski => &["corollary:commutative-iff-canonical-group-trivial", "corollary:solvability-sufficient-condition"],
        _ => &[],
    };
    v.iter().map(|s| s.to_string()).collect()
}

/// The variety is a line with coordinate z: Aut is the affine group, outside the structure theorems.
pub fn degenerate_report(spec: &VarietySpec) -> AutReport {
    let sym = symmetric_group(spec);
    let proper = proper_quasitorus(spec);
    let structure = Structure::leaf("Aff(𝕂)", Leaf::Family("𝕂 ⋊ 𝕂^× (affine group of the line)".into()));
    let generators = vec![AutGenerator {
        id: "affine".into(),
        group: "Aff".into(),
        description: "z ↦ a·z + b, a ≠ 0, with the unit-weight coordinate following P".into(),
        action: GeneratorAction::Affine,
    }];
    let mut report = AutReport {
        regime: spec.regime,
        equation: spec.equation(),
        groups: ReportGroups { proper, additional: None, h_cap_dbar: None, combined: None, symmetric: sym },
        canonical: None,
        structure,
        generators,
        verdicts: Verdicts { commutative: false, torus: false, solvable: super::Solvable::Yes },
        citations: Vec::new(),
        warnings: vec!["degenerate presentation: the variety is isomorphic to the affine line; outside the supported structure theorems".into()],
    };
    report.verdicts = verdicts(spec, &report);
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct FinitePart {
    /// Which group was enumerated (𝔾, 𝔻̄, or 𝔻).
    pub name: String,
    pub order: u64,
    pub table: FiniteGroupTable,
    pub abelian_invariants: Option<Vec<u64>>,
    pub split_note: Option<String>,
}

fn enumerate_diag(name: &str, sub: &DiagSubgroup, bound: u64) -> Result<FinitePart, AutError> {
    let ty = sub.group_type();
    let order = ty.order().filter(|&o| o <= bound).ok_or(AutError::TooLarge(bound))?;
    let ones = vec![Rat::one(); sub.characters().rows()];
    let sol = solve_torus_system(sub.characters(), &ones, bound)?;
    let mut elems = sol.enumerate(bound).ok_or_else(|| AutError::Enumeration(sol.coset_note.clone()))?;
    elems.sort();
    let id = vec![RootScalar::one(); sub.ambient()];
    let table = FiniteGroupTable::from_elements(
        &elems,
        &id,
        |a, b| a.iter().zip(b).map(|(x, y)| x.mul(y)).collect(),
        |e| format!("({})", e.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")),
    )
    .ok_or_else(|| AutError::Enumeration("not closed under multiplication".into()))?;
    Ok(FinitePart { name: name.into(), order, abelian_invariants: table.abelian_invariants(), table, split_note: None })
}

/// Multiplication table of the finite non-unipotent, non-torus part: 𝔾 for Danielewski varieties, 𝔻̄ or 𝔻 otherwise.
pub fn enumerate_finite_part(report: &AutReport, bound: u64) -> Result<FinitePart, AutError> {
    if let Some(g) = &report.canonical {
        let order = g.order.filter(|&o| o <= bound).ok_or(AutError::TooLarge(bound))?;
        let table = g.table.clone().ok_or(AutError::TooLarge(bound))?;
        return Ok(FinitePart { name: "𝔾".into(), order, abelian_invariants: table.abelian_invariants(), table, split_note: Some(g.splits_note.clone()) });
    }
    let add = report.groups.additional.as_ref().ok_or_else(|| AutError::WrongRegime("no finite part in this regime".into()))?;
    match (&add.dbar.subgroup, &add.d.subgroup) {
        (Some(dbar), _) if report.regime == Regime::LineSuspensionAllGe2 => enumerate_diag("𝔻̄", dbar, bound),
        (_, Some(d)) => enumerate_diag("𝔻", d, bound),
        _ => Err(AutError::WrongRegime("no finite part in this regime".into())),
    }
}
