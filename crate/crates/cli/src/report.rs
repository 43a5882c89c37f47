//! The ReportFile output format and its human-readable rendering.

use autvar::algebra::rat::fmt_rat;
use autvar::algebra::{RootScalar, Var, Vars};
use autvar::autgroup::{AutGenerator, AutReport, BranchStatus, CanonicalGroup, FinitePart, GeneratorAction, GroupElement, Leaf, Structure};
use autvar::derivations::Derivation;
use autvar::lattice::DiagGroupType;
use autvar::varieties::{QuasitorusData, SymGroupData, TorusGen};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

/// Finite parts larger than this are reported without a multiplication table.
pub const TABLE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub regime: String,
    pub equation: String,
    pub normalized_equation: String,
    /// c(y) with z_normalized = z + c(y), when a shift was applied.
    pub z_shift: Option<String>,
    pub invariants: InvariantsRecord,
    pub groups: GroupsRecord,
    pub structure: StructureRecord,
    pub verdicts: VerdictsRecord,
    pub generators: Vec<GeneratorRecord>,
    pub finite_part: Option<FinitePartRecord>,
    pub citations: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsRecord {
    pub irreducible: bool,
    /// P = Q^l with l maximal, when the variety is reducible.
    pub reducible_power: Option<PowerRecord>,
    pub rigid: bool,
    pub rigidity_reason: String,
    pub genus: Option<u64>,
    pub ml_generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerRecord {
    pub l: u32,
    pub q: String,
}

/// (𝕂^×)^torus_rank × ℤ_{f1} × … with f1 | f2 | ….
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeRecord {
    pub torus_rank: usize,
    pub invariant_factors: Vec<u64>,
    pub display: String,
}

impl From<&DiagGroupType> for TypeRecord {
    fn from(t: &DiagGroupType) -> Self {
        TypeRecord { torus_rank: t.torus_rank, invariant_factors: t.invariant_factors.clone(), display: t.to_string() }
    }
}

impl TypeRecord {
    pub fn to_type(&self) -> DiagGroupType {
        DiagGroupType { torus_rank: self.torus_rank, invariant_factors: self.invariant_factors.clone() }
    }
}

/// multiplier·ζ_N^a with `root_of_unity` = [N, a].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarRecord {
    pub multiplier: String,
    pub root_of_unity: (u64, u64),
}

impl From<&RootScalar> for ScalarRecord {
    fn from(s: &RootScalar) -> Self {
        ScalarRecord { multiplier: fmt_rat(s.magnitude()), root_of_unity: s.root() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TorusGenRecord {
    Finite { order: u64, scalars: Vec<ScalarRecord> },
    OneParameter { weights: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasitorusRecord {
    pub group: TypeRecord,
    pub coords: Vec<String>,
    pub generators: Vec<TorusGenRecord>,
    pub reference_index: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymRecord {
    pub blocks: Vec<Vec<String>>,
    pub order: u64,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRecord {
    pub id: String,
    pub label: String,
    /// σ as images of the permuted y's, e.g. ["y2", "y1"].
    pub sigma: Vec<String>,
    /// Scalars on the permuted y's, then z.
    pub scalars: Vec<ScalarRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchRecord {
    pub sigma: String,
    pub feasible: bool,
    /// The solution group of the branch, or why it is empty.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalRecord {
    pub description: String,
    pub order: Option<u64>,
    pub is_trivial: bool,
    pub torus_part: TypeRecord,
    pub feasible_permutations: usize,
    pub permutation_complement: bool,
    pub abstract_complement: Option<bool>,
    pub splits_note: String,
    pub abelian_invariants: Option<Vec<u64>>,
    pub branches: Vec<BranchRecord>,
    pub elements: Option<Vec<ElementRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsRecord {
    #[serde(rename = "H")]
    pub h: Option<QuasitorusRecord>,
    #[serde(rename = "T")]
    pub t: Option<QuasitorusRecord>,
    #[serde(rename = "D")]
    pub d: Option<QuasitorusRecord>,
    #[serde(rename = "Dbar")]
    pub dbar: Option<QuasitorusRecord>,
    #[serde(rename = "Dhat")]
    pub dhat: Option<QuasitorusRecord>,
    /// ℍ ∩ 𝔻̄ or 𝕋 ∩ 𝔻.
    pub intersection: Option<TypeRecord>,
    /// (ℍ × 𝔻̄)/(ℍ ∩ 𝔻̄) or 𝕋 × 𝔻.
    pub combined: Option<TypeRecord>,
    #[serde(rename = "S")]
    pub s: SymRecord,
    #[serde(rename = "G")]
    pub g: Option<CanonicalRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case", deny_unknown_fields)]
pub enum StructureNode {
    Leaf { label: String, value: String },
    Semidirect { acting: Box<StructureNode>, normal: Box<StructureNode> },
    Direct { factors: Vec<StructureNode> },
    Quotient { numerator: Box<StructureNode>, denominator: Box<StructureNode>, value: TypeRecord },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureRecord {
    /// In terms of the named subgroups.
    pub formal: String,
    /// With every named subgroup replaced by its isomorphism type.
    pub evaluated: String,
    /// Set when the whole group is diagonalizable.
    pub diagonal_type: Option<TypeRecord>,
    pub tree: StructureNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictsRecord {
    pub commutative: bool,
    pub torus: bool,
    pub solvable: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageRecord {
    pub var: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionRecord {
    Diagonal { coords: Vec<String>, scalars: Vec<ScalarRecord> },
    OneParameter { coords: Vec<String>, weights: Vec<i64> },
    Permutation { images: Vec<String> },
    Canonical { element: ElementRecord },
    /// exp(h·∂) for h in the kernel; `derivation` lists ∂ on the generators.
    Unipotent { derivation: Vec<ImageRecord> },
    HyperbolicFamily,
    Affine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub id: String,
    pub group: String,
    pub description: String,
    pub action: ActionRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinitePartRecord {
    pub name: String,
    pub order: u64,
    pub abelian_invariants: Option<Vec<u64>>,
    pub split_note: Option<String>,
    pub elements: Vec<String>,
    /// table[i][j] is the index of elements[i]·elements[j]; omitted for large groups.
    pub table: Option<Vec<Vec<usize>>>,
}

impl ReportFile {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

// ---------------------------------------------------------------------------
// Conversion from the library report

pub fn var_name(vars: Vars, v: Var) -> String {
    vars.name(v)
}

fn names(vars: Vars, vs: &[Var]) -> Vec<String> {
    vs.iter().map(|&v| var_name(vars, v)).collect()
}

fn torus_gen(g: &TorusGen) -> TorusGenRecord {
    match g {
        TorusGen::Finite { order, scalars } => TorusGenRecord::Finite { order: *order, scalars: scalars.iter().map(ScalarRecord::from).collect() },
        TorusGen::OneParam { weights } => TorusGenRecord::OneParameter { weights: weights.clone() },
    }
}

pub fn quasitorus_record(vars: Vars, q: &QuasitorusData) -> QuasitorusRecord {
    QuasitorusRecord {
        group: (&q.group).into(),
        coords: names(vars, &q.coords),
        generators: if q.group.is_trivial() { Vec::new() } else { q.generators.iter().map(torus_gen).collect() },
        reference_index: q.reference_index.map(|i| var_name(vars, Var::Y(i))),
    }
}

fn sym_record(s: &SymGroupData) -> SymRecord {
    SymRecord {
        blocks: s.blocks.iter().map(|b| b.iter().map(|i| format!("y{}", i + 1)).collect()).collect(),
        order: s.order(),
        display: s.to_string(),
    }
}

pub fn element_record(id: String, g: &GroupElement, y_names: &[usize]) -> ElementRecord {
    ElementRecord {
        id,
        label: g.label(y_names),
        sigma: g.sigma.iter().map(|&p| format!("y{}", y_names[p])).collect(),
        scalars: g.t.iter().map(ScalarRecord::from).collect(),
    }
}

fn canonical_record(g: &CanonicalGroup) -> CanonicalRecord {
    let names = &g.y_names;
    let branches = g
        .branches
        .iter()
        .map(|b| {
            let sigma = GroupElement { sigma: b.sigma.clone(), t: Vec::new() }.cycle_notation(names);
            match &b.status {
                BranchStatus::Infeasible(why) => BranchRecord { sigma, feasible: false, detail: why.clone() },
                BranchStatus::Feasible(s) => BranchRecord { sigma, feasible: true, detail: format!("coset of {}", s.structure) },
            }
        })
        .collect();
    CanonicalRecord {
        description: g.description(),
        order: g.order,
        is_trivial: g.is_trivial,
        torus_part: (&g.torus_part).into(),
        feasible_permutations: g.feasible_permutations,
        permutation_complement: g.permutation_complement,
        abstract_complement: g.abstract_complement,
        splits_note: g.splits_note.clone(),
        abelian_invariants: g.abelian_invariants(),
        branches,
        elements: g.elements.as_ref().map(|es| es.iter().enumerate().map(|(i, e)| element_record(format!("G[{}]", i + 1), e, names)).collect()),
    }
}

fn structure_node(s: &Structure) -> StructureNode {
    match s {
        Structure::Leaf { label, leaf } => StructureNode::Leaf { label: label.clone(), value: leaf_value(leaf) },
        Structure::Semidirect(a, b) => StructureNode::Semidirect { acting: Box::new(structure_node(a)), normal: Box::new(structure_node(b)) },
        Structure::Direct(v) => StructureNode::Direct { factors: v.iter().map(structure_node).collect() },
        Structure::Quotient { num, den, value } => {
            StructureNode::Quotient { numerator: Box::new(structure_node(num)), denominator: Box::new(structure_node(den)), value: value.into() }
        }
    }
}

fn leaf_value(leaf: &Leaf) -> String {
    match leaf {
        Leaf::Diag(t) => t.to_string(),
        Leaf::Sym(s) => s.to_string(),
        Leaf::Unipotent(s) | Leaf::Family(s) => s.clone(),
        Leaf::Canonical { description, .. } => description.clone(),
    }
}

pub fn derivation_images(der: &Derivation) -> Vec<ImageRecord> {
    let vars = der.vars();
    vars.all().into_iter().map(|v| ImageRecord { var: var_name(vars, v), image: der.image(v).to_string() }).collect()
}

fn generator_record(vars: Vars, g: &AutGenerator, y_names: &[usize], lnd: Option<&Derivation>) -> GeneratorRecord {
    let action = match &g.action {
        GeneratorAction::Diagonal { coords, scalars } => ActionRecord::Diagonal { coords: names(vars, coords), scalars: scalars.iter().map(ScalarRecord::from).collect() },
        GeneratorAction::OneParameter { coords, weights } => ActionRecord::OneParameter { coords: names(vars, coords), weights: weights.clone() },
        GeneratorAction::Permutation { sigma } => ActionRecord::Permutation { images: sigma.iter().map(|&j| format!("y{}", j + 1)).collect() },
        GeneratorAction::Canonical(e) => ActionRecord::Canonical { element: element_record(g.id.clone(), e, y_names) },
        GeneratorAction::Unipotent => ActionRecord::Unipotent { derivation: lnd.map(derivation_images).unwrap_or_default() },
        GeneratorAction::HyperbolicFamily => ActionRecord::HyperbolicFamily,
        GeneratorAction::Affine => ActionRecord::Affine,
    };
    GeneratorRecord { id: g.id.clone(), group: g.group.clone(), description: g.description.clone(), action }
}

pub fn finite_part_record(f: &FinitePart) -> FinitePartRecord {
    let n = f.table.order();
    FinitePartRecord {
        name: f.name.clone(),
        order: f.order,
        abelian_invariants: f.abelian_invariants.clone(),
        split_note: f.split_note.clone(),
        elements: f.table.labels.clone(),
        table: (n <= TABLE_LIMIT).then(|| (0..n).map(|i| (0..n).map(|j| f.table.mul(i, j)).collect()).collect()),
    }
}

/// Everything the report needs besides the library's AutReport.
pub struct ReportContext<'a> {
    pub vars: Vars,
    pub equation: String,
    pub z_shift: Option<String>,
    pub invariants: InvariantsRecord,
    pub lnd: Option<&'a Derivation>,
    pub finite_part: Option<FinitePartRecord>,
    pub extra_warnings: Vec<String>,
}

pub fn build_report(r: &AutReport, ctx: ReportContext<'_>) -> ReportFile {
    let vars = ctx.vars;
    let g = &r.groups;
    let lead = g.proper.kind == autvar::varieties::QuasitorusKind::T;
    let proper = Some(quasitorus_record(vars, &g.proper));
    let add = g.additional.as_ref();
    let groups = GroupsRecord {
        h: if lead { None } else { proper.clone() },
        t: if lead { proper } else { None },
        d: add.map(|a| quasitorus_record(vars, &a.d)),
        dbar: add.map(|a| quasitorus_record(vars, &a.dbar)),
        dhat: add.map(|a| quasitorus_record(vars, &a.dhat)),
        intersection: g.h_cap_dbar.as_ref().map(TypeRecord::from),
        combined: g.combined.as_ref().map(TypeRecord::from),
        s: sym_record(&g.symmetric),
        g: r.canonical.as_ref().map(canonical_record),
    };
    let y_names: Vec<usize> = r.canonical.as_ref().map(|c| c.y_names.clone()).unwrap_or_default();
    let mut warnings = r.warnings.clone();
    warnings.extend(ctx.extra_warnings);
    ReportFile {
        regime: r.regime.name().into(),
        equation: ctx.equation,
        normalized_equation: r.equation.clone(),
        z_shift: ctx.z_shift,
        invariants: ctx.invariants,
        groups,
        structure: StructureRecord {
            formal: r.structure.formal(),
            evaluated: r.structure.evaluated(),
            diagonal_type: r.structure.diag_value().as_ref().map(TypeRecord::from),
            tree: structure_node(&r.structure),
        },
        verdicts: VerdictsRecord { commutative: r.verdicts.commutative, torus: r.verdicts.torus, solvable: r.verdicts.solvable.to_string() },
        generators: r.generators.iter().map(|x| generator_record(vars, x, &y_names, ctx.lnd)).collect(),
        finite_part: ctx.finite_part,
        citations: r.citations.clone(),
        warnings,
    }
}

// ---------------------------------------------------------------------------
// Human-readable rendering

fn scalar_text(s: &ScalarRecord) -> String {
    let (n, a) = s.root_of_unity;
    let m = s.multiplier.strip_suffix("/1").unwrap_or(&s.multiplier);
    match (n, m) {
        (1, _) => m.to_string(),
        (2, "1") => "-1".into(),
        (2, _) => format!("-{}", m),
        (_, "1") => format!("ζ{}^{}", n, a),
        _ => format!("{}·ζ{}^{}", m, n, a),
    }
}

fn gen_text(g: &TorusGenRecord) -> String {
    match g {
        TorusGenRecord::Finite { order, scalars } => format!("order {}: ({})", order, scalars.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        TorusGenRecord::OneParameter { weights } => format!("τ ↦ τ^{:?}", weights),
    }
}

fn quasitorus_text(out: &mut String, name: &str, q: &Option<QuasitorusRecord>) {
    let Some(q) = q else { return };
    let _ = write!(out, "  {} ≅ {}  on ({})", name, q.group.display, q.coords.join(", "));
    if let Some(r) = &q.reference_index {
        let _ = write!(out, "  [reference {}]", r);
    }
    out.push('\n');
    for g in &q.generators {
        let _ = writeln!(out, "      {}", gen_text(g));
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_pretty(r: &ReportFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Variety: {}", r.equation);
    if r.z_shift.is_some() {
        let _ = writeln!(out, "Normalized: {}  (z ↦ z + {})", r.normalized_equation, r.z_shift.as_deref().unwrap_or("0"));
    }
    let _ = writeln!(out, "Regime: {}", r.regime);

    let inv = &r.invariants;
    out.push_str("\nInvariants\n");
    match &inv.reducible_power {
        Some(p) => {
            let _ = writeln!(out, "  irreducible: no (P = ({})^{})", p.q, p.l);
        }
        None => {
            let _ = writeln!(out, "  irreducible: yes");
        }
    }
    let _ = writeln!(out, "  rigid: {} ({})", yes_no(inv.rigid), inv.rigidity_reason);
    if let Some(g) = inv.genus {
        let _ = writeln!(out, "  genus: {}", g);
    }
    let ml = if inv.ml_generators.is_empty() { "𝕂".to_string() } else { format!("𝕂[{}]", inv.ml_generators.join(", ")) };
    let _ = writeln!(out, "  ML invariant: {}", ml);

    let g = &r.groups;
    out.push_str("\nGroups\n");
    quasitorus_text(&mut out, "ℍ", &g.h);
    quasitorus_text(&mut out, "𝕋", &g.t);
    quasitorus_text(&mut out, "𝔻", &g.d);
    quasitorus_text(&mut out, "𝔻̄", &g.dbar);
    quasitorus_text(&mut out, "𝔻̂", &g.dhat);
    if let Some(t) = &g.intersection {
        let name = if g.h.is_some() { "ℍ ∩ 𝔻̄" } else { "𝕋 ∩ 𝔻" };
        let _ = writeln!(out, "  {} ≅ {}", name, t.display);
    }
    if let Some(t) = &g.combined {
        let name = if g.h.is_some() { "(ℍ × 𝔻̄)/(ℍ ∩ 𝔻̄)" } else { "𝕋 · 𝔻" };
        let _ = writeln!(out, "  {} ≅ {}", name, t.display);
    }
    let _ = writeln!(out, "  S(Y) = {} (order {})", g.s.display, g.s.order);
    if let Some(c) = &g.g {
        let _ = writeln!(out, "  𝔾 ≅ {}", c.description);
        let _ = writeln!(out, "      torus part {}, {} feasible permutation(s)", c.torus_part.display, c.feasible_permutations);
        for b in &c.branches {
            let _ = writeln!(out, "      σ = {}: {}", b.sigma, b.detail);
        }
        if let Some(es) = &c.elements {
            for e in es {
                let _ = writeln!(out, "      {} = {}", e.id, e.label);
            }
        }
        let _ = writeln!(out, "      {}", c.splits_note);
    }

    out.push_str("\nStructure\n");
    let _ = writeln!(out, "  Aut ≅ {}", r.structure.evaluated);
    let _ = writeln!(out, "      = {}", r.structure.formal);
    if let Some(c) = r.citations.first() {
        let _ = writeln!(out, "      [{}]", c);
    }

    let v = &r.verdicts;
    out.push_str("\nVerdicts\n");
    let _ = writeln!(out, "  commutative: {}\n  torus: {}\n  solvable: {}", yes_no(v.commutative), yes_no(v.torus), v.solvable);

    if let Some(f) = &r.finite_part {
        out.push_str("\nFinite part\n");
        let _ = write!(out, "  {} of order {}", f.name, f.order);
        if let Some(inv) = &f.abelian_invariants {
            let _ = write!(out, ", abelian invariants {:?}", inv);
        }
        out.push('\n');
        if f.elements.len() <= 16 {
            for (i, e) in f.elements.iter().enumerate() {
                let _ = writeln!(out, "      [{}] {}", i, e);
            }
        }
        if let Some(t) = f.table.as_ref().filter(|t| t.len() <= 8) {
            for row in t {
                let _ = writeln!(out, "      {}", row.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(" "));
            }
        }
    }

    out.push_str("\nGenerators\n");
    for gen in &r.generators {
        let _ = writeln!(out, "  {:<10} {}", gen.id, gen.description);
        match &gen.action {
            ActionRecord::Diagonal { coords, scalars } => {
                let _ = writeln!(out, "             ({}) ↦ ({})", coords.join(", "), scalars.iter().map(scalar_text).collect::<Vec<_>>().join(", "));
            }
            ActionRecord::Canonical { element } => {
                let _ = writeln!(out, "             {}", element.label);
            }
            ActionRecord::Unipotent { derivation } => {
                let d: Vec<String> = derivation.iter().map(|i| format!("∂({}) = {}", i.var, i.image)).collect();
                let _ = writeln!(out, "             {}", d.join(", "));
            }
            _ => {}
        }
    }

    if r.citations.len() > 1 {
        out.push_str("\nCitations\n");
        for c in &r.citations {
            let _ = writeln!(out, "  {}", c);
        }
    }
    if !r.warnings.is_empty() {
        out.push_str("\nWarnings\n");
        for w in &r.warnings {
            let _ = writeln!(out, "  - {}", w);
        }
    }
    out
}
