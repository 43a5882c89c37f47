//! The canonical group 𝔾 of a Danielewski variety: pairs (σ, t) solving the divisibility constraints.

use super::finite::FiniteGroupTable;
use super::AutError;
use crate::algebra::{CycElem, MultiPoly, Rat, RootScalar, Var};
use crate::derivations::GeneratorMap;
use crate::lattice::{solve_torus_system, DiagGroupType, IntMat, TorusSolutionSet};
use crate::varieties::{symmetric_group, Regime, VarietySpec};
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// g(y_{w_p}) = t_p·y_{w_σ(p)}, g(z) = t_z·z, for the weighted y's w_0, …; lead image derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub sigma: Vec<usize>,
    /// Scalars on the weighted y's followed by the z-scalar.
    pub t: Vec<RootScalar>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { sigma: (0..n).collect(), t: vec![RootScalar::one(); n + 1] }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s) && self.t.iter().all(|s| s.is_one())
    }

    pub fn is_pure_permutation(&self) -> bool {
        self.t.iter().all(|s| s.is_one())
    }

    /// self ∘ other as ring maps: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.sigma.len();
        let sigma = (0..n).map(|i| self.sigma[other.sigma[i]]).collect();
        let mut t: Vec<RootScalar> = (0..n).map(|i| other.t[i].mul(&self.t[other.sigma[i]])).collect();
        t.push(other.t[n].mul(&self.t[n]));
        GroupElement { sigma, t }
    }

    pub fn inverse(&self) -> Self {
        let n = self.sigma.len();
        let mut sigma = vec![0; n];
        let mut t = vec![RootScalar::one(); n + 1];
        for i in 0..n {
            sigma[self.sigma[i]] = i;
            t[self.sigma[i]] = self.t[i].inv();
        }
        t[n] = self.t[n].inv();
        GroupElement { sigma, t }
    }

    /// σ in cycle notation over the given 1-based labels, e.g. "(12)" or "id".
    pub fn cycle_notation(&self, names: &[usize]) -> String {
        cycles(&self.sigma, names)
    }

    /// "(σ, t1, …, tz)".
    pub fn label(&self, names: &[usize]) -> String {
        let ts: Vec<String> = self.t.iter().map(|s| s.to_string()).collect();
        format!("({}, {})", self.cycle_notation(names), ts.join(", "))
    }

    /// The automorphism of K[X] this element defines.
    pub fn to_map(&self, spec: &VarietySpec) -> Result<GeneratorMap<CycElem>, AutError> {
        let fwd = element_images(spec, self)?;
        let back = element_images(spec, &self.inverse())?;
        Ok(GeneratorMap::new(spec.relation(), fwd, Some(back))?)
    }
}

pub(crate) fn cycles(sigma: &[usize], names: &[usize]) -> String {
    let mut seen = vec![false; sigma.len()];
    let mut out = String::new();
    for start in 0..sigma.len() {
        if seen[start] || sigma[start] == start {
            continue;
        }
        let mut c = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            c.push(names[i].to_string());
            i = sigma[i];
        }
        let sep = if names.iter().any(|&n| n >= 10) { " " } else { "" };
        out.push_str(&format!("({})", c.join(sep)));
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

/// Images of all generators; the lead image is (t_z^d·lead + R)/Π t^k with R = (g(P) − t_z^d·P)/M.
fn element_images(spec: &VarietySpec, g: &GroupElement) -> Result<Vec<MultiPoly<CycElem>>, AutError> {
    let vars = spec.vars();
    let lead = spec.lead.ok_or_else(|| AutError::WrongRegime("canonical group elements need a unit-weight coordinate".into()))?;
    let ws = spec.weighted_ys();
    let n = ws.len();
    let mut images: Vec<MultiPoly<CycElem>> = vars.all().into_iter().map(|v| MultiPoly::var(vars, v)).collect();
    for p in 0..n {
        images[vars.index(Var::Y(ws[p]))] = MultiPoly::var(vars, Var::Y(ws[g.sigma[p]])).scale(&g.t[p].to_cyc());
    }
    let tz = &g.t[n];
    images[vars.index(Var::Z)] = MultiPoly::var(vars, Var::Z).scale(&tz.to_cyc());
    let p_cyc: MultiPoly<CycElem> = spec.p.lift();
    let gp = p_cyc.compose(&images);
    let tzd = tz.pow(spec.d as i64).to_cyc();
    let diff = gp.sub(&p_cyc.scale(&tzd));
    let cof = spec.cofactor();
    let mut r = MultiPoly::zero(vars);
    for (e, c) in diff.terms() {
        if e.iter().zip(&cof).any(|(a, b)| a < b) {
            return Err(AutError::NotAnElement(format!("g(P) − t_z^d·P has a term not divisible by M: {}", crate::algebra::poly::fmt_monomial(vars, e))));
        }
        r.add_term(e.iter().zip(&cof).map(|(a, b)| a - b).collect(), c.clone());
    }
    let mut scale = RootScalar::one();
    for (p, &i) in ws.iter().enumerate() {
        scale = scale.mul(&g.t[p].pow(spec.weights[i] as i64));
    }
    let inv_scale = scale.inv().to_cyc();
    let lead_img = MultiPoly::var(vars, lead).scale(&tzd).add(&r).scale(&inv_scale);
    images[vars.index(lead)] = lead_img;
    Ok(images)
}

#[derive(Clone, Debug)]
pub enum BranchStatus {
    /// Some constraint pairs a zero with a nonzero coefficient, or the torus system is inconsistent.
    Infeasible(String),
    Feasible(TorusSolutionSet),
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub sigma: Vec<usize>,
    pub status: BranchStatus,
}

impl Branch {
    pub fn solutions(&self) -> Option<&TorusSolutionSet> {
        match &self.status {
            BranchStatus::Feasible(s) => Some(s),
            BranchStatus::Infeasible(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalGroup {
    /// 1-based y-indices of the weighted y's, i.e. the positions σ permutes.
    pub y_names: Vec<usize>,
    pub branches: Vec<Branch>,
    /// 𝔾 ∩ torus, the solution group of the identity branch.
    pub torus_part: DiagGroupType,
    /// Number of σ with a nonempty branch.
    pub feasible_permutations: usize,
    pub order: Option<u64>,
    pub elements: Option<Vec<GroupElement>>,
    pub table: Option<FiniteGroupTable>,
    pub is_trivial: bool,
    /// (σ, 1) ∈ 𝔾 for every feasible σ, i.e. 𝔾 = (permutations) ⋉ (𝔾 ∩ torus).
    pub permutation_complement: bool,
    /// Abstract complement to 𝔾 ∩ torus found by exhaustive search (finite tables only).
    pub abstract_complement: Option<bool>,
    pub splits_note: String,
    /// Particular solutions (σ, t) for every feasible branch, when representable.
    pub coset_representatives: Vec<GroupElement>,
    /// Generators of 𝔾 ∩ torus: finite-order elements and one-parameter weight vectors.
    pub torus_finite_generators: Vec<Vec<RootScalar>>,
    pub torus_directions: Vec<Vec<i64>>,
}

impl CanonicalGroup {
    pub fn is_finite(&self) -> bool {
        self.order.is_some()
    }

    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        self.table.as_ref()?.abelian_invariants()
    }

    /// Short isomorphism-type description.
    pub fn description(&self) -> String {
        if self.is_trivial {
            return "{1}".into();
        }
        if let Some(t) = &self.table {
            if let Some(inv) = t.abelian_invariants() {
                return DiagGroupType::from_parts(0, &inv).to_string();
            }
            return format!("non-abelian group of order {}", t.order());
        }
        let q = self.feasible_permutations;
        if q == 1 {
            return self.torus_part.to_string();
        }
        let perm = permutation_image_name(q);
        if self.permutation_complement {
            format!("{} ⋉ ({})", perm, self.torus_part)
        } else {
            format!("extension of {} by {}", perm, self.torus_part)
        }
    }
}

fn permutation_image_name(order: usize) -> String {
    match order {
        2 => "S₂".into(),
        n => format!("a permutation group of order {}", n),
    }
}

/// The constraint rows of branch σ: exponents over (weighted y's, z) and targets, or the reason it is empty.
pub fn branch_constraints(spec: &VarietySpec, sigma: &[usize]) -> Result<(Vec<Vec<i64>>, Vec<Rat>), String> {
    let vars = spec.vars();
    let ws = spec.weighted_ys();
    let n = ws.len();
    let cof = spec.cofactor();
    let yidx: Vec<usize> = ws.iter().map(|&i| vars.index(Var::Y(i))).collect();
    let mut rows = Vec::new();
    let mut targets = Vec::new();
    for i in 0..spec.d {
        let s = spec.s(i);
        // Candidate exponents b′: the support of s_i and its preimage under σ.
        let mut support: BTreeSet<Vec<u32>> = BTreeSet::new();
        for e in s.terms().keys() {
            support.insert(e.clone());
            let mut pre = e.clone();
            for p in 0..n {
                pre[yidx[sigma[p]]] = e[yidx[p]];
            }
            support.insert(pre);
        }
        for b in support {
            if b.iter().zip(&cof).all(|(a, c)| a >= c) {
                continue;
            }
            // (b′∘σ)_p = b′_{σ(p)}
            let mut bs = b.clone();
            for p in 0..n {
                bs[yidx[p]] = b[yidx[sigma[p]]];
            }
            let c_b = s.coeff(&b);
            let c_bs = s.coeff(&bs);
            match (c_b.is_zero(), c_bs.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => {
                    return Err(format!("coefficient of {} z^{} pairs zero with nonzero", crate::algebra::poly::fmt_monomial(vars, &b), i));
                }
                _ => {}
            }
            let mut row: Vec<i64> = (0..n).map(|p| bs[yidx[p]] as i64).collect();
            row.push(-((spec.d - i) as i64));
            rows.push(row);
            targets.push(c_b / c_bs);
        }
    }
    Ok((rows, targets))
}

/// Solves every σ-branch (in parallel) and assembles 𝔾.
pub fn canonical_group(spec: &VarietySpec, enum_order_bound: u64) -> Result<CanonicalGroup, AutError> {
    if spec.regime != Regime::Danielewski {
        return Err(AutError::WrongRegime(format!("the canonical group is computed for Danielewski varieties, not {}", spec.regime)));
    }
    if !spec.is_normalized() {
        return Err(AutError::NotNormalized);
    }
    let ws = spec.weighted_ys();
    let n = ws.len();
    let y_names: Vec<usize> = ws.iter().map(|&i| i + 1).collect();
    let sym = symmetric_group(spec);
    let positions: BTreeMap<usize, usize> = ws.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let perms: Vec<Vec<usize>> = sym.permutations(spec.m()).into_iter().map(|full| ws.iter().map(|&i| positions[&full[i]]).collect()).collect();
    let branches: Vec<Branch> = perms
        .par_iter()
        .map(|sigma| {
            let status = match branch_constraints(spec, sigma) {
                Err(why) => BranchStatus::Infeasible(why),
                Ok((rows, targets)) => {
                    let a = IntMat::from_i64(n + 1, &rows);
                    let sol = solve_torus_system(&a, &targets, enum_order_bound).expect("rows and targets agree");
                    if sol.consistent {
                        BranchStatus::Feasible(sol)
                    } else {
                        BranchStatus::Infeasible(sol.coset_note.clone())
                    }
                }
            };
            Branch { sigma: sigma.clone(), status }
        })
        .collect();
    let id_branch = branches.iter().find(|b| b.sigma.iter().enumerate().all(|(i, &s)| i == s)).expect("identity permutation");
    let g0 = id_branch.solutions().expect("the identity is always a solution").clone();
    let torus_part = g0.structure.clone();
    let feasible = branches.iter().filter(|b| b.solutions().is_some()).count();
    let order = torus_part.order().map(|o| o * feasible as u64);
    let mut reps = Vec::new();
    for b in &branches {
        if let Some(sol) = b.solutions() {
            if let Some(t) = &sol.particular {
                reps.push(GroupElement { sigma: b.sigma.clone(), t: t.clone() });
            }
        }
    }
    let permutation_complement = branches.iter().filter_map(|b| b.solutions().map(|s| (b, s))).all(|(_, s)| s.satisfies(&vec![RootScalar::one(); n + 1]));
    let mut group = CanonicalGroup {
        y_names,
        torus_part: torus_part.clone(),
        feasible_permutations: feasible,
        order,
        elements: None,
        table: None,
        is_trivial: feasible == 1 && torus_part.is_trivial(),
        permutation_complement,
        abstract_complement: None,
        splits_note: String::new(),
        coset_representatives: reps,
        torus_finite_generators: g0.finite_generators(),
        torus_directions: g0.torus_directions(),
        branches,
    };
    if let Some(total) = order.filter(|&o| o <= enum_order_bound) {
        let mut elems = Vec::new();
        for b in &group.branches {
            if let Some(sol) = b.solutions() {
                let ts = sol.enumerate(total).ok_or_else(|| AutError::Enumeration(format!("branch {} has no explicit solutions: {}", cycles(&b.sigma, &group.y_names), sol.coset_note)))?;
                elems.extend(ts.into_iter().map(|t| GroupElement { sigma: b.sigma.clone(), t }));
            }
        }
        elems.sort();
        let names = group.y_names.clone();
        let table = FiniteGroupTable::from_elements(&elems, &GroupElement::identity(n), |a, b| a.compose(b), |e| e.label(&names))
            .ok_or_else(|| AutError::Enumeration("enumerated elements are not closed under composition".into()))?;
        let normal: BTreeSet<usize> = elems.iter().enumerate().filter(|(_, e)| e.sigma.iter().enumerate().all(|(i, &s)| i == s)).map(|(i, _)| i).collect();
        group.abstract_complement = table.has_complement(&normal);
        group.elements = Some(elems);
        group.table = Some(table);
    }
    group.splits_note = splits_note(&group);
    Ok(group)
}

fn splits_note(g: &CanonicalGroup) -> String {
    if g.feasible_permutations == 1 {
        return "𝔾 lies in the torus".into();
    }
    if g.permutation_complement {
        return format!("𝔾 = P ⋉ (𝔾 ∩ torus) with P the {} pure permutations (σ, 1)", g.feasible_permutations);
    }
    let missing: Vec<String> = g
        .branches
        .iter()
        .filter(|b| b.solutions().is_some_and(|s| !s.satisfies(&vec![RootScalar::one(); b.sigma.len() + 1])))
        .map(|b| cycles(&b.sigma, &g.y_names))
        .collect();
    let mut note = format!(
        "𝔾 does not decompose as (subgroup of S_m) ⋉ (subgroup of the torus): no pure permutation (σ, 1) lies in 𝔾 for σ = {}",
        missing.join(", ")
    );
    if g.abstract_complement == Some(true) {
        note.push_str("; an abstract complement to 𝔾 ∩ torus exists but mixes permutations with scalars");
    }
    note
}

/// Concrete sample points of a one-parameter subgroup, for verification.
pub fn one_param_sample(weights: &[i64], tau: i64) -> Vec<RootScalar> {
    let base = RootScalar::from_rat(&Rat::from_integer(tau.into())).expect("nonzero sample");
    weights.iter().map(|&w| base.pow(w)).collect()
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<usize> = (1..=self.sigma.len()).collect();
        f.write_str(&self.label(&names))
    }
}
