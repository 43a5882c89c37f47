//! Quasitori ℍ/𝕋 and 𝔻/𝔻̄/𝔻̂, the symmetric group of the weights, and the Makar-Limanov invariant.

use super::{Regime, VarietyError, VarietySpec};
use crate::algebra::rat::lcm_u64;
use crate::algebra::{RootScalar, Var};
use crate::lattice::{solve_torus_system, DiagGroupType, DiagSubgroup, IntMat};
use num_integer::Integer;
use num_traits::One;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuasitorusKind {
    H,
    T,
    D,
    Dbar,
    Dhat,
}

impl QuasitorusKind {
    pub fn name(&self) -> &'static str {
        match self {
            QuasitorusKind::H => "H",
            QuasitorusKind::T => "T",
            QuasitorusKind::D => "D",
            QuasitorusKind::Dbar => "Dbar",
            QuasitorusKind::Dhat => "Dhat",
        }
    }
}

/// A generator of a diagonal group acting on `coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusGen {
    /// An element of finite order acting by the listed scalars.
    Finite { order: u64, scalars: Vec<RootScalar> },
    /// τ ↦ (τ^w1, …, τ^wn).
    OneParam { weights: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasitorusData {
    pub kind: QuasitorusKind,
    pub group: DiagGroupType,
    /// Coordinates the generators act on.
    pub coords: Vec<Var>,
    /// Subgroup of the diagonal torus on `coords`; `None` when the group acts non-faithfully (𝔻).
    pub subgroup: Option<DiagSubgroup>,
    pub generators: Vec<TorusGen>,
    pub reference_index: Option<usize>,
}

/// Order of a tuple of roots of unity.
pub fn element_order(t: &[RootScalar]) -> Option<u64> {
    t.iter().try_fold(1u64, |acc, s| s.magnitude().is_one().then(|| lcm_u64(acc, s.root().0)))
}

fn generators_of(sub: &DiagSubgroup) -> Vec<TorusGen> {
    let n = sub.ambient();
    let ones = vec![crate::algebra::Rat::one(); sub.characters().rows()];
    let sol = solve_torus_system(sub.characters(), &ones, u64::MAX).expect("characters and targets agree in length");
    let mut out: Vec<TorusGen> = sol
        .finite_generators()
        .into_iter()
        .map(|s| TorusGen::Finite { order: element_order(&s).expect("roots of unity"), scalars: s })
        .collect();
    out.extend(sol.torus_directions().into_iter().map(|weights| TorusGen::OneParam { weights }));
    debug_assert!(out.iter().all(|g| match g {
        TorusGen::Finite { scalars, .. } => scalars.len() == n,
        TorusGen::OneParam { weights } => weights.len() == n,
    }));
    out
}

fn from_subgroup(kind: QuasitorusKind, coords: Vec<Var>, sub: DiagSubgroup, reference_index: Option<usize>) -> QuasitorusData {
    QuasitorusData { kind, group: sub.group_type(), generators: generators_of(&sub), coords, subgroup: Some(sub), reference_index }
}

/// Coordinates of the ambient diagonal torus: the weighted y's, then z.
pub fn torus_coords(spec: &VarietySpec) -> Vec<Var> {
    let mut c: Vec<Var> = spec.weighted_ys().into_iter().map(Var::Y).collect();
    c.push(Var::Z);
    c
}

/// ℍ (line suspensions with all weights ≥ 2) or the proper torus 𝕋 (a unit weight is present).
pub fn proper_quasitorus(spec: &VarietySpec) -> QuasitorusData {
    let coords = torus_coords(spec);
    let n = coords.len();
    let mut zrow = vec![0i64; n];
    zrow[n - 1] = 1;
    if spec.lead.is_none() {
        let mut mrow: Vec<i64> = spec.weights.iter().map(|&k| k as i64).collect();
        mrow.push(0);
        let sub = DiagSubgroup::from_characters(IntMat::from_i64(n, &[mrow, zrow]));
        from_subgroup(QuasitorusKind::H, coords, sub, None)
    } else {
        let sub = DiagSubgroup::from_characters(IntMat::from_i64(n, &[zrow]));
        from_subgroup(QuasitorusKind::T, coords, sub, None)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdditionalQuasitorus {
    /// Multiplicity of 0 as a root of P.
    pub u: u32,
    /// Maximal v with P = z^u·Q(z^v); `None` when P = z^d.
    pub v: Option<u32>,
    pub d: QuasitorusData,
    pub dbar: QuasitorusData,
    pub dhat: QuasitorusData,
}

/// u and v for P = z^u·Q(z^v) from the exponents of P.
pub fn zero_root_data(spec: &VarietySpec) -> Option<(u32, Option<u32>)> {
    let pz = spec.p_in_z()?;
    let exps: Vec<u32> = pz.terms().keys().map(|e| e[0]).collect();
    let u = *exps.iter().min()?;
    let v = exps.iter().fold(0u32, |g, &e| g.gcd(&(e - u)));
    Some((u, (v != 0).then_some(v)))
}

pub fn additional_quasitorus(spec: &VarietySpec) -> Result<AdditionalQuasitorus, VarietyError> {
    if !matches!(spec.regime, Regime::LineSuspensionAllGe2 | Regime::LineSuspensionOneUnit) {
        return Err(VarietyError::WrongRegime(format!("the additional quasitorus is defined for line suspensions, not {}", spec.regime)));
    }
    let (u, v) = zero_root_data(spec).ok_or_else(|| VarietyError::WrongRegime("coefficients depend on y".into()))?;
    let coords = torus_coords(spec);
    let n = coords.len();
    let d = spec.d as i64;
    if spec.lead.is_some() {
        // The lead coordinate absorbs the scalar, so 𝔻 acts on z alone and faithfully.
        let mut w = vec![0i64; n];
        w[n - 1] = 1;
        let sub = DiagSubgroup::cyclic_image(&w, v.map(u64::from));
        let mk = |kind| from_subgroup(kind, coords.clone(), sub.clone(), None);
        return Ok(AdditionalQuasitorus { u, v, d: mk(QuasitorusKind::D), dbar: mk(QuasitorusKind::Dbar), dhat: mk(QuasitorusKind::Dhat) });
    }
    let k1 = spec.weights[0] as i64;
    let mut w = vec![0i64; n];
    w[0] = d;
    w[n - 1] = k1;
    let order = v.map(|v| v as u64 * k1 as u64);
    let d_abstract = QuasitorusData {
        kind: QuasitorusKind::D,
        group: order.map_or(DiagGroupType::torus(1), DiagGroupType::cyclic),
        coords: coords.clone(),
        subgroup: None,
        generators: vec![match order {
            Some(o) => TorusGen::Finite { order: o, scalars: w.iter().map(|&e| RootScalar::zeta(o, e)).collect() },
            None => TorusGen::OneParam { weights: w.clone() },
        }],
        reference_index: Some(0),
    };
    let dbar_sub = DiagSubgroup::cyclic_image(&w, order);
    let h = proper_quasitorus(spec).subgroup.expect("ℍ is a subgroup");
    let hd = h.join(&dbar_sub).expect("same ambient torus");
    let dhat_type = hd.quotient_type(&h).expect("ℍ ⊂ ℍ𝔻̄");
    let dbar = from_subgroup(QuasitorusKind::Dbar, coords.clone(), dbar_sub, Some(0));
    let dhat = QuasitorusData {
        kind: QuasitorusKind::Dhat,
        group: dhat_type,
        coords,
        subgroup: None,
        generators: dbar.generators.clone(),
        reference_index: Some(0),
    };
    Ok(AdditionalQuasitorus { u, v, d: d_abstract, dbar, dhat })
}

/// Direct stabilizer of P inside the diagonal torus on (y1, …, ym, z) restricted to 𝔻-type elements:
/// characters (k, −d) and (0, …, 0, d − e) for e in the support of P.
pub fn diagonal_symmetries_of_p(spec: &VarietySpec) -> Option<DiagSubgroup> {
    let pz = spec.p_in_z()?;
    let n = spec.m() + 1;
    let mut rows = Vec::new();
    let mut mrow: Vec<i64> = spec.weights.iter().map(|&k| k as i64).collect();
    mrow.push(-(spec.d as i64));
    rows.push(mrow);
    for e in pz.terms().keys() {
        let mut r = vec![0i64; n];
        r[n - 1] = spec.d as i64 - e[0] as i64;
        if r[n - 1] != 0 {
            rows.push(r);
        }
    }
    Some(DiagSubgroup::from_characters(IntMat::from_i64(n, &rows)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymGroupData {
    /// Classes of y-indices (0-based) with equal weights, ordered by first index.
    pub blocks: Vec<Vec<usize>>,
}

impl SymGroupData {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn order(&self) -> u64 {
        self.blocks.iter().map(|b| (1..=b.len() as u64).product::<u64>()).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.len() < 2)
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    /// All permutations of 0..m preserving each block, in lexicographic order.
    pub fn permutations(&self, m: usize) -> Vec<Vec<usize>> {
        let mut out = vec![(0..m).collect::<Vec<_>>()];
        for block in &self.blocks {
            let mut next = Vec::new();
            for base in &out {
                for p in permutations_of(block) {
                    let mut s = base.clone();
                    for (i, &src) in block.iter().enumerate() {
                        s[src] = p[i];
                    }
                    next.push(s);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

impl fmt::Display for SymGroupData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().filter(|b| b.len() > 1).map(|b| format!("S{}", crate::lattice::subscript(b.len() as u64))).collect();
        if parts.is_empty() {
            f.write_str("{1}")
        } else {
            f.write_str(&parts.join(" × "))
        }
    }
}

/// Equal-weight classes among the weighted y's.
pub fn symmetric_group(spec: &VarietySpec) -> SymGroupData {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in spec.weighted_ys() {
        match blocks.iter_mut().find(|b| spec.weights[b[0]] == spec.weights[i]) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    SymGroupData { blocks }
}

/// Generators of the Makar-Limanov invariant as a subalgebra.
pub fn ml_invariant(spec: &VarietySpec) -> Vec<Var> {
    match spec.regime {
        Regime::LineSuspensionAllGe2 => {
            let mut v: Vec<Var> = (0..spec.m()).map(Var::Y).collect();
            v.push(Var::Z);
            v
        }
        Regime::LineSuspensionOneUnit | Regime::Danielewski => spec.weighted_ys().into_iter().map(Var::Y).collect(),
        Regime::Degenerate | Regime::Unsupported => Vec::new(),
    }
}
