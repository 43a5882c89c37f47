use super::*;
use crate::algebra::{parse_poly, Rat, RootScalar, Vars};
use crate::lattice::DiagGroupType;
use crate::varieties::{classify, normalize, RawPresentation};

fn spec(w: &[u32], x: bool, p: &str) -> VarietySpec {
    let vars = Vars::new(w.len(), x);
    normalize(&classify(&RawPresentation { weights: w.to_vec(), x_present: x, p: parse_poly(p, vars).unwrap() }).unwrap()).unwrap()
}

fn r(n: i64) -> RootScalar {
    RootScalar::from_rat(&Rat::from_integer(n.into())).unwrap()
}

fn el(sigma: &[usize], t: &[i64]) -> GroupElement {
    GroupElement { sigma: sigma.to_vec(), t: t.iter().map(|&v| r(v)).collect() }
}

fn all_generators_verify(s: &VarietySpec, rep: &AutReport) {
    for g in &rep.generators {
        for phi in g.to_maps(s).unwrap() {
            assert!(verify_automorphism(s, &phi), "generator {} fails on {}", g.id, s.equation());
        }
    }
}

#[test]
fn e2_canonical_group_is_trivial() {
    let s = spec(&[2], true, "z^3+(y+1)*z+1");
    let g = canonical_group(&s, 360).unwrap();
    assert!(g.is_trivial);
    let rep = aut_structure(&s, 360).unwrap();
    assert_eq!(rep.structure.evaluated(), "𝕌(∂̃)");
    assert!(rep.verdicts.commutative);
    all_generators_verify(&s, &rep);
}

#[test]
fn e4_canonical_group_elements() {
    let s = spec(&[2, 2], true, "z^3+z+y1-y2");
    let g = canonical_group(&s, 360).unwrap();
    let mut expected = vec![el(&[0, 1], &[1, 1, 1]), el(&[0, 1], &[-1, -1, -1]), el(&[1, 0], &[-1, -1, 1]), el(&[1, 0], &[1, 1, -1])];
    expected.sort();
    assert_eq!(g.elements.as_ref().unwrap(), &expected);
    assert_eq!(g.abelian_invariants().unwrap(), vec![2, 2]);
    assert!(!g.permutation_complement);
    assert!(g.splits_note.contains("does not decompose"));
    for e in &expected {
        assert!(verify_automorphism(&s, &e.to_map(&s).unwrap()));
    }
    let rep = aut_structure(&s, 360).unwrap();
    assert_eq!(rep.structure.evaluated(), "(ℤ₂ × ℤ₂) ⋉ 𝕌(∂̃)");
    assert!(!rep.verdicts.commutative);
    all_generators_verify(&s, &rep);
    let fp = enumerate_finite_part(&rep, 360).unwrap();
    assert_eq!(fp.order, 4);
}

#[test]
fn three_variable_example() {
    let s = spec(&[2, 2, 3], true, "z^2+y1^2*y2^3*y3^4+y3^3+1");
    let g = canonical_group(&s, 360).unwrap();
    assert_eq!(g.torus_part.torus_rank, 2);
    assert_eq!(g.torus_part.primary_factors(), vec![2, 3]);
    assert_eq!(g.feasible_permutations, 2);
    assert!(g.permutation_complement);
    assert_eq!(g.description(), "S₂ ⋉ ((𝕂^×)² × ℤ₆)");
    let rep = aut_structure(&s, 360).unwrap();
    all_generators_verify(&s, &rep);
}

#[test]
fn line_suspension_family() {
    let cases = [("z^4", DiagGroupType::torus(2)), ("z^4+z", DiagGroupType::from_parts(1, &[3])), ("z^4+z^2", DiagGroupType::from_parts(1, &[2])), ("z^4+z^2+z", DiagGroupType::torus(1))];
    for (p, want) in cases {
        let s = spec(&[2, 3], false, p);
        let rep = aut_structure(&s, 360).unwrap();
        assert_eq!(rep.structure.diag_value(), Some(want), "{}", p);
        all_generators_verify(&s, &rep);
    }
    let rep = aut_structure(&spec(&[2, 3], false, "z^4+z^2+z"), 360).unwrap();
    assert!(rep.verdicts.torus);
}

#[test]
fn second_line_suspension_example_groups() {
    let s = spec(&[4, 2], false, "z^6+1");
    let rep = aut_structure(&s, 360).unwrap();
    assert_eq!(rep.groups.proper.group, DiagGroupType::from_parts(1, &[2]));
    assert_eq!(rep.groups.additional.as_ref().unwrap().dbar.group, DiagGroupType::cyclic(12));
    assert_eq!(rep.groups.h_cap_dbar, Some(DiagGroupType::cyclic(2)));
    // The product group contains (ℤ₂)³, so it is 𝕂^× × ℤ₂ × ℤ₆.
    assert_eq!(rep.groups.combined, Some(DiagGroupType::from_parts(1, &[2, 6])));
    all_generators_verify(&s, &rep);
    let fp = enumerate_finite_part(&rep, 360).unwrap();
    assert_eq!((fp.order, fp.abelian_invariants.clone()), (12, Some(vec![12])));
}

#[test]
fn one_unit_weight_report() {
    let s = spec(&[1, 2, 3], false, "z^3+1");
    let rep = aut_structure(&s, 360).unwrap();
    assert_eq!(rep.structure.evaluated(), "((𝕂^×)² × ℤ₃) ⋉ 𝕌(∂̂)");
    assert!(!rep.verdicts.commutative);
    all_generators_verify(&s, &rep);
    let s = spec(&[2, 2], true, "z^2");
    let rep = aut_structure(&s, 360).unwrap();
    assert!(rep.structure.evaluated().starts_with("S₂ ⋉"));
    all_generators_verify(&s, &rep);
}

#[test]
fn hyperbolic_and_degenerate_cases() {
    let s = spec(&[2], false, "z^2+1");
    let rep = aut_structure(&s, 360).unwrap();
    assert!(!rep.verdicts.commutative);
    all_generators_verify(&s, &rep);
    let s = spec(&[1], false, "z^3+z");
    let rep = aut_structure(&s, 360).unwrap();
    assert_eq!(rep.regime, Regime::Degenerate);
    all_generators_verify(&s, &rep);
}

#[test]
fn verification_rejects_non_automorphisms() {
    let s = spec(&[2, 3], false, "z^4");
    let vars = s.vars();
    let mut img: Vec<_> = vars.all().into_iter().map(|v| crate::algebra::MultiPoly::<crate::algebra::CycElem>::var(vars, v)).collect();
    let mut inv = img.clone();
    let y1 = vars.index(crate::algebra::Var::Y(0));
    img[y1] = img[y1].scale(&crate::algebra::CycElem::from_rat(Rat::from_integer(2.into())));
    inv[y1] = inv[y1].scale(&crate::algebra::CycElem::from_rat(Rat::new(1.into(), 2.into())));
    let phi = crate::derivations::GeneratorMap::new(s.relation(), img, Some(inv)).unwrap();
    assert!(!verify_automorphism(&s, &phi));
}

#[test]
fn verdict_examples() {
    let s = spec(&[2, 2, 2, 2, 2], false, "z^2+1");
    let rep = aut_structure(&s, 360).unwrap();
    assert_eq!(rep.verdicts.solvable, Solvable::No);
    let s = spec(&[2, 2, 2, 2, 2], true, "z^2+y1");
    let rep = aut_structure(&s, 360).unwrap();
    assert_eq!(rep.verdicts.solvable, Solvable::Unknown);
}
