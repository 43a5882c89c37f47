//! Normalization, irreducibility, genus, and the additional quasitorus.

mod common;

use autvar::algebra::rat::rat;
use autvar::algebra::{CycElem, MultiPoly, Var, Vars};
use autvar::lattice::DiagGroupType;
use autvar::varieties::{additional_quasitorus, classify, component_product, genus, irreducibility, normalize, reducible_components, zero_root_data, Irreducibility, RawPresentation, VarietySpec};
use num_integer::Integer;
use proptest::prelude::*;
use rand::Rng;

fn z_only(d: u32) -> MultiPoly {
    MultiPoly::var(Vars::new(0, false), Var::Z).pow(d)
}

/// P(y, z) with a nonzero z^{d−1} coefficient, so normalization has work to do.
fn unnormalized(seed: u64) -> VarietySpec {
    let mut r = common::rng(seed);
    let x = r.gen_bool(0.5);
    let m = r.gen_range(1..=2);
    let vars = Vars::new(m, x);
    let weights: Vec<u32> = (0..m).map(|_| r.gen_range(2..=3)).collect();
    let d = r.gen_range(2..=4);
    let ys: Vec<Var> = (0..m).map(Var::Y).collect();
    let zpow = |k: u32| MultiPoly::var(vars, Var::Z).pow(k);
    let mut p = zpow(d);
    for i in 0..d - 1 {
        let s = if x { common::random_poly(&mut r, vars, &ys, 2, 2, 2) } else { MultiPoly::constant(vars, rat(r.gen_range(-2..=2))) };
        p = p.add(&s.mul(&zpow(i)));
    }
    p = p.add(&zpow(d - 1).scale_rat(&rat(r.gen_range(1..=3))));
    if x {
        p = p.add(&MultiPoly::var(vars, Var::Y(0)));
    }
    classify(&RawPresentation { weights, x_present: x, p }).unwrap()
}

/// z^u·Q(z^v) with Q(w) = w^q + c1·w^{q−1}·[q = 2] + c0, c0, c1 ≠ 0.
fn zero_root_poly(u: u32, v: u32, q: u32, c0: i64, c1: i64) -> MultiPoly {
    let w = |k: u32| z_only(v * k);
    let mut qw = w(q).add(&w(0).scale_rat(&rat(c0)));
    if q == 2 {
        qw = qw.add(&w(1).scale_rat(&rat(c1)));
    }
    z_only(u).mul(&qw)
}

fn line_suspension(weights: Vec<u32>, pz: &MultiPoly) -> VarietySpec {
    let vars = Vars::new(weights.len(), false);
    let p = MultiPoly::from_terms(vars, pz.terms().iter().map(|(e, c)| {
        let mut full = vec![0; vars.len()];
        full[vars.index(Var::Z)] = e[0];
        (full, c.clone())
    }));
    classify(&RawPresentation { weights, x_present: false, p }).unwrap()
}

/// P(ε·z) = ε^d·P(z) over ℚ(ζ_n) with ε = ζ_n^{k1}.
fn invariant_under(pz: &MultiPoly, d: u32, n: u32, k1: u32) -> bool {
    let zv = Vars::new(0, false);
    let eps = CycElem::zeta(n, k1 as i64);
    let p = pz.to_cyc();
    let scaled = p.compose(&[MultiPoly::var(zv, Var::Z).scale(&eps)]);
    scaled == p.scale(&eps.pow(d as i64).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(100) })]

    #[test]
    fn normalize_is_idempotent_and_recorded(seed in any::<u64>()) {
        let s = unnormalized(seed);
        prop_assert!(!s.is_normalized());
        let n = normalize(&s).unwrap();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(normalize(&n).unwrap(), n.clone());
        prop_assert_eq!(n.to_normalized(&s.p), n.p.clone());
        prop_assert_eq!(n.to_original(&n.p), s.p.clone());
        prop_assert_eq!(n.to_normalized(&s.defining_poly()), n.defining_poly());
    }

    #[test]
    fn reducible_powers_are_detected_and_reconstructed(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let l = r.gen_range(2..=3u32);
        let m = r.gen_range(1..=2);
        let weights: Vec<u32> = (0..m).map(|_| l * r.gen_range(1..=2)).collect();
        let e = r.gen_range(1..=2);
        let c = [-2i64, -1, 1, 2][r.gen_range(0..4)];
        let q = z_only(e).add(&z_only(0).scale_rat(&rat(c)));
        let spec = line_suspension(weights, &q.pow(l));
        match irreducibility(&spec).unwrap() {
            Irreducibility::Reducible { l: found, q: root } => {
                prop_assert_eq!(found, l);
                let parts = reducible_components(&spec, found, &root);
                prop_assert_eq!(parts.len(), found as usize);
                let target = spec.cofactor_poly().sub(&spec.p).to_cyc();
                prop_assert_eq!(component_product(&parts).unwrap(), target);
            }
            Irreducibility::Irreducible => prop_assert!(false, "missed reducible {}", spec.equation()),
        }
    }

    #[test]
    fn coprime_weights_are_irreducible(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let k1 = r.gen_range(2..=6u32);
        let k2 = loop {
            let k = r.gen_range(2..=6u32);
            if k.gcd(&k1) == 1 {
                break k;
            }
        };
        let spec = line_suspension(vec![k1, k2], &z_only(2).pow(r.gen_range(1..=2)).sub(&z_only(0)));
        prop_assert!(irreducibility(&spec).unwrap().is_irreducible());
    }

    #[test]
    fn additional_quasitorus_membership_and_maximality(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (u, v) = (r.gen_range(0..=2u32), r.gen_range(1..=3u32));
        let q = if u + v < 2 { 2 } else { r.gen_range(1..=2u32) };
        let pz = zero_root_poly(u, v, q, [-1, 1, 2][r.gen_range(0..3)], [-1, 1][r.gen_range(0..2)]);
        let k1 = r.gen_range(2..=4u32);
        let spec = line_suspension(vec![k1, r.gen_range(2..=4)], &pz);
        prop_assert_eq!(zero_root_data(&spec), Some((u, Some(v))));
        let add = additional_quasitorus(&spec).unwrap();
        let order = add.d.group.order().unwrap() as u32;
        prop_assert_eq!(order, v * k1);
        prop_assert!(invariant_under(&pz, spec.d, order, k1));
        for n in order + 1..=2 * order {
            prop_assert!(!invariant_under(&pz, spec.d, n, k1), "order {} also works", n);
        }
    }
}

/// The 𝔻 table over 30 seeded (u, v, k1) constructions.
#[test]
fn additional_quasitorus_table() {
    let mut r = common::rng(0x7ab1e);
    let mut lcm_agreements = 0;
    for _ in 0..30 {
        let (u, v) = (r.gen_range(0..=3u32), r.gen_range(1..=4u32));
        let q = if u + v < 2 { 2 } else { r.gen_range(1..=2u32) };
        let pz = zero_root_poly(u, v, q, [-1, 1, 3][r.gen_range(0..3)], [-2, 1][r.gen_range(0..2)]);
        let k1 = r.gen_range(2..=6u32);
        let spec = line_suspension(vec![k1, r.gen_range(2..=5)], &pz);
        let d = spec.d;
        let add = additional_quasitorus(&spec).unwrap();
        assert_eq!((add.u, add.v), (u, Some(v)));
        assert_eq!(add.d.group, DiagGroupType::cyclic(u64::from(v * k1)));
        assert_eq!(add.dhat.group, DiagGroupType::from_parts(0, &[u64::from(v)]));
        // image of μ_{v·k1} under t ↦ (t^d, 1, t^k1): kernel μ_gcd(d, k1)
        let image = u64::from(v * k1 / d.gcd(&k1));
        assert_eq!(add.dbar.group, DiagGroupType::from_parts(0, &[image]), "{}", spec.equation());
        if d.gcd(&k1) == v.gcd(&k1) {
            assert_eq!(add.dbar.group.order(), Some(u64::from(k1.lcm(&v))));
            lcm_agreements += 1;
        }
    }
    assert!(lcm_agreements > 0);
}

#[test]
fn genus_table() {
    for k in 2..=12u64 {
        for d in 2..=12u64 {
            let twice = (d - 1) * (k - 1) + 1 - k.gcd(&d);
            assert_eq!(twice % 2, 0, "k = {}, d = {}", k, d);
            assert_eq!(twice == 0, (k, d) == (2, 2));
        }
    }
    // z^d − 1 is squarefree; it is an l-th power for no l > 1
    for k in 2..=12u32 {
        for d in 2..=12u32 {
            let g = genus(k, &z_only(d).sub(&z_only(0))).unwrap();
            let (k64, d64) = (k as u64, d as u64);
            assert_eq!(g, ((d64 - 1) * (k64 - 1) + 1 - k64.gcd(&d64)) / 2);
        }
    }
    assert_eq!(genus(2, &z_only(3).sub(&z_only(0))).unwrap(), 1);
    assert_eq!(genus(3, &z_only(4).sub(&z_only(0))).unwrap(), 3);
    assert!(genus(2, &z_only(2).mul(&z_only(1).sub(&z_only(0)))).is_err());
}
