//! Random presentations and brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use autvar::algebra::rat::rat;
use autvar::algebra::{MultiPoly, Rat, Var, Vars};
use autvar::autgroup::GroupElement;
use autvar::varieties::{classify, RawPresentation, Regime, VarietySpec};
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `terms` terms over `allowed`, total degree ≤ `max_deg`, coefficients in [−c, c].
pub fn random_poly(rng: &mut impl Rng, vars: Vars, allowed: &[Var], terms: usize, max_deg: u32, c: i64) -> MultiPoly {
    let mut f = MultiPoly::zero(vars);
    for _ in 0..rng.gen_range(1..=terms) {
        let mut e = vec![0u32; vars.len()];
        let mut budget = rng.gen_range(0..=max_deg);
        while budget > 0 && !allowed.is_empty() {
            let v = *allowed.choose(rng).unwrap();
            e[vars.index(v)] += 1;
            budget -= 1;
        }
        let k = rng.gen_range(-c..=c);
        if k != 0 {
            f.add_term(e, rat(k));
        }
    }
    f
}

fn ys(m: usize) -> Vec<Var> {
    (0..m).map(Var::Y).collect()
}

fn z_power(vars: Vars, d: u32) -> MultiPoly {
    let mut e = vec![0; vars.len()];
    e[vars.index(Var::Z)] = d;
    MultiPoly::monomial(vars, e, rat(1))
}

fn build(weights: Vec<u32>, x: bool, p: MultiPoly) -> VarietySpec {
    classify(&RawPresentation { weights, x_present: x, p }).expect("generated presentations are supported")
}

/// x·y^k = z^d + Σ_{i ≤ d−2} s_i(y) z^i with some s_i depending on y; already normalized.
pub fn random_danielewski(rng: &mut impl Rng, max_m: usize, max_d: u32, c: i64) -> VarietySpec {
    let m = rng.gen_range(1..=max_m);
    let weights: Vec<u32> = (0..m).map(|_| rng.gen_range(2..=3)).collect();
    let d = rng.gen_range(2..=max_d);
    let vars = Vars::new(m, true);
    let mut p = z_power(vars, d);
    for i in 0..=d - 2 {
        if rng.gen_bool(0.7) {
            let s = random_poly(rng, vars, &ys(m), 2, 2, c);
            p = p.add(&s.mul(&z_power(vars, i)));
        }
    }
    if (0..d).all(|i| p.coeff_of(Var::Z, i).as_constant().is_some()) {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        p = p.add(&MultiPoly::var(vars, Var::Y(0)).scale_rat(&rat(sign)));
    }
    let spec = build(weights, true, p);
    assert_eq!(spec.regime, Regime::Danielewski);
    spec
}

/// y1·y2^k2… = z^d + const terms, one unit weight.
pub fn random_one_unit(rng: &mut impl Rng) -> VarietySpec {
    let m = rng.gen_range(2..=3);
    let mut weights = vec![1u32];
    weights.extend((1..m).map(|_| rng.gen_range(2..=3)));
    let d = rng.gen_range(2..=3);
    let vars = Vars::new(m, false);
    let mut p = z_power(vars, d);
    for i in 0..=d - 2 {
        p = p.add(&z_power(vars, i).scale_rat(&rat(rng.gen_range(-2..=2))));
    }
    let spec = build(weights, false, p);
    assert_eq!(spec.regime, Regime::LineSuspensionOneUnit);
    spec
}

/// y^k = z^d + constant terms with all weights ≥ 2, normalized.
pub fn random_line_suspension(rng: &mut impl Rng) -> VarietySpec {
    let m = rng.gen_range(1..=2);
    let weights: Vec<u32> = (0..m).map(|_| rng.gen_range(2..=4)).collect();
    let d = rng.gen_range(2..=4);
    let vars = Vars::new(m, false);
    let mut p = z_power(vars, d);
    for i in 0..=d - 2 {
        p = p.add(&z_power(vars, i).scale_rat(&rat(rng.gen_range(-2..=2))));
    }
    let spec = build(weights, false, p);
    assert_eq!(spec.regime, Regime::LineSuspensionAllGe2);
    spec
}

/// A random element of K[X] in normal form.
pub fn random_element(rng: &mut impl Rng, spec: &VarietySpec, terms: usize, max_deg: u32) -> MultiPoly {
    let vars = spec.vars();
    spec.relation().normal_form(&random_poly(rng, vars, &vars.all(), terms, max_deg, 3))
}

/// A random polynomial in the weighted y's, i.e. in the kernel of the canonical LND.
pub fn random_kernel_element(rng: &mut impl Rng, spec: &VarietySpec) -> MultiPoly {
    let allowed: Vec<Var> = spec.weighted_ys().into_iter().map(Var::Y).collect();
    random_poly(rng, spec.vars(), &allowed, 3, 2, 2)
}

// ---------------------------------------------------------------------------
// Brute-force canonical group over μ_N, in ℤ[C_N] reduced modulo Φ_N with i64 arithmetic.

/// Φ_n with integer coefficients, lowest degree first, from x^n − 1 = Π_{d | n} Φ_d.
pub fn cyclotomic_i64(n: usize) -> Vec<i64> {
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_i64(d));
        }
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k] / b[db];
        q[k - db] = c;
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= c * bj;
        }
    }
    assert!(r.iter().all(|&c| c == 0), "inexact division");
    q
}

/// Whether Σ c_j ζ_N^j vanishes, i.e. Φ_N divides Σ c_j x^j.
fn vanishes(c: &[i64], phi: &[i64]) -> bool {
    let mut r = c.to_vec();
    let dp = phi.len() - 1;
    for k in (dp..r.len()).rev() {
        let q = r[k];
        if q != 0 {
            for (j, pj) in phi.iter().enumerate() {
                r[k - dp + j] -= q * pj;
            }
        }
    }
    r.iter().all(|&c| c == 0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every (σ, a) with t = (ζ_N^{a_1}, …, ζ_N^{a_z}) such that g(P) − t_z^d·P has only M-divisible terms.
/// Requires integer coefficients and x as the unit-weight coordinate.
pub fn brute_force_canonical(spec: &VarietySpec, n_root: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    assert_eq!(spec.lead, Some(Var::X));
    let vars = spec.vars();
    let m = spec.m();
    let phi = cyclotomic_i64(n_root);
    let terms: Vec<(Vec<u32>, u32, i64)> = spec
        .p
        .terms()
        .iter()
        .map(|(e, c)| {
            let ye: Vec<u32> = (0..m).map(|i| e[vars.index(Var::Y(i))]).collect();
            let ci = c.to_integer().to_i64().filter(|_| c.is_integer()).expect("integer coefficients");
            (ye, e[vars.index(Var::Z)], ci)
        })
        .collect();
    let k = &spec.weights;
    let mut out = Vec::new();
    for sigma in permutations(m) {
        if (0..m).any(|p| k[sigma[p]] != k[p]) {
            continue;
        }
        let mut a = vec![0usize; m + 1];
        loop {
            // monomial (y-exponents, z-exponent) -> coefficient in ℤ[C_N]
            let mut acc: std::collections::BTreeMap<(Vec<u32>, u32), Vec<i64>> = Default::default();
            for (b, i, c) in &terms {
                let mut img = vec![0u32; m];
                for p in 0..m {
                    img[sigma[p]] = b[p];
                }
                let pow = (0..m).map(|p| a[p] * b[p] as usize).sum::<usize>() + a[m] * *i as usize;
                acc.entry((img, *i)).or_insert_with(|| vec![0; n_root])[pow % n_root] += c;
                let pow2 = a[m] * spec.d as usize;
                acc.entry((b.clone(), *i)).or_insert_with(|| vec![0; n_root])[pow2 % n_root] -= c;
            }
            let ok = acc.iter().all(|((b, _), c)| vanishes(c, &phi) || (0..m).all(|p| b[p] >= k[p]));
            if ok {
                out.push((sigma.clone(), a.clone()));
            }
            let mut j = 0;
            loop {
                if j > m {
                    break;
                }
                a[j] += 1;
                if a[j] < n_root {
                    break;
                }
                a[j] = 0;
                j += 1;
            }
            if j > m {
                break;
            }
        }
    }
    out
}

/// (σ, exponents of ζ_N) for a solver element whose scalars are N-th roots of unity.
pub fn element_exponents(g: &GroupElement, n_root: u64) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut a = Vec::new();
    for s in &g.t {
        if *s.magnitude() != Rat::from_integer(1.into()) {
            return None;
        }
        let (n, e) = s.root();
        if !n_root.is_multiple_of(n) {
            return None;
        }
        a.push((e * (n_root / n)) as usize);
    }
    Some((g.sigma.clone(), a))
}

pub fn is_zero_poly(f: &MultiPoly) -> bool {
    f.terms().values().all(|c| c.is_zero())
}
