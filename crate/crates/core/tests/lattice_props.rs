//! Smith normal form, torus systems, and diagonal subgroup quotients.

mod common;

use autvar::algebra::rat::rat;
use autvar::algebra::{Rat, RootScalar};
use autvar::lattice::{diag_group_quotient, smith_normal_form, snf_postconditions, solve_torus_system, DiagSubgroup, IntMat};
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeSet;

fn random_matrix(seed: u64, max_dim: usize, bound: i64) -> IntMat {
    let mut r = common::rng(seed);
    let rows = r.gen_range(1..=max_dim);
    let cols = r.gen_range(1..=max_dim);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-bound..=bound)).collect()).collect();
    IntMat::from_i64(cols, &data)
}

fn character(row: &[i64], a: &[usize], n: usize) -> usize {
    row.iter().zip(a).map(|(&e, &x)| (e.rem_euclid(n as i64) as usize) * x).sum::<usize>() % n
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    #[test]
    fn snf_postconditions_hold(seed in any::<u64>()) {
        let a = random_matrix(seed, 6, 9);
        let s = smith_normal_form(&a);
        prop_assert!(snf_postconditions(&a, &s));
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
    }

    #[test]
    fn particular_solution_satisfies_system(seed in any::<u64>()) {
        let a = random_matrix(seed, 3, 4);
        let mut r = common::rng(seed ^ 0x5eed);
        let targets: Vec<Rat> = (0..a.rows()).map(|_| rat([1, -1, 1, 4][r.gen_range(0..4)])).collect();
        let sol = solve_torus_system(&a, &targets, 360).unwrap();
        if let Some(p) = &sol.particular {
            prop_assert!(sol.consistent);
            prop_assert!(sol.satisfies(p));
        }
        for g in sol.finite_generators() {
            let ones = vec![rat(1); a.rows()];
            let hom = solve_torus_system(&a, &ones, 360).unwrap();
            prop_assert!(hom.satisfies(&g));
        }
    }

    /// Over μ_24^n, the solver's solutions are exactly the tuples found by exhaustive search.
    #[test]
    fn finite_solutions_match_exhaustive_search(seed in any::<u64>()) {
        let a = random_matrix(seed, 3, 4);
        let mut r = common::rng(seed ^ 0xbeef);
        let signs: Vec<i64> = (0..a.rows()).map(|_| if r.gen_bool(0.5) { 1 } else { -1 }).collect();
        let targets: Vec<Rat> = signs.iter().map(|&s| rat(s)).collect();
        let sol = solve_torus_system(&a, &targets, 1 << 20).unwrap();
        prop_assume!(sol.structure.is_finite());
        let n = 24usize;
        let rows: Vec<Vec<i64>> = (0..a.rows()).map(|i| a.row(i).iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
        let mut brute = BTreeSet::new();
        let cols = a.cols();
        let mut t = vec![0usize; cols];
        'outer: loop {
            if rows.iter().zip(&signs).all(|(row, &s)| character(row, &t, n) == if s == 1 { 0 } else { n / 2 }) {
                brute.insert(t.clone());
            }
            for k in 0..cols {
                t[k] += 1;
                if t[k] < n {
                    continue 'outer;
                }
                t[k] = 0;
            }
            break;
        }
        let solver: BTreeSet<Vec<usize>> = match sol.enumerate(1 << 20) {
            Some(all) => all
                .iter()
                .filter(|t| t.iter().all(|s| *s.magnitude() == rat(1) && (n as u64).is_multiple_of(s.root().0)))
                .map(|t| t.iter().map(|s| (s.root().1 * (n as u64 / s.root().0)) as usize).collect())
                .collect(),
            None => {
                prop_assert!(!sol.consistent);
                BTreeSet::new()
            }
        };
        prop_assert_eq!(&solver, &brute);
        if sol.consistent && sol.enumerate(1 << 20).unwrap().len() == brute.len() {
            prop_assert_eq!(sol.structure.order(), Some(brute.len() as u64));
        }
    }

    #[test]
    fn quotient_is_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let n = 1 + (a % 3) as usize;
        let mk = |seed: u64| {
            let mut r = common::rng(seed);
            let rows = r.gen_range(0..=n);
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..n).map(|_| r.gen_range(-3..=3)).collect()).collect();
            DiagSubgroup::from_characters(IntMat::from_i64(n, &data))
        };
        let (h, k) = (mk(a), mk(b));
        prop_assert_eq!(diag_group_quotient(&h, &k).unwrap(), diag_group_quotient(&k, &h).unwrap());
    }

    #[test]
    fn subgroup_membership_of_generators(seed in any::<u64>()) {
        let a = random_matrix(seed, 3, 4);
        let sub = DiagSubgroup::from_characters(a.clone());
        let ones = vec![rat(1); a.rows()];
        let sol = solve_torus_system(&a, &ones, 360).unwrap();
        for g in sol.finite_generators() {
            prop_assert!(sub.contains(&g));
        }
        prop_assert!(sub.contains(&vec![RootScalar::one(); a.cols()]));
    }
}
