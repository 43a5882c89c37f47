//! Finite groups given by an explicit element list and composition table.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    pub labels: Vec<String>,
    /// table[a][b] = index of a∘b.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

/// Most complement candidates tried before giving up.
const COMPLEMENT_SEARCH_CAP: u64 = 200_000;

impl FiniteGroupTable {
    /// Builds the table; `None` when some product falls outside the list.
    pub fn from_elements<E: Eq + Hash + Clone>(elements: &[E], identity: &E, compose: impl Fn(&E, &E) -> E, label: impl Fn(&E) -> String) -> Option<Self> {
        let index: HashMap<&E, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elements.len() {
            return None;
        }
        let id = *index.get(identity)?;
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                row.push(*index.get(&compose(a, b))?);
            }
            table.push(row);
        }
        Some(FiniteGroupTable { labels: elements.iter().map(label).collect(), table, identity: id })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != self.identity {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    fn power(&self, a: usize, mut e: u64) -> usize {
        let mut out = self.identity;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        out
    }

    /// Invariant factors d1 | d2 | … of an abelian table, from counts of p^j-torsion.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order() as u64;
        let mut primary: Vec<u64> = Vec::new();
        for p in prime_divisors(n) {
            let mut prev_exp = 0u32;
            let mut counts = Vec::new();
            let mut j = 1u32;
            loop {
                let pj = p.pow(j);
                let torsion = (0..self.order()).filter(|&a| self.power(a, pj) == self.identity).count() as u64;
                let e = log_exact(torsion, p)?;
                if e == prev_exp {
                    break;
                }
                counts.push(e - prev_exp);
                prev_exp = e;
                j += 1;
            }
            // counts[j-1] = number of cyclic p-factors of exponent ≥ j.
            for (j, &c) in counts.iter().enumerate() {
                let next = counts.get(j + 1).copied().unwrap_or(0);
                for _ in 0..(c - next) {
                    primary.push(p.pow(j as u32 + 1));
                }
            }
        }
        let mut factors: Vec<u64> = Vec::new();
        primary.sort_unstable_by(|a, b| b.cmp(a));
        // Combine largest prime powers of distinct primes into the largest invariant factor, and so on.
        let mut by_prime: HashMap<u64, Vec<u64>> = HashMap::new();
        for q in primary {
            by_prime.entry(smallest_prime_factor(q)).or_default().push(q);
        }
        let depth = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        for i in 0..depth {
            factors.push(by_prime.values().map(|v| v.get(i).copied().unwrap_or(1)).product());
        }
        factors.reverse();
        Some(factors)
    }

    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if seen.insert(b) {
                    frontier.push(b);
                }
            }
        }
        seen
    }

    /// Whether some subgroup C has C·N = G and C ∩ N = 1, for a normal subgroup N.
    /// `None` when the search exceeds its cap.
    pub fn has_complement(&self, normal: &BTreeSet<usize>) -> Option<bool> {
        let n = self.order();
        if !n.is_multiple_of(normal.len()) {
            return Some(false);
        }
        let q = n / normal.len();
        // Elements whose images generate G/N.
        let mut gens = Vec::new();
        let mut covered: BTreeSet<usize> = normal.clone();
        for a in 0..n {
            if !covered.contains(&a) {
                gens.push(a);
                let mut all: Vec<usize> = normal.iter().copied().collect();
                all.extend(&gens);
                covered = self.generated(&all);
            }
        }
        let nvec: Vec<usize> = normal.iter().copied().collect();
        let combos = (nvec.len() as u64).checked_pow(gens.len() as u32)?;
        if combos > COMPLEMENT_SEARCH_CAP {
            return None;
        }
        let mut idx = vec![0usize; gens.len()];
        loop {
            let cand: Vec<usize> = gens.iter().zip(&idx).map(|(&g, &i)| self.mul(g, nvec[i])).collect();
            if self.generated(&cand).len() == q {
                return Some(true);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Some(false);
                }
                idx[k] += 1;
                if idx[k] < nvec.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn smallest_prime_factor(n: u64) -> u64 {
    prime_divisors(n).first().copied().unwrap_or(n)
}

fn log_exact(mut n: u64, p: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        e += 1;
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_product(orders: &[u64]) -> FiniteGroupTable {
        let mut elems: Vec<Vec<u64>> = vec![vec![]];
        for &o in orders {
            elems = elems.into_iter().flat_map(|e| (0..o).map(move |k| [e.clone(), vec![k]].concat())).collect();
        }
        let id = vec![0; orders.len()];
        FiniteGroupTable::from_elements(&elems, &id, |a, b| a.iter().zip(b).zip(orders).map(|((x, y), o)| (x + y) % o).collect(), |e| format!("{:?}", e)).unwrap()
    }

    #[test]
    fn invariants_of_products() {
        assert_eq!(cyclic_product(&[2, 2]).abelian_invariants().unwrap(), vec![2, 2]);
        assert_eq!(cyclic_product(&[4, 3]).abelian_invariants().unwrap(), vec![12]);
        assert_eq!(cyclic_product(&[2, 6]).abelian_invariants().unwrap(), vec![2, 6]);
        assert_eq!(cyclic_product(&[2, 4, 3]).abelian_invariants().unwrap(), vec![2, 12]);
        assert_eq!(cyclic_product(&[]).abelian_invariants().unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn complement_search() {
        let z4 = cyclic_product(&[4]);
        let sub: BTreeSet<usize> = z4.generated(&[2]);
        assert_eq!(z4.has_complement(&sub), Some(false));
        let v4 = cyclic_product(&[2, 2]);
        let sub = v4.generated(&[1]);
        assert_eq!(v4.has_complement(&sub), Some(true));
    }

    #[test]
    fn rejects_non_closed_lists() {
        let elems = vec![0u64, 1];
        assert!(FiniteGroupTable::from_elements(&elems, &0, |a, b| (a + b) % 3, |e| e.to_string()).is_none());
    }
}
