use super::{hermite_rows, lattice_intersection, left_kernel_basis, smith_normal_form, IntMat, LatticeError, Snf};
use crate::algebra::rat::{lcm_u64, rat_pow, Rat};
use crate::algebra::{CycElem, RootScalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

/// (𝕂^×)^rank × ℤ_{d1} × … × ℤ_{ds} with d1 | d2 | … and every di ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagGroupType {
    pub torus_rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl DiagGroupType {
    pub fn trivial() -> Self {
        DiagGroupType { torus_rank: 0, invariant_factors: vec![] }
    }

    pub fn torus(rank: usize) -> Self {
        DiagGroupType { torus_rank: rank, invariant_factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_parts(0, &[n])
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn from_parts(torus_rank: usize, cyclic_orders: &[u64]) -> Self {
        let n = cyclic_orders.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { cyclic_orders[i] as i64 } else { 0 }).collect())
            .collect();
        let snf = smith_normal_form(&IntMat::from_i64(n, &rows));
        let factors = snf.diagonal().iter().map(|d| d.to_u64().expect("small factor")).filter(|&d| d > 1).collect();
        DiagGroupType { torus_rank, invariant_factors: factors }
    }

    /// The group {t ∈ (𝕂^×)^n : t^row = 1 for every row}.
    pub fn of_characters(chars: &IntMat) -> Self {
        let snf = smith_normal_form(chars);
        let factors = snf.diagonal().iter().map(|d| d.to_u64().expect("invariant factor fits in u64")).filter(|&d| d > 1).collect();
        DiagGroupType { torus_rank: chars.cols() - snf.rank, invariant_factors: factors }
    }

    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.torus_rank == 0
    }

    pub fn is_connected(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut f = self.invariant_factors.clone();
        f.extend(&other.invariant_factors);
        Self::from_parts(self.torus_rank + other.torus_rank, &f)
    }

    /// Elementary divisors (prime powers), ascending.
    pub fn primary_factors(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &d in &self.invariant_factors {
            let mut n = d;
            let mut p = 2;
            while n > 1 {
                if n % p == 0 {
                    let mut q = 1;
                    while n % p == 0 {
                        n /= p;
                        q *= p;
                    }
                    out.push(q);
                }
                p += 1;
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn subscript(n: u64) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

pub fn superscript(n: u64) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for DiagGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.torus_rank {
            0 => {}
            1 => parts.push("𝕂^×".to_string()),
            r => parts.push(format!("(𝕂^×){}", superscript(r as u64))),
        }
        for &d in &self.invariant_factors {
            parts.push(format!("ℤ{}", subscript(d)));
        }
        if parts.is_empty() {
            write!(f, "{{1}}")
        } else {
            write!(f, "{}", parts.join(" × "))
        }
    }
}

/// A closed subgroup of the torus (𝕂^×)^n, cut out by characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagSubgroup {
    chars: IntMat,
}

impl DiagSubgroup {
    pub fn from_characters(chars: IntMat) -> Self {
        let n = chars.cols();
        DiagSubgroup { chars: IntMat::from_rows(n, hermite_rows(n, chars.row_vecs().to_vec())) }
    }

    pub fn whole(n: usize) -> Self {
        DiagSubgroup { chars: IntMat::zeros(0, n) }
    }

    pub fn trivial(n: usize) -> Self {
        DiagSubgroup { chars: IntMat::identity(n) }
    }

    /// Image of μ_order (or of 𝕂^× when `order` is `None`) under t ↦ (t^w1, …, t^wn).
    pub fn cyclic_image(weights: &[i64], order: Option<u64>) -> Self {
        let n = weights.len();
        let mut col: Vec<Vec<i64>> = weights.iter().map(|&w| vec![w]).collect();
        if let Some(o) = order {
            col.push(vec![o as i64]);
        }
        let k = left_kernel_basis(&IntMat::from_i64(1, &col));
        let rows: Vec<Vec<BigInt>> = k.row_vecs().iter().map(|r| r[..n].to_vec()).collect();
        Self::from_characters(IntMat::from_rows(n, rows))
    }

    pub fn ambient(&self) -> usize {
        self.chars.cols()
    }

    pub fn characters(&self) -> &IntMat {
        &self.chars
    }

    pub fn group_type(&self) -> DiagGroupType {
        DiagGroupType::of_characters(&self.chars)
    }

    pub fn intersect(&self, o: &Self) -> Result<Self, LatticeError> {
        if self.ambient() != o.ambient() {
            return Err(LatticeError::AmbientMismatch(self.ambient(), o.ambient()));
        }
        let mut rows = self.chars.row_vecs().to_vec();
        rows.extend_from_slice(o.chars.row_vecs());
        Ok(Self::from_characters(IntMat::from_rows(self.ambient(), rows)))
    }

    /// The subgroup generated by both, i.e. the image of H × K.
    pub fn join(&self, o: &Self) -> Result<Self, LatticeError> {
        if self.ambient() != o.ambient() {
            return Err(LatticeError::AmbientMismatch(self.ambient(), o.ambient()));
        }
        Ok(Self::from_characters(lattice_intersection(&self.chars, &o.chars)))
    }

    /// Type of self / sub for a subgroup `sub` of `self`; its characters are L_sub / L_self.
    pub fn quotient_type(&self, sub: &Self) -> Result<DiagGroupType, LatticeError> {
        if self.ambient() != sub.ambient() {
            return Err(LatticeError::AmbientMismatch(self.ambient(), sub.ambient()));
        }
        let basis = sub.chars.row_vecs();
        let mut coords = Vec::new();
        for g in self.chars.row_vecs() {
            let c = echelon_coordinates(basis, g).ok_or(LatticeError::NotSubgroup)?;
            coords.push(c);
        }
        let r = basis.len();
        let m = IntMat::from_rows(r, coords);
        let snf = smith_normal_form(&m);
        let orders: Vec<u64> = snf.diagonal().iter().filter_map(|v| v.to_u64()).filter(|&v| v > 1).collect();
        Ok(DiagGroupType::from_parts(r - snf.rank, &orders))
    }

    pub fn contains(&self, t: &[RootScalar]) -> bool {
        assert_eq!(t.len(), self.ambient());
        self.chars.row_vecs().iter().all(|r| eval_character(r, t).is_one())
    }
}

/// Integer coefficients of `g` in an echelon basis, if `g` lies in its span.
fn echelon_coordinates(basis: &[Vec<BigInt>], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = g.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for b in basis {
        let p = b.iter().position(|v| !v.is_zero())?;
        let (q, r) = rest[p].div_rem(&b[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(b) {
            *x -= &q * y;
        }
        out.push(q);
    }
    rest.iter().all(|v| v.is_zero()).then_some(out)
}

fn eval_character(row: &[BigInt], t: &[RootScalar]) -> RootScalar {
    let mut acc = RootScalar::one();
    for (e, ti) in row.iter().zip(t) {
        if !e.is_zero() {
            acc = acc.mul(&ti.pow(e.to_i64().expect("small exponent")));
        }
    }
    acc
}

/// Type of (H × K)/(H ∩ K), realized as the product subgroup HK of the ambient torus.
pub fn diag_group_quotient(h: &DiagSubgroup, k: &DiagSubgroup) -> Result<DiagGroupType, LatticeError> {
    Ok(h.join(k)?.group_type())
}

/// Solutions of t^{A_r} = λ_r over the torus (𝕂^×)^cols.
#[derive(Clone, Debug)]
pub struct TorusSolutionSet {
    pub a: IntMat,
    pub targets: Vec<Rat>,
    pub consistent: bool,
    /// Type of the subgroup {t : t^{A_r} = 1}; the solution set is a coset of it.
    pub structure: DiagGroupType,
    pub particular: Option<Vec<RootScalar>>,
    pub coset_note: String,
    snf: Snf,
}

impl TorusSolutionSet {
    pub fn particular_cyc(&self) -> Option<Vec<CycElem>> {
        self.particular.as_ref().map(|p| p.iter().map(|s| s.to_cyc()).collect())
    }

    pub fn satisfies(&self, t: &[RootScalar]) -> bool {
        self.a.row_vecs().iter().zip(&self.targets).all(|(r, l)| Some(eval_character(r, t)) == RootScalar::from_rat(l))
    }

    fn from_s(&self, s: &[RootScalar]) -> Vec<RootScalar> {
        let v = &self.snf.v;
        (0..v.rows())
            .map(|j| {
                let mut acc = RootScalar::one();
                for (k, sk) in s.iter().enumerate() {
                    let e = v.get(j, k).to_i64().expect("small exponent");
                    if e != 0 {
                        acc = acc.mul(&sk.pow(e));
                    }
                }
                acc
            })
            .collect()
    }

    /// Generators of the finite part of the solution subgroup.
    pub fn finite_generators(&self) -> Vec<Vec<RootScalar>> {
        let n = self.a.cols();
        self.snf
            .diagonal()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > BigInt::one())
            .map(|(k, d)| {
                let mut s = vec![RootScalar::one(); n];
                s[k] = RootScalar::zeta(d.to_u64().unwrap(), 1);
                self.from_s(&s)
            })
            .collect()
    }

    /// Weight vectors w of one-parameter subgroups τ ↦ (τ^w1, …, τ^wn) spanning the torus part.
    pub fn torus_directions(&self) -> Vec<Vec<i64>> {
        let v = &self.snf.v;
        (self.snf.rank..self.a.cols()).map(|k| (0..v.rows()).map(|j| v.get(j, k).to_i64().unwrap()).collect()).collect()
    }

    /// Every solution, when the set is finite, nonempty, explicit, and at most `limit` large.
    pub fn enumerate(&self, limit: u64) -> Option<Vec<Vec<RootScalar>>> {
        if !self.consistent || !self.structure.is_finite() || self.structure.order()? > limit {
            return None;
        }
        let part = self.particular.as_ref()?;
        let n = self.a.cols();
        let diag: Vec<u64> = self.snf.diagonal().iter().map(|d| d.to_u64().unwrap()).collect();
        let mut out = Vec::new();
        let mut idx = vec![0u64; n];
        loop {
            let s: Vec<RootScalar> = (0..n).map(|k| RootScalar::zeta(diag[k], idx[k] as i64)).collect();
            let t = self.from_s(&s);
            out.push(t.iter().zip(part).map(|(a, b)| a.mul(b)).collect());
            let mut k = 0;
            loop {
                if k == n {
                    return Some(out);
                }
                idx[k] += 1;
                if idx[k] < diag[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn solve_torus_system(a: &IntMat, targets: &[Rat], enum_order_bound: u64) -> Result<TorusSolutionSet, LatticeError> {
    if a.rows() != targets.len() {
        return Err(LatticeError::DimensionMismatch { rows: a.rows(), targets: targets.len() });
    }
    if let Some(i) = targets.iter().position(|l| l.is_zero()) {
        return Err(LatticeError::ZeroTarget(i));
    }
    let snf = smith_normal_form(a);
    let structure = DiagGroupType::of_characters(a);
    let power_product = |c: &[BigInt]| -> Rat {
        let mut acc = Rat::one();
        for (ci, l) in c.iter().zip(targets) {
            acc *= rat_pow(l, ci.to_i64().expect("small exponent")).expect("nonzero target");
        }
        acc
    };
    let kernel = left_kernel_basis(a);
    let consistent = kernel.row_vecs().iter().all(|c| power_product(c).is_one());
    let mut set = TorusSolutionSet {
        a: a.clone(),
        targets: targets.to_vec(),
        consistent,
        structure,
        particular: None,
        coset_note: String::new(),
        snf,
    };
    if !consistent {
        set.coset_note = "inconsistent: a multiplicative relation among the equations fails on the targets".into();
        return Ok(set);
    }
    // D·log s = U·log λ: extract d_k-th roots of μ_k = Π λ^U_k.
    let n = a.cols();
    let mut s = vec![RootScalar::one(); n];
    for k in 0..set.snf.rank {
        let mu = power_product(set.snf.u.row(k));
        let d = set.snf.d.get(k, k).to_u32().expect("small invariant factor");
        let root = RootScalar::from_rat(&mu).and_then(|m| m.nth_root(d));
        match root {
            Some(r) => s[k] = r,
            None => {
                set.coset_note = format!("no particular solution in the supported repertoire: {}-th root of {} is not a rational multiple of a root of unity", d, mu);
                return Ok(set);
            }
        }
    }
    let t = set.from_s(&s);
    let order = t.iter().fold(1u64, |acc, x| lcm_u64(acc, x.root().0));
    if order > enum_order_bound {
        set.coset_note = format!("particular solution needs ζ of order {} above the bound {}", order, enum_order_bound);
        return Ok(set);
    }
    debug_assert!(set.satisfies(&t), "particular solution fails an equation");
    if !set.satisfies(&t) {
        set.coset_note = "internal: particular solution failed verification".into();
        return Ok(set);
    }
    set.coset_note = if set.structure.is_trivial() {
        "unique solution".into()
    } else {
        format!("coset of {} through the particular solution", set.structure)
    };
    set.particular = Some(t);
    Ok(set)
}
