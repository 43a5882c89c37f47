//! Elements of the cyclotomic fields ℚ(ζ_N) in the power basis modulo Φ_N.

use super::rat::{lcm_u64, rat, Rat};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for k in (dn..num.len()).rev() {
        let c = rem[k];
        if c != 0 {
            q[k - dn] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[k - dn + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

#[derive(Clone, Debug)]
pub struct CycElem {
    order: u32,
    coords: Vec<Rat>,
}

fn reduce(mut v: Vec<Rat>, n: u32) -> Vec<Rat> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    if v.len() < deg {
        v.resize(deg, Rat::zero());
        return v;
    }
    for k in (deg..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[k], Rat::zero());
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                v[k - deg + j] -= &c * rat(pj);
            }
        }
    }
    v.truncate(deg);
    v
}

impl CycElem {
    pub fn from_rat(r: Rat) -> Self {
        CycElem { order: 1, coords: vec![r] }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    /// ζ_n^a for any integer `a`.
    pub fn zeta(n: u32, a: i64) -> Self {
        let e = a.rem_euclid(n as i64) as usize;
        let mut v = vec![Rat::zero(); e + 1];
        v[e] = Rat::one();
        CycElem { order: n, coords: reduce(v, n) }
    }

    pub fn from_coords(order: u32, coords: Vec<Rat>) -> Self {
        CycElem { order, coords: reduce(coords, order) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coords.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in ℚ(ζ_target); `target` must be a multiple of the order.
    pub fn lift(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.order), "order {} does not divide {}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut v = vec![Rat::zero(); (self.coords.len().max(1) - 1) * step + 1];
        for (j, c) in self.coords.iter().enumerate() {
            v[j * step] = c.clone();
        }
        CycElem { order: target, coords: reduce(v, target) }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let n = lcm_u64(self.order as u64, other.order as u64) as u32;
        (self.lift(n), other.lift(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        CycElem { order: a.order, coords }
    }

    pub fn neg(&self) -> Self {
        CycElem { order: self.order, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut v = vec![Rat::zero(); a.coords.len() + b.coords.len()];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        CycElem { order: a.order, coords: reduce(v, a.order) }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycElem { order: self.order, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse by solving the linear system of multiplication-by-self.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.order;
        let deg = self.coords.len();
        // Column j of the matrix is self * ζ^j.
        let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); deg + 1]; deg];
        for j in 0..deg {
            let col = self.mul(&CycElem::zeta(n, j as i64)).lift(n);
            for i in 0..deg {
                m[i][j] = col.coords[i].clone();
            }
        }
        m[0][deg] = Rat::one();
        let sol = solve_square(m)?;
        Some(CycElem { order: n, coords: sol })
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycElem::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Some(acc)
    }
}

/// Gaussian elimination on an augmented square system; `None` when singular.
fn solve_square(mut m: Vec<Vec<Rat>>) -> Option<Vec<Rat>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for c in col..=n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coords == b.coords
    }
}

impl Eq for CycElem {}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{}", r);
        }
        let mut first = true;
        write!(f, "(")?;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", c)?,
                _ if c.is_one() => write!(f, "ζ{}^{}", self.order, j)?,
                _ => write!(f, "{}·ζ{}^{}", c, self.order, j)?,
            }
        }
        write!(f, ")")
    }
}
