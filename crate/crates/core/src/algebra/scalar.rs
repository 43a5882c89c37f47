//! Scalars of the form r·ζ_N^a with r a positive rational.
//!
//! Every torus coordinate produced by the solvers has this shape, so products,
//! inverses and powers stay exact without general cyclotomic arithmetic.

use super::cyclotomic::CycElem;
use super::rat::{rat_nth_root, rat_pow, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootScalar {
    mag: Rat,
    /// Angle as a reduced fraction num/den of a full turn, 0 <= num < den.
    num: u64,
    den: u64,
}

impl RootScalar {
    fn make(mag: Rat, num: i128, den: u64) -> Self {
        let n = num.rem_euclid(den as i128) as u64;
        let g = n.gcd(&den);
        let (num, den) = if n == 0 { (0, 1) } else { (n / g, den / g) };
        RootScalar { mag, num, den }
    }

    pub fn one() -> Self {
        RootScalar { mag: Rat::one(), num: 0, den: 1 }
    }

    /// Nonzero rational; `None` for zero.
    pub fn from_rat(r: &Rat) -> Option<Self> {
        if r.is_zero() {
            return None;
        }
        let num = if r.is_negative() { 1 } else { 0 };
        Some(Self::make(r.abs(), num, 2))
    }

    /// ζ_n^a.
    pub fn zeta(n: u64, a: i64) -> Self {
        Self::make(Rat::one(), a as i128, n)
    }

    pub fn magnitude(&self) -> &Rat {
        &self.mag
    }

    /// The root-of-unity part as (order N, exponent a), meaning ζ_N^a.
    pub fn root(&self) -> (u64, u64) {
        (self.den, self.num)
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && self.mag.is_one()
    }

    /// The rational value when the angle is 0 or one half.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.den {
            1 => Some(self.mag.clone()),
            2 => Some(-self.mag.clone()),
            _ => None,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let den = self.den.lcm(&o.den);
        let num = (self.num * (den / self.den) + o.num * (den / o.den)) as i128;
        Self::make(&self.mag * &o.mag, num, den)
    }

    pub fn inv(&self) -> Self {
        Self::make(self.mag.recip(), -(self.num as i128), self.den)
    }

    pub fn pow(&self, e: i64) -> Self {
        let mag = rat_pow(&self.mag, e).expect("magnitude is nonzero");
        Self::make(mag, self.num as i128 * e as i128, self.den)
    }

    /// The principal n-th root: rational root of the magnitude times ζ^(angle/n).
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        let mag = rat_nth_root(&self.mag, n)?;
        Some(Self::make(mag, self.num as i128, self.den * n as u64))
    }

    pub fn to_cyc(&self) -> CycElem {
        CycElem::zeta(self.den as u32, self.num as i64).scale(&self.mag)
    }
}

impl fmt::Display for RootScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{}", r);
        }
        if self.mag.is_one() {
            write!(f, "ζ{}^{}", self.den, self.num)
        } else {
            write!(f, "{}·ζ{}^{}", self.mag, self.den, self.num)
        }
    }
}

/// A w ∈ ℚ(ζ) with wⁿ = c, restricted to c = ±1 or an exact rational n-th power
/// up to sign. For c = 1 the primitive root ζ_n is returned.
pub fn cyc_root_of_unity(c: &Rat, n: u32) -> Option<CycElem> {
    if n == 0 {
        return None;
    }
    if c.is_one() {
        return Some(CycElem::zeta(n, 1));
    }
    Some(RootScalar::from_rat(c)?.nth_root(n)?.to_cyc())
}

/// All n-th roots of c in the restricted repertoire, as scalars.
pub fn all_nth_roots(c: &Rat, n: u32) -> Option<Vec<RootScalar>> {
    let w = RootScalar::from_rat(c)?.nth_root(n)?;
    Some((0..n as i64).map(|j| w.mul(&RootScalar::zeta(n as u64, j))).collect())
}
