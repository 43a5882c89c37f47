//! Sparse multivariate polynomials over ℚ or ℚ(ζ_N).
//!
//! Exponent vectors are stored in the order `[x?, z, y1, …, ym]`, so the
//! ordering of the term map is lexicographic with x ≫ z ≫ y1 ≫ … ≫ ym.

use super::cyclotomic::CycElem;
use super::rat::Rat;
use super::scalar::RootScalar;
use super::AlgebraError;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient field operations needed by [`MultiPoly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// `None` when the scalar is not representable in this field.
    fn from_scalar(s: &RootScalar) -> Option<Self>;
    /// Rational value if the coefficient lies in ℚ.
    fn to_rat(&self) -> Option<Rat>;
    fn inverse(&self) -> Option<Self>;
}

impl Coeff for Rat {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn from_scalar(s: &RootScalar) -> Option<Self> {
        s.as_rat()
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Coeff for CycElem {
    fn nil() -> Self {
        CycElem::zero()
    }
    fn unit() -> Self {
        CycElem::one()
    }
    fn is_nil(&self) -> bool {
        CycElem::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_rat(r: &Rat) -> Self {
        CycElem::from_rat(r.clone())
    }
    fn from_scalar(s: &RootScalar) -> Option<Self> {
        Some(s.to_cyc())
    }
    fn to_rat(&self) -> Option<Rat> {
        self.as_rat()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// A coordinate of the ambient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Z,
    /// Zero-based index: `Y(0)` is y1.
    Y(usize),
}

/// Variable context: `m` y-variables, z, and optionally x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vars {
    pub m: usize,
    pub x: bool,
}

impl Vars {
    pub fn new(m: usize, x: bool) -> Self {
        Vars { m, x }
    }

    pub fn len(&self) -> usize {
        self.m + 1 + self.x as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, v: Var) -> usize {
        let off = self.x as usize;
        match v {
            Var::X => {
                assert!(self.x, "context has no x");
                0
            }
            Var::Z => off,
            Var::Y(i) => {
                assert!(i < self.m, "y{} outside context with m = {}", i + 1, self.m);
                off + 1 + i
            }
        }
    }

    pub fn var(&self, idx: usize) -> Var {
        let off = self.x as usize;
        if self.x && idx == 0 {
            Var::X
        } else if idx == off {
            Var::Z
        } else {
            Var::Y(idx - off - 1)
        }
    }

    pub fn all(&self) -> Vec<Var> {
        (0..self.len()).map(|i| self.var(i)).collect()
    }

    pub fn has(&self, v: Var) -> bool {
        match v {
            Var::X => self.x,
            Var::Z => true,
            Var::Y(i) => i < self.m,
        }
    }

    pub fn name(&self, v: Var) -> String {
        match v {
            Var::X => "x".into(),
            Var::Z => "z".into(),
            Var::Y(i) => format!("y{}", i + 1),
        }
    }
}

pub type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<C: Coeff = Rat> {
    vars: Vars,
    terms: BTreeMap<Exps, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, C::unit())
    }

    pub fn var(vars: Vars, v: Var) -> Self {
        let mut e = vec![0; vars.len()];
        e[vars.index(v)] = 1;
        Self::monomial(vars, e, C::unit())
    }

    pub fn monomial(vars: Vars, exps: Exps, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Exps, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exps, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exps, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·mono` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: Exps, c: C) {
        if c.is_nil() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_nil() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::nil)
    }

    /// Constant term value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::nil()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Exps, &C)> {
        self.terms.iter().next_back()
    }

    fn check(&self, o: &Self) -> Result<(), AlgebraError> {
        if self.vars != o.vars {
            Err(AlgebraError::ContextMismatch)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.negate());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        self.check(o)?;
        let mut r = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.times(c2));
            }
        }
        Ok(r)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("variable contexts differ")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("variable contexts differ")
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("variable contexts differ")
    }

    pub fn neg(&self) -> Self {
        MultiPoly { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_nil() {
            return Self::zero(self.vars);
        }
        MultiPoly { vars: self.vars, terms: self.terms.iter().map(|(e, k)| (e.clone(), k.times(c))).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&C::from_rat(r))
    }

    /// Multiplies by a monomial given as an exponent vector.
    pub fn shift(&self, mono: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(mono).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = self.vars.index(v);
        let mut r = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c.times(&C::from_rat(&Rat::from_integer(e[i].into()))));
            }
        }
        r
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        let i = self.vars.index(v);
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        if !self.vars.has(v) {
            return false;
        }
        let i = self.vars.index(v);
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> Self {
        let i = self.vars.index(v);
        let mut r = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                r.add_term(e2, c.clone());
            }
        }
        r
    }

    /// Replaces every variable by its image; images live in `target`.
    pub fn substitute(&self, images: &[Option<MultiPoly<C>>], target: Vars) -> Result<MultiPoly<C>, AlgebraError> {
        assert_eq!(images.len(), self.vars.len(), "one image slot per variable");
        for img in images.iter().flatten() {
            if img.vars != target {
                return Err(AlgebraError::ContextMismatch);
            }
        }
        let mut cache: Vec<Vec<MultiPoly<C>>> = vec![Vec::new(); images.len()];
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let img = images[i].as_ref().ok_or_else(|| AlgebraError::MissingImage(self.vars.name(self.vars.var(i))))?;
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(MultiPoly::one(target));
                }
                while powers.len() <= k as usize {
                    let next = powers.last().unwrap().mul(img);
                    powers.push(next);
                }
                t = t.mul(&powers[k as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Substitution where every variable has an image.
    pub fn compose(&self, images: &[MultiPoly<C>]) -> MultiPoly<C> {
        let target = images.first().map(|p| p.vars).unwrap_or(self.vars);
        let slots: Vec<Option<MultiPoly<C>>> = images.iter().cloned().map(Some).collect();
        self.substitute(&slots, target).expect("complete image list")
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.vars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Same terms in a context with more variables (`x` added or extra y's appended).
    pub fn embed(&self, target: Vars) -> MultiPoly<C> {
        assert!(target.m >= self.vars.m && (target.x || !self.vars.x), "embedding must not drop variables");
        let mut r = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[target.index(self.vars.var(i))] = k;
            }
            r.add_term(e2, c.clone());
        }
        r
    }

    /// Rational copy when every coefficient is rational.
    pub fn to_rat_poly(&self) -> Option<MultiPoly<Rat>> {
        let mut r = MultiPoly::zero(self.vars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c.to_rat()?);
        }
        Some(r)
    }
}

impl MultiPoly<Rat> {
    pub fn to_cyc(&self) -> MultiPoly<CycElem> {
        self.map_coeffs(|c| CycElem::from_rat(c.clone()))
    }

    pub fn lift<C: Coeff>(&self) -> MultiPoly<C> {
        self.map_coeffs(|c| C::from_rat(c))
    }
}

/// Checked ring operation on two polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<C: Coeff>(f: &MultiPoly<C>, g: &MultiPoly<C>, op: ArithOp) -> Result<MultiPoly<C>, AlgebraError> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
    }
}

pub fn fmt_monomial(vars: Vars, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(vars.name(vars.var(i))),
            _ => parts.push(format!("{}^{}", vars.name(vars.var(i)), k)),
        }
    }
    parts.join("*")
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(self.vars, e);
            let (neg, mag) = match c.to_rat() {
                Some(r) if r.is_negative() => (true, C::from_rat(&-r)),
                _ => (false, c.clone()),
            };
            let sep = match (n, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let unit = mag == C::unit();
            let body = match (mono.is_empty(), unit) {
                (true, _) => format!("{}", mag),
                (false, true) => mono,
                (false, false) => format!("{}*{}", mag, mono),
            };
            write!(f, "{}{}", sep, body)?;
        }
        Ok(())
    }
}
