//! Univariate operations in z over ℚ: gcd, exact division, perfect powers.

use super::poly::{MultiPoly, Var, Vars};
use super::rat::Rat;
use super::AlgebraError;
use num_traits::{One, Zero};

/// Coefficients of a z-only polynomial, lowest degree first.
pub fn z_coeffs(f: &MultiPoly) -> Result<Vec<Rat>, AlgebraError> {
    let vars = f.vars();
    let zi = vars.index(Var::Z);
    let mut out = vec![Rat::zero(); f.degree_in(Var::Z) as usize + 1];
    for (e, c) in f.terms() {
        if e.iter().enumerate().any(|(i, &k)| i != zi && k > 0) {
            return Err(AlgebraError::NotUnivariate);
        }
        out[e[zi] as usize] = c.clone();
    }
    Ok(out)
}

pub fn from_z_coeffs(vars: Vars, cs: &[Rat]) -> MultiPoly {
    let zi = vars.index(Var::Z);
    MultiPoly::from_terms(
        vars,
        cs.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; vars.len()];
            e[zi] = k as u32;
            (e, c.clone())
        }),
    )
}

fn trim(v: &mut Vec<Rat>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn is_zero_poly(v: &[Rat]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Quotient and remainder of dense univariate polynomials.
pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!is_zero_poly(&b), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let c = &r[k] / &lead;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k - db + j] -= t;
        }
        q[k - db] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

/// Monic gcd of two univariate polynomials in z over ℚ.
pub fn univar_gcd(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    if f.vars() != g.vars() {
        return Err(AlgebraError::ContextMismatch);
    }
    let mut a = z_coeffs(f)?;
    let mut b = z_coeffs(g)?;
    trim(&mut a);
    trim(&mut b);
    while !is_zero_poly(&b) {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    if is_zero_poly(&a) {
        return Ok(MultiPoly::zero(f.vars()));
    }
    let lead = a.last().unwrap().clone();
    let monic: Vec<Rat> = a.iter().map(|c| c / &lead).collect();
    Ok(from_z_coeffs(f.vars(), &monic))
}

/// Q monic with Q^l = P, determined from the top coefficients of P and then checked.
pub fn perfect_power_root(p: &MultiPoly, l: u32) -> Result<Option<MultiPoly>, AlgebraError> {
    let cs = z_coeffs(p)?;
    let d = cs.len() as u32 - 1;
    if l == 0 || !d.is_multiple_of(l) {
        return Err(AlgebraError::IndivisibleDegree { l, d });
    }
    if !cs[d as usize].is_one() {
        return Err(AlgebraError::NotMonic);
    }
    let e = (d / l) as usize;
    let vars = p.vars();
    // Coefficient of z^(d-j) in Q^l is l·q_{e-j} + (terms in q_{e-j+1..e}); solve for q_{e-j}.
    let mut q = vec![Rat::zero(); e + 1];
    q[e] = Rat::one();
    for j in 1..=e {
        q[e - j] = Rat::zero();
        let current = z_coeffs(&from_z_coeffs(vars, &q).pow(l)).unwrap_or_default();
        let have = current.get(d as usize - j).cloned().unwrap_or_else(Rat::zero);
        q[e - j] = (&cs[d as usize - j] - have) / Rat::from_integer(l.into());
    }
    let cand = from_z_coeffs(vars, &q);
    Ok((cand.pow(l) == *p).then_some(cand))
}
