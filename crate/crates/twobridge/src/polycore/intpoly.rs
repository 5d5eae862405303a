//! Exact gcd and square-free decomposition for polynomials with rational-integer coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::GPoly;
use crate::{Error, Result};

fn ints(p: &GPoly) -> Result<Vec<BigInt>> {
    if !p.is_real() {
        return Err(Error::InvalidInput(format!("{p} has non-real coefficients")));
    }
    Ok(p.coeffs().iter().map(|c| c.re.clone()).collect())
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub fn content(p: &GPoly) -> Result<BigInt> {
    Ok(ints(p)?.iter().fold(BigInt::zero(), |g, c| g.gcd(c)))
}

/// `p / content(p)` with positive leading coefficient.
pub fn primitive_part(p: &GPoly) -> Result<GPoly> {
    let v = ints(p)?;
    if v.is_empty() {
        return Ok(GPoly::zero());
    }
    let mut g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    Ok(GPoly::from_bigints(v.into_iter().map(|c| c / &g).collect()))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor over Z, primitive with positive leading coefficient.
pub fn gcd_integer(a: &GPoly, b: &GPoly) -> Result<GPoly> {
    let (mut x, mut y) = (ints(&primitive_part(a)?)?, ints(&primitive_part(b)?)?);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { ints(&primitive_part(&GPoly::from_bigints(r))?)? };
    }
    primitive_part(&GPoly::from_bigints(x))
}

fn div_exact(a: &GPoly, b: &GPoly) -> Result<GPoly> {
    a.exact_divide(b)?.ok_or_else(|| Error::Engine(format!("{b} does not divide {a} exactly")))
}

/// Yun's algorithm: `p = c * prod f_i^i` with each `f_i` square-free and primitive.
/// Returns the nonconstant factors with their multiplicities.
pub fn squarefree_decomposition(p: &GPoly) -> Result<Vec<(GPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("square-free decomposition of zero".into()));
    }
    let f = primitive_part(p)?;
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = gcd_integer(&f, &df)?;
    let mut b = div_exact(&f, &a0)?;
    let mut c = div_exact(&df, &a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        if b.degree() == Some(0) {
            break;
        }
        let a = if d.is_zero() { b.clone() } else { gcd_integer(&b, &d)? };
        if a.degree() != Some(0) {
            out.push((a.clone(), i));
        }
        b = div_exact(&b, &a)?;
        c = div_exact(&d, &a)?;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Whether `p` has no repeated factor.
pub fn is_squarefree(p: &GPoly) -> Result<bool> {
    Ok(squarefree_decomposition(p)?.iter().all(|(_, m)| *m == 1))
}
