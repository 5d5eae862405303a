//! Riley polynomials from the matrix word, the bridge to rep-polynomials, and
//! the integral splitting `P = u g(u) g^(u)` for knots.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::conway::Fraction;
use crate::geometry::find_roots;
use crate::polycore::{GPoly, GaussInt, PolyMatrix2};
use crate::scalar::{ComplexExt, Real};
use crate::{Error, Real256, Result};

/// `eps_i = -(-1)^floor(i beta / alpha)` for `i = 1..alpha-1`, using the signed `beta`
/// (links are oriented, so `beta` matters modulo `2 alpha`). An even `beta` of a knot is
/// shifted by `alpha` towards zero so that the sequence is palindromic.
pub fn epsilon_sequence(frac: &Fraction) -> Vec<i8> {
    let a = frac.alpha as i128;
    let mut b = frac.signed_beta() as i128;
    if b % 2 == 0 {
        b -= a * b.signum();
    }
    (1..a).map(|i| if Integer::div_floor(&(i * b), &a).rem_euclid(2) == 0 { -1 } else { 1 }).collect()
}

fn rho_a(inv: bool) -> PolyMatrix2 {
    let s = if inv { -1 } else { 1 };
    PolyMatrix2::new(GPoly::one(), GPoly::from_ints(&[s]), GPoly::zero(), GPoly::one())
}

fn rho_b(inv: bool) -> PolyMatrix2 {
    // [[1, 0], [-y, 1]]; inverse [[1, 0], [y, 1]]
    let y = GPoly::x();
    let e = if inv { y } else { -y };
    PolyMatrix2::new(GPoly::one(), GPoly::zero(), e, GPoly::one())
}

/// `W = prod_i x_i^{eps_i}`, `x_i = a` for odd `i` and `b` for even `i`.
/// With `star`, the letters are exchanged.
pub fn riley_word_matrix(frac: &Fraction, star: bool) -> PolyMatrix2 {
    let eps = epsilon_sequence(frac);
    let mut w = PolyMatrix2::identity();
    for (k, &e) in eps.iter().enumerate() {
        let odd = (k + 1) % 2 == 1;
        let m = if odd != star { rho_a(e < 0) } else { rho_b(e < 0) };
        w = &w * &m;
    }
    w
}

/// `W_11` for knots, `W_12` for links, as a polynomial in `y`, sign-normalized.
pub fn riley_polynomial(frac: &Fraction) -> Result<GPoly> {
    if frac.is_trivial() {
        return Err(Error::Degenerate(format!("{frac} is the unknot")));
    }
    let w = riley_word_matrix(frac, false);
    let r = if frac.is_knot() { w.e[0][0].clone() } else { w.e[0][1].clone() };
    Ok(r.normalize_sign())
}

/// Record of a confirmed identity `P(u) = sign * u^eps * R(u^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeProof {
    pub epsilon: u32,
    pub sign: i8,
}

pub fn verify_bridge(p: &GPoly, r: &GPoly, is_knot: bool) -> Result<BridgeProof> {
    let eps = if is_knot { 1 } else { 2 };
    let rhs = r.substitute_square().shift_up(eps);
    if *p == rhs {
        Ok(BridgeProof { epsilon: eps as u32, sign: 1 })
    } else if *p == -&rhs {
        Ok(BridgeProof { epsilon: eps as u32, sign: -1 })
    } else {
        Err(Error::Engine(format!("bridge mismatch: P = {p} but u^{eps} R(u^2) = {rhs}")))
    }
}

/// `P = unit * u * g * g^` with `g^(u) = (-1)^{deg g} g(-u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub g: GPoly,
    pub g_hat: GPoly,
}

pub fn hat(g: &GPoly) -> GPoly {
    let d = g.degree().unwrap_or(0);
    let s = g.substitute_neg();
    if d % 2 == 1 {
        -s
    } else {
        s
    }
}

/// Largest allowed number of independent sign choices.
pub const MAX_SPLIT_CHOICES: usize = 24;

/// Pick between `g` and `g^`: prefer `g(-1) < 0`, else the larger coefficient at the highest
/// degree of opposite parity to `deg g`.
fn canonical_choice(g: GPoly) -> GPoly {
    let h = hat(&g);
    let at_m1 = |p: &GPoly| p.eval_gauss(&GaussInt::real(-1)).re;
    let (gm, hm) = (at_m1(&g), at_m1(&h));
    if gm.is_negative() && !hm.is_negative() {
        return g;
    }
    if hm.is_negative() && !gm.is_negative() {
        return h;
    }
    let d = g.degree().unwrap_or(0);
    for j in (0..d).rev().filter(|j| (d - j) % 2 == 1) {
        let c = &g.coeff(j).re;
        if !c.is_zero() {
            return if c.is_positive() { g } else { h };
        }
    }
    g
}

/// A root group: one real-positive `y = r^2` or one conjugate pair of `y` values.
struct Group {
    /// Values of `r` chosen by bit 0 (the alternative is `-r`).
    rs: Vec<Complex<Real256>>,
}

fn poly_from_roots(rs: &[Complex<Real256>]) -> Vec<Complex<Real256>> {
    let mut c = vec![Complex::new(Real256::from_int(1), Real256::zero())];
    for r in rs {
        let mut next = vec![Complex::<Real256>::zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + ck.clone();
            next[k] = next[k].clone() - ck.clone() * r.clone();
        }
        c = next;
    }
    c
}

/// Find the integral factor `g` of a knot rep-polynomial.
pub fn split_polynomial(p: &GPoly, is_knot: bool) -> Result<Splitting> {
    if !is_knot {
        return Err(Error::InvalidInput("the splitting exists for knots only".into()));
    }
    let rpoly = p.even_part_as_y(1)?;
    let m = rpoly.degree().unwrap_or(0);
    if m == 0 {
        return Err(Error::InvalidInput(format!("{p} has no nonzero roots")));
    }
    let ys = find_roots::<Real256>(&rpoly)?;
    let mut groups: Vec<Group> = Vec::new();
    let mut used = vec![false; ys.len()];
    for i in 0..ys.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let y = &ys[i];
        let r = sqrt_c(y);
        let yc = y.to_c64();
        if yc.im.abs() < 1e-40_f64.max(1e-30 * yc.norm()) {
            groups.push(Group { rs: vec![r] });
        } else {
            let conj = (0..ys.len())
                .filter(|&j| !used[j])
                .min_by(|&a, &b| {
                    let da = (ys[a].to_c64() - yc.conj()).norm();
                    let db = (ys[b].to_c64() - yc.conj()).norm();
                    da.total_cmp(&db)
                })
                .ok_or_else(|| Error::Numeric("unpaired complex root of R".into()))?;
            used[conj] = true;
            let rc = Complex::new(r.re.clone(), -r.im.clone());
            groups.push(Group { rs: vec![r, rc] });
        }
    }
    let k = groups.len();
    if k > MAX_SPLIT_CHOICES {
        return Err(Error::InvalidInput(format!("{k} sign choices exceed the bound {MAX_SPLIT_CHOICES}")));
    }
    let target_deg = m;
    let check = |mask: u64| -> Option<GPoly> {
        let mut rs = Vec::with_capacity(target_deg);
        for (b, g) in groups.iter().enumerate() {
            let flip = (mask >> b) & 1 == 1;
            for r in &g.rs {
                rs.push(if flip { -r.clone() } else { r.clone() });
            }
        }
        // cheap screen: low power sums must be near integers
        let r64: Vec<Complex<f64>> = rs.iter().map(|r| r.to_c64()).collect();
        for pw in [1, 3] {
            let s: Complex<f64> = r64.iter().map(|r| r.powi(pw)).sum();
            if (s.re - s.re.round()).abs() > 1e-6 * (1.0 + s.re.abs()) || s.im.abs() > 1e-6 * (1.0 + s.norm()) {
                return None;
            }
        }
        let coeffs = poly_from_roots(&rs);
        let tol = Real256::from_f64_lossy(1e-15);
        let mut ints = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            let n = c.re.round_to_bigint();
            let err = (c.re.clone() - Real256::from_bigint(&n)).abs();
            if err > tol.clone() * (Real256::one() + c.re.abs())
                || c.im.abs() > tol.clone() * (Real256::one() + c.re.abs())
            {
                return None;
            }
            ints.push(n);
        }
        let g = GPoly::from_bigints(ints);
        let prod = GPoly::x() * &g * hat(&g);
        (prod == *p || prod == -p).then_some(g)
    };
    let found = (0u64..(1u64 << k)).into_par_iter().find_first(|&mask| check(mask).is_some());
    match found {
        Some(mask) => {
            let g = canonical_choice(check(mask).expect("mask was accepted"));
            let g_hat = hat(&g);
            if g == g_hat {
                return Err(Error::Engine(format!("degenerate splitting g = g^ = {g}")));
            }
            Ok(Splitting { g, g_hat })
        }
        None => Err(Error::Numeric(format!("no integral splitting of {p} found; increase precision"))),
    }
}

fn sqrt_c<R: Real>(z: &Complex<R>) -> Complex<R> {
    let m = z.cabs();
    let half = R::from_f64_lossy(0.5);
    let re = ((m.clone() + z.re.clone()) * half.clone()).sqrt();
    let im = ((m - z.re.clone()) * half).sqrt();
    let im = if z.im < R::zero() { -im } else { im };
    Complex::new(re, im)
}

/// `g(u) = A(u^2) + u B(u^2)`.
pub fn trace_field_witness(g: &GPoly) -> Result<(GPoly, GPoly)> {
    let even: Vec<GaussInt> = g.coeffs().iter().step_by(2).cloned().collect();
    let odd: Vec<GaussInt> = g.coeffs().iter().skip(1).step_by(2).cloned().collect();
    let (a, b) = (GPoly::new(even), GPoly::new(odd));
    if b.is_zero() {
        return Err(Error::InvalidInput(format!("{g} has no odd part")));
    }
    Ok((a, b))
}

/// `r^2 (P/u)(r)` rewritten as the constant-term relation: returns `r^2 * Q(r)` where
/// `P/u = Q(u) u^2 + c` and `c = +-1`; its distance to `-c` is the unit residual.
pub fn unit_certificate<R: Real>(p: &GPoly, r: &Complex<R>) -> Result<(Complex<R>, f64)> {
    let q = p.shift_down(1).ok_or_else(|| Error::InvalidInput(format!("u does not divide {p}")))?;
    let c0 = q.coeff(0);
    if !c0.is_real() || c0.re.abs() != BigInt::from(1) {
        return Err(Error::InvalidInput(format!("constant term of P/u is {c0}, not +-1")));
    }
    let rest = GPoly::new(q.coeffs()[1..].to_vec()).shift_down(1).unwrap_or_else(GPoly::zero);
    let lhs = r.clone() * r.clone() * rest.eval_complex(r);
    let want = Complex::new(R::from_int(-c0.re.to_i64().unwrap_or(1)), R::zero());
    let res = (lhs.clone() - want).cabs().to_f64();
    Ok((lhs, res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::rep_polynomial;
    use crate::conway::Descriptor;

    fn p(s: &str) -> GPoly {
        GPoly::parse(s).unwrap()
    }

    fn fr(a: i64, b: i64) -> Fraction {
        Fraction::new(a, b).unwrap()
    }

    #[test]
    fn epsilons() {
        assert_eq!(epsilon_sequence(&fr(3, 1)), vec![-1, -1]);
        assert_eq!(epsilon_sequence(&fr(5, 3)), vec![-1, 1, 1, -1]);
    }

    #[test]
    fn riley_examples() {
        assert_eq!(riley_polynomial(&fr(7, 3)).unwrap(), p("y^3 - y^2 + 2y - 1").normalize_sign());
        assert_eq!(riley_polynomial(&fr(7, 5)).unwrap(), p("y^3 + 3y^2 + 2y - 1"));
        assert_eq!(riley_polynomial(&fr(3, 1)).unwrap(), p("y - 1"));
    }

    #[test]
    fn bridge_small() {
        for a in 3..=25 {
            for b in 1..a {
                let Ok(f) = Fraction::new(a, b) else { continue };
                let pp = rep_polynomial(&Descriptor::Fraction(f)).unwrap();
                verify_bridge(&pp, &riley_polynomial(&f).unwrap(), f.is_knot()).unwrap();
                let m = f.mirror_image();
                let pm = rep_polynomial(&Descriptor::Fraction(m)).unwrap();
                verify_bridge(&pm, &riley_polynomial(&m).unwrap(), f.is_knot()).unwrap();
            }
        }
    }

    #[test]
    fn palindromic_epsilons() {
        for a in 3..=40 {
            for b in 1..a {
                let Ok(f) = Fraction::new(a, b) else { continue };
                let e = epsilon_sequence(&f);
                assert!(e.iter().eq(e.iter().rev()), "{f}");
            }
        }
    }

    #[test]
    fn splittings() {
        let s = split_polynomial(&p("u^7 - u^5 + 2u^3 - u"), true).unwrap();
        assert_eq!(s.g, p("u^3 + u^2 - 1"));
        let s = split_polynomial(&p("u^7 + 3u^5 + 2u^3 - u"), true).unwrap();
        assert_eq!(s.g, p("u^3 + u^2 + 2u + 1"));
        let s = split_polynomial(&p("u^3 - u"), true).unwrap();
        assert_eq!(s.g, p("u - 1"));
        assert_eq!(s.g_hat, p("u + 1"));
    }

    #[test]
    fn witnesses() {
        assert_eq!(trace_field_witness(&p("u^3 + u^2 - 1")).unwrap(), (p("u - 1"), p("u")));
        assert_eq!(trace_field_witness(&p("u^3 + u^2 + 2u + 1")).unwrap(), (p("u + 1"), p("u + 2")));
        let (_, res) =
            unit_certificate(&p("u^7 - u^5 + 2u^3 - u"), &crate::scalar::c::<f64>(0.754877666246693, 0.0)).unwrap();
        assert!(res < 1e-12);
    }
}
