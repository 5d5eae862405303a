//! Polynomial roots by Aberth-Ehrlich iteration: an `f64` pass followed by a
//! polish at the working precision.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use crate::polycore::{squarefree_decomposition, GPoly};
use crate::scalar::{ComplexExt, Real};
use crate::{Error, Result};

/// A root together with its multiplicity.
#[derive(Clone, Debug)]
pub struct Root<R: Real> {
    pub value: Complex<R>,
    pub multiplicity: u32,
    /// Estimated absolute error: condition number times the unit roundoff.
    pub error: f64,
}

impl<R: Real> Root<R> {
    /// Decimal places backed by the error estimate, capped at `max`.
    pub fn reliable_decimals(&self, max: usize) -> usize {
        if self.error <= 0.0 {
            return max;
        }
        ((-self.error.log10()).floor().max(0.0) as usize).saturating_sub(1).min(max)
    }
}

const F64_ITERS: usize = 4000;
const F64_STALL: usize = 100;
const POLISH_ITERS: usize = 200;
const POLISH_STALL: usize = 10;

fn eval_pd<R: Real>(c: &[Complex<R>], z: &Complex<R>) -> (Complex<R>, Complex<R>) {
    let n = c.len() - 1;
    let mut p = c[n].clone();
    let mut dp = Complex::<R>::zero();
    for k in (0..n).rev() {
        dp = dp * z.clone() + p.clone();
        p = p * z.clone() + c[k].clone();
    }
    (p, dp)
}

/// Coefficients scaled by a power of two so the largest has magnitude about one.
fn to_c64(p: &GPoly) -> Vec<Complex<f64>> {
    let top = p.coeffs().iter().map(|c| c.re.bits().max(c.im.bits())).max().unwrap_or(0) as i64;
    let f = |b: &BigInt| -> f64 {
        let nb = b.bits() as i64;
        let keep = nb.min(64);
        let head = (b >> (nb - keep) as usize).to_f64().unwrap_or(0.0);
        head * 2f64.powi((nb - keep - top).max(-1100) as i32)
    };
    p.coeffs().iter().map(|c| Complex::new(f(&c.re), f(&c.im))).collect()
}

/// Newton step `p(z)/p'(z)` in `f64`, through the reversed polynomial when `|z| > 1`.
fn newton_f64(c: &[Complex<f64>], z: Complex<f64>) -> Option<Complex<f64>> {
    let d = c.len() - 1;
    if z.norm() <= 1.0 {
        let (p, dp) = eval_pd(c, &z);
        if p == Complex::new(0.0, 0.0) {
            return None;
        }
        return Some(p / dp);
    }
    let w = z.inv();
    let rev: Vec<Complex<f64>> = c.iter().rev().cloned().collect();
    let (q, dq) = eval_pd(&rev, &w);
    if q == Complex::new(0.0, 0.0) {
        return None;
    }
    // p'/p = d w - w^2 q'(w)/q(w)
    let ratio = w * d as f64 - w * w * dq / q;
    Some(ratio.inv())
}

fn aberth_sweep_f64(c: &[Complex<f64>], z: &mut [Complex<f64>], active: &mut [bool], tol: f64) {
    let n = z.len();
    let mut upd = vec![None; n];
    for j in 0..n {
        if !active[j] {
            continue;
        }
        let Some(w) = newton_f64(c, z[j]) else {
            active[j] = false;
            continue;
        };
        let s: Complex<f64> = (0..n).filter(|&k| k != j).map(|k| (z[j] - z[k]).inv()).sum();
        let corr = w / (1.0 - w * s);
        if !(corr.re.is_finite() && corr.im.is_finite()) {
            continue;
        }
        if corr.norm() / z[j].norm().max(1.0) < tol {
            active[j] = false;
        }
        upd[j] = Some(corr);
    }
    for (zj, u) in z.iter_mut().zip(upd) {
        if let Some(corr) = u {
            *zj -= corr;
        }
    }
}

/// Fujiwara's upper bound on the moduli of the roots.
fn fujiwara(c: &[Complex<f64>]) -> f64 {
    let d = c.len() - 1;
    let lead = c[d].norm();
    let mut m: f64 = 0.0;
    for k in 1..=d {
        let mut q = c[d - k].norm() / lead;
        if k == d {
            q /= 2.0;
        }
        m = m.max(q.powf(1.0 / k as f64));
    }
    2.0 * m
}

/// One synchronous Aberth sweep; returns the largest relative correction.
fn aberth_sweep<R: Real>(c: &[Complex<R>], z: &mut [Complex<R>], active: &mut [bool], tol: f64) -> f64 {
    let n = z.len();
    let one = Complex::new(R::one(), R::zero());
    let mut upd = vec![None; n];
    let mut worst: f64 = 0.0;
    for j in 0..n {
        if !active[j] {
            continue;
        }
        let (p, dp) = eval_pd(c, &z[j]);
        if p.is_zero() {
            active[j] = false;
            continue;
        }
        let w = p / dp;
        let mut s = Complex::<R>::zero();
        for k in 0..n {
            if k != j {
                s = s + one.clone() / (z[j].clone() - z[k].clone());
            }
        }
        let corr = w.clone() / (one.clone() - w * s);
        let scale = z[j].to_c64().norm().max(1.0);
        let rel = corr.to_c64().norm() / scale;
        worst = worst.max(if rel.is_finite() { rel } else { f64::INFINITY });
        if rel < tol {
            active[j] = false;
        }
        upd[j] = Some(corr);
    }
    for (zj, u) in z.iter_mut().zip(upd) {
        if let Some(corr) = u {
            if corr.is_finite_c() {
                *zj = zj.clone() - corr;
            }
        }
    }
    worst
}

/// Roots of a square-free polynomial with nonzero constant term, with absolute error estimates.
fn roots_squarefree<R: Real>(p: &GPoly) -> Result<Vec<(Complex<R>, f64)>> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    let cr: Vec<Complex<R>> = p.to_complex();
    let unit = 2f64.powi(-(R::bits() as i32));
    if d == 1 {
        let r = -(cr[0].clone() / cr[1].clone());
        let e = r.to_c64().norm() * unit;
        return Ok(vec![(r, e)]);
    }
    let c64 = to_c64(p);
    if c64.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Numeric(format!("coefficients of a degree-{d} polynomial overflow f64")));
    }
    let rad = fujiwara(&c64);
    let mut z: Vec<Complex<f64>> = (0..d)
        .map(|j| {
            let th = std::f64::consts::TAU * (j as f64 + 0.25) / d as f64 + 0.001 * j as f64;
            Complex::from_polar(rad, th)
        })
        .collect();
    let mut active = vec![true; d];
    let (mut left, mut since) = (d, 0);
    for _ in 0..F64_ITERS {
        aberth_sweep_f64(&c64, &mut z, &mut active, 1e-14);
        let now = active.iter().filter(|&&a| a).count();
        if now == 0 {
            break;
        }
        // once some roots have settled, a long stall means the rest sit at the f64 noise floor
        since = if now < left { 0 } else { since + 1 };
        left = now;
        if left < d && since > F64_STALL {
            break;
        }
    }
    let mut zr: Vec<Complex<R>> =
        z.iter().map(|w| Complex::new(R::from_f64_lossy(w.re), R::from_f64_lossy(w.im))).collect();
    if R::bits() > 53 {
        // Newton squares the error, so a root whose last correction was below half the precision is done
        let tol = 2f64.powf(-(R::bits() as f64) / 2.0);
        let good = 2f64.powf(-(R::bits() as f64) / 3.0);
        let settled = 2f64.powf(-(R::bits() as f64) / 8.0);
        let mut active = vec![true; d];
        let mut prev = f64::INFINITY;
        let mut stalled = 0;
        let (mut best, mut since_best) = (f64::INFINITY, 0);
        for _ in 0..POLISH_ITERS {
            let worst = aberth_sweep(&cr, &mut zr, &mut active, tol);
            if !active.iter().any(|&a| a) {
                break;
            }
            // ill-conditioned roots bottom out above `tol`
            stalled = if worst < good && worst > 0.5 * prev { stalled + 1 } else { 0 };
            if stalled >= 3 {
                break;
            }
            prev = prev.min(worst);
            // converged to a noise floor that is too high: leave it to the gates below
            if worst < 0.5 * best {
                best = worst;
                since_best = 0;
            } else {
                since_best += 1;
                if (since_best >= POLISH_STALL && worst < settled) || since_best >= 4 * POLISH_STALL {
                    break;
                }
            }
        }
    }
    // residual gate |P(r)| <= 2^(-bits/2) sum |c_i||r|^i, then forward error
    // sum |c_i||r|^i / |P'(r)| * 2^-bits <= 2^(-bits/4) max(|r|, 1)
    let bound = 2f64.powf(-(R::bits() as f64) / 2.0);
    let fwd = 2f64.powf(-(R::bits() as f64) / 4.0);
    let mut out = Vec::with_capacity(d);
    for r in &zr {
        let (v, dv) = eval_pd(&cr, r);
        let absr = r.cabs();
        let mut scale = R::zero();
        for c in cr.iter().rev() {
            scale = scale * absr.clone() + c.cabs();
        }
        let rel = (v.cabs() / scale.clone()).to_f64();
        if rel.is_nan() || rel > bound {
            let approx: Vec<String> = zr.iter().take(4).map(|w| format!("{}", w.to_c64())).collect();
            return Err(Error::Numeric(format!(
                "root finder did not converge for a degree-{d} polynomial (relative residual {rel:e}); first estimates: [{}, ...]",
                approx.join(", ")
            )));
        }
        let err = (scale / dv.cabs()).to_f64() * unit;
        let size = absr.to_f64().max(1.0);
        if err.is_nan() || err > fwd * size {
            return Err(Error::Numeric(format!(
                "a root of a degree-{d} polynomial is too ill-conditioned for {} bits (estimated error {err:e})",
                R::bits()
            )));
        }
        out.push((r.clone(), err));
    }
    Ok(out)
}

fn sort_key<R: Real>(z: &Complex<R>) -> (f64, f64) {
    let w = z.to_c64();
    (w.re, w.im)
}

fn sort_roots<R: Real>(v: &mut [Root<R>]) {
    v.sort_by(|a, b| {
        let (ka, kb) = (sort_key(&a.value), sort_key(&b.value));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
}

/// Distinct roots of `p` with multiplicities, sorted by real then imaginary part.
pub fn distinct_roots<R: Real>(p: &GPoly) -> Result<Vec<Root<R>>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no isolated roots".into()));
    }
    let v = p.valuation();
    let q = p.shift_down(v).expect("valuation divides");
    let mut out = Vec::new();
    if v > 0 {
        out.push(Root { value: Complex::zero(), multiplicity: v as u32, error: 0.0 });
    }
    let factors = if q.is_real() { squarefree_decomposition(&q)? } else { vec![(q, 1)] };
    for (f, m) in factors {
        for (r, error) in roots_squarefree::<R>(&f)? {
            out.push(Root { value: r, multiplicity: m, error });
        }
    }
    sort_roots(&mut out);
    Ok(out)
}

/// All roots of `p` repeated according to multiplicity, sorted by real then imaginary part.
pub fn find_roots<R: Real>(p: &GPoly) -> Result<Vec<Complex<R>>> {
    Ok(distinct_roots::<R>(p)?
        .into_iter()
        .flat_map(|r| std::iter::repeat(r.value).take(r.multiplicity as usize))
        .collect())
}

/// How to pick one root from a sorted list.
#[derive(Clone, Debug, PartialEq)]
pub enum RootSelector {
    Index(usize),
    Near(Complex<f64>),
}

impl RootSelector {
    /// `#N` or `idx:N` selects by index; anything else is parsed as a complex number.
    pub fn parse(s: &str) -> Result<RootSelector> {
        let t = s.trim();
        if let Some(n) = t.strip_prefix('#').or_else(|| t.strip_prefix("idx:")) {
            return n
                .parse::<usize>()
                .map(RootSelector::Index)
                .map_err(|_| Error::Parse(format!("bad root index {n:?}")));
        }
        crate::scalar::parse_complex::<f64>(t)
            .map(RootSelector::Near)
            .ok_or_else(|| Error::Parse(format!("bad root selector {s:?}")))
    }

    pub fn pick<'a, R: Real>(&self, roots: &'a [Complex<R>]) -> Result<&'a Complex<R>> {
        match self {
            RootSelector::Index(i) => roots
                .get(*i)
                .ok_or_else(|| Error::InvalidInput(format!("root index {i} out of range (have {})", roots.len()))),
            RootSelector::Near(w) => roots
                .iter()
                .min_by(|a, b| (a.to_c64() - w).norm().total_cmp(&(b.to_c64() - w).norm()))
                .ok_or_else(|| Error::InvalidInput("no roots to choose from".into())),
        }
    }
}
