//! Principal-branch dilogarithm at arbitrary precision.
//!
//! Inversion maps `|z| > 1` into the unit disc, reflection maps `Re z > 1/2` to
//! `1 - z`, and the remaining region uses the Bernoulli series in `-log(1 - z)`.

use std::any::{Any, TypeId};
use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{ComplexExt, Real};

/// `B_{2k} / (2k+1)!` for `k = 1..=n`.
fn series_coefficients(n: usize) -> Vec<BigRational> {
    // B_m from sum_{j<=m} C(m+1, j) B_j = 0
    let top = 2 * n;
    let mut b: Vec<BigRational> = Vec::with_capacity(top + 1);
    b.push(BigRational::one());
    for m in 1..=top {
        let mut binom = BigInt::one(); // C(m+1, 0)
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // binom is now C(m+1, m)
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let m = 2 * k;
        // fact = (2k+1)!
        if k == 1 {
            fact = BigInt::from(6);
        } else {
            fact *= BigInt::from((m) * (m + 1));
        }
        out.push(&b[m] / BigRational::from_integer(fact.clone()));
    }
    out
}

struct Cache<R> {
    coeffs: Vec<R>,
    pi2_6: R,
}

thread_local! {
    static CACHES: RefCell<HashMap<TypeId, Box<dyn Any>>> = RefCell::new(HashMap::new());
}

fn terms_needed<R: Real>() -> usize {
    // |w| <= 1.1 after the reductions; (1.1/2pi)^(2k) < 2^-(bits+8)
    ((R::bits() as f64 + 8.0) / (2.0 * (2.0 * std::f64::consts::PI / 1.1).log2())).ceil() as usize + 2
}

fn with_cache<R: Real, T>(f: impl FnOnce(&Cache<R>) -> T) -> T {
    CACHES.with(|c| {
        let mut map = c.borrow_mut();
        let entry = map.entry(TypeId::of::<R>()).or_insert_with(|| {
            let n = terms_needed::<R>();
            let coeffs = series_coefficients(n)
                .iter()
                .map(|q| {
                    let g = q.numer().gcd(q.denom());
                    R::from_bigint(&(q.numer() / &g)) / R::from_bigint(&(q.denom() / &g))
                })
                .collect();
            let pi = R::pi();
            Box::new(Cache { coeffs, pi2_6: pi.clone() * pi / R::from_int(6) })
        });
        f(entry.downcast_ref::<Cache<R>>().expect("cache type matches key"))
    })
}

/// `pi^2 / 6` at the working precision.
pub fn zeta2<R: Real>() -> R {
    with_cache::<R, _>(|c| c.pi2_6.clone())
}

/// Bernoulli series in `w = -log(1 - z)`; returns `(Li2(z), w)`.
fn series<R: Real>(z: &Complex<R>) -> (Complex<R>, Complex<R>) {
    let one = Complex::new(R::one(), R::zero());
    let w = -(one - z.clone()).cln();
    let w2 = w.clone() * w.clone();
    let mut sum = w.clone() - w2.clone() * R::from_f64_lossy(0.25);
    // terms decay like (|w| / 2pi)^(2k)
    let ratio = (w.to_c64().norm() / (2.0 * std::f64::consts::PI)).max(1e-300);
    let want = ((R::bits() as f64 + 8.0) / (-2.0 * ratio.log2())).ceil().max(1.0) as usize;
    with_cache::<R, _>(|cache| {
        let mut pw = w.clone() * w2.clone();
        for c in cache.coeffs.iter().take(want) {
            sum = sum.clone() + Complex::new(pw.re.clone() * c.clone(), pw.im.clone() * c.clone());
            pw = pw * w2.clone();
        }
    });
    (sum, w)
}

/// Shift the imaginary part by a multiple of `2 pi` into `(-pi, pi]`.
pub(crate) fn principal<R: Real>(l: Complex<R>) -> Complex<R> {
    let two_pi = R::pi().mul_pow2(1);
    let k = -(l.im.to_f64() / (2.0 * std::f64::consts::PI)).round();
    if k == 0.0 {
        return l;
    }
    let im = l.im + two_pi * R::from_f64_lossy(k);
    Complex::new(l.re, im)
}

/// `(Li2(z), log(1 - z))` on the principal branches; `z != 1`.
pub fn dilog_log1m<R: Real>(z: &Complex<R>) -> (Complex<R>, Complex<R>) {
    let one = Complex::new(R::one(), R::zero());
    let z2 = Complex::new(zeta2::<R>(), R::zero());
    if z.is_zero() {
        return (Complex::zero(), Complex::zero());
    }
    let half = R::from_f64_lossy(0.5);
    if z.norm_sqr_r() > R::one() {
        // 1 - z = (-z)(1 - 1/z)
        let l = (-z.clone()).cln();
        let (d, lg) = dilog_log1m(&(one / z.clone()));
        let li = -d - z2 - l.clone() * l.clone() * half;
        return (li, principal(l + lg));
    }
    if z.re > half {
        let omz = one - z.clone();
        let (s, w) = series(&omz);
        let lz = -w;
        let lg = omz.cln();
        return (-s + z2 - lz * lg.clone(), lg);
    }
    let (s, w) = series(z);
    (s, -w)
}

/// `Li2(z)` on the principal branch (cut along `[1, inf)`).
pub fn dilog<R: Real>(z: &Complex<R>) -> Complex<R> {
    if *z == Complex::new(R::one(), R::zero()) {
        return Complex::new(zeta2::<R>(), R::zero());
    }
    dilog_log1m(z).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::Real256;

    #[test]
    fn classical_values() {
        let pi = std::f64::consts::PI;
        assert_eq!(dilog::<f64>(&c(0.0, 0.0)), c(0.0, 0.0));
        assert!((dilog::<f64>(&c(1.0, 0.0)).re - pi * pi / 6.0).abs() < 1e-15);
        assert!((dilog::<f64>(&c(-1.0, 0.0)).re + pi * pi / 12.0).abs() < 1e-15);
        // Li2(1/2) = pi^2/12 - ln(2)^2/2
        let v = dilog::<Real256>(&c(0.5, 0.0));
        let l2 = std::f64::consts::LN_2;
        assert!((v.re.to_f64() - (pi * pi / 12.0 - l2 * l2 / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn high_precision_identity() {
        // Li2(z) + Li2(1-z) = pi^2/6 - log z log(1-z), checked through different branches
        let z = c::<Real256>(0.3, 0.8);
        let omz = c::<Real256>(1.0, 0.0) - z.clone();
        let lhs = dilog(&z) + dilog(&omz);
        let rhs = Complex::new(zeta2::<Real256>(), Real256::zero()) - z.cln() * omz.cln();
        assert!((lhs - rhs).cabs().to_f64() < 1e-70);
        // Li2(i) = -pi^2/48 + i G (Catalan)
        let v = dilog(&c::<Real256>(0.0, 1.0));
        assert!((v.im.to_f64() - 0.915_965_594_177_219).abs() < 1e-15);
        assert!((v.re.to_f64() + std::f64::consts::PI.powi(2) / 48.0).abs() < 1e-15);
    }
}
