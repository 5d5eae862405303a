use std::ops::Mul;

use num_complex::Complex;
use num_traits::Zero;

use super::cheb::cheb_p_pair_at;
use super::poly::GPoly;
use crate::scalar::{ComplexExt, Real};
use crate::{Error, Result};

/// 2x2 matrix of polynomials, `e[row][col]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix2 {
    pub e: [[GPoly; 2]; 2],
}

impl PolyMatrix2 {
    pub fn new(a: GPoly, b: GPoly, c: GPoly, d: GPoly) -> Self {
        PolyMatrix2 { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        PolyMatrix2::new(GPoly::one(), GPoly::zero(), GPoly::zero(), GPoly::one())
    }

    /// The crossing matrix `X(v) = [[0, -1], [1, -v]]`.
    pub fn crossing(v: &GPoly) -> Self {
        PolyMatrix2::new(GPoly::zero(), -GPoly::one(), GPoly::one(), -v)
    }

    pub fn det(&self) -> GPoly {
        &self.e[0][0] * &self.e[1][1] - &self.e[0][1] * &self.e[1][0]
    }

    pub fn trace(&self) -> GPoly {
        &self.e[0][0] + &self.e[1][1]
    }

    pub fn scale(&self, c: &GPoly) -> Self {
        let [[a, b], [cc, d]] = &self.e;
        PolyMatrix2::new(a * c, b * c, cc * c, d * c)
    }

    pub fn sub(&self, o: &PolyMatrix2) -> Self {
        PolyMatrix2::new(
            &self.e[0][0] - &o.e[0][0],
            &self.e[0][1] - &o.e[0][1],
            &self.e[1][0] - &o.e[1][0],
            &self.e[1][1] - &o.e[1][1],
        )
    }

    /// Naive power by repeated multiplication; negative exponents use the adjugate
    /// (valid for determinant one).
    pub fn naive_pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.adjugate() } else { self.clone() };
        let mut acc = PolyMatrix2::identity();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn adjugate(&self) -> Self {
        let [[a, b], [c, d]] = &self.e;
        PolyMatrix2::new(d.clone(), -b, -c, a.clone())
    }

    /// `M^n = p_n(t) M - p_{n-1}(t) I` with `t = tr M`; requires `det M = 1`.
    pub fn sl2_power(&self, n: i64) -> Result<Self> {
        if self.det() != GPoly::one() {
            return Err(Error::InvalidInput("sl2_power needs a determinant-one matrix".into()));
        }
        let (pn, pn1) = cheb_p_pair_at(n, &self.trace());
        Ok(self.scale(&pn).sub(&PolyMatrix2::identity().scale(&pn1)))
    }
}

impl<'a> Mul<&'a PolyMatrix2> for &'a PolyMatrix2 {
    type Output = PolyMatrix2;
    fn mul(self, o: &PolyMatrix2) -> PolyMatrix2 {
        let m = |i: usize, j: usize| &self.e[i][0] * &o.e[0][j] + &self.e[i][1] * &o.e[1][j];
        PolyMatrix2::new(m(0, 0), m(0, 1), m(1, 0), m(1, 1))
    }
}

/// Numeric 2x2 complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat2<R: Real> {
    pub e: [[Complex<R>; 2]; 2],
}

impl<R: Real> CMat2<R> {
    pub fn new(a: Complex<R>, b: Complex<R>, c: Complex<R>, d: Complex<R>) -> Self {
        CMat2 { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        let o = Complex::new(R::one(), R::zero());
        let z = Complex::zero();
        CMat2::new(o.clone(), z.clone(), z, o)
    }

    pub fn det(&self) -> Complex<R> {
        self.e[0][0].clone() * self.e[1][1].clone() - self.e[0][1].clone() * self.e[1][0].clone()
    }

    pub fn trace(&self) -> Complex<R> {
        self.e[0][0].clone() + self.e[1][1].clone()
    }

    pub fn mul(&self, o: &CMat2<R>) -> CMat2<R> {
        let m =
            |i: usize, j: usize| self.e[i][0].clone() * o.e[0][j].clone() + self.e[i][1].clone() * o.e[1][j].clone();
        CMat2::new(m(0, 0), m(0, 1), m(1, 0), m(1, 1))
    }

    /// Chebyshev power; `tol` bounds `|det M - 1|`.
    pub fn sl2_power(&self, n: i64, tol: f64) -> Result<Self> {
        let one = Complex::new(R::one(), R::zero());
        if (self.det() - one).cabs().to_f64() > tol {
            return Err(Error::InvalidInput("sl2_power needs a determinant-one matrix".into()));
        }
        let t = self.trace();
        let (pn, pn1) = cheb_p_pair_numeric(n, &t);
        let id = CMat2::identity();
        let f = |i: usize, j: usize| pn.clone() * self.e[i][j].clone() - pn1.clone() * id.e[i][j].clone();
        Ok(CMat2::new(f(0, 0), f(0, 1), f(1, 0), f(1, 1)))
    }
}

/// `(p_n(t), p_{n-1}(t))` numerically.
pub fn cheb_p_pair_numeric<R: Real>(n: i64, t: &Complex<R>) -> (Complex<R>, Complex<R>) {
    let zero = Complex::<R>::zero();
    let one = Complex::new(R::one(), R::zero());
    // p_0 = 0, p_1 = 1; p_{k+1} = t p_k - p_{k-1}; p_{k-1} = t p_k - p_{k+1}
    let (mut prev, mut cur) = (zero, one.clone()); // (p_0, p_1)
    if n >= 1 {
        for _ in 1..n {
            let next = t.clone() * cur.clone() - prev.clone();
            prev = cur;
            cur = next;
        }
        (cur, prev)
    } else {
        // walk down: (p_k, p_{k+1}) starting from (p_0, p_1)
        let (mut hi, mut lo) = (one, Complex::zero());
        for _ in 0..(-n + 1) {
            let below = t.clone() * lo.clone() - hi.clone();
            hi = lo;
            lo = below;
        }
        // after -n+1 steps: hi = p_n, lo = p_{n-1}
        (hi, lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GPoly {
        GPoly::parse(s).unwrap()
    }

    #[test]
    fn crossing_matrix_square() {
        let x = PolyMatrix2::crossing(&GPoly::x());
        let sq = x.sl2_power(2).unwrap();
        assert_eq!(sq, PolyMatrix2::new(p("-1"), p("u"), p("-u"), p("u^2 - 1")));
        assert_eq!(sq, &x * &x);
        assert_eq!(x.sl2_power(0).unwrap(), PolyMatrix2::identity());
        assert_eq!(x.sl2_power(-3).unwrap(), x.naive_pow(-3));
    }

    #[test]
    fn numeric_power() {
        let c = |a: f64, b: f64| Complex::new(a, b);
        let m = CMat2::new(c(1.0, 0.5), c(0.3, 0.0), c(0.0, 0.0), c(1.0, 0.5).inv());
        let mut naive = CMat2::identity();
        for _ in 0..5 {
            naive = naive.mul(&m);
        }
        let fast = m.sl2_power(5, 1e-12).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((naive.e[i][j] - fast.e[i][j]).norm() < 1e-12);
            }
        }
    }
}
