use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Gaussian integer `re + im*i` with unbounded components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: BigInt::zero() }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> Self {
        GaussInt { re: -&self.im, im: self.re.clone() }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussInt::real(1),
            1 => GaussInt::new(0, 1),
            2 => GaussInt::real(-1),
            _ => GaussInt::new(0, -1),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Canonical positivity: `re > 0`, or `re = 0` and `im > 0`.
    pub fn is_canonical_positive(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && self.im.is_positive())
    }

    /// Exact quotient in Z[i], if `other` divides `self`.
    pub fn checked_div(&self, other: &GaussInt) -> Option<GaussInt> {
        if other.is_zero() {
            return None;
        }
        if other.is_real() {
            let d = &other.re;
            let (qr, rr) = self.re.div_rem(d);
            let (qi, ri) = self.im.div_rem(d);
            return (rr.is_zero() && ri.is_zero()).then_some(GaussInt { re: qr, im: qi });
        }
        let n = other.norm();
        let num = self * &other.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then_some(GaussInt { re: qr, im: qi })
    }
}

impl From<i64> for GaussInt {
    fn from(n: i64) -> Self {
        GaussInt::real(n)
    }
}

impl From<BigInt> for GaussInt {
    fn from(n: BigInt) -> Self {
        GaussInt::real(n)
    }
}

impl Zero for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussInt {
    fn one() -> Self {
        GaussInt::real(1)
    }
}

impl<'a> Add<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn add(self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn sub(self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussInt> for &'a GaussInt {
    type Output = GaussInt;
    fn mul(self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt::real(&self.re * &o.re);
        }
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        &self + &o
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        &self - &o
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        &self * &o
    }
}

impl AddAssign<&GaussInt> for GaussInt {
    fn add_assign(&mut self, o: &GaussInt) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussInt> for GaussInt {
    fn sub_assign(&mut self, o: &GaussInt) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |b: &BigInt| -> String {
            if b.is_one() {
                "i".into()
            } else if *b == -BigInt::one() {
                "-i".into()
            } else {
                format!("{b}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => f.write_str(&imag(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({}-{})", self.re, imag(&-&self.im))
                } else {
                    write!(f, "({}+{})", self.re, imag(&self.im))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GaussInt::new(3, 4);
        let b = GaussInt::new(1, -2);
        assert_eq!(&a * &b, GaussInt::new(11, -2));
        assert_eq!((&a * &b).checked_div(&b), Some(a.clone()));
        assert_eq!(GaussInt::new(1, 1).checked_div(&GaussInt::real(2)), None);
        assert_eq!(a.mul_i(), GaussInt::new(-4, 3));
        assert_eq!(GaussInt::i_pow(-1), GaussInt::new(0, -1));
        assert!(GaussInt::new(0, -1).is_unit());
        assert!(GaussInt::new(0, 2).is_canonical_positive());
        assert!(!GaussInt::new(0, -2).is_canonical_positive());
    }
}
