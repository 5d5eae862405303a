//! Real scalar abstraction shared by the numeric layer.
//!
//! Everything numeric is generic over [`Real`]; `f64` and the fixed-width
//! multiprecision [`MpFloat`] both implement it.

use std::any::Any;
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::rc::Rc;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign as MpSign};
use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

/// A real field element with the transcendental functions the geometry layer needs.
pub trait Real:
    Num + Clone + fmt::Debug + fmt::Display + PartialOrd + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Working precision in bits.
    fn bits() -> u32;
    fn pi() -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn parse_decimal(s: &str) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Nearest integer, ties away from zero.
    fn round_to_bigint(&self) -> BigInt;
    /// `self * 2^k`.
    fn mul_pow2(&self, k: i32) -> Self;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn epsilon() -> Self {
        Self::one().mul_pow2(-(Self::bits() as i32))
    }

    fn from_int(n: i64) -> Self {
        <Self as FromPrimitive>::from_i64(n).expect("i64 is representable")
    }

    fn from_f64_lossy(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64")
    }

    fn atan2(&self, x: &Self) -> Self {
        let zero = Self::zero();
        if *x > zero {
            (self.clone() / x.clone()).atan()
        } else if *x < zero {
            let t = (self.clone() / x.clone()).atan();
            if *self < zero {
                t - Self::pi()
            } else {
                t + Self::pi()
            }
        } else if *self > zero {
            Self::pi().mul_pow2(-1)
        } else if *self < zero {
            -Self::pi().mul_pow2(-1)
        } else {
            zero
        }
    }

    /// Fixed-point decimal with `decimals` fractional digits, trailing zeros trimmed.
    fn to_fixed(&self, decimals: usize) -> String {
        let scale = BigInt::from(10u32).pow(decimals as u32);
        let n = (self.clone() * Self::from_bigint(&scale)).round_to_bigint();
        fixed_from_scaled(&n, decimals)
    }
}

pub(crate) fn fixed_from_scaled(n: &BigInt, decimals: usize) -> String {
    let neg = n.sign() == Sign::Minus;
    let digits = n.magnitude().to_string();
    let digits = if digits.len() <= decimals {
        format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - decimals);
    let frac = frac.trim_end_matches('0');
    let mut s = String::new();
    if neg && !(int.chars().all(|c| c == '0') && frac.is_empty()) {
        s.push('-');
    }
    s.push_str(int);
    if !frac.is_empty() {
        s.push('.');
        s.push_str(frac);
    }
    s
}

impl Real for f64 {
    fn bits() -> u32 {
        53
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn round_to_bigint(&self) -> BigInt {
        BigInt::from_f64(self.round()).unwrap_or_default()
    }
    fn mul_pow2(&self, k: i32) -> Self {
        self * 2f64.powi(k)
    }
}

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

const LN_GRID_LO: i64 = 96;
const LN_GRID_HI: i64 = 192;

/// Grid values for the table-reduced `ln` and `atan`.
struct Tables<const B: usize> {
    ln2: MpFloat<B>,
    /// `ln(j / 128)`, `j` in `LN_GRID_LO..=LN_GRID_HI`.
    ln_grid: Vec<MpFloat<B>>,
    /// `atan(j / 64)`, `j` in `0..=64`.
    atan_grid: Vec<MpFloat<B>>,
    /// `1 / (2k + 1)`.
    inv_odd: Vec<MpFloat<B>>,
    half_pi: MpFloat<B>,
}

thread_local! {
    static TABLES: RefCell<HashMap<usize, Rc<dyn Any>>> = RefCell::new(HashMap::new());
}

fn with_tables<const B: usize, T>(f: impl FnOnce(&Tables<B>) -> T) -> T {
    let t = TABLES.with(|m| {
        m.borrow_mut()
            .entry(B)
            .or_insert_with(|| {
                let grid = |j: i64, shift: i32| MpFloat::<B>::from_int(j).mul_pow2(-shift);
                let t = Tables::<B> {
                    ln2: MpFloat::<B>::from_int(2).slow_ln(),
                    ln_grid: (LN_GRID_LO..=LN_GRID_HI).map(|j| grid(j, 7).slow_ln()).collect(),
                    atan_grid: (0..=64).map(|j| grid(j, 6).slow_atan()).collect(),
                    inv_odd: (0..B as i64 / 12 + 4).map(|k| MpFloat::one() / MpFloat::from_int(2 * k + 1)).collect(),
                    half_pi: MpFloat::<B>::pi().mul_pow2(-1),
                };
                Rc::new(t) as Rc<dyn Any>
            })
            .clone()
    });
    f(t.downcast_ref::<Tables<B>>().expect("tables keyed by precision"))
}

/// `atanh(s)` or, with `alternating`, `atan(s)`, for `|s| <= 1/128`.
fn odd_series<const B: usize>(s: &MpFloat<B>, alternating: bool, t: &Tables<B>) -> MpFloat<B> {
    let a = s.to_f64().abs();
    if a == 0.0 {
        return MpFloat::zero();
    }
    let k = (((B as f64 + 4.0) / (-2.0 * a.log2())).ceil() as usize).min(t.inv_odd.len() - 1);
    let s2 = s.clone() * s.clone();
    let s2 = if alternating { -s2 } else { s2 };
    let mut acc = t.inv_odd[k].clone();
    for c in t.inv_odd[..k].iter().rev() {
        acc = acc * s2.clone() + c.clone();
    }
    acc * s.clone()
}

/// Binary floating point with a `BITS`-bit mantissa.
#[derive(Clone)]
pub struct MpFloat<const BITS: usize>(BigFloat);

impl<const B: usize> MpFloat<B> {
    pub fn from_big(x: BigFloat) -> Self {
        let mut x = x;
        if x.mantissa_max_bit_len() != Some(B) && !x.is_zero() {
            let _ = x.set_precision(B, RM);
        }
        MpFloat(x)
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    fn slow_ln(&self) -> Self {
        MpFloat(with_consts(|cc| self.0.ln(B, RM, cc))).check()
    }

    fn slow_atan(&self) -> Self {
        MpFloat(with_consts(|cc| self.0.atan(B, RM, cc))).check()
    }

    fn check(self) -> Self {
        debug_assert!(!self.0.is_nan(), "multiprecision NaN");
        self
    }
}

impl<const B: usize> fmt::Debug for MpFloat<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const B: usize> fmt::Display for MpFloat<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const B: usize> PartialEq for MpFloat<B> {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl<const B: usize> PartialOrd for MpFloat<B> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! mp_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<const B: usize> $tr for MpFloat<B> {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                let f: fn(&BigFloat, &BigFloat) -> BigFloat = $body;
                MpFloat(f(&self.0, &rhs.0)).check()
            }
        }
        impl<'a, const B: usize> $tr<&'a MpFloat<B>> for &'a MpFloat<B> {
            type Output = MpFloat<B>;
            fn $m(self, rhs: &'a MpFloat<B>) -> MpFloat<B> {
                let f: fn(&BigFloat, &BigFloat) -> BigFloat = $body;
                MpFloat(f(&self.0, &rhs.0)).check()
            }
        }
    };
}

mp_binop!(Add, add, |a, b| a.add(b, B, RM));
mp_binop!(Sub, sub, |a, b| a.sub(b, B, RM));
mp_binop!(Mul, mul, |a, b| a.mul(b, B, RM));
mp_binop!(Div, div, |a, b| a.div(b, B, RM));
mp_binop!(Rem, rem, |a, b| a.rem(b));

impl<const B: usize> Neg for MpFloat<B> {
    type Output = Self;
    fn neg(self) -> Self {
        MpFloat(self.0.neg())
    }
}

impl<const B: usize> Zero for MpFloat<B> {
    fn zero() -> Self {
        MpFloat(BigFloat::from_word(0, B))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const B: usize> One for MpFloat<B> {
    fn one() -> Self {
        MpFloat(BigFloat::from_word(1, B))
    }
}

impl<const B: usize> Num for MpFloat<B> {
    type FromStrRadixErr = crate::Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(crate::Error::Parse(format!("unsupported radix {radix}")));
        }
        <Self as Real>::parse_decimal(s).ok_or_else(|| crate::Error::Parse(format!("bad number {s:?}")))
    }
}

impl<const B: usize> FromPrimitive for MpFloat<B> {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::from_bigint(&BigInt::from(n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::from_bigint(&BigInt::from(n)))
    }
    fn from_f64(x: f64) -> Option<Self> {
        if x.is_finite() {
            Some(MpFloat::from_big(BigFloat::from_f64(x, B.max(64))))
        } else {
            None
        }
    }
}

impl<const B: usize> Real for MpFloat<B> {
    fn bits() -> u32 {
        B as u32
    }
    fn pi() -> Self {
        MpFloat(with_consts(|cc| cc.pi(B, RM)))
    }
    fn sqrt(&self) -> Self {
        MpFloat(self.0.sqrt(B, RM)).check()
    }
    fn ln(&self) -> Self {
        let Some(e) = self.0.exponent().filter(|_| self.0.is_positive() && !self.0.is_zero()) else {
            return self.slow_ln();
        };
        // x = m 2^e with m in [0.5, 1); rescale into [0.75, 1.5) and round to the grid j / 128
        let m = self.mul_pow2(-e);
        let (y, k) = if m.to_f64() >= 0.75 { (m, e) } else { (m.mul_pow2(1), e - 1) };
        let j = (y.to_f64() * 128.0).round() as i64;
        let c = Self::from_int(j).mul_pow2(-7);
        let s = (y.clone() - c.clone()) / (y + c);
        with_tables::<B, _>(|t| {
            t.ln2.clone() * Self::from_int(k as i64)
                + t.ln_grid[(j - LN_GRID_LO) as usize].clone()
                + odd_series(&s, false, t).mul_pow2(1)
        })
    }
    fn exp(&self) -> Self {
        MpFloat(with_consts(|cc| self.0.exp(B, RM, cc))).check()
    }
    fn sin(&self) -> Self {
        MpFloat(with_consts(|cc| self.0.sin(B, RM, cc))).check()
    }
    fn cos(&self) -> Self {
        MpFloat(with_consts(|cc| self.0.cos(B, RM, cc))).check()
    }
    fn atan(&self) -> Self {
        if self.0.is_nan() || self.0.is_zero() {
            return self.clone();
        }
        if self.0.is_negative() {
            return -(-self.clone()).atan();
        }
        if *self > Self::one() {
            return with_tables::<B, _>(|t| t.half_pi.clone()) - (Self::one() / self.clone()).atan();
        }
        let j = (self.to_f64() * 64.0).round() as i64;
        let c = Self::from_int(j).mul_pow2(-6);
        let s = (self.clone() - c.clone()) / (Self::one() + self.clone() * c);
        with_tables::<B, _>(|t| t.atan_grid[j as usize].clone() + odd_series(&s, true, t))
    }
    fn from_bigint(n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let words = n.magnitude().to_u64_digits();
        let sign = if n.sign() == Sign::Minus { MpSign::Neg } else { MpSign::Pos };
        let e = (64 * words.len()) as astro_float::Exponent;
        MpFloat::from_big(BigFloat::from_words(&words, sign, e))
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let x = with_consts(|cc| BigFloat::parse(s, Radix::Dec, B, RM, cc));
        if x.is_nan() || x.is_inf() {
            None
        } else {
            Some(MpFloat(x))
        }
    }
    fn to_f64(&self) -> f64 {
        let Some((m, _, s, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        if self.0.is_zero() {
            return 0.0;
        }
        let top = *m.last().unwrap() as f64;
        let v = top * 2f64.powi(e - 64);
        if s == MpSign::Neg {
            -v
        } else {
            v
        }
    }
    fn round_to_bigint(&self) -> BigInt {
        if self.0.is_zero() {
            return BigInt::zero();
        }
        let half = Self::one().mul_pow2(-1);
        let neg = self.0.is_negative();
        let a = if neg { -self.clone() } else { self.clone() } + half;
        let (m, _, _, e, _) = a.0.as_raw_parts().expect("finite value");
        let mant = BigInt::from(num_bigint::BigUint::new(
            m.iter().flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32]).collect(),
        ));
        let shift = e as i64 - 64 * m.len() as i64;
        let v = if shift >= 0 { mant << shift as usize } else { mant >> (-shift) as usize };
        if neg {
            -v
        } else {
            v
        }
    }
    fn mul_pow2(&self, k: i32) -> Self {
        let mut x = self.0.clone();
        if let Some(e) = x.exponent() {
            if !x.is_zero() {
                x.set_exponent(e + k);
            }
        }
        MpFloat(x)
    }
}

/// 128-bit working precision.
pub type Real128 = MpFloat<128>;
/// 256-bit working precision (library default).
pub type Real256 = MpFloat<256>;
/// 512-bit working precision.
pub type Real512 = MpFloat<512>;
/// 1024-bit working precision.
pub type Real1024 = MpFloat<1024>;

/// Complex helpers that need transcendental functions of the real part.
pub trait ComplexExt<R: Real> {
    fn cabs(&self) -> R;
    fn norm_sqr_r(&self) -> R;
    /// Principal logarithm, imaginary part in (-pi, pi].
    fn cln(&self) -> Complex<R>;
    fn cexp(&self) -> Complex<R>;
    fn to_c64(&self) -> Complex<f64>;
    fn is_finite_c(&self) -> bool;
}

impl<R: Real> ComplexExt<R> for Complex<R> {
    fn cabs(&self) -> R {
        self.norm_sqr_r().sqrt()
    }
    fn norm_sqr_r(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
    fn cln(&self) -> Complex<R> {
        Complex::new(self.norm_sqr_r().ln().mul_pow2(-1), self.im.atan2(&self.re))
    }
    fn cexp(&self) -> Complex<R> {
        let m = self.re.exp();
        Complex::new(m.clone() * self.im.cos(), m * self.im.sin())
    }
    fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }
    fn is_finite_c(&self) -> bool {
        self.re.to_f64().is_finite() && self.im.to_f64().is_finite()
    }
}

/// Build a complex scalar from two `f64` parts.
pub fn c<R: Real>(re: f64, im: f64) -> Complex<R> {
    Complex::new(R::from_f64_lossy(re), R::from_f64_lossy(im))
}

/// Parse `a`, `a+bi`, `a-bi`, `bi` (whitespace ignored) at full working precision.
pub fn parse_complex<R: Real>(s: &str) -> Option<Complex<R>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        // split at the last sign that is not part of an exponent and not leading
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        let im = im.strip_prefix('+').unwrap_or(im);
        Some(Complex::new(R::parse_decimal(re)?, R::parse_decimal(im)?))
    } else {
        Some(Complex::new(R::parse_decimal(&t)?, R::zero()))
    }
}

/// Fixed-point rendering of a complex scalar, `a + bi` style.
pub fn complex_text<R: Real>(z: &Complex<R>, decimals: usize) -> String {
    let re = z.re.to_fixed(decimals);
    let im = z.im.to_fixed(decimals);
    if im == "0" {
        re
    } else if let Some(m) = im.strip_prefix('-') {
        format!("{re} - {m}i")
    } else {
        format!("{re} + {im}i")
    }
}

/// Decimal digits worth printing at `bits` of working precision.
pub fn decimals_for(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2) as usize).saturating_sub(4).max(6)
}

/// Digits printed for derived geometric quantities, which keep about half the working precision.
pub fn geometry_decimals(bits: u32) -> usize {
    (decimals_for(bits) / 2).max(6)
}

/// `{"re": "...", "im": "..."}` with fixed-point decimal strings.
pub fn complex_json<R: Real>(z: &Complex<R>, decimals: usize) -> serde_json::Value {
    serde_json::json!({ "re": z.re.to_fixed(decimals), "im": z.im.to_fixed(decimals) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_constants() {
        let pi = Real256::pi();
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let two = Real256::from_int(2);
        let s = two.sqrt();
        let err = (s.clone() * s - two).abs();
        assert!(err < Real256::epsilon().mul_pow2(4));
    }

    fn fast_matches_reference<const B: usize>() {
        let tol = MpFloat::<B>::one().mul_pow2(10 - B as i32);
        let samples = [
            "1e-40",
            "3.7e-9",
            "0.0078",
            "0.5",
            "0.7499",
            "0.99999999999",
            "1",
            "1.0000000001",
            "1.003",
            "1.4999",
            "1.5",
            "2",
            "2.718281828",
            "17.25",
            "1e7",
            "6.02e23",
            "1e60",
        ];
        for text in samples {
            let x = <MpFloat<B> as Real>::parse_decimal(text).unwrap();
            let scale = |r: &MpFloat<B>| if r.abs() > MpFloat::one() { r.abs() } else { MpFloat::one() };
            let (f, r) = (x.ln(), x.slow_ln());
            assert!((f - r.clone()).abs() <= tol.clone() * scale(&r), "ln {text} at {B}");
            for y in [x.clone(), -x.clone()] {
                let (f, r) = (y.atan(), y.slow_atan());
                assert!((f - r.clone()).abs() <= tol.clone() * scale(&r), "atan {y} at {B}");
            }
        }
    }

    #[test]
    fn table_reduced_transcendentals() {
        fast_matches_reference::<128>();
        fast_matches_reference::<256>();
        fast_matches_reference::<1024>();
    }

    #[test]
    fn bigint_round_trip() {
        let n: BigInt = "-123456789012345678901234567890123".parse().unwrap();
        let x = Real256::from_bigint(&n);
        assert_eq!(x.round_to_bigint(), n);
        let y = <Real256 as Real>::parse_decimal("2.5").unwrap();
        assert_eq!(y.round_to_bigint(), BigInt::from(3));
        assert_eq!((-y).round_to_bigint(), BigInt::from(-3));
    }

    #[test]
    fn fixed_format() {
        let x = <Real256 as Real>::parse_decimal("1.1134545524").unwrap();
        assert_eq!(x.to_fixed(8), "1.11345455");
        let tiny = <Real256 as Real>::parse_decimal("-1e-40").unwrap();
        assert_eq!(tiny.to_fixed(20), "0");
        assert_eq!((-x).to_fixed(3), "-1.113");
        assert_eq!(2.0f64.to_fixed(4), "2");
    }

    #[test]
    fn complex_parse_and_log() {
        let z: Complex<Real256> = parse_complex("0.87743883+0.74486176i").unwrap();
        assert!((z.im.to_f64() - 0.74486176).abs() < 1e-12);
        let w: Complex<f64> = parse_complex("-2.5e-1-3i").unwrap();
        assert_eq!(w, Complex::new(-0.25, -3.0));
        let l = c::<Real256>(-1.0, 0.0).cln();
        assert!((l.im.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let e = l.cexp();
        assert!((e.re.to_f64() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn atan2_quadrants() {
        for (y, x) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0), (0.0, -2.0), (3.0, 0.0)] {
            let a = <Real256 as Real>::from_f64_lossy(y).atan2(&<Real256 as Real>::from_f64_lossy(x));
            assert!((a.to_f64() - f64::atan2(y, x)).abs() < 1e-14, "{y} {x}");
        }
    }
}
