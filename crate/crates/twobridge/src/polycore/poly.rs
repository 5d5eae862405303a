use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::gauss::GaussInt;
use crate::scalar::Real;
use crate::{Error, Result};

/// Dense univariate polynomial over Z[i]; `coeffs[k]` multiplies `u^k`.
///
/// Always trimmed: the last coefficient is nonzero unless the polynomial is zero,
/// which is stored as an empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GPoly {
    coeffs: Vec<GaussInt>,
}

impl GPoly {
    pub fn new(mut coeffs: Vec<GaussInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GPoly { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(cs: &[i64]) -> Self {
        GPoly::new(cs.iter().map(|&c| GaussInt::real(c)).collect())
    }

    pub fn from_bigints(cs: Vec<BigInt>) -> Self {
        GPoly::new(cs.into_iter().map(GaussInt::real).collect())
    }

    pub fn zero() -> Self {
        GPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GPoly::constant(GaussInt::one())
    }

    /// The variable itself.
    pub fn x() -> Self {
        GPoly::monomial(GaussInt::one(), 1)
    }

    pub fn constant(c: GaussInt) -> Self {
        GPoly::new(vec![c])
    }

    pub fn monomial(c: GaussInt, deg: usize) -> Self {
        let mut v = vec![GaussInt::zero(); deg + 1];
        v[deg] = c;
        GPoly::new(v)
    }

    pub fn coeffs(&self) -> &[GaussInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> GaussInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Largest `k` with `u^k` dividing `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussInt::is_real)
    }

    pub fn scale(&self, c: &GaussInt) -> GPoly {
        GPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_int(&self, c: i64) -> GPoly {
        self.scale(&GaussInt::real(c))
    }

    /// Multiply by `u^k`.
    pub fn shift_up(&self, k: usize) -> GPoly {
        if self.is_zero() {
            return GPoly::zero();
        }
        let mut v = vec![GaussInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        GPoly { coeffs: v }
    }

    /// Divide by `u^k`; `None` if `u^k` does not divide.
    pub fn shift_down(&self, k: usize) -> Option<GPoly> {
        if self.is_zero() {
            return Some(GPoly::zero());
        }
        if self.valuation() < k {
            return None;
        }
        Some(GPoly { coeffs: self.coeffs[k..].to_vec() })
    }

    pub fn pow(&self, n: u32) -> GPoly {
        let mut acc = GPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(q(u))`.
    pub fn compose(&self, q: &GPoly) -> GPoly {
        let mut acc = GPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &GPoly::constant(c.clone());
        }
        acc
    }

    /// `self(-u)`.
    pub fn substitute_neg(&self) -> GPoly {
        GPoly::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `self(iu)`, exact, without any sign normalization.
    pub fn substitute_iu(&self) -> GPoly {
        GPoly::new(self.coeffs.iter().enumerate().map(|(k, c)| c * &GaussInt::i_pow(k as i64)).collect())
    }

    /// `self(u^2)`.
    pub fn substitute_square(&self) -> GPoly {
        let mut v = vec![GaussInt::zero(); 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[2 * k] = c.clone();
        }
        GPoly::new(v)
    }

    pub fn derivative(&self) -> GPoly {
        GPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &GaussInt::real(k as i64)).collect())
    }

    /// Flip the overall sign if needed so the leading coefficient is canonical-positive.
    pub fn normalize_sign(&self) -> GPoly {
        if self.is_zero() || self.lc().is_canonical_positive() {
            self.clone()
        } else {
            -self
        }
    }

    /// Multiply by the unit in {1, -1, i, -i} that makes the leading coefficient
    /// lie in the quadrant `re > 0, im >= 0`. Returns the normalized polynomial and the unit used.
    pub fn normalize_unit(&self) -> (GPoly, GaussInt) {
        if self.is_zero() {
            return (GPoly::zero(), GaussInt::one());
        }
        let lc = self.lc();
        for k in 0..4 {
            let unit = GaussInt::i_pow(k);
            let l = &lc * &unit;
            if l.re.is_positive() && !l.im.is_negative() {
                return (self.scale(&unit), unit);
            }
        }
        unreachable!("some rotation of a nonzero Gaussian integer lies in the first quadrant")
    }

    /// Exact division; `Ok(None)` if there is a nonzero remainder.
    pub fn exact_divide(&self, den: &GPoly) -> Result<Option<GPoly>> {
        if den.is_zero() {
            return Err(Error::InvalidInput("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Some(GPoly::zero()));
        }
        let dn = den.coeffs.len() - 1;
        let nn = self.coeffs.len() - 1;
        if nn < dn {
            return Ok(None);
        }
        let lead = den.lc();
        let mut rem = self.coeffs.clone();
        let mut q = vec![GaussInt::zero(); nn - dn + 1];
        for k in (0..=nn - dn).rev() {
            let top = &rem[k + dn];
            if top.is_zero() {
                continue;
            }
            let Some(c) = top.checked_div(&lead) else {
                return Ok(None);
            };
            for (j, d) in den.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &(&c * d);
                }
            }
            q[k] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Ok(Some(GPoly::new(q)))
        } else {
            Ok(None)
        }
    }

    /// Remainder modulo a divisor whose leading coefficient is a unit.
    pub fn rem_monic(&self, m: &GPoly) -> Result<GPoly> {
        let lead = m.lc();
        if m.is_zero() || !lead.is_unit() {
            return Err(Error::InvalidInput(format!("{m} is not monic up to a unit")));
        }
        let dm = m.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        while rem.len() > dm {
            let top = rem.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let c = top.checked_div(&lead).expect("unit divides");
            let k = rem.len() - dm;
            for (j, d) in m.coeffs[..dm].iter().enumerate() {
                rem[k + j] -= &(&c * d);
            }
        }
        Ok(GPoly::new(rem))
    }

    pub fn divides(&self, num: &GPoly) -> bool {
        matches!(num.exact_divide(self), Ok(Some(_)))
    }

    /// For `self = u^eps * R(u^2)` returns `R`.
    pub fn even_part_as_y(&self, eps: usize) -> Result<GPoly> {
        let q = self.shift_down(eps).ok_or_else(|| Error::Engine(format!("u^{eps} does not divide {self}")))?;
        if q.coeffs.iter().enumerate().any(|(k, c)| k % 2 == 1 && !c.is_zero()) {
            return Err(Error::Engine(format!("odd powers remain after stripping u^{eps} from {self}")));
        }
        Ok(GPoly::new(q.coeffs.into_iter().step_by(2).collect()))
    }

    /// Coefficients converted to the working complex type.
    pub fn to_complex<R: Real>(&self) -> Vec<Complex<R>> {
        self.coeffs.iter().map(|c| Complex::new(R::from_bigint(&c.re), R::from_bigint(&c.im))).collect()
    }

    /// Horner evaluation at the precision of `R`.
    pub fn eval_complex<R: Real>(&self, z: &Complex<R>) -> Complex<R> {
        horner(&self.to_complex::<R>(), z)
    }

    /// Exact evaluation at a Gaussian integer.
    pub fn eval_gauss(&self, z: &GaussInt) -> GaussInt {
        let mut acc = GaussInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Sparse text form in variable `var`, e.g. `u^6 - u^4 + 2*u^2 - 1`.
    pub fn to_text_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_real() {
                (c.re.is_negative(), GaussInt::real(c.re.abs()))
            } else if c.re.is_zero() {
                (c.im.is_negative(), GaussInt::new(0, c.im.abs()))
            } else {
                (false, c.clone())
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else if mag == GaussInt::i() {
                out.push_str(&format!("i*{mono}"));
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Canonical JSON form `{"coeffs": [["re","im"], ...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "coeffs": self.coeffs.iter().map(|c| json!([c.re.to_string(), c.im.to_string()])).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &Value) -> Result<GPoly> {
        let bad = || Error::Parse("expected {\"coeffs\": [[re, im], ...]}".into());
        let arr = v.get("coeffs").and_then(Value::as_array).ok_or_else(bad)?;
        let mut cs = Vec::with_capacity(arr.len());
        for pair in arr {
            let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let part = |x: &Value| -> Result<BigInt> {
                match x {
                    Value::String(s) => s.parse().map_err(|_| bad()),
                    Value::Number(n) => n.to_string().parse().map_err(|_| bad()),
                    _ => Err(bad()),
                }
            };
            cs.push(GaussInt { re: part(&p[0])?, im: part(&p[1])? });
        }
        Ok(GPoly::new(cs))
    }

    /// Parse the sparse text form, in any single-letter variable.
    pub fn parse(text: &str) -> Result<GPoly> {
        TextParser::new(text).parse()
    }
}

/// Horner evaluation of complex coefficients (lowest degree first).
pub fn horner<R: Real>(coeffs: &[Complex<R>], z: &Complex<R>) -> Complex<R> {
    let mut acc = Complex::new(R::zero(), R::zero());
    for c in coeffs.iter().rev() {
        acc = acc * z.clone() + c.clone();
    }
    acc
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_var("u"))
    }
}

impl<'a> Add<&'a GPoly> for &'a GPoly {
    type Output = GPoly;
    fn add(self, o: &GPoly) -> GPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.coeffs.get(k), o.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        GPoly::new(v)
    }
}

impl<'a> Sub<&'a GPoly> for &'a GPoly {
    type Output = GPoly;
    fn sub(self, o: &GPoly) -> GPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a GPoly> for &'a GPoly {
    type Output = GPoly;
    fn mul(self, o: &GPoly) -> GPoly {
        if self.is_zero() || o.is_zero() {
            return GPoly::zero();
        }
        let mut v = vec![GaussInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += &(a * b);
                }
            }
        }
        GPoly::new(v)
    }
}

impl Neg for &GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        GPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for GPoly {
            type Output = GPoly;
            fn $m(self, o: GPoly) -> GPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GPoly> for GPoly {
            type Output = GPoly;
            fn $m(self, o: &GPoly) -> GPoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<GPoly> for &'a GPoly {
            type Output = GPoly;
            fn $m(self, o: GPoly) -> GPoly {
                self.$m(&o)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        -&self
    }
}

struct TextParser<'a> {
    s: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> TextParser<'a> {
    fn new(src: &'a str) -> Self {
        TextParser { s: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, src }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in polynomial {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.s[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn gauss_paren(&mut self) -> Result<GaussInt> {
        // after '(' : [sign]int [(+|-) [int] i] ')'
        let sign = |p: &mut Self| match p.peek() {
            Some('-') => {
                p.pos += 1;
                -1
            }
            Some('+') => {
                p.pos += 1;
                1
            }
            _ => 1,
        };
        let s1 = sign(self);
        let a = self.int().ok_or_else(|| self.err("expected integer"))?;
        let mut z = if self.peek() == Some('i') {
            self.pos += 1;
            GaussInt::new(0, a * s1)
        } else {
            GaussInt::real(a * s1)
        };
        if matches!(self.peek(), Some('+') | Some('-')) {
            let s2 = sign(self);
            let b = self.int().unwrap_or_else(BigInt::one);
            if self.peek() != Some('i') {
                return Err(self.err("expected 'i'"));
            }
            self.pos += 1;
            z.im += b * s2;
        }
        if self.peek() != Some(')') {
            return Err(self.err("expected ')'"));
        }
        self.pos += 1;
        Ok(z)
    }

    fn parse(mut self) -> Result<GPoly> {
        if self.s.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut terms: Vec<(GaussInt, usize)> = Vec::new();
        let mut var: Option<char> = None;
        let mut first = true;
        while self.pos < self.s.len() {
            let mut neg = false;
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    neg = true;
                    self.pos += 1
                }
                _ if !first => return Err(self.err("expected '+' or '-'")),
                _ => {}
            }
            first = false;
            let mut coef: Option<GaussInt> = None;
            if self.peek() == Some('(') {
                self.pos += 1;
                coef = Some(self.gauss_paren()?);
            } else if let Some(n) = self.int() {
                coef = Some(GaussInt::real(n));
            }
            if self.peek() == Some('i') && !self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphabetic()) {
                // imaginary coefficient such as 3i or i
                self.pos += 1;
                coef = Some(coef.unwrap_or_else(GaussInt::one).mul_i());
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            }
            let mut deg = 0usize;
            if let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) {
                if let Some(v) = var {
                    if v != c {
                        return Err(self.err("mixed variables"));
                    }
                }
                var = Some(c);
                self.pos += 1;
                deg = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let n = self.int().ok_or_else(|| self.err("expected exponent"))?;
                    deg = n.try_into().map_err(|_| self.err("exponent too large"))?;
                }
            } else if coef.is_none() {
                return Err(self.err("expected a term"));
            }
            let c = coef.unwrap_or_else(GaussInt::one);
            terms.push((if neg { -c } else { c }, deg));
        }
        let n = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut v = vec![GaussInt::zero(); n + 1];
        for (c, d) in terms {
            v[d] += &c;
        }
        Ok(GPoly::new(v))
    }
}

impl serde::Serialize for GPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for GPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        GPoly::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GPoly {
        GPoly::parse(s).unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["u^6 - u^4 + 2*u^2 - 1", "-u^3 + u", "0", "7", "u", "i*u^2 - 3i", "(1-2i)*u + (3+i)"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("y^3-y^2+2y-1").to_text_var("y"), "y^3 - y^2 + 2*y - 1");
    }

    #[test]
    fn spec_arithmetic_examples() {
        assert_eq!(p("u^2 - 1") * p("u"), p("u^3 - u"));
        let q = p("u^5 - 3*u + 2");
        assert!((&q + &(-&q)).is_zero());
        assert_eq!(p("u^3 + u^2 - 1") * p("u^3 - u^2 + 1"), p("u^6 - u^4 + 2*u^2 - 1"));
        assert_eq!(p("u^6 - u^4 + 2*u^2 - 1").exact_divide(&p("u^3 + u^2 - 1")).unwrap(), Some(p("u^3 - u^2 + 1")));
        assert_eq!(p("u^3").exact_divide(&p("u")).unwrap(), Some(p("u^2")));
        assert_eq!(p("u^3 + 1").exact_divide(&p("u")).unwrap(), None);
        assert!(p("u").exact_divide(&GPoly::zero()).is_err());
    }

    #[test]
    fn iu_substitution() {
        assert_eq!(p("u^4 + 2*u^2 + 2").substitute_iu(), p("u^4 - 2*u^2 + 2"));
        assert_eq!(p("u").substitute_iu(), p("i*u"));
        let t = p("u^3 - u").substitute_iu();
        assert_eq!(t, p("-i*u^3 - i*u"));
        assert_eq!(t.normalize_unit().0, p("u^3 + u"));
        let q = p("u^5 + 2*u^4 - u + 7");
        assert_eq!(q.substitute_iu().substitute_iu(), q.substitute_neg());
    }

    #[test]
    fn even_part() {
        assert_eq!(p("u^7 - u^5 + 2*u^3 - u").even_part_as_y(1).unwrap(), p("u^3 - u^2 + 2*u - 1"));
        assert_eq!(p("u^3").even_part_as_y(1).unwrap(), p("u"));
        assert_eq!(p("u^8 - 2*u^6 + 2*u^4").even_part_as_y(2).unwrap(), p("u^3 - 2*u^2 + 2*u"));
        assert!(p("u^4 + u^3").even_part_as_y(1).is_err());
    }

    #[test]
    fn evaluation() {
        let z = Complex::new(0.0f64, 1.0);
        assert!(p("u^2 + 1").eval_complex(&z).norm() < 1e-15);
        assert!(p("u^3 - u").eval_complex(&Complex::new(1.0f64, 0.0)).norm() == 0.0);
        let r = Complex::new(0.75487766f64, 0.0);
        assert!(p("u^3 + u^2 - 1").eval_complex(&r).norm() < 1e-6);
    }

    #[test]
    fn json_round_trip() {
        let q = p("(1-2i)*u^3 - 5");
        let v = q.to_json();
        assert_eq!(v.to_string(), r#"{"coeffs":[["-5","0"],["0","0"],["0","0"],["1","-2"]]}"#);
        assert_eq!(GPoly::from_json(&v).unwrap(), q);
    }
}
