//! Cusp shape and complex volume as state sums over crossings in the region variables.

use num_complex::Complex;
use num_traits::Zero;

use super::arcs::RegionData;
use super::dilog::{dilog_log1m, principal, zeta2};
use crate::coloring::diagram::{Diagram, Regions};
use crate::scalar::{ComplexExt, Real};
use crate::{Error, Result};

/// Regions around one crossing, read counterclockwise starting after the outgoing over-strand,
/// and the crossing handedness (`left` uses the first set of formulas).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingLabel {
    pub left: bool,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

#[derive(Clone, Copy)]
enum Corner {
    NE,
    NW,
    SW,
    SE,
}

impl Corner {
    fn vec(self) -> (i32, i32) {
        match self {
            Corner::NE => (1, 1),
            Corner::NW => (-1, 1),
            Corner::SW => (-1, -1),
            Corner::SE => (1, -1),
        }
    }
    fn ccw_index(self) -> usize {
        match self {
            Corner::NE => 0,
            Corner::NW => 1,
            Corner::SW => 2,
            Corner::SE => 3,
        }
    }
}

/// Label every crossing of the diagram with its four adjacent regions.
pub fn crossing_labels(d: &Diagram, regions: &Regions) -> Vec<CrossingLabel> {
    d.crossings
        .iter()
        .map(|c| {
            let l = c.level;
            let top = regions.id[l][c.left + 1];
            let west = regions.id[l][c.left];
            let bottom = regions.id[l + 1][c.left + 1];
            let east = regions.id[l][c.right + 1];
            let (dl, dr) = (d.dirs[l][c.left], d.dirs[l][c.right]);
            // strands: top-left to bottom-right is NW-SE, top-right to bottom-left is NE-SW
            let (over, under) = if c.jsign > 0 {
                ((Corner::NE, Corner::SW, dr), (Corner::NW, Corner::SE, dl))
            } else {
                ((Corner::NW, Corner::SE, dl), (Corner::NE, Corner::SW, dr))
            };
            let io = |(t, b, dir): (Corner, Corner, i8)| if dir > 0 { (t, b) } else { (b, t) };
            let (oi, oo) = io(over);
            let (ui, uo) = io(under);
            let v = |i: Corner, o: Corner| (o.vec().0 - i.vec().0, o.vec().1 - i.vec().1);
            let (ov, uv) = (v(oi, oo), v(ui, uo));
            let left = ov.0 * uv.1 - ov.1 * uv.0 > 0;
            // sector counterclockwise after each corner's half-strand
            let sectors = [top, west, bottom, east];
            let s = |k: usize| sectors[(oo.ccw_index() + k) % 4];
            CrossingLabel { left, a: s(1), b: s(2), c: s(3), d: s(0) }
        })
        .collect()
}

fn tiny<R: Real>(z: &Complex<R>) -> bool {
    z.cabs().to_f64() < 2f64.powf(-(R::bits() as f64) / 4.0)
}

/// Sum over crossings of the shifted cross-ratio `(w_a w_c - w_b w_d)/((w_a - w_d)(w_c - w_b)) -+ 1`.
pub fn cusp_shape<R: Real>(data: &RegionData<R>, labels: &[CrossingLabel]) -> Result<Complex<R>> {
    let one = Complex::new(R::one(), R::zero());
    let mut total = Complex::<R>::zero();
    for l in labels {
        let (a, b, c, d) = (&data.w[l.a], &data.w[l.b], &data.w[l.c], &data.w[l.d]);
        let den = (a.clone() - d.clone()) * (c.clone() - b.clone());
        if tiny(&den) {
            return Err(Error::Numeric("degenerate cusp-shape denominator".into()));
        }
        let term = (a.clone() * c.clone() - b.clone() * d.clone()) / den;
        total = total + term + if l.left { -one.clone() } else { one.clone() };
    }
    Ok(total)
}

/// A monomial `prod w_k^{e_k}` over region indices.
type Mono = Vec<(usize, i32)>;

enum Term {
    Li2(i32, Mono),
    LogLog(i32, Mono, Mono),
    Zeta2(i32),
}

fn crossing_terms(l: &CrossingLabel) -> Vec<Term> {
    let (a, b, c, d) = (l.a, l.b, l.c, l.d);
    if l.left {
        vec![
            Term::Li2(-1, vec![(d, 1), (a, -1)]),
            Term::Li2(-1, vec![(d, 1), (c, -1)]),
            Term::Li2(1, vec![(a, 1), (b, -1)]),
            Term::Li2(1, vec![(c, 1), (b, -1)]),
            Term::Li2(1, vec![(b, 1), (d, 1), (a, -1), (c, -1)]),
            Term::Zeta2(-1),
            Term::LogLog(1, vec![(a, 1), (b, -1)], vec![(c, 1), (b, -1)]),
        ]
    } else {
        vec![
            Term::Li2(1, vec![(a, 1), (b, -1)]),
            Term::Li2(1, vec![(a, 1), (d, -1)]),
            Term::Li2(-1, vec![(b, 1), (c, -1)]),
            Term::Li2(-1, vec![(d, 1), (c, -1)]),
            Term::Li2(-1, vec![(a, 1), (c, 1), (b, -1), (d, -1)]),
            Term::Zeta2(1),
            Term::LogLog(-1, vec![(b, 1), (c, -1)], vec![(d, 1), (c, -1)]),
        ]
    }
}

fn eval_mono<R: Real>(m: &Mono, w: &[Complex<R>]) -> Complex<R> {
    let mut z = Complex::new(R::one(), R::zero());
    for &(k, e) in m {
        z = if e > 0 { z * w[k].clone() } else { z / w[k].clone() };
    }
    z
}

/// Principal `log` of a monomial from the logs of its factors; exact `log` near the cut.
fn mono_log<R: Real>(m: &Mono, w: &[Complex<R>], lnw: &[Complex<R>]) -> Complex<R> {
    let z = eval_mono(m, w);
    let arg = z.to_c64().arg();
    if std::f64::consts::PI - arg.abs() < 1e-6 {
        return z.cln();
    }
    let mut l = Complex::<R>::zero();
    for &(k, e) in m {
        l = if e > 0 { l + lnw[k].clone() } else { l - lnw[k].clone() };
    }
    principal(l)
}

/// Potential function value with the correction term removed.
#[derive(Clone, Debug)]
pub struct VolumeResult<R: Real> {
    /// `W_0`.
    pub w0: Complex<R>,
    /// `-i W_0` with imaginary part reduced into `[0, pi^2)`.
    pub volume: Complex<R>,
    /// `max_k |exp(w_k dW/dw_k) - 1|`.
    pub exp_check: f64,
}

/// Complex volume `-i W_0` modulo `i pi^2`.
pub fn complex_volume<R: Real>(data: &RegionData<R>, labels: &[CrossingLabel]) -> Result<VolumeResult<R>> {
    let w = &data.w;
    if w.iter().any(tiny) {
        return Err(Error::Numeric("a region variable vanishes".into()));
    }
    let one = Complex::new(R::one(), R::zero());
    let z2 = Complex::new(zeta2::<R>(), R::zero());
    let mut total = Complex::<R>::zero();
    let mut dk = vec![Complex::<R>::zero(); w.len()];
    let int = |n: i32| R::from_int(n as i64);
    let lnw: Vec<Complex<R>> = w.iter().map(|x| x.cln()).collect();
    for l in labels {
        for t in crossing_terms(l) {
            match t {
                Term::Zeta2(s) => total = total + z2.clone() * int(s),
                Term::Li2(s, m) => {
                    let z = eval_mono(&m, w);
                    if tiny(&(one.clone() - z.clone())) {
                        return Err(Error::Numeric("dilogarithm argument hits 1".into()));
                    }
                    let (li, lg) = dilog_log1m(&z);
                    total = total + li * int(s);
                    for &(k, e) in &m {
                        dk[k] = dk[k].clone() - lg.clone() * int(s * e);
                    }
                }
                Term::LogLog(s, m1, m2) => {
                    let l1 = mono_log(&m1, w, &lnw);
                    let l2 = mono_log(&m2, w, &lnw);
                    total = total + l1.clone() * l2.clone() * int(s);
                    for &(k, e) in &m1 {
                        dk[k] = dk[k].clone() + l2.clone() * int(s * e);
                    }
                    for &(k, e) in &m2 {
                        dk[k] = dk[k].clone() + l1.clone() * int(s * e);
                    }
                }
            }
        }
    }
    let mut w0 = total;
    let mut exp_check: f64 = 0.0;
    for (k, d) in dk.iter().enumerate() {
        w0 = w0 - d.clone() * lnw[k].clone();
        exp_check = exp_check.max((d.cexp() - one.clone()).to_c64().norm());
    }
    // -i (x + iy) = y - ix
    let pi = R::pi();
    let pi2 = pi.clone() * pi;
    let mut im = -w0.re.clone();
    let q = (im.clone() / pi2.clone()).to_f64().floor();
    im = im - pi2.clone() * R::from_f64_lossy(q);
    while im < R::zero() {
        im = im + pi2.clone();
    }
    while im >= pi2 {
        im = im - pi2.clone();
    }
    Ok(VolumeResult { volume: Complex::new(w0.im.clone(), im), w0, exp_check })
}
