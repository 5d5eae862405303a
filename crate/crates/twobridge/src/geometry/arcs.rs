//! Numeric arc and region colorings at a root of the rep-polynomial.

use num_complex::Complex;
use num_traits::Zero;

use crate::coloring::diagram::{self, Diagram, Regions};
use crate::coloring::Orientation;
use crate::conway::{normalize_zeros, ConwayWord};
use crate::scalar::{c, ComplexExt, Real};
use crate::{Error, Result};

/// A vector in C^2.
pub type CVec<R> = [Complex<R>; 2];

/// Parabolic representation given by a root `r` together with every arc vector.
#[derive(Clone, Debug)]
pub struct ParabolicRep<R: Real> {
    pub root: Complex<R>,
    pub word: ConwayWord,
    pub diagram: Diagram,
    /// `levels[level][pos]`: vector of the strand segment at that level and position.
    pub levels: Vec<[CVec<R>; 4]>,
    pub precision: u32,
}

pub fn sym<R: Real>(x: &CVec<R>, y: &CVec<R>) -> Complex<R> {
    x[0].clone() * y[1].clone() - x[1].clone() * y[0].clone()
}

fn dist<R: Real>(x: &CVec<R>, y: &CVec<R>) -> R {
    (x[0].clone() - y[0].clone()).cabs() + (x[1].clone() - y[1].clone()).cabs()
}

/// Evaluate the coloring at `r` with the normalized top pair `a = (1, 0)`, `b = (0, r)`.
pub fn arc_vectors_at_root<R: Real>(word: &ConwayWord, r: &Complex<R>) -> Result<ParabolicRep<R>> {
    if r.cabs().to_f64() < 1e-30 {
        return Err(Error::InvalidInput("r = 0 gives an abelian representation".into()));
    }
    let word = normalize_zeros(word)?;
    let d = Diagram::new(&word, Orientation::DEFAULT)?;
    let (z, o) = (Complex::<R>::zero(), Complex::new(R::one(), R::zero()));
    let a = [o.clone(), z.clone()];
    let b = [z, r.clone()];
    let levels = diagram::propagate(&d, [a.clone(), a, b.clone(), b], &o);
    Ok(ParabolicRep { root: r.clone(), word, diagram: d, levels, precision: R::bits() })
}

impl<R: Real> ParabolicRep<R> {
    /// Largest mismatch (up to sign) between the two ends of each bottom cap.
    pub fn closure_residual(&self) -> f64 {
        let last = self.levels.last().expect("levels");
        self.diagram
            .bottom_caps()
            .iter()
            .map(|&(p, q)| {
                let neg = [-last[q][0].clone(), -last[q][1].clone()];
                let e = dist(&last[p], &last[q]);
                let f = dist(&last[p], &neg);
                (if e < f { e } else { f }).to_f64()
            })
            .fold(0.0, f64::max)
    }

    /// Largest violation of `<x, y>^2 = <z, w>^2`, `<x, w>^2 = <y, z>^2` over all levels.
    pub fn level_identity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for [x, y, z, w] in &self.levels {
            let s = |p: Complex<R>| p.clone() * p;
            let e1 = (s(sym(x, y)) - s(sym(z, w))).cabs().to_f64();
            let e2 = (s(sym(x, w)) - s(sym(y, z))).cabs().to_f64();
            worst = worst.max(e1).max(e2);
        }
        worst
    }

    /// `u_i(r)` for each block.
    pub fn block_determinants(&self) -> Vec<Complex<R>> {
        self.diagram
            .block_start
            .iter()
            .enumerate()
            .map(|(i, &lvl)| {
                let (l, r) = diagram::block_positions(i);
                sym(&self.levels[lvl][l], &self.levels[lvl][r])
            })
            .collect()
    }

    /// Meridian image `A = I + x (-x2, x1)`: `(1,0)` maps to `[[1,1],[0,1]]`, `(0,r)` to `[[1,0],[-r^2,1]]`.
    pub fn meridian(x: &CVec<R>) -> [[Complex<R>; 2]; 2] {
        let one = Complex::new(R::one(), R::zero());
        let (p, q) = (x[0].clone(), x[1].clone());
        [[one.clone() - p.clone() * q.clone(), p.clone() * p.clone()], [-(q.clone() * q.clone()), one + p * q]]
    }
}

/// Which side of an arc the quandle action maps to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RegionConvention {
    /// `beta_right = beta_left ▷^d x` for an arc with vector `x` travelling in direction `d`.
    #[default]
    LeftToRight,
    /// The opposite assignment.
    RightToLeft,
}

/// Region vectors, the generic vector `p`, and `w_j = <p, beta_j>`.
#[derive(Clone, Debug)]
pub struct RegionData<R: Real> {
    pub region_vectors: Vec<CVec<R>>,
    pub p: CVec<R>,
    pub w: Vec<Complex<R>>,
    pub regions: Regions,
    pub residual: f64,
}

fn act<R: Real>(beta: &CVec<R>, x: &CVec<R>, s: i8) -> CVec<R> {
    let mut k = sym(beta, x);
    if s < 0 {
        k = -k;
    }
    [beta[0].clone() + k.clone() * x[0].clone(), beta[1].clone() + k * x[1].clone()]
}

/// Default base-region vector and generic vector, followed by deterministic alternatives.
pub fn generic_choices<R: Real>() -> Vec<(CVec<R>, CVec<R>)> {
    let raw = [
        ((0.3, 0.7, 1.1, -0.4), (0.2, 0.9, -0.7, 0.3)),
        ((-1.3, 0.2, 0.1, 0.45), (1.2, -0.5, 0.3, 0.33)),
        ((0.61, -0.27, 0.19, 1.37), (-0.41, 0.77, 0.93, 0.12)),
        ((1.7, 0.9, -0.35, -0.6), (0.05, -1.1, 0.66, 0.58)),
    ];
    raw.iter().map(|&((a, b, cc, d), (e, f, g, h))| ([c(a, b), c(cc, d)], [c(e, f), c(g, h)])).collect()
}

/// Propagate a region coloring from the outer region across every strand segment.
pub fn region_coloring<R: Real>(
    rep: &ParabolicRep<R>,
    base: &CVec<R>,
    p: &CVec<R>,
    convention: RegionConvention,
) -> Result<RegionData<R>> {
    let d = &rep.diagram;
    let regions = d.regions();
    let conv: i8 = if convention == RegionConvention::LeftToRight { 1 } else { -1 };
    // (left region, right region, vector, sign)
    let mut edges = Vec::with_capacity(4 * d.num_levels());
    for (l, vs) in rep.levels.iter().enumerate() {
        for (pos, x) in vs.iter().enumerate() {
            let s = d.dirs[l][pos] * conv;
            edges.push((regions.id[l][pos], regions.id[l][pos + 1], x, s));
        }
    }
    let mut beta: Vec<Option<CVec<R>>> = vec![None; regions.count];
    beta[regions.outer] = Some(base.clone());
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b, x, s) in &edges {
            match (&beta[a], &beta[b]) {
                (Some(va), None) => {
                    beta[b] = Some(act(va, x, s));
                    changed = true;
                }
                (None, Some(vb)) => {
                    beta[a] = Some(act(vb, x, -s));
                    changed = true;
                }
                _ => {}
            }
        }
    }
    let beta: Vec<CVec<R>> = beta
        .into_iter()
        .map(|b| b.ok_or_else(|| Error::Numeric("region graph is disconnected".into())))
        .collect::<Result<_>>()?;
    let mut residual: f64 = 0.0;
    for &(a, b, x, s) in &edges {
        let e = act(&beta[a], x, s);
        let scale = 1.0 + beta[b][0].to_c64().norm() + beta[b][1].to_c64().norm();
        residual = residual.max(dist(&e, &beta[b]).to_f64() / scale);
    }
    let tol = 2f64.powf(-(rep.precision as f64) / 2.0).max(1e-300);
    if residual.is_nan() || residual > tol {
        return Err(Error::Numeric(format!("region rule orientation convention violated (residual {residual:e})")));
    }
    let w = beta.iter().map(|bv| sym(p, bv)).collect();
    Ok(RegionData { region_vectors: beta, p: p.clone(), w, regions, residual })
}
