//! Numeric layer: roots, arc and region colorings, cusp shape, dilogarithm, complex volume.

mod arcs;
mod dilog;
mod invariants;
mod roots;

pub use arcs::{
    arc_vectors_at_root, generic_choices, region_coloring, sym, CVec, ParabolicRep, RegionConvention, RegionData,
};
pub use dilog::{dilog, zeta2};
pub use invariants::{complex_volume, crossing_labels, cusp_shape, CrossingLabel, VolumeResult};
pub use roots::{distinct_roots, find_roots, Root, RootSelector};

use num_complex::Complex;

use crate::conway::ConwayWord;
use crate::scalar::Real;
use crate::{Error, Result};

/// Geometric invariants of the representation at one root.
#[derive(Clone, Debug)]
pub struct GeometryAtRoot<R: Real> {
    pub root: Complex<R>,
    pub cusp_shape: Complex<R>,
    pub volume: Complex<R>,
    pub exp_check: f64,
    pub closure_residual: f64,
    pub region_residual: f64,
}

/// Cusp shape and complex volume at `r`, re-sampling the generic vectors on degeneracy.
pub fn geometry_at_root<R: Real>(
    word: &ConwayWord,
    r: &Complex<R>,
    convention: RegionConvention,
) -> Result<GeometryAtRoot<R>> {
    let rep = arc_vectors_at_root(word, r)?;
    let labels = crossing_labels(&rep.diagram, &rep.diagram.regions());
    let mut last = Error::Numeric("no generic choice available".into());
    for (base, p) in generic_choices::<R>() {
        let data = region_coloring(&rep, &base, &p, convention)?;
        let attempt = cusp_shape(&data, &labels).and_then(|c| complex_volume(&data, &labels).map(|v| (c, v)));
        match attempt {
            Ok((cusp, vol)) => {
                return Ok(GeometryAtRoot {
                    root: r.clone(),
                    cusp_shape: cusp,
                    volume: vol.volume,
                    exp_check: vol.exp_check,
                    closure_residual: rep.closure_residual(),
                    region_residual: data.residual,
                })
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}
