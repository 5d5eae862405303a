//! Append-only JSONL census of 2-bridge links with divisibility edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{divides_any, rep_poly_set, EdgeKind, Witness};
use crate::coloring::iu_twist;
use crate::conway::{canonical_word, mod_inverse, Descriptor, Fraction};
use crate::geometry::{distinct_roots, geometry_at_root, RegionConvention};
use crate::polycore::GPoly;
use crate::riley::{riley_polynomial, split_polynomial, verify_bridge};
use crate::scalar::{decimals_for, geometry_decimals, Real};
use crate::{Error, Real256, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A complex number as fixed-point decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalComplex {
    pub re: String,
    pub im: String,
}

impl DecimalComplex {
    fn with<R: Real>(z: &num_complex::Complex<R>, d: usize) -> Self {
        DecimalComplex { re: z.re.to_fixed(d), im: z.im.to_fixed(d) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub value: DecimalComplex,
    pub multiplicity: u32,
    pub cusp_shape: Option<DecimalComplex>,
    pub volume: Option<DecimalComplex>,
    pub exp_check: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingRecord {
    pub g: GPoly,
    pub g_hat: GPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEdge {
    pub target: String,
    pub witness: String,
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub schema_version: u32,
    pub id: String,
    pub alpha: i64,
    pub beta: i64,
    pub is_knot: bool,
    /// Set on the member of a chiral pair with the larger representative.
    pub mirror: bool,
    pub mirror_partner: String,
    pub fraction: String,
    pub canonical_word: String,
    pub rep_poly: GPoly,
    /// Companion `P(iu)` (links only).
    pub rep_poly_iu: Option<GPoly>,
    pub rep_poly_upside_down: GPoly,
    pub riley_poly: GPoly,
    pub bridge_sign: i8,
    pub splitting: Option<SplittingRecord>,
    pub precision: u32,
    pub roots: Vec<RootRecord>,
    pub edges: Vec<CensusEdge>,
}

impl CensusRecord {
    pub fn key(&self) -> (i64, i64) {
        (self.alpha, self.beta)
    }

    fn poly_set(&self) -> Result<Vec<(Witness, GPoly)>> {
        let (p, q) = (self.rep_poly.clone(), self.rep_poly_upside_down.clone());
        if self.is_knot {
            return Ok(vec![(Witness::P, p), (Witness::PPrime, q)]);
        }
        let pi = match &self.rep_poly_iu {
            Some(x) => x.clone(),
            None => iu_twist(&p)?,
        };
        let qi = iu_twist(&q)?;
        Ok(vec![(Witness::P, p), (Witness::PIu, pi), (Witness::PPrime, q), (Witness::PPrimeIu, qi)])
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_alpha: i64,
    pub jobs: usize,
    /// Compute roots and geometry (knots only).
    pub geometry: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusSummary {
    pub records: usize,
    pub new_records: usize,
    pub edges: usize,
}

/// Least odd member of `{beta, beta^-1} mod alpha`, or the least member if both are even.
fn class_rep(alpha: i64, beta: i64) -> i64 {
    let b = beta.rem_euclid(alpha);
    let c = mod_inverse(b, alpha);
    match (b % 2, c % 2) {
        (1, 0) => b,
        (0, 1) => c,
        _ => b.min(c),
    }
}

fn id_of(alpha: i64, beta: i64) -> String {
    format!("S({alpha},{beta})")
}

/// One `(alpha, beta, mirror_partner_beta)` per unoriented class, `3 <= alpha <= max_alpha`,
/// sorted by `(alpha, beta)`.
pub fn census_fractions(max_alpha: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for alpha in 3..=max_alpha {
        let reps: BTreeSet<i64> =
            (1..alpha).filter(|&b| num_integer::gcd(alpha, b) == 1).map(|b| class_rep(alpha, b)).collect();
        out.extend(reps.into_iter().map(|b| (alpha, b, class_rep(alpha, alpha - b))));
    }
    out
}

/// The record for `S(alpha, beta)` with empty edges.
pub fn census_record(alpha: i64, beta: i64, partner: i64, geometry: bool) -> Result<CensusRecord> {
    let frac = Fraction::new(alpha, beta)?;
    let word = canonical_word(&frac)?;
    let set = rep_poly_set(&Descriptor::Fraction(frac))?;
    let p = set[0].1.clone();
    let q = set.iter().find(|(w, _)| *w == Witness::PPrime).expect("upside-down member").1.clone();
    let riley = riley_polynomial(&frac)?;
    let bridge = verify_bridge(&p, &riley, frac.is_knot())?;
    let splitting = if frac.is_knot() {
        let s = split_polynomial(&p, true)?;
        Some(SplittingRecord { g: s.g, g_hat: s.g_hat })
    } else {
        None
    };
    let mut roots = Vec::new();
    if geometry {
        for r in distinct_roots::<Real256>(&p)? {
            let mut rec = RootRecord {
                value: DecimalComplex::with(&r.value, r.reliable_decimals(decimals_for(Real256::bits()))),
                multiplicity: r.multiplicity,
                cusp_shape: None,
                volume: None,
                exp_check: None,
                error: None,
            };
            let zero = r.value.re.to_f64() == 0.0 && r.value.im.to_f64() == 0.0;
            if frac.is_knot() && !zero {
                match geometry_at_root(&word, &r.value, RegionConvention::default()) {
                    Ok(g) => {
                        let gd =
                            geometry_decimals(Real256::bits()).min(r.reliable_decimals(decimals_for(Real256::bits())));
                        rec.cusp_shape = Some(DecimalComplex::with(&g.cusp_shape, gd));
                        rec.volume = Some(DecimalComplex::with(&g.volume, gd));
                        rec.exp_check = Some(format!("{:e}", g.exp_check));
                    }
                    Err(e) => rec.error = Some(e.to_string()),
                }
            }
            roots.push(rec);
        }
    }
    Ok(CensusRecord {
        schema_version: SCHEMA_VERSION,
        id: id_of(alpha, beta),
        alpha,
        beta,
        is_knot: frac.is_knot(),
        mirror: partner < beta,
        mirror_partner: id_of(alpha, partner),
        fraction: frac.to_string(),
        canonical_word: word.to_string(),
        rep_poly_iu: if frac.is_knot() { None } else { Some(set[1].1.clone()) },
        rep_poly: p,
        rep_poly_upside_down: q,
        riley_poly: riley,
        bridge_sign: bridge.sign,
        splitting,
        precision: Real256::bits(),
        roots,
        edges: Vec::new(),
    })
}

fn edge_kind_name(k: EdgeKind) -> &'static str {
    match k {
        EdgeKind::Epimorphism => "epimorphism",
        EdgeKind::NecessaryCondition => "necessary-condition",
    }
}

/// Edges from `src` to every mirror-pair representative other than its own pair.
fn edges_for(src: &CensusRecord, known: &BTreeMap<(i64, i64), CensusRecord>) -> Result<Vec<CensusEdge>> {
    let set = src.poly_set()?;
    let mut out = Vec::new();
    for t in known.values() {
        if t.mirror || t.alpha > src.alpha || t.id == src.id || t.id == src.mirror_partner {
            continue;
        }
        let v = divides_any(&set, &t.rep_poly, src.is_knot && t.is_knot)?;
        if let Some(w) = v.witness {
            out.push(CensusEdge {
                target: t.id.clone(),
                witness: w.label().to_string(),
                kind: edge_kind_name(v.kind).to_string(),
            });
        }
    }
    Ok(out)
}

/// Records already in `path` with the current schema; a missing file reads as empty.
pub fn read_census(path: &Path) -> Result<Vec<CensusRecord>> {
    let f = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut out = Vec::new();
    for (n, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), n + 1)))?;
        if v.get("schema_version").and_then(serde_json::Value::as_u64) != Some(SCHEMA_VERSION as u64) {
            continue;
        }
        out.push(serde_json::from_value(v).map_err(|e| Error::Parse(format!("{}:{}: {e}", path.display(), n + 1)))?);
    }
    Ok(out)
}

/// Extend the census at `path` up to `max_alpha`, appending only records that are missing.
pub fn build_census(opts: &CensusOptions, path: &Path) -> Result<CensusSummary> {
    if opts.max_alpha < 3 {
        return Err(Error::InvalidInput(format!("max_alpha must be at least 3, got {}", opts.max_alpha)));
    }
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build().map_err(|e| Error::Io(e.to_string()))?;
    let mut known: BTreeMap<(i64, i64), CensusRecord> = read_census(path)?.into_iter().map(|r| (r.key(), r)).collect();
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let todo: Vec<(i64, i64, i64)> =
        census_fractions(opts.max_alpha).into_iter().filter(|&(a, b, _)| !known.contains_key(&(a, b))).collect();
    let mut new_records = 0;
    let mut alphas: Vec<i64> = todo.iter().map(|t| t.0).collect();
    alphas.dedup();
    for alpha in alphas {
        let batch: Vec<(i64, i64, i64)> = todo.iter().copied().filter(|t| t.0 == alpha).collect();
        let mut fresh: Vec<CensusRecord> = pool.install(|| {
            batch.par_iter().map(|&(a, b, m)| census_record(a, b, m, opts.geometry)).collect::<Result<Vec<_>>>()
        })?;
        for r in &fresh {
            known.insert(r.key(), r.clone());
        }
        let edges: Vec<Vec<CensusEdge>> = pool.install(|| {
            fresh
                .par_iter()
                .map(|r| if r.mirror { Ok(Vec::new()) } else { edges_for(r, &known) })
                .collect::<Result<Vec<_>>>()
        })?;
        for (r, e) in fresh.iter_mut().zip(edges) {
            r.edges = e;
        }
        // a mirror record shares its partner's edges
        let by_id: BTreeMap<String, Vec<CensusEdge>> =
            known.values().chain(fresh.iter()).filter(|r| !r.mirror).map(|r| (r.id.clone(), r.edges.clone())).collect();
        for r in fresh.iter_mut().filter(|r| r.mirror) {
            r.edges = by_id.get(&r.mirror_partner).cloned().unwrap_or_default();
        }
        let mut buf = String::new();
        for r in &fresh {
            buf.push_str(&serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?);
            buf.push('\n');
            known.insert(r.key(), r.clone());
        }
        file.write_all(buf.as_bytes())?;
        new_records += fresh.len();
    }
    file.flush()?;
    Ok(CensusSummary { records: known.len(), new_records, edges: known.values().map(|r| r.edges.len()).sum() })
}
