//! Epimorphisms between 2-bridge link groups: ORS expansions, rep-polynomial divisibility,
//! and the census of the resulting partial order.

mod census;

pub use census::{
    build_census, census_fractions, census_record, read_census, CensusEdge, CensusOptions, CensusRecord, CensusSummary,
    DecimalComplex, RootRecord, SplittingRecord, SCHEMA_VERSION,
};

use serde::Serialize;

use crate::coloring::{color_general_word, iu_twist, rep_polynomial, Orientation};
use crate::conway::{normalize_zeros, transform_word, ConwayWord, Descriptor, Transform};
use crate::polycore::GPoly;
use crate::{Error, Result};

/// Data of an expansion `C[e1 a, 2c1, e2 a^-1, 2c2, e3 a, ...]` of type `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrsSpec {
    pub a: Vec<i64>,
    pub type_n: usize,
    pub signs: Vec<i8>,
    pub c: Vec<i64>,
}

impl OrsSpec {
    pub fn new(a: Vec<i64>, type_n: usize, signs: Vec<i8>, c: Vec<i64>) -> Result<OrsSpec> {
        let spec = OrsSpec { a, type_n, signs, c };
        spec.validate()?;
        Ok(spec)
    }

    /// All signs `+1`.
    pub fn positive(a: Vec<i64>, c: Vec<i64>) -> Result<OrsSpec> {
        let n = c.len() + 1;
        OrsSpec::new(a, n, vec![1; n], c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.a.is_empty() || self.a.contains(&0) {
            return bad(format!("seed {:?} must be nonempty with nonzero entries", self.a));
        }
        if self.type_n == 0 {
            return bad("type must be at least 1".into());
        }
        if self.signs.len() != self.type_n || self.c.len() + 1 != self.type_n {
            return bad(format!(
                "type {} needs {} signs and {} c-values, got {} and {}",
                self.type_n,
                self.type_n,
                self.type_n - 1,
                self.signs.len(),
                self.c.len()
            ));
        }
        if self.signs[0] != 1 || self.signs.iter().any(|&e| e != 1 && e != -1) {
            return bad(format!("signs {:?} must be +-1 starting with +1", self.signs));
        }
        for (i, &ci) in self.c.iter().enumerate() {
            if ci == 0 && self.signs[i] * self.signs[i + 1] == -1 {
                return bad(format!("c_{} = 0 with opposite neighbouring signs is excluded", i + 1));
            }
        }
        Ok(())
    }

    /// The seed link `C[a]`.
    pub fn seed(&self) -> ConwayWord {
        ConwayWord::c(self.a.clone())
    }

    /// Knot iff the type is odd.
    pub fn is_knot(&self) -> bool {
        self.type_n % 2 == 1
    }
}

/// The expansion word, zero blocks kept.
pub fn ors_word(spec: &OrsSpec) -> Result<ConwayWord> {
    spec.validate()?;
    let rev: Vec<i64> = spec.a.iter().rev().copied().collect();
    let mut blocks = Vec::new();
    for i in 0..spec.type_n {
        let part = if i % 2 == 0 { &spec.a } else { &rev };
        let e = spec.signs[i] as i64;
        blocks.extend(part.iter().map(|&x| e * x));
        if let Some(&ci) = spec.c.get(i) {
            blocks.push(2 * ci);
        }
    }
    Ok(ConwayWord::c(blocks))
}

/// Member of a link's rep-polynomial set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Witness {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "P(iu)")]
    PIu,
    #[serde(rename = "P'")]
    PPrime,
    #[serde(rename = "P'(iu)")]
    PPrimeIu,
}

impl Witness {
    pub fn label(self) -> &'static str {
        match self {
            Witness::P => "P",
            Witness::PIu => "P(iu)",
            Witness::PPrime => "P'",
            Witness::PPrimeIu => "P'(iu)",
        }
    }
}

/// How much a divisibility verdict proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    /// Both are knots: divisibility is equivalent to an epimorphism.
    Epimorphism,
    /// Only a necessary condition for an epimorphism.
    NecessaryCondition,
}

/// `{P, P'}` for a knot; `{P, P(iu), P', P'(iu)}` for a link. `P'` is read off the upside-down diagram.
pub fn rep_poly_set(desc: &Descriptor) -> Result<Vec<(Witness, GPoly)>> {
    let word = desc.word()?;
    if desc.fraction()?.is_trivial() {
        return Err(Error::Degenerate(format!("{word} is the unknot")));
    }
    let p = color_general_word(&word, Orientation::DEFAULT)?;
    let flipped = normalize_zeros(&transform_word(&word, Transform::UpsideDown))?;
    let q = color_general_word(&flipped, Orientation::DEFAULT)?.rep_poly;
    if p.is_knot {
        Ok(vec![(Witness::P, p.rep_poly), (Witness::PPrime, q)])
    } else {
        let (pi, qi) = (iu_twist(&p.rep_poly)?, iu_twist(&q)?);
        Ok(vec![(Witness::P, p.rep_poly), (Witness::PIu, pi), (Witness::PPrime, q), (Witness::PPrimeIu, qi)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub divides: bool,
    /// First member of the source's set divisible by the target polynomial.
    pub witness: Option<Witness>,
    pub quotient: Option<GPoly>,
    pub kind: EdgeKind,
}

impl Verdict {
    pub fn text(&self) -> String {
        match self.witness {
            Some(w) => format!("yes (witness: {})", w.label()),
            None => "no".to_string(),
        }
    }
}

/// Exact divisibility of `P_{K2}` into the rep-polynomial set of `K1`.
pub fn divisibility_check(k1: &Descriptor, k2: &Descriptor) -> Result<Verdict> {
    let set = rep_poly_set(k1)?;
    let target = rep_polynomial(k2)?;
    divides_any(&set, &target, k1.fraction()?.is_knot() && k2.fraction()?.is_knot())
}

pub(crate) fn divides_any(set: &[(Witness, GPoly)], target: &GPoly, both_knots: bool) -> Result<Verdict> {
    let kind = if both_knots { EdgeKind::Epimorphism } else { EdgeKind::NecessaryCondition };
    for (w, p) in set {
        if let Some(q) = p.exact_divide(target)? {
            return Ok(Verdict { divides: true, witness: Some(*w), quotient: Some(q), kind });
        }
    }
    Ok(Verdict { divides: false, witness: None, quotient: None, kind })
}

/// Certified factor relation `P_A | P_K` (or `P_K(iu)` for links).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrsProof {
    pub word: ConwayWord,
    pub normalized: ConwayWord,
    pub seed_poly: GPoly,
    pub witness: Witness,
    pub quotient: GPoly,
}

/// Build the expansion and certify that the seed's rep-polynomial divides it.
pub fn ors_factor_property(spec: &OrsSpec) -> Result<OrsProof> {
    let word = ors_word(spec)?;
    let normalized = normalize_zeros(&word)?;
    let seed_poly = rep_polynomial(&Descriptor::Word(spec.seed()))?;
    let res = color_general_word(&normalized, Orientation::DEFAULT)?;
    let mut set = vec![(Witness::P, res.rep_poly.clone())];
    if !res.is_knot {
        set.push((Witness::PIu, iu_twist(&res.rep_poly)?));
    }
    let v = divides_any(&set, &seed_poly, false)?;
    match (v.witness, v.quotient) {
        (Some(witness), Some(quotient)) => Ok(OrsProof { word, normalized, seed_poly, witness, quotient }),
        _ => Err(Error::Engine(format!("rep-polynomial of {} does not divide that of {normalized}", spec.seed()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::{parse_descriptor, slope};

    fn d(s: &str) -> Descriptor {
        parse_descriptor(s).unwrap()
    }

    #[test]
    fn ors_examples() {
        let s = OrsSpec::positive(vec![3], vec![1, 0]).unwrap();
        let w = ors_word(&s).unwrap();
        assert_eq!(w.c_blocks(), vec![3, 2, 3, 0, 3]);
        assert_eq!(normalize_zeros(&w).unwrap().c_blocks(), vec![3, 2, 6]);
        let s = OrsSpec::positive(vec![3], vec![1]).unwrap();
        assert_eq!(ors_word(&s).unwrap().c_blocks(), vec![3, 2, 3]);
        let s = OrsSpec::positive(vec![2, -2], vec![0, -1]).unwrap();
        let w = ors_word(&s).unwrap();
        assert_eq!(w.c_blocks(), vec![2, -2, 0, -2, 2, -2, 2, -2]);
        // the mirror of C[2,2,5]: 16/27 against 11/27
        let target = slope(&ConwayWord::c(vec![2, 2, 5])).unwrap();
        assert!(slope(&w).unwrap().same_link(&target.mirror_image()));
        let pk = rep_polynomial(&Descriptor::Word(w)).unwrap();
        assert_eq!(pk, rep_polynomial(&Descriptor::Word(ConwayWord::c(vec![2, 2, 5]))).unwrap());
    }

    #[test]
    fn excluded_zero() {
        assert!(OrsSpec::new(vec![3], 2, vec![1, -1], vec![0]).is_err());
        assert!(OrsSpec::new(vec![3], 2, vec![-1, 1], vec![1]).is_err());
        assert!(OrsSpec::new(vec![0], 1, vec![1], vec![]).is_err());
    }

    #[test]
    fn ors_factors() {
        let pr = ors_factor_property(&OrsSpec::positive(vec![3], vec![1]).unwrap()).unwrap();
        assert_eq!(pr.seed_poly, GPoly::parse("u^3 - u").unwrap());
        let pr = ors_factor_property(&OrsSpec::positive(vec![3], vec![1, 0]).unwrap()).unwrap();
        assert_eq!(pr.witness, Witness::P);
    }

    #[test]
    fn divisibility_examples() {
        let v = divisibility_check(&d("C[2,3,0,3,2,-2,2,3]"), &d("C[2,3]")).unwrap();
        assert_eq!(v.text(), "yes (witness: P)");
        assert_eq!(v.kind, EdgeKind::Epimorphism);
        assert!(divisibility_check(&d("C[2,2,5]"), &d("C[3]")).unwrap().divides);
        assert!(!divisibility_check(&d("C[2,3]"), &d("C[2,2]")).unwrap().divides);
        assert!(divisibility_check(&d("C[2,2]"), &d("C[2,2]")).unwrap().divides);
    }

    #[test]
    fn link_sets_have_four_members() {
        let set = rep_poly_set(&d("C[3,2,3]")).unwrap();
        assert_eq!(set.len(), 4);
        assert_eq!(divisibility_check(&d("C[3,2,3]"), &d("C[3]")).unwrap().kind, EdgeKind::NecessaryCondition);
    }
}
