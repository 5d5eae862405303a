//! Symplectic-quandle colorings of 2-bridge diagrams and the resulting rep-polynomials.
//!
//! Arc vectors are written on the basis of the two top arcs `a, b` with `<a, b> = u`.
//! Crossing rule: `x ▷ y = x + <x, y> y`.

pub mod diagram;
mod even;
mod torus;

use serde::Serialize;

pub use diagram::{Diagram, Orientation};
pub use even::{block_matrix, color_even_expansion, crossing_matrix};
pub use torus::{torus_rep_poly, TorusVariant};

use crate::conway::{canonical_word, even_expansion, normalize_zeros, ConwayWord, Descriptor};
use crate::polycore::{GPoly, PolyMatrix2};
use crate::{Error, Result};

/// Which of the two orientation classes of a link a polynomial belongs to, relative to
/// the default orientation (both top bridges pointing down).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientationVariant {
    Primary,
    IuTwisted,
}

/// Vector on the basis `a, b`.
pub type Pair = [GPoly; 2];

/// Running transfer state inside a block: current pair `= (a, b) M`.
#[derive(Clone, Debug)]
pub struct BlockState {
    pub transfer: PolyMatrix2,
    pub block_index: usize,
    pub crossing_index: usize,
}

#[derive(Clone, Debug)]
pub struct ColoringResult {
    pub ui_sequence: Vec<GPoly>,
    pub rep_poly: GPoly,
    /// Output pair `(a_{k,f}, b_{k,f})` of the last block.
    pub final_vectors: [Pair; 2],
    pub is_knot: bool,
    pub orientation_variant: OrientationVariant,
    /// Arc vectors at every level (general engine only).
    pub levels: Vec<[Pair; 4]>,
}

pub(crate) fn finish(
    ui_sequence: Vec<GPoly>,
    raw: GPoly,
    final_vectors: [Pair; 2],
    is_knot: bool,
    orientation_variant: OrientationVariant,
    levels: Vec<[Pair; 4]>,
) -> Result<ColoringResult> {
    if raw.is_zero() {
        return Err(Error::Engine("rep-polynomial vanished identically".into()));
    }
    Ok(ColoringResult {
        ui_sequence,
        rep_poly: raw.normalize_sign(),
        final_vectors,
        is_knot,
        orientation_variant,
        levels,
    })
}

/// `<x, y>` for vectors on the basis `a, b`.
pub fn pair_form(x: &Pair, y: &Pair) -> GPoly {
    diagram::form(x, y, &GPoly::x())
}

/// Propagate colorings through the diagram of `word` with the given component orientations.
pub fn color_general_word(word: &ConwayWord, orientation: Orientation) -> Result<ColoringResult> {
    let word = if word.is_normalized() { word.clone() } else { normalize_zeros(word)? };
    let d = Diagram::new(&word, orientation)?;
    let a: Pair = [GPoly::one(), GPoly::zero()];
    let b: Pair = [GPoly::zero(), GPoly::one()];
    let levels = diagram::propagate(&d, [a.clone(), a, b.clone(), b.clone()], &GPoly::x());
    let useq = d
        .block_start
        .iter()
        .enumerate()
        .map(|(i, &lvl)| {
            let (l, r) = diagram::block_positions(i);
            pair_form(&levels[lvl][l], &levels[lvl][r])
        })
        .collect();
    let k = d.blocks.len();
    let last = levels.last().expect("at least one level");
    let p = pair_form(if k % 2 == 1 { &last[2] } else { &last[0] }, &b);
    let (l, r) = diagram::block_positions(k - 1);
    let fv = [last[l].clone(), last[r].clone()];
    let twisted = !d.is_knot && (orientation.reverse_a != orientation.reverse_b);
    let variant = if twisted { OrientationVariant::IuTwisted } else { OrientationVariant::Primary };
    finish(useq, p, fv, d.is_knot, variant, levels)
}

/// The companion `P(iu)` of a link polynomial, unit-normalized; fails if it is not real.
pub fn iu_twist(p: &GPoly) -> Result<GPoly> {
    let (q, _) = p.substitute_iu().normalize_unit();
    if !q.is_real() {
        return Err(Error::Engine(format!("iu-twist of {p} has non-real coefficients")));
    }
    Ok(q)
}

/// Rep-polynomial through the even-expansion engine.
///
/// Links come out of the block engine in the twisted class; the default class is recovered
/// by the iu-twist.
pub fn rep_polynomial_even(word: &ConwayWord) -> Result<GPoly> {
    let res = color_even_expansion(word)?;
    match res.orientation_variant {
        OrientationVariant::Primary => Ok(res.rep_poly),
        OrientationVariant::IuTwisted => iu_twist(&res.rep_poly),
    }
}

fn descriptor_word(desc: &Descriptor) -> Result<ConwayWord> {
    match desc {
        Descriptor::Word(w) => {
            let w = normalize_zeros(w)?;
            if desc.fraction()?.is_trivial() {
                return Err(Error::Degenerate(format!("{w} is the unknot")));
            }
            Ok(w)
        }
        Descriptor::Fraction(f) => canonical_word(f),
    }
}

/// Rep-polynomial of a knot, or of a link in its default orientation.
///
/// A word is colored on its own diagram; a fraction uses its even expansion.
pub fn rep_polynomial(desc: &Descriptor) -> Result<GPoly> {
    match desc {
        Descriptor::Fraction(f) => {
            if f.is_trivial() {
                return Err(Error::Degenerate(format!("{f} is the unknot")));
            }
            rep_polynomial_even(&even_expansion(f)?)
        }
        Descriptor::Word(_) => {
            let w = descriptor_word(desc)?;
            Ok(color_general_word(&w, Orientation::DEFAULT)?.rep_poly)
        }
    }
}

/// Both orientation-class polynomials of a link: `(P_default, P_default(iu))`.
pub fn rep_poly_pair(word: &ConwayWord) -> Result<(GPoly, GPoly)> {
    let w = descriptor_word(&Descriptor::Word(word.clone()))?;
    let res = color_general_word(&w, Orientation::DEFAULT)?;
    if res.is_knot {
        return Err(Error::InvalidInput(format!("{w} is a knot; it has a single rep-polynomial")));
    }
    let twin = iu_twist(&res.rep_poly)?;
    Ok((res.rep_poly, twin))
}

pub fn ui_sequence(word: &ConwayWord, orientation: Orientation) -> Result<Vec<GPoly>> {
    Ok(color_general_word(word, orientation)?.ui_sequence)
}

/// Exact check that at `level` the four arc vectors `x, y, z, w` satisfy
/// `<x,y>^2 = <z,w>^2` and `<x,w>^2 = <y,z>^2`.
pub fn level_identity_holds(vectors: &[Pair; 4]) -> bool {
    let [x, y, z, w] = vectors;
    let sq = |p: GPoly| &p * &p;
    sq(pair_form(x, y)) == sq(pair_form(z, w)) && sq(pair_form(x, w)) == sq(pair_form(y, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::{slope, Fraction};

    fn p(s: &str) -> GPoly {
        GPoly::parse(s).unwrap()
    }

    fn general(w: &[i64]) -> GPoly {
        color_general_word(&ConwayWord::c(w.to_vec()), Orientation::DEFAULT).unwrap().rep_poly
    }

    #[test]
    fn trefoil_vectors() {
        let r = color_general_word(&ConwayWord::c(vec![3]), Orientation::DEFAULT).unwrap();
        assert_eq!(r.rep_poly, p("u^3 - u"));
        assert_eq!(r.final_vectors[0], [p("u"), p("u^2 - 1")]);
        assert_eq!(r.final_vectors[1], [p("-u^2 + 1"), p("-u^3 + 2u")]);
    }

    #[test]
    fn small_knots() {
        assert_eq!(general(&[2, 3]), p("u^7 - u^5 + 2u^3 - u"));
        assert_eq!(general(&[1, 2, 2]), p("u^7 + 3u^5 + 2u^3 - u"));
        assert_eq!(general(&[2, 2]), p("u^5 + u^3 + u"));
    }

    #[test]
    fn even_engine_matches_general_for_knots() {
        for (a, b) in [(3, 1), (5, 2), (7, 3), (9, 2), (11, 4), (13, 5)] {
            let f = Fraction::new(a, b).unwrap();
            let e = rep_polynomial_even(&even_expansion(&f).unwrap()).unwrap();
            let g = color_general_word(&canonical_word(&f).unwrap(), Orientation::DEFAULT).unwrap();
            assert_eq!(e, g.rep_poly, "{f}");
        }
    }

    #[test]
    fn link_even_engine_gives_default_class() {
        for a in (4..=30).step_by(2) {
            for b in 1..a {
                let Ok(f) = Fraction::new(a, b) else { continue };
                let e = rep_polynomial_even(&even_expansion(&f).unwrap()).unwrap();
                let g = general_canonical(&f);
                assert_eq!(e, g, "{f}");
            }
        }
    }

    fn general_canonical(f: &Fraction) -> GPoly {
        color_general_word(&canonical_word(f).unwrap(), Orientation::DEFAULT).unwrap().rep_poly
    }

    #[test]
    fn ui_sequence_example() {
        let s = ui_sequence(&ConwayWord::c(vec![2, 2, 5]), Orientation::DEFAULT).unwrap();
        assert_eq!(s, vec![p("u"), p("-u^2"), p("-u^5 + u^3 - u")]);
    }

    #[test]
    fn level_identity_on_levels() {
        for w in [vec![3], vec![2, 3], vec![2, 1, 4], vec![3, 2, 3], vec![4, -4]] {
            let r = color_general_word(&ConwayWord::c(w.clone()), Orientation::DEFAULT).unwrap();
            assert!(r.levels.iter().all(level_identity_holds), "{w:?}");
            assert_eq!(r.rep_poly.degree(), Some(slope(&ConwayWord::c(w)).unwrap().alpha as usize));
        }
    }

    #[test]
    fn whitehead_pair() {
        let (a, b) = rep_poly_pair(&ConwayWord::c(vec![2, 1, 2])).unwrap();
        assert_eq!(a, p("u^8 - 2u^6 + 2u^4"));
        assert_eq!(b, p("u^8 + 2u^6 + 2u^4"));
        assert!(rep_poly_pair(&ConwayWord::c(vec![3])).is_err());
    }
}
