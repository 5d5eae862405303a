//! Conway words, Schubert fractions, and conversions between them.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Sign convention of a block sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Notation {
    /// `C[n1, ..., nk]`.
    C,
    /// `J(n1, ..., nk) = C[n1, -n2, n3, ...]`.
    J,
}

/// A block sequence of a 4-plat diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConwayWord {
    pub blocks: Vec<i64>,
    pub notation: Notation,
    /// Orientation marker: the component through the left top bridge is reversed.
    pub reverse_a: bool,
}

impl ConwayWord {
    pub fn c(blocks: Vec<i64>) -> Self {
        ConwayWord { blocks, notation: Notation::C, reverse_a: false }
    }

    pub fn j(blocks: Vec<i64>) -> Self {
        ConwayWord { blocks, notation: Notation::J, reverse_a: false }
    }

    /// Blocks in C-notation.
    pub fn c_blocks(&self) -> Vec<i64> {
        match self.notation {
            Notation::C => self.blocks.clone(),
            Notation::J => flip_alternate(&self.blocks),
        }
    }

    /// Blocks in J-notation.
    pub fn j_blocks(&self) -> Vec<i64> {
        match self.notation {
            Notation::J => self.blocks.clone(),
            Notation::C => flip_alternate(&self.blocks),
        }
    }

    pub fn to_c(&self) -> ConwayWord {
        ConwayWord { blocks: self.c_blocks(), notation: Notation::C, reverse_a: self.reverse_a }
    }

    pub fn to_j(&self) -> ConwayWord {
        ConwayWord { blocks: self.j_blocks(), notation: Notation::J, reverse_a: self.reverse_a }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn crossings(&self) -> u64 {
        self.blocks.iter().map(|n| n.unsigned_abs()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        !self.blocks.is_empty() && self.blocks.iter().all(|&n| n != 0)
    }
}

fn flip_alternate(b: &[i64]) -> Vec<i64> {
    b.iter().enumerate().map(|(i, &n)| if i % 2 == 1 { -n } else { n }).collect()
}

impl fmt::Display for ConwayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.blocks.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        match self.notation {
            Notation::C => write!(f, "C[{body}]"),
            Notation::J => write!(f, "J({body})"),
        }
    }
}

/// A 2-bridge link `S(alpha, beta)` with `0 < beta < alpha`, mirror carried as a flag.
///
/// The signed value `signed_beta()` is `-beta` when `mirror` is set. Fractions
/// with `alpha = 1` describe the unknot and are rejected by everything downstream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub alpha: i64,
    pub beta: i64,
    pub mirror: bool,
}

impl Fraction {
    /// From a signed `beta/alpha`; `beta` is reduced into `(-alpha, alpha)` keeping its sign.
    pub fn new(alpha: i64, beta: i64) -> Result<Fraction> {
        if alpha <= 0 {
            return Err(Error::Parse(format!("alpha must be positive, got {alpha}")));
        }
        if alpha.gcd(&beta) != 1 {
            return Err(Error::Parse(format!("gcd({alpha}, {beta}) != 1")));
        }
        let b = beta % alpha;
        Ok(Fraction { alpha, beta: b.abs(), mirror: b < 0 })
    }

    pub fn signed_beta(&self) -> i64 {
        if self.mirror {
            -self.beta
        } else {
            self.beta
        }
    }

    /// `beta` reduced to `[0, alpha)`, forgetting the mirror flag representation.
    pub fn beta_mod(&self) -> i64 {
        self.signed_beta().rem_euclid(self.alpha)
    }

    pub fn is_knot(&self) -> bool {
        self.alpha % 2 == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha == 1
    }

    fn require_nontrivial(&self) -> Result<()> {
        if self.is_trivial() {
            Err(Error::Degenerate(format!("{self} is the unknot")))
        } else {
            Ok(())
        }
    }

    /// The mirror image.
    pub fn mirror_image(&self) -> Fraction {
        Fraction { mirror: !self.mirror, ..*self }
    }

    /// Same unoriented link (no mirroring): equal alpha and `beta' = beta^{+-1} mod alpha`.
    pub fn same_link(&self, other: &Fraction) -> bool {
        if self.alpha != other.alpha {
            return false;
        }
        if self.alpha == 1 {
            return true;
        }
        let b = self.beta_mod();
        let o = other.beta_mod();
        b == o || (b * o).rem_euclid(self.alpha) == 1
    }

    /// `beta^{-1} mod alpha`, in `[1, alpha)`.
    pub fn inverse_beta(&self) -> i64 {
        mod_inverse(self.beta_mod(), self.alpha)
    }
}

/// Inverse of `b` modulo `m` (gcd must be 1).
pub fn mod_inverse(b: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = (b as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as i64
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.signed_beta(), self.alpha)
    }
}

/// Either form of link descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Word(ConwayWord),
    Fraction(Fraction),
}

impl Descriptor {
    /// The Schubert fraction of the described link.
    pub fn fraction(&self) -> Result<Fraction> {
        match self {
            Descriptor::Word(w) => slope(w),
            Descriptor::Fraction(f) => Ok(*f),
        }
    }

    /// A normalized Conway word for the link: the word itself (zeros removed) or the canonical word.
    pub fn word(&self) -> Result<ConwayWord> {
        match self {
            Descriptor::Word(w) => normalize_zeros(w),
            Descriptor::Fraction(f) => canonical_word(f),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Word(w) => write!(f, "{w}"),
            Descriptor::Fraction(x) => write!(f, "S({},{})", x.alpha, x.signed_beta()),
        }
    }
}

fn parse_int_list(body: &str, src: &str) -> Result<Vec<i64>> {
    if body.is_empty() {
        return Err(Error::Parse(format!("empty block list in {src:?}")));
    }
    body.split(',')
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?} in {src:?}"))))
        .collect()
}

fn parse_unsigned(t: &str, src: &str) -> Result<i64> {
    if t.starts_with('+') || t.starts_with('-') {
        return Err(Error::Parse(format!("alpha must be unsigned in {src:?}")));
    }
    t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?} in {src:?}")))
}

/// Parse `C[n1,...]`, `J(n1,...)`, `S(alpha,beta)` or `beta/alpha`; whitespace is ignored.
pub fn parse_descriptor(text: &str) -> Result<Descriptor> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(body) = s.strip_prefix("C[").and_then(|r| r.strip_suffix(']')) {
        return Ok(Descriptor::Word(ConwayWord::c(parse_int_list(body, text)?)));
    }
    if let Some(body) = s.strip_prefix("J(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Descriptor::Word(ConwayWord::j(parse_int_list(body, text)?)));
    }
    if let Some(body) = s.strip_prefix("S(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("expected S(alpha,beta), got {text:?}")));
        }
        let alpha = parse_unsigned(parts[0], text)?;
        let beta = parts[1].parse::<i64>().map_err(|_| Error::Parse(format!("bad beta in {text:?}")))?;
        return Ok(Descriptor::Fraction(Fraction::new(alpha, beta)?));
    }
    if let Some((b, a)) = s.split_once('/') {
        let alpha = parse_unsigned(a, text)?;
        let beta = b.parse::<i64>().map_err(|_| Error::Parse(format!("bad beta in {text:?}")))?;
        return Ok(Descriptor::Fraction(Fraction::new(alpha, beta)?));
    }
    Err(Error::Parse(format!("unrecognized descriptor {text:?}")))
}

/// Slope `beta/alpha = 1/(n1 + 1/(n2 + ...))` of a word; zero blocks allowed.
pub fn slope(word: &ConwayWord) -> Result<Fraction> {
    let b = word.c_blocks();
    if b.is_empty() {
        return Err(Error::Degenerate("empty word".into()));
    }
    let overflow = || Error::InvalidInput(format!("slope of {word} overflows 64-bit integers"));
    // projective value x = p/q of the tail continued fraction
    let (mut p, mut q): (i128, i128) = (1, 0);
    for &n in b.iter().rev() {
        let np = (n as i128).checked_mul(p).and_then(|v| v.checked_add(q)).ok_or_else(overflow)?;
        q = p;
        p = np;
    }
    // slope = 1/x = q/p
    let (mut beta, mut alpha) = (q, p);
    if alpha < 0 {
        alpha = -alpha;
        beta = -beta;
    }
    if alpha == 0 {
        return Err(Error::Degenerate(format!("{word} is a degenerate tangle (division by zero)")));
    }
    if alpha == 1 {
        return Err(Error::Degenerate(format!("{word} is the trivial tangle closure (unknot)")));
    }
    let alpha = i64::try_from(alpha).map_err(|_| overflow())?;
    let beta = i64::try_from(beta % alpha as i128).map_err(|_| overflow())?;
    Fraction::new(alpha, beta)
}

/// The unique all-same-sign word with last block of size at least 2.
pub fn canonical_word(frac: &Fraction) -> Result<ConwayWord> {
    frac.require_nontrivial()?;
    let (mut a, mut b) = (frac.alpha, frac.beta);
    let mut blocks = Vec::new();
    while b != 0 {
        blocks.push(a / b);
        let r = a % b;
        a = b;
        b = r;
    }
    if frac.mirror {
        blocks.iter_mut().for_each(|n| *n = -*n);
    }
    Ok(ConwayWord::c(blocks))
}

/// An all-even word for the same link (never its mirror): even length for knots, odd for links.
///
/// Greedy even continued fraction: each step takes the even quotient nearest to
/// `alpha/beta` (ties toward the smaller one), then recurses on `(beta, remainder)`.
pub fn even_expansion(frac: &Fraction) -> Result<ConwayWord> {
    frac.require_nontrivial()?;
    let s = frac.signed_beta();
    let start = if frac.is_knot() && s % 2 != 0 {
        if s > 0 {
            s - frac.alpha
        } else {
            s + frac.alpha
        }
    } else {
        s
    };
    let (mut a, mut b) = (frac.alpha, start);
    let mut blocks = Vec::new();
    while b != 0 {
        let q = nearest_even_quotient(a, b);
        blocks.push(q);
        let r = a - q * b;
        a = b;
        b = r;
    }
    Ok(ConwayWord::c(blocks))
}

fn nearest_even_quotient(a: i64, b: i64) -> i64 {
    let f = Integer::div_floor(&a, &b);
    let base = if f % 2 == 0 { f } else { f - 1 };
    let mut best = base;
    for q in [base - 2, base, base + 2, base + 4] {
        let (rq, rb) = ((a - q * b).abs(), (a - best * b).abs());
        if rq < rb || (rq == rb && q.abs() < best.abs()) {
            best = q;
        }
    }
    best
}

/// Diagram symmetries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Mirror,
    UpsideDown,
    ReverseOrientationMarker,
}

/// Apply a diagram symmetry; the result is in C-notation.
pub fn transform_word(word: &ConwayWord, kind: Transform) -> ConwayWord {
    let b = word.c_blocks();
    let k = b.len();
    match kind {
        Transform::Mirror => {
            ConwayWord { blocks: b.iter().map(|n| -n).collect(), notation: Notation::C, reverse_a: word.reverse_a }
        }
        Transform::UpsideDown => {
            let s = if k % 2 == 1 { 1 } else { -1 };
            ConwayWord {
                blocks: b.iter().rev().map(|n| s * n).collect(),
                notation: Notation::C,
                reverse_a: word.reverse_a,
            }
        }
        Transform::ReverseOrientationMarker => {
            ConwayWord { blocks: b, notation: Notation::C, reverse_a: !word.reverse_a }
        }
    }
}

/// Remove zero blocks: `[.., a, 0, b, ..] -> [.., a+b, ..]` and `[.., a, 0] -> [..]`.
pub fn normalize_zeros(word: &ConwayWord) -> Result<ConwayWord> {
    let mut b = word.c_blocks();
    while let Some(i) = b.iter().position(|&n| n == 0) {
        if i == 0 {
            if b.len() == 1 {
                b.clear();
                break;
            }
            return Err(Error::Degenerate(format!("{word} starts with a zero block")));
        }
        if i + 1 == b.len() {
            b.truncate(i - 1);
        } else {
            let merged = b[i - 1] + b[i + 1];
            b.splice(i - 1..=i + 1, [merged]);
        }
    }
    if b.is_empty() {
        return Err(Error::Degenerate(format!("{word} reduces to the empty word (unknot)")));
    }
    Ok(ConwayWord { blocks: b, notation: Notation::C, reverse_a: word.reverse_a })
}
