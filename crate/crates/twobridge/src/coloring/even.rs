//! Block-matrix engine for words whose J-entries are all even.

use super::diagram::block_positions;
use super::{finish, ColoringResult, OrientationVariant};
use crate::conway::ConwayWord;
use crate::polycore::{GPoly, PolyMatrix2};
use crate::{Error, Result};

/// Pair of vectors expressed on the basis `a, b`.
type Pair = [GPoly; 2];

/// `X(s u_block)`.
pub fn crossing_matrix(u_block: &GPoly, sign: i8) -> PolyMatrix2 {
    if sign < 0 {
        PolyMatrix2::crossing(&-u_block)
    } else {
        PolyMatrix2::crossing(u_block)
    }
}

/// Transfer matrix of 1-based block `i` with `2n` crossings.
pub fn block_matrix(i: usize, n: i64, u_block: &GPoly) -> Result<PolyMatrix2> {
    let (p, m) = (crossing_matrix(u_block, 1), crossing_matrix(u_block, -1));
    let base = if i % 2 == 1 { &p * &m } else { &m * &p };
    base.sl2_power(n)
}

fn sym(x: &Pair, y: &Pair) -> GPoly {
    (&x[0] * &y[1] - &x[1] * &y[0]) * GPoly::x()
}

/// `(a', b') = (a, b) M`.
fn apply(a: &Pair, b: &Pair, m: &PolyMatrix2) -> (Pair, Pair) {
    let [[m11, m12], [m21, m22]] = &m.e;
    let lin = |c1: &GPoly, c2: &GPoly| -> Pair { [&a[0] * c1 + &b[0] * c2, &a[1] * c1 + &b[1] * c2] };
    (lin(m11, m21), lin(m12, m22))
}

pub fn color_even_expansion(word: &ConwayWord) -> Result<ColoringResult> {
    let j = word.j_blocks();
    if j.is_empty() {
        return Err(Error::InvalidInput("empty word".into()));
    }
    if let Some(bad) = j.iter().find(|&&n| n == 0 || n % 2 != 0) {
        return Err(Error::InvalidInput(format!("block {bad} is not a nonzero even number")));
    }
    let a: Pair = [GPoly::one(), GPoly::zero()];
    let b: Pair = [GPoly::zero(), GPoly::one()];
    let mut pos = [a.clone(), a, b.clone(), b.clone()];
    let mut useq = Vec::with_capacity(j.len());
    for (i0, &n) in j.iter().enumerate() {
        let (l, r) = block_positions(i0);
        let ui = sym(&pos[l], &pos[r]);
        let m = block_matrix(i0 + 1, n / 2, &ui)?;
        let (na, nb) = apply(&pos[l], &pos[r], &m);
        pos[l] = na;
        pos[r] = nb;
        useq.push(ui);
    }
    let k = j.len();
    let last = if k % 2 == 1 { &pos[2] } else { &pos[0] };
    let p = sym(last, &b);
    let is_knot = k % 2 == 0;
    let variant = if is_knot { OrientationVariant::Primary } else { OrientationVariant::IuTwisted };
    let (l, r) = block_positions(k - 1);
    finish(useq, p, [pos[l].clone(), pos[r].clone()], is_knot, variant, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_matrix_examples() {
        let u = GPoly::x();
        assert_eq!(crossing_matrix(&u, 1).e[1][1], -&u);
        assert_eq!(crossing_matrix(&u, -1).e[1][1], u.clone());
        let prod = &crossing_matrix(&u, 1) * &crossing_matrix(&u, -1);
        assert_eq!(prod.trace(), GPoly::parse("-u^2 - 2").unwrap());
    }
}
