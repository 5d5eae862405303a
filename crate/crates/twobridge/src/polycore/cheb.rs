//! Chebyshev polynomials `p_n`, `f_n`, `v_n` defined by `p_0 = 0`, `p_1 = 1`,
//! `p_{n+1} = t p_n - p_{n-1}`, extended to negative `n` by the same recursion.

use super::poly::GPoly;

/// `(p_n(t), p_{n-1}(t))` for an arbitrary polynomial argument `t`.
pub fn cheb_p_pair_at(n: i64, t: &GPoly) -> (GPoly, GPoly) {
    if n >= 1 {
        let (mut prev, mut cur) = (GPoly::zero(), GPoly::one());
        for _ in 1..n {
            let next = t * &cur - &prev;
            prev = cur;
            cur = next;
        }
        (cur, prev)
    } else {
        let (mut hi, mut lo) = (GPoly::one(), GPoly::zero());
        for _ in 0..(1 - n) {
            let below = t * &lo - &hi;
            hi = lo;
            lo = below;
        }
        (hi, lo)
    }
}

/// `p_n(t)` evaluated at a polynomial `t`.
pub fn cheb_p_at(n: i64, t: &GPoly) -> GPoly {
    cheb_p_pair_at(n, t).0
}

/// `f_n(t) = p_{n+1}(t) - p_n(t)` at a polynomial `t`.
pub fn cheb_f_at(n: i64, t: &GPoly) -> GPoly {
    let (pn1, pn) = cheb_p_pair_at(n + 1, t);
    pn1 - pn
}

/// `v_n(t) = p_{n+1}(t) - p_{n-1}(t)` at a polynomial `t`.
pub fn cheb_v_at(n: i64, t: &GPoly) -> GPoly {
    let (pn1, pn) = cheb_p_pair_at(n + 1, t);
    let pm1 = t * &pn - &pn1;
    pn1 - pm1
}

/// Which Chebyshev family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChebKind {
    P,
    F,
    V,
}

/// The Chebyshev polynomial of the given kind as a polynomial in `t`.
pub fn cheb(kind: ChebKind, n: i64) -> GPoly {
    let t = GPoly::x();
    match kind {
        ChebKind::P => cheb_p_at(n, &t),
        ChebKind::F => cheb_f_at(n, &t),
        ChebKind::V => cheb_v_at(n, &t),
    }
}
