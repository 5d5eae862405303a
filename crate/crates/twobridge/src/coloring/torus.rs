//! Closed forms for the torus knots and links `T(2, q)`.

use crate::polycore::{cheb_p_at, GPoly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusVariant {
    Knot,
    LinkParallel,
    LinkAntiparallel,
}

/// Rep-polynomial of `T(2, crossings)` from Chebyshev polynomials, sign-normalized.
pub fn torus_rep_poly(crossings: u32, variant: TorusVariant) -> Result<GPoly> {
    if crossings < 2 {
        return Err(Error::InvalidInput("T(2,q) needs q >= 2".into()));
    }
    let q = i64::from(crossings);
    let u = GPoly::x();
    let p = match variant {
        TorusVariant::Knot | TorusVariant::LinkParallel => {
            let want_odd = variant == TorusVariant::Knot;
            if (q % 2 == 1) != want_odd {
                return Err(Error::InvalidInput(format!("{crossings} crossings do not give a {variant:?}")));
            }
            &u * &cheb_p_at(q, &-&u)
        }
        TorusVariant::LinkAntiparallel => {
            if q % 2 != 0 {
                return Err(Error::InvalidInput(format!("{crossings} crossings give a knot")));
            }
            let t = -(GPoly::from_ints(&[2]) + &u * &u);
            &u * &u * cheb_p_at(q / 2, &t)
        }
    };
    Ok(p.normalize_sign())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GPoly {
        GPoly::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(torus_rep_poly(3, TorusVariant::Knot).unwrap(), p("u^3 - u"));
        assert_eq!(torus_rep_poly(4, TorusVariant::LinkParallel).unwrap(), p("u^4 - 2u^2"));
        assert_eq!(torus_rep_poly(2, TorusVariant::LinkAntiparallel).unwrap(), p("u^2"));
        assert!(torus_rep_poly(4, TorusVariant::Knot).is_err());
    }
}
