use num_complex::Complex;
use proptest::prelude::*;
use twobridge::coloring::{color_general_word, rep_polynomial, rep_polynomial_even, Orientation};
use twobridge::conway::{
    canonical_word, even_expansion, normalize_zeros, parse_descriptor, slope, transform_word, ConwayWord, Descriptor,
    Fraction, Transform,
};
use twobridge::geometry::{dilog, find_roots, zeta2};
use twobridge::polycore::{cheb_p_at, GaussInt};
use twobridge::riley::{riley_polynomial, verify_bridge};
use twobridge::scalar::{c, ComplexExt};
use twobridge::{GPoly, Real, Real128, Real256};

fn fraction() -> impl Strategy<Value = Fraction> {
    (2i64..=120, any::<i64>(), any::<bool>()).prop_filter_map("coprime", |(a, b, neg)| {
        let b = 1 + b.rem_euclid(a - 1).abs();
        (num_integer::gcd(a, b) == 1).then(|| Fraction::new(a, if neg { -b } else { b }).unwrap())
    })
}

/// Same oriented-up-to-chirality class: signed beta agrees up to inversion mod alpha.
fn same_chiral(a: &Fraction, b: &Fraction) -> bool {
    let (x, y) = (a.signed_beta(), b.signed_beta());
    a.alpha == b.alpha && ((x - y).rem_euclid(a.alpha) == 0 || (x * y - 1).rem_euclid(a.alpha) == 0)
}

fn word() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1i64..=4, any::<bool>()).prop_map(|(v, n)| if n { -v } else { v }), 1..=5)
}

fn gpoly() -> impl Strategy<Value = GPoly> {
    prop::collection::vec((-9i64..=9, -9i64..=9), 0..8)
        .prop_map(|cs| GPoly::new(cs.into_iter().map(|(r, i)| GaussInt::new(r, i)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_and_even_words_keep_the_slope(f in fraction()) {
        let canon = canonical_word(&f).unwrap();
        prop_assert!(same_chiral(&slope(&canon).unwrap(), &f));
        let even = even_expansion(&f).unwrap();
        prop_assert!(even.c_blocks().iter().all(|n| n % 2 == 0));
        prop_assert!(same_chiral(&slope(&even).unwrap(), &f));
        prop_assert_eq!(even.len() % 2 == 0, f.is_knot());
    }

    #[test]
    fn descriptor_text_round_trips(blocks in word()) {
        let w = ConwayWord::c(blocks);
        prop_assert_eq!(parse_descriptor(&w.to_string()).unwrap(), Descriptor::Word(w));
    }

    #[test]
    fn transforms_act_on_fractions(blocks in word()) {
        let w = ConwayWord::c(blocks);
        let Ok(f) = slope(&w) else { return Ok(()) };
        if f.is_trivial() { return Ok(()) }
        let m = slope(&transform_word(&w, Transform::Mirror)).unwrap();
        prop_assert!(same_chiral(&m, &f.mirror_image()));
        let u = slope(&transform_word(&w, Transform::UpsideDown)).unwrap();
        prop_assert!(same_chiral(&u, &f));
        let z = normalize_zeros(&w).unwrap();
        prop_assert_eq!(slope(&z).unwrap(), f);
    }

    #[test]
    fn polynomial_ring_laws(a in gpoly(), b in gpoly(), c in gpoly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(GPoly::parse(&a.to_string()).unwrap(), a.clone());
        if !b.is_zero() && b.lc().is_unit() {
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), Some(a.clone()));
        }
        prop_assert_eq!(a.substitute_iu().substitute_iu(), a.substitute_neg());
    }

    #[test]
    fn chebyshev_at_two(n in -40i64..=40) {
        prop_assert_eq!(cheb_p_at(n, &GPoly::constant(GaussInt::real(2))), GPoly::from_ints(&[n]));
    }

    #[test]
    fn coloring_matches_riley(f in fraction()) {
        let p = rep_polynomial(&Descriptor::Fraction(f)).unwrap();
        let r = riley_polynomial(&f).unwrap();
        prop_assert!(verify_bridge(&p, &r, f.is_knot()).is_ok());
        prop_assert_eq!(p.degree(), Some(f.alpha as usize));
    }

    #[test]
    fn engines_agree_on_knots(blocks in word()) {
        let w = ConwayWord::c(blocks);
        let Ok(f) = slope(&w) else { return Ok(()) };
        if f.is_trivial() || !f.is_knot() { return Ok(()) }
        let general = color_general_word(&w, Orientation::DEFAULT).unwrap().rep_poly;
        let even = rep_polynomial_even(&even_expansion(&f).unwrap()).unwrap();
        prop_assert_eq!(general.normalize_sign(), even.normalize_sign());
    }

    #[test]
    fn roots_of_products_are_recovered(rs in prop::collection::vec((-5i64..=5, -5i64..=5), 1..6)) {
        let p = rs.iter().fold(GPoly::one(), |acc, &(re, im)| {
            &acc * &GPoly::new(vec![GaussInt::new(-re, -im), GaussInt::real(1)])
        });
        let roots = find_roots::<Real256>(&p).unwrap();
        prop_assert_eq!(roots.len(), rs.len());
        for &(re, im) in &rs {
            let want = Complex::new(re as f64, im as f64);
            prop_assert!(roots.iter().any(|r| (r.to_c64() - want).norm() < 1e-30));
        }
    }

    #[test]
    fn dilog_reflection(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let z = c::<Real128>(re, im);
        let one = c::<Real128>(1.0, 0.0);
        prop_assume!((z.clone() - one.clone()).to_c64().norm() > 1e-3 && z.to_c64().norm() > 1e-3);
        prop_assume!(!(im.abs() < 1e-9 && !(0.0..=1.0).contains(&re)));
        let lhs = dilog(&z) + dilog(&(one.clone() - z.clone()));
        let rhs = Complex::new(zeta2::<Real128>(), Real128::from_int(0)) - z.cln() * (one - z).cln();
        prop_assert!((lhs - rhs).cabs().to_f64() < 1e-30);
    }

    #[test]
    fn log_inverts_exp(re in -20.0f64..20.0, im in -3.1f64..3.1) {
        let z = c::<Real256>(re, im);
        let back = z.cexp().cln();
        prop_assert!((back - z).cabs().to_f64() < 1e-60);
    }
}
