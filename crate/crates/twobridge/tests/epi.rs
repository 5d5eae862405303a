use proptest::prelude::*;
use twobridge::coloring::{rep_polynomial, ui_sequence, Orientation};
use twobridge::conway::{mod_inverse, parse_descriptor, slope, ConwayWord, Descriptor, Fraction};
use twobridge::epi::*;
use twobridge::GPoly;

fn d(s: &str) -> Descriptor {
    parse_descriptor(s).unwrap()
}

fn spec_strategy(max_len: usize) -> impl Strategy<Value = OrsSpec> {
    let entry = (1i64..=3, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
    (prop::collection::vec(entry, 1..=max_len), 1usize..=5)
        .prop_flat_map(|(a, n)| {
            let signs = prop::collection::vec(any::<bool>(), n - 1);
            let c = prop::collection::vec(-2i64..=2, n - 1);
            (Just(a), Just(n), signs, c)
        })
        .prop_filter_map("valid, nontrivial seed, alpha <= 400", |(a, n, s, c)| {
            let mut signs = vec![1i8];
            signs.extend(s.iter().map(|&b| if b { 1 } else { -1 }));
            let spec = OrsSpec::new(a, n, signs, c).ok()?;
            let seed = slope(&spec.seed()).ok()?;
            let k = slope(&ors_word(&spec).ok()?).ok()?;
            (seed.alpha >= 2 && k.alpha <= 400).then_some(spec)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ors_seed_divides(spec in spec_strategy(3)) {
        let pr = ors_factor_property(&spec).unwrap();
        let v = divisibility_check(&Descriptor::Word(pr.normalized.clone()), &Descriptor::Word(spec.seed())).unwrap();
        prop_assert!(v.divides);
    }

    #[test]
    fn ors_ui_pattern(spec in spec_strategy(2).prop_filter("no zero c", |s| !s.c.contains(&0))) {
        prop_assert!(ui_pattern_holds(&spec));
    }
}

/// The expansion's u_i-sequence modulo `P_A / u` repeats the seed's, reversed on odd parts,
/// with zeros at the `2c_i` blocks (squares compared; orientations of links are free).
fn ui_pattern_holds(spec: &OrsSpec) -> bool {
    let w = ors_word(spec).unwrap();
    let q = rep_polynomial(&Descriptor::Word(spec.seed())).unwrap().shift_down(1).unwrap();
    let m = spec.a.len();
    let sq = |p: &GPoly| (p * p).rem_monic(&q).unwrap();
    let orients = [Orientation::DEFAULT, Orientation::TWIST_A];
    for ko in orients {
        let Ok(k) = ui_sequence(&w, ko) else { continue };
        for ao in orients {
            let Ok(ua) = ui_sequence(&spec.seed(), ao) else { continue };
            let mut idx = 0;
            let mut good = true;
            for part in 0..spec.type_n {
                for j in 0..m {
                    let e = if part % 2 == 0 { &ua[j] } else { &ua[m - 1 - j] };
                    good &= sq(&k[idx]) == sq(e);
                    idx += 1;
                }
                if part + 1 < spec.type_n {
                    good &= k[idx].rem_monic(&q).unwrap().is_zero();
                    idx += 1;
                }
            }
            if good {
                return true;
            }
        }
    }
    false
}

#[test]
fn ors_worked_examples() {
    let pr = ors_factor_property(&OrsSpec::positive(vec![3], vec![1]).unwrap()).unwrap();
    assert_eq!(pr.normalized.c_blocks(), vec![3, 2, 3]);
    assert_eq!(pr.seed_poly, GPoly::parse("u^3 - u").unwrap());
    let pr = ors_factor_property(&OrsSpec::positive(vec![3], vec![1, 0]).unwrap()).unwrap();
    assert_eq!(pr.normalized.c_blocks(), vec![3, 2, 6]);
    let pr = ors_factor_property(&OrsSpec::positive(vec![2, -2], vec![0, -1]).unwrap()).unwrap();
    assert_eq!(pr.normalized.c_blocks(), vec![2, -4, 2, -2, 2, -2]);
}

#[test]
fn divisibility_examples() {
    let v = divisibility_check(&d("C[2,3,0,3,2,-2,2,3]"), &d("C[2,3]")).unwrap();
    assert_eq!(v.witness, Some(Witness::P));
    assert!(divisibility_check(&d("C[2,2,5]"), &d("C[3]")).unwrap().divides);
    assert!(!divisibility_check(&d("C[2,3]"), &d("C[2,2]")).unwrap().divides);
    assert!(divisibility_check(&d("3/7"), &d("3/7")).unwrap().divides);
}

#[test]
fn reversed_fraction_gives_same_verdicts() {
    // beta'' = +-beta^-1 reads the same knot from the other end
    let targets = ["C[3]", "C[2,2]", "C[2,3]", "C[4]"];
    for (a, b) in [(27, 11), (45, 19), (217, 101), (15, 4), (35, 13)] {
        let inv = mod_inverse(b, a);
        for t in targets {
            let v1 = divisibility_check(&Descriptor::Fraction(Fraction::new(a, b).unwrap()), &d(t)).unwrap();
            for bb in [inv, a - inv] {
                let v2 = divisibility_check(&Descriptor::Fraction(Fraction::new(a, bb).unwrap()), &d(t)).unwrap();
                assert_eq!(v1.divides, v2.divides, "{b}/{a} vs {bb}/{a} -> {t}");
            }
        }
    }
}

fn polys_of(records: &[CensusRecord]) -> Vec<(String, bool, GPoly)> {
    records.iter().filter(|r| !r.mirror).map(|r| (r.id.clone(), r.is_knot, r.rep_poly.clone())).collect()
}

#[test]
fn census_small_and_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.jsonl");
    let opts = CensusOptions { max_alpha: 9, jobs: 2, geometry: true };
    let s1 = build_census(&opts, &path).unwrap();
    let text1 = std::fs::read_to_string(&path).unwrap();
    let s2 = build_census(&opts, &path).unwrap();
    assert_eq!(s2.new_records, 0);
    assert_eq!(s1.records, s2.records);
    assert_eq!(text1, std::fs::read_to_string(&path).unwrap());

    let recs = read_census(&path).unwrap();
    let ids: Vec<&str> = recs.iter().map(|r| r.id.as_str()).collect();
    for want in ["S(3,1)", "S(5,1)", "S(5,3)", "S(7,1)", "S(7,3)", "S(4,1)", "S(6,1)"] {
        assert!(ids.contains(&want), "{want} missing from {ids:?}");
    }
    let keys: Vec<(i64, i64)> = recs.iter().map(|r| r.key()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for r in &recs {
        assert_eq!(r.schema_version, SCHEMA_VERSION);
        assert_eq!(r.rep_poly.degree(), Some(r.alpha as usize));
        if r.is_knot {
            assert!(r.splitting.is_some());
            assert!(r.roots.iter().filter(|x| x.multiplicity > 0).all(|x| x.error.is_none()));
        }
    }
    // 9_? = C[3,3]-class knots map onto the trefoil
    let s93 = recs.iter().find(|r| r.id == "S(9,1)").unwrap();
    assert!(s93.edges.iter().any(|e| e.target == "S(3,1)" && e.kind == "epimorphism"));

    // growing the census only appends
    let bigger = CensusOptions { max_alpha: 11, jobs: 1, geometry: false };
    let s3 = build_census(&bigger, &path).unwrap();
    assert!(s3.new_records > 0);
    assert!(std::fs::read_to_string(&path).unwrap().starts_with(&text1));
}

#[test]
fn census_to_27_partial_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    build_census(&CensusOptions { max_alpha: 27, jobs: 2, geometry: false }, &path).unwrap();
    let recs = read_census(&path).unwrap();
    let find = |w: &[i64]| {
        let f = slope(&ConwayWord::c(w.to_vec())).unwrap();
        recs.iter()
            .find(|r| {
                let g = Fraction::new(r.alpha, r.beta).unwrap();
                g.same_link(&f) || g.same_link(&f.mirror_image())
            })
            .unwrap()
    };
    let k225 = find(&[2, 2, 5]);
    let trefoil = find(&[3]);
    let edges =
        if k225.mirror { &recs.iter().find(|r| r.id == k225.mirror_partner).unwrap().edges } else { &k225.edges };
    assert!(edges.iter().any(|e| e.target == trefoil.id || e.target == trefoil.mirror_partner));

    let j44 = find(&[4, -4]);
    assert!(j44.edges.is_empty(), "{:?}", j44.edges);
    let factored = ["u", "u^3+2u+1", "u^3+2u-1", "u^4+u^3+2u^2+2u+1", "u^4-u^3+2u^2-2u+1"]
        .iter()
        .fold(GPoly::one(), |acc, f| &acc * &GPoly::parse(f).unwrap());
    assert_eq!(j44.rep_poly, factored);

    // reflexive and transitive on knots
    let polys = polys_of(&recs);
    for (id, knot, _) in &polys {
        if *knot {
            let r = recs.iter().find(|r| &r.id == id).unwrap();
            let k = Descriptor::Fraction(Fraction::new(r.alpha, r.beta).unwrap());
            assert!(divisibility_check(&k, &k).unwrap().divides);
        }
    }
    let edge = |a: &str, b: &str| recs.iter().find(|r| r.id == a).unwrap().edges.iter().any(|e| e.target == b);
    for r in recs.iter().filter(|r| r.is_knot && !r.mirror) {
        for e in &r.edges {
            let mid = recs.iter().find(|x| x.id == e.target).unwrap();
            for e2 in &mid.edges {
                if e2.target != r.id && e2.target != r.mirror_partner {
                    assert!(edge(&r.id, &e2.target), "{} -> {} -> {}", r.id, mid.id, e2.target);
                }
            }
        }
    }
}
