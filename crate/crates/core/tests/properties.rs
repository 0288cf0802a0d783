use std::collections::HashSet;
use std::sync::Arc;

use ordercone::braid::{self, BraidWord, BurauKey};
use ordercone::cone::*;
use ordercone::lattice::{saturate, LexConeSpec, QuadScalar};
use ordercone::space::*;
use ordercone::*;
use proptest::prelude::*;

fn word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n as i16, any::<bool>()), 0..=max_len)
        .prop_map(move |v| BraidWord::new(n, v.into_iter().map(|(i, p)| if p { i } else { -i }).collect()).unwrap())
}

fn positive_word(n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(1..n as i16, 1..=max_len).prop_map(move |v| BraidWord::new(n, v).unwrap())
}

fn build(d: ConeDescriptor) -> Arc<ConeOracle> {
    ConeOracle::build(&d, &Budgets::default()).unwrap()
}

const STEPS: u64 = 1_000_000;

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn handle_reduction_preserves_the_braid(w in word(4, 14)) {
        let r = braid::handle_reduce(&w, STEPS).unwrap();
        prop_assert_eq!(BurauKey::of(&r), BurauKey::of(&w));
        prop_assert_eq!(r.permutation(), w.permutation());
        prop_assert!(braid::braid_equal(&r, &w, STEPS).unwrap());
    }

    #[test]
    fn reduced_word_has_one_signed_lowest_letter(w in word(4, 14)) {
        let rep = braid::main_sign(&w, STEPS).unwrap();
        match rep.index {
            None => prop_assert!(rep.reduced.is_empty()),
            Some(i) => {
                let low: Vec<i16> = rep.reduced.letters().iter().copied().filter(|l| l.unsigned_abs() as usize == i).collect();
                prop_assert!(!low.is_empty());
                prop_assert!(low.iter().all(|l| (*l > 0) == (rep.sign == Sign::Positive)));
                prop_assert!(rep.reduced.letters().iter().all(|l| l.unsigned_abs() as usize >= i));
            }
        }
    }

    #[test]
    fn dehornoy_and_dd_axioms(n in 3usize..=4, seed in any::<u64>()) {
        let mut rng = suite::rng(seed);
        let u = suite::random_braid_word(&mut rng, n, 10);
        let v = suite::random_braid_word(&mut rng, n, 10);
        for cone in [build(ConeDescriptor::Dehornoy { n }), build(ConeDescriptor::Dd { n })] {
            let (gu, gv) = (GroupElement::Braid(u.clone()), GroupElement::Braid(v.clone()));
            let su = cone.sign(&gu).unwrap();
            let sv = cone.sign(&gv).unwrap();
            prop_assert_eq!(cone.sign(&cone.group().invert(&gu)).unwrap(), -su);
            prop_assert_eq!(su == Sign::Zero, cone.group().is_identity(&gu).unwrap());
            if su == Sign::Positive && sv == Sign::Positive {
                prop_assert_eq!(cone.sign(&cone.group().multiply(&gu, &gv).unwrap()).unwrap(), Sign::Positive);
            }
        }
    }

    #[test]
    fn subword_property(beta in word(4, 8), alpha in positive_word(4, 6)) {
        let w = beta.concat(&alpha).unwrap().concat(&beta.inverse()).unwrap();
        prop_assert_eq!(braid::main_sign(&w, STEPS).unwrap().sign, Sign::Positive);
    }

    #[test]
    fn conjugation_coherence_braids(f in word(3, 5), g in word(3, 6)) {
        let p = build(ConeDescriptor::Dehornoy { n: 3 });
        let grp = p.group().clone();
        let (f, g) = (GroupElement::Braid(f), GroupElement::Braid(g));
        let q = conjugate_cone(&p, &f);
        let fgf = grp.multiply(&grp.multiply(&f, &g).unwrap(), &grp.invert(&f)).unwrap();
        prop_assert_eq!(q.sign(&fgf).unwrap(), p.sign(&g).unwrap());
    }

    #[test]
    fn conjugation_coherence_klein(fa in -5i64..=5, fb in -5i64..=5, ga in -5i64..=5, gb in -5i64..=5, sx in prop::bool::ANY, sy in prop::bool::ANY) {
        let p = build(ConeDescriptor::KleinTararin { sx: if sx { 1 } else { -1 }, sy: if sy { 1 } else { -1 } });
        let grp = p.group().clone();
        let (f, g) = (GroupElement::Klein(fa, fb), GroupElement::Klein(ga, gb));
        let q = conjugate_cone(&p, &f);
        let fgf = grp.multiply(&grp.multiply(&f, &g).unwrap(), &grp.invert(&f)).unwrap();
        prop_assert_eq!(q.sign(&fgf).unwrap(), p.sign(&g).unwrap());
    }

    #[test]
    fn klein_group_laws(a in (-9i64..=9, -9i64..=9), b in (-9i64..=9, -9i64..=9), c in (-9i64..=9, -9i64..=9)) {
        let k = Group::new(Family::KleinBottle, Budgets::default()).unwrap();
        let (a, b, c) = (GroupElement::Klein(a.0, a.1), GroupElement::Klein(b.0, b.1), GroupElement::Klein(c.0, c.1));
        let ab_c = k.multiply(&k.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = k.multiply(&a, &k.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(k.is_identity(&k.multiply(&a, &k.invert(&a)).unwrap()).unwrap());
    }

    #[test]
    fn lattice_cones_are_cones(seed in any::<u64>(), u in prop::collection::vec(-20i64..=20, 3), v in prop::collection::vec(-20i64..=20, 3)) {
        let mut rng = suite::rng(seed);
        let spec = suite::random_lex_spec(&mut rng, 3);
        let su = spec.sign(&u).unwrap();
        let neg: Vec<i64> = u.iter().map(|x| -x).collect();
        prop_assert_eq!(spec.sign(&neg).unwrap(), -su);
        prop_assert_eq!(su == Sign::Zero, u.iter().all(|&x| x == 0));
        let sum: Vec<i64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        if su == Sign::Positive && spec.sign(&v).unwrap() == Sign::Positive {
            prop_assert_eq!(spec.sign(&sum).unwrap(), Sign::Positive);
        }
    }

    #[test]
    fn quad_sign_matches_floats(p in -1000i64..=1000, q in 1i64..=50, r in -1000i64..=1000, s in 1i64..=50) {
        let x = QuadScalar::from_parts(p, q, r, s);
        let f = p as f64 / q as f64 + (r as f64 / s as f64) * std::f64::consts::SQRT_2;
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), Sign::from_i64(f.signum() as i64));
        }
        prop_assert_eq!(QuadScalar::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn saturation_contains_inputs(gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..=3)) {
        let sat = saturate(3, &gens).unwrap();
        if !sat.basis.is_empty() {
            let sub = ordercone::lattice::Sublattice::new(3, sat.basis.clone()).unwrap();
            for g in &gens {
                prop_assert!(sub.contains(g).unwrap());
            }
            let again = saturate(3, &sat.basis).unwrap();
            prop_assert_eq!(again.basis, sat.basis);
        }
    }

    #[test]
    fn braid_words_serialize(w in word(5, 10)) {
        let text = serde_json::to_string(&w).unwrap();
        let back: BraidWord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, w);
    }
}

/// For `1 < h < g` with `g` positive, `g` stays positive under `hPh^-1`.
#[test]
fn cylinder_monotonicity() {
    for (cone, r) in [
        (build(ConeDescriptor::Dehornoy { n: 3 }), 3),
        (build(ConeDescriptor::Dd { n: 3 }), 3),
        (build(ConeDescriptor::KleinTararin { sx: -1, sy: 1 }), 3),
    ] {
        let grp = cone.group().clone();
        let ball = grp.ball(r).unwrap();
        for g in ball.elements() {
            if cone.sign(g).unwrap() != Sign::Positive {
                continue;
            }
            for h in ball.elements() {
                if cone.sign(h).unwrap() == Sign::Positive && cone.compare(h, g).unwrap().is_lt() {
                    assert_eq!(conjugate_cone(&cone, h).sign(g).unwrap(), Sign::Positive, "g={g} h={h}");
                }
            }
        }
    }
}

/// Every constructed cone's sign vector is a census vector, and every census vector
/// satisfies the sign-vector invariants.
#[test]
fn census_completeness_and_soundness() {
    let mut rng = suite::rng(11);
    let mut cases: Vec<(Family, Vec<Arc<ConeOracle>>)> = vec![
        (Family::FreeAbelian { k: 1 }, vec![build(ConeDescriptor::Lattice { spec: LexConeSpec::from_int_normals(&[&[1]]).unwrap() })]),
        (
            Family::KleinBottle,
            [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                .iter()
                .map(|&(sx, sy)| build(ConeDescriptor::KleinTararin { sx, sy }))
                .collect(),
        ),
    ];
    let z2: Vec<_> = (0..40).map(|_| build(ConeDescriptor::Lattice { spec: suite::random_lex_spec(&mut rng, 2) })).collect();
    cases.push((Family::FreeAbelian { k: 2 }, z2));
    for (family, cones) in cases {
        let group = Group::new(family, Budgets::default()).unwrap();
        for r in 1..=3 {
            let ball = group.ball(r).unwrap();
            let res = census(&CensusQuery { group: group.clone(), radius: r, required_positive: vec![] }).unwrap();
            let set: HashSet<Vec<Sign>> = res.vectors.iter().map(|v| v.signs.clone()).collect();
            assert_eq!(set.len(), res.vectors.len(), "duplicates in census");
            for v in &res.vectors {
                v.validate(&ball).unwrap();
            }
            for c in &cones {
                let v = sign_vector_on(c, &ball).unwrap();
                assert!(set.contains(&v.signs), "{family} r={r}: {v} missing");
                let pins: Vec<GroupElement> = ball.elements().iter().zip(&v.signs).filter(|(_, s)| s.is_positive()).map(|(g, _)| g.clone()).take(2).collect();
                let pinned = census(&CensusQuery { group: group.clone(), radius: r, required_positive: pins }).unwrap();
                assert!(pinned.vectors.iter().any(|p| p.signs == v.signs));
            }
        }
    }
}

#[test]
fn census_counts_z2_grow() {
    let group = Group::new(Family::FreeAbelian { k: 2 }, Budgets::default()).unwrap();
    let counts: Vec<usize> = (1..=4)
        .map(|r| census(&CensusQuery { group: group.clone(), radius: r, required_positive: vec![] }).unwrap().count)
        .collect();
    assert_eq!(counts, [4, 8, 16, 24]);
}
