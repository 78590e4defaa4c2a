use std::sync::OnceLock;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinheart_core::category::{Mor, Obj, PresentedCategory};
use twinheart_core::cluster::{build_cluster_category, ClusterCategory};
use twinheart_core::localise::*;
use twinheart_core::matrix::Mat;
use twinheart_core::preab::{
    check_integral, check_quasi_abelian, check_semi_abelian, irreducible_morphisms, is_regular, SampleConfig,
};
use twinheart_core::scalar::Field;
use twinheart_core::torsion::perp0;

struct Fixture {
    c: ClusterCategory,
    loc: Localisation,
}

fn a4() -> &'static Fixture {
    static CELL: OnceLock<Fixture> = OnceLock::new();
    CELL.get_or_init(|| {
        let c = build_cluster_category(4, Field::Rational).unwrap();
        let r = c.parse_obj("P1,P2,S2").unwrap();
        let loc = Localisation::new(c.category(), &r).unwrap();
        Fixture { c, loc }
    })
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn inventory(loc: &Localisation) -> Vec<Representation> {
    let q = &loc.ext_quiver().quiver;
    module_inventory(q, f5(), InventoryBound::thin(q)).unwrap()
}

fn random_heart_mor(h: &PresentedCategory, rng: &mut ChaCha8Rng) -> Mor {
    let obj = |rng: &mut ChaCha8Rng| -> Obj {
        let len = rng.gen_range(1..=2);
        (0..len).map(|_| rng.gen_range(0..h.n())).collect()
    };
    let x = obj(rng);
    let y = obj(rng);
    random_mor_between(h, x, y, rng)
}

fn random_mor_between(h: &PresentedCategory, x: Obj, y: Obj, rng: &mut ChaCha8Rng) -> Mor {
    let d = h.hom_dim(&x, &y);
    let coords = (0..d).map(|_| h.field().from_i64(rng.gen_range(-1..=1))).collect();
    h.mor(x, y, coords).unwrap()
}

#[test]
fn end_algebra_and_its_quiver() {
    let fx = a4();
    let alg = fx.loc.algebra();
    assert_eq!(alg.dim, 5);
    let aq = fx.loc.ext_quiver();
    assert_eq!(aq.quiver.labels, ["1'", "2'", "3'"]);
    let mut arrows = aq.quiver.arrows.clone();
    arrows.sort();
    assert_eq!(arrows, [(0, 1), (2, 1)]);
    assert_eq!(aq.quiver.path_count(), Some(5));
    assert!(aq.has_no_relations(alg));

    let single = build_cluster_category(4, Field::Rational).unwrap();
    let p1 = single.parse_obj("P1").unwrap();
    let one = end_algebra(single.category(), &p1).unwrap();
    assert_eq!(one.dim, 1);
    assert_eq!(ext_quiver(single.category(), &one).unwrap().quiver.arrows.len(), 0);
}

#[test]
fn non_basic_rigid_objects_are_refused_by_the_quiver() {
    let c = build_cluster_category(3, Field::Rational).unwrap();
    let r = c.parse_obj("P1,P1").unwrap();
    let alg = end_algebra(c.category(), &r).unwrap();
    assert_eq!(alg.dim, 4);
    assert!(ext_quiver(c.category(), &alg).is_err());
}

#[test]
fn evaluation_functor_basics() {
    let fx = a4();
    let cat = fx.c.category();
    let loc = &fx.loc;
    let e_r = loc.eval_obj(loc.r());
    assert_eq!(e_r.dim, 5);
    assert!(e_r.respects(loc.algebra()));
    let x_r = perp0(cat, &twinheart_core::category::SubcatSpec::add_of(loc.r()));
    for x in cat.all_indecs() {
        let m = loc.eval_obj(&Obj::indec(x));
        assert!(m.respects(loc.algebra()));
        assert_eq!(m.dim == 0, x_r.contains(x), "{}", cat.name(x));
    }
}

#[test]
fn regular_irreducibles_become_invertible() {
    let fx = a4();
    let loc = &fx.loc;
    let h = loc.heart().category();
    let q = irreducible_morphisms(h).unwrap();
    let regular: Vec<_> = q.regular_arrows().collect();
    assert_eq!(regular.len(), 3);
    for a in regular {
        assert!(loc.eval_heart_mor(&a.rep).unwrap().inverse().is_some());
    }
}

#[test]
fn heart_of_the_smaller_pair() {
    let fx = a4();
    let st = fx.loc.heart_st().category();
    let mut names: Vec<&str> = st.names().iter().map(String::as_str).collect();
    names.sort();
    assert_eq!(names, ["I1", "I2", "P1", "P2", "S2", "SigmaP3"]);
    // C(R) = add R * add Sigma R also contains Sigma R, which the quotient kills
    assert_eq!(fx.loc.c_r().len(), 9);
}

#[test]
fn functor_f_is_identity_on_objects_and_additive() {
    let fx = a4();
    let loc = &fx.loc;
    let st = loc.heart_st().category();
    let h = loc.heart().category();
    for q in st.all_indecs() {
        let id = st.identity(&Obj::indec(q));
        let fid = loc.functor_f(&id).unwrap();
        assert_eq!(h.obj_name(fid.dom()), st.name(q));
        assert_eq!(fid, h.identity(fid.dom()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let a = random_heart_mor(st, &mut rng);
        let b = random_mor_between(st, a.dom().clone(), a.cod().clone(), &mut rng);
        let sum = st.add(&a, &b).unwrap();
        let lhs = loc.functor_f(&sum).unwrap();
        let rhs = h.add(&loc.functor_f(&a).unwrap(), &loc.functor_f(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn fractions() {
    let fx = a4();
    let loc = &fx.loc;
    let h = loc.heart().category();
    let q = irreducible_morphisms(h).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for arrow in q.regular_arrows() {
        let r = &arrow.rep;
        // [r, r] is the identity fraction of the domain
        let rr = loc.fraction(r, r).unwrap();
        let one = loc.fraction_of(&h.identity(r.dom()));
        assert!(loc.fraction_eq(&rr, &one).unwrap());
        // r^-1 ∘ r = 1 and r ∘ r^-1 = 1
        let inv = loc.fraction_inverse(r).unwrap();
        let left = loc.fraction_compose(&loc.fraction_of(r), &inv).unwrap();
        assert!(loc.fraction_eq(&left, &one).unwrap());
        let right = loc.fraction_compose(&inv, &loc.fraction_of(r)).unwrap();
        assert!(loc.fraction_eq(&right, &loc.fraction_of(&h.identity(r.cod()))).unwrap());
        // [f1, r] = [f2, r] exactly when E(f1) = E(f2)
        for _ in 0..5 {
            let x = Obj::indec(rng.gen_range(0..h.n()));
            let f1 = random_mor_between(h, x.clone(), r.cod().clone(), &mut rng);
            let f2 = random_mor_between(h, x, r.cod().clone(), &mut rng);
            let a = loc.fraction(&f1, r).unwrap();
            let b = loc.fraction(&f2, r).unwrap();
            let same = loc.eval_heart_mor(&f1).unwrap() == loc.eval_heart_mor(&f2).unwrap();
            assert_eq!(loc.fraction_eq(&a, &b).unwrap(), same);
        }
    }
    // with identity denominators, fraction equality is equality in the heart
    for _ in 0..40 {
        let f1 = random_heart_mor(h, &mut rng);
        let f2 = random_mor_between(h, f1.dom().clone(), f1.cod().clone(), &mut rng);
        let eq = loc.fraction_eq(&loc.fraction_of(&f1), &loc.fraction_of(&f2)).unwrap();
        assert_eq!(eq, f1 == f2);
    }
    // a non-regular denominator is refused
    let zero = h.zero_mor(&Obj::indec(0), &Obj::indec(0));
    assert!(loc.fraction(&zero, &zero).is_err());
}

#[test]
fn fraction_composition_is_associative() {
    let fx = a4();
    let loc = &fx.loc;
    let h = loc.heart().category();
    let q = irreducible_morphisms(h).unwrap();
    let reps: Vec<Mor> = q.regular_arrows().map(|a| a.rep.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for r in &reps {
        // x --f--> cod r <--r-- dom r, then dom r --g--> y
        let x = Obj::indec(rng.gen_range(0..h.n()));
        let f = random_mor_between(h, x, r.cod().clone(), &mut rng);
        let a = loc.fraction(&f, r).unwrap();
        let y = Obj::indec(rng.gen_range(0..h.n()));
        let b = loc.fraction_of(&random_mor_between(h, r.dom().clone(), y.clone(), &mut rng));
        let z = Obj::indec(rng.gen_range(0..h.n()));
        let c = loc.fraction_of(&random_mor_between(h, y, z, &mut rng));
        let ab_c = loc
            .fraction_compose(&loc.fraction_compose(&a, &b).unwrap(), &c)
            .unwrap();
        let a_bc = loc
            .fraction_compose(&a, &loc.fraction_compose(&b, &c).unwrap())
            .unwrap();
        assert_eq!(loc.fraction_model(&ab_c).unwrap(), loc.fraction_model(&a_bc).unwrap());
    }
}

#[test]
fn every_indecomposable_has_a_cover() {
    let fx = a4();
    let cat = fx.c.category();
    let loc = &fx.loc;
    let h = loc.heart().category();
    for y in cat.all_indecs() {
        let yo = Obj::indec(y);
        let cover = loc.find_cover(&yo).unwrap();
        if loc.heart().project_obj(&yo).is_zero() {
            assert!(cover.x.is_zero());
        } else {
            assert!(loc.c_r().contains_obj(&cover.x));
            assert!(is_regular(h, &cover.r));
            assert!(loc.eval_heart_mor(&cover.r).unwrap().inverse().is_some());
        }
        if loc.heart_st().quotient_id(y).is_some() {
            assert_eq!(cover.x, yo);
            assert_eq!(cover.r, h.identity(cover.r.dom()));
        }
    }
    let pairs: Vec<(String, String)> = ["M", "I3", "P4"]
        .iter()
        .map(|n| {
            let cover = loc.find_cover(&fx.c.parse_obj(n).unwrap()).unwrap();
            (n.to_string(), cat.obj_name(&cover.x))
        })
        .collect();
    assert_eq!(
        pairs,
        [
            ("M".into(), "P2".into()),
            ("I3".into(), "P1".into()),
            ("P4".into(), "SigmaP3".into())
        ]
    );
}

#[test]
fn w_maps_from_c_r_factor_through_sigma_r() {
    let fx = a4();
    let report = fx.loc.factor_through_s_check(100, 1).unwrap();
    assert_eq!(report.sampled, 100);
    assert_eq!(report.in_w, 100);
    assert!(report.passed(), "{:?}", report.failures.len());
}

#[test]
fn equivalence_for_the_a4_example() {
    let fx = a4();
    let inv = inventory(&fx.loc);
    let labels: Vec<String> = inv.iter().map(dimension_label).collect();
    assert_eq!(labels, ["100", "010", "001", "110", "011", "111"]);
    let report = fx.loc.verify_equivalence(Some(&inv)).unwrap();
    assert!(report.faithful && report.full);
    assert_eq!(report.dense, Some(true));
    assert!(report.is_equivalence());
    assert_eq!(report.heart_count, 6);
    assert_eq!(report.inventory_count, Some(6));
    // dense and fully faithful on indecomposables: the preimages are distinct
    let mut hits: Vec<usize> = report.density.iter().map(|(_, x)| x.unwrap()).collect();
    hits.sort();
    hits.dedup();
    assert_eq!(hits.len(), 6);
    assert!(fx.loc.verify_equivalence(None).unwrap().dense.is_none());
}

#[test]
fn wider_inventory_search_finds_nothing_new() {
    let fx = a4();
    let q = &fx.loc.ext_quiver().quiver;
    let wide = module_inventory(
        q,
        f5(),
        InventoryBound {
            max_entry: 2,
            max_total: 3,
        },
    )
    .unwrap();
    assert_eq!(wide.len(), 6);
}

#[test]
fn module_model_has_no_regular_irreducibles() {
    let fx = a4();
    let q = &fx.loc.ext_quiver().quiver;
    let model = module_category(q, &inventory(&fx.loc)).unwrap();
    assert!(model.validate().passed());
    let arrows = irreducible_morphisms(&model).unwrap();
    assert!(arrows.arrow_count() > 0);
    assert_eq!(arrows.regular_arrows().count(), 0);
    let cfg = SampleConfig::sampled(model.field(), 42, 60);
    for check in [check_semi_abelian, check_quasi_abelian, check_integral] {
        assert!(check(&model, &cfg).unwrap().passed());
    }
}

#[test]
fn single_summand_and_zero() {
    let c = build_cluster_category(3, Field::Rational).unwrap();
    let loc = Localisation::new(c.category(), &c.parse_obj("P1").unwrap()).unwrap();
    assert_eq!(loc.algebra().dim, 1);
    let inv = inventory(&loc);
    assert_eq!(inv.len(), 1);
    let report = loc.verify_equivalence(Some(&inv)).unwrap();
    assert!(report.is_equivalence());
    assert_eq!(report.heart_count, 1);

    let loc0 = Localisation::new(c.category(), &Obj::zero()).unwrap();
    assert_eq!(loc0.algebra().dim, 0);
    let inv0 = inventory(&loc0);
    assert!(inv0.is_empty());
    let report = loc0.verify_equivalence(Some(&inv0)).unwrap();
    assert!(report.is_equivalence());
    assert_eq!(report.heart_count, 0);
}

#[test]
fn inventory_over_q_is_refused() {
    let q = Quiver {
        labels: vec!["1'".into()],
        arrows: vec![],
    };
    assert!(module_inventory(&q, Field::Rational, InventoryBound::thin(&q)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn e_is_a_functor(seed in any::<u64>()) {
        let fx = a4();
        let loc = &fx.loc;
        let h = loc.heart().category();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_heart_mor(h, &mut rng);
        let z = Obj::indec(rng.gen_range(0..h.n()));
        let g = random_mor_between(h, f.cod().clone(), z, &mut rng);
        let gf = h.compose(&g, &f).unwrap();
        let lhs = loc.eval_heart_mor(&gf).unwrap();
        let rhs = loc.eval_heart_mor(&g).unwrap().mul(&loc.eval_heart_mor(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let id = loc.eval_heart_mor(&h.identity(f.dom())).unwrap();
        prop_assert_eq!(id.clone(), Mat::identity(h.field(), id.rows()));
    }

    #[test]
    fn e_inverts_exactly_the_regular_maps(seed in any::<u64>()) {
        let fx = a4();
        let loc = &fx.loc;
        let h = loc.heart().category();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_heart_mor(h, &mut rng);
        let ef = loc.eval_heart_mor(&f).unwrap();
        prop_assert_eq!(ef.inverse().is_some(), is_regular(h, &f));
    }

    #[test]
    fn fraction_equality_is_an_equivalence(seed in any::<u64>()) {
        let fx = a4();
        let loc = &fx.loc;
        let h = loc.heart().category();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_heart_mor(h, &mut rng);
        let fs: Vec<LeftFraction> = (0..3)
            .map(|_| loc.fraction_of(&random_mor_between(h, f.dom().clone(), f.cod().clone(), &mut rng)))
            .collect();
        for a in &fs {
            prop_assert!(loc.fraction_eq(a, a).unwrap());
            for b in &fs {
                prop_assert_eq!(loc.fraction_eq(a, b).unwrap(), loc.fraction_eq(b, a).unwrap());
                for c in &fs {
                    if loc.fraction_eq(a, b).unwrap() && loc.fraction_eq(b, c).unwrap() {
                        prop_assert!(loc.fraction_eq(a, c).unwrap());
                    }
                }
            }
        }
    }
}
