use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use twinheart_core::category::{Ideal, Mor, Obj, PresentedCategory, StructureConstant, SubcatSpec, ValidationFailure};
use twinheart_core::cluster::{build_cluster_category, ArcLabel, ClusterCategory};
use twinheart_core::scalar::{Field, Scalar};
use twinheart_core::torsion::perp0;
use twinheart_core::Error;

const Q: Field = Field::Rational;

fn a4() -> &'static ClusterCategory {
    static CELL: OnceLock<ClusterCategory> = OnceLock::new();
    CELL.get_or_init(|| build_cluster_category(4, Q).unwrap())
}

fn a4_f5() -> &'static ClusterCategory {
    static CELL: OnceLock<ClusterCategory> = OnceLock::new();
    CELL.get_or_init(|| build_cluster_category(4, Field::prime(5).unwrap()).unwrap())
}

fn sc(i: usize, j: usize, k: usize, value: Scalar) -> StructureConstant {
    StructureConstant {
        i,
        j,
        k,
        a: 0,
        b: 0,
        c: 0,
        value,
    }
}

/// One object with End = k.
fn point() -> PresentedCategory {
    let mut c = PresentedCategory::new(Q, vec!["X".into()], vec![1], vec![vec![Q.one()]]).unwrap();
    c.set_constant(sc(0, 0, 0, Q.one())).unwrap();
    c
}

/// The path category of the linear quiver on `n` vertices: one basis map
/// `i -> j` for each `i <= j`, all composites with coefficient one.
fn linear(n: usize) -> PresentedCategory {
    let names = (0..n).map(|i| format!("V{i}")).collect();
    let homdim = (0..n * n).map(|e| usize::from(e / n <= e % n)).collect();
    let mut c = PresentedCategory::new(Q, names, homdim, vec![vec![Q.one()]; n]).unwrap();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                c.set_constant(sc(i, j, k, Q.one())).unwrap();
            }
        }
    }
    c
}

fn all_vectors(field: Field, len: usize) -> Vec<Vec<Scalar>> {
    let p = field.characteristic() as i64;
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(field.from_i64(x));
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn validation_accepts_a_point_and_the_a2_cluster_category() {
    assert!(point().validate().passed());
    assert!(linear(3).validate().passed());
    let c = build_cluster_category(2, Q).unwrap();
    assert!(c.category().validate().passed());
}

#[test]
fn validation_names_a_corrupted_triple() {
    // Rescaling one composite of three objects is a change of basis; with a
    // fourth object it breaks associativity.
    let mut c = linear(3);
    c.corrupt_constant(0, 1, 2, 0, Q.from_i64(2));
    assert!(c.validate().passed());
    let mut c = linear(4);
    c.corrupt_constant(0, 1, 2, 0, Q.from_i64(2));
    match c.validate().failure {
        Some(ValidationFailure::Associativity { i, j, k, l, .. }) => {
            let chains = [(i, j, k), (j, k, l), (i, j, l), (i, k, l)];
            assert!(chains.contains(&(0, 1, 2)), "{:?}", (i, j, k, l));
        }
        other => panic!("expected an associativity failure, got {other:?}"),
    }

    let mut p = point();
    p.corrupt_constant(0, 0, 0, 0, Q.from_i64(3));
    assert!(matches!(
        p.validate().failure,
        Some(ValidationFailure::Identity { i: 0, j: 0, a: 0 })
    ));
}

#[test]
fn identity_is_neutral_for_composition() {
    let cat = a4().category();
    let x = a4().parse_obj("P1,S2").unwrap();
    let y = a4().parse_obj("M,I3,P2").unwrap();
    for f in cat.basis(&x, &y) {
        assert_eq!(cat.compose(&cat.identity(&y), &f).unwrap(), f);
        assert_eq!(cat.compose(&f, &cat.identity(&x)).unwrap(), f);
    }
}

#[test]
fn mesh_compositions_vanish_in_a2() {
    // Every mesh in C_{A_2} has a single middle term, so tau x -> m -> x is zero.
    let c = build_cluster_category(2, Q).unwrap();
    let cat = c.category();
    for t in c.ar_triangles() {
        assert_eq!(t.b.len(), 1);
        let (f, g) = (t.f.as_ref().unwrap(), t.g.as_ref().unwrap());
        assert!(!f.is_zero() && !g.is_zero());
        assert!(cat.compose(g, f).unwrap().is_zero());
    }
}

#[test]
fn block_composition_sums_over_the_middle_summands() {
    let c = linear(3);
    let (a, b, cc) = (Obj::indec(0), Obj::indec(1), Obj::indec(2));
    let bb = b.direct_sum(&b);
    let f = c
        .mor(a.clone(), bb.clone(), vec![Q.from_i64(1), Q.from_i64(2)])
        .unwrap();
    let g = c.mor(bb, cc.clone(), vec![Q.from_i64(3), Q.from_i64(5)]).unwrap();
    let h = c.compose(&g, &f).unwrap();
    assert_eq!(h, c.mor(a, cc, vec![Q.from_i64(13)]).unwrap());
    assert!(c.compose(&f, &g).is_err());
}

#[test]
fn hom_dimension_examples() {
    let c = a4();
    let cat = c.category();
    for y in cat.all_indecs() {
        assert_eq!(cat.hom_dim(&Obj::zero(), &Obj::indec(y)), 0);
        assert!(cat.homdim(y, y) >= 1);
    }
    let r = c.parse_obj("P1,P2,S2").unwrap();
    assert_eq!(cat.hom_dim(&r, &r), 5);
}

#[test]
fn radical_examples() {
    let cat = a4().category();
    let rad = cat.radical().unwrap();
    let rad2 = cat.rad_power(2).unwrap();
    assert!(rad2.is_subideal_of(&rad));
    for i in cat.all_indecs() {
        assert_eq!(rad.dim(i, i), 0);
    }
    let rad0 = cat.rad_power(0).unwrap();
    assert!(Ideal::full(cat).is_subideal_of(&rad0));
    assert!(rad.is_two_sided(cat));
}

#[test]
fn radical_needs_local_endomorphism_rings() {
    let names = vec!["X".into()];
    let mut c = PresentedCategory::new(Q, names, vec![2], vec![vec![Q.one(), Q.zero()]]).unwrap();
    c.set_constant(sc(0, 0, 0, Q.one())).unwrap();
    assert!(c.radical().is_err());
}

/// Irreducible maps between diagonals rotate one endpoint forward.
#[test]
fn a4_arrows_match_the_polygon() {
    let c = a4();
    let cat = c.category();
    let m = c.rank() + 3;
    let is_diagonal = |x: usize, y: usize| {
        let d = (y + m - x) % m;
        d >= 2 && d <= m - 2
    };
    let label = |x: usize, y: usize| ArcLabel {
        a: x.min(y),
        b: x.max(y),
    };
    let counts = cat.arrow_counts().unwrap();
    let mut total = 0;
    for i in cat.all_indecs() {
        let ArcLabel { a, b } = c.arc(i);
        let mut expected = BTreeSet::new();
        for (x, y) in [(a, (b + 1) % m), ((a + 1) % m, b)] {
            if is_diagonal(x, y) {
                expected.insert(label(x, y));
            }
        }
        let found: BTreeSet<ArcLabel> = cat
            .all_indecs()
            .filter(|&j| counts[i][j] > 0)
            .map(|j| c.arc(j))
            .collect();
        assert_eq!(found, expected, "arrows out of {}", cat.name(i));
        for j in cat.all_indecs() {
            assert!(counts[i][j] <= 1);
            total += counts[i][j];
        }
    }
    assert_eq!(total, 21);
}

#[test]
fn trivial_ideals() {
    let cat = a4().category();
    let zero = cat.ideal_generated_by(&SubcatSpec::empty());
    assert_eq!(zero, Ideal::zero(cat));
    let full = cat.ideal_generated_by(&SubcatSpec::all(cat.n()));
    assert!(full.is_subideal_of(&Ideal::full(cat)) && Ideal::full(cat).is_subideal_of(&full));
    assert_eq!(full.killed_objects(cat), SubcatSpec::all(cat.n()));
    assert!(zero.killed_objects(cat).is_empty());
}

/// `[X_R]` over F5 against the union of all `{v ∘ u}` with `u: i -> X`.
#[test]
fn x_r_ideal_matches_brute_force_factorisation() {
    let c = a4_f5();
    let cat = c.category();
    let field = cat.field();
    let r = c.parse_obj("P1,P2,S2").unwrap();
    let x_r = perp0(cat, &SubcatSpec::add_of(&r));
    let ideal = cat.ideal_generated_by(&x_r);
    let x = x_r.as_obj();
    for i in cat.all_indecs() {
        let (io, dim_ix) = (Obj::indec(i), cat.hom_dim(&Obj::indec(i), &x));
        for j in cat.all_indecs() {
            let jo = Obj::indec(j);
            let mut factoring: Vec<Vec<Scalar>> = Vec::new();
            for u in all_vectors(field, dim_ix) {
                let u = cat.mor(io.clone(), x.clone(), u).unwrap();
                let pre = cat.pre_matrix(&u, &jo);
                for v in all_vectors(field, pre.cols()) {
                    let w = pre.apply(&v).unwrap();
                    if !factoring.contains(&w) {
                        factoring.push(w);
                    }
                }
            }
            for f in all_vectors(field, cat.homdim(i, j)) {
                assert_eq!(
                    ideal.contains_coords(i, j, &f),
                    factoring.contains(&f),
                    "{} -> {}: {f:?}",
                    cat.name(i),
                    cat.name(j)
                );
            }
        }
    }
}

#[test]
fn quotient_by_trivial_ideals() {
    let cat = a4().category();
    let same = cat.quotient_category(&Ideal::zero(cat)).unwrap();
    let q = same.category();
    assert_eq!(q.names(), cat.names());
    assert_eq!(q.homdim_matrix(), cat.homdim_matrix());
    assert_eq!(q.constants(), cat.constants());
    assert!(q.validate().passed());

    let none = cat.quotient_category(&Ideal::full(cat)).unwrap();
    assert_eq!(none.category().n(), 0);
    assert!(none.category().validate().passed());
}

#[test]
fn quotient_by_x_r() {
    let c = a4();
    let cat = c.category();
    let r = c.parse_obj("P1,P2,S2").unwrap();
    let x_r = perp0(cat, &SubcatSpec::add_of(&r));
    let q = cat.quotient_category(&cat.ideal_generated_by(&x_r)).unwrap();
    assert_eq!(q.category().n(), 9);
    assert!(q.category().validate().passed());
    for &p in q.kept() {
        assert!(!x_r.contains(p));
    }
}

#[test]
fn quotients_reject_one_sided_families() {
    let cat = linear(3);
    // span(u) in Hom(A, B) alone is not closed under post-composition with w.
    let bad = Ideal::from_fn(&cat, |i, j| {
        let d = cat.homdim(i, j);
        if (i, j) == (0, 1) {
            twinheart_core::matrix::Mat::identity(Q, d)
        } else {
            twinheart_core::matrix::Mat::zeros(Q, d, 0)
        }
    });
    assert!(!bad.is_two_sided(&cat));
    assert!(matches!(cat.quotient_category(&bad), Err(Error::Input(_))));
}

#[test]
fn homdim_matrix_invertibility() {
    for n in 2..=4 {
        assert!(
            build_cluster_category(n, Q)
                .unwrap()
                .category()
                .homdim_matrix()
                .invertible,
            "n = {n}"
        );
    }
    assert!(
        !build_cluster_category(5, Q)
            .unwrap()
            .category()
            .homdim_matrix()
            .invertible
    );
}

#[test]
fn reconstruct_examples() {
    let cat = a4().category();
    let d = cat.homdim_matrix().d;
    let column = |x: usize| -> Vec<i64> { (0..cat.n()).map(|z| d[z][x]).collect() };
    for x in cat.all_indecs() {
        assert_eq!(cat.reconstruct_object(&column(x)).unwrap(), Some(Obj::indec(x)));
    }
    assert_eq!(cat.reconstruct_object(&vec![0; cat.n()]).unwrap(), Some(Obj::zero()));
    let sum: Vec<i64> = column(2).iter().zip(column(7)).map(|(a, b)| a + b).collect();
    assert_eq!(
        cat.reconstruct_object(&sum).unwrap(),
        Some(Obj::from_summands(vec![2, 7]))
    );
    let diff: Vec<i64> = column(2).iter().zip(column(7)).map(|(a, b)| a - b).collect();
    assert_eq!(cat.reconstruct_object(&diff).unwrap(), None);
    assert!(matches!(cat.reconstruct_object(&[1, 2]), Err(Error::Dimension(_))));

    let c5 = build_cluster_category(5, Q).unwrap();
    let zeros = vec![0; c5.category().n()];
    assert!(matches!(
        c5.category().reconstruct_object(&zeros),
        Err(Error::OracleUnavailable(_))
    ));
}

#[test]
fn object_names_round_trip() {
    let c = a4();
    let cat = c.category();
    let x = c.parse_obj("P1, P2+S2").unwrap();
    assert_eq!(cat.obj_name(&x), "P1+P2+S2");
    assert_eq!(cat.parse_obj(&cat.obj_name(&x)).unwrap(), x);
    assert_eq!(cat.obj_name(&Obj::zero()), "0");
    assert!(cat.parse_obj("").unwrap().is_zero());
    assert!(matches!(cat.parse_obj("P9"), Err(Error::Input(_))));
    // aliases and arc labels
    assert_eq!(c.parse_obj("S1").unwrap(), c.parse_obj("I1").unwrap());
    assert_eq!(c.parse_obj("I4").unwrap(), c.parse_obj("P1").unwrap());
    let arc = c.arc(cat.index_of("M").unwrap());
    assert_eq!(c.parse_obj(&arc.to_string()).unwrap(), c.parse_obj("M").unwrap());
}

#[test]
fn sigma_and_its_inverse_round_trip() {
    let c = a4();
    let cat = c.category();
    for i in cat.all_indecs() {
        let x = Obj::indec(i);
        let sx = cat.apply_functor_obj("Sigma", &x).unwrap();
        assert_eq!(cat.apply_functor_obj("SigmaInv", &sx).unwrap(), x);
        for j in cat.all_indecs() {
            for f in cat.basis(&x, &Obj::indec(j)) {
                let back = cat
                    .apply_functor("SigmaInv", &cat.apply_functor("Sigma", &f).unwrap())
                    .unwrap();
                assert_eq!(back, f);
            }
        }
    }
}

fn subset(mask: u16, n: usize) -> SubcatSpec {
    let mut s = SubcatSpec::empty();
    for i in 0..n {
        if mask & (1 << i) != 0 {
            s = s.union(&SubcatSpec::add_of(&Obj::indec(i)));
        }
    }
    s
}

fn random_mor(cat: &PresentedCategory, x: &Obj, y: &Obj, coeffs: &[i64]) -> Mor {
    let len = cat.hom_dim(x, y);
    let coords = (0..len)
        .map(|k| cat.field().from_i64(coeffs[k % coeffs.len()]))
        .collect();
    cat.mor(x.clone(), y.clone(), coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_ideals_are_two_sided(mask in 0u16..(1 << 14), i in 0usize..14, j in 0usize..14, k in 0usize..14,
                                      coeffs in prop::collection::vec(-2i64..3, 1..6)) {
        let cat = a4().category();
        let ideal = cat.ideal_generated_by(&subset(mask, 14));
        prop_assert!(ideal.is_two_sided(cat));
        for col in ideal.space(i, j).columns() {
            let f = cat.mor(Obj::indec(i), Obj::indec(j), col).unwrap();
            let g = random_mor(cat, &Obj::indec(j), &Obj::indec(k), &coeffs);
            let h = random_mor(cat, &Obj::indec(k), &Obj::indec(i), &coeffs);
            prop_assert!(ideal.contains(cat, &cat.compose(&g, &f).unwrap()));
            prop_assert!(ideal.contains(cat, &cat.compose(&f, &h).unwrap()));
        }
    }

    #[test]
    fn quotient_dims_are_hom_minus_ideal(mask in 0u16..(1 << 14)) {
        let cat = a4().category();
        let ideal = cat.ideal_generated_by(&subset(mask, 14));
        let q = cat.quotient_category(&ideal).unwrap();
        let kept = q.kept();
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate() {
                prop_assert_eq!(q.category().homdim(a, b), cat.homdim(i, j) - ideal.dim(i, j));
            }
        }
        prop_assert!(q.category().validate().passed());
    }

    #[test]
    fn projection_ignores_the_ideal_and_lifts_split_it(mask in 0u16..(1 << 14), i in 0usize..14, j in 0usize..14,
                                                       coeffs in prop::collection::vec(-2i64..3, 1..6)) {
        let cat = a4().category();
        let ideal = cat.ideal_generated_by(&subset(mask, 14));
        let q = cat.quotient_category(&ideal).unwrap();
        let f = random_mor(cat, &Obj::indec(i), &Obj::indec(j), &coeffs);
        let pf = q.project(&f).unwrap();
        for col in ideal.space(i, j).columns() {
            let e = cat.mor(Obj::indec(i), Obj::indec(j), col).unwrap();
            prop_assert_eq!(q.project(&cat.add(&f, &e).unwrap()).unwrap(), pf.clone());
        }
        prop_assert_eq!(q.project(&q.lift(&pf).unwrap()).unwrap(), pf.clone());
        // composition in the quotient does not depend on the chosen lifts
        for k in cat.all_indecs() {
            let g = random_mor(cat, &Obj::indec(j), &Obj::indec(k), &coeffs);
            let pg = q.project(&g).unwrap();
            let lifted = cat.compose(&q.lift(&pg).unwrap(), &q.lift(&pf).unwrap()).unwrap();
            prop_assert_eq!(
                q.category().compose(&pg, &pf).unwrap(),
                q.project(&cat.compose(&g, &f).unwrap()).unwrap()
            );
            prop_assert_eq!(q.project(&lifted).unwrap(), q.project(&cat.compose(&g, &f).unwrap()).unwrap());
        }
    }
}
