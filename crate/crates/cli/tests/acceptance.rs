//! One check per acceptance criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p twinheart --test acceptance -- --nocapture` to see
//! the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinheart_core::category::{Mor, Obj, PresentedCategory, SubcatSpec};
use twinheart_core::cluster::{arcs_cross, build_cluster_category};
use twinheart_core::localise::{module_category, module_inventory, InventoryBound, Localisation};
use twinheart_core::preab::{
    check_integral, check_quasi_abelian, check_semi_abelian, cokernel, default_coeff_pool, irreducible_morphisms,
    is_epi, is_mono, kernel, SampleConfig, SuiteReport,
};
use twinheart_core::scalar::{Field, Scalar};
use twinheart_core::torsion::canonical_twin_from_rigid;
use twinheart_core::Result as CoreResult;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn core<T>(r: CoreResult<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn c1_cluster_categories() -> Verdict {
    let start = Instant::now();
    for (n, count) in [(2, 5), (3, 9), (4, 14)] {
        let c = core(build_cluster_category(n, Field::Rational))?;
        let cat = c.category();
        ensure!(
            cat.n() == count,
            "C_A{n} has {} indecomposables, expected {count}",
            cat.n()
        );
        for i in cat.all_indecs() {
            let x = Obj::indec(i);
            let s2x = core(cat.apply_functor_obj("Sigma", &core(cat.apply_functor_obj("Sigma", &x))?))?;
            for j in cat.all_indecs() {
                let y = Obj::indec(j);
                ensure!(cat.homdim(i, j) <= 1, "dim Hom({}, {}) > 1", cat.name(i), cat.name(j));
                ensure!(
                    cat.hom_dim(&x, &y) == cat.hom_dim(&y, &s2x),
                    "2-CY fails for ({}, {})",
                    cat.name(i),
                    cat.name(j)
                );
                let ext = core(c.ext1_dim(&x, &y))?;
                ensure!(
                    ext == usize::from(arcs_cross(c.arc(i), c.arc(j))),
                    "Ext({}, {}) differs from arc crossing",
                    cat.name(i),
                    cat.name(j)
                );
            }
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(5), "took {t:?}");
    Ok("5/9/14 indecomposables, Hom <= 1, 2-CY and Ext = crossing".into())
}

fn c2_twin_pair() -> Verdict {
    let c = core(build_cluster_category(4, Field::Rational))?;
    let cat = c.category();
    let r = core(c.parse_obj("P1,P2,S2"))?;
    let ct = core(canonical_twin_from_rigid(cat, &r))?;
    let tw = &ct.twin;
    ensure!(tw.first.certified(), "(S, T) not certified: {:?}", tw.first);
    ensure!(tw.second.certified(), "(U, V) not certified: {:?}", tw.second);
    ensure!(tw.s_in_u, "S is not inside U");
    ensure!(tw.w == ct.x_r, "W differs from X_R");
    ensure!(tw.t == ct.x_r, "T differs from X_R");
    ensure!(tw.u == ct.x_r, "U differs from X_R");
    ensure!(tw.h == SubcatSpec::all(cat.n()), "H is not all of C");
    Ok(format!(
        "both pairs certified, S in U, W = T = U = X_R ({} objects), H = C",
        ct.x_r.len()
    ))
}

fn heart_of(n: usize, field: Field, rigid: &str) -> Result<PresentedCategory, String> {
    let c = core(build_cluster_category(n, field))?;
    let r = core(c.parse_obj(rigid))?;
    let ct = core(canonical_twin_from_rigid(c.category(), &r))?;
    Ok(ct.heart.category().clone())
}

fn passed(r: &SuiteReport, min: usize) -> Result<(), String> {
    ensure!(r.passed(), "{} failed: {:?}", r.suite.name(), r.failure);
    for (p, count) in &r.checks {
        ensure!(*count >= min, "{p}: only {count} instances");
    }
    Ok(())
}

fn c3_quasi_abelian() -> Verdict {
    let start = Instant::now();
    let h4 = heart_of(4, Field::Rational, "P1,P2,S2")?;
    let rep = core(check_quasi_abelian(
        &h4,
        &SampleConfig::sampled(Field::Rational, 42, 200),
    ))?;
    passed(&rep, 200)?;
    let h2 = heart_of(2, f5(), "P1")?;
    let ex = core(check_quasi_abelian(&h2, &core(SampleConfig::exhaustive(f5(), 1))?))?;
    passed(&ex, 1)?;
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(format!(
        "A4 heart 2x200 samples, A2 exhaustive {} instances, 0 failures",
        ex.total_checks()
    ))
}

fn c4_semi_abelian_and_integral() -> Verdict {
    let mut total = 0;
    for (n, field, rigid) in [(4, Field::Rational, "P1,P2,S2"), (2, f5(), "P1")] {
        let h = heart_of(n, field, rigid)?;
        let cfg = SampleConfig::sampled(field, 42, 200);
        for check in [check_semi_abelian, check_integral] {
            let rep = core(check(&h, &cfg))?;
            passed(&rep, 200)?;
            total += rep.total_checks();
        }
    }
    Ok(format!("{total} sampled instances on the A4 and A2 hearts, 0 failures"))
}

fn a4_localisation() -> Result<Localisation, String> {
    let c = core(build_cluster_category(4, Field::Rational))?;
    let r = core(c.parse_obj("P1,P2,S2"))?;
    core(Localisation::new(c.category(), &r))
}

fn c5_regular_arrows() -> Verdict {
    let h = heart_of(4, Field::Rational, "P1,P2,S2")?;
    let q = core(irreducible_morphisms(&h))?;
    let mut regular: Vec<(&str, &str)> = q.regular_arrows().map(|a| (h.name(a.from), h.name(a.to))).collect();
    regular.sort();
    let expected = [("P1", "I3"), ("P2", "M"), ("SigmaP3", "P4")];
    ensure!(regular == expected, "regular arrows {regular:?}");
    let loc = a4_localisation()?;
    let quiver = &loc.ext_quiver().quiver;
    let inv = core(module_inventory(quiver, f5(), InventoryBound::thin(quiver)))?;
    let model = core(module_category(quiver, &inv))?;
    ensure!(model.validate().passed(), "module model does not validate");
    let mq = core(irreducible_morphisms(&model))?;
    ensure!(mq.arrow_count() > 0, "module model has no arrows");
    let in_model = mq.regular_arrows().count();
    ensure!(in_model == 0, "module model has {in_model} regular arrows");
    Ok(format!(
        "3 regular arrows {regular:?}; mod Lambda has 0 of {}",
        mq.arrow_count()
    ))
}

fn c6_lambda() -> Verdict {
    let loc = a4_localisation()?;
    let alg = loc.algebra();
    let aq = loc.ext_quiver();
    ensure!(alg.dim == 5, "dim Lambda = {}", alg.dim);
    ensure!(
        aq.quiver.labels == ["1'", "2'", "3'"],
        "vertices {:?}",
        aq.quiver.labels
    );
    let mut arrows = aq.quiver.arrows.clone();
    arrows.sort();
    ensure!(arrows == [(0, 1), (2, 1)], "arrows {arrows:?}");
    ensure!(
        aq.quiver.path_count() == Some(alg.dim),
        "path count {:?}",
        aq.quiver.path_count()
    );
    ensure!(aq.has_no_relations(alg), "relations present");
    Ok("dim 5, quiver 1'->2'<-3', 5 paths, no relations".into())
}

fn c7_equivalence() -> Verdict {
    let loc = a4_localisation()?;
    let quiver = &loc.ext_quiver().quiver;
    let inv = core(module_inventory(quiver, f5(), InventoryBound::thin(quiver)))?;
    ensure!(inv.len() == 6, "inventory has {} modules", inv.len());
    let eq = core(loc.verify_equivalence(Some(&inv)))?;
    ensure!(eq.faithful && eq.full, "faithful {}, full {}", eq.faithful, eq.full);
    ensure!(eq.dense == Some(true), "density {:?}", eq.density);
    let cat = loc.category();
    for y in cat.all_indecs() {
        core(loc.find_cover(&Obj::indec(y))).map_err(|e| format!("cover of {}: {e}", cat.name(y)))?;
    }
    let factor = core(loc.factor_through_s_check(100, 42))?;
    ensure!(factor.sampled == 100 && factor.in_w == 100, "sampled {factor:?}");
    ensure!(
        factor.in_s == 100,
        "{} of 100 [W]-maps outside [add Sigma R]",
        100 - factor.in_s
    );
    Ok(format!(
        "full, faithful on {} pairs, dense on 6 modules; 14 covers; 100/100 [W]-maps in [add Sigma R]",
        eq.pairs.len()
    ))
}

fn random_mor(cat: &PresentedCategory, max: usize, rng: &mut ChaCha8Rng) -> Mor {
    let pool = default_coeff_pool(cat.field());
    let obj = |rng: &mut ChaCha8Rng| -> Obj {
        let len = rng.gen_range(0..=max);
        (0..len).map(|_| rng.gen_range(0..cat.n())).collect()
    };
    let (x, y) = (obj(rng), obj(rng));
    let coords = (0..cat.hom_dim(&x, &y))
        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
        .collect();
    cat.mor(x, y, coords).unwrap()
}

/// Objects with at most `bounds[z]` copies of each `z`, smallest first.
fn candidates(bounds: &[usize]) -> Vec<Obj> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|c| {
                (0..=b).map(move |m| {
                    let mut c = c.clone();
                    c.push(m);
                    c
                })
            })
            .collect();
    }
    out.sort_by_key(|c| c.iter().sum::<usize>());
    out.into_iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .flat_map(|(z, &k)| std::iter::repeat_n(z, k))
                .collect()
        })
        .collect()
}

fn combinations(field: Field, d: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let p = field.characteristic() as usize;
    (0..p.pow(d as u32)).map(move |mut code| {
        (0..d)
            .map(|_| {
                let c = field.from_i64((code % p) as i64);
                code /= p;
                c
            })
            .collect()
    })
}

/// The smallest `K` carrying a monic `k: K -> X` with `f k = 0` through which
/// every `z -> X` killed by `f` factors, found by enumeration over F_p.
fn brute_kernel(cat: &PresentedCategory, f: &Mor) -> Option<Obj> {
    let x = f.dom();
    let vanishing: Vec<_> = cat
        .all_indecs()
        .map(|z| cat.post_matrix(f, &Obj::indec(z)).nullspace())
        .collect();
    let bounds: Vec<usize> = vanishing.iter().map(|v| v.cols()).collect();
    for k_obj in candidates(&bounds) {
        let killed = cat.post_matrix(f, &k_obj).nullspace();
        for w in combinations(cat.field(), killed.cols()) {
            let k = cat.mor(k_obj.clone(), x.clone(), killed.apply(&w).unwrap()).unwrap();
            if is_mono(cat, &k)
                && cat
                    .all_indecs()
                    .all(|z| cat.post_matrix(&k, &Obj::indec(z)).spans(&vanishing[z]).unwrap())
            {
                return Some(k_obj);
            }
        }
    }
    None
}

/// The dual search for cokernels.
fn brute_cokernel(cat: &PresentedCategory, f: &Mor) -> Option<Obj> {
    let y = f.cod();
    let covanishing: Vec<_> = cat
        .all_indecs()
        .map(|z| cat.pre_matrix(f, &Obj::indec(z)).nullspace())
        .collect();
    let bounds: Vec<usize> = covanishing.iter().map(|v| v.cols()).collect();
    for c_obj in candidates(&bounds) {
        let killed = cat.pre_matrix(f, &c_obj).nullspace();
        for w in combinations(cat.field(), killed.cols()) {
            let c = cat.mor(y.clone(), c_obj.clone(), killed.apply(&w).unwrap()).unwrap();
            if is_epi(cat, &c)
                && cat
                    .all_indecs()
                    .all(|z| cat.pre_matrix(&c, &Obj::indec(z)).spans(&covanishing[z]).unwrap())
            {
                return Some(c_obj);
            }
        }
    }
    None
}

fn c8_oracles() -> Verdict {
    let mut checked = 0;
    for (n, rigid, seed) in [(2, "P1", 11u64), (2, "P2", 12), (3, "P1", 13)] {
        let h = heart_of(n, f5(), rigid)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let f = random_mor(&h, 2, &mut rng);
            let (k, _) = core(kernel(&h, &f))?;
            let (q, _) = core(cokernel(&h, &f))?;
            let bk = brute_kernel(&h, &f).ok_or("brute-force kernel search came up empty")?;
            let bq = brute_cokernel(&h, &f).ok_or("brute-force cokernel search came up empty")?;
            ensure!(k.is_iso(&bk), "kernel {} vs {}", h.obj_name(&k), h.obj_name(&bk));
            ensure!(q.is_iso(&bq), "cokernel {} vs {}", h.obj_name(&q), h.obj_name(&bq));
            checked += 1;
        }
    }
    ensure!(checked >= 25, "only {checked} morphisms");

    // Rotating A -> B -> C -> Sigma A: cones of f, g, eps are C, Sigma A, Sigma B.
    let mut triangles = 0;
    for n in 2..=4 {
        let c = core(build_cluster_category(n, Field::Rational))?;
        let cat = c.category();
        for t in c.ar_triangles() {
            let sigma = |x: &Obj| core(cat.apply_functor_obj("Sigma", x));
            let rotations = [
                (t.f.as_ref().unwrap(), t.c.clone()),
                (t.g.as_ref().unwrap(), sigma(&t.a)?),
                (&t.eps, sigma(&t.b)?),
            ];
            for (map, expected) in rotations {
                let cone = core(c.cone_object(map))?;
                ensure!(
                    cone.is_iso(&expected),
                    "cone in the AR triangle ending at {}",
                    cat.obj_name(&t.c)
                );
            }
            triangles += 1;
        }
    }
    Ok(format!(
        "{checked} kernels and cokernels match brute force; cones agree on {triangles} AR triangles"
    ))
}

fn c9_determinism() -> Verdict {
    let run = |dir: &std::path::Path| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_twinheart"))
            .args([
                "verify-all",
                "--rank",
                "4",
                "--rigid",
                "P1,P2,S2",
                "--seed",
                "42",
                "--json",
                "--out-dir",
            ])
            .arg(dir)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            out.status.code() == Some(0),
            "verify-all exited with {:?}",
            out.status.code()
        );
        let written = std::fs::read(dir.join(twinheart::VERIFY_ALL_REPORT)).map_err(|e| e.to_string())?;
        ensure!(written == out.stdout, "stdout and the written report differ");
        Ok(written)
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = run(a.path())?;
    let second = run(b.path())?;
    ensure!(first == second, "reports differ");
    Ok(format!(
        "two verify-all runs give identical {}-byte reports",
        first.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("cluster categories C_A2, C_A3, C_A4", c1_cluster_categories),
        ("twin cotorsion pair of P1+P2+S2", c2_twin_pair),
        ("quasi-abelian heart", c3_quasi_abelian),
        ("semi-abelian and integral suites", c4_semi_abelian_and_integral),
        ("regular irreducible arrows", c5_regular_arrows),
        ("structure of Lambda_R", c6_lambda),
        ("equivalence, covers, factorisation through add Sigma R", c7_equivalence),
        ("kernel, cokernel and cone oracles", c8_oracles),
        ("verify-all determinism", c9_determinism),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let t = start.elapsed();
        match &verdict {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{t:.2?}]", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why} [{t:.2?}]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
