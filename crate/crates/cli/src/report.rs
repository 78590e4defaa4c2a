//! JSON shapes shared by the command reports. Objects always appear by name.

use serde_json::{json, Value};
use twinheart_core::category::{Mor, Obj, PresentedCategory, SubcatSpec, ValidationFailure, ValidationReport};
use twinheart_core::preab::{DecoratedQuiver, SuiteReport};
use twinheart_core::torsion::{CotorsionPairCert, TwinPair};

use crate::bundle::scalars;

pub const SCHEMA_VERSION: u32 = 1;

pub fn obj(cat: &PresentedCategory, x: &Obj) -> Value {
    json!(x.summands().iter().map(|&s| cat.name(s)).collect::<Vec<_>>())
}

pub fn spec(cat: &PresentedCategory, s: &SubcatSpec) -> Value {
    json!(s.iter().map(|i| cat.name(i)).collect::<Vec<_>>())
}

/// A morphism as its nonempty coordinate blocks `[p, q, coords]`.
pub fn mor(cat: &PresentedCategory, f: &Mor) -> Value {
    let mut blocks = Vec::new();
    for p in 0..f.dom().len() {
        for q in 0..f.cod().len() {
            let b = cat.block(f, p, q);
            if !b.is_empty() {
                blocks.push(json!([p, q, scalars(b)]));
            }
        }
    }
    json!({ "dom": obj(cat, f.dom()), "cod": obj(cat, f.cod()), "blocks": blocks })
}

pub fn validation(cat: &PresentedCategory, report: &ValidationReport) -> Value {
    let failure = report.failure.as_ref().map(|f| match f {
        ValidationFailure::Identity { i, j, a } => json!({
            "law": "identity", "from": cat.name(*i), "to": cat.name(*j), "basis": a,
        }),
        ValidationFailure::Associativity { i, j, k, l, a, b, c } => json!({
            "law": "associativity",
            "chain": [cat.name(*i), cat.name(*j), cat.name(*k), cat.name(*l)],
            "basis": [a, b, c],
        }),
        ValidationFailure::FunctorNotBijective { name } => json!({ "law": "functor bijective", "functor": name }),
        ValidationFailure::FunctorIdentity { name, i } => json!({
            "law": "functor identity", "functor": name, "object": cat.name(*i),
        }),
        ValidationFailure::FunctorComposition { name, i, j, k, a, b } => json!({
            "law": "functor composition",
            "functor": name,
            "chain": [cat.name(*i), cat.name(*j), cat.name(*k)],
            "basis": [a, b],
        }),
        ValidationFailure::FunctorInverse { name } => json!({ "law": "functor inverse", "functor": name }),
    });
    json!({ "passed": report.passed(), "triples_checked": report.triples_checked, "failure": failure })
}

pub fn cotorsion(cat: &PresentedCategory, c: &CotorsionPairCert) -> Value {
    json!({
        "certified": c.certified(),
        "u": spec(cat, &c.u),
        "v": spec(cat, &c.v),
        "ext_vanishing": c.ext_vanishing,
        "u_is_left_perp": c.u_is_left_perp,
        "v_is_right_perp": c.v_is_right_perp,
        "star_decomposition": c.star_decomposition,
        "star_failures": c.star_failures.iter().map(|&i| cat.name(i)).collect::<Vec<_>>(),
    })
}

pub fn twin(cat: &PresentedCategory, t: &TwinPair) -> Value {
    json!({
        "valid": t.is_valid(),
        "first": cotorsion(cat, &t.first),
        "second": cotorsion(cat, &t.second),
        "s_in_u": t.s_in_u,
        "v_in_t": t.v_in_t,
        "ext_sv_vanishes": t.ext_sv_vanishes,
        "S": spec(cat, &t.s),
        "T": spec(cat, &t.t),
        "U": spec(cat, &t.u),
        "V": spec(cat, &t.v),
        "W": spec(cat, &t.w),
        "C_minus": spec(cat, &t.cminus),
        "C_plus": spec(cat, &t.cplus),
        "H": spec(cat, &t.h),
    })
}

pub fn homdims(cat: &PresentedCategory) -> Value {
    json!(cat.homdim_matrix().d)
}

pub fn quiver(cat: &PresentedCategory, q: &DecoratedQuiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows
        .iter()
        .map(|a| {
            json!({
                "from": cat.name(a.from),
                "to": cat.name(a.to),
                "multiplicity": a.multiplicity,
                "class": a.class().label(),
            })
        })
        .collect();
    let regular: Vec<Value> = q
        .regular_arrows()
        .map(|a| json!([cat.name(a.from), cat.name(a.to)]))
        .collect();
    json!({ "arrow_count": q.arrow_count(), "arrows": arrows, "regular": regular })
}

pub fn suite(cat: &PresentedCategory, r: &SuiteReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|(p, n)| json!({ "property": p, "instances": n }))
        .collect();
    let counterexample = r.failure.as_ref().map(|c| {
        json!({
            "property": c.property,
            "sample": c.sample,
            "morphisms": c.morphisms.iter().map(|f| mor(cat, f)).collect::<Vec<_>>(),
        })
    });
    json!({
        "suite": r.suite.name(),
        "exhaustive": r.exhaustive,
        "passed": r.passed(),
        "checks": checks,
        "counterexample": counterexample,
    })
}
