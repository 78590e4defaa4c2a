//! Perpendicular subcategories, approximations, and (twin) cotorsion pairs.
//!
//! Extension groups are computed as `Ext^1(x, y) = Hom(x, Sigma y)`, so every
//! operation here that mentions Ext needs `Sigma` functor data.

use alloc::format;
use alloc::vec::Vec;

use crate::category::{IndecId, Mor, Obj, PresentedCategory, SubcatSpec, Subquotient};
use crate::cluster::cone_object;
use crate::error::{Error, Result};
use crate::matrix::{quotient_basis, Mat};

fn functor_perm<'a>(cat: &'a PresentedCategory, name: &str) -> Result<&'a [IndecId]> {
    cat.functor(name)
        .map(|f| f.perm.as_slice())
        .ok_or_else(|| Error::Unsupported(format!("{name} functor data is required")))
}

/// `Sigma A`.
pub fn shift(cat: &PresentedCategory, a: &SubcatSpec) -> Result<SubcatSpec> {
    Ok(a.map(functor_perm(cat, "Sigma")?))
}

/// `Sigma^-1 A`.
pub fn unshift(cat: &PresentedCategory, a: &SubcatSpec) -> Result<SubcatSpec> {
    Ok(a.map(functor_perm(cat, "SigmaInv")?))
}

/// `A^{⊥0} = {x : Hom(A, x) = 0}`.
pub fn perp0(cat: &PresentedCategory, a: &SubcatSpec) -> SubcatSpec {
    cat.all_indecs()
        .filter(|&x| a.iter().all(|m| cat.homdim(m, x) == 0))
        .collect()
}

/// `^{⊥0}A = {x : Hom(x, A) = 0}`.
pub fn left_perp0(cat: &PresentedCategory, a: &SubcatSpec) -> SubcatSpec {
    cat.all_indecs()
        .filter(|&x| a.iter().all(|m| cat.homdim(x, m) == 0))
        .collect()
}

/// `A^{⊥1} = {x : Ext^1(A, x) = 0}`.
pub fn perp1(cat: &PresentedCategory, a: &SubcatSpec) -> Result<SubcatSpec> {
    let s = functor_perm(cat, "Sigma")?;
    Ok(cat
        .all_indecs()
        .filter(|&x| a.iter().all(|m| cat.homdim(m, s[x]) == 0))
        .collect())
}

/// `^{⊥1}A = {x : Ext^1(x, A) = 0}`.
pub fn left_perp1(cat: &PresentedCategory, a: &SubcatSpec) -> Result<SubcatSpec> {
    let s = functor_perm(cat, "Sigma")?;
    Ok(cat
        .all_indecs()
        .filter(|&x| a.iter().all(|m| cat.homdim(x, s[m]) == 0))
        .collect())
}

/// Whether `Ext^1(A, B) = 0`.
pub fn ext_vanishes(cat: &PresentedCategory, a: &SubcatSpec, b: &SubcatSpec) -> Result<bool> {
    let s = functor_perm(cat, "Sigma")?;
    Ok(a.iter().all(|x| b.iter().all(|y| cat.homdim(x, s[y]) == 0)))
}

pub fn is_rigid(cat: &PresentedCategory, r: &Obj) -> Result<bool> {
    let sr = cat.apply_functor_obj("Sigma", r)?;
    Ok(cat.hom_dim(r, &sr) == 0)
}

/// Columns spanning a complement, in `Hom(z, a)` (or `Hom(a, z)` when `left`),
/// of the morphisms factoring through a radical map between members of `xspec`.
fn top_generators(cat: &PresentedCategory, xspec: &SubcatSpec, z: IndecId, a: &Obj, left: bool) -> Result<Mat> {
    let zo = Obj::indec(z);
    let ambient = if left { cat.hom_dim(a, &zo) } else { cat.hom_dim(&zo, a) };
    let mut cols = Vec::new();
    // rad(w, w') is all of Hom(w, w') for w ≠ w' and zero otherwise (End = k).
    for w in xspec.iter().filter(|&w| w != z) {
        let wo = Obj::indec(w);
        if left {
            for r in cat.basis(&wo, &zo) {
                cols.extend(cat.post_matrix(&r, a).columns());
            }
        } else {
            for r in cat.basis(&zo, &wo) {
                cols.extend(cat.pre_matrix(&r, a).columns());
            }
        }
    }
    let sub = Mat::from_columns(cat.field(), ambient, &cols)?;
    Ok(quotient_basis(cat.field(), ambient, &sub)?.1)
}

/// The minimal right `add xspec`-approximation `X_0 -> a`.
///
/// `X_0 = ⊕ z^{m_z}` where `m_z` counts generators of `Hom(z, a)` modulo maps
/// factoring through radical morphisms inside `xspec`; summands are ordered by id.
pub fn minimal_right_approx(cat: &PresentedCategory, xspec: &SubcatSpec, a: &Obj) -> Result<Mor> {
    cat.check_local_endomorphisms()?;
    let mut dom = Vec::new();
    let mut coords = Vec::new();
    for z in xspec.iter() {
        let gens = top_generators(cat, xspec, z, a, false)?;
        for c in 0..gens.cols() {
            dom.push(z);
            coords.extend(gens.column(c));
        }
    }
    let approx = cat.mor(Obj::from_summands(dom), a.clone(), coords)?;
    for x in xspec.iter() {
        let m = cat.post_matrix(&approx, &Obj::indec(x));
        if m.rank() != m.rows() {
            return Err(Error::Internal(format!(
                "right approximation of {} misses maps from {}",
                cat.obj_name(a),
                cat.name(x)
            )));
        }
    }
    Ok(approx)
}

/// The minimal left `add xspec`-approximation `a -> X_0`.
pub fn minimal_left_approx(cat: &PresentedCategory, xspec: &SubcatSpec, a: &Obj) -> Result<Mor> {
    cat.check_local_endomorphisms()?;
    let mut cod = Vec::new();
    let mut gens_per = Vec::new();
    for z in xspec.iter() {
        let gens = top_generators(cat, xspec, z, a, true)?;
        for c in 0..gens.cols() {
            cod.push(z);
            gens_per.push(gens.column(c));
        }
    }
    let cod = Obj::from_summands(cod);
    // Generator t is a map a -> cod[t]; interleave into the block layout.
    let per_summand: Vec<Mor> = gens_per
        .into_iter()
        .zip(cod.summands())
        .map(|(g, &z)| cat.mor(a.clone(), Obj::indec(z), g))
        .collect::<Result<_>>()?;
    let refs: Vec<&Mor> = per_summand.iter().collect();
    let approx = cat.vstack(a, &refs)?;
    for x in xspec.iter() {
        let m = cat.pre_matrix(&approx, &Obj::indec(x));
        if m.rank() != m.rows() {
            return Err(Error::Internal(format!(
                "left approximation of {} misses maps to {}",
                cat.obj_name(a),
                cat.name(x)
            )));
        }
    }
    Ok(approx)
}

/// Whether `x ∈ U * V`, i.e. `x` sits in a triangle `u -> x -> v -> Sigma u`.
///
/// Requires `Hom(U, V) = 0`, under which the first map of any such triangle is
/// a right U-approximation; `x ∈ U * V` exactly when the cone of the minimal
/// one lies in `add V`.
pub fn star_membership(cat: &PresentedCategory, u: &SubcatSpec, v: &SubcatSpec, x: &Obj) -> Result<bool> {
    if let Some((a, b)) = u
        .iter()
        .flat_map(|a| v.iter().map(move |b| (a, b)))
        .find(|&(a, b)| cat.homdim(a, b) != 0)
    {
        return Err(Error::CriterionInapplicable(format!(
            "Hom({}, {}) ≠ 0, so approximation cones do not decide membership",
            cat.name(a),
            cat.name(b)
        )));
    }
    let approx = minimal_right_approx(cat, u, x)?;
    let cone = cone_object(cat, &approx)?;
    Ok(v.contains_obj(&cone))
}

/// Indecomposables `x` with `x ∈ U * V`.
pub fn star_product(cat: &PresentedCategory, u: &SubcatSpec, v: &SubcatSpec) -> Result<SubcatSpec> {
    let mut out = Vec::new();
    for x in cat.all_indecs() {
        if star_membership(cat, u, v, &Obj::indec(x))? {
            out.push(x);
        }
    }
    Ok(out.into_iter().collect())
}

/// The checks behind a cotorsion pair `(U, V)`: `Ext^1(U, V) = 0` and `C = U * Sigma V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotorsionPairCert {
    pub u: SubcatSpec,
    pub v: SubcatSpec,
    pub ext_vanishing: bool,
    /// `U = ^{⊥1}V`.
    pub u_is_left_perp: bool,
    /// `V = U^{⊥1}`.
    pub v_is_right_perp: bool,
    /// `x ∈ U * Sigma V` for every indecomposable; `None` when the star
    /// criterion could not run because `Ext^1(U, V) ≠ 0`.
    pub star_decomposition: Option<bool>,
    /// Indecomposables outside `U * Sigma V`.
    pub star_failures: Vec<IndecId>,
}

impl CotorsionPairCert {
    pub fn certified(&self) -> bool {
        self.ext_vanishing && self.u_is_left_perp && self.v_is_right_perp && self.star_decomposition == Some(true)
    }
}

pub fn is_cotorsion_pair(cat: &PresentedCategory, u: &SubcatSpec, v: &SubcatSpec) -> Result<CotorsionPairCert> {
    let ext_vanishing = ext_vanishes(cat, u, v)?;
    let u_is_left_perp = &left_perp1(cat, v)? == u;
    let v_is_right_perp = &perp1(cat, u)? == v;
    let sv = shift(cat, v)?;
    let mut star_failures = Vec::new();
    let mut star_decomposition = Some(true);
    for x in cat.all_indecs() {
        match star_membership(cat, u, &sv, &Obj::indec(x)) {
            Ok(true) => {}
            Ok(false) => star_failures.push(x),
            Err(Error::CriterionInapplicable(_)) => {
                star_decomposition = None;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if star_decomposition.is_some() && !star_failures.is_empty() {
        star_decomposition = Some(false);
    }
    Ok(CotorsionPairCert {
        u: u.clone(),
        v: v.clone(),
        ext_vanishing,
        u_is_left_perp,
        v_is_right_perp,
        star_decomposition,
        star_failures,
    })
}

/// A pair of cotorsion pairs `((S, T), (U, V))` with its derived subcategories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPair {
    pub s: SubcatSpec,
    pub t: SubcatSpec,
    pub u: SubcatSpec,
    pub v: SubcatSpec,
    /// `T ∩ U`.
    pub w: SubcatSpec,
    /// `Sigma^-1 S * W`.
    pub cminus: SubcatSpec,
    /// `W * Sigma V`.
    pub cplus: SubcatSpec,
    /// `C^- ∩ C^+`.
    pub h: SubcatSpec,
    pub first: CotorsionPairCert,
    pub second: CotorsionPairCert,
    /// `Ext^1(S, V) = 0`.
    pub ext_sv_vanishes: bool,
    pub s_in_u: bool,
    pub v_in_t: bool,
}

impl TwinPair {
    pub fn is_valid(&self) -> bool {
        self.first.certified() && self.second.certified() && self.ext_sv_vanishes && self.s_in_u
    }
}

/// Certifies both pairs, checks the twin condition and derives `W`, `C^-`, `C^+`, `H`.
pub fn is_twin(
    cat: &PresentedCategory,
    s: &SubcatSpec,
    t: &SubcatSpec,
    u: &SubcatSpec,
    v: &SubcatSpec,
) -> Result<TwinPair> {
    let first = is_cotorsion_pair(cat, s, t)?;
    let second = is_cotorsion_pair(cat, u, v)?;
    let ext_sv_vanishes = ext_vanishes(cat, s, v)?;
    let w = t.intersection(u);
    let (cminus, cplus) = if ext_sv_vanishes && first.certified() && second.certified() {
        let sinv_s = unshift(cat, s)?;
        let sv = shift(cat, v)?;
        (star_product(cat, &sinv_s, &w)?, star_product(cat, &w, &sv)?)
    } else {
        (SubcatSpec::empty(), SubcatSpec::empty())
    };
    let h = cminus.intersection(&cplus);
    Ok(TwinPair {
        s: s.clone(),
        t: t.clone(),
        u: u.clone(),
        v: v.clone(),
        w,
        cminus,
        cplus,
        h,
        first,
        second,
        ext_sv_vanishes,
        s_in_u: s.is_subset(u),
        v_in_t: v.is_subset(t),
    })
}

/// The twin pair `((add Sigma R, X_R), (X_R, X_R^{⊥1}))` of a rigid object and its heart.
#[derive(Clone, Debug)]
pub struct CanonicalTwin {
    pub r: Obj,
    /// `X_R = Ker Hom(R, -)`.
    pub x_r: SubcatSpec,
    pub twin: TwinPair,
    /// `C / [X_R]`.
    pub heart: Subquotient,
}

pub fn canonical_twin_from_rigid(cat: &PresentedCategory, r: &Obj) -> Result<CanonicalTwin> {
    if !is_rigid(cat, r)? {
        return Err(Error::Input(format!("{} is not rigid", cat.obj_name(r))));
    }
    let add_r = SubcatSpec::add_of(r);
    let x_r = perp0(cat, &add_r);
    let s = shift(cat, &add_r)?;
    let v = perp1(cat, &x_r)?;
    let twin = is_twin(cat, &s, &x_r, &x_r, &v)?;
    let heart = cat.quotient_category(&cat.ideal_generated_by(&twin.w))?;
    Ok(CanonicalTwin {
        r: r.clone(),
        x_r,
        twin,
        heart,
    })
}

/// The 2-Calabi-Yau consequences for a twin pair: `T = U` iff `S = V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCyReport {
    pub t_equals_u: bool,
    pub s_equals_v: bool,
}

impl TwoCyReport {
    pub fn equivalence_holds(&self) -> bool {
        self.t_equals_u == self.s_equals_v
    }
}

/// Requires `Hom(X, Y) ≅ D Hom(Y, Sigma^2 X)` at the level of dimensions.
pub fn two_cy_checks(cat: &PresentedCategory, twin: &TwinPair) -> Result<TwoCyReport> {
    let s = functor_perm(cat, "Sigma")?;
    for x in cat.all_indecs() {
        for y in cat.all_indecs() {
            if cat.homdim(x, y) != cat.homdim(y, s[s[x]]) {
                return Err(Error::CriterionInapplicable(format!(
                    "Sigma^2 is not a Serre functor at ({}, {})",
                    cat.name(x),
                    cat.name(y)
                )));
            }
        }
    }
    Ok(TwoCyReport {
        t_equals_u: twin.t == twin.u,
        s_equals_v: twin.s == twin.v,
    })
}
