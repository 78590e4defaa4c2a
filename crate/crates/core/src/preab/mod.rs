//! Exactness in additive categories presented by structure constants: monos,
//! epis, kernels and cokernels by representability, pullbacks, pushouts and
//! the coimage/image factorization.
//!
//! All decisions reduce to linear algebra on `Hom(z, -)` and `Hom(-, z)` for
//! indecomposable `z`, which is enough because every object is a finite direct
//! sum of indecomposables. Operations that extract generators assume
//! `End(z) = k` for every indecomposable.

mod quiver;
mod suites;

pub use quiver::{
    epi_iff_factors_check, irreducible_morphisms, ArrowClass, DecoratedArrow, DecoratedQuiver, EpiFactorReport,
};
pub use suites::{
    check_integral, check_quasi_abelian, check_semi_abelian, default_coeff_pool, Counterexample, SampleConfig, Suite,
    SuiteReport,
};

use alloc::format;
use alloc::vec::Vec;

use crate::category::{IndecId, Mor, Obj, PresentedCategory};
use crate::error::{Error, Result};
use crate::matrix::{quotient_basis, Mat};
use crate::scalar::Scalar;

/// `Hom(z, f)` injective for every indecomposable `z`.
pub fn is_mono(cat: &PresentedCategory, f: &Mor) -> bool {
    cat.all_indecs().all(|z| {
        let m = cat.post_matrix(f, &Obj::indec(z));
        m.rank() == m.cols()
    })
}

/// `Hom(f, z)` injective for every indecomposable `z`.
pub fn is_epi(cat: &PresentedCategory, f: &Mor) -> bool {
    cat.all_indecs().all(|z| {
        let m = cat.pre_matrix(f, &Obj::indec(z));
        m.rank() == m.cols()
    })
}

/// Monic and epic.
pub fn is_regular(cat: &PresentedCategory, f: &Mor) -> bool {
    is_mono(cat, f) && is_epi(cat, f)
}

/// Some `t` with `g ∘ t = h`, where `g: A -> B` and `h: Z -> B`.
pub fn factor_through(cat: &PresentedCategory, g: &Mor, h: &Mor) -> Result<Option<Mor>> {
    if g.cod() != h.cod() {
        return Err(Error::Input("factor_through: codomains differ".into()));
    }
    let m = cat.post_matrix(g, h.dom());
    let Some(sol) = m.solve(&Mat::column_vector(cat.field(), h.coords())?)? else {
        return Ok(None);
    };
    Ok(Some(cat.mor(h.dom().clone(), g.dom().clone(), sol.column(0))?))
}

/// Some `t` with `t ∘ g = h`, where `g: A -> B` and `h: A -> Z`.
pub fn extend_along(cat: &PresentedCategory, g: &Mor, h: &Mor) -> Result<Option<Mor>> {
    if g.dom() != h.dom() {
        return Err(Error::Input("extend_along: domains differ".into()));
    }
    let m = cat.pre_matrix(g, h.cod());
    let Some(sol) = m.solve(&Mat::column_vector(cat.field(), h.coords())?)? else {
        return Ok(None);
    };
    Ok(Some(cat.mor(g.cod().clone(), h.cod().clone(), sol.column(0))?))
}

/// An element of the vanishing subfunctor together with its factorization
/// through the (co)kernel map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub z: IndecId,
    /// Coordinates in `Hom(z, X)` (kernel) or `Hom(Y, z)` (cokernel).
    pub element: Vec<Scalar>,
    /// Coordinates in `Hom(z, K)` (kernel) or `Hom(C, z)` (cokernel).
    pub factor: Vec<Scalar>,
}

/// A kernel `k: K -> X` of `f: X -> Y`: `f ∘ k = 0`, `k` monic, and every basis
/// element of `{g: z -> X : f ∘ g = 0}` factors through `k` as recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCert {
    pub k: Mor,
    pub witnesses: Vec<Witness>,
}

/// A cokernel `c: Y -> C` of `f: X -> Y`, certified dually.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelCert {
    pub c: Mor,
    pub witnesses: Vec<Witness>,
}

/// Complement in `space` (columns) of `sub`, returned as columns of the ambient space.
fn complement_in(field: crate::scalar::Field, space: &Mat, sub: &Mat) -> Result<Mat> {
    if space.cols() == 0 {
        return Ok(space.clone());
    }
    let coords = space
        .solve(sub)?
        .ok_or_else(|| Error::Internal("radical part escapes the vanishing subspace".into()))?;
    let (_, lift) = quotient_basis(field, space.cols(), &coords)?;
    space.mul(&lift)
}

/// Generators of a subfunctor `V` of `Hom(-, X)` (or of `Hom(Y, -)` when `left`):
/// for each `z`, a basis of `V_z` modulo the images of `V_{z'}` under radical maps.
fn subfunctor_tops(cat: &PresentedCategory, spaces: &[Mat], x: &Obj, left: bool) -> Result<Vec<Mat>> {
    let field = cat.field();
    let mut tops = Vec::with_capacity(cat.n());
    for z in cat.all_indecs() {
        let zo = Obj::indec(z);
        let mut cols = Vec::new();
        for w in cat.all_indecs().filter(|&w| w != z && spaces[w].cols() > 0) {
            let wo = Obj::indec(w);
            if left {
                // r ∘ v for v: X -> w, r: w -> z
                for r in cat.basis(&wo, &zo) {
                    let m = cat.post_matrix(&r, x);
                    cols.extend(m.mul(&spaces[w])?.columns());
                }
            } else {
                // v ∘ r for r: z -> w, v: w -> X
                for r in cat.basis(&zo, &wo) {
                    let m = cat.pre_matrix(&r, x);
                    cols.extend(m.mul(&spaces[w])?.columns());
                }
            }
        }
        let sub = Mat::from_columns(field, spaces[z].rows(), &cols)?;
        tops.push(complement_in(field, &spaces[z], &sub)?);
    }
    Ok(tops)
}

/// The kernel of `f: X -> Y`, computed as the representing object of
/// `z |-> {g: z -> X : f ∘ g = 0}`.
pub fn kernel(cat: &PresentedCategory, f: &Mor) -> Result<(Obj, KernelCert)> {
    cat.check_local_endomorphisms()?;
    let x = f.dom();
    let spaces: Vec<Mat> = cat
        .all_indecs()
        .map(|z| cat.post_matrix(f, &Obj::indec(z)).nullspace())
        .collect();
    let tops = subfunctor_tops(cat, &spaces, x, false)?;
    let mut parts = Vec::new();
    for z in cat.all_indecs() {
        for g in tops[z].columns() {
            parts.push(cat.mor(Obj::indec(z), x.clone(), g)?);
        }
    }
    let refs: Vec<&Mor> = parts.iter().collect();
    let k = cat.hstack(x, &refs)?;
    let fail = |why: &str| {
        Error::KernelNotFound(format!(
            "kernel of {} -> {}: {why}",
            cat.obj_name(x),
            cat.obj_name(f.cod())
        ))
    };
    if !cat.compose(f, &k)?.is_zero() {
        return Err(fail("f ∘ k ≠ 0"));
    }
    if !is_mono(cat, &k) {
        return Err(fail("k is not monic"));
    }
    let mut witnesses = Vec::new();
    for z in cat.all_indecs() {
        let m = cat.post_matrix(&k, &Obj::indec(z));
        let Some(sol) = m.solve(&spaces[z])? else {
            return Err(fail("a vanishing map does not factor through k"));
        };
        for (element, factor) in spaces[z].columns().into_iter().zip(sol.columns()) {
            witnesses.push(Witness { z, element, factor });
        }
    }
    Ok((k.dom().clone(), KernelCert { k, witnesses }))
}

/// The cokernel of `f: X -> Y`, dual to [`kernel`].
pub fn cokernel(cat: &PresentedCategory, f: &Mor) -> Result<(Obj, CokernelCert)> {
    cat.check_local_endomorphisms()?;
    let y = f.cod();
    let spaces: Vec<Mat> = cat
        .all_indecs()
        .map(|z| cat.pre_matrix(f, &Obj::indec(z)).nullspace())
        .collect();
    let tops = subfunctor_tops(cat, &spaces, y, true)?;
    let mut parts = Vec::new();
    for z in cat.all_indecs() {
        for g in tops[z].columns() {
            parts.push(cat.mor(y.clone(), Obj::indec(z), g)?);
        }
    }
    let refs: Vec<&Mor> = parts.iter().collect();
    let c = cat.vstack(y, &refs)?;
    let fail = |why: &str| {
        Error::KernelNotFound(format!(
            "cokernel of {} -> {}: {why}",
            cat.obj_name(f.dom()),
            cat.obj_name(y)
        ))
    };
    if !cat.compose(&c, f)?.is_zero() {
        return Err(fail("c ∘ f ≠ 0"));
    }
    if !is_epi(cat, &c) {
        return Err(fail("c is not epic"));
    }
    let mut witnesses = Vec::new();
    for z in cat.all_indecs() {
        let m = cat.pre_matrix(&c, &Obj::indec(z));
        let Some(sol) = m.solve(&spaces[z])? else {
            return Err(fail("a vanishing map does not factor through c"));
        };
        for (element, factor) in spaces[z].columns().into_iter().zip(sol.columns()) {
            witnesses.push(Witness { z, element, factor });
        }
    }
    Ok((c.cod().clone(), CokernelCert { c, witnesses }))
}

/// A pullback square `P -> B`, `P -> C` over `c: B -> D`, `d: C -> D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub p: Obj,
    pub to_b: Mor,
    pub to_c: Mor,
}

/// A pushout square `B -> Q`, `C -> Q` under `b: A -> B`, `c: A -> C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub q: Obj,
    pub from_b: Mor,
    pub from_c: Mor,
}

/// `P = ker((c, -d): B ⊕ C -> D)`.
pub fn pullback(cat: &PresentedCategory, c: &Mor, d: &Mor) -> Result<Pullback> {
    if c.cod() != d.cod() {
        return Err(Error::Input("pullback of maps with different codomains".into()));
    }
    let diff = cat.hstack(c.cod(), &[c, &cat.neg(d)])?;
    let (p, cert) = kernel(cat, &diff)?;
    let parts = [c.dom(), d.dom()];
    let to_b = cat.compose(&cat.projection(&parts, 0), &cert.k)?;
    let to_c = cat.compose(&cat.projection(&parts, 1), &cert.k)?;
    Ok(Pullback { p, to_b, to_c })
}

/// `Q = coker((b; -c): A -> B ⊕ C)`.
pub fn pushout(cat: &PresentedCategory, b: &Mor, c: &Mor) -> Result<Pushout> {
    if b.dom() != c.dom() {
        return Err(Error::Input("pushout of maps with different domains".into()));
    }
    let diff = cat.vstack(b.dom(), &[b, &cat.neg(c)])?;
    let (q, cert) = cokernel(cat, &diff)?;
    let parts = [b.cod(), c.cod()];
    let from_b = cat.compose(&cert.c, &cat.injection(&parts, 0))?;
    let from_c = cat.compose(&cert.c, &cat.injection(&parts, 1))?;
    Ok(Pushout { q, from_b, from_c })
}

/// `f = im ∘ tilde ∘ coim` with `coim = coker(ker f)` and `im = ker(coker f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelData {
    pub coim: Mor,
    pub tilde: Mor,
    pub im: Mor,
}

pub fn coim_im_parallel(cat: &PresentedCategory, f: &Mor) -> Result<ParallelData> {
    let (_, ker) = kernel(cat, f)?;
    let (_, coim) = cokernel(cat, &ker.k)?;
    let (_, coker) = cokernel(cat, f)?;
    let (_, im) = kernel(cat, &coker.c)?;
    let through_coim = extend_along(cat, &coim.c, f)?
        .ok_or_else(|| Error::Internal("f does not factor through its coimage".into()))?;
    let tilde = factor_through(cat, &im.k, &through_coim)?
        .ok_or_else(|| Error::Internal("f does not factor through its image".into()))?;
    Ok(ParallelData {
        coim: coim.c,
        tilde,
        im: im.k,
    })
}

/// Whether the parallel of `f` is invertible.
pub fn is_strict(cat: &PresentedCategory, f: &Mor) -> Result<bool> {
    let par = coim_im_parallel(cat, f)?;
    cat.is_iso(&par.tilde)
}

/// Cokernels in a preabelian category are exactly the strict epimorphisms.
pub fn is_cokernel(cat: &PresentedCategory, f: &Mor) -> Result<bool> {
    Ok(is_epi(cat, f) && is_strict(cat, f)?)
}

/// Kernels in a preabelian category are exactly the strict monomorphisms.
pub fn is_kernel(cat: &PresentedCategory, f: &Mor) -> Result<bool> {
    Ok(is_mono(cat, f) && is_strict(cat, f)?)
}
