//! Irreducible morphisms decorated by exactness, and the epi/mono criteria for
//! maps in a heart read off from triangles.

use alloc::vec::Vec;

use crate::category::{IndecId, Mor, Obj, PresentedCategory, Subquotient};
use crate::cluster::TriangleRecord;
use crate::error::{Error, Result};
use crate::matrix::quotient_basis;
use crate::torsion::TwinPair;

use super::{is_epi, is_mono};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArrowClass {
    Regular,
    Mono,
    Epi,
    None,
}

impl ArrowClass {
    pub fn label(self) -> &'static str {
        match self {
            ArrowClass::Regular => "regular",
            ArrowClass::Mono => "mono",
            ArrowClass::Epi => "epi",
            ArrowClass::None => "none",
        }
    }
}

/// `multiplicity` irreducible arrows `from -> to`, classified through the
/// representative `rep ∈ rad \ rad²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedArrow {
    pub from: IndecId,
    pub to: IndecId,
    pub multiplicity: usize,
    pub rep: Mor,
    pub mono: bool,
    pub epi: bool,
}

impl DecoratedArrow {
    pub fn class(&self) -> ArrowClass {
        match (self.mono, self.epi) {
            (true, true) => ArrowClass::Regular,
            (true, false) => ArrowClass::Mono,
            (false, true) => ArrowClass::Epi,
            (false, false) => ArrowClass::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedQuiver {
    pub arrows: Vec<DecoratedArrow>,
}

impl DecoratedQuiver {
    pub fn regular_arrows(&self) -> impl Iterator<Item = &DecoratedArrow> {
        self.arrows.iter().filter(|a| a.class() == ArrowClass::Regular)
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().map(|a| a.multiplicity).sum()
    }
}

/// Arrows of the AR quiver with multiplicity `dim rad/rad²`, ordered by
/// `(from, to)`.
pub fn irreducible_morphisms(cat: &PresentedCategory) -> Result<DecoratedQuiver> {
    let rad = cat.radical()?;
    let rad2 = cat.compose_ideals(&rad, &rad);
    let mut arrows = Vec::new();
    for i in cat.all_indecs() {
        for j in cat.all_indecs() {
            let multiplicity = rad.dim(i, j) - rad2.dim(i, j);
            if multiplicity == 0 {
                continue;
            }
            // rad(i, j) = Hom(i, j) here, so a complement of rad² inside Hom works.
            let (_, lift) = quotient_basis(cat.field(), cat.homdim(i, j), rad2.space(i, j))?;
            let rep = cat.mor(Obj::indec(i), Obj::indec(j), lift.column(0))?;
            arrows.push(DecoratedArrow {
                from: i,
                to: j,
                multiplicity,
                mono: is_mono(cat, &rep),
                epi: is_epi(cat, &rep),
                rep,
            });
        }
    }
    Ok(DecoratedQuiver { arrows })
}

/// For a triangle `A -f-> B -g-> C -eps-> Sigma A` with `A, B ∈ H`: whether
/// `f` is epic in the heart against whether `g ∈ [U]`, and whether `f` is monic
/// against whether `h = -Sigma^-1 eps ∈ [T]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiFactorReport {
    /// `false` when the triangle has no maps or `A`, `B` leave `H`.
    pub applicable: bool,
    pub epic: bool,
    pub g_in_u: bool,
    pub monic: bool,
    pub h_in_t: bool,
}

impl EpiFactorReport {
    pub fn holds(&self) -> bool {
        !self.applicable || (self.epic == self.g_in_u && self.monic == self.h_in_t)
    }
}

/// `cat` must carry `SigmaInv` functor data and be the parent of `heart`,
/// a subquotient of `H` by `[W]`.
pub fn epi_iff_factors_check(
    cat: &PresentedCategory,
    twin: &TwinPair,
    heart: &Subquotient,
    triangle: &TriangleRecord,
) -> Result<EpiFactorReport> {
    let (Some(f), Some(g)) = (&triangle.f, &triangle.g) else {
        return Ok(EpiFactorReport {
            applicable: false,
            epic: false,
            g_in_u: false,
            monic: false,
            h_in_t: false,
        });
    };
    if !(twin.h.contains_obj(&triangle.a) && twin.h.contains_obj(&triangle.b)) {
        return Ok(EpiFactorReport {
            applicable: false,
            epic: false,
            g_in_u: false,
            monic: false,
            h_in_t: false,
        });
    }
    if heart.parent().n() != cat.n() {
        return Err(Error::Input("the heart is not a subquotient of this category".into()));
    }
    let fbar = heart.project(f)?;
    let h = cat.neg(&cat.apply_functor("SigmaInv", &triangle.eps)?);
    if h.cod() != &triangle.a {
        return Err(Error::Input("Sigma^-1 eps does not land in the first vertex".into()));
    }
    Ok(EpiFactorReport {
        applicable: true,
        epic: is_epi(heart.category(), &fbar),
        g_in_u: cat.ideal_generated_by(&twin.u).contains(cat, g),
        monic: is_mono(heart.category(), &fbar),
        h_in_t: cat.ideal_generated_by(&twin.t).contains(cat, &h),
    })
}
