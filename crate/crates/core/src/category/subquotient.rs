use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{quotient_basis, Mat};

use super::ideal::{Ideal, SubcatSpec};
use super::object::{IndecId, Mor, Obj};
use super::presented::{PresentedCategory, StructureConstant};

/// A quotient `B / I` of a full subcategory `B` of a parent category, with the
/// maps needed to move morphisms between the two.
#[derive(Clone, Debug)]
pub struct Subquotient {
    parent: PresentedCategory,
    quotient: PresentedCategory,
    /// Parent id of each quotient indecomposable.
    kept: Vec<IndecId>,
    project: Vec<Mat>,
    lift: Vec<Mat>,
}

impl PresentedCategory {
    /// `self / ideal`, dropping indecomposables whose identity lies in the ideal.
    pub fn quotient_category(&self, ideal: &Ideal) -> Result<Subquotient> {
        self.subquotient(&SubcatSpec::all(self.n()), ideal)
    }

    /// The full subcategory on `on`, modulo the restriction of `ideal`.
    pub fn subquotient(&self, on: &SubcatSpec, ideal: &Ideal) -> Result<Subquotient> {
        self.check_ideal_shape(ideal)?;
        if !ideal.is_two_sided(self) {
            return Err(Error::Input(
                "quotient by a subspace family that is not a two-sided ideal".into(),
            ));
        }
        let killed = ideal.killed_objects(self);
        let kept: Vec<IndecId> = on.iter().filter(|&i| !killed.contains(i)).collect();
        let m = kept.len();
        let field = self.field();
        let mut project = Vec::with_capacity(m * m);
        let mut lift = Vec::with_capacity(m * m);
        let mut homdim = Vec::with_capacity(m * m);
        for &i in &kept {
            for &j in &kept {
                let (p, l) = quotient_basis(field, self.homdim(i, j), ideal.space(i, j))?;
                homdim.push(p.rows());
                project.push(p);
                lift.push(l);
            }
        }
        let identity = (0..m)
            .map(|a| {
                let i = kept[a];
                project[a * m + a].apply(self.identity_coords(i)).expect("shapes agree")
            })
            .collect();
        let names = kept.iter().map(|&i| self.name(i).into()).collect();
        let mut quotient = PresentedCategory::new(field, names, homdim, identity)?;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let (i, j, k) = (kept[a], kept[b], kept[c]);
                    let (lf, lg, pk) = (&lift[a * m + b], &lift[b * m + c], &project[a * m + c]);
                    for x in 0..lf.cols() {
                        let f = lf.column(x);
                        for y in 0..lg.cols() {
                            let g = lg.column(y);
                            let h = pk.apply(&self.compose_indec(i, j, k, &f, &g))?;
                            for (z, v) in h.into_iter().enumerate() {
                                if !v.is_zero() {
                                    quotient.set_constant(StructureConstant {
                                        i: a,
                                        j: b,
                                        k: c,
                                        a: x,
                                        b: y,
                                        c: z,
                                        value: v,
                                    })?;
                                }
                            }
                        }
                    }
                }
            }
        }
        let report = quotient.validate();
        if let Some(f) = report.failure {
            return Err(Error::Internal(format!("induced composition fails validation: {f:?}")));
        }
        Ok(Subquotient {
            parent: self.clone(),
            quotient,
            kept,
            project,
            lift,
        })
    }
}

impl Subquotient {
    pub fn parent(&self) -> &PresentedCategory {
        &self.parent
    }

    pub fn category(&self) -> &PresentedCategory {
        &self.quotient
    }

    /// Parent ids of the surviving indecomposables, in quotient order.
    pub fn kept(&self) -> &[IndecId] {
        &self.kept
    }

    pub fn parent_id(&self, q: IndecId) -> IndecId {
        self.kept[q]
    }

    pub fn quotient_id(&self, p: IndecId) -> Option<IndecId> {
        self.kept.iter().position(|&k| k == p)
    }

    /// Image of a parent object: summands outside the quotient become zero.
    pub fn project_obj(&self, x: &Obj) -> Obj {
        x.summands().iter().filter_map(|&s| self.quotient_id(s)).collect()
    }

    pub fn lift_obj(&self, x: &Obj) -> Obj {
        x.map(|q| self.kept[q])
    }

    /// The coset of a parent morphism.
    pub fn project(&self, f: &Mor) -> Result<Mor> {
        let m = self.kept.len();
        let rows: Vec<usize> = (0..f.dom().len())
            .filter(|&p| self.quotient_id(f.dom().summands()[p]).is_some())
            .collect();
        let cols: Vec<usize> = (0..f.cod().len())
            .filter(|&q| self.quotient_id(f.cod().summands()[q]).is_some())
            .collect();
        let dom = self.project_obj(f.dom());
        let cod = self.project_obj(f.cod());
        self.quotient.mor_from_blocks(&dom, &cod, |a, b| {
            let (qa, qb) = (dom.summands()[a], cod.summands()[b]);
            self.project[qa * m + qb]
                .apply(self.parent.block(f, rows[a], cols[b]))
                .expect("projection shapes agree")
        })
    }

    /// A representative of a quotient morphism (the canonical lift).
    pub fn lift(&self, f: &Mor) -> Result<Mor> {
        let m = self.kept.len();
        let dom = self.lift_obj(f.dom());
        let cod = self.lift_obj(f.cod());
        self.parent.mor_from_blocks(&dom, &cod, |a, b| {
            let (qa, qb) = (f.dom().summands()[a], f.cod().summands()[b]);
            self.lift[qa * m + qb]
                .apply(self.quotient.block(f, a, b))
                .expect("lift shapes agree")
        })
    }

    /// Parent-side matrices `project` and `lift` for `Hom(qi, qj)`.
    pub fn hom_maps(&self, qi: IndecId, qj: IndecId) -> (&Mat, &Mat) {
        let m = self.kept.len();
        (&self.project[qi * m + qj], &self.lift[qi * m + qj])
    }
}
