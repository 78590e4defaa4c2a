use alloc::format;
use alloc::vec::Vec;

use crate::category::{Mor, Obj, PresentedCategory};
use crate::error::{Error, Result};

use super::mesh::{Mesh, Vertex};
use super::ClusterCategory;

/// A triangle `a -> b -> c -> Sigma a`, with its first two maps when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleRecord {
    pub a: Obj,
    pub b: Obj,
    pub c: Obj,
    pub f: Option<Mor>,
    pub g: Option<Mor>,
    /// The connecting morphism `c -> Sigma a`.
    pub eps: Mor,
}

impl ClusterCategory {
    /// One AR triangle `tau C -> E -> C -> Sigma tau C` per indecomposable.
    pub fn ar_triangles(&self) -> &[TriangleRecord] {
        &self.ar
    }

    /// The AR triangle ending at `c`.
    pub fn ar_triangle_ending_at(&self, c: usize) -> &TriangleRecord {
        &self.ar[c]
    }

    pub(super) fn build_ar_triangles(&self, mesh: &mut Mesh) -> Result<Vec<TriangleRecord>> {
        let ni = self.n as i64;
        let cat = &self.cat;
        let mut out = Vec::with_capacity(cat.n());
        for c in cat.all_indecs() {
            let v: Vertex = self.vertices[c];
            let tv = (v.0, v.1 - 1);
            let preds = self.mesh_preds(v);
            let (a, _) = self.representative(tv)?;
            let a_obj = Obj::indec(a);
            let c_obj = Obj::indec(c);
            let mut fs = Vec::with_capacity(preds.len());
            let mut gs = Vec::with_capacity(preds.len());
            for &m in &preds {
                let into = mesh.arrow_element(tv, m);
                fs.push(self.mesh_to_orbit(mesh, tv, m, &into)?);
                let outof = mesh.arrow_element(m, v);
                gs.push(self.mesh_to_orbit(mesh, m, v, &outof)?);
            }
            let f_refs: Vec<&Mor> = fs.iter().collect();
            let g_refs: Vec<&Mor> = gs.iter().collect();
            let f = cat.vstack(&a_obj, &f_refs)?;
            let g = cat.hstack(&c_obj, &g_refs)?;
            if !cat.compose(&g, &f)?.is_zero() {
                return Err(Error::Internal(format!("mesh relation fails at {}", cat.name(c))));
            }
            // The connecting map spans Hom_mesh(v, nu v) with nu v = Sigma tau v.
            let nu_v = (ni + 1 - v.0, v.1 + v.0 - 1);
            let one = [cat.field().one()];
            let eps = self.mesh_to_orbit(mesh, v, nu_v, &one)?;
            let sigma_a = cat.apply_functor_obj("Sigma", &a_obj)?;
            if eps.cod() != &sigma_a {
                return Err(Error::Internal("connecting map misses Sigma tau C".into()));
            }
            out.push(TriangleRecord {
                a: a_obj,
                b: f.cod().clone(),
                c: c_obj,
                f: Some(f),
                g: Some(g),
                eps,
            });
        }
        Ok(out)
    }

    pub fn cone_object(&self, f: &Mor) -> Result<Obj> {
        cone_object(&self.cat, f)
    }
}

/// The cone of `f: X -> Y`, determined up to isomorphism by
/// `dim Hom(z, C_f) = dim coker Hom(z, f) + dim ker Hom(z, Sigma f)`.
pub fn cone_object(cat: &PresentedCategory, f: &Mor) -> Result<Obj> {
    if cat.functor("Sigma").is_none() {
        return Err(Error::OracleUnavailable("cone needs Sigma functor data".into()));
    }
    let sf = cat.apply_functor("Sigma", f)?;
    let mut profile = Vec::with_capacity(cat.n());
    for z in cat.all_indecs() {
        let zo = Obj::indec(z);
        let hf = cat.post_matrix(f, &zo);
        let hsf = cat.post_matrix(&sf, &zo);
        let coker = hf.rows() - hf.rank();
        let ker = hsf.cols() - hsf.rank();
        profile.push((coker + ker) as i64);
    }
    cat.reconstruct_object(&profile)?.ok_or_else(|| {
        Error::OracleUnavailable(format!(
            "Hom profile {profile:?} is not realised by an object; the cone data is inconsistent"
        ))
    })
}
