//! The cluster category of type A_n as a presented category.
//!
//! The category is the orbit category of the mesh category of ZA_n under
//! `F = tau^-1 Sigma`: `Hom(X, Y) = ⊕_k Hom_mesh(X, F^k Y)`, where each
//! indecomposable is represented by its vertex in the fundamental domain
//! `{(l, s) : s >= 0, l + s <= n + 1}`. Bases of orbit Hom spaces concatenate
//! the knitted mesh bases block by block, in increasing `k`.

mod arcs;
mod mesh;
mod triangles;

pub use arcs::{arcs_cross, ArcLabel};
pub use triangles::{cone_object, TriangleRecord};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{FunctorData, IndecId, Mor, Obj, PresentedCategory, StructureConstant};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};

use mesh::{Mesh, Vertex, VertexMap};

/// Ranks accepted by [`build_cluster_category`].
pub const RANK_RANGE: core::ops::RangeInclusive<usize> = 2..=8;

/// Orbit blocks beyond this power of F are checked to vanish.
const ORBIT_GUARD: i64 = 3;

/// One nonzero summand `Hom_mesh(X, F^k Y)` of an orbit Hom space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Block {
    k: i64,
    offset: usize,
    dim: usize,
}

/// `C_{A_n}` with its mesh coordinates and the data needed for AR triangles.
#[derive(Clone, Debug)]
pub struct ClusterCategory {
    n: usize,
    cat: PresentedCategory,
    vertices: Vec<Vertex>,
    blocks: Vec<Vec<Block>>,
    ar: Vec<TriangleRecord>,
}

/// Builds `C_{A_n}` over `field`, installing `Sigma`, `SigmaInv`, `tau` and
/// `tauInv` as functor data.
pub fn build_cluster_category(n: usize, field: Field) -> Result<ClusterCategory> {
    if !RANK_RANGE.contains(&n) {
        return Err(Error::Input(format!(
            "rank {n} outside the supported range {}..={}",
            RANK_RANGE.start(),
            RANK_RANGE.end()
        )));
    }
    let mut mesh = Mesh::new(n, field)?;
    let ni = n as i64;
    let mut vertices = Vec::new();
    for s in 0..=ni {
        for l in 1..=ni {
            if l + s <= ni + 1 {
                vertices.push((l, s));
            }
        }
    }
    let count = vertices.len();
    let f = VertexMap::f();

    let mut blocks = Vec::with_capacity(count * count);
    let mut homdim = Vec::with_capacity(count * count);
    for &x in &vertices {
        for &y in &vertices {
            let mut list = Vec::new();
            let mut offset = 0;
            for k in -ORBIT_GUARD..=ORBIT_GUARD {
                let d = mesh.hom_dim(x, f.pow(ni, k).apply(ni, y));
                if d == 0 {
                    continue;
                }
                if k.abs() == ORBIT_GUARD {
                    return Err(Error::Internal(format!("orbit Hom nonzero at F^{k}")));
                }
                list.push(Block { k, offset, dim: d });
                offset += d;
            }
            homdim.push(offset);
            blocks.push(list);
        }
    }
    let block_of =
        |blocks: &Vec<Vec<Block>>, i: usize, j: usize, k: i64| blocks[i * count + j].iter().find(|b| b.k == k).copied();

    let mut identity = Vec::with_capacity(count);
    for i in 0..count {
        let b = block_of(&blocks, i, i, 0).ok_or_else(|| Error::Internal("missing identity block".into()))?;
        let mut coords = vec![field.zero(); homdim[i * count + i]];
        coords[b.offset] = field.one();
        identity.push(coords);
    }
    let names = vertex_names(n, &vertices);
    let mut cat = PresentedCategory::new(field, names, homdim, identity)?;

    for (i, &x) in vertices.iter().enumerate() {
        for (j, &y) in vertices.iter().enumerate() {
            for (k, &z) in vertices.iter().enumerate() {
                for b1 in blocks[i * count + j].clone() {
                    let fy = f.pow(ni, b1.k).apply(ni, y);
                    for b2 in blocks[j * count + k].clone() {
                        let fz2 = f.pow(ni, b2.k).apply(ni, z);
                        let fz = f.pow(ni, b1.k + b2.k).apply(ni, z);
                        let target = block_of(&blocks, i, k, b1.k + b2.k);
                        for a in 0..b1.dim {
                            let fa = unit(field, b1.dim, a);
                            for b in 0..b2.dim {
                                // F^{k1}(g) ∘ f
                                let gb = unit(field, b2.dim, b);
                                let g_moved = mesh.transport(f.pow(ni, b1.k), y, fz2, &gb)?;
                                let h = mesh.compose(x, fy, fz, &fa, &g_moved);
                                let Some(t) = target else {
                                    if h.iter().any(|v| !v.is_zero()) {
                                        return Err(Error::Internal(format!(
                                            "composite lands in a missing orbit block F^{}",
                                            b1.k + b2.k
                                        )));
                                    }
                                    continue;
                                };
                                for (c, v) in h.into_iter().enumerate() {
                                    if !v.is_zero() {
                                        cat.set_constant(StructureConstant {
                                            i,
                                            j,
                                            k,
                                            a: b1.offset + a,
                                            b: b2.offset + b,
                                            c: t.offset + c,
                                            value: v,
                                        })?;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut out = ClusterCategory {
        n,
        cat,
        vertices,
        blocks,
        ar: Vec::new(),
    };
    let sigma = VertexMap::sigma();
    let tau = VertexMap::tau();
    for (name, map) in [
        ("Sigma", sigma),
        ("SigmaInv", sigma.inverse(ni)),
        ("tau", tau),
        ("tauInv", tau.inverse(ni)),
    ] {
        let data = out.functor_data(&mut mesh, map)?;
        out.cat.insert_functor(name, data)?;
    }
    out.ar = out.build_ar_triangles(&mut mesh)?;
    Ok(out)
}

fn unit(field: Field, d: usize, a: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); d];
    v[a] = field.one();
    v
}

/// Module-theoretic names for the linear orientation `1 -> 2 -> ... -> n`:
/// the interval module `[i, j]` sits at `(j - i + 1, n - j)` and the shifted
/// projective `Sigma P_i` at `(i, n + 1 - i)`.
fn vertex_names(n: usize, vertices: &[Vertex]) -> Vec<String> {
    let ni = n as i64;
    vertices
        .iter()
        .map(|&(l, s)| {
            if l + s == ni + 1 {
                return format!("SigmaP{l}");
            }
            let j = ni - s;
            let i = j - l + 1;
            if j == ni {
                format!("P{i}")
            } else if i == 1 {
                format!("I{j}")
            } else if i == j {
                format!("S{i}")
            } else if n == 4 && (i, j) == (2, 3) {
                "M".into()
            } else {
                format!("M{i}{j}")
            }
        })
        .collect()
}

/// Alternative names accepted on input: simple modules that coincide with a
/// projective or injective, and the projective-injective `I_n = P_1`.
fn alias(n: usize, name: &str) -> Option<String> {
    if name == "S1" {
        return Some("I1".into());
    }
    if name == format!("S{n}") {
        return Some(format!("P{n}"));
    }
    if name == format!("I{n}") {
        return Some("P1".into());
    }
    None
}

impl ClusterCategory {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn category(&self) -> &PresentedCategory {
        &self.cat
    }

    pub fn into_category(self) -> PresentedCategory {
        self.cat
    }

    /// `(level, slice)` of an indecomposable in ZA_n.
    pub fn vertex(&self, i: IndecId) -> (i64, i64) {
        self.vertices[i]
    }

    /// Name table `name -> id`.
    pub fn named_objects(&self) -> BTreeMap<String, IndecId> {
        self.cat
            .names()
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), i))
            .collect()
    }

    /// Resolves a name or an alias such as `S1`.
    pub fn resolve(&self, name: &str) -> Result<IndecId> {
        let name = name.trim();
        if let Some(i) = self.cat.index_of(name) {
            return Ok(i);
        }
        if let Some(i) = alias(self.n, name).and_then(|a| self.cat.index_of(&a)) {
            return Ok(i);
        }
        if let Some(arc) = ArcLabel::parse(name) {
            if let Some(i) = (0..self.cat.n()).find(|&i| self.arc(i) == arc) {
                return Ok(i);
            }
        }
        Err(Error::Input(format!(
            "no indecomposable named {name:?} in C_A{}",
            self.n
        )))
    }

    /// Parses `"P1,P2,S2"` (names, aliases or arcs such as `(0,2)`).
    pub fn parse_obj(&self, text: &str) -> Result<Obj> {
        let mut out = Vec::new();
        let mut depth = 0;
        let mut current = String::new();
        for ch in text.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth -= 1;
                    current.push(ch);
                }
                ',' | '+' if depth == 0 => {
                    if !current.trim().is_empty() {
                        out.push(self.resolve(&current)?);
                    }
                    current.clear();
                }
                _ => current.push(ch),
            }
        }
        if !current.trim().is_empty() {
            out.push(self.resolve(&current)?);
        }
        Ok(Obj::from_summands(out))
    }

    /// The polygon arc of an indecomposable.
    pub fn arc(&self, i: IndecId) -> ArcLabel {
        ArcLabel::of_vertex(self.n, self.vertices[i])
    }

    /// `dim Ext^1(x, y) = dim Hom(x, Sigma y)`.
    pub fn ext1_dim(&self, x: &Obj, y: &Obj) -> Result<usize> {
        let sy = self.cat.apply_functor_obj("Sigma", y)?;
        Ok(self.cat.hom_dim(x, &sy))
    }

    fn f(&self) -> VertexMap {
        VertexMap::f()
    }

    /// `(i, k)` with `v = F^k(vertex(i))`.
    fn representative(&self, v: Vertex) -> Result<(IndecId, i64)> {
        let ni = self.n as i64;
        for k in -ORBIT_GUARD - 2..=ORBIT_GUARD + 2 {
            let w = self.f().pow(ni, -k).apply(ni, v);
            if let Some(i) = self.vertices.iter().position(|&u| u == w) {
                return Ok((i, k));
            }
        }
        Err(Error::Internal(format!("vertex {v:?} has no representative")))
    }

    fn block(&self, i: IndecId, j: IndecId, k: i64) -> Option<Block> {
        self.blocks[i * self.cat.n() + j].iter().find(|b| b.k == k).copied()
    }

    /// Matrices of the functor induced by a vertex automorphism commuting with F.
    fn functor_data(&self, mesh: &mut Mesh, map: VertexMap) -> Result<FunctorData> {
        let ni = self.n as i64;
        let count = self.cat.n();
        let field = self.cat.field();
        // phi_X = F^{k_X} ∘ map sends X into the fundamental domain.
        let mut perm = Vec::with_capacity(count);
        let mut ks = Vec::with_capacity(count);
        for &x in &self.vertices {
            let (i, k) = self.representative(map.apply(ni, x))?;
            perm.push(i);
            ks.push(-k);
        }
        let mut matrices = Vec::with_capacity(count * count);
        for i in 0..count {
            let x = self.vertices[i];
            let phi = map.then(ni, self.f().pow(ni, ks[i]));
            for j in 0..count {
                let y = self.vertices[j];
                let rows = self.cat.homdim(perm[i], perm[j]);
                let cols = self.cat.homdim(i, j);
                let mut m = Mat::zeros(field, rows, cols);
                for b in self.blocks[i * count + j].clone() {
                    let target_k = b.k + ks[i] - ks[j];
                    let t = self
                        .block(perm[i], perm[j], target_k)
                        .ok_or_else(|| Error::Internal(format!("functor image of block F^{} is missing", b.k)))?;
                    let v = self.f().pow(ni, b.k).apply(ni, y);
                    for a in 0..b.dim {
                        let img = mesh.transport(phi, x, v, &unit(field, b.dim, a))?;
                        for (c, val) in img.into_iter().enumerate() {
                            m.set(t.offset + c, b.offset + a, val);
                        }
                    }
                }
                matrices.push(m);
            }
        }
        Ok(FunctorData { perm, matrices })
    }

    /// The orbit morphism between representatives induced by `g ∈ Hom_mesh(u, v)`.
    fn mesh_to_orbit(&self, mesh: &mut Mesh, u: Vertex, v: Vertex, g: &[Scalar]) -> Result<Mor> {
        let ni = self.n as i64;
        let (iu, ku) = self.representative(u)?;
        let (iv, kv) = self.representative(v)?;
        let field = self.cat.field();
        let moved = mesh.transport(self.f().pow(ni, -ku), u, v, g)?;
        let mut coords = vec![field.zero(); self.cat.homdim(iu, iv)];
        if !moved.is_empty() {
            let b = self
                .block(iu, iv, kv - ku)
                .ok_or_else(|| Error::Internal("mesh morphism outside the orbit blocks".into()))?;
            for (c, val) in moved.into_iter().enumerate() {
                coords[b.offset + c] = val;
            }
        }
        self.cat.mor(Obj::indec(iu), Obj::indec(iv), coords)
    }

    /// Mesh predecessors of an indecomposable's vertex.
    fn mesh_preds(&self, (l, s): Vertex) -> Vec<Vertex> {
        let ni = self.n as i64;
        let mut out = Vec::new();
        if l > 1 {
            out.push((l - 1, s));
        }
        if l < ni {
            out.push((l + 1, s - 1));
        }
        out
    }
}
