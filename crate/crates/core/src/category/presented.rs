use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};

use super::object::{IndecId, Mor, Obj};

/// An endofunctor given on indecomposables by a permutation and on each Hom
/// space `Hom(i, j)` by a matrix `Hom(i, j) -> Hom(perm[i], perm[j])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub perm: Vec<IndecId>,
    /// Row-major over `(i, j)`: entry `i * n + j`.
    pub matrices: Vec<Mat>,
}

/// A nonzero structure constant: `g_b ∘ f_a` has coefficient `value` on `h_c`,
/// where `f_a`, `g_b`, `h_c` are basis vectors of `Hom(i,j)`, `Hom(j,k)`, `Hom(i,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub i: IndecId,
    pub j: IndecId,
    pub k: IndecId,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: Scalar,
}

/// A finite k-linear Krull-Schmidt category given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedCategory {
    field: Field,
    names: Vec<String>,
    homdim: Vec<usize>,
    // comp[(i*n+j)*n+k][(a*d_jk + b)*d_ik + c]
    comp: Vec<Vec<Scalar>>,
    identity: Vec<Vec<Scalar>>,
    functors: BTreeMap<String, FunctorData>,
}

impl PresentedCategory {
    /// A category with all structure constants zero; fill with [`Self::set_constant`].
    pub fn new(
        field: Field,
        names: Vec<String>,
        homdim: Vec<usize>,
        identity: Vec<Vec<Scalar>>,
    ) -> Result<PresentedCategory> {
        let n = names.len();
        if homdim.len() != n * n {
            return Err(Error::Dimension(format!(
                "homdim has {} entries for {n} indecomposables",
                homdim.len()
            )));
        }
        for (a, name) in names.iter().enumerate() {
            if names[..a].contains(name) {
                return Err(Error::Input(format!("duplicate indecomposable name {name:?}")));
            }
        }
        if identity.len() != n {
            return Err(Error::Dimension(format!(
                "{} identities for {n} indecomposables",
                identity.len()
            )));
        }
        for (i, id) in identity.iter().enumerate() {
            if id.len() != homdim[i * n + i] {
                return Err(Error::Dimension(format!("identity of {} has wrong length", names[i])));
            }
            if let Some(bad) = id.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch(field, bad.field()));
            }
        }
        let mut comp = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let len = homdim[i * n + j] * homdim[j * n + k] * homdim[i * n + k];
                    comp.push(vec![field.zero(); len]);
                }
            }
        }
        Ok(PresentedCategory {
            field,
            names,
            homdim,
            comp,
            identity,
            functors: BTreeMap::new(),
        })
    }

    pub fn set_constant(&mut self, sc: StructureConstant) -> Result<()> {
        let n = self.n();
        let StructureConstant {
            i,
            j,
            k,
            a,
            b,
            c,
            value,
        } = sc;
        if i >= n || j >= n || k >= n {
            return Err(Error::Input(format!("indecomposable out of range in ({i},{j},{k})")));
        }
        let (dij, djk, dik) = (self.hd(i, j), self.hd(j, k), self.hd(i, k));
        if a >= dij || b >= djk || c >= dik {
            return Err(Error::Input(format!(
                "basis index out of range in ({i},{j},{k}) [{a},{b},{c}]"
            )));
        }
        if value.field() != self.field {
            return Err(Error::FieldMismatch(self.field, value.field()));
        }
        self.comp[(i * n + j) * n + k][(a * djk + b) * dik + c] = value;
        Ok(())
    }

    /// All nonzero structure constants in (i, j, k, a, b, c) order.
    pub fn constants(&self) -> Vec<StructureConstant> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = &self.comp[(i * n + j) * n + k];
                    let (djk, dik) = (self.hd(j, k), self.hd(i, k));
                    for (idx, v) in t.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        out.push(StructureConstant {
                            i,
                            j,
                            k,
                            a: idx / (djk * dik),
                            b: (idx / dik) % djk,
                            c: idx % dik,
                            value: v.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn insert_functor(&mut self, name: &str, data: FunctorData) -> Result<()> {
        let n = self.n();
        if data.perm.len() != n || data.matrices.len() != n * n {
            return Err(Error::Dimension(format!("functor {name} has wrong arity")));
        }
        for i in 0..n {
            for j in 0..n {
                let m = &data.matrices[i * n + j];
                let (pi, pj) = (data.perm[i], data.perm[j]);
                if pi >= n || pj >= n {
                    return Err(Error::Input(format!("functor {name} maps outside the category")));
                }
                if m.rows() != self.hd(pi, pj) || m.cols() != self.hd(i, j) || m.field() != self.field {
                    return Err(Error::Dimension(format!(
                        "functor {name} matrix for ({i},{j}) has the wrong shape"
                    )));
                }
            }
        }
        self.functors.insert(name.into(), data);
        Ok(())
    }

    pub fn functor(&self, name: &str) -> Option<&FunctorData> {
        self.functors.get(name)
    }

    pub fn functors(&self) -> &BTreeMap<String, FunctorData> {
        &self.functors
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of indecomposables.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: IndecId) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<IndecId> {
        self.names.iter().position(|x| x == name)
    }

    /// Parses a comma- or `+`-separated list of names into an object.
    pub fn parse_obj(&self, text: &str) -> Result<Obj> {
        text.split([',', '+'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                self.index_of(s)
                    .ok_or_else(|| Error::Input(format!("unknown indecomposable {s:?}")))
            })
            .collect()
    }

    pub fn obj_name(&self, x: &Obj) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<&str> = x.summands().iter().map(|&s| self.name(s)).collect();
        parts.join("+")
    }

    pub fn all_indecs(&self) -> impl Iterator<Item = IndecId> {
        0..self.n()
    }

    /// dim Hom between indecomposables.
    pub fn homdim(&self, i: IndecId, j: IndecId) -> usize {
        self.hd(i, j)
    }

    #[inline]
    fn hd(&self, i: IndecId, j: IndecId) -> usize {
        self.homdim[i * self.names.len() + j]
    }

    pub fn hom_dim(&self, x: &Obj, y: &Obj) -> usize {
        x.summands()
            .iter()
            .map(|&p| y.summands().iter().map(|&q| self.hd(p, q)).sum::<usize>())
            .sum()
    }

    pub fn identity_coords(&self, i: IndecId) -> &[Scalar] {
        &self.identity[i]
    }

    /// Start offsets of the `(p, q)` blocks, plus the total length at the end.
    pub fn block_offsets(&self, x: &Obj, y: &Obj) -> Vec<usize> {
        let mut out = Vec::with_capacity(x.len() * y.len() + 1);
        let mut acc = 0;
        for &p in x.summands() {
            for &q in y.summands() {
                out.push(acc);
                acc += self.hd(p, q);
            }
        }
        out.push(acc);
        out
    }

    /// Coordinates of the `(p, q)` component of `f`.
    pub fn block<'a>(&self, f: &'a Mor, p: usize, q: usize) -> &'a [Scalar] {
        let start = self.block_start(&f.dom, &f.cod, p, q);
        let len = self.hd(f.dom.summands()[p], f.cod.summands()[q]);
        &f.coords[start..start + len]
    }

    fn block_start(&self, x: &Obj, y: &Obj, p: usize, q: usize) -> usize {
        let before: usize = x.summands()[..p]
            .iter()
            .map(|&s| y.summands().iter().map(|&t| self.hd(s, t)).sum::<usize>())
            .sum();
        before
            + y.summands()[..q]
                .iter()
                .map(|&t| self.hd(x.summands()[p], t))
                .sum::<usize>()
    }

    pub fn mor(&self, dom: Obj, cod: Obj, coords: Vec<Scalar>) -> Result<Mor> {
        let d = self.hom_dim(&dom, &cod);
        if coords.len() != d {
            return Err(Error::Dimension(format!(
                "{} coordinates for a Hom space of dimension {d}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, bad.field()));
        }
        Ok(Mor { dom, cod, coords })
    }

    /// Assembles a morphism from its blocks.
    pub fn mor_from_blocks(
        &self,
        dom: &Obj,
        cod: &Obj,
        mut block: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Result<Mor> {
        let mut coords = Vec::with_capacity(self.hom_dim(dom, cod));
        for p in 0..dom.len() {
            for q in 0..cod.len() {
                let b = block(p, q);
                if b.len() != self.hd(dom.summands()[p], cod.summands()[q]) {
                    return Err(Error::Dimension(format!("block ({p},{q}) has the wrong length")));
                }
                coords.extend(b);
            }
        }
        self.mor(dom.clone(), cod.clone(), coords)
    }

    pub fn zero_mor(&self, dom: &Obj, cod: &Obj) -> Mor {
        Mor {
            dom: dom.clone(),
            cod: cod.clone(),
            coords: vec![self.field.zero(); self.hom_dim(dom, cod)],
        }
    }

    pub fn identity(&self, x: &Obj) -> Mor {
        self.mor_from_blocks(x, x, |p, q| {
            if p == q {
                self.identity[x.summands()[p]].clone()
            } else {
                vec![self.field.zero(); self.hd(x.summands()[p], x.summands()[q])]
            }
        })
        .expect("identity blocks have matching shapes")
    }

    /// The `a`-th basis element of `Hom(i, j)` as a morphism of indecomposables.
    pub fn basis_mor(&self, i: IndecId, j: IndecId, a: usize) -> Mor {
        let mut coords = vec![self.field.zero(); self.hd(i, j)];
        coords[a] = self.field.one();
        Mor {
            dom: Obj::indec(i),
            cod: Obj::indec(j),
            coords,
        }
    }

    /// Basis of `Hom(x, y)` in coordinate order.
    pub fn basis(&self, x: &Obj, y: &Obj) -> Vec<Mor> {
        let d = self.hom_dim(x, y);
        (0..d)
            .map(|a| {
                let mut coords = vec![self.field.zero(); d];
                coords[a] = self.field.one();
                Mor {
                    dom: x.clone(),
                    cod: y.clone(),
                    coords,
                }
            })
            .collect()
    }

    /// Accumulates `g ∘ f` for `f ∈ Hom(i,j)`, `g ∈ Hom(j,k)` into `out ⊆ Hom(i,k)`.
    pub fn compose_indec_into(
        &self,
        i: IndecId,
        j: IndecId,
        k: IndecId,
        f: &[Scalar],
        g: &[Scalar],
        out: &mut [Scalar],
    ) {
        let n = self.n();
        let (djk, dik) = (self.hd(j, k), self.hd(i, k));
        if dik == 0 {
            return;
        }
        let t = &self.comp[(i * n + j) * n + k];
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.iter().enumerate() {
                if gb.is_zero() {
                    continue;
                }
                let w = fa * gb;
                let base = (a * djk + b) * dik;
                for c in 0..dik {
                    let tc = &t[base + c];
                    if !tc.is_zero() {
                        out[c] = &out[c] + &(&w * tc);
                    }
                }
            }
        }
    }

    pub fn compose_indec(&self, i: IndecId, j: IndecId, k: IndecId, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.hd(i, k)];
        self.compose_indec_into(i, j, k, f, g, &mut out);
        out
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        if f.cod != g.dom {
            return Err(Error::Input(format!(
                "cannot compose: codomain {} differs from domain {}",
                self.obj_name(&f.cod),
                self.obj_name(&g.dom)
            )));
        }
        let (x, y, z) = (&f.dom, &f.cod, &g.cod);
        let off = self.block_offsets(x, z);
        let mut coords = vec![self.field.zero(); *off.last().unwrap()];
        let fo = self.block_offsets(x, y);
        let go = self.block_offsets(y, z);
        for (p, &xp) in x.summands().iter().enumerate() {
            for (r, &zr) in z.summands().iter().enumerate() {
                let o = off[p * z.len() + r];
                let len = self.hd(xp, zr);
                if len == 0 {
                    continue;
                }
                for (q, &yq) in y.summands().iter().enumerate() {
                    let fb = &f.coords[fo[p * y.len() + q]..fo[p * y.len() + q + 1]];
                    let gb = &g.coords[go[q * z.len() + r]..go[q * z.len() + r + 1]];
                    self.compose_indec_into(xp, yq, zr, fb, gb, &mut coords[o..o + len]);
                }
            }
        }
        Ok(Mor {
            dom: x.clone(),
            cod: z.clone(),
            coords,
        })
    }

    /// Composes a chain given in application order: `chain[last] ∘ ... ∘ chain[0]`.
    pub fn compose_chain(&self, chain: &[&Mor]) -> Result<Mor> {
        let (first, rest) = chain
            .split_first()
            .ok_or_else(|| Error::Input("empty composition chain".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, g| self.compose(g, &acc))
    }

    fn same_shape(&self, f: &Mor, g: &Mor) -> Result<()> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(Error::Input(format!(
                "morphisms {} -> {} and {} -> {} are not parallel",
                self.obj_name(&f.dom),
                self.obj_name(&f.cod),
                self.obj_name(&g.dom),
                self.obj_name(&g.cod)
            )));
        }
        Ok(())
    }

    pub fn add(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        self.same_shape(f, g)?;
        Ok(Mor {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            coords: f.coords.iter().zip(&g.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        self.add(f, &self.scale(g, &self.field.from_i64(-1)))
    }

    pub fn scale(&self, f: &Mor, s: &Scalar) -> Mor {
        Mor {
            dom: f.dom.clone(),
            cod: f.cod.clone(),
            coords: f.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self, f: &Mor) -> Mor {
        self.scale(f, &self.field.from_i64(-1))
    }

    /// `[f_1 ... f_m] : X_1 ⊕ ... ⊕ X_m -> Y`.
    pub fn hstack(&self, cod: &Obj, fs: &[&Mor]) -> Result<Mor> {
        let mut dom = Obj::zero();
        let mut coords = Vec::new();
        for f in fs {
            if &f.cod != cod {
                return Err(Error::Input("hstack: codomains differ".into()));
            }
            dom = dom.direct_sum(&f.dom);
            coords.extend(f.coords.iter().cloned());
        }
        Ok(Mor {
            dom,
            cod: cod.clone(),
            coords,
        })
    }

    /// `(g_1; ...; g_m) : X -> Y_1 ⊕ ... ⊕ Y_m`.
    pub fn vstack(&self, dom: &Obj, gs: &[&Mor]) -> Result<Mor> {
        let mut cod = Obj::zero();
        for g in gs {
            if &g.dom != dom {
                return Err(Error::Input("vstack: domains differ".into()));
            }
            cod = cod.direct_sum(&g.cod);
        }
        let mut coords = Vec::with_capacity(self.hom_dim(dom, &cod));
        let offs: Vec<Vec<usize>> = gs.iter().map(|g| self.block_offsets(&g.dom, &g.cod)).collect();
        for p in 0..dom.len() {
            for (g, off) in gs.iter().zip(&offs) {
                let m = g.cod.len();
                coords.extend(g.coords[off[p * m]..off[p * m + m]].iter().cloned());
            }
        }
        Ok(Mor {
            dom: dom.clone(),
            cod,
            coords,
        })
    }

    /// `f ⊕ g`.
    pub fn diag(&self, f: &Mor, g: &Mor) -> Result<Mor> {
        let top = self.vstack(&f.dom, &[f, &self.zero_mor(&f.dom, &g.cod)])?;
        let bottom = self.vstack(&g.dom, &[&self.zero_mor(&g.dom, &f.cod), g])?;
        self.hstack(&f.cod.direct_sum(&g.cod), &[&top, &bottom])
    }

    /// Inclusion of summand `which` of `parts[0] ⊕ parts[1] ⊕ ...`.
    pub fn injection(&self, parts: &[&Obj], which: usize) -> Mor {
        let total: Obj = parts.iter().flat_map(|o| o.summands().iter().copied()).collect();
        let start: usize = parts[..which].iter().map(|o| o.len()).sum();
        let x = parts[which];
        self.mor_from_blocks(x, &total, |p, q| {
            if q == start + p {
                self.identity[x.summands()[p]].clone()
            } else {
                vec![self.field.zero(); self.hd(x.summands()[p], total.summands()[q])]
            }
        })
        .expect("injection blocks")
    }

    /// Projection onto summand `which` of `parts[0] ⊕ parts[1] ⊕ ...`.
    pub fn projection(&self, parts: &[&Obj], which: usize) -> Mor {
        let total: Obj = parts.iter().flat_map(|o| o.summands().iter().copied()).collect();
        let start: usize = parts[..which].iter().map(|o| o.len()).sum();
        let y = parts[which];
        self.mor_from_blocks(&total, y, |p, q| {
            if p == start + q {
                self.identity[y.summands()[q]].clone()
            } else {
                vec![self.field.zero(); self.hd(total.summands()[p], y.summands()[q])]
            }
        })
        .expect("projection blocks")
    }

    /// Restriction of `f` to the domain summands `rows` and codomain summands `cols`.
    pub fn submorphism(&self, f: &Mor, rows: &[usize], cols: &[usize]) -> Mor {
        let dom: Obj = rows.iter().map(|&p| f.dom.summands()[p]).collect();
        let cod: Obj = cols.iter().map(|&q| f.cod.summands()[q]).collect();
        self.mor_from_blocks(&dom, &cod, |a, b| self.block(f, rows[a], cols[b]).to_vec())
            .expect("sub-blocks keep their shapes")
    }

    /// Matrix of `Hom(z, f) : Hom(z, X) -> Hom(z, Y)` in the coordinate bases.
    pub fn post_matrix(&self, f: &Mor, z: &Obj) -> Mat {
        let (x, y) = (&f.dom, &f.cod);
        let rows = self.hom_dim(z, y);
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(self.hom_dim(z, x));
        let out_off = self.block_offsets(z, y);
        let f_off = self.block_offsets(x, y);
        for (p, &zp) in z.summands().iter().enumerate() {
            for (q, &xq) in x.summands().iter().enumerate() {
                for a in 0..self.hd(zp, xq) {
                    let mut col = vec![self.field.zero(); rows];
                    let mut e = vec![self.field.zero(); self.hd(zp, xq)];
                    e[a] = self.field.one();
                    for (r, &yr) in y.summands().iter().enumerate() {
                        let o = out_off[p * y.len() + r];
                        let len = self.hd(zp, yr);
                        let fb = &f.coords[f_off[q * y.len() + r]..f_off[q * y.len() + r + 1]];
                        self.compose_indec_into(zp, xq, yr, &e, fb, &mut col[o..o + len]);
                    }
                    cols.push(col);
                }
            }
        }
        Mat::from_columns(self.field, rows, &cols).expect("column lengths agree")
    }

    /// Matrix of `Hom(f, z) : Hom(Y, z) -> Hom(X, z)` in the coordinate bases.
    pub fn pre_matrix(&self, f: &Mor, z: &Obj) -> Mat {
        let (x, y) = (&f.dom, &f.cod);
        let rows = self.hom_dim(x, z);
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(self.hom_dim(y, z));
        let out_off = self.block_offsets(x, z);
        let f_off = self.block_offsets(x, y);
        for (q, &yq) in y.summands().iter().enumerate() {
            for (r, &zr) in z.summands().iter().enumerate() {
                for b in 0..self.hd(yq, zr) {
                    let mut col = vec![self.field.zero(); rows];
                    let mut e = vec![self.field.zero(); self.hd(yq, zr)];
                    e[b] = self.field.one();
                    for (p, &xp) in x.summands().iter().enumerate() {
                        let o = out_off[p * z.len() + r];
                        let len = self.hd(xp, zr);
                        let fb = &f.coords[f_off[p * y.len() + q]..f_off[p * y.len() + q + 1]];
                        self.compose_indec_into(xp, yq, zr, fb, &e, &mut col[o..o + len]);
                    }
                    cols.push(col);
                }
            }
        }
        Mat::from_columns(self.field, rows, &cols).expect("column lengths agree")
    }

    /// Whether `f ∘ g` is invertible in both orders for some `g`; decided by
    /// solving `Hom(Y, f)` for the identity and checking both composites.
    pub fn inverse(&self, f: &Mor) -> Result<Option<Mor>> {
        let (x, y) = (&f.dom, &f.cod);
        let m = self.post_matrix(f, y);
        let id_y = self.identity(y);
        let Some(sol) = m.solve(&Mat::column_vector(self.field, &id_y.coords)?)? else {
            return Ok(None);
        };
        let g = self.mor(y.clone(), x.clone(), sol.column(0))?;
        if self.compose(&g, f)? == self.identity(x) {
            Ok(Some(g))
        } else {
            Ok(None)
        }
    }

    pub fn is_iso(&self, f: &Mor) -> Result<bool> {
        Ok(self.inverse(f)?.is_some())
    }

    /// Applies a named functor to a morphism.
    pub fn apply_functor(&self, name: &str, f: &Mor) -> Result<Mor> {
        let fd = self
            .functor(name)
            .ok_or_else(|| Error::Unsupported(format!("no functor named {name}")))?;
        let n = self.n();
        let dom = f.dom.map(|s| fd.perm[s]);
        let cod = f.cod.map(|s| fd.perm[s]);
        self.mor_from_blocks(&dom, &cod, |p, q| {
            let (i, j) = (f.dom.summands()[p], f.cod.summands()[q]);
            fd.matrices[i * n + j]
                .apply(self.block(f, p, q))
                .expect("functor matrix shape validated on insert")
        })
    }

    pub fn apply_functor_obj(&self, name: &str, x: &Obj) -> Result<Obj> {
        let fd = self
            .functor(name)
            .ok_or_else(|| Error::Unsupported(format!("no functor named {name}")))?;
        Ok(x.map(|s| fd.perm[s]))
    }

    /// Requires `dim End(i) = 1` for every indecomposable.
    pub fn check_local_endomorphisms(&self) -> Result<()> {
        for i in self.all_indecs() {
            if self.hd(i, i) != 1 {
                return Err(Error::Unsupported(format!(
                    "End({}) has dimension {}; only End = k is supported",
                    self.name(i),
                    self.hd(i, i)
                )));
            }
        }
        Ok(())
    }

    /// Full subcategory on `keep`, with indecomposables renumbered in the given order.
    pub fn full_subcategory(&self, keep: &[IndecId]) -> PresentedCategory {
        let n = self.n();
        let m = keep.len();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let homdim = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.hd(i, j))
            .collect();
        let identity = keep.iter().map(|&i| self.identity[i].clone()).collect();
        let mut comp = Vec::with_capacity(m * m * m);
        for &i in keep {
            for &j in keep {
                for &k in keep {
                    comp.push(self.comp[(i * n + j) * n + k].clone());
                }
            }
        }
        let mut functors = BTreeMap::new();
        for (name, fd) in &self.functors {
            let perm: Option<Vec<usize>> = keep
                .iter()
                .map(|&i| keep.iter().position(|&t| t == fd.perm[i]))
                .collect();
            if let Some(perm) = perm {
                let matrices = keep
                    .iter()
                    .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| fd.matrices[i * n + j].clone())
                    .collect();
                functors.insert(name.clone(), FunctorData { perm, matrices });
            }
        }
        PresentedCategory {
            field: self.field,
            names,
            homdim,
            comp,
            identity,
            functors,
        }
    }

    /// Overwrites one structure constant without checks; used for fault injection.
    pub fn corrupt_constant(&mut self, i: IndecId, j: IndecId, k: IndecId, idx: usize, value: Scalar) {
        let n = self.n();
        self.comp[(i * n + j) * n + k][idx] = value;
    }
}
