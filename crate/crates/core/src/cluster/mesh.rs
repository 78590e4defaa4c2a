//! The mesh category of ZA_n, computed by knitting.
//!
//! Vertices are `(level, slice)` with `1 <= level <= n`. Arrows run
//! `(l, s) -> (l+1, s)` and `(l, s) -> (l-1, s+1)`; the translation is
//! `tau (l, s) = (l, s-1)`. Every mesh relation has all coefficients `+1`.
//!
//! Hom spaces are translation invariant, so one table per source level is
//! enough; vertices in a table are stored relative to the source slice.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{quotient_basis, Mat};
use crate::scalar::{Field, Scalar};

pub(crate) type Vertex = (i64, i64);

/// A vertex automorphism of ZA_n: `(l, s) -> (n+1-l, s+l+shift)` when
/// `flip`, `(l, s) -> (l, s+shift)` otherwise. These form a group containing
/// tau, the suspension and `F = tau^-1 Sigma`, and each maps arrows to arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct VertexMap {
    pub flip: bool,
    pub shift: i64,
}

impl VertexMap {
    pub const IDENTITY: VertexMap = VertexMap { flip: false, shift: 0 };

    pub fn sigma() -> VertexMap {
        VertexMap { flip: true, shift: 0 }
    }

    pub fn tau() -> VertexMap {
        VertexMap { flip: false, shift: -1 }
    }

    /// `F = tau^-1 Sigma`.
    pub fn f() -> VertexMap {
        VertexMap { flip: true, shift: 1 }
    }

    pub fn apply(self, n: i64, (l, s): Vertex) -> Vertex {
        if self.flip {
            (n + 1 - l, s + l + self.shift)
        } else {
            (l, s + self.shift)
        }
    }

    /// `next ∘ self`.
    pub fn then(self, n: i64, next: VertexMap) -> VertexMap {
        match (self.flip, next.flip) {
            (true, true) => VertexMap {
                flip: false,
                shift: n + 1 + self.shift + next.shift,
            },
            (a, b) => VertexMap {
                flip: a ^ b,
                shift: self.shift + next.shift,
            },
        }
    }

    pub fn inverse(self, n: i64) -> VertexMap {
        if self.flip {
            VertexMap {
                flip: true,
                shift: -(n + 1) - self.shift,
            }
        } else {
            VertexMap {
                flip: false,
                shift: -self.shift,
            }
        }
    }

    pub fn pow(self, n: i64, k: i64) -> VertexMap {
        let base = if k < 0 { self.inverse(n) } else { self };
        (0..k.abs()).fold(VertexMap::IDENTITY, |acc, _| acc.then(n, base))
    }
}

#[derive(Clone, Debug)]
struct Pred {
    from: Vertex,
    /// Hom(x, from) -> Hom(x, v): postcomposition with the arrow.
    arrow: Mat,
    /// Block of the chosen lift Hom(x, v) -> ⊕ Hom(x, pred).
    lift: Mat,
}

#[derive(Clone, Debug)]
struct Entry {
    dim: usize,
    preds: Vec<Pred>,
}

/// Knitted Hom functors `Hom((l0, 0), -)` for every source level `l0`.
#[derive(Clone, Debug)]
pub(crate) struct Mesh {
    n: i64,
    window: i64,
    field: Field,
    tables: Vec<Vec<Entry>>,
    phi: BTreeMap<(i64, i64, i64), Vec<Vec<Mat>>>,
    transport: BTreeMap<(VertexMap, i64), Vec<Mat>>,
}

impl Mesh {
    /// Paths in ZA_n vanish after `2n - 1` arrows and every arrow advances the
    /// slice by at most one, so Hom vanishes beyond slice offset `2n - 2`.
    pub fn new(n: usize, field: Field) -> Result<Mesh> {
        let n = n as i64;
        let window = 2 * n;
        let mut mesh = Mesh {
            n,
            window,
            field,
            tables: Vec::new(),
            phi: BTreeMap::new(),
            transport: BTreeMap::new(),
        };
        for l0 in 1..=n {
            let table = mesh.knit(l0)?;
            mesh.tables.push(table);
        }
        Ok(mesh)
    }

    fn idx(&self, (l, s): Vertex) -> Option<usize> {
        if l < 1 || l > self.n || s < 0 || s > self.window {
            None
        } else {
            Some((s * self.n + l - 1) as usize)
        }
    }

    fn preds(&self, (l, s): Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(2);
        if l > 1 {
            out.push((l - 1, s));
        }
        if l < self.n {
            out.push((l + 1, s - 1));
        }
        out
    }

    fn knit(&self, l0: i64) -> Result<Vec<Entry>> {
        let field = self.field;
        let size = ((self.window + 1) * self.n) as usize;
        let mut table: Vec<Entry> = Vec::with_capacity(size);
        let dim_of =
            |table: &Vec<Entry>, v: Vertex| self.idx(v).filter(|&i| i < table.len()).map_or(0, |i| table[i].dim);
        for s in 0..=self.window {
            for l in 1..=self.n {
                let v = (l, s);
                let preds = self.preds(v);
                let dims: Vec<usize> = preds.iter().map(|&m| dim_of(&table, m)).collect();
                let total: usize = dims.iter().sum();
                if v == (l0, 0) {
                    let preds = preds
                        .iter()
                        .zip(&dims)
                        .map(|(&m, &d)| Pred {
                            from: m,
                            arrow: Mat::zeros(field, 1, d),
                            lift: Mat::zeros(field, d, 1),
                        })
                        .collect();
                    table.push(Entry { dim: 1, preds });
                    continue;
                }
                // Hom(x, v) = coker(Hom(x, tau v) -> ⊕ Hom(x, m)).
                let tv = (l, s - 1);
                let dt = dim_of(&table, tv);
                let mut blocks: Vec<Mat> = Vec::with_capacity(preds.len());
                for (&m, &d) in preds.iter().zip(&dims) {
                    blocks.push(if d == 0 || dt == 0 {
                        Mat::zeros(field, d, dt)
                    } else {
                        let entry = &table[self.idx(m).expect("pred with nonzero Hom is stored")];
                        entry
                            .preds
                            .iter()
                            .find(|p| p.from == tv)
                            .map(|p| p.arrow.clone())
                            .ok_or_else(|| Error::Internal(format!("missing arrow {tv:?} -> {m:?}")))?
                    });
                }
                let refs: Vec<&Mat> = blocks.iter().collect();
                let relation = Mat::vstack(field, dt, &refs)?;
                let (project, lift) = quotient_basis(field, total, &relation)?;
                let dim = project.rows();
                let mut out = Vec::with_capacity(preds.len());
                let mut offset = 0;
                for (&m, &d) in preds.iter().zip(&dims) {
                    let range: Vec<usize> = (offset..offset + d).collect();
                    out.push(Pred {
                        from: m,
                        arrow: project.select_columns(&range),
                        lift: lift.select_rows(&range),
                    });
                    offset += d;
                }
                table.push(Entry { dim, preds: out });
            }
        }
        for l in 1..=self.n {
            if table[self.idx((l, self.window)).unwrap()].dim != 0 {
                return Err(Error::Internal(format!(
                    "nonzero Hom at the window boundary (slice {}); a window of {} slices is needed",
                    self.window,
                    2 * self.window
                )));
            }
        }
        Ok(table)
    }

    fn entry(&self, l0: i64, v: Vertex) -> Option<&Entry> {
        self.idx(v).map(|i| &self.tables[(l0 - 1) as usize][i])
    }

    /// dim Hom(x, y).
    pub fn hom_dim(&self, x: Vertex, y: Vertex) -> usize {
        self.entry(x.0, (y.0, y.1 - x.1)).map_or(0, |e| e.dim)
    }

    /// Postcomposition with the arrow `m -> v`, as a map Hom(x, m) -> Hom(x, v).
    fn arrow(&self, x: Vertex, m: Vertex, v: Vertex) -> Mat {
        let dm = self.hom_dim(x, m);
        match self.entry(x.0, (v.0, v.1 - x.1)) {
            None => Mat::zeros(self.field, 0, dm),
            Some(e) => {
                let rel = (m.0, m.1 - x.1);
                e.preds
                    .iter()
                    .find(|p| p.from == rel)
                    .map(|p| p.arrow.clone())
                    .unwrap_or_else(|| Mat::zeros(self.field, e.dim, dm))
            }
        }
    }

    /// The arrow `m -> v` as an element of Hom(m, v).
    pub fn arrow_element(&self, m: Vertex, v: Vertex) -> Vec<Scalar> {
        self.arrow(m, m, v).column(0)
    }

    fn vertices_from(&self, l0: i64) -> impl Iterator<Item = (usize, Vertex)> + '_ {
        let n = self.n;
        (0..self.tables[(l0 - 1) as usize].len()).map(move |i| (i, ((i as i64) % n + 1, (i as i64) / n)))
    }

    /// `Phi[v][c]`: the map `Hom(x, y) -> Hom(x, v)`, `f -> g_c ∘ f`, for the
    /// basis `g_c` of `Hom(y, v)`; `x = (lx, 0)`, `y = (ly, d)`, `v` relative to `y`.
    fn phi_table(&mut self, lx: i64, ly: i64, d: i64) -> &Vec<Vec<Mat>> {
        if !self.phi.contains_key(&(lx, ly, d)) {
            let x = (lx, 0);
            let y = (ly, d);
            let dxy = self.hom_dim(x, y);
            let mut out: Vec<Vec<Mat>> = Vec::new();
            for (i, v) in self.vertices_from(ly) {
                let e = &self.tables[(ly - 1) as usize][i];
                let vabs = (v.0, v.1 + d);
                let dxv = self.hom_dim(x, vabs);
                let mut mats = Vec::with_capacity(e.dim);
                if v == (ly, 0) {
                    mats.push(Mat::identity(self.field, dxy));
                } else {
                    for c in 0..e.dim {
                        let mut acc = Mat::zeros(self.field, dxv, dxy);
                        for p in &e.preds {
                            let mi = match self.idx(p.from) {
                                Some(mi) => mi,
                                None => continue,
                            };
                            let mabs = (p.from.0, p.from.1 + d);
                            let a = self.arrow(x, mabs, vabs);
                            for (cp, phi_m) in out[mi].iter().enumerate() {
                                let coeff = p.lift.get(cp, c);
                                if coeff.is_zero() {
                                    continue;
                                }
                                let term = a.mul(phi_m).expect("shapes agree").scale(coeff);
                                acc = acc.add(&term).expect("shapes agree");
                            }
                        }
                        mats.push(acc);
                    }
                }
                out.push(mats);
            }
            self.phi.insert((lx, ly, d), out);
        }
        &self.phi[&(lx, ly, d)]
    }

    /// `g ∘ f` for `f ∈ Hom(x, y)`, `g ∈ Hom(y, z)`.
    pub fn compose(&mut self, x: Vertex, y: Vertex, z: Vertex, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let field = self.field;
        let dxz = self.hom_dim(x, z);
        let mut out = vec![field.zero(); dxz];
        if dxz == 0 || f.is_empty() || g.is_empty() {
            return out;
        }
        let zi = self.idx((z.0, z.1 - y.1)).expect("Hom(y, z) is nonzero");
        let table = self.phi_table(x.0, y.0, y.1 - x.1);
        for (c, gc) in g.iter().enumerate() {
            if gc.is_zero() {
                continue;
            }
            let v = table[zi][c].apply(f).expect("shapes agree");
            for (o, t) in out.iter_mut().zip(v) {
                *o = &*o + &(gc * &t);
            }
        }
        out
    }

    /// `Psi[v]`: the matrix of `phi: Hom(y, v) -> Hom(phi y, phi v)` for `y = (ly, 0)`.
    fn transport_table(&mut self, phi: VertexMap, ly: i64) -> Result<&Vec<Mat>> {
        if !self.transport.contains_key(&(phi, ly)) {
            let n = self.n;
            let y = (ly, 0);
            let py = phi.apply(n, y);
            let mut out: Vec<Mat> = Vec::new();
            for (i, v) in self.vertices_from(ly) {
                let e = &self.tables[(ly - 1) as usize][i];
                let pv = phi.apply(n, v);
                let dim = self.hom_dim(py, pv);
                if dim != e.dim {
                    return Err(Error::Internal(format!(
                        "vertex map does not preserve Hom({y:?}, {v:?}); widen the window"
                    )));
                }
                if v == y {
                    out.push(Mat::identity(self.field, 1));
                    continue;
                }
                let mut acc = Mat::zeros(self.field, dim, e.dim);
                for p in &e.preds {
                    let Some(mi) = self.idx(p.from) else { continue };
                    if p.lift.rows() == 0 {
                        continue;
                    }
                    let a = self.arrow(py, phi.apply(n, p.from), pv);
                    let term = a.mul(&out[mi])?.mul(&p.lift)?;
                    acc = acc.add(&term)?;
                }
                out.push(acc);
            }
            self.transport.insert((phi, ly), out);
        }
        Ok(&self.transport[&(phi, ly)])
    }

    /// Image of `g ∈ Hom(y, v)` under the automorphism induced by `phi`.
    pub fn transport(&mut self, phi: VertexMap, y: Vertex, v: Vertex, g: &[Scalar]) -> Result<Vec<Scalar>> {
        if g.is_empty() {
            return Ok(Vec::new());
        }
        let vi = self
            .idx((v.0, v.1 - y.1))
            .ok_or_else(|| Error::Internal("transport outside the window".into()))?;
        let table = self.transport_table(phi, y.0)?;
        table[vi].apply(g)
    }
}
