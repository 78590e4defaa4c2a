//! Finite-dimensional representations of quivers, their morphism spaces, and
//! a brute-force inventory of indecomposables over a prime field.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{PresentedCategory, StructureConstant};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};

/// Largest number of elements enumerated by a single brute-force search.
const ENUMERATION_LIMIT: usize = 1 << 20;

/// A finite quiver; arrow `(s, t)` points from `s` to `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub labels: Vec<String>,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// One vertex with `loops` loops; modules over an algebra with `loops`
    /// basis elements are representations of it.
    pub fn with_loops(loops: usize) -> Quiver {
        Quiver {
            labels: vec![String::from("*")],
            arrows: vec![(0, 0); loops],
        }
    }

    /// Number of paths, trivial ones included; `None` if there is a cycle.
    pub fn path_count(&self) -> Option<usize> {
        let n = self.vertex_count();
        // paths ending at v, processed in a topological order
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut order: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        order.push(t);
                    }
                }
            }
        }
        if order.len() != n {
            return None;
        }
        let mut ending = vec![1usize; n];
        for &v in &order {
            for &(s, t) in &self.arrows {
                if t == v {
                    ending[v] += ending[s];
                }
            }
        }
        Some(ending.iter().sum())
    }
}

/// A representation: a vector space per vertex and a matrix
/// `dims[t] x dims[s]` per arrow `(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl Representation {
    pub fn new(quiver: &Quiver, field: Field, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Representation> {
        if dims.len() != quiver.vertex_count() || maps.len() != quiver.arrows.len() {
            return Err(Error::Dimension("representation does not match its quiver".into()));
        }
        for (m, &(s, t)) in maps.iter().zip(&quiver.arrows) {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Dimension(format!(
                    "arrow {s}->{t} carries a {}x{} matrix",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
        }
        Ok(Representation { field, dims, maps })
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn reduce_mod(&self, p: u32) -> Option<Representation> {
        Some(Representation {
            field: Field::Prime(p),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(|m| m.reduce_mod(p)).collect::<Option<_>>()?,
        })
    }
}

/// A morphism of representations: one matrix per vertex.
pub type RepMorphism = Vec<Mat>;

fn flat_len(v: &Representation, w: &Representation) -> usize {
    v.dims.iter().zip(&w.dims).map(|(a, b)| a * b).sum()
}

fn flatten(hom: &RepMorphism) -> Vec<Scalar> {
    hom.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

fn unflatten(field: Field, v: &Representation, w: &Representation, flat: &[Scalar]) -> RepMorphism {
    let mut out = Vec::with_capacity(v.dims.len());
    let mut at = 0;
    for (&dv, &dw) in v.dims.iter().zip(&w.dims) {
        let len = dv * dw;
        out.push(Mat::new(field, dw, dv, flat[at..at + len].to_vec()).expect("block sizes agree"));
        at += len;
    }
    out
}

/// Basis of `Hom(V, W)`: families `T_v` with `W_a T_s = T_t V_a` for every arrow.
pub fn hom_space(quiver: &Quiver, v: &Representation, w: &Representation) -> Result<Vec<RepMorphism>> {
    if v.field != w.field {
        return Err(Error::FieldMismatch(v.field, w.field));
    }
    let field = v.field;
    let n = quiver.vertex_count();
    let mut offsets = Vec::with_capacity(n);
    let mut total = 0;
    for x in 0..n {
        offsets.push(total);
        total += v.dims[x] * w.dims[x];
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, &(s, t)) in quiver.arrows.iter().enumerate() {
        let (wa, va) = (&w.maps[a], &v.maps[a]);
        for i in 0..w.dims[t] {
            for j in 0..v.dims[s] {
                let mut row = vec![field.zero(); total];
                // (W_a T_s)_{ij} = sum_k W_a[i,k] T_s[k,j]
                for k in 0..w.dims[s] {
                    let idx = offsets[s] + k * v.dims[s] + j;
                    row[idx] = &row[idx] + wa.get(i, k);
                }
                // (T_t V_a)_{ij} = sum_k T_t[i,k] V_a[k,j]
                for k in 0..v.dims[t] {
                    let idx = offsets[t] + i * v.dims[t] + k;
                    row[idx] = &row[idx] - va.get(k, j);
                }
                rows.push(row);
            }
        }
    }
    let data: Vec<Scalar> = rows.iter().flatten().cloned().collect();
    let system = Mat::new(field, rows.len(), total, data)?;
    let null = system.nullspace();
    Ok(null.columns().iter().map(|c| unflatten(field, v, w, c)).collect())
}

/// `g ∘ f` vertexwise.
pub fn compose_rep(g: &RepMorphism, f: &RepMorphism) -> Result<RepMorphism> {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

pub fn is_rep_iso(f: &RepMorphism) -> bool {
    f.iter().all(|m| m.inverse().is_some())
}

/// Whether `V` has no idempotent endomorphism besides 0 and 1. Over a prime
/// field the endomorphism algebra is enumerated; otherwise only the
/// one-dimensional case is decided.
pub fn is_indecomposable(quiver: &Quiver, v: &Representation) -> Result<bool> {
    if v.dim() == 0 {
        return Ok(false);
    }
    let end = hom_space(quiver, v, v)?;
    if end.len() == 1 {
        return Ok(true);
    }
    let Field::Prime(p) = v.field else {
        return Err(Error::OracleUnavailable(
            "idempotent search needs a prime field when End has dimension > 1".into(),
        ));
    };
    let p = p as usize;
    let count = (0..end.len()).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&c| c <= ENUMERATION_LIMIT));
    let Some(count) = count else {
        return Err(Error::OracleUnavailable(format!(
            "End has dimension {}, too large to enumerate",
            end.len()
        )));
    };
    let flat_basis: Vec<Vec<Scalar>> = end.iter().map(flatten).collect();
    let len = flat_len(v, v);
    let identity: Vec<Scalar> = flatten(&v.dims.iter().map(|&d| Mat::identity(v.field, d)).collect());
    for mut code in 1..count {
        let mut e = vec![v.field.zero(); len];
        for b in &flat_basis {
            let c = v.field.from_i64((code % p) as i64);
            code /= p;
            if c.is_zero() {
                continue;
            }
            for (x, y) in e.iter_mut().zip(b) {
                *x = &*x + &(&c * y);
            }
        }
        if e == identity {
            continue;
        }
        let em = unflatten(v.field, v, v, &e);
        if compose_rep(&em, &em)? == em {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether two indecomposable representations are isomorphic: some product
/// `S_j T_i` of basis morphisms `T_i: V -> W`, `S_j: W -> V` is invertible.
/// Exact because non-invertible endomorphisms of an indecomposable form a subspace.
pub fn isomorphic_indecomposables(quiver: &Quiver, v: &Representation, w: &Representation) -> Result<bool> {
    if v.dims != w.dims {
        return Ok(false);
    }
    let ts = hom_space(quiver, v, w)?;
    let ss = hom_space(quiver, w, v)?;
    for t in &ts {
        for s in &ss {
            if is_rep_iso(&compose_rep(s, t)?) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Dimension vectors searched by [`module_inventory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InventoryBound {
    pub max_entry: usize,
    pub max_total: usize,
}

impl InventoryBound {
    /// Entries at most 1.
    pub fn thin(quiver: &Quiver) -> InventoryBound {
        InventoryBound {
            max_entry: 1,
            max_total: quiver.vertex_count(),
        }
    }
}

fn dimension_vectors(n: usize, bound: InventoryBound) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|d| {
                (0..=bound.max_entry).map(move |e| {
                    let mut d = d.clone();
                    d.push(e);
                    d
                })
            })
            .collect();
    }
    out.retain(|d| {
        let t: usize = d.iter().sum();
        t > 0 && t <= bound.max_total
    });
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum()).then_with(|| b.cmp(a)));
    out
}

/// Indecomposable representations over F_p with dimension vectors inside
/// `bound`, one per isomorphism class, ordered by total dimension.
pub fn module_inventory(quiver: &Quiver, field: Field, bound: InventoryBound) -> Result<Vec<Representation>> {
    let Field::Prime(p) = field else {
        return Err(Error::Input(
            "the module inventory is enumerated over a prime field".into(),
        ));
    };
    let p = p as usize;
    let mut found: Vec<Representation> = Vec::new();
    for dims in dimension_vectors(quiver.vertex_count(), bound) {
        let entries: usize = quiver.arrows.iter().map(|&(s, t)| dims[s] * dims[t]).sum();
        let count = (0..entries).try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&c| c <= ENUMERATION_LIMIT));
        let Some(count) = count else {
            return Err(Error::OracleUnavailable(format!(
                "{entries} matrix entries at dimension vector {dims:?} are too many to enumerate"
            )));
        };
        for mut code in 0..count {
            let mut maps = Vec::with_capacity(quiver.arrows.len());
            for &(s, t) in &quiver.arrows {
                let data = (0..dims[s] * dims[t])
                    .map(|_| {
                        let c = field.from_i64((code % p) as i64);
                        code /= p;
                        c
                    })
                    .collect();
                maps.push(Mat::new(field, dims[t], dims[s], data)?);
            }
            let rep = Representation::new(quiver, field, dims.clone(), maps)?;
            if !is_indecomposable(quiver, &rep)? {
                continue;
            }
            let mut new = true;
            for old in found.iter().filter(|o| o.dims == dims) {
                if isomorphic_indecomposables(quiver, old, &rep)? {
                    new = false;
                    break;
                }
            }
            if new {
                found.push(rep);
            }
        }
    }
    Ok(found)
}

/// Name of a representation by its dimension vector, e.g. `"011"`.
pub fn dimension_label(rep: &Representation) -> String {
    rep.dims.iter().map(|d| format!("{d}")).collect::<Vec<_>>().join("")
}

/// The full subcategory of representations on `indecs`, presented by
/// structure constants in the bases returned by [`hom_space`].
pub fn module_category(quiver: &Quiver, indecs: &[Representation]) -> Result<PresentedCategory> {
    let n = indecs.len();
    let field = indecs.first().map_or(Field::Rational, |r| r.field);
    let mut bases: Vec<Vec<RepMorphism>> = Vec::with_capacity(n * n);
    let mut flat: Vec<Mat> = Vec::with_capacity(n * n);
    for v in indecs {
        for w in indecs {
            let b = hom_space(quiver, v, w)?;
            let cols: Vec<Vec<Scalar>> = b.iter().map(flatten).collect();
            flat.push(Mat::from_columns(field, flat_len(v, w), &cols)?);
            bases.push(b);
        }
    }
    let mut names: Vec<String> = Vec::with_capacity(n);
    for rep in indecs {
        let base = dimension_label(rep);
        let mut name = base.clone();
        let mut k = 2;
        while names.contains(&name) {
            name = format!("{base}#{k}");
            k += 1;
        }
        names.push(name);
    }
    let coords_in = |i: usize, j: usize, hom: &RepMorphism| -> Result<Vec<Scalar>> {
        let target = Mat::column_vector(field, &flatten(hom))?;
        flat[i * n + j]
            .solve(&target)?
            .map(|s| s.column(0))
            .ok_or_else(|| Error::Internal("composite escapes the Hom space".into()))
    };
    let homdim = bases.iter().map(Vec::len).collect();
    let identity = (0..n)
        .map(|i| coords_in(i, i, &indecs[i].dims.iter().map(|&d| Mat::identity(field, d)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let mut cat = PresentedCategory::new(field, names, homdim, identity)?;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (a, f) in bases[i * n + j].iter().enumerate() {
                    for (b, g) in bases[j * n + k].iter().enumerate() {
                        let gf = compose_rep(g, f)?;
                        for (c, value) in coords_in(i, k, &gf)?.into_iter().enumerate() {
                            if !value.is_zero() {
                                cat.set_constant(StructureConstant {
                                    i,
                                    j,
                                    k,
                                    a,
                                    b,
                                    c,
                                    value,
                                })?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(cat)
}
