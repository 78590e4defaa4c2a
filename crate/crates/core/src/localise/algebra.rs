//! The algebra `(End R)^op`, its modules `Hom(R, x)` and its Ext-quiver.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{Mor, Obj, PresentedCategory};
use crate::error::{Error, Result};
use crate::matrix::{quotient_basis, Mat};
use crate::scalar::{Field, Scalar};

use super::modules::{Quiver, Representation};

/// `(End R)^op` on the coordinate basis of `End(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebra {
    pub r: Obj,
    pub dim: usize,
    pub basis: Vec<Mor>,
    /// `mult[a][b]` holds the coordinates of `e_a · e_b = e_b ∘ e_a`.
    pub mult: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl EndAlgebra {
    pub fn field(&self) -> Field {
        self.unit.first().map_or(Field::Rational, Scalar::field)
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let mut out = vec![field.zero(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xa * yb;
                for (o, m) in out.iter_mut().zip(&self.mult[a][b]) {
                    *o = &*o + &(&w * m);
                }
            }
        }
        out
    }
}

pub fn end_algebra(cat: &PresentedCategory, r: &Obj) -> Result<EndAlgebra> {
    let basis = cat.basis(r, r);
    let dim = basis.len();
    let mut mult = Vec::with_capacity(dim);
    for a in &basis {
        let mut row = Vec::with_capacity(dim);
        for b in &basis {
            row.push(cat.compose(b, a)?.coords().to_vec());
        }
        mult.push(row);
    }
    let alg = EndAlgebra {
        r: r.clone(),
        dim,
        basis,
        mult,
        unit: cat.identity(r).coords().to_vec(),
    };
    let field = cat.field();
    let e = |i: usize| {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        v
    };
    for a in 0..dim {
        let ea = e(a);
        if alg.product(&alg.unit, &ea) != ea || alg.product(&ea, &alg.unit) != ea {
            return Err(Error::Internal("unit law fails in (End R)^op".into()));
        }
        for b in 0..dim {
            let ab = &alg.mult[a][b];
            for c in 0..dim {
                let ec = e(c);
                if alg.product(ab, &ec) != alg.product(&ea, &alg.mult[b][c]) {
                    return Err(Error::Internal(format!(
                        "associativity fails in (End R)^op at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    Ok(alg)
}

/// A module over an [`EndAlgebra`]: one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaModule {
    pub dim: usize,
    pub action: Vec<Mat>,
}

impl LambdaModule {
    /// Action of an algebra element given in basis coordinates.
    pub fn act(&self, field: Field, x: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(field, self.dim, self.dim);
        for (m, c) in self.action.iter().zip(x) {
            if !c.is_zero() {
                out = out.add(&m.scale(c)).expect("square actions");
            }
        }
        out
    }

    /// `act(a · b) = act(a) act(b)` on basis pairs and `act(1) = 1`.
    pub fn respects(&self, alg: &EndAlgebra) -> bool {
        let field = alg.field();
        if self.act(field, &alg.unit) != Mat::identity(field, self.dim) {
            return false;
        }
        (0..alg.dim).all(|a| {
            (0..alg.dim).all(|b| {
                self.act(field, &alg.mult[a][b]) == self.action[a].mul(&self.action[b]).expect("square actions")
            })
        })
    }

    pub fn as_representation(&self, field: Field) -> Representation {
        Representation {
            field,
            dims: vec![self.dim],
            maps: self.action.clone(),
        }
    }
}

/// `E(x) = Hom(R, x)` with `e · m = m ∘ e`.
pub fn eval_obj(cat: &PresentedCategory, alg: &EndAlgebra, x: &Obj) -> LambdaModule {
    LambdaModule {
        dim: cat.hom_dim(&alg.r, x),
        action: alg.basis.iter().map(|e| cat.pre_matrix(e, x)).collect(),
    }
}

/// `E(f) = Hom(R, f)`.
pub fn eval_mor(cat: &PresentedCategory, alg: &EndAlgebra, f: &Mor) -> Mat {
    cat.post_matrix(f, &alg.r)
}

/// The quiver of `(End R)^op` with the algebra elements realizing its
/// vertices (summand identities) and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraQuiver {
    pub quiver: Quiver,
    pub idempotents: Vec<Vec<Scalar>>,
    pub arrow_elements: Vec<Vec<Scalar>>,
}

impl AlgebraQuiver {
    /// Whether the algebra is the path algebra of its quiver: no relations,
    /// detected by `dim = number of paths` for an acyclic quiver.
    pub fn has_no_relations(&self, alg: &EndAlgebra) -> bool {
        self.quiver.path_count() == Some(alg.dim)
    }
}

/// Vertices are the summands `R_1, ..., R_m` (labelled `1'`, ..., `m'`); an
/// irreducible map `R_j -> R_i` inside `add R` is an arrow `i' -> j'`.
/// Requires `R` basic.
pub fn ext_quiver(cat: &PresentedCategory, alg: &EndAlgebra) -> Result<AlgebraQuiver> {
    let r = &alg.r;
    let m = r.len();
    if r.multiplicities().values().any(|&k| k > 1) {
        return Err(Error::Unsupported("the Ext-quiver is computed for basic R only".into()));
    }
    cat.check_local_endomorphisms()?;
    let field = cat.field();
    let s = r.summands();
    let offsets = cat.block_offsets(r, r);
    let embed = |p: usize, q: usize, block: &[Scalar]| {
        let mut v = vec![field.zero(); alg.dim];
        let o = offsets[p * m + q];
        v[o..o + block.len()].clone_from_slice(block);
        v
    };
    let idempotents = (0..m).map(|p| embed(p, p, cat.identity_coords(s[p]))).collect();
    let labels = (1..=m).map(|k| format!("{k}'")).collect();
    let mut arrows = Vec::new();
    let mut arrow_elements = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let (rj, ri) = (s[j], s[i]);
            let d = cat.homdim(rj, ri);
            if d == 0 {
                continue;
            }
            let mut cols = Vec::new();
            for (k, &rk) in s.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                for f in cat.basis(&Obj::indec(rj), &Obj::indec(rk)) {
                    for g in cat.basis(&Obj::indec(rk), &Obj::indec(ri)) {
                        cols.push(cat.compose(&g, &f)?.coords().to_vec());
                    }
                }
            }
            let rad2 = Mat::from_columns(field, d, &cols)?;
            let (_, lift) = quotient_basis(field, d, &rad2)?;
            for c in lift.columns() {
                arrows.push((i, j));
                arrow_elements.push(embed(j, i, &c));
            }
        }
    }
    Ok(AlgebraQuiver {
        quiver: Quiver { labels, arrows },
        idempotents,
        arrow_elements,
    })
}

/// The quiver representation underlying a module: vertex `k` carries
/// `e_k M`, arrow `a` the action of its algebra element.
pub fn module_to_representation(alg: &EndAlgebra, aq: &AlgebraQuiver, module: &LambdaModule) -> Result<Representation> {
    let field = alg.field();
    let spaces: Vec<Mat> = aq
        .idempotents
        .iter()
        .map(|e| module.act(field, e).column_basis())
        .collect();
    let dims = spaces.iter().map(Mat::cols).collect();
    let mut maps = Vec::with_capacity(aq.arrow_elements.len());
    for (&(s, t), x) in aq.quiver.arrows.iter().zip(&aq.arrow_elements) {
        let image = module.act(field, x).mul(&spaces[s])?;
        let m = spaces[t]
            .solve(&image)?
            .ok_or_else(|| Error::Internal("arrow action leaves its target vertex space".into()))?;
        maps.push(m);
    }
    Representation::new(&aq.quiver, field, dims, maps)
}
