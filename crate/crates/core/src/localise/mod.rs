//! The heart `C/[X_R]` localised at its regular morphisms, realized through
//! the evaluation functor `E = Hom(R, -)` into modules over `(End R)^op`.
//!
//! Left fractions `[f, r]` stand for `r^-1 ∘ f`; equality and composition are
//! decided on their images under `E`, where regular maps become invertible.

mod algebra;
mod modules;

pub use algebra::{
    end_algebra, eval_mor, eval_obj, ext_quiver, module_to_representation, AlgebraQuiver, EndAlgebra, LambdaModule,
};
pub use modules::{
    compose_rep, dimension_label, hom_space, is_indecomposable, is_rep_iso, isomorphic_indecomposables,
    module_category, module_inventory, InventoryBound, Quiver, RepMorphism, Representation,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{IndecId, Mor, Obj, PresentedCategory, SubcatSpec, Subquotient};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::preab::{is_regular, pushout};
use crate::scalar::{Field, Scalar};
use crate::torsion::{canonical_twin_from_rigid, perp0, shift, star_product, CanonicalTwin};

/// Candidate coefficient vectors tried when searching a span for an invertible element.
const INVERTIBLE_SEARCH_LIMIT: usize = 4096;

/// `r^-1 ∘ f` for heart morphisms `f: X -> A` and regular `r: Y -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftFraction {
    pub f: Mor,
    pub r: Mor,
}

/// A regular heart morphism `r: x -> y` with `x` in the heart of `(S, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    /// Parent objects.
    pub y: Obj,
    pub x: Obj,
    /// `x -> y` in the heart `C/[X_R]`.
    pub r: Mor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub sampled: usize,
    pub in_w: usize,
    pub in_s: usize,
    /// Morphisms in `[W]` but not in `[S]`.
    pub failures: Vec<Mor>,
}

impl FactorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.in_w == self.in_s
    }
}

/// Comparison of `Hom(x, y)` in the heart of `(S, T)` with `Hom(Ex, Ey)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub x: IndecId,
    pub y: IndecId,
    pub hom_heart: usize,
    pub hom_module: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub pairs: Vec<PairCheck>,
    pub faithful: bool,
    pub full: bool,
    /// `None` when no inventory was supplied.
    pub dense: Option<bool>,
    /// Per inventory module, the heart indecomposable reaching it.
    pub density: Vec<(String, Option<IndecId>)>,
    pub heart_count: usize,
    pub inventory_count: Option<usize>,
}

impl EquivalenceReport {
    pub fn is_equivalence(&self) -> bool {
        self.faithful && self.full && self.dense == Some(true)
    }
}

/// Everything attached to a rigid object `R` of a triangulated category with
/// `Sigma` functor data.
#[derive(Clone, Debug)]
pub struct Localisation {
    cat: PresentedCategory,
    algebra: EndAlgebra,
    quiver: AlgebraQuiver,
    twin: CanonicalTwin,
    c_r: SubcatSpec,
    heart_st: Subquotient,
}

impl Localisation {
    pub fn new(cat: &PresentedCategory, r: &Obj) -> Result<Localisation> {
        let twin = canonical_twin_from_rigid(cat, r)?;
        let algebra = end_algebra(cat, r)?;
        let quiver = ext_quiver(cat, &algebra)?;
        let add_r = SubcatSpec::add_of(r);
        let s = shift(cat, &add_r)?;
        let c_r = star_product(cat, &add_r, &s)?;
        let heart_st = cat.subquotient(&c_r, &cat.ideal_generated_by(&s))?;
        Ok(Localisation {
            cat: cat.clone(),
            algebra,
            quiver,
            twin,
            c_r,
            heart_st,
        })
    }

    pub fn category(&self) -> &PresentedCategory {
        &self.cat
    }

    pub fn r(&self) -> &Obj {
        &self.algebra.r
    }

    pub fn algebra(&self) -> &EndAlgebra {
        &self.algebra
    }

    pub fn ext_quiver(&self) -> &AlgebraQuiver {
        &self.quiver
    }

    pub fn twin(&self) -> &CanonicalTwin {
        &self.twin
    }

    /// `C/[X_R]`.
    pub fn heart(&self) -> &Subquotient {
        &self.twin.heart
    }

    /// `C(R) = add R * add Sigma R`.
    pub fn c_r(&self) -> &SubcatSpec {
        &self.c_r
    }

    /// The heart of `(S, T)`: `C(R) / [add Sigma R]`.
    pub fn heart_st(&self) -> &Subquotient {
        &self.heart_st
    }

    pub fn eval_obj(&self, x: &Obj) -> LambdaModule {
        eval_obj(&self.cat, &self.algebra, x)
    }

    pub fn eval_mor(&self, f: &Mor) -> Mat {
        eval_mor(&self.cat, &self.algebra, f)
    }

    /// `E` of a morphism of `C/[X_R]`, through its canonical lift.
    pub fn eval_heart_mor(&self, f: &Mor) -> Result<Mat> {
        Ok(self.eval_mor(&self.heart().lift(f)?))
    }

    /// The quiver representation of `E(x)` for a parent object `x`.
    pub fn representation(&self, x: &Obj) -> Result<Representation> {
        module_to_representation(&self.algebra, &self.quiver, &self.eval_obj(x))
    }

    /// `F`: the heart of `(S, T)` to `C/[X_R]`, the identity on objects.
    pub fn functor_f(&self, h: &Mor) -> Result<Mor> {
        let lifted = self.heart_st.lift(h)?;
        for &s in lifted.dom().summands().iter().chain(lifted.cod().summands()) {
            if self.heart().quotient_id(s).is_none() {
                return Err(Error::Input(format!("{} vanishes in C/[X_R]", self.cat.name(s))));
            }
        }
        self.heart().project(&lifted)
    }

    pub fn fraction(&self, f: &Mor, r: &Mor) -> Result<LeftFraction> {
        if f.cod() != r.cod() {
            return Err(Error::Input("a fraction needs f and r with a common codomain".into()));
        }
        if !is_regular(self.heart().category(), r) {
            return Err(Error::Input("the denominator of a fraction must be regular".into()));
        }
        Ok(LeftFraction {
            f: f.clone(),
            r: r.clone(),
        })
    }

    /// `[f, 1]`.
    pub fn fraction_of(&self, f: &Mor) -> LeftFraction {
        LeftFraction {
            f: f.clone(),
            r: self.heart().category().identity(f.cod()),
        }
    }

    /// `[1, r] = r^-1`.
    pub fn fraction_inverse(&self, r: &Mor) -> Result<LeftFraction> {
        self.fraction(&self.heart().category().identity(r.cod()), r)
    }

    /// `E(r)^-1 E(f)`.
    pub fn fraction_model(&self, a: &LeftFraction) -> Result<Mat> {
        let er = self.eval_heart_mor(&a.r)?;
        let inv = er.inverse().ok_or_else(|| {
            Error::Internal(format!(
                "E sends the regular map {} -> {} to a singular matrix",
                self.heart().category().obj_name(a.r.dom()),
                self.heart().category().obj_name(a.r.cod())
            ))
        })?;
        inv.mul(&self.eval_heart_mor(&a.f)?)
    }

    pub fn fraction_eq(&self, a: &LeftFraction, b: &LeftFraction) -> Result<bool> {
        Ok(a.f.dom() == b.f.dom() && a.r.dom() == b.r.dom() && self.fraction_model(a)? == self.fraction_model(b)?)
    }

    /// `then ∘ first`: for `first = [f1, r1]` and `then = [f2, r2]` push out
    /// `r1` and `f2` to `u`, `v` and return `[u f1, v r2]`.
    pub fn fraction_compose(&self, first: &LeftFraction, then: &LeftFraction) -> Result<LeftFraction> {
        let h = self.heart().category();
        if first.r.dom() != then.f.dom() {
            return Err(Error::Input("fractions do not compose".into()));
        }
        let po = pushout(h, &first.r, &then.f)?;
        if !is_regular(h, &po.from_c) {
            return Err(Error::Internal("the pushout of a regular map is not regular".into()));
        }
        let out = LeftFraction {
            f: h.compose(&po.from_b, &first.f)?,
            r: h.compose(&po.from_c, &then.r)?,
        };
        let expected = self.fraction_model(then)?.mul(&self.fraction_model(first)?)?;
        if self.fraction_model(&out)? != expected {
            return Err(Error::Internal(
                "fraction composition disagrees with the module model".into(),
            ));
        }
        Ok(out)
    }

    /// A regular `r: x -> y` in `C/[X_R]` with `x ∈ C(R)`, found by search over
    /// objects of `C(R)` with the same `dim Hom(R_k, -)` as `y`.
    pub fn find_cover(&self, y: &Obj) -> Result<Cover> {
        let cat = &self.cat;
        let h = self.heart();
        let hc = h.category();
        let y_bar = h.project_obj(y);
        if y_bar.is_zero() {
            return Ok(Cover {
                y: y.clone(),
                x: Obj::zero(),
                r: hc.zero_mor(&Obj::zero(), &Obj::zero()),
            });
        }
        if self.c_r.contains_obj(y) {
            return Ok(Cover {
                y: y.clone(),
                x: y.clone(),
                r: hc.identity(&y_bar),
            });
        }
        let profile = |x: &Obj| -> Vec<usize> {
            self.r()
                .summands()
                .iter()
                .map(|&k| cat.hom_dim(&Obj::indec(k), x))
                .collect()
        };
        let target = profile(y);
        let pool: Vec<IndecId> = self.heart_st.kept().to_vec();
        let bound = cat
            .all_indecs()
            .map(|z| cat.hom_dim(&Obj::indec(z), y))
            .max()
            .unwrap_or(0)
            + 1;
        for x in multisets(&pool, bound) {
            if profile(&x) != target {
                continue;
            }
            let basis = cat.basis(&x, y);
            let images: Vec<Mat> = basis.iter().map(|b| self.eval_mor(b)).collect();
            let Some(coeffs) = invertible_combination(cat.field(), &images) else {
                continue;
            };
            let mut r = cat.zero_mor(&x, y);
            for (b, c) in basis.iter().zip(&coeffs) {
                r = cat.add(&r, &cat.scale(b, c))?;
            }
            let r_bar = h.project(&r)?;
            if is_regular(hc, &r_bar) {
                return Ok(Cover {
                    y: y.clone(),
                    x,
                    r: r_bar,
                });
            }
        }
        Err(Error::Internal(format!("no cover found for {}", cat.obj_name(y))))
    }

    /// Samples `f = g ∘ h: x -> w -> y` with `x ∈ C(R)`, `w ∈ add X_R`, and
    /// checks that each such `f` factors through `add Sigma R`.
    pub fn factor_through_s_check(&self, samples: usize, seed: u64) -> Result<FactorReport> {
        let cat = &self.cat;
        let w_spec = perp0(cat, &SubcatSpec::add_of(self.r()));
        let s_spec = shift(cat, &SubcatSpec::add_of(self.r()))?;
        let ideal_w = cat.ideal_generated_by(&w_spec);
        let ideal_s = cat.ideal_generated_by(&s_spec);
        let c_r: Vec<IndecId> = self.c_r.iter().collect();
        let ws: Vec<IndecId> = w_spec.iter().collect();
        let pool = crate::preab::default_coeff_pool(cat.field());
        let mut report = FactorReport {
            sampled: 0,
            in_w: 0,
            in_s: 0,
            failures: Vec::new(),
        };
        if c_r.is_empty() || ws.is_empty() {
            return Ok(report);
        }
        for i in 0..samples {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let pick = |rng: &mut ChaCha8Rng, from: &[IndecId]| -> Obj {
                let len = rng.gen_range(1..=2);
                (0..len).map(|_| from[rng.gen_range(0..from.len())]).collect()
            };
            let x = pick(&mut rng, &c_r);
            let w = pick(&mut rng, &ws);
            let all: Vec<IndecId> = cat.all_indecs().collect();
            let y = pick(&mut rng, &all);
            let mut random = |dom: &Obj, cod: &Obj| -> Result<Mor> {
                let d = cat.hom_dim(dom, cod);
                let coords = (0..d).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
                cat.mor(dom.clone(), cod.clone(), coords)
            };
            let h = random(&x, &w)?;
            let g = random(&w, &y)?;
            let f = cat.compose(&g, &h)?;
            report.sampled += 1;
            if !ideal_w.contains(cat, &f) {
                continue;
            }
            report.in_w += 1;
            if ideal_s.contains(cat, &f) {
                report.in_s += 1;
            } else {
                report.failures.push(f);
            }
        }
        Ok(report)
    }

    /// `G = E ∘ F` is full and faithful on the heart of `(S, T)`, and, given an
    /// inventory of indecomposable modules, dense.
    pub fn verify_equivalence(&self, inventory: Option<&[Representation]>) -> Result<EquivalenceReport> {
        let st = self.heart_st.category();
        let field = self.cat.field();
        let m = st.n();
        let modules: Vec<LambdaModule> = (0..m)
            .map(|q| self.eval_obj(&Obj::indec(self.heart_st.parent_id(q))))
            .collect();
        let mut pairs = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                let (mx, my) = (&modules[x], &modules[y]);
                let module_homs = hom_space(
                    &Quiver::with_loops(self.algebra.dim),
                    &mx.as_representation(field),
                    &my.as_representation(field),
                )?;
                let mut cols = Vec::new();
                for b in st.basis(&Obj::indec(x), &Obj::indec(y)) {
                    let image = self.eval_mor(&self.heart_st.lift(&b)?);
                    cols.push(image.entries().to_vec());
                }
                let rank = Mat::from_columns(field, mx.dim * my.dim, &cols)?.rank();
                pairs.push(PairCheck {
                    x,
                    y,
                    hom_heart: cols.len(),
                    hom_module: module_homs.len(),
                    rank,
                });
            }
        }
        let faithful = pairs.iter().all(|p| p.rank == p.hom_heart);
        let full = pairs.iter().all(|p| p.rank == p.hom_module);
        let (dense, density, inventory_count) = match inventory {
            None => (None, Vec::new(), None),
            Some(inv) => {
                let density = self.density(inv)?;
                let dense = density.iter().all(|(_, x)| x.is_some());
                (Some(dense), density, Some(inv.len()))
            }
        };
        Ok(EquivalenceReport {
            pairs,
            faithful,
            full,
            dense,
            density,
            heart_count: m,
            inventory_count,
        })
    }

    /// For each inventory module, a heart indecomposable `x` with `E(x)` isomorphic to it.
    fn density(&self, inventory: &[Representation]) -> Result<Vec<(String, Option<IndecId>)>> {
        let q = &self.quiver.quiver;
        if !self.quiver.has_no_relations(&self.algebra) {
            return Err(Error::OracleUnavailable(
                "the inventory describes path-algebra modules, but (End R)^op has relations".into(),
            ));
        }
        let st = &self.heart_st;
        let mut images = Vec::with_capacity(st.category().n());
        for qid in 0..st.category().n() {
            let rep = self.representation(&Obj::indec(st.parent_id(qid)))?;
            let rep = match inventory.first().map(|r| r.field) {
                Some(Field::Prime(p)) if rep.field != Field::Prime(p) => rep.reduce_mod(p).ok_or_else(|| {
                    Error::OracleUnavailable(format!("E({}) does not reduce mod {p}", st.category().name(qid)))
                })?,
                _ => rep,
            };
            if hom_space(q, &rep, &rep)?.len() != 1 {
                return Err(Error::Unsupported(format!(
                    "E({}) does not have a one-dimensional endomorphism ring",
                    st.category().name(qid)
                )));
            }
            images.push(rep);
        }
        let mut out = Vec::with_capacity(inventory.len());
        for module in inventory {
            let mut hit = None;
            for (qid, rep) in images.iter().enumerate() {
                if isomorphic_indecomposables(q, rep, module)? {
                    hit = Some(qid);
                    break;
                }
            }
            out.push((dimension_label(module), hit));
        }
        Ok(out)
    }
}

/// Nonempty multisets from `pool` with each element at most `bound` times,
/// by increasing size and then lexicographically.
fn multisets(pool: &[IndecId], bound: usize) -> Vec<Obj> {
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for _ in pool {
        all = all
            .into_iter()
            .flat_map(|m| {
                (0..=bound).map(move |k| {
                    let mut m = m.clone();
                    m.push(k);
                    m
                })
            })
            .collect();
    }
    let mut objs: Vec<Obj> = all
        .into_iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .flat_map(|(i, &k)| core::iter::repeat_n(pool[i], k))
                .collect::<Obj>()
        })
        .filter(|o| !o.is_zero())
        .collect();
    objs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.summands().cmp(b.summands())));
    objs
}

/// Coefficients making `sum c_i m_i` invertible: first the basis vectors, then
/// small integer combinations in a fixed order, up to a search bound.
fn invertible_combination(field: Field, mats: &[Mat]) -> Option<Vec<Scalar>> {
    let k = mats.len();
    if k == 0 {
        return None;
    }
    let combine = |c: &[Scalar]| -> Mat {
        let mut out = Mat::zeros(field, mats[0].rows(), mats[0].cols());
        for (m, s) in mats.iter().zip(c) {
            out = out.add(&m.scale(s)).expect("equal shapes");
        }
        out
    };
    for i in 0..k {
        let mut c = vec![field.zero(); k];
        c[i] = field.one();
        if combine(&c).inverse().is_some() {
            return Some(c);
        }
    }
    let base = 3usize;
    let mut tries = 0;
    let mut code = 1usize;
    while tries < INVERTIBLE_SEARCH_LIMIT {
        let mut c = Vec::with_capacity(k);
        let mut rest = code;
        for _ in 0..k {
            c.push(field.from_i64((rest % base) as i64 + 1));
            rest /= base;
        }
        if rest > 0 {
            return None;
        }
        if combine(&c).inverse().is_some() {
            return Some(c);
        }
        code += 1;
        tries += 1;
    }
    None
}
