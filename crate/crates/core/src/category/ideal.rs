use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

use super::object::{IndecId, Mor, Obj};
use super::presented::PresentedCategory;

/// An additive subcategory, named by the indecomposables it contains.
/// An object belongs iff every summand does.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubcatSpec {
    members: BTreeSet<IndecId>,
}

impl SubcatSpec {
    pub fn empty() -> SubcatSpec {
        SubcatSpec::default()
    }

    pub fn all(n: usize) -> SubcatSpec {
        (0..n).collect()
    }

    /// `add x`.
    pub fn add_of(x: &Obj) -> SubcatSpec {
        SubcatSpec { members: x.support() }
    }

    pub fn contains(&self, i: IndecId) -> bool {
        self.members.contains(&i)
    }

    pub fn contains_obj(&self, x: &Obj) -> bool {
        x.summands().iter().all(|s| self.members.contains(s))
    }

    pub fn members(&self) -> &BTreeSet<IndecId> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = IndecId> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn union(&self, other: &SubcatSpec) -> SubcatSpec {
        self.members.union(&other.members).copied().collect()
    }

    pub fn intersection(&self, other: &SubcatSpec) -> SubcatSpec {
        self.members.intersection(&other.members).copied().collect()
    }

    pub fn is_subset(&self, other: &SubcatSpec) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Image under an indecomposable permutation (e.g. a functor's).
    pub fn map(&self, perm: &[IndecId]) -> SubcatSpec {
        self.iter().map(|i| perm[i]).collect()
    }

    /// The sum of all members, each once.
    pub fn as_obj(&self) -> Obj {
        self.iter().collect()
    }
}

impl FromIterator<IndecId> for SubcatSpec {
    fn from_iter<T: IntoIterator<Item = IndecId>>(iter: T) -> SubcatSpec {
        SubcatSpec {
            members: iter.into_iter().collect(),
        }
    }
}

/// A two-sided ideal, stored as a basis (columns) of a subspace of each `Hom(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    n: usize,
    spaces: Vec<Mat>,
}

impl Ideal {
    pub fn zero(c: &PresentedCategory) -> Ideal {
        Ideal::from_fn(c, |i, j| Mat::zeros(c.field(), c.homdim(i, j), 0))
    }

    pub fn full(c: &PresentedCategory) -> Ideal {
        Ideal::from_fn(c, |i, j| Mat::identity(c.field(), c.homdim(i, j)))
    }

    /// Builds an ideal from spanning sets; the spans are reduced to bases.
    pub fn from_fn(c: &PresentedCategory, mut span: impl FnMut(IndecId, IndecId) -> Mat) -> Ideal {
        let n = c.n();
        let mut spaces = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                spaces.push(span(i, j).column_basis());
            }
        }
        Ideal { n, spaces }
    }

    pub fn space(&self, i: IndecId, j: IndecId) -> &Mat {
        &self.spaces[i * self.n + j]
    }

    pub fn dim(&self, i: IndecId, j: IndecId) -> usize {
        self.space(i, j).cols()
    }

    pub fn contains_coords(&self, i: IndecId, j: IndecId, v: &[Scalar]) -> bool {
        let s = self.space(i, j);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let rhs = Mat::column_vector(s.field(), v).expect("coordinates over the ideal's field");
        s.solve(&rhs).expect("shapes agree").is_some()
    }

    /// Whether every block of `f` lies in the ideal.
    pub fn contains(&self, c: &PresentedCategory, f: &Mor) -> bool {
        let (x, y) = (f.dom(), f.cod());
        (0..x.len())
            .all(|p| (0..y.len()).all(|q| self.contains_coords(x.summands()[p], y.summands()[q], c.block(f, p, q))))
    }

    /// Indecomposables whose identity lies in the ideal.
    pub fn killed_objects(&self, c: &PresentedCategory) -> SubcatSpec {
        c.all_indecs()
            .filter(|&i| self.contains_coords(i, i, c.identity_coords(i)))
            .collect()
    }

    /// Stability under pre- and post-composition with every basis morphism.
    pub fn is_two_sided(&self, c: &PresentedCategory) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let s = self.space(i, j);
                for col in s.columns() {
                    for k in 0..n {
                        for b in 0..c.homdim(j, k) {
                            let g = c.basis_mor(j, k, b);
                            let h = c.compose_indec(i, j, k, &col, g.coords());
                            if !self.contains_coords(i, k, &h) {
                                return false;
                            }
                        }
                        for a in 0..c.homdim(k, i) {
                            let e = c.basis_mor(k, i, a);
                            let h = c.compose_indec(k, i, j, e.coords(), &col);
                            if !self.contains_coords(k, j, &h) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.cols() == 0 || b.spans(a).expect("same shapes"))
    }
}

impl PresentedCategory {
    /// `[A]`: morphisms factoring through an object of `add A`.
    pub fn ideal_generated_by(&self, a: &SubcatSpec) -> Ideal {
        Ideal::from_fn(self, |i, j| {
            let mut cols = Vec::new();
            for m in a.iter() {
                for fa in 0..self.homdim(i, m) {
                    let f = self.basis_mor(i, m, fa);
                    for gb in 0..self.homdim(m, j) {
                        let g = self.basis_mor(m, j, gb);
                        cols.push(self.compose_indec(i, m, j, f.coords(), g.coords()));
                    }
                }
            }
            Mat::from_columns(self.field(), self.homdim(i, j), &cols).expect("column lengths agree")
        })
    }

    /// Span of `g ∘ f` with `f ∈ first`, `g ∈ then`.
    pub fn compose_ideals(&self, first: &Ideal, then: &Ideal) -> Ideal {
        Ideal::from_fn(self, |i, j| {
            let mut cols = Vec::new();
            for m in self.all_indecs() {
                let fs = first.space(i, m).columns();
                let gs = then.space(m, j).columns();
                for f in &fs {
                    for g in &gs {
                        cols.push(self.compose_indec(i, m, j, f, g));
                    }
                }
            }
            Mat::from_columns(self.field(), self.homdim(i, j), &cols).expect("column lengths agree")
        })
    }

    /// The Jacobson radical; requires `End(i) = k` throughout.
    pub fn radical(&self) -> Result<Ideal> {
        self.check_local_endomorphisms()?;
        Ok(Ideal::from_fn(self, |i, j| {
            if i == j {
                Mat::zeros(self.field(), self.homdim(i, j), 0)
            } else {
                Mat::identity(self.field(), self.homdim(i, j))
            }
        }))
    }

    /// `rad^k` for `k >= 1`; `rad^0` is the full ideal.
    pub fn rad_power(&self, k: usize) -> Result<Ideal> {
        if k == 0 {
            return Ok(Ideal::full(self));
        }
        let rad = self.radical()?;
        let mut acc = rad.clone();
        for _ in 1..k {
            acc = self.compose_ideals(&acc, &rad);
        }
        Ok(acc)
    }

    /// Number of irreducible arrows `i -> j`: `dim rad(i,j) / rad²(i,j)`.
    pub fn arrow_counts(&self) -> Result<Vec<Vec<usize>>> {
        let rad = self.radical()?;
        let rad2 = self.compose_ideals(&rad, &rad);
        Ok(self
            .all_indecs()
            .map(|i| self.all_indecs().map(|j| rad.dim(i, j) - rad2.dim(i, j)).collect())
            .collect())
    }

    /// Rejects ideals whose spaces do not fit this category.
    pub(crate) fn check_ideal_shape(&self, ideal: &Ideal) -> Result<()> {
        if ideal.n != self.n() {
            return Err(Error::Dimension(format!(
                "ideal over {} indecomposables used with a category of {}",
                ideal.n,
                self.n()
            )));
        }
        for i in self.all_indecs() {
            for j in self.all_indecs() {
                if ideal.space(i, j).rows() != self.homdim(i, j) {
                    return Err(Error::Dimension(format!("ideal space ({i},{j}) has the wrong ambient")));
                }
            }
        }
        Ok(())
    }
}
