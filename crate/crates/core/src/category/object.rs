use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Index of an indecomposable object in a [`super::PresentedCategory`].
pub type IndecId = usize;

/// A finite direct sum of indecomposables.
///
/// Summands are kept in the order given; this order fixes the block layout of
/// morphisms. Two objects are isomorphic iff their multisets agree
/// ([`Obj::is_iso`]).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj {
    summands: Vec<IndecId>,
}

impl Obj {
    pub fn zero() -> Obj {
        Obj::default()
    }

    pub fn indec(id: IndecId) -> Obj {
        Obj {
            summands: alloc::vec![id],
        }
    }

    pub fn from_summands(summands: Vec<IndecId>) -> Obj {
        Obj { summands }
    }

    /// Sorted by id, each id repeated by its multiplicity.
    pub fn from_multiplicities(mult: &BTreeMap<IndecId, usize>) -> Obj {
        Obj {
            summands: mult.iter().flat_map(|(&id, &m)| core::iter::repeat_n(id, m)).collect(),
        }
    }

    pub fn summands(&self) -> &[IndecId] {
        &self.summands
    }

    /// Number of summands; the zero object has none, see [`Obj::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn multiplicities(&self) -> BTreeMap<IndecId, usize> {
        let mut m = BTreeMap::new();
        for &s in &self.summands {
            *m.entry(s).or_insert(0) += 1;
        }
        m
    }

    pub fn support(&self) -> BTreeSet<IndecId> {
        self.summands.iter().copied().collect()
    }

    pub fn direct_sum(&self, other: &Obj) -> Obj {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        Obj { summands }
    }

    pub fn is_iso(&self, other: &Obj) -> bool {
        self.multiplicities() == other.multiplicities()
    }

    pub fn sorted(&self) -> Obj {
        let mut summands = self.summands.clone();
        summands.sort_unstable();
        Obj { summands }
    }

    /// Applies an id relabelling to every summand.
    pub fn map(&self, f: impl Fn(IndecId) -> IndecId) -> Obj {
        Obj {
            summands: self.summands.iter().map(|&s| f(s)).collect(),
        }
    }
}

impl FromIterator<IndecId> for Obj {
    fn from_iter<T: IntoIterator<Item = IndecId>>(iter: T) -> Obj {
        Obj {
            summands: iter.into_iter().collect(),
        }
    }
}

/// A morphism between direct sums, stored as coordinates in the fixed Hom bases.
///
/// Coordinates are laid out block by block: for each domain summand `p`
/// (outer), each codomain summand `q`, the coordinates of the `(p, q)`
/// component in the basis of `Hom(dom[p], cod[q])`. With this layout a
/// morphism out of a single indecomposable `z` has exactly the coordinates of
/// the corresponding element of `Hom(z, cod)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub(crate) dom: Obj,
    pub(crate) cod: Obj,
    pub(crate) coords: Vec<Scalar>,
}

impl Mor {
    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}
