//! Finitely presented k-linear Krull-Schmidt categories.
//!
//! A [`PresentedCategory`] lists its indecomposables, the dimension of every
//! Hom space between them, and structure constants for composition in fixed
//! bases. Objects are finite direct sums ([`Obj`]) and morphisms are block
//! coordinate vectors ([`Mor`]).

mod ideal;
mod object;
mod presented;
mod subquotient;
mod validate;

pub use ideal::{Ideal, SubcatSpec};
pub use object::{IndecId, Mor, Obj};
pub use presented::{FunctorData, PresentedCategory, StructureConstant};
pub use subquotient::Subquotient;
pub use validate::{ValidationFailure, ValidationReport};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Field;

/// `D[z][x] = dim Hom(z, x)` together with its invertibility over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDimMatrix {
    pub d: Vec<Vec<i64>>,
    pub invertible: bool,
}

impl PresentedCategory {
    pub fn homdim_matrix(&self) -> HomDimMatrix {
        let d: Vec<Vec<i64>> = self
            .all_indecs()
            .map(|z| self.all_indecs().map(|x| self.homdim(z, x) as i64).collect())
            .collect();
        let invertible = self.n() == 0 || dim_matrix(&d).rank() == self.n();
        HomDimMatrix { d, invertible }
    }

    /// The object `X` with `dim Hom(z, X) = v[z]` for every indecomposable `z`,
    /// if it exists. Needs an invertible Hom-dimension matrix.
    pub fn reconstruct_object(&self, v: &[i64]) -> Result<Option<Obj>> {
        let n = self.n();
        if v.len() != n {
            return Err(Error::Dimension(format!(
                "{} dimensions for {n} indecomposables",
                v.len()
            )));
        }
        let hd = self.homdim_matrix();
        if !hd.invertible {
            return Err(Error::OracleUnavailable(
                "Hom-dimension matrix is singular; objects are not determined by Hom dimensions".into(),
            ));
        }
        let q = Field::Rational;
        let rhs = Mat::column_vector(q, &v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>())?;
        let m = dim_matrix(&hd.d)
            .solve(&rhs)?
            .ok_or_else(|| Error::Internal("invertible system without a solution".into()))?;
        let mut summands = Vec::new();
        for x in 0..n {
            let e = m.get(x, 0);
            if !e.is_nonnegative_integer() {
                return Ok(None);
            }
            let k = e.to_i64().expect("integer");
            summands.extend(core::iter::repeat_n(x, k as usize));
        }
        Ok(Some(Obj::from_summands(summands)))
    }

    /// `(dim Hom(z, x))_z` for every indecomposable `z`.
    pub fn hom_profile(&self, x: &Obj) -> Vec<i64> {
        self.all_indecs()
            .map(|z| self.hom_dim(&Obj::indec(z), x) as i64)
            .collect()
    }
}

fn dim_matrix(d: &[Vec<i64>]) -> Mat {
    let rows: Vec<&[i64]> = d.iter().map(Vec::as_slice).collect();
    Mat::from_i64_rows(Field::Rational, &rows)
}
