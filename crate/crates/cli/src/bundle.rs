//! The category bundle: a JSON image of a [`PresentedCategory`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use twinheart_core::category::{FunctorData, PresentedCategory, StructureConstant};
use twinheart_core::matrix::Mat;
use twinheart_core::scalar::{Field, Scalar};
use twinheart_core::{Error, Result};

pub const BUNDLE_SCHEMA: u32 = 1;

/// Rationals travel as `"p/q"` strings, residues as integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Residue(i64),
    Text(String),
}

impl ScalarRepr {
    pub fn of(s: &Scalar) -> ScalarRepr {
        match s {
            Scalar::Prime { value, .. } => ScalarRepr::Residue(i64::from(*value)),
            Scalar::Rational(_) => ScalarRepr::Text(s.to_string()),
        }
    }

    pub fn to_scalar(&self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (ScalarRepr::Residue(v), Field::Prime(_)) => Ok(field.from_i64(*v)),
            (ScalarRepr::Text(t), Field::Rational) => field.parse_scalar(t),
            (ScalarRepr::Residue(v), Field::Rational) => Ok(field.from_i64(*v)),
            (ScalarRepr::Text(t), Field::Prime(_)) => Err(Error::Input(format!(
                "scalar {t:?} is a string but the field is {}",
                field.tag()
            ))),
        }
    }
}

pub fn scalars(v: &[Scalar]) -> Vec<ScalarRepr> {
    v.iter().map(ScalarRepr::of).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndecEntry {
    pub id: usize,
    pub name: String,
}

/// One nonzero structure constant: `(i, j, k, [a, b, c], value)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompEntry(pub usize, pub usize, pub usize, pub [usize; 3], pub ScalarRepr);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorEntry {
    pub perm: Vec<usize>,
    /// Row-major entries of the matrix on `Hom(i, j)`, listed over `i * n + j`.
    pub matrices: Vec<Vec<ScalarRepr>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub schema_version: u32,
    pub field: String,
    pub indecs: Vec<IndecEntry>,
    pub homdim: Vec<Vec<usize>>,
    pub comp: Vec<CompEntry>,
    pub id: Vec<Vec<ScalarRepr>>,
    pub functors: BTreeMap<String, FunctorEntry>,
}

impl Bundle {
    pub fn from_category(cat: &PresentedCategory) -> Bundle {
        let indecs = cat
            .all_indecs()
            .map(|i| IndecEntry {
                id: i,
                name: cat.name(i).to_string(),
            })
            .collect();
        let homdim = cat
            .all_indecs()
            .map(|i| cat.all_indecs().map(|j| cat.homdim(i, j)).collect())
            .collect();
        let comp = cat
            .constants()
            .into_iter()
            .map(|s| CompEntry(s.i, s.j, s.k, [s.a, s.b, s.c], ScalarRepr::of(&s.value)))
            .collect();
        let id = cat.all_indecs().map(|i| scalars(cat.identity_coords(i))).collect();
        let functors = cat
            .functors()
            .iter()
            .map(|(name, data)| {
                let entry = FunctorEntry {
                    perm: data.perm.clone(),
                    matrices: data.matrices.iter().map(|m| scalars(m.entries())).collect(),
                };
                (name.clone(), entry)
            })
            .collect();
        Bundle {
            schema_version: BUNDLE_SCHEMA,
            field: cat.field().tag(),
            indecs,
            homdim,
            comp,
            id,
            functors,
        }
    }

    pub fn to_category(&self) -> Result<PresentedCategory> {
        if self.schema_version != BUNDLE_SCHEMA {
            return Err(Error::Input(format!(
                "unsupported bundle schema {}",
                self.schema_version
            )));
        }
        let field = Field::parse_tag(&self.field)?;
        let n = self.indecs.len();
        for (pos, e) in self.indecs.iter().enumerate() {
            if e.id != pos {
                return Err(Error::Input(format!(
                    "indecomposable {} listed at position {pos}",
                    e.id
                )));
            }
        }
        if self.homdim.len() != n || self.homdim.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("homdim must be {n}x{n}")));
        }
        let names = self.indecs.iter().map(|e| e.name.clone()).collect();
        let homdim: Vec<usize> = self.homdim.iter().flatten().copied().collect();
        let id = self
            .id
            .iter()
            .map(|v| v.iter().map(|s| s.to_scalar(field)).collect())
            .collect::<Result<Vec<Vec<Scalar>>>>()?;
        let mut cat = PresentedCategory::new(field, names, homdim.clone(), id)?;
        for CompEntry(i, j, k, [a, b, c], value) in &self.comp {
            let value = value.to_scalar(field)?;
            cat.set_constant(StructureConstant {
                i: *i,
                j: *j,
                k: *k,
                a: *a,
                b: *b,
                c: *c,
                value,
            })?;
        }
        for (name, entry) in &self.functors {
            if entry.perm.len() != n || entry.matrices.len() != n * n {
                return Err(Error::Dimension(format!("functor {name} has wrong arity")));
            }
            if entry.perm.iter().any(|&p| p >= n) {
                return Err(Error::Input(format!("functor {name} maps outside the category")));
            }
            let mut matrices = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let rows = homdim[entry.perm[i] * n + entry.perm[j]];
                    let cols = homdim[i * n + j];
                    let data = entry.matrices[i * n + j]
                        .iter()
                        .map(|s| s.to_scalar(field))
                        .collect::<Result<Vec<_>>>()?;
                    matrices.push(Mat::new(field, rows, cols, data)?);
                }
            }
            let data = FunctorData {
                perm: entry.perm.clone(),
                matrices,
            };
            cat.insert_functor(name, data)?;
        }
        Ok(cat)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("bundles serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Bundle> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed bundle: {e}")))
    }
}
