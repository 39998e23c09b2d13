//! Algebra interchange format:
//!
//! ```json
//! {"field": "rational", "basis": ["1", "x1", "x1^2"],
//!  "table": [[["1/1","0/1","0/1"], ...], ...]}
//! ```
//!
//! `field` is `"rational"` or `{"prime": p}`; `table[i][j]` holds the
//! coordinates of `basis[i] * basis[j]`.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, ParseError};
use crate::field::{is_supported_prime, parse_field_element, Field, Fp, GroundField, Scalar};
use crate::linalg::SparseVec;

use super::{FiniteLocalAlgebra, MonomialLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { prime: u64 },
}

impl From<GroundField> for FieldSpec {
    fn from(g: GroundField) -> Self {
        match g {
            GroundField::Rational => FieldSpec::Named("rational".into()),
            GroundField::Prime(p) => FieldSpec::Prime { prime: p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub field: FieldSpec,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
}

/// An imported algebra over whichever field the document names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyAlgebra {
    Rational(FiniteLocalAlgebra<Scalar>),
    Prime(FiniteLocalAlgebra<Fp>),
}

impl AnyAlgebra {
    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Rational(a) => a.dim(),
            AnyAlgebra::Prime(a) => a.dim(),
        }
    }
}

impl<F: Field> FiniteLocalAlgebra<F> {
    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            field: self.ground_field().into(),
            basis: self.labels.iter().map(|l| l.to_string()).collect(),
            table: self
                .table_dense()
                .into_iter()
                .map(|row| row.into_iter().map(|v| v.into_iter().map(|c| c.to_fraction_string()).collect()).collect())
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("algebra json serializes")
    }

    fn from_document(doc: &AlgebraJson, ctx: F::Ctx) -> Result<Self, AlgebraError> {
        let d = doc.basis.len();
        let labels = doc.basis.iter().map(|s| s.parse::<MonomialLabel>()).collect::<Result<Vec<_>, _>>()?;
        if doc.table.len() != d {
            return Err(AlgebraError::Invariant(format!("table has {} rows, basis has {d} elements", doc.table.len())));
        }
        let mut products = Vec::with_capacity(d * d);
        for (i, row) in doc.table.iter().enumerate() {
            if row.len() != d {
                return Err(AlgebraError::Invariant(format!("table row {i} has {} entries", row.len())));
            }
            for (j, coords) in row.iter().enumerate() {
                if coords.len() != d {
                    return Err(AlgebraError::Invariant(format!("product ({i}, {j}) has {} coordinates", coords.len())));
                }
                let values = coords.iter().map(|c| parse_field_element::<F>(c, ctx)).collect::<Result<Vec<_>, _>>()?;
                products.push(SparseVec::from_dense(&values));
            }
        }
        FiniteLocalAlgebra::from_products(ctx, labels, products)
    }
}

/// Parses and validates an algebra document.
pub fn import_algebra(text: &str) -> Result<AnyAlgebra, AlgebraError> {
    let doc: AlgebraJson = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    match &doc.field {
        FieldSpec::Named(name) if name == "rational" => Ok(AnyAlgebra::Rational(FiniteLocalAlgebra::from_document(&doc, ())?)),
        FieldSpec::Named(name) => Err(ParseError::Json(format!("unknown field {name:?}")).into()),
        FieldSpec::Prime { prime } if is_supported_prime(*prime) => Ok(AnyAlgebra::Prime(FiniteLocalAlgebra::from_document(&doc, *prime)?)),
        FieldSpec::Prime { prime } => Err(ParseError::Json(format!("unsupported prime {prime}")).into()),
    }
}
