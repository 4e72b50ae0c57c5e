use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

use super::algebra::{FiniteHomAlgebra, Vector};
use super::bracket::BracketAlgebra;
use super::HomAlgError;

/// On-disk form of an algebra. Scalars are strings in the rule-file scalar
/// syntax, e.g. `"(1+q)/2"`. With `bracket: true`, only the entries of `mult`
/// above the diagonal are required; the rest may be `[]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub mult: Vec<Vec<Vec<String>>>,
    pub alpha: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub bracket: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A parsed algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedAlgebra {
    Plain(FiniteHomAlgebra),
    Bracket(BracketAlgebra),
}

impl LoadedAlgebra {
    pub fn algebra(&self) -> &FiniteHomAlgebra {
        match self {
            LoadedAlgebra::Plain(a) => a,
            LoadedAlgebra::Bracket(b) => b.algebra(),
        }
    }
}

fn scalars(v: &[String]) -> Result<Vector, HomAlgError> {
    v.iter()
        .map(|s| Scalar::parse(s).map_err(HomAlgError::from))
        .collect()
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, HomAlgError> {
        let f: AlgebraFile =
            serde_json::from_str(text).map_err(|e| HomAlgError::Json(e.to_string()))?;
        if f.mult.len() != f.dim || f.alpha.len() != f.dim {
            return Err(HomAlgError::Shape(format!(
                "tables do not match dim {}",
                f.dim
            )));
        }
        if let Some(names) = &f.names {
            if names.len() != f.dim {
                return Err(HomAlgError::Shape(format!(
                    "{} names for dim {}",
                    names.len(),
                    f.dim
                )));
            }
        }
        Ok(f)
    }

    pub fn load(&self) -> Result<LoadedAlgebra, HomAlgError> {
        let mult = self
            .mult
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| scalars(v))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let alpha = self
            .alpha
            .iter()
            .map(|r| scalars(r))
            .collect::<Result<Vec<_>, _>>()?;
        if self.bracket {
            Ok(LoadedAlgebra::Bracket(BracketAlgebra::from_upper(
                mult, alpha,
            )?))
        } else {
            Ok(LoadedAlgebra::Plain(FiniteHomAlgebra::new(mult, alpha)?))
        }
    }

    pub fn from_algebra(a: &FiniteHomAlgebra) -> Self {
        let strings = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>();
        AlgebraFile {
            dim: a.dim(),
            mult: a
                .mult_table()
                .iter()
                .map(|row| row.iter().map(|v| strings(v)).collect())
                .collect(),
            alpha: a.alpha_matrix().iter().map(|r| strings(r)).collect(),
            bracket: false,
            names: None,
        }
    }

    /// Stores only the entries above the diagonal.
    pub fn from_bracket(b: &BracketAlgebra) -> Self {
        let mut f = Self::from_algebra(b.algebra());
        for (i, row) in f.mult.iter_mut().enumerate() {
            for v in row.iter_mut().take(i + 1) {
                v.clear();
            }
        }
        f.bracket = true;
        f
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }
}
