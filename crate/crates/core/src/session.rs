//! JSON-loadable session parameters and model construction for the CLI.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    BraidingMatrix, Case, DeformationParams, Model, RealizationConstraints,
};
use crate::scalar::parse_scalar;
use crate::{Error, Result};

fn default_q_exp() -> i64 {
    1
}

fn default_lambda() -> [String; 5] {
    std::array::from_fn(|_| "0".to_string())
}

/// Output serialization formats for table artifacts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Md,
}

/// Parameters of a computation session. Scalars are expressions in the
/// primitive root `q`, e.g. `"q^2/3 - q/3"`; see [`parse_scalar`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    /// Order of the root of unity `q` (`N >= 3`).
    pub n: u32,
    /// `q = zeta_N^{q_exp}`; must stay primitive.
    #[serde(default = "default_q_exp")]
    pub q_exp: i64,
    /// `q12 = zeta_N^{q12_exp}`; `q21` is fixed by `q12 q21 = q^{-1}`.
    pub q12_exp: i64,
    /// `"generic"` or `"atypical"`.
    pub case: String,
    /// Deformation parameters `[l1, l2, l12, l112, l122]` as scalar
    /// expressions over `Q(zeta_L)`.
    #[serde(default = "default_lambda")]
    pub lambda: [String; 5],
    /// Realization constraint flags; omitted flags default to permitted.
    #[serde(default)]
    pub realization: Option<RealizationFlags>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// Which weight characters are trivialized by the chosen realization;
/// each flag permits the corresponding deformation parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationFlags {
    pub chi1_n_trivial: bool,
    pub chi2_n_trivial: bool,
    pub chi1chi2_n_trivial: bool,
    pub chi1sq_chi2_trivial: bool,
    pub chi1_chi2sq_trivial: bool,
}

impl SessionConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization")
    }

    pub fn case(&self) -> Result<Case> {
        match self.case.as_str() {
            "generic" => Ok(Case::Generic),
            "atypical" => Ok(Case::Atypical),
            other => Err(Error::InvalidParams(format!(
                "unknown case {other:?}; expected \"generic\" or \"atypical\""
            ))),
        }
    }

    /// Validates the parameters and assembles the [`Model`].
    pub fn build_model(&self) -> Result<Model> {
        let case = self.case()?;
        let braiding = BraidingMatrix::from_exponents(self.n, self.q_exp, self.q12_exp)?;
        let order = braiding.field_order();
        let mut lambda = DeformationParams::zero(order);
        for (slot, expr) in [
            &mut lambda.l1,
            &mut lambda.l2,
            &mut lambda.l12,
            &mut lambda.l112,
            &mut lambda.l122,
        ]
        .into_iter()
        .zip(self.lambda.iter())
        {
            *slot = parse_scalar(order, expr)?;
        }
        let constraints = match self.realization {
            Some(f) => RealizationConstraints {
                chi1_n_trivial: f.chi1_n_trivial,
                chi2_n_trivial: f.chi2_n_trivial,
                chi1chi2_n_trivial: f.chi1chi2_n_trivial,
                chi1sq_chi2_trivial: f.chi1sq_chi2_trivial,
                chi1_chi2sq_trivial: f.chi1_chi2sq_trivial,
                weight_modulus: self.n,
            },
            None => RealizationConstraints::all_permitted(self.n),
        };
        Model::new(braiding, case, lambda, constraints)
    }
}
