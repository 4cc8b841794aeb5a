use std::collections::HashSet;
use std::path::Path;

use clap::Args;
use fcohom::polyalg::{default_var_names, parse_poly, Polynomial, WeightSystem};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Problem description shared by every subcommand. Read from a JSON file
/// and overridden field by field from the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_min: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<i64>,
    #[serde(default, alias = "betti_M", skip_serializing_if = "Option::is_none")]
    pub betti_m: Option<Vec<usize>>,
    #[serde(default, alias = "betti_S", skip_serializing_if = "Option::is_none")]
    pub betti_s: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
}

#[derive(Args, Clone, Debug, Default)]
pub struct ProblemArgs {
    /// Variable names, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Positive integer weights, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<u32>>,
    /// Polynomial expression, e.g. "x^3 + y^3".
    #[arg(long)]
    pub poly: Option<String>,
    /// Twist parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<i64>,
    /// Form degree.
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest weighted degree examined.
    #[arg(long = "max-degree", allow_hyphen_values = true)]
    pub max_degree: Option<i64>,
    /// Pole order.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i64>,
    #[arg(long = "p-min", allow_hyphen_values = true)]
    pub p_min: Option<i64>,
    #[arg(long = "p-max", allow_hyphen_values = true)]
    pub p_max: Option<i64>,
    /// Betti numbers of the manifold, comma separated.
    #[arg(long = "betti-m", value_delimiter = ',')]
    pub betti_m: Option<Vec<usize>>,
    /// Betti numbers of the zero set, comma separated.
    #[arg(long = "betti-s", value_delimiter = ',')]
    pub betti_s: Option<Vec<usize>>,
    /// A top-degree form, e.g. "x*y*dx^dy".
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random instances per identity in `verify`.
    #[arg(long)]
    pub instances: Option<usize>,
}

impl ProblemSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("problem file {}: {e}", path.display())))
    }

    pub fn apply(&mut self, a: ProblemArgs) {
        macro_rules! take {
            ($($f:ident),*) => { $( if a.$f.is_some() { self.$f = a.$f; } )* };
        }
        take!(vars, weights, poly, p, k, max_degree, q, p_min, p_max, betti_m, betti_s, eta, seed, instances);
    }
}

/// Variables, weights and, when present, the parsed polynomial.
#[derive(Clone, Debug)]
pub struct Problem {
    pub vars: Vec<String>,
    pub weights: WeightSystem,
    pub f: Option<Polynomial>,
}

impl Problem {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn poly(&self) -> Result<&Polynomial, CliError> {
        self.f.as_ref().ok_or_else(|| CliError::invalid("missing field `poly`"))
    }
}

fn valid_name(v: &str) -> bool {
    let mut chars = v.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && !v.starts_with('d')
}

/// Validates the spec and fills in `vars` and `weights`.
pub fn resolve(spec: &mut ProblemSpec) -> Result<Problem, CliError> {
    let vars = match (&spec.vars, &spec.weights) {
        (Some(v), _) => v.clone(),
        (None, Some(w)) => default_var_names(w.len()),
        (None, None) if spec.poly.is_some() => {
            return Err(CliError::invalid("give `vars` or `weights` alongside `poly`"));
        }
        (None, None) => Vec::new(),
    };
    let mut seen = HashSet::new();
    for v in &vars {
        if !valid_name(v) {
            return Err(CliError::invalid(format!("invalid variable name {v:?} (names must be identifiers not starting with 'd')")));
        }
        if !seen.insert(v) {
            return Err(CliError::invalid(format!("duplicate variable {v:?}")));
        }
    }
    let weights = spec.weights.clone().unwrap_or_else(|| vec![1; vars.len()]);
    if weights.len() != vars.len() {
        return Err(CliError::invalid(format!("{} weights for {} variables", weights.len(), vars.len())));
    }
    let ws = if vars.is_empty() {
        WeightSystem::standard(0)
    } else {
        WeightSystem::new(weights.clone()).map_err(|e| CliError::invalid(e.to_string()))?
    };
    let f = match &spec.poly {
        Some(text) => {
            if vars.is_empty() {
                return Err(CliError::invalid("no variables declared"));
            }
            Some(parse_poly(text, &vars).map_err(|e| CliError::parse("poly", text, e))?)
        }
        None => None,
    };
    if !vars.is_empty() {
        spec.vars = Some(vars.clone());
        spec.weights = Some(weights);
    }
    Ok(Problem { vars, weights: ws, f })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let mut spec: ProblemSpec = serde_json::from_str(r#"{"vars":["x","y"],"poly":"x^2+y^2","p":1}"#).unwrap();
        spec.apply(ProblemArgs { p: Some(-2), ..Default::default() });
        assert_eq!(spec.p, Some(-2));
        assert_eq!(spec.poly.as_deref(), Some("x^2+y^2"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<ProblemSpec>(r#"{"polynomial":"x"}"#).is_err());
    }

    #[test]
    fn resolution_checks_names_and_weights() {
        let mut spec = ProblemSpec { vars: Some(vec!["x".into(), "x".into()]), ..Default::default() };
        assert_eq!(resolve(&mut spec).unwrap_err().code, "INVALID_INPUT");
        let mut spec = ProblemSpec { vars: Some(vec!["x".into()]), weights: Some(vec![1, 2]), ..Default::default() };
        assert_eq!(resolve(&mut spec).unwrap_err().code, "INVALID_INPUT");
        let mut spec = ProblemSpec { weights: Some(vec![3, 2]), poly: Some("x^2 + y^3".into()), ..Default::default() };
        let problem = resolve(&mut spec).unwrap();
        assert_eq!(problem.vars, vec!["x", "y"]);
        assert_eq!(spec.vars, Some(vec!["x".to_string(), "y".to_string()]));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let mut spec = ProblemSpec { vars: Some(vec!["x".into()]), poly: Some("x^2 + @".into()), ..Default::default() };
        let err = resolve(&mut spec).unwrap_err();
        assert_eq!(err.code, "PARSE_ERROR");
        assert_eq!(err.offset, Some(6));
    }
}
