use fcohom::cohomology::CohomologyError;
use fcohom::forms::FormError;
use fcohom::groebner::GroebnerError;
use fcohom::polyalg::{ParseError, PolyError};
use fcohom::spectral::SpectralError;
use serde::Serialize;

/// Exit status for input that could not be read, parsed or validated.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for mathematical precondition failures and failed checks.
pub const EXIT_MATH: i32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<&'static str>,
    /// Byte offset into the offending field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
    #[serde(skip)]
    pub source_text: Option<String>,
    #[serde(skip)]
    pub exit: i32,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>, exit: i32) -> Self {
        CliError { code, message: message.into(), field: None, offset: None, source_text: None, exit }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new("INVALID_INPUT", message, EXIT_INPUT)
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::new("IO_ERROR", message, EXIT_INPUT)
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Self::new("PRECONDITION", message, EXIT_MATH)
    }

    pub fn parse(field: &'static str, text: &str, e: ParseError) -> Self {
        CliError {
            code: "PARSE_ERROR",
            message: format!("{field}: {} at offset {}", e.kind, e.offset),
            field: Some(field),
            offset: Some(e.offset),
            source_text: Some(text.to_string()),
            exit: EXIT_INPUT,
        }
    }

    /// Human-readable diagnostic with a caret under the offending position.
    pub fn render(&self) -> String {
        let mut out = format!("error[{}]: {}", self.code, self.message);
        if let (Some(text), Some(offset)) = (&self.source_text, self.offset) {
            let col = text[..offset.min(text.len())].chars().count();
            out.push_str(&format!("\n  {text}\n  {}^", " ".repeat(col)));
        }
        out
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse(p) => CliError::new("PARSE_ERROR", p.kind.to_string(), EXIT_INPUT),
            PolyError::InvalidWeights(m) => CliError::invalid(m),
            PolyError::ZeroPolynomial => CliError::new("ZERO_POLYNOMIAL", e.to_string(), EXIT_MATH),
            other => CliError::invalid(other.to_string()),
        }
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        let msg = e.to_string();
        match e {
            GroebnerError::NotQuasiHomogeneous => CliError::new("NOT_QUASI_HOMOGENEOUS", msg, EXIT_MATH),
            GroebnerError::NotIsolatedSingularity => CliError::new("NOT_ISOLATED_SINGULARITY", msg, EXIT_MATH),
            GroebnerError::EmptyIdeal => CliError::new("EMPTY_IDEAL", msg, EXIT_MATH),
            GroebnerError::Precondition(m) => CliError::precondition(m),
            GroebnerError::Poly(p) => p.into(),
        }
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        CliError::new("FORM_ERROR", e.to_string(), EXIT_INPUT)
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        let msg = e.to_string();
        match e {
            CohomologyError::NotQuasiHomogeneous => CliError::new("NOT_QUASI_HOMOGENEOUS", msg, EXIT_MATH),
            CohomologyError::Precondition(m) => CliError::precondition(m),
            CohomologyError::NonUnique { .. } => CliError::new("NORMAL_FORM_NOT_UNIQUE", msg, EXIT_MATH),
            CohomologyError::Inconsistent { .. } => CliError::new("NORMAL_FORM_INCONSISTENT", msg, EXIT_MATH),
            CohomologyError::Groebner(g) => g.into(),
            CohomologyError::Form(f) => f.into(),
            CohomologyError::Poly(p) => p.into(),
        }
    }
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        let msg = e.to_string();
        match e {
            SpectralError::PoleMismatch { .. } => CliError::new("POLE_MISMATCH", msg, EXIT_INPUT),
            SpectralError::NotPrimitive => CliError::new("NOT_PRIMITIVE", msg, EXIT_MATH),
            SpectralError::Precondition(m) => CliError::precondition(m),
            SpectralError::Cohomology(c) => c.into(),
            SpectralError::Groebner(g) => g.into(),
            SpectralError::Form(f) => f.into(),
        }
    }
}
