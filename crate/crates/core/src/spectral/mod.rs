//! Meromorphic forms with poles along `f = 0` and the pole-order
//! filtration they carry.
//!
//! A form `α / f^s` is stored by its numerator and pole order and kept in
//! lowest terms. Its de Rham differential is again of this shape:
//! `d(α / f^s) = d_f^(k−s) α / f^(s+1)` for a `k`-form `α`.

mod degeneration;
mod lemmas;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::forms::{format_form, twisted_diff, DifferentialForm, FormError};
use crate::groebner::GroebnerError;
use crate::polyalg::Polynomial;

pub use degeneration::{
    e2_degeneration_check, e2_degeneration_check_with_default, euler_primitive_basis, in_primitive_boundary,
    projective_degeneration_check, projective_form_verdict, DegreeCheck, FiltrationSliceReport, ProjectiveVerdict,
};
pub use lemmas::{
    euler_contraction_defect, euler_contraction_equivalence, jacobian_image_check, ContractionEquivalence,
    JacobianImageCheck,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("pole order {pole_order} of a {degree}-form requires p = {expected}, got p = {p}")]
    PoleMismatch { degree: usize, pole_order: u32, p: i64, expected: i64 },
    #[error("the form is not annihilated by the Euler field")]
    NotPrimitive,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// `numerator / f^pole_order`, with `f` not dividing the numerator unless
/// the pole order is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeromorphicForm {
    numerator: DifferentialForm,
    pole_order: u32,
}

impl MeromorphicForm {
    /// Builds `numerator / f^pole_order` and cancels common factors of `f`.
    pub fn new(numerator: DifferentialForm, pole_order: u32, f: &Polynomial) -> Self {
        let mut out = MeromorphicForm { numerator, pole_order };
        out.canonicalize(f);
        out
    }

    pub fn holomorphic(alpha: DifferentialForm) -> Self {
        MeromorphicForm { numerator: alpha, pole_order: 0 }
    }

    fn canonicalize(&mut self, f: &Polynomial) {
        if self.numerator.is_zero() {
            self.pole_order = 0;
            return;
        }
        if f.is_zero() || f.is_constant() {
            return;
        }
        while self.pole_order > 0 {
            match self.numerator.div_exact(f) {
                Some(q) => {
                    self.numerator = q;
                    self.pole_order -= 1;
                }
                None => break,
            }
        }
    }

    pub fn numerator(&self) -> &DifferentialForm {
        &self.numerator
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    pub fn degree(&self) -> usize {
        self.numerator.degree()
    }

    /// The twist `p = k − s` under which the differential acts on the
    /// numerator.
    pub fn twist(&self) -> i64 {
        self.degree() as i64 - self.pole_order as i64
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_canonical(&self, f: &Polynomial) -> bool {
        self.pole_order == 0 || self.numerator.div_exact(f).is_none()
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        let num = format_form(&self.numerator, vars);
        match self.pole_order {
            0 => num,
            1 => format!("({num}) / f"),
            s => format!("({num}) / f^{s}"),
        }
    }
}

/// `d(α / f^s) = d_f^(p) α / f^(s+1)`, returned in lowest terms. The twist
/// `p` must equal `deg α − s`.
pub fn meromorphic_d(omega: &MeromorphicForm, f: &Polynomial, p: i64) -> Result<MeromorphicForm, SpectralError> {
    let expected = omega.twist();
    if p != expected {
        return Err(SpectralError::PoleMismatch { degree: omega.degree(), pole_order: omega.pole_order, p, expected });
    }
    if f.nvars() != omega.numerator.nvars() {
        return Err(FormError::ArityMismatch { left: f.nvars(), right: omega.numerator.nvars() }.into());
    }
    let numerator = twisted_diff(f, p, &omega.numerator);
    Ok(MeromorphicForm::new(numerator, omega.pole_order + 1, f))
}
