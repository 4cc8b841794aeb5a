//! Empirical checks of two auxiliary statements used by the degeneration
//! argument, and of the Euler contraction identity
//! `i_W d_f^(p) α = f (deg α − (k−p) N) α − d_f^(p−1) i_W α`.

use std::collections::HashMap;

use serde::Serialize;

use super::degeneration::preimage;
use super::SpectralError;
use crate::cohomology::{basis_index, coordinates, graded_basis, BasisForm, GradedComplex};
use crate::forms::{euler_field, interior_product, twisted_diff, DifferentialForm};
use crate::groebner::milnor_data;
use crate::linalg::{EchelonBasis, SparseVec};
use crate::polyalg::{monomials_of_degree, rat, Polynomial, Rational, WeightSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianImageCheck {
    pub p: i64,
    pub max_degree: i64,
    /// Number of basis forms examined.
    pub instances: usize,
    pub holds: bool,
}

/// Checks that `d_f^(p+1) ζ` has its coefficient in the Jacobian ideal for
/// every monomial `(n−1)`-form `ζ` of weight at most `max_degree`.
pub fn jacobian_image_check(
    f: &Polynomial,
    w: &WeightSystem,
    p: i64,
    max_degree: i64,
) -> Result<JacobianImageCheck, SpectralError> {
    let md = milnor_data(f, w)?;
    let n = f.nvars();
    let mut instances = 0;
    let mut holds = true;
    for d in 0..=max_degree {
        for b in graded_basis(n, n - 1, w, d) {
            instances += 1;
            let image = twisted_diff(f, p + 1, &b.to_form());
            if !md.jacobian_gb.contains(&image.top_coeff()) {
                holds = false;
            }
        }
    }
    Ok(JacobianImageCheck { p, max_degree, instances, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionEquivalence {
    pub p: i64,
    /// Weighted degree of `g`.
    pub degree: i64,
    /// `dim {g : g σ ∈ d_f^(p)(Ω^{n−2})}` with `σ = i_W ν`.
    pub contracted_dim: usize,
    /// `dim {g : g ν ∈ d_f^(p+1)(Ω^{n−1})}`.
    pub top_dim: usize,
    /// Dimension of the sum of the two subspaces.
    pub sum_dim: usize,
    pub holds: bool,
}

fn image_basis(complex: &GradedComplex, k: usize, d: i64) -> (EchelonBasis, HashMap<BasisForm, usize>) {
    let slice = complex.slice(k, d);
    let mut ech = EchelonBasis::new();
    for c in slice.matrix.columns() {
        ech.insert(c.clone());
    }
    (ech, basis_index(&slice.codomain_basis))
}

/// Compares the conditions `g σ ∈ B^{n−1}_{f,p}` and `g ν ∈ B^n_{f,p+1}` as
/// subspaces of polynomials `g`, at the weight `(n−1−p) N` of `g ν` where
/// the Euler contraction of `d_f^(p+1)` is itself a `d_f^(p)`-boundary.
/// Away from that weight the two subspaces differ in general.
pub fn euler_contraction_equivalence(
    f: &Polynomial,
    w: &WeightSystem,
    p: i64,
) -> Result<ContractionEquivalence, SpectralError> {
    let n = f.nvars();
    if n < 2 {
        return Err(SpectralError::Precondition("at least two variables are needed".into()));
    }
    let low = GradedComplex::new(f, w, p)?;
    let high = GradedComplex::new(f, w, p + 1)?;
    let big_n = low.degree();
    let weight = (n as i64 - 1 - p) * big_n;
    let degree = weight - w.total();
    if degree < 0 {
        return Err(SpectralError::Precondition(format!("no polynomials of weight {degree} for p = {p}")));
    }
    let gs = monomials_of_degree(w, degree);
    let one = Rational::from_integer(1.into());
    let sigma = interior_product(&euler_field(w), &DifferentialForm::volume(n))?;

    let (low_img, low_index) = image_basis(&low, n - 2, weight - big_n);
    let contracted: Vec<SparseVec> = gs
        .iter()
        .map(|m| coordinates(&sigma.mul_poly(&Polynomial::term(m.clone(), one.clone())), &low_index))
        .collect();
    let a = preimage(&contracted, &low_img);

    let (high_img, high_index) = image_basis(&high, n - 1, weight - big_n);
    let top: Vec<SparseVec> = gs
        .iter()
        .map(|m| coordinates(&DifferentialForm::top(Polynomial::term(m.clone(), one.clone())), &high_index))
        .collect();
    let b = preimage(&top, &high_img);

    let mut sum = EchelonBasis::new();
    for v in a.iter().chain(&b) {
        sum.insert(v.clone());
    }
    let sum_dim = sum.rank();
    Ok(ContractionEquivalence {
        p,
        degree,
        contracted_dim: a.len(),
        top_dim: b.len(),
        sum_dim,
        holds: a.len() == b.len() && b.len() == sum_dim,
    })
}

/// `i_W d_f^(p) α − f (deg α − (k−p) N) α + d_f^(p−1) i_W α` for a
/// quasi-homogeneous `k`-form `α`; zero whenever the identity holds.
pub fn euler_contraction_defect(
    f: &Polynomial,
    w: &WeightSystem,
    p: i64,
    alpha: &DifferentialForm,
) -> Result<DifferentialForm, SpectralError> {
    let big_n = GradedComplex::new(f, w, p)?.degree();
    let k = alpha.degree();
    let Some(deg) = alpha.weighted_degree(w) else {
        if alpha.is_zero() {
            return Ok(alpha.clone());
        }
        return Err(SpectralError::Precondition("the form is not quasi-homogeneous".into()));
    };
    let euler = euler_field(w);
    let lhs = interior_product(&euler, &twisted_diff(f, p, alpha))?;
    let scaled = alpha.mul_poly(f).scale(&rat(deg - (k as i64 - p) * big_n));
    let mut out = lhs.try_add(&-scaled)?;
    if k > 0 {
        let inner = interior_product(&euler, alpha)?;
        out = out.try_add(&twisted_diff(f, p - 1, &inner))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{default_var_names, parse_poly};

    fn poly(s: &str, n: usize) -> Polynomial {
        parse_poly(s, &default_var_names(n)).unwrap()
    }

    #[test]
    fn jacobian_images() {
        let f = poly("x^3 + y^3 + z^3", 3);
        let r = jacobian_image_check(&f, &WeightSystem::standard(3), 0, 6).unwrap();
        assert!(r.holds);
        assert!(r.instances > 0);
    }

    #[test]
    fn contraction_equivalence_on_cubic_surface() {
        let f = poly("x^3 + y^3 + z^3", 3);
        let w = WeightSystem::standard(3);
        let dims: Vec<usize> = (-2..=0)
            .map(|p| {
                let r = euler_contraction_equivalence(&f, &w, p).unwrap();
                assert!(r.holds, "{r:?}");
                r.top_dim
            })
            .collect();
        assert_eq!(dims, vec![53, 26, 8]);
        assert!(euler_contraction_equivalence(&f, &w, 2).is_err());
    }

    #[test]
    fn defect_vanishes_on_monomial_forms() {
        let f = poly("x^2*y + y^4", 2);
        let w = WeightSystem::new(vec![3, 2]).unwrap();
        for p in -1..3 {
            for alpha in [
                DifferentialForm::function(poly("x*y", 2)),
                DifferentialForm::monomial(poly("y^3", 2), &[0]),
                DifferentialForm::top(poly("x^2", 2)),
            ] {
                assert!(euler_contraction_defect(&f, &w, p, &alpha).unwrap().is_zero());
            }
        }
    }
}
