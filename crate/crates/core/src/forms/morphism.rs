use num_traits::{One, Zero};

use super::{DifferentialForm, FormError};
use crate::polyalg::{Polynomial, Rational};

/// A polynomial map `φ` between pairs `(M, f) → (N, g)` with `g∘φ = a·f`
/// for a nonzero constant `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismOfPairs {
    phi: Vec<Polynomial>,
    unit: Rational,
    source_nvars: usize,
}

impl MorphismOfPairs {
    /// `phi[i]` is the image of the `i`-th target coordinate, a polynomial in
    /// the source variables.
    pub fn new(phi: Vec<Polynomial>, unit: Rational, f: &Polynomial, g: &Polynomial) -> Result<Self, FormError> {
        if unit.is_zero() {
            return Err(FormError::ZeroUnit);
        }
        if phi.len() != g.nvars() {
            return Err(FormError::ArityMismatch { left: g.nvars(), right: phi.len() });
        }
        if let Some(bad) = phi.iter().find(|c| c.nvars() != f.nvars()) {
            return Err(FormError::ArityMismatch { left: f.nvars(), right: bad.nvars() });
        }
        if g.compose(&phi) != f.scale(&unit) {
            return Err(FormError::NotAMorphism);
        }
        Ok(MorphismOfPairs { phi, unit, source_nvars: f.nvars() })
    }

    pub fn map(&self) -> &[Polynomial] {
        &self.phi
    }

    pub fn unit(&self) -> &Rational {
        &self.unit
    }

    /// Ordinary pullback `φ*ω`.
    pub fn pullback_raw(&self, omega: &DifferentialForm) -> Result<DifferentialForm, FormError> {
        if omega.nvars() != self.phi.len() {
            return Err(FormError::ArityMismatch { left: self.phi.len(), right: omega.nvars() });
        }
        let m = self.source_nvars;
        let dphi: Vec<DifferentialForm> = self.phi.iter().map(DifferentialForm::differential_of).collect();
        let mut out = DifferentialForm::zero(m, omega.degree());
        for (mask, c) in omega.components() {
            let mut term = DifferentialForm::function(c.compose(&self.phi));
            for i in super::indices(mask) {
                term = term.wedge(&dphi[i])?;
            }
            out = out.try_add(&term)?;
        }
        if out.is_zero() {
            out = DifferentialForm::zero(m, omega.degree());
        }
        Ok(out)
    }

    /// `Φ*ω = φ*ω / a^k`.
    pub fn pullback(&self, omega: &DifferentialForm) -> Result<DifferentialForm, FormError> {
        let mut denom = Rational::one();
        for _ in 0..omega.degree() {
            denom *= &self.unit;
        }
        Ok(self.pullback_raw(omega)?.scale(&(Rational::one() / denom)))
    }
}

pub fn morphism_pullback(phi: &MorphismOfPairs, omega: &DifferentialForm) -> Result<DifferentialForm, FormError> {
    phi.pullback(omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::twisted_diff;
    use crate::polyalg::{parse_poly, rat};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn identity() -> Vec<Polynomial> {
        vec![p("x"), p("y")]
    }

    #[test]
    fn identity_map() {
        let f = p("x^2 + y^2");
        let phi = MorphismOfPairs::new(identity(), rat(1), &f, &f).unwrap();
        let w = DifferentialForm::from_vector(vec![p("x*y"), p("y^3")]);
        assert_eq!(phi.pullback(&w).unwrap(), w);
    }

    #[test]
    fn scaled_pair() {
        let f = p("x^2 + y^2");
        let g = f.scale(&rat(2));
        let phi = MorphismOfPairs::new(identity(), rat(2), &f, &g).unwrap();
        let w = DifferentialForm::from_vector(vec![p("x"), p("1")]);
        assert_eq!(phi.pullback(&w).unwrap(), w.scale(&crate::polyalg::ratio(1, 2)));
        assert_eq!(MorphismOfPairs::new(identity(), rat(1), &f, &g).unwrap_err(), FormError::NotAMorphism);
        assert_eq!(MorphismOfPairs::new(identity(), rat(0), &f, &g).unwrap_err(), FormError::ZeroUnit);
    }

    #[test]
    fn coordinate_swap_is_a_chain_map() {
        let f = p("x^2 + y^2");
        let phi = MorphismOfPairs::new(vec![p("y"), p("x")], rat(1), &f, &f).unwrap();
        let w = DifferentialForm::monomial(p("x"), &[1]);
        let pulled = phi.pullback(&w).unwrap();
        assert_eq!(pulled, DifferentialForm::monomial(p("y"), &[0]));
        for pp in -1..3 {
            let lhs = phi.pullback(&twisted_diff(&f, pp, &w)).unwrap();
            assert_eq!(lhs, twisted_diff(&f, pp, &pulled));
        }
    }
}
