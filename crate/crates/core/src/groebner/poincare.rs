use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GroebnerError;
use crate::polyalg::WeightSystem;

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn one() -> Self {
        UniPoly::from_coeffs(vec![BigInt::one()])
    }

    /// `t^e - 1`.
    pub fn power_minus_one(e: usize) -> Self {
        let mut c = vec![BigInt::zero(); e + 1];
        c[0] = -BigInt::one();
        c[e] += BigInt::one();
        UniPoly::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: i64) -> BigInt {
        usize::try_from(d).ok().and_then(|i| self.coeffs.get(i).cloned()).unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::from_coeffs(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Exact quotient, or `None` when the divisor does not divide `self`
    /// over the integers.
    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return rem.iter().all(|c| c.is_zero()).then(|| UniPoly::from_coeffs(Vec::new()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + dd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| UniPoly::from_coeffs(quot))
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "t^{d}")?
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The product `prod_i (t^(N - w_i) - 1) / (t^(w_i) - 1)`, the Poincaré
/// polynomial of the Milnor algebra of an isolated singularity of weighted
/// degree `N`.
pub fn poincare_series_product(w: &WeightSystem, n_deg: i64) -> Result<UniPoly, GroebnerError> {
    let mut numerator = UniPoly::one();
    for &wi in w.weights() {
        let wi = wi as i64;
        if n_deg <= wi {
            return Err(GroebnerError::Precondition(format!("degree {n_deg} must exceed every weight (found {wi})")));
        }
        numerator = numerator.mul(&UniPoly::power_minus_one((n_deg - wi) as usize));
    }
    // Individual factors need not divide, but the full product does exactly
    // when the weights admit an isolated singularity.
    for &wi in w.weights() {
        numerator = numerator.div_exact(&UniPoly::power_minus_one(wi as usize)).ok_or_else(|| {
            GroebnerError::Precondition(format!("product of (t^w_i - 1) does not divide the numerator for N = {n_deg}"))
        })?;
    }
    Ok(numerator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn known_products() {
        let w2 = WeightSystem::standard(2);
        assert_eq!(poincare_series_product(&w2, 2).unwrap().coeffs(), ints(&[1]).as_slice());
        assert_eq!(poincare_series_product(&w2, 3).unwrap().coeffs(), ints(&[1, 2, 1]).as_slice());
        let w3 = WeightSystem::standard(3);
        assert_eq!(poincare_series_product(&w3, 2).unwrap().coeffs(), ints(&[1]).as_slice());
    }

    #[test]
    fn cusp_weights() {
        // x^2 + y^3 with W = (3, 2): (t^3 - 1)/(t^3 - 1) * (t^4 - 1)/(t^2 - 1) = 1 + t^2.
        let w = WeightSystem::new(vec![3, 2]).unwrap();
        let p = poincare_series_product(&w, 6).unwrap();
        assert_eq!(p.coeffs(), ints(&[1, 0, 1]).as_slice());
        assert_eq!(p.eval_at_one(), BigInt::from(2));
        assert_eq!(p.to_string(), "1 + t^2");
    }

    #[test]
    fn inexact_and_small_degree_rejected() {
        let w = WeightSystem::new(vec![2, 2]).unwrap();
        assert!(poincare_series_product(&w, 5).is_err());
        assert!(poincare_series_product(&WeightSystem::standard(1), 1).is_err());
    }
}
