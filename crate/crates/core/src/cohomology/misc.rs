use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::CohomologyError;
use crate::forms::{twisted_diff, DifferentialForm};
use crate::groebner::MonomialOrder;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::polyalg::{monomials_of_degree, Monomial, PolyError, Polynomial, Rational, WeightSystem};

/// Kernel of `d_f^(p)` on functions of weighted degree at most `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Report {
    pub p: i64,
    pub max_degree: i64,
    pub dimension: usize,
    /// Normalized generator when the kernel is one-dimensional.
    pub generator: Option<Polynomial>,
    /// Whether the generator is a nonzero multiple of `f^{−p}`.
    pub generator_is_f_power: Option<bool>,
}

fn proportional(a: &Polynomial, b: &Polynomial) -> bool {
    let (Some((ma, ca)), Some((mb, cb))) = (a.lex_leading(), b.lex_leading()) else {
        return a.is_zero() && b.is_zero();
    };
    ma == mb && a.scale(cb) == b.scale(ca)
}

/// Computes `H^0_{f,p}` in the truncation. `f` need not be quasi-homogeneous;
/// the truncation is by weighted degree of the candidate functions.
pub fn h0_dimension(f: &Polynomial, w: &WeightSystem, p: i64, max_degree: i64) -> Result<H0Report, CohomologyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if f.nvars() != w.nvars() {
        return Err(PolyError::ArityMismatch { left: f.nvars(), right: w.nvars() }.into());
    }
    let n = f.nvars();
    let domain: Vec<Monomial> = (0..=max_degree).flat_map(|d| monomials_of_degree(w, d)).collect();
    let mut rows: HashMap<(u32, Monomial), usize> = HashMap::new();
    let mut columns = Vec::with_capacity(domain.len());
    for m in &domain {
        let g = DifferentialForm::function(Polynomial::term(m.clone(), Rational::one()));
        let image = twisted_diff(f, p, &g);
        let mut col = SparseVec::new();
        for (mask, c) in image.components() {
            for (t, x) in c.terms() {
                let next = rows.len();
                let i = *rows.entry((mask, t.clone())).or_insert(next);
                col.insert(i, x.clone());
            }
        }
        columns.push(col);
    }
    let matrix = SparseMatrix::from_columns(rows.len(), columns);
    let kernel = matrix.nullspace();
    let generator = (kernel.len() == 1).then(|| {
        let g = Polynomial::from_terms(n, kernel[0].iter().map(|(&i, c)| (domain[i].clone(), c.clone())));
        let lead = g.lex_leading().map(|(_, c)| c.clone()).expect("nonzero kernel vector");
        g.scale(&(Rational::one() / lead))
    });
    let generator_is_f_power = match (&generator, p <= 0) {
        (Some(g), true) => Some(proportional(g, &f.pow((-p) as u32))),
        (Some(_), false) => Some(false),
        _ => None,
    };
    Ok(H0Report { p, max_degree, dimension: kernel.len(), generator, generator_is_f_power })
}

/// `dim H^k = b_k(M) + b_{k−1}(S)` for `k ≥ 1` and `dim H^0 = 1`.
pub fn regular_case_predictor(betti_m: &[usize], betti_s: &[usize]) -> Vec<usize> {
    let len = betti_m.len().max(betti_s.len() + 1).max(1);
    (0..len)
        .map(|k| {
            if k == 0 {
                1
            } else {
                betti_m.get(k).copied().unwrap_or(0) + betti_s.get(k - 1).copied().unwrap_or(0)
            }
        })
        .collect()
}

/// Graded dimensions of `ℚ[x]/(f)` by weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientProbe {
    pub max_degree: i64,
    /// `dims[d]` is the dimension in weighted degree `d`.
    pub dims: Vec<usize>,
    pub all_nonzero: bool,
}

/// For a principal ideal the single generator is a Gröbner basis, so the
/// standard monomials are those not divisible by its leading monomial. For
/// non-quasi-homogeneous `f` the counts are those of the associated graded
/// quotient for the weighted filtration.
pub fn germ_quotient_probe(f: &Polynomial, w: &WeightSystem, max_degree: i64) -> Result<QuotientProbe, CohomologyError> {
    if f.nvars() != w.nvars() {
        return Err(PolyError::ArityMismatch { left: f.nvars(), right: w.nvars() }.into());
    }
    if f.is_constant() {
        return Err(CohomologyError::Precondition("f must be nonconstant".into()));
    }
    let order = MonomialOrder::weighted(w);
    let lead = f
        .terms()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, _)| m)
        .max_by(|a, b| order.compare(a, b))
        .expect("nonconstant")
        .clone();
    let dims: Vec<usize> = (0..=max_degree.max(0))
        .map(|d| monomials_of_degree(w, d).iter().filter(|m| !lead.divides(m)).count())
        .collect();
    Ok(QuotientProbe { max_degree, all_nonzero: dims.iter().all(|&x| x > 0), dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{default_var_names, parse_poly};

    fn poly(s: &str, n: usize) -> Polynomial {
        parse_poly(s, &default_var_names(n)).unwrap()
    }

    #[test]
    fn h0_examples() {
        let f = poly("x^2 + y^2", 2);
        let w = WeightSystem::standard(2);
        assert_eq!(h0_dimension(&f, &w, 1, 6).unwrap().dimension, 0);
        let r = h0_dimension(&f, &w, 0, 6).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(r.generator, Some(Polynomial::one(2)));
        let r = h0_dimension(&f, &w, -1, 6).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(r.generator, Some(f.clone()));
        assert_eq!(r.generator_is_f_power, Some(true));
    }

    #[test]
    fn h0_for_non_quasi_homogeneous() {
        let f = poly("x^2 + y^3 + x*y", 2);
        let r = h0_dimension(&f, &WeightSystem::standard(2), -2, 6).unwrap();
        assert_eq!(r.dimension, 1);
        assert_eq!(r.generator_is_f_power, Some(true));
    }

    #[test]
    fn predictor_examples() {
        // Ball B^3 with boundary sphere S^2.
        assert_eq!(regular_case_predictor(&[1, 0, 0, 0], &[1, 0, 1]), vec![1, 1, 0, 1]);
        // S^3 cut along an equatorial S^2.
        assert_eq!(regular_case_predictor(&[1, 0, 0, 1], &[1, 0, 1]), vec![1, 1, 0, 2]);
        // Torus with one circle.
        assert_eq!(regular_case_predictor(&[1, 2, 1], &[1, 1]), vec![1, 3, 2]);
    }

    #[test]
    fn quotient_probe_examples() {
        let w = WeightSystem::standard(2);
        let r = germ_quotient_probe(&poly("x^2 + y^2", 2), &w, 4).unwrap();
        assert_eq!(r.dims, vec![1, 2, 2, 2, 2]);
        let r = germ_quotient_probe(&poly("x", 2), &w, 5).unwrap();
        assert_eq!(r.dims, vec![1; 6]);
        let r = germ_quotient_probe(&poly("x^2 + y^2", 2), &w, 0).unwrap();
        assert_eq!(r.dims, vec![1]);
    }
}
