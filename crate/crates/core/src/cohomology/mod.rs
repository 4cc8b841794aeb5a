//! Degreewise assembly of the complex `(Ω^•, d_f^(p))` for a
//! quasi-homogeneous `f` and exact computation of its cohomology.
//!
//! The generator `dx_i` carries weight `w_i`, so `d_f^(p)` maps the space of
//! `k`-forms of weighted degree `d` to `(k+1)`-forms of degree `d + N`. For
//! quasi-homogeneous `f` the germ cohomology at the origin is the direct sum
//! of these finite-dimensional graded pieces, which is what every report
//! here computes up to a truncation degree.

mod misc;
mod normal_form;
mod table1;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::forms::{indices, mask_of, wedge_sign, DifferentialForm, FormError, IndexSet};
use crate::groebner::GroebnerError;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::polyalg::{monomials_of_degree, Monomial, PolyError, Polynomial, Rational, WeightSystem};

pub use misc::{germ_quotient_probe, h0_dimension, regular_case_predictor, H0Report, QuotientProbe};
pub use normal_form::{normal_form_nform, NormalFormOptions, NormalFormResult, NormalFormSolver};
pub use table1::{table1_report, CellStatus, Prediction, Table1Cell, Table1Report, Table1Row};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("f is not quasi-homogeneous for the given weights")]
    NotQuasiHomogeneous,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("normal form is not unique at weighted degree {degree}: candidate {candidate} lies in the span of the image and earlier candidates")]
    NonUnique { degree: i64, candidate: String },
    #[error("normal form system is inconsistent at weighted degree {degree}")]
    Inconsistent { degree: i64 },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A monomial form `x^a dx_I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisForm {
    pub mask: IndexSet,
    pub monomial: Monomial,
}

impl BasisForm {
    pub fn to_form(&self) -> DifferentialForm {
        DifferentialForm::monomial(
            Polynomial::term(self.monomial.clone(), Rational::from_integer(1.into())),
            &indices(self.mask),
        )
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        if !self.monomial.is_one() || self.mask == 0 {
            parts.push(self.monomial.to_string_with(vars));
        }
        let d: Vec<String> = indices(self.mask).iter().map(|&i| format!("d{}", vars[i])).collect();
        if !d.is_empty() {
            parts.push(d.join("^"));
        }
        parts.join("*")
    }
}

/// Index sets of size `k` among `n` coordinates, in lexicographic order of
/// the increasing index tuples.
pub fn index_sets(n: usize, k: usize) -> Vec<IndexSet> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
        if cur.len() == k {
            out.push(mask_of(cur));
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Monomial `k`-forms of weighted degree `d`: for each index set in
/// lexicographic order, the monomials of the complementary degree in
/// descending lexicographic order.
pub fn graded_basis(n: usize, k: usize, w: &WeightSystem, d: i64) -> Vec<BasisForm> {
    assert_eq!(n, w.nvars(), "weight count");
    let mut out = Vec::new();
    for mask in index_sets(n, k) {
        let base: i64 = indices(mask).iter().map(|&i| w.weight(i)).sum();
        for m in monomials_of_degree(w, d - base) {
            out.push(BasisForm { mask, monomial: m });
        }
    }
    out
}

/// Coordinates of a form in a graded basis. Panics if the form has a term
/// outside the basis.
pub fn coordinates(alpha: &DifferentialForm, index: &HashMap<BasisForm, usize>) -> SparseVec {
    let mut v = SparseVec::new();
    for (mask, c) in alpha.components() {
        for (m, x) in c.terms() {
            let key = BasisForm { mask, monomial: m.clone() };
            let i = *index.get(&key).expect("term outside the graded basis");
            v.insert(i, x.clone());
        }
    }
    v
}

/// The form with the given coordinates.
pub fn from_coordinates(n: usize, k: usize, basis: &[BasisForm], v: &SparseVec) -> DifferentialForm {
    let mut out = DifferentialForm::zero(n, k);
    for (&i, c) in v {
        let b = &basis[i];
        out.add_component(b.mask, Polynomial::term(b.monomial.clone(), c.clone()));
    }
    out
}

pub fn basis_index(basis: &[BasisForm]) -> HashMap<BasisForm, usize> {
    basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect()
}

/// Matrix of `d_f^(p)` from `k`-forms of weight `d` to `(k+1)`-forms of
/// weight `d + N`.
#[derive(Clone, Debug)]
pub struct GradedComplexSlice {
    pub p: i64,
    pub k: usize,
    pub d: i64,
    pub domain_basis: Vec<BasisForm>,
    pub codomain_basis: Vec<BasisForm>,
    pub matrix: SparseMatrix,
}

impl GradedComplexSlice {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.domain_basis.len() - self.rank()
    }
}

/// The graded complex of a quasi-homogeneous polynomial.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    f: Polynomial,
    w: WeightSystem,
    p: i64,
    degree: i64,
    /// `∂f/∂x_i`.
    grad: Vec<Polynomial>,
}

impl GradedComplex {
    pub fn new(f: &Polynomial, w: &WeightSystem, p: i64) -> Result<Self, CohomologyError> {
        let degree = quasi_degree(f, w)?;
        Ok(GradedComplex { f: f.clone(), w: w.clone(), p, degree, grad: f.gradient() })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.w
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    /// Weighted degree `N` of `f`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// `d_f^(p)` on a single monomial form, as a map from codomain basis
    /// elements to coefficients.
    fn image_terms(&self, b: &BasisForm, k: usize) -> BTreeMap<BasisForm, Rational> {
        let n = self.nvars();
        let factor = Rational::from_integer((k as i64 - self.p).into());
        let mut out: BTreeMap<BasisForm, Rational> = BTreeMap::new();
        let mut push = |mask: IndexSet, m: Monomial, c: Rational| {
            let e = out.entry(BasisForm { mask, monomial: m }).or_insert_with(|| Rational::from_integer(0.into()));
            *e += c;
        };
        for i in 0..n {
            let Some(sign) = wedge_sign(1 << i, b.mask) else { continue };
            let sign = Rational::from_integer(sign.into());
            let mask = b.mask | (1 << i);
            let a = b.monomial.exponents()[i];
            if a > 0 {
                let mut e = b.monomial.exponents().to_vec();
                e[i] -= 1;
                let lowered = Monomial::new(e);
                let c = &sign * Rational::from_integer(a.into());
                for (m, x) in self.f.terms() {
                    push(mask, m.mul(&lowered), &c * x);
                }
            }
            if factor != Rational::from_integer(0.into()) {
                let c = -(&sign * &factor);
                for (m, x) in self.grad[i].terms() {
                    push(mask, m.mul(&b.monomial), &c * x);
                }
            }
        }
        out.retain(|_, c| *c != Rational::from_integer(0.into()));
        out
    }

    pub fn slice(&self, k: usize, d: i64) -> GradedComplexSlice {
        let n = self.nvars();
        let domain_basis = graded_basis(n, k, &self.w, d);
        let codomain_basis = if k < n { graded_basis(n, k + 1, &self.w, d + self.degree) } else { Vec::new() };
        let index = basis_index(&codomain_basis);
        let columns = domain_basis
            .iter()
            .map(|b| {
                if k >= n {
                    return SparseVec::new();
                }
                self.image_terms(b, k).into_iter().map(|(t, c)| (index[&t], c)).collect()
            })
            .collect();
        GradedComplexSlice {
            p: self.p,
            k,
            d,
            matrix: SparseMatrix::from_columns(codomain_basis.len(), columns),
            domain_basis,
            codomain_basis,
        }
    }

    /// Dimension of the space of `k`-forms of weight `d`.
    pub fn space_dim(&self, k: i64, d: i64) -> usize {
        if k < 0 || k as usize > self.nvars() || d < 0 {
            return 0;
        }
        graded_basis(self.nvars(), k as usize, &self.w, d).len()
    }

    /// Rank of `d_f^(p)` on `k`-forms of weight `d`.
    pub fn rank(&self, k: i64, d: i64) -> usize {
        if k < 0 || k as usize >= self.nvars() || d < 0 {
            return 0;
        }
        self.slice(k as usize, d).rank()
    }

    /// Ranks for many `(k, d)` pairs, computed in parallel.
    pub fn ranks(&self, keys: &[(i64, i64)]) -> HashMap<(i64, i64), usize> {
        keys.par_iter().map(|&(k, d)| ((k, d), self.rank(k, d))).collect()
    }

    pub fn cohomology_dim(&self, k: usize, d: i64) -> usize {
        let k = k as i64;
        self.space_dim(k, d) - self.rank(k, d) - self.rank(k - 1, d - self.degree)
    }

    /// Per-degree dimensions of `H^k` for the given `k` over weights
    /// `0..=max_degree`.
    pub fn report(&self, ks: &[usize], max_degree: i64) -> CohomologyReport {
        let mut keys = Vec::new();
        for &k in ks {
            for d in 0..=max_degree {
                keys.push((k as i64, d));
                keys.push((k as i64 - 1, d - self.degree));
            }
        }
        keys.sort();
        keys.dedup();
        let ranks = self.ranks(&keys);
        let rows = ks
            .iter()
            .map(|&k| {
                let per_degree: BTreeMap<i64, usize> = (0..=max_degree)
                    .map(|d| {
                        let ki = k as i64;
                        let dim = self.space_dim(ki, d) - ranks[&(ki, d)] - ranks[&(ki - 1, d - self.degree)];
                        (d, dim)
                    })
                    .collect();
                let window = 2 * self.degree;
                let stabilized = max_degree + 1 >= window
                    && per_degree.range(max_degree - window + 1..).all(|(_, &v)| v == 0);
                CohomologyRow { k, total: per_degree.values().sum(), per_degree, stabilized }
            })
            .collect();
        CohomologyReport { p: self.p, degree: self.degree, weight_sum: self.w.total(), max_degree, rows }
    }
}

pub(crate) fn quasi_degree(f: &Polynomial, w: &WeightSystem) -> Result<i64, CohomologyError> {
    if f.nvars() != w.nvars() {
        return Err(PolyError::ArityMismatch { left: f.nvars(), right: w.nvars() }.into());
    }
    let n = f.is_quasi_homogeneous(w)?.ok_or(CohomologyError::NotQuasiHomogeneous)?;
    if n <= 0 {
        return Err(CohomologyError::Precondition("f must be nonconstant".into()));
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub k: usize,
    pub per_degree: BTreeMap<i64, usize>,
    pub total: usize,
    /// The last `2N` weights of the window contribute nothing. This is an
    /// observation about the window, not a proof of finiteness.
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub p: i64,
    pub degree: i64,
    pub weight_sum: i64,
    pub max_degree: i64,
    pub rows: Vec<CohomologyRow>,
}

impl CohomologyReport {
    pub fn row(&self, k: usize) -> Option<&CohomologyRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// Running totals `Σ_{d' ≤ d} dim H^k_{d'}`.
    pub fn cumulative(&self, k: usize) -> Vec<(i64, usize)> {
        let mut acc = 0;
        self.row(k)
            .map(|r| {
                r.per_degree
                    .iter()
                    .map(|(&d, &v)| {
                        acc += v;
                        (d, acc)
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}

pub fn slice(f: &Polynomial, w: &WeightSystem, p: i64, k: usize, d: i64) -> Result<GradedComplexSlice, CohomologyError> {
    Ok(GradedComplex::new(f, w, p)?.slice(k, d))
}

/// `dim ker(d at (k, d)) − rank(d at (k−1, d−N))`.
pub fn graded_cohomology_dim(f: &Polynomial, w: &WeightSystem, p: i64, k: usize, d: i64) -> Result<usize, CohomologyError> {
    Ok(GradedComplex::new(f, w, p)?.cohomology_dim(k, d))
}

pub fn total_dims(f: &Polynomial, w: &WeightSystem, p: i64, k: usize, max_degree: i64) -> Result<CohomologyReport, CohomologyError> {
    if max_degree < 0 {
        return Err(CohomologyError::Precondition("truncation degree must be non-negative".into()));
    }
    Ok(GradedComplex::new(f, w, p)?.report(&[k], max_degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::twisted_diff;
    use crate::polyalg::parse_poly;

    fn vars(n: usize) -> Vec<String> {
        crate::polyalg::default_var_names(n)
    }

    fn poly(s: &str, n: usize) -> Polynomial {
        parse_poly(s, &vars(n)).unwrap()
    }

    #[test]
    fn graded_basis_examples() {
        let v = vars(2);
        let names = |b: Vec<BasisForm>| b.iter().map(|x| x.to_string_with(&v)).collect::<Vec<_>>();
        assert_eq!(names(graded_basis(2, 1, &WeightSystem::standard(2), 1)), vec!["dx", "dy"]);
        assert_eq!(names(graded_basis(2, 2, &WeightSystem::standard(2), 2)), vec!["dx^dy"]);
        let w = WeightSystem::new(vec![1, 2]).unwrap();
        assert_eq!(names(graded_basis(2, 0, &w, 2)), vec!["x^2", "y"]);
    }

    #[test]
    fn slice_examples() {
        let f = poly("x^2 + y^2", 2);
        let w = WeightSystem::standard(2);
        let s = slice(&f, &w, 0, 0, 0).unwrap();
        assert_eq!(s.domain_basis.len(), 1);
        assert!(s.matrix.is_zero());
        let s = slice(&f, &w, 0, 0, 1).unwrap();
        assert_eq!(s.rank(), 2);
        let s = slice(&f, &w, 2, 2, 2).unwrap();
        assert!(s.matrix.is_zero());
    }

    #[test]
    fn slice_columns_match_twisted_diff() {
        let f = poly("x^3 + x*y^2 + z^3", 3);
        let w = WeightSystem::standard(3);
        for p in -1..4 {
            for k in 0..3 {
                let s = slice(&f, &w, p, k, 3).unwrap();
                let index = basis_index(&s.codomain_basis);
                for (j, b) in s.domain_basis.iter().enumerate() {
                    let image = twisted_diff(&f, p, &b.to_form());
                    assert_eq!(&coordinates(&image, &index), s.matrix.column(j));
                }
            }
        }
    }

    #[test]
    fn cohomology_dim_examples() {
        let f = poly("x^2 + y^2", 2);
        let w = WeightSystem::standard(2);
        assert_eq!(graded_cohomology_dim(&f, &w, 0, 0, 0).unwrap(), 1);
        for d in 0..6 {
            assert_eq!(graded_cohomology_dim(&f, &w, 1, 0, d).unwrap(), 0);
        }
        let total: usize = (0..=8).map(|d| graded_cohomology_dim(&f, &w, 2, 2, d).unwrap()).sum();
        assert_eq!(total, 1);
    }

    #[test]
    fn total_dims_examples() {
        let w2 = WeightSystem::standard(2);
        let r = total_dims(&poly("x^3 + y^3", 2), &w2, 0, 2, 12).unwrap();
        assert_eq!(r.rows[0].total, 6);
        assert!(r.rows[0].stabilized);
        let r = total_dims(&poly("x^2 + y^2 + z^2", 3), &WeightSystem::standard(3), 0, 2, 10).unwrap();
        assert_eq!(r.rows[0].total, 0);
        let r = total_dims(&poly("x^2 + y^3", 2), &WeightSystem::new(vec![3, 2]).unwrap(), 0, 0, 15).unwrap();
        assert_eq!(r.rows[0].total, 1);
        assert_eq!(r.cumulative(0).last(), Some(&(15, 1)));
    }

    #[test]
    fn rejects_non_quasi_homogeneous() {
        let f = poly("x^2 + y^3", 2);
        assert_eq!(
            graded_cohomology_dim(&f, &WeightSystem::standard(2), 0, 0, 0).unwrap_err(),
            CohomologyError::NotQuasiHomogeneous
        );
    }
}
