//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] carries its variable count; arithmetic between
//! polynomials of different arity is an error, never a broadcast. Weighted
//! gradings are described by a [`WeightSystem`].

pub mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{parse_poly, ParseError, ParseErrorKind};

/// Exact coefficient field. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Integer `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} variables vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("the zero polynomial has no weighted degree")]
    ZeroPolynomial,
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Exponent vector `x_1^{e_1} ... x_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// `Σ w_i e_i`.
    pub fn weighted_degree(&self, w: &WeightSystem) -> i64 {
        debug_assert_eq!(self.0.len(), w.nvars());
        self.0
            .iter()
            .zip(w.weights())
            .map(|(&e, &wi)| e as i64 * wi as i64)
            .sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `x_i^e` with `e > 0`, returns `(i, e)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Renders the monomial with explicit `*` and `^`, `1` for the unit.
    pub fn to_string_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Positive integer weights `w_1..w_n`, with an optional declared degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    weights: Vec<u32>,
    degree_hint: Option<u32>,
}

impl WeightSystem {
    pub fn new(weights: Vec<u32>) -> Result<Self, PolyError> {
        if weights.is_empty() {
            return Err(PolyError::InvalidWeights("no weights given".into()));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(PolyError::InvalidWeights(format!("weight w_{} is zero", i + 1)));
        }
        Ok(WeightSystem { weights, degree_hint: None })
    }

    /// All weights equal to one.
    pub fn standard(nvars: usize) -> Self {
        WeightSystem { weights: vec![1; nvars], degree_hint: None }
    }

    pub fn with_degree_hint(mut self, n: u32) -> Self {
        self.degree_hint = Some(n);
        self
    }

    pub fn degree_hint(&self) -> Option<u32> {
        self.degree_hint
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i] as i64
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// `w_1 + ... + w_n`.
    pub fn total(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }
}

/// `Σ w_i e_i`.
pub fn weighted_degree(m: &Monomial, w: &WeightSystem) -> i64 {
    m.weighted_degree(w)
}

/// Order used by the printer: higher total degree first, then larger
/// exponent vector (lexicographic) first.
fn print_order(a: &Monomial, b: &Monomial) -> Ordering {
    b.total_degree().cmp(&a.total_degree()).then_with(|| b.cmp(a))
}

/// Default variable names: `x, y, z, w` up to four variables, `x1..xn`
/// beyond.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if nvars <= SHORT.len() {
        SHORT[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

/// All monomials of weighted degree exactly `d`, in descending
/// lexicographic order of exponent vectors.
pub fn monomials_of_degree(w: &WeightSystem, d: i64) -> Vec<Monomial> {
    fn rec(w: &WeightSystem, i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.nvars() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let wi = w.weight(i);
        for e in (0..=left / wi).rev() {
            cur.push(e as u32);
            rec(w, i + 1, left - e * wi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(w, 0, d, &mut Vec::with_capacity(w.nvars()), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0)
    }

    /// Lexicographically largest term.
    pub fn lex_leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// `∂/∂x_i`. Panics if `i` is out of range; see [`partial_derivative`]
    /// for the checked form.
    pub fn derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.terms.insert(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `x_i ↦ images[i]`. The result lives in the ring of the
    /// images.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable is required");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out += &t;
        }
        out
    }

    /// Returns `N` when every term has weighted degree `N`.
    pub fn is_quasi_homogeneous(&self, w: &WeightSystem) -> Result<Option<i64>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if w.nvars() != self.nvars {
            return Err(PolyError::ArityMismatch { left: self.nvars, right: w.nvars() });
        }
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = degrees.next().expect("nonzero polynomial has a term");
        Ok(degrees.all(|d| d == first).then_some(first))
    }

    /// Sum of the terms of weighted degree exactly `d`.
    pub fn graded_component(&self, w: &WeightSystem, d: i64) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(w) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Decomposition into weighted-homogeneous components.
    pub fn graded_parts(&self, w: &WeightSystem) -> BTreeMap<i64, Polynomial> {
        let mut parts: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.weighted_degree(w))
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Division runs with respect to the lexicographic order,
    /// which is exact for a single divisor.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars, "arity mismatch");
        let (lm, lc) = divisor.lex_leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.lex_leading() {
            let q = lm.quotient_of(m)?;
            let qc = c / &lc;
            rem -= &divisor.mul_term(&q, &qc);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Renders with explicit `*` and `^`, terms in descending order.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| print_order(a.0, b.0));
        let mut out = String::new();
        for (idx, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.to_string_with(names));
            } else {
                out.push_str(&format!("{}*{}", abs, m.to_string_with(names)));
            }
        }
        out
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch { left: self.nvars, right: other.nvars })
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars)))
    }
}

/// Checked sum.
pub fn poly_add(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    a.check_arity(b)?;
    Ok(a + b)
}

/// Checked product.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    a.check_arity(b)?;
    Ok(a * b)
}

/// Checked `∂f/∂x_i`.
pub fn partial_derivative(f: &Polynomial, i: usize) -> Result<Polynomial, PolyError> {
    if i >= f.nvars {
        return Err(PolyError::VariableOutOfRange { index: i, nvars: f.nvars });
    }
    Ok(f.derivative(i))
}

/// `Some(N)` when `f` is quasi-homogeneous of degree `N` for `w`.
pub fn is_quasi_homogeneous(f: &Polynomial, w: &WeightSystem) -> Result<Option<i64>, PolyError> {
    f.is_quasi_homogeneous(w)
}

pub fn graded_component(f: &Polynomial, w: &WeightSystem, d: i64) -> Polynomial {
    f.graded_component(w, d)
}

// Arithmetic operators panic on arity mismatch; use `poly_add`/`poly_mul`
// for the checked forms.

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
