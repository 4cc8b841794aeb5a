//! Polynomial differential forms and multivector fields.
//!
//! Both are stored as maps from an index set (a bit mask over the
//! coordinates) to a polynomial coefficient. Contractions expand into the
//! first slots: `dx_I = ε dx_J ∧ dx_{I∖J}` gives `i_{∂_J} dx_I = ε dx_{I∖J}`,
//! so `i_{∂x}(dx∧dy) = dy` and `i_{∂x∧∂y}(dx∧dy) = 1`.

mod fields;
mod morphism;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use thiserror::Error;

use crate::polyalg::{Polynomial, Rational, WeightSystem};

pub use fields::{
    algebroid_bracket, algebroid_differential, divergence, evaluate_form, hamiltonian_field, lie_bracket,
    lie_derivative_top, poisson_differential, poisson_iso, vector_apply,
};
pub use morphism::{morphism_pullback, MorphismOfPairs};
pub use text::{format_form, parse_form};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cannot contract a degree-{inner} object by a degree-{outer} one")]
    DegreeUnderflow { inner: usize, outer: usize },
    #[error("operation requires {expected} variables, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("pair identity g∘φ = a·f does not hold")]
    NotAMorphism,
    #[error("the unit a must be nonzero")]
    ZeroUnit,
    #[error("too many variables ({0}); at most 32 are supported")]
    TooManyVariables(usize),
}

/// Bit mask of coordinate indices; bit `i` stands for `dx_i` or `∂_i`.
pub type IndexSet = u32;

/// Indices in increasing order.
pub fn indices(mask: IndexSet) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn mask_of(idx: &[usize]) -> IndexSet {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

/// Sign of `e_I ∧ e_J` relative to `e_{I∪J}`, or `None` when they overlap.
pub fn wedge_sign(i: IndexSet, j: IndexSet) -> Option<i32> {
    if i & j != 0 {
        return None;
    }
    // Count pairs (a in I, b in J) with a > b.
    let mut inversions = 0;
    let mut rest = j;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inversions += (i >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

pub trait Kind: Clone + fmt::Debug + PartialEq + Eq + Default + 'static {
    const SYMBOL: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cotangent;
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Tangent;

impl Kind for Cotangent {
    const SYMBOL: &'static str = "d";
}
impl Kind for Tangent {
    const SYMBOL: &'static str = "∂";
}

/// Homogeneous element of the exterior algebra over the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alternating<K: Kind> {
    nvars: usize,
    degree: usize,
    comps: BTreeMap<IndexSet, Polynomial>,
    kind: PhantomData<K>,
}

pub type DifferentialForm = Alternating<Cotangent>;
pub type MultiVector = Alternating<Tangent>;

impl<K: Kind> Alternating<K> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        assert!(nvars <= 32, "at most 32 variables are supported");
        Alternating { nvars, degree, comps: BTreeMap::new(), kind: PhantomData }
    }

    /// A degree-0 element.
    pub fn function(g: Polynomial) -> Self {
        let mut out = Self::zero(g.nvars(), 0);
        out.add_component(0, g);
        out
    }

    /// `coeff · e_{i_1} ∧ … ∧ e_{i_k}` for an increasing index list.
    pub fn monomial(coeff: Polynomial, idx: &[usize]) -> Self {
        let n = coeff.nvars();
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "indices must be strictly increasing");
        assert!(idx.iter().all(|&i| i < n), "index out of range");
        let mut out = Self::zero(n, idx.len());
        out.add_component(mask_of(idx), coeff);
        out
    }

    /// `Σ c_i e_i`.
    pub fn from_vector(coeffs: Vec<Polynomial>) -> Self {
        let n = coeffs.len();
        let mut out = Self::zero(n, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            assert_eq!(c.nvars(), n, "coefficient arity");
            out.add_component(1 << i, c);
        }
        out
    }

    /// `g · e_1 ∧ … ∧ e_n`.
    pub fn top(g: Polynomial) -> Self {
        let n = g.nvars();
        let idx: Vec<usize> = (0..n).collect();
        Self::monomial(g, &idx)
    }

    pub fn from_components<I>(nvars: usize, degree: usize, comps: I) -> Self
    where
        I: IntoIterator<Item = (IndexSet, Polynomial)>,
    {
        let mut out = Self::zero(nvars, degree);
        for (m, c) in comps {
            assert_eq!(m.count_ones() as usize, degree, "index set size");
            assert!(m >> nvars == 0, "index out of range");
            out.add_component(m, c);
        }
        out
    }

    pub fn add_component(&mut self, mask: IndexSet, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(c.nvars(), self.nvars);
        match self.comps.get_mut(&mask) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.comps.remove(&mask);
                }
            }
            None => {
                self.comps.insert(mask, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (IndexSet, &Polynomial)> {
        self.comps.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: IndexSet) -> Polynomial {
        self.comps.get(&mask).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// Coefficient of the top element `e_1 ∧ … ∧ e_n`.
    pub fn top_coeff(&self) -> Polynomial {
        self.coeff(((1u64 << self.nvars) - 1) as IndexSet)
    }

    /// The coefficient of a degree-0 element.
    pub fn as_function(&self) -> Polynomial {
        self.coeff(0)
    }

    /// Vector of coefficients of a degree-1 element.
    pub fn as_vector(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.coeff(1 << i)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, g: &Polynomial) -> Self {
        self.map(|p| p * g)
    }

    pub fn map(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, c) in &self.comps {
            out.add_component(*m, f(c));
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FormError> {
        self.check_same(other)?;
        let mut out = if self.is_zero() { Self::zero(self.nvars, other.degree) } else { self.clone() };
        for (m, c) in &other.comps {
            out.add_component(*m, c.clone());
        }
        Ok(out)
    }

    fn check_same(&self, other: &Self) -> Result<(), FormError> {
        if self.nvars != other.nvars {
            return Err(FormError::ArityMismatch { left: self.nvars, right: other.nvars });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(FormError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        if self.nvars != other.nvars {
            return Err(FormError::ArityMismatch { left: self.nvars, right: other.nvars });
        }
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.nvars, degree);
        if degree > self.nvars {
            return Ok(out);
        }
        for (a, ca) in &self.comps {
            for (b, cb) in &other.comps {
                if let Some(s) = wedge_sign(*a, *b) {
                    let prod = ca * cb;
                    out.add_component(a | b, if s > 0 { prod } else { -prod });
                }
            }
        }
        Ok(out)
    }

    /// Weighted degree of each component, where `e_i` carries weight `w_i`.
    pub fn graded_parts(&self, w: &WeightSystem) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (m, c) in &self.comps {
            let base: i64 = indices(*m).iter().map(|&i| w.weight(i)).sum();
            for (d, part) in c.graded_parts(w) {
                out.entry(base + d).or_insert_with(|| Self::zero(self.nvars, self.degree)).add_component(*m, part);
            }
        }
        out
    }

    /// `Some(d)` when every term has weighted degree `d`; `None` for the zero
    /// element or mixed degrees.
    pub fn weighted_degree(&self, w: &WeightSystem) -> Option<i64> {
        let parts = self.graded_parts(w);
        if parts.len() == 1 {
            parts.keys().next().copied()
        } else {
            None
        }
    }

    /// Exact division of every coefficient.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Self> {
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, c) in &self.comps {
            out.add_component(*m, c.div_exact(g)?);
        }
        Some(out)
    }
}

impl<K: Kind> Add for &Alternating<K> {
    type Output = Alternating<K>;
    fn add(self, rhs: Self) -> Alternating<K> {
        self.try_add(rhs).expect("incompatible operands")
    }
}

impl<K: Kind> Add for Alternating<K> {
    type Output = Alternating<K>;
    fn add(self, rhs: Self) -> Alternating<K> {
        &self + &rhs
    }
}

impl<K: Kind> Neg for &Alternating<K> {
    type Output = Alternating<K>;
    fn neg(self) -> Alternating<K> {
        self.map(|p| -p)
    }
}

impl<K: Kind> Neg for Alternating<K> {
    type Output = Alternating<K>;
    fn neg(self) -> Alternating<K> {
        -&self
    }
}

impl<K: Kind> Sub for &Alternating<K> {
    type Output = Alternating<K>;
    fn sub(self, rhs: Self) -> Alternating<K> {
        self + &(-rhs)
    }
}

impl<K: Kind> Sub for Alternating<K> {
    type Output = Alternating<K>;
    fn sub(self, rhs: Self) -> Alternating<K> {
        &self - &rhs
    }
}

impl DifferentialForm {
    /// `dx_1 ∧ … ∧ dx_n` with unit coefficient.
    pub fn volume(nvars: usize) -> Self {
        Self::top(Polynomial::one(nvars))
    }

    /// `dg` for a polynomial `g`.
    pub fn differential_of(g: &Polynomial) -> Self {
        Self::from_vector(g.gradient())
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_form(self, &crate::polyalg::default_var_names(self.nvars)))
    }
}

/// Exterior derivative.
pub fn exterior_derivative(alpha: &DifferentialForm) -> DifferentialForm {
    let n = alpha.nvars();
    let mut out = DifferentialForm::zero(n, alpha.degree() + 1);
    if alpha.degree() >= n {
        return out;
    }
    for (m, c) in alpha.components() {
        for i in 0..n {
            if let Some(s) = wedge_sign(1 << i, m) {
                let di = c.derivative(i);
                out.add_component(m | (1 << i), if s > 0 { di } else { -di });
            }
        }
    }
    out
}

/// `d_f^(p) α = f dα − (k − p) df ∧ α` for a `k`-form `α`.
pub fn twisted_diff(f: &Polynomial, p: i64, alpha: &DifferentialForm) -> DifferentialForm {
    let k = alpha.degree() as i64;
    let mut out = exterior_derivative(alpha).mul_poly(f);
    if k != p {
        let df = DifferentialForm::differential_of(f);
        let second = df.wedge(alpha).expect("arity").scale(&Rational::from_integer((k - p).into()));
        out = &out - &second;
    }
    out
}

/// Sum over pairs of components of `sign · a_J b_I e_{I∖J}` for `J ⊆ I`.
fn contract_generic<A: Kind, B: Kind>(outer: &Alternating<A>, inner: &Alternating<B>) -> Result<Alternating<B>, FormError> {
    if outer.nvars() != inner.nvars() {
        return Err(FormError::ArityMismatch { left: outer.nvars(), right: inner.nvars() });
    }
    if outer.degree() > inner.degree() {
        return Err(FormError::DegreeUnderflow { inner: inner.degree(), outer: outer.degree() });
    }
    let mut out = Alternating::<B>::zero(inner.nvars(), inner.degree() - outer.degree());
    for (j, a) in outer.components() {
        for (i, b) in inner.components() {
            if i & j != j {
                continue;
            }
            let rest = i & !j;
            let s = wedge_sign(j, rest).expect("disjoint");
            let prod = a * b;
            out.add_component(rest, if s > 0 { prod } else { -prod });
        }
    }
    Ok(out)
}

/// Contraction `i_X α` of a form by a multivector of no larger degree.
pub fn interior_product(x: &MultiVector, alpha: &DifferentialForm) -> Result<DifferentialForm, FormError> {
    contract_generic(x, alpha)
}

/// Contraction `i_β Π` of a multivector by a form, same convention.
pub fn contract_multivector(beta: &DifferentialForm, pi: &MultiVector) -> Result<MultiVector, FormError> {
    contract_generic(beta, pi)
}

/// The Euler field `Σ w_i x_i ∂_i`.
pub fn euler_field(w: &WeightSystem) -> MultiVector {
    let n = w.nvars();
    MultiVector::from_vector(
        (0..n).map(|i| Polynomial::var(n, i).scale(&Rational::from_integer(w.weight(i).into()))).collect(),
    )
}

/// Integer as a rational, a small convenience for callers.
pub(crate) fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `1/k!` as a rational.
pub(crate) fn inv_factorial(k: usize) -> Rational {
    let mut f = Rational::one();
    for i in 2..=k {
        f *= ri(i as i64);
    }
    Rational::one() / f
}
