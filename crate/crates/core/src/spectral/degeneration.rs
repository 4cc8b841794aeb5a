//! Second-page degeneration of the pole-order spectral sequence.
//!
//! For a `k`-form `α` of weight `d` set `Z = {α : f² | d_f^(p) α}`. The
//! differential `d_2` vanishes on the slice when `d_f^(p)(Z)` lies in
//! `d_f^(p)(f · Ω^k_{d−N})`. Both spaces are assembled per weight from the
//! graded complex and compared by exact elimination.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::SpectralError;
use crate::cohomology::{basis_index, coordinates, from_coordinates, graded_basis, BasisForm, GradedComplex};
use crate::forms::{euler_field, format_form, interior_product, twisted_diff, DifferentialForm};
use crate::groebner::milnor_data;
use crate::linalg::{EchelonBasis, SparseMatrix, SparseVec};
use crate::polyalg::{default_var_names, Polynomial, WeightSystem};

fn serialize_witness<S: Serializer>(w: &Option<DifferentialForm>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(alpha) => s.serialize_some(&format_form(alpha, &default_var_names(alpha.nvars()))),
        None => s.serialize_none(),
    }
}

/// Outcome at one weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: i64,
    pub z_dim: usize,
    /// Each basis vector of `Z` was confirmed by two exact divisions by `f`.
    pub z_verified: bool,
    pub inclusion_holds: bool,
    /// An element of `Z` whose image is outside the target.
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<DifferentialForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationSliceReport {
    pub p: i64,
    pub q: i64,
    pub r: u32,
    /// Inclusive range of weighted degrees examined.
    pub window: (i64, i64),
    /// Restricted to forms annihilated by the Euler field.
    pub primitive: bool,
    pub degrees: Vec<DegreeCheck>,
}

impl FiltrationSliceReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|c| c.inclusion_holds && c.z_verified)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DegreeCheck> {
        self.degrees.iter().filter(|c| !c.inclusion_holds || !c.z_verified)
    }
}

/// Coordinates in the domain of the preimage of `sub` under the linear map
/// with the given columns.
pub(super) fn preimage(columns: &[SparseVec], sub: &EchelonBasis) -> Vec<SparseVec> {
    let rems: Vec<SparseVec> = columns.iter().map(|c| sub.reduce(c).0).collect();
    let nrows = rems.iter().filter_map(|c| c.keys().next_back()).max().map_or(0, |&i| i + 1);
    SparseMatrix::from_columns(nrows, rems).nullspace()
}

/// Coordinates of `g · b` for each basis form `b`, in the index of the
/// target weight.
fn multiples(g: &Polynomial, basis: &[BasisForm], index: &HashMap<BasisForm, usize>) -> Vec<SparseVec> {
    basis.iter().map(|b| coordinates(&b.to_form().mul_poly(g), index)).collect()
}

fn divisible_by_square(eta: &DifferentialForm, f: &Polynomial) -> bool {
    eta.div_exact(f).and_then(|q| q.div_exact(f)).is_some()
}

/// Weighted degrees up to `max_degree` for `(p+q)`-forms with
/// `p + q = n − 1` and `q > 0`.
pub fn e2_degeneration_check(
    f: &Polynomial,
    w: &WeightSystem,
    p: i64,
    q: i64,
    max_degree: i64,
) -> Result<FiltrationSliceReport, SpectralError> {
    let n = f.nvars() as i64;
    if p + q != n - 1 || q <= 0 {
        return Err(SpectralError::Precondition(format!("need p + q = n − 1 and q > 0 (p = {p}, q = {q}, n = {n})")));
    }
    let md = milnor_data(f, w)?;
    if md.milnor_number == 0 {
        return Err(SpectralError::Precondition("f has no singular point at the origin".into()));
    }
    let complex = GradedComplex::new(f, w, p)?;
    let k = (p + q) as usize;
    let big_n = complex.degree();
    let degrees = (0..=max_degree.max(-1))
        .into_par_iter()
        .map(|d| local_degree(&complex, k, d, big_n))
        .collect();
    Ok(FiltrationSliceReport { p, q, r: 2, window: (0, max_degree), primitive: false, degrees })
}

/// Same as [`e2_degeneration_check`] with the window `0..=2N + Σw`.
pub fn e2_degeneration_check_with_default(
    f: &Polynomial,
    w: &WeightSystem,
    p: i64,
    q: i64,
) -> Result<FiltrationSliceReport, SpectralError> {
    let big_n = GradedComplex::new(f, w, p)?.degree();
    e2_degeneration_check(f, w, p, q, 2 * big_n + w.total())
}

fn local_degree(complex: &GradedComplex, k: usize, d: i64, big_n: i64) -> DegreeCheck {
    let n = complex.nvars();
    let f = complex.f();
    let w = complex.weights();
    let slice = complex.slice(k, d);
    let target_index = basis_index(&slice.codomain_basis);

    let mut squares = EchelonBasis::new();
    for v in multiples(&f.pow(2), &graded_basis(n, k + 1, w, d - big_n), &target_index) {
        squares.insert(v);
    }
    let z = preimage(slice.matrix.columns(), &squares);

    let domain_index = basis_index(&slice.domain_basis);
    let mut target = EchelonBasis::new();
    for v in multiples(f, &graded_basis(n, k, w, d - big_n), &domain_index) {
        target.insert(slice.matrix.apply(&v));
    }
    check_z(complex, k, &slice.domain_basis, &slice.matrix, z, &target, d)
}

fn check_z(
    complex: &GradedComplex,
    k: usize,
    domain_basis: &[BasisForm],
    matrix: &SparseMatrix,
    z: Vec<SparseVec>,
    target: &EchelonBasis,
    d: i64,
) -> DegreeCheck {
    let n = complex.nvars();
    let f = complex.f();
    let mut z_verified = true;
    let mut witness = None;
    for v in &z {
        let alpha = from_coordinates(n, k, domain_basis, v);
        if !divisible_by_square(&twisted_diff(f, complex.p(), &alpha), f) {
            z_verified = false;
        }
        if witness.is_none() && !target.contains(&matrix.apply(v)) {
            witness = Some(alpha);
        }
    }
    DegreeCheck { degree: d, z_dim: z.len(), z_verified, inclusion_holds: witness.is_none(), witness }
}

/// Coordinates in `graded_basis(n, k, w, d)` of a basis of the forms
/// annihilated by `i_W`.
fn primitive_coordinates(n: usize, k: usize, w: &WeightSystem, d: i64) -> (Vec<BasisForm>, Vec<SparseVec>) {
    let basis = graded_basis(n, k, w, d);
    if k == 0 {
        let vecs = (0..basis.len()).map(|i| SparseVec::from([(i, crate::polyalg::rat(1))])).collect();
        return (basis, vecs);
    }
    let euler = euler_field(w);
    let lower = graded_basis(n, k - 1, w, d);
    let lower_index = basis_index(&lower);
    let columns = basis
        .iter()
        .map(|b| coordinates(&interior_product(&euler, &b.to_form()).expect("vector field into a form"), &lower_index))
        .collect();
    let kernel = SparseMatrix::from_columns(lower.len(), columns).nullspace();
    (basis, kernel)
}

/// Basis of the `k`-forms of weight `d` in `n` variables annihilated by the
/// Euler field.
pub fn euler_primitive_basis(n: usize, k: usize, w: &WeightSystem, d: i64) -> Vec<DifferentialForm> {
    let (basis, vecs) = primitive_coordinates(n, k, w, d);
    vecs.iter().map(|v| from_coordinates(n, k, &basis, v)).collect()
}

fn isolated_projective(f: &Polynomial, w: &WeightSystem) -> Result<i64, SpectralError> {
    let md = milnor_data(f, w)?;
    if md.milnor_number == 0 {
        return Err(SpectralError::Precondition("f has no singular point at the origin".into()));
    }
    Ok(md.degree)
}

/// The inclusion on primitive `(p+q)`-forms of weight exactly `qN`, with
/// target `d_f^(p)(f · Prim_{(q−1)N})`.
pub fn projective_degeneration_check(
    f: &Polynomial,
    w: &WeightSystem,
    p: i64,
    q: i64,
) -> Result<FiltrationSliceReport, SpectralError> {
    let n = f.nvars();
    let k = p + q;
    if q <= 0 || k < 0 || k as usize >= n {
        return Err(SpectralError::Precondition(format!(
            "need q > 0 and 0 ≤ p + q < {n} (p = {p}, q = {q})"
        )));
    }
    let big_n = isolated_projective(f, w)?;
    let complex = GradedComplex::new(f, w, p)?;
    let k = k as usize;
    let d = q * big_n;
    let check = projective_degree(&complex, k, d, big_n);
    Ok(FiltrationSliceReport { p, q, r: 2, window: (d, d), primitive: true, degrees: vec![check] })
}

fn projective_degree(complex: &GradedComplex, k: usize, d: i64, big_n: i64) -> DegreeCheck {
    let n = complex.nvars();
    let f = complex.f();
    let w = complex.weights();
    let slice = complex.slice(k, d);
    let target_index = basis_index(&slice.codomain_basis);
    let domain_index = basis_index(&slice.domain_basis);

    let (_, prim) = primitive_coordinates(n, k, w, d);
    let images: Vec<SparseVec> = prim.iter().map(|v| slice.matrix.apply(v)).collect();
    let mut squares = EchelonBasis::new();
    for v in multiples(&f.pow(2), &graded_basis(n, k + 1, w, d - big_n), &target_index) {
        squares.insert(v);
    }
    let z: Vec<SparseVec> = preimage(&images, &squares)
        .into_iter()
        .map(|c| {
            let mut acc = SparseVec::new();
            for (i, x) in c {
                crate::linalg::axpy(&mut acc, &x, &prim[i]);
            }
            acc
        })
        .collect();

    let (lower_basis, lower_prim) = primitive_coordinates(n, k, w, d - big_n);
    let mut target = EchelonBasis::new();
    for v in &lower_prim {
        let zeta = from_coordinates(n, k, &lower_basis, v).mul_poly(f);
        target.insert(slice.matrix.apply(&coordinates(&zeta, &domain_index)));
    }
    check_z(complex, k, &slice.domain_basis, &slice.matrix, z, &target, d)
}

fn require_primitive(alpha: &DifferentialForm, w: &WeightSystem) -> Result<i64, SpectralError> {
    if alpha.is_zero() || alpha.degree() == 0 {
        return Err(SpectralError::Precondition("expected a nonzero form of positive degree".into()));
    }
    let weight = alpha
        .weighted_degree(w)
        .ok_or_else(|| SpectralError::Precondition("the form is not quasi-homogeneous".into()))?;
    if !interior_product(&euler_field(w), alpha)?.is_zero() {
        return Err(SpectralError::NotPrimitive);
    }
    Ok(weight)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectiveVerdict {
    /// `f²` does not divide the image, so the form is outside `Z`.
    NotInZ,
    Contained,
    NotContained,
}

/// Classifies a single primitive form `α` of weight `qN`, where the twist is
/// `p = deg α − q`.
pub fn projective_form_verdict(
    f: &Polynomial,
    w: &WeightSystem,
    alpha: &DifferentialForm,
) -> Result<ProjectiveVerdict, SpectralError> {
    let big_n = isolated_projective(f, w)?;
    let weight = require_primitive(alpha, w)?;
    if weight % big_n != 0 || weight <= 0 {
        return Err(SpectralError::Precondition(format!("weight {weight} is not a positive multiple of {big_n}")));
    }
    let q = weight / big_n;
    let k = alpha.degree();
    let p = k as i64 - q;
    let eta = twisted_diff(f, p, alpha);
    if !divisible_by_square(&eta, f) {
        return Ok(ProjectiveVerdict::NotInZ);
    }
    Ok(if primitive_boundary_contains(f, w, p, k, weight, big_n, &eta) {
        ProjectiveVerdict::Contained
    } else {
        ProjectiveVerdict::NotContained
    })
}

/// Whether the primitive `(k+1)`-form `η` of weight `(q+1)N` lies in
/// `d_f^(p)(f · Prim^k_{(q−1)N})` with `p = k − q`.
pub fn in_primitive_boundary(f: &Polynomial, w: &WeightSystem, eta: &DifferentialForm) -> Result<bool, SpectralError> {
    let big_n = isolated_projective(f, w)?;
    let weight = require_primitive(eta, w)?;
    if weight % big_n != 0 || weight < 2 * big_n {
        return Err(SpectralError::Precondition(format!("weight {weight} is not a multiple of {big_n} above {big_n}")));
    }
    let q = weight / big_n - 1;
    let k = eta.degree() - 1;
    let p = k as i64 - q;
    Ok(primitive_boundary_contains(f, w, p, k, weight - big_n, big_n, eta))
}

fn primitive_boundary_contains(
    f: &Polynomial,
    w: &WeightSystem,
    p: i64,
    k: usize,
    d: i64,
    big_n: i64,
    eta: &DifferentialForm,
) -> bool {
    let n = f.nvars();
    let complex = GradedComplex::new(f, w, p).expect("quasi-homogeneity was checked");
    let slice = complex.slice(k, d);
    let domain_index = basis_index(&slice.domain_basis);
    let (lower_basis, lower_prim) = primitive_coordinates(n, k, w, d - big_n);
    let mut target = EchelonBasis::new();
    for v in &lower_prim {
        let zeta = from_coordinates(n, k, &lower_basis, v).mul_poly(f);
        target.insert(slice.matrix.apply(&coordinates(&zeta, &domain_index)));
    }
    target.contains(&coordinates(eta, &basis_index(&slice.codomain_basis)))
}
