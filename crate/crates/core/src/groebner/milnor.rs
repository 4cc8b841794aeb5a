use std::collections::BTreeMap;

use serde::Serialize;

use super::{buchberger, GroebnerBasis, GroebnerError, MonomialOrder};
use crate::polyalg::{Monomial, PolyError, Polynomial, WeightSystem};

/// Jacobian-ideal data of a quasi-homogeneous isolated singularity.
#[derive(Clone, Debug, Serialize)]
pub struct MilnorData {
    #[serde(skip)]
    pub jacobian_gb: GroebnerBasis,
    pub basis_b: Vec<Monomial>,
    pub milnor_number: usize,
    pub graded_dims: BTreeMap<i64, usize>,
    /// `q -> h^{q, n-q}` for `q = 1..=n`.
    pub hodge: BTreeMap<u32, usize>,
    pub degree: i64,
    pub weight_sum: i64,
}

impl MilnorData {
    pub fn nvars(&self) -> usize {
        self.jacobian_gb.nvars()
    }

    pub fn graded_dim(&self, d: i64) -> usize {
        self.graded_dims.get(&d).copied().unwrap_or(0)
    }

    pub fn hodge_number(&self, q: u32) -> usize {
        self.hodge.get(&q).copied().unwrap_or(0)
    }

    /// Monomials of `B` of weighted degree `d`.
    pub fn basis_in_degree(&self, w: &WeightSystem, d: i64) -> Vec<Monomial> {
        self.basis_b.iter().filter(|m| m.weighted_degree(w) == d).cloned().collect()
    }
}

/// Monomials outside the leading-term ideal of `gb`, sorted by weighted
/// degree and then from largest to smallest in the basis order. Errors when
/// the set is infinite.
pub fn standard_monomials(gb: &GroebnerBasis, w: &WeightSystem) -> Result<Vec<Monomial>, GroebnerError> {
    if gb.is_unit_ideal() {
        return Ok(Vec::new());
    }
    let lms = gb.leading_monomials();
    let n = gb.nvars();
    let mut bounds = vec![None; n];
    for m in &lms {
        if let Some((i, e)) = m.pure_power() {
            bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>().ok_or(GroebnerError::NotIsolatedSingularity)?;

    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::new(exps.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                let order = gb.order().clone();
                out.sort_by(|a, b| a.weighted_degree(w).cmp(&b.weighted_degree(w)).then_with(|| order.compare(b, a)));
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Gröbner basis of the Jacobian ideal of `f` under weighted grevlex,
/// the standard-monomial basis of the Milnor algebra and its grading.
pub fn milnor_data(f: &Polynomial, w: &WeightSystem) -> Result<MilnorData, GroebnerError> {
    if f.nvars() != w.nvars() {
        return Err(PolyError::ArityMismatch { left: f.nvars(), right: w.nvars() }.into());
    }
    let degree = f.is_quasi_homogeneous(w)?.ok_or(GroebnerError::NotQuasiHomogeneous)?;
    if f.is_constant() {
        return Err(GroebnerError::Precondition("f must be nonconstant".into()));
    }
    let gb = buchberger(&f.gradient(), &MonomialOrder::weighted(w))?;
    let basis_b = standard_monomials(&gb, w)?;
    let mut graded_dims = BTreeMap::new();
    for m in &basis_b {
        *graded_dims.entry(m.weighted_degree(w)).or_insert(0) += 1;
    }
    let weight_sum = w.total();
    let n = w.nvars() as u32;
    let hodge = (1..=n)
        .map(|q| (q, graded_dims.get(&(q as i64 * degree - weight_sum)).copied().unwrap_or(0)))
        .collect();
    Ok(MilnorData { jacobian_gb: gb, milnor_number: basis_b.len(), basis_b, graded_dims, hodge, degree, weight_sum })
}
