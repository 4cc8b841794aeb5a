//! Normal forms of top-degree forms modulo the image of `d_f^(p)`.
//!
//! Every polynomial `n`-form `η` decomposes uniquely as
//! `(h_{n−p} + f h_{n−p−1} + … + f^{n−p} h_1) ν + d_f^(p) γ` with `h_1` of
//! weighted degree `N − Σw`, `h_j` (`2 ≤ j ≤ n−p−1`) spanned by monomials of
//! `B` of degree `jN − Σw`, and `h_{n−p}` spanned by `B`. The solver works one
//! weighted degree at a time: the candidates from this shape are adjoined to
//! the image columns and `η` is expressed in the combined basis.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{basis_index, coordinates, graded_basis, CohomologyError, GradedComplex};
use crate::forms::{twisted_diff, DifferentialForm};
use crate::groebner::{milnor_data, MilnorData};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::polyalg::{default_var_names, monomials_of_degree, Monomial, Polynomial, Rational, WeightSystem};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalFormOptions {
    /// Permute the image columns with this seed before solving.
    pub shuffle_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    /// `h_1, …, h_{n−p}`.
    pub h: Vec<Polynomial>,
    /// An `(n−1)`-form with `η − Hν = d_f^(p) γ`.
    pub witness: DifferentialForm,
}

#[derive(Clone, Debug)]
struct Candidate {
    /// Index `j` of the `h_j` this candidate contributes to.
    slot: usize,
    monomial: Monomial,
}

pub struct NormalFormSolver {
    complex: GradedComplex,
    milnor: MilnorData,
    options: NormalFormOptions,
}

impl NormalFormSolver {
    pub fn new(f: &Polynomial, w: &WeightSystem, p: i64) -> Result<Self, CohomologyError> {
        Self::with_options(f, w, p, NormalFormOptions::default())
    }

    pub fn with_options(f: &Polynomial, w: &WeightSystem, p: i64, options: NormalFormOptions) -> Result<Self, CohomologyError> {
        let complex = GradedComplex::new(f, w, p)?;
        let n = f.nvars() as i64;
        if p >= n - 1 {
            return Err(CohomologyError::Precondition(format!("normal forms need p < n − 1 (p = {p}, n = {n})")));
        }
        let milnor = milnor_data(f, w)?;
        Ok(NormalFormSolver { complex, milnor, options })
    }

    pub fn milnor(&self) -> &MilnorData {
        &self.milnor
    }

    fn slots(&self) -> usize {
        (self.complex.nvars() as i64 - self.complex.p()) as usize
    }

    /// Candidate monomials at weighted degree `d` of top forms.
    fn candidates(&self, d: i64) -> Vec<Candidate> {
        let w = self.complex.weights();
        let big_n = self.complex.degree();
        let s = w.total();
        let slots = self.slots();
        let mut out = Vec::new();
        if d == slots as i64 * big_n {
            for j in 1..slots {
                let deg = j as i64 * big_n - s;
                let monomials =
                    if j == 1 { monomials_of_degree(w, deg) } else { self.milnor.basis_in_degree(w, deg) };
                out.extend(monomials.into_iter().map(|m| Candidate { slot: j, monomial: m }));
            }
        }
        out.extend(self.milnor.basis_in_degree(w, d - s).into_iter().map(|m| Candidate { slot: slots, monomial: m }));
        out
    }

    fn f_power(&self, e: usize) -> Polynomial {
        self.complex.f().pow(e as u32)
    }

    /// `(h_{n−p} + f h_{n−p−1} + … + f^{n−p} h_1) ν`.
    pub fn representative(&self, h: &[Polynomial]) -> DifferentialForm {
        let slots = self.slots();
        let n = self.complex.nvars();
        let mut acc = Polynomial::zero(n);
        for (idx, hj) in h.iter().enumerate() {
            let j = idx + 1;
            acc += &(&self.f_power(slots - j) * hj);
        }
        DifferentialForm::top(acc)
    }

    pub fn solve(&self, eta: &DifferentialForm) -> Result<NormalFormResult, CohomologyError> {
        let n = self.complex.nvars();
        if eta.nvars() != n || (eta.degree() != n && !eta.is_zero()) {
            return Err(CohomologyError::Precondition("η must be a top-degree form in the ambient variables".into()));
        }
        let w = self.complex.weights();
        let slots = self.slots();
        let mut h = vec![Polynomial::zero(n); slots];
        let mut witness = DifferentialForm::zero(n, n - 1);
        for (d, part) in eta.graded_parts(w) {
            let (hd, gamma) = self.solve_degree(d, &part)?;
            for (slot, poly) in hd {
                h[slot - 1] += &poly;
            }
            witness = witness.try_add(&gamma)?;
        }
        Ok(NormalFormResult { h, witness })
    }

    fn solve_degree(
        &self,
        d: i64,
        eta: &DifferentialForm,
    ) -> Result<(BTreeMap<usize, Polynomial>, DifferentialForm), CohomologyError> {
        let n = self.complex.nvars();
        let big_n = self.complex.degree();
        let w = self.complex.weights();
        let target_basis = graded_basis(n, n, w, d);
        let target_index = basis_index(&target_basis);

        let image = self.complex.slice(n - 1, d - big_n);
        let mut order: Vec<usize> = (0..image.domain_basis.len()).collect();
        if let Some(seed) = self.options.shuffle_seed {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ d as u64));
        }
        let mut ech = EchelonBasis::tracking();
        for &j in &order {
            let _ = ech.insert_column(j, image.matrix.column(j).clone());
        }
        let offset = image.domain_basis.len();
        let candidates = self.candidates(d);
        let vars = default_var_names(n);
        for (c, cand) in candidates.iter().enumerate() {
            let form = self.candidate_form(cand);
            if ech.insert_column(offset + c, coordinates(&form, &target_index)).is_err() {
                let name = format!("h_{} ∋ {}", cand.slot, cand.monomial.to_string_with(&vars));
                return Err(CohomologyError::NonUnique { degree: d, candidate: name });
            }
        }
        let (rem, combo) = ech.reduce(&coordinates(eta, &target_index));
        if !rem.is_empty() {
            return Err(CohomologyError::Inconsistent { degree: d });
        }
        let mut h: BTreeMap<usize, Polynomial> = BTreeMap::new();
        let mut gamma = SparseVec::new();
        for (label, coef) in combo {
            if label < offset {
                gamma.insert(label, coef);
            } else {
                let cand = &candidates[label - offset];
                h.entry(cand.slot)
                    .or_insert_with(|| Polynomial::zero(n))
                    .add_term(cand.monomial.clone(), coef);
            }
        }
        let gamma = super::from_coordinates(n, n - 1, &image.domain_basis, &gamma);
        Ok((h, gamma))
    }

    fn candidate_form(&self, cand: &Candidate) -> DifferentialForm {
        let m = Polynomial::term(cand.monomial.clone(), Rational::from_integer(1.into()));
        DifferentialForm::top(&self.f_power(self.slots() - cand.slot) * &m)
    }

    /// Checks the shape constraints and the witness identity.
    pub fn check(&self, eta: &DifferentialForm, res: &NormalFormResult) -> Result<(), String> {
        let w = self.complex.weights();
        let big_n = self.complex.degree();
        let s = w.total();
        let slots = self.slots();
        if res.h.len() != slots {
            return Err(format!("expected {slots} polynomials, found {}", res.h.len()));
        }
        let in_b = |m: &Monomial| self.milnor.basis_b.contains(m);
        for (idx, hj) in res.h.iter().enumerate() {
            let j = idx + 1;
            for (m, _) in hj.terms() {
                let deg = m.weighted_degree(w);
                let ok = if j == slots {
                    in_b(m)
                } else if j == 1 {
                    deg == big_n - s
                } else {
                    in_b(m) && deg == j as i64 * big_n - s
                };
                if !ok {
                    return Err(format!("h_{j} violates its shape constraint"));
                }
            }
        }
        let lhs = eta - &self.representative(&res.h);
        let rhs = twisted_diff(self.complex.f(), self.complex.p(), &res.witness);
        if lhs.components().ne(rhs.components()) {
            return Err("witness identity fails".into());
        }
        Ok(())
    }
}

impl std::fmt::Debug for NormalFormSolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NormalFormSolver").field("p", &self.complex.p()).finish()
    }
}

/// Unique decomposition of the top form `η`.
pub fn normal_form_nform(f: &Polynomial, w: &WeightSystem, p: i64, eta: &DifferentialForm) -> Result<NormalFormResult, CohomologyError> {
    NormalFormSolver::new(f, w, p)?.solve(eta)
}
