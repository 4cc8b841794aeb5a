//! Randomized identity checks over seeded instances.
//!
//! Every check draws its inputs from a ChaCha8 stream derived from the
//! suite seed and the check name, so a failing instance can be replayed from
//! the seed printed in the report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::forms::{
    algebroid_bracket, algebroid_differential, divergence, evaluate_form, exterior_derivative, format_form,
    hamiltonian_field, interior_product, lie_bracket, lie_derivative_top, poisson_differential, poisson_iso,
    twisted_diff, vector_apply, DifferentialForm, MorphismOfPairs, MultiVector,
};
use crate::polyalg::{default_var_names, rat, Monomial, Polynomial, WeightSystem};
use crate::spectral::{euler_contraction_defect, meromorphic_d, MeromorphicForm};

/// Instance counts of the standard suite.
pub const COCHAIN_INSTANCES: usize = 1000;
pub const IDENTITY_INSTANCES: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// Description of the first failing instance.
    pub first_failure: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

/// Random polynomials, forms and vector fields with small integer
/// coefficients.
#[derive(Clone, Debug)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A stream for one named check, independent of the other checks.
    pub fn for_check(seed: u64, name: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in name.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Self::new(seed ^ h)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let c = self.range(-bound, bound);
            if c != 0 {
                return c;
            }
        }
    }

    fn monomial(&mut self, n: usize, max_degree: u32) -> Monomial {
        let total = self.rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..total {
            e[self.rng.gen_range(0..n)] += 1;
        }
        Monomial::new(e)
    }

    /// At most `terms` terms of total degree at most `max_degree`.
    pub fn poly(&mut self, n: usize, max_degree: u32, terms: usize) -> Polynomial {
        let count = self.rng.gen_range(0..=terms);
        let mut out = Polynomial::zero(n);
        for _ in 0..count {
            let m = self.monomial(n, max_degree);
            out.add_term(m, rat(self.nonzero(3)));
        }
        out
    }

    pub fn nonzero_poly(&mut self, n: usize, max_degree: u32, terms: usize) -> Polynomial {
        loop {
            let p = self.poly(n, max_degree, terms.max(1));
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Quasi-homogeneous of weighted degree `d`.
    pub fn graded_poly(&mut self, w: &WeightSystem, d: i64, terms: usize) -> Polynomial {
        let monomials = crate::polyalg::monomials_of_degree(w, d);
        let mut out = Polynomial::zero(w.nvars());
        if monomials.is_empty() {
            return out;
        }
        for _ in 0..self.rng.gen_range(1..=terms.max(1)) {
            let m = monomials[self.rng.gen_range(0..monomials.len())].clone();
            out.add_term(m, rat(self.nonzero(3)));
        }
        out
    }

    pub fn form(&mut self, n: usize, k: usize, max_degree: u32, terms: usize) -> DifferentialForm {
        let masks = crate::cohomology::index_sets(n, k);
        DifferentialForm::from_components(n, k, masks.into_iter().map(|m| (m, self.poly(n, max_degree, terms))))
    }

    pub fn field(&mut self, n: usize, max_degree: u32, terms: usize) -> MultiVector {
        MultiVector::from_vector((0..n).map(|_| self.poly(n, max_degree, terms)).collect())
    }
}

struct Tally {
    name: String,
    instances: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.to_string(), instances: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name,
            instances: self.instances,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn show_poly(f: &Polynomial) -> String {
    f.to_string_with(&default_var_names(f.nvars()))
}

fn show_form(a: &DifferentialForm) -> String {
    format_form(a, &default_var_names(a.nvars()))
}

/// `d_f^(p) ∘ d_f^(p) = 0` for random `f` in at most four variables of
/// degree at most six, `p ∈ −2..=n+1` and forms of every degree.
pub fn cochain_identity(seed: u64, instances: usize) -> IdentityCheck {
    let name = "cochain d_f^(p) ∘ d_f^(p) = 0";
    let mut rng = RandomSource::for_check(seed, name);
    let mut t = Tally::new(name);
    for _ in 0..instances {
        let n = rng.range(1, 4) as usize;
        let f = rng.poly(n, 6, 5);
        let p = rng.range(-2, n as i64 + 1);
        let k = rng.range(0, n as i64) as usize;
        let alpha = rng.form(n, k, 6, 3);
        let twice = twisted_diff(&f, p, &twisted_diff(&f, p, &alpha));
        t.record(twice.is_zero(), || format!("f = {}, p = {p}, α = {}", show_poly(&f), show_form(&alpha)));
    }
    t.finish()
}

/// `d_{fh}(h^k β) = h^{k+1} d_f β` for the untwisted differential.
pub fn scaling_identity(seed: u64, instances: usize) -> IdentityCheck {
    let name = "scaling d_{fh}(h^k β) = h^{k+1} d_f β";
    let mut rng = RandomSource::for_check(seed, name);
    let mut t = Tally::new(name);
    for _ in 0..instances {
        let n = rng.range(1, 3) as usize;
        let f = rng.poly(n, 3, 3);
        let h = rng.nonzero_poly(n, 2, 3);
        let k = rng.range(0, n as i64) as usize;
        let beta = rng.form(n, k, 3, 2);
        let lhs = twisted_diff(&(&f * &h), 0, &beta.mul_poly(&h.pow(k as u32)));
        let rhs = twisted_diff(&f, 0, &beta).mul_poly(&h.pow(k as u32 + 1));
        t.record(lhs == rhs, || format!("f = {}, h = {}, β = {}", show_poly(&f), show_poly(&h), show_form(&beta)));
    }
    t.finish()
}

/// `f^{k+1} dω = d(f^{k+1} ω) − (k+1) df ∧ (f^k ω)`.
pub fn singular_form_identity(seed: u64, instances: usize) -> IdentityCheck {
    let name = "singular forms f^{k+1} dω = d(f^{k+1} ω) − (k+1) df∧(f^k ω)";
    let mut rng = RandomSource::for_check(seed, name);
    let mut t = Tally::new(name);
    for _ in 0..instances {
        let n = rng.range(1, 3) as usize;
        let f = rng.poly(n, 3, 3);
        let k = rng.range(0, n as i64 - 1) as usize;
        let omega = rng.form(n, k, 3, 2);
        let fk = f.pow(k as u32);
        let fk1 = &fk * &f;
        let lhs = exterior_derivative(&omega).mul_poly(&fk1);
        let df = DifferentialForm::differential_of(&f);
        let rhs = &exterior_derivative(&omega.mul_poly(&fk1))
            - &df.wedge(&omega.mul_poly(&fk)).expect("same arity").scale(&rat(k as i64 + 1));
        t.record(lhs == rhs, || format!("f = {}, ω = {}", show_poly(&f), show_form(&omega)));
    }
    t.finish()
}

/// Random morphism of pairs: `g` random, `φ` a random polynomial map and
/// `f = (g ∘ φ) / a`.
fn random_morphism(rng: &mut RandomSource) -> (Polynomial, Polynomial, MorphismOfPairs) {
    let m = rng.range(1, 3) as usize;
    let n = rng.range(1, 3) as usize;
    let g = rng.poly(n, 2, 3);
    let phi: Vec<Polynomial> = (0..n).map(|_| rng.poly(m, 2, 2)).collect();
    let a = rat(rng.nonzero(3));
    let f = g.compose(&phi).scale(&(rat(1) / &a));
    let morphism = MorphismOfPairs::new(phi, a, &f, &g).expect("constructed to satisfy g∘φ = a f");
    (f, g, morphism)
}

/// `Φ*(d_g^(p) ω) = d_f^(p)(Φ* ω)` for random morphisms of pairs.
pub fn pullback_identity(seed: u64, instances: usize) -> IdentityCheck {
    let name = "pullback Φ*(d_g ω) = d_f(Φ* ω)";
    let mut rng = RandomSource::for_check(seed, name);
    let mut t = Tally::new(name);
    for _ in 0..instances {
        let (f, g, phi) = random_morphism(&mut rng);
        let n = g.nvars();
        let k = rng.range(0, n as i64) as usize;
        let p = rng.range(-1, n as i64);
        let omega = rng.form(n, k, 2, 2);
        let lhs = phi.pullback(&twisted_diff(&g, p, &omega)).expect("arity");
        let rhs = twisted_diff(&f, p, &phi.pullback(&omega).expect("arity"));
        t.record(lhs.components().eq(rhs.components()), || {
            format!("g = {}, φ = {:?}, p = {p}, ω = {}", show_poly(&g), phi.map().iter().map(show_poly).collect::<Vec<_>>(), show_form(&omega))
        });
    }
    t.finish()
}

/// In two variables with `Π = f ∂x∧∂y`: the isomorphism to forms intertwines
/// the Poisson boundary with `d_f = d_f^(0)`.
pub fn poisson_chain_map(seed: u64, instances: usize) -> IdentityCheck {
    let name = "Poisson isomorphism is a chain map";
    let mut rng = RandomSource::for_check(seed, name);
    let mut t = Tally::new(name);
    let nu = DifferentialForm::volume(2);
    for i in 0..instances {
        let f = rng.poly(2, 4, 4);
        let pi = MultiVector::top(f.clone());
        let item = if i % 2 == 0 { MultiVector::function(rng.poly(2, 4, 4)) } else { rng.field(2, 3, 3) };
        let lhs = poisson_iso(&nu, &poisson_differential(&pi, &item).expect("degree")).expect("dimension two");
        let rhs = twisted_diff(&f, 0, &poisson_iso(&nu, &item).expect("dimension two"));
        t.record(lhs.components().eq(rhs.components()), || format!("f = {}, degree {}", show_poly(&f), item.degree()));
    }
    t.finish()
}

/// For `n = 3` and `Λ = f ∂x∧∂y∧∂z`: the two-step complex squares to zero,
/// and `d_f^(1)(−i_X ν) = (X·f − f div X) ν`.
pub fn nambu_identities(seed: u64, instances: usize) -> Vec<IdentityCheck> {
    let name = "Nambu composite ∂∘∂ = 0";
    let mut rng = RandomSource::for_check(seed, name);
    let mut composite = Tally::new(name);
    let mut chain = Tally::new("Nambu vector fields map to d_f^(n−2)");
    let nu = DifferentialForm::volume(3);
    for _ in 0..instances {
        let f = rng.poly(3, 3, 4);
        let lambda = MultiVector::top(f.clone());
        let gs = [rng.poly(3, 2, 3), rng.poly(3, 2, 3)];
        let x = hamiltonian_field(&lambda, &gs).expect("two functions");
        let twice = lie_derivative_top(&x, &lambda).expect("vector field");
        composite.record(twice.is_zero(), || format!("f = {}, g = {}, {}", show_poly(&f), show_poly(&gs[0]), show_poly(&gs[1])));

        let y = rng.field(3, 2, 2);
        let lhs = twisted_diff(&f, 1, &-interior_product(&y, &nu).expect("vector into volume"));
        let rhs = DifferentialForm::top(&vector_apply(&y, &f) - &(&f * &divergence(&y)));
        chain.record(lhs.components().eq(rhs.components()), || format!("f = {}", show_poly(&f)));
    }
    vec![composite.finish(), chain.finish()]
}

/// Jacobi, anchor and Leibniz identities of the bracket
/// `⟦X,Y⟧ = f[X,Y] + (X·f)Y − (Y·f)X`, and agreement of the algebroid
/// differential with `d_f` on forms of degree at most two.
pub fn algebroid_identities(seed: u64, instances: usize) -> Vec<IdentityCheck> {
    let name = "algebroid";
    let mut rng = RandomSource::for_check(seed, name);
    let mut jacobi = Tally::new("algebroid Jacobi identity");
    let mut anchor = Tally::new("algebroid anchor f⟦X,Y⟧ = [fX, fY]");
    let mut leibniz = Tally::new("algebroid Leibniz ⟦X, gY⟧ = g⟦X,Y⟧ + (fX·g) Y");
    let mut agree = Tally::new("algebroid d_A = d_f on degrees ≤ 2");
    for _ in 0..instances {
        let n = rng.range(2, 3) as usize;
        let f = rng.poly(n, 2, 3);
        let x = rng.field(n, 2, 2);
        let y = rng.field(n, 2, 2);
        let z = rng.field(n, 2, 2);
        let br = |a: &MultiVector, b: &MultiVector| algebroid_bracket(&f, a, b);
        let cyc = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        jacobi.record(cyc.is_zero(), || format!("f = {}", show_poly(&f)));

        let lhs = br(&x, &y).mul_poly(&f);
        let rhs = lie_bracket(&x.mul_poly(&f), &y.mul_poly(&f));
        anchor.record(lhs == rhs, || format!("f = {}", show_poly(&f)));

        let g = rng.poly(n, 2, 3);
        let lhs = br(&x, &y.mul_poly(&g));
        let rhs = &br(&x, &y).mul_poly(&g) + &y.mul_poly(&vector_apply(&x.mul_poly(&f), &g));
        leibniz.record(lhs == rhs, || format!("f = {}, g = {}", show_poly(&f), show_poly(&g)));

        let r = rng.range(0, 2.min(n as i64 - 1)) as usize;
        let q = rng.form(n, r, 2, 2);
        let args: Vec<MultiVector> = (0..=r).map(|_| rng.field(n, 1, 2)).collect();
        let da = algebroid_differential(&f, &q, &args).expect("matching arity");
        let df = evaluate_form(&twisted_diff(&f, 0, &q), &args).expect("matching arity");
        agree.record(da == df, || format!("f = {}, Q = {}", show_poly(&f), show_form(&q)));
    }
    vec![jacobi.finish(), anchor.finish(), leibniz.finish(), agree.finish()]
}

/// `d ∘ d = 0` on meromorphic forms, with the twist read off the pole order.
pub fn meromorphic_identity(seed: u64, instances: usize) -> IdentityCheck {
    let name = "meromorphic d ∘ d = 0";
    let mut rng = RandomSource::for_check(seed, name);
    let mut t = Tally::new(name);
    for _ in 0..instances {
        let n = rng.range(1, 3) as usize;
        let f = rng.nonzero_poly(n, 3, 3);
        let k = rng.range(0, n as i64) as usize;
        let s = rng.range(0, 3) as u32;
        let omega = MeromorphicForm::new(rng.form(n, k, 3, 2), s, &f);
        let ok = meromorphic_d(&omega, &f, omega.twist())
            .and_then(|d1| meromorphic_d(&d1, &f, d1.twist()))
            .map(|d2| d2.is_zero())
            .unwrap_or(false);
        t.record(ok, || format!("f = {}, ω = {}", show_poly(&f), omega.to_string_with(&default_var_names(n))));
    }
    t.finish()
}

/// `i_W d_f^(p) α = f (deg α − (k−p) N) α − d_f^(p−1) i_W α` on random
/// quasi-homogeneous data.
pub fn euler_contraction_identity(seed: u64, instances: usize) -> IdentityCheck {
    let name = "Euler contraction of d_f^(p)";
    let mut rng = RandomSource::for_check(seed, name);
    let mut t = Tally::new(name);
    for _ in 0..instances {
        let n = rng.range(2, 3) as usize;
        let w = WeightSystem::new((0..n).map(|_| rng.range(1, 3) as u32).collect()).expect("positive weights");
        let big_n = rng.monomial(n, 3).weighted_degree(&w).max(w.weight(0));
        // nonempty degree, so only cancellation can produce zero
        let f = loop {
            let f = rng.graded_poly(&w, big_n, 3);
            if !f.is_zero() {
                break f;
            }
        };
        let k = rng.range(0, n as i64) as usize;
        let d = rng.range(0, 8);
        let p = rng.range(-1, n as i64);
        let masks = crate::cohomology::index_sets(n, k);
        let alpha = DifferentialForm::from_components(
            n,
            k,
            masks.into_iter().map(|m| {
                let base: i64 = crate::forms::indices(m).iter().map(|&i| w.weight(i)).sum();
                (m, rng.graded_poly(&w, d - base, 2))
            }),
        );
        let ok = euler_contraction_defect(&f, &w, p, &alpha).map(|e| e.is_zero()).unwrap_or(false);
        t.record(ok, || format!("f = {}, p = {p}, α = {}", show_poly(&f), show_form(&alpha)));
    }
    t.finish()
}

/// The full suite run by `verify`.
pub fn run_suite(seed: u64, cochain_instances: usize, identity_instances: usize) -> VerifyReport {
    let mut checks = vec![
        cochain_identity(seed, cochain_instances),
        scaling_identity(seed, identity_instances),
        singular_form_identity(seed, identity_instances),
        pullback_identity(seed, identity_instances),
        poisson_chain_map(seed, identity_instances),
    ];
    checks.extend(nambu_identities(seed, identity_instances));
    checks.extend(algebroid_identities(seed, identity_instances));
    checks.push(meromorphic_identity(seed, identity_instances));
    checks.push(euler_contraction_identity(seed, identity_instances));
    VerifyReport { seed, checks }
}
