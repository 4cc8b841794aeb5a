use fcohom::cohomology::{graded_basis, GradedComplex, NormalFormSolver};
use fcohom::forms::{exterior_derivative, format_form, parse_form, twisted_diff, DifferentialForm};
use fcohom::groebner::milnor_data;
use fcohom::polyalg::{default_var_names, parse_poly, rat, Monomial, Polynomial, WeightSystem};
use fcohom::spectral::{meromorphic_d, MeromorphicForm};
use proptest::prelude::*;

fn poly_strategy(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -5i64..=5), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial::new(e), rat(c))))
    })
}

/// A `k`-form with coefficients drawn independently per component.
fn form_strategy(n: usize, k: usize) -> impl Strategy<Value = DifferentialForm> {
    let masks: Vec<Vec<usize>> = fcohom::cohomology::index_sets(n, k).into_iter().map(fcohom::forms::indices).collect();
    prop::collection::vec(poly_strategy(n, 3, 3), masks.len()).prop_map(move |coeffs| {
        coeffs.into_iter().zip(&masks).fold(DifferentialForm::zero(n, k), |acc, (c, idx)| {
            acc.try_add(&DifferentialForm::monomial(c, idx)).unwrap()
        })
    })
}

fn nk_form() -> impl Strategy<Value = (usize, DifferentialForm)> {
    (2usize..=3).prop_flat_map(|n| (0..n).prop_flat_map(move |k| form_strategy(n, k).prop_map(move |a| (n, a))))
}

/// Fermat sums `Σ x_i^{a_i}` with their natural weights.
fn fermat() -> impl Strategy<Value = (Polynomial, WeightSystem)> {
    prop::collection::vec(2u32..=4, 2..=3).prop_map(|exps| {
        let big_n: u32 = exps.iter().product();
        let n = exps.len();
        let f = exps.iter().enumerate().fold(Polynomial::zero(n), |acc, (i, &a)| {
            let mut e = vec![0; n];
            e[i] = a;
            &acc + &Polynomial::term(Monomial::new(e), rat(1))
        });
        let w = WeightSystem::new(exps.iter().map(|&a| big_n / a).collect()).unwrap();
        (f, w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisted_differential_squares_to_zero((n, alpha) in nk_form(), f in poly_strategy(3, 3, 4), p in -2i64..=3) {
        let f = Polynomial::from_terms(n, f.terms().map(|(m, c)| (Monomial::new(m.exponents()[..n].to_vec()), c.clone())));
        let twice = twisted_diff(&f, p, &twisted_diff(&f, p, &alpha));
        prop_assert!(twice.is_zero());
    }

    #[test]
    fn twisted_differential_at_the_form_degree_is_f_times_d((n, alpha) in nk_form(), g in poly_strategy(2, 3, 3)) {
        let f = Polynomial::from_terms(n, g.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(n, 0);
            (Monomial::new(e), c.clone())
        }));
        let k = alpha.degree() as i64;
        prop_assert_eq!(twisted_diff(&f, k, &alpha), exterior_derivative(&alpha).mul_poly(&f));
    }

    #[test]
    fn form_text_round_trips((n, alpha) in nk_form()) {
        let vars = default_var_names(n);
        let text = format_form(&alpha, &vars);
        let back = parse_form(&text, &vars).unwrap();
        prop_assert!(back.components().eq(alpha.components()) || (alpha.is_zero() && back.is_zero()));
    }

    #[test]
    fn polynomial_text_round_trips(f in poly_strategy(3, 4, 6)) {
        let vars = default_var_names(3);
        prop_assert_eq!(parse_poly(&f.to_string_with(&vars), &vars).unwrap(), f);
    }

    #[test]
    fn milnor_algebra_is_graded_symmetric((f, w) in fermat()) {
        let md = milnor_data(&f, &w).unwrap();
        let top = f.nvars() as i64 * md.degree - 2 * md.weight_sum;
        for (&d, &dim) in &md.graded_dims {
            prop_assert_eq!(md.graded_dim(top - d), dim);
        }
        let product: usize = f.terms().map(|(m, _)| m.exponents().iter().copied().max().unwrap() as usize - 1).product();
        prop_assert_eq!(md.milnor_number, product);
    }

    /// Along `d, d + N, d + 2N, …` the alternating sum of space dimensions
    /// equals that of cohomology dimensions.
    #[test]
    fn euler_characteristic_of_diagonal_slices((f, w) in fermat(), p in -1i64..=3, d in 0i64..=6) {
        let complex = GradedComplex::new(&f, &w, p).unwrap();
        let n = f.nvars();
        let big_n = complex.degree();
        let mut chi_space = 0i64;
        let mut chi_cohom = 0i64;
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let weight = d + k as i64 * big_n;
            chi_space += sign * graded_basis(n, k, &w, weight).len() as i64;
            chi_cohom += sign * complex.cohomology_dim(k, weight) as i64;
        }
        prop_assert_eq!(chi_space, chi_cohom);
    }

    #[test]
    fn cohomology_is_invariant_under_scaling_f((f, w) in fermat(), c in 2i64..=5, p in -1i64..=2, k in 0usize..=3, d in 0i64..=8) {
        let k = k.min(f.nvars());
        let a = GradedComplex::new(&f, &w, p).unwrap().cohomology_dim(k, d);
        let b = GradedComplex::new(&f.scale(&rat(c)), &w, p).unwrap().cohomology_dim(k, d);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn meromorphic_differential_squares_to_zero((n, alpha) in nk_form(), s in 0u32..=2) {
        let f = parse_poly("x^2 + y^2", &default_var_names(2)).unwrap();
        let f = Polynomial::from_terms(n, f.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(n, 0);
            (Monomial::new(e), c.clone())
        }));
        let omega = MeromorphicForm::new(alpha, s, &f);
        let once = meromorphic_d(&omega, &f, omega.twist()).unwrap();
        let twice = meromorphic_d(&once, &f, once.twist()).unwrap();
        prop_assert!(twice.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_forms_are_linear(a in poly_strategy(2, 6, 4), b in poly_strategy(2, 6, 4), p in -1i64..=0) {
        let vars = default_var_names(2);
        let f = parse_poly("x^3 + y^3", &vars).unwrap();
        let solver = NormalFormSolver::new(&f, &WeightSystem::standard(2), p).unwrap();
        let ra = solver.solve(&DifferentialForm::top(a.clone())).unwrap();
        let rb = solver.solve(&DifferentialForm::top(b.clone())).unwrap();
        let rs = solver.solve(&DifferentialForm::top(&a + &b)).unwrap();
        for j in 0..rs.h.len() {
            prop_assert_eq!(&rs.h[j], &(&ra.h[j] + &rb.h[j]));
        }
    }
}
