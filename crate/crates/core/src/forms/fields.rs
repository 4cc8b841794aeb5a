//! Vector-field calculus, the Poisson and Nambu complexes, and the Lie
//! algebroid with anchor `ρ(X) = fX`.

use super::{
    contract_multivector, indices, interior_product, inv_factorial, ri, DifferentialForm, FormError, MultiVector,
};
use crate::polyalg::{Polynomial, Rational};

fn expect_degree<K: super::Kind>(a: &super::Alternating<K>, k: usize) -> Result<(), FormError> {
    if a.degree() != k {
        return Err(FormError::DegreeMismatch { expected: k, found: a.degree() });
    }
    Ok(())
}

fn same_arity(a: usize, b: usize) -> Result<(), FormError> {
    if a != b {
        return Err(FormError::ArityMismatch { left: a, right: b });
    }
    Ok(())
}

/// `X·g = Σ X_i ∂_i g`.
pub fn vector_apply(x: &MultiVector, g: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(g.nvars());
    for (m, c) in x.components() {
        let i = m.trailing_zeros() as usize;
        out += &(c * &g.derivative(i));
    }
    out
}

pub fn divergence(x: &MultiVector) -> Polynomial {
    let mut out = Polynomial::zero(x.nvars());
    for (m, c) in x.components() {
        out += &c.derivative(m.trailing_zeros() as usize);
    }
    out
}

/// `[X, Y]_i = X·Y_i − Y·X_i`.
pub fn lie_bracket(x: &MultiVector, y: &MultiVector) -> MultiVector {
    let n = x.nvars();
    let xs = x.as_vector();
    let ys = y.as_vector();
    MultiVector::from_vector((0..n).map(|i| &vector_apply(x, &ys[i]) - &vector_apply(y, &xs[i])).collect())
}

/// `𝓛_X Λ` for a top-degree `Λ = g ∂_1∧…∧∂_n`: `(X·g − g div X) ∂_1∧…∧∂_n`.
pub fn lie_derivative_top(x: &MultiVector, lambda: &MultiVector) -> Result<MultiVector, FormError> {
    same_arity(x.nvars(), lambda.nvars())?;
    expect_degree(x, 1)?;
    expect_degree(lambda, lambda.nvars())?;
    let g = lambda.top_coeff();
    Ok(MultiVector::top(&vector_apply(x, &g) - &(&g * &divergence(x))))
}

/// `X_{g_1..g_{n−1}} = i_{dg_1∧…∧dg_{n−1}} Λ`.
pub fn hamiltonian_field(lambda: &MultiVector, gs: &[Polynomial]) -> Result<MultiVector, FormError> {
    let n = lambda.nvars();
    expect_degree(lambda, n)?;
    if gs.len() + 1 != n {
        return Err(FormError::DegreeMismatch { expected: n - 1, found: gs.len() });
    }
    let mut beta = DifferentialForm::function(Polynomial::one(n));
    for g in gs {
        same_arity(n, g.nvars())?;
        beta = beta.wedge(&DifferentialForm::differential_of(g))?;
    }
    contract_multivector(&beta, lambda)
}

/// The boundary of the complex built on a top-degree multivector `Λ`:
/// `g ↦ i_{dg} Λ` on functions, `X ↦ 𝓛_X Λ` on vector fields, and zero on
/// top-degree elements.
pub fn poisson_differential(lambda: &MultiVector, q: &MultiVector) -> Result<MultiVector, FormError> {
    let n = lambda.nvars();
    same_arity(n, q.nvars())?;
    expect_degree(lambda, n)?;
    match q.degree() {
        0 => contract_multivector(&DifferentialForm::differential_of(&q.as_function()), lambda),
        1 => lie_derivative_top(q, lambda),
        d if d == n => Ok(MultiVector::zero(n, n + 1)),
        d => Err(FormError::DegreeMismatch { expected: 1, found: d }),
    }
}

/// The chain isomorphism from multivectors to forms in dimension two:
/// identity on functions, `X ↦ −i_X ν`, and `Γ ↦ (i_Γ ν) ν`.
pub fn poisson_iso(nu: &DifferentialForm, item: &MultiVector) -> Result<DifferentialForm, FormError> {
    if nu.nvars() != 2 {
        return Err(FormError::WrongDimension { expected: 2, found: nu.nvars() });
    }
    same_arity(2, item.nvars())?;
    expect_degree(nu, 2)?;
    match item.degree() {
        0 => Ok(DifferentialForm::function(item.as_function())),
        1 => Ok(-interior_product(item, nu)?),
        _ => {
            let c = interior_product(item, nu)?.as_function();
            Ok(nu.mul_poly(&c))
        }
    }
}

/// `⟦X, Y⟧ = f[X,Y] + (X·f)Y − (Y·f)X`.
pub fn algebroid_bracket(f: &Polynomial, x: &MultiVector, y: &MultiVector) -> MultiVector {
    let a = lie_bracket(x, y).mul_poly(f);
    let b = y.mul_poly(&vector_apply(x, f));
    let c = x.mul_poly(&vector_apply(y, f));
    &(&a + &b) - &c
}

fn determinant(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(nvars),
        1 => m[0][0].clone(),
        k => {
            let mut out = Polynomial::zero(nvars);
            for col in 0..k {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = &m[0][col] * &determinant(&minor, nvars);
                if col % 2 == 0 {
                    out += &term;
                } else {
                    out -= &term;
                }
            }
            out
        }
    }
}

/// Evaluation of a `k`-form on `k` vector fields with the `1/k!`
/// normalization: `ω(u_1..u_k) = (1/k!) Σ_I ω_I det[dx_{I_a}(u_b)]`.
pub fn evaluate_form(omega: &DifferentialForm, args: &[MultiVector]) -> Result<Polynomial, FormError> {
    let n = omega.nvars();
    if args.len() != omega.degree() {
        return Err(FormError::DegreeMismatch { expected: omega.degree(), found: args.len() });
    }
    let vecs = args
        .iter()
        .map(|u| {
            same_arity(n, u.nvars())?;
            expect_degree(u, 1)?;
            Ok(u.as_vector())
        })
        .collect::<Result<Vec<_>, FormError>>()?;
    let mut out = Polynomial::zero(n);
    for (mask, c) in omega.components() {
        let idx = indices(mask);
        let m: Vec<Vec<Polynomial>> = idx.iter().map(|&i| vecs.iter().map(|v| v[i].clone()).collect()).collect();
        out += &(c * &determinant(&m, n));
    }
    Ok(out.scale(&inv_factorial(omega.degree())))
}

/// The algebroid differential `d_A Q (u_0, …, u_r)` with anchor `fX` and
/// bracket `⟦,⟧`, including the `1/(r+1)` normalization and evaluated with
/// [`evaluate_form`].
pub fn algebroid_differential(f: &Polynomial, q: &DifferentialForm, args: &[MultiVector]) -> Result<Polynomial, FormError> {
    let r = q.degree();
    if args.len() != r + 1 {
        return Err(FormError::DegreeMismatch { expected: r + 1, found: args.len() });
    }
    let n = q.nvars();
    let mut total = Polynomial::zero(n);
    for k in 0..=r {
        let rest: Vec<MultiVector> = args.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, u)| u.clone()).collect();
        let anchored = args[k].mul_poly(f);
        let term = vector_apply(&anchored, &evaluate_form(q, &rest)?);
        if k % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    for k in 0..=r {
        for l in k + 1..=r {
            let mut tuple = vec![algebroid_bracket(f, &args[k], &args[l])];
            tuple.extend(args.iter().enumerate().filter(|(i, _)| *i != k && *i != l).map(|(_, u)| u.clone()));
            let term = evaluate_form(q, &tuple)?;
            if (k + l) % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        }
    }
    Ok(total.scale(&(Rational::from_integer(1.into()) / ri(r as i64 + 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::twisted_diff;
    use crate::polyalg::parse_poly;

    fn v(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &v(2)).unwrap()
    }

    fn field(cs: &[&str]) -> MultiVector {
        MultiVector::from_vector(cs.iter().map(|c| parse_poly(c, &v(cs.len())).unwrap()).collect())
    }

    #[test]
    fn lie_derivative_examples() {
        let top = |s: &str| MultiVector::top(p(s));
        assert_eq!(lie_derivative_top(&field(&["1", "0"]), &top("x")).unwrap(), top("1"));
        assert_eq!(lie_derivative_top(&field(&["x", "0"]), &top("1")).unwrap(), top("-1"));
        assert!(lie_derivative_top(&field(&["x*y", "y^2"]), &MultiVector::zero(2, 2)).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_examples() {
        let unit = MultiVector::top(Polynomial::one(2));
        assert_eq!(hamiltonian_field(&unit, &[p("x")]).unwrap(), field(&["0", "1"]));
        let f = p("x^2 + y^3");
        let g = p("x*y^2");
        let got = hamiltonian_field(&MultiVector::top(f.clone()), std::slice::from_ref(&g)).unwrap();
        let expected = MultiVector::from_vector(vec![-(&f * &g.derivative(1)), &f * &g.derivative(0)]);
        assert_eq!(got, expected);
        let v3 = v(3);
        let g3 = parse_poly("x*z + y", &v3).unwrap();
        let lam = MultiVector::top(parse_poly("x^2 + y^2 + z^2", &v3).unwrap());
        assert!(hamiltonian_field(&lam, &[g3.clone(), g3]).unwrap().is_zero());
    }

    #[test]
    fn poisson_iso_examples() {
        let nu = DifferentialForm::volume(2);
        let got = poisson_iso(&nu, &field(&["1", "0"])).unwrap();
        assert_eq!(got, DifferentialForm::monomial(p("-1"), &[1]));
        assert_eq!(poisson_iso(&nu, &MultiVector::top(Polynomial::one(2))).unwrap(), nu);
        let g = MultiVector::function(p("x^3 - y"));
        assert_eq!(poisson_iso(&nu, &g).unwrap(), DifferentialForm::function(p("x^3 - y")));
        assert!(poisson_iso(&DifferentialForm::volume(3), &MultiVector::zero(3, 1)).is_err());
    }

    #[test]
    fn algebroid_bracket_examples() {
        let f = p("x*y");
        let x = field(&["1", "0"]);
        let y = field(&["0", "1"]);
        assert_eq!(algebroid_bracket(&f, &x, &y), field(&["-x", "y"]));
        assert!(algebroid_bracket(&f, &x, &x).is_zero());
        let a = field(&["x*y", "1"]);
        let b = field(&["y", "x^2"]);
        assert_eq!(algebroid_bracket(&Polynomial::one(2), &a, &b), lie_bracket(&a, &b));
    }

    #[test]
    fn algebroid_differential_matches_twisted() {
        let f = p("x^2 + y^2");
        let q = DifferentialForm::function(p("x*y"));
        let x = field(&["y", "x^2"]);
        let lhs = algebroid_differential(&f, &q, std::slice::from_ref(&x)).unwrap();
        assert_eq!(lhs, &f * &vector_apply(&x, &p("x*y")));
        let dx = DifferentialForm::monomial(Polynomial::one(2), &[0]);
        let args = [field(&["1", "0"]), field(&["0", "1"])];
        let lhs = algebroid_differential(&f, &dx, &args).unwrap();
        let rhs = evaluate_form(&twisted_diff(&f, 0, &dx), &args).unwrap();
        assert_eq!(lhs, rhs);
        assert!(algebroid_differential(&f, &DifferentialForm::zero(2, 1), &args).unwrap().is_zero());
    }

    #[test]
    fn evaluation_is_normalized() {
        let args = [field(&["1", "0"]), field(&["0", "1"])];
        let vol = DifferentialForm::volume(2);
        assert_eq!(evaluate_form(&vol, &args).unwrap(), Polynomial::constant(2, crate::polyalg::ratio(1, 2)));
    }
}
