//! Text syntax for forms: polynomial coefficients times wedges of
//! differentials, e.g. `(x^2+y^2)*dx^dy - 3*y*dz`.

use num_traits::One;

use super::{indices, DifferentialForm};
use crate::polyalg::parse::{checked_power, constant_divisor, parse_expr, Expr};
use crate::polyalg::{ParseError, ParseErrorKind, Polynomial, Rational};

fn combine(a: DifferentialForm, b: DifferentialForm, offset: usize) -> Result<DifferentialForm, ParseError> {
    if a.degree() != b.degree() && !a.is_zero() && !b.is_zero() {
        return Err(ParseError::new(offset, ParseErrorKind::MixedDegree { left: a.degree(), right: b.degree() }));
    }
    Ok(a.try_add(&b).expect("degrees checked"))
}

fn product(a: &DifferentialForm, b: &DifferentialForm, offset: usize) -> Result<DifferentialForm, ParseError> {
    let bound = a.components().map(|(_, c)| c.max_exponent() as u64).max().unwrap_or(0)
        + b.components().map(|(_, c)| c.max_exponent() as u64).max().unwrap_or(0);
    if bound > u32::MAX as u64 {
        return Err(ParseError::new(offset, ParseErrorKind::ExponentOverflow));
    }
    Ok(a.wedge(b).expect("same arity"))
}

fn as_function(e: &DifferentialForm, offset: usize) -> Result<Polynomial, ParseError> {
    if e.degree() != 0 && !e.is_zero() {
        return Err(ParseError::new(offset, ParseErrorKind::MixedDegree { left: 0, right: e.degree() }));
    }
    Ok(e.as_function())
}

fn eval(e: &Expr, vars: &[String]) -> Result<DifferentialForm, ParseError> {
    let n = vars.len();
    Ok(match e {
        Expr::Number(_, v) => DifferentialForm::function(Polynomial::constant(n, Rational::from_integer(v.clone()))),
        Expr::Ident(o, name) => {
            if let Some(i) = vars.iter().position(|v| v == name) {
                DifferentialForm::function(Polynomial::var(n, i))
            } else if let Some(i) = name.strip_prefix('d').and_then(|r| vars.iter().position(|v| v == r)) {
                DifferentialForm::monomial(Polynomial::one(n), &[i])
            } else {
                return Err(ParseError::new(*o, ParseErrorKind::UnknownVariable(name.clone())));
            }
        }
        Expr::Neg(_, a) => -eval(a, vars)?,
        Expr::Add(o, a, b) => combine(eval(a, vars)?, eval(b, vars)?, *o)?,
        Expr::Sub(o, a, b) => combine(eval(a, vars)?, -eval(b, vars)?, *o)?,
        Expr::Mul(o, a, b) | Expr::Wedge(o, a, b) => product(&eval(a, vars)?, &eval(b, vars)?, *o)?,
        Expr::Div(o, a, b) => {
            let c = constant_divisor(&as_function(&eval(b, vars)?, b.offset())?, *o)?;
            eval(a, vars)?.scale(&(Rational::one() / c))
        }
        Expr::Pow(o, a, k) => {
            let base = eval(a, vars)?;
            if base.degree() > 0 && !base.is_zero() {
                return Err(ParseError::new(*o, ParseErrorKind::MixedDegree { left: base.degree(), right: 0 }));
            }
            DifferentialForm::function(checked_power(&base.as_function(), *k, *o)?)
        }
    })
}

/// Parses a homogeneous differential form in the named variables. The
/// differential of variable `v` is written `dv`; `*` and `^` both act as the
/// wedge product between forms.
pub fn parse_form(text: &str, vars: &[String]) -> Result<DifferentialForm, ParseError> {
    eval(&parse_expr(text)?, vars)
}

/// Renders a form as `(coeff)*dx^dy + …`, components in lexicographic order
/// of their index tuples.
pub fn format_form(alpha: &DifferentialForm, vars: &[String]) -> String {
    if alpha.is_zero() {
        return "0".to_string();
    }
    let mut comps: Vec<(Vec<usize>, &Polynomial)> = alpha.components().map(|(m, c)| (indices(m), c)).collect();
    comps.sort_by(|a, b| a.0.cmp(&b.0));
    let parts: Vec<String> = comps
        .into_iter()
        .map(|(idx, c)| {
            if idx.is_empty() {
                return format!("({})", c.to_string_with(vars));
            }
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", vars[i])).collect();
            let basis = basis.join("^");
            if c.constant_value().is_some_and(|v| v.is_one()) {
                basis
            } else {
                format!("({})*{}", c.to_string_with(vars), basis)
            }
        })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn parses_wedges() {
        let v = vars();
        let a = parse_form("(x^2+y^2)*dx^dy", &v).unwrap();
        assert_eq!(a, DifferentialForm::monomial(parse_poly("x^2+y^2", &v).unwrap(), &[0, 1]));
        let b = parse_form("dy^dx", &v).unwrap();
        assert_eq!(b, DifferentialForm::monomial(parse_poly("-1", &v).unwrap(), &[0, 1]));
        let c = parse_form("x dy - y dx", &v).unwrap();
        assert_eq!(c.degree(), 1);
        assert!(parse_form("dx^dx", &v).unwrap().is_zero());
    }

    #[test]
    fn printing_round_trips() {
        let v = vars();
        for s in ["(x^2 + y^2)*dx^dy", "dx^dy^dz", "(-y)*dx + (x)*dy", "(3*x*z)", "(1/2*y)*dx^dz + dy^dz"] {
            let a = parse_form(s, &v).unwrap();
            assert_eq!(parse_form(&format_form(&a, &v), &v).unwrap(), a, "{s}");
        }
        assert_eq!(format_form(&parse_form("dx^dy", &v).unwrap(), &v), "dx^dy");
    }

    #[test]
    fn errors() {
        let v = vars();
        let e = parse_form("dx + dx^dy", &v).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MixedDegree { left: 1, right: 2 });
        assert_eq!(e.offset, 3);
        assert!(matches!(parse_form("dq", &v).unwrap_err().kind, ParseErrorKind::UnknownVariable(_)));
        assert!(parse_form("dx/dy", &v).is_err());
    }
}
