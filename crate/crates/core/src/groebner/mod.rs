//! Gröbner bases over the rationals and the Milnor algebra of a
//! quasi-homogeneous isolated singularity.

mod milnor;
mod poincare;

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyalg::{Monomial, PolyError, Polynomial, Rational, WeightSystem};

pub use milnor::{milnor_data, standard_monomials, MilnorData};
pub use poincare::{poincare_series_product, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("no nonzero generators")]
    EmptyIdeal,
    #[error("polynomial is not quasi-homogeneous for the given weights")]
    NotQuasiHomogeneous,
    #[error("singularity is not isolated: the Milnor algebra is infinite-dimensional")]
    NotIsolatedSingularity,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Weighted degree first, ties broken by reverse lexicographic order.
    WeightedGrevlex(Vec<u32>),
}

impl MonomialOrder {
    pub fn weighted(w: &WeightSystem) -> Self {
        MonomialOrder::WeightedGrevlex(w.weights().to_vec())
    }

    fn grading(&self, m: &Monomial) -> u64 {
        match self {
            MonomialOrder::Lex | MonomialOrder::Grevlex => m.total_degree(),
            MonomialOrder::WeightedGrevlex(w) => {
                m.exponents().iter().zip(w).map(|(&e, &wi)| e as u64 * wi as u64).sum()
            }
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex | MonomialOrder::WeightedGrevlex(_) => {
                self.grading(a).cmp(&self.grading(b)).then_with(|| revlex(a, b))
            }
        }
    }
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent in
/// the last differing variable is larger.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Polynomial as a term list sorted in descending monomial order.
#[derive(Clone, Debug)]
struct OrdPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl OrdPoly {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        OrdPoly { terms }
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn monic(mut self) -> Self {
        if let Some((_, lc)) = self.terms.first() {
            let inv = Rational::one() / lc;
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
        self
    }

    /// `self - c * m * g`, merging in order.
    fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &OrdPoly, order: &MonomialOrder) -> OrdPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted: Vec<(Monomial, Rational)> = g.terms.iter().map(|(t, a)| (t.mul(m), -(a * c))).collect();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < shifted.len() {
            let take = match (self.terms.get(i), shifted.get(j)) {
                (Some(a), Some(b)) => order.compare(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &self.terms[i].1 + &shifted[j].1;
                    if !s.is_zero() {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        OrdPoly { terms: out }
    }
}

/// Full reduction of `p` modulo `basis`: no term of the result is divisible
/// by a leading monomial of the basis.
fn reduce_full(p: &OrdPoly, basis: &[&OrdPoly], order: &MonomialOrder) -> OrdPoly {
    let mut rest = p.clone();
    let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
    while !rest.is_zero() {
        let lead = rest.lm().clone();
        match basis.iter().find(|g| g.lm().divides(&lead)) {
            Some(g) => {
                let q = g.lm().quotient_of(&lead).expect("divisible");
                let c = rest.lc() / g.lc();
                rest = rest.sub_scaled(&c, &q, g, order);
            }
            None => {
                remainder.push(rest.terms.remove(0));
            }
        }
    }
    OrdPoly { terms: remainder }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    sorted: Vec<OrdPoly>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|g| g.lm().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.sorted.iter().any(|g| g.lm().is_one())
    }

    pub fn normal_form(&self, g: &Polynomial) -> Polynomial {
        let refs: Vec<&OrdPoly> = self.sorted.iter().collect();
        reduce_full(&OrdPoly::from_poly(g, &self.order), &refs, &self.order).to_poly(self.nvars)
    }

    pub fn contains(&self, g: &Polynomial) -> bool {
        self.normal_form(g).is_zero()
    }
}

/// Remainder of `g` modulo `gb`, the canonical representative of its class.
pub fn normal_form_poly(g: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(g)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Builder<'a> {
    order: &'a MonomialOrder,
    polys: Vec<OrdPoly>,
    sugar: Vec<u64>,
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder<'_> {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.polys[i].lm().lcm(self.polys[j].lm());
        let d = self.order.grading(&lcm);
        let si = self.sugar[i] + d - self.order.grading(self.polys[i].lm());
        let sj = self.sugar[j] + d - self.order.grading(self.polys[j].lm());
        Pair { i, j, lcm, sugar: si.max(sj) }
    }

    /// Gebauer–Möller update after adding the polynomial stored at `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].lm().clone();
        let mut candidates: Vec<Pair> = self.basis.iter().map(|&g| self.pair(h, g)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let coprime = lm_h.coprime(self.polys[p.j].lm());
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        // Product criterion.
        kept.retain(|p| !lm_h.coprime(self.polys[p.j].lm()));

        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lcm_ih = polys[p.i].lm().lcm(&lm_h);
            let lcm_jh = polys[p.j].lm().lcm(&lm_h);
            !(lm_h.divides(&p.lcm) && lcm_ih != p.lcm && lcm_jh != p.lcm)
        });
        self.pairs.extend(kept);

        self.basis.retain(|&g| !lm_h.divides(polys[g].lm()));
        self.basis.push(h);
    }

    fn push(&mut self, p: OrdPoly, sugar: u64) -> usize {
        self.polys.push(p.monic());
        self.sugar.push(sugar);
        self.polys.len() - 1
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.compare(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> OrdPoly {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let mf = f.lm().quotient_of(&p.lcm).expect("lcm");
        let mg = g.lm().quotient_of(&p.lcm).expect("lcm");
        let zero = OrdPoly { terms: Vec::new() };
        // Both are monic.
        let a = zero.sub_scaled(&-Rational::one(), &mf, f, self.order);
        a.sub_scaled(&Rational::one(), &mg, g, self.order)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the sugar strategy and pruned with the
/// Gebauer–Möller criteria. The output is reduced, monic, and sorted by
/// ascending leading monomial, hence canonical for the order.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let nvars = gens.first().map(|g| g.nvars()).ok_or(GroebnerError::EmptyIdeal)?;
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(PolyError::ArityMismatch { left: nvars, right: bad.nvars() }.into());
    }
    if let MonomialOrder::WeightedGrevlex(w) = order {
        if w.len() != nvars {
            return Err(PolyError::ArityMismatch { left: nvars, right: w.len() }.into());
        }
    }
    let mut inputs: Vec<OrdPoly> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| OrdPoly::from_poly(g, order)).collect();
    if inputs.is_empty() {
        return Err(GroebnerError::EmptyIdeal);
    }
    inputs.sort_by(|a, b| order.compare(a.lm(), b.lm()));

    let mut b = Builder { order, polys: Vec::new(), sugar: Vec::new(), basis: Vec::new(), pairs: Vec::new() };
    for g in inputs {
        let current: Vec<&OrdPoly> = b.basis.iter().map(|&k| &b.polys[k]).collect();
        let r = reduce_full(&g, &current, order);
        if r.is_zero() {
            continue;
        }
        let sugar = r.terms.iter().map(|(m, _)| order.grading(m)).max().unwrap_or(0);
        let h = b.push(r, sugar);
        b.update(h);
    }

    while let Some(pair) = b.next_pair() {
        if b.basis.iter().any(|&k| b.polys[k].lm().is_one()) {
            break;
        }
        let s = b.s_polynomial(&pair);
        let current: Vec<&OrdPoly> = b.basis.iter().map(|&k| &b.polys[k]).collect();
        let r = reduce_full(&s, &current, order);
        if r.is_zero() {
            continue;
        }
        let h = b.push(r, pair.sugar);
        b.update(h);
    }

    // Interreduce: leading monomials are already pairwise non-divisible.
    let mut reduced: Vec<OrdPoly> = Vec::with_capacity(b.basis.len());
    if let Some(&unit) = b.basis.iter().find(|&&k| b.polys[k].lm().is_one()) {
        reduced.push(b.polys[unit].clone());
    } else {
        for &k in &b.basis {
            let others: Vec<&OrdPoly> = b.basis.iter().filter(|&&o| o != k).map(|&o| &b.polys[o]).collect();
            let head = OrdPoly { terms: vec![b.polys[k].terms[0].clone()] };
            let tail = OrdPoly { terms: b.polys[k].terms[1..].to_vec() };
            let tail = reduce_full(&tail, &others, order);
            let mut terms = head.terms;
            terms.extend(tail.terms);
            reduced.push(OrdPoly { terms }.monic());
        }
    }
    reduced.sort_by(|a, b| order.compare(a.lm(), b.lm()));

    Ok(GroebnerBasis {
        nvars,
        order: order.clone(),
        generators: reduced.iter().map(|g| g.to_poly(nvars)).collect(),
        sorted: reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &vars()).unwrap()
    }

    fn p2(s: &str) -> Polynomial {
        parse_poly(s, &vars()[..2]).unwrap()
    }

    #[test]
    fn already_a_basis() {
        let gb = buchberger(&[p2("x^2"), p2("y^2")], &MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.generators(), &[p2("y^2"), p2("x^2")]);
    }

    #[test]
    fn jacobian_of_cubic_pair_is_made_monic() {
        let gb = buchberger(&[p2("3*x^2"), p2("3*y^2")], &MonomialOrder::Grevlex).unwrap();
        let mut gens = gb.generators().to_vec();
        gens.sort_by_key(|g| g.to_string());
        assert_eq!(gens, vec![p2("x^2"), p2("y^2")]);
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&[Polynomial::one(2)], &MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.generators(), &[Polynomial::one(2)]);
        assert!(normal_form_poly(&Polynomial::one(2), &gb).is_zero());
        let gb = buchberger(&[p2("x*y - 1"), p2("x")], &MonomialOrder::Lex).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn empty_ideal_rejected() {
        assert_eq!(buchberger(&[], &MonomialOrder::Lex).unwrap_err(), GroebnerError::EmptyIdeal);
        assert_eq!(buchberger(&[Polynomial::zero(2)], &MonomialOrder::Lex).unwrap_err(), GroebnerError::EmptyIdeal);
    }

    #[test]
    fn normal_form_examples() {
        let gb = buchberger(&[p2("x^2"), p2("y^2")], &MonomialOrder::Grevlex).unwrap();
        assert!(normal_form_poly(&p2("x^3"), &gb).is_zero());
        assert_eq!(normal_form_poly(&p2("x*y + x^2"), &gb), p2("x*y"));
    }

    #[test]
    fn textbook_lex_basis() {
        // Cox–Little–O'Shea: <x^2 - y, x^3 - z> in lex x > y > z.
        let gb = buchberger(&[p("x^2 - y"), p("x^3 - z")], &MonomialOrder::Lex).unwrap();
        let expected = [p("y^3 - z^2"), p("x*z - y^2"), p("x*y - z"), p("x^2 - y")];
        assert_eq!(gb.generators(), &expected);
    }

    #[test]
    fn orders_are_consistent() {
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 2, 1]);
        // Same total degree; a has more z so is smaller in grevlex.
        assert_eq!(MonomialOrder::Grevlex.compare(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.compare(&a, &b), Ordering::Greater);
        let w = MonomialOrder::WeightedGrevlex(vec![3, 1, 1]);
        assert_eq!(w.compare(&a, &b), Ordering::Greater);
    }
}
