//! Comparison of computed dimensions of `H^{n−1}_{f,p}` and `H^n_{f,p}` with
//! their closed-form values in terms of the Milnor number `c` and the
//! Hodge numbers `h^{q,n−q}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{CohomologyError, GradedComplex};
use crate::groebner::{milnor_data, poincare_series_product};
use crate::polyalg::{Polynomial, WeightSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Prediction {
    Finite(usize),
    Infinite,
    /// The closed form is not known for this cell.
    Unknown,
    /// `p < 0`: outside the rows of the table.
    NotCovered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Match,
    Mismatch,
    /// Every sampled block of weights carries a nonzero dimension.
    ConsistentWithInfinite,
    InconsistentWithInfinite,
    /// No closed form to compare with; dimensions are reported only.
    Reported,
}

impl CellStatus {
    pub fn is_failure(self) -> bool {
        matches!(self, CellStatus::Mismatch | CellStatus::InconsistentWithInfinite)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Cell {
    pub k: usize,
    pub prediction: Prediction,
    pub per_degree: BTreeMap<i64, usize>,
    pub total: usize,
    pub status: CellStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub p: i64,
    pub label: String,
    pub top_minus_one: Table1Cell,
    pub top: Table1Cell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub nvars: usize,
    pub degree: i64,
    pub weight_sum: i64,
    pub milnor_number: usize,
    pub hodge: BTreeMap<u32, usize>,
    /// Graded dimensions of the Milnor algebra agree with the Poincaré
    /// product in every degree.
    pub poincare_agrees: bool,
    pub max_degree: i64,
    /// Weight blocks `[jN, (j+1)N)` used for the infinite-row check.
    pub blocks: Vec<(i64, i64)>,
    pub rows: Vec<Table1Row>,
}

impl Table1Report {
    pub fn all_consistent(&self) -> bool {
        self.poincare_agrees
            && self.rows.iter().all(|r| !r.top_minus_one.status.is_failure() && !r.top.status.is_failure())
    }

    pub fn row(&self, p: i64) -> Option<&Table1Row> {
        self.rows.iter().find(|r| r.p == p)
    }
}

/// Weight blocks `[jN, (j+1)N)` for `j ≥ 1` that lie entirely inside
/// `0..=max_degree`.
pub fn sample_blocks(degree: i64, max_degree: i64) -> Vec<(i64, i64)> {
    (1..).map(|j| (j * degree, (j + 1) * degree - 1)).take_while(|&(_, hi)| hi <= max_degree).collect()
}

fn infinite_status(per_degree: &BTreeMap<i64, usize>, blocks: &[(i64, i64)]) -> CellStatus {
    let ok = !blocks.is_empty() && blocks.iter().all(|&(lo, hi)| per_degree.range(lo..=hi).any(|(_, &v)| v > 0));
    if ok {
        CellStatus::ConsistentWithInfinite
    } else {
        CellStatus::InconsistentWithInfinite
    }
}

fn predictions(n: i64, p: i64, c: usize, hodge: &BTreeMap<u32, usize>) -> (&'static str, Prediction, Prediction) {
    let sum = |upto: i64| (1..=upto).map(|i| hodge.get(&(i as u32)).copied().unwrap_or(0)).sum::<usize>();
    if p < 0 {
        ("p < 0", Prediction::NotCovered, Prediction::NotCovered)
    } else if p <= n - 3 {
        ("0 ≤ p ≤ n−3", Prediction::Finite(sum(n - p - 1)), Prediction::Finite(c + sum(n - p - 1)))
    } else if p == n - 2 {
        ("p = n−2", Prediction::Infinite, Prediction::Finite(c + sum(1)))
    } else if p == n - 1 {
        ("p = n−1", Prediction::Unknown, Prediction::Infinite)
    } else {
        ("p ≥ n", Prediction::Finite(0), Prediction::Finite(c))
    }
}

/// Computes the rows `p ∈ p_range` with weights `0..=max_degree`.
pub fn table1_report(
    f: &Polynomial,
    w: &WeightSystem,
    p_range: std::ops::RangeInclusive<i64>,
    max_degree: i64,
) -> Result<Table1Report, CohomologyError> {
    let md = milnor_data(f, w)?;
    let n = f.nvars();
    if n < 2 {
        return Err(CohomologyError::Precondition("at least two variables are needed".into()));
    }
    let degree = md.degree;
    let poincare = poincare_series_product(w, degree)?;
    let poincare_agrees = (0..=poincare.degree().map_or(0, |d| d as i64) + 1)
        .all(|d| num_bigint::BigInt::from(md.graded_dim(d)) == poincare.coeff(d))
        && num_bigint::BigInt::from(md.milnor_number) == poincare.eval_at_one();
    let blocks = sample_blocks(degree, max_degree);

    let rows = p_range
        .map(|p| {
            let complex = GradedComplex::new(f, w, p)?;
            let report = complex.report(&[n - 1, n], max_degree);
            let (label, pred_lo, pred_hi) = predictions(n as i64, p, md.milnor_number, &md.hodge);
            let cell = |k: usize, prediction: Prediction| {
                let row = report.row(k).expect("requested row");
                let status = match prediction {
                    Prediction::Finite(v) if v == row.total => CellStatus::Match,
                    Prediction::Finite(_) => CellStatus::Mismatch,
                    Prediction::Infinite => infinite_status(&row.per_degree, &blocks),
                    Prediction::Unknown | Prediction::NotCovered => CellStatus::Reported,
                };
                Table1Cell { k, prediction, per_degree: row.per_degree.clone(), total: row.total, status }
            };
            Ok(Table1Row { p, label: label.to_string(), top_minus_one: cell(n - 1, pred_lo), top: cell(n, pred_hi) })
        })
        .collect::<Result<Vec<_>, CohomologyError>>()?;

    Ok(Table1Report {
        nvars: n,
        degree,
        weight_sum: w.total(),
        milnor_number: md.milnor_number,
        hodge: md.hodge.clone(),
        poincare_agrees,
        max_degree,
        blocks,
        rows,
    })
}
