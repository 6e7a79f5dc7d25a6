//! A function on an enumerated countable field whose every slice is a
//! polynomial, yet which is not rational.
//!
//! With `a_0, a_1, ...` the enumeration of `Q` from
//! [`enumerate_countable`], the function is
//! `f(a_n, a_m) = sum_{i=0}^{n+m} prod_{l=0}^{i} (a_n - a_l)(a_m - a_l)`.
//! Every term with `i >= min(n, m)` contains a zero factor, so only
//! `i < min(n, m)` contributes. The slice at `a_m` is a polynomial of degree
//! `m`, so slice degrees are unbounded.

use serde::Serialize;

use crate::field::{enumerate_countable, FieldDescriptor, FieldElement};
use crate::hankel::RationalityCertificate;
use crate::linalg::RankTracker;
use crate::par;
use crate::polyrat::Poly1;

pub const FIELD_NOTE: &str = "computed over Q with a fixed enumeration; Q is countable but not algebraically closed";

/// `a_0..a_{count-1}`
pub fn enumeration(count: usize) -> Vec<FieldElement> {
    (0..count as u64).map(enumerate_countable).collect()
}

/// `f(a_n, a_m)` from a precomputed enumeration holding at least
/// `max(n, m) + 1` elements.
pub fn f_counter_with(a: &[FieldElement], n: usize, m: usize) -> FieldElement {
    let mut sum = FieldDescriptor::Rational.zero();
    let mut prod = FieldDescriptor::Rational.one();
    for l in 0..n.min(m) {
        prod = prod * &(&a[n] - &a[l]) * &(&a[m] - &a[l]);
        sum = sum + &prod;
    }
    sum
}

/// The literal double sum up to `n + m`, kept to check the shortened form.
pub fn f_counter_literal(a: &[FieldElement], n: usize, m: usize) -> FieldElement {
    let zero = FieldDescriptor::Rational.zero();
    (0..=n + m).fold(zero, |acc, i| {
        let term = (0..=i).fold(FieldDescriptor::Rational.one(), |p, l| {
            let al = enumerate_countable(l as u64);
            p * &(&a[n] - &al) * &(&a[m] - &al)
        });
        acc + term
    })
}

/// `f(a_n, a_m)`; panics unless `n, m < cap`.
pub fn f_counter(n: usize, m: usize, cap: usize) -> FieldElement {
    assert!(n < cap && m < cap, "index outside the enumeration cap");
    f_counter_with(&enumeration(n.max(m) + 1), n, m)
}

/// `a |-> f(a, a_m) = sum_{i<m} prod_{l<=i} (a - a_l)(a_m - a_l)`, expanded.
pub fn slice_poly(m: usize, cap: usize) -> Poly1 {
    assert!(m < cap, "index outside the enumeration cap");
    let q = FieldDescriptor::Rational;
    let a = enumeration(m + 1);
    let mut sum = Poly1::zero(q);
    let mut prod = Poly1::one(q);
    for l in 0..m {
        prod = &prod * &Poly1::linear(&a[l]).scale(&(&a[m] - &a[l]));
        sum = &sum + &prod;
    }
    sum
}

/// `values[n][m] = f(a_n, a_m)` for `n, m < size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleTable {
    pub enumeration: Vec<FieldElement>,
    pub values: Vec<Vec<FieldElement>>,
}

impl CounterexampleTable {
    pub fn build(size: usize) -> Self {
        let a = enumeration(size);
        let values = par::map_indexed(size, |n| (0..size).map(|m| f_counter_with(&a, n, m)).collect());
        CounterexampleTable { enumeration: a, values }
    }

    pub fn size(&self) -> usize {
        self.enumeration.len()
    }

    /// Long format with header `n,m,a_n,a_m,f`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "m", "a_n", "a_m", "f"]).expect("in-memory write");
        for (n, row) in self.values.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                w.write_record([
                    n.to_string(),
                    m.to_string(),
                    self.enumeration[n].to_string(),
                    self.enumeration[m].to_string(),
                    v.to_string(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// Outcome of one degree bound: whether the cross-multiplied system
/// `f Q - P = 0` over the grid, with `P`, `Q` of total degree at most
/// `degree_bound`, has only the trivial solution, and the first grid point
/// whose equation made it so.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRefutation {
    pub degree_bound: usize,
    pub unknowns: usize,
    pub refuted: bool,
    /// `(n, m)` such that the points before it in row-major order still
    /// admit a nonzero `(P, Q)` and this one does not.
    pub witness: Option<(usize, usize)>,
    pub witness_value: Option<String>,
    pub equations_used: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonRationalityCertificate {
    pub grid: usize,
    pub max_degree: usize,
    pub refutations: Vec<DegreeRefutation>,
    pub all_refuted: bool,
}

impl NonRationalityCertificate {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "nonrationality",
            "field": "q",
            "field_note": FIELD_NOTE,
            "grid": self.grid,
            "max_degree": self.max_degree,
            "all_refuted": self.all_refuted,
            "statement": "for each refuted bound D, no bivariate rational function with numerator and denominator of total degree at most D agrees with the table",
            "refutations": self.refutations,
        })
    }
}

/// Evidence returned by the rationality tools.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    Rationality(RationalityCertificate),
    NonRationality(NonRationalityCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CounterexampleError {
    #[error("grid {grid} is smaller than 2 * {max_degree} + 2")]
    GridTooSmall { grid: usize, max_degree: usize },
}

fn monomials(d: usize) -> Vec<(u32, u32)> {
    (0..=d as u32).flat_map(|t| (0..=t).map(move |i| (i, t - i))).collect()
}

fn refute_degree(table: &CounterexampleTable, grid: usize, d: usize) -> DegreeRefutation {
    let mons = monomials(d);
    let unknowns = 2 * mons.len();
    let mut tracker = RankTracker::new(unknowns);
    let mut used = 0;
    for n in 0..grid {
        for m in 0..grid {
            let (x, y) = (&table.enumeration[n], &table.enumeration[m]);
            let f = &table.values[n][m];
            let mono: Vec<FieldElement> = mons.iter().map(|&(i, j)| x.pow(i as u64) * &y.pow(j as u64)).collect();
            let row: Vec<FieldElement> = mono.iter().map(|t| f * t).chain(mono.iter().map(|t| -t)).collect();
            used += 1;
            if tracker.push(row) && tracker.is_full() {
                return DegreeRefutation {
                    degree_bound: d,
                    unknowns,
                    refuted: true,
                    witness: Some((n, m)),
                    witness_value: Some(f.to_string()),
                    equations_used: used,
                };
            }
        }
    }
    DegreeRefutation { degree_bound: d, unknowns, refuted: false, witness: None, witness_value: None, equations_used: used }
}

/// For each `D <= max_degree`, checks whether some nonzero `(P, Q)` of total
/// degree at most `D` satisfies `f Q = P` on the `grid x grid` table.
pub fn nonrationality_report(max_degree: usize, grid: usize) -> Result<NonRationalityCertificate, CounterexampleError> {
    if grid < 2 * max_degree + 2 {
        return Err(CounterexampleError::GridTooSmall { grid, max_degree });
    }
    let table = CounterexampleTable::build(grid);
    let refutations = par::map_indexed(max_degree + 1, |d| refute_degree(&table, grid, d));
    let all_refuted = refutations.iter().all(|r| r.refuted);
    Ok(NonRationalityCertificate { grid, max_degree, refutations, all_refuted })
}
