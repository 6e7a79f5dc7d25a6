use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::{FieldDescriptor, FieldElement};
use crate::linalg::nullspace;
use crate::polyrat::{Poly1, RatFun1};

use super::{DegreeProfile, DetInterpError, SampleSet1};

/// Resampling stops after this many undefined (or repeated) draws in a row.
pub const MAX_CONSECUTIVE_UNDEFINED: usize = 100;

/// A partial function `K -> K`; `None` means the point is outside the domain.
pub trait UnivariateOracle {
    fn field(&self) -> FieldDescriptor;
    fn eval(&self, a: &FieldElement) -> Option<FieldElement>;
}

/// Wraps a closure as an oracle.
pub struct FnOracle<F> {
    pub field: FieldDescriptor,
    pub f: F,
}

impl<F: Fn(&FieldElement) -> Option<FieldElement>> UnivariateOracle for FnOracle<F> {
    fn field(&self) -> FieldDescriptor {
        self.field
    }

    fn eval(&self, a: &FieldElement) -> Option<FieldElement> {
        (self.f)(a)
    }
}

impl UnivariateOracle for RatFun1 {
    fn field(&self) -> FieldDescriptor {
        RatFun1::field(self)
    }

    fn eval(&self, a: &FieldElement) -> Option<FieldElement> {
        RatFun1::eval(self, a).ok()
    }
}

/// How [`detect_profile`] draws points. Each draw is
/// `random_element(height_bound) + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingBudget {
    pub max_degree: usize,
    pub validation_extra: usize,
    pub height_bound: u64,
    pub offset: i64,
}

impl Default for SamplingBudget {
    fn default() -> Self {
        SamplingBudget { max_degree: 12, validation_extra: 6, height_bound: 10, offset: 0 }
    }
}

/// Solves `f_i Q(a_i) - P(a_i) = 0` for `deg P <= n_deg`, `deg Q <= m_deg`
/// and returns the normalized quotient, provided it reproduces every sample.
pub fn fit_ratfun(samples: &SampleSet1, n_deg: usize, m_deg: usize) -> Result<RatFun1, DetInterpError> {
    let need = n_deg + m_deg + 2;
    if samples.len() < need {
        return Err(DetInterpError::SizeMismatch { expected: need, got: samples.len() });
    }
    let field = samples.field();
    let zero = field.zero();
    let cols = m_deg + 1 + n_deg + 1;
    let rows: Vec<Vec<FieldElement>> = samples
        .points()
        .iter()
        .map(|(x, fx)| {
            let mut row = Vec::with_capacity(cols);
            let mut pw = field.one();
            let mut xs = Vec::with_capacity(n_deg.max(m_deg) + 1);
            for _ in 0..=n_deg.max(m_deg) {
                xs.push(pw.clone());
                pw = pw * x;
            }
            row.extend(xs[..=m_deg].iter().map(|t| fx * t));
            row.extend(xs[..=n_deg].iter().map(|t| -t));
            row
        })
        .collect();
    let basis = nullspace(&rows, cols, &zero);
    let mut candidate: Option<RatFun1> = None;
    for v in basis {
        let q = Poly1::new(field, v[..=m_deg].to_vec());
        let p = Poly1::new(field, v[m_deg + 1..].to_vec());
        if q.is_zero() {
            continue;
        }
        let f = RatFun1::normalize(p, q)?;
        match &candidate {
            None => candidate = Some(f),
            Some(g) if *g == f => {}
            Some(_) => return Err(DetInterpError::Ambiguous),
        }
    }
    let f = candidate.ok_or(DetInterpError::NoFit)?;
    let reproduces = samples.points().iter().all(|(x, fx)| f.eval(x).is_ok_and(|v| v == *fx));
    if reproduces {
        Ok(f)
    } else {
        Err(DetInterpError::NoFit)
    }
}

struct PointSource<'a, O: ?Sized, R: ?Sized> {
    oracle: &'a O,
    rng: &'a mut R,
    budget: SamplingBudget,
    taken: Vec<FieldElement>,
}

impl<O: UnivariateOracle + ?Sized, R: Rng + ?Sized> PointSource<'_, O, R> {
    /// A fresh point in the oracle's domain, distinct from all earlier ones.
    fn draw(&mut self) -> Result<(FieldElement, FieldElement), DetInterpError> {
        let field = self.oracle.field();
        let shift = field.from_i64(self.budget.offset);
        for _ in 0..MAX_CONSECUTIVE_UNDEFINED {
            let a = field.random_element(self.rng, self.budget.height_bound) + shift.clone();
            if self.taken.contains(&a) {
                continue;
            }
            if let Some(v) = self.oracle.eval(&a) {
                self.taken.push(a.clone());
                return Ok((a, v));
            }
        }
        Err(DetInterpError::DomainTooSparse(MAX_CONSECUTIVE_UNDEFINED))
    }
}

/// Finds the smallest-degree rational function that fits the oracle, trying
/// total degree `t = 0, 1, ...` and, within each `t`, numerator degree
/// ascending. Each fit uses `t + 2` points and is accepted only if it also
/// matches `validation_extra` further points, which are drawn first.
///
/// Returns the fit and its profile; the profile is `None` for the zero function.
pub fn detect_fit<O, R>(oracle: &O, budget: &SamplingBudget, rng: &mut R) -> Result<(RatFun1, Option<DegreeProfile>), DetInterpError>
where
    O: UnivariateOracle + ?Sized,
    R: Rng + ?Sized,
{
    let field = oracle.field();
    let mut src = PointSource { oracle, rng, budget: *budget, taken: Vec::new() };
    let validation = (0..budget.validation_extra).map(|_| src.draw()).collect::<Result<Vec<_>, _>>()?;
    let mut pool: Vec<(FieldElement, FieldElement)> = Vec::new();
    for t in 0..=budget.max_degree {
        while pool.len() < t + 2 {
            pool.push(src.draw()?);
        }
        let samples = SampleSet1::new(field, pool[..t + 2].to_vec())?;
        for n_deg in 0..=t {
            let f = match fit_ratfun(&samples, n_deg, t - n_deg) {
                Ok(f) => f,
                Err(DetInterpError::NoFit | DetInterpError::Ambiguous) => continue,
                Err(e) => return Err(e),
            };
            if validation.iter().all(|(x, fx)| f.eval(x).is_ok_and(|v| v == *fx)) {
                let profile = f.num().degree().map(|n| DegreeProfile::from_degrees(n, f.den().degree().unwrap_or(0)));
                return Ok((f, profile));
            }
        }
    }
    Err(DetInterpError::BudgetExhausted(budget.max_degree))
}

/// The degree profile of the oracle's rational function; see [`detect_fit`].
pub fn detect_profile<O, R>(oracle: &O, budget: &SamplingBudget, rng: &mut R) -> Result<DegreeProfile, DetInterpError>
where
    O: UnivariateOracle + ?Sized,
    R: Rng + ?Sized,
{
    detect_fit(oracle, budget, rng)?.1.ok_or(DetInterpError::ZeroFunction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::seeded_rng;
    use num_bigint::BigInt;
    use num_traits::{Signed, ToPrimitive};

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn e(s: &str) -> FieldElement {
        q().parse_element(s).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFun1 {
        RatFun1::normalize(Poly1::from_i64s(q(), num), Poly1::from_i64s(q(), den)).unwrap()
    }

    fn sample(f: &RatFun1, xs: &[&str]) -> SampleSet1 {
        SampleSet1::new(q(), xs.iter().map(|x| (e(x), f.eval(&e(x)).unwrap())).collect()).unwrap()
    }

    #[test]
    fn fit_examples() {
        let inv = rf(&[1], &[0, 1]);
        let s = sample(&inv, &["1", "2", "4"]);
        assert_eq!(fit_ratfun(&s, 0, 1).unwrap(), inv);
        assert_eq!(fit_ratfun(&s, 1, 0), Err(DetInterpError::NoFit));
        let sq = rf(&[1, 0, 1], &[1]);
        assert_eq!(fit_ratfun(&sample(&sq, &["0", "1", "2", "3"]), 2, 0).unwrap(), sq);
        assert!(matches!(fit_ratfun(&s, 1, 1), Err(DetInterpError::SizeMismatch { expected: 4, got: 3 })));
    }

    #[test]
    fn oversized_bounds_still_fit() {
        let f = rf(&[1, 1], &[-1, 0, 1]);
        let s = sample(&f, &["2", "3", "4", "5", "6", "7", "8", "9"]);
        assert_eq!(fit_ratfun(&s, 3, 3).unwrap(), f);
    }

    #[test]
    fn detect_examples() {
        let budget = SamplingBudget::default();
        let mut rng = seeded_rng(5);
        let p = detect_profile(&rf(&[1, 0, 1], &[-1, 1]), &budget, &mut rng).unwrap();
        assert_eq!(p, DegreeProfile { d: 2, e: 1, n: 2, m: 1, l: 3 });
        let c = detect_profile(&rf(&[5], &[1]), &budget, &mut rng).unwrap();
        assert_eq!(c, DegreeProfile { d: 0, e: 0, n: 0, m: 0, l: 0 });
        let zero = RatFun1::from_poly(Poly1::zero(q()));
        assert_eq!(detect_profile(&zero, &budget, &mut rng), Err(DetInterpError::ZeroFunction));
    }

    fn factorial_of_height(a: &FieldElement) -> Option<FieldElement> {
        let r = a.as_rational()?;
        let h = (r.numer().abs() + r.denom()).to_u64()?;
        let fact: BigInt = (1..=h).map(BigInt::from).product();
        Some(q().from_bigint(&fact))
    }

    #[test]
    fn non_rational_exhausts_budget() {
        let oracle = FnOracle { field: q(), f: factorial_of_height };
        let budget = SamplingBudget { max_degree: 8, ..SamplingBudget::default() };
        let mut rng = seeded_rng(1);
        assert_eq!(detect_profile(&oracle, &budget, &mut rng), Err(DetInterpError::BudgetExhausted(8)));
    }

    #[test]
    fn nowhere_defined_is_too_sparse() {
        let oracle = FnOracle { field: q(), f: |_: &FieldElement| None };
        let mut rng = seeded_rng(1);
        assert_eq!(
            detect_profile(&oracle, &SamplingBudget::default(), &mut rng),
            Err(DetInterpError::DomainTooSparse(MAX_CONSECUTIVE_UNDEFINED))
        );
    }

    #[test]
    fn poles_are_resampled() {
        let f = rf(&[1], &[0, -1, 0, 0, 1]);
        let mut rng = seeded_rng(9);
        let budget = SamplingBudget { height_bound: 5, ..SamplingBudget::default() };
        let (g, p) = detect_fit(&f, &budget, &mut rng).unwrap();
        assert_eq!(g, f);
        assert_eq!(p.unwrap(), DegreeProfile::from_degrees(0, 4));
    }
}
