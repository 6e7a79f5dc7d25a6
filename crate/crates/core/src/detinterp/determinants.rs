use std::collections::BTreeMap;

use rand::Rng;

use crate::field::{FieldDescriptor, FieldElement};
use crate::polyrat::{det_bareiss, resultant, Matrix, Poly1, RatFun1};

use super::{DegreeProfile, DetInterpError, SampleSet1};

/// `[1, x, ..., x^k]`
fn powers(x: &FieldElement, k: usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(k + 1);
    let mut acc = x.one_like();
    for _ in 0..=k {
        out.push(acc.clone());
        acc = acc * x;
    }
    out
}

/// The `(l+2) x (l+2)` determinant with first row `[1, a, ..., a^m, 0...]`
/// and data rows `[P(a_i) a_i^j (j <= m), Q(a_i) a_i^j (j <= n)]`, where
/// `n = deg P`, `m = deg Q` and `l = n + m`.
///
/// It equals `resultant_sign(n, m) * Q(a) * res(P, Q) * prod_{i<j}(a_j - a_i)`.
/// Repeated points give two equal rows and hence zero.
pub fn delta_resultant(p: &Poly1, q: &Poly1, a: &FieldElement, points: &[FieldElement]) -> Result<FieldElement, DetInterpError> {
    let n = p.degree().ok_or_else(|| DetInterpError::DegenerateInput("P is zero".into()))?;
    let m = q.degree().ok_or_else(|| DetInterpError::DegenerateInput("Q is zero".into()))?;
    let l = n + m;
    if points.len() != l + 1 {
        return Err(DetInterpError::SizeMismatch { expected: l + 1, got: points.len() });
    }
    let zero = a.zero_like();
    let mut rows = Vec::with_capacity(l + 2);
    let mut first = powers(a, m);
    first.resize(l + 2, zero);
    rows.push(first);
    for x in points {
        let xs = powers(x, n.max(m));
        let (pv, qv) = (p.eval(x), q.eval(x));
        let mut row: Vec<FieldElement> = xs[..=m].iter().map(|t| &pv * t).collect();
        row.extend(xs[..=n].iter().map(|t| &qv * t));
        rows.push(row);
    }
    Ok(det_bareiss(&Matrix::from_rows(rows))?)
}

/// Sign relating [`delta_resultant`] to `Q(a) res(P, Q) V` under the Sylvester
/// layout used by [`crate::polyrat::sylvester`]: `(-1)^(m (n + 1))`.
pub fn resultant_sign(n: usize, m: usize) -> i8 {
    if (m * (n + 1)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign with `f(a) = sign * alpha / beta`: `(-1)^(nm + n + m)`.
pub fn interp_sign(n: usize, m: usize) -> i8 {
    if (n * m + n + m).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(x: FieldElement, sign: i8) -> FieldElement {
    if sign < 0 {
        -x
    } else {
        x
    }
}

/// The pair of block determinants whose quotient interpolates `f` at `a`.
///
/// `alpha` has first row `[1, a, ..., a^n, 0 (m+1 times)]` and data rows
/// `[1, a_i, ..., a_i^n, f_i, f_i a_i, ..., f_i a_i^m]`; `beta` has first row
/// `[1, a, ..., a^m, 0 (n+1 times)]` and data rows
/// `[f_i, ..., f_i a_i^m, 1, a_i, ..., a_i^n]`.
pub fn alpha_beta(samples: &SampleSet1, profile: &DegreeProfile, a: &FieldElement) -> Result<(FieldElement, FieldElement), DetInterpError> {
    let (n, m, l) = (profile.n, profile.m, profile.l);
    if samples.len() != l + 1 {
        return Err(DetInterpError::SizeMismatch { expected: l + 1, got: samples.len() });
    }
    let zero = a.zero_like();
    let mut alpha_rows = Vec::with_capacity(l + 2);
    let mut beta_rows = Vec::with_capacity(l + 2);
    let mut first = powers(a, n);
    first.resize(l + 2, zero.clone());
    alpha_rows.push(first);
    let mut first = powers(a, m);
    first.resize(l + 2, zero);
    beta_rows.push(first);
    for (x, fx) in samples.points() {
        let xs = powers(x, n.max(m));
        let plain = &xs[..=n];
        let weighted: Vec<FieldElement> = xs[..=m].iter().map(|t| fx * t).collect();
        alpha_rows.push(plain.iter().cloned().chain(weighted.iter().cloned()).collect());
        beta_rows.push(weighted.into_iter().chain(plain.iter().cloned()).collect());
    }
    let alpha = det_bareiss(&Matrix::from_rows(alpha_rows))?;
    let beta = det_bareiss(&Matrix::from_rows(beta_rows))?;
    Ok((alpha, beta))
}

/// `interp_sign(n, m) * alpha / beta`.
pub fn interp_point(samples: &SampleSet1, profile: &DegreeProfile, a: &FieldElement) -> Result<FieldElement, DetInterpError> {
    let (alpha, beta) = alpha_beta(samples, profile, a)?;
    if beta.is_zero() {
        return Err(DetInterpError::BetaZero);
    }
    Ok(signed(alpha.checked_div(&beta)?, interp_sign(profile.n, profile.m)))
}

/// Observed signs on the `(n, m)` grid, checked against [`interp_sign`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignCalibration {
    pub table: BTreeMap<(usize, usize), i8>,
}

impl SignCalibration {
    pub fn sign(&self, n: usize, m: usize) -> Option<i8> {
        self.table.get(&(n, m)).copied()
    }
}

fn ratio_sign(ratio: &FieldElement, what: &str) -> Result<i8, DetInterpError> {
    if ratio.is_one() {
        Ok(1)
    } else if (-ratio).is_one() {
        Ok(-1)
    } else {
        Err(DetInterpError::CalibrationFailure(format!("{what}: ratio {ratio} is not +-1")))
    }
}

/// Random coprime `(P, Q)` of exact degrees with `l + 1` distinct nodes and a
/// target, all in the domain of `P/Q` and with `P(a) != 0`.
fn random_instance<R: Rng + ?Sized>(
    field: FieldDescriptor,
    rng: &mut R,
    n: usize,
    m: usize,
    height: u64,
) -> (Poly1, Poly1, Vec<FieldElement>, FieldElement) {
    loop {
        let p = Poly1::random(field, rng, n, height);
        let q = Poly1::random(field, rng, m, height);
        if resultant(&p, &q).map_or(true, |r| r.is_zero()) {
            continue;
        }
        let mut nodes: Vec<FieldElement> = Vec::new();
        let mut guard = 0;
        while nodes.len() < n + m + 1 && guard < 10_000 {
            guard += 1;
            let x = field.random_element(rng, height);
            if !q.eval(&x).is_zero() && !nodes.contains(&x) {
                nodes.push(x);
            }
        }
        let a = field.random_element(rng, height);
        if nodes.len() == n + m + 1 && !q.eval(&a).is_zero() && !p.eval(&a).is_zero() {
            return (p, q, nodes, a);
        }
    }
}

/// Measures the sign relating `alpha / beta` to `f(a)` for every `(n, m)`
/// with `n, m <= max_degree`, and checks it against [`interp_sign`].
pub fn calibrate_sign<R: Rng + ?Sized>(field: FieldDescriptor, rng: &mut R, max_degree: usize) -> Result<SignCalibration, DetInterpError> {
    let mut table = BTreeMap::new();
    for n in 0..=max_degree {
        for m in 0..=max_degree {
            let (p, q, nodes, a) = random_instance(field, rng, n, m, 50);
            let f = RatFun1::normalize(p.clone(), q.clone())?;
            let points = nodes.iter().map(|x| Ok((x.clone(), f.eval(x)?))).collect::<Result<Vec<_>, DetInterpError>>()?;
            let samples = SampleSet1::new(field, points)?;
            let profile = DegreeProfile::from_degrees(n, m);
            let (alpha, beta) = alpha_beta(&samples, &profile, &a)?;
            if alpha.is_zero() || beta.is_zero() {
                return Err(DetInterpError::CalibrationFailure(format!("vanishing determinant at (n, m) = ({n}, {m})")));
            }
            let ratio = f.eval(&a)? * beta.checked_div(&alpha)?;
            let s = ratio_sign(&ratio, &format!("(n, m) = ({n}, {m})"))?;
            if s != interp_sign(n, m) {
                return Err(DetInterpError::CalibrationFailure(format!("(n, m) = ({n}, {m}): observed {s}, frozen {}", interp_sign(n, m))));
            }
            table.insert((n, m), s);
        }
    }
    Ok(SignCalibration { table })
}

/// Same measurement for [`delta_resultant`] against [`resultant_sign`].
pub fn calibrate_resultant_sign<R: Rng + ?Sized>(
    field: FieldDescriptor,
    rng: &mut R,
    max_degree: usize,
) -> Result<SignCalibration, DetInterpError> {
    let mut table = BTreeMap::new();
    for n in 0..=max_degree {
        for m in 0..=max_degree {
            let (p, q, nodes, a) = random_instance(field, rng, n, m, 50);
            let delta = delta_resultant(&p, &q, &a, &nodes)?;
            let rhs = q.eval(&a) * resultant(&p, &q)? * crate::polyrat::vandermonde_product(&nodes).expect("nonempty");
            let s = ratio_sign(&delta.checked_div(&rhs)?, &format!("(n, m) = ({n}, {m})"))?;
            if s != resultant_sign(n, m) {
                return Err(DetInterpError::CalibrationFailure(format!(
                    "(n, m) = ({n}, {m}): observed {s}, frozen {}",
                    resultant_sign(n, m)
                )));
            }
            table.insert((n, m), s);
        }
    }
    Ok(SignCalibration { table })
}
